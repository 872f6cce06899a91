#include "service.hpp"

#include "api.hpp"
#include "errors.hpp"
#include "serialization.hpp"

#include <httplib.h>

#include <charconv>
#include <sstream>

namespace glyphmcda {

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kText = "text/plain; charset=utf-8";
constexpr const char* kIdPattern = "([A-Za-z0-9._+-]+)";

std::string route(const std::string& prefix, int ids) {
    std::string r = prefix;
    for (int i = 0; i < ids; ++i) r += std::string("/") + kIdPattern;
    return r;
}

template <typename F>
void guarded(httplib::Response& res, F&& fn) {
    try {
        fn();
    } catch (...) {
        const auto info = api::classify_current_exception();
        res.status = api::http_status(info.kind);
        res.set_content(api::error_json(api::to_token(info.kind), info.path, info.message) + "\n", kJson);
    }
}

// Every mutating request names the assessor making it.
std::string require_assessor(const httplib::Request& req) {
    const std::string who = req.get_header_value("X-Assessor");
    if (who.empty()) throw ValidationError("/headers/X-Assessor", "mutating requests must carry X-Assessor");
    return who;
}

std::optional<std::string> if_match(const httplib::Request& req) {
    if (!req.has_header("If-Match")) return std::nullopt;
    std::string v = req.get_header_value("If-Match");
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    return v;
}

double query_double(const httplib::Request& req, const std::string& key, double fallback) {
    if (!req.has_param(key)) return fallback;
    const std::string text = req.get_param_value(key);
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError("/query/" + key, "expected a number, got \"" + text + "\"");
    }
    return v;
}

api::Format query_format(const httplib::Request& req) {
    return req.has_param("format") ? api::format_from_token(req.get_param_value("format")) : api::Format::structured;
}

void reply(httplib::Response& res, const std::string& body, api::Format format = api::Format::structured) {
    res.set_content(body, format == api::Format::text ? kText : kJson);
}

std::string revision_body(const std::string& key, const std::string& value, const std::string& revision) {
    OrderedJson doc;
    doc[key] = value;
    doc["revision"] = revision;
    return dump_canonical(doc);
}

std::vector<std::string> split_ids(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::span<const std::uint8_t> body_bytes(const httplib::Request& req) {
    return {reinterpret_cast<const std::uint8_t*>(req.body.data()), req.body.size()};
}

}  // namespace

struct Service::Impl {
    Workspace& ws;
    httplib::Server server;

    explicit Impl(Workspace& w) : ws(w) { install(); }

    void install() {
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Headers", "Content-Type, X-Assessor, If-Match"},
                                    {"Access-Control-Expose-Headers", "ETag"}});
        server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS");
            res.status = 204;
        });

        server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("{\"status\": \"ok\"}\n", kJson);
        });

        server.Get("/designs", [this](const httplib::Request&, httplib::Response& res) {
            guarded(res, [&] {
                OrderedJson doc;
                doc["designs"] = ws.design_ids();
                reply(res, dump_canonical(doc));
            });
        });

        server.Get(route("/designs", 1), [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const std::string id = req.matches[1];
                const GlyphDesign d = ws.get_design(id);
                res.set_header("ETag", "\"" + ws.design_revision(id) + "\"");
                reply(res, serialize_design(d));
            });
        });

        server.Put(route("/designs", 1), [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                require_assessor(req);
                const std::string id = req.matches[1];
                const GlyphDesign d = parse_design(req.body);
                if (d.id != id) throw ValidationError("/id", "design id \"" + d.id + "\" does not match the URL");
                const std::string rev = ws.put_design(d, if_match(req));
                res.set_header("ETag", "\"" + rev + "\"");
                reply(res, revision_body("design", id, rev));
            });
        });

        server.Get(route("/sheets", 1), [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const std::string design = req.matches[1];
                if (!ws.has_design(design)) throw NotFoundError("unknown design \"" + design + "\"");
                OrderedJson doc;
                doc["design"] = design;
                doc["assessors"] = ws.assessors_for(design);
                reply(res, dump_canonical(doc));
            });
        });

        server.Get(route("/sheets", 2), [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const std::string design = req.matches[1];
                const std::string assessor = req.matches[2];
                const ScoreSheet s = ws.get_sheet(design, assessor);
                res.set_header("ETag", "\"" + ws.sheet_revision(design, assessor) + "\"");
                reply(res, serialize_sheet(s));
            });
        });

        server.Put(route("/sheets", 2), [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                require_assessor(req);
                const std::string design = req.matches[1];
                const std::string assessor = req.matches[2];
                const ScoreSheet s = parse_sheet(req.body);
                if (s.design_id != design) throw ValidationError("/design", "sheet design does not match the URL");
                if (s.assessor != assessor) throw ValidationError("/assessor", "sheet assessor does not match the URL");
                const std::string rev = ws.put_sheet(s, if_match(req));
                res.set_header("ETag", "\"" + rev + "\"");
                OrderedJson doc;
                doc["design"] = design;
                doc["assessor"] = assessor;
                doc["revision"] = rev;
                reply(res, dump_canonical(doc));
            });
        });

        server.Post(route("/aggregate", 1), [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const auto format = query_format(req);
                reply(res, api::aggregate(ws, req.matches[1], api::aggregate_request_from_text(req.body), format),
                      format);
            });
        });

        server.Get("/compare", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const auto format = query_format(req);
                std::optional<MergeMode> merge;
                if (req.has_param("merge")) merge = merge_mode_from_token(req.get_param_value("merge"));
                reply(res, api::compare(ws, split_ids(req.get_param_value("ids")), format, merge), format);
            });
        });

        server.Get("/report", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const auto format = query_format(req);
                reply(res, api::report_table(ws, split_ids(req.get_param_value("ids")), format), format);
            });
        });

        server.Post(R"(/derive/([a-z_]+))", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] { reply(res, api::derive(req.matches[1].str(), req.body)); });
        });

        server.Post("/validate", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] { reply(res, api::validate_design(req.body)); });
        });

        server.Post("/invariance/geometry", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                ViewingGeometry geom;
                geom.vf_deg = query_double(req, "vf", geom.vf_deg);
                geom.vd_cm = query_double(req, "vd", geom.vd_cm);
                if (req.has_param("shape")) geom.shape = glyph_shape_from_token(req.get_param_value("shape"));
                const double ppcm = query_double(req, "ppcm", kDefaultPpcm);
                reply(res, api::sheet_output_json(api::geometry(body_bytes(req), geom, ppcm)));
            });
        });

        server.Post("/invariance/colorimetry", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] { reply(res, api::sheet_output_json(api::colorimetry(body_bytes(req)))); });
        });

        server.Get(R"(/kop/([a-z-]+))", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] { reply(res, api::kop(req.matches[1].str())); });
        });
    }
};

Service::Service(Workspace& ws) : impl_(std::make_unique<Impl>(ws)) {}

Service::~Service() {
    stop();
}

int Service::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::run() {
    return impl_->server.listen_after_bind();
}

void Service::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const {
    impl_->server.wait_until_ready();
}

}  // namespace glyphmcda
