#include "glyphmcda/glyphmcda.h"

#include "api.hpp"
#include "errors.hpp"
#include "serialization.hpp"
#include "service.hpp"
#include "workspace.hpp"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

using namespace glyphmcda;

struct gm_workspace {
    Workspace ws;
    explicit gm_workspace(const std::string& root, bool create) : ws(root, create) {}
};

namespace {

thread_local std::string last_message;
thread_local std::string last_path;

gm_status status_of(api::ErrorKind kind) {
    switch (kind) {
        case api::ErrorKind::validation: return GM_ERR_VALIDATION;
        case api::ErrorKind::not_found: return GM_ERR_NOT_FOUND;
        case api::ErrorKind::conflict: return GM_ERR_CONFLICT;
        case api::ErrorKind::criterion_input: return GM_ERR_CRITERION_INPUT;
        case api::ErrorKind::io: return GM_ERR_IO;
        case api::ErrorKind::internal: return GM_ERR_INTERNAL;
    }
    return GM_ERR_INTERNAL;
}

gm_status fail_argument(const char* what) {
    last_message = std::string(what) + " must not be NULL";
    last_path.clear();
    return GM_ERR_ARGUMENT;
}

// Runs `fn`, translating exceptions into a status plus thread-local message.
template <typename F>
gm_status guarded(F&& fn) {
    last_message.clear();
    last_path.clear();
    try {
        fn();
        return GM_OK;
    } catch (...) {
        const auto info = api::classify_current_exception();
        last_message = info.message;
        last_path = info.path;
        return status_of(info.kind);
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

unsigned char* dup_bytes(const std::vector<std::uint8_t>& b) {
    auto* out = static_cast<unsigned char*>(std::malloc(b.empty() ? 1 : b.size()));
    if (!out) throw std::bad_alloc();
    if (!b.empty()) std::memcpy(out, b.data(), b.size());
    return out;
}

api::Format format_of(gm_format f) {
    return f == GM_FORMAT_TEXT ? api::Format::text : api::Format::structured;
}

std::vector<std::string> id_list(const char* const* ids, size_t count) {
    std::vector<std::string> out;
    for (size_t i = 0; i < count; ++i) {
        if (!ids[i]) throw ValidationError("/ids/" + std::to_string(i), "id must not be NULL");
        out.emplace_back(ids[i]);
    }
    return out;
}

}  // namespace

extern "C" {

GM_API const char* gm_version(void) {
    return GLYPHMCDA_VERSION;
}

GM_API const char* gm_status_name(gm_status status) {
    switch (status) {
        case GM_OK: return "ok";
        case GM_ERR_VALIDATION: return "validation";
        case GM_ERR_NOT_FOUND: return "not_found";
        case GM_ERR_CONFLICT: return "conflict";
        case GM_ERR_CRITERION_INPUT: return "criterion_input";
        case GM_ERR_IO: return "io";
        case GM_ERR_INTERNAL: return "internal";
        case GM_ERR_ARGUMENT: return "argument";
    }
    return "unknown";
}

GM_API const char* gm_last_error(void) {
    return last_message.c_str();
}

GM_API const char* gm_last_error_path(void) {
    return last_path.c_str();
}

GM_API void gm_string_free(char* s) {
    std::free(s);
}

GM_API void gm_bytes_free(unsigned char* bytes) {
    std::free(bytes);
}

GM_API gm_status gm_workspace_open(const char* root, int create, gm_workspace** out) {
    if (!root) return fail_argument("root");
    if (!out) return fail_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new gm_workspace(root, create != 0); });
}

GM_API void gm_workspace_close(gm_workspace* ws) {
    delete ws;
}

GM_API gm_status gm_put_design(gm_workspace* ws, const char* design_json, const char* if_match, char** out_revision) {
    if (!ws) return fail_argument("ws");
    if (!design_json) return fail_argument("design_json");
    return guarded([&] {
        std::optional<std::string> match;
        if (if_match) match = if_match;
        const std::string rev = ws->ws.put_design(parse_design(design_json), match);
        if (out_revision) *out_revision = dup_string(rev);
    });
}

GM_API gm_status gm_get_design(gm_workspace* ws, const char* id, char** out_json, char** out_revision) {
    if (!ws) return fail_argument("ws");
    if (!id) return fail_argument("id");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] {
        const std::string text = serialize_design(ws->ws.get_design(id));
        const std::string rev = ws->ws.design_revision(id);
        *out_json = dup_string(text);
        if (out_revision) *out_revision = dup_string(rev);
    });
}

GM_API gm_status gm_put_sheet(gm_workspace* ws, const char* sheet_json, const char* if_match, char** out_revision) {
    if (!ws) return fail_argument("ws");
    if (!sheet_json) return fail_argument("sheet_json");
    return guarded([&] {
        std::optional<std::string> match;
        if (if_match) match = if_match;
        const std::string rev = ws->ws.put_sheet(parse_sheet(sheet_json), match);
        if (out_revision) *out_revision = dup_string(rev);
    });
}

GM_API gm_status gm_get_sheet(gm_workspace* ws, const char* design, const char* assessor, char** out_json,
                              char** out_revision) {
    if (!ws) return fail_argument("ws");
    if (!design) return fail_argument("design");
    if (!assessor) return fail_argument("assessor");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] {
        const std::string text = serialize_sheet(ws->ws.get_sheet(design, assessor));
        const std::string rev = ws->ws.sheet_revision(design, assessor);
        *out_json = dup_string(text);
        if (out_revision) *out_revision = dup_string(rev);
    });
}

GM_API gm_status gm_list_designs(gm_workspace* ws, char** out_json) {
    if (!ws) return fail_argument("ws");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] { *out_json = dup_string(dump_canonical(OrderedJson(ws->ws.design_ids()))); });
}

GM_API gm_status gm_validate_design(const char* design_json, char** out_json) {
    if (!design_json) return fail_argument("design_json");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] { *out_json = dup_string(api::validate_design(design_json)); });
}

GM_API gm_status gm_canonical_sheet(const char* sheet_json, char** out_json) {
    if (!sheet_json) return fail_argument("sheet_json");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] { *out_json = dup_string(serialize_sheet(parse_sheet(sheet_json))); });
}

GM_API gm_status gm_blank_sheet(const char* design, const char* assessor, const char* timestamp, char** out_json) {
    if (!design) return fail_argument("design");
    if (!assessor) return fail_argument("assessor");
    if (!timestamp) return fail_argument("timestamp");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] {
        validate_id(design, "/design");
        validate_id(assessor, "/assessor");
        *out_json = dup_string(serialize_sheet(make_blank_sheet(design, assessor, timestamp)));
    });
}

GM_API gm_status gm_aggregate_sheet(const char* sheet_json, gm_format format, char** out) {
    if (!sheet_json) return fail_argument("sheet_json");
    if (!out) return fail_argument("out");
    return guarded([&] { *out = dup_string(api::aggregate_sheet(sheet_json, format_of(format))); });
}

GM_API gm_status gm_derive(const char* criterion, const char* inputs_json, char** out_json) {
    if (!criterion) return fail_argument("criterion");
    if (!inputs_json) return fail_argument("inputs_json");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] { *out_json = dup_string(api::derive(criterion, inputs_json)); });
}

GM_API gm_status gm_kop(const char* channel_kind, char** out_json) {
    if (!channel_kind) return fail_argument("channel_kind");
    if (!out_json) return fail_argument("out_json");
    return guarded([&] { *out_json = dup_string(api::kop(channel_kind)); });
}

GM_API gm_status gm_aggregate(gm_workspace* ws, const char* design, const char* request_json, gm_format format,
                              char** out) {
    if (!ws) return fail_argument("ws");
    if (!design) return fail_argument("design");
    if (!out) return fail_argument("out");
    return guarded([&] {
        const auto req = api::aggregate_request_from_text(request_json ? request_json : "");
        *out = dup_string(api::aggregate(ws->ws, design, req, format_of(format)));
    });
}

GM_API gm_status gm_merge(gm_workspace* ws, const char* design, const char* policy_json, char** out_sheet_json) {
    if (!ws) return fail_argument("ws");
    if (!design) return fail_argument("design");
    if (!policy_json) return fail_argument("policy_json");
    if (!out_sheet_json) return fail_argument("out_sheet_json");
    return guarded([&] {
        const MergePolicy policy = merge_policy_from_json(parse_json_text(policy_json));
        *out_sheet_json = dup_string(api::merge(ws->ws, design, policy));
    });
}

GM_API gm_status gm_compare(gm_workspace* ws, const char* const* ids, size_t count, const char* merge,
                            gm_format format, char** out) {
    if (!ws) return fail_argument("ws");
    if (!ids && count) return fail_argument("ids");
    if (!out) return fail_argument("out");
    return guarded([&] {
        std::optional<MergeMode> mode;
        if (merge) mode = merge_mode_from_token(merge);
        *out = dup_string(api::compare(ws->ws, id_list(ids, count), format_of(format), mode));
    });
}

GM_API gm_status gm_report(gm_workspace* ws, const char* const* ids, size_t count, gm_format format, char** out) {
    if (!ws) return fail_argument("ws");
    if (!ids && count) return fail_argument("ids");
    if (!out) return fail_argument("out");
    return guarded([&] { *out = dup_string(api::report_table(ws->ws, id_list(ids, count), format_of(format))); });
}

GM_API gm_status gm_geometry_sheet(const unsigned char* png, size_t png_len, double vf_deg, double vd_cm,
                                   double ppcm, const char* shape, unsigned char** out_png, size_t* out_png_len,
                                   char** out_manifest) {
    if (!png) return fail_argument("png");
    if (!out_png || !out_png_len) return fail_argument("out_png");
    if (!out_manifest) return fail_argument("out_manifest");
    return guarded([&] {
        ViewingGeometry geom;
        geom.vf_deg = vf_deg;
        geom.vd_cm = vd_cm;
        if (shape) geom.shape = glyph_shape_from_token(shape);
        const auto result = api::geometry({png, png_len}, geom, ppcm);
        *out_png = dup_bytes(result.png);
        *out_png_len = result.png.size();
        *out_manifest = dup_string(result.manifest);
    });
}

GM_API gm_status gm_colorimetry_sheet(const unsigned char* png, size_t png_len, unsigned char** out_png,
                                      size_t* out_png_len, char** out_manifest) {
    if (!png) return fail_argument("png");
    if (!out_png || !out_png_len) return fail_argument("out_png");
    if (!out_manifest) return fail_argument("out_manifest");
    return guarded([&] {
        const auto result = api::colorimetry({png, png_len});
        *out_png = dup_bytes(result.png);
        *out_png_len = result.png.size();
        *out_manifest = dup_string(result.manifest);
    });
}

GM_API gm_status gm_serve(gm_workspace* ws, const char* host, int port) {
    if (!ws) return fail_argument("ws");
    if (!host) return fail_argument("host");
    return guarded([&] {
        Service service(ws->ws);
        if (service.bind(host, port) < 0) {
            throw IoError("cannot bind " + std::string(host) + ":" + std::to_string(port));
        }
        if (!service.run()) throw IoError("service stopped unexpectedly");
    });
}

}  // extern "C"
