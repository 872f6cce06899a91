// glyphmcda command-line front end. Talks to the engine only through the C API.

#include "glyphmcda/glyphmcda.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Owns a string handed back by the library.
struct Owned {
    char* p = nullptr;
    Owned() = default;
    Owned(const Owned&) = delete;
    Owned& operator=(const Owned&) = delete;
    ~Owned() { gm_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct OwnedBytes {
    unsigned char* p = nullptr;
    size_t len = 0;
    OwnedBytes() = default;
    OwnedBytes(const OwnedBytes&) = delete;
    OwnedBytes& operator=(const OwnedBytes&) = delete;
    ~OwnedBytes() { gm_bytes_free(p); }
};

// Thrown to unwind a subcommand with a specific exit status; the error line
// has already been printed.
struct Exit {
    int status;
};

void error_line(const std::string& kind, const std::string& path, const std::string& message) {
    ordered_json e;
    e["error"] = kind;
    e["path"] = path;
    e["message"] = message;
    std::cerr << e.dump() << "\n";
}

void check(gm_status st) {
    if (st == GM_OK) return;
    error_line(gm_status_name(st), gm_last_error_path(), gm_last_error());
    throw Exit{static_cast<int>(st)};
}

[[noreturn]] void fail(gm_status st, const std::string& path, const std::string& message) {
    error_line(gm_status_name(st), path, message);
    throw Exit{static_cast<int>(st)};
}

std::string read_file(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(GM_ERR_IO, "", "cannot read \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const void* data, size_t len) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(GM_ERR_IO, "", "cannot write \"" + path + "\"");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out) fail(GM_ERR_IO, "", "short write to \"" + path + "\"");
}

ordered_json parse(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(GM_ERR_VALIDATION, "", what + " is not valid JSON: " + e.what());
    }
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Workspace {
public:
    Workspace(const std::string& root, bool create) { check(gm_workspace_open(root.c_str(), create ? 1 : 0, &ws_)); }
    ~Workspace() { gm_workspace_close(ws_); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
    gm_workspace* get() const { return ws_; }

private:
    gm_workspace* ws_ = nullptr;
};

gm_format format_of(const std::string& token) {
    return token == "text" ? GM_FORMAT_TEXT : GM_FORMAT_STRUCTURED;
}

std::vector<const char*> c_ids(const std::vector<std::string>& ids) {
    std::vector<const char*> out;
    for (const auto& id : ids) out.push_back(id.c_str());
    return out;
}

struct Options {
    std::string workspace = ".";
    std::string format = "text";

    std::string target;
    std::string assessor;
    std::string criterion;
    std::string inputs;
    std::string level;
    std::string weight;
    std::string timestamp;
    std::vector<std::string> entries;
    bool not_applicable = false;
    std::string merge;
    std::string policy;
    std::string output;
    std::string manifest;
    std::vector<std::string> ids;
    double vf = 5.0;
    double vd = 50.0;
    double ppcm = 37.8;
    std::string shape = "circular";
    std::string bind = "127.0.0.1:8080";
};

// ---- validate ----

int run_validate(const Options& o) {
    std::string text;
    if (fs::is_regular_file(o.target)) {
        text = read_file(o.target);
    } else {
        Workspace ws(o.workspace, false);
        Owned design;
        check(gm_get_design(ws.get(), o.target.c_str(), &design.p, nullptr));
        text = design.str();
    }
    Owned result;
    check(gm_validate_design(text.c_str(), &result.p));
    const auto doc = parse(result.str(), "validation result");
    if (o.format == "structured") {
        std::cout << result.str();
    } else {
        for (const auto& v : doc["violations"]) {
            std::cout << v["field"].get<std::string>() << ": " << v["rule"].get<std::string>() << "\n";
        }
        if (doc["violations"].empty()) std::cout << doc["design"].get<std::string>() << ": valid\n";
    }
    if (!doc["valid"].get<bool>()) {
        const auto n = doc["violations"].size();
        fail(GM_ERR_VALIDATION, "", "design has " + std::to_string(n) + (n == 1 ? " violation" : " violations"));
    }
    return 0;
}

// ---- score ----

int run_score(const Options& o) {
    const int choices = static_cast<int>(!o.inputs.empty()) + static_cast<int>(!o.level.empty()) +
                        static_cast<int>(!o.entries.empty()) + static_cast<int>(o.not_applicable);
    if (choices > 1) fail(GM_ERR_VALIDATION, "", "use at most one of --inputs, --level, --entry, --not-applicable");
    if (choices == 0 && o.weight.empty()) fail(GM_ERR_VALIDATION, "", "nothing to record");

    Workspace ws(o.workspace, true);
    Owned current;
    const gm_status got = gm_get_sheet(ws.get(), o.target.c_str(), o.assessor.c_str(), &current.p, nullptr);
    std::string sheet_text;
    if (got == GM_OK) {
        sheet_text = current.str();
    } else if (got == GM_ERR_NOT_FOUND) {
        Owned blank;
        check(gm_blank_sheet(o.target.c_str(), o.assessor.c_str(), "1970-01-01T00:00:00Z", &blank.p));
        sheet_text = blank.str();
    } else {
        check(got);
    }

    ordered_json sheet = parse(sheet_text, "sheet");
    ordered_json* slot = nullptr;
    for (auto& a : sheet["assessments"]) {
        if (a["criterion"] == o.criterion) slot = &a;
    }
    if (!slot) fail(GM_ERR_VALIDATION, "/criterion", "unknown criterion \"" + o.criterion + "\"");
    ordered_json& a = *slot;

    auto set_direct = [&](const ordered_json& score) {
        a["mode"] = "D_direct";
        a["direct_score"] = score;
        a.erase("variable_entries");
    };
    auto set_null = [&] {
        a["mode"] = "null";
        a.erase("direct_score");
        a.erase("variable_entries");
    };

    if (!o.inputs.empty()) {
        const std::string inputs = read_file(o.inputs);
        Owned derived;
        check(gm_derive(o.criterion.c_str(), inputs.c_str(), &derived.p));
        const auto result = parse(derived.str(), "derived level");
        if (result["level"].is_null()) {
            set_null();
        } else {
            set_direct(std::to_string(result["level"].get<int>()));
        }
        a["inputs"] = parse(inputs, "inputs");
    } else if (!o.level.empty()) {
        set_direct(o.level);
        a.erase("inputs");
    } else if (!o.entries.empty()) {
        a["mode"] = "A_aggregated";
        a.erase("direct_score");
        a.erase("inputs");
        ordered_json list = ordered_json::array();
        for (const auto& e : o.entries) {
            const auto eq = e.find('=');
            if (eq == std::string::npos || eq == 0) {
                fail(GM_ERR_VALIDATION, "/entry", "expected VARIABLE=SCORE, got \"" + e + "\"");
            }
            ordered_json entry;
            entry["variable_id"] = e.substr(0, eq);
            entry["score"] = e.substr(eq + 1);
            list.push_back(entry);
        }
        a["variable_entries"] = list;
    } else if (o.not_applicable) {
        set_null();
        a.erase("inputs");
    }
    if (!o.weight.empty()) a["weight"] = o.weight;
    sheet["timestamp"] = o.timestamp.empty() ? utc_now() : o.timestamp;

    const std::string edited = sheet.dump();
    check(gm_put_sheet(ws.get(), edited.c_str(), nullptr, nullptr));
    Owned stored;
    check(gm_get_sheet(ws.get(), o.target.c_str(), o.assessor.c_str(), &stored.p, nullptr));
    std::cout << stored.str();
    return 0;
}

// ---- aggregate / merge ----

std::string policy_document(const Options& o) {
    ordered_json policy = o.policy.empty() ? ordered_json::object() : parse(read_file(o.policy), "policy");
    if (!o.merge.empty()) policy["merge"] = o.merge;
    return policy.dump();
}

int run_aggregate(const Options& o) {
    if (!o.assessor.empty() && (!o.merge.empty() || !o.policy.empty())) {
        fail(GM_ERR_VALIDATION, "", "--assessor excludes --merge and --policy");
    }
    std::optional<std::string> request;
    if (!o.assessor.empty()) {
        ordered_json r;
        r["assessor"] = o.assessor;
        request = r.dump();
    } else if (!o.merge.empty() || !o.policy.empty()) {
        request = policy_document(o);
    }
    Workspace ws(o.workspace, false);
    Owned out;
    check(gm_aggregate(ws.get(), o.target.c_str(), request ? request->c_str() : nullptr, format_of(o.format),
                       &out.p));
    std::cout << out.str();
    return 0;
}

int run_merge(const Options& o) {
    const std::string policy = policy_document(o);
    Workspace ws(o.workspace, false);
    Owned sheet;
    check(gm_merge(ws.get(), o.target.c_str(), policy.c_str(), &sheet.p));
    if (o.output.empty()) {
        std::cout << sheet.str();
    } else {
        const std::string text = sheet.str();
        write_file(o.output, text.data(), text.size());
    }
    return 0;
}

// ---- compare / report ----

int run_compare(const Options& o) {
    Workspace ws(o.workspace, false);
    const auto ids = c_ids(o.ids);
    Owned out;
    check(gm_compare(ws.get(), ids.data(), ids.size(), o.merge.empty() ? nullptr : o.merge.c_str(),
                     format_of(o.format), &out.p));
    std::cout << out.str();
    return 0;
}

int run_report(const Options& o) {
    Workspace ws(o.workspace, false);
    const auto ids = c_ids(o.ids);
    Owned out;
    check(gm_report(ws.get(), ids.data(), ids.size(), format_of(o.format), &out.p));
    std::cout << out.str();
    return 0;
}

// ---- degradation sheets ----

std::string default_output(const std::string& image, const std::string& suffix) {
    fs::path p(image);
    return (p.parent_path() / (p.stem().string() + "." + suffix + ".png")).string();
}

int emit_sheet(const Options& o, const std::string& suffix, OwnedBytes& png, Owned& manifest) {
    const std::string out = o.output.empty() ? default_output(o.target, suffix) : o.output;
    const std::string man = o.manifest.empty() ? fs::path(out).replace_extension(".json").string() : o.manifest;
    write_file(out, png.p, png.len);
    const std::string text = manifest.str();
    write_file(man, text.data(), text.size());
    std::cout << text;
    return 0;
}

int run_geometry(const Options& o) {
    const std::string image = read_file(o.target);
    OwnedBytes png;
    Owned manifest;
    check(gm_geometry_sheet(reinterpret_cast<const unsigned char*>(image.data()), image.size(), o.vf, o.vd, o.ppcm,
                            o.shape.c_str(), &png.p, &png.len, &manifest.p));
    return emit_sheet(o, "geometry", png, manifest);
}

int run_colorimetry(const Options& o) {
    const std::string image = read_file(o.target);
    OwnedBytes png;
    Owned manifest;
    check(gm_colorimetry_sheet(reinterpret_cast<const unsigned char*>(image.data()), image.size(), &png.p, &png.len,
                               &manifest.p));
    return emit_sheet(o, "colorimetry", png, manifest);
}

// ---- serve ----

int run_serve(const Options& o) {
    const auto colon = o.bind.rfind(':');
    if (colon == std::string::npos) fail(GM_ERR_VALIDATION, "/bind", "expected HOST:PORT");
    const std::string host = o.bind.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(o.bind.substr(colon + 1));
    } catch (const std::exception&) {
        fail(GM_ERR_VALIDATION, "/bind", "port must be an integer");
    }
    Workspace ws(o.workspace, true);
    std::cerr << "serving " << o.workspace << " on " << host << ":" << port << "\n";
    check(gm_serve(ws.get(), host.c_str(), port));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Score, aggregate and compare glyph designs"};
    app.set_version_flag("--version", std::string(gm_version()));
    app.require_subcommand(1);
    app.add_option("-w,--workspace", o.workspace, "Workspace root")->capture_default_str();

    const auto formats = CLI::IsMember({"text", "structured"});
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output rendering")->check(formats)->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "Check a design file or stored design");
    validate->add_option("design", o.target, "Design file or id")->required();
    add_format(validate);

    auto* score = app.add_subcommand("score", "Record one criterion on an assessor's sheet");
    score->add_option("design", o.target)->required();
    score->add_option("--assessor", o.assessor)->required();
    score->add_option("--criterion", o.criterion)->required();
    score->add_option("--inputs", o.inputs, "Criterion inputs (JSON file, - for stdin); the level is derived");
    score->add_option("--level", o.level, "Direct score 1..5");
    score->add_option("--entry", o.entries, "Per-variable score VARIABLE=SCORE (repeatable)");
    score->add_flag("--not-applicable", o.not_applicable, "Exclude the criterion");
    score->add_option("--weight", o.weight, "Override the criterion weight");
    score->add_option("--timestamp", o.timestamp, "Sheet timestamp (default: now, UTC)");

    auto* aggregate = app.add_subcommand("aggregate", "Weighted average for a design; writes a report");
    aggregate->add_option("design", o.target)->required();
    aggregate->add_option("--assessor", o.assessor);
    aggregate->add_option("--merge", o.merge)->check(CLI::IsMember({"mean", "consensus"}));
    aggregate->add_option("--policy", o.policy, "Merge policy document");
    add_format(aggregate);

    auto* merge = app.add_subcommand("merge", "Merge all sheets of a design into one");
    merge->add_option("design", o.target)->required();
    merge->add_option("--merge", o.merge)->check(CLI::IsMember({"mean", "consensus"}));
    merge->add_option("--policy", o.policy, "Merge policy document");
    merge->add_option("-o,--output", o.output, "Write the merged sheet here instead of stdout");

    auto* compare = app.add_subcommand("compare", "Rank designs by weighted average");
    compare->add_option("designs", o.ids)->required();
    compare->add_option("--merge", o.merge)->check(CLI::IsMember({"mean"}));
    add_format(compare);

    auto* report = app.add_subcommand("report", "Per-criterion table over designs");
    report->add_option("designs", o.ids, "Design ids (default: all)");
    add_format(report);

    auto* geometry = app.add_subcommand("geometry-sheet", "Scaled copies of a glyph image");
    geometry->add_option("image", o.target)->required()->check(CLI::ExistingFile);
    geometry->add_option("--vf", o.vf, "Visual field, degrees")->capture_default_str();
    geometry->add_option("--vd", o.vd, "Viewing distance, cm")->capture_default_str();
    geometry->add_option("--ppcm", o.ppcm, "Display pixels per cm")->capture_default_str();
    geometry->add_option("--shape", o.shape)->check(CLI::IsMember({"circular", "rectangular"}))->capture_default_str();
    geometry->add_option("-o,--output", o.output, "Composite PNG path");
    geometry->add_option("--manifest", o.manifest, "Manifest path (default: next to the PNG)");

    auto* colorimetry = app.add_subcommand("colorimetry-sheet", "Contrast and brightness grid of a glyph image");
    colorimetry->add_option("image", o.target)->required()->check(CLI::ExistingFile);
    colorimetry->add_option("-o,--output", o.output, "Composite PNG path");
    colorimetry->add_option("--manifest", o.manifest, "Manifest path (default: next to the PNG)");

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--bind", o.bind, "HOST:PORT")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_line("usage", "", e.what());
        return GM_ERR_VALIDATION;
    }

    try {
        if (*validate) return run_validate(o);
        if (*score) return run_score(o);
        if (*aggregate) return run_aggregate(o);
        if (*merge) return run_merge(o);
        if (*compare) return run_compare(o);
        if (*report) return run_report(o);
        if (*geometry) return run_geometry(o);
        if (*colorimetry) return run_colorimetry(o);
        if (*serve) return run_serve(o);
    } catch (const Exit& e) {
        return e.status;
    }
    return 0;
}
