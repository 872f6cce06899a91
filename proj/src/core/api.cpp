#include "api.hpp"

#include "derive.hpp"
#include "errors.hpp"
#include "json_reader.hpp"
#include "serialization.hpp"

#include <openssl/evp.h>

namespace glyphmcda::api {

Format format_from_token(std::string_view token) {
    if (token == "text") return Format::text;
    if (token == "structured" || token == "json") return Format::structured;
    throw ValidationError("/format", "unknown format \"" + std::string(token) + "\" (text or structured)");
}

AggregateRequest aggregate_request_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("/", "expected an object");
    AggregateRequest req;
    nlohmann::json rest = doc;
    if (auto it = rest.find("assessor"); it != rest.end()) {
        req.assessor = ObjectReader::as_string(*it, "/assessor");
        rest.erase(it);
    }
    if (!rest.empty()) {
        if (req.assessor) throw ValidationError("/merge", "give either an assessor or a merge policy");
        req.policy = merge_policy_from_json(rest);
    }
    return req;
}

AggregateRequest aggregate_request_from_text(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
    return aggregate_request_from_json(parse_json_text(text));
}

AssessmentReport resolve_report(const Workspace& ws, const std::string& design, const AggregateRequest& request) {
    if (!ws.has_design(design)) throw NotFoundError("unknown design \"" + design + "\"");
    if (request.assessor) return weighted_average(ws.get_sheet(design, *request.assessor));
    const auto sheets = ws.sheets_for(design);
    if (sheets.empty()) throw NotFoundError("design \"" + design + "\" has no score sheets");
    if (request.policy) return weighted_average(merge_sheets(sheets, *request.policy));
    if (sheets.size() == 1) return weighted_average(sheets.front());
    return weighted_average(merge_sheets(sheets, MergePolicy{}));
}

namespace {

std::string render(const AssessmentReport& report, Format format) {
    return format == Format::text ? render_report_text(report) : dump_canonical(report_to_json(report));
}

}  // namespace

std::string aggregate(Workspace& ws, const std::string& design, const AggregateRequest& request, Format format) {
    const std::string out = render(resolve_report(ws, design, request), format);
    ws.write_report(design + (format == Format::text ? ".txt" : ".json"), out);
    return out;
}

std::string aggregate_sheet(std::string_view sheet_text, Format format) {
    return render(weighted_average(parse_sheet(sheet_text)), format);
}

std::string compare(const Workspace& ws, const std::vector<std::string>& ids, Format format,
                    std::optional<MergeMode> merge) {
    AggregateRequest req;
    if (merge) {
        if (*merge != MergeMode::mean) throw ValidationError("/merge", "compare supports only the mean merge");
        req.policy = MergePolicy{};
    }
    std::vector<AssessmentReport> reports;
    for (const auto& id : ids) reports.push_back(resolve_report(ws, id, req));
    const Ranking ranking = compare_designs(reports);
    return format == Format::text ? render_ranking_text(ranking) : dump_canonical(ranking_to_json(ranking));
}

std::string report_table(const Workspace& ws, std::vector<std::string> ids, Format format) {
    if (ids.empty()) ids = ws.design_ids();
    if (ids.empty()) throw NotFoundError("workspace has no designs");
    std::vector<AssessmentReport> reports;
    for (const auto& id : ids) reports.push_back(resolve_report(ws, id, {}));
    return format == Format::text ? render_reports_table_text(reports)
                                  : dump_canonical(reports_table_to_json(reports));
}

std::string merge(const Workspace& ws, const std::string& design, const MergePolicy& policy) {
    if (!ws.has_design(design)) throw NotFoundError("unknown design \"" + design + "\"");
    const auto sheets = ws.sheets_for(design);
    if (sheets.empty()) throw NotFoundError("design \"" + design + "\" has no score sheets");
    return serialize_sheet(merge_sheets(sheets, policy));
}

std::string validate_design(std::string_view design_text) {
    const GlyphDesign d = parse_design(design_text);
    const auto violations = glyphmcda::validate_design(d);
    OrderedJson doc;
    doc["design"] = d.id;
    doc["valid"] = violations.empty();
    doc["violations"] = violations_to_json(violations);
    return dump_canonical(doc);
}

std::string derive(std::string_view criterion, std::string_view inputs_text) {
    const CriterionId id = with_path("/criterion", [&] { return criterion_from_token(criterion); });
    return dump_canonical(derive_level(id, parse_json_text(inputs_text)));
}

std::string kop(std::string_view channel_kind) {
    const ChannelKind kind = with_path("/channel_kind", [&] { return channel_kind_from_token(channel_kind); });
    const KnowledgeBase& kb = KnowledgeBase::builtin();
    if (kind == ChannelKind::custom || !kb.contains(kind)) {
        throw NotFoundError("no knowledge-base entry for \"" + std::string(channel_kind) + "\"");
    }
    OrderedJson doc;
    doc["channel_kind"] = to_token(kind);
    doc["table_version"] = kb.version();
    OrderedJson ratings;
    for (Kop k : kAllKops) ratings[std::string(to_token(k))] = to_token(kb.rating(kind, k));
    doc["ratings"] = std::move(ratings);
    return dump_canonical(doc);
}

namespace {

SheetOutput finish(const DegradationSheet& sheet) {
    SheetOutput out;
    out.png = encode_png(sheet.composite);
    out.manifest = dump_canonical(manifest_to_json(sheet));
    return out;
}

}  // namespace

SheetOutput geometry(std::span<const std::uint8_t> png, const ViewingGeometry& geom, double ppcm) {
    return finish(geometry_sheet(decode_png(png), geom, ppcm));
}

SheetOutput colorimetry(std::span<const std::uint8_t> png) {
    return finish(colorimetry_sheet(decode_png(png)));
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                  static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::string sheet_output_json(const SheetOutput& out) {
    OrderedJson doc;
    doc["manifest"] = OrderedJson::parse(out.manifest);
    doc["composite_png_base64"] = base64_encode(out.png);
    return dump_canonical(doc);
}

ErrorInfo classify_current_exception() {
    try {
        throw;
    } catch (const ValidationError& e) {
        return {ErrorKind::validation, e.path(), e.what()};
    } catch (const NotFoundError& e) {
        return {ErrorKind::not_found, "", e.what()};
    } catch (const ConflictError& e) {
        return {ErrorKind::conflict, "", e.what()};
    } catch (const CriterionInputError& e) {
        return {ErrorKind::criterion_input, "", e.what()};
    } catch (const IoError& e) {
        return {ErrorKind::io, "", e.what()};
    } catch (const nlohmann::json::exception& e) {
        return {ErrorKind::validation, "", e.what()};
    } catch (const std::exception& e) {
        return {ErrorKind::internal, "", e.what()};
    } catch (...) {
        return {ErrorKind::internal, "", "unknown error"};
    }
}

std::string_view to_token(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return "validation";
        case ErrorKind::not_found: return "not_found";
        case ErrorKind::conflict: return "conflict";
        case ErrorKind::criterion_input: return "criterion_input";
        case ErrorKind::io: return "io";
        case ErrorKind::internal: return "internal";
    }
    return "internal";
}

int http_status(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return 400;
        case ErrorKind::not_found: return 404;
        case ErrorKind::conflict: return 409;
        case ErrorKind::criterion_input: return 422;
        case ErrorKind::io:
        case ErrorKind::internal: return 500;
    }
    return 500;
}

std::string error_json(std::string_view kind, std::string_view path, std::string_view message) {
    OrderedJson doc;
    doc["error"] = kind;
    doc["path"] = path;
    doc["message"] = message;
    return doc.dump();
}

}  // namespace glyphmcda::api
