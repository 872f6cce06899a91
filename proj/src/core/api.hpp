#pragma once

// Document-level operations shared by the C surface and the HTTP service.
// Inputs and outputs are canonical UTF-8 documents, so every front end
// returns the same bytes for the same request.

#include "aggregation.hpp"
#include "invariance.hpp"
#include "workspace.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glyphmcda::api {

enum class Format { text, structured };
Format format_from_token(std::string_view token);

/// How a design's sheets become one report: a named assessor's sheet, a
/// merge of every stored sheet, or (neither given) the single stored sheet,
/// falling back to a mean merge when several exist.
struct AggregateRequest {
    std::optional<std::string> assessor;
    std::optional<MergePolicy> policy;
};

/// {"assessor": "a1"} or {"merge": "mean"|"consensus", "scores": {...},
/// "note": "..."}; an empty object selects the default rule.
AggregateRequest aggregate_request_from_json(const nlohmann::json& doc);
AggregateRequest aggregate_request_from_text(std::string_view text);

AssessmentReport resolve_report(const Workspace& ws, const std::string& design, const AggregateRequest& request);

/// Renders the report and caches it under reports/<design>.{txt,json}.
std::string aggregate(Workspace& ws, const std::string& design, const AggregateRequest& request, Format format);

/// Workspace-free aggregation of one sheet document.
std::string aggregate_sheet(std::string_view sheet_text, Format format);

std::string compare(const Workspace& ws, const std::vector<std::string>& ids, Format format,
                    std::optional<MergeMode> merge = std::nullopt);

/// Side-by-side table; empty `ids` means every design in the workspace.
std::string report_table(const Workspace& ws, std::vector<std::string> ids, Format format);

/// Canonical merged sheet document.
std::string merge(const Workspace& ws, const std::string& design, const MergePolicy& policy);

/// {"design": id, "valid": bool, "violations": [...]}. Parse errors throw.
std::string validate_design(std::string_view design_text);

std::string derive(std::string_view criterion, std::string_view inputs_text);

/// {"channel_kind", "table_version", "ratings": {kop: rating}}
std::string kop(std::string_view channel_kind);

struct SheetOutput {
    std::vector<std::uint8_t> png;
    std::string manifest;  // canonical manifest document
};

SheetOutput geometry(std::span<const std::uint8_t> png, const ViewingGeometry& geom, double ppcm);
SheetOutput colorimetry(std::span<const std::uint8_t> png);

/// {"manifest": {...}, "composite_png_base64": "..."}
std::string sheet_output_json(const SheetOutput& out);

std::string base64_encode(std::span<const std::uint8_t> bytes);

enum class ErrorKind { validation, not_found, conflict, criterion_input, io, internal };

struct ErrorInfo {
    ErrorKind kind = ErrorKind::internal;
    std::string path;
    std::string message;
};

/// Maps the exception in flight (call inside a catch block) to its kind.
ErrorInfo classify_current_exception();
std::string_view to_token(ErrorKind kind);
int http_status(ErrorKind kind);

/// Error document {"error": kind, "path": ..., "message": ...} on one line.
std::string error_json(std::string_view kind, std::string_view path, std::string_view message);

}  // namespace glyphmcda::api
