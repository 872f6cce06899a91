#pragma once

// Document formats. Every writer emits canonical text: fixed key order,
// decimal strings for exact numbers, two-space indentation, trailing LF.

#include "aggregation.hpp"
#include "invariance.hpp"
#include "model.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace glyphmcda {

using OrderedJson = nlohmann::ordered_json;

/// Canonical dump: 2-space indent plus a final newline.
std::string dump_canonical(const OrderedJson& doc);

/// Parses UTF-8 text into a JSON value; malformed text is a ValidationError
/// at path "".
nlohmann::json parse_json_text(std::string_view text);

/// Exact number from a JSON string ("4.5", "29/7"), integer or float.
Rational rational_from_json(const nlohmann::json& value, const std::string& path);

// ---- score sheets ----

ScoreSheet sheet_from_json(const nlohmann::json& doc);
OrderedJson sheet_to_json(const ScoreSheet& sheet);

/// Full validation: unknown fields, unknown criteria, missing criteria,
/// score ranges and schema version all raise ValidationError with a path.
ScoreSheet parse_sheet(std::string_view text);
std::string serialize_sheet(const ScoreSheet& sheet);

// ---- designs ----

GlyphDesign design_from_json(const nlohmann::json& doc);
OrderedJson design_to_json(const GlyphDesign& design);
GlyphDesign parse_design(std::string_view text);
std::string serialize_design(const GlyphDesign& design);

OrderedJson violations_to_json(const std::vector<Violation>& violations);

// ---- merge policy ----

/// {"merge": "mean"|"consensus", "scores": {criterion: score}, "note": "..."}
MergePolicy merge_policy_from_json(const nlohmann::json& doc);

// ---- reports ----

OrderedJson report_to_json(const AssessmentReport& report);
std::string render_report_text(const AssessmentReport& report);

/// Side-by-side table of several reports, one weight/score column pair per
/// design, closed by the total weight and weighted average row.
OrderedJson reports_table_to_json(const std::vector<AssessmentReport>& reports);
std::string render_reports_table_text(const std::vector<AssessmentReport>& reports);

OrderedJson ranking_to_json(const Ranking& ranking);
std::string render_ranking_text(const Ranking& ranking);

// ---- degradation sheets ----

OrderedJson manifest_to_json(const DegradationSheet& sheet);

}  // namespace glyphmcda
