#pragma once

#include "rational.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glyphmcda {

enum class DataType { nominal, ordinal, interval, ratio, directional };

enum class Kop { associative, selective, ordered, quantitative };
inline constexpr std::array<Kop, 4> kAllKops = {Kop::associative, Kop::selective, Kop::ordered,
                                                Kop::quantitative};

enum class KopRating { yes, limited, can_be, maybe, no };

// Rows of the extended channel rating table, in table order.
enum class ChannelKind {
    size, orientation, shape, curvature, smoothness,
    brightness, color, opacity, texture, shading, halos, shadow, photo_effects, implicit_motion,
    explicit_motion,
    connection_edge, node, inside_outside, enclosure_boundary, distance, closure_opening,
    connectivity, partition, intersection_overlap, depth_ordering, hierarchy_level,
    density_distribution, convexity, continuity, genera, similarity, deformation,
    number, text, symbol, sign, isotype,
    custom,
};

enum class CriterionId {
    typedness,
    discernability,
    intuitiveness,
    invariance_geometry,
    invariance_colorimetry,
    composition_separability,
    composition_comparability,
    attention_importance,
    attention_balance,
    searchability,
    learnability,
    memorability,
};
inline constexpr std::size_t kCriterionCount = 12;
const std::array<CriterionId, kCriterionCount>& all_criteria();

enum class AssessmentMode { aggregated, direct, null };

enum class MergeMode { single, mean, consensus };

// Token conversions. from_token throws ValidationError with an empty path on
// an unknown token; callers that know the document location rethrow with it.
std::string_view to_token(DataType v);
std::string_view to_token(Kop v);
std::string_view to_token(KopRating v);
std::string_view to_token(ChannelKind v);
std::string_view to_token(CriterionId v);
std::string_view to_token(AssessmentMode v);
std::string_view to_token(MergeMode v);

DataType data_type_from_token(std::string_view token);
Kop kop_from_token(std::string_view token);
KopRating kop_rating_from_token(std::string_view token);
ChannelKind channel_kind_from_token(std::string_view token);
CriterionId criterion_from_token(std::string_view token);
AssessmentMode mode_from_token(std::string_view token);
MergeMode merge_mode_from_token(std::string_view token);

/// Row label as printed in the summary tables ("Composition: Separability").
std::string_view display_name(CriterionId id);

/// 1 for the three per-variable criteria, 1/2 for the nine holistic ones.
Rational default_weight(CriterionId id);

std::size_t index_of(CriterionId id);

struct DataVariable {
    std::string id;
    std::string name;
    DataType data_type = DataType::nominal;
    int key_value_count = 1;
    std::optional<int> importance_rank;
    std::optional<int> comparability_group;
    bool is_identity_variable = false;

    bool operator==(const DataVariable&) const = default;
};

struct VisualChannel {
    std::string id;
    std::string name;
    ChannelKind kind = ChannelKind::custom;
    // Required for ChannelKind::custom, optional override otherwise.
    std::map<Kop, KopRating> kop_ratings;

    bool operator==(const VisualChannel&) const = default;
};

struct GlyphDesign {
    std::string id;
    std::string name;
    std::vector<DataVariable> variables;
    std::vector<VisualChannel> channels;
    std::map<std::string, std::vector<std::string>> encoding;
    std::optional<std::string> image_ref;
    std::string notes;

    bool operator==(const GlyphDesign&) const = default;
};

struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_design(const GlyphDesign& design);

struct VariableEntry {
    std::string variable_id;
    Rational score;
    std::string rationale;

    bool operator==(const VariableEntry&) const = default;
};

struct CriterionAssessment {
    CriterionId criterion = CriterionId::typedness;
    AssessmentMode mode = AssessmentMode::null;
    Rational weight{0};
    std::vector<VariableEntry> variable_entries;
    std::optional<Rational> direct_score;
    std::optional<nlohmann::json> inputs;

    bool operator==(const CriterionAssessment&) const = default;
};

struct Provenance {
    MergeMode merge_mode = MergeMode::mean;
    std::vector<std::string> assessors;
    std::string note;

    bool operator==(const Provenance&) const = default;
};

inline constexpr std::string_view kSchemaVersion = "1";

struct ScoreSheet {
    std::string design_id;
    std::string assessor;
    std::string timestamp;
    // Always kCriterionCount entries in CriterionId order once validated.
    std::vector<CriterionAssessment> assessments;
    std::string schema_version{kSchemaVersion};
    std::optional<Provenance> provenance;

    const CriterionAssessment& at(CriterionId id) const;
    CriterionAssessment& at(CriterionId id);

    bool operator==(const ScoreSheet&) const = default;
};

/// A sheet with all 12 criteria at default weights and null mode.
ScoreSheet make_blank_sheet(std::string design_id, std::string assessor, std::string timestamp);

/// Throws ValidationError (with path) on the first core-model invariant breach.
void validate_sheet(const ScoreSheet& sheet);

bool is_valid_level(const Rational& score);

struct CriterionResult {
    CriterionId criterion = CriterionId::typedness;
    Rational weight{0};
    std::optional<Rational> score;  // Type D score, nullopt for null criteria
    bool weight_overridden = false;

    bool operator==(const CriterionResult&) const = default;
};

struct AssessmentReport {
    std::string design_id;
    std::vector<CriterionResult> per_criterion;
    Rational total_weight{0};
    Rational weighted_average{0};
    std::vector<std::string> assessor_set;
    MergeMode merge_mode = MergeMode::single;

    bool operator==(const AssessmentReport&) const = default;
};

}  // namespace glyphmcda
