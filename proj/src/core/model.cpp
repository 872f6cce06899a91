#include "model.hpp"

#include "errors.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace glyphmcda {
namespace {

template <typename Enum, std::size_t N>
using TokenTable = std::array<std::pair<Enum, std::string_view>, N>;

template <typename Enum, std::size_t N>
std::string_view lookup_token(const TokenTable<Enum, N>& table, Enum value) {
    for (const auto& [e, token] : table) {
        if (e == value) return token;
    }
    return "?";
}

template <typename Enum, std::size_t N>
Enum lookup_enum(const TokenTable<Enum, N>& table, std::string_view token, std::string_view what) {
    for (const auto& [e, t] : table) {
        if (t == token) return e;
    }
    throw ValidationError("", "unknown " + std::string(what) + " \"" + std::string(token) + "\"");
}

constexpr TokenTable<DataType, 5> kDataTypes{{
    {DataType::nominal, "nominal"},
    {DataType::ordinal, "ordinal"},
    {DataType::interval, "interval"},
    {DataType::ratio, "ratio"},
    {DataType::directional, "directional"},
}};

constexpr TokenTable<Kop, 4> kKops{{
    {Kop::associative, "associative"},
    {Kop::selective, "selective"},
    {Kop::ordered, "ordered"},
    {Kop::quantitative, "quantitative"},
}};

constexpr TokenTable<KopRating, 5> kKopRatings{{
    {KopRating::yes, "yes"},
    {KopRating::limited, "limited"},
    {KopRating::can_be, "can-be"},
    {KopRating::maybe, "maybe"},
    {KopRating::no, "no"},
}};

constexpr TokenTable<ChannelKind, 38> kChannelKinds{{
    {ChannelKind::size, "size"},
    {ChannelKind::orientation, "orientation"},
    {ChannelKind::shape, "shape"},
    {ChannelKind::curvature, "curvature"},
    {ChannelKind::smoothness, "smoothness"},
    {ChannelKind::brightness, "brightness"},
    {ChannelKind::color, "color"},
    {ChannelKind::opacity, "opacity"},
    {ChannelKind::texture, "texture"},
    {ChannelKind::shading, "shading"},
    {ChannelKind::halos, "halos"},
    {ChannelKind::shadow, "shadow"},
    {ChannelKind::photo_effects, "photo-effects"},
    {ChannelKind::implicit_motion, "implicit-motion"},
    {ChannelKind::explicit_motion, "explicit-motion"},
    {ChannelKind::connection_edge, "connection-edge"},
    {ChannelKind::node, "node"},
    {ChannelKind::inside_outside, "inside-outside"},
    {ChannelKind::enclosure_boundary, "enclosure-boundary"},
    {ChannelKind::distance, "distance"},
    {ChannelKind::closure_opening, "closure-opening"},
    {ChannelKind::connectivity, "connectivity"},
    {ChannelKind::partition, "partition"},
    {ChannelKind::intersection_overlap, "intersection-overlap"},
    {ChannelKind::depth_ordering, "depth-ordering"},
    {ChannelKind::hierarchy_level, "hierarchy-level"},
    {ChannelKind::density_distribution, "density-distribution"},
    {ChannelKind::convexity, "convexity"},
    {ChannelKind::continuity, "continuity"},
    {ChannelKind::genera, "genera"},
    {ChannelKind::similarity, "similarity"},
    {ChannelKind::deformation, "deformation"},
    {ChannelKind::number, "number"},
    {ChannelKind::text, "text"},
    {ChannelKind::symbol, "symbol"},
    {ChannelKind::sign, "sign"},
    {ChannelKind::isotype, "isotype"},
    {ChannelKind::custom, "custom"},
}};

constexpr TokenTable<CriterionId, kCriterionCount> kCriteria{{
    {CriterionId::typedness, "typedness"},
    {CriterionId::discernability, "discernability"},
    {CriterionId::intuitiveness, "intuitiveness"},
    {CriterionId::invariance_geometry, "invariance_geometry"},
    {CriterionId::invariance_colorimetry, "invariance_colorimetry"},
    {CriterionId::composition_separability, "composition_separability"},
    {CriterionId::composition_comparability, "composition_comparability"},
    {CriterionId::attention_importance, "attention_importance"},
    {CriterionId::attention_balance, "attention_balance"},
    {CriterionId::searchability, "searchability"},
    {CriterionId::learnability, "learnability"},
    {CriterionId::memorability, "memorability"},
}};

constexpr TokenTable<CriterionId, kCriterionCount> kCriterionNames{{
    {CriterionId::typedness, "Typedness"},
    {CriterionId::discernability, "Discernability"},
    {CriterionId::intuitiveness, "Intuitiveness"},
    {CriterionId::invariance_geometry, "Invariance: Geometry"},
    {CriterionId::invariance_colorimetry, "Invariance: Colorimetry"},
    {CriterionId::composition_separability, "Composition: Separability"},
    {CriterionId::composition_comparability, "Composition: Comparability"},
    {CriterionId::attention_importance, "Attention: Importance"},
    {CriterionId::attention_balance, "Attention: Balance"},
    {CriterionId::searchability, "Searchability"},
    {CriterionId::learnability, "Learnability"},
    {CriterionId::memorability, "Memorability"},
}};

constexpr TokenTable<AssessmentMode, 3> kModes{{
    {AssessmentMode::aggregated, "A_aggregated"},
    {AssessmentMode::direct, "D_direct"},
    {AssessmentMode::null, "null"},
}};

constexpr TokenTable<MergeMode, 3> kMergeModes{{
    {MergeMode::single, "single"},
    {MergeMode::mean, "mean"},
    {MergeMode::consensus, "consensus"},
}};

}  // namespace

const std::array<CriterionId, kCriterionCount>& all_criteria() {
    static const std::array<CriterionId, kCriterionCount> ids = [] {
        std::array<CriterionId, kCriterionCount> out{};
        for (std::size_t i = 0; i < kCriterionCount; ++i) out[i] = kCriteria[i].first;
        return out;
    }();
    return ids;
}

std::string_view to_token(DataType v) { return lookup_token(kDataTypes, v); }
std::string_view to_token(Kop v) { return lookup_token(kKops, v); }
std::string_view to_token(KopRating v) { return lookup_token(kKopRatings, v); }
std::string_view to_token(ChannelKind v) { return lookup_token(kChannelKinds, v); }
std::string_view to_token(CriterionId v) { return lookup_token(kCriteria, v); }
std::string_view to_token(AssessmentMode v) { return lookup_token(kModes, v); }
std::string_view to_token(MergeMode v) { return lookup_token(kMergeModes, v); }

DataType data_type_from_token(std::string_view t) { return lookup_enum(kDataTypes, t, "data type"); }
Kop kop_from_token(std::string_view t) { return lookup_enum(kKops, t, "kind of perception"); }
KopRating kop_rating_from_token(std::string_view t) { return lookup_enum(kKopRatings, t, "KOP rating"); }
ChannelKind channel_kind_from_token(std::string_view t) { return lookup_enum(kChannelKinds, t, "channel kind"); }
CriterionId criterion_from_token(std::string_view t) { return lookup_enum(kCriteria, t, "criterion id"); }
AssessmentMode mode_from_token(std::string_view t) { return lookup_enum(kModes, t, "assessment mode"); }
MergeMode merge_mode_from_token(std::string_view t) { return lookup_enum(kMergeModes, t, "merge mode"); }

std::string_view display_name(CriterionId id) { return lookup_token(kCriterionNames, id); }

Rational default_weight(CriterionId id) {
    switch (id) {
        case CriterionId::typedness:
        case CriterionId::discernability:
        case CriterionId::intuitiveness:
            return Rational(1);
        default:
            return Rational(1, 2);
    }
}

std::size_t index_of(CriterionId id) { return static_cast<std::size_t>(id); }

std::vector<Violation> validate_design(const GlyphDesign& design) {
    std::vector<Violation> out;
    if (design.id.empty()) out.push_back({"id", "design id must be non-empty"});

    std::set<std::string> variable_ids;
    int identity_count = 0;
    for (std::size_t i = 0; i < design.variables.size(); ++i) {
        const auto& v = design.variables[i];
        std::string field = "variables[" + std::to_string(i) + "]";
        if (v.id.empty()) out.push_back({field + ".id", "variable id must be non-empty"});
        if (!variable_ids.insert(v.id).second) {
            out.push_back({field + ".id", "duplicate variable id \"" + v.id + "\""});
        }
        if (v.key_value_count < 1) {
            out.push_back({field + ".key_value_count", "key_value_count must be >= 1"});
        }
        if (v.importance_rank && *v.importance_rank < 1) {
            out.push_back({field + ".importance_rank", "importance_rank must be >= 1"});
        }
        if (v.comparability_group && *v.comparability_group < 1) {
            out.push_back({field + ".comparability_group", "comparability_group must be >= 1"});
        }
        if (v.is_identity_variable) ++identity_count;
    }
    if (identity_count > 1) {
        out.push_back({"variables", "at most one identity variable"});
    }

    std::set<std::string> channel_ids;
    for (std::size_t i = 0; i < design.channels.size(); ++i) {
        const auto& c = design.channels[i];
        std::string field = "channels[" + std::to_string(i) + "]";
        if (c.id.empty()) out.push_back({field + ".id", "channel id must be non-empty"});
        if (!channel_ids.insert(c.id).second) {
            out.push_back({field + ".id", "duplicate channel id \"" + c.id + "\""});
        }
        if (c.kind == ChannelKind::custom && c.kop_ratings.size() != kAllKops.size()) {
            out.push_back({field + ".kop_ratings",
                           "custom channel \"" + c.id + "\" requires explicit ratings for all four KOPs"});
        }
    }

    for (const auto& v : design.variables) {
        auto it = design.encoding.find(v.id);
        if (it == design.encoding.end() || it->second.empty()) {
            out.push_back({"encoding." + v.id, "variable \"" + v.id + "\" is not mapped to any channel"});
        }
    }
    for (const auto& [var_id, channels] : design.encoding) {
        if (!variable_ids.count(var_id)) {
            out.push_back({"encoding." + var_id, "unknown variable \"" + var_id + "\""});
        }
        for (const auto& ch : channels) {
            if (!channel_ids.count(ch)) {
                out.push_back({"encoding." + var_id, "unknown channel \"" + ch + "\""});
            }
        }
    }
    return out;
}

const CriterionAssessment& ScoreSheet::at(CriterionId id) const {
    for (const auto& a : assessments) {
        if (a.criterion == id) return a;
    }
    throw ValidationError("/assessments", "missing criterion \"" + std::string(to_token(id)) + "\"");
}

CriterionAssessment& ScoreSheet::at(CriterionId id) {
    return const_cast<CriterionAssessment&>(std::as_const(*this).at(id));
}

ScoreSheet make_blank_sheet(std::string design_id, std::string assessor, std::string timestamp) {
    ScoreSheet sheet;
    sheet.design_id = std::move(design_id);
    sheet.assessor = std::move(assessor);
    sheet.timestamp = std::move(timestamp);
    for (CriterionId id : all_criteria()) {
        CriterionAssessment a;
        a.criterion = id;
        a.mode = AssessmentMode::null;
        a.weight = default_weight(id);
        sheet.assessments.push_back(std::move(a));
    }
    return sheet;
}

bool is_valid_level(const Rational& score) { return score >= 1 && score <= 5; }

void validate_sheet(const ScoreSheet& sheet) {
    if (sheet.schema_version != kSchemaVersion) {
        throw ValidationError("/schema_version", "unsupported schema version \"" + sheet.schema_version + "\"");
    }
    if (sheet.design_id.empty()) throw ValidationError("/design", "design id must be non-empty");
    if (sheet.assessor.empty()) throw ValidationError("/assessor", "assessor must be non-empty");
    if (sheet.assessments.size() != kCriterionCount) {
        throw ValidationError("/assessments", "expected exactly 12 assessments, got " +
                                                  std::to_string(sheet.assessments.size()));
    }
    for (std::size_t i = 0; i < kCriterionCount; ++i) {
        const auto& a = sheet.assessments[i];
        const std::string path = "/assessments/" + std::to_string(i);
        if (a.criterion != all_criteria()[i]) {
            throw ValidationError(path + "/criterion", "assessments must list each criterion once, in order");
        }
        if (a.weight < 0) throw ValidationError(path + "/weight", "weight must be non-negative");
        switch (a.mode) {
            case AssessmentMode::aggregated:
                if (a.variable_entries.empty()) {
                    throw ValidationError(path + "/variable_entries", "A_aggregated requires variable entries");
                }
                if (a.direct_score) {
                    throw ValidationError(path + "/direct_score", "A_aggregated must not carry a direct score");
                }
                for (std::size_t j = 0; j < a.variable_entries.size(); ++j) {
                    const auto& e = a.variable_entries[j];
                    const std::string epath = path + "/variable_entries/" + std::to_string(j);
                    if (e.variable_id.empty()) {
                        throw ValidationError(epath + "/variable_id", "variable id must be non-empty");
                    }
                    if (!is_valid_level(e.score)) {
                        throw ValidationError(epath + "/score", "score " + to_canonical_string(e.score) +
                                                                    " outside [1, 5]");
                    }
                    if (e.score.denominator() != 1) {
                        throw ValidationError(epath + "/score", "per-variable scores are integer levels 1-5");
                    }
                }
                break;
            case AssessmentMode::direct:
                if (!a.direct_score) throw ValidationError(path + "/direct_score", "D_direct requires a direct score");
                if (!a.variable_entries.empty()) {
                    throw ValidationError(path + "/variable_entries", "D_direct must not carry variable entries");
                }
                if (!is_valid_level(*a.direct_score)) {
                    throw ValidationError(path + "/direct_score",
                                          "score " + to_canonical_string(*a.direct_score) + " outside [1, 5]");
                }
                break;
            case AssessmentMode::null:
                if (a.direct_score || !a.variable_entries.empty()) {
                    throw ValidationError(path + "/mode", "null criteria carry no score");
                }
                break;
        }
    }
    if (sheet.provenance && sheet.provenance->assessors.empty()) {
        throw ValidationError("/provenance/assessors", "provenance must list the merged assessors");
    }
}

}  // namespace glyphmcda
