#pragma once

#include "model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace glyphmcda {

/// Exact mean of per-variable levels (the identity variable's entry included
/// when present). Throws CriterionInputError on an empty list.
Rational aggregate_type_a(const std::vector<Rational>& entries);

/// Type D score of one assessment; nullopt for null mode.
std::optional<Rational> type_d_score(const CriterionAssessment& assessment);

/// Weighted average over non-null criteria. Throws CriterionInputError when
/// every criterion is null or the remaining weights sum to zero.
AssessmentReport weighted_average(const ScoreSheet& sheet);

struct MergePolicy {
    MergeMode mode = MergeMode::mean;
    // consensus only: agreed Type D score for every non-null criterion
    std::map<CriterionId, Rational> agreed_scores;
    std::string note;
};

/// Combines several assessors' sheets for one design. Throws ValidationError
/// on design mismatch, weight mismatch, mixed null/non-null criteria, or an
/// incomplete consensus.
ScoreSheet merge_sheets(const std::vector<ScoreSheet>& sheets, const MergePolicy& policy);

struct RankedDesign {
    int rank = 0;  // competition ranking: equal averages share a rank
    std::string design_id;
    Rational weighted_average{0};
    Rational total_weight{0};
};

struct CriterionProfile {
    CriterionId criterion = CriterionId::typedness;
    // score per design, in ranking order; nullopt for null criteria
    std::vector<std::optional<Rational>> scores;
    // score minus the leader's score, nullopt when either side is null
    std::vector<std::optional<Rational>> delta_to_leader;
};

struct Ranking {
    std::vector<RankedDesign> order;
    std::vector<CriterionProfile> profile;
};

/// Descending weighted average; ties resolved by design id.
Ranking compare_designs(const std::vector<AssessmentReport>& reports);

}  // namespace glyphmcda
