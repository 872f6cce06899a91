#pragma once

// Level derivation for the twelve criteria. Every function is pure; inputs
// outside a function's domain raise CriterionInputError.

#include "kop.hpp"
#include "rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace glyphmcda {

using Level = int;

// ---- typedness ----

Level typedness_variable_score(const std::vector<std::map<Kop, Suitability>>& per_channel,
                               const std::set<Kop>& akops);

// ---- discernability ----

Level discernability_score(std::int64_t pairs_easy, std::int64_t pairs_differentiable, std::int64_t pairs_not);

/// k(k-1)/2 pairs among k key values.
std::int64_t pair_count(std::int64_t k);

// ---- intuitiveness ----

enum class DomainConvention { noDC, cnDC, inDC };
enum class AdditionalMetaphor { noAM, apAM, okAM, inAM };

struct IntuitivenessInputs {
    DomainConvention dc = DomainConvention::noDC;
    AdditionalMetaphor am = AdditionalMetaphor::noAM;
};

Level intuitiveness_score(IntuitivenessInputs inputs);

DomainConvention domain_convention_from_token(std::string_view token);
AdditionalMetaphor metaphor_from_token(std::string_view token);
std::string_view to_token(DomainConvention v);
std::string_view to_token(AdditionalMetaphor v);

// ---- invariance ----

/// Flags for the scales 1/5, 2/5, 3/5, 4/5 (in that order).
using GeometryFlags = std::array<bool, 4>;
Level geometry_score(const GeometryFlags& invariant_at);

/// Flags for the magnitudes 25.5, 51, 76.5, 102 (in that order).
using ColorimetryFlags = std::array<bool, 4>;
Level colorimetry_score(const ColorimetryFlags& invariant_at);

/// Collapses per-cell observations of a colorimetry sheet into per-magnitude
/// flags: `grid[row][m]` is the observation for sign row `row` and magnitude
/// index `m`; a magnitude is invariant only if all four sign rows are.
ColorimetryFlags colorimetry_flags_from_grid(const std::array<std::array<bool, 4>, 4>& grid);

inline const std::array<Rational, 4> kColorimetryMagnitudes = {Rational(51, 2), Rational(51), Rational(153, 2),
                                                               Rational(102)};

// ---- separability ----

enum class SeparabilitySeverity { none, minor, medium, major };

Rational severity_value(SeparabilitySeverity s);
SeparabilitySeverity severity_from_value(const Rational& value);
SeparabilitySeverity severity_from_token(std::string_view token);

/// S_int for one channel: max of the severities it receives. Empty -> 0.
Rational separability_channel_score(const std::vector<SeparabilitySeverity>& pairwise);

struct SeparabilityMoments {
    Rational max_int{0};
    Rational avg_int{0};
    bool operator==(const SeparabilityMoments&) const = default;
};

/// Exact mean and maximum of per-channel scores drawn from {1, 0.1, 0.01, 0}.
SeparabilityMoments separability_exact(const std::vector<Rational>& channel_scores);

/// Counting estimate of avg_int.
Rational separability_estimate(const std::vector<Rational>& channel_scores);

Level separability_score(const Rational& max_int, const Rational& avg_int);

// ---- comparability ----

std::int64_t comparability_pair_count(const std::vector<std::int64_t>& group_sizes);

/// nullopt when there are no pairs to compare (total_pairs == 0).
std::optional<Level> comparability_score(std::int64_t major, std::int64_t medium, std::int64_t minor,
                                         std::int64_t total_pairs);

// ---- attention: importance ----

/// Pearson correlation of two rank vectors (ties allowed).
double importance_pearson(const std::vector<std::int64_t>& importance, const std::vector<std::int64_t>& attention);

/// counts[a][i] = variables at attention level a+1 and importance level i+1.
using BoxCounts = std::vector<std::vector<std::int64_t>>;

double importance_pearson_boxes(const BoxCounts& counts);

/// Rank vectors (importance, attention) obtained by listing each box's
/// variables with their level indices as ranks.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> expand_boxes(const BoxCounts& counts);

Level importance_score(double c);
std::optional<Level> importance_score(std::optional<double> c);

// ---- attention: balance, searchability ----

Level balance_score(std::int64_t weak_count);

Level searchability_score(std::int64_t high, std::int64_t medium, std::int64_t low);

// ---- learnability, memorability ----

enum class LearningMode { self_learning, self_learning_qa, tutorial };
enum class RepeatedEffort { effortless, minor, noticeable, serious };

LearningMode learning_mode_from_token(std::string_view token);
RepeatedEffort repeated_effort_from_token(std::string_view token);

struct LearnabilityInputs {
    Rational learning_time_hours{0};
    LearningMode learning_mode = LearningMode::self_learning;
    RepeatedEffort repeated_effort = RepeatedEffort::effortless;
};

Level learnability_score(const LearnabilityInputs& inputs);

Level memorability_score(const Rational& pct_1h, const Rational& pct_24h);

// ---- "a few" ----

/// Fewer than 10% of `total`, and at least one item.
bool is_a_few(std::int64_t count, std::int64_t total);

/// 10% or more but less than 50% of `total` (and not "a few").
bool is_more_than_a_few(std::int64_t count, std::int64_t total);

}  // namespace glyphmcda
