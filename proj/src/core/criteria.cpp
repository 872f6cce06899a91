#include "criteria.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace glyphmcda {

// ---- typedness ----

Level typedness_variable_score(const std::vector<std::map<Kop, Suitability>>& per_channel,
                               const std::set<Kop>& akops) {
    if (per_channel.empty()) throw CriterionInputError("typedness needs at least one channel");
    if (akops.empty()) throw CriterionInputError("typedness needs at least one applicable KOP");

    int appropriate = 0;
    int usable = 0;
    int inappropriate = 0;
    for (Kop kop : akops) {
        auto best = Suitability::inappropriate;
        for (const auto& channel : per_channel) {
            auto it = channel.find(kop);
            if (it == channel.end()) {
                throw CriterionInputError("channel rating missing for AKOP \"" + std::string(to_token(kop)) + "\"");
            }
            best = std::max(best, it->second);
        }
        switch (best) {
            case Suitability::appropriate: ++appropriate; break;
            case Suitability::usable: ++usable; break;
            case Suitability::inappropriate: ++inappropriate; break;
        }
    }
    const int total = static_cast<int>(akops.size());
    if (appropriate == total) return 5;
    if (inappropriate == total) return 1;
    if (inappropriate > 0) return 2;
    if (usable == total) return 3;
    return 4;
}

// ---- discernability ----

Level discernability_score(std::int64_t easy, std::int64_t differentiable, std::int64_t not_differentiable) {
    if (easy < 0 || differentiable < 0 || not_differentiable < 0) {
        throw CriterionInputError("pair counts must be non-negative");
    }
    const std::int64_t n = easy + differentiable + not_differentiable;
    if (n == 0) throw CriterionInputError("discernability needs at least one pair");

    if (easy == n) return 5;
    if (not_differentiable == 0) {
        if (4 * easy >= 3 * n) return 4;  // [75%, 100%)
        if (2 * easy >= n) return 3;      // [50%, 75%)
        return 2;                         // all differentiable but < 50% at ease: clamp down
    }
    if (4 * not_differentiable >= n) return 1;  // >= 25% not differentiable
    return 2;
}

std::int64_t pair_count(std::int64_t k) {
    if (k < 1) throw CriterionInputError("key value count must be >= 1");
    return k * (k - 1) / 2;
}

// ---- intuitiveness ----

Level intuitiveness_score(IntuitivenessInputs in) {
    using DC = DomainConvention;
    using AM = AdditionalMetaphor;
    switch (in.dc) {
        case DC::cnDC:
            switch (in.am) {
                case AM::apAM: return 5;
                case AM::noAM:
                case AM::okAM: return 4;
                case AM::inAM: return 2;
            }
            break;
        case DC::noDC:
            switch (in.am) {
                case AM::apAM: return 5;
                case AM::okAM: return 4;
                case AM::noAM: return 3;
                case AM::inAM: return 1;
            }
            break;
        case DC::inDC:
            switch (in.am) {
                case AM::okAM:
                case AM::apAM: return 2;
                case AM::noAM:
                case AM::inAM: return 1;
            }
            break;
    }
    throw CriterionInputError("unknown intuitiveness combination");
}

DomainConvention domain_convention_from_token(std::string_view t) {
    if (t == "noDC") return DomainConvention::noDC;
    if (t == "cnDC") return DomainConvention::cnDC;
    if (t == "inDC") return DomainConvention::inDC;
    throw ValidationError("", "unknown domain convention \"" + std::string(t) + "\"");
}

AdditionalMetaphor metaphor_from_token(std::string_view t) {
    if (t == "noAM") return AdditionalMetaphor::noAM;
    if (t == "apAM") return AdditionalMetaphor::apAM;
    if (t == "okAM") return AdditionalMetaphor::okAM;
    if (t == "inAM") return AdditionalMetaphor::inAM;
    throw ValidationError("", "unknown additional metaphor \"" + std::string(t) + "\"");
}

std::string_view to_token(DomainConvention v) {
    switch (v) {
        case DomainConvention::noDC: return "noDC";
        case DomainConvention::cnDC: return "cnDC";
        case DomainConvention::inDC: return "inDC";
    }
    return "?";
}

std::string_view to_token(AdditionalMetaphor v) {
    switch (v) {
        case AdditionalMetaphor::noAM: return "noAM";
        case AdditionalMetaphor::apAM: return "apAM";
        case AdditionalMetaphor::okAM: return "okAM";
        case AdditionalMetaphor::inAM: return "inAM";
    }
    return "?";
}

// ---- invariance ----

Level geometry_score(const GeometryFlags& f) {
    // Smaller scales are harder: invariance at a scale implies invariance at every larger one.
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (f[i] && !f[i + 1]) throw CriterionInputError("inconsistent invariance observations");
    }
    if (f[0]) return 5;
    if (f[1]) return 4;
    if (f[2]) return 3;
    if (f[3]) return 2;
    return 1;
}

Level colorimetry_score(const ColorimetryFlags& f) {
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (f[i + 1] && !f[i]) throw CriterionInputError("inconsistent invariance observations");
    }
    if (f[3]) return 5;
    if (f[2]) return 4;
    if (f[1]) return 3;
    if (f[0]) return 2;
    return 1;
}

ColorimetryFlags colorimetry_flags_from_grid(const std::array<std::array<bool, 4>, 4>& grid) {
    ColorimetryFlags out{};
    for (std::size_t m = 0; m < 4; ++m) {
        out[m] = std::all_of(grid.begin(), grid.end(), [m](const auto& row) { return row[m]; });
    }
    return out;
}

// ---- separability ----

Rational severity_value(SeparabilitySeverity s) {
    switch (s) {
        case SeparabilitySeverity::major: return Rational(1);
        case SeparabilitySeverity::medium: return Rational(1, 10);
        case SeparabilitySeverity::minor: return Rational(1, 100);
        case SeparabilitySeverity::none: return Rational(0);
    }
    return Rational(0);
}

SeparabilitySeverity severity_from_value(const Rational& v) {
    if (v == 1) return SeparabilitySeverity::major;
    if (v == Rational(1, 10)) return SeparabilitySeverity::medium;
    if (v == Rational(1, 100)) return SeparabilitySeverity::minor;
    if (v == 0) return SeparabilitySeverity::none;
    throw CriterionInputError("interference score " + to_canonical_string(v) + " is not one of 1, 0.1, 0.01, 0");
}

SeparabilitySeverity severity_from_token(std::string_view t) {
    if (t == "major") return SeparabilitySeverity::major;
    if (t == "medium") return SeparabilitySeverity::medium;
    if (t == "minor") return SeparabilitySeverity::minor;
    if (t == "none") return SeparabilitySeverity::none;
    throw ValidationError("", "unknown severity \"" + std::string(t) + "\"");
}

Rational separability_channel_score(const std::vector<SeparabilitySeverity>& pairwise) {
    Rational out{0};
    for (auto s : pairwise) out = std::max(out, severity_value(s));
    return out;
}

SeparabilityMoments separability_exact(const std::vector<Rational>& scores) {
    if (scores.empty()) throw CriterionInputError("separability needs at least one channel");
    SeparabilityMoments m;
    Rational sum{0};
    for (const auto& s : scores) {
        severity_from_value(s);
        sum += s;
        m.max_int = std::max(m.max_int, s);
    }
    m.avg_int = sum / static_cast<std::int64_t>(scores.size());
    return m;
}

namespace {

// +1 unit for 5..14 items, +2 for 15..24, one more per further block of ten.
std::int64_t counting_bonus(std::int64_t count) { return count < 5 ? 0 : (count + 5) / 10; }

}  // namespace

Rational separability_estimate(const std::vector<Rational>& scores) {
    if (scores.empty()) throw CriterionInputError("separability needs at least one channel");
    std::int64_t k_major = 0;
    std::int64_t k_medium = 0;
    std::int64_t k_minor = 0;
    for (const auto& s : scores) {
        switch (severity_from_value(s)) {
            case SeparabilitySeverity::major: ++k_major; break;
            case SeparabilitySeverity::medium: ++k_medium; break;
            case SeparabilitySeverity::minor: ++k_minor; break;
            case SeparabilitySeverity::none: break;
        }
    }
    Rational total{0};
    if (k_major > 0) {
        total = Rational(k_major + counting_bonus(k_medium));
    } else if (k_medium > 0) {
        total = Rational(k_medium + counting_bonus(k_minor), 10);
    } else {
        total = Rational(k_minor, 100);
    }
    return total / static_cast<std::int64_t>(scores.size());
}

Level separability_score(const Rational& max_int, const Rational& avg_int) {
    if (max_int < 0 || max_int > 1 || avg_int < 0 || avg_int > max_int) {
        throw CriterionInputError("separability moments out of range");
    }
    if (max_int < Rational(1, 10)) return 5;
    if (max_int < 1) return 4;
    if (avg_int < Rational(1, 8)) return 3;
    if (avg_int < Rational(1, 4)) return 2;
    return 1;
}

// ---- comparability ----

std::int64_t comparability_pair_count(const std::vector<std::int64_t>& group_sizes) {
    std::int64_t m = 0;
    for (auto n : group_sizes) {
        if (n < 1) throw CriterionInputError("comparable groups must be non-empty");
        m += n * (n - 1) / 2;
    }
    return m;
}

bool is_a_few(std::int64_t count, std::int64_t total) {
    if (count < 1) return false;
    return count == 1 || 10 * count < total;
}

bool is_more_than_a_few(std::int64_t count, std::int64_t total) {
    return count >= 1 && !is_a_few(count, total) && 2 * count < total;
}

std::optional<Level> comparability_score(std::int64_t major, std::int64_t medium, std::int64_t minor,
                                         std::int64_t total_pairs) {
    if (major < 0 || medium < 0 || minor < 0 || total_pairs < 0) {
        throw CriterionInputError("obstacle counts must be non-negative");
    }
    if (major + medium + minor > total_pairs) {
        throw CriterionInputError("obstacle counts exceed the " + std::to_string(total_pairs) + " comparable pairs");
    }
    if (total_pairs == 0) return std::nullopt;
    if (major > 0) return 1;
    if (medium > 1) return 2;
    if (medium == 1) return 3;
    if (minor == 0) return 5;
    if (is_a_few(minor, total_pairs)) return 4;
    return 3;  // no medium, minor beyond "a few": clamp down
}

// ---- importance ----

namespace {

// Both Pearson routes end here with exact moments, so they agree bit for bit.
double pearson_from_moments(const Rational& cross, const Rational& var_importance, const Rational& var_attention) {
    if (var_importance == 0 || var_attention == 0) {
        throw CriterionInputError("correlation undefined: a ranking has zero variance");
    }
    double c = to_double(cross) / std::sqrt(to_double(var_importance) * to_double(var_attention));
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace

double importance_pearson(const std::vector<std::int64_t>& importance, const std::vector<std::int64_t>& attention) {
    if (importance.size() != attention.size()) {
        throw CriterionInputError("importance and attention rankings differ in length");
    }
    const auto n = static_cast<std::int64_t>(importance.size());
    if (n < 2) throw CriterionInputError("correlation needs at least two ranked variables");

    std::int64_t sum_i = 0;
    std::int64_t sum_a = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        sum_i += importance[k];
        sum_a += attention[k];
    }
    const Rational mean_i(sum_i, n);
    const Rational mean_a(sum_a, n);
    Rational cross{0};
    Rational var_i{0};
    Rational var_a{0};
    for (std::int64_t k = 0; k < n; ++k) {
        const Rational di = importance[k] - mean_i;
        const Rational da = attention[k] - mean_a;
        cross += di * da;
        var_i += di * di;
        var_a += da * da;
    }
    return pearson_from_moments(cross, var_i, var_a);
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> expand_boxes(const BoxCounts& counts) {
    std::vector<std::int64_t> importance;
    std::vector<std::int64_t> attention;
    for (std::size_t a = 0; a < counts.size(); ++a) {
        for (std::size_t i = 0; i < counts[a].size(); ++i) {
            for (std::int64_t c = 0; c < counts[a][i]; ++c) {
                importance.push_back(static_cast<std::int64_t>(i) + 1);
                attention.push_back(static_cast<std::int64_t>(a) + 1);
            }
        }
    }
    return {std::move(importance), std::move(attention)};
}

double importance_pearson_boxes(const BoxCounts& counts) {
    const std::size_t k = counts.size();
    if (k < 2) throw CriterionInputError("box grid must be at least 2x2");
    std::int64_t n = 0;
    for (const auto& row : counts) {
        if (row.size() != k) throw CriterionInputError("box grid must be square");
        for (auto c : row) {
            if (c < 0) throw CriterionInputError("box counts must be non-negative");
            n += c;
        }
    }
    if (n < 2) throw CriterionInputError("correlation needs at least two ranked variables");

    if (k > 2) {
        auto [importance, attention] = expand_boxes(counts);
        return importance_pearson(importance, attention);
    }

    // 2x2 closed form; n_{alpha,iota} = counts[alpha-1][iota-1].
    const std::int64_t n11 = counts[0][0];
    const std::int64_t n12 = counts[0][1];
    const std::int64_t n21 = counts[1][0];
    const std::int64_t n22 = counts[1][1];
    const Rational mean_i(n11 + n21 + 2 * n12 + 2 * n22, n);
    const Rational mean_a(n11 + n12 + 2 * n21 + 2 * n22, n);
    const Rational one_i = 1 - mean_i;
    const Rational two_i = 2 - mean_i;
    const Rational one_a = 1 - mean_a;
    const Rational two_a = 2 - mean_a;
    const Rational a = n11 * one_i * one_a + n12 * two_i * one_a + n21 * one_i * two_a + n22 * two_i * two_a;
    const Rational b_i = (n11 + n21) * one_i * one_i + (n12 + n22) * two_i * two_i;
    const Rational b_a = (n11 + n12) * one_a * one_a + (n21 + n22) * two_a * two_a;
    return pearson_from_moments(a, b_i, b_a);
}

Level importance_score(double c) {
    if (!(c >= -1.0 - 1e-12 && c <= 1.0 + 1e-12)) {
        throw CriterionInputError("correlation coefficient outside [-1, 1]");
    }
    if (c > 0.95) return 5;
    if (c > 0.85) return 4;
    if (c > 0.5) return 3;
    if (c > 0) return 2;
    return 1;
}

std::optional<Level> importance_score(std::optional<double> c) {
    if (!c) return std::nullopt;
    return importance_score(*c);
}

// ---- balance, searchability ----

Level balance_score(std::int64_t weak_count) {
    if (weak_count < 0) throw CriterionInputError("weak-attention count must be non-negative");
    switch (weak_count) {
        case 0: return 5;
        case 1: return 4;
        case 2: return 3;
        case 3: return 2;
        default: return 1;
    }
}

Level searchability_score(std::int64_t high, std::int64_t medium, std::int64_t low) {
    if (high < 0 || medium < 0 || low < 0) throw CriterionInputError("variable counts must be non-negative");
    const std::int64_t n = high + medium + low;
    if (n == 0) throw CriterionInputError("searchability needs at least one variable");

    if (high > 0) return is_a_few(high, n) ? 2 : 1;
    if (medium == 0) return 5;
    if (is_a_few(medium, n)) return 4;
    if (is_more_than_a_few(medium, n) && 2 * low > n) return 3;
    return 2;  // medium load on half or more of the variables: clamp down
}

// ---- learnability, memorability ----

LearningMode learning_mode_from_token(std::string_view t) {
    if (t == "self_learning") return LearningMode::self_learning;
    if (t == "self_learning_qa") return LearningMode::self_learning_qa;
    if (t == "tutorial") return LearningMode::tutorial;
    throw ValidationError("", "unknown learning mode \"" + std::string(t) + "\"");
}

RepeatedEffort repeated_effort_from_token(std::string_view t) {
    if (t == "effortless") return RepeatedEffort::effortless;
    if (t == "minor") return RepeatedEffort::minor;
    if (t == "noticeable") return RepeatedEffort::noticeable;
    if (t == "serious") return RepeatedEffort::serious;
    throw ValidationError("", "unknown repeated-learning effort \"" + std::string(t) + "\"");
}

Level learnability_score(const LearnabilityInputs& in) {
    const Rational& t = in.learning_time_hours;
    if (t < 0) throw CriterionInputError("learning time must be non-negative");

    Level time_level = 1;  // >= 2 h, including the unassigned [2, 3) band
    if (t < Rational(1, 2)) time_level = 5;
    else if (t < 1) time_level = 4;
    else if (t < Rational(3, 2)) time_level = 3;
    else if (t < 2) time_level = 2;

    Level mode_level = 3;
    switch (in.learning_mode) {
        case LearningMode::self_learning: mode_level = 5; break;
        case LearningMode::self_learning_qa: mode_level = 4; break;
        case LearningMode::tutorial: mode_level = 3; break;
    }

    Level effort_level = 1;
    switch (in.repeated_effort) {
        case RepeatedEffort::effortless: effort_level = 5; break;
        case RepeatedEffort::minor: effort_level = 3; break;
        case RepeatedEffort::noticeable: effort_level = 2; break;
        case RepeatedEffort::serious: effort_level = 1; break;
    }
    return std::min({time_level, mode_level, effort_level});
}

Level memorability_score(const Rational& pct_1h, const Rational& pct_24h) {
    if (pct_1h < 0 || pct_1h > 100 || pct_24h < 0 || pct_24h > 100) {
        throw CriterionInputError("memory percentages must lie in [0, 100]");
    }
    if (pct_24h > pct_1h) {
        throw CriterionInputError("recall after 24 hours cannot exceed recall after 1 hour");
    }
    Level one_hour = 1;
    if (pct_1h == 100) one_hour = 5;
    else if (pct_1h >= 90) one_hour = 4;
    else if (pct_1h >= 75) one_hour = 3;
    else if (pct_1h >= 50) one_hour = 2;

    Level day = 1;
    if (pct_24h == 100) day = 5;
    else if (pct_24h >= 75) day = 4;
    else if (pct_24h >= 50) day = 3;
    else if (pct_24h >= 25) day = 2;

    return std::min(one_hour, day);
}

}  // namespace glyphmcda
