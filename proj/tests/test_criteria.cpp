#include <doctest.h>

#include "criteria.hpp"
#include "errors.hpp"
#include "test_support.hpp"

#include <cmath>
#include <limits>

using namespace glyphmcda;
using testing_support::rng;
using testing_support::uniform;

namespace {

std::map<Kop, Suitability> all_of(Suitability s) {
    std::map<Kop, Suitability> m;
    for (Kop k : kAllKops) m[k] = s;
    return m;
}

// Textbook Pearson in long double, written independently of the library.
long double naive_pearson(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    const auto n = static_cast<long double>(x.size());
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

bool has_variance(const std::vector<std::int64_t>& v) {
    for (auto x : v) {
        if (x != v.front()) return true;
    }
    return false;
}

std::vector<Rational> scores_from(int ones, int tenths, int hundredths, int zeros) {
    std::vector<Rational> out;
    out.insert(out.end(), ones, Rational(1));
    out.insert(out.end(), tenths, Rational(1, 10));
    out.insert(out.end(), hundredths, Rational(1, 100));
    out.insert(out.end(), zeros, Rational(0));
    return out;
}

}  // namespace

// ---- typedness ----

TEST_CASE("typedness levels from best suitability per AKOP") {
    const std::set<Kop> all(kAllKops.begin(), kAllKops.end());
    CHECK(typedness_variable_score({all_of(Suitability::appropriate)}, all) == 5);
    CHECK(typedness_variable_score({all_of(Suitability::usable)}, all) == 3);
    CHECK(typedness_variable_score({all_of(Suitability::inappropriate)}, all) == 1);

    auto mixed = all_of(Suitability::appropriate);
    mixed[Kop::ordered] = Suitability::usable;
    CHECK(typedness_variable_score({mixed}, all) == 4);
    mixed[Kop::quantitative] = Suitability::inappropriate;
    CHECK(typedness_variable_score({mixed}, all) == 2);

    // A second channel can cover what the first lacks.
    CHECK(typedness_variable_score({mixed, all_of(Suitability::appropriate)}, all) == 5);
    CHECK_THROWS_AS(typedness_variable_score({}, all), CriterionInputError);
}

TEST_CASE("typedness examples through the knowledge base") {
    // shape on a nominal variable: associative yes, selective can-be
    std::map<Kop, Suitability> shape;
    for (Kop k : kAllKops) shape[k] = suitability(kop_rating(ChannelKind::shape, k));
    CHECK(typedness_variable_score({shape}, akops_for(DataType::nominal)) == 4);

    // brightness on a ratio variable: associative no
    std::map<Kop, Suitability> brightness;
    for (Kop k : kAllKops) brightness[k] = suitability(kop_rating(ChannelKind::brightness, k));
    CHECK(typedness_variable_score({brightness}, akops_for(DataType::ratio)) == 2);
}

// ---- discernability ----

TEST_CASE("discernability examples") {
    CHECK(discernability_score(10, 0, 0) == 5);
    CHECK(discernability_score(7, 3, 0) == 3);
    CHECK(discernability_score(5, 2, 3) == 1);
    CHECK_THROWS_AS(discernability_score(0, 0, 0), CriterionInputError);
}

TEST_CASE("discernability boundaries at 75%, 50% and 25%") {
    CHECK(discernability_score(3, 1, 0) == 4);    // e = 0.75 opens level 4
    CHECK(discernability_score(74, 26, 0) == 3);  // e = 0.74
    CHECK(discernability_score(99, 1, 0) == 4);   // e < 1 stays below 5
    CHECK(discernability_score(1, 1, 0) == 3);    // e = 0.5 opens level 3
    CHECK(discernability_score(49, 51, 0) == 2);  // e just under 0.5, nothing lost: clamps to 2
    CHECK(discernability_score(3, 0, 1) == 1);    // u = 0.25 is level 1
    CHECK(discernability_score(76, 0, 24) == 2);  // u = 0.24
    CHECK(discernability_score(9, 0, 1) == 2);    // any loss caps at 2
}

TEST_CASE("pair counts") {
    CHECK(pair_count(5) == 10);
    CHECK(pair_count(1) == 0);
    CHECK(pair_count(7) == 21);
    CHECK_THROWS_AS(pair_count(0), CriterionInputError);
}

// ---- intuitiveness ----

TEST_CASE("intuitiveness map is exhaustive over the twelve combinations") {
    using DC = DomainConvention;
    using AM = AdditionalMetaphor;
    const std::map<std::pair<DC, AM>, Level> expected = {
        {{DC::cnDC, AM::apAM}, 5}, {{DC::noDC, AM::apAM}, 5},
        {{DC::cnDC, AM::noAM}, 4}, {{DC::cnDC, AM::okAM}, 4}, {{DC::noDC, AM::okAM}, 4},
        {{DC::noDC, AM::noAM}, 3},
        {{DC::cnDC, AM::inAM}, 2}, {{DC::inDC, AM::okAM}, 2}, {{DC::inDC, AM::apAM}, 2},
        {{DC::noDC, AM::inAM}, 1}, {{DC::inDC, AM::noAM}, 1}, {{DC::inDC, AM::inAM}, 1},
    };
    REQUIRE(expected.size() == 12);
    int visited = 0;
    for (DC dc : {DC::noDC, DC::cnDC, DC::inDC}) {
        for (AM am : {AM::noAM, AM::apAM, AM::okAM, AM::inAM}) {
            CAPTURE(to_token(dc));
            CAPTURE(to_token(am));
            CHECK(intuitiveness_score({dc, am}) == expected.at({dc, am}));
            CHECK(domain_convention_from_token(to_token(dc)) == dc);
            CHECK(metaphor_from_token(to_token(am)) == am);
            ++visited;
        }
    }
    CHECK(visited == 12);
}

// ---- invariance flags ----

TEST_CASE("geometry and colorimetry levels over every flag combination") {
    for (int bits = 0; bits < 16; ++bits) {
        GeometryFlags g{};
        for (int i = 0; i < 4; ++i) g[i] = (bits >> i) & 1;
        CAPTURE(bits);

        // geometry: scales 1/5..4/5, invariance must be upward closed
        bool g_monotone = true;
        for (int i = 0; i < 3; ++i) g_monotone = g_monotone && (!g[i] || g[i + 1]);
        if (g_monotone) {
            int count = 0;
            for (bool f : g) count += f;
            CHECK(geometry_score(g) == 1 + count);
        } else {
            CHECK_THROWS_AS(geometry_score(g), CriterionInputError);
        }

        // colorimetry: magnitudes 25.5..102, invariance must be downward closed
        bool c_monotone = true;
        for (int i = 0; i < 3; ++i) c_monotone = c_monotone && (!g[i + 1] || g[i]);
        if (c_monotone) {
            int count = 0;
            for (bool f : g) count += f;
            CHECK(colorimetry_score(g) == 1 + count);
        } else {
            CHECK_THROWS_AS(colorimetry_score(g), CriterionInputError);
        }
    }
    CHECK(geometry_score({false, false, false, true}) == 2);
    CHECK(colorimetry_score({true, false, false, false}) == 2);
}

TEST_CASE("colorimetry grid needs every sign combination") {
    std::array<std::array<bool, 4>, 4> grid{};
    for (auto& row : grid) row = {true, true, true, false};
    CHECK(colorimetry_flags_from_grid(grid) == ColorimetryFlags{true, true, true, false});
    grid[2][1] = false;  // one sign pair fails at 51
    CHECK(colorimetry_flags_from_grid(grid) == ColorimetryFlags{true, false, true, false});
    CHECK_THROWS_AS(colorimetry_score(colorimetry_flags_from_grid(grid)), CriterionInputError);
    CHECK(kColorimetryMagnitudes[1] == Rational(51));
    CHECK(kColorimetryMagnitudes[2] == Rational(153, 2));
}

// ---- separability ----

TEST_CASE("channel interference is the maximum received severity") {
    using S = SeparabilitySeverity;
    CHECK(separability_channel_score({S::medium, S::minor, S::none}) == Rational(1, 10));
    CHECK(separability_channel_score({S::major, S::medium}) == Rational(1));
    CHECK(separability_channel_score({}) == Rational(0));
    CHECK(severity_value(S::minor) == Rational(1, 100));
    CHECK(severity_from_value(Rational(1, 10)) == S::medium);
    CHECK_THROWS_AS(severity_from_value(Rational(1, 2)), CriterionInputError);
}

TEST_CASE("exact separability moments") {
    CHECK(separability_exact(scores_from(1, 0, 0, 7)) == SeparabilityMoments{Rational(1), Rational(1, 8)});
    CHECK(separability_exact(scores_from(0, 0, 0, 5)) == SeparabilityMoments{Rational(0), Rational(0)});
    CHECK(separability_exact(scores_from(2, 5, 0, 3)) == SeparabilityMoments{Rational(1), Rational(1, 4)});
    CHECK_THROWS_AS(separability_exact({}), CriterionInputError);
}

TEST_CASE("estimate follows the three counting pathways") {
    // lines 1-8: K_a = 2, K_b = 5 -> T = 3
    CHECK(separability_estimate(scores_from(2, 5, 0, 3)) == Rational(3, 10));
    // lines 1, 2, 9-17: K_a = 0, K_b = 2, K_c = 1 -> T = 0.2
    CHECK(separability_estimate(scores_from(0, 2, 1, 2)) == Rational(1, 25));
    // lines 1, 2, 9-11, 18-20: only minors
    CHECK(separability_estimate(scores_from(0, 0, 3, 7)) == Rational(3, 1000));
    CHECK(separability_estimate(scores_from(0, 0, 0, 4)) == Rational(0));
}

TEST_CASE("estimate counting bonus blocks") {
    // K_b in [5, 14] adds 1, [15, 24] adds 2, [25, 34] adds 3
    CHECK(separability_estimate(scores_from(1, 4, 0, 0)) == Rational(1, 5));
    CHECK(separability_estimate(scores_from(1, 5, 0, 0)) == Rational(2, 6));
    CHECK(separability_estimate(scores_from(1, 14, 0, 0)) == Rational(2, 15));
    CHECK(separability_estimate(scores_from(1, 15, 0, 0)) == Rational(3, 16));
    CHECK(separability_estimate(scores_from(1, 24, 0, 0)) == Rational(3, 25));
    CHECK(separability_estimate(scores_from(1, 25, 0, 0)) == Rational(4, 26));
    // the same blocks one level down, in tenths
    CHECK(separability_estimate(scores_from(0, 1, 4, 0)) == Rational(1, 50));
    CHECK(separability_estimate(scores_from(0, 1, 5, 0)) == Rational(2, 60));
    CHECK(separability_estimate(scores_from(0, 1, 15, 0)) == Rational(3, 160));
}

TEST_CASE("separability level boundaries") {
    CHECK(separability_score(Rational(1, 100), Rational(1, 100)) == 5);
    CHECK(separability_score(Rational(0), Rational(0)) == 5);
    CHECK(separability_score(Rational(1, 10), Rational(1, 100)) == 4);
    CHECK(separability_score(Rational(1), Rational(1, 9)) == 3);
    CHECK(separability_score(Rational(1), Rational(1, 8)) == 2);  // 1/8 belongs to level 2
    CHECK(separability_score(Rational(1), Rational(1249, 10000)) == 3);
    CHECK(separability_score(Rational(1), Rational(2499, 10000)) == 2);
    CHECK(separability_score(Rational(1), Rational(1, 4)) == 1);  // 1/4 belongs to level 1
    CHECK_THROWS_AS(separability_score(Rational(1, 10), Rational(1, 2)), CriterionInputError);
}

TEST_CASE("property: exact moments match a brute-force mean") {
    auto g = rng(2024);
    const std::array<Rational, 4> values = {Rational(1), Rational(1, 10), Rational(1, 100), Rational(0)};
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = static_cast<int>(uniform(g, 1, 40));
        std::vector<Rational> scores;
        std::int64_t thousandths = 0;  // every value is a multiple of 0.01; count in hundredths
        std::int64_t max_hundredths = 0;
        for (int i = 0; i < n; ++i) {
            const auto& v = values[uniform(g, 0, 3)];
            scores.push_back(v);
            const std::int64_t h = (v * 100).numerator();
            thousandths += h;
            max_hundredths = std::max(max_hundredths, h);
        }
        const auto m = separability_exact(scores);
        CHECK(m.avg_int == Rational(thousandths, 100 * n));
        CHECK(m.max_int == Rational(max_hundredths, 100));

        // with at least one major and fewer than five mediums the estimate is K_a / n
        int ka = 0, kb = 0;
        for (const auto& s : scores) {
            ka += s == Rational(1);
            kb += s == Rational(1, 10);
        }
        if (ka > 0 && kb < 5) CHECK(separability_estimate(scores) == Rational(ka, n));
    }
}

// ---- comparability ----

TEST_CASE("comparability pairs and levels") {
    CHECK(comparability_pair_count({2, 3}) == 4);
    CHECK(comparability_pair_count({}) == 0);
    CHECK(comparability_pair_count({5}) == 10);

    CHECK(comparability_score(0, 0, 0, 4) == 5);
    CHECK(comparability_score(1, 0, 0, 4) == 1);
    CHECK(comparability_score(0, 2, 1, 10) == 2);
    CHECK(comparability_score(0, 1, 5, 10) == 3);
    CHECK(comparability_score(0, 0, 1, 4) == 4);  // one is always "a few"
    CHECK_FALSE(comparability_score(0, 0, 0, 0).has_value());
    CHECK_THROWS_AS(comparability_score(3, 2, 0, 4), CriterionInputError);
}

TEST_CASE("'a few' means under 10% with a floor of one") {
    CHECK(is_a_few(1, 5));
    CHECK(is_a_few(2, 21));
    CHECK_FALSE(is_a_few(2, 20));  // exactly 10%
    CHECK_FALSE(is_a_few(0, 20));
    CHECK(is_more_than_a_few(2, 20));
    CHECK(is_more_than_a_few(9, 19));
    CHECK_FALSE(is_more_than_a_few(10, 20));  // 50% is beyond "more than a few"

    CHECK(comparability_score(0, 0, 2, 21) == 4);
    CHECK(comparability_score(0, 0, 2, 20) == 3);
}

// ---- importance ----

TEST_CASE("Pearson examples") {
    CHECK(importance_pearson({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(importance_pearson({1, 2}, {2, 1}) == doctest::Approx(-1.0));
    CHECK(importance_pearson({1, 1, 2, 2}, {1, 2, 1, 2}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(importance_pearson({1, 1, 1}, {1, 2, 3}), CriterionInputError);
    CHECK_THROWS_AS(importance_pearson({1, 2}, {1, 2, 3}), CriterionInputError);
}

TEST_CASE("box counts examples") {
    CHECK(importance_pearson_boxes({{2, 0}, {0, 2}}) == doctest::Approx(1.0));
    CHECK(importance_pearson_boxes({{0, 2}, {2, 0}}) == doctest::Approx(-1.0));
    CHECK(importance_pearson_boxes({{1, 1}, {1, 1}}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(importance_pearson_boxes({{2, 2}, {0, 0}}), CriterionInputError);
    CHECK_THROWS_AS(importance_pearson_boxes({{1, 0, 0}, {0, 1, 0}}), CriterionInputError);
}

TEST_CASE("property: box formula agrees with Pearson on expanded ranks") {
    auto g = rng(8);
    int checked = 0;
    while (checked < 1000) {
        const std::size_t k = uniform(g, 2, 3);
        BoxCounts counts(k, std::vector<std::int64_t>(k, 0));
        for (auto& row : counts) {
            for (auto& c : row) c = uniform(g, 0, 6);
        }
        const auto [iota, alpha] = expand_boxes(counts);
        if (iota.size() < 2 || !has_variance(iota) || !has_variance(alpha)) {
            CHECK_THROWS_AS(importance_pearson_boxes(counts), CriterionInputError);
            continue;
        }
        const double boxed = importance_pearson_boxes(counts);
        CHECK(std::fabs(boxed - static_cast<double>(naive_pearson(iota, alpha))) < 1e-9);
        if (k == 2) CHECK(boxed == importance_pearson(iota, alpha));  // closed form equals the general path
        ++checked;
    }
}

TEST_CASE("property: Pearson symmetry and reversal") {
    auto g = rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = uniform(g, 2, 12);
        std::vector<std::int64_t> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = uniform(g, 1, 5);
            y[i] = uniform(g, 1, 5);
        }
        if (!has_variance(x) || !has_variance(y)) continue;
        const double c = importance_pearson(x, y);
        CHECK(importance_pearson(y, x) == doctest::Approx(c).epsilon(1e-12));
        std::vector<std::int64_t> reversed(n);
        for (std::size_t i = 0; i < n; ++i) reversed[i] = 6 - y[i];
        CHECK(importance_pearson(x, reversed) == doctest::Approx(-c).epsilon(1e-12));
    }
}

TEST_CASE("importance level boundaries") {
    const double up = std::numeric_limits<double>::infinity();
    CHECK(importance_score(1.0) == 5);
    CHECK(importance_score(std::nextafter(0.95, up)) == 5);
    CHECK(importance_score(0.95) == 4);
    CHECK(importance_score(std::nextafter(0.85, up)) == 4);
    CHECK(importance_score(0.85) == 3);
    CHECK(importance_score(std::nextafter(0.5, up)) == 3);
    CHECK(importance_score(0.5) == 2);
    CHECK(importance_score(std::nextafter(0.0, up)) == 2);
    CHECK(importance_score(0.0) == 1);
    CHECK(importance_score(-1.0) == 1);
    CHECK_FALSE(importance_score(std::optional<double>{}).has_value());
    CHECK_THROWS_AS(importance_score(1.5), CriterionInputError);
}

// ---- balance, searchability ----

TEST_CASE("weak-attention counts") {
    CHECK(balance_score(0) == 5);
    CHECK(balance_score(1) == 4);
    CHECK(balance_score(2) == 3);
    CHECK(balance_score(3) == 2);
    CHECK(balance_score(4) == 1);
    CHECK(balance_score(7) == 1);
    CHECK_THROWS_AS(balance_score(-1), CriterionInputError);
}

TEST_CASE("searchability examples and boundaries") {
    CHECK(searchability_score(0, 0, 12) == 5);
    CHECK(searchability_score(1, 3, 8) == 2);
    CHECK(searchability_score(0, 1, 11) == 4);

    CHECK(searchability_score(0, 2, 19) == 4);   // 2/21 < 10%
    CHECK(searchability_score(0, 2, 18) == 3);   // 2/20 = 10%, low over half
    CHECK(searchability_score(0, 9, 10) == 3);   // 9/19 < 50%
    CHECK(searchability_score(0, 10, 10) == 2);  // 50% medium: clamps down
    CHECK(searchability_score(2, 0, 19) == 2);   // high a few
    CHECK(searchability_score(2, 0, 18) == 1);   // high 10%: more than a few
    CHECK_THROWS_AS(searchability_score(0, 0, 0), CriterionInputError);
}

// ---- learnability, memorability ----

TEST_CASE("learnability examples and time cutoffs") {
    using LM = LearningMode;
    using RE = RepeatedEffort;
    CHECK(learnability_score({Rational(3, 10), LM::self_learning, RE::effortless}) == 5);
    CHECK(learnability_score({Rational(6, 5), LM::tutorial, RE::minor}) == 3);
    CHECK(learnability_score({Rational(3, 10), LM::tutorial, RE::effortless}) == 3);

    auto time_level = [](Rational h) { return learnability_score({h, LM::self_learning, RE::effortless}); };
    CHECK(time_level(Rational(49, 100)) == 5);
    CHECK(time_level(Rational(1, 2)) == 4);
    CHECK(time_level(Rational(99, 100)) == 4);
    CHECK(time_level(Rational(1)) == 3);
    CHECK(time_level(Rational(149, 100)) == 3);
    CHECK(time_level(Rational(3, 2)) == 2);
    CHECK(time_level(Rational(199, 100)) == 2);
    CHECK(time_level(Rational(2)) == 1);
    CHECK(time_level(Rational(5, 2)) == 1);  // the unassigned [2, 3) band
    CHECK(time_level(Rational(3)) == 1);

    CHECK(learnability_score({Rational(0), LM::self_learning_qa, RE::effortless}) == 4);
    CHECK(learnability_score({Rational(0), LM::self_learning, RE::noticeable}) == 2);
    CHECK(learnability_score({Rational(0), LM::self_learning, RE::serious}) == 1);
    CHECK_THROWS_AS(time_level(Rational(-1)), CriterionInputError);
}

TEST_CASE("memorability examples and horizon cutoffs") {
    auto m = [](int a, int b) { return memorability_score(Rational(a), Rational(b)); };
    CHECK(m(100, 100) == 5);
    CHECK(m(95, 80) == 4);
    CHECK(m(95, 60) == 3);

    // 1 hour: 100 / 90 / 75 / 50
    CHECK(m(99, 0) == 1);
    CHECK(memorability_score(Rational(100), Rational(100)) == 5);
    CHECK(memorability_score(Rational(9999, 100), Rational(75)) == 4);
    CHECK(m(90, 90) == 4);
    CHECK(memorability_score(Rational(8999, 100), Rational(75)) == 3);
    CHECK(m(75, 75) == 3);
    CHECK(memorability_score(Rational(7499, 100), Rational(50)) == 2);
    CHECK(m(50, 50) == 2);
    CHECK(memorability_score(Rational(4999, 100), Rational(25)) == 1);

    // 24 hours: 100 / 75 / 50 / 25
    CHECK(m(100, 99) == 4);
    CHECK(m(100, 75) == 4);
    CHECK(m(100, 74) == 3);
    CHECK(m(100, 50) == 3);
    CHECK(m(100, 49) == 2);
    CHECK(m(100, 25) == 2);
    CHECK(m(100, 24) == 1);

    CHECK_THROWS_AS(m(80, 90), CriterionInputError);
    CHECK_THROWS_AS(m(101, 90), CriterionInputError);
}

TEST_CASE("property: level functions stay within 1..5 on random valid inputs") {
    auto g = rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto e = uniform(g, 0, 30), d = uniform(g, 0, 30), u = uniform(g, 0, 30);
        if (e + d + u > 0) {
            const Level l = discernability_score(e, d, u);
            CHECK((l >= 1 && l <= 5));
        }
        const auto h = uniform(g, 0, 10), m = uniform(g, 0, 30), lo = uniform(g, 0, 30);
        if (h + m + lo > 0) {
            const Level l = searchability_score(h, m, lo);
            CHECK((l >= 1 && l <= 5));
        }
        const auto pairs = uniform(g, 0, 40);
        const auto major = uniform(g, 0, pairs);
        const auto medium = uniform(g, 0, pairs - major);
        const auto minor = uniform(g, 0, pairs - major - medium);
        if (auto l = comparability_score(major, medium, minor, pairs)) {
            CHECK((*l >= 1 && *l <= 5));
        } else {
            CHECK(pairs == 0);
        }
        const Rational p1(uniform(g, 0, 10000), 100);
        const Rational p24(uniform(g, 0, (p1 * 100).numerator()), 100);
        const Level mem = memorability_score(p1, p24);
        CHECK((mem >= 1 && mem <= 5));
        const Level learn = learnability_score({Rational(uniform(g, 0, 400), 100),
                                                static_cast<LearningMode>(uniform(g, 0, 2)),
                                                static_cast<RepeatedEffort>(uniform(g, 0, 3))});
        CHECK((learn >= 1 && learn <= 5));
    }
}
