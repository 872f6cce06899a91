// Acceptance run: one PASS/FAIL line per primary criterion. Each check
// compares the library against printed values or against an oracle written
// here, independently of the library code. Exit status is non-zero if any
// criterion fails.

#include "aggregation.hpp"
#include "criteria.hpp"
#include "invariance.hpp"
#include "serialization.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

using namespace glyphmcda;
using testing_support::fixtures;
using testing_support::FixtureWorkspace;
using testing_support::rng;
using testing_support::run_cli;
using testing_support::sheet_from_scores;
using testing_support::slurp;
using testing_support::uniform;

namespace {

// ---- pinned tolerances ----
constexpr double kSizeTolCm = 0.005;       // printed sizes carry two decimals
constexpr double kPearsonTol = 1e-9;       // box formula vs expanded ranks
constexpr double kSpotTol = 1e-9;          // colorimetry pre-rounding value vs oracle
constexpr int kPearsonMatrices = 1000;
constexpr int kSeverityVectors = 1000;
constexpr int kKappaSamples = 1000;
constexpr double kRuntimeBudgetS = 60.0;

// Collects failures for one criterion.
class Outcome {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    bool passed() const { return failed_ == 0 && checks_ > 0; }
    std::string summary() const {
        std::ostringstream os;
        os << checks_ << " checks";
        if (failed_) {
            os << ", " << failed_ << " failed:";
            for (const auto& f : failures_) os << " [" << f << "]";
        }
        return os.str();
    }

private:
    int checks_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
};

using Scores = std::array<std::optional<std::string>, 12>;

struct Printed {
    std::string id;
    Scores scores;
    std::string total;
};

// ---- case studies ----

void case_study_1(Outcome& o) {
    const std::vector<Printed> rows = {
        {"A", {"5.00", "5.00", "4.14", "5", "3", "5", std::nullopt, "5", "5", "5", "5", "4"}, "4.66"},
        {"B", {"4.71", "5.00", "3.29", "4", "3", "1", std::nullopt, "5", "2", "1", "2", "1"}, "3.21"},
        {"C", {"5.00", "5.00", "4.13", "5", "5", "5", std::nullopt, "5", "5", "5", "5", "5"}, "4.80"},
        {"D", {"5.00", "5.00", "3.63", "5", "5", "3", std::nullopt, "4", "5", "5", "3", "1"}, "4.16"},
        {"E", {"5.00", "5.00", "4.10", "3", "4", "5", std::nullopt, "5", "5", "5", "4", "3"}, "4.44"},
    };
    for (const auto& r : rows) {
        const auto rep = weighted_average(sheet_from_scores(r.id, r.scores));
        const auto got = to_fixed(rep.weighted_average);
        o.expect(got == r.total, r.id + ": got " + got + ", printed " + r.total);
        o.expect(rep.total_weight == Rational(7), r.id + ": total weight " + to_short_string(rep.total_weight));
    }
}

void case_study_2(Outcome& o) {
    const std::vector<Printed> rows = {
        {"J1", {"4.84", "4.60", "3.43", "4.5", "5", "5", "5", "5", "5", "4.5", "3.5", "4"}, "4.48"},
        {"J2", {"4.84", "3.14", "3.03", "4.5", "5", "3", "4", "5", "5", "4.5", "3.5", "3.5"}, "4.00"},
        {"J3", {"4.84", "3.46", "4.81", "5", "5", "3", "5", "5", "5", "4.5", "4", "4"}, "4.45"},
        {"J4", {"4.84", "3.46", "4.97", "4", "5", "3", "3", "5", "5", "5", "5", "5"}, "4.44"},
        {"J5", {"4.92", "3.68", "2.27", "5", "5", "3", "3", "5", "5", "5", "2", "3"}, "3.85"},
    };
    std::vector<AssessmentReport> reports;
    for (const auto& r : rows) {
        const auto rep = weighted_average(sheet_from_scores(r.id, r.scores));
        const auto got = to_fixed(rep.weighted_average);
        o.expect(got == r.total, r.id + ": got " + got + ", printed " + r.total);
        o.expect(rep.total_weight == Rational(15, 2), r.id + ": total weight " + to_short_string(rep.total_weight));
        reports.push_back(rep);
    }
    const auto ranking = compare_designs(reports);
    std::vector<std::string> order;
    for (const auto& e : ranking.order) order.push_back(e.design_id);
    o.expect(order == std::vector<std::string>{"J1", "J3", "J4", "J2", "J5"}, "ranking order");
}

// ---- geometry ----

void geometry_sizes(Outcome& o) {
    const auto near = [](double a, double b) { return std::fabs(a - b) < kSizeTolCm; };
    const auto area = viewing_area({5.0, 50.0, GlyphShape::circular});
    o.expect(near(area.l_diam_cm, 4.37), "diameter " + std::to_string(area.l_diam_cm));
    o.expect(near(area.l_edge_cm, 3.09), "edge " + std::to_string(area.l_edge_cm));

    // oracle: 2 * 50 * tan(2.5 deg), edge = diameter / sqrt 2
    const long double diam = 100.0L * std::tan(2.5L * 3.14159265358979323846L / 180.0L);
    o.expect(std::fabs(area.l_diam_cm - static_cast<double>(diam)) < 1e-12, "diameter vs oracle");
    o.expect(std::fabs(area.l_edge_cm - static_cast<double>(diam / std::sqrt(2.0L))) < 1e-12, "edge vs oracle");

    const std::vector<double> printed_diam = {4.37, 3.49, 2.62, 1.75, 0.87};
    const std::vector<double> printed_edge = {3.09, 2.47, 1.85, 1.23, 0.62};
    const auto d = scale_series(area.l_diam_cm);
    const auto e = scale_series(area.l_edge_cm);
    o.expect(d.size() == 5 && e.size() == 5, "series length");
    for (std::size_t i = 0; i < 5 && i < d.size() && i < e.size(); ++i) {
        o.expect(near(d[i], printed_diam[i]), "diameter series " + std::to_string(i));
        o.expect(near(e[i], printed_edge[i]), "edge series " + std::to_string(i));
    }
}

// ---- colorimetry ----

// The contrast/brightness formula evaluated in long double, independently of
// the library's rational arithmetic.
long double formula(int x, long double ctr, long double brt) {
    const long double f = 259.0L * (ctr + 255.0L) / (255.0L * (259.0L - ctr));
    return f * (x - 128) + 128 + brt;
}

int formula_rounded(int x, long double ctr, long double brt) {
    const long double v = std::floor(formula(x, ctr, brt) + 0.5L);
    return static_cast<int>(std::clamp(v, 0.0L, 255.0L));
}

void colorimetry(Outcome& o) {
    for (int x = 0; x < 256; ++x) {
        o.expect(colorimetry_transform(x, {}) == x, "identity at " + std::to_string(x));
    }

    auto g = rng(705);
    for (int s = 0; s < kKappaSamples; ++s) {
        const ColorimetryParams p{Rational(uniform(g, -510, 510), 2), Rational(uniform(g, -510, 510), 2)};
        const auto lut = colorimetry_lut(p);
        bool monotone = true;
        for (int x = 1; x < 256; ++x) monotone = monotone && lut[x] >= lut[x - 1];
        o.expect(monotone, "monotone at ctr " + to_short_string(p.kappa_ctr));
    }

    struct Spot {
        int x;
        int ctr2;  // kappas in halves
        int brt2;
        int printed;  // -1 when only the oracle applies
    };
    const std::vector<Spot> spots = {{200, 102, -51, 210}, {128, 0, 0, 128}, {0, 204, 0, 0},
                                     {255, 204, 0, 255},   {60, -153, 51, -1}, {17, 51, -204, -1}};
    for (const auto& s : spots) {
        const ColorimetryParams p{Rational(s.ctr2, 2), Rational(s.brt2, 2)};
        const long double ctr = s.ctr2 / 2.0L, brt = s.brt2 / 2.0L;
        const std::string tag = "x=" + std::to_string(s.x) + " ctr=" + to_short_string(p.kappa_ctr);
        o.expect(colorimetry_transform(s.x, p) == formula_rounded(s.x, ctr, brt), tag + " vs oracle");
        o.expect(std::fabs(colorimetry_unclamped(s.x, p) - static_cast<double>(formula(s.x, ctr, brt))) < kSpotTol,
                 tag + " unrounded vs oracle");
        if (s.printed >= 0) o.expect(colorimetry_transform(s.x, p) == s.printed, tag + " printed value");
    }
}

// ---- Pearson ----

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

// Ranks listed box by box, written here rather than taken from the library.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> expand(const BoxCounts& counts) {
    std::vector<std::int64_t> importance, attention;
    for (std::size_t a = 0; a < counts.size(); ++a) {
        for (std::size_t i = 0; i < counts[a].size(); ++i) {
            for (std::int64_t n = 0; n < counts[a][i]; ++n) {
                importance.push_back(static_cast<std::int64_t>(i) + 1);
                attention.push_back(static_cast<std::int64_t>(a) + 1);
            }
        }
    }
    return {importance, attention};
}

bool varies(const std::vector<std::int64_t>& v) {
    return std::any_of(v.begin(), v.end(), [&](auto x) { return x != v.front(); });
}

void pearson(Outcome& o) {
    auto g = rng(706);
    int checked = 0, two_by_two = 0;
    while (checked < kPearsonMatrices) {
        const std::size_t k = uniform(g, 2, 3);
        BoxCounts counts(k, std::vector<std::int64_t>(k));
        for (auto& row : counts) {
            for (auto& c : row) c = uniform(g, 0, 6);
        }
        const auto [iota, alpha] = expand(counts);
        if (iota.size() < 2 || !varies(iota) || !varies(alpha)) continue;
        const double boxed = importance_pearson_boxes(counts);
        o.expect(std::fabs(boxed - static_cast<double>(naive_pearson(iota, alpha))) < kPearsonTol,
                 "matrix " + std::to_string(checked));
        if (k == 2) {
            o.expect(boxed == importance_pearson(iota, alpha), "2x2 closed form " + std::to_string(checked));
            ++two_by_two;
        }
        ++checked;
    }
    o.expect(two_by_two > 0, "some 2x2 matrices sampled");
}

// ---- separability ----

std::vector<Rational> channel_scores(int ones, int tenths, int hundredths, int zeros) {
    std::vector<Rational> out;
    out.insert(out.end(), ones, Rational(1));
    out.insert(out.end(), tenths, Rational(1, 10));
    out.insert(out.end(), hundredths, Rational(1, 100));
    out.insert(out.end(), zeros, Rational(0));
    return out;
}

void separability(Outcome& o) {
    // hand traces, one per pathway
    o.expect(separability_estimate(channel_scores(2, 5, 0, 3)) == Rational(3, 10), "major pathway");
    o.expect(separability_estimate(channel_scores(0, 2, 1, 2)) == Rational(1, 25), "medium pathway");
    o.expect(separability_estimate(channel_scores(0, 0, 3, 7)) == Rational(3, 1000), "minor pathway");
    o.expect(separability_estimate(channel_scores(1, 15, 0, 0)) == Rational(3, 16), "counting bonus");

    auto g = rng(707);
    const std::array<std::int64_t, 4> hundredths = {100, 10, 1, 0};
    for (int trial = 0; trial < kSeverityVectors; ++trial) {
        const int n = static_cast<int>(uniform(g, 1, 40));
        std::vector<Rational> scores;
        std::int64_t sum = 0, mx = 0;
        for (int i = 0; i < n; ++i) {
            const auto h = hundredths[uniform(g, 0, 3)];
            scores.emplace_back(h, 100);
            sum += h;
            mx = std::max(mx, h);
        }
        const auto m = separability_exact(scores);
        o.expect(m.avg_int == Rational(sum, 100 * n) && m.max_int == Rational(mx, 100),
                 "brute-force mean " + std::to_string(trial));
    }
}

// ---- boundaries ----

void boundaries(Outcome& o) {
    const auto lvl = [&](int got, int want, const std::string& what) {
        o.expect(got == want, what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
    };
    const double up = std::numeric_limits<double>::infinity();

    // 75% / 50% / 25%
    lvl(discernability_score(3, 1, 0), 4, "easy 75%");
    lvl(discernability_score(74, 26, 0), 3, "easy 74%");
    lvl(discernability_score(1, 1, 0), 3, "easy 50%");
    lvl(discernability_score(49, 51, 0), 2, "easy 49%");
    lvl(discernability_score(3, 0, 1), 1, "lost 25%");
    lvl(discernability_score(76, 0, 24), 2, "lost 24%");

    // scales 1/5..4/5 and kappa magnitudes
    lvl(geometry_score({false, false, false, false}), 1, "no scale");
    lvl(geometry_score({false, false, false, true}), 2, "scale 4/5");
    lvl(geometry_score({false, true, true, true}), 4, "scale 2/5");
    lvl(geometry_score({true, true, true, true}), 5, "scale 1/5");
    lvl(colorimetry_score({true, false, false, false}), 2, "kappa 25.5");
    lvl(colorimetry_score({true, true, true, false}), 4, "kappa 76.5");
    lvl(colorimetry_score({true, true, true, true}), 5, "kappa 102");

    // 1/8 and 1/4
    lvl(separability_score(Rational(1), Rational(1249, 10000)), 3, "avg below 1/8");
    lvl(separability_score(Rational(1), Rational(1, 8)), 2, "avg 1/8");
    lvl(separability_score(Rational(1), Rational(2499, 10000)), 2, "avg below 1/4");
    lvl(separability_score(Rational(1), Rational(1, 4)), 1, "avg 1/4");

    // C at 0.95 / 0.85 / 0.5 / 0
    lvl(importance_score(std::nextafter(0.95, up)), 5, "C above 0.95");
    lvl(importance_score(0.95), 4, "C 0.95");
    lvl(importance_score(std::nextafter(0.85, up)), 4, "C above 0.85");
    lvl(importance_score(0.85), 3, "C 0.85");
    lvl(importance_score(std::nextafter(0.5, up)), 3, "C above 0.5");
    lvl(importance_score(0.5), 2, "C 0.5");
    lvl(importance_score(std::nextafter(0.0, up)), 2, "C above 0");
    lvl(importance_score(0.0), 1, "C 0");

    // weak-attention counts
    for (int w = 0; w <= 4; ++w) lvl(balance_score(w), 5 - w, "weak " + std::to_string(w));
    lvl(balance_score(5), 1, "weak 5");

    // "a few" at 10% and 50%
    o.expect(is_a_few(2, 21), "2 of 21 is a few");
    o.expect(!is_a_few(2, 20), "2 of 20 is not a few");
    o.expect(is_more_than_a_few(9, 19), "9 of 19 is more than a few");
    o.expect(!is_more_than_a_few(10, 20), "10 of 20 is past more than a few");
    lvl(searchability_score(0, 2, 19), 4, "medium under 10%");
    lvl(searchability_score(0, 2, 18), 3, "medium 10%");
    lvl(searchability_score(0, 9, 10), 3, "medium under 50%");
    lvl(searchability_score(0, 10, 10), 2, "medium 50%");

    // learning time 0.5 / 1 / 1.5 / 2 h
    const auto t = [](Rational h) {
        return learnability_score({h, LearningMode::self_learning, RepeatedEffort::effortless});
    };
    const std::vector<std::pair<Rational, int>> times = {
        {Rational(49, 100), 5}, {Rational(1, 2), 4}, {Rational(99, 100), 4}, {Rational(1), 3},
        {Rational(149, 100), 3}, {Rational(3, 2), 2}, {Rational(199, 100), 2}, {Rational(2), 1}};
    for (const auto& [h, want] : times) lvl(t(h), want, "time " + to_short_string(h));

    // memory 100 / 90 / 75 / 50 after one hour, 100 / 75 / 50 / 25 after a day
    const auto m = [](Rational a, Rational b) { return memorability_score(a, b); };
    lvl(m(Rational(100), Rational(100)), 5, "1h 100");
    lvl(m(Rational(9999, 100), Rational(75)), 4, "1h below 100");
    lvl(m(Rational(90), Rational(90)), 4, "1h 90");
    lvl(m(Rational(8999, 100), Rational(75)), 3, "1h below 90");
    lvl(m(Rational(75), Rational(75)), 3, "1h 75");
    lvl(m(Rational(7499, 100), Rational(50)), 2, "1h below 75");
    lvl(m(Rational(50), Rational(50)), 2, "1h 50");
    lvl(m(Rational(4999, 100), Rational(25)), 1, "1h below 50");
    lvl(m(Rational(100), Rational(99)), 4, "24h below 100");
    lvl(m(Rational(100), Rational(75)), 4, "24h 75");
    lvl(m(Rational(100), Rational(74)), 3, "24h below 75");
    lvl(m(Rational(100), Rational(50)), 3, "24h 50");
    lvl(m(Rational(100), Rational(49)), 2, "24h below 50");
    lvl(m(Rational(100), Rational(25)), 2, "24h 25");
    lvl(m(Rational(100), Rational(24)), 1, "24h below 25");

    // the full intuitiveness map
    using DC = DomainConvention;
    using AM = AdditionalMetaphor;
    const std::map<std::pair<DC, AM>, int> map = {
        {{DC::cnDC, AM::apAM}, 5}, {{DC::noDC, AM::apAM}, 5}, {{DC::cnDC, AM::noAM}, 4},
        {{DC::cnDC, AM::okAM}, 4}, {{DC::noDC, AM::okAM}, 4}, {{DC::noDC, AM::noAM}, 3},
        {{DC::cnDC, AM::inAM}, 2}, {{DC::inDC, AM::okAM}, 2}, {{DC::inDC, AM::apAM}, 2},
        {{DC::noDC, AM::inAM}, 1}, {{DC::inDC, AM::noAM}, 1}, {{DC::inDC, AM::inAM}, 1},
    };
    o.expect(map.size() == 12, "twelve combinations");
    for (const auto& [key, want] : map) {
        lvl(intuitiveness_score({key.first, key.second}), want,
            std::string(to_token(key.first)) + "/" + std::string(to_token(key.second)));
    }
}

// ---- documents ----

void round_trip(Outcome& o) {
    const auto root = fixtures() / "workspace";
    int sheets = 0, designs = 0;
    for (const auto& e : std::filesystem::directory_iterator(root / "sheets")) {
        const auto text = slurp(e.path());
        const auto once = serialize_sheet(parse_sheet(text));
        o.expect(once == text, e.path().filename().string() + " round trip");
        o.expect(serialize_sheet(parse_sheet(once)) == once, e.path().filename().string() + " stable");
        ++sheets;
    }
    for (const auto& e : std::filesystem::directory_iterator(root / "designs")) {
        const auto text = slurp(e.path());
        o.expect(serialize_design(parse_design(text)) == text, e.path().filename().string() + " round trip");
        ++designs;
    }
    o.expect(sheets == 10 && designs == 10, "fixture count");
}

void cli_determinism(Outcome& o) {
    FixtureWorkspace fx;
    const std::string ws = "-w '" + fx.path().string() + "' ";
    for (const char* args : {"aggregate designA", "aggregate J3 --format structured", "compare J1 J2 J3 J4 J5",
                             "compare designA designB designC designD designE --format structured"}) {
        const auto a = run_cli(ws + args);
        const auto b = run_cli(ws + args);
        o.expect(a.status == 0 && b.status == 0, std::string(args) + " exit status");
        o.expect(!a.out.empty() && a.out == b.out, std::string(args) + " identical output");
    }
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"case study 1 weighted averages", case_study_1},
        {"case study 2 averages and ranking", case_study_2},
        {"geometry viewing area and size series", geometry_sizes},
        {"colorimetry transform", colorimetry},
        {"importance box formula vs Pearson", pearson},
        {"separability estimate and exact mean", separability},
        {"level-function boundaries", boundaries},
        {"sheet and design round trip", round_trip},
        {"CLI determinism", cli_determinism},
    };

    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        failed += !o.passed();
        std::cout << (o.passed() ? "PASS" : "FAIL") << "  " << name << "  (" << o.summary() << ")\n";
    }

    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool fast = elapsed < kRuntimeBudgetS;
    failed += !fast;
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << elapsed;
    std::cout << (fast ? "PASS" : "FAIL") << "  primary checks within " << kRuntimeBudgetS << " s  (" << secs.str()
              << " s)\n";

    std::cout << (failed ? std::to_string(failed) + " of 10 criteria failed" : "all 10 criteria passed") << "\n";
    return failed ? 1 : 0;
}
