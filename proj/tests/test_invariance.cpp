#include <doctest.h>

#include "errors.hpp"
#include "invariance.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace glyphmcda;
using testing_support::rng;
using testing_support::uniform;

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// The contrast/brightness formula in integer arithmetic for kappas given in
// halves (ctr = a/2, brt = c/2): half-up rounding, then clamping.
int oracle_transform(int x, std::int64_t a, std::int64_t c) {
    const std::int64_t den = 2 * 255 * (518 - a);
    const std::int64_t num = 2 * 259 * (a + 510) * (x - 128) + (256 + c) * 255 * (518 - a);
    const std::int64_t rounded = floor_div(2 * num + den, 2 * den);
    return static_cast<int>(std::clamp<std::int64_t>(rounded, 0, 255));
}

ColorimetryParams halves(std::int64_t a, std::int64_t c) {
    return {Rational(a, 2), Rational(c, 2)};
}

GlyphImage disc(int w, int h) {
    GlyphImage img(w, h, 4, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            auto* p = img.at(x, y);
            p[0] = static_cast<std::uint8_t>(x * 255 / std::max(1, w - 1));
            p[1] = 60;
            p[2] = static_cast<std::uint8_t>(y * 255 / std::max(1, h - 1));
            p[3] = 255;
        }
    }
    return img;
}

}  // namespace

// ---- viewing geometry ----

TEST_CASE("viewing area at the default distance and twice as far") {
    const auto a = viewing_area({5.0, 50.0, GlyphShape::circular});
    CHECK(std::fabs(a.l_diam_cm - 4.37) < 0.005);
    CHECK(std::fabs(a.l_edge_cm - 3.09) < 0.005);
    CHECK(a.l_diam_cm == doctest::Approx(100.0 * std::tan(2.5 * M_PI / 180.0)));

    const auto b = viewing_area({5.0, 100.0, GlyphShape::circular});
    CHECK(std::fabs(b.l_diam_cm - 8.73) < 0.005);
    CHECK(std::fabs(b.l_edge_cm - 6.17) < 0.005);

    const auto tiny = viewing_area({1e-9, 50.0, GlyphShape::circular});
    CHECK(tiny.l_diam_cm < 1e-8);

    CHECK_THROWS_AS(validate_geometry({0.0, 50.0, GlyphShape::circular}), ValidationError);
    CHECK_THROWS_AS(validate_geometry({90.0, 50.0, GlyphShape::circular}), ValidationError);
    CHECK_THROWS_AS(validate_geometry({5.0, 0.0, GlyphShape::circular}), ValidationError);
}

TEST_CASE("size series against the printed lists") {
    const auto area = viewing_area({});
    const std::vector<double> diam = {4.37, 3.49, 2.62, 1.75, 0.87};
    const std::vector<double> edge = {3.09, 2.47, 1.85, 1.23, 0.62};
    const auto d = scale_series(area.l_diam_cm);
    const auto e = scale_series(area.l_edge_cm);
    REQUIRE(d.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CAPTURE(i);
        CHECK(std::fabs(d[i] - diam[i]) < 0.005);
        CHECK(std::fabs(e[i] - edge[i]) < 0.005);
    }
    CHECK(scale_series(1.0) == std::vector<double>{1.0, 0.8, 0.6, 0.4, 0.2});
    CHECK_THROWS_AS(scale_series(0.0), ValidationError);
}

TEST_CASE("property: size series is decreasing and linear in the base") {
    auto g = rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const double base = static_cast<double>(uniform(g, 1, 100000)) / 1000.0;
        const double k = static_cast<double>(uniform(g, 1, 50)) / 10.0;
        const auto s = scale_series(base);
        const auto sk = scale_series(base * k);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) CHECK(s[i] < s[i - 1]);
            CHECK(sk[i] == doctest::Approx(s[i] * k));
        }
    }
}

// ---- geometry sheet ----

TEST_CASE("circular sheet cell widths at 96 dpi") {
    const auto sheet = geometry_sheet(disc(200, 200), {}, kDefaultPpcm);
    REQUIRE(sheet.manifest.size() == 5);
    const std::vector<int> widths = {165, 132, 99, 66, 33};
    for (std::size_t i = 0; i < 5; ++i) {
        CAPTURE(i);
        CHECK(std::abs(sheet.manifest[i].width_px - widths[i]) <= 1);
        CHECK(sheet.manifest[i].width_px == sheet.manifest[i].height_px);  // square stays square
        CHECK(sheet.manifest[i].scale == kScaleFactors[i]);
        CHECK(sheet.manifest[i].col == static_cast<int>(i));
    }
    REQUIRE(sheet.calibration.has_value());
    CHECK(sheet.calibration->size_px == 151);
    CHECK(sheet.base_cm == doctest::Approx(viewing_area({}).l_diam_cm));

    // cells sit inside the composite without overlapping
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& c = sheet.manifest[i];
        CHECK(c.x_px >= 0);
        CHECK(c.x_px + c.width_px <= sheet.composite.width);
        CHECK(c.y_px + c.height_px <= sheet.composite.height);
        if (i) CHECK(c.x_px >= sheet.manifest[i - 1].x_px + sheet.manifest[i - 1].width_px);
    }
}

TEST_CASE("rectangular glyphs are sized by the shorter side") {
    ViewingGeometry geom;
    geom.shape = GlyphShape::rectangular;
    const auto wide = geometry_sheet(disc(300, 150), geom, kDefaultPpcm);
    const auto edge_px = static_cast<int>(std::lround(viewing_area(geom).l_edge_cm * kDefaultPpcm));
    CHECK(wide.manifest[0].height_px == edge_px);
    CHECK(std::abs(wide.manifest[0].width_px - 2 * edge_px) <= 1);

    const auto tall = geometry_sheet(disc(100, 250), geom, kDefaultPpcm);
    CHECK(tall.manifest[0].width_px == edge_px);
}

TEST_CASE("property: cells keep the source aspect ratio within a pixel") {
    auto g = rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = static_cast<int>(uniform(g, 8, 120));
        const int h = static_cast<int>(uniform(g, 8, 120));
        ViewingGeometry geom;
        geom.shape = uniform(g, 0, 1) ? GlyphShape::circular : GlyphShape::rectangular;
        const auto sheet = geometry_sheet(disc(w, h), geom, kDefaultPpcm);
        for (const auto& c : sheet.manifest) {
            const double expected_h = static_cast<double>(c.width_px) * h / w;
            const double expected_w = static_cast<double>(c.height_px) * w / h;
            CHECK((std::fabs(c.height_px - expected_h) <= 1.0 || std::fabs(c.width_px - expected_w) <= 1.0));
        }
    }
}

TEST_CASE("renderings under one pixel are refused") {
    CHECK_THROWS_AS(geometry_sheet(disc(50, 50), {}, 0.5), CriterionInputError);
    CHECK_THROWS_AS(geometry_sheet(disc(50, 50), {}, 0.0), ValidationError);
    CHECK_THROWS_AS(geometry_sheet(GlyphImage{}, {}, kDefaultPpcm), ValidationError);
}

// ---- colorimetry ----

TEST_CASE("identity at zero kappas, exhaustively") {
    CHECK(contrast_factor(Rational(0)) == Rational(1));
    for (int x = 0; x < 256; ++x) CHECK(colorimetry_transform(x, {}) == x);
}

TEST_CASE("spot values") {
    CHECK(contrast_factor(Rational(51)) == Rational(79254, 53040));
    CHECK(colorimetry_transform(200, {Rational(51), Rational(-51, 2)}) == 210);
    CHECK(colorimetry_unclamped(200, {Rational(51), Rational(-51, 2)}) == doctest::Approx(210.08).epsilon(1e-4));
    CHECK(colorimetry_transform(0, {Rational(102), Rational(0)}) == 0);
    CHECK(colorimetry_unclamped(0, {Rational(102), Rational(0)}) == doctest::Approx(-167.6).epsilon(1e-3));
    CHECK(colorimetry_transform(128, {Rational(-255), Rational(0)}) == 128);
    CHECK(colorimetry_transform(100, {Rational(0), Rational(255)}) == 255);
}

TEST_CASE("property: transform matches an integer re-evaluation") {
    auto g = rng(43);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = uniform(g, -510, 510);
        const auto c = uniform(g, -510, 510);
        const auto lut = colorimetry_lut(halves(a, c));
        for (int x = 0; x < 256; ++x) {
            CAPTURE(a);
            CAPTURE(c);
            CAPTURE(x);
            REQUIRE(lut[x] == oracle_transform(x, a, c));
        }
    }
}

TEST_CASE("property: transform is monotone and affine before clamping") {
    auto g = rng(44);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = halves(uniform(g, -510, 510), uniform(g, -510, 510));
        const auto lut = colorimetry_lut(p);
        for (int x = 1; x < 256; ++x) REQUIRE(lut[x] >= lut[x - 1]);

        const double f = to_double(contrast_factor(p.kappa_ctr));
        const int x = static_cast<int>(uniform(g, 0, 255));
        const int y = static_cast<int>(uniform(g, 0, 255));
        CHECK(colorimetry_unclamped(x, p) - colorimetry_unclamped(y, p) == doctest::Approx(f * (x - y)));
    }
    CHECK_THROWS_AS(validate_colorimetry({Rational(256), Rational(0)}), ValidationError);
    CHECK_THROWS_AS(validate_colorimetry({Rational(0), Rational(-256)}), ValidationError);
}

TEST_CASE("applying the transform leaves alpha alone") {
    auto img = disc(6, 4);
    img.at(2, 2)[3] = 77;
    const auto out = apply_colorimetry(img, {Rational(51), Rational(51)});
    const auto lut = colorimetry_lut({Rational(51), Rational(51)});
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 6; ++x) {
            for (int ch = 0; ch < 3; ++ch) CHECK(out.at(x, y)[ch] == lut[img.at(x, y)[ch]]);
            CHECK(out.at(x, y)[3] == img.at(x, y)[3]);
        }
    }
}

TEST_CASE("grid parameters") {
    for (int row = 0; row < 4; ++row) CHECK(colorimetry_cell_params(row, 0) == ColorimetryParams{});
    CHECK(colorimetry_cell_params(0, 2) == ColorimetryParams{Rational(51), Rational(51)});
    CHECK(colorimetry_cell_params(1, 1) == ColorimetryParams{Rational(-51, 2), Rational(51, 2)});
    CHECK(colorimetry_cell_params(2, 3) == ColorimetryParams{Rational(153, 2), Rational(-153, 2)});
    CHECK(colorimetry_cell_params(3, 4) == ColorimetryParams{Rational(-102), Rational(-102)});
    CHECK_THROWS_AS(colorimetry_cell_params(4, 0), ValidationError);
}

TEST_CASE("colorimetry sheet has twenty cells") {
    const auto img = disc(24, 24);
    const auto sheet = colorimetry_sheet(img);
    CHECK(sheet.kind == SheetKind::colorimetry);
    REQUIRE(sheet.manifest.size() == 20);
    for (const auto& c : sheet.manifest) {
        REQUIRE(c.params.has_value());
        CHECK(*c.params == colorimetry_cell_params(c.row, c.col));
        CHECK(c.width_px == 24);
        CHECK(c.x_px + c.width_px <= sheet.composite.width);
        CHECK(c.y_px + c.height_px <= sheet.composite.height);
    }

    // the unmodified column reproduces the source on a white background
    const auto& first = sheet.manifest.front();
    CHECK(first.col == 0);
    for (int y = 0; y < 24; ++y) {
        for (int x = 0; x < 24; ++x) {
            for (int ch = 0; ch < 3; ++ch) {
                CHECK(sheet.composite.at(first.x_px + x, first.y_px + y)[ch] == img.at(x, y)[ch]);
            }
        }
    }
}

TEST_CASE("uniform grey shifts uniformly in brightness") {
    GlyphImage grey(4, 4, 3, 128);
    const auto out = apply_colorimetry(grey, {Rational(0), Rational(51)});
    for (auto p : out.pixels) CHECK(p == 179);
}

TEST_CASE("sheets survive a PNG round trip") {
    const auto sheet = geometry_sheet(disc(40, 40), {}, kDefaultPpcm);
    CHECK(decode_png(encode_png(sheet.composite)) == sheet.composite);
}
