#include "invariance.hpp"

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace glyphmcda {

namespace mp = boost::multiprecision;

std::string_view to_token(GlyphShape v) {
    return v == GlyphShape::circular ? "circular" : "rectangular";
}

GlyphShape glyph_shape_from_token(std::string_view token) {
    if (token == "circular") return GlyphShape::circular;
    if (token == "rectangular") return GlyphShape::rectangular;
    throw ValidationError("", "unknown glyph shape \"" + std::string(token) + "\"");
}

std::string_view to_token(SheetKind v) {
    return v == SheetKind::geometry ? "geometry" : "colorimetry";
}

void validate_geometry(const ViewingGeometry& geom) {
    if (!(geom.vf_deg > 0 && geom.vf_deg < 90)) throw ValidationError("/vf_deg", "visual field must lie in (0, 90)");
    if (!(geom.vd_cm > 0)) throw ValidationError("/vd_cm", "viewing distance must be positive");
}

ViewingArea viewing_area(const ViewingGeometry& geom) {
    validate_geometry(geom);
    const double half = geom.vf_deg * std::numbers::pi / 360.0;
    ViewingArea area;
    area.l_diam_cm = 2.0 * geom.vd_cm * std::tan(half);
    area.l_edge_cm = area.l_diam_cm / std::numbers::sqrt2;
    return area;
}

std::vector<double> scale_series(double base_cm) {
    if (!(base_cm > 0)) throw ValidationError("/base_cm", "base size must be positive");
    std::vector<double> out;
    for (const auto& f : kScaleFactors) out.push_back(base_cm * to_double(f));
    return out;
}

// ---- colorimetry ----

void validate_colorimetry(const ColorimetryParams& p) {
    const Rational lo(-255), hi(255);
    if (p.kappa_ctr < lo || p.kappa_ctr > hi) throw ValidationError("/kappa_ctr", "must lie in [-255, 255]");
    if (p.kappa_brt < lo || p.kappa_brt > hi) throw ValidationError("/kappa_brt", "must lie in [-255, 255]");
}

Rational contrast_factor(const Rational& kappa_ctr) {
    return Rational(259) * (kappa_ctr + 255) / (Rational(255) * (Rational(259) - kappa_ctr));
}

namespace {

// User kappas may carry large decimal denominators, so the formula runs in
// arbitrary precision to rule out int64 overflow.
mp::cpp_rational big(const Rational& r) {
    return mp::cpp_rational(mp::cpp_int(r.numerator()), mp::cpp_int(r.denominator()));
}

mp::cpp_rational unclamped(int x, const ColorimetryParams& p) {
    const mp::cpp_rational kc = big(p.kappa_ctr);
    const mp::cpp_rational factor = mp::cpp_rational(259) * (kc + 255) / (mp::cpp_rational(255) * (259 - kc));
    return factor * (x - 128) + 128 + big(p.kappa_brt);
}

mp::cpp_int floor_half_up(const mp::cpp_rational& v) {
    const mp::cpp_int num = 2 * mp::numerator(v) + mp::denominator(v);
    const mp::cpp_int den = 2 * mp::denominator(v);
    mp::cpp_int q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

}  // namespace

std::uint8_t colorimetry_transform(int x, const ColorimetryParams& p) {
    if (x < 0 || x > 255) throw ValidationError("/x", "channel value must lie in [0, 255]");
    validate_colorimetry(p);
    const mp::cpp_int r = floor_half_up(unclamped(x, p));
    if (r < 0) return 0;
    if (r > 255) return 255;
    return static_cast<std::uint8_t>(r.convert_to<int>());
}

double colorimetry_unclamped(int x, const ColorimetryParams& p) {
    return unclamped(x, p).convert_to<double>();
}

std::array<std::uint8_t, 256> colorimetry_lut(const ColorimetryParams& p) {
    std::array<std::uint8_t, 256> lut{};
    for (int x = 0; x < 256; ++x) lut[x] = colorimetry_transform(x, p);
    return lut;
}

GlyphImage apply_colorimetry(const GlyphImage& image, const ColorimetryParams& p) {
    const auto lut = colorimetry_lut(p);
    GlyphImage out = image;
    for (std::size_t i = 0; i < out.pixels.size(); i += out.channels) {
        for (int c = 0; c < 3; ++c) out.pixels[i + c] = lut[out.pixels[i + c]];
    }
    return out;
}

// ---- sheets ----

namespace {

constexpr int kPadding = 24;
constexpr int kCaptionScale = 2;
constexpr int kCaptionGap = 8;
constexpr int kCaptionHeight = kGlyphHeight * kCaptionScale;

std::string cm_caption(double cm) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << cm << "cm";
    return os.str();
}

std::string kappa_caption(char tag, const Rational& k) {
    std::string s(1, tag);
    if (k >= 0) s += '+';
    return s + to_canonical_string(k);
}

int px_of(double cm, double ppcm) {
    return static_cast<int>(std::lround(cm * ppcm));
}

}  // namespace

DegradationSheet geometry_sheet(const GlyphImage& image, const ViewingGeometry& geom, double ppcm) {
    if (image.empty()) throw ValidationError("/image", "image is empty");
    if (!(ppcm > 0)) throw ValidationError("/ppcm", "pixels per cm must be positive");
    const ViewingArea area = viewing_area(geom);
    const double base = geom.shape == GlyphShape::circular ? area.l_diam_cm : area.l_edge_cm;
    const auto sizes = scale_series(base);

    // Controlling dimension: width for a circular glyph; the shorter side
    // for a rectangular one.
    const bool width_controls = geom.shape == GlyphShape::circular || image.width <= image.height;
    const double aspect = static_cast<double>(image.height) / image.width;

    DegradationSheet sheet;
    sheet.kind = SheetKind::geometry;
    sheet.geometry = geom;
    sheet.ppcm = ppcm;
    sheet.base_cm = base;

    std::vector<GlyphImage> renders;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const int ctrl = px_of(sizes[i], ppcm);
        int w = ctrl, h = ctrl;
        if (width_controls) {
            h = static_cast<int>(std::lround(ctrl * aspect));
        } else {
            w = static_cast<int>(std::lround(ctrl / aspect));
        }
        if (w < 1 || h < 1) {
            throw CriterionInputError("rendering at scale " + to_canonical_string(kScaleFactors[i]) +
                                      " would be smaller than 1 px; raise ppcm");
        }
        SheetCell cell;
        cell.row = 0;
        cell.col = static_cast<int>(i);
        cell.width_px = w;
        cell.height_px = h;
        cell.scale = kScaleFactors[i];
        cell.size_cm = sizes[i];
        cell.caption = cm_caption(sizes[i]);
        sheet.manifest.push_back(cell);
        renders.push_back(resample_area(image, w, h));
    }

    CalibrationSquare calib;
    calib.size_px = px_of(kCalibrationCm, ppcm);
    if (calib.size_px < 1) throw CriterionInputError("calibration square would be smaller than 1 px");
    const std::string calib_caption = cm_caption(kCalibrationCm) + "x" + cm_caption(kCalibrationCm);

    int tallest = calib.size_px;
    for (const auto& c : sheet.manifest) tallest = std::max(tallest, c.height_px);

    int x = kPadding;
    for (auto& c : sheet.manifest) {
        const int slot = std::max(c.width_px, text_width(c.caption, kCaptionScale));
        c.x_px = x + (slot - c.width_px) / 2;
        c.y_px = kPadding + (tallest - c.height_px);  // bottom-aligned
        x += slot + kPadding;
    }
    const int calib_slot = std::max(calib.size_px, text_width(calib_caption, kCaptionScale));
    calib.x_px = x + (calib_slot - calib.size_px) / 2;
    calib.y_px = kPadding + (tallest - calib.size_px);
    x += calib_slot + kPadding;

    const int caption_y = kPadding + tallest + kCaptionGap;
    sheet.composite = GlyphImage(x, caption_y + kCaptionHeight + kPadding, 3, 255);
    for (std::size_t i = 0; i < renders.size(); ++i) {
        const auto& c = sheet.manifest[i];
        blit_over(sheet.composite, renders[i], c.x_px, c.y_px);
        const int tw = text_width(c.caption, kCaptionScale);
        draw_text(sheet.composite, c.x_px + (c.width_px - tw) / 2, caption_y, c.caption, kCaptionScale);
    }
    draw_rect_outline(sheet.composite, calib.x_px, calib.y_px, calib.size_px, calib.size_px, 2);
    const int tw = text_width(calib_caption, kCaptionScale);
    draw_text(sheet.composite, calib.x_px + (calib.size_px - tw) / 2, caption_y, calib_caption, kCaptionScale);
    sheet.calibration = calib;
    return sheet;
}

ColorimetryParams colorimetry_cell_params(int row, int col) {
    if (row < 0 || row > 3 || col < 0 || col > 4) throw ValidationError("", "cell outside the 4 x 5 grid");
    if (col == 0) return {};
    const Rational magnitude = Rational(51, 2) * col;
    const bool brt_positive = row < 2;
    const bool ctr_positive = row % 2 == 0;
    ColorimetryParams p;
    p.kappa_brt = brt_positive ? magnitude : -magnitude;
    p.kappa_ctr = ctr_positive ? magnitude : -magnitude;
    return p;
}

DegradationSheet colorimetry_sheet(const GlyphImage& image) {
    if (image.empty()) throw ValidationError("/image", "image is empty");
    DegradationSheet sheet;
    sheet.kind = SheetKind::colorimetry;

    std::vector<GlyphImage> renders;
    int caption_w = 0;
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 5; ++col) {
            SheetCell cell;
            cell.row = row;
            cell.col = col;
            cell.width_px = image.width;
            cell.height_px = image.height;
            cell.params = colorimetry_cell_params(row, col);
            cell.caption = kappa_caption('B', cell.params->kappa_brt) + " " + kappa_caption('C', cell.params->kappa_ctr);
            caption_w = std::max(caption_w, text_width(cell.caption, 1));
            sheet.manifest.push_back(cell);
            renders.push_back(apply_colorimetry(image, *cell.params));
        }
    }

    const int slot_w = std::max(image.width, caption_w);
    const int slot_h = image.height + kCaptionGap + kGlyphHeight;
    const int width = kPadding + 5 * (slot_w + kPadding);
    const int height = kPadding + 4 * (slot_h + kPadding);
    sheet.composite = GlyphImage(width, height, 3, 255);
    for (std::size_t i = 0; i < renders.size(); ++i) {
        auto& c = sheet.manifest[i];
        const int sx = kPadding + c.col * (slot_w + kPadding);
        const int sy = kPadding + c.row * (slot_h + kPadding);
        c.x_px = sx + (slot_w - c.width_px) / 2;
        c.y_px = sy;
        blit_over(sheet.composite, renders[i], c.x_px, c.y_px);
        const int tw = text_width(c.caption, 1);
        draw_text(sheet.composite, sx + (slot_w - tw) / 2, sy + image.height + kCaptionGap, c.caption, 1);
    }
    return sheet;
}

}  // namespace glyphmcda
