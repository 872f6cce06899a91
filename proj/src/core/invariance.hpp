#pragma once

// Degradation artifacts for the two invariance criteria: size series and
// composite sheets for geometry, contrast/brightness grids for colorimetry.

#include "image.hpp"
#include "rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glyphmcda {

enum class GlyphShape { circular, rectangular };

std::string_view to_token(GlyphShape v);
GlyphShape glyph_shape_from_token(std::string_view token);

struct ViewingGeometry {
    double vf_deg = 5.0;
    double vd_cm = 50.0;
    GlyphShape shape = GlyphShape::circular;
};

/// Throws ValidationError unless vf is in (0, 90) and vd > 0.
void validate_geometry(const ViewingGeometry& geom);

struct ViewingArea {
    double l_diam_cm = 0;
    double l_edge_cm = 0;
};

/// Diameter of the viewing circle, 2 * VD * tan(VF / 2), and the edge of the
/// square inscribed in it. The defaults give 4.37 cm and 3.09 cm.
ViewingArea viewing_area(const ViewingGeometry& geom);

/// Scaling factors of the size series, largest first.
inline const std::array<Rational, 5> kScaleFactors = {Rational(1), Rational(4, 5), Rational(3, 5), Rational(2, 5),
                                                      Rational(1, 5)};

/// base * {1, 4/5, 3/5, 2/5, 1/5}. Throws ValidationError when base <= 0.
std::vector<double> scale_series(double base_cm);

inline constexpr double kDefaultPpcm = 37.8;  // 96 dpi
inline constexpr double kCalibrationCm = 4.0;

struct ColorimetryParams {
    Rational kappa_ctr{0};
    Rational kappa_brt{0};
    bool operator==(const ColorimetryParams&) const = default;
};

/// Throws ValidationError unless both kappas lie in [-255, 255].
void validate_colorimetry(const ColorimetryParams& p);

/// Contrast factor 259 (k + 255) / (255 (259 - k)).
Rational contrast_factor(const Rational& kappa_ctr);

/// One channel value through the contrast/brightness formula: exact
/// evaluation, half-up rounding, clamp to [0, 255].
std::uint8_t colorimetry_transform(int x, const ColorimetryParams& p);

/// The value before rounding and clamping, as a double (for diagnostics).
double colorimetry_unclamped(int x, const ColorimetryParams& p);

/// colorimetry_transform for all 256 inputs.
std::array<std::uint8_t, 256> colorimetry_lut(const ColorimetryParams& p);

/// Applies the transform to R, G and B; alpha passes through.
GlyphImage apply_colorimetry(const GlyphImage& image, const ColorimetryParams& p);

enum class SheetKind { geometry, colorimetry };
std::string_view to_token(SheetKind v);

struct SheetCell {
    int row = 0;  // 0-based grid position
    int col = 0;
    int x_px = 0;  // placement of the rendering inside the composite
    int y_px = 0;
    int width_px = 0;
    int height_px = 0;
    std::string caption;
    // geometry cells
    std::optional<Rational> scale;
    std::optional<double> size_cm;
    // colorimetry cells
    std::optional<ColorimetryParams> params;
};

struct CalibrationSquare {
    double size_cm = kCalibrationCm;
    int size_px = 0;
    int x_px = 0;
    int y_px = 0;
};

struct DegradationSheet {
    SheetKind kind = SheetKind::geometry;
    GlyphImage composite;
    std::vector<SheetCell> manifest;
    std::optional<CalibrationSquare> calibration;
    // geometry sheets only
    std::optional<ViewingGeometry> geometry;
    std::optional<double> ppcm;
    std::optional<double> base_cm;
};

/// Five renderings of `image`, largest first, sized so the controlling
/// dimension (width for circular glyphs, shorter side for rectangular ones)
/// matches the size series at `ppcm`. Adds a 4 cm calibration square.
/// Throws CriterionInputError if any rendering would be under 1 px.
DegradationSheet geometry_sheet(const GlyphImage& image, const ViewingGeometry& geom, double ppcm = kDefaultPpcm);

/// Grid position -> parameters: column 0 unmodified, columns 1..4 use
/// magnitudes 25.5 .. 102; rows carry the (brightness, contrast) signs
/// (+,+), (+,-), (-,+), (-,-).
ColorimetryParams colorimetry_cell_params(int row, int col);

/// 4 x 5 grid of contrast/brightness variants of `image`.
DegradationSheet colorimetry_sheet(const GlyphImage& image);

}  // namespace glyphmcda
