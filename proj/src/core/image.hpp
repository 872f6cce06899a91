#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace glyphmcda {

/// 8-bit interleaved RGB or RGBA raster.
struct GlyphImage {
    int width = 0;
    int height = 0;
    int channels = 4;  // 3 or 4
    std::vector<std::uint8_t> pixels;

    GlyphImage() = default;
    GlyphImage(int w, int h, int c, std::uint8_t fill = 0);

    bool empty() const { return width <= 0 || height <= 0; }
    bool has_alpha() const { return channels == 4; }
    std::uint8_t* at(int x, int y) { return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels; }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
    }

    bool operator==(const GlyphImage&) const = default;
};

/// Decodes a PNG (any colour type libpng accepts); the result is RGB when the
/// source has no alpha, RGBA otherwise. Throws ValidationError on bad data.
GlyphImage decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const GlyphImage& image);

GlyphImage read_png_file(const std::string& path);
void write_png_file(const std::string& path, const GlyphImage& image);

/// Area-averaging resample (alpha-premultiplied) to the given size.
GlyphImage resample_area(const GlyphImage& src, int out_width, int out_height);

/// Alpha-blends `src` onto `dst` (RGB) at (x, y).
void blit_over(GlyphImage& dst, const GlyphImage& src, int x, int y);

/// Draws text with the built-in 5x7 font; unknown characters render blank.
void draw_text(GlyphImage& dst, int x, int y, const std::string& text, int scale = 1);
int text_width(const std::string& text, int scale = 1);
inline constexpr int kGlyphHeight = 7;

void draw_rect_outline(GlyphImage& dst, int x, int y, int w, int h, int thickness = 1);

}  // namespace glyphmcda
