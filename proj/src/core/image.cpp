#include "image.hpp"

#include "errors.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>

namespace glyphmcda {

GlyphImage::GlyphImage(int w, int h, int c, std::uint8_t fill)
    : width(w), height(h), channels(c), pixels(static_cast<std::size_t>(w) * h * c, fill) {}

GlyphImage decode_png(std::span<const std::uint8_t> bytes) {
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
        std::string msg = img.message;
        png_image_free(&img);
        throw ValidationError("", "not a readable PNG: " + msg);
    }
    const bool alpha = (img.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    img.format = alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
    GlyphImage out(static_cast<int>(img.width), static_cast<int>(img.height), alpha ? 4 : 3);
    if (!png_image_finish_read(&img, nullptr, out.pixels.data(), 0, nullptr)) {
        std::string msg = img.message;
        png_image_free(&img);
        throw ValidationError("", "PNG decode failed: " + msg);
    }
    if (out.empty()) throw ValidationError("", "image is empty");
    return out;
}

std::vector<std::uint8_t> encode_png(const GlyphImage& image) {
    if (image.empty()) throw ValidationError("", "cannot encode an empty image");
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width);
    img.height = static_cast<png_uint_32>(image.height);
    img.format = image.has_alpha() ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;

    png_alloc_size_t size = 0;
    if (!png_image_write_get_memory_size(img, size, 0, image.pixels.data(), 0, nullptr)) {
        throw IoError(std::string("PNG encode failed: ") + img.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.pixels.data(), 0, nullptr)) {
        throw IoError(std::string("PNG encode failed: ") + img.message);
    }
    out.resize(size);
    return out;
}

GlyphImage read_png_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image \"" + path + "\"");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

void write_png_file(const std::string& path, const GlyphImage& image) {
    auto bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write image \"" + path + "\"");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to \"" + path + "\"");
}

namespace {

// One pass of area averaging along one axis. Input and output are float
// planes of `channels` values per pixel, premultiplied.
std::vector<float> resample_axis(const std::vector<float>& src, int src_len, int other_len, int out_len,
                                 int channels, bool horizontal) {
    std::vector<float> dst(static_cast<std::size_t>(out_len) * other_len * channels, 0.0f);
    const double scale = static_cast<double>(src_len) / out_len;
    for (int o = 0; o < out_len; ++o) {
        const double lo = o * scale;
        const double hi = (o + 1) * scale;
        const int first = static_cast<int>(std::floor(lo));
        const int last = std::min(src_len - 1, static_cast<int>(std::ceil(hi)) - 1);
        for (int s = first; s <= last; ++s) {
            const double w = (std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s))) / scale;
            if (w <= 0) continue;
            for (int k = 0; k < other_len; ++k) {
                const std::size_t si = horizontal ? (static_cast<std::size_t>(k) * src_len + s)
                                                  : (static_cast<std::size_t>(s) * other_len + k);
                const std::size_t di = horizontal ? (static_cast<std::size_t>(k) * out_len + o)
                                                  : (static_cast<std::size_t>(o) * other_len + k);
                for (int c = 0; c < channels; ++c) {
                    dst[di * channels + c] += static_cast<float>(w) * src[si * channels + c];
                }
            }
        }
    }
    return dst;
}

}  // namespace

GlyphImage resample_area(const GlyphImage& src, int out_width, int out_height) {
    if (src.empty()) throw ValidationError("", "cannot resample an empty image");
    if (out_width < 1 || out_height < 1) throw CriterionInputError("resampled size must be at least 1 px");

    const int ch = 4;
    std::vector<float> plane(static_cast<std::size_t>(src.width) * src.height * ch);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            const auto* p = src.at(x, y);
            const float a = src.has_alpha() ? p[3] / 255.0f : 1.0f;
            float* q = &plane[(static_cast<std::size_t>(y) * src.width + x) * ch];
            q[0] = p[0] * a;
            q[1] = p[1] * a;
            q[2] = p[2] * a;
            q[3] = a;
        }
    }
    auto horiz = resample_axis(plane, src.width, src.height, out_width, ch, true);
    auto both = resample_axis(horiz, src.height, out_width, out_height, ch, false);

    GlyphImage out(out_width, out_height, src.channels);
    for (int y = 0; y < out_height; ++y) {
        for (int x = 0; x < out_width; ++x) {
            const float* q = &both[(static_cast<std::size_t>(y) * out_width + x) * ch];
            auto* p = out.at(x, y);
            const float a = q[3];
            for (int c = 0; c < 3; ++c) {
                const float v = a > 0 ? q[c] / a : 0.0f;
                p[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            }
            if (out.has_alpha()) p[3] = static_cast<std::uint8_t>(std::clamp(std::lround(a * 255.0f), 0L, 255L));
        }
    }
    return out;
}

void blit_over(GlyphImage& dst, const GlyphImage& src, int ox, int oy) {
    for (int y = 0; y < src.height; ++y) {
        const int ty = oy + y;
        if (ty < 0 || ty >= dst.height) continue;
        for (int x = 0; x < src.width; ++x) {
            const int tx = ox + x;
            if (tx < 0 || tx >= dst.width) continue;
            const auto* s = src.at(x, y);
            auto* d = dst.at(tx, ty);
            const int a = src.has_alpha() ? s[3] : 255;
            for (int c = 0; c < 3; ++c) {
                d[c] = static_cast<std::uint8_t>((s[c] * a + d[c] * (255 - a) + 127) / 255);
            }
            if (dst.has_alpha()) d[3] = 255;
        }
    }
}

namespace {

using GlyphRows = std::array<const char*, kGlyphHeight>;

const std::map<char, GlyphRows>& font() {
    static const std::map<char, GlyphRows> f = {
        {'0', {" ### ", "#   #", "#  ##", "# # #", "##  #", "#   #", " ### "}},
        {'1', {"  #  ", " ##  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
        {'2', {" ### ", "#   #", "    #", "   # ", "  #  ", " #   ", "#####"}},
        {'3', {"#####", "   # ", "  #  ", "   # ", "    #", "#   #", " ### "}},
        {'4', {"   # ", "  ## ", " # # ", "#  # ", "#####", "   # ", "   # "}},
        {'5', {"#####", "#    ", "#### ", "    #", "    #", "#   #", " ### "}},
        {'6', {"  ## ", " #   ", "#    ", "#### ", "#   #", "#   #", " ### "}},
        {'7', {"#####", "    #", "   # ", "  #  ", " #   ", " #   ", " #   "}},
        {'8', {" ### ", "#   #", "#   #", " ### ", "#   #", "#   #", " ### "}},
        {'9', {" ### ", "#   #", "#   #", " ####", "    #", "   # ", " ##  "}},
        {'.', {"     ", "     ", "     ", "     ", "     ", " ##  ", " ##  "}},
        {'+', {"     ", "  #  ", "  #  ", "#####", "  #  ", "  #  ", "     "}},
        {'-', {"     ", "     ", "     ", "#####", "     ", "     ", "     "}},
        {'/', {"     ", "    #", "   # ", "  #  ", " #   ", "#    ", "     "}},
        {'=', {"     ", "     ", "#####", "     ", "#####", "     ", "     "}},
        {'c', {"     ", "     ", " ### ", "#    ", "#    ", "#   #", " ### "}},
        {'m', {"     ", "     ", "## # ", "# # #", "# # #", "#   #", "#   #"}},
        {'x', {"     ", "     ", "#   #", " # # ", "  #  ", " # # ", "#   #"}},
        {'B', {"#### ", "#   #", "#   #", "#### ", "#   #", "#   #", "#### "}},
        {'C', {" ### ", "#   #", "#    ", "#    ", "#    ", "#   #", " ### "}},
    };
    return f;
}

}  // namespace

int text_width(const std::string& text, int scale) {
    return text.empty() ? 0 : static_cast<int>(text.size()) * 6 * scale - scale;
}

void draw_text(GlyphImage& dst, int x, int y, const std::string& text, int scale) {
    int cursor = x;
    for (char ch : text) {
        auto it = font().find(ch);
        if (it != font().end()) {
            for (int row = 0; row < kGlyphHeight; ++row) {
                for (int col = 0; col < 5; ++col) {
                    if (it->second[row][col] != '#') continue;
                    for (int dy = 0; dy < scale; ++dy) {
                        for (int dx = 0; dx < scale; ++dx) {
                            const int px = cursor + col * scale + dx;
                            const int py = y + row * scale + dy;
                            if (px < 0 || py < 0 || px >= dst.width || py >= dst.height) continue;
                            auto* p = dst.at(px, py);
                            p[0] = p[1] = p[2] = 0;
                            if (dst.has_alpha()) p[3] = 255;
                        }
                    }
                }
            }
        }
        cursor += 6 * scale;
    }
}

void draw_rect_outline(GlyphImage& dst, int x, int y, int w, int h, int thickness) {
    auto paint = [&](int px, int py) {
        if (px < 0 || py < 0 || px >= dst.width || py >= dst.height) return;
        auto* p = dst.at(px, py);
        p[0] = p[1] = p[2] = 0;
        if (dst.has_alpha()) p[3] = 255;
    };
    for (int t = 0; t < thickness; ++t) {
        for (int i = 0; i < w; ++i) {
            paint(x + i, y + t);
            paint(x + i, y + h - 1 - t);
        }
        for (int j = 0; j < h; ++j) {
            paint(x + t, y + j);
            paint(x + w - 1 - t, y + j);
        }
    }
}

}  // namespace glyphmcda
