#include <doctest.h>

#include "errors.hpp"
#include "image.hpp"
#include "test_support.hpp"

using namespace glyphmcda;
using testing_support::rng;
using testing_support::uniform;

namespace {

GlyphImage noise(int w, int h, int c, std::uint64_t seed) {
    auto g = rng(seed);
    GlyphImage img(w, h, c);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(uniform(g, 0, 255));
    return img;
}

}  // namespace

TEST_CASE("PNG round trip keeps every byte") {
    for (int c : {3, 4}) {
        const auto img = noise(17, 9, c, 100 + c);
        const auto bytes = encode_png(img);
        REQUIRE(bytes.size() > 8);
        CHECK(bytes[1] == 'P');
        CHECK(decode_png(bytes) == img);
        // encoding is deterministic
        CHECK(encode_png(img) == bytes);
    }
}

TEST_CASE("PNG files on disk") {
    testing_support::ScratchDir dir;
    const auto img = noise(5, 6, 4, 7);
    const auto path = (dir.path() / "g.png").string();
    write_png_file(path, img);
    CHECK(read_png_file(path) == img);
    CHECK_THROWS_AS(read_png_file((dir.path() / "missing.png").string()), IoError);
}

TEST_CASE("garbage is not a PNG") {
    const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK_THROWS_AS(decode_png(junk), ValidationError);
    auto truncated = encode_png(noise(8, 8, 3, 1));
    truncated.resize(truncated.size() / 2);
    CHECK_THROWS_AS(decode_png(truncated), ValidationError);
}

TEST_CASE("area resampling") {
    // a uniform image stays uniform at any size
    GlyphImage grey(40, 20, 3, 90);
    const auto small = resample_area(grey, 7, 3);
    CHECK(small.width == 7);
    CHECK(small.height == 3);
    for (auto p : small.pixels) CHECK(p == 90);

    // halving a 2x2 checker averages to mid grey
    GlyphImage checker(2, 2, 3, 0);
    for (int i = 0; i < 3; ++i) {
        checker.at(0, 0)[i] = 255;
        checker.at(1, 1)[i] = 255;
    }
    const auto one = resample_area(checker, 1, 1);
    CHECK(std::abs(int(one.at(0, 0)[0]) - 128) <= 1);

    // transparent pixels do not darken the average
    GlyphImage half(2, 1, 4, 0);
    half.at(0, 0)[0] = 200;
    half.at(0, 0)[3] = 255;
    const auto px = resample_area(half, 1, 1);
    CHECK(px.at(0, 0)[0] == 200);
    CHECK(std::abs(int(px.at(0, 0)[3]) - 128) <= 1);
}

TEST_CASE("blitting and drawing stay inside the canvas") {
    GlyphImage canvas(10, 10, 3, 255);
    GlyphImage red(4, 4, 4, 0);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            red.at(x, y)[0] = 255;
            red.at(x, y)[3] = 255;
        }
    }
    blit_over(canvas, red, 8, 8);  // partly off the edge
    CHECK(canvas.at(9, 9)[1] == 0);
    CHECK(canvas.at(7, 7)[1] == 255);

    draw_text(canvas, 0, 0, "1", 1);
    bool inked = false;
    for (auto p : canvas.pixels) inked = inked || p == 0;
    CHECK(inked);
    CHECK(text_width("ab", 2) > text_width("ab", 1));
    CHECK(text_width("", 1) == 0);

    GlyphImage frame(6, 6, 3, 255);
    draw_rect_outline(frame, 0, 0, 6, 6);
    CHECK(frame.at(0, 3)[0] == 0);
    CHECK(frame.at(3, 3)[0] == 255);
}
