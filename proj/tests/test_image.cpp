#include <doctest.h>

#include <sstream>
#include <string>

#include "chaoscrack/errors.hpp"
#include "chaoscrack/image.hpp"
#include "helpers.hpp"

using namespace chaoscrack;
using chaoscrack::testing::noise_image;

TEST_CASE("ppm round trip preserves every byte") {
    const RgbImage img = noise_image(1, 13, 16);
    std::stringstream buf;
    save_ppm(img, buf);
    CHECK(load_ppm(buf) == img);
}

TEST_CASE("writer emits the canonical header") {
    RgbImage img = make_image(2, 1);
    img.data = {1, 2, 3, 4, 5, 6};
    std::stringstream buf;
    save_ppm(img, buf);
    const std::string expect = std::string("P6\n2 1\n255\n") +
                               std::string("\x01\x02\x03\x04\x05\x06", 6);
    CHECK(buf.str() == expect);
}

static RgbImage load_from(const std::string& text) {
    std::stringstream buf(text);
    return load_ppm(buf);
}

TEST_CASE("loader accepts comments and loose whitespace") {
    const std::string body("\x01\x02\x03\x04\x05\x06", 6);
    const RgbImage img =
        load_from("P6 # format\n# a comment line\n  2\t1 # size\n255\n" + body);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.data == std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("loader rejects wrong magic, maxval, and truncation") {
    const std::string body("\x01\x02\x03\x04\x05\x06", 6);
    CHECK_THROWS_AS(load_from("P5\n2 1\n255\n" + body), MalformedPpmError);
    CHECK_THROWS_AS(load_from("P6\n2 1\n65535\n" + body), MalformedPpmError);
    CHECK_THROWS_AS(load_from("P6\n2 1\n255\n\x01\x02"), MalformedPpmError);
    CHECK_THROWS_AS(load_from("P6\n-2 1\n255\n" + body), MalformedPpmError);
}

TEST_CASE("block split requires a multiple of 16 pixels") {
    CHECK_THROWS_AS(split_blocks(noise_image(2, 5, 5)), BadDimensionsError);
    const RgbImage img = noise_image(3, 8, 8);
    const auto blocks = split_blocks(img);
    REQUIRE(blocks.size() == 4);
    // Block b is the contiguous raster slice starting at byte 48*b.
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t i = 0; i < kBlockBytes; ++i) {
            CHECK(blocks[b].rgb[i] == img.data[48 * b + i]);
        }
        CHECK(get_block(img, b) == blocks[b]);
    }
}

TEST_CASE("make_image rejects non-positive dimensions") {
    CHECK_THROWS_AS(make_image(0, 4), BadDimensionsError);
    CHECK_THROWS_AS(make_image(4, -1), BadDimensionsError);
}

TEST_CASE("partition by period groups block indices by residue") {
    const auto parts = partition_by_period(10, 4);
    REQUIRE(parts.size() == 4);
    CHECK(parts[0] == std::vector<std::size_t>{0, 4, 8});
    CHECK(parts[1] == std::vector<std::size_t>{1, 5, 9});
    CHECK(parts[2] == std::vector<std::size_t>{2, 6});
    CHECK(parts[3] == std::vector<std::size_t>{3, 7});
    CHECK_THROWS(partition_by_period(10, 0));
}

TEST_CASE("diff stats count identical bytes per channel and histogram xors") {
    RgbImage a = make_image(4, 4);
    RgbImage b = make_image(4, 4);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        a.data[i] = static_cast<std::uint8_t>(i);
    }
    b = a;
    b.data[0] ^= 128;  // a red byte
    b.data[4] ^= 3;    // a green byte
    const DiffStats d = diff_images(a, b);
    CHECK(d.channel_total == std::array<std::size_t, 3>{16, 16, 16});
    CHECK(d.identical == std::array<std::size_t, 3>{15, 15, 16});
    CHECK(d.xor_histogram[0] == 46);
    CHECK(d.xor_histogram[128] == 1);
    CHECK(d.xor_histogram[3] == 1);
    CHECK(d.fraction_identical() == doctest::Approx(46.0 / 48.0));

    CHECK_THROWS_AS(diff_images(a, make_image(4, 5)), DimensionMismatchError);
}
