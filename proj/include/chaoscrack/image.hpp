#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace chaoscrack {

inline constexpr std::size_t kBlockPixels = 16;
inline constexpr std::size_t kBlockBytes = 3 * kBlockPixels;

// 24-bit RGB raster, interleaved, row-major. The buffer layout matches the
// PPM P6 body byte for byte, and block b of the cipher is the contiguous
// slice data[48*b .. 48*b+48).
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size 3 * width * height

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t block_count() const { return pixel_count() / kBlockPixels; }

    bool operator==(const RgbImage&) const = default;
};

RgbImage make_image(int width, int height);

// PPM P6, maxval 255 only. The loader accepts `#` comments and arbitrary
// whitespace in the header; the writer emits the canonical
// "P6\n<w> <h>\n255\n" header and never emits comments.
RgbImage load_ppm(std::istream& in);
RgbImage load_ppm(const std::filesystem::path& path);
void save_ppm(const RgbImage& img, std::ostream& out);
void save_ppm(const RgbImage& img, const std::filesystem::path& path);

// 16 consecutive raster pixels; the cipher's unit of work.
struct PixelBlock {
    std::array<std::uint8_t, kBlockBytes> rgb{};

    bool operator==(const PixelBlock&) const = default;
};

// Throws BadDimensionsError unless 16 | width*height.
std::vector<PixelBlock> split_blocks(const RgbImage& img);
PixelBlock get_block(const RgbImage& img, std::size_t index);

// Block indices grouped by index mod period ("sub-images"). Residue class r
// holds blocks r, r+period, r+2*period, ...
std::vector<std::vector<std::size_t>> partition_by_period(std::size_t block_count, int period);

struct DiffStats {
    std::array<std::size_t, 3> identical{};       // per channel (R, G, B)
    std::array<std::size_t, 3> channel_total{};
    std::array<std::size_t, 256> xor_histogram{};  // over all channels

    std::size_t total() const { return channel_total[0] + channel_total[1] + channel_total[2]; }
    double fraction_identical() const;
};

// Throws DimensionMismatchError on shape mismatch.
DiffStats diff_images(const RgbImage& a, const RgbImage& b);

}  // namespace chaoscrack
