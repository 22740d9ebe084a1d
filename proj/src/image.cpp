#include "chaoscrack/image.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "chaoscrack/errors.hpp"

namespace chaoscrack {

RgbImage make_image(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw BadDimensionsError("image dimensions must be positive");
    }
    RgbImage img;
    img.width = width;
    img.height = height;
    img.data.assign(3 * img.pixel_count(), 0);
    return img;
}

namespace {

// Next header token, skipping whitespace and '#' comments.
int next_header_int(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF) {
            throw MalformedPpmError("truncated PPM header");
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        if (c == '#') {
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            continue;
        }
        break;
    }
    long long value = 0;
    if (!(in >> value) || value < 0) {
        throw MalformedPpmError("bad integer in PPM header");
    }
    return static_cast<int>(value);
}

}  // namespace

RgbImage load_ppm(std::istream& in) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '6') {
        throw MalformedPpmError("not a P6 PPM stream");
    }
    const int width = next_header_int(in);
    const int height = next_header_int(in);
    const int maxval = next_header_int(in);
    if (width <= 0 || height <= 0) {
        throw MalformedPpmError("nonpositive PPM dimensions");
    }
    if (maxval != 255) {
        throw MalformedPpmError("only maxval 255 is supported");
    }
    // Exactly one whitespace byte separates the header from the body.
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) {
        throw MalformedPpmError("missing separator after PPM header");
    }
    RgbImage img = make_image(width, height);
    in.read(reinterpret_cast<char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.data.size()) {
        throw MalformedPpmError("truncated PPM body");
    }
    return img;
}

RgbImage load_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MalformedPpmError("cannot open " + path.string());
    }
    return load_ppm(in);
}

void save_ppm(const RgbImage& img, std::ostream& out) {
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
}

void save_ppm(const RgbImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw MalformedPpmError("cannot open " + path.string() + " for writing");
    }
    save_ppm(img, out);
}

std::vector<PixelBlock> split_blocks(const RgbImage& img) {
    if (img.pixel_count() % kBlockPixels != 0) {
        throw BadDimensionsError("pixel count is not a multiple of 16");
    }
    std::vector<PixelBlock> blocks(img.block_count());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::memcpy(blocks[b].rgb.data(), img.data.data() + b * kBlockBytes, kBlockBytes);
    }
    return blocks;
}

PixelBlock get_block(const RgbImage& img, std::size_t index) {
    PixelBlock block;
    std::memcpy(block.rgb.data(), img.data.data() + index * kBlockBytes, kBlockBytes);
    return block;
}

std::vector<std::vector<std::size_t>> partition_by_period(std::size_t block_count, int period) {
    if (period <= 0) {
        throw BadDimensionsError("period must be positive");
    }
    std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(period));
    for (std::size_t b = 0; b < block_count; ++b) {
        classes[b % static_cast<std::size_t>(period)].push_back(b);
    }
    return classes;
}

double DiffStats::fraction_identical() const {
    const std::size_t n = total();
    if (n == 0) {
        return 0.0;
    }
    return static_cast<double>(identical[0] + identical[1] + identical[2]) /
           static_cast<double>(n);
}

DiffStats diff_images(const RgbImage& a, const RgbImage& b) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionMismatchError("images differ in shape");
    }
    DiffStats stats;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const int channel = static_cast<int>(i % 3);
        const std::uint8_t x = static_cast<std::uint8_t>(a.data[i] ^ b.data[i]);
        ++stats.channel_total[channel];
        ++stats.xor_histogram[x];
        if (x == 0) {
            ++stats.identical[channel];
        }
    }
    return stats;
}

}  // namespace chaoscrack
