#pragma once

#include <cstdint>
#include <random>

#include "chaoscrack/audit.hpp"
#include "chaoscrack/image.hpp"
#include "chaoscrack/key.hpp"

namespace chaoscrack::testing {

inline RgbImage noise_image(std::uint64_t seed, int width, int height) {
    RgbImage img = make_image(width, height);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& b : img.data) {
        b = static_cast<std::uint8_t>(byte(rng));
    }
    return img;
}

// Uniform random key, redrawn until the global seed is valid. The invalid
// set has measure ~2^-19 of the keyspace, so redraws are rare.
inline SecretKey random_valid_key(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    for (;;) {
        SecretKey key;
        for (auto& b : key.bytes()) {
            b = static_cast<std::uint8_t>(byte(rng));
        }
        if (!invalid_x0_class(key)) {
            return key;
        }
    }
}

}  // namespace chaoscrack::testing
