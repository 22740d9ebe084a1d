// Times the serial reference path against the parallel path on square noise
// images and reports throughput. The two must produce identical bytes; the
// bench asserts that while it is at it.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "chaoscrack/cipher.hpp"
#include "chaoscrack/image.hpp"
#include "chaoscrack/key.hpp"

using namespace chaoscrack;

namespace {

RgbImage noise_image(int side, std::uint64_t seed) {
    RgbImage img = make_image(side, side);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& b : img.data) {
        b = static_cast<std::uint8_t>(byte(rng));
    }
    return img;
}

template <typename Fn>
double best_seconds(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        best = std::min(best, elapsed.count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    if (reps <= 0) {
        std::fprintf(stderr, "usage: %s [reps]\n", argv[0]);
        return 2;
    }
    const SecretKey key = SecretKey::from_hex("2A84BCF25E6A664E4C41");
    std::printf("%8s %12s %12s %8s\n", "side", "serial MB/s", "parallel MB/s", "speedup");
    for (const int side : {256, 512, 1024}) {
        const RgbImage plain = noise_image(side, 42);
        const double mb = static_cast<double>(plain.data.size()) / (1024.0 * 1024.0);
        RgbImage serial_out, parallel_out;
        const double ts = best_seconds(
            reps, [&] { serial_out = process_image(plain, key, Direction::Encrypt); });
        const double tp = best_seconds(
            reps, [&] { parallel_out = process_image_parallel(plain, key, Direction::Encrypt); });
        if (serial_out != parallel_out) {
            std::fprintf(stderr, "parallel path diverged from the serial reference at %d\n", side);
            return 1;
        }
        std::printf("%8d %12.1f %12.1f %8.2f\n", side, mb / ts, mb / tp, ts / tp);
    }
    return 0;
}
