#include <doctest.h>

#include "chaoscrack/cipher.hpp"
#include "helpers.hpp"

using namespace chaoscrack;
using chaoscrack::testing::noise_image;

TEST_CASE("parallel path is byte-identical to the serial reference") {
    // K10 of 0, 1, a power of two, an odd value, and the maximum; the
    // schedule period ranges from 1 to 256 across these.
    const char* hexes[] = {"0102030405061234AB00", "0102030405061234AB01",
                           "0102030405061234AB40", "2A84BCF25E6A664E4C41",
                           "0102030405061234ABFF"};
    std::uint64_t seed = 101;
    for (const char* hex : hexes) {
        const SecretKey key = SecretKey::from_hex(hex);
        for (auto [w, h] : {std::pair{4, 4}, std::pair{16, 16}, std::pair{33, 16},
                            std::pair{128, 32}}) {
            const RgbImage plain = noise_image(seed++, w, h);
            for (const Direction dir : {Direction::Encrypt, Direction::Decrypt}) {
                CHECK(process_image_parallel(plain, key, dir) ==
                      process_image(plain, key, dir));
            }
        }
    }
}

TEST_CASE("parallel round trip") {
    const SecretKey key = SecretKey::from_hex("8DB87A1613D75ADF2D06");
    const RgbImage plain = noise_image(202, 64, 64);
    const RgbImage cipher = process_image_parallel(plain, key, Direction::Encrypt);
    CHECK(process_image_parallel(cipher, key, Direction::Decrypt) == plain);
    CHECK(cipher != plain);
}
