#include "chaoscrack/audit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "chaoscrack/cipher.hpp"

namespace chaoscrack {

namespace {

std::int64_t s1_of(const SecretKey& key) {
    return static_cast<std::int64_t>(key.k(4)) + (static_cast<std::int64_t>(key.k(5)) << 8) +
           (static_cast<std::int64_t>(key.k(6)) << 16);
}

std::int64_t s2_of(const SecretKey& key) {
    std::int64_t s2 = 0;
    for (int i = 7; i <= 9; ++i) {
        s2 += key.k(i) % 16 + key.k(i) / 16;
    }
    return s2;
}

}  // namespace

std::optional<int> invalid_x0_class(const SecretKey& key) {
    const std::int64_t s1 = s1_of(key);
    const std::int64_t s2 = s2_of(key);
    if (s1 == 0 && s2 == 0) {
        return 32;  // all-zero K4..K9: the sum wraps to 0 rather than to 1
    }
    if (s2 % 3 != 0) {
        return std::nullopt;
    }
    const std::int64_t c = s2 / 3;  // <= 30 since s2 <= 90
    if (s1 == (std::int64_t{32} - c) << 19) {
        return static_cast<int>(c);
    }
    return std::nullopt;
}

std::int64_t count_mod3(int n, int r) {
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= 16;
    }
    if (r == 0) {
        return (total + 2) / 3;  // ceil
    }
    return total / 3;  // floor
}

double probability_y0_zero(int m, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
        p *= static_cast<double>(m) / 24.0;
    }
    for (int i = 0; i < 24 - n; ++i) {
        p *= static_cast<double>(24 - m) / 24.0;
    }
    return p;
}

int zero_bits24(std::uint32_t v) {
    return 24 - std::popcount(v & 0xFFFFFFu);
}

double probability_y0_zero(std::uint32_t b2) {
    const std::uint32_t target = (0x1000000u - (b2 & 0xFFFFFFu)) & 0xFFFFFFu;
    return probability_y0_zero(zero_bits24(b2), zero_bits24(target));
}

namespace {

bool degenerate_pair(std::uint8_t a, std::uint8_t b) {
    // (a, b) makes x^a a complement-or-identity and (x+a+b) the identity.
    return (a == 0 && b == 0) || (a == 255 && b == 1);
}

}  // namespace

WeakVisualFlags weak_visual_flags(const SecretKey& key) {
    WeakVisualFlags flags;
    flags.red = degenerate_pair(key.k(4), key.k(5)) && degenerate_pair(key.k(7), key.k(8));
    flags.green = degenerate_pair(key.k(5), key.k(6)) && degenerate_pair(key.k(8), key.k(9));
    flags.blue = degenerate_pair(key.k(6), key.k(4)) && degenerate_pair(key.k(9), key.k(7));
    flags.whole_image = key.k(4) == 0 && key.k(5) == 0 && key.k(6) == 0 && key.k(7) == 0 &&
                        key.k(8) == 0 && key.k(9) == 0;
    return flags;
}

namespace {

std::uint8_t swap_nibbles(std::uint8_t v) {
    return static_cast<std::uint8_t>((v << 4) | (v >> 4));
}

void push_unique(std::vector<SecretKey>& keys, const SecretKey& key) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        keys.push_back(key);
    }
}

}  // namespace

std::vector<SecretKey> nibble_swap_equivalents(const SecretKey& key) {
    std::vector<SecretKey> out;
    for (int mask = 0; mask < 8; ++mask) {
        SecretKey variant = key;
        for (int i = 0; i < 3; ++i) {
            if (mask & (1 << i)) {
                variant.k(7 + i) = swap_nibbles(variant.k(7 + i));
            }
        }
        push_unique(out, variant);
    }
    return out;
}

std::vector<SecretKey> msb_flip_equivalents(const SecretKey& key) {
    std::vector<SecretKey> out{key};
    constexpr int pairs[3][2] = {{7, 8}, {7, 9}, {8, 9}};
    for (const auto& pair : pairs) {
        const std::uint8_t a = key.k(pair[0]);
        const std::uint8_t b = key.k(pair[1]);
        if (((a ^ b) & 0x80) == 0) {
            continue;  // flipping both would shift S2 by +16 or -16
        }
        SecretKey variant = key;
        variant.k(pair[0]) = static_cast<std::uint8_t>(a ^ 0x80);
        variant.k(pair[1]) = static_cast<std::uint8_t>(b ^ 0x80);
        push_unique(out, variant);
    }
    return out;
}

double estimated_log2_keyspace() {
    // K1..K3 free, K4..K6 free, K7..K9 folded by class-1/class-2 equivalence
    // (136 nibble multisets per byte, halved), K10 reduced to 126 values.
    return 24.0 + 24.0 + std::log2(136.0 * 136.0 * 136.0 / 2.0) + std::log2(126.0);
}

bool KeyAuditReport::weak() const {
    return x0_invalid || k10_zero || k10_one || visual.any();
}

KeyAuditReport audit_key(const SecretKey& key) {
    KeyAuditReport report;
    report.key = key;
    report.invalid_witness = invalid_x0_class(key);
    report.x0_invalid = report.invalid_witness.has_value();
    report.period = subkey_period(key.k(10));
    report.k10_zero = key.k(10) == 0;
    report.k10_one = key.k(10) == 1;
    report.k10_recommended = key.k(10) % 2 == 1 && key.k(10) >= 8;
    report.visual = weak_visual_flags(key);
    report.nibble_swap_orbit = nibble_swap_equivalents(key);
    report.msb_flip_orbit = msb_flip_equivalents(key);
    report.log2_keyspace = estimated_log2_keyspace();
    return report;
}

}  // namespace chaoscrack
