#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chaoscrack/key.hpp"

namespace chaoscrack {

// Invalid-key witness: X0 == 0 exactly when S2 = 3C and S1 = 2^19 (32 - C)
// for some C in 0..30, plus the all-zero K4..K9 wrap-around (reported as
// C = 32). Returns the witness C, or nothing for a valid key. Agrees exactly
// with direct evaluation of the seed formula.
std::optional<int> invalid_x0_class(const SecretKey& key);

// Number of n-nibble-pair strings whose nibble sum is congruent to r mod 3:
// ceil(16^n / 3) for r = 0, floor(16^n / 3) otherwise.
std::int64_t count_mod3(int n, int r);

// P(block seed sum hits 0) for a b2 with m zero bits, where n is the number
// of zero bits of (2^24 - b2) mod 2^24: (m/24)^n ((24-m)/24)^(24-n).
double probability_y0_zero(int m, int n);
double probability_y0_zero(std::uint32_t b2);

int zero_bits24(std::uint32_t v);

// Channels whose first sub-image leaks plaintext (bytes unchanged or
// complemented): channel c leaks when both its (a0, b0) and (a1, b1) subkey
// pairs lie in {(0,0), (255,1)}. All-zero K4..K9 leaks every channel.
struct WeakVisualFlags {
    bool red = false, green = false, blue = false;
    bool whole_image = false;  // K4..K9 all zero

    bool any() const { return red || green || blue || whole_image; }
};
WeakVisualFlags weak_visual_flags(const SecretKey& key);

// Keys reached by independently swapping the nibbles of K7, K8, K9. The
// audited key itself is included. A lone K9 swap leaves the red channel
// byte-identical; K7 the green channel; K8 the blue channel.
std::vector<SecretKey> nibble_swap_equivalents(const SecretKey& key);

// Keys reached by flipping the top bit of exactly two of K7, K8, K9 with
// opposite top bits (S2, hence X0, is preserved). Ciphertexts agree except
// for exact XOR-128 differences. Includes the audited key.
std::vector<SecretKey> msb_flip_equivalents(const SecretKey& key);

double estimated_log2_keyspace();

struct KeyAuditReport {
    SecretKey key;
    bool x0_invalid = false;
    std::optional<int> invalid_witness;  // C, 32 for the all-zero case
    int period = 0;                      // T = 256/gcd(K10,256)
    bool k10_zero = false;               // identity encryption
    bool k10_one = false;                // every block shares one composite family
    bool k10_recommended = false;        // odd and >= 8: full period, usable length
    WeakVisualFlags visual;
    std::vector<SecretKey> nibble_swap_orbit;  // equivalents, audited key included
    std::vector<SecretKey> msb_flip_orbit;
    double log2_keyspace = 0.0;

    // True for the hard defects (invalid seed, degenerate K10, visual leak).
    // Equivalence orbits do not count: every key has them.
    bool weak() const;
};

KeyAuditReport audit_key(const SecretKey& key);

}  // namespace chaoscrack
