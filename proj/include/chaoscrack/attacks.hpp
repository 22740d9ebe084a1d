#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "chaoscrack/cipher.hpp"
#include "chaoscrack/image.hpp"
#include "chaoscrack/key.hpp"

namespace chaoscrack {

inline constexpr std::uint64_t kDefaultSearchBudget = std::uint64_t{1} << 26;

// Every block identical; pixel t of a block is (16t, 16t+1, 16t+2). Identical
// cipher blocks then expose subkey-period structure.
RgbImage craft_probe_image(int width, int height);

struct BlockPair {
    std::size_t first, second;  // first < second

    bool operator==(const BlockPair&) const = default;
};

// All unordered pairs of byte-identical cipher blocks.
std::vector<BlockPair> find_identical_cipher_blocks(const RgbImage& cipher);

struct K10Inference {
    std::size_t index_gcd = 0;            // gcd of pair index differences
    std::vector<std::uint8_t> candidates;  // bytes whose period divides the gcd
    bool advisory = false;                 // fewer than 3 pairs, or only K10=0 fits
};

// Candidates are nonzero bytes with subkey_period(K10) | gcd; {0} is returned
// (with the advisory flag) only when nothing else fits. Throws
// EmptyEvidenceError without pairs.
K10Inference infer_k10_candidates(std::span<const BlockPair> pairs);

// P(two blocks of the same residue class share a block seed) for a b2 with
// m zero bits: ((m/24)^2 + ((24-m)/24)^2)^24.
double p_b_collision(int m);

struct SearchHit {
    double y0;
    std::uint8_t k10;

    bool operator==(const SearchHit&) const = default;
};

// Sweeps (y0 on the 2^grid_bits grid, K10 candidates) and keeps every pair
// that re-encrypts `plain` to `cipher` exactly. The subfunction parameter
// bytes K4..K9 are supplied: this is the 2^32 stage of the separated search,
// with the parameter stage fixed. Grid point 0 is skipped (no valid block
// seed is 0). Throws BudgetExceededError when candidates * 2^grid_bits
// exceeds the budget.
std::vector<SearchHit> first_block_search(const PixelBlock& plain, const PixelBlock& cipher,
                                          std::span<const std::uint8_t> k10_candidates,
                                          int y0_grid_bits,
                                          const std::array<std::uint8_t, 6>& k4_to_k9,
                                          std::uint64_t budget = kDefaultSearchBudget);

// Chosen-plaintext image l is base ^ l on every byte.
RgbImage xor_offset_image(const RgbImage& base, std::uint8_t offset);

// The 13-offset preset exercising each 2^i / 2^i - 1 boundary.
std::span<const std::uint8_t> cpa_preset13();

struct XorEquivalentRecord {
    int channel;        // 0=R 1=G 2=B
    std::size_t block;
    std::uint8_t gamma;

    bool operator==(const XorEquivalentRecord&) const = default;
    auto operator<=>(const XorEquivalentRecord&) const = default;
};

struct CpaDetection {
    // One record per distinct (channel, block, gamma).
    std::vector<XorEquivalentRecord> records;
    // Per-channel bitmap over positions (block * 16 + pixel) and the
    // extracted gamma for flagged positions.
    std::array<std::vector<std::uint8_t>, 3> flagged;
    std::array<std::vector<std::uint8_t>, 3> gamma;
    std::array<std::size_t, 3> flagged_count{};
};

// Step 1: a position is XOR-equivalent when cipher_0 ^ cipher_l == l for
// every supplied offset l; gamma is then cipher_0 ^ plain_0 at the position.
// Offsets must start with 0 (the anchor) and ciphers[i] must be the
// encryption of base ^ offsets[i].
CpaDetection cpa_step1_collect(const RgbImage& base_plain,
                               std::span<const std::uint8_t> offsets,
                               std::span<const RgbImage> ciphers);

// [channel][residue class] accumulated gamma sets, closed under triple XOR
// with {0, 127}.
using AlphaSets = std::array<std::vector<std::set<std::uint8_t>>, 3>;

// Step 2: groups gammas mod 128 by block index mod T/2 for the guess (one
// class when T <= 2), expands each set, and rejects the guess when any
// expanded set size is not 2, 4 or 8.
std::optional<AlphaSets> cpa_step2_prune(std::span<const XorEquivalentRecord> records,
                                         std::uint8_t k10_guess);

struct CandidateKeyFragment {
    std::uint8_t k10_mod128 = 0;
    std::array<std::uint8_t, 6> subkeys_mod128{};  // K4..K9 mod 128

    bool operator==(const CandidateKeyFragment&) const = default;
    auto operator<=>(const CandidateKeyFragment&) const = default;
};

struct CpaGuess {
    std::uint8_t k10;
    AlphaSets sets;
};

// Step 3: per channel, enumerates pair candidates from the largest class set,
// shifts them back to block 0, and keeps those consistent with every other
// class set; fragments are the cross product over channels. Guesses whose
// channels all survive contribute; throws NoCandidateError when none do.
std::vector<CandidateKeyFragment> cpa_step3_recover(std::span<const CpaGuess> guesses);

// All 16 fragments the attack cannot distinguish from `f`: per-channel pair
// swaps, and the mirrored family with every value XOR 127 and K10 -> 128-K10.
std::vector<CandidateKeyFragment> fragment_orbit(const CandidateKeyFragment& f);

struct CpaResult {
    CpaDetection detection;
    std::vector<CandidateKeyFragment> fragments;
};

// Steps 1-3 end to end.
CpaResult cpa_recover(const RgbImage& base_plain, std::span<const std::uint8_t> offsets,
                      std::span<const RgbImage> ciphers);

// Known-plaintext mask attack: recovered = target_cipher ^ known_plain ^
// known_cipher, bytewise. Exact wherever the position's encryption function
// is XOR-equivalent.
RgbImage kpa_mask_attack(const RgbImage& known_plain, const RgbImage& known_cipher,
                         const RgbImage& target_cipher);

struct RnPoint {
    int n;                 // offsets 1..n used alongside the anchor
    std::size_t detected;  // N(n): flagged positions over all channels
    double r;              // N(127) / N(n)
};

// Detection-count curve over nested offset sets {1..n}; requires the 128
// ciphers for offsets 0..127 in order.
std::vector<RnPoint> rn_curve(std::span<const RgbImage> ciphers);

// N for an arbitrary offset set (offsets[0] must be 0).
std::size_t count_detected(std::span<const std::uint8_t> offsets,
                           std::span<const RgbImage> ciphers);

}  // namespace chaoscrack
