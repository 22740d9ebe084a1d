#include "chaoscrack/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "chaoscrack/algebra.hpp"
#include "chaoscrack/errors.hpp"

namespace chaoscrack {

RgbImage craft_probe_image(int width, int height) {
    RgbImage img = make_image(width, height);
    const std::size_t pixels = img.pixel_count();
    for (std::size_t p = 0; p < pixels; ++p) {
        const auto t = static_cast<std::uint8_t>(16 * (p % kBlockPixels));
        img.data[3 * p] = t;
        img.data[3 * p + 1] = static_cast<std::uint8_t>(t + 1);
        img.data[3 * p + 2] = static_cast<std::uint8_t>(t + 2);
    }
    return img;
}

std::vector<BlockPair> find_identical_cipher_blocks(const RgbImage& cipher) {
    std::map<std::array<std::uint8_t, kBlockBytes>, std::vector<std::size_t>> groups;
    const auto blocks = split_blocks(cipher);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        groups[blocks[i].rgb].push_back(i);
    }
    std::vector<BlockPair> pairs;
    for (const auto& [bytes, members] : groups) {
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                pairs.push_back({members[i], members[j]});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const BlockPair& a, const BlockPair& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    return pairs;
}

K10Inference infer_k10_candidates(std::span<const BlockPair> pairs) {
    if (pairs.empty()) {
        throw EmptyEvidenceError("no identical cipher block pairs to work from");
    }
    K10Inference inf;
    for (const auto& p : pairs) {
        inf.index_gcd = std::gcd(inf.index_gcd, p.second - p.first);
    }
    inf.advisory = pairs.size() < 3;
    for (int k = 1; k < 256; ++k) {
        if (inf.index_gcd % static_cast<std::size_t>(subkey_period(static_cast<std::uint8_t>(k))) ==
            0) {
            inf.candidates.push_back(static_cast<std::uint8_t>(k));
        }
    }
    if (inf.candidates.empty()) {
        // Only the constant schedule (period 1) divides an odd gcd. K10 = 0
        // means identity encryption, so offer it only as a last resort.
        inf.candidates.push_back(0);
        inf.advisory = true;
    }
    return inf;
}

double p_b_collision(int m) {
    const double zero = static_cast<double>(m) / 24.0;
    const double one = static_cast<double>(24 - m) / 24.0;
    const double per_bit = zero * zero + one * one;
    double p = 1.0;
    for (int i = 0; i < 24; ++i) {
        p *= per_bit;
    }
    return p;
}

std::vector<SearchHit> first_block_search(const PixelBlock& plain, const PixelBlock& cipher,
                                          std::span<const std::uint8_t> k10_candidates,
                                          int y0_grid_bits,
                                          const std::array<std::uint8_t, 6>& k4_to_k9,
                                          std::uint64_t budget) {
    if (y0_grid_bits < 1 || y0_grid_bits > 30) {
        throw std::invalid_argument("y0 grid bits must lie in 1..30");
    }
    const std::uint64_t work = static_cast<std::uint64_t>(k10_candidates.size())
                               << y0_grid_bits;
    if (work > budget) {
        throw BudgetExceededError("grid sweep exceeds the search budget");
    }
    std::vector<SearchHit> hits;
    const std::int64_t grid = std::int64_t{1} << y0_grid_bits;
    for (const std::uint8_t cand : k10_candidates) {
        BlockContext ctx;
        ctx.subkeys = {0,           0,           0,           k4_to_k9[0], k4_to_k9[1],
                       k4_to_k9[2], k4_to_k9[3], k4_to_k9[4], k4_to_k9[5]};
        ctx.k10 = cand;
        std::vector<std::int64_t> matches;
#pragma omp parallel for schedule(dynamic, 4096)
        for (std::int64_t t = 1; t < grid; ++t) {
            BlockContext local = ctx;
            local.y0 = std::ldexp(static_cast<double>(t), -y0_grid_bits);
            bool match = false;
            try {
                match = process_block(plain, local, Direction::Encrypt) == cipher;
            } catch (const NonConvergenceError&) {
                // a grid point whose orbit never re-enters the window cannot
                // be a real block seed
            }
            if (match) {
#pragma omp critical
                matches.push_back(t);
            }
        }
        std::sort(matches.begin(), matches.end());
        for (const std::int64_t t : matches) {
            hits.push_back({std::ldexp(static_cast<double>(t), -y0_grid_bits), cand});
        }
    }
    return hits;
}

RgbImage xor_offset_image(const RgbImage& base, std::uint8_t offset) {
    RgbImage out = base;
    for (auto& byte : out.data) {
        byte ^= offset;
    }
    return out;
}

std::span<const std::uint8_t> cpa_preset13() {
    static constexpr std::uint8_t kPreset[] = {0, 1, 2, 3, 4, 7, 8, 15, 16, 31, 32, 63, 64};
    return kPreset;
}

namespace {

void check_offset_batch(std::span<const std::uint8_t> offsets,
                        std::span<const RgbImage> ciphers) {
    if (offsets.empty() || offsets[0] != 0) {
        throw std::invalid_argument("offset list must start with the anchor 0");
    }
    if (offsets.size() != ciphers.size()) {
        throw std::invalid_argument("need exactly one cipher image per offset");
    }
    for (std::size_t i = 1; i < ciphers.size(); ++i) {
        if (ciphers[i].width != ciphers[0].width || ciphers[i].height != ciphers[0].height) {
            throw DimensionMismatchError("cipher images disagree on shape");
        }
    }
}

}  // namespace

CpaDetection cpa_step1_collect(const RgbImage& base_plain, std::span<const std::uint8_t> offsets,
                               std::span<const RgbImage> ciphers) {
    check_offset_batch(offsets, ciphers);
    if (ciphers[0].width != base_plain.width || ciphers[0].height != base_plain.height) {
        throw DimensionMismatchError("cipher images disagree with the base plain image");
    }
    const std::size_t pixels = base_plain.pixel_count();
    CpaDetection det;
    for (int c = 0; c < 3; ++c) {
        det.flagged[c].assign(pixels, 0);
        det.gamma[c].assign(pixels, 0);
    }
    std::set<XorEquivalentRecord> records;
    const RgbImage& anchor = ciphers[0];
    for (std::size_t p = 0; p < pixels; ++p) {
        for (int c = 0; c < 3; ++c) {
            const std::size_t idx = 3 * p + static_cast<std::size_t>(c);
            bool ok = true;
            for (std::size_t i = 1; i < offsets.size() && ok; ++i) {
                ok = (anchor.data[idx] ^ ciphers[i].data[idx]) == offsets[i];
            }
            if (!ok) {
                continue;
            }
            const auto g = static_cast<std::uint8_t>(anchor.data[idx] ^ base_plain.data[idx]);
            det.flagged[c][p] = 1;
            det.gamma[c][p] = g;
            ++det.flagged_count[c];
            records.insert({c, p / kBlockPixels, g});
        }
    }
    det.records.assign(records.begin(), records.end());
    return det;
}

namespace {

// Subgroup of 7-bit residues generated by the values plus {0, 127}. With 0
// present the triple-XOR rule a^b^c collapses to plain pairwise closure.
std::set<std::uint8_t> xor_closure(const std::set<std::uint8_t>& values) {
    std::set<std::uint8_t> span{0, 127};
    for (const std::uint8_t v : values) {
        if (span.contains(v)) {
            continue;
        }
        std::set<std::uint8_t> grown = span;
        for (const std::uint8_t s : span) {
            grown.insert(static_cast<std::uint8_t>(s ^ v));
        }
        span.swap(grown);
    }
    return span;
}

}  // namespace

std::optional<AlphaSets> cpa_step2_prune(std::span<const XorEquivalentRecord> records,
                                         std::uint8_t k10_guess) {
    const std::size_t classes =
        static_cast<std::size_t>(std::max(subkey_period(k10_guess) / 2, 1));
    AlphaSets sets;
    for (auto& channel : sets) {
        channel.assign(classes, {});
    }
    for (const auto& rec : records) {
        sets[static_cast<std::size_t>(rec.channel)][rec.block % classes].insert(
            static_cast<std::uint8_t>(rec.gamma & 0x7F));
    }
    for (auto& channel : sets) {
        for (auto& s : channel) {
            if (s.empty()) {
                continue;  // an unobserved class carries no evidence either way
            }
            s = xor_closure(s);
            if (s.size() != 2 && s.size() != 4 && s.size() != 8) {
                return std::nullopt;
            }
        }
    }
    return sets;
}

namespace {

// base + steps * w mod 128; pass 128 - w for a backward shift.
std::uint8_t shift_mod128(std::uint8_t base, std::size_t steps, int w) {
    return static_cast<std::uint8_t>((base + steps * static_cast<std::size_t>(w)) & 0x7F);
}

}  // namespace

std::vector<CandidateKeyFragment> cpa_step3_recover(std::span<const CpaGuess> guesses) {
    std::set<CandidateKeyFragment> out;
    for (const auto& guess : guesses) {
        const int w = guess.k10 & 0x7F;
        std::array<std::vector<std::pair<std::uint8_t, std::uint8_t>>, 3> survivors;
        bool viable = true;
        for (std::size_t c = 0; c < 3 && viable; ++c) {
            const auto& classes = guess.sets[c];
            std::size_t k0 = classes.size();
            for (std::size_t k = 0; k < classes.size(); ++k) {
                if (!classes[k].empty() &&
                    (k0 == classes.size() || classes[k].size() > classes[k0].size())) {
                    k0 = k;
                }
            }
            if (k0 == classes.size()) {
                viable = false;  // the channel produced no records at all
                break;
            }
            for (const auto& [a0k, a1k] : pair_candidates(classes[k0])) {
                const std::uint8_t a00 = shift_mod128(a0k, k0, 128 - w);
                const std::uint8_t a10 = shift_mod128(a1k, k0, 128 - w);
                bool fits = true;
                for (std::size_t k = 0; k < classes.size() && fits; ++k) {
                    if (classes[k].empty()) {
                        continue;
                    }
                    const auto expect =
                        alpha_star_set(shift_mod128(a00, k, w), shift_mod128(a10, k, w));
                    fits = std::includes(expect.begin(), expect.end(), classes[k].begin(),
                                         classes[k].end());
                }
                if (fits) {
                    survivors[c].push_back({a00, a10});
                }
            }
            if (survivors[c].empty()) {
                viable = false;
            }
        }
        if (!viable) {
            continue;
        }
        for (const auto& [r0, r1] : survivors[0]) {
            for (const auto& [g0, g1] : survivors[1]) {
                for (const auto& [b0, b1] : survivors[2]) {
                    out.insert({static_cast<std::uint8_t>(w), {r0, g0, b0, r1, g1, b1}});
                }
            }
        }
    }
    if (out.empty()) {
        throw NoCandidateError("no key fragment is consistent with the gamma sets");
    }
    return {out.begin(), out.end()};
}

std::vector<CandidateKeyFragment> fragment_orbit(const CandidateKeyFragment& f) {
    std::set<CandidateKeyFragment> orbit;
    for (int mask = 0; mask < 8; ++mask) {
        CandidateKeyFragment swapped = f;
        for (int c = 0; c < 3; ++c) {
            if (mask & (1 << c)) {
                std::swap(swapped.subkeys_mod128[c], swapped.subkeys_mod128[c + 3]);
            }
        }
        orbit.insert(swapped);
        CandidateKeyFragment mirrored;
        mirrored.k10_mod128 = static_cast<std::uint8_t>((128 - swapped.k10_mod128) & 0x7F);
        for (int i = 0; i < 6; ++i) {
            mirrored.subkeys_mod128[i] =
                static_cast<std::uint8_t>(swapped.subkeys_mod128[i] ^ 0x7F);
        }
        orbit.insert(mirrored);
    }
    return {orbit.begin(), orbit.end()};
}

CpaResult cpa_recover(const RgbImage& base_plain, std::span<const std::uint8_t> offsets,
                      std::span<const RgbImage> ciphers) {
    CpaResult result;
    result.detection = cpa_step1_collect(base_plain, offsets, ciphers);
    std::vector<CpaGuess> guesses;
    for (int g = 0; g < 128; ++g) {  // g and g + 128 prune and recover identically
        auto sets = cpa_step2_prune(result.detection.records, static_cast<std::uint8_t>(g));
        if (sets) {
            guesses.push_back({static_cast<std::uint8_t>(g), std::move(*sets)});
        }
    }
    result.fragments = cpa_step3_recover(guesses);
    return result;
}

RgbImage kpa_mask_attack(const RgbImage& known_plain, const RgbImage& known_cipher,
                         const RgbImage& target_cipher) {
    if (known_plain.width != target_cipher.width || known_plain.height != target_cipher.height ||
        known_cipher.width != target_cipher.width ||
        known_cipher.height != target_cipher.height) {
        throw DimensionMismatchError("mask attack inputs disagree on shape");
    }
    RgbImage out = target_cipher;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] ^= known_plain.data[i] ^ known_cipher.data[i];
    }
    return out;
}

std::vector<RnPoint> rn_curve(std::span<const RgbImage> ciphers) {
    if (ciphers.size() != 128) {
        throw std::invalid_argument("need the cipher images for offsets 0..127 in order");
    }
    for (std::size_t i = 1; i < ciphers.size(); ++i) {
        if (ciphers[i].width != ciphers[0].width || ciphers[i].height != ciphers[0].height) {
            throw DimensionMismatchError("cipher images disagree on shape");
        }
    }
    // first_fail[idx] = least offset whose anchor test fails, 128 if none does
    const std::size_t bytes = ciphers[0].data.size();
    std::array<std::size_t, 129> fail_hist{};
    for (std::size_t idx = 0; idx < bytes; ++idx) {
        int first_fail = 128;
        for (int l = 1; l < 128; ++l) {
            if ((ciphers[0].data[idx] ^ ciphers[static_cast<std::size_t>(l)].data[idx]) != l) {
                first_fail = l;
                break;
            }
        }
        ++fail_hist[static_cast<std::size_t>(first_fail)];
    }
    std::array<std::size_t, 129> surviving{};  // N(n) = #{first_fail > n}
    for (int n = 127; n >= 0; --n) {
        surviving[static_cast<std::size_t>(n)] =
            surviving[static_cast<std::size_t>(n) + 1] + fail_hist[static_cast<std::size_t>(n) + 1];
    }
    const auto true_positives = static_cast<double>(surviving[127]);
    std::vector<RnPoint> points;
    points.reserve(127);
    for (int n = 1; n <= 127; ++n) {
        const std::size_t detected = surviving[static_cast<std::size_t>(n)];
        points.push_back(
            {n, detected, detected == 0 ? 1.0 : true_positives / static_cast<double>(detected)});
    }
    return points;
}

std::size_t count_detected(std::span<const std::uint8_t> offsets,
                           std::span<const RgbImage> ciphers) {
    check_offset_batch(offsets, ciphers);
    const std::size_t bytes = ciphers[0].data.size();
    std::size_t detected = 0;
    for (std::size_t idx = 0; idx < bytes; ++idx) {
        bool ok = true;
        for (std::size_t i = 1; i < offsets.size() && ok; ++i) {
            ok = (ciphers[0].data[idx] ^ ciphers[i].data[idx]) == offsets[i];
        }
        detected += ok ? 1 : 0;
    }
    return detected;
}

}  // namespace chaoscrack
