#include "chaoscrack/cipher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chaoscrack/errors.hpp"

namespace chaoscrack {

double derive_global_seed(const SecretKey& key) {
    const std::int64_t s1 = static_cast<std::int64_t>(key.k(4)) +
                            (static_cast<std::int64_t>(key.k(5)) << 8) +
                            (static_cast<std::int64_t>(key.k(6)) << 16);
    std::int64_t s2 = 0;
    for (int i = 7; i <= 9; ++i) {
        s2 += key.k(i) % 16 + key.k(i) / 16;
    }
    const double x0 = std::fmod(static_cast<double>(s1) / 16777216.0 +
                                    static_cast<double>(s2) / 96.0,
                                1.0);
    if (x0 == 0.0) {
        throw InvalidKeyError("global seed X0 is exactly 0");
    }
    return x0;
}

int p_index(double window_state) {
    int p = static_cast<int>(24.0 * (window_state - 0.1) / 0.8) + 1;
    return std::clamp(p, 1, 24);
}

double derive_block_seed(ChaoticStream& global, std::uint32_t b2) {
    std::uint32_t sum = b2;
    for (int j = 0; j < 24; ++j) {
        const int p = p_index(global.next_window());
        sum += ((b2 >> (p - 1)) & 1u) << j;
    }
    std::uint32_t y = sum & 0xFFFFFFu;
    if (y == 0) {
        y = 1;  // 0 would pin the local map; remap to the smallest grid value
    }
    return static_cast<double>(y) / 16777216.0;
}

namespace {

// 25 boundaries of the 24 half-open selection subintervals. The row repeats
// every 8 subintervals; widths are 0.03, 0.03, 0.04 across the three thirds.
constexpr std::array<double, 25> kSelectBounds = {
    0.10, 0.13, 0.16, 0.19, 0.22, 0.25, 0.28, 0.31, 0.34, 0.37, 0.40, 0.43, 0.46,
    0.49, 0.52, 0.55, 0.58, 0.62, 0.66, 0.70, 0.74, 0.78, 0.82, 0.86, 0.90,
};

}  // namespace

SubfunctionKind select_subfunction(double y) {
    if (!(y >= kSelectBounds.front() && y < kSelectBounds.back())) {
        throw OutOfWindowError("selector input outside [0.1,0.9)");
    }
    const auto it = std::upper_bound(kSelectBounds.begin(), kSelectBounds.end(), y);
    const auto idx = static_cast<std::size_t>(it - kSelectBounds.begin()) - 1;
    return static_cast<SubfunctionKind>(idx % 8);
}

std::uint8_t apply_subfunction(SubfunctionKind kind, std::uint8_t x, const ChannelParams& p,
                               Direction dir) {
    const bool enc = dir == Direction::Encrypt;
    switch (kind) {
        case SubfunctionKind::Complement:
            return static_cast<std::uint8_t>(x ^ 0xFF);
        case SubfunctionKind::XorA0:
            return static_cast<std::uint8_t>(x ^ p.a0);
        case SubfunctionKind::AddA0B0:
            return static_cast<std::uint8_t>(enc ? x + p.a0 + p.b0 : x - p.a0 - p.b0);
        case SubfunctionKind::XorNotA0:
            return static_cast<std::uint8_t>(x ^ p.a0 ^ 0xFF);
        case SubfunctionKind::XorA1:
            return static_cast<std::uint8_t>(x ^ p.a1);
        case SubfunctionKind::AddA1B1:
            return static_cast<std::uint8_t>(enc ? x + p.a1 + p.b1 : x - p.a1 - p.b1);
        case SubfunctionKind::XorNotA1:
            return static_cast<std::uint8_t>(x ^ p.a1 ^ 0xFF);
        case SubfunctionKind::Identity:
            return x;
    }
    return x;  // unreachable
}

ChannelParams channel_params(const BlockContext& ctx, int channel) {
    const auto& k = ctx.subkeys;  // k[i] holds K(i+1)
    switch (channel) {
        case 0:
            return {k[3], k[4], k[6], k[7]};  // K4 K5 K7 K8
        case 1:
            return {k[4], k[5], k[7], k[8]};  // K5 K6 K8 K9
        default:
            return {k[5], k[3], k[8], k[6]};  // K6 K4 K9 K7
    }
}

int subkey_period(std::uint8_t k10) {
    return static_cast<int>(256 / std::gcd(static_cast<int>(k10), 256));
}

namespace {

std::uint32_t b2_of(const std::array<std::uint8_t, 9>& subkeys) {
    return static_cast<std::uint32_t>(subkeys[0]) |
           (static_cast<std::uint32_t>(subkeys[1]) << 8) |
           (static_cast<std::uint32_t>(subkeys[2]) << 16);
}

}  // namespace

BlockContext initial_context(const SecretKey& key) {
    BlockContext ctx;
    for (int i = 0; i < 9; ++i) {
        ctx.subkeys[static_cast<std::size_t>(i)] = key.k(i + 1);
    }
    ctx.k10 = key.k(10);
    ctx.b2 = b2_of(ctx.subkeys);
    return ctx;
}

void update_subkeys(BlockContext& ctx) {
    for (auto& k : ctx.subkeys) {
        k = static_cast<std::uint8_t>(k + ctx.k10);
    }
    ctx.b2 = b2_of(ctx.subkeys);
}

void process_block(std::span<std::uint8_t, kBlockBytes> rgb, const BlockContext& ctx,
                   Direction dir) {
    ChaoticStream local(ctx.y0);
    const ChannelParams params[3] = {channel_params(ctx, 0), channel_params(ctx, 1),
                                     channel_params(ctx, 2)};
    const int k10 = ctx.k10;
    std::array<SubfunctionKind, 255> kinds;
    for (std::size_t pix = 0; pix < kBlockPixels; ++pix) {
        for (int j = 0; j < k10; ++j) {
            kinds[static_cast<std::size_t>(j)] = select_subfunction(local.next_window());
        }
        for (int c = 0; c < 3; ++c) {
            std::uint8_t v = rgb[3 * pix + static_cast<std::size_t>(c)];
            if (dir == Direction::Encrypt) {
                for (int j = 0; j < k10; ++j) {
                    v = apply_subfunction(kinds[static_cast<std::size_t>(j)], v, params[c], dir);
                }
            } else {
                for (int j = k10 - 1; j >= 0; --j) {
                    v = apply_subfunction(kinds[static_cast<std::size_t>(j)], v, params[c], dir);
                }
            }
            rgb[3 * pix + static_cast<std::size_t>(c)] = v;
        }
    }
}

PixelBlock process_block(const PixelBlock& block, const BlockContext& ctx, Direction dir) {
    PixelBlock out = block;
    process_block(std::span<std::uint8_t, kBlockBytes>(out.rgb), ctx, dir);
    return out;
}

std::vector<BlockContext> block_contexts(const SecretKey& key, std::size_t block_count) {
    ChaoticStream global(derive_global_seed(key));
    BlockContext ctx = initial_context(key);
    std::vector<BlockContext> out;
    out.reserve(block_count);
    for (std::size_t b = 0; b < block_count; ++b) {
        ctx.y0 = derive_block_seed(global, ctx.b2);
        out.push_back(ctx);
        update_subkeys(ctx);
    }
    return out;
}

namespace {

void check_cipher_dims(const RgbImage& img) {
    if (img.pixel_count() == 0 || img.pixel_count() % kBlockPixels != 0) {
        throw BadDimensionsError("pixel count is not a positive multiple of 16");
    }
}

}  // namespace

RgbImage process_image(const RgbImage& img, const SecretKey& key, Direction dir) {
    check_cipher_dims(img);
    RgbImage out = img;
    ChaoticStream global(derive_global_seed(key));
    BlockContext ctx = initial_context(key);
    const std::size_t blocks = img.block_count();
    for (std::size_t b = 0; b < blocks; ++b) {
        ctx.y0 = derive_block_seed(global, ctx.b2);
        process_block(std::span<std::uint8_t, kBlockBytes>(out.data.data() + b * kBlockBytes,
                                                           kBlockBytes),
                      ctx, dir);
        update_subkeys(ctx);
    }
    return out;
}

RgbImage process_image_parallel(const RgbImage& img, const SecretKey& key, Direction dir) {
    check_cipher_dims(img);
    RgbImage out = img;
    const std::vector<BlockContext> contexts = block_contexts(key, img.block_count());
    const std::int64_t blocks = static_cast<std::int64_t>(contexts.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t b = 0; b < blocks; ++b) {
        process_block(std::span<std::uint8_t, kBlockBytes>(
                          out.data.data() + static_cast<std::size_t>(b) * kBlockBytes,
                          kBlockBytes),
                      contexts[static_cast<std::size_t>(b)], dir);
    }
    return out;
}

namespace {

Term term_for(SubfunctionKind kind, const ChannelParams& p) {
    switch (kind) {
        case SubfunctionKind::Complement:
            return {TermKind::Xor, 0xFF};
        case SubfunctionKind::XorA0:
            return {TermKind::Xor, p.a0};
        case SubfunctionKind::AddA0B0:
            return {TermKind::Add, static_cast<std::uint8_t>(p.a0 + p.b0)};
        case SubfunctionKind::XorNotA0:
            return {TermKind::Xor, static_cast<std::uint8_t>(p.a0 ^ 0xFF)};
        case SubfunctionKind::XorA1:
            return {TermKind::Xor, p.a1};
        case SubfunctionKind::AddA1B1:
            return {TermKind::Add, static_cast<std::uint8_t>(p.a1 + p.b1)};
        case SubfunctionKind::XorNotA1:
            return {TermKind::Xor, static_cast<std::uint8_t>(p.a1 ^ 0xFF)};
        case SubfunctionKind::Identity:
            return {TermKind::Xor, 0};
    }
    return {TermKind::Xor, 0};  // unreachable
}

}  // namespace

void visit_composites(const SecretKey& key, std::size_t block_count,
                      const std::function<void(int, std::size_t, int, const CompositeFn&)>& fn) {
    ChaoticStream global(derive_global_seed(key));
    BlockContext ctx = initial_context(key);
    std::vector<Term> raw;
    for (std::size_t b = 0; b < block_count; ++b) {
        ctx.y0 = derive_block_seed(global, ctx.b2);
        ChaoticStream local(ctx.y0);
        const ChannelParams params[3] = {channel_params(ctx, 0), channel_params(ctx, 1),
                                         channel_params(ctx, 2)};
        std::array<SubfunctionKind, 255> kinds;
        for (int pix = 0; pix < static_cast<int>(kBlockPixels); ++pix) {
            for (int j = 0; j < ctx.k10; ++j) {
                kinds[static_cast<std::size_t>(j)] = select_subfunction(local.next_window());
            }
            for (int c = 0; c < 3; ++c) {
                raw.clear();
                for (int j = 0; j < ctx.k10; ++j) {
                    raw.push_back(term_for(kinds[static_cast<std::size_t>(j)], params[c]));
                }
                fn(c, b, pix, reduce(raw));
            }
        }
        update_subkeys(ctx);
    }
}

}  // namespace chaoscrack
