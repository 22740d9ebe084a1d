#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chaoscrack/algebra.hpp"
#include "chaoscrack/chaos.hpp"
#include "chaoscrack/image.hpp"
#include "chaoscrack/key.hpp"

namespace chaoscrack {

enum class Direction { Encrypt, Decrypt };

// The eight byte subfunctions, in the row order of the selection table.
enum class SubfunctionKind : std::uint8_t {
    Complement,  // x ^ 255
    XorA0,       // x ^ a0
    AddA0B0,     // (x + a0 + b0) mod 256
    XorNotA0,    // x ^ (a0 ^ 255)
    XorA1,       // x ^ a1
    AddA1B1,     // (x + a1 + b1) mod 256
    XorNotA1,    // x ^ (a1 ^ 255)
    Identity,    // x
};

// Per-channel wiring of the subfunction parameters onto the subkeys:
// R: (K4, K5, K7, K8)   G: (K5, K6, K8, K9)   B: (K6, K4, K9, K7).
struct ChannelParams {
    std::uint8_t a0, b0, a1, b1;
};

// Dynamic per-block state: subkeys after the block's updates, plus the
// block seed for the local map.
struct BlockContext {
    std::array<std::uint8_t, 9> subkeys{};  // K1..K9 at this block
    std::uint8_t k10 = 0;
    std::uint32_t b2 = 0;  // K1 + 2^8 K2 + 2^16 K3, recomputed after updates
    double y0 = 0.0;
};

// X0 = (S1/2^24 + S2/96) mod 1 with S1 = K4 + 2^8 K5 + 2^16 K6 and
// S2 = sum over K7..K9 of (low nibble + high nibble), both exact integers.
// Throws InvalidKeyError when the result is exactly 0.
double derive_global_seed(const SecretKey& key);

// Consumes 24 window states from the global stream. Each state picks a bit
// position P in 1..24 (uniform partition of [0.1,0.9), clamped); the seed is
// (b2 + sum of picked bits weighted 2^(j-1)) mod 2^24, scaled by 2^-24.
// An exact 0 is remapped to 2^-24.
double derive_block_seed(ChaoticStream& global, std::uint32_t b2);

// Bit position selected by a window state, in 1..24.
int p_index(double window_state);

// Table lookup over the 24 half-open subintervals of [0.1,0.9); the row is
// the subinterval index mod 8. Plain binary64 comparisons, no epsilon.
// Throws OutOfWindowError outside the window.
SubfunctionKind select_subfunction(double y);

std::uint8_t apply_subfunction(SubfunctionKind kind, std::uint8_t x, const ChannelParams& p,
                               Direction dir);

ChannelParams channel_params(const BlockContext& ctx, int channel);  // 0=R 1=G 2=B

// Subkey update period: T = 256 / gcd(K10, 256); T(0) = 1.
int subkey_period(std::uint8_t k10);

BlockContext initial_context(const SecretKey& key);

// K_i <- (K_i + K10) mod 256 for i = 1..9; b2 recomputed. y0 untouched.
void update_subkeys(BlockContext& ctx);

// Encrypts or decrypts 16 pixels in place. Each pixel draws exactly K10
// window states from a fresh local stream seeded at ctx.y0; the three
// channels share the draws. Decryption replays the same draws and applies
// the inverse subfunctions in reverse order.
void process_block(std::span<std::uint8_t, kBlockBytes> rgb, const BlockContext& ctx,
                   Direction dir);
PixelBlock process_block(const PixelBlock& block, const BlockContext& ctx, Direction dir);

// Per-block contexts for an image of `block_count` blocks: the serial walk
// of the global stream and the subkey schedule.
std::vector<BlockContext> block_contexts(const SecretKey& key, std::size_t block_count);

// Serial reference path.
RgbImage process_image(const RgbImage& img, const SecretKey& key, Direction dir);

// Same bytes as process_image: contexts are derived serially, blocks are
// processed in parallel.
RgbImage process_image_parallel(const RgbImage& img, const SecretKey& key, Direction dir);

// Known-key traversal of every per-position composite: fn(channel, block,
// pixel, reduced composite). Blocks arrive in raster order.
void visit_composites(const SecretKey& key, std::size_t block_count,
                      const std::function<void(int, std::size_t, int, const CompositeFn&)>& fn);

}  // namespace chaoscrack
