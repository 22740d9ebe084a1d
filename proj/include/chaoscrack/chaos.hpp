#pragma once

#include <cstdint>

#include "chaoscrack/errors.hpp"

namespace chaoscrack {

inline constexpr double kMu = 3.9999;
inline constexpr double kWindowLo = 0.1;
inline constexpr double kWindowHi = 0.9;
inline constexpr std::uint64_t kWindowIterationCap = 1'000'000;

// One logistic-map step in binary64 with a pinned evaluation order;
// the whole scheme's byte reproducibility hangs on these three operations.
inline double logistic_step(double x) {
    const double t1 = 1.0 - x;
    const double t2 = x * t1;
    return kMu * t2;
}

inline bool in_window(double x) { return x >= kWindowLo && x < kWindowHi; }

// Logistic orbit with window filtering. The seed itself is never a window
// state: the map is always stepped at least once before the test.
class ChaoticStream {
public:
    explicit ChaoticStream(double seed, std::uint64_t iteration_cap = kWindowIterationCap)
        : state_(seed), cap_(iteration_cap) {}

    // Advances to the next state in [0.1, 0.9) and returns it.
    double next_window() {
        for (std::uint64_t i = 0; i < cap_; ++i) {
            state_ = logistic_step(state_);
            if (in_window(state_)) {
                return state_;
            }
        }
        throw NonConvergenceError("no chaotic state entered [0.1,0.9) within the iteration cap");
    }

    double state() const { return state_; }

private:
    double state_;
    std::uint64_t cap_;
};

}  // namespace chaoscrack
