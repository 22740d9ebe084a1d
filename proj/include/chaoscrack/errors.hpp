#pragma once

#include <stdexcept>

namespace chaoscrack {

// Key text that is not 20 hex digits.
struct BadKeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Key whose global seed X0 evaluates to exactly 0 (the map would be stuck).
struct InvalidKeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No chaotic state entered [0.1, 0.9) within the iteration cap.
struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedPpmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pixel count not divisible by the block size.
struct BadDimensionsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chaotic state outside [0.1, 0.9) handed to the subfunction selector.
struct OutOfWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Set handed to pair enumeration that cannot be an alpha* set.
struct MalformedSetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inference asked for without any identical-block pairs.
struct EmptyEvidenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every K10 guess was eliminated during candidate recovery.
struct NoCandidateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace chaoscrack
