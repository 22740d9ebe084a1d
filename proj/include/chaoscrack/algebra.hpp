#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace chaoscrack {

// Byte transforms x -> x ^ v and x -> (x + v) mod 256. Every per-pixel
// encryption function of the cipher is a composition of these.
enum class TermKind : std::uint8_t { Xor, Add };

struct Term {
    TermKind kind;
    std::uint8_t value;

    bool operator==(const Term&) const = default;
};

struct CompositeFn {
    std::vector<Term> terms;  // applied left to right

    std::size_t len() const { return terms.size(); }
    std::uint8_t apply(std::uint8_t x) const;

    bool operator==(const CompositeFn&) const = default;
};

// Canonical form: adjacent Xor terms fold by XOR, adjacent Add terms fold
// mod 256, zero-valued terms drop (which can cascade further folds). The
// result alternates kinds and evaluates identically on every input.
CompositeFn reduce(std::span<const Term> terms);

enum class ProbeBudget {
    Full255,       // sound for arbitrary byte functions
    Composite127,  // offsets 1..127; sound for Xor/Add composites
};

// Tests f(x) == x ^ gamma for a constant gamma using the anchor x1 = 0:
// checks f(0) ^ f(d) == d over the budgeted offsets. Returns gamma = f(0)
// when every check passes. `table` is f's full value table.
std::optional<std::uint8_t> xor_equivalent_gamma(const std::array<std::uint8_t, 256>& table,
                                                 ProbeBudget budget);

// Predicted 7-bit residue of gamma for an alternating composite that happens
// to be XOR-equivalent: the XOR of its Xor-term values, mod 128.
std::uint8_t predicted_gamma_mod128(const CompositeFn& fn);

// {0, 127, a0*, a1*, a0*^127, a1*^127, a0*^a1*, a0*^a1*^127} with
// a* = a mod 128. Always an XOR-subgroup of size 2, 4 or 8 containing 127.
std::set<std::uint8_t> alpha_star_set(std::uint8_t a0, std::uint8_t a1);

// All (a0*, a1*) pairs that could have produced the given alpha* set:
// 2 pairs for size 2, 8 for size 4, 24 for size 8. Throws MalformedSetError
// for any other size.
std::vector<std::pair<std::uint8_t, std::uint8_t>> pair_candidates(
    const std::set<std::uint8_t>& alpha_star);

// The four parameter triples indistinguishable from (a0*, a1*, k10*) by the
// attack's mod-128 arithmetic:
//   (u, v, w), (u^127, v^127, 128-w), (v, u, w), (v^127, u^127, 128-w).
std::array<std::array<std::uint8_t, 3>, 4> equivalent_triples(std::uint8_t a0s, std::uint8_t a1s,
                                                       std::uint8_t k10s);

// Probability that a composition of n independent "flip with probability p"
// stages flips: (1 - (1-2p)^n) / 2.
double composition_xor_probability(int n, double p);

// Upper bound on P(len(E) == K10) for the cipher's draw distribution:
// even K10 -> 2 * (5/32)^(K10/2), odd K10 -> (5/32)^floor(K10/2) * 7/8.
double len_equals_k10_bound(int k10);

}  // namespace chaoscrack
