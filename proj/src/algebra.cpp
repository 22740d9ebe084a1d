#include "chaoscrack/algebra.hpp"

#include <cmath>

#include "chaoscrack/errors.hpp"

namespace chaoscrack {

std::uint8_t CompositeFn::apply(std::uint8_t x) const {
    for (const Term& t : terms) {
        if (t.kind == TermKind::Xor) {
            x = static_cast<std::uint8_t>(x ^ t.value);
        } else {
            x = static_cast<std::uint8_t>(x + t.value);
        }
    }
    return x;
}

CompositeFn reduce(std::span<const Term> terms) {
    CompositeFn out;
    for (const Term& t : terms) {
        if (t.value == 0) {
            continue;
        }
        if (!out.terms.empty() && out.terms.back().kind == t.kind) {
            Term& top = out.terms.back();
            if (t.kind == TermKind::Xor) {
                top.value = static_cast<std::uint8_t>(top.value ^ t.value);
            } else {
                top.value = static_cast<std::uint8_t>(top.value + t.value);
            }
            if (top.value == 0) {
                out.terms.pop_back();  // may expose two mergeable neighbours:
                                       // the next incoming term folds into the
                                       // new top, so no rescan is needed
            }
        } else {
            out.terms.push_back(t);
        }
    }
    return out;
}

std::optional<std::uint8_t> xor_equivalent_gamma(const std::array<std::uint8_t, 256>& table,
                                                 ProbeBudget budget) {
    const int last = budget == ProbeBudget::Full255 ? 255 : 127;
    const std::uint8_t gamma = table[0];
    for (int d = 1; d <= last; ++d) {
        if ((table[0] ^ table[d]) != d) {
            return std::nullopt;
        }
    }
    return gamma;
}

std::uint8_t predicted_gamma_mod128(const CompositeFn& fn) {
    std::uint8_t g = 0;
    for (const Term& t : fn.terms) {
        if (t.kind == TermKind::Xor) {
            g = static_cast<std::uint8_t>(g ^ t.value);
        }
    }
    return static_cast<std::uint8_t>(g & 0x7F);
}

std::set<std::uint8_t> alpha_star_set(std::uint8_t a0, std::uint8_t a1) {
    const std::uint8_t a0s = static_cast<std::uint8_t>(a0 & 0x7F);
    const std::uint8_t a1s = static_cast<std::uint8_t>(a1 & 0x7F);
    return {0,
            127,
            a0s,
            a1s,
            static_cast<std::uint8_t>(a0s ^ 127),
            static_cast<std::uint8_t>(a1s ^ 127),
            static_cast<std::uint8_t>(a0s ^ a1s),
            static_cast<std::uint8_t>(a0s ^ a1s ^ 127)};
}

std::vector<std::pair<std::uint8_t, std::uint8_t>> pair_candidates(
    const std::set<std::uint8_t>& alpha_star) {
    if (!alpha_star.contains(0) || !alpha_star.contains(127)) {
        throw MalformedSetError("alpha* set must contain 0 and 127");
    }
    std::vector<std::pair<std::uint8_t, std::uint8_t>> out;
    switch (alpha_star.size()) {
        case 2:
            out = {{0, 127}, {127, 0}};
            break;
        case 4: {
            std::uint8_t a = 0;
            for (const std::uint8_t v : alpha_star) {
                if (v != 0 && v != 127) {
                    a = v;
                    break;
                }
            }
            const std::uint8_t an = static_cast<std::uint8_t>(a ^ 127);
            if (!alpha_star.contains(an)) {
                throw MalformedSetError("size-4 alpha* set is not closed under ^127");
            }
            out = {{0, a}, {0, an}, {127, a}, {127, an}, {a, a}, {a, an}, {an, a}, {an, an}};
            break;
        }
        case 8:
            for (const std::uint8_t a0 : alpha_star) {
                if (a0 == 0 || a0 == 127) {
                    continue;
                }
                for (const std::uint8_t a1 : alpha_star) {
                    if (a1 == 0 || a1 == 127 || a1 == a0 || a1 == (a0 ^ 127)) {
                        continue;
                    }
                    out.emplace_back(a0, a1);
                }
            }
            break;
        default:
            throw MalformedSetError("alpha* set size must be 2, 4 or 8");
    }
    return out;
}

std::array<std::array<std::uint8_t, 3>, 4> equivalent_triples(std::uint8_t a0s, std::uint8_t a1s,
                                                       std::uint8_t k10s) {
    const std::uint8_t u = static_cast<std::uint8_t>(a0s & 0x7F);
    const std::uint8_t v = static_cast<std::uint8_t>(a1s & 0x7F);
    const std::uint8_t w = static_cast<std::uint8_t>(k10s & 0x7F);
    const std::uint8_t wm = static_cast<std::uint8_t>((128 - w) & 0x7F);
    return {{
        {u, v, w},
        {static_cast<std::uint8_t>(u ^ 127), static_cast<std::uint8_t>(v ^ 127), wm},
        {v, u, w},
        {static_cast<std::uint8_t>(v ^ 127), static_cast<std::uint8_t>(u ^ 127), wm},
    }};
}

double composition_xor_probability(int n, double p) {
    return (1.0 - std::pow(1.0 - 2.0 * p, n)) / 2.0;
}

double len_equals_k10_bound(int k10) {
    if (k10 <= 0) {
        return 1.0;
    }
    const double base = 5.0 / 32.0;
    if (k10 % 2 == 0) {
        return 2.0 * std::pow(base, k10 / 2);
    }
    return std::pow(base, k10 / 2) * (7.0 / 8.0);
}

}  // namespace chaoscrack
