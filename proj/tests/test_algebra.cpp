#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "chaoscrack/algebra.hpp"
#include "chaoscrack/errors.hpp"

using namespace chaoscrack;

namespace {

std::uint8_t apply_raw(std::span<const Term> terms, std::uint8_t x) {
    for (const Term& t : terms) {
        x = t.kind == TermKind::Xor ? static_cast<std::uint8_t>(x ^ t.value)
                                    : static_cast<std::uint8_t>(x + t.value);
    }
    return x;
}

}  // namespace

TEST_CASE("reduction preserves the function and canonicalizes the form") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len_dist(0, 12);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Term> raw(static_cast<std::size_t>(len_dist(rng)));
        for (auto& t : raw) {
            t.kind = coin(rng) ? TermKind::Xor : TermKind::Add;
            t.value = static_cast<std::uint8_t>(byte(rng));
        }
        const CompositeFn fn = reduce(raw);
        for (int x = 0; x < 256; ++x) {
            CHECK(fn.apply(static_cast<std::uint8_t>(x)) ==
                  apply_raw(raw, static_cast<std::uint8_t>(x)));
        }
        CHECK(fn.len() <= raw.size());
        for (std::size_t i = 0; i + 1 < fn.terms.size(); ++i) {
            CHECK(fn.terms[i].kind != fn.terms[i + 1].kind);
        }
        for (const Term& t : fn.terms) {
            CHECK(t.value != 0);
        }
    }
}

TEST_CASE("reduction cascades through exposed cancellations") {
    const std::vector<Term> raw = {{TermKind::Xor, 5},
                                   {TermKind::Add, 3},
                                   {TermKind::Add, 253},
                                   {TermKind::Xor, 5}};
    CHECK(reduce(raw).terms.empty());
}

TEST_CASE("xor equivalence probe against an exhaustive definition") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> len_dist(1, 6);
    std::uniform_int_distribution<int> coin(0, 1);
    int hits = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        std::vector<Term> raw(static_cast<std::size_t>(len_dist(rng)));
        for (auto& t : raw) {
            t.kind = coin(rng) ? TermKind::Xor : TermKind::Add;
            t.value = static_cast<std::uint8_t>(byte(rng));
        }
        std::array<std::uint8_t, 256> table{};
        for (int x = 0; x < 256; ++x) {
            table[static_cast<std::size_t>(x)] = apply_raw(raw, static_cast<std::uint8_t>(x));
        }
        bool is_xor = true;
        const std::uint8_t gamma = table[0];
        for (int x = 0; x < 256 && is_xor; ++x) {
            is_xor = table[static_cast<std::size_t>(x)] == (x ^ gamma);
        }
        const auto full = xor_equivalent_gamma(table, ProbeBudget::Full255);
        CHECK(full.has_value() == is_xor);
        if (full) {
            CHECK(*full == gamma);
            ++hits;
        }
        // The reduced budget is sound on composites: same verdict.
        CHECK(xor_equivalent_gamma(table, ProbeBudget::Composite127) == full);
    }
    CHECK(hits > 0);  // the sample must actually contain XOR-equivalent cases
}

TEST_CASE("reduced budget can be fooled by a non-composite table") {
    // Identity on 0..127, XOR 128 above: passes every offset below 128.
    std::array<std::uint8_t, 256> table{};
    for (int x = 0; x < 256; ++x) {
        table[static_cast<std::size_t>(x)] =
            static_cast<std::uint8_t>(x < 128 ? x : x ^ 128);
    }
    CHECK(xor_equivalent_gamma(table, ProbeBudget::Composite127) == 0);
    CHECK(!xor_equivalent_gamma(table, ProbeBudget::Full255));
}

TEST_CASE("predicted 7-bit gamma of an alternating composite") {
    const CompositeFn fn{{{TermKind::Add, 5}, {TermKind::Xor, 3}, {TermKind::Add, 251}}};
    CHECK(predicted_gamma_mod128(fn) == 3);

    const CompositeFn high{{{TermKind::Xor, 0x93}, {TermKind::Add, 40}, {TermKind::Xor, 0x2C}}};
    CHECK(predicted_gamma_mod128(high) == ((0x93 ^ 0x2C) & 0x7F));
}

TEST_CASE("alpha* sets have size 2, 4 or 8 and are xor-closed around 127") {
    CHECK(alpha_star_set(0, 0) == std::set<std::uint8_t>{0, 127});
    CHECK(alpha_star_set(0, 5) == std::set<std::uint8_t>{0, 5, 122, 127});
    CHECK(alpha_star_set(128, 5) == std::set<std::uint8_t>{0, 5, 122, 127});  // mod-128 inputs
    CHECK(alpha_star_set(3, 5) == std::set<std::uint8_t>{0, 3, 5, 6, 121, 122, 124, 127});

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a0 = static_cast<std::uint8_t>(byte(rng));
        const auto a1 = static_cast<std::uint8_t>(byte(rng));
        const auto s = alpha_star_set(a0, a1);
        CHECK((s.size() == 2 || s.size() == 4 || s.size() == 8));
        CHECK(s.contains(0));
        CHECK(s.contains(127));
        for (const auto x : s) {
            for (const auto y : s) {
                CHECK(s.contains(static_cast<std::uint8_t>(x ^ y)));
            }
        }
    }
}

TEST_CASE("pair candidates enumerate exactly the generating pairs") {
    const auto two = pair_candidates({0, 127});
    CHECK(two.size() == 2);
    const auto four = pair_candidates({0, 5, 122, 127});
    CHECK(four.size() == 8);
    const auto eight = pair_candidates({0, 3, 5, 6, 121, 122, 124, 127});
    CHECK(eight.size() == 24);

    for (const auto& pairs : {two, four, eight}) {
        std::set<std::pair<std::uint8_t, std::uint8_t>> dedup(pairs.begin(), pairs.end());
        CHECK(dedup.size() == pairs.size());
    }
    // Every candidate regenerates the set it came from.
    for (const auto& [a0, a1] : four) {
        CHECK(alpha_star_set(a0, a1) == std::set<std::uint8_t>{0, 5, 122, 127});
    }
    for (const auto& [a0, a1] : eight) {
        CHECK(alpha_star_set(a0, a1) ==
              std::set<std::uint8_t>{0, 3, 5, 6, 121, 122, 124, 127});
    }

    CHECK_THROWS_AS(pair_candidates({0, 1, 127}), MalformedSetError);
    CHECK_THROWS_AS(pair_candidates({0, 1, 2, 127}), MalformedSetError);  // not ^127-closed
    CHECK_THROWS_AS(pair_candidates({1, 2}), MalformedSetError);          // missing 0 and 127
}

TEST_CASE("the four-way parameter ambiguity orbit") {
    const auto orbit = equivalent_triples(3, 5, 65);
    const std::array<std::uint8_t, 3> expect[4] = {
        {3, 5, 65}, {124, 122, 63}, {5, 3, 65}, {122, 124, 63}};
    for (int i = 0; i < 4; ++i) {
        CHECK(orbit[static_cast<std::size_t>(i)] == expect[i]);
    }
}

TEST_CASE("flip composition probability closed form") {
    CHECK(composition_xor_probability(2, 3.0 / 8.0) == 15.0 / 32.0);
    CHECK(composition_xor_probability(1, 0.5) == 0.5);
    CHECK(composition_xor_probability(0, 0.3) == 0.0);
    // Monotone approach to 1/2 from below for p < 1/2.
    double prev = 0.0;
    for (int n = 1; n <= 20; ++n) {
        const double v = composition_xor_probability(n, 0.125);
        CHECK(v > prev);
        CHECK(v < 0.5);
        prev = v;
    }
}

TEST_CASE("bound on the chance that a composite keeps full length") {
    CHECK(len_equals_k10_bound(1) == 7.0 / 8.0);
    CHECK(len_equals_k10_bound(2) == 5.0 / 16.0);
    CHECK(len_equals_k10_bound(3) == (5.0 / 32.0) * (7.0 / 8.0));
    for (int k = 2; k <= 40; ++k) {
        CHECK(len_equals_k10_bound(k) < len_equals_k10_bound(k - 2 < 1 ? 1 : k - 2));
    }
}
