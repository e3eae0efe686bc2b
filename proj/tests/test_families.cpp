#include <cstdint>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pclone/core.hpp"
#include "pclone/definability.hpp"
#include "pclone/families.hpp"
#include "pclone/fingerprint.hpp"
#include "pclone/ops.hpp"
#include "pclone/preserve.hpp"

using namespace pclone;

TEST_CASE("the four-ary chain relations have their frozen members") {
  CHECK(rho_c().tuples() == std::vector<std::uint32_t>{0, 3, 5, 15});
  CHECK(rho_1().tuples() == std::vector<std::uint32_t>{0, 3, 5, 10, 12, 15});
  CHECK(rho_l().tuples() ==
        std::vector<std::uint32_t>{0, 3, 5, 6, 9, 10, 12, 15});

  for (std::uint32_t t : rho_c().tuples()) CHECK(rho_1().contains(t));
  for (std::uint32_t t : rho_1().tuples()) CHECK(rho_l().contains(t));
}

TEST_CASE("the pattern construction reproduces the linear relation") {
  CHECK(rho_l_from_patterns() == rho_l());
}

TEST_CASE("parity preserves the linear relation, conjunction does not") {
  PartialFunction xor3(3);
  for (std::uint32_t x = 0; x < 8; ++x) {
    xor3.define(x, (std::popcount(x) & 1) != 0);
  }
  CHECK(preserves(xor3, rho_l()));
  const PartialFunction conj = encode_function(
      2, {{0b00, false}, {0b01, false}, {0b10, false}, {0b11, true}});
  CHECK(!preserves(conj, rho_l()));
  CHECK(!preserves(conj, rho_c()));
  CHECK(preserves(PartialFunction::constant(2, true), rho_c()));
}

TEST_CASE("cycle and clique powers of the no-double-one relation") {
  CHECK(r02_c(3).tuples() == std::vector<std::uint32_t>{0, 1, 2, 4});
  CHECK(r02_c(5).tuples() == std::vector<std::uint32_t>{0, 1, 2, 4, 5, 8, 9,
                                                        10, 16, 18, 20});
  CHECK(r02_k(5).tuples() == std::vector<std::uint32_t>{0, 1, 2, 4, 8, 16});
  CHECK(r02_k(3).tuples() == std::vector<std::uint32_t>{0, 1, 2, 4});
  CHECK(r02_c(2) == r02_k(2));
  CHECK(r02(3).size() == 16);
  CHECK(r02(5).size() == 66);
  CHECK(r02(3).arity() == 6);
  CHECK(r02(5).arity() == 10);
  CHECK_THROWS_AS(r02_c(1), Error);
  CHECK_THROWS_AS(r02_c(11), Error);
}

TEST_CASE("cycle members are exactly the independent sets of the cycle") {
  for (int n = 3; n <= 7; ++n) {
    const Relation r = r02_c(n);
    for (std::uint32_t t = 0; t < (1u << n); ++t) {
      bool independent = true;
      for (int i = 0; i < n; ++i) {
        const int a = tuple_bit(t, n, i);
        const int b = tuple_bit(t, n, (i + 1) % n);
        independent = independent && !(a == 1 && b == 1);
      }
      CHECK(r.contains(t) == independent);
    }
  }
}

TEST_CASE("lambda clause relations") {
  const Relation l2 = lambda_k(2);
  CHECK(l2.arity() == 3);
  CHECK(l2.size() == 7);
  CHECK(!l2.contains(0b011));

  // Clause x2 or not x3 over arity 3.
  const Relation c = lambda_ij(3, 2, {3});
  for (std::uint32_t t = 0; t < 8; ++t) {
    const bool sat = tuple_bit(t, 3, 1) == 1 || tuple_bit(t, 3, 2) == 0;
    CHECK(c.contains(t) == sat);
  }
  CHECK(lambda_ij(3, 2, {2, 3}) == Relation::full(3));

  const Relation g = lambda_gamma(3, {{2, {3}}, {3, {2}}});
  for (std::uint32_t t = 0; t < 8; ++t) {
    const bool sat = (tuple_bit(t, 3, 1) == 1 || tuple_bit(t, 3, 2) == 0) &&
                     (tuple_bit(t, 3, 2) == 1 || tuple_bit(t, 3, 1) == 0);
    CHECK(g.contains(t) == sat);
  }
}

TEST_CASE("the condition table for m equal to four") {
  const auto conds = gamma_m(4);
  const std::vector<std::pair<int, std::vector<int>>> expected = {
      {1, {2, 3, 4, 5}}, {2, {1, 3, 4}}, {2, {1, 3, 5}}, {2, {1, 4, 5}},
      {3, {1, 2, 4}},    {3, {1, 2, 5}}, {3, {1, 4, 5}}, {4, {1, 2, 3}},
      {4, {1, 2, 5}},    {4, {1, 3, 5}}, {5, {1, 2, 3}}, {5, {1, 2, 4}},
      {5, {1, 3, 4}}};
  CHECK(conds == expected);
  CHECK(gamma_m(3).size() == 1 + 3 * 1);
  CHECK(gamma_m(5).size() == 1 + 5 * 6);
}

TEST_CASE("the pinched conjunction relations keep their membership laws") {
  for (int m = 3; m <= 6; ++m) {
    const Relation r = r_lambda(m);
    const int n = m + 1;
    CHECK(r.arity() == n);
    // All ones inside.
    CHECK(r.contains((1u << n) - 1));
    // Single zero outside.
    for (int i = 0; i < n; ++i) {
      CHECK(!r.contains(((1u << n) - 1) ^ (1u << i)));
    }
    // Leading zero: everything except all-ones-after.
    for (std::uint32_t rest = 0; rest + 1 < (1u << m); ++rest) {
      CHECK(r.contains(rest));
    }
    // Weight two inside.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        CHECK(r.contains((1u << i) | (1u << j)));
      }
    }
  }
  CHECK(!r_lambda(4).contains(19));
  CHECK(!r_lambda(4).contains(23));
}

TEST_CASE("the conjunction graph relation") {
  CHECK(r_lambda_lambda().tuples() == std::vector<std::uint32_t>{0, 1, 2, 7});
  // First coordinate is the conjunction of the other two.
  for (std::uint32_t t = 0; t < 8; ++t) {
    const int x1 = tuple_bit(t, 3, 0);
    const int x2 = tuple_bit(t, 3, 1);
    const int x3 = tuple_bit(t, 3, 2);
    CHECK(r_lambda_lambda().contains(t) == (x1 == (x2 & x3)));
  }
}

TEST_CASE("threshold functions index weights as documented") {
  const SymmetricPartialFunction t12 = tau_kp(2, 1);
  CHECK(t12.arity() == 4);
  CHECK(t12.at_weight(0) == Ternary::kZero);
  CHECK(t12.at_weight(1) == Ternary::kZero);
  CHECK(t12.at_weight(2) == Ternary::kUndefined);
  CHECK(t12.at_weight(3) == Ternary::kUndefined);
  CHECK(t12.at_weight(4) == Ternary::kOne);

  const SymmetricPartialFunction big = tau_kp(3, 4);
  CHECK(big.arity() == 21);
  CHECK(big.at_weight(4) == Ternary::kZero);
  CHECK(big.at_weight(5) == Ternary::kUndefined);
  CHECK(big.at_weight(21) == Ternary::kOne);
}

TEST_CASE("the arity sequence and its separators") {
  CHECK(p_seq(1) == 1);
  CHECK(p_seq(2) == 4);
  CHECK(p_seq(3) == 21);
  CHECK(p_seq(4) == 148);
  CHECK(xi(1) == tau_kp(2, 1));
  CHECK(xi(2) == tau_kp(3, 4));
  CHECK(expand_symmetric(xi(1)).domain_size() == 6);
}

TEST_CASE("appendix basis relations have their frozen encodings") {
  CHECK(appendix_relation("P0") == Relation::of(1, {0}));
  CHECK(appendix_relation("P1") == Relation::of(1, {1}));
  CHECK(appendix_relation("P01") == Relation::of(2, {0b01}));
  CHECK(appendix_relation("Pleq") == Relation::of(2, {0, 1, 3}));
  CHECK(appendix_relation("P0leq") == Relation::of(3, {0, 1, 3}));
  CHECK(appendix_relation("P1leq") == Relation::of(3, {4, 5, 7}));
  CHECK(appendix_relation("P01leq") == Relation::of(4, {4, 5, 7}));
  CHECK(appendix_relation("Plambda") == Relation::of(2, {1, 2}));
  CHECK(appendix_relation("P0lambda") == Relation::of(3, {1, 2}));
  CHECK(appendix_relation("P1lambda") == Relation::of(3, {5, 6}));
  CHECK(appendix_relation("P01lambda") == Relation::of(4, {5, 6}));
  CHECK(appendix_relation_names().size() == 11);
  CHECK_THROWS_AS(appendix_relation("nope"), Error);
  for (const auto& name : appendix_relation_names()) {
    CHECK(is_irredundant(appendix_relation(name)));
  }
}

TEST_CASE("catalog entries resolve by name") {
  CHECK(clone_catalog().size() == 23);
  CHECK(find_clone("O").defining.empty());
  CHECK(find_clone("Lambda").defining.size() == 1);
  CHECK(find_clone("Lambda").defining[0] == r_lambda_lambda());
  CHECK(find_clone("V").defining[0] == r_lambda_lambda().dualized());
  CHECK(find_clone("V").defining[0].tuples() ==
        std::vector<std::uint32_t>{0, 5, 6, 7});
  CHECK_THROWS_AS(find_clone("nope"), Error);
}

TEST_CASE("total parts of the chain clones at arity 2") {
  // Pol rho_C at arity <= 2: constants and projections only.
  const CloneFingerprint c01 = pol_fingerprint({rho_c()}, 2);
  CHECK(c01.count(1) == 3);
  CHECK(c01.count(2) == 4);

  // Pol rho_1 adds negation: all four unary total functions.
  const CloneFingerprint omega1 = pol_fingerprint({rho_1()}, 2);
  CHECK(omega1.count(1) == 4);

  const PartialFunction knot = encode_function(1, {{0, true}, {1, false}});
  CHECK(!c01.contains(knot));
  CHECK(omega1.contains(knot));
}

TEST_CASE("the unary clone generated by all unary functions matches rho_1") {
  GeneratorSet unaries{"omega1", {}};
  for (std::uint64_t c = 0; c < 4; ++c) {
    PartialFunction f(1);
    f.define(0, (c & 1) != 0);
    f.define(1, (c & 2) != 0);
    unaries.members.push_back(f);
  }
  const CloneFingerprint generated = clone_closure_bounded(unaries, 3);
  const CloneFingerprint pol = pol_fingerprint({rho_1()}, 3);
  CHECK(generated.total_part() == pol);
}

TEST_CASE("clone defining relations are invariant under their own clone") {
  for (const auto& entry : clone_catalog()) {
    for (const auto& rel : entry.defining) {
      if (rel.size() > 4) continue;
      CHECK(invariant_under_clone(rel, entry.defining, int(rel.size())));
    }
  }
}
