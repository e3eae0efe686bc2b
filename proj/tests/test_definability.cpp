#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "pclone/budget.hpp"
#include "pclone/core.hpp"
#include "pclone/definability.hpp"
#include "pclone/families.hpp"
#include "pclone/fingerprint.hpp"
#include "pclone/preserve.hpp"

using namespace pclone;

namespace {

std::vector<Relation> irredundant_small_relations() {
  std::vector<Relation> out;
  for (int h = 1; h <= 2; ++h) {
    const std::uint32_t members = 1u << (1u << h);
    for (std::uint32_t m = 1; m < members; ++m) {
      Relation r(h);
      for (std::uint32_t t = 0; t < (1u << h); ++t) {
        if (m >> t & 1u) r.add(t);
      }
      if (is_irredundant(r)) out.push_back(r);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("irredundancy detects duplicate and fictitious coordinates") {
  CHECK(is_irredundant(rho_02()));
  CHECK(is_irredundant(r_lambda_lambda()));
  CHECK(!is_irredundant(Relation::full(2)));
  // Both tuples have equal first and second coordinates.
  CHECK(!is_irredundant(Relation::of(2, {0b00, 0b11})));
  // The trailing coordinate is free.
  CHECK(!is_irredundant(Relation::of(2, {0b00, 0b01})));
  CHECK_THROWS_AS(is_irredundant(Relation(2)), Error);
}

TEST_CASE("maximal gamma on identical relations contains the identity tuple") {
  for (const Relation& rho : {rho_02(), rho_c(), r_lambda_lambda()}) {
    const auto gamma = maximal_gamma(rho, rho);
    bool has_identity = false;
    for (const auto& it : gamma) {
      bool identity = true;
      for (int i = 0; i < rho.arity(); ++i) {
        identity = identity && it.entries[std::size_t(i)] == i + 1;
      }
      has_identity = has_identity || identity;
    }
    CHECK(has_identity);
  }
}

TEST_CASE("maximal gamma returns exactly the valid index tuples") {
  const Relation rho = rho_02();
  const Relation sigma = Relation::of(1, {0});
  CHECK(maximal_gamma(rho, sigma).empty());

  const Relation pleq = appendix_relation("Pleq");
  const auto gamma = maximal_gamma(rho, pleq);
  // rho_02 = {00,01,10}: index pairs (i,j) with x_i <= x_j for all members.
  // (1,1) and (2,2) always hold; (1,2) fails at 10; (2,1) fails at 01.
  REQUIRE(gamma.size() == 2);
  CHECK(gamma[0].entries == std::vector<int>{1, 1});
  CHECK(gamma[1].entries == std::vector<int>{2, 2});
}

TEST_CASE("every relation is definable from itself by the identity tuple") {
  for (const Relation& rho : {rho_02(), rho_c(), rho_1(), r_lambda(3)}) {
    const auto v = qfpp_definable(rho, {rho});
    CHECK(v.definable);
    REQUIRE(v.witness.size() == 1);
    CHECK(!v.witness[0].empty());
  }
}

TEST_CASE("the singleton pair relation splits into its unary parts") {
  const Relation zero = Relation::of(1, {0});
  const Relation one = Relation::of(1, {1});
  const Relation pair01 = Relation::of(2, {0b01});
  CHECK(ppol_leq({zero, one}, {zero, one, pair01}));
  CHECK(ppol_leq({zero, one, pair01}, {zero, one}));
}

TEST_CASE("the one-relation needs more than zero and the pair") {
  const Relation zero = Relation::of(1, {0});
  const Relation one = Relation::of(1, {1});
  const Relation pair01 = Relation::of(2, {0b01});
  const auto v = qfpp_definable(one, {zero, pair01});
  CHECK(!v.definable);
  CHECK(!ppol_leq({zero, pair01}, {one}));
}

TEST_CASE("definability is monotone in the source set") {
  const Relation target = r_lambda_lambda();
  const auto base = qfpp_definable(target, {r_lambda(3)});
  REQUIRE(base.definable);
  const auto wider = qfpp_definable(target, {rho_02(), r_lambda(3)});
  CHECK(wider.definable);
}

TEST_CASE("defects name uncovered coordinates and an extra tuple") {
  const Relation zero = Relation::of(1, {0});
  const auto v = qfpp_definable(rho_02(), {zero});
  REQUIRE(!v.definable);
  CHECK(v.defect.uncovered_coordinates == std::vector<int>{1, 2});

  // Sources that cover but admit too much: the full binary relation is a
  // valid constraint everywhere, so the conjunction keeps (1,1).
  const auto w = qfpp_definable(rho_02(), {Relation::of(2, {0, 1, 2, 3})});
  REQUIRE(!w.definable);
  CHECK(w.defect.uncovered_coordinates.empty());
  REQUIRE(w.defect.extra_tuple.has_value());
  CHECK(*w.defect.extra_tuple == 0b11);
}

TEST_CASE("redundant targets are rejected") {
  CHECK_THROWS_AS(qfpp_definable(Relation::full(2), {rho_02()}), Error);
}

TEST_CASE("the index budget guards the scan") {
  Budget tiny;
  tiny.max_index_tuples = 10;
  CHECK_THROWS_AS(qfpp_definable(rho_c(), {rho_c()}, tiny), BudgetError);
}

TEST_CASE("the witness budget guards the output") {
  Budget tiny;
  tiny.max_witness_tuples = 1;
  CHECK_THROWS_AS(qfpp_definable(rho_c(), {Relation::full(1)}, tiny),
                  BudgetError);
}

TEST_CASE("definability agrees with fingerprint containment on small relations") {
  const auto rels = irredundant_small_relations();
  std::vector<CloneFingerprint> fps;
  for (const auto& r : rels) fps.push_back(ppol_fingerprint({r}, 3));

  for (std::size_t a = 0; a < rels.size(); ++a) {
    for (std::size_t b = 0; b < rels.size(); ++b) {
      const bool definable = qfpp_definable(rels[a], {rels[b]}).definable;
      if (definable) {
        // pPol sigma within pPol rho, witnessed at every arity <= 3.
        CHECK(fps[b].is_subset_of(fps[a]));
      } else {
        const auto sep = find_separating_function({rels[b]}, {rels[a]}, 3);
        REQUIRE_MESSAGE(sep.has_value(),
                        "no separating function for pair " << a << "," << b);
        CHECK(preserves(*sep, rels[b]));
        CHECK(!preserves(*sep, rels[a]));
      }
    }
  }
}

TEST_CASE("reduce_relation drops duplicates and fictitious coordinates") {
  const ReducedRelation same = reduce_relation(rho_02());
  CHECK(!same.changed);
  CHECK(same.core == rho_02());
  CHECK(same.kept_coordinates == std::vector<int>{1, 2});

  // Coordinates one and two always agree; coordinate three is forced to 0.
  const ReducedRelation merged = reduce_relation(Relation::of(3, {0b000, 0b110}));
  CHECK(merged.changed);
  CHECK(merged.core == Relation::of(1, {0}));
  CHECK(merged.kept_coordinates == std::vector<int>{3});

  CHECK_THROWS_AS(reduce_relation(Relation::full(2)), Error);
}

TEST_CASE("witnesses reconstruct the target") {
  const auto v = qfpp_definable(r_lambda_lambda(), {r_lambda(3)});
  REQUIRE(v.definable);
  REQUIRE(v.witness.size() == 1);
  const Relation target = r_lambda_lambda();
  const Relation source = r_lambda(3);
  for (std::uint32_t y = 0; y < (1u << target.arity()); ++y) {
    bool in_all = true;
    for (const auto& it : v.witness[0]) {
      std::uint32_t g = 0;
      for (int e : it.entries) {
        g = (g << 1) | ((y >> (target.arity() - e)) & 1u);
      }
      in_all = in_all && source.contains(g);
    }
    CHECK(in_all == target.contains(y));
  }
}
