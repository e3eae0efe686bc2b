#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "pclone/core.hpp"
#include "pclone/families.hpp"
#include "pclone/fingerprint.hpp"
#include "pclone/ops.hpp"
#include "pclone/preserve.hpp"

using namespace pclone;

namespace {

const PartialFunction kAnd = encode_function(
    2, {{0b00, false}, {0b01, false}, {0b10, false}, {0b11, true}});
const PartialFunction kOr = encode_function(
    2, {{0b00, false}, {0b01, true}, {0b10, true}, {0b11, true}});

std::vector<Relation> small_relations() {
  std::vector<Relation> rels;
  for (int h = 1; h <= 2; ++h) {
    const std::uint32_t members = 1u << (1u << h);
    for (std::uint32_t m = 1; m < members; ++m) {
      Relation r(h);
      for (std::uint32_t t = 0; t < (1u << h); ++t) {
        if (m >> t & 1u) r.add(t);
      }
      rels.push_back(r);
    }
  }
  return rels;
}

}  // namespace

TEST_CASE("conjunction preserves the no-double-one relation, disjunction not") {
  CHECK(preserves(kAnd, rho_02()));
  CHECK(!preserves(kOr, rho_02()));
  const auto bad = find_violation(kOr, rho_02());
  REQUIRE(bad.has_value());
  CHECK(bad->h == 2);
  CHECK(bad->n == 2);
  CHECK(bad->output == 0b11);
  for (std::uint32_t col : bad->columns) CHECK(rho_02().contains(col));
  for (std::uint32_t row : bad->rows) CHECK(kOr.defined_at(row));
}

TEST_CASE("the empty function preserves everything") {
  const PartialFunction empty(2);
  CHECK(preserves(empty, rho_02()));
  CHECK(preserves(empty, rho_c()));
  CHECK(preserves(empty, Relation::of(1, {0})));
}

TEST_CASE("every function preserves the full relation") {
  for (std::uint64_t c = 0; c < 81; ++c) {
    CHECK(preserves(PartialFunction::from_code(2, c), Relation::full(2)));
  }
}

TEST_CASE("all four search paths agree") {
  const auto rels = small_relations();
  for (std::uint64_t c = 0; c < 81; ++c) {
    const PartialFunction f = PartialFunction::from_code(2, c);
    for (const auto& rho : rels) {
      const bool rows = preserves(f, rho, MatrixPath::kRows);
      const bool cols = preserves(f, rho, MatrixPath::kColumns);
      const bool naive = preserves(f, rho, MatrixPath::kNaive);
      const bool autop = preserves(f, rho);
      CHECK(rows == cols);
      CHECK(rows == naive);
      CHECK(rows == autop);
    }
  }
}

TEST_CASE("pair preservation coincides with plain preservation on (rho,rho)") {
  const auto rels = small_relations();
  for (std::uint64_t c = 0; c < 81; c += 3) {
    const PartialFunction f = PartialFunction::from_code(2, c);
    for (const auto& rho : rels) {
      CHECK(preserves_pair(f, RelationPair(rho, rho)) == preserves(f, rho));
    }
  }
}

TEST_CASE("pair preservation constrains the value column to the consequent") {
  const RelationPair q(Relation::of(1, {0, 1}), Relation::of(1, {0}));
  CHECK(preserves_pair(PartialFunction::constant(2, false), q));
  CHECK(!preserves_pair(PartialFunction::constant(2, true), q));
  CHECK(!preserves_pair(PartialFunction::projection(2, 1), q));
  const PartialFunction zero_on_zeros = encode_function(2, {{0b00, false}});
  CHECK(preserves_pair(zero_on_zeros, q));
}

TEST_CASE("empty consequent admits only functions undefined on the diagonal") {
  const RelationPair q(Relation::of(1, {0}), Relation(1));
  const PartialFunction avoids = encode_function(2, {{0b01, true}, {0b11, false}});
  CHECK(preserves_pair(avoids, q));
  CHECK(!preserves_pair(PartialFunction::constant(2, false), q));
}

TEST_CASE("fingerprints are restriction closed and contain the projections") {
  const CloneFingerprint fp = ppol_fingerprint({rho_02()}, 3);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 1; i <= n; ++i) {
      CHECK(fp.contains(PartialFunction::projection(n, i)));
    }
    for (std::uint64_t c = 0; c < pow3(1 << n); c += (n == 3 ? 7 : 1)) {
      if (!fp.test_code(n, c)) continue;
      const PartialFunction f = PartialFunction::from_code(n, c);
      for (std::uint32_t x : f.domain_points()) {
        PartialFunction g = f;
        g.undefine(x);
        CHECK(fp.contains(g));
      }
    }
  }
}

TEST_CASE("the no-double-one fingerprint keeps conjunction, drops disjunction") {
  const CloneFingerprint fp = ppol_fingerprint({rho_02()}, 2);
  CHECK(fp.contains(kAnd));
  CHECK(!fp.contains(kOr));
}

TEST_CASE("fingerprints are antitone in the relation set") {
  std::mt19937 rng(5);
  const auto rels = small_relations();
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Relation> sigma1;
    sigma1.push_back(rels[rng() % rels.size()]);
    std::vector<Relation> sigma2 = sigma1;
    sigma2.push_back(rels[rng() % rels.size()]);
    sigma2.push_back(rels[rng() % rels.size()]);
    CHECK(ppol_fingerprint(sigma2, 2).is_subset_of(ppol_fingerprint(sigma1, 2)));
  }
}

TEST_CASE("pol fingerprints keep total functions only") {
  const CloneFingerprint pol = pol_fingerprint({rho_02()}, 2);
  CHECK(pol.count(1) == 2);
  CHECK(pol.count(2) == 6);
  CHECK(pol == pol.total_part());
  CHECK(pol.is_subset_of(ppol_fingerprint({rho_02()}, 2)));
}

TEST_CASE("a product relation is weaker than the pair of its factors") {
  const Relation product = rho_02().product(Relation::of(1, {0}));
  const CloneFingerprint split =
      ppol_fingerprint({rho_02(), Relation::of(1, {0})}, 2);
  const CloneFingerprint joint = ppol_fingerprint({product}, 2);
  CHECK(split.is_subset_of(joint));
  CHECK(split.total_part() == joint.total_part());
  // Strictness on the partial side: every product matrix needs the
  // all-zeros row, so a function undefined there preserves the product
  // vacuously even while violating the first factor.
  const PartialFunction or_restriction =
      encode_function(2, {{0b01, true}, {0b10, true}});
  CHECK(joint.contains(or_restriction));
  CHECK(!split.contains(or_restriction));
}

TEST_CASE("preserved pairs are upward closed in the consequent") {
  const PartialFunction f = encode_function(2, {{0b00, false}, {0b11, true}});
  const auto pairs = preserved_pairs(f, 1);
  CHECK(!pairs.empty());
  for (const auto& q : pairs) {
    for (std::uint32_t extra = 0; extra < 2; ++extra) {
      if (!q.antecedent().contains(extra) || q.consequent().contains(extra)) {
        continue;
      }
      Relation bigger = q.consequent();
      bigger.add(extra);
      bool found = false;
      for (const auto& other : pairs) {
        found = found || (other.antecedent() == q.antecedent() &&
                          other.consequent() == bigger);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("symmetric path agrees with the naive path at arity 3") {
  const auto rels = small_relations();
  for (int z = 0; z < 3 * 3 * 3 * 3; ++z) {
    SymmetricPartialFunction sf(3);
    int digits = z;
    for (int w = 0; w <= 3; ++w) {
      sf.set_weight(w, Ternary(digits % 3));
      digits /= 3;
    }
    const PartialFunction f = expand_symmetric(sf);
    for (const auto& rho : rels) {
      CHECK(preserves_symmetric(sf, rho) == preserves(f, rho, MatrixPath::kNaive));
    }
  }
}

TEST_CASE("multiset counts follow the stars and bars formula") {
  CHECK(symmetric_multiset_count(2, 3) == 6);
  CHECK(symmetric_multiset_count(21, 6) == 65780);
  CHECK(symmetric_multiset_count(4, 1) == 1);
}

TEST_CASE("symmetric path respects the multiset budget") {
  SymmetricPartialFunction sf(21);
  sf.set_weight(0, Ternary::kZero);
  CHECK_THROWS_AS(preserves_symmetric(sf, rho_1(), 1000), BudgetError);
}

TEST_CASE("relation invariance under a catalog clone") {
  CHECK(invariant_under_clone(appendix_relation("P0"),
                              find_clone("MT0T1").defining));
  CHECK(invariant_under_clone(rho_02(), {rho_02()}));
  CHECK(!invariant_under_clone(rho_02(), {}));
  CHECK(!invariant_under_clone(appendix_relation("P1"),
                               find_clone("T0").defining));
}

TEST_CASE("separating function search returns a verified separator") {
  const auto sep = find_separating_function({appendix_relation("P0")},
                                            {appendix_relation("P1")}, 2);
  REQUIRE(sep.has_value());
  CHECK(preserves(*sep, appendix_relation("P0")));
  CHECK(!preserves(*sep, appendix_relation("P1")));

  const auto none = find_separating_function({rho_02()}, {rho_02()}, 2);
  CHECK(!none.has_value());
}

TEST_CASE("cpol on (rho,rho) pairs matches ppol at arity 2") {
  for (const Relation& rho : {rho_02(), appendix_relation("Pleq")}) {
    CHECK(cpol_fingerprint({RelationPair(rho, rho)}, 2) ==
          ppol_fingerprint({rho}, 2));
  }
}
