#pragma once

// Preservation machinery: does a partial function preserve a relation or
// a relation pair, bounded-arity fingerprints of pPol / Pol / cPol,
// invariance of a relation under a total clone, and the symmetric fast
// path for weight-indexed functions.
//
// Matrix semantics: f (n-ary) preserves (rho, rho') when every h x n
// matrix whose h rows lie in dom f and whose n columns lie in rho has its
// value column f(row_1),...,f(row_h) in rho'. Rows may repeat. A single
// relation rho means the pair (rho, rho).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclone/budget.hpp"
#include "pclone/core.hpp"
#include "pclone/fingerprint.hpp"

namespace pclone {

// A violating matrix: rows are points of dom f (n bits each), columns are
// antecedent members (h bits each), output is the value column (h bits).
struct Counterexample {
  int n = 0;  // function arity = number of columns
  int h = 0;  // relation arity = number of rows
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> columns;
  std::uint32_t output = 0;

  std::string to_string() const;
};

enum class MatrixPath {
  kAuto,     // cheaper of rows/columns by predicted enumeration size
  kRows,     // enumerate row tuples from dom f, prune on column prefixes
  kColumns,  // enumerate column tuples from the relation, prune on rows
  kNaive,    // literal row-tuple odometer, no pruning
};

std::optional<Counterexample> find_pair_violation(
    const PartialFunction& f, const RelationPair& q,
    MatrixPath path = MatrixPath::kAuto);

std::optional<Counterexample> find_violation(
    const PartialFunction& f, const Relation& rho,
    MatrixPath path = MatrixPath::kAuto);

bool preserves(const PartialFunction& f, const Relation& rho,
               MatrixPath path = MatrixPath::kAuto);

bool preserves_pair(const PartialFunction& f, const RelationPair& q,
                    MatrixPath path = MatrixPath::kAuto);

// Symmetric fast path: enumerates multisets of columns from rho
// (C(n+|rho|-1, |rho|-1) of them); a multiset fixes every row's weight,
// hence domain membership and the output column. Agrees with
// preserves(expand_symmetric(sf), rho).
bool preserves_symmetric(const SymmetricPartialFunction& sf,
                         const Relation& rho,
                         std::uint64_t max_multisets = 1'000'000);

// Number of column multisets the symmetric path enumerates.
std::uint64_t symmetric_multiset_count(int function_arity,
                                       std::size_t relation_size);

// Fingerprints at arities 1..k (k <= 3 exhaustive). pol_* keeps total
// functions only; cpol_* takes relation pairs.
CloneFingerprint ppol_fingerprint(const std::vector<Relation>& sigma, int k,
                                  int threads = 0);
CloneFingerprint pol_fingerprint(const std::vector<Relation>& sigma, int k,
                                 int threads = 0);
CloneFingerprint cpol_fingerprint(const std::vector<RelationPair>& pairs,
                                  int k, int threads = 0);

// True iff every total function preserving clone_rels preserves sigma.
// Checking arities up to |sigma.members| is exact: an n-ary violation
// with n larger uses at most |sigma| distinct columns, so identifying
// duplicated arguments yields a violating minor, and Pol(clone_rels) is
// closed under identification minors.
bool invariant_under_clone(const Relation& sigma,
                           const std::vector<Relation>& clone_rels,
                           int max_members = 4);

// All relation pairs of the given arity preserved by f.
std::vector<RelationPair> preserved_pairs(const PartialFunction& f, int h);

// First function (in arity, then code order) of arity <= max_arity that
// preserves everything in inside and fails some member of outside.
// max_arity = 4 streams over the 43 million arity-4 codes.
std::optional<PartialFunction> find_separating_function(
    const std::vector<Relation>& inside, const std::vector<Relation>& outside,
    int max_arity);

}  // namespace pclone
