#pragma once

// Quantifier-free primitive-positive definability: can a target relation
// be written as a conjunction of atomic constraints sigma(x_{i_1},...,
// x_{i_s}) over the source relations, such that every target coordinate
// appears in some constraint? For irredundant targets this decides
// containment between the corresponding strong partial clones.
//
// The procedure takes, per source sigma, the maximal constraint set
// gamma = { i in [t]^s | forall x in target: x_i in sigma }. Any valid
// constraint set is contained in this one, adding constraints only
// shrinks the conjunction (which always contains the target) and only
// grows coverage, so the maximal set achieves equality-with-coverage iff
// some set does. Equality of the conjunction with an irredundant target
// forces coverage: an uncovered coordinate would be unconstrained, hence
// fictitious.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclone/budget.hpp"
#include "pclone/core.hpp"

namespace pclone {

// Positions into the target's coordinates, 1-based, length = source arity.
struct IndexTuple {
  std::vector<int> entries;

  bool operator==(const IndexTuple& o) const { return entries == o.entries; }
  bool operator<(const IndexTuple& o) const { return entries < o.entries; }
  std::string to_string() const;  // "(1,2,3,3)"
};

// Why a target is not definable: coordinates no surviving constraint
// touches, and/or a tuple outside the target that every surviving
// constraint admits.
struct Defect {
  std::vector<int> uncovered_coordinates;  // 1-based, ascending
  std::optional<std::uint32_t> extra_tuple;
};

struct DefinabilityVerdict {
  bool definable = false;
  // Per source relation, the maximal constraint set; filled for Definable
  // verdicts (and validated on every call: re-evaluating the witness
  // reconstructs the target bit-exactly and covers every coordinate).
  std::vector<std::vector<IndexTuple>> witness;
  Defect defect;  // meaningful iff !definable
  // Surviving index tuples seen per source (witness size before any cap).
  std::vector<std::uint64_t> survivors_per_source;
};

// No two coordinates equal across all tuples, and no coordinate whose
// flip fixes the relation setwise. Errors on the empty relation.
bool is_irredundant(const Relation& rho);

// Exactly the index tuples i with forall x in rho: x_i in sigma.
// Guarded by budget.max_index_tuples (t^s) and budget.max_witness_tuples
// (output size).
std::vector<IndexTuple> maximal_gamma(const Relation& rho,
                                      const Relation& sigma,
                                      const Budget& budget = {});

// Decides definability of rho from the sources. rho must be irredundant.
DefinabilityVerdict qfpp_definable(const Relation& rho,
                                   const std::vector<Relation>& sigma,
                                   const Budget& budget = {});

// True iff pPol(sigma1) is contained in pPol(sigma2), i.e. every member
// of sigma2 is definable from sigma1. All relations must be irredundant.
bool ppol_leq(const std::vector<Relation>& sigma1,
              const std::vector<Relation>& sigma2, const Budget& budget = {});

// Preprocessing for redundant relations: repeatedly drops fictitious
// coordinates and merges duplicate coordinates until the result is
// irredundant. No claim is made that definability of the reduced
// relation coincides with definability of the original; callers must
// surface the reduction. kept_coordinates maps result coordinates to
// 1-based coordinates of the input.
struct ReducedRelation {
  Relation core;
  std::vector<int> kept_coordinates;
  bool changed = false;
};
ReducedRelation reduce_relation(const Relation& rho);

}  // namespace pclone
