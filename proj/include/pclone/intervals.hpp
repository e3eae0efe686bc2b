#pragma once

// Interval enumeration over strong partial clones: every subset of a
// basis relation list yields the class of partial functions preserving
// its union; subsets are deduplicated exactly by two-sided definability,
// ordered by one-sided definability, filtered to those lying above a
// total clone, and classified by total part. Also the downward transfer
// construction Str(D) | (X & cPol(T)) and DOT rendering of the poset.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pclone/budget.hpp"
#include "pclone/core.hpp"
#include "pclone/definability.hpp"
#include "pclone/families.hpp"
#include "pclone/fingerprint.hpp"

namespace pclone {

struct IntervalElement {
  // Canonical basis subset (bit i = basis relation i), first in
  // (popcount, value) order among the merged subsets.
  std::uint32_t mask = 0;
  // Other subsets whose union defines the same class.
  std::vector<std::uint32_t> merged_masks;
  std::vector<Relation> basis;
  std::string label;  // "pPol{}" or "pPol{P0,Pleq}"
  CloneFingerprint fingerprint{3};
  std::string total_part;  // catalog name, filled by classification
};

// Evidence that element `from` is not below element `to`: the named
// member of to's basis is not definable from from's basis.
struct OrderDefect {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string target_label;
  Defect defect;
};

struct LatticeReport {
  std::vector<std::string> basis_names;
  std::vector<Relation> basis;
  std::vector<IntervalElement> elements;
  // (a, b): element a's function class is contained in element b's, a != b.
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::vector<OrderDefect> order_defects;
  std::map<std::string, std::size_t> total_part_counts;
  std::string assumption;

  // Element representing the full basis union.
  std::size_t bottom_index() const;
  bool leq(std::size_t a, std::size_t b) const;
  // Cover pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;
};

// One element per distinct preservation class over all 2^|basis| subset
// unions. Basis relations must be irredundant; |basis| <= 12. Arity-2
// fingerprints pre-bucket the dedup; equality within a bucket is decided
// by definability in both directions, and the order over representatives
// by definability one way.
LatticeReport intersection_closure(const std::vector<Relation>& basis_rels,
                                   const std::vector<std::string>& names = {},
                                   const Budget& budget = {});

// Keeps elements whose basis relations are all invariant under the given
// total clone, i.e. the elements containing that clone.
LatticeReport filter_above(const LatticeReport& report,
                           const CloneCatalogEntry& clone);

// The unique candidate whose total function set at arities <= 3 matches
// the element's. Candidates must be pairwise separated at arity <= 3
// (asserted); no match or several matches raise an error.
std::string classify_total_part(const IntervalElement& elem,
                                const std::vector<CloneCatalogEntry>& candidates,
                                int threads = 0);

// Fills total_part for every element and the per-name counts.
void classify_report(LatticeReport& report,
                     const std::vector<CloneCatalogEntry>& candidates,
                     int threads = 0);

// Catalog names of every total clone containing the named clone, for the
// base clones the interval commands support (O, T0, T1, T0T1, MT0T1,
// ST0T1). classify_total_part validates the list at run time: each
// element must match exactly one entry.
const std::vector<std::string>& clones_above(const std::string& catalog_name);
std::vector<CloneCatalogEntry> candidate_entries(const std::string& catalog_name);

// Restrictions of total functions preserving the defining relations,
// as a fingerprint at arities <= k.
CloneFingerprint str_fingerprint_of_clone(const std::vector<Relation>& defining,
                                          int k, int threads = 0);

// Str(D) united with (x intersect cPol(t_pair)), then validated closed
// under restriction and under the five composition operations within
// arity <= k. t_pair must have an empty consequent. A closure violation
// raises an error naming the offending function(s).
CloneFingerprint transfer(const CloneFingerprint& x, const CloneCatalogEntry& d,
                          const RelationPair& t_pair, int k, int threads = 0);

// Default transfer configuration: D defined by {rho_02, {0}} and
// T = ({0} -> empty), the class of functions undefined on the all-zeros
// point.
CloneCatalogEntry default_transfer_clone();
RelationPair default_transfer_pair();

// DOT digraph of the cover relation, nodes in element order, edges from
// smaller to larger class.
std::string export_dot(const LatticeReport& report);

struct IntervalComputation {
  LatticeReport report;        // filtered and classified
  std::string clone_name;
  std::string basis_used;      // "minimal", "leq", "lambda" or "all"
  std::size_t closure_size = 0;  // element count before filtering
  bool retried = false;
  std::string discrepancy;     // non-empty when a basis retry was triggered
};

// Reference counts for the shipped base clones: elements above the clone
// and elements with total part exactly the clone.
struct IntervalReference {
  std::size_t above = 0;
  std::size_t exact = 0;
};
std::optional<IntervalReference> interval_reference(const std::string& clone_name);

// Names of the basis relations each family denotes; family is one of
// "auto", "minimal", "leq", "lambda", "all".
std::vector<std::string> basis_family_names(const std::string& clone_name,
                                            const std::string& family);

// Full pipeline for one base clone: closure, filter, classification, and
// an automatic retry on the 11-relation basis when a reference count
// mismatches (the mismatch stays in the report).
IntervalComputation compute_interval(const std::string& clone_name,
                                     const std::string& basis_family = "auto",
                                     const Budget& budget = {});

}  // namespace pclone
