#pragma once

// Named relation and function families: the binary 0/2-relation and its
// cycle/clique powers, the lambda clause relations and their pinned
// conjunctions, the three 4-ary characteristic relations, the symmetric
// threshold-style partial functions, the appendix basis relations, and
// the catalog of total clones with defining relations.

#include <string>
#include <utility>
#include <vector>

#include "pclone/core.hpp"

namespace pclone {

// {(0,0), (0,1), (1,0)}: binary, forbids the all-ones pair.
Relation rho_02();

// Arity n; members are the 0/1 tuples with no cyclically adjacent pair of
// ones (independent sets of the n-cycle). 2 <= n <= 10.
Relation r02_c(int n);
// Arity n; members have at most one coordinate equal to 1. 2 <= n <= 10.
Relation r02_k(int n);
// The 2n-ary product: first n coordinates in r02_c(n), last n in r02_k(n).
Relation r02(int n);

// Arity k+1; the full relation minus the single tuple (0,1,...,1).
Relation lambda_k(int k);

// Arity n; the clause x_i OR (NOT x_j for some j in J). Full when i in J.
// Indices are 1-based.
Relation lambda_ij(int n, int i, const std::vector<int>& J);

// Conjunction of lambda_ij clauses over the given (i, J) conditions.
Relation lambda_gamma(int n,
                      const std::vector<std::pair<int, std::vector<int>>>& conditions);

// The condition set over arity m+1: (1, {2..m+1}) plus every
// (i, {1, j1, j2}) with i, j1, j2 distinct in [2, m+1]. Size
// 1 + m*C(m-1,2). Requires m >= 3.
std::vector<std::pair<int, std::vector<int>>> gamma_m(int m);

// The (m+1)-ary conjunction over gamma_m(m).
Relation r_lambda(int m);

// {(0,0,0), (0,0,1), (0,1,0), (1,1,1)}: the graph of AND.
Relation r_lambda_lambda();

// The three nested 4-ary relations with 4, 6 and 8 members.
Relation rho_c();
Relation rho_1();
Relation rho_l();

// The 8-member relation assembled from the three patterns
// (x,x,y,y), (x,y,x,y), (x,y,y,x) over all x, y; equals rho_l().
Relation rho_l_from_patterns();

// Symmetric partial function of arity (2k-1)p + 1: value 1 on the
// all-ones input, value 0 on inputs of weight <= p, undefined elsewhere.
// Arity capped at 64 in symmetric form.
SymmetricPartialFunction tau_kp(int k, int p);

// p_seq(1) = 1, p_seq(j) = (2j-1) * p_seq(j-1) + 1.
std::uint64_t p_seq(int j);

// xi(j) = tau_kp(j+1, p_seq(j)); arity p_seq(j+1).
SymmetricPartialFunction xi(int j);

// The eleven basis relations behind the interval enumeration, by name:
// P0, P1, P01, Pleq, P0leq, P1leq, P01leq, Plambda, P0lambda, P1lambda,
// P01lambda.
Relation appendix_relation(const std::string& name);
const std::vector<std::string>& appendix_relation_names();

struct CloneCatalogEntry {
  std::string name;
  std::vector<Relation> defining;
  std::string notes;
};

// Total clones used by the interval machinery, each with defining
// relations (empty for the top clone O). Names are ASCII keys:
// O, T0, T1, T0T1, T0_2..T0_4, T1_2..T1_4, M, S, L, Lambda, V,
// LambdaT1, VT0, C01, Omega1, MT0, MT1, MT0T1, ST0T1.
const std::vector<CloneCatalogEntry>& clone_catalog();
const CloneCatalogEntry& find_clone(const std::string& name);

}  // namespace pclone
