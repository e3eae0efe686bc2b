#include "pclone/families.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace pclone {
namespace {

bool tuple_bit_set(std::uint32_t bits, int length, int pos) {
  return tuple_bit(bits, length, pos) != 0;
}

}  // namespace

Relation rho_02() { return Relation::of(2, {0b00, 0b01, 0b10}); }

Relation r02_c(int n) {
  require(n >= 2 && n <= 10, "r02_c arity must be between 2 and 10");
  Relation rel(n);
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t x = 0; x < limit; ++x) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (tuple_bit_set(x, n, i) && tuple_bit_set(x, n, (i + 1) % n)) ok = false;
    }
    if (ok) rel.add(x);
  }
  return rel;
}

Relation r02_k(int n) {
  require(n >= 2 && n <= 10, "r02_k arity must be between 2 and 10");
  Relation rel(n);
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t x = 0; x < limit; ++x) {
    if (std::popcount(x) <= 1) rel.add(x);
  }
  return rel;
}

Relation r02(int n) { return r02_c(n).product(r02_k(n)); }

Relation lambda_k(int k) {
  require(k >= 1 && k <= 20, "lambda_k parameter must be between 1 and 20");
  const int arity = k + 1;
  Relation rel = Relation::full(arity);
  rel.remove((1u << k) - 1);
  return rel;
}

Relation lambda_ij(int n, int i, const std::vector<int>& J) {
  require(n >= 1 && n <= 20, "lambda_ij arity must be between 1 and 20");
  require(i >= 1 && i <= n, "lambda_ij index i out of range");
  for (int j : J) require(j >= 1 && j <= n, "lambda_ij index set out of range");
  Relation rel(n);
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t x = 0; x < limit; ++x) {
    bool ok = tuple_bit_set(x, n, i - 1);
    for (std::size_t t = 0; t < J.size() && !ok; ++t) {
      if (!tuple_bit_set(x, n, J[t] - 1)) ok = true;
    }
    if (ok) rel.add(x);
  }
  return rel;
}

Relation lambda_gamma(int n,
                      const std::vector<std::pair<int, std::vector<int>>>& conditions) {
  Relation rel = Relation::full(n);
  for (const auto& [i, J] : conditions) {
    Relation clause = lambda_ij(n, i, J);
    Relation next(n);
    for (std::uint32_t x : rel.tuples()) {
      if (clause.contains(x)) next.add(x);
    }
    rel = next;
  }
  return rel;
}

std::vector<std::pair<int, std::vector<int>>> gamma_m(int m) {
  require(m >= 3 && m <= 19, "gamma_m parameter must be between 3 and 19");
  std::vector<std::pair<int, std::vector<int>>> out;
  std::vector<int> rest;
  for (int j = 2; j <= m + 1; ++j) rest.push_back(j);
  out.emplace_back(1, rest);
  for (int i = 2; i <= m + 1; ++i) {
    for (int j1 = 2; j1 <= m + 1; ++j1) {
      if (j1 == i) continue;
      for (int j2 = j1 + 1; j2 <= m + 1; ++j2) {
        if (j2 == i) continue;
        out.emplace_back(i, std::vector<int>{1, j1, j2});
      }
    }
  }
  return out;
}

Relation r_lambda(int m) { return lambda_gamma(m + 1, gamma_m(m)); }

Relation r_lambda_lambda() { return Relation::of(3, {0b000, 0b001, 0b010, 0b111}); }

Relation rho_c() { return Relation::of(4, {0b0000, 0b0011, 0b0101, 0b1111}); }

Relation rho_1() {
  return Relation::of(4, {0b0000, 0b0011, 0b0101, 0b1010, 0b1100, 0b1111});
}

Relation rho_l() {
  return Relation::of(4, {0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100,
                          0b1111});
}

Relation rho_l_from_patterns() {
  Relation rel(4);
  for (std::uint32_t x = 0; x <= 1; ++x) {
    for (std::uint32_t y = 0; y <= 1; ++y) {
      rel.add((x << 3) | (x << 2) | (y << 1) | y);
      rel.add((x << 3) | (y << 2) | (x << 1) | y);
      rel.add((x << 3) | (y << 2) | (y << 1) | x);
    }
  }
  return rel;
}

SymmetricPartialFunction tau_kp(int k, int p) {
  require(k >= 1, "tau_kp requires k >= 1");
  require(p >= 1, "tau_kp requires p >= 1");
  const long long arity = static_cast<long long>(2 * k - 1) * p + 1;
  require(arity <= 64, "tau_kp arity exceeds 64");
  SymmetricPartialFunction sf(static_cast<int>(arity));
  for (int w = 0; w <= p; ++w) sf.set_weight(w, Ternary::kZero);
  sf.set_weight(static_cast<int>(arity), Ternary::kOne);
  return sf;
}

std::uint64_t p_seq(int j) {
  require(j >= 1 && j <= 15, "p_seq index must be between 1 and 15");
  std::uint64_t p = 1;
  for (int i = 2; i <= j; ++i) p = static_cast<std::uint64_t>(2 * i - 1) * p + 1;
  return p;
}

SymmetricPartialFunction xi(int j) {
  require(j >= 1, "xi index must be >= 1");
  const std::uint64_t p = p_seq(j);
  require(p <= 64, "xi arity exceeds 64");
  return tau_kp(j + 1, static_cast<int>(p));
}

namespace {

std::map<std::string, Relation> make_appendix_relations() {
  std::map<std::string, Relation> rels;
  rels.emplace("P0", Relation::of(1, {0b0}));
  rels.emplace("P1", Relation::of(1, {0b1}));
  rels.emplace("P01", Relation::of(2, {0b01}));
  rels.emplace("Pleq", Relation::of(2, {0b00, 0b01, 0b11}));
  rels.emplace("P0leq", Relation::of(3, {0b000, 0b001, 0b011}));
  rels.emplace("P1leq", Relation::of(3, {0b100, 0b101, 0b111}));
  rels.emplace("P01leq", Relation::of(4, {0b0100, 0b0101, 0b0111}));
  rels.emplace("Plambda", Relation::of(2, {0b01, 0b10}));
  rels.emplace("P0lambda", Relation::of(3, {0b001, 0b010}));
  rels.emplace("P1lambda", Relation::of(3, {0b101, 0b110}));
  rels.emplace("P01lambda", Relation::of(4, {0b0101, 0b0110}));
  return rels;
}

const std::map<std::string, Relation>& appendix_relations() {
  static const std::map<std::string, Relation> rels = make_appendix_relations();
  return rels;
}

std::vector<CloneCatalogEntry> make_clone_catalog() {
  const Relation p0 = appendix_relation("P0");
  const Relation p1 = appendix_relation("P1");
  const Relation leq = appendix_relation("Pleq");
  const Relation neq = appendix_relation("Plambda");
  const Relation and_graph = r_lambda_lambda();
  const Relation or_graph = and_graph.dualized();

  std::vector<CloneCatalogEntry> entries;
  entries.push_back({"O", {}, "all total functions"});
  entries.push_back({"T0", {p0}, "zero-preserving"});
  entries.push_back({"T1", {p1}, "one-preserving"});
  entries.push_back({"T0T1", {p0, p1}, "zero- and one-preserving"});
  for (int mu = 2; mu <= 4; ++mu) {
    Relation rel = Relation::full(mu);
    rel.remove((1u << mu) - 1);
    entries.push_back({"T0_" + std::to_string(mu), {rel},
                       "no all-ones image on " + std::to_string(mu) + " columns"});
  }
  for (int mu = 2; mu <= 4; ++mu) {
    Relation rel = Relation::full(mu);
    rel.remove(0);
    entries.push_back({"T1_" + std::to_string(mu), {rel},
                       "no all-zeros image on " + std::to_string(mu) + " columns"});
  }
  entries.push_back({"M", {leq}, "monotone"});
  entries.push_back({"S", {neq}, "self-dual"});
  entries.push_back({"L", {rho_l()}, "linear"});
  entries.push_back({"Lambda", {and_graph}, "conjunctions with constants"});
  entries.push_back({"V", {or_graph}, "disjunctions with constants"});
  entries.push_back({"LambdaT1", {and_graph, p1}, "one-preserving conjunctions"});
  entries.push_back({"VT0", {or_graph, p0}, "zero-preserving disjunctions"});
  entries.push_back({"C01", {rho_c()}, "projections and constants"});
  entries.push_back({"Omega1", {rho_1()}, "essentially unary"});
  entries.push_back({"MT0", {leq, p0}, "monotone zero-preserving"});
  entries.push_back({"MT1", {leq, p1}, "monotone one-preserving"});
  entries.push_back({"MT0T1", {leq, p0, p1}, "monotone zero- and one-preserving"});
  entries.push_back({"ST0T1", {neq, p0, p1}, "self-dual zero- and one-preserving"});
  return entries;
}

}  // namespace

Relation appendix_relation(const std::string& name) {
  const auto& rels = appendix_relations();
  auto it = rels.find(name);
  require(it != rels.end(), "unknown appendix relation: " + name);
  return it->second;
}

const std::vector<std::string>& appendix_relation_names() {
  static const std::vector<std::string> names = {
      "P0",    "P1",      "P01",      "Pleq",      "P0leq",    "P1leq",
      "P01leq", "Plambda", "P0lambda", "P1lambda", "P01lambda"};
  return names;
}

const std::vector<CloneCatalogEntry>& clone_catalog() {
  static const std::vector<CloneCatalogEntry> entries = make_clone_catalog();
  return entries;
}

const CloneCatalogEntry& find_clone(const std::string& name) {
  for (const auto& entry : clone_catalog()) {
    if (entry.name == name) return entry;
  }
  require(false, "unknown clone name: " + name);
  throw Error("unreachable");
}

}  // namespace pclone
