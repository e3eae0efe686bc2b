#include "pclone/intervals.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "pclone/ops.hpp"
#include "pclone/preserve.hpp"

namespace pclone {
namespace {

constexpr const char* kAssumption =
    "counts cover exactly the intersections of the basis classes; elements "
    "outside every such intersection would not be enumerated";

std::string join_names(const std::vector<std::string>& names,
                       std::uint32_t mask) {
  std::string out = "pPol{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!(mask >> i & 1u)) continue;
    if (!first) out += ",";
    out += names[i];
    first = false;
  }
  out += "}";
  return out;
}

std::vector<Relation> mask_relations(const std::vector<Relation>& basis,
                                     std::uint32_t mask) {
  std::vector<Relation> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (mask >> i & 1u) out.push_back(basis[i]);
  }
  return out;
}

// Memoized one-sided containment between subset unions: the class of the
// source mask is contained in the class of the target mask when every
// target relation is definable from the source relations.
class ContainmentOracle {
 public:
  ContainmentOracle(const std::vector<Relation>& basis, const Budget& budget)
      : basis_(basis), budget_(budget) {}

  const DefinabilityVerdict& verdict(std::size_t target, std::uint32_t source_mask) {
    auto key = std::make_pair(target, source_mask);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    DefinabilityVerdict v =
        qfpp_definable(basis_[target], mask_relations(basis_, source_mask), budget_);
    return memo_.emplace(key, std::move(v)).first->second;
  }

  bool leq(std::uint32_t source_mask, std::uint32_t target_mask) {
    return failing_target(source_mask, target_mask) == basis_.size();
  }

  // Index of the first target relation not definable from the source, or
  // basis size when containment holds. Relations present in the source
  // are definable from themselves.
  std::size_t failing_target(std::uint32_t source_mask, std::uint32_t target_mask) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!(target_mask >> i & 1u)) continue;
      if (source_mask >> i & 1u) continue;
      if (!verdict(i, source_mask).definable) return i;
    }
    return basis_.size();
  }

 private:
  const std::vector<Relation>& basis_;
  Budget budget_;
  std::map<std::pair<std::size_t, std::uint32_t>, DefinabilityVerdict> memo_;
};

}  // namespace

std::size_t LatticeReport::bottom_index() const {
  const std::uint32_t full_mask =
      basis.empty() ? 0u : (std::uint32_t(1) << basis.size()) - 1u;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].mask == full_mask) return i;
    for (std::uint32_t m : elements[i].merged_masks) {
      if (m == full_mask) return i;
    }
  }
  require(false, "lattice report lacks the full-union element");
  return 0;
}

bool LatticeReport::leq(std::size_t a, std::size_t b) const {
  if (a == b) return true;
  for (const auto& [x, y] : order) {
    if (x == a && y == b) return true;
  }
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> LatticeReport::cover_pairs()
    const {
  const std::size_t n = elements.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : order) below[a][b] = true;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c) {
        if (below[a][c] && below[c][b]) direct = false;
      }
      if (direct) covers.emplace_back(a, b);
    }
  }
  return covers;
}

LatticeReport intersection_closure(const std::vector<Relation>& basis_rels,
                                   const std::vector<std::string>& names,
                                   const Budget& budget) {
  require(basis_rels.size() <= 12, "intersection closure basis limited to 12");
  for (const Relation& rel : basis_rels) {
    require(is_irredundant(rel), "basis relation not irredundant: " + rel.to_string());
  }

  LatticeReport report;
  report.basis = basis_rels;
  report.assumption = kAssumption;
  if (names.empty()) {
    for (std::size_t i = 0; i < basis_rels.size(); ++i)
      report.basis_names.push_back("R" + std::to_string(i + 1));
  } else {
    require(names.size() == basis_rels.size(), "basis name count mismatch");
    report.basis_names = names;
  }

  const std::size_t nb = basis_rels.size();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << nb); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return a < b;
  });

  std::vector<CloneFingerprint> rel_fp2;
  for (const Relation& rel : basis_rels)
    rel_fp2.push_back(ppol_fingerprint({rel}, 2, budget.threads));

  ContainmentOracle oracle(basis_rels, budget);

  struct Rep {
    std::uint32_t mask;
    std::vector<std::uint32_t> merged;
    CloneFingerprint fp2;
  };
  std::vector<Rep> reps;
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;

  for (std::uint32_t mask : masks) {
    CloneFingerprint fp2 = CloneFingerprint::all(2);
    for (std::size_t i = 0; i < nb; ++i) {
      if (mask >> i & 1u) fp2 = fp2.intersect(rel_fp2[i]);
    }
    const std::uint64_t digest = fp2.digest();
    std::size_t found = reps.size();
    for (std::size_t idx : buckets[digest]) {
      if (reps[idx].fp2 != fp2) continue;
      if (oracle.leq(mask, reps[idx].mask) && oracle.leq(reps[idx].mask, mask)) {
        found = idx;
        break;
      }
    }
    if (found < reps.size()) {
      reps[found].merged.push_back(mask);
    } else {
      buckets[digest].push_back(reps.size());
      reps.push_back({mask, {}, std::move(fp2)});
    }
  }

  for (const Rep& rep : reps) {
    IntervalElement elem;
    elem.mask = rep.mask;
    elem.merged_masks = rep.merged;
    elem.basis = mask_relations(basis_rels, rep.mask);
    elem.label = join_names(report.basis_names, rep.mask);
    elem.fingerprint = ppol_fingerprint(elem.basis, 3, budget.threads);
    report.elements.push_back(std::move(elem));
  }

  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = 0; b < reps.size(); ++b) {
      if (a == b) continue;
      const std::size_t failing = oracle.failing_target(reps[a].mask, reps[b].mask);
      if (failing == nb) {
        require(!oracle.leq(reps[b].mask, reps[a].mask),
                "distinct elements mutually contained; dedup failed");
        report.order.emplace_back(a, b);
      } else {
        OrderDefect defect;
        defect.from = a;
        defect.to = b;
        defect.target_label = report.basis_names[failing];
        defect.defect = oracle.verdict(failing, reps[a].mask).defect;
        report.order_defects.push_back(std::move(defect));
      }
    }
  }

  return report;
}

LatticeReport filter_above(const LatticeReport& report,
                           const CloneCatalogEntry& clone) {
  LatticeReport out;
  out.basis_names = report.basis_names;
  out.basis = report.basis;
  out.assumption = report.assumption;

  std::vector<std::size_t> kept_index(report.elements.size(), SIZE_MAX);
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    bool keep = true;
    for (const Relation& sigma : report.elements[i].basis) {
      if (!invariant_under_clone(sigma, clone.defining)) {
        keep = false;
        break;
      }
    }
    if (keep) {
      kept_index[i] = out.elements.size();
      out.elements.push_back(report.elements[i]);
    }
  }
  for (const auto& [a, b] : report.order) {
    if (kept_index[a] != SIZE_MAX && kept_index[b] != SIZE_MAX)
      out.order.emplace_back(kept_index[a], kept_index[b]);
  }
  for (const OrderDefect& d : report.order_defects) {
    if (kept_index[d.from] == SIZE_MAX || kept_index[d.to] == SIZE_MAX) continue;
    OrderDefect nd = d;
    nd.from = kept_index[d.from];
    nd.to = kept_index[d.to];
    out.order_defects.push_back(std::move(nd));
  }
  for (const IntervalElement& elem : out.elements) {
    if (!elem.total_part.empty()) ++out.total_part_counts[elem.total_part];
  }
  return out;
}

namespace {

std::vector<CloneFingerprint> candidate_total_fingerprints(
    const std::vector<CloneCatalogEntry>& candidates, int threads) {
  require(!candidates.empty(), "classification needs at least one candidate");
  std::vector<CloneFingerprint> fps;
  for (const auto& c : candidates)
    fps.push_back(pol_fingerprint(c.defining, 3, threads));
  for (std::size_t i = 0; i < fps.size(); ++i) {
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      require(fps[i] != fps[j],
              "classification candidates " + candidates[i].name + " and " +
                  candidates[j].name + " agree at arity 3");
    }
  }
  return fps;
}

std::string classify_with(const IntervalElement& elem,
                          const std::vector<CloneCatalogEntry>& candidates,
                          const std::vector<CloneFingerprint>& fps,
                          int threads) {
  const CloneFingerprint total = pol_fingerprint(elem.basis, 3, threads);
  std::string match;
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (fps[i] == total) {
      require(match.empty(), "element " + elem.label +
                                 " matches several candidates at arity 3");
      match = candidates[i].name;
    }
  }
  require(!match.empty(),
          "element " + elem.label + " matches no classification candidate");
  return match;
}

}  // namespace

std::string classify_total_part(const IntervalElement& elem,
                                const std::vector<CloneCatalogEntry>& candidates,
                                int threads) {
  return classify_with(elem, candidates,
                       candidate_total_fingerprints(candidates, threads), threads);
}

void classify_report(LatticeReport& report,
                     const std::vector<CloneCatalogEntry>& candidates,
                     int threads) {
  const auto fps = candidate_total_fingerprints(candidates, threads);
  report.total_part_counts.clear();
  for (IntervalElement& elem : report.elements) {
    elem.total_part = classify_with(elem, candidates, fps, threads);
    ++report.total_part_counts[elem.total_part];
  }
}

const std::vector<std::string>& clones_above(const std::string& catalog_name) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"O", {"O"}},
      {"T0", {"T0", "O"}},
      {"T1", {"T1", "O"}},
      {"T0T1", {"T0T1", "T0", "T1", "O"}},
      {"MT0T1", {"MT0T1", "MT0", "MT1", "M", "T0T1", "T0", "T1", "O"}},
      {"ST0T1", {"ST0T1", "S", "T0T1", "T0", "T1", "O"}},
  };
  auto it = table.find(catalog_name);
  require(it != table.end(), "no interval support for clone: " + catalog_name);
  return it->second;
}

std::vector<CloneCatalogEntry> candidate_entries(const std::string& catalog_name) {
  std::vector<CloneCatalogEntry> out;
  for (const std::string& name : clones_above(catalog_name))
    out.push_back(find_clone(name));
  return out;
}

CloneFingerprint str_fingerprint_of_clone(const std::vector<Relation>& defining,
                                          int k, int threads) {
  require(k >= 1 && k <= 3, "clone restriction fingerprint limited to arity 3");
  (void)threads;
  CloneFingerprint fp(k);
  for (int n = 1; n <= k; ++n) {
    const std::uint32_t points = 1u << n;
    const std::uint32_t value_masks = 1u << points;
    for (std::uint32_t vmask = 0; vmask < value_masks; ++vmask) {
      PartialFunction g(n);
      for (std::uint32_t x = 0; x < points; ++x) g.define(x, (vmask >> x) & 1u);
      bool ok = true;
      for (const Relation& rel : defining) {
        if (!preserves(g, rel)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const std::uint32_t full = value_masks - 1;
      std::uint32_t sub = full;
      while (true) {
        std::uint64_t code = 0;
        for (std::uint32_t x = 0; x < points; ++x) {
          if (sub >> x & 1u) code += (1 + ((vmask >> x) & 1u)) * pow3(x);
        }
        fp.insert_code(n, code);
        if (sub == 0) break;
        sub = (sub - 1) & full;
      }
    }
  }
  return fp;
}

namespace {

CloneFingerprint truncated(const CloneFingerprint& x, int k) {
  if (x.max_arity() == k) return x;
  CloneFingerprint out(k);
  for (int n = 1; n <= k; ++n) out.layer(n) = x.layer(n);
  return out;
}

void validate_strong_closure(const CloneFingerprint& fp) {
  const int k = fp.max_arity();
  std::vector<std::vector<PartialFunction>> layers(std::size_t(k) + 1);
  for (int n = 1; n <= k; ++n) {
    fp.layer(n).for_each_set([&](std::size_t code) {
      layers[std::size_t(n)].push_back(PartialFunction::from_code(n, code));
    });
  }
  auto expect = [&](const PartialFunction& g, const std::string& op,
                    const std::string& operands) {
    require(fp.test_code(g.arity(), g.code()),
            "transfer result not closed under " + op + " applied to " + operands);
  };
  for (int n = 1; n <= k; ++n) {
    for (const PartialFunction& f : layers[std::size_t(n)]) {
      for (std::uint32_t x : f.domain_points()) {
        PartialFunction g = f;
        g.undefine(x);
        expect(g, "restriction", f.to_string());
      }
      if (n >= 2) {
        expect(zeta(f), "argument rotation", f.to_string());
        expect(tau(f), "argument transposition", f.to_string());
        expect(delta(f), "argument identification", f.to_string());
      }
      if (n + 1 <= k) expect(nabla(f), "argument addition", f.to_string());
      for (int m = 1; m + n - 1 <= k; ++m) {
        for (const PartialFunction& g : layers[std::size_t(m)]) {
          expect(star(f, g), "composition",
                 f.to_string() + " with " + g.to_string());
        }
      }
    }
  }
}

}  // namespace

CloneFingerprint transfer(const CloneFingerprint& x, const CloneCatalogEntry& d,
                          const RelationPair& t_pair, int k, int threads) {
  require(k >= 1 && k <= 3, "transfer fingerprint limited to arity 3");
  require(x.max_arity() >= k, "transfer input fingerprint narrower than k");
  require(t_pair.consequent().members().none(),
          "transfer requires an empty consequent");

  const CloneFingerprint str_d = str_fingerprint_of_clone(d.defining, k, threads);
  const CloneFingerprint blocked = cpol_fingerprint({t_pair}, k, threads);
  const CloneFingerprint result =
      str_d.unite(truncated(x, k).intersect(blocked));
  validate_strong_closure(result);
  return result;
}

CloneCatalogEntry default_transfer_clone() {
  return {"T0_2+T0",
          {rho_02(), appendix_relation("P0")},
          "no all-ones image on two columns, zero-preserving"};
}

RelationPair default_transfer_pair() {
  return RelationPair(appendix_relation("P0"), Relation(1));
}

std::string export_dot(const LatticeReport& report) {
  std::ostringstream out;
  out << "digraph interval {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    const IntervalElement& e = report.elements[i];
    std::string label = e.label;
    if (!e.total_part.empty()) label += "\\n" + e.total_part;
    out << "  e" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [a, b] : report.cover_pairs()) {
    out << "  e" << a << " -> e" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::optional<IntervalReference> interval_reference(const std::string& clone_name) {
  static const std::map<std::string, IntervalReference> table = {
      {"O", {1, 1}},      {"T0", {2, 1}},      {"T1", {2, 1}},
      {"T0T1", {7, 4}},   {"MT0T1", {25, 13}}, {"ST0T1", {33, 25}},
  };
  auto it = table.find(clone_name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> basis_family_names(const std::string& clone_name,
                                            const std::string& family) {
  static const std::vector<std::string> leq7 = {"P0",    "P1",    "P01",
                                                "Pleq",  "P0leq", "P1leq",
                                                "P01leq"};
  static const std::vector<std::string> lambda7 = {"P0",      "P1",
                                                   "P01",     "Plambda",
                                                   "P0lambda", "P1lambda",
                                                   "P01lambda"};
  std::string fam = family;
  if (fam == "auto") {
    if (clone_name == "MT0T1") fam = "leq";
    else if (clone_name == "ST0T1") fam = "lambda";
    else fam = "minimal";
  }
  if (fam == "leq") return leq7;
  if (fam == "lambda") return lambda7;
  if (fam == "all") return appendix_relation_names();
  if (fam == "minimal") {
    if (clone_name == "O") return {};
    if (clone_name == "T0") return {"P0"};
    if (clone_name == "T1") return {"P1"};
    if (clone_name == "T0T1") return {"P0", "P1", "P01"};
    if (clone_name == "MT0T1") return leq7;
    if (clone_name == "ST0T1") return lambda7;
    require(false, "no minimal basis for clone: " + clone_name);
  }
  require(false, "unknown basis family: " + family);
  return {};
}

namespace {

std::string resolved_family(const std::string& clone_name,
                            const std::string& family) {
  if (family != "auto") return family;
  if (clone_name == "MT0T1") return "leq";
  if (clone_name == "ST0T1") return "lambda";
  return "minimal";
}

IntervalComputation run_interval(const std::string& clone_name,
                                 const std::string& family,
                                 const Budget& budget) {
  IntervalComputation comp;
  comp.clone_name = clone_name;
  comp.basis_used = family;
  std::vector<std::string> names = basis_family_names(clone_name, family);
  std::vector<Relation> rels;
  for (const std::string& name : names) rels.push_back(appendix_relation(name));
  LatticeReport closure = intersection_closure(rels, names, budget);
  comp.closure_size = closure.elements.size();
  comp.report = filter_above(closure, find_clone(clone_name));
  classify_report(comp.report, candidate_entries(clone_name), budget.threads);
  return comp;
}

std::string describe_mismatch(const IntervalComputation& comp,
                              const IntervalReference& ref) {
  std::ostringstream out;
  const auto it = comp.report.total_part_counts.find(comp.clone_name);
  const std::size_t exact =
      it == comp.report.total_part_counts.end() ? 0 : it->second;
  out << "basis " << comp.basis_used << " gave " << comp.report.elements.size()
      << " elements above " << comp.clone_name << " (" << exact
      << " with that exact total part); reference is " << ref.above << "/"
      << ref.exact;
  return out.str();
}

bool matches_reference(const IntervalComputation& comp,
                       const IntervalReference& ref) {
  const auto it = comp.report.total_part_counts.find(comp.clone_name);
  const std::size_t exact =
      it == comp.report.total_part_counts.end() ? 0 : it->second;
  return comp.report.elements.size() == ref.above && exact == ref.exact;
}

}  // namespace

IntervalComputation compute_interval(const std::string& clone_name,
                                     const std::string& basis_family,
                                     const Budget& budget) {
  const std::string fam = resolved_family(clone_name, basis_family);
  IntervalComputation comp = run_interval(clone_name, fam, budget);
  const auto ref = interval_reference(clone_name);
  if (ref && !matches_reference(comp, *ref) && fam != "all") {
    std::string mismatch = describe_mismatch(comp, *ref);
    IntervalComputation retry = run_interval(clone_name, "all", budget);
    retry.retried = true;
    retry.discrepancy = mismatch;
    if (!matches_reference(retry, *ref)) {
      retry.discrepancy += "; retry on the full basis gave " +
                           describe_mismatch(retry, *ref);
    }
    return retry;
  }
  return comp;
}

}  // namespace pclone
