#include "pclone/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "pclone/definability.hpp"
#include "pclone/families.hpp"
#include "pclone/intervals.hpp"
#include "pclone/io.hpp"
#include "pclone/ops.hpp"
#include "pclone/preserve.hpp"

namespace pclone {
namespace {

void expect(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

// Shared state for one harness run: verdicts and fingerprints several
// checks need are computed once.
class CheckContext {
 public:
  explicit CheckContext(const Budget& budget) : budget_(budget) {}

  const Budget& budget() const { return budget_; }

  const DefinabilityVerdict& definability(const std::string& key,
                                          const Relation& target,
                                          const std::vector<Relation>& sources) {
    auto it = verdicts_.find(key);
    if (it != verdicts_.end()) return it->second;
    return verdicts_.emplace(key, qfpp_definable(target, sources, budget_))
        .first->second;
  }

  const CloneFingerprint& pol(const std::string& key,
                              const std::vector<Relation>& rels) {
    auto it = fps_.find(key);
    if (it != fps_.end()) return it->second;
    return fps_.emplace(key, pol_fingerprint(rels, 3, budget_.threads))
        .first->second;
  }

 private:
  Budget budget_;
  std::map<std::string, DefinabilityVerdict> verdicts_;
  std::map<std::string, CloneFingerprint> fps_;
};

std::string check_rho_chain(CheckContext&) {
  const std::vector<std::uint32_t> want_c = {0, 3, 5, 15};
  const std::vector<std::uint32_t> want_1 = {0, 3, 5, 10, 12, 15};
  const std::vector<std::uint32_t> want_l = {0, 3, 5, 6, 9, 10, 12, 15};
  expect(rho_c().tuples() == want_c, "rho_C members differ from the matrix");
  expect(rho_1().tuples() == want_1, "rho_1 members differ from the matrix");
  expect(rho_l().tuples() == want_l, "rho_L members differ from the matrix");
  expect(rho_c().members().is_subset_of(rho_1().members()) &&
             rho_1().members().is_subset_of(rho_l().members()),
         "rho_C, rho_1, rho_L do not form a chain");
  return "rho_C/rho_1/rho_L have 4/6/8 members and are nested";
}

std::string check_r02_matrices(CheckContext&) {
  const std::vector<std::uint32_t> want_c5 = {0, 1, 2, 4,  5, 8,
                                              9, 10, 16, 18, 20};
  const std::vector<std::uint32_t> want_k5 = {0, 1, 2, 4, 8, 16};
  const std::vector<std::uint32_t> want_c3 = {0, 1, 2, 4};
  expect(r02_c(5).tuples() == want_c5, "r02_c(5) differs from the 11-column matrix");
  expect(r02_k(5).tuples() == want_k5, "r02_k(5) differs from the 6-column matrix");
  expect(r02_c(3).tuples() == want_c3, "r02_c(3) differs from its matrix");
  expect(r02(3).size() == 16, "r02(3) should have 16 members");
  expect(r02(5).size() == 66, "r02(5) should have 66 members");
  return "r02_c(5) has the 11 expected columns, r02_k(5) the 6, "
         "|r02(3)| = 16, |r02(5)| = 66";
}

std::string check_monster_table(CheckContext&) {
  using Cond = std::pair<int, std::vector<int>>;
  const std::vector<Cond> want = {
      {1, {2, 3, 4, 5}}, {2, {1, 3, 4}}, {2, {1, 3, 5}}, {2, {1, 4, 5}},
      {3, {1, 2, 4}},    {3, {1, 2, 5}}, {3, {1, 4, 5}}, {4, {1, 2, 3}},
      {4, {1, 2, 5}},    {4, {1, 3, 5}}, {5, {1, 2, 3}}, {5, {1, 2, 4}},
      {5, {1, 3, 4}}};
  auto got = gamma_m(4);
  for (auto& [i, J] : got) std::sort(J.begin(), J.end());
  expect(got == want, "gamma_m(4) conditions differ from the 13 expected rows");
  const Relation r = r_lambda(4);
  expect(!r.contains(0b10011), "(1,0,0,1,1) must not lie in the arity-5 relation");
  expect(!r.contains(0b10111), "(1,0,1,1,1) must not lie in the arity-5 relation");
  return "gamma_m(4) has the 13 expected conditions; both excluded tuples "
         "stay excluded";
}

std::string check_monster_properties(CheckContext&) {
  for (int m = 3; m <= 6; ++m) {
    const Relation r = r_lambda(m);
    const int arity = m + 1;
    const std::uint32_t ones = (1u << arity) - 1;
    expect(r.contains(ones), "all-ones tuple missing at m=" + std::to_string(m));
    for (int p = 0; p < arity; ++p) {
      expect(!r.contains(ones ^ (1u << p)),
             "single-zero tuple present at m=" + std::to_string(m));
    }
    const std::uint32_t tail_ones = (1u << m) - 1;
    for (std::uint32_t y = 0; y < (1u << m); ++y) {
      if (y == tail_ones) continue;
      expect(r.contains(y), "leading-zero tuple missing at m=" + std::to_string(m));
    }
    for (int i = 0; i < arity; ++i) {
      for (int j = i + 1; j < arity; ++j) {
        expect(r.contains((1u << i) | (1u << j)),
               "weight-2 tuple missing at m=" + std::to_string(m));
      }
    }
  }
  return "all four membership properties hold for m in {3,4,5,6}";
}

std::string check_xi1_preserves(CheckContext&) {
  const PartialFunction f = expand_symmetric(xi(1));
  expect(f.arity() == 4 && f.domain_size() == 6,
         "xi(1) expansion should be 4-ary with 6 domain points");
  expect(preserves(f, rho_1(), MatrixPath::kNaive), "xi_1 must preserve rho_1");
  expect(preserves(f, rho_c(), MatrixPath::kNaive), "xi_1 must preserve rho_C");
  return "xi_1 preserves rho_1 and rho_C on the naive path";
}

std::string check_xi2_preserves(CheckContext& ctx) {
  const SymmetricPartialFunction sf = xi(2);
  expect(sf.arity() == 21, "xi(2) should have arity 21");
  expect(symmetric_multiset_count(21, rho_1().size()) == 65780,
         "rho_1 column multiset count should be 65780");
  expect(preserves_symmetric(sf, rho_1(), ctx.budget().max_multisets),
         "xi_2 must preserve rho_1");
  expect(preserves_symmetric(sf, rho_c(), ctx.budget().max_multisets),
         "xi_2 must preserve rho_C");
  return "xi_2 preserves rho_1 (65780 column multisets) and rho_C";
}

std::string check_symmetric_naive_agreement(CheckContext& ctx) {
  std::uint64_t pairs = 0;
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t tables = pow3(n + 1);
    for (std::uint64_t code = 0; code < tables; ++code) {
      SymmetricPartialFunction sf(n);
      std::uint64_t rest = code;
      for (int w = 0; w <= n; ++w) {
        sf.set_weight(w, static_cast<Ternary>(rest % 3));
        rest /= 3;
      }
      const PartialFunction f = expand_symmetric(sf);
      for (int h = 1; h <= 3; ++h) {
        const std::uint32_t sets = 1u << (1u << h);
        for (std::uint32_t memb = 0; memb < sets; ++memb) {
          Relation rho(h);
          for (std::uint32_t x = 0; x < (1u << h); ++x) {
            if (memb >> x & 1u) rho.add(x);
          }
          const bool fast =
              preserves_symmetric(sf, rho, ctx.budget().max_multisets);
          const bool naive = preserves(f, rho, MatrixPath::kNaive);
          expect(fast == naive,
                 "symmetric and naive paths disagree on " + f.to_string() +
                     " vs " + rho.to_string());
          ++pairs;
        }
      }
    }
  }
  return "symmetric path agrees with the naive path on " +
         std::to_string(pairs) + " function/relation pairs";
}

std::string check_total_part_r02(CheckContext& ctx) {
  const CloneFingerprint& base = ctx.pol("pol:rho02", {rho_02()});
  expect(ctx.pol("pol:r02_3", {r02(3)}) == base,
         "total functions preserving r02(3) differ from those preserving rho_02");
  expect(ctx.pol("pol:r02_5", {r02(5)}) == base,
         "total functions preserving r02(5) differ from those preserving rho_02");
  return "Pol r02(n) = Pol rho_02 at arity <= 3 for n in {3,5}";
}

std::string check_total_part_constants(CheckContext& ctx) {
  CloneFingerprint want(3);
  for (int n = 1; n <= 3; ++n) {
    want.insert(PartialFunction::constant(n, false));
    want.insert(PartialFunction::constant(n, true));
    for (int i = 1; i <= n; ++i) want.insert(PartialFunction::projection(n, i));
  }
  expect(ctx.pol("pol:rhoC", {rho_c()}) == want,
         "total functions preserving rho_C are not exactly constants and "
         "projections");
  return "Pol rho_C at arity <= 3 is exactly constants plus projections";
}

std::string check_total_part_monster(CheckContext& ctx) {
  const CloneFingerprint& lam = ctx.pol("pol:andgraph", {r_lambda_lambda()});
  expect(ctx.pol("pol:rl3", {r_lambda(3)}) == lam,
         "total part of the m=3 relation is not the conjunction clone");
  expect(ctx.pol("pol:rl4", {r_lambda(4)}) == lam,
         "total part of the m=4 relation is not the conjunction clone");
  return "Pol of the m=3 and m=4 relations equals the conjunction clone at "
         "arity <= 3";
}

bool witness_contains(const std::vector<IndexTuple>& tuples,
                      std::initializer_list<int> entries) {
  IndexTuple probe;
  probe.entries = entries;
  return std::find(tuples.begin(), tuples.end(), probe) != tuples.end();
}

std::string check_definable_monster(CheckContext& ctx) {
  const auto& va =
      ctx.definability("RLL<-RL3", r_lambda_lambda(), {r_lambda(3)});
  expect(va.definable, "the 3-ary conjunction graph must be definable from "
                       "the m=3 relation");
  expect(witness_contains(va.witness.at(0), {1, 2, 3, 3}) &&
             witness_contains(va.witness.at(0), {2, 1, 1, 1}) &&
             witness_contains(va.witness.at(0), {3, 1, 1, 1}),
         "witness lacks one of (1,2,3,3), (2,1,1,1), (3,1,1,1)");
  const auto& vb = ctx.definability("RL3<-RL4", r_lambda(3), {r_lambda(4)});
  expect(!vb.definable, "the m=3 relation must not be definable from m=4");
  const auto& vc = ctx.definability("RL4<-RL3", r_lambda(4), {r_lambda(3)});
  expect(!vc.definable, "the m=4 relation must not be definable from m=3");
  return "definable with the three expected index tuples; both cross "
         "directions not definable";
}

std::string check_definable_r02(CheckContext& ctx) {
  const auto& vd = ctx.definability("r02_5<-r02_3", r02(5), {r02(3)});
  expect(!vd.definable, "r02(5) must not be definable from r02(3)");
  for (int c = 1; c <= 5; ++c) {
    expect(std::count(vd.defect.uncovered_coordinates.begin(),
                      vd.defect.uncovered_coordinates.end(), c) == 1,
           "defect for r02(5) must leave coordinates 1..5 uncovered");
  }
  const auto& ve = ctx.definability("r02_3<-r02_5", r02(3), {r02(5)});
  expect(!ve.definable, "r02(3) must not be definable from r02(5)");
  for (int c = 1; c <= 3; ++c) {
    expect(std::count(ve.defect.uncovered_coordinates.begin(),
                      ve.defect.uncovered_coordinates.end(), c) == 1,
           "defect for r02(3) must leave coordinates 1..3 uncovered");
  }
  return "both directions not definable; defects leave the first block of "
         "coordinates uncovered";
}

// The four classes cut out by subsets of a two-relation family, compared
// by definability in both directions. The cross keys name the same cache
// entries the criterion-5 checks fill, so the heavy verdicts run once.
std::string independence_suite(CheckContext& ctx, const std::string& tag,
                               const Relation& first, const Relation& second,
                               const std::string& cross_key_first,
                               const std::string& cross_key_second) {
  const std::vector<Relation> rels = {first, second};
  auto definable_from = [&](std::size_t target, std::uint32_t mask) {
    if (mask >> target & 1u) return true;
    std::vector<Relation> sources;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (mask >> i & 1u) sources.push_back(rels[i]);
    }
    std::string key;
    if (sources.empty()) {
      key = tag + ":" + std::to_string(target) + "<-empty";
    } else {
      key = target == 0 ? cross_key_first : cross_key_second;
    }
    return ctx.definability(key, rels[target], sources).definable;
  };
  auto leq = [&](std::uint32_t a, std::uint32_t b) {
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if ((b >> i & 1u) && !definable_from(i, a)) return false;
    }
    return true;
  };
  int distinct_pairs = 0;
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = a + 1; b < 4; ++b) {
      expect(!(leq(a, b) && leq(b, a)),
             "subset classes " + std::to_string(a) + " and " +
                 std::to_string(b) + " collapsed");
      ++distinct_pairs;
    }
  }
  return "all " + std::to_string(distinct_pairs) +
         " subset pairs give distinct classes";
}

std::string check_independence_monster(CheckContext& ctx) {
  return independence_suite(ctx, "rl", r_lambda(3), r_lambda(4), "RL3<-RL4",
                            "RL4<-RL3");
}

std::string check_independence_r02(CheckContext& ctx) {
  return independence_suite(ctx, "r02", r02(3), r02(5), "r02_3<-r02_5",
                            "r02_5<-r02_3");
}

std::string interval_check(CheckContext& ctx, const std::string& name) {
  const auto ref = interval_reference(name);
  expect(bool(ref), "no reference counts for " + name);
  const IntervalComputation comp = compute_interval(name, "auto", ctx.budget());
  const auto it = comp.report.total_part_counts.find(name);
  const std::size_t exact =
      it == comp.report.total_part_counts.end() ? 0 : it->second;
  std::ostringstream detail;
  detail << comp.report.elements.size() << " elements above " << name << ", "
         << exact << " with that exact total part (basis " << comp.basis_used
         << ")";
  if (!comp.discrepancy.empty()) detail << "; " << comp.discrepancy;
  expect(comp.report.elements.size() == ref->above && exact == ref->exact,
         detail.str());
  return detail.str();
}

std::string check_pair_empty_consequent(CheckContext& ctx) {
  for (const Relation& rho : {appendix_relation("P0"), rho_02()}) {
    const RelationPair pair(rho, Relation(rho.arity()));
    const CloneFingerprint fp =
        cpol_fingerprint({pair}, 3, ctx.budget().threads);
    const CloneFingerprint totals = fp.total_part();
    for (int n = 1; n <= 3; ++n) {
      expect(totals.count(n) == 0,
             "a total function satisfies the empty-consequent pair over " +
                 rho.to_string());
    }
  }
  return "no total function of arity <= 3 satisfies either empty-consequent "
         "pair";
}

std::string check_pair_star_stability(CheckContext& ctx) {
  const RelationPair t_pair(appendix_relation("P0"), Relation(1));
  const CloneFingerprint t = cpol_fingerprint({t_pair}, 3, ctx.budget().threads);
  const CloneFingerprint d =
      ppol_fingerprint({appendix_relation("P0")}, 3, ctx.budget().threads);
  std::uint64_t checked = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<PartialFunction> t_layer, d_layer;
    t.layer(n).for_each_set([&](std::size_t code) {
      t_layer.push_back(PartialFunction::from_code(n, code));
    });
    for (int m = 1; n + m - 1 <= 3; ++m) {
      d.layer(m).for_each_set([&](std::size_t code) {
        d_layer.push_back(PartialFunction::from_code(m, code));
      });
      for (const auto& f : t_layer) {
        for (const auto& g : d_layer) {
          if (g.arity() != m) continue;
          const PartialFunction fg = star(f, g);
          expect(t.contains(fg), "T*D left T at " + f.to_string() + " with " +
                                     g.to_string());
          const PartialFunction gf = star(g, f);
          expect(t.contains(gf), "D*T left T at " + g.to_string() + " with " +
                                     f.to_string());
          checked += 2;
        }
      }
      d_layer.clear();
    }
  }
  return "T*D and D*T stay inside T across " + std::to_string(checked) +
         " compositions";
}

std::string check_pair_identity(CheckContext& ctx) {
  for (const Relation& rho : {rho_02(), rho_c()}) {
    const CloneFingerprint via_pair =
        cpol_fingerprint({RelationPair(rho, rho)}, 3, ctx.budget().threads);
    const CloneFingerprint direct =
        ppol_fingerprint({rho}, 3, ctx.budget().threads);
    expect(via_pair == direct,
           "pair (rho,rho) disagrees with plain preservation for " +
               rho.to_string());
  }
  return "(rho,rho) pairs reproduce plain preservation for rho_02 and rho_C";
}

std::string check_xi1_not_linear(CheckContext&) {
  const PartialFunction f = expand_symmetric(xi(1));
  int extensions = 0;
  for (std::uint32_t coeff = 0; coeff < 32; ++coeff) {
    const std::uint32_t cmask = coeff >> 1;
    bool extends = true;
    for (std::uint32_t x : f.domain_points()) {
      const bool value =
          ((coeff ^ std::uint32_t(std::popcount(x & cmask))) & 1u) != 0;
      if (value != f.value_at(x)) {
        extends = false;
        break;
      }
    }
    if (extends) ++extensions;
  }
  expect(extensions == 0, std::to_string(extensions) +
                              " of 32 linear functions extend the witness");
  return "none of the 32 total 4-ary linear functions extends xi_1";
}

struct CheckDef {
  CheckInfo info;
  std::function<std::string(CheckContext&)> run;
};

const std::vector<CheckDef>& check_defs() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> d;
    auto add = [&](std::string id, int criterion, std::string section,
                   std::string summary,
                   std::function<std::string(CheckContext&)> run) {
      d.push_back({{std::move(id), criterion, std::move(section),
                    std::move(summary)},
                   std::move(run)});
    };
    add("rho-chain-matrices", 1, "4",
        "rho_C, rho_1, rho_L match their matrices and nest", check_rho_chain);
    add("r02-matrices", 1, "5",
        "cycle and clique relations match their matrices", check_r02_matrices);
    add("monster-table", 1, "6",
        "the 13 arity-5 conditions and excluded tuples", check_monster_table);
    add("monster-properties", 2, "6",
        "membership properties (i)-(iv) for m in 3..6",
        check_monster_properties);
    add("xi1-preserves", 3, "4", "xi_1 preserves rho_1 and rho_C",
        check_xi1_preserves);
    add("xi2-preserves-symmetric", 3, "4",
        "xi_2 preserves rho_1 and rho_C via column multisets",
        check_xi2_preserves);
    add("symmetric-naive-agreement", 3, "4",
        "symmetric fast path agrees with the naive matrix path",
        check_symmetric_naive_agreement);
    add("total-part-r02", 4, "5", "Pol r02(n) matches Pol rho_02 at k=3",
        check_total_part_r02);
    add("total-part-constants", 4, "4",
        "Pol rho_C is constants plus projections at k=3",
        check_total_part_constants);
    add("total-part-monster", 4, "6",
        "Pol of the m=3,4 relations matches the conjunction clone",
        check_total_part_monster);
    add("definable-monster", 5, "6",
        "definability verdicts and witness tuples for the arity-4/5 pair",
        check_definable_monster);
    add("definable-r02", 5, "5",
        "both r02 cross-definability checks fail with block defects",
        check_definable_r02);
    add("independence-monster", 6, "6",
        "subset classes of the two monster relations stay distinct",
        check_independence_monster);
    add("independence-r02", 6, "5",
        "subset classes of r02(3) and r02(5) stay distinct",
        check_independence_r02);
    for (const char* name : {"O", "T0", "T1", "T0T1", "MT0T1", "ST0T1"}) {
      std::string n = name;
      add("interval-" + n, 7, "appendix",
          "interval counts above " + n + " match the reference",
          [n](CheckContext& ctx) { return interval_check(ctx, n); });
    }
    add("pair-empty-consequent", 8, "3",
        "empty-consequent pairs admit no total functions",
        check_pair_empty_consequent);
    add("pair-star-stability", 8, "3",
        "first-slot composition keeps T stable against D",
        check_pair_star_stability);
    add("pair-identity", 8, "3",
        "(rho,rho) pairs reproduce plain preservation", check_pair_identity);
    add("xi1-not-linear", 9, "4",
        "no total linear 4-ary function extends xi_1", check_xi1_not_linear);
    return d;
  }();
  return defs;
}

}  // namespace

const char* verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::kPass:
      return "pass";
    case CheckVerdict::kFail:
      return "fail";
    case CheckVerdict::kSkip:
      return "skip";
  }
  return "fail";
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& def : check_defs()) out.push_back(def.info);
    return out;
  }();
  return infos;
}

const std::vector<std::string>& check_sections() {
  static const std::vector<std::string> sections = {"3", "4", "5", "6",
                                                    "appendix"};
  return sections;
}

std::string criterion_summary(int criterion) {
  switch (criterion) {
    case 1:
      return "family constructions match their reference matrices";
    case 2:
      return "monster membership properties hold for m in 3..6";
    case 3:
      return "preservation holds and the symmetric path agrees with naive";
    case 4:
      return "total parts at arity <= 3 match the expected clones";
    case 5:
      return "definability verdicts, witnesses and defects as expected";
    case 6:
      return "subset classes of the separation families stay distinct";
    case 7:
      return "interval counts 1/2/2/7/25/33 above, 4/13/25 exact";
    case 8:
      return "relation-pair classes compose and compare as required";
    case 9:
      return "no total linear function extends the arity-4 separator";
  }
  return "unknown criterion";
}

std::vector<CheckResult> run_checks(const std::string& section,
                                    const Budget& budget) {
  require(section == "all" ||
              std::find(check_sections().begin(), check_sections().end(),
                        section) != check_sections().end(),
          "unknown section: " + section);
  CheckContext ctx(budget);
  std::vector<CheckResult> results;
  for (const auto& def : check_defs()) {
    if (section != "all" && def.info.section != section) continue;
    CheckResult res;
    res.info = def.info;
    const auto start = std::chrono::steady_clock::now();
    try {
      res.detail = def.run(ctx);
      res.verdict = CheckVerdict::kPass;
    } catch (const BudgetError& e) {
      res.verdict = CheckVerdict::kSkip;
      res.detail = e.what();
    } catch (const std::exception& e) {
      res.verdict = CheckVerdict::kFail;
      res.detail = e.what();
    }
    const auto end = std::chrono::steady_clock::now();
    res.runtime_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace pclone
