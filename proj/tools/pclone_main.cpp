// pclone: generate relation/function families, test preservation, decide
// qfpp-definability, enumerate strong partial clone intervals, fingerprint
// classes at bounded arity, and run the built-in verification suite.

#include <bit>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pclone/budget.hpp"
#include "pclone/core.hpp"
#include "pclone/definability.hpp"
#include "pclone/families.hpp"
#include "pclone/fingerprint.hpp"
#include "pclone/intervals.hpp"
#include "pclone/io.hpp"
#include "pclone/preserve.hpp"
#include "pclone/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pclone;

constexpr const char* kVersion = "pclone 1.0.0";

// Exit codes: 0 = success / positive verdict, 1 = negative verdict or
// failed checks, 2 = usage or runtime error.
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct GenArgs {
  std::string name;
  int n = 0;
  int m = 0;
  int j = 0;
  int k = 0;
  std::string out;
};

bool is_appendix_name(const std::string& name) {
  for (const auto& known : appendix_relation_names()) {
    if (known == name) return true;
  }
  return false;
}

int require_param(int value, const std::string& flag, const std::string& name) {
  require(value > 0, "family '" + name + "' needs " + flag);
  return value;
}

int cmd_gen_family(const GenArgs& args) {
  std::string path = args.out;
  std::string description;
  std::string text;
  if (args.name == "r02_c" || args.name == "r02_k" || args.name == "r02") {
    const int n = require_param(args.n, "--n", args.name);
    Relation rel = args.name == "r02_c"  ? r02_c(n)
                   : args.name == "r02_k" ? r02_k(n)
                                          : r02(n);
    if (path.empty()) path = args.name + "_" + std::to_string(n) + ".rel";
    text = relation_to_text(rel);
    description = std::to_string(rel.arity()) + "-ary relation, " +
                  std::to_string(rel.size()) + " members";
  } else if (args.name == "rlambda") {
    const int m = require_param(args.m, "--m", args.name);
    Relation rel = r_lambda(m);
    if (path.empty()) path = "rlambda_" + std::to_string(m) + ".rel";
    text = relation_to_text(rel);
    description = std::to_string(rel.arity()) + "-ary relation, " +
                  std::to_string(rel.size()) + " members";
  } else if (args.name == "lambda") {
    const int k = require_param(args.k, "--k", args.name);
    Relation rel = lambda_k(k);
    if (path.empty()) path = "lambda_" + std::to_string(k) + ".rel";
    text = relation_to_text(rel);
    description = std::to_string(rel.arity()) + "-ary relation, " +
                  std::to_string(rel.size()) + " members";
  } else if (args.name == "xi") {
    const int j = require_param(args.j, "--j", args.name);
    PartialFunction f = expand_symmetric(xi(j));
    if (path.empty()) path = "xi_" + std::to_string(j) + ".pfn";
    text = function_to_text(f);
    description = std::to_string(f.arity()) + "-ary partial function, " +
                  std::to_string(f.domain_size()) + " domain points";
  } else {
    Relation rel = args.name == "rll"     ? r_lambda_lambda()
                   : args.name == "rho_02" ? rho_02()
                   : args.name == "rho_c"  ? rho_c()
                   : args.name == "rho_1"  ? rho_1()
                   : args.name == "rho_l"  ? rho_l()
                   : is_appendix_name(args.name)
                       ? appendix_relation(args.name)
                       : throw Error("unknown family '" + args.name + "'");
    if (path.empty()) path = args.name + ".rel";
    text = relation_to_text(rel);
    description = std::to_string(rel.arity()) + "-ary relation, " +
                  std::to_string(rel.size()) + " members";
  }
  write_text_file(path, text);
  std::cout << "wrote " << path << " (" << description << ")\n";
  return kExitYes;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

SymmetricPartialFunction to_symmetric(const PartialFunction& f) {
  const int n = f.arity();
  std::vector<std::uint64_t> count(std::size_t(n) + 1, 0);
  std::vector<int> value(std::size_t(n) + 1, -1);
  for (std::uint32_t x : f.domain_points()) {
    const int w = std::popcount(x);
    const int v = f.value_at(x) ? 1 : 0;
    if (value[std::size_t(w)] == -1) {
      value[std::size_t(w)] = v;
    } else {
      require(value[std::size_t(w)] == v,
              "function is not symmetric: conflicting values at weight " +
                  std::to_string(w));
    }
    ++count[std::size_t(w)];
  }
  SymmetricPartialFunction sf(n);
  for (int w = 0; w <= n; ++w) {
    if (count[std::size_t(w)] == 0) continue;
    require(count[std::size_t(w)] == binomial(n, w),
            "function is not symmetric: weight " + std::to_string(w) +
                " is only partially defined");
    sf.set_weight(w, value[std::size_t(w)] ? Ternary::kOne : Ternary::kZero);
  }
  return sf;
}

MatrixPath parse_path(const std::string& name) {
  if (name == "auto") return MatrixPath::kAuto;
  if (name == "rows") return MatrixPath::kRows;
  if (name == "columns") return MatrixPath::kColumns;
  if (name == "naive") return MatrixPath::kNaive;
  throw Error("unknown search path '" + name + "'");
}

// Predicted enumeration size of the cheaper violation search direction.
double violation_cost(const PartialFunction& f, const Relation& rho) {
  double rows = 1.0;
  for (int i = 0; i < rho.arity(); ++i) rows *= double(f.domain_size());
  double cols = 1.0;
  for (int i = 0; i < f.arity(); ++i) cols *= double(rho.size());
  return rows < cols ? rows : cols;
}

int cmd_preserves(const std::string& fn_path, const std::string& rel_path,
                  bool symmetric, const std::string& path_name,
                  std::uint64_t max_multisets) {
  const PartialFunction f = read_function_file(fn_path);
  const Relation rho = read_relation_file(rel_path);
  if (symmetric) {
    const SymmetricPartialFunction sf = to_symmetric(f);
    const std::uint64_t multisets =
        symmetric_multiset_count(sf.arity(), rho.size());
    const bool ok = preserves_symmetric(sf, rho, max_multisets);
    std::cout << "preserves: " << (ok ? "yes" : "no") << " (symmetric path, "
              << multisets << " column multisets)\n";
    if (ok) return kExitYes;
    if (violation_cost(f, rho) <= 1e8) {
      const auto bad = find_violation(f, rho);
      if (bad) std::cout << bad->to_string() << "\n";
    } else {
      std::cout << "witness matrix search skipped (enumeration too large)\n";
    }
    return kExitNo;
  }
  const auto bad = find_violation(f, rho, parse_path(path_name));
  if (!bad) {
    std::cout << "preserves: yes\n";
    return kExitYes;
  }
  std::cout << "preserves: no\n" << bad->to_string() << "\n";
  return kExitNo;
}

ordered_json defect_to_json(const Defect& defect, int arity) {
  ordered_json out;
  out["uncovered_coordinates"] = defect.uncovered_coordinates;
  if (defect.extra_tuple) {
    out["extra_tuple"] = tuple_to_string(*defect.extra_tuple, arity);
  } else {
    out["extra_tuple"] = nullptr;
  }
  return out;
}

int cmd_definable(const std::string& target_path,
                  const std::vector<std::string>& source_paths, bool reduce,
                  const Budget& budget) {
  Relation target = read_relation_file(target_path);
  std::vector<Relation> sources;
  for (const auto& p : source_paths) sources.push_back(read_relation_file(p));

  ordered_json out;
  out["schema"] = "pclone-definable/1";
  out["target"] = target_path;
  out["sources"] = source_paths;

  std::optional<ReducedRelation> reduction;
  if (reduce && !is_irredundant(target)) {
    reduction = reduce_relation(target);
    target = reduction->core;
  }
  out["reduced"] = reduction.has_value();
  if (reduction) {
    out["reduction"] = {
        {"kept_coordinates", reduction->kept_coordinates},
        {"core_arity", target.arity()},
        {"note", "verdict applies to the reduced relation, not necessarily "
                 "to the original"}};
  }

  const DefinabilityVerdict verdict = qfpp_definable(target, sources, budget);
  out["definable"] = verdict.definable;
  out["survivors_per_source"] = verdict.survivors_per_source;
  if (verdict.definable) {
    ordered_json witness = ordered_json::array();
    for (const auto& per_source : verdict.witness) {
      ordered_json tuples = ordered_json::array();
      for (const auto& it : per_source) tuples.push_back(it.to_string());
      witness.push_back(tuples);
    }
    out["witness"] = witness;
  } else {
    out["defect"] = defect_to_json(verdict.defect, target.arity());
  }
  std::cout << out.dump(2) << "\n";
  return verdict.definable ? kExitYes : kExitNo;
}

std::vector<std::string> mask_names(std::uint32_t mask,
                                    const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (mask >> i & 1u) out.push_back(names[i]);
  }
  return out;
}

int cmd_interval(const std::string& clone, const std::string& family,
                 const std::string& dot_path, const std::string& out_path,
                 const Budget& budget) {
  const IntervalComputation comp = compute_interval(clone, family, budget);
  const LatticeReport& report = comp.report;

  ordered_json out;
  out["schema"] = "pclone-interval/1";
  out["clone"] = comp.clone_name;
  out["basis_family"] = comp.basis_used;
  out["basis"] = report.basis_names;
  out["closure_size"] = comp.closure_size;
  out["element_count"] = report.elements.size();
  ordered_json elements = ordered_json::array();
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    const IntervalElement& e = report.elements[i];
    ordered_json merged = ordered_json::array();
    for (std::uint32_t m : e.merged_masks)
      merged.push_back(mask_names(m, report.basis_names));
    elements.push_back({{"index", i},
                        {"label", e.label},
                        {"basis", mask_names(e.mask, report.basis_names)},
                        {"merged_with", merged},
                        {"total_part", e.total_part}});
  }
  out["elements"] = elements;
  ordered_json order = ordered_json::array();
  for (const auto& [a, b] : report.order) order.push_back({a, b});
  out["order"] = order;
  ordered_json cover = ordered_json::array();
  for (const auto& [a, b] : report.cover_pairs()) cover.push_back({a, b});
  out["cover"] = cover;
  out["total_part_counts"] = report.total_part_counts;
  if (const auto ref = interval_reference(comp.clone_name)) {
    out["reference"] = {{"above", ref->above}, {"exact", ref->exact}};
  } else {
    out["reference"] = nullptr;
  }
  out["retried"] = comp.retried;
  out["discrepancy"] = comp.discrepancy;
  out["assumption"] = report.assumption;

  if (!dot_path.empty()) write_text_file(dot_path, export_dot(report));
  if (out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    write_text_file(out_path, out.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
  }
  if (!dot_path.empty()) std::cout << "wrote " << dot_path << "\n";
  return kExitYes;
}

char hex_digit(std::uint64_t v) {
  return "0123456789abcdef"[v & 0xf];
}

std::string hex64(std::uint64_t v) {
  std::string s = "0x";
  for (int shift = 60; shift >= 0; shift -= 4) s += hex_digit(v >> shift);
  return s;
}

int cmd_fingerprint(const std::vector<std::string>& rel_paths, int k,
                    bool total, const std::string& format,
                    const Budget& budget) {
  std::vector<Relation> sigma;
  for (const auto& p : rel_paths) sigma.push_back(read_relation_file(p));
  const CloneFingerprint fp = total
                                  ? pol_fingerprint(sigma, k, budget.threads)
                                  : ppol_fingerprint(sigma, k, budget.threads);
  if (format == "json") {
    ordered_json out;
    out["schema"] = "pclone-fingerprint/1";
    out["kind"] = total ? "pol" : "ppol";
    out["max_arity"] = k;
    ordered_json layers = ordered_json::array();
    for (int a = 1; a <= k; ++a) {
      layers.push_back({{"arity", a},
                        {"count", fp.count(a)},
                        {"codes", function_code_count(a)},
                        {"hash", hex64(fp.layer(a).hash())}});
    }
    out["layers"] = layers;
    out["digest"] = hex64(fp.digest());
    std::cout << out.dump(2) << "\n";
    return kExitYes;
  }
  std::cout << "kind: " << (total ? "pol" : "ppol") << "  max arity: " << k
            << "\n";
  for (int a = 1; a <= k; ++a) {
    std::cout << "arity " << a << ": " << fp.count(a) << " of "
              << function_code_count(a) << " codes, hash "
              << hex64(fp.layer(a).hash()) << "\n";
  }
  std::cout << "digest: " << hex64(fp.digest()) << "\n";
  return kExitYes;
}

int cmd_verify(const std::string& section, const std::string& format,
               bool timings, const Budget& budget) {
  bool known = section == "all";
  for (const auto& s : check_sections()) known = known || s == section;
  require(known, "unknown section '" + section + "'");

  const std::vector<CheckResult> results = run_checks(section, budget);
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  for (const auto& r : results) {
    if (r.verdict == CheckVerdict::kPass) ++passed;
    if (r.verdict == CheckVerdict::kFail) ++failed;
    if (r.verdict == CheckVerdict::kSkip) ++skipped;
  }

  if (format == "json") {
    ordered_json out;
    out["schema"] = "pclone-verify/1";
    out["section"] = section;
    ordered_json checks = ordered_json::array();
    for (const auto& r : results) {
      ordered_json c;
      c["id"] = r.info.id;
      c["criterion"] = r.info.criterion;
      c["section"] = r.info.section;
      c["summary"] = r.info.summary;
      c["verdict"] = verdict_name(r.verdict);
      c["detail"] = r.detail;
      if (timings) c["runtime_ms"] = r.runtime_ms;
      checks.push_back(c);
    }
    out["checks"] = checks;
    out["totals"] = {{"pass", passed}, {"fail", failed}, {"skip", skipped}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << "[" << verdict_name(r.verdict) << "] " << r.info.id
                << " (criterion " << r.info.criterion << ", section "
                << r.info.section << ")";
      if (timings) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.0f ms]", r.runtime_ms);
        std::cout << buf;
      }
      std::cout << "\n    " << (r.detail.empty() ? r.info.summary : r.detail)
                << "\n";
    }
    std::cout << "checks: " << results.size() << "  passed: " << passed
              << "  failed: " << failed << "  skipped: " << skipped << "\n";
  }
  return failed == 0 ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong partial clone toolkit over the Boolean domain"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Budget budget;

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-family", "Write a named relation (.rel) or function (.pfn) file");
  gen_cmd->add_option("name", gen.name,
                      "Family name: r02_c, r02_k, r02, rlambda, rll, lambda, "
                      "xi, rho_02, rho_c, rho_1, rho_l, or a basis relation "
                      "(P0, P1, P01, Pleq, P0leq, P1leq, P01leq, Plambda, "
                      "P0lambda, P1lambda, P01lambda)")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Arity parameter for r02_c/r02_k/r02");
  gen_cmd->add_option("--m", gen.m, "Parameter for rlambda (arity m+1)");
  gen_cmd->add_option("--j", gen.j, "Index for xi");
  gen_cmd->add_option("--k", gen.k, "Parameter for lambda (arity k+1)");
  gen_cmd->add_option("--out", gen.out, "Output path (defaults to <name>.<ext>)");

  std::string fn_path;
  std::string rel_path;
  bool symmetric = false;
  std::string path_name = "auto";
  CLI::App* pres_cmd = app.add_subcommand(
      "preserves", "Test whether a partial function preserves a relation");
  pres_cmd->add_option("function", fn_path, ".pfn file")->required();
  pres_cmd->add_option("relation", rel_path, ".rel file")->required();
  pres_cmd->add_flag("--symmetric", symmetric,
                     "Use the weight-indexed multiset path (the function "
                     "must be symmetric)");
  pres_cmd->add_option("--path", path_name,
                       "Matrix search direction: auto, rows, columns, naive");

  std::string target_path;
  std::vector<std::string> source_paths;
  bool reduce = false;
  CLI::App* def_cmd = app.add_subcommand(
      "definable",
      "Decide quantifier-free pp-definability of a target relation");
  def_cmd->add_option("target", target_path, "Target .rel file")->required();
  def_cmd->add_option("sources", source_paths, "Source .rel files");
  def_cmd->add_flag("--reduce", reduce,
                    "If the target is redundant, drop fictitious and "
                    "duplicate coordinates first (flagged in the output)");

  std::string clone;
  std::string family = "auto";
  std::string dot_path;
  std::string out_path;
  CLI::App* int_cmd = app.add_subcommand(
      "interval", "Enumerate the strong partial clones above a total clone");
  int_cmd->add_option("--clone", clone, "Base clone: O, T0, T1, T0T1, MT0T1, ST0T1")
      ->required();
  int_cmd->add_option("--basis", family,
                      "Basis family: auto, minimal, leq, lambda, all");
  int_cmd->add_option("--dot", dot_path, "Also write a DOT file of the poset");
  int_cmd->add_option("--out", out_path, "Write the JSON report here instead "
                      "of stdout");

  std::vector<std::string> fp_paths;
  int fp_k = 3;
  bool fp_total = false;
  std::string fp_format = "text";
  CLI::App* fp_cmd = app.add_subcommand(
      "fingerprint",
      "Digest of the functions of arity <= k preserving the given relations");
  fp_cmd->add_option("relations", fp_paths, ".rel files")->required();
  fp_cmd->add_option("--k", fp_k, "Arity bound (1..3)")
      ->check(CLI::Range(1, 3));
  fp_cmd->add_flag("--total", fp_total, "Total functions only");
  fp_cmd->add_option("--format", fp_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string section = "all";
  std::string vp_format = "text";
  bool timings = false;
  CLI::App* vp_cmd = app.add_subcommand(
      "verify-paper", "Run the built-in verification suite");
  vp_cmd->add_option("--section", section,
                     "all, 3, 4, 5, 6 or appendix");
  vp_cmd->add_option("--format", vp_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  vp_cmd->add_flag("--timings", timings, "Include per-check runtimes "
                   "(off by default to keep output byte-stable)");

  for (CLI::App* cmd : {def_cmd, int_cmd, fp_cmd, vp_cmd}) {
    cmd->add_option("--max-index-tuples", budget.max_index_tuples,
                    "Cap on t^s index tuples per definability source");
    cmd->add_option("--max-multisets", budget.max_multisets,
                    "Cap on column multisets in the symmetric path");
    cmd->add_option("--max-closure-members", budget.max_closure_members,
                    "Cap on members during composition closure");
    cmd->add_option("--max-witness-tuples", budget.max_witness_tuples,
                    "Cap on stored witness tuples per source");
    cmd->add_option("--threads", budget.threads,
                    "Worker threads (0 = PCLONE_THREADS or hardware)");
  }
  pres_cmd->add_option("--max-multisets", budget.max_multisets,
                       "Cap on column multisets in the symmetric path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen_family(gen);
    if (pres_cmd->parsed())
      return cmd_preserves(fn_path, rel_path, symmetric, path_name,
                           budget.max_multisets);
    if (def_cmd->parsed())
      return cmd_definable(target_path, source_paths, reduce, budget);
    if (int_cmd->parsed())
      return cmd_interval(clone, family, dot_path, out_path, budget);
    if (fp_cmd->parsed())
      return cmd_fingerprint(fp_paths, fp_k, fp_total, fp_format, budget);
    if (vp_cmd->parsed()) return cmd_verify(section, vp_format, timings, budget);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  std::cerr << "error: no subcommand\n";
  return kExitError;
}
