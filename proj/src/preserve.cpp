#include "pclone/preserve.hpp"

#include <algorithm>
#include <cmath>

namespace pclone {

namespace {

// Precomputed view of one relation used as a matrix-column constraint.
struct RelCtx {
  const Relation* rel;
  std::vector<std::uint32_t> members;
  std::vector<Bitset> prefixes;  // tuple_prefix_levels over the members

  explicit RelCtx(const Relation& r)
      : rel(&r),
        members(r.tuples()),
        prefixes(tuple_prefix_levels(r.members(), r.arity())) {}
};

struct RowsSearch {
  const PartialFunction& f;
  const RelCtx& ante;
  const Relation& cons;
  int n, h;
  std::vector<std::uint32_t> dom;
  std::vector<std::uint32_t> rows;
  std::vector<std::vector<std::uint32_t>> cols;  // per depth, n entries
  std::vector<std::uint32_t> outs;               // output prefix per depth
  std::optional<Counterexample> found;

  RowsSearch(const PartialFunction& f_, const RelCtx& a, const Relation& c)
      : f(f_), ante(a), cons(c), n(f_.arity()), h(a.rel->arity()),
        dom(f_.domain_points()), rows(std::size_t(h), 0),
        cols(std::size_t(h) + 1, std::vector<std::uint32_t>(std::size_t(n), 0)),
        outs(std::size_t(h) + 1, 0) {}

  void search(int depth) {
    if (found) return;
    if (depth == h) {
      if (!cons.contains(outs[std::size_t(h)])) {
        Counterexample ce;
        ce.n = n;
        ce.h = h;
        ce.rows = rows;
        ce.columns = cols[std::size_t(h)];
        ce.output = outs[std::size_t(h)];
        found = ce;
      }
      return;
    }
    const Bitset& feasible = ante.prefixes[std::size_t(depth) + 1];
    const auto& prev = cols[std::size_t(depth)];
    auto& cur = cols[std::size_t(depth) + 1];
    for (std::uint32_t r : dom) {
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        std::uint32_t c = (prev[std::size_t(j)] << 1) |
                          std::uint32_t(tuple_bit(r, n, j));
        if (!feasible.test(c)) {
          ok = false;
          break;
        }
        cur[std::size_t(j)] = c;
      }
      if (!ok) continue;
      rows[std::size_t(depth)] = r;
      outs[std::size_t(depth) + 1] =
          (outs[std::size_t(depth)] << 1) | std::uint32_t(f.value_at(r));
      search(depth + 1);
      if (found) return;
    }
  }
};

struct ColsSearch {
  const PartialFunction& f;
  const RelCtx& ante;
  const Relation& cons;
  int n, h;
  std::vector<Bitset> dom_prefixes;
  std::vector<std::uint32_t> columns;
  std::vector<std::vector<std::uint32_t>> rowpref;  // per depth, h entries
  std::optional<Counterexample> found;

  ColsSearch(const PartialFunction& f_, const RelCtx& a, const Relation& c)
      : f(f_), ante(a), cons(c), n(f_.arity()), h(a.rel->arity()),
        dom_prefixes(tuple_prefix_levels(f_.domain(), f_.arity())),
        columns(std::size_t(n), 0),
        rowpref(std::size_t(n) + 1, std::vector<std::uint32_t>(std::size_t(h), 0)) {}

  void search(int depth) {
    if (found) return;
    if (depth == n) {
      const auto& rows = rowpref[std::size_t(n)];
      std::uint32_t out = 0;
      for (int i = 0; i < h; ++i)
        out = (out << 1) | std::uint32_t(f.value_at(rows[std::size_t(i)]));
      if (!cons.contains(out)) {
        Counterexample ce;
        ce.n = n;
        ce.h = h;
        ce.rows = rows;
        ce.columns = columns;
        ce.output = out;
        found = ce;
      }
      return;
    }
    const Bitset& feasible = dom_prefixes[std::size_t(depth) + 1];
    const auto& prev = rowpref[std::size_t(depth)];
    auto& cur = rowpref[std::size_t(depth) + 1];
    for (std::uint32_t c : ante.members) {
      bool ok = true;
      for (int i = 0; i < h; ++i) {
        std::uint32_t rp = (prev[std::size_t(i)] << 1) |
                           std::uint32_t(tuple_bit(c, h, i));
        if (!feasible.test(rp)) {
          ok = false;
          break;
        }
        cur[std::size_t(i)] = rp;
      }
      if (!ok) continue;
      columns[std::size_t(depth)] = c;
      search(depth + 1);
      if (found) return;
    }
  }
};

// Literal definition: every h-tuple of domain points via an odometer,
// full column and output checks per matrix, no pruning.
std::optional<Counterexample> naive_search(const PartialFunction& f,
                                           const Relation& ante,
                                           const Relation& cons) {
  int n = f.arity(), h = ante.arity();
  auto dom = f.domain_points();
  if (dom.empty()) return std::nullopt;
  std::vector<std::size_t> idx(std::size_t(h), 0);
  while (true) {
    bool columns_ok = true;
    std::vector<std::uint32_t> columns(std::size_t(n), 0);
    for (int j = 0; j < n && columns_ok; ++j) {
      std::uint32_t c = 0;
      for (int i = 0; i < h; ++i)
        c = (c << 1) | std::uint32_t(tuple_bit(dom[idx[std::size_t(i)]], n, j));
      columns[std::size_t(j)] = c;
      columns_ok = ante.contains(c);
    }
    if (columns_ok) {
      std::uint32_t out = 0;
      for (int i = 0; i < h; ++i)
        out = (out << 1) | std::uint32_t(f.value_at(dom[idx[std::size_t(i)]]));
      if (!cons.contains(out)) {
        Counterexample ce;
        ce.n = n;
        ce.h = h;
        for (int i = 0; i < h; ++i) ce.rows.push_back(dom[idx[std::size_t(i)]]);
        ce.columns = columns;
        ce.output = out;
        return ce;
      }
    }
    int pos = h - 1;
    while (pos >= 0 && ++idx[std::size_t(pos)] == dom.size()) {
      idx[std::size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return std::nullopt;
}

std::optional<Counterexample> run_search(const PartialFunction& f,
                                         const RelCtx& ante,
                                         const Relation& cons,
                                         MatrixPath path) {
  if (path == MatrixPath::kNaive) return naive_search(f, *ante.rel, cons);
  if (path == MatrixPath::kAuto) {
    double rows_cost = std::pow(double(f.domain_size()), ante.rel->arity());
    double cols_cost = std::pow(double(ante.members.size()), f.arity());
    path = rows_cost <= cols_cost ? MatrixPath::kRows : MatrixPath::kColumns;
  }
  if (path == MatrixPath::kRows) {
    RowsSearch s(f, ante, cons);
    s.search(0);
    return s.found;
  }
  ColsSearch s(f, ante, cons);
  s.search(0);
  return s.found;
}

}  // namespace

std::string Counterexample::to_string() const {
  std::string s = "rows";
  for (auto r : rows) s += " " + tuple_to_string(r, n);
  s += "; columns";
  for (auto c : columns) s += " " + tuple_to_string(c, h);
  s += "; output " + tuple_to_string(output, h);
  return s;
}

std::optional<Counterexample> find_pair_violation(const PartialFunction& f,
                                                  const RelationPair& q,
                                                  MatrixPath path) {
  RelCtx ctx(q.antecedent());
  return run_search(f, ctx, q.consequent(), path);
}

std::optional<Counterexample> find_violation(const PartialFunction& f,
                                             const Relation& rho,
                                             MatrixPath path) {
  RelCtx ctx(rho);
  return run_search(f, ctx, rho, path);
}

bool preserves(const PartialFunction& f, const Relation& rho,
               MatrixPath path) {
  return !find_violation(f, rho, path).has_value();
}

bool preserves_pair(const PartialFunction& f, const RelationPair& q,
                    MatrixPath path) {
  return !find_pair_violation(f, q, path).has_value();
}

std::uint64_t symmetric_multiset_count(int function_arity,
                                       std::size_t relation_size) {
  // C(n + s - 1, s - 1), saturating at UINT64_MAX.
  unsigned __int128 num = 1;
  std::uint64_t n = std::uint64_t(function_arity);
  std::uint64_t s = std::uint64_t(relation_size);
  if (s == 0) return 0;
  for (std::uint64_t i = 1; i < s; ++i) {
    num = num * (n + i) / i;
    if (num > (unsigned __int128)~std::uint64_t{0})
      return ~std::uint64_t{0};
  }
  return std::uint64_t(num);
}

namespace {

struct SymmetricScan {
  const SymmetricPartialFunction& sf;
  const Relation& rho;
  int n, h;
  std::vector<std::uint32_t> members;
  std::vector<int> weights;  // row weights accumulated so far
  bool violated = false;

  SymmetricScan(const SymmetricPartialFunction& s, const Relation& r)
      : sf(s), rho(r), n(s.arity()), h(r.arity()), members(r.tuples()),
        weights(std::size_t(h), 0) {}

  // Distributes `remaining` column copies over members[idx..]; weights
  // carry the multiplicities chosen so far and are restored on return.
  void assign(std::size_t idx, int remaining) {
    if (idx + 1 == members.size()) {
      bump(members[idx], remaining);
      check();
      bump(members[idx], -remaining);
      return;
    }
    for (int m = 0; m <= remaining; ++m) {
      assign(idx + 1, remaining - m);
      if (violated) {
        bump(members[idx], -m);
        return;
      }
      if (m < remaining) bump(members[idx], 1);
    }
    bump(members[idx], -remaining);
  }

  void bump(std::uint32_t member, int delta) {
    for (int i = 0; i < h; ++i)
      if (tuple_bit(member, h, i)) weights[std::size_t(i)] += delta;
  }

  void check() {
    std::uint32_t out = 0;
    for (int i = 0; i < h; ++i) {
      int w = weights[std::size_t(i)];
      if (!sf.defined_at_weight(w)) return;
      out = (out << 1) | std::uint32_t(sf.value_at_weight(w));
    }
    if (!rho.contains(out)) violated = true;
  }
};

}  // namespace

bool preserves_symmetric(const SymmetricPartialFunction& sf,
                         const Relation& rho, std::uint64_t max_multisets) {
  std::uint64_t count = symmetric_multiset_count(sf.arity(), rho.size());
  require_budget(count <= max_multisets,
                 "symmetric path needs " + std::to_string(count) +
                     " column multisets, over the budget of " +
                     std::to_string(max_multisets));
  if (rho.size() == 0) return true;
  SymmetricScan scan(sf, rho);
  scan.assign(0, sf.arity());
  return !scan.violated;
}

namespace {

bool preserves_all(const PartialFunction& f, const std::vector<RelCtx>& ctxs) {
  for (const auto& ctx : ctxs)
    if (run_search(f, ctx, *ctx.rel, MatrixPath::kAuto)) return false;
  return true;
}

}  // namespace

CloneFingerprint ppol_fingerprint(const std::vector<Relation>& sigma, int k,
                                  int threads) {
  require(k >= 1 && k <= 3, "exhaustive fingerprints support k <= 3 only");
  std::vector<RelCtx> ctxs;
  ctxs.reserve(sigma.size());
  for (const auto& r : sigma) ctxs.emplace_back(r);

  CloneFingerprint fp(k);
  for (int n = 1; n <= k; ++n) {
    std::uint64_t codes = function_code_count(n);
    int slots = resolve_threads(threads);
    std::vector<Bitset> parts(static_cast<std::size_t>(slots), Bitset(codes));
    parallel_chunks(codes, threads, [&](std::uint64_t b, std::uint64_t e, int s) {
      for (std::uint64_t c = b; c < e; ++c) {
        PartialFunction f = PartialFunction::from_code(n, c);
        if (preserves_all(f, ctxs)) parts[std::size_t(s)].set(c);
      }
    });
    for (const auto& p : parts) fp.layer(n) |= p;
  }
  return fp;
}

CloneFingerprint pol_fingerprint(const std::vector<Relation>& sigma, int k,
                                 int threads) {
  require(k >= 1 && k <= 3, "exhaustive fingerprints support k <= 3 only");
  std::vector<RelCtx> ctxs;
  ctxs.reserve(sigma.size());
  for (const auto& r : sigma) ctxs.emplace_back(r);

  CloneFingerprint fp(k);
  for (int n = 1; n <= k; ++n) {
    std::uint32_t points = std::uint32_t(1) << n;
    std::uint64_t masks = std::uint64_t(1) << points;
    int slots = resolve_threads(threads);
    std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(slots));
    parallel_chunks(masks, threads, [&](std::uint64_t b, std::uint64_t e, int s) {
      for (std::uint64_t v = b; v < e; ++v) {
        PartialFunction f(n);
        for (std::uint32_t x = 0; x < points; ++x)
          f.define(x, (v >> x) & 1);
        if (preserves_all(f, ctxs)) parts[std::size_t(s)].push_back(f.code());
      }
    });
    for (const auto& p : parts)
      for (auto code : p) fp.insert_code(n, code);
  }
  return fp;
}

CloneFingerprint cpol_fingerprint(const std::vector<RelationPair>& pairs,
                                  int k, int threads) {
  require(k >= 1 && k <= 3, "exhaustive fingerprints support k <= 3 only");
  std::vector<RelCtx> antes;
  antes.reserve(pairs.size());
  for (const auto& q : pairs) antes.emplace_back(q.antecedent());

  CloneFingerprint fp(k);
  for (int n = 1; n <= k; ++n) {
    std::uint64_t codes = function_code_count(n);
    int slots = resolve_threads(threads);
    std::vector<Bitset> parts(static_cast<std::size_t>(slots), Bitset(codes));
    parallel_chunks(codes, threads, [&](std::uint64_t b, std::uint64_t e, int s) {
      for (std::uint64_t c = b; c < e; ++c) {
        PartialFunction f = PartialFunction::from_code(n, c);
        bool ok = true;
        for (std::size_t i = 0; i < pairs.size() && ok; ++i)
          ok = !run_search(f, antes[i], pairs[i].consequent(),
                           MatrixPath::kAuto)
                    .has_value();
        if (ok) parts[std::size_t(s)].set(c);
      }
    });
    for (const auto& p : parts) fp.layer(n) |= p;
  }
  return fp;
}

bool invariant_under_clone(const Relation& sigma,
                           const std::vector<Relation>& clone_rels,
                           int max_members) {
  require(max_members >= 1 && max_members <= 4,
          "invariance bound must be between 1 and 4");
  require(int(sigma.size()) <= max_members,
          "relation has " + std::to_string(sigma.size()) +
              " members, above the invariance bound of " +
              std::to_string(max_members));
  std::vector<RelCtx> ctxs;
  for (const auto& r : clone_rels) ctxs.emplace_back(r);
  RelCtx target(sigma);

  int top = int(sigma.size());
  for (int n = 1; n <= top; ++n) {
    std::uint32_t points = std::uint32_t(1) << n;
    std::uint64_t masks = std::uint64_t(1) << points;
    for (std::uint64_t v = 0; v < masks; ++v) {
      PartialFunction f(n);
      for (std::uint32_t x = 0; x < points; ++x) f.define(x, (v >> x) & 1);
      if (!preserves_all(f, ctxs)) continue;
      if (run_search(f, target, sigma, MatrixPath::kAuto)) return false;
    }
  }
  return true;
}

std::vector<RelationPair> preserved_pairs(const PartialFunction& f, int h) {
  require(h >= 1 && h <= 3, "pair enumeration supports arity <= 3 only");
  std::uint32_t universe = std::uint32_t(1) << h;
  std::uint32_t rels = std::uint32_t(1) << universe;
  std::vector<RelationPair> out;
  for (std::uint32_t am = 0; am < rels; ++am) {
    Relation ante(h);
    for (std::uint32_t tpl = 0; tpl < universe; ++tpl)
      if ((am >> tpl) & 1) ante.add(tpl);
    RelCtx ctx(ante);
    std::uint32_t sub = am;
    while (true) {
      Relation cons(h);
      for (std::uint32_t tpl = 0; tpl < universe; ++tpl)
        if ((sub >> tpl) & 1) cons.add(tpl);
      if (!run_search(f, ctx, cons, MatrixPath::kAuto))
        out.emplace_back(ante, cons);
      if (sub == 0) break;
      sub = (sub - 1) & am;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PartialFunction> find_separating_function(
    const std::vector<Relation>& inside, const std::vector<Relation>& outside,
    int max_arity) {
  require(max_arity >= 1 && max_arity <= 4,
          "separation search supports arity <= 4 only");
  std::vector<RelCtx> in_ctx, out_ctx;
  for (const auto& r : inside) in_ctx.emplace_back(r);
  for (const auto& r : outside) out_ctx.emplace_back(r);

  for (int n = 1; n <= max_arity; ++n) {
    std::uint64_t codes = function_code_count(n);
    for (std::uint64_t c = 0; c < codes; ++c) {
      PartialFunction f = PartialFunction::from_code(n, c);
      if (!preserves_all(f, in_ctx)) continue;
      bool breaks_one = false;
      for (const auto& ctx : out_ctx)
        if (run_search(f, ctx, *ctx.rel, MatrixPath::kAuto)) {
          breaks_one = true;
          break;
        }
      if (breaks_one) return f;
    }
  }
  return std::nullopt;
}

}  // namespace pclone
