#include "pclone/ops.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "pclone/budget.hpp"

namespace pclone {

namespace {

// Rebuilds f over a coordinate substitution: the result has the given
// arity and result(x) = f(image(x)) whenever image(x) lies in dom f.
template <typename ImageFn>
PartialFunction substituted(const PartialFunction& f, int result_arity,
                            ImageFn&& image) {
  PartialFunction r(result_arity);
  std::uint32_t n = std::uint32_t(1) << result_arity;
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t y = image(x);
    if (f.defined_at(y)) r.define(x, f.value_at(y));
  }
  return r;
}

}  // namespace

PartialFunction compose(const PartialFunction& f,
                        const std::vector<PartialFunction>& gs) {
  int n = f.arity();
  require(int(gs.size()) == n, "composition needs exactly " +
                                   std::to_string(n) + " inner functions");
  int m = gs.front().arity();
  for (const auto& g : gs)
    require(g.arity() == m, "inner functions must share one arity");

  PartialFunction r(m);
  std::uint32_t points = std::uint32_t(1) << m;
  for (std::uint32_t x = 0; x < points; ++x) {
    bool all_defined = true;
    std::uint32_t y = 0;
    for (const auto& g : gs) {
      if (!g.defined_at(x)) { all_defined = false; break; }
      y = (y << 1) | std::uint32_t(g.value_at(x));
    }
    if (all_defined && f.defined_at(y)) r.define(x, f.value_at(y));
  }
  return r;
}

PartialFunction zeta(const PartialFunction& f) {
  int n = f.arity();
  if (n == 1) return f;
  std::uint32_t mask = (std::uint32_t(1) << n) - 1;
  // image(x_1,...,x_n) = (x_2,...,x_n,x_1)
  return substituted(f, n, [&](std::uint32_t x) {
    return ((x << 1) & mask) | (x >> (n - 1));
  });
}

PartialFunction tau(const PartialFunction& f) {
  int n = f.arity();
  if (n == 1) return f;
  return substituted(f, n, [&](std::uint32_t x) {
    std::uint32_t b1 = (x >> (n - 1)) & 1, b2 = (x >> (n - 2)) & 1;
    std::uint32_t y = x & ~((std::uint32_t(3)) << (n - 2));
    return y | (b2 << (n - 1)) | (b1 << (n - 2));
  });
}

PartialFunction delta(const PartialFunction& f) {
  int n = f.arity();
  if (n == 1) return f;
  // (x_1,...,x_{n-1}) -> f(x_1,x_1,x_2,...,x_{n-1})
  return substituted(f, n - 1, [&](std::uint32_t x) {
    std::uint32_t top = x >> (n - 2);
    return (top << (n - 1)) | x;
  });
}

PartialFunction nabla(const PartialFunction& f) {
  int n = f.arity();
  check_arity(n + 1);
  std::uint32_t mask = (std::uint32_t(1) << n) - 1;
  return substituted(f, n + 1, [&](std::uint32_t x) { return x & mask; });
}

PartialFunction star(const PartialFunction& f, const PartialFunction& g) {
  int n = f.arity(), m = g.arity();
  int a = n + m - 1;
  check_arity(a);
  PartialFunction r(a);
  std::uint32_t points = std::uint32_t(1) << a;
  std::uint32_t tail_mask = (n == 1) ? 0 : ((std::uint32_t(1) << (n - 1)) - 1);
  for (std::uint32_t x = 0; x < points; ++x) {
    std::uint32_t head = x >> (n - 1);
    if (!g.defined_at(head)) continue;
    std::uint32_t y = (std::uint32_t(g.value_at(head)) << (n - 1)) | (x & tail_mask);
    if (f.defined_at(y)) r.define(x, f.value_at(y));
  }
  return r;
}

PartialFunction pin_first(const PartialFunction& f, bool a) {
  int n = f.arity();
  check_arity(n + 1);
  PartialFunction r(n + 1);
  f.domain().for_each_set([&](std::size_t x) {
    std::uint32_t y = (std::uint32_t(a) << n) | std::uint32_t(x);
    r.define(y, f.value_at(std::uint32_t(x)));
  });
  return r;
}

std::vector<PartialFunction> str_closure(const std::vector<PartialFunction>& fs,
                                         std::uint64_t max_outputs) {
  std::uint64_t bound = 0;
  for (const auto& f : fs) {
    require(f.domain_size() <= 63, "restriction closure domain too large");
    bound += std::uint64_t(1) << f.domain_size();
    require_budget(bound <= max_outputs,
                   "restriction closure would exceed " +
                       std::to_string(max_outputs) + " functions");
  }
  std::vector<PartialFunction> out;
  for (const auto& f : fs) {
    auto points = f.domain_points();
    std::uint64_t subsets = std::uint64_t(1) << points.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
      Bitset keep(std::size_t(1) << f.arity());
      for (std::size_t i = 0; i < points.size(); ++i)
        if ((s >> i) & 1) keep.set(points[i]);
      out.push_back(f.restricted_to(keep));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CloneFingerprint clone_closure_bounded(const GeneratorSet& gen, int k,
                                       std::uint64_t max_members) {
  require(!gen.members.empty(), "generator set must be nonempty");
  require(k >= 1 && k <= 4, "closure arity bound must be between 1 and 4");

  CloneFingerprint fp(k);
  std::deque<std::pair<int, std::uint64_t>> queue;
  std::uint64_t inserted = 0;

  auto push = [&](const PartialFunction& f) {
    if (f.arity() > k) return;  // truncation semantics
    std::uint64_t c = f.code();
    if (fp.test_code(f.arity(), c)) return;
    fp.insert_code(f.arity(), c);
    queue.emplace_back(f.arity(), c);
    require_budget(++inserted <= max_members,
                   "clone closure exceeded " + std::to_string(max_members) +
                       " members");
  };

  // Deterministic seed: all projections of arity <= k, then the
  // generators in sorted order.
  for (int n = 1; n <= k; ++n)
    for (int i = 1; i <= n; ++i) push(PartialFunction::projection(n, i));
  std::vector<PartialFunction> gens = gen.members;
  std::sort(gens.begin(), gens.end());
  for (const auto& g : gens) push(g);

  // Functions already combined with every earlier member, by arity.
  std::vector<std::vector<PartialFunction>> done(std::size_t(k) + 1);

  while (!queue.empty()) {
    auto [n, code] = queue.front();
    queue.pop_front();
    PartialFunction f = PartialFunction::from_code(n, code);

    push(zeta(f));
    push(tau(f));
    push(delta(f));
    if (n + 1 <= k) push(nabla(f));

    done[std::size_t(n)].push_back(f);
    for (int m = 1; m <= k; ++m) {
      if (n + m - 1 > k) continue;
      for (const auto& g : done[std::size_t(m)]) {
        push(star(f, g));
        push(star(g, f));
      }
    }
  }
  return fp;
}

}  // namespace pclone
