#include "pclone/definability.hpp"

#include <algorithm>
#include <cmath>

namespace pclone {

namespace {

// Saturating t^s against a cap; throws when the cap is exceeded.
void guard_index_space(int t, int s, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < s; ++i) {
    if (total > cap / std::uint64_t(t)) {
      total = cap + 1;
      break;
    }
    total *= std::uint64_t(t);
  }
  require_budget(total <= cap,
                 "index tuple space " + std::to_string(t) + "^" +
                     std::to_string(s) + " exceeds the budget of " +
                     std::to_string(cap));
}

// Enumerates, in lexicographic order, the 0-based index tuples i in [t]^s
// with forall x in xs: x_i in sigma, pruning a branch as soon as some
// gathered prefix cannot be completed to a sigma member. The first
// position is split across task slots; visit(slot, entries) must touch
// slot-local state only, and callers merge slots in order.
class SurvivorScan {
 public:
  SurvivorScan(const std::vector<std::uint32_t>& xs, int t,
               const Relation& sigma)
      : xs_(xs),
        t_(t),
        s_(sigma.arity()),
        levels_(tuple_prefix_levels(sigma.members(), sigma.arity())) {}

  void run(int threads,
           const std::function<void(int, const std::vector<int>&)>& visit) {
    parallel_chunks(std::uint64_t(t_), threads,
                    [&](std::uint64_t b, std::uint64_t e, int slot) {
                      Frame fr;
                      fr.entries.assign(std::size_t(s_), 0);
                      fr.gathers.assign(std::size_t(s_) + 1,
                                        std::vector<std::uint32_t>(xs_.size(), 0));
                      for (std::uint64_t c = b; c < e; ++c)
                        descend(fr, 0, int(c), slot, visit);
                    });
  }

 private:
  struct Frame {
    std::vector<int> entries;
    std::vector<std::vector<std::uint32_t>> gathers;
  };

  void descend(Frame& fr, int depth, int coord, int slot,
               const std::function<void(int, const std::vector<int>&)>& visit) {
    const Bitset& feasible = levels_[std::size_t(depth) + 1];
    const auto& prev = fr.gathers[std::size_t(depth)];
    auto& cur = fr.gathers[std::size_t(depth) + 1];
    int shift = t_ - 1 - coord;
    for (std::size_t k = 0; k < xs_.size(); ++k) {
      std::uint32_t g = (prev[k] << 1) | ((xs_[k] >> shift) & 1u);
      if (!feasible.test(g)) return;
      cur[k] = g;
    }
    fr.entries[std::size_t(depth)] = coord;
    if (depth + 1 == s_) {
      visit(slot, fr.entries);
      return;
    }
    for (int c = 0; c < t_; ++c) descend(fr, depth + 1, c, slot, visit);
  }

  const std::vector<std::uint32_t>& xs_;
  int t_;
  int s_;
  std::vector<Bitset> levels_;
};

std::uint32_t gather(std::uint32_t y, int t, const std::vector<int>& entries0) {
  std::uint32_t g = 0;
  for (int c : entries0) g = (g << 1) | ((y >> (t - 1 - c)) & 1u);
  return g;
}

}  // namespace

std::string IndexTuple::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries[i]);
  }
  return s + ")";
}

bool is_irredundant(const Relation& rho) {
  require(!rho.empty(), "irredundancy is undefined for the empty relation");
  int t = rho.arity();
  auto xs = rho.tuples();
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) {
      bool identical = true;
      for (auto x : xs)
        if (tuple_bit(x, t, i) != tuple_bit(x, t, j)) {
          identical = false;
          break;
        }
      if (identical) return false;
    }
  for (int i = 0; i < t; ++i) {
    std::uint32_t flip = std::uint32_t(1) << (t - 1 - i);
    bool fictitious = true;
    for (auto x : xs)
      if (!rho.contains(x ^ flip)) {
        fictitious = false;
        break;
      }
    if (fictitious) return false;
  }
  return true;
}

std::vector<IndexTuple> maximal_gamma(const Relation& rho,
                                      const Relation& sigma,
                                      const Budget& budget) {
  int t = rho.arity(), s = sigma.arity();
  guard_index_space(t, s, budget.max_index_tuples);
  auto xs = rho.tuples();
  if (xs.empty()) {
    // Every gather condition holds vacuously; the full index space would
    // be the answer, which the witness budget almost surely rejects.
    guard_index_space(t, s, budget.max_witness_tuples);
  }

  int slots = resolve_threads(budget.threads);
  std::vector<std::vector<IndexTuple>> per_slot(std::size_t(std::max(slots, t)));
  SurvivorScan scan(xs, t, sigma);
  scan.run(budget.threads, [&](int slot, const std::vector<int>& entries) {
    IndexTuple it;
    it.entries.reserve(entries.size());
    for (int c : entries) it.entries.push_back(c + 1);
    per_slot[std::size_t(slot)].push_back(std::move(it));
  });

  std::vector<IndexTuple> out;
  for (auto& chunk : per_slot) {
    out.insert(out.end(), chunk.begin(), chunk.end());
    require_budget(out.size() <= budget.max_witness_tuples,
                   "maximal constraint set exceeds the witness budget of " +
                       std::to_string(budget.max_witness_tuples) + " tuples");
  }
  return out;
}

DefinabilityVerdict qfpp_definable(const Relation& rho,
                                   const std::vector<Relation>& sigma,
                                   const Budget& budget) {
  require(is_irredundant(rho), "target relation must be irredundant");
  int t = rho.arity();
  auto xs = rho.tuples();
  std::uint32_t universe = std::uint32_t(1) << t;

  std::vector<std::uint32_t> nonmembers;
  for (std::uint32_t y = 0; y < universe; ++y)
    if (!rho.contains(y)) nonmembers.push_back(y);

  Bitset killed(universe);
  std::uint32_t coverage = 0;  // bit c = coordinate c+1 touched
  DefinabilityVerdict v;
  v.witness.resize(sigma.size());
  v.survivors_per_source.assign(sigma.size(), 0);

  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const Relation& sg = sigma[k];
    int s = sg.arity();
    guard_index_space(t, s, budget.max_index_tuples);

    struct Slot {
      Bitset killed;
      std::vector<std::uint32_t> alive;
      std::vector<IndexTuple> survivors;
      std::uint64_t count = 0;
      std::uint32_t coverage = 0;
    };
    int slots = std::max(resolve_threads(budget.threads), t);
    std::vector<Slot> slot_state(static_cast<std::size_t>(slots));
    for (auto& sl : slot_state) {
      sl.killed = Bitset(universe);
      for (auto y : nonmembers)
        if (!killed.test(y)) sl.alive.push_back(y);
    }

    SurvivorScan scan(xs, t, sg);
    scan.run(budget.threads, [&](int slot, const std::vector<int>& entries) {
      Slot& sl = slot_state[std::size_t(slot)];
      sl.count += 1;
      for (int c : entries) sl.coverage |= std::uint32_t(1) << c;
      if (sl.survivors.size() < budget.max_witness_tuples) {
        IndexTuple it;
        it.entries.reserve(entries.size());
        for (int c : entries) it.entries.push_back(c + 1);
        sl.survivors.push_back(std::move(it));
      }
      for (std::size_t a = 0; a < sl.alive.size();) {
        std::uint32_t y = sl.alive[a];
        if (!sg.contains(gather(y, t, entries))) {
          sl.killed.set(y);
          sl.alive[a] = sl.alive.back();
          sl.alive.pop_back();
        } else {
          ++a;
        }
      }
    });

    std::uint64_t total = 0;
    for (auto& sl : slot_state) {
      killed |= sl.killed;
      coverage |= sl.coverage;
      total += sl.count;
      v.witness[k].insert(v.witness[k].end(), sl.survivors.begin(),
                          sl.survivors.end());
    }
    require_budget(total <= budget.max_witness_tuples,
                   "maximal constraint set for source " + std::to_string(k + 1) +
                       " exceeds the witness budget (" + std::to_string(total) +
                       " tuples)");
    v.survivors_per_source[k] = total;
  }

  std::uint32_t full_coverage = (t == 32) ? ~0u : ((std::uint32_t(1) << t) - 1);
  bool covered = coverage == full_coverage;
  std::optional<std::uint32_t> extra;
  for (auto y : nonmembers)
    if (!killed.test(y)) {
      extra = y;
      break;
    }

  if (!extra.has_value() && covered) {
    v.definable = true;
    // Witness soundness, asserted on every call: the stored constraints
    // alone must reconstruct the target and cover all coordinates.
    std::uint32_t wcover = 0;
    for (const auto& per_sigma : v.witness)
      for (const auto& it : per_sigma)
        for (int e : it.entries) wcover |= std::uint32_t(1) << (e - 1);
    require(wcover == full_coverage, "internal: witness lost coverage");
    for (std::uint32_t y = 0; y < universe; ++y) {
      bool in_conj = true;
      for (std::size_t k = 0; k < sigma.size() && in_conj; ++k)
        for (const auto& it : v.witness[k]) {
          std::uint32_t g = 0;
          for (int e : it.entries)
            g = (g << 1) | ((y >> (t - e)) & 1u);
          if (!sigma[k].contains(g)) {
            in_conj = false;
            break;
          }
        }
      require(in_conj == rho.contains(y),
              "internal: witness conjunction mismatch at tuple " +
                  tuple_to_string(y, t));
    }
  } else {
    // For an irredundant target, equality of the conjunction forces
    // coverage (an uncovered coordinate would be fictitious), so a
    // missing extra tuple implies a coverage defect was found.
    require(extra.has_value() || !covered,
            "internal: covered equality flagged not definable");
    v.definable = false;
    for (int c = 0; c < t; ++c)
      if (!(coverage & (std::uint32_t(1) << c)))
        v.defect.uncovered_coordinates.push_back(c + 1);
    v.defect.extra_tuple = extra;
    for (auto& w : v.witness) w.clear();
  }
  return v;
}

bool ppol_leq(const std::vector<Relation>& sigma1,
              const std::vector<Relation>& sigma2, const Budget& budget) {
  for (const auto& r : sigma1)
    require(is_irredundant(r), "source relation " + r.to_string() +
                                   " is not irredundant");
  for (const auto& r : sigma2)
    if (!qfpp_definable(r, sigma1, budget).definable) return false;
  return true;
}

namespace {

Relation drop_coordinate(const Relation& rho, int pos) {
  int t = rho.arity();
  Relation out(t - 1);
  std::uint32_t low_mask = (std::uint32_t(1) << (t - 1 - pos)) - 1;
  rho.members().for_each_set([&](std::size_t x) {
    std::uint32_t upper = std::uint32_t(x) >> (t - pos);
    std::uint32_t lower = std::uint32_t(x) & low_mask;
    out.add((upper << (t - 1 - pos)) | lower);
  });
  return out;
}

}  // namespace

ReducedRelation reduce_relation(const Relation& rho) {
  require(!rho.empty(), "cannot reduce the empty relation");
  ReducedRelation r{rho, {}, false};
  for (int i = 1; i <= rho.arity(); ++i) r.kept_coordinates.push_back(i);

  bool progress = true;
  while (progress && !is_irredundant(r.core)) {
    progress = false;
    int t = r.core.arity();
    auto xs = r.core.tuples();
    int drop = -1;
    for (int i = 0; i < t && drop < 0; ++i)
      for (int j = i + 1; j < t && drop < 0; ++j) {
        bool identical = true;
        for (auto x : xs)
          if (tuple_bit(x, t, i) != tuple_bit(x, t, j)) {
            identical = false;
            break;
          }
        if (identical) drop = j;
      }
    for (int i = 0; i < t && drop < 0; ++i) {
      std::uint32_t flip = std::uint32_t(1) << (t - 1 - i);
      bool fictitious = true;
      for (auto x : xs)
        if (!r.core.contains(std::uint32_t(x) ^ flip)) {
          fictitious = false;
          break;
        }
      if (fictitious) drop = i;
    }
    if (drop >= 0) {
      require(t >= 2, "relation reduces to arity 0; nothing to decide");
      r.core = drop_coordinate(r.core, drop);
      r.kept_coordinates.erase(r.kept_coordinates.begin() + drop);
      r.changed = true;
      progress = true;
    }
  }
  require(is_irredundant(r.core), "reduction failed to reach an irredundant core");
  return r;
}

}  // namespace pclone
