#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pa/chains.hpp"
#include "pa/common.hpp"
#include "pa/pathway.hpp"

namespace pa {

template <System S>
std::vector<Pathway<typename S::object_type>> sample_pathways(
    const S& sys, const typename S::object_type& x, const SearchConfig& cfg = {});

template <System S>
std::vector<Pathway<typename S::object_type>> sample_pathways(
    const S& sys, const std::vector<typename S::object_type>& targets,
    const SearchConfig& cfg = {});

namespace detail {

inline std::uint64_t ceil_log2_ratio(std::uint64_t want, std::uint64_t have) {
  // smallest r with have * 2^r >= want
  if (have >= want) return 0;
  std::uint64_t q = (want + have - 1) / have;
  return static_cast<std::uint64_t>(std::bit_width(q - 1));
}

// Admissible lower bound on the index of one object.  exact_small pays for
// exact chain lengths on small sizes; the sampled mode sticks to the closed
// form so its cost stays proportional to the sampling itself.
template <System S>
std::uint64_t root_lower_bound(const S& sys, const typename S::object_type& x,
                               bool exact_small = true) {
  if constexpr (HasRootLowerBound<S>) {
    return std::max<std::uint64_t>(1, sys.root_lower_bound(x));
  } else if constexpr (HasSize<S>) {
    std::uint64_t n = sys.size(x);
    if (n <= 1) return 1;
    std::uint64_t lb;
    if (n <= 256 && exact_small) {
      lb = chains::optimal_chain_length_cached(n);
    } else if (exact_small) {
      lb = std::max(chains::schonhage_lower_bound(n), ceil_log2_ratio(n, 1));
    } else {
      lb = chains::schonhage_lower_bound(n);
    }
    return std::max<std::uint64_t>(1, lb);
  } else {
    return 1;
  }
}

template <class Obj, class KeyFn>
Pathway<Obj> drop_unused_basis(const Pathway<Obj>& p,
                               const std::unordered_set<std::string>& keep_keys,
                               KeyFn key) {
  std::vector<bool> used(p.basis_objects.size(), false);
  for (const auto& st : p.steps) {
    if (st.left < 0) used[static_cast<std::size_t>(-st.left - 1)] = true;
    if (st.right < 0) used[static_cast<std::size_t>(-st.right - 1)] = true;
  }
  for (std::size_t k = 0; k < p.basis_objects.size(); ++k)
    if (keep_keys.count(key(p.basis_objects[k]))) used[k] = true;

  Pathway<Obj> out;
  std::vector<std::int64_t> remap(p.basis_objects.size(), 0);
  for (std::size_t k = 0; k < p.basis_objects.size(); ++k) {
    if (!used[k]) continue;
    out.basis_objects.push_back(p.basis_objects[k]);
    remap[k] = -static_cast<std::int64_t>(out.basis_objects.size());
  }
  for (const auto& st : p.steps) {
    Step<Obj> ns = st;
    if (ns.left < 0) ns.left = remap[static_cast<std::size_t>(-ns.left - 1)];
    if (ns.right < 0) ns.right = remap[static_cast<std::size_t>(-ns.right - 1)];
    out.steps.push_back(std::move(ns));
  }
  return out;
}

// Keep only steps that feed the final step or produce a kept target.
template <class Obj, class KeyFn>
Pathway<Obj> trim_to_targets(const Pathway<Obj>& p,
                             const std::unordered_set<std::string>& target_keys,
                             KeyFn key) {
  // parents precede children, so one reverse sweep reaches all ancestors
  std::vector<bool> keep(p.steps.size(), false);
  for (std::size_t s = p.steps.size(); s-- > 0;) {
    if (target_keys.count(key(p.steps[s].product))) keep[s] = true;
    if (!keep[s]) continue;
    const auto& st = p.steps[s];
    if (st.left > 0) keep[static_cast<std::size_t>(st.left - 1)] = true;
    if (st.right > 0) keep[static_cast<std::size_t>(st.right - 1)] = true;
  }
  Pathway<Obj> mid;
  mid.basis_objects = p.basis_objects;
  std::vector<std::int64_t> remap(p.steps.size(), 0);
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    if (!keep[s]) continue;
    Step<Obj> ns = p.steps[s];
    if (ns.left > 0) ns.left = remap[static_cast<std::size_t>(ns.left - 1)];
    if (ns.right > 0) ns.right = remap[static_cast<std::size_t>(ns.right - 1)];
    mid.steps.push_back(std::move(ns));
    remap[s] = static_cast<std::int64_t>(mid.steps.size());
  }
  return drop_unused_basis(mid, target_keys, key);
}

template <System S>
class PathBuilder {
 public:
  using Obj = typename S::object_type;
  explicit PathBuilder(const S& sys) : sys_(sys) {}

  bool has(const std::string& key) const { return ref_.count(key) != 0; }

  std::int64_t add_basis(const Obj& b) {
    std::string k = sys_.key(b);
    auto it = ref_.find(k);
    if (it != ref_.end()) return it->second;
    path_.basis_objects.push_back(b);
    std::int64_t r = -static_cast<std::int64_t>(path_.basis_objects.size());
    ref_.emplace(std::move(k), r);
    return r;
  }

  std::int64_t add_step(const Obj& u, const Obj& v, const Obj& product) {
    std::string k = sys_.key(product);
    auto it = ref_.find(k);
    if (it != ref_.end()) return it->second;
    Step<Obj> st;
    st.left = ref_.at(sys_.key(u));
    st.right = ref_.at(sys_.key(v));
    st.product = product;
    path_.steps.push_back(std::move(st));
    std::int64_t r = static_cast<std::int64_t>(path_.steps.size());
    ref_.emplace(std::move(k), r);
    return r;
  }

  Pathway<Obj>&& take() { return std::move(path_); }
  std::uint64_t length() const { return path_.steps.size(); }

 private:
  const S& sys_;
  Pathway<Obj> path_;
  std::unordered_map<std::string, std::int64_t> ref_;
};

// Decomposition-tree upper bound.  Recursively picks the cheapest split of
// each object; shared sub-objects are counted once at materialization.
template <System S>
  requires HasSplits<S>
class TreeBuilder {
 public:
  using Obj = typename S::object_type;
  explicit TreeBuilder(const S& sys) : sys_(sys) {
    for (const auto& b : sys_.basis()) basis_keys_.insert(sys_.key(b));
  }

  std::uint64_t cost(const Obj& x) {
    std::string k = sys_.key(x);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second.cost;
    if (basis_keys_.count(k)) {
      memo_.emplace(k, Entry{0, std::nullopt});
      return 0;
    }
    auto splits = sys_.splits(x);
    if (splits.empty())
      throw std::invalid_argument("object admits no decomposition");
    Entry best{std::numeric_limits<std::uint64_t>::max(), std::nullopt};
    for (auto& [u, v] : splits) {
      std::uint64_t cu = cost(u);
      std::uint64_t cv = sys_.key(u) == sys_.key(v) ? 0 : cost(v);
      std::uint64_t c = cu + cv + 1;
      if (c < best.cost) best = Entry{c, std::make_pair(u, v)};
    }
    memo_.insert_or_assign(k, best);
    return best.cost;
  }

  void build(const Obj& x, PathBuilder<S>& pb) {
    std::string k = sys_.key(x);
    if (pb.has(k)) return;
    cost(x);
    const Entry& e = memo_.at(k);
    if (!e.split) {
      pb.add_basis(x);
      return;
    }
    build(e.split->first, pb);
    build(e.split->second, pb);
    pb.add_step(e.split->first, e.split->second, x);
  }

 private:
  struct Entry {
    std::uint64_t cost;
    std::optional<std::pair<Obj, Obj>> split;
  };
  const S& sys_;
  std::unordered_map<std::string, Entry> memo_;
  std::unordered_set<std::string> basis_keys_;
};

template <System S>
Pathway<typename S::object_type> tree_pathway(
    const S& sys, const std::vector<typename S::object_type>& targets) {
  if constexpr (HasSplits<S>) {
    TreeBuilder<S> tb(sys);
    PathBuilder<S> pb(sys);
    for (const auto& t : targets) tb.build(t, pb);
    return pb.take();
  } else {
    throw std::invalid_argument("system provides no decomposition hook");
  }
}

// Exhaustive iterative-deepening search over pathways.  States are
// deduplicated by the set of objects built so far; each deepening level is
// pruned with the addition-chain growth bound on the remaining steps.
template <System S>
class ExhaustiveSearch {
 public:
  using Obj = typename S::object_type;

  ExhaustiveSearch(const S& sys, const SearchConfig& cfg) : sys_(sys), cfg_(cfg) {}

  void set_targets(const std::vector<Obj>& targets) {
    goal_keys_.clear();
    goal_sizes_.clear();
    max_target_size_ = 0;
    auto basis_keys = basis_key_set(sys_);
    for (const auto& t : targets) {
      std::string k = sys_.key(t);
      if (basis_keys.count(k)) continue;  // already present in the start pool
      if (goal_keys_.count(k)) continue;
      goal_keys_.insert(k);
      if constexpr (HasSize<S>) {
        std::uint64_t sz = sys_.size(t);
        goal_sizes_.emplace(k, sz);
        max_target_size_ = std::max(max_target_size_, sz);
      }
    }
    if constexpr (HasFragments<S>) {
      use_fragments_ = true;
      fragment_keys_.clear();
      for (const auto& t : targets)
        for (const auto& f : sys_.fragments(t)) fragment_keys_.insert(sys_.key(f));
      for (const auto& t : targets) fragment_keys_.insert(sys_.key(t));
    }
  }

  // Runs one depth iteration.  Returns the witness if the goal set was built.
  std::optional<Pathway<Obj>> run(std::uint64_t depth) {
    reset_pool();
    visited_.clear();
    if (dfs(depth)) {
      Pathway<Obj> p;
      p.basis_objects.assign(pool_.begin(),
                             pool_.begin() + static_cast<std::ptrdiff_t>(nb_));
      p.steps = steps_;
      std::unordered_set<std::string> keep(goal_keys_.begin(), goal_keys_.end());
      return drop_unused_basis(p, keep, [&](const Obj& o) { return sys_.key(o); });
    }
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void reset_pool() {
    pool_.clear();
    pool_keys_.clear();
    pool_set_.clear();
    steps_.clear();
    unbuilt_ = goal_keys_.size();
    for (const auto& b : sys_.basis()) {
      Obj cb = sys_.canonical(b);
      std::string k = sys_.key(cb);
      if (pool_set_.count(k)) continue;
      if (use_fragments_ && !fragment_keys_.count(k)) continue;
      pool_.push_back(std::move(cb));
      pool_keys_.push_back(k);
      pool_set_.insert(std::move(k));
    }
    nb_ = pool_.size();
    max_size_ = 0;
    if constexpr (HasSize<S>) {
      for (const auto& b : pool_) max_size_ = std::max(max_size_, sys_.size(b));
    }
  }

  std::uint64_t bound_to_go() const {
    std::uint64_t bound = unbuilt_;
    if constexpr (HasSize<S>) {
      for (const auto& [k, sz] : goal_sizes_) {
        if (pool_set_.count(k)) continue;
        bound = std::max(bound, ceil_log2_ratio(sz, std::max<std::uint64_t>(
                                                         max_size_, 1)));
      }
    }
    return bound;
  }

  std::string state_key() const {
    std::vector<std::string> prods(pool_keys_.begin() +
                                       static_cast<std::ptrdiff_t>(nb_),
                                   pool_keys_.end());
    std::sort(prods.begin(), prods.end());
    std::string out;
    for (auto& p : prods) {
      out += std::to_string(p.size());  // length prefix keeps keys unambiguous
      out += ':';
      out += p;
    }
    return out;
  }

  bool dfs(std::uint64_t remaining) {
    if (unbuilt_ == 0) return true;
    if (remaining == 0) return false;
    if (remaining < bound_to_go()) return false;
    if (++nodes_ > cfg_.node_budget)
      throw BudgetExceeded("search exceeded its node budget", 0);
    if (cfg_.dedup) {
      std::string sk = state_key();
      auto it = visited_.find(sk);
      if (it != visited_.end() && it->second >= remaining) return false;
      if (visited_.size() < kTableCap || it != visited_.end())
        visited_.insert_or_assign(std::move(sk), remaining);
    }

    const std::size_t n = pool_.size();
    for (std::size_t j = n; j-- > 0;) {
      for (std::size_t i = j + 1; i-- > 0;) {
        if constexpr (HasSize<S>) {
          if (max_target_size_ > 0 &&
              sys_.size(pool_[i]) + sys_.size(pool_[j]) > max_target_size_)
            continue;
        }
        auto products = sys_.compose(pool_[i], pool_[j]);
        order_products(products);
        for (auto& prod : products) {
          std::string k = sys_.key(prod);
          if (use_fragments_ && !fragment_keys_.count(k)) continue;
          std::uint64_t sz = 0;
          if constexpr (HasSize<S>) {
            sz = sys_.size(prod);
            if (sz > max_target_size_ && max_target_size_ > 0) continue;
            if (sz < max_size_) continue;  // minimal pathways reorder by size
          }
          if (pool_set_.count(k)) continue;

          std::uint64_t saved_max = max_size_;
          if constexpr (HasSize<S>) max_size_ = std::max(max_size_, sz);
          bool was_goal = goal_keys_.count(k) != 0;
          if (was_goal) --unbuilt_;
          pool_.push_back(prod);
          pool_keys_.push_back(k);
          pool_set_.insert(k);
          steps_.push_back(Step<Obj>{ref_of(i), ref_of(j), std::move(prod)});

          if (dfs(remaining - 1)) return true;

          steps_.pop_back();
          pool_set_.erase(k);
          pool_keys_.pop_back();
          pool_.pop_back();
          if (was_goal) ++unbuilt_;
          max_size_ = saved_max;
        }
      }
    }
    return false;
  }

  std::int64_t ref_of(std::size_t pool_slot) const {
    if (pool_slot < nb_) return -static_cast<std::int64_t>(pool_slot) - 1;
    return static_cast<std::int64_t>(pool_slot - nb_) + 1;
  }

  void order_products(std::vector<Obj>& products) const {
    if constexpr (HasSize<S>) {
      std::sort(products.begin(), products.end(), [&](const Obj& a, const Obj& b) {
        std::uint64_t sa = sys_.size(a), sb = sys_.size(b);
        if (sa != sb) return sa > sb;
        return sys_.key(a) < sys_.key(b);
      });
    } else {
      std::sort(products.begin(), products.end(), [&](const Obj& a, const Obj& b) {
        return sys_.key(a) < sys_.key(b);
      });
    }
  }

  static constexpr std::size_t kTableCap = 1u << 22;

  const S& sys_;
  SearchConfig cfg_;
  std::vector<Obj> pool_;
  std::vector<std::string> pool_keys_;
  std::unordered_set<std::string> pool_set_;
  std::vector<Step<Obj>> steps_;
  std::size_t nb_ = 0;
  std::unordered_set<std::string> goal_keys_;
  std::unordered_map<std::string, std::uint64_t> goal_sizes_;
  std::uint64_t max_target_size_ = 0;
  bool use_fragments_ = false;
  std::unordered_set<std::string> fragment_keys_;
  std::unordered_map<std::string, std::uint64_t> visited_;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_size_ = 0;
  std::uint64_t unbuilt_ = 0;
};

template <System S>
IndexResult<typename S::object_type> solve(
    const S& sys, std::vector<typename S::object_type> targets,
    const SearchConfig& cfg,
    const Pathway<typename S::object_type>* seed_upper = nullptr) {
  using Obj = typename S::object_type;
  if (targets.empty()) throw std::invalid_argument("no targets given");
  for (auto& t : targets) t = sys.canonical(t);
  {
    std::unordered_set<std::string> seen;
    std::vector<Obj> dd;
    for (auto& t : targets)
      if (seen.insert(sys.key(t)).second) dd.push_back(std::move(t));
    targets = std::move(dd);
  }
  auto basis_keys = basis_key_set(sys);

  std::vector<Obj> hard;  // targets that need at least one step
  for (const auto& t : targets)
    if (!basis_keys.count(sys.key(t))) hard.push_back(t);

  IndexResult<Obj> res;
  if (hard.empty()) {
    res.index = 0;
    res.lower_bound = 0;
    res.upper_bound = 0;
    res.exact = true;
    res.witness.basis_objects = targets;
    return res;
  }

  const bool exact_small = cfg.algorithm != Algorithm::sampled;
  std::uint64_t lb = hard.size();
  for (const auto& t : hard)
    lb = std::max(lb, root_lower_bound(sys, t, exact_small));

  std::optional<Pathway<Obj>> upper;
  if (seed_upper) {
    upper = *seed_upper;
  } else if constexpr (HasSplits<S>) {
    upper = tree_pathway(sys, targets);
  }
  std::optional<std::uint64_t> ub;
  if (upper) ub = pathway_length(*upper);

  auto finish = [&](std::uint64_t index, Pathway<Obj> witness,
                    bool exact) -> IndexResult<Obj> {
    res.index = index;
    res.lower_bound = lb;
    res.upper_bound = index;
    res.exact = exact;
    res.witness = std::move(witness);
    return res;
  };

  if (cfg.algorithm == Algorithm::tree) {
    if (!upper)
      throw std::invalid_argument("tree search needs a decomposition hook");
    return finish(*ub, std::move(*upper), lb == *ub);
  }

  if (cfg.algorithm == Algorithm::sampled) {
    auto samples = sample_pathways(sys, targets, cfg);
    const Pathway<Obj>* best = nullptr;
    for (const auto& s : samples)
      if (!best || pathway_length(s) < pathway_length(*best)) best = &s;
    if (!best) throw BudgetExceeded("sampling found no pathway", lb, ub);
    std::uint64_t blen = pathway_length(*best);
    if (cfg.max_index && blen > *cfg.max_index) {
      std::uint64_t known_ub = ub ? std::min(*ub, blen) : blen;
      throw BudgetExceeded("every sampled pathway exceeds the index cap", lb,
                           known_ub);
    }
    return finish(blen, *best, blen == lb);
  }

  // exhaustive
  if (ub && lb == *ub) return finish(*ub, std::move(*upper), true);

  std::uint64_t depth_cap = std::numeric_limits<std::uint64_t>::max();
  if (ub) depth_cap = *ub - 1;
  if (cfg.max_index) depth_cap = std::min(depth_cap, *cfg.max_index);

  ExhaustiveSearch<S> search(sys, cfg);
  try {
    search.set_targets(targets);
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(e.what(), std::max(lb, e.lower_bound), ub);
  }
  for (std::uint64_t depth = lb; depth <= depth_cap; ++depth) {
    std::optional<Pathway<Obj>> found;
    try {
      found = search.run(depth);
    } catch (const BudgetExceeded& e) {
      // depths below the current one are exhausted, so the index is at least
      // the depth that ran out of budget
      throw BudgetExceeded(e.what(), std::max(depth, e.lower_bound), ub);
    }
    if (found) return finish(depth, std::move(*found), true);
  }
  if (ub && depth_cap != std::numeric_limits<std::uint64_t>::max() &&
      depth_cap + 1 >= *ub)
    return finish(*ub, std::move(*upper), true);
  std::uint64_t proven = lb;
  if (depth_cap != std::numeric_limits<std::uint64_t>::max() && depth_cap >= lb)
    proven = depth_cap + 1;
  throw BudgetExceeded("search bound exceeded without finding a pathway", proven,
                       ub);
}

// Random pathways ending at x.  With rederive_target the final step may
// rebuild x even when x is a basis object or already in the pool, which is
// what the measure-consistency probe needs.
template <System S>
std::vector<Pathway<typename S::object_type>> sample_raw(
    const S& sys, const typename S::object_type& target, const SearchConfig& cfg,
    bool rederive_target, bool trim) {
  using Obj = typename S::object_type;
  Obj x = sys.canonical(target);
  const std::string xkey = sys.key(x);
  auto basis_keys = basis_key_set(sys);
  bool x_is_basis = basis_keys.count(xkey) != 0;

  std::uint64_t xsize = 0;
  if constexpr (HasSize<S>) xsize = sys.size(x);

  std::unordered_set<std::string> fragment_keys;
  bool use_fragments = false;
  if constexpr (HasFragments<S>) {
    use_fragments = true;
    for (const auto& f : sys.fragments(x)) fragment_keys.insert(sys.key(f));
    fragment_keys.insert(xkey);
  }

  std::vector<Obj> start;
  {
    std::unordered_set<std::string> seen;
    for (const auto& b : sys.basis()) {
      Obj cb = sys.canonical(b);
      std::string k = sys.key(cb);
      if (!seen.insert(k).second) continue;
      if (use_fragments && !fragment_keys.count(k)) continue;
      start.push_back(std::move(cb));
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<Pathway<Obj>> out;
  std::unordered_set<std::string> signatures;

  auto signature = [&](const Pathway<Obj>& p) {
    std::string s;
    for (const auto& b : p.basis_objects) {
      s += sys.key(b);
      s += ';';
    }
    s += '|';
    for (const auto& st : p.steps) {
      s += std::to_string(st.left);
      s += ',';
      s += std::to_string(st.right);
      s += '>';
      s += sys.key(st.product);
      s += ';';
    }
    return s;
  };

  const std::uint64_t attempts = cfg.sample_count * 40 + 40;
  for (std::uint64_t attempt = 0;
       attempt < attempts && out.size() < cfg.sample_count; ++attempt) {
    if (x_is_basis && (!rederive_target || (rng() & 1))) {
      Pathway<Obj> p;
      p.basis_objects.push_back(x);
      if (signatures.insert(signature(p)).second) out.push_back(std::move(p));
      if (!rederive_target) continue;
      if (out.size() >= cfg.sample_count) break;
      continue;
    }

    std::vector<Obj> pool = start;
    std::vector<std::string> keys;
    std::unordered_set<std::string> pool_set;
    for (const auto& b : pool) {
      keys.push_back(sys.key(b));
      pool_set.insert(keys.back());
    }
    std::size_t nb = pool.size();
    std::vector<Step<Obj>> steps;
    bool complete = false;

    std::uint64_t step_cap = xsize ? 4 * xsize + 8 : 512;
    std::uint64_t tries = 16 * step_cap;
    while (tries-- > 0 && steps.size() < step_cap) {
      std::size_t i = static_cast<std::size_t>(rng() % pool.size());
      std::size_t j = static_cast<std::size_t>(rng() % pool.size());
      if constexpr (HasSize<S>) {
        if (xsize && sys.size(pool[i]) + sys.size(pool[j]) > xsize) continue;
      }
      auto products = sys.compose(pool[i], pool[j]);
      std::vector<Obj> usable;
      for (auto& prod : products) {
        std::string k = sys.key(prod);
        if (use_fragments && !fragment_keys.count(k)) continue;
        if constexpr (HasSize<S>) {
          if (sys.size(prod) > xsize) continue;
        }
        bool is_target = k == xkey;
        if (pool_set.count(k) && !is_target) continue;
        usable.push_back(std::move(prod));
      }
      if (usable.empty()) continue;
      Obj chosen = usable[static_cast<std::size_t>(rng() % usable.size())];
      std::string ck = sys.key(chosen);
      auto ref = [&](std::size_t slot) -> std::int64_t {
        if (slot < nb) return -static_cast<std::int64_t>(slot) - 1;
        return static_cast<std::int64_t>(slot - nb) + 1;
      };
      steps.push_back(Step<Obj>{ref(i), ref(j), chosen});
      if (ck == xkey) {
        complete = true;
        break;
      }
      pool.push_back(std::move(chosen));
      keys.push_back(ck);
      pool_set.insert(std::move(ck));
    }
    if (!complete) continue;

    Pathway<Obj> p;
    p.basis_objects.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(nb));
    p.steps = std::move(steps);
    if (trim) {
      std::unordered_set<std::string> keep{xkey};
      p = trim_to_targets(p, keep, [&](const Obj& o) { return sys.key(o); });
    }
    if (signatures.insert(signature(p)).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

template <System S>
IndexResult<typename S::object_type> assembly_index(
    const S& sys, const typename S::object_type& x, const SearchConfig& cfg = {},
    const Pathway<typename S::object_type>* seed_upper = nullptr) {
  std::vector<typename S::object_type> targets{x};
  return detail::solve(sys, std::move(targets), cfg, seed_upper);
}

template <System S>
IndexResult<typename S::object_type> co_assembly_index(
    const S& sys, const std::vector<typename S::object_type>& targets,
    const SearchConfig& cfg = {}) {
  return detail::solve(sys, targets, cfg);
}

// Upper-bound pathway from recursive decomposition; best split per object,
// shared sub-objects counted once.  Not every pathway is considered, so the
// result is exact only when it meets the lower bound.
template <System S>
  requires HasSplits<S>
IndexResult<typename S::object_type> tree_upper_bound(
    const S& sys, const typename S::object_type& target) {
  using Obj = typename S::object_type;
  Obj x = sys.canonical(target);
  auto basis_keys = detail::basis_key_set(sys);
  IndexResult<Obj> res;
  if (basis_keys.count(sys.key(x))) {
    res.exact = true;
    res.witness.basis_objects.push_back(std::move(x));
    return res;
  }
  Pathway<Obj> p = detail::tree_pathway(sys, std::vector<Obj>{x});
  res.index = pathway_length(p);
  res.lower_bound = detail::root_lower_bound(sys, x);
  res.upper_bound = res.index;
  res.exact = res.index == res.lower_bound;
  res.witness = std::move(p);
  return res;
}

template <System S>
std::vector<Pathway<typename S::object_type>> sample_pathways(
    const S& sys, const typename S::object_type& x, const SearchConfig& cfg) {
  return detail::sample_raw(sys, x, cfg, /*rederive_target=*/false, /*trim=*/true);
}

// Multi-target sampling used by the sampled co-assembly mode: samples each
// target and merges pathways with shared sub-objects counted once.
template <System S>
std::vector<Pathway<typename S::object_type>> sample_pathways(
    const S& sys, const std::vector<typename S::object_type>& targets,
    const SearchConfig& cfg) {
  using Obj = typename S::object_type;
  if (targets.size() == 1) return sample_pathways(sys, targets[0], cfg);
  std::vector<std::vector<Pathway<Obj>>> per;
  for (const auto& t : targets) {
    per.push_back(sample_pathways(sys, t, cfg));
    if (per.back().empty()) return {};
  }
  std::size_t count = per[0].size();
  for (const auto& v : per) count = std::min(count, v.size());
  std::vector<Pathway<Obj>> out;
  for (std::size_t s = 0; s < count; ++s) {
    detail::PathBuilder<S> pb(sys);
    for (const auto& v : per) {
      const Pathway<Obj>& p = v[s];
      for (const auto& b : p.basis_objects) pb.add_basis(b);
      for (const auto& st : p.steps) {
        const Obj& left_obj =
            st.left < 0 ? p.basis_objects[static_cast<std::size_t>(-st.left - 1)]
                        : p.steps[static_cast<std::size_t>(st.left - 1)].product;
        const Obj& right_obj =
            st.right < 0
                ? p.basis_objects[static_cast<std::size_t>(-st.right - 1)]
                : p.steps[static_cast<std::size_t>(st.right - 1)].product;
        pb.add_step(left_obj, right_obj, st.product);
      }
    }
    out.push_back(pb.take());
  }
  return out;
}

// Falsifiable probe for unique decomposability: sample pathways ending at x
// and require every declared measure to take one value at every occurrence
// of x.
template <System S>
  requires HasMeasures<S>
bool verify_measure_consistency(const S& sys, const typename S::object_type& target,
                                std::uint64_t trials = 64,
                                std::uint64_t seed = kDefaultSeed) {
  using Obj = typename S::object_type;
  Obj x = sys.canonical(target);
  const std::string xkey = sys.key(x);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.sample_count = trials;
  auto samples =
      detail::sample_raw(sys, x, cfg, /*rederive_target=*/true, /*trim=*/false);
  if (samples.empty()) return true;  // nothing to compare

  auto measures = sys.measures();
  for (const auto& m : measures) {
    bool have = false;
    double value = 0.0;
    for (const auto& p : samples) {
      std::vector<double> vals = evaluate_measure(sys, m, p);
      std::size_t nb = p.basis_objects.size();
      for (std::size_t k = 0; k < nb; ++k) {
        if (sys.key(p.basis_objects[k]) != xkey) continue;
        if (!have) {
          have = true;
          value = vals[k];
        } else if (std::abs(vals[k] - value) > 1e-9) {
          return false;
        }
      }
      for (std::size_t s = 0; s < p.steps.size(); ++s) {
        if (sys.key(p.steps[s].product) != xkey) continue;
        if (!have) {
          have = true;
          value = vals[nb + s];
        } else if (std::abs(vals[nb + s] - value) > 1e-9) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace pa
