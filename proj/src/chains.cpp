#include "pa/chains.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace pa::chains {

namespace {

std::uint64_t ceil_log2(std::uint64_t n) {
  // smallest k with 2^k >= n
  if (n <= 1) return 0;
  return static_cast<std::uint64_t>(std::bit_width(n - 1));
}

struct ChainSearch {
  std::uint64_t n;
  std::uint64_t node_budget;
  std::uint64_t nodes = 0;
  std::vector<std::uint64_t> chain{1};

  bool dfs(std::uint64_t remaining) {
    std::uint64_t last = chain.back();
    if (last == n) return true;
    if (remaining == 0) return false;
    if (++nodes > node_budget)
      throw BudgetExceeded("addition-chain search exceeded its node budget",
                           chain.size());
    // remaining steps can at most double the largest element each time
    if (remaining < 64 && (last << remaining) < n) return false;

    // candidate sums of two earlier entries, strictly ascending chains only
    std::vector<std::uint64_t> cands;
    for (std::size_t j = chain.size(); j-- > 0;) {
      for (std::size_t i = j + 1; i-- > 0;) {
        std::uint64_t s = chain[i] + chain[j];
        if (s > last && s <= n) cands.push_back(s);
      }
    }
    std::sort(cands.begin(), cands.end(), std::greater<>());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (std::uint64_t s : cands) {
      chain.push_back(s);
      if (dfs(remaining - 1)) return true;
      chain.pop_back();
    }
    return false;
  }
};

}  // namespace

std::uint64_t schonhage_lower_bound(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("chain target must be positive");
  double v = std::log2(static_cast<double>(n)) +
             std::log2(static_cast<double>(std::popcount(n))) - 2.13;
  if (v <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ceil(v));
}

OptimalChain optimal_chain(std::uint64_t n, std::uint64_t node_budget) {
  if (n == 0) throw std::invalid_argument("chain target must be positive");
  if (n > kMaxExactChainTarget)
    throw BudgetExceeded("chain target beyond the exact-search limit",
                         schonhage_lower_bound(n));
  OptimalChain out;
  if (n == 1) {
    out.length = 0;
    out.witness.values = {1};
    return out;
  }
  std::uint64_t lb = std::max(schonhage_lower_bound(n), ceil_log2(n));
  // binary method gives a guaranteed upper bound
  std::uint64_t ub = static_cast<std::uint64_t>(std::bit_width(n)) - 1 +
                     static_cast<std::uint64_t>(std::popcount(n)) - 1;
  for (std::uint64_t depth = lb; depth <= ub; ++depth) {
    ChainSearch search{n, node_budget};
    if (search.dfs(depth)) {
      out.length = depth;
      out.witness.values = search.chain;
      return out;
    }
  }
  throw std::logic_error("binary-method bound violated in chain search");
}

std::uint64_t optimal_chain_length(std::uint64_t n) {
  return optimal_chain(n).length;
}

std::uint64_t optimal_chain_length_cached(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::uint64_t> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::uint64_t l = optimal_chain_length(n);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, l);
  return l;
}

bool validate_chain(const AdditionChain& chain, std::uint64_t n) {
  const auto& v = chain.values;
  if (v.empty() || v[0] != 1) return false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] == 0) return false;
    bool ok = false;
    for (std::size_t j = 0; j < i && !ok; ++j)
      for (std::size_t k = j; k < i && !ok; ++k)
        if (v[j] + v[k] == v[i]) ok = true;
    if (!ok) return false;
  }
  return v.back() == n;
}

ScholzBrauerGap scholz_brauer_gap(unsigned n) {
  if (n == 0 || n > 12)
    throw std::invalid_argument("scholz-brauer comparison supports 1 <= n <= 12");
  ScholzBrauerGap gap;
  gap.conjectured = optimal_chain_length(n) + n - 1;
  gap.mersenne_length = optimal_chain_length((1ull << n) - 1);
  return gap;
}

bool validate_vector_chain(const VectorChain& chain,
                           const std::vector<std::uint64_t>& target) {
  const std::size_t d = chain.dimension;
  if (d == 0 || target.size() != d) return false;
  const auto& vals = chain.values;
  if (vals.size() < d) return false;
  for (std::size_t i = 0; i < d; ++i) {
    if (vals[i].size() != d) return false;
    for (std::size_t c = 0; c < d; ++c)
      if (vals[i][c] != (c == i ? 1u : 0u)) return false;
  }
  for (std::size_t i = d; i < vals.size(); ++i) {
    if (vals[i].size() != d) return false;
    bool zero = true;
    for (auto c : vals[i])
      if (c) zero = false;
    if (zero) return false;
    bool ok = false;
    for (std::size_t j = 0; j < i && !ok; ++j) {
      for (std::size_t k = j; k < i && !ok; ++k) {
        bool eq = true;
        for (std::size_t c = 0; c < d; ++c)
          if (vals[j][c] + vals[k][c] != vals[i][c]) {
            eq = false;
            break;
          }
        if (eq) ok = true;
      }
    }
    if (!ok) return false;
  }
  return vals.back() == target;
}

namespace {

struct VectorSearch {
  std::vector<std::uint64_t> target;
  std::size_t d;
  std::uint64_t nodes = 0, node_budget = 20'000'000;
  std::vector<std::vector<std::uint64_t>> pool;
  std::set<std::vector<std::uint64_t>> present;

  std::uint64_t sum_of(const std::vector<std::uint64_t>& v) const {
    std::uint64_t s = 0;
    for (auto c : v) s += c;
    return s;
  }

  bool dfs(std::uint64_t remaining, std::uint64_t max_sum) {
    if (present.count(target)) return true;
    if (remaining == 0) return false;
    if (++nodes > node_budget)
      throw BudgetExceeded("vector-chain search exceeded its node budget", 0);
    std::uint64_t tsum = sum_of(target);
    if (remaining < 64 && (max_sum << remaining) < tsum) return false;

    std::vector<std::vector<std::uint64_t>> cands;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        std::vector<std::uint64_t> s(d);
        bool fits = true;
        for (std::size_t c = 0; c < d; ++c) {
          s[c] = pool[i][c] + pool[j][c];
          if (s[c] > target[c]) {
            fits = false;
            break;
          }
        }
        if (!fits) continue;
        if (sum_of(s) < max_sum) continue;  // nondecreasing reordering
        if (present.count(s)) continue;
        cands.push_back(std::move(s));
      }
    }
    std::sort(cands.begin(), cands.end(),
              [&](const auto& a, const auto& b) {
                std::uint64_t sa = sum_of(a), sb = sum_of(b);
                if (sa != sb) return sa > sb;
                return a < b;
              });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (auto& s : cands) {
      std::uint64_t ns = sum_of(s);
      pool.push_back(s);
      present.insert(s);
      bool hit = dfs(remaining - 1, std::max(max_sum, ns));
      present.erase(s);
      pool.pop_back();
      if (hit) return true;
    }
    return false;
  }
};

}  // namespace

VectorBound vector_chain_lower_bound(const std::vector<std::uint64_t>& v,
                                     std::uint64_t exact_sum_budget) {
  if (v.empty()) throw std::invalid_argument("vector target must be non-empty");
  std::uint64_t sum = 0;
  bool nonzero = false;
  for (auto c : v) {
    sum += c;
    if (c) nonzero = true;
  }
  if (!nonzero) throw std::invalid_argument("vector target must be non-zero");

  VectorBound out;
  out.bound = sum <= 256 ? optimal_chain_length_cached(sum)
                         : std::max(schonhage_lower_bound(sum), ceil_log2(sum));
  out.exact_vector_search = false;
  if (sum > exact_sum_budget) return out;

  VectorSearch search;
  search.target = v;
  search.d = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<std::uint64_t> unit(v.size(), 0);
    unit[i] = 1;
    if (unit == v) {
      out.exact_vector_search = true;
      out.bound = std::max<std::uint64_t>(out.bound, 0);
      return out;
    }
    search.pool.push_back(unit);
    search.present.insert(std::move(unit));
  }
  try {
    for (std::uint64_t depth = out.bound;; ++depth) {
      VectorSearch fresh = search;
      if (fresh.dfs(depth, 1)) {
        out.bound = std::max(out.bound, depth);
        out.exact_vector_search = true;
        return out;
      }
    }
  } catch (const BudgetExceeded&) {
    return out;  // scalar bound stands
  }
}

}  // namespace pa::chains
