#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace oracle {

std::vector<std::uint64_t> chain_lengths(std::uint64_t max_n) {
  if (max_n == 0 || max_n > 64) throw std::invalid_argument("max_n must be 1..64");
  std::vector<std::uint64_t> out(max_n, ~0ull);
  out[0] = 0;
  std::uint64_t remaining = max_n - 1;
  // a pool is a bitmask over values 1..max_n; every pool at depth d holds
  // exactly d+1 values, so deduplication within one level is enough
  std::vector<std::uint64_t> level{1ull};
  for (std::uint64_t depth = 1; remaining > 0 && !level.empty(); ++depth) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t pool : level) {
      std::vector<unsigned> vals;
      for (unsigned v = 0; v < max_n; ++v)
        if (pool >> v & 1) vals.push_back(v + 1);
      for (std::size_t j = 0; j < vals.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i) {
          unsigned s = vals[i] + vals[j];
          if (s > max_n) continue;
          std::uint64_t np = pool | (1ull << (s - 1));
          if (np == pool) continue;
          if (out[s - 1] == ~0ull) {
            out[s - 1] = depth;
            --remaining;
          }
          next.push_back(np);
        }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  if (remaining) throw std::logic_error("value buildup stalled");
  return out;
}

namespace {

struct StringBrute {
  std::string target;
  std::unordered_set<std::string> subs;
  std::unordered_map<std::string, std::uint64_t> explored;  // state -> depth left

  explicit StringBrute(std::string t) : target(std::move(t)) {
    for (std::size_t i = 0; i < target.size(); ++i)
      for (std::size_t len = 1; i + len <= target.size(); ++len)
        subs.insert(target.substr(i, len));
  }

  bool dfs(std::vector<std::string>& pool, std::unordered_set<std::string>& have,
           std::size_t last_len, std::uint64_t rem) {
    std::size_t max_len = 0;
    for (const auto& s : pool) max_len = std::max(max_len, s.size());
    if (rem < 60 && (max_len << rem) < target.size()) return false;

    {
      std::vector<std::string> sorted = pool;
      std::sort(sorted.begin(), sorted.end());
      std::string key;
      for (const auto& s : sorted) {
        key += s;
        key += '\x01';
      }
      key += static_cast<char>('0' + last_len);
      auto [it, fresh] = explored.try_emplace(key, rem);
      if (!fresh) {
        if (it->second >= rem) return false;
        it->second = rem;
      }
    }

    std::set<std::string> cands;
    for (std::size_t j = 0; j < pool.size(); ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        for (const std::string& s : {pool[i] + pool[j], pool[j] + pool[i]}) {
          if (s.size() < last_len || s.size() > target.size()) continue;
          if (!subs.count(s) || have.count(s)) continue;
          cands.insert(s);
        }
      }
    if (cands.count(target)) return true;
    if (rem <= 1) return false;
    for (const auto& s : cands) {
      pool.push_back(s);
      have.insert(s);
      bool hit = dfs(pool, have, s.size(), rem - 1);
      have.erase(s);
      pool.pop_back();
      if (hit) return true;
    }
    return false;
  }
};

}  // namespace

std::uint64_t string_index(const std::string& target) {
  if (target.size() <= 1) return 0;
  std::set<char> letters(target.begin(), target.end());
  StringBrute brute(target);
  std::vector<std::string> pool0;
  for (char c : letters) pool0.emplace_back(1, c);
  std::unordered_set<std::string> have0(pool0.begin(), pool0.end());
  for (std::uint64_t depth = 1; depth < target.size(); ++depth) {
    brute.explored.clear();
    std::vector<std::string> pool = pool0;
    std::unordered_set<std::string> have = have0;
    if (brute.dfs(pool, have, 1, depth)) return depth;
  }
  return target.size() - 1;
}

std::string canon_enc(const SmallGraph& g) {
  const int n = g.n;
  if (n < 1 || n > 5) throw std::invalid_argument("graph must have 1..5 vertices");
  bool adj[5][5] = {};
  for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = true;
  std::array<int, 5> perm{};
  std::iota(perm.begin(), perm.begin() + n, 0);
  std::string best;
  do {
    std::string enc(1, static_cast<char>('0' + n));
    std::array<int, 5> col{};
    for (int v = 0; v < n; ++v) col[perm[v]] = g.colours[v];
    for (int v = 0; v < n; ++v) enc += static_cast<char>('0' + col[v]);
    bool m[5][5] = {};
    for (auto [a, b] : g.edges) {
      m[perm[a]][perm[b]] = true;
      m[perm[b]][perm[a]] = true;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) enc += static_cast<char>('0' + m[i][j]);
    if (best.empty() || enc < best) best = enc;
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return best;
}

SmallGraph from_enc(const std::string& enc) {
  SmallGraph g;
  g.n = enc[0] - '0';
  for (int v = 0; v < g.n; ++v) g.colours.push_back(enc[1 + v] - '0');
  std::size_t at = 1 + static_cast<std::size_t>(g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (enc[at++] == '1') g.edges.emplace_back(i, j);
  return g;
}

std::vector<SmallGraph> all_graph_classes(int max_n, int colours) {
  std::vector<SmallGraph> out;
  std::set<std::string> seen;
  for (int n = 1; n <= max_n; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::uint64_t colourings = 1;
    for (int v = 0; v < n; ++v) colourings *= static_cast<std::uint64_t>(colours);
    for (std::uint64_t cw = 0; cw < colourings; ++cw) {
      std::vector<int> col(n);
      std::uint64_t w = cw;
      for (int v = 0; v < n; ++v) {
        col[v] = static_cast<int>(w % colours);
        w /= colours;
      }
      for (std::uint32_t em = 0; em < (1u << pairs); ++em) {
        SmallGraph g;
        g.n = n;
        g.colours = col;
        int p = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j, ++p)
            if (em >> p & 1) g.edges.emplace_back(i, j);
        std::string enc = canon_enc(g);
        if (seen.insert(enc).second) out.push_back(from_enc(enc));
      }
    }
  }
  return out;
}

namespace {

// all join classes of two graph classes, memoized on the encoded pair
const std::vector<std::string>& join_classes(const std::string& ea,
                                             const std::string& eb) {
  static std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      memo;
  auto key = std::minmax(ea, eb);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  SmallGraph a = from_enc(key.first), b = from_enc(key.second);
  std::set<std::string> found;
  if (a.n + b.n <= 5) {
    std::vector<std::pair<int, int>> cross;
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < b.n; ++j) cross.emplace_back(i, a.n + j);
    SmallGraph base;
    base.n = a.n + b.n;
    base.colours = a.colours;
    base.colours.insert(base.colours.end(), b.colours.begin(), b.colours.end());
    base.edges = a.edges;
    for (auto [x, y] : b.edges) base.edges.emplace_back(x + a.n, y + a.n);
    for (std::uint32_t mask = 0; mask < (1u << cross.size()); ++mask) {
      SmallGraph g = base;
      for (std::size_t k = 0; k < cross.size(); ++k)
        if (mask >> k & 1) g.edges.push_back(cross[k]);
      found.insert(canon_enc(g));
    }
  }
  std::vector<std::string> v(found.begin(), found.end());
  return memo.emplace(key, std::move(v)).first->second;
}

struct GraphBrute {
  std::string tenc;
  int tn = 0;
  std::unordered_set<std::string> allowed;  // induced-subgraph classes
  std::unordered_map<std::string, std::uint64_t> explored;

  static int size_of(const std::string& enc) { return enc[0] - '0'; }

  bool dfs(std::vector<std::string>& pool, std::unordered_set<std::string>& have,
           int last_size, std::uint64_t rem) {
    int max_size = 0;
    for (const auto& e : pool) max_size = std::max(max_size, size_of(e));
    if (rem < 30 && (static_cast<std::uint64_t>(max_size) << rem) <
                        static_cast<std::uint64_t>(tn))
      return false;

    {
      std::vector<std::string> sorted = pool;
      std::sort(sorted.begin(), sorted.end());
      std::string key;
      for (const auto& e : sorted) {
        key += e;
        key += '\x01';
      }
      key += static_cast<char>('0' + last_size);
      auto [it, fresh] = explored.try_emplace(key, rem);
      if (!fresh) {
        if (it->second >= rem) return false;
        it->second = rem;
      }
    }

    std::set<std::string> cands;
    for (std::size_t j = 0; j < pool.size(); ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        int sz = size_of(pool[i]) + size_of(pool[j]);
        if (sz > tn || sz < last_size) continue;
        for (const auto& enc : join_classes(pool[i], pool[j]))
          if (allowed.count(enc) && !have.count(enc)) cands.insert(enc);
      }
    if (cands.count(tenc)) return true;
    if (rem <= 1) return false;
    for (const auto& enc : cands) {
      pool.push_back(enc);
      have.insert(enc);
      bool hit = dfs(pool, have, size_of(enc), rem - 1);
      have.erase(enc);
      pool.pop_back();
      if (hit) return true;
    }
    return false;
  }
};

}  // namespace

std::uint64_t graph_index(const SmallGraph& target) {
  if (target.n <= 1) return 0;
  GraphBrute brute;
  brute.tenc = canon_enc(target);
  brute.tn = target.n;

  bool adj[5][5] = {};
  for (auto [a, b] : target.edges) adj[a][b] = adj[b][a] = true;
  for (std::uint32_t mask = 1; mask < (1u << target.n); ++mask) {
    SmallGraph sub;
    std::array<int, 5> where{};
    for (int v = 0; v < target.n; ++v)
      if (mask >> v & 1) {
        where[v] = sub.n++;
        sub.colours.push_back(target.colours[v]);
      }
    for (int i = 0; i < target.n; ++i)
      for (int j = i + 1; j < target.n; ++j)
        if (adj[i][j] && (mask >> i & 1) && (mask >> j & 1))
          sub.edges.emplace_back(where[i], where[j]);
    brute.allowed.insert(canon_enc(sub));
  }

  SmallGraph s0{1, {0}, {}}, s1{1, {1}, {}};
  std::vector<std::string> pool0{canon_enc(s0), canon_enc(s1)};
  std::unordered_set<std::string> have0(pool0.begin(), pool0.end());
  for (std::uint64_t depth = 1; depth < static_cast<std::uint64_t>(target.n);
       ++depth) {
    brute.explored.clear();
    std::vector<std::string> pool = pool0;
    std::unordered_set<std::string> have = have0;
    if (brute.dfs(pool, have, 1, depth)) return depth;
  }
  return static_cast<std::uint64_t>(target.n) - 1;
}

std::uint64_t group_min_steps(
    const std::vector<std::vector<std::uint32_t>>& table,
    const std::vector<std::uint32_t>& gens,
    const std::vector<std::uint32_t>& targets) {
  const std::size_t n = table.size();
  if (n == 0 || n > 32) throw std::invalid_argument("order must be 1..32");

  std::int64_t identity = -1;
  for (std::size_t e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      if (table[e][a] != a || table[a][e] != a) ok = false;
    if (ok) identity = static_cast<std::int64_t>(e);
  }
  if (identity < 0) throw std::invalid_argument("table has no identity");
  std::vector<std::uint32_t> inv(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == static_cast<std::uint32_t>(identity) &&
          table[b][a] == static_cast<std::uint32_t>(identity)) {
        inv[a] = static_cast<std::uint32_t>(b);
        break;
      }

  auto products = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t ia = inv[a], ib = inv[b];
    return std::array<std::uint32_t, 8>{table[a][b],  table[b][a],
                                        table[ia][b], table[b][ia],
                                        table[a][ib], table[ib][a],
                                        table[ia][ib], table[ib][ia]};
  };

  std::uint64_t start = 0, want = 0;
  for (auto g : gens) start |= 1ull << g;
  for (auto t : targets) want |= 1ull << t;
  if ((start & want) == want) return 0;

  std::unordered_set<std::uint64_t> seen{start};
  std::vector<std::uint64_t> level{start};
  for (std::uint64_t depth = 1; !level.empty(); ++depth) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t mask : level) {
      std::vector<std::uint32_t> elems;
      for (std::uint32_t v = 0; v < n; ++v)
        if (mask >> v & 1) elems.push_back(v);
      for (std::size_t j = 0; j < elems.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
          for (std::uint32_t p : products(elems[i], elems[j])) {
            std::uint64_t np = mask | (1ull << p);
            if (np == mask || !seen.insert(np).second) continue;
            if ((np & want) == want) return depth;
            next.push_back(np);
          }
    }
    level = std::move(next);
  }
  throw std::invalid_argument("generators never reach every target");
}

}  // namespace oracle
