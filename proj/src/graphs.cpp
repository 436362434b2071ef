#include "pa/graphs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "pa/chains.hpp"

namespace pa {

namespace {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

std::vector<std::vector<std::uint32_t>> adjacency(const ColouredGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.order());
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

std::vector<Edge> normalized_edges(const ColouredGraph& g) {
  std::vector<Edge> es = g.edges;
  for (auto& [a, b] : es)
    if (a > b) std::swap(a, b);
  std::sort(es.begin(), es.end());
  return es;
}

// Splits classes until stable.  Class ids are ranks of label-independent
// signatures, so equal graphs get equal partitions whatever their labels.
std::uint32_t refine(const std::vector<std::vector<std::uint32_t>>& adj,
                     std::vector<std::uint32_t>& cls) {
  const std::size_t n = cls.size();
  std::uint32_t m = 0;
  for (auto c : cls) m = std::max(m, c + 1);
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.push_back(cls[v]);
      for (auto u : adj[v]) s.push_back(cls[u]);
      std::sort(s.begin() + 1, s.end());
      ids.emplace(s, 0);
    }
    std::uint32_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) cls[v] = ids[sig[v]];
    if (next == m) return m;
    m = next;
  }
}

std::string encode_with(const ColouredGraph& g,
                        const std::vector<std::uint32_t>& perm) {
  ColouredGraph h;
  h.palette_size = g.palette_size;
  h.colours.resize(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) h.colours[perm[v]] = g.colours[v];
  for (auto [a, b] : g.edges) {
    auto x = perm[a], y = perm[b];
    if (x > y) std::swap(x, y);
    h.edges.emplace_back(x, y);
  }
  std::sort(h.edges.begin(), h.edges.end());
  return graph_key(h);
}

struct Canonizer {
  const ColouredGraph& g;
  std::vector<std::vector<std::uint32_t>> adj;
  std::string best;
  std::vector<std::uint32_t> best_perm;
  bool have = false;
  std::uint64_t leaves = 0;
  static constexpr std::uint64_t kLeafBudget = 250000;

  explicit Canonizer(const ColouredGraph& graph) : g(graph), adj(adjacency(graph)) {}

  std::string trace_of(const std::vector<std::uint32_t>& cls, std::uint32_t m) const {
    std::vector<std::uint32_t> size(m, 0), col(m, 0);
    for (std::size_t v = 0; v < cls.size(); ++v) {
      ++size[cls[v]];
      col[cls[v]] = g.colours[v];
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> quot;
    for (auto [a, b] : g.edges) {
      auto x = cls[a], y = cls[b];
      if (x > y) std::swap(x, y);
      ++quot[{x, y}];
    }
    std::string out = std::to_string(m);
    for (std::uint32_t k = 0; k < m; ++k) {
      out += ',';
      out += std::to_string(size[k]);
      out += ':';
      out += std::to_string(col[k]);
    }
    for (auto& [e, c] : quot) {
      out += ';';
      out += std::to_string(e.first);
      out += '-';
      out += std::to_string(e.second);
      out += '=';
      out += std::to_string(c);
    }
    return out;
  }

  void descend(const std::vector<std::uint32_t>& cls, std::uint32_t m) {
    const std::size_t n = cls.size();
    if (m == n) {
      if (++leaves > kLeafBudget)
        throw BudgetExceeded("graph too symmetric for canonical labelling", 0);
      std::string enc = encode_with(g, cls);
      if (!have || enc < best) {
        best = enc;
        best_perm = cls;
        have = true;
      }
      return;
    }
    std::uint32_t target = 0;
    {
      std::vector<std::uint32_t> cnt(m, 0);
      for (auto c : cls) ++cnt[c];
      while (cnt[target] < 2) ++target;
    }
    struct Child {
      std::vector<std::uint32_t> cls;
      std::uint32_t m;
      std::string trace;
    };
    std::vector<Child> kept;
    for (std::size_t v = 0; v < n; ++v) {
      if (cls[v] != target) continue;
      Child ch;
      ch.cls = cls;
      ch.cls[v] = m;
      ch.m = refine(adj, ch.cls);
      ch.trace = trace_of(ch.cls, ch.m);
      if (kept.empty() || ch.trace < kept.front().trace) {
        kept.clear();
        kept.push_back(std::move(ch));
      } else if (ch.trace == kept.front().trace) {
        kept.push_back(std::move(ch));
      }
    }
    for (auto& ch : kept) descend(ch.cls, ch.m);
  }

  std::vector<std::uint32_t> run() {
    std::vector<std::uint32_t> cls(g.order());
    {
      // dense colour ranks
      std::map<std::uint32_t, std::uint32_t> rank;
      for (auto c : g.colours) rank.emplace(c, 0);
      std::uint32_t next = 0;
      for (auto& [c, r] : rank) r = next++;
      for (std::size_t v = 0; v < g.order(); ++v) cls[v] = rank[g.colours[v]];
    }
    std::uint32_t m = refine(adj, cls);
    descend(cls, m);
    return best_perm;
  }
};

ColouredGraph relabel(const ColouredGraph& g, const std::vector<std::uint32_t>& perm) {
  ColouredGraph h;
  h.palette_size = g.palette_size;
  h.colours.resize(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) h.colours[perm[v]] = g.colours[v];
  for (auto [a, b] : g.edges) {
    auto x = perm[a], y = perm[b];
    if (x > y) std::swap(x, y);
    h.edges.emplace_back(x, y);
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

std::vector<std::vector<std::uint32_t>> components_of(const ColouredGraph& g) {
  auto adj = adjacency(g);
  std::vector<int> comp(g.order(), -1);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::uint32_t> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (auto u : adj[v])
        if (comp[u] < 0) {
          comp[u] = comp[s];
          stack.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

ColouredGraph induced(const ColouredGraph& g, const std::vector<std::uint32_t>& verts) {
  std::vector<std::int64_t> where(g.order(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) where[verts[i]] = static_cast<std::int64_t>(i);
  ColouredGraph h;
  h.palette_size = g.palette_size;
  for (auto v : verts) h.colours.push_back(g.colours[v]);
  for (auto [a, b] : g.edges) {
    if (where[a] < 0 || where[b] < 0) continue;
    auto x = static_cast<std::uint32_t>(where[a]);
    auto y = static_cast<std::uint32_t>(where[b]);
    if (x > y) std::swap(x, y);
    h.edges.emplace_back(x, y);
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

std::vector<std::uint32_t> mask_vertices(std::uint64_t mask, std::size_t n) {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if (mask >> v & 1) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

// bridges by DFS low-link
std::vector<Edge> bridges_of(const ColouredGraph& g) {
  auto adj = adjacency(g);
  std::size_t n = g.order();
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<bool> seen(n, false);
  std::uint32_t timer = 1;
  std::vector<Edge> out;
  // iterative DFS with parent tracking
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::tuple<std::uint32_t, std::int64_t, std::size_t>> stack;
    stack.emplace_back(s, -1, 0);
    seen[s] = true;
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      auto& [v, parent, idx] = stack.back();
      if (idx < adj[v].size()) {
        auto u = adj[v][idx++];
        if (!seen[u]) {
          seen[u] = true;
          disc[u] = low[u] = timer++;
          stack.emplace_back(u, v, 0);
        } else if (static_cast<std::int64_t>(u) != parent) {
          low[v] = std::min(low[v], disc[u]);
        }
        continue;
      }
      auto done = v;
      auto par = parent;
      stack.pop_back();
      if (par >= 0) {
        auto p = static_cast<std::uint32_t>(par);
        low[p] = std::min(low[p], low[done]);
        if (low[done] > disc[p])
          out.emplace_back(std::min(p, done), std::max(p, done));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool operator==(const ColouredGraph& a, const ColouredGraph& b) {
  return a.palette_size == b.palette_size && a.colours == b.colours &&
         normalized_edges(a) == normalized_edges(b);
}

std::string graph_key(const ColouredGraph& g) {
  std::string out = "p";
  out += std::to_string(g.palette_size);
  out += '|';
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (v) out += ',';
    out += std::to_string(g.colours[v]);
  }
  out += '|';
  bool first = true;
  for (auto [a, b] : g.edges) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(a);
    out += '-';
    out += std::to_string(b);
  }
  return out;
}

ColouredGraph canonical_form(const ColouredGraph& g) {
  if (g.order() == 0) throw std::invalid_argument("graph has no vertices");
  auto comps = components_of(g);
  if (comps.size() == 1) {
    Canonizer cz(g);
    return relabel(g, cz.run());
  }
  std::vector<std::pair<std::string, ColouredGraph>> pieces;
  for (auto& members : comps) {
    ColouredGraph sub = induced(g, members);
    Canonizer cz(sub);
    ColouredGraph canon = relabel(sub, cz.run());
    pieces.emplace_back(graph_key(canon), std::move(canon));
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ColouredGraph out;
  out.palette_size = g.palette_size;
  for (auto& [k, piece] : pieces) {
    std::uint32_t off = static_cast<std::uint32_t>(out.colours.size());
    out.colours.insert(out.colours.end(), piece.colours.begin(), piece.colours.end());
    for (auto [a, b] : piece.edges) out.edges.emplace_back(a + off, b + off);
  }
  return out;
}

std::vector<ColouredGraph> compose_graphs(const ColouredGraph& a,
                                          const ColouredGraph& b,
                                          std::uint32_t max_cross_pairs) {
  const std::size_t na = a.order(), nb = b.order();
  if (na == 0 || nb == 0) throw std::invalid_argument("empty operand");
  if (na * nb > max_cross_pairs)
    throw BudgetExceeded("cross-pair budget exceeded in graph join", 0);

  ColouredGraph base;
  base.palette_size = std::max(a.palette_size, b.palette_size);
  base.colours = a.colours;
  base.colours.insert(base.colours.end(), b.colours.begin(), b.colours.end());
  base.edges = a.edges;
  for (auto [x, y] : b.edges)
    base.edges.emplace_back(x + static_cast<std::uint32_t>(na),
                            y + static_cast<std::uint32_t>(na));

  std::vector<Edge> cross;
  for (std::uint32_t i = 0; i < na; ++i)
    for (std::uint32_t j = 0; j < nb; ++j)
      cross.emplace_back(i, static_cast<std::uint32_t>(na) + j);

  std::map<std::string, ColouredGraph> dedup;
  for (std::uint64_t mask = 0; mask < (1ull << cross.size()); ++mask) {
    ColouredGraph g = base;
    for (std::size_t k = 0; k < cross.size(); ++k)
      if (mask >> k & 1) g.edges.push_back(cross[k]);
    std::sort(g.edges.begin(), g.edges.end());
    ColouredGraph canon = canonical_form(g);
    dedup.emplace(graph_key(canon), std::move(canon));
  }
  std::vector<ColouredGraph> out;
  out.reserve(dedup.size());
  for (auto& [k, g] : dedup) out.push_back(std::move(g));
  return out;
}

bool graph_join_contains(const ColouredGraph& x, const ColouredGraph& u,
                         const ColouredGraph& v, std::uint64_t node_budget) {
  if (u.order() + v.order() != x.order()) return false;
  {
    std::map<std::uint32_t, std::int64_t> bal;
    for (auto c : x.colours) ++bal[c];
    for (auto c : u.colours) --bal[c];
    for (auto c : v.colours) --bal[c];
    for (auto& [c, d] : bal)
      if (d != 0) return false;
  }
  const ColouredGraph& small = u.order() <= v.order() ? u : v;
  const ColouredGraph& other = u.order() <= v.order() ? v : u;
  const std::string other_key = graph_key(canonical_form(other));

  const std::size_t n = x.order(), k = small.order();
  std::vector<std::vector<char>> xadj(n, std::vector<char>(n, 0));
  for (auto [a, b] : x.edges) xadj[a][b] = xadj[b][a] = 1;
  std::vector<std::vector<char>> sadj(k, std::vector<char>(k, 0));
  for (auto [a, b] : small.edges) sadj[a][b] = sadj[b][a] = 1;

  // place the most-connected-to-placed vertex next
  std::vector<std::uint32_t> order;
  {
    std::vector<bool> placed(k, false);
    auto sdeg = adjacency(small);
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t bestv = k;
      std::size_t bestscore = 0;
      for (std::size_t cand = 0; cand < k; ++cand) {
        if (placed[cand]) continue;
        std::size_t score = 1;  // so unconnected vertices still get picked
        for (auto nb : sdeg[cand])
          if (placed[nb]) score += 8;
        score += sdeg[cand].size();
        if (bestv == k || score > bestscore) {
          bestv = cand;
          bestscore = score;
        }
      }
      placed[bestv] = true;
      order.push_back(static_cast<std::uint32_t>(bestv));
    }
  }

  std::vector<std::int64_t> image(k, -1);
  std::vector<bool> used(n, false);
  std::uint64_t nodes = 0;

  auto complement_matches = [&]() {
    std::vector<std::uint32_t> rest;
    for (std::uint32_t w = 0; w < n; ++w)
      if (!used[w]) rest.push_back(w);
    ColouredGraph comp = induced(x, rest);
    return graph_key(canonical_form(comp)) == other_key;
  };

  auto dfs = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == k) return complement_matches();
    std::uint32_t sv = order[pos];
    for (std::uint32_t xv = 0; xv < n; ++xv) {
      if (used[xv]) continue;
      if (x.colours[xv] != small.colours[sv]) continue;
      if (++nodes > node_budget)
        throw BudgetExceeded("join membership check exceeded its budget", 0);
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        std::uint32_t sw = order[q];
        auto xw = static_cast<std::uint32_t>(image[sw]);
        if (sadj[sv][sw] != xadj[xv][xw]) ok = false;
      }
      if (!ok) continue;
      image[sv] = xv;
      used[xv] = true;
      if (self(self, pos + 1)) return true;
      used[xv] = false;
      image[sv] = -1;
    }
    return false;
  };
  return dfs(dfs, 0);
}

ColouredGraph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  ColouredGraph g;
  bool saw_palette = false, saw_nodes = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "palette:") {
      std::string name;
      std::uint32_t count = 0;
      while (ls >> name) ++count;
      if (count == 0) throw ParseError("palette line lists no colours", lineno);
      g.palette_size = count;
      saw_palette = true;
    } else if (tag == "nodes:") {
      if (!saw_palette) throw ParseError("nodes before palette", lineno);
      long long c;
      while (ls >> c) {
        if (c < 0 || static_cast<std::uint64_t>(c) >= g.palette_size)
          throw ParseError("node colour outside palette", lineno);
        g.colours.push_back(static_cast<std::uint32_t>(c));
      }
      if (!ls.eof()) throw ParseError("bad node colour", lineno);
      saw_nodes = true;
    } else if (tag == "edge:") {
      if (!saw_nodes) throw ParseError("edge before nodes", lineno);
      long long a, b;
      if (!(ls >> a >> b)) throw ParseError("edge needs two endpoints", lineno);
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= g.order() ||
          static_cast<std::size_t>(b) >= g.order())
        throw ParseError("edge endpoint out of range", lineno);
      if (a == b) throw ParseError("self-loops are not allowed", lineno);
      auto x = static_cast<std::uint32_t>(std::min(a, b));
      auto y = static_cast<std::uint32_t>(std::max(a, b));
      g.edges.emplace_back(x, y);
    } else {
      throw ParseError("unknown line tag '" + tag + "'", lineno);
    }
  }
  if (!saw_nodes || g.colours.empty())
    throw ParseError("graph text has no nodes", lineno);
  auto es = normalized_edges(g);
  if (std::adjacent_find(es.begin(), es.end()) != es.end())
    throw ParseError("duplicate edge", lineno);
  g.edges = std::move(es);
  return g;
}

std::string graph_to_text(const ColouredGraph& g) {
  std::string out = "palette:";
  for (std::uint32_t c = 0; c < g.palette_size; ++c) {
    out += " c";
    out += std::to_string(c);
  }
  out += "\nnodes:";
  for (auto c : g.colours) {
    out += ' ';
    out += std::to_string(c);
  }
  out += '\n';
  for (auto [a, b] : g.edges) {
    out += "edge: ";
    out += std::to_string(a);
    out += ' ';
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

GraphSystem::GraphSystem(std::uint32_t palette_size, std::uint32_t max_cross_pairs)
    : palette_(palette_size), max_cross_pairs_(max_cross_pairs) {
  if (palette_ == 0) throw std::invalid_argument("palette must not be empty");
}

std::vector<ColouredGraph> GraphSystem::basis() const {
  std::vector<ColouredGraph> out;
  for (std::uint32_t c = 0; c < palette_; ++c) {
    ColouredGraph g;
    g.palette_size = palette_;
    g.colours = {c};
    out.push_back(std::move(g));
  }
  return out;
}

ColouredGraph GraphSystem::canonical(const ColouredGraph& g) const {
  if (g.order() == 0) throw std::invalid_argument("graph has no vertices");
  for (auto c : g.colours)
    if (c >= palette_) throw std::invalid_argument("node colour outside palette");
  ColouredGraph h = g;
  h.palette_size = palette_;
  h.edges = normalized_edges(h);
  for (auto [a, b] : h.edges) {
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    if (b >= h.order()) throw std::invalid_argument("edge endpoint out of range");
  }
  if (std::adjacent_find(h.edges.begin(), h.edges.end()) != h.edges.end())
    throw std::invalid_argument("duplicate edge");
  return canonical_form(h);
}

std::vector<ColouredGraph> GraphSystem::fragments(const ColouredGraph& g) const {
  const std::size_t n = g.order();
  if (n > kMaxExhaustiveOrder)
    throw BudgetExceeded("graph too large for exhaustive fragment enumeration",
                         chains::schonhage_lower_bound(n));
  std::map<std::string, ColouredGraph> dedup;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    ColouredGraph sub = induced(g, mask_vertices(mask, n));
    ColouredGraph canon = canonical_form(sub);
    dedup.emplace(graph_key(canon), std::move(canon));
  }
  std::vector<ColouredGraph> out;
  for (auto& [k, sub] : dedup) out.push_back(std::move(sub));
  std::sort(out.begin(), out.end(), [](const ColouredGraph& a, const ColouredGraph& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return graph_key(a) < graph_key(b);
  });
  return out;
}

std::vector<std::pair<ColouredGraph, ColouredGraph>> GraphSystem::splits(
    const ColouredGraph& g) const {
  std::vector<std::pair<ColouredGraph, ColouredGraph>> out;
  const std::size_t n = g.order();
  if (n <= 1) return out;

  std::vector<std::vector<std::uint32_t>> sides;
  if (n <= 10) {
    // every bipartition; the last vertex is pinned to one side
    for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask)
      sides.push_back(mask_vertices(mask | (1ull << (n - 1)), n));
  } else {
    auto comps = components_of(g);
    if (comps.size() >= 2) {
      std::vector<std::pair<std::string, std::vector<std::uint32_t>>> keyed;
      for (auto& members : comps)
        keyed.emplace_back(graph_key(canonical_form(induced(g, members))), members);
      std::sort(keyed.begin(), keyed.end());
      std::vector<std::uint32_t> acc;
      for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
        acc.insert(acc.end(), keyed[i].second.begin(), keyed[i].second.end());
        std::sort(acc.begin(), acc.end());
        sides.push_back(acc);
      }
    } else {
      auto adj = adjacency(g);
      for (auto [a, b] : bridges_of(g)) {
        // side of a once the bridge is removed
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{a};
        seen[a] = true;
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          for (auto w : adj[v]) {
            if ((v == a && w == b) || (v == b && w == a)) continue;
            if (!seen[w]) {
              seen[w] = true;
              stack.push_back(w);
            }
          }
        }
        std::vector<std::uint32_t> side;
        for (std::uint32_t v = 0; v < n; ++v)
          if (seen[v]) side.push_back(v);
        sides.push_back(std::move(side));
      }
    }
    for (std::uint32_t v = 0; v < n; ++v) sides.push_back({v});
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (auto& side : sides) {
    if (side.empty() || side.size() >= n) continue;
    std::vector<bool> in(n, false);
    for (auto v : side) in[v] = true;
    std::vector<std::uint32_t> rest;
    for (std::uint32_t v = 0; v < n; ++v)
      if (!in[v]) rest.push_back(v);
    ColouredGraph a = canonical_form(induced(g, side));
    ColouredGraph b = canonical_form(induced(g, rest));
    std::string ka = graph_key(a), kb = graph_key(b);
    if (kb < ka) {
      std::swap(a, b);
      std::swap(ka, kb);
    }
    if (seen.emplace(ka, kb).second) out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

std::vector<MeasureSpec<ColouredGraph>> GraphSystem::measures() const {
  std::vector<MeasureSpec<ColouredGraph>> out;
  auto bs = basis();
  for (std::uint32_t c = 0; c < palette_; ++c) {
    MeasureSpec<ColouredGraph> m;
    m.name = "colour_" + std::to_string(c);
    for (std::uint32_t b = 0; b < palette_; ++b)
      m.basis_values.emplace_back(bs[b], b == c ? 1.0 : 0.0);
    out.push_back(std::move(m));
  }
  return out;
}

std::uint64_t GraphSystem::root_lower_bound(const ColouredGraph& g) const {
  std::map<std::uint32_t, std::uint64_t> counts;
  for (auto c : g.colours) ++counts[c];
  std::vector<std::uint64_t> v;
  for (auto& [c, cnt] : counts) v.push_back(cnt);
  return chains::vector_chain_lower_bound(v).bound;
}

std::uint32_t GridImage::palette_size() const {
  std::uint32_t p = 0;
  for (auto x : pixels) p = std::max(p, x + 1);
  return p;
}

GridImage image_from_text(const std::string& text) {
  // strip pnm-style comments, then tokenize
  std::string clean;
  clean.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i >= text.size()) break;
    }
    clean += text[i];
  }
  std::istringstream in(clean);
  std::string magic;
  if (!(in >> magic)) throw ParseError("empty image", 1);
  if (magic != "P1" && magic != "P2")
    throw ParseError("image must start with P1 or P2", 1);
  long long cols, rows;
  if (!(in >> cols >> rows) || cols <= 0 || rows <= 0)
    throw ParseError("bad image dimensions", 2);
  GridImage img;
  img.cols = static_cast<std::size_t>(cols);
  img.rows = static_cast<std::size_t>(rows);
  const std::size_t need = img.rows * img.cols;
  if (magic == "P1") {
    char ch;
    while (img.pixels.size() < need && in >> ch) {
      if (ch != '0' && ch != '1') throw ParseError("P1 pixels must be 0 or 1", 3);
      img.pixels.push_back(static_cast<std::uint32_t>(ch - '0'));
    }
  } else {
    long long px;
    while (img.pixels.size() < need && in >> px) {
      if (px < 0) throw ParseError("negative pixel", 3);
      img.pixels.push_back(static_cast<std::uint32_t>(px));
    }
  }
  if (img.pixels.size() != need)
    throw ParseError("pixel count does not match dimensions", 3);
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after pixels", 4);
  return img;
}

std::string image_to_text(const GridImage& img) {
  bool bilevel = true;
  for (auto p : img.pixels)
    if (p > 1) bilevel = false;
  std::string out = bilevel ? "P1\n" : "P2\n";
  out += std::to_string(img.cols);
  out += ' ';
  out += std::to_string(img.rows);
  out += '\n';
  for (std::size_t r = 0; r < img.rows; ++r) {
    for (std::size_t c = 0; c < img.cols; ++c) {
      if (!bilevel && c) out += ' ';
      out += std::to_string(img.at(r, c));
    }
    out += '\n';
  }
  return out;
}

namespace {

ColouredGraph rect_graph(const GridImage& img, std::size_t r0, std::size_t c0,
                         std::size_t h, std::size_t w, std::uint32_t palette) {
  ColouredGraph g;
  g.palette_size = palette;
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      std::uint32_t pix = img.at(r0 + r, c0 + c);
      g.colours.push_back(img.orientation_locked
                              ? pix * 2 + static_cast<std::uint32_t>((c0 + c) % 2)
                              : pix);
    }
  auto id = [&](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(r * w + c);
  };
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      if (c + 1 < w) g.edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < h) g.edges.emplace_back(id(r, c), id(r + 1, c));
    }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace

ColouredGraph grid_to_graph(const GridImage& img) {
  if (img.rows == 0 || img.cols == 0 || img.pixels.size() != img.rows * img.cols)
    throw std::invalid_argument("image dimensions do not match pixel count");
  std::uint32_t palette =
      img.orientation_locked ? img.palette_size() * 2 : img.palette_size();
  return rect_graph(img, 0, 0, img.rows, img.cols, palette);
}

Pathway<ColouredGraph> grid_tree_pathway(const GridImage& img) {
  if (img.rows == 0 || img.cols == 0 || img.pixels.size() != img.rows * img.cols)
    throw std::invalid_argument("image dimensions do not match pixel count");
  std::uint32_t palette =
      img.orientation_locked ? img.palette_size() * 2 : img.palette_size();
  GraphSystem sys(palette);

  struct Rect {
    std::size_t r0, c0, h, w;
  };
  struct Entry {
    std::uint64_t cost;
    int axis;  // -1 basis, 0 horizontal cut, 1 vertical cut
    std::size_t pos;
    Rect rect;
  };
  std::map<std::string, Entry> memo;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::string>
      keys;

  auto key_of = [&](const Rect& rc) -> const std::string& {
    auto t = std::make_tuple(rc.r0, rc.c0, rc.h, rc.w);
    auto it = keys.find(t);
    if (it != keys.end()) return it->second;
    ColouredGraph g =
        canonical_form(rect_graph(img, rc.r0, rc.c0, rc.h, rc.w, palette));
    return keys.emplace(t, graph_key(g)).first->second;
  };

  auto cost = [&](auto&& self, const Rect& rc) -> std::uint64_t {
    const std::string& k = key_of(rc);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second.cost;
    if (rc.h == 1 && rc.w == 1) {
      memo.emplace(k, Entry{0, -1, 0, rc});
      return 0;
    }
    Entry best{~0ull, -1, 0, rc};
    bool all_cuts = rc.h * rc.w <= 256;
    std::vector<std::pair<int, std::size_t>> cuts;
    if (all_cuts) {
      for (std::size_t i = 1; i < rc.h; ++i) cuts.emplace_back(0, i);
      for (std::size_t j = 1; j < rc.w; ++j) cuts.emplace_back(1, j);
    } else {
      if (rc.h >= 2) cuts.emplace_back(0, rc.h / 2);
      if (rc.w >= 2) cuts.emplace_back(1, rc.w / 2);
    }
    for (auto [axis, pos] : cuts) {
      Rect a = axis == 0 ? Rect{rc.r0, rc.c0, pos, rc.w}
                         : Rect{rc.r0, rc.c0, rc.h, pos};
      Rect b = axis == 0 ? Rect{rc.r0 + pos, rc.c0, rc.h - pos, rc.w}
                         : Rect{rc.r0, rc.c0 + pos, rc.h, rc.w - pos};
      std::uint64_t ca = self(self, a);
      std::uint64_t cb = key_of(a) == key_of(b) ? 0 : self(self, b);
      std::uint64_t c = ca + cb + 1;
      if (c < best.cost) best = Entry{c, axis, pos, rc};
    }
    memo.insert_or_assign(k, best);
    return best.cost;
  };

  detail::PathBuilder<GraphSystem> pb(sys);
  auto materialize = [&](auto&& self, const Rect& rc) -> ColouredGraph {
    const std::string& k = key_of(rc);
    ColouredGraph g =
        canonical_form(rect_graph(img, rc.r0, rc.c0, rc.h, rc.w, palette));
    if (pb.has(k)) return g;
    const Entry& e = memo.at(k);
    if (e.axis < 0) {
      pb.add_basis(g);
      return g;
    }
    const Rect& rc2 = e.rect;  // same class; use the rect the cut was chosen for
    Rect a = e.axis == 0 ? Rect{rc2.r0, rc2.c0, e.pos, rc2.w}
                         : Rect{rc2.r0, rc2.c0, rc2.h, e.pos};
    Rect b = e.axis == 0 ? Rect{rc2.r0 + e.pos, rc2.c0, rc2.h - e.pos, rc2.w}
                         : Rect{rc2.r0, rc2.c0 + e.pos, rc2.h, rc2.w - e.pos};
    ColouredGraph ga = self(self, a);
    ColouredGraph gb = self(self, b);
    pb.add_step(ga, gb, g);
    return g;
  };

  Rect full{0, 0, img.rows, img.cols};
  cost(cost, full);
  materialize(materialize, full);
  return pb.take();
}

}  // namespace pa
