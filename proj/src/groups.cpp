#include "pa/groups.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace pa {

GroupCheck verify_group_axioms(
    const std::vector<std::vector<std::uint32_t>>& table) {
  GroupCheck rep;
  const std::size_t n = table.size();
  if (n == 0) {
    rep.reason = "table is empty";
    return rep;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      rep.reason = "table is not square";
      rep.counterexample = {static_cast<std::uint32_t>(a)};
      return rep;
    }
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] >= n) {
        rep.reason = "closure fails: entry outside the element range";
        rep.counterexample = {static_cast<std::uint32_t>(a),
                              static_cast<std::uint32_t>(b)};
        return rep;
      }
  }
  std::int64_t identity = -1;
  for (std::size_t e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      if (table[e][a] != a || table[a][e] != a) ok = false;
    if (ok) identity = static_cast<std::int64_t>(e);
  }
  if (identity < 0) {
    rep.reason = "no two-sided identity element";
    return rep;
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool has = false;
    for (std::size_t b = 0; b < n && !has; ++b)
      if (table[a][b] == static_cast<std::uint32_t>(identity)) has = true;
    if (!has) {
      rep.reason = "no inverse for element " + std::to_string(a);
      rep.counterexample = {static_cast<std::uint32_t>(a)};
      return rep;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          rep.reason = "associativity fails at (" + std::to_string(a) + ", " +
                       std::to_string(b) + ", " + std::to_string(c) + ")";
          rep.counterexample = {static_cast<std::uint32_t>(a),
                                static_cast<std::uint32_t>(b),
                                static_cast<std::uint32_t>(c)};
          return rep;
        }
  rep.valid = true;
  return rep;
}

FiniteGroup make_group(const std::vector<std::vector<std::uint32_t>>& table) {
  GroupCheck rep = verify_group_axioms(table);
  if (!rep.valid) throw std::invalid_argument(rep.reason);
  FiniteGroup g;
  g.table = table;
  const std::size_t n = table.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      if (table[e][a] != a || table[a][e] != a) ok = false;
    if (ok) {
      g.identity = static_cast<std::uint32_t>(e);
      break;
    }
  }
  g.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == g.identity && table[b][a] == g.identity) {
        g.inverse[a] = static_cast<std::uint32_t>(b);
        break;
      }
  return g;
}

FiniteGroup group_from_permutations(
    const std::vector<std::vector<std::uint32_t>>& perms) {
  const std::size_t n = perms.size();
  if (n == 0) throw std::invalid_argument("no permutations given");
  const std::size_t deg = perms[0].size();
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = perms[i];
    if (p.size() != deg)
      throw std::invalid_argument("permutations act on different point counts");
    std::vector<bool> seen(deg, false);
    for (auto v : p) {
      if (v >= deg || seen[v])
        throw std::invalid_argument("entry " + std::to_string(i) +
                                    " is not a permutation");
      seen[v] = true;
    }
    if (!index.emplace(p, static_cast<std::uint32_t>(i)).second)
      throw std::invalid_argument("duplicate permutation in the list");
  }
  std::vector<std::vector<std::uint32_t>> table(
      n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> prod(deg);
      for (std::size_t k = 0; k < deg; ++k) prod[k] = perms[i][perms[j][k]];
      auto it = index.find(prod);
      if (it == index.end())
        throw std::invalid_argument(
            "permutations are not closed under composition");
      table[i][j] = it->second;
    }
  return make_group(table);
}

std::vector<std::uint32_t> group_compose_rule(const FiniteGroup& g,
                                              std::uint32_t a, std::uint32_t b) {
  std::uint32_t ia = g.inv(a), ib = g.inv(b);
  std::vector<std::uint32_t> out{g.mul(a, b),  g.mul(b, a),  g.mul(ia, b),
                                 g.mul(b, ia), g.mul(a, ib), g.mul(ib, a),
                                 g.mul(ia, ib), g.mul(ib, ia)};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupInput group_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what(), 1);
  }
  if (!j.is_object()) throw ParseError("group input must be a JSON object", 1);
  GroupInput in;
  try {
    if (j.contains("table")) {
      std::vector<std::vector<std::uint32_t>> table =
          j.at("table").get<std::vector<std::vector<std::uint32_t>>>();
      in.group = make_group(table);
    } else if (j.contains("permutations")) {
      std::vector<std::vector<std::uint32_t>> perms =
          j.at("permutations").get<std::vector<std::vector<std::uint32_t>>>();
      in.group = group_from_permutations(perms);
    } else {
      throw ParseError("group input needs \"table\" or \"permutations\"", 1);
    }
    in.generators = j.value("generators", std::vector<std::uint32_t>{});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad group JSON: ") + e.what(), 1);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1);
  }
  if (in.generators.empty())
    throw ParseError("group input needs a non-empty \"generators\" list", 1);
  for (auto g : in.generators)
    if (g >= in.group.order())
      throw ParseError("generator index out of range", 1);
  return in;
}

GroupSystem::GroupSystem(FiniteGroup group, std::vector<std::uint32_t> generators)
    : group_(std::move(group)), generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("empty generating set");
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()),
                    generators_.end());
  for (auto g : generators_)
    if (g >= group_.order())
      throw std::invalid_argument("generator index out of range");

  std::set<std::uint32_t> reach(generators_.begin(), generators_.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> snapshot(reach.begin(), reach.end());
    for (auto a : snapshot)
      for (auto b : snapshot)
        for (auto p : group_compose_rule(group_, a, b))
          if (reach.insert(p).second) grew = true;
  }
  if (reach.size() != group_.order()) {
    std::uint32_t missing = 0;
    while (reach.count(missing)) ++missing;
    throw UnreachableElement("generators do not reach element " +
                             std::to_string(missing));
  }
}

std::uint32_t GroupSystem::canonical(std::uint32_t x) const {
  if (x >= group_.order())
    throw std::invalid_argument("element index out of range");
  return x;
}

std::vector<MeasureSpec<std::uint32_t>> GroupSystem::measures() const {
  std::vector<MeasureSpec<std::uint32_t>> out;
  for (auto g : generators_) {
    MeasureSpec<std::uint32_t> m;
    m.name = "generator_" + std::to_string(g);
    for (auto b : generators_) m.basis_values.emplace_back(b, b == g ? 1.0 : 0.0);
    out.push_back(std::move(m));
  }
  return out;
}

std::uint32_t GroupSystem::parse(const std::string& text) const {
  std::size_t used = 0;
  unsigned long v;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    throw ParseError("element must be a non-negative integer", 1);
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
    ++used;
  if (used != text.size())
    throw ParseError("element must be a non-negative integer", 1);
  if (v >= group_.order()) throw ParseError("element index out of range", 1);
  return static_cast<std::uint32_t>(v);
}

}  // namespace pa
