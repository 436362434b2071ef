#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pa/common.hpp"
#include "pa/pathway.hpp"

namespace pa {

struct FiniteGroup {
  std::vector<std::vector<std::uint32_t>> table;  // table[a][b] = a*b
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> inverse;

  std::size_t order() const { return table.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a][b]; }
  std::uint32_t inv(std::uint32_t a) const { return inverse[a]; }
};

struct GroupCheck {
  bool valid = false;
  std::string reason;                      // empty when valid
  std::vector<std::uint32_t> counterexample;  // elements involved, if any
};

// Checks well-formedness, two-sided identity, inverses, closure and
// associativity; reports the first failing element or triple.
GroupCheck verify_group_axioms(const std::vector<std::vector<std::uint32_t>>& table);

// Throws std::invalid_argument with the report's reason if any axiom fails.
FiniteGroup make_group(const std::vector<std::vector<std::uint32_t>>& table);

// Elements are the listed permutations; entry k of a permutation is the image
// of point k.  Composition (p then-apply q) must stay inside the list.
FiniteGroup group_from_permutations(
    const std::vector<std::vector<std::uint32_t>>& perms);

// All ways to combine a or its inverse with b or its inverse, deduplicated,
// ascending.
std::vector<std::uint32_t> group_compose_rule(const FiniteGroup& g,
                                              std::uint32_t a, std::uint32_t b);

struct GroupInput {
  FiniteGroup group;
  std::vector<std::uint32_t> generators;
};

// JSON object with "generators" and either "table" (row-major) or
// "permutations" (one-line images).
GroupInput group_from_json(const std::string& text);

class GroupSystem {
 public:
  using object_type = std::uint32_t;

  // Throws UnreachableElement if the generators do not reach every element.
  GroupSystem(FiniteGroup group, std::vector<std::uint32_t> generators);

  const FiniteGroup& group() const { return group_; }
  const std::vector<std::uint32_t>& generators() const { return generators_; }

  std::vector<std::uint32_t> basis() const { return generators_; }
  std::vector<std::uint32_t> compose(std::uint32_t a, std::uint32_t b) const {
    return group_compose_rule(group_, a, b);
  }
  std::uint32_t canonical(std::uint32_t x) const;
  std::string key(std::uint32_t x) const { return std::to_string(x); }
  std::string display(std::uint32_t x) const { return std::to_string(x); }

  std::vector<MeasureSpec<std::uint32_t>> measures() const;

  std::uint32_t parse(const std::string& text) const;

 private:
  FiniteGroup group_;
  std::vector<std::uint32_t> generators_;
};

}  // namespace pa

#include "pa/search.hpp"

namespace pa {

inline IndexResult<std::uint32_t> element_assembly_index(
    const FiniteGroup& g, const std::vector<std::uint32_t>& gens,
    std::uint32_t x, const SearchConfig& cfg = {}) {
  GroupSystem sys(g, gens);
  return assembly_index(sys, x, cfg);
}

// Co-assembly of every element of the group, identity included.
inline IndexResult<std::uint32_t> group_co_assembly_index(
    const FiniteGroup& g, const std::vector<std::uint32_t>& gens,
    const SearchConfig& cfg = {}) {
  GroupSystem sys(g, gens);
  std::vector<std::uint32_t> targets;
  for (std::uint32_t x = 0; x < g.order(); ++x) targets.push_back(x);
  return co_assembly_index(sys, targets, cfg);
}

}  // namespace pa
