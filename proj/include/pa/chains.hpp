#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pa/common.hpp"
#include "pa/pathway.hpp"

namespace pa::chains {

// Addition chain for n: starts at 1, every later entry is the sum of two
// earlier entries (indices may coincide), ends at n.  Entries need not be
// sorted and duplicates are allowed.
struct AdditionChain {
  std::vector<std::uint64_t> values;
};

struct OptimalChain {
  std::uint64_t length = 0;
  AdditionChain witness;
};

inline constexpr std::uint64_t kMaxExactChainTarget = 1ull << 20;

// Exact shortest addition chain via iterative deepening, ascending-chain
// restriction and the doubling cut (remaining steps can at most double the
// largest element).
OptimalChain optimal_chain(std::uint64_t n,
                           std::uint64_t node_budget = 400'000'000ull);
std::uint64_t optimal_chain_length(std::uint64_t n);

// Cached exact lengths for small n; used as admissible lower bounds.
std::uint64_t optimal_chain_length_cached(std::uint64_t n);

// floor-free version of ceil(log2(n) + log2(popcount(n)) - 2.13), clamped at 0.
std::uint64_t schonhage_lower_bound(std::uint64_t n);

bool validate_chain(const AdditionChain& chain, std::uint64_t n);

// (exact length for 2^n - 1, conjectured value optimal_chain_length(n) + n - 1)
struct ScholzBrauerGap {
  std::uint64_t mersenne_length = 0;
  std::uint64_t conjectured = 0;
};
ScholzBrauerGap scholz_brauer_gap(unsigned n);

// Vectorial addition chain: leading entries are the standard unit vectors of
// the dimension, every later entry is the componentwise sum of two earlier
// entries, the zero vector never appears.
struct VectorChain {
  std::size_t dimension = 0;
  std::vector<std::vector<std::uint64_t>> values;  // includes the leading units
};

bool validate_vector_chain(const VectorChain& chain,
                           const std::vector<std::uint64_t>& target);

struct VectorBound {
  std::uint64_t bound = 0;
  bool exact_vector_search = false;  // false: fell back to the scalar bound
};

// max(scalar chain bound on the component sum, exact vectorial chain length
// when the component sum fits the exact-search budget).
VectorBound vector_chain_lower_bound(const std::vector<std::uint64_t>& v,
                                     std::uint64_t exact_sum_budget = 64);

// Projection of a pathway to an addition chain through a measure whose basis
// values are 0 or 1 (at least one 1).  Basis entries collapse to a single
// leading 1; zero-valued entries are dropped; a step one of whose parents
// projected to zero merely duplicates the other parent and is dropped too.
// The values of dropped steps are always present earlier in the chain, so the
// result still satisfies the sum property.
template <System S>
AdditionChain project_pathway_to_chain(
    const S& sys, const MeasureSpec<typename S::object_type>& m,
    const Pathway<typename S::object_type>& p) {
  bool has_one = false;
  for (const auto& [obj, v] : m.basis_values) {
    (void)obj;
    if (v != 0.0 && v != 1.0)
      throw MeasureOutOfRange("projection requires basis values in {0, 1}");
    if (v == 1.0) has_one = true;
  }
  if (!has_one)
    throw MeasureOutOfRange("projection requires at least one basis value 1");
  std::vector<double> all = evaluate_measure(sys, m, p);
  const std::size_t nb = p.basis_objects.size();
  auto entry_of_ref = [&](std::int64_t ref) -> std::size_t {
    if (ref < 0) return static_cast<std::size_t>(-ref - 1);
    return nb + static_cast<std::size_t>(ref - 1);
  };
  AdditionChain chain;
  for (std::size_t k = 0; k < nb; ++k) {
    if (all[k] == 1.0) {
      chain.values.push_back(1);
      break;
    }
  }
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    double v = all[nb + s];
    if (v <= 0.0) continue;
    double lv = all[entry_of_ref(p.steps[s].left)];
    double rv = all[entry_of_ref(p.steps[s].right)];
    if (lv == 0.0 || rv == 0.0) continue;
    chain.values.push_back(static_cast<std::uint64_t>(v + 0.5));
  }
  return chain;
}

// Projection through a family of 0/1 measures at once.  Entry vectors that
// would be all-zero never arise when the family covers every basis object.
template <System S>
VectorChain project_pathway_to_vector_chain(
    const S& sys, const std::vector<MeasureSpec<typename S::object_type>>& ms,
    const Pathway<typename S::object_type>& p) {
  const std::size_t d = ms.size();
  if (d == 0) throw MeasureOutOfRange("projection requires at least one measure");
  std::vector<std::vector<double>> per_measure;
  per_measure.reserve(d);
  for (const auto& m : ms) per_measure.push_back(evaluate_measure(sys, m, p));

  VectorChain chain;
  chain.dimension = d;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint64_t> unit(d, 0);
    unit[i] = 1;
    chain.values.push_back(std::move(unit));
  }
  auto vector_at = [&](std::size_t entry) {
    std::vector<std::uint64_t> v(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      v[i] = static_cast<std::uint64_t>(per_measure[i][entry] + 0.5);
    return v;
  };
  auto is_zero = [](const std::vector<std::uint64_t>& v) {
    for (auto c : v)
      if (c) return false;
    return true;
  };
  std::size_t nb = p.basis_objects.size();
  auto entry_of_ref = [&](std::int64_t ref, std::size_t) -> std::size_t {
    if (ref < 0) return static_cast<std::size_t>(-ref - 1);
    return nb + static_cast<std::size_t>(ref - 1);
  };
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    auto v = vector_at(nb + s);
    if (is_zero(v)) continue;
    // A parent that projected to zero makes this step a redundant copy of the
    // other parent; drop it like the scalar projection does.
    auto lv = vector_at(entry_of_ref(p.steps[s].left, s));
    auto rv = vector_at(entry_of_ref(p.steps[s].right, s));
    if (is_zero(lv) || is_zero(rv)) continue;
    chain.values.push_back(std::move(v));
  }
  return chain;
}

}  // namespace pa::chains
