#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pa/common.hpp"

namespace pa {

// A pathway lists basis objects and then composition steps.  Entry indices
// follow the convention: basis slot k is referenced as -(k+1), step s (1-based)
// as +s.  Index 0 is never used.
template <class Obj>
struct Step {
  std::int64_t left = 0;
  std::int64_t right = 0;
  Obj product{};
};

template <class Obj>
struct Pathway {
  std::vector<Obj> basis_objects;
  std::vector<Step<Obj>> steps;
};

template <class Obj>
std::uint64_t pathway_length(const Pathway<Obj>& p) {
  // Only composition steps count; basis objects are free.
  return p.steps.size();
}

// A content-preserving measure is fixed by its values on basis objects.
template <class Obj>
struct MeasureSpec {
  std::string name;
  std::vector<std::pair<Obj, double>> basis_values;
};

template <class Obj>
struct IndexResult {
  std::uint64_t index = 0;
  std::uint64_t lower_bound = 0;
  std::uint64_t upper_bound = 0;
  bool exact = false;
  Pathway<Obj> witness;
};

struct ValidityReport {
  bool valid = true;
  std::int64_t first_invalid = 0;  // pathway index convention; 0 when valid
  std::string reason;
};

template <class S>
concept System = requires(const S& s, const typename S::object_type& a,
                          const typename S::object_type& b) {
  typename S::object_type;
  { s.basis() } -> std::convertible_to<std::vector<typename S::object_type>>;
  { s.compose(a, b) } -> std::convertible_to<std::vector<typename S::object_type>>;
  { s.canonical(a) } -> std::convertible_to<typename S::object_type>;
  { s.key(a) } -> std::convertible_to<std::string>;
  { s.display(a) } -> std::convertible_to<std::string>;
};

// Unique decomposability: a system that can price objects additively exposes
// size(); absence of the hook means no content-preserving size exists.
template <class S>
concept HasSize = requires(const S& s, const typename S::object_type& a) {
  { s.size(a) } -> std::convertible_to<std::uint64_t>;
};

template <class S>
concept HasFragments = requires(const S& s, const typename S::object_type& a) {
  { s.fragments(a) } -> std::convertible_to<std::vector<typename S::object_type>>;
};

template <class S>
concept HasSplits = requires(const S& s, const typename S::object_type& a) {
  {
    s.splits(a)
  } -> std::convertible_to<
      std::vector<std::pair<typename S::object_type, typename S::object_type>>>;
};

template <class S>
concept HasMeasures = requires(const S& s) {
  {
    s.measures()
  } -> std::convertible_to<std::vector<MeasureSpec<typename S::object_type>>>;
};

template <class S>
concept HasRootLowerBound = requires(const S& s, const typename S::object_type& a) {
  { s.root_lower_bound(a) } -> std::convertible_to<std::uint64_t>;
};

// compose_contains(z, a, b): does composing a with b reach z?  Product first,
// matching the membership question being asked.
template <class S>
concept HasComposeContains =
    requires(const S& s, const typename S::object_type& a,
             const typename S::object_type& b, const typename S::object_type& z) {
      { s.compose_contains(z, a, b) } -> std::convertible_to<bool>;
    };

template <class S>
concept HasParse = requires(const S& s, const std::string& t) {
  { s.parse(t) } -> std::convertible_to<typename S::object_type>;
};

namespace detail {

template <System S>
bool compose_membership(const S& sys, const typename S::object_type& a,
                        const typename S::object_type& b,
                        const typename S::object_type& z) {
  if constexpr (HasComposeContains<S>) {
    return sys.compose_contains(z, a, b);
  } else {
    const std::string zk = sys.key(z);
    for (const auto& p : sys.compose(a, b))
      if (sys.key(p) == zk) return true;
    return false;
  }
}

template <System S>
std::unordered_set<std::string> basis_key_set(const S& sys) {
  std::unordered_set<std::string> keys;
  for (const auto& b : sys.basis()) keys.insert(sys.key(b));
  return keys;
}

}  // namespace detail

// Resolve a pathway reference against (basis, steps-so-far).  Returns nullptr
// for out-of-range references.
template <class Obj>
const Obj* pathway_entry(const Pathway<Obj>& p, std::int64_t ref,
                         std::size_t steps_done) {
  if (ref < 0) {
    std::size_t slot = static_cast<std::size_t>(-ref - 1);
    if (slot >= p.basis_objects.size()) return nullptr;
    return &p.basis_objects[slot];
  }
  if (ref == 0) return nullptr;
  std::size_t s = static_cast<std::size_t>(ref - 1);
  if (s >= steps_done) return nullptr;
  return &p.steps[s].product;
}

template <System S>
ValidityReport validate_pathway(const S& sys,
                                const Pathway<typename S::object_type>& p) {
  ValidityReport rep;
  auto basis_keys = detail::basis_key_set(sys);
  for (std::size_t k = 0; k < p.basis_objects.size(); ++k) {
    if (!basis_keys.count(sys.key(sys.canonical(p.basis_objects[k])))) {
      rep.valid = false;
      rep.first_invalid = -static_cast<std::int64_t>(k) - 1;
      rep.reason = "basis entry is not a basis object of the system";
      return rep;
    }
  }
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& st = p.steps[s];
    const auto* l = pathway_entry(p, st.left, s);
    const auto* r = pathway_entry(p, st.right, s);
    if (!l || !r) {
      rep.valid = false;
      rep.first_invalid = static_cast<std::int64_t>(s) + 1;
      rep.reason = "step references an entry that does not precede it";
      return rep;
    }
    if (!detail::compose_membership(sys, *l, *r, st.product)) {
      rep.valid = false;
      rep.first_invalid = static_cast<std::int64_t>(s) + 1;
      rep.reason = "step product is not a composition of its parents";
      return rep;
    }
  }
  return rep;
}

// Values of a measure along the whole pathway: basis entries first, then one
// value per step (sum of the parent values).
template <System S>
std::vector<double> evaluate_measure(const S& sys,
                                     const MeasureSpec<typename S::object_type>& m,
                                     const Pathway<typename S::object_type>& p) {
  std::unordered_map<std::string, double> basis_value;
  for (const auto& [obj, v] : m.basis_values) basis_value[sys.key(obj)] = v;

  std::vector<double> out;
  out.reserve(p.basis_objects.size() + p.steps.size());
  std::vector<double> step_value(p.steps.size(), 0.0);
  for (const auto& b : p.basis_objects) {
    auto it = basis_value.find(sys.key(b));
    if (it == basis_value.end())
      throw UnknownBasisObject("measure has no value for a basis entry: " +
                               sys.display(b));
    out.push_back(it->second);
  }
  auto value_of = [&](std::int64_t ref, std::size_t done) -> double {
    if (ref < 0) return out[static_cast<std::size_t>(-ref - 1)];
    (void)done;
    return step_value[static_cast<std::size_t>(ref - 1)];
  };
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& st = p.steps[s];
    if (!pathway_entry(p, st.left, s) || !pathway_entry(p, st.right, s))
      throw std::invalid_argument("pathway step references a later entry");
    step_value[s] = value_of(st.left, s) + value_of(st.right, s);
    out.push_back(step_value[s]);
  }
  return out;
}

// Size of an object under the all-ones measure.  Only meaningful for
// uniquely decomposable systems, which expose the closed form directly.
template <System S>
  requires HasSize<S>
std::uint64_t object_size(const S& sys, const typename S::object_type& x) {
  return sys.size(x);
}

inline std::uint64_t upper_bound_from_size(std::uint64_t size) {
  if (size == 0) throw std::invalid_argument("object size must be positive");
  return size - 1;
}

// Upper bound q^n on the probability that chance assembles an object whose
// shortest pathway has n steps, when each step succeeds with probability q.
inline double max_pathway_probability(double q, std::uint64_t n) {
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("step probability must be in (0, 1]");
  return std::pow(q, static_cast<double>(n));
}

}  // namespace pa
