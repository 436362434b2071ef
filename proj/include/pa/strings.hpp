#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pa/common.hpp"
#include "pa/pathway.hpp"

namespace pa {

// Joining rules for two strings.  Without reversal the results are the two
// concatenations; with reversal every combination of flipped operands is
// allowed.  Output is deduplicated and sorted.
std::vector<std::string> compose_strings(const std::string& a,
                                         const std::string& b,
                                         bool allow_reversal = false);

// Substrings of length >= 2 occurring at least twice (overlaps count).  With
// reversal a substring and its mirror image pool their occurrences under the
// lexicographically smaller representative.
std::vector<std::pair<std::string, std::size_t>> repeated_substrings(
    const std::string& s, bool allow_reversal = false);

class TextSystem {
 public:
  using object_type = std::string;

  explicit TextSystem(std::string alphabet, bool allow_reversal = false);

  const std::string& alphabet() const { return alphabet_; }
  bool reversal() const { return reversal_; }

  std::vector<std::string> basis() const;
  std::vector<std::string> compose(const std::string& a,
                                   const std::string& b) const {
    return compose_strings(a, b, reversal_);
  }
  std::string canonical(const std::string& s) const;
  std::string key(const std::string& s) const { return s; }
  std::string display(const std::string& s) const { return s; }
  std::uint64_t size(const std::string& s) const { return s.size(); }

  std::vector<std::string> fragments(const std::string& s) const;
  std::vector<std::pair<std::string, std::string>> splits(
      const std::string& s) const;
  std::vector<MeasureSpec<std::string>> measures() const;

  std::string parse(const std::string& text) const { return canonical(text); }

  // longest input the exhaustive search will enumerate fragments for
  static constexpr std::uint64_t kMaxExhaustiveLength = 256;

 private:
  std::string alphabet_;
  bool reversal_;
};

}  // namespace pa

#include "pa/search.hpp"

namespace pa {

// Index over the letters actually present in s.
inline IndexResult<std::string> string_assembly_index(const std::string& s,
                                                      const SearchConfig& cfg = {},
                                                      bool allow_reversal = false) {
  TextSystem sys(s, allow_reversal);
  return assembly_index(sys, s, cfg);
}

}  // namespace pa
