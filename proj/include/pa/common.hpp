#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pa {

inline constexpr std::uint64_t kDefaultSeed = 12345;

enum class Algorithm { exhaustive, tree, sampled };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::exhaustive: return "exhaustive";
    case Algorithm::tree: return "tree";
    case Algorithm::sampled: return "sampled";
  }
  return "exhaustive";
}

inline std::optional<Algorithm> algorithm_from_name(const std::string& s) {
  if (s == "exhaustive") return Algorithm::exhaustive;
  if (s == "tree") return Algorithm::tree;
  if (s == "sampled") return Algorithm::sampled;
  return std::nullopt;
}

struct SearchConfig {
  Algorithm algorithm = Algorithm::exhaustive;
  std::optional<std::uint64_t> max_index;
  bool dedup = true;  // state deduplication in exhaustive search
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t sample_count = 100;
  std::uint64_t node_budget = 50'000'000;  // expanded search states before giving up
};

// Search ran out of depth, nodes or a domain materialization limit.
// Carries whatever bounds were established before the cutoff.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t lower,
                 std::optional<std::uint64_t> upper = std::nullopt)
      : std::runtime_error(what), lower_bound(lower), upper_bound(upper) {}
  std::uint64_t lower_bound = 0;
  std::optional<std::uint64_t> upper_bound;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line(line) {}
  std::size_t line = 0;
};

// Compressed input that cannot be decoded (bad magic, dangling reference,
// truncated block, reserved code).
class MalformedStream : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownBasisObject : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MeasureOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnreachableElement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace pa
