#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pa/common.hpp"

namespace pa {

// Additive composition over positive integers starting from 1.  The index of
// n equals the shortest addition-chain length for n.
class NumberSystem {
 public:
  using object_type = std::uint64_t;

  std::vector<object_type> basis() const { return {1}; }

  std::vector<object_type> compose(object_type a, object_type b) const {
    if (a > ~b) throw std::overflow_error("sum does not fit in 64 bits");
    return {a + b};
  }

  object_type canonical(object_type x) const {
    if (x == 0) throw std::invalid_argument("objects are positive integers");
    return x;
  }

  std::string key(object_type x) const {
    // fixed-width hex so lexicographic order matches numeric order
    char buf[17];
    for (int i = 15; i >= 0; --i) {
      buf[i] = "0123456789abcdef"[x & 0xf];
      x >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
  }

  std::string display(object_type x) const { return std::to_string(x); }

  std::uint64_t size(object_type x) const { return x; }

  object_type parse(const std::string& text) const {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(text, &used, 10);
    } catch (const std::exception&) {
      throw ParseError("not a positive integer: " + text, 1);
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
      ++used;
    if (used != text.size() || v == 0)
      throw ParseError("not a positive integer: " + text, 1);
    return v;
  }

  std::vector<std::pair<object_type, object_type>> splits(object_type n) const {
    std::vector<std::pair<object_type, object_type>> out;
    if (n <= 1) return out;
    auto push = [&](object_type a, object_type b) {
      if (a == 0 || b == 0) return;
      if (a > b) std::swap(a, b);
      for (const auto& p : out)
        if (p.first == a && p.second == b) return;
      out.emplace_back(a, b);
    };
    if (n <= 64) {
      for (object_type k = 1; k <= n / 2; ++k) push(k, n - k);
      return out;
    }
    push(n / 2, n - n / 2);
    object_type p = 1;
    while (p <= (n - 1) / 2) p <<= 1;  // largest power of two below n
    push(p, n - p);
    if (n <= 1024) push(n - 1, 1);
    return out;
  }
};

}  // namespace pa
