#include "pa/strings.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "pa/chains.hpp"

namespace pa {

namespace {

std::string reversed(const std::string& s) {
  return std::string(s.rbegin(), s.rend());
}

// smallest period via the KMP failure function
std::size_t smallest_period(const std::string& s) {
  std::size_t n = s.size();
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = pi[i - 1];
    while (j > 0 && s[i] != s[j]) j = pi[j - 1];
    if (s[i] == s[j]) ++j;
    pi[i] = j;
  }
  return n - pi[n - 1];
}

}  // namespace

std::vector<std::string> compose_strings(const std::string& a,
                                         const std::string& b,
                                         bool allow_reversal) {
  std::vector<std::string> out{a + b, b + a};
  if (allow_reversal) {
    std::string ra = reversed(a), rb = reversed(b);
    out.push_back(ra + b);
    out.push_back(b + ra);
    out.push_back(a + rb);
    out.push_back(rb + a);
    out.push_back(ra + rb);
    out.push_back(rb + ra);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<std::string, std::size_t>> repeated_substrings(
    const std::string& s, bool allow_reversal) {
  if (s.size() > 4096)
    throw std::invalid_argument("input too long for substring counting");
  std::map<std::string, std::size_t> counts;
  for (std::size_t len = 2; len < s.size(); ++len) {
    for (std::size_t i = 0; i + len <= s.size(); ++i) {
      std::string sub = s.substr(i, len);
      if (allow_reversal) sub = std::min(sub, reversed(sub));
      ++counts[sub];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> out;
  for (auto& [sub, c] : counts)
    if (c >= 2) out.emplace_back(sub, c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x.first < y.first;
  });
  return out;
}

TextSystem::TextSystem(std::string alphabet, bool allow_reversal)
    : alphabet_(std::move(alphabet)), reversal_(allow_reversal) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()),
                  alphabet_.end());
  if (alphabet_.empty()) throw std::invalid_argument("empty alphabet");
}

std::vector<std::string> TextSystem::basis() const {
  std::vector<std::string> out;
  for (char c : alphabet_) out.emplace_back(1, c);
  return out;
}

std::string TextSystem::canonical(const std::string& s) const {
  if (s.empty()) throw std::invalid_argument("empty string is not an object");
  for (char c : s)
    if (alphabet_.find(c) == std::string::npos)
      throw std::invalid_argument("string uses a letter outside the alphabet");
  return s;
}

std::vector<std::string> TextSystem::fragments(const std::string& s) const {
  if (s.size() > kMaxExhaustiveLength)
    throw BudgetExceeded("string too long for exhaustive fragment enumeration",
                         chains::schonhage_lower_bound(s.size()));
  std::set<std::string> seen;
  for (std::size_t len = 1; len <= s.size(); ++len)
    for (std::size_t i = 0; i + len <= s.size(); ++i) {
      std::string sub = s.substr(i, len);
      if (reversal_) seen.insert(reversed(sub));
      seen.insert(std::move(sub));
    }
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::pair<std::string, std::string>> TextSystem::splits(
    const std::string& s) const {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t n = s.size();
  if (n <= 1) return out;

  std::set<std::pair<std::string, std::string>> seen;
  auto push_cut = [&](std::size_t cut) {
    if (cut == 0 || cut >= n) return;
    std::string p = s.substr(0, cut), q = s.substr(cut);
    std::vector<std::pair<std::string, std::string>> cands{{p, q}};
    if (reversal_) {
      cands.emplace_back(reversed(p), q);
      cands.emplace_back(p, reversed(q));
      cands.emplace_back(reversed(p), reversed(q));
    }
    for (auto& [u, v] : cands) {
      if (v < u) std::swap(u, v);
      if (seen.emplace(u, v).second) out.emplace_back(u, v);
    }
  };

  if (n <= kMaxExhaustiveLength) {
    for (std::size_t cut = 1; cut < n; ++cut) push_cut(cut);
    return out;
  }
  push_cut(n / 2);
  std::size_t p = smallest_period(s);
  if (p < n) {
    push_cut(p);
    std::size_t m = (n - 1) / p * p;  // largest multiple of the period below n
    push_cut(m);
  }
  if (n <= 1024) push_cut(n - 1);
  return out;
}

std::vector<MeasureSpec<std::string>> TextSystem::measures() const {
  std::vector<MeasureSpec<std::string>> out;
  for (char c : alphabet_) {
    MeasureSpec<std::string> m;
    m.name = std::string("count_") + c;
    for (char b : alphabet_)
      m.basis_values.emplace_back(std::string(1, b), b == c ? 1.0 : 0.0);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace pa
