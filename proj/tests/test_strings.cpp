#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pa/chains.hpp"
#include "pa/strings.hpp"

using pa::TextSystem;

TEST_CASE("compose_strings") {
  CHECK(pa::compose_strings("ab", "ba") ==
        std::vector<std::string>{"abba", "baab"});
  CHECK(pa::compose_strings("a", "a") == std::vector<std::string>{"aa"});
  CHECK(pa::compose_strings("ab", "c", true) ==
        std::vector<std::string>{"abc", "bac", "cab", "cba"});
  CHECK(pa::compose_strings("ab", "ab", true) ==
        std::vector<std::string>{"abab", "abba", "baab", "baba"});
}

TEST_CASE("repeated_substrings") {
  using pairs = std::vector<std::pair<std::string, std::size_t>>;
  CHECK(pa::repeated_substrings("abab") == pairs{{"ab", 2}});
  CHECK(pa::repeated_substrings("aaaa") == pairs{{"aa", 3}, {"aaa", 2}});
  CHECK(pa::repeated_substrings("abcd").empty());
  CHECK(pa::repeated_substrings("abba", true) == pairs{{"ab", 2}, {"abb", 2}});
  CHECK(pa::repeated_substrings("abba", false).empty());
  CHECK_THROWS_AS(pa::repeated_substrings(std::string(5000, 'a')),
                  std::invalid_argument);
}

TEST_CASE("text system basics") {
  TextSystem sys("baa");
  CHECK(sys.alphabet() == "ab");
  CHECK(sys.basis() == std::vector<std::string>{"a", "b"});
  CHECK(sys.canonical("abba") == "abba");
  CHECK_THROWS_AS(sys.canonical(""), std::invalid_argument);
  CHECK_THROWS_AS(sys.canonical("abc"), std::invalid_argument);
  CHECK_THROWS_AS(TextSystem(""), std::invalid_argument);

  SUBCASE("fragments are every substring, shortest first") {
    CHECK(sys.fragments("aab") ==
          std::vector<std::string>{"a", "b", "aa", "ab", "aab"});
    TextSystem rev("ab", true);
    CHECK(rev.fragments("ab") ==
          std::vector<std::string>{"a", "b", "ab", "ba"});
  }

  SUBCASE("splits cover every cut of a short string") {
    auto sp = sys.splits("abab");
    REQUIRE(sp.size() == 3);
    CHECK(sp[0] == std::pair<std::string, std::string>{"a", "bab"});
    CHECK(sp[1] == std::pair<std::string, std::string>{"ab", "ab"});
    CHECK(sp[2] == std::pair<std::string, std::string>{"aba", "b"});
    CHECK(sys.splits("a").empty());
  }

  SUBCASE("splits of a long string stay sparse but consistent") {
    std::string s(300, 'a');
    auto sp = sys.splits(s);
    CHECK(sp.size() >= 1);
    CHECK(sp.size() <= 4);
    for (const auto& [u, v] : sp) CHECK(u.size() + v.size() == s.size());
  }

  SUBCASE("per-letter measures") {
    auto ms = sys.measures();
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].name == "count_a");
    CHECK(ms[1].name == "count_b");
  }
}

TEST_CASE("string index known values") {
  auto idx = [](const std::string& s, bool rev = false) {
    return pa::string_assembly_index(s, {}, rev).index;
  };
  CHECK(idx("a") == 0);
  CHECK(idx("aa") == 1);
  CHECK(idx("abab") == 2);
  CHECK(idx("abcd") == 3);
  CHECK(idx("aaaa") == 2);
  CHECK(idx("aaaaaaaa") == 3);
  CHECK(idx("abcabc") == 3);
  CHECK(idx("abba") == 3);
  CHECK(idx("abba", true) == 2);

  SUBCASE("doubling ladders") {
    std::string s = "ab";
    for (unsigned k = 1; k <= 4; ++k) {
      s += s;
      CHECK(pa::string_assembly_index(s).index == k + 1);
    }
  }

  SUBCASE("exactness flags and witnesses") {
    auto r = pa::string_assembly_index("abab");
    CHECK(r.exact);
    CHECK(r.lower_bound <= r.index);
    CHECK(r.upper_bound >= r.index);
    TextSystem sys("ab");
    CHECK(pa::validate_pathway(sys, r.witness).valid);
    CHECK(r.witness.steps.back().product == "abab");
  }
}

TEST_CASE("string index agrees with the brute-force oracle") {
  std::mt19937_64 rng(20260814);
  const char letters[] = {'a', 'b', 'c'};
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t len = 1 + rng() % 8;
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += letters[rng() % 3];
    auto r = pa::string_assembly_index(s);
    CAPTURE(s);
    CHECK(r.exact);
    CHECK(r.index == oracle::string_index(s));
    CHECK(r.index >= pa::chains::optimal_chain_length_cached(s.size()));
    CHECK(r.index <= s.size() - 1);
  }
}

TEST_CASE("reversal never increases the index") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t len = 2 + rng() % 6;
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += char('a' + rng() % 2);
    auto plain = pa::string_assembly_index(s).index;
    auto mirrored = pa::string_assembly_index(s, {}, true).index;
    CAPTURE(s);
    CHECK(mirrored <= plain);
  }
}

TEST_CASE("exhaustive search declines oversized strings with bounds intact") {
  std::mt19937_64 rng(4242);
  std::string s;
  for (int i = 0; i < 300; ++i) s += char('a' + rng() % 3);
  try {
    pa::string_assembly_index(s);
    FAIL("expected BudgetExceeded");
  } catch (const pa::BudgetExceeded& e) {
    CHECK(e.lower_bound >= 9);
    REQUIRE(e.upper_bound.has_value());
    CHECK(*e.upper_bound < 300);
    CHECK(*e.upper_bound >= e.lower_bound);
  }

  SUBCASE("the tree mode still answers") {
    pa::SearchConfig cfg;
    cfg.algorithm = pa::Algorithm::tree;
    auto r = pa::string_assembly_index(s, cfg);
    CHECK(r.index < 300);
    CHECK(r.lower_bound >= 9);
    TextSystem sys("abc");
    CHECK(pa::validate_pathway(sys, r.witness).valid);
  }
}
