#include <doctest.h>

#include <cstdint>

#include "oracles.hpp"
#include "pa/chains.hpp"

using namespace pa::chains;

TEST_CASE("shortest chain lengths for known targets") {
  CHECK(optimal_chain_length(1) == 0);
  CHECK(optimal_chain_length(2) == 1);
  CHECK(optimal_chain_length(6) == 3);
  CHECK(optimal_chain_length(15) == 5);
  CHECK(optimal_chain_length(128) == 7);
  CHECK(optimal_chain_length(127) == 10);
}

TEST_CASE("chain witnesses validate and match the reported length") {
  for (std::uint64_t n : {1ull, 2ull, 6ull, 31ull, 127ull, 128ull, 1000ull}) {
    OptimalChain oc = optimal_chain(n);
    CHECK(validate_chain(oc.witness, n));
    CHECK(oc.witness.values.size() == oc.length + 1);
  }
}

TEST_CASE("powers of two need exactly their exponent") {
  for (unsigned k = 0; k <= 16; ++k)
    CHECK(optimal_chain_length(1ull << k) == k);
}

TEST_CASE("lengths match the breadth-first reference up to 64") {
  auto ref = oracle::chain_lengths(64);
  for (std::uint64_t n = 1; n <= 64; ++n)
    CHECK(optimal_chain_length(n) == ref[n - 1]);
}

TEST_CASE("logarithmic lower bound stays below the exact length") {
  CHECK(schonhage_lower_bound(1) == 0);
  CHECK(schonhage_lower_bound(127) == 8);
  CHECK(schonhage_lower_bound(128) == 5);
  for (std::uint64_t n = 1; n <= 128; ++n)
    CHECK(schonhage_lower_bound(n) <= optimal_chain_length(n));
}

TEST_CASE("chain target bounds checking") {
  CHECK_THROWS_AS(optimal_chain_length(0), std::invalid_argument);
  CHECK_THROWS_AS(schonhage_lower_bound(0), std::invalid_argument);
  try {
    optimal_chain_length(kMaxExactChainTarget + 1);
    FAIL("expected a budget error");
  } catch (const pa::BudgetExceeded& e) {
    CHECK(e.lower_bound == schonhage_lower_bound(kMaxExactChainTarget + 1));
  }
}

TEST_CASE("doubled-target comparison for small exponents") {
  CHECK(scholz_brauer_gap(1).mersenne_length == 0);
  CHECK(scholz_brauer_gap(1).conjectured == 0);
  CHECK(scholz_brauer_gap(2).mersenne_length == 2);
  CHECK(scholz_brauer_gap(2).conjectured == 2);
  ScholzBrauerGap g7 = scholz_brauer_gap(7);
  CHECK(g7.mersenne_length == 10);
  CHECK(g7.conjectured == 10);
  for (unsigned n = 1; n <= 8; ++n) {
    ScholzBrauerGap g = scholz_brauer_gap(n);
    CHECK(g.mersenne_length == g.conjectured);
  }
  CHECK_THROWS_AS(scholz_brauer_gap(0), std::invalid_argument);
  CHECK_THROWS_AS(scholz_brauer_gap(13), std::invalid_argument);
}

TEST_CASE("chain validation accepts sums and rejects everything else") {
  auto chain = [](std::vector<std::uint64_t> v) {
    AdditionChain c;
    c.values = std::move(v);
    return c;
  };
  CHECK(validate_chain(chain({1, 2, 3, 6}), 6));
  CHECK(validate_chain(chain({1, 2, 3, 6, 3, 9}), 9));
  CHECK(validate_chain(chain({1}), 1));
  CHECK_FALSE(validate_chain(chain({1, 2, 5}), 5));
  CHECK_FALSE(validate_chain(chain({}), 1));
  CHECK_FALSE(validate_chain(chain({2, 4}), 4));
  CHECK_FALSE(validate_chain(chain({1, 2, 4}), 8));
}

TEST_CASE("vector chain validation") {
  VectorChain c;
  c.dimension = 2;
  c.values = {{1, 0}, {0, 1}, {1, 1}, {2, 2}};
  CHECK(validate_vector_chain(c, {2, 2}));
  CHECK_FALSE(validate_vector_chain(c, {2, 3}));
  c.values.push_back({5, 5});
  CHECK_FALSE(validate_vector_chain(c, {5, 5}));
  VectorChain bad;
  bad.dimension = 2;
  bad.values = {{1, 0}, {1, 1}};  // second unit is wrong
  CHECK_FALSE(validate_vector_chain(bad, {1, 1}));
}

TEST_CASE("vector chain bound values") {
  CHECK(vector_chain_lower_bound({1}).bound == 0);
  VectorBound b22 = vector_chain_lower_bound({2, 2});
  CHECK(b22.bound == 2);
  CHECK(b22.exact_vector_search);
  CHECK(vector_chain_lower_bound({6, 2, 1}).bound >= 4);
  VectorBound locked = vector_chain_lower_bound({16, 16, 16, 16});
  CHECK(locked.bound == 7);
  CHECK(locked.exact_vector_search);
  VectorBound even = vector_chain_lower_bound({32, 32});
  CHECK(even.bound == 6);
  CHECK_THROWS_AS(vector_chain_lower_bound({}), std::invalid_argument);
  CHECK_THROWS_AS(vector_chain_lower_bound({0, 0}), std::invalid_argument);
}

TEST_CASE("vector bound falls back to the scalar bound on large sums") {
  VectorBound big = vector_chain_lower_bound({100, 100});
  CHECK_FALSE(big.exact_vector_search);
  CHECK(big.bound == optimal_chain_length_cached(200));
}
