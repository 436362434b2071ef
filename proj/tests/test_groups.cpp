#include <doctest.h>

#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "pa/groups.hpp"

using table_t = std::vector<std::vector<std::uint32_t>>;

namespace {

table_t cyclic(std::uint32_t n) {
  table_t t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

// identity 0, all six permutations of three points
pa::FiniteGroup sym3() {
  table_t perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  return pa::group_from_permutations(perms);
}

}  // namespace

TEST_CASE("verify_group_axioms accepts groups") {
  for (std::uint32_t n : {1u, 2u, 3u, 6u, 8u}) {
    auto check = pa::verify_group_axioms(cyclic(n));
    CAPTURE(n);
    CHECK(check.valid);
    CHECK(check.reason.empty());
  }
  CHECK(pa::verify_group_axioms(sym3().table).valid);
}

TEST_CASE("verify_group_axioms pinpoints broken tables") {
  SUBCASE("empty") {
    CHECK_FALSE(pa::verify_group_axioms({}).valid);
  }
  SUBCASE("ragged row") {
    auto t = cyclic(3);
    t[1].pop_back();
    CHECK_FALSE(pa::verify_group_axioms(t).valid);
  }
  SUBCASE("entry out of range") {
    auto t = cyclic(3);
    t[2][2] = 7;
    CHECK_FALSE(pa::verify_group_axioms(t).valid);
  }
  SUBCASE("duplicate in a row") {
    auto t = cyclic(4);
    t[1][2] = t[1][1];
    CHECK_FALSE(pa::verify_group_axioms(t).valid);
  }
  SUBCASE("relabelled two-element group still passes") {
    // identity sits at index 1 here, which is fine
    table_t t{{1, 0}, {0, 1}};
    CHECK(pa::verify_group_axioms(t).valid);
  }
  SUBCASE("latin square without an identity") {
    table_t t{{0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    auto check = pa::verify_group_axioms(t);
    CHECK_FALSE(check.valid);
  }
  SUBCASE("a loop that is not associative") {
    table_t t{{0, 1, 2, 3, 4},
              {1, 0, 3, 4, 2},
              {2, 3, 4, 0, 1},
              {3, 4, 1, 2, 0},
              {4, 2, 0, 1, 3}};
    auto check = pa::verify_group_axioms(t);
    CHECK_FALSE(check.valid);
    CHECK(check.counterexample.size() == 3);
  }
}

TEST_CASE("make_group") {
  auto g = pa::make_group(cyclic(6));
  CHECK(g.order() == 6);
  CHECK(g.identity == 0);
  CHECK(g.inv(2) == 4);
  CHECK(g.mul(5, 3) == 2);

  auto bad = cyclic(3);
  bad[2][2] = 2;
  CHECK_THROWS_AS(pa::make_group(bad), std::invalid_argument);
}

TEST_CASE("group_from_permutations") {
  auto g = sym3();
  CHECK(g.order() == 6);
  CHECK(pa::verify_group_axioms(g.table).valid);
  CHECK(g.identity == 0);
  // transpositions are involutions
  CHECK(g.inv(1) == 1);
  CHECK(g.inv(3) == 3);
  // the two 3-cycles invert each other
  CHECK(g.inv(4) == 5);

  SUBCASE("lists that are not closed are rejected") {
    table_t open{{0, 1, 2}, {1, 0, 2}, {1, 2, 0}};
    CHECK_THROWS_AS(pa::group_from_permutations(open), std::invalid_argument);
  }
  SUBCASE("non-permutations are rejected") {
    table_t dup{{0, 0, 2}};
    CHECK_THROWS_AS(pa::group_from_permutations(dup), std::invalid_argument);
  }
}

TEST_CASE("group_compose_rule covers inverses and both orders") {
  auto z5 = pa::make_group(cyclic(5));
  CHECK(pa::group_compose_rule(z5, 1, 1) ==
        std::vector<std::uint32_t>{0, 2, 3});
  CHECK(pa::group_compose_rule(z5, 0, 0) == std::vector<std::uint32_t>{0});

  auto s3 = sym3();
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = 0; b < 6; ++b) {
      auto prods = pa::group_compose_rule(s3, a, b);
      CHECK(!prods.empty());
      CHECK(prods.size() <= 8);
      for (std::size_t i = 1; i < prods.size(); ++i)
        CHECK(prods[i - 1] < prods[i]);
      bool has_ab = false;
      for (auto p : prods) has_ab |= (p == s3.mul(a, b));
      CHECK(has_ab);
    }
}

TEST_CASE("group_from_json") {
  auto in = pa::group_from_json(
      R"({"table": [[0,1],[1,0]], "generators": [1]})");
  CHECK(in.group.order() == 2);
  CHECK(in.generators == std::vector<std::uint32_t>{1});

  auto perm = pa::group_from_json(
      R"({"permutations": [[0,1,2],[1,2,0],[2,0,1]], "generators": [1]})");
  CHECK(perm.group.order() == 3);

  CHECK_THROWS_AS(pa::group_from_json("{"), pa::ParseError);
  CHECK_THROWS_AS(pa::group_from_json(R"({"generators": [1]})"), pa::ParseError);
  CHECK_THROWS_AS(pa::group_from_json(R"({"table": [[0]]})"), pa::ParseError);
  CHECK_THROWS_AS(pa::group_from_json(R"({"table": [[0]], "generators": []})"),
                  pa::ParseError);
  CHECK_THROWS_AS(
      pa::group_from_json(R"({"table": [[0]], "generators": [4]})"),
      pa::ParseError);
  CHECK_THROWS_AS(
      pa::group_from_json(R"({"table": "nope", "generators": [0]})"),
      pa::ParseError);
}

TEST_CASE("group system construction") {
  auto z6 = pa::make_group(cyclic(6));
  CHECK_THROWS_AS(pa::GroupSystem(z6, {2}), pa::UnreachableElement);
  CHECK_NOTHROW(pa::GroupSystem(z6, {1}));
  CHECK_NOTHROW(pa::GroupSystem(z6, {2, 3}));
  CHECK_THROWS_AS(pa::GroupSystem(z6, {}), std::invalid_argument);
  CHECK_THROWS_AS(pa::GroupSystem(z6, {9}), std::invalid_argument);

  pa::GroupSystem sys(z6, {1});
  CHECK(sys.canonical(3) == 3);
  CHECK_THROWS_AS(sys.canonical(6), std::invalid_argument);
  CHECK(sys.parse("4") == 4);
  CHECK_THROWS_AS(sys.parse("x"), pa::ParseError);
  CHECK_THROWS_AS(sys.parse("12"), pa::ParseError);
  CHECK(sys.measures().size() == 1);
}

TEST_CASE("element index known values") {
  auto z5 = pa::make_group(cyclic(5));
  auto r = pa::element_assembly_index(z5, {1}, 4);
  CHECK(r.index == 2);
  CHECK(r.exact);

  auto z8 = pa::make_group(cyclic(8));
  CHECK(pa::element_assembly_index(z8, {1}, 4).index == 2);
  CHECK(pa::element_assembly_index(z8, {1}, 1).index == 0);
  CHECK(pa::element_assembly_index(z8, {1}, 0).index == 1);
  CHECK(pa::element_assembly_index(z8, {1}, 6).index == 1);
  CHECK(pa::element_assembly_index(z8, {1}, 7).index == 2);
}

TEST_CASE("element index matches the oracle") {
  for (std::uint32_t n : {4u, 5u, 6u, 7u, 8u}) {
    auto t = cyclic(n);
    auto g = pa::make_group(t);
    for (std::uint32_t x = 0; x < n; ++x) {
      auto r = pa::element_assembly_index(g, {1}, x);
      CAPTURE(n);
      CAPTURE(x);
      CHECK(r.exact);
      CHECK(r.index == oracle::group_min_steps(t, {1}, {x}));
    }
  }
  // note: index(x) and index(inv(x)) can differ, e.g. Z_4 with
  // generator 1 has index(1) = 0 but index(3) = 2
}

TEST_CASE("whole-group co-assembly") {
  auto z3 = pa::make_group(cyclic(3));
  auto r = pa::group_co_assembly_index(z3, {1});
  CHECK(r.index == 2);
  CHECK(r.exact);

  auto z1 = pa::make_group(cyclic(1));
  CHECK(pa::group_co_assembly_index(z1, {0}).index == 0);

  auto s3 = sym3();
  std::vector<std::uint32_t> all{0, 1, 2, 3, 4, 5};
  auto rs = pa::group_co_assembly_index(s3, {1, 4});
  CHECK(rs.index == 4);
  CHECK(rs.exact);
  CHECK(rs.index == oracle::group_min_steps(s3.table, {1, 4}, all));
}
