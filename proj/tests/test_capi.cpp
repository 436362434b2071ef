#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>
#include <pathway.h>

#include "pa/common.hpp"

using nlohmann::json;

namespace {

struct Result {
  pa_result* r = nullptr;
  ~Result() { pa_result_free(r); }
};

struct Buffer {
  pa_buffer b{nullptr, 0};
  ~Buffer() { pa_buffer_free(&b); }
  std::string str() const {
    return std::string(reinterpret_cast<const char*>(b.data), b.size);
  }
};

pa_search_options defaults() {
  pa_search_options o;
  pa_search_options_init(&o);
  return o;
}

}  // namespace

TEST_CASE("option defaults") {
  auto o = defaults();
  CHECK(std::string(o.algorithm) == "exhaustive");
  CHECK(o.max_index == 0);
  CHECK(o.dedup == 1);
  CHECK(o.seed == 12345);
  CHECK(o.sample_count == 100);
  CHECK(o.node_budget == 50000000);
  CHECK(o.allow_reversal == 0);
}

TEST_CASE("status names") {
  CHECK(std::string(pa_status_name(PA_OK)) == "ok");
  CHECK(std::string(pa_status_name(PA_ERR_PARSE)) == "parse-error");
  CHECK(std::string(pa_status_name(PA_ERR_BUDGET)) == "budget-exceeded");
  CHECK(std::string(pa_status_name(PA_ERR_MALFORMED_STREAM)) ==
        "malformed-stream");
  CHECK(std::string(pa_status_name(PA_ERR_IO)) == "io-error");
  CHECK(std::string(pa_status_name(PA_ERR_INVALID_ARGUMENT)) ==
        "invalid-argument");
  CHECK(std::string(pa_status_name(PA_ERR_INTERNAL)) == "internal-error");
}

TEST_CASE("pa_index_number") {
  Result res;
  REQUIRE(pa_index_number(128, nullptr, &res.r) == PA_OK);
  REQUIRE(res.r != nullptr);
  CHECK(pa_result_index(res.r) == 7);
  CHECK(pa_result_exact(res.r) == 1);
  CHECK(pa_result_lower_bound(res.r) == 7);
  CHECK(pa_result_has_upper_bound(res.r) == 1);
  CHECK(pa_result_upper_bound(res.r) == 7);

  json j = json::parse(pa_result_json(res.r));
  CHECK(j["index"] == 7);
  CHECK(j["exact"] == true);
  CHECK(j["witness"]["steps"].size() == 7);

  SUBCASE("zero is rejected") {
    Result bad;
    CHECK(pa_index_number(0, nullptr, &bad.r) == PA_ERR_INVALID_ARGUMENT);
    CHECK(bad.r == nullptr);
    CHECK(std::string(pa_last_error()).size() > 0);
  }
  SUBCASE("unknown algorithm") {
    auto o = defaults();
    o.algorithm = "psychic";
    Result bad;
    CHECK(pa_index_number(6, &o, &bad.r) == PA_ERR_INVALID_ARGUMENT);
  }
  SUBCASE("null output") {
    CHECK(pa_index_number(6, nullptr, nullptr) == PA_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("budget cap keeps partial bounds") {
  auto o = defaults();
  o.algorithm = "sampled";
  o.max_index = 3;
  Result res;
  REQUIRE(pa_index_number(128, &o, &res.r) == PA_ERR_BUDGET);
  REQUIRE(res.r != nullptr);
  CHECK(pa_result_lower_bound(res.r) == 5);
  CHECK(pa_result_has_upper_bound(res.r) == 1);
  CHECK(pa_result_upper_bound(res.r) >= 7);
  json j = json::parse(pa_result_json(res.r));
  CHECK(j["error"] == "budget-exceeded");
  CHECK(j["lower_bound"] == 5);
  CHECK(std::string(pa_last_error()).size() > 0);
}

TEST_CASE("pa_index_string") {
  Result res;
  REQUIRE(pa_index_string("abab", nullptr, &res.r) == PA_OK);
  CHECK(pa_result_index(res.r) == 2);

  auto o = defaults();
  o.allow_reversal = 1;
  Result rev;
  REQUIRE(pa_index_string("abba", &o, &rev.r) == PA_OK);
  CHECK(pa_result_index(rev.r) == 2);
  Result plain;
  REQUIRE(pa_index_string("abba", nullptr, &plain.r) == PA_OK);
  CHECK(pa_result_index(plain.r) == 3);
}

TEST_CASE("pa_index_graph") {
  const char* p4 =
      "palette: mono\n"
      "nodes: 0 0 0 0\n"
      "edge: 0 1\n"
      "edge: 1 2\n"
      "edge: 2 3\n";
  Result res;
  REQUIRE(pa_index_graph(p4, nullptr, &res.r) == PA_OK);
  CHECK(pa_result_index(res.r) == 2);
  CHECK(pa_result_exact(res.r) == 1);

  Result bad;
  CHECK(pa_index_graph("nodes: 0\n", nullptr, &bad.r) == PA_ERR_PARSE);
  CHECK(bad.r == nullptr);
}

TEST_CASE("pa_index_image") {
  const char* board =
      "P1\n"
      "4 4\n"
      "0101\n"
      "1010\n"
      "0101\n"
      "1010\n";
  Result res;
  REQUIRE(pa_index_image(board, 0, nullptr, &res.r) == PA_OK);
  CHECK(pa_result_index(res.r) == 4);
  CHECK(pa_result_exact(res.r) == 1);

  Result locked;
  REQUIRE(pa_index_image(board, 1, nullptr, &locked.r) == PA_OK);
  CHECK(pa_result_index(locked.r) == 5);
  CHECK(pa_result_exact(locked.r) == 1);

  Result bad;
  CHECK(pa_index_image("P3\n1 1\n0\n", 0, nullptr, &bad.r) == PA_ERR_PARSE);
}

TEST_CASE("pa_index_group_element") {
  const char* z5 =
      R"({"table": [[0,1,2,3,4],[1,2,3,4,0],[2,3,4,0,1],[3,4,0,1,2],[4,0,1,2,3]],
          "generators": [1]})";
  Result res;
  REQUIRE(pa_index_group_element(z5, 4, nullptr, &res.r) == PA_OK);
  CHECK(pa_result_index(res.r) == 2);

  Result bad;
  CHECK(pa_index_group_element("{]", 0, nullptr, &bad.r) == PA_ERR_PARSE);
  Result oob;
  CHECK(pa_index_group_element(z5, 9, nullptr, &oob.r) ==
        PA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("co-assembly entry points") {
  std::vector<uint64_t> xs{2, 4, 8};
  Result nums;
  REQUIRE(pa_coindex_numbers(xs.data(), xs.size(), nullptr, &nums.r) == PA_OK);
  CHECK(pa_result_index(nums.r) == 3);

  const char* texts[] = {"ab", "ba"};
  Result strs;
  REQUIRE(pa_coindex_strings(texts, 2, nullptr, &strs.r) == PA_OK);
  CHECK(pa_result_index(strs.r) == 2);

  const char* g1 =
      "palette: a b\n"
      "nodes: 0 0\n"
      "edge: 0 1\n";
  const char* g2 =
      "palette: a b\n"
      "nodes: 0 1\n"
      "edge: 0 1\n";
  const char* graphs[] = {g1, g2};
  Result grs;
  REQUIRE(pa_coindex_graphs(graphs, 2, nullptr, &grs.r) == PA_OK);
  CHECK(pa_result_index(grs.r) == 2);

  const char* z3 = R"({"table": [[0,1,2],[1,2,0],[2,0,1]], "generators": [1]})";
  Result grp;
  REQUIRE(pa_coindex_group(z3, nullptr, &grp.r) == PA_OK);
  CHECK(pa_result_index(grp.r) == 2);
}

TEST_CASE("chain entry points") {
  uint64_t l = 0;
  REQUIRE(pa_chain_length(127, &l) == PA_OK);
  CHECK(l == 10);
  REQUIRE(pa_chain_length(1, &l) == PA_OK);
  CHECK(l == 0);
  CHECK(pa_chain_length(0, &l) == PA_ERR_INVALID_ARGUMENT);

  uint64_t s = 0;
  REQUIRE(pa_schonhage(128, &s) == PA_OK);
  CHECK(s == 5);
  REQUIRE(pa_schonhage(127, &s) == PA_OK);
  CHECK(s == 8);

  uint64_t mer = 0, conj = 0;
  REQUIRE(pa_scholz_brauer(7, &mer, &conj) == PA_OK);
  CHECK(mer == 10);
  CHECK(conj == 10);

  char* cj = nullptr;
  REQUIRE(pa_chain_json(6, &cj) == PA_OK);
  REQUIRE(cj != nullptr);
  json j = json::parse(cj);
  CHECK(j["n"] == 6);
  CHECK(j["l"] == 3);
  CHECK(j["witness"].size() == 4);
  CHECK(j["witness"][0] == 1);
  CHECK(j["witness"][3] == 6);
  CHECK(j["schonhage"].get<uint64_t>() <= 3);
  pa_string_free(cj);
}

TEST_CASE("codec entry points") {
  auto o = defaults();
  o.algorithm = "tree";
  const std::string text = "abababababababab";
  Buffer packed;
  REQUIRE(pa_compress_bytes(reinterpret_cast<const uint8_t*>(text.data()),
                            text.size(), &o, &packed.b) == PA_OK);
  REQUIRE(packed.b.size >= 4);
  CHECK(std::memcmp(packed.b.data, "PA01", 4) == 0);

  Buffer plain;
  REQUIRE(pa_decompress_bytes(packed.b.data, packed.b.size, &plain.b) == PA_OK);
  CHECK(plain.str() == text);

  Buffer lz;
  REQUIRE(pa_lzw_compress_bytes(reinterpret_cast<const uint8_t*>(text.data()),
                                text.size(), &lz.b) == PA_OK);
  CHECK(std::memcmp(lz.b.data, "LZ16", 4) == 0);
  Buffer lzplain;
  REQUIRE(pa_lzw_decompress_bytes(lz.b.data, lz.b.size, &lzplain.b) == PA_OK);
  CHECK(lzplain.str() == text);

  SUBCASE("wrong magic is refused") {
    Buffer out;
    CHECK(pa_decompress_bytes(lz.b.data, lz.b.size, &out.b) ==
          PA_ERR_MALFORMED_STREAM);
    Buffer out2;
    CHECK(pa_lzw_decompress_bytes(packed.b.data, packed.b.size, &out2.b) ==
          PA_ERR_MALFORMED_STREAM);
  }
  SUBCASE("empty input round trips") {
    Buffer e;
    REQUIRE(pa_compress_bytes(nullptr, 0, &o, &e.b) == PA_OK);
    CHECK(e.b.size == 4);
    Buffer back;
    REQUIRE(pa_decompress_bytes(e.b.data, e.b.size, &back.b) == PA_OK);
    CHECK(back.b.size == 0);
  }
  SUBCASE("garbage is refused") {
    const uint8_t junk[] = {1, 2, 3};
    Buffer out;
    CHECK(pa_decompress_bytes(junk, 3, &out.b) == PA_ERR_MALFORMED_STREAM);
  }
}

TEST_CASE("pa_compare_compression") {
  pa_compression_stats st{};
  const std::string text = "abab";
  REQUIRE(pa_compare_compression(reinterpret_cast<const uint8_t*>(text.data()),
                                 text.size(), nullptr, &st) == PA_OK);
  CHECK(st.input_bytes == 4);
  CHECK(st.pa_output_bytes == 12);
  CHECK(st.lzw_output_bytes == 10);
  CHECK(st.pathway_length_used == 2);
}

TEST_CASE("pa_input_digest") {
  char hex[17];
  pa_input_digest(reinterpret_cast<const uint8_t*>("abc"), 3, hex);
  CHECK(std::string(hex) == pa::fnv1a64_hex("abc"));
  CHECK(std::string(hex).size() == 16);
  pa_input_digest(nullptr, 0, hex);
  CHECK(std::string(hex) == pa::fnv1a64_hex(""));
}
