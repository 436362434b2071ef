#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathway.h"

using nlohmann::json;

namespace {

int exit_code(pa_status st) {
  switch (st) {
    case PA_OK: return 0;
    case PA_ERR_PARSE: return 2;
    case PA_ERR_INVALID_ARGUMENT: return 2;
    case PA_ERR_BUDGET: return 3;
    case PA_ERR_MALFORMED_STREAM: return 4;
    case PA_ERR_IO: return 5;
    case PA_ERR_INTERNAL: return 1;
  }
  return 1;
}

std::string digest_of(const std::string& bytes) {
  char hex[17];
  pa_input_digest(reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size(),
                  hex);
  return hex;
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return in.good() || in.eof();
}

bool write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return static_cast<bool>(out);
}

struct CommonOpts {
  std::string algorithm;
  std::uint64_t max_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t node_budget = 0;
  bool no_dedup = false;
  CLI::Option* budget_opt = nullptr;

  CommonOpts() {
    pa_search_options defaults;
    pa_search_options_init(&defaults);
    algorithm = defaults.algorithm;
    seed = defaults.seed;
    sample_count = defaults.sample_count;
    node_budget = defaults.node_budget;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--algorithm", algorithm, "exhaustive, tree or sampled")
        ->check(CLI::IsMember({"exhaustive", "tree", "sampled"}));
    cmd->add_option("--max-index", max_index,
                    "give up once the index would exceed this");
    cmd->add_option("--seed", seed, "random seed for sampling");
    cmd->add_option("--sample-count", sample_count, "pathways to sample");
    budget_opt = cmd->add_option("--node-budget", node_budget,
                                 "search states before giving up");
    cmd->add_flag("--no-dedup", no_dedup, "disable search state deduplication");
  }

  pa_search_options to_options() const {
    pa_search_options o;
    pa_search_options_init(&o);
    o.algorithm = algorithm.c_str();
    o.max_index = max_index;
    o.dedup = no_dedup ? 0 : 1;
    o.seed = seed;
    o.sample_count = sample_count;
    o.node_budget = node_budget;
    if ((!budget_opt || budget_opt->count() == 0)) {
      if (const char* env = std::getenv("PA_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) o.node_budget = v;
      }
    }
    return o;
  }
};

json config_json(const pa_search_options& o) {
  json j;
  j["algorithm"] = o.algorithm;
  if (o.max_index)
    j["max_index"] = o.max_index;
  else
    j["max_index"] = nullptr;
  j["dedup"] = o.dedup != 0;
  j["seed"] = o.seed;
  j["sample_count"] = o.sample_count;
  j["node_budget"] = o.node_budget;
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void print_report(const std::string& command, const std::string& digest_src,
                  json config, json result, double wall_ms) {
  json report;
  report["command"] = command;
  report["input_digest"] = digest_of(digest_src);
  report["config"] = std::move(config);
  report["result"] = std::move(result);
  report["wall_time_ms"] = wall_ms;
  std::cout << report.dump() << "\n";
}

int finish_index(const std::string& command, const std::string& digest_src,
                 json config, pa_status st, pa_result* res, const Timer& timer) {
  if (res) {
    print_report(command, digest_src, std::move(config),
                 json::parse(pa_result_json(res)), timer.ms());
    pa_result_free(res);
  }
  if (st != PA_OK)
    std::cerr << pa_status_name(st) << ": " << pa_last_error() << "\n";
  return exit_code(st);
}

int io_failure(const std::string& what) {
  std::cerr << "io-error: " << what << "\n";
  return exit_code(PA_ERR_IO);
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pathway assembly index, addition chains and the block codec"};
  app.require_subcommand(1);
  const std::string command = join_args(argc, argv);
  int rc = 0;

  // index ------------------------------------------------------------------
  auto* index = app.add_subcommand("index", "assembly index of one object");
  index->require_subcommand(1);

  auto* inum = index->add_subcommand("number", "positive integer");
  static std::uint64_t num_value = 0;
  inum->add_option("value", num_value, "target number")->required();
  static CommonOpts inum_opts;
  inum_opts.attach(inum);
  inum->callback([&] {
    Timer t;
    pa_search_options o = inum_opts.to_options();
    pa_result* res = nullptr;
    pa_status st = pa_index_number(num_value, &o, &res);
    rc = finish_index(command, std::to_string(num_value), config_json(o), st,
                      res, t);
  });

  auto* istr = index->add_subcommand("string", "text over its own letters");
  static std::string str_value;
  static bool str_reversal = false;
  istr->add_option("text", str_value, "target string")->required();
  istr->add_flag("--reversal", str_reversal, "allow reversed joins");
  static CommonOpts istr_opts;
  istr_opts.attach(istr);
  istr->callback([&] {
    Timer t;
    pa_search_options o = istr_opts.to_options();
    o.allow_reversal = str_reversal ? 1 : 0;
    pa_result* res = nullptr;
    pa_status st = pa_index_string(str_value.c_str(), &o, &res);
    json cfg = config_json(o);
    cfg["allow_reversal"] = str_reversal;
    rc = finish_index(command, str_value, std::move(cfg), st, res, t);
  });

  auto* igraph = index->add_subcommand("graph", "coloured graph from a file");
  static std::string graph_path;
  igraph->add_option("file", graph_path, "graph text file")->required();
  static CommonOpts igraph_opts;
  igraph_opts.attach(igraph);
  igraph->callback([&] {
    Timer t;
    std::string text;
    if (!read_file(graph_path, &text)) {
      rc = io_failure("cannot read " + graph_path);
      return;
    }
    pa_search_options o = igraph_opts.to_options();
    pa_result* res = nullptr;
    pa_status st = pa_index_graph(text.c_str(), &o, &res);
    rc = finish_index(command, text, config_json(o), st, res, t);
  });

  auto* iimage = index->add_subcommand("image", "pixel grid from a file");
  static std::string image_path;
  static bool image_locked = false;
  iimage->add_option("file", image_path, "image text file")->required();
  iimage->add_flag("--locked", image_locked,
                   "pin fragment orientation to the grid axes");
  static CommonOpts iimage_opts;
  iimage_opts.attach(iimage);
  iimage->callback([&] {
    Timer t;
    std::string text;
    if (!read_file(image_path, &text)) {
      rc = io_failure("cannot read " + image_path);
      return;
    }
    pa_search_options o = iimage_opts.to_options();
    pa_result* res = nullptr;
    pa_status st = pa_index_image(text.c_str(), image_locked ? 1 : 0, &o, &res);
    json cfg = config_json(o);
    cfg["orientation_locked"] = image_locked;
    rc = finish_index(command, text, std::move(cfg), st, res, t);
  });

  auto* igroup = index->add_subcommand("group", "group element from a JSON file");
  static std::string group_path;
  static std::uint32_t group_element = 0;
  igroup->add_option("file", group_path, "group JSON file")->required();
  igroup->add_option("--element", group_element, "element to build")->required();
  static CommonOpts igroup_opts;
  igroup_opts.attach(igroup);
  igroup->callback([&] {
    Timer t;
    std::string text;
    if (!read_file(group_path, &text)) {
      rc = io_failure("cannot read " + group_path);
      return;
    }
    pa_search_options o = igroup_opts.to_options();
    pa_result* res = nullptr;
    pa_status st = pa_index_group_element(text.c_str(), group_element, &o, &res);
    json cfg = config_json(o);
    cfg["element"] = group_element;
    rc = finish_index(command, text, std::move(cfg), st, res, t);
  });

  // coindex ----------------------------------------------------------------
  auto* coindex =
      app.add_subcommand("coindex", "one pathway containing every target");
  coindex->require_subcommand(1);

  auto* cnum = coindex->add_subcommand("number", "positive integers");
  static std::vector<std::uint64_t> cnum_values;
  cnum->add_option("values", cnum_values, "target numbers")->required();
  static CommonOpts cnum_opts;
  cnum_opts.attach(cnum);
  cnum->callback([&] {
    Timer t;
    pa_search_options o = cnum_opts.to_options();
    pa_result* res = nullptr;
    pa_status st =
        pa_coindex_numbers(cnum_values.data(), cnum_values.size(), &o, &res);
    std::string src;
    for (auto v : cnum_values) {
      src += std::to_string(v);
      src += '\n';
    }
    rc = finish_index(command, src, config_json(o), st, res, t);
  });

  auto* cstr = coindex->add_subcommand("string", "texts over their letters");
  static std::vector<std::string> cstr_values;
  static bool cstr_reversal = false;
  cstr->add_option("texts", cstr_values, "target strings")->required();
  cstr->add_flag("--reversal", cstr_reversal, "allow reversed joins");
  static CommonOpts cstr_opts;
  cstr_opts.attach(cstr);
  cstr->callback([&] {
    Timer t;
    pa_search_options o = cstr_opts.to_options();
    o.allow_reversal = cstr_reversal ? 1 : 0;
    std::vector<const char*> ptrs;
    std::string src;
    for (const auto& s : cstr_values) {
      ptrs.push_back(s.c_str());
      src += s;
      src += '\n';
    }
    pa_result* res = nullptr;
    pa_status st = pa_coindex_strings(ptrs.data(), ptrs.size(), &o, &res);
    json cfg = config_json(o);
    cfg["allow_reversal"] = cstr_reversal;
    rc = finish_index(command, src, std::move(cfg), st, res, t);
  });

  auto* cgraph = coindex->add_subcommand("graph", "coloured graphs from files");
  static std::vector<std::string> cgraph_paths;
  cgraph->add_option("files", cgraph_paths, "graph text files")->required();
  static CommonOpts cgraph_opts;
  cgraph_opts.attach(cgraph);
  cgraph->callback([&] {
    Timer t;
    std::vector<std::string> texts(cgraph_paths.size());
    std::vector<const char*> ptrs;
    std::string src;
    for (std::size_t i = 0; i < cgraph_paths.size(); ++i) {
      if (!read_file(cgraph_paths[i], &texts[i])) {
        rc = io_failure("cannot read " + cgraph_paths[i]);
        return;
      }
      ptrs.push_back(texts[i].c_str());
      src += texts[i];
      src += '\n';
    }
    pa_search_options o = cgraph_opts.to_options();
    pa_result* res = nullptr;
    pa_status st = pa_coindex_graphs(ptrs.data(), ptrs.size(), &o, &res);
    rc = finish_index(command, src, config_json(o), st, res, t);
  });

  auto* cgroup = coindex->add_subcommand("group", "every element of a group");
  static std::string cgroup_path;
  cgroup->add_option("file", cgroup_path, "group JSON file")->required();
  static CommonOpts cgroup_opts;
  cgroup_opts.attach(cgroup);
  cgroup->callback([&] {
    Timer t;
    std::string text;
    if (!read_file(cgroup_path, &text)) {
      rc = io_failure("cannot read " + cgroup_path);
      return;
    }
    pa_search_options o = cgroup_opts.to_options();
    pa_result* res = nullptr;
    pa_status st = pa_coindex_group(text.c_str(), &o, &res);
    rc = finish_index(command, text, config_json(o), st, res, t);
  });

  // chain ------------------------------------------------------------------
  auto emit_table = [&](std::uint64_t upto) -> int {
    std::cout << "n,l,bound\n";
    for (std::uint64_t n = 1; n <= upto; ++n) {
      std::uint64_t l = 0, b = 0;
      pa_status st = pa_chain_length(n, &l);
      if (st == PA_OK) st = pa_schonhage(n, &b);
      if (st != PA_OK) {
        std::cerr << pa_status_name(st) << ": " << pa_last_error() << "\n";
        return exit_code(st);
      }
      std::cout << n << ',' << l << ',' << b << "\n";
    }
    return 0;
  };

  auto* chain = app.add_subcommand("chain", "shortest addition chain");
  static std::uint64_t chain_n = 0;
  static bool chain_table = false;
  chain->add_option("n", chain_n, "chain target")->required();
  chain->add_flag("--table", chain_table, "CSV of n,l(n),bound for 1..n");
  chain->callback([&] {
    if (chain_table) {
      rc = emit_table(chain_n);
      return;
    }
    Timer t;
    char* out = nullptr;
    pa_status st = pa_chain_json(chain_n, &out);
    if (st != PA_OK) {
      std::cerr << pa_status_name(st) << ": " << pa_last_error() << "\n";
      rc = exit_code(st);
      return;
    }
    json result = json::parse(out);
    pa_string_free(out);
    print_report(command, std::to_string(chain_n), json::object(), result,
                 t.ms());
    rc = 0;
  });

  auto* table = app.add_subcommand("table", "CSV of n,l(n),bound");
  static std::uint64_t table_n = 0;
  table->add_option("n", table_n, "largest target")->required();
  table->callback([&] { rc = emit_table(table_n); });

  // codec ------------------------------------------------------------------
  auto* compress = app.add_subcommand("compress", "encode a file");
  static std::string comp_in, comp_out, comp_codec = "pa";
  compress->add_option("--input", comp_in, "file to encode")->required();
  compress->add_option("--output", comp_out, "encoded file")->required();
  compress->add_option("--codec", comp_codec, "pa or lzw")
      ->check(CLI::IsMember({"pa", "lzw"}));
  static CommonOpts comp_opts;
  comp_opts.algorithm = "tree";
  comp_opts.attach(compress);
  compress->callback([&] {
    Timer t;
    std::string text;
    if (!read_file(comp_in, &text)) {
      rc = io_failure("cannot read " + comp_in);
      return;
    }
    pa_search_options o = comp_opts.to_options();
    pa_buffer buf{nullptr, 0};
    pa_status st;
    if (comp_codec == "pa")
      st = pa_compress_bytes(reinterpret_cast<const uint8_t*>(text.data()),
                             text.size(), &o, &buf);
    else
      st = pa_lzw_compress_bytes(reinterpret_cast<const uint8_t*>(text.data()),
                                 text.size(), &buf);
    if (st != PA_OK) {
      std::cerr << pa_status_name(st) << ": " << pa_last_error() << "\n";
      rc = exit_code(st);
      return;
    }
    std::string bytes(reinterpret_cast<const char*>(buf.data), buf.size);
    pa_buffer_free(&buf);
    if (!write_file(comp_out, bytes)) {
      rc = io_failure("cannot write " + comp_out);
      return;
    }
    json result;
    result["codec"] = comp_codec;
    result["input_bytes"] = text.size();
    result["output_bytes"] = bytes.size();
    result["output"] = comp_out;
    json cfg = config_json(o);
    cfg["codec"] = comp_codec;
    print_report(command, text, std::move(cfg), result, t.ms());
    rc = 0;
  });

  auto* decompress = app.add_subcommand("decompress", "decode a file");
  static std::string dec_in, dec_out;
  decompress->add_option("--input", dec_in, "encoded file")->required();
  decompress->add_option("--output", dec_out, "decoded file")->required();
  decompress->callback([&] {
    Timer t;
    std::string bytes;
    if (!read_file(dec_in, &bytes)) {
      rc = io_failure("cannot read " + dec_in);
      return;
    }
    pa_buffer buf{nullptr, 0};
    pa_status st;
    std::string codec;
    if (bytes.size() >= 4 && bytes.compare(0, 4, "PA01") == 0) {
      codec = "pa";
      st = pa_decompress_bytes(reinterpret_cast<const uint8_t*>(bytes.data()),
                               bytes.size(), &buf);
    } else if (bytes.size() >= 4 && bytes.compare(0, 4, "LZ16") == 0) {
      codec = "lzw";
      st = pa_lzw_decompress_bytes(
          reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size(), &buf);
    } else {
      std::cerr << "malformed-stream: unknown magic\n";
      rc = exit_code(PA_ERR_MALFORMED_STREAM);
      return;
    }
    if (st != PA_OK) {
      std::cerr << pa_status_name(st) << ": " << pa_last_error() << "\n";
      rc = exit_code(st);
      return;
    }
    std::string text(reinterpret_cast<const char*>(buf.data), buf.size);
    pa_buffer_free(&buf);
    if (!write_file(dec_out, text)) {
      rc = io_failure("cannot write " + dec_out);
      return;
    }
    json result;
    result["codec"] = codec;
    result["input_bytes"] = bytes.size();
    result["output_bytes"] = text.size();
    result["output"] = dec_out;
    print_report(command, bytes, json::object(), result, t.ms());
    rc = 0;
  });

  auto* compare = app.add_subcommand("compare", "run both codecs and report sizes");
  static std::string cmp_in;
  compare->add_option("--input", cmp_in, "file to measure")->required();
  static CommonOpts cmp_opts;
  cmp_opts.algorithm = "tree";
  cmp_opts.attach(compare);
  compare->callback([&] {
    Timer t;
    std::string text;
    if (!read_file(cmp_in, &text)) {
      rc = io_failure("cannot read " + cmp_in);
      return;
    }
    pa_search_options o = cmp_opts.to_options();
    pa_compression_stats stats;
    pa_status st = pa_compare_compression(
        reinterpret_cast<const uint8_t*>(text.data()), text.size(), &o, &stats);
    if (st != PA_OK) {
      std::cerr << pa_status_name(st) << ": " << pa_last_error() << "\n";
      rc = exit_code(st);
      return;
    }
    json result;
    result["input_bytes"] = stats.input_bytes;
    result["pa_output_bytes"] = stats.pa_output_bytes;
    result["lzw_output_bytes"] = stats.lzw_output_bytes;
    result["pathway_length_used"] = stats.pathway_length_used;
    print_report(command, text, config_json(o), result, t.ms());
    rc = 0;
  });

  CLI11_PARSE(app, argc, argv);
  return rc;
}
