#include "pathway.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "pa/chains.hpp"
#include "pa/common.hpp"
#include "pa/compress.hpp"
#include "pa/graphs.hpp"
#include "pa/groups.hpp"
#include "pa/numbers.hpp"
#include "pa/serialize.hpp"
#include "pa/strings.hpp"

struct pa_result {
  std::uint64_t index = 0;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  bool has_upper = false;
  bool exact = false;
  std::string json;
};

namespace {

thread_local std::string t_last_error;

pa_status fail(pa_status s, const std::string& what) {
  t_last_error = what;
  return s;
}

template <class F>
pa_status guarded(F&& f) {
  t_last_error.clear();
  try {
    return f();
  } catch (const pa::ParseError& e) {
    return fail(PA_ERR_PARSE, e.what());
  } catch (const pa::MalformedStream& e) {
    return fail(PA_ERR_MALFORMED_STREAM, e.what());
  } catch (const pa::BudgetExceeded& e) {
    return fail(PA_ERR_BUDGET, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::overflow_error& e) {
    return fail(PA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PA_ERR_INTERNAL, e.what());
  }
}

pa_status make_config(const pa_search_options* opts, pa::SearchConfig* cfg,
                      bool* allow_reversal) {
  *cfg = pa::SearchConfig{};
  if (allow_reversal) *allow_reversal = false;
  if (!opts) return PA_OK;
  if (opts->algorithm) {
    auto a = pa::algorithm_from_name(opts->algorithm);
    if (!a)
      return fail(PA_ERR_INVALID_ARGUMENT,
                  std::string("unknown algorithm: ") + opts->algorithm);
    cfg->algorithm = *a;
  }
  if (opts->max_index) cfg->max_index = opts->max_index;
  cfg->dedup = opts->dedup != 0;
  cfg->seed = opts->seed;
  cfg->sample_count = opts->sample_count;
  cfg->node_budget = opts->node_budget;
  if (allow_reversal) *allow_reversal = opts->allow_reversal != 0;
  return PA_OK;
}

template <pa::System S>
pa_status run_solve(const S& sys,
                    const std::vector<typename S::object_type>& targets,
                    const pa::SearchConfig& cfg, pa_result** out,
                    const pa::Pathway<typename S::object_type>* seed = nullptr) {
  try {
    pa::IndexResult<typename S::object_type> res =
        targets.size() == 1 ? pa::assembly_index(sys, targets[0], cfg, seed)
                            : pa::co_assembly_index(sys, targets, cfg);
    auto* r = new pa_result;
    r->index = res.index;
    r->lower = res.lower_bound;
    r->upper = res.upper_bound;
    r->has_upper = true;
    r->exact = res.exact;
    r->json = pa::index_result_to_json(sys, res).dump();
    *out = r;
    return PA_OK;
  } catch (const pa::BudgetExceeded& e) {
    auto* r = new pa_result;
    r->lower = e.lower_bound;
    r->has_upper = e.upper_bound.has_value();
    r->upper = e.upper_bound.value_or(0);
    nlohmann::json j;
    j["error"] = "budget-exceeded";
    j["message"] = e.what();
    j["lower_bound"] = e.lower_bound;
    if (e.upper_bound)
      j["upper_bound"] = *e.upper_bound;
    else
      j["upper_bound"] = nullptr;
    r->json = j.dump();
    *out = r;
    return fail(PA_ERR_BUDGET, e.what());
  }
}

pa_status copy_to_buffer(const std::string& bytes, pa_buffer* out) {
  out->data = static_cast<uint8_t*>(std::malloc(bytes.size() ? bytes.size() : 1));
  if (!out->data) return fail(PA_ERR_INTERNAL, "out of memory");
  std::memcpy(out->data, bytes.data(), bytes.size());
  out->size = bytes.size();
  return PA_OK;
}

char* copy_to_cstring(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) return nullptr;
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

std::string bytes_as_string(const uint8_t* data, size_t size) {
  if (!data || !size) return {};
  return std::string(reinterpret_cast<const char*>(data), size);
}

}  // namespace

extern "C" {

const char* pa_status_name(pa_status s) {
  switch (s) {
    case PA_OK: return "ok";
    case PA_ERR_PARSE: return "parse-error";
    case PA_ERR_BUDGET: return "budget-exceeded";
    case PA_ERR_MALFORMED_STREAM: return "malformed-stream";
    case PA_ERR_IO: return "io-error";
    case PA_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PA_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* pa_last_error(void) { return t_last_error.c_str(); }

void pa_search_options_init(pa_search_options* opts) {
  if (!opts) return;
  pa::SearchConfig defaults;
  opts->algorithm = "exhaustive";
  opts->max_index = 0;
  opts->dedup = defaults.dedup ? 1 : 0;
  opts->seed = defaults.seed;
  opts->sample_count = defaults.sample_count;
  opts->node_budget = defaults.node_budget;
  opts->allow_reversal = 0;
}

uint64_t pa_result_index(const pa_result* r) { return r->index; }
uint64_t pa_result_lower_bound(const pa_result* r) { return r->lower; }
int pa_result_has_upper_bound(const pa_result* r) { return r->has_upper ? 1 : 0; }
uint64_t pa_result_upper_bound(const pa_result* r) { return r->upper; }
int pa_result_exact(const pa_result* r) { return r->exact ? 1 : 0; }
const char* pa_result_json(const pa_result* r) { return r->json.c_str(); }
void pa_result_free(pa_result* r) { delete r; }

pa_status pa_index_number(uint64_t n, const pa_search_options* opts,
                          pa_result** out) {
  if (!out) return fail(PA_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::NumberSystem sys;
    return run_solve(sys, {n}, cfg, out);
  });
}

pa_status pa_index_string(const char* text, const pa_search_options* opts,
                          pa_result** out) {
  if (!out || !text) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  bool reversal = false;
  pa_status st = make_config(opts, &cfg, &reversal);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::TextSystem sys(text, reversal);
    return run_solve(sys, {std::string(text)}, cfg, out);
  });
}

pa_status pa_index_graph(const char* graph_text, const pa_search_options* opts,
                         pa_result** out) {
  if (!out || !graph_text) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::ColouredGraph g = pa::graph_from_text(graph_text);
    std::uint32_t palette = g.palette_size;
    for (std::uint32_t c : g.colours) palette = std::max(palette, c + 1);
    pa::GraphSystem sys(palette);
    return run_solve(sys, {g}, cfg, out);
  });
}

pa_status pa_index_image(const char* image_text, int orientation_locked,
                         const pa_search_options* opts, pa_result** out) {
  if (!out || !image_text) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::GridImage img = pa::image_from_text(image_text);
    img.orientation_locked = orientation_locked != 0;
    pa::ColouredGraph g = pa::grid_to_graph(img);
    pa::GraphSystem sys(g.palette_size);
    pa::Pathway<pa::ColouredGraph> seed = pa::grid_tree_pathway(img);
    return run_solve(sys, {g}, cfg, out, &seed);
  });
}

pa_status pa_index_group_element(const char* group_json, uint32_t element,
                                 const pa_search_options* opts, pa_result** out) {
  if (!out || !group_json) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::GroupInput in = pa::group_from_json(group_json);
    pa::GroupSystem sys(in.group, in.generators);
    return run_solve(sys, {element}, cfg, out);
  });
}

pa_status pa_coindex_numbers(const uint64_t* xs, size_t count,
                             const pa_search_options* opts, pa_result** out) {
  if (!out || (!xs && count)) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::NumberSystem sys;
    std::vector<std::uint64_t> targets(xs, xs + count);
    return run_solve(sys, targets, cfg, out);
  });
}

pa_status pa_coindex_strings(const char* const* texts, size_t count,
                             const pa_search_options* opts, pa_result** out) {
  if (!out || (!texts && count))
    return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  bool reversal = false;
  pa_status st = make_config(opts, &cfg, &reversal);
  if (st != PA_OK) return st;
  return guarded([&] {
    std::string alphabet;
    std::vector<std::string> targets;
    for (size_t i = 0; i < count; ++i) {
      if (!texts[i]) return fail(PA_ERR_INVALID_ARGUMENT, "null string");
      targets.emplace_back(texts[i]);
      alphabet += targets.back();
    }
    pa::TextSystem sys(alphabet, reversal);
    return run_solve(sys, targets, cfg, out);
  });
}

pa_status pa_coindex_graphs(const char* const* graph_texts, size_t count,
                            const pa_search_options* opts, pa_result** out) {
  if (!out || (!graph_texts && count))
    return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    std::vector<pa::ColouredGraph> targets;
    std::uint32_t palette = 1;
    for (size_t i = 0; i < count; ++i) {
      if (!graph_texts[i]) return fail(PA_ERR_INVALID_ARGUMENT, "null graph");
      targets.push_back(pa::graph_from_text(graph_texts[i]));
      palette = std::max(palette, targets.back().palette_size);
      for (std::uint32_t c : targets.back().colours)
        palette = std::max(palette, c + 1);
    }
    pa::GraphSystem sys(palette);
    return run_solve(sys, targets, cfg, out);
  });
}

pa_status pa_coindex_group(const char* group_json, const pa_search_options* opts,
                           pa_result** out) {
  if (!out || !group_json) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    pa::GroupInput in = pa::group_from_json(group_json);
    pa::GroupSystem sys(in.group, in.generators);
    std::vector<std::uint32_t> targets;
    for (std::uint32_t x = 0; x < in.group.order(); ++x) targets.push_back(x);
    return run_solve(sys, targets, cfg, out);
  });
}

pa_status pa_chain_length(uint64_t n, uint64_t* out_length) {
  if (!out_length) return fail(PA_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out_length = pa::chains::optimal_chain_length(n);
    return PA_OK;
  });
}

pa_status pa_chain_json(uint64_t n, char** out_json) {
  if (!out_json) return fail(PA_ERR_INVALID_ARGUMENT, "null output pointer");
  *out_json = nullptr;
  return guarded([&] {
    pa::chains::OptimalChain best = pa::chains::optimal_chain(n);
    nlohmann::json j;
    j["n"] = n;
    j["l"] = best.length;
    j["witness"] = best.witness.values;
    j["schonhage"] = pa::chains::schonhage_lower_bound(n);
    *out_json = copy_to_cstring(j.dump());
    if (!*out_json) return fail(PA_ERR_INTERNAL, "out of memory");
    return PA_OK;
  });
}

pa_status pa_schonhage(uint64_t n, uint64_t* out_bound) {
  if (!out_bound) return fail(PA_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out_bound = pa::chains::schonhage_lower_bound(n);
    return PA_OK;
  });
}

pa_status pa_scholz_brauer(uint32_t n, uint64_t* out_mersenne_length,
                           uint64_t* out_conjectured) {
  if (!out_mersenne_length || !out_conjectured)
    return fail(PA_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    pa::chains::ScholzBrauerGap gap = pa::chains::scholz_brauer_gap(n);
    *out_mersenne_length = gap.mersenne_length;
    *out_conjectured = gap.conjectured;
    return PA_OK;
  });
}

void pa_string_free(char* s) { std::free(s); }

void pa_buffer_free(pa_buffer* b) {
  if (!b) return;
  std::free(b->data);
  b->data = nullptr;
  b->size = 0;
}

pa_status pa_compress_bytes(const uint8_t* data, size_t size,
                            const pa_search_options* opts, pa_buffer* out) {
  if (!out || (!data && size)) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    std::string text = bytes_as_string(data, size);
    pa::CodeStream codes = pa::pa_compress(text, cfg);
    return copy_to_buffer(pa::codes_to_bytes(codes, pa::kPaMagic), out);
  });
}

pa_status pa_decompress_bytes(const uint8_t* data, size_t size, pa_buffer* out) {
  if (!out || (!data && size)) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string bytes = bytes_as_string(data, size);
    pa::CodeStream codes = pa::bytes_to_codes(bytes, pa::kPaMagic);
    return copy_to_buffer(pa::pa_decompress(codes), out);
  });
}

pa_status pa_lzw_compress_bytes(const uint8_t* data, size_t size,
                                pa_buffer* out) {
  if (!out || (!data && size)) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string text = bytes_as_string(data, size);
    pa::CodeStream codes = pa::lzw_compress(text);
    return copy_to_buffer(pa::codes_to_bytes(codes, pa::kLzwMagic), out);
  });
}

pa_status pa_lzw_decompress_bytes(const uint8_t* data, size_t size,
                                  pa_buffer* out) {
  if (!out || (!data && size)) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string bytes = bytes_as_string(data, size);
    pa::CodeStream codes = pa::bytes_to_codes(bytes, pa::kLzwMagic);
    return copy_to_buffer(pa::lzw_decompress(codes), out);
  });
}

pa_status pa_compare_compression(const uint8_t* data, size_t size,
                                 const pa_search_options* opts,
                                 pa_compression_stats* out) {
  if (!out || (!data && size)) return fail(PA_ERR_INVALID_ARGUMENT, "null argument");
  pa::SearchConfig cfg;
  pa_status st = make_config(opts, &cfg, nullptr);
  if (st != PA_OK) return st;
  return guarded([&] {
    std::string text = bytes_as_string(data, size);
    pa::CompressionStats stats = pa::compare_compression(text, cfg);
    out->input_bytes = stats.input_bytes;
    out->pa_output_bytes = stats.pa_output_bytes;
    out->lzw_output_bytes = stats.lzw_output_bytes;
    out->pathway_length_used = stats.pathway_length_used;
    return PA_OK;
  });
}

void pa_input_digest(const uint8_t* data, size_t size, char out_hex[17]) {
  std::string bytes;
  if (data && size) bytes.assign(reinterpret_cast<const char*>(data), size);
  std::string hex = pa::fnv1a64_hex(bytes);
  std::memcpy(out_hex, hex.c_str(), 17);
}

}  // extern "C"
