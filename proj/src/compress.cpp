#include "pa/compress.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pa/search.hpp"
#include "pa/strings.hpp"

namespace pa {

namespace {

std::size_t view_period(std::string_view s) {
  // classic failure-function period
  std::vector<std::size_t> fail(s.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::size_t k = fail[i - 1];
    while (k > 0 && s[i] != s[k]) k = fail[k - 1];
    if (s[i] == s[k]) ++k;
    fail[i] = k;
  }
  return s.empty() ? 0 : s.size() - fail.back();
}

// Cut position for the default decomposition: equal halves double, other
// repetitions split off the largest power-of-two run of the period, anything
// else halves down the middle.
std::size_t default_cut(std::string_view s) {
  std::size_t n = s.size();
  if (n % 2 == 0 &&
      std::memcmp(s.data(), s.data() + n / 2, n / 2) == 0)
    return n / 2;
  std::size_t p = view_period(s);
  if (p < n && n / p >= 2) {
    std::size_t reps = 1;
    while (p * reps * 2 <= n) reps *= 2;
    std::size_t m = p * reps;
    if (m > 0 && m < n) return m;
  }
  return n / 2;
}

// Expansion tree of the input under some pathway: one node per text span,
// spans with equal content share an object id.
struct SpanTree {
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t obj = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };
  std::vector<Node> nodes;
  std::vector<std::uint32_t> occurrences;  // per object id
  std::vector<std::uint32_t> lengths;      // per object id
  std::uint64_t distinct_steps = 0;        // objects of length >= 2
  std::int32_t root = -1;
};

SpanTree build_span_tree(const std::string& text,
                         const std::function<std::size_t(std::string_view)>& cut) {
  SpanTree tree;
  std::unordered_map<std::string_view, std::uint32_t> intern;
  std::function<std::int32_t(std::size_t, std::size_t)> build =
      [&](std::size_t b, std::size_t e) -> std::int32_t {
    std::string_view view(text.data() + b, e - b);
    auto [it, fresh] = intern.emplace(view, tree.occurrences.size());
    if (fresh) {
      tree.occurrences.push_back(0);
      tree.lengths.push_back(static_cast<std::uint32_t>(e - b));
      if (e - b >= 2) ++tree.distinct_steps;
    }
    std::uint32_t obj = it->second;
    ++tree.occurrences[obj];
    SpanTree::Node node;
    node.begin = static_cast<std::uint32_t>(b);
    node.end = static_cast<std::uint32_t>(e);
    node.obj = obj;
    if (e - b > 1) {
      std::size_t at = cut(view);
      if (at == 0 || at >= e - b)
        throw std::logic_error("decomposition produced an empty side");
      node.left = build(b, b + at);
      node.right = build(b + at, e);
    }
    std::int32_t idx = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back(node);
    return idx;
  };
  tree.root = build(0, text.size());
  return tree;
}

// Cut positions read off an explicit pathway: each product splits where its
// recorded parents meet.
std::function<std::size_t(std::string_view)> pathway_cut(
    const Pathway<std::string>& p) {
  auto parts = std::make_shared<std::unordered_map<std::string, std::size_t>>();
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& st = p.steps[s];
    const std::string* l = pathway_entry(p, st.left, s);
    const std::string* r = pathway_entry(p, st.right, s);
    if (!l || !r) throw std::invalid_argument("pathway references a later entry");
    if (*l + *r == st.product)
      parts->emplace(st.product, l->size());
    else if (*r + *l == st.product)
      parts->emplace(st.product, r->size());
    else
      throw std::invalid_argument(
          "pathway step is not a plain concatenation of its parents");
  }
  return [parts](std::string_view s) -> std::size_t {
    auto it = parts->find(std::string(s));
    if (it == parts->end())
      throw std::invalid_argument("pathway does not cover a required substring");
    return it->second;
  };
}

CodeStream encode_tree(const std::string& text, const SpanTree& tree) {
  const std::uint32_t objects = static_cast<std::uint32_t>(tree.lengths.size());
  // candidate blocks: short enough for a length marker and reused somewhere
  std::vector<char> candidate(objects, 0);
  for (std::uint32_t o = 0; o < objects; ++o)
    candidate[o] = tree.lengths[o] >= 2 && tree.lengths[o] <= 255 &&
                   tree.occurrences[o] >= 2;

  CodeStream out;
  std::vector<std::uint32_t> refs(objects, 0);
  std::vector<std::int32_t> code_of(objects, -1);
  for (;;) {
    out.clear();
    std::fill(refs.begin(), refs.end(), 0);
    std::fill(code_of.begin(), code_of.end(), -1);
    std::uint32_t next_code = 512;
    std::function<void(std::int32_t)> emit = [&](std::int32_t at) {
      const SpanTree::Node& node = tree.nodes[static_cast<std::size_t>(at)];
      if (node.left < 0) {
        out.push_back(static_cast<std::uint16_t>(
            static_cast<unsigned char>(text[node.begin])));
        return;
      }
      if (code_of[node.obj] >= 0) {
        out.push_back(static_cast<std::uint16_t>(code_of[node.obj]));
        ++refs[node.obj];
        return;
      }
      if (candidate[node.obj]) {
        out.push_back(static_cast<std::uint16_t>(256 + tree.lengths[node.obj]));
        emit(node.left);
        emit(node.right);
        if (next_code > 65535)
          throw std::overflow_error("too many block definitions for 16-bit codes");
        code_of[node.obj] = static_cast<std::int32_t>(next_code++);
        return;
      }
      emit(node.left);
      emit(node.right);
    };
    emit(tree.root);

    // a definition nobody references again is pure overhead: demote it to a
    // plain expansion and encode once more
    bool dropped = false;
    for (std::uint32_t o = 0; o < objects; ++o) {
      if (code_of[o] >= 0 && refs[o] == 0) {
        candidate[o] = 0;
        dropped = true;
      }
    }
    if (!dropped) return out;
  }
}

struct PaEncoding {
  CodeStream stream;
  std::uint64_t pathway_length = 0;
};

PaEncoding pa_compress_impl(const std::string& text, const SearchConfig& cfg) {
  PaEncoding enc;
  if (text.empty()) return enc;

  SpanTree tree;
  if (cfg.algorithm == Algorithm::exhaustive && text.size() > 1) {
    IndexResult<std::string> res = string_assembly_index(text, cfg);
    tree = build_span_tree(text, pathway_cut(res.witness));
    enc.pathway_length = pathway_length(res.witness);
  } else if (cfg.algorithm == Algorithm::sampled && text.size() > 1) {
    TextSystem sys(text);
    auto samples = sample_pathways(sys, text, cfg);
    if (samples.empty())
      throw BudgetExceeded("sampling found no pathway for the input", 0);
    const Pathway<std::string>* best = &samples[0];
    for (const auto& s : samples)
      if (pathway_length(s) < pathway_length(*best)) best = &s;
    tree = build_span_tree(text, pathway_cut(*best));
    enc.pathway_length = pathway_length(*best);
  } else {
    tree = build_span_tree(text, default_cut);
    enc.pathway_length = tree.distinct_steps;
  }
  enc.stream = encode_tree(text, tree);
  return enc;
}

}  // namespace

std::string codes_to_bytes(const CodeStream& codes, const char magic[4]) {
  std::string out;
  out.reserve(4 + 2 * codes.size());
  out.append(magic, 4);
  for (std::uint16_t c : codes) {
    out.push_back(static_cast<char>(c >> 8));
    out.push_back(static_cast<char>(c & 0xff));
  }
  return out;
}

CodeStream bytes_to_codes(const std::string& bytes, const char magic[4]) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), magic, 4) != 0)
    throw MalformedStream("missing or wrong magic bytes");
  if ((bytes.size() - 4) % 2 != 0)
    throw MalformedStream("truncated code unit at end of stream");
  CodeStream codes;
  codes.reserve((bytes.size() - 4) / 2);
  for (std::size_t i = 4; i < bytes.size(); i += 2) {
    std::uint16_t hi = static_cast<unsigned char>(bytes[i]);
    std::uint16_t lo = static_cast<unsigned char>(bytes[i + 1]);
    codes.push_back(static_cast<std::uint16_t>((hi << 8) | lo));
  }
  return codes;
}

CodeStream pa_compress(const std::string& text, const SearchConfig& cfg) {
  return pa_compress_impl(text, cfg).stream;
}

std::string pa_decompress(const CodeStream& stream) {
  std::string out;
  struct Frame {
    std::size_t need;
    std::string buf;
  };
  std::vector<Frame> frames;
  std::vector<std::string> blocks;

  auto deliver = [&](std::string chunk) {
    for (;;) {
      if (frames.empty()) {
        out += chunk;
        return;
      }
      Frame& f = frames.back();
      f.buf += chunk;
      if (f.buf.size() > f.need)
        throw MalformedStream("block definition overflows its declared length");
      if (f.buf.size() < f.need) return;
      chunk = std::move(f.buf);
      frames.pop_back();
      blocks.push_back(chunk);
    }
  };

  for (std::uint16_t code : stream) {
    if (code <= 255) {
      deliver(std::string(1, static_cast<char>(code)));
    } else if (code == 256 || code == 257) {
      throw MalformedStream("reserved length marker");
    } else if (code < 512) {
      frames.push_back(Frame{static_cast<std::size_t>(code - 256), {}});
    } else {
      std::size_t idx = static_cast<std::size_t>(code - 512);
      if (idx >= blocks.size())
        throw MalformedStream("reference to a block that has no definition yet");
      deliver(blocks[idx]);
    }
  }
  if (!frames.empty())
    throw MalformedStream("stream ends inside a block definition");
  return out;
}

CodeStream lzw_compress(const std::string& text) {
  CodeStream out;
  if (text.empty()) return out;
  std::unordered_map<std::uint64_t, std::uint32_t> dict;
  std::uint32_t next = 256;
  std::uint32_t w = static_cast<unsigned char>(text[0]);
  for (std::size_t i = 1; i < text.size(); ++i) {
    std::uint32_t c = static_cast<unsigned char>(text[i]);
    std::uint64_t key = (static_cast<std::uint64_t>(w) << 8) | c;
    auto it = dict.find(key);
    if (it != dict.end()) {
      w = it->second;
      continue;
    }
    out.push_back(static_cast<std::uint16_t>(w));
    if (next <= 65535) dict.emplace(key, next++);
    w = c;
  }
  out.push_back(static_cast<std::uint16_t>(w));
  return out;
}

std::string lzw_decompress(const CodeStream& stream) {
  std::string out;
  if (stream.empty()) return out;
  std::vector<std::string> table;
  table.reserve(65536);
  for (int c = 0; c < 256; ++c) table.push_back(std::string(1, static_cast<char>(c)));
  if (stream[0] > 255) throw MalformedStream("first code must be a literal");
  std::string w = table[stream[0]];
  out += w;
  for (std::size_t i = 1; i < stream.size(); ++i) {
    std::uint16_t c = stream[i];
    std::string entry;
    if (c < table.size()) {
      entry = table[c];
    } else if (c == table.size()) {
      entry = w + w[0];  // the code being defined right now
    } else {
      throw MalformedStream("code beyond the dictionary");
    }
    out += entry;
    if (table.size() <= 65535) table.push_back(w + entry[0]);
    w = std::move(entry);
  }
  return out;
}

CompressionStats compare_compression(const std::string& text,
                                     const SearchConfig& cfg) {
  CompressionStats st;
  st.input_bytes = text.size();
  PaEncoding enc = pa_compress_impl(text, cfg);
  if (pa_decompress(enc.stream) != text)
    throw std::logic_error("pathway codec failed its own round trip");
  CodeStream lz = lzw_compress(text);
  if (lzw_decompress(lz) != text)
    throw std::logic_error("lzw codec failed its own round trip");
  st.pa_output_bytes = 4 + 2 * enc.stream.size();
  st.lzw_output_bytes = 4 + 2 * lz.size();
  st.pathway_length_used = enc.pathway_length;
  return st;
}

}  // namespace pa
