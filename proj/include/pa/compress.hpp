#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pa/common.hpp"

namespace pa {

// 16-bit symbol stream shared by both codecs, serialized big-endian.  Files
// carry a four-byte magic in front.
using CodeStream = std::vector<std::uint16_t>;

inline constexpr char kPaMagic[4] = {'P', 'A', '0', '1'};
inline constexpr char kLzwMagic[4] = {'L', 'Z', '1', '6'};

std::string codes_to_bytes(const CodeStream& codes, const char magic[4]);
CodeStream bytes_to_codes(const std::string& bytes, const char magic[4]);

// Pathway codec.  Codes 0..255 are literals, 256+L opens a block that covers
// the next L decoded characters (L in 2..255, so 256 and 257 stay unused) and
// 512+k repeats stored block k.  Blocks are numbered in the order their
// definitions finish, which is the order a one-pass decoder sees them.
//
// The default configuration derives the block structure from a decomposition
// pathway of the input built by repeated halving with repetition capture.
// algorithm=exhaustive instead compresses along a shortest pathway and
// algorithm=sampled along the best sampled one; both only make sense for
// short inputs.
CodeStream pa_compress(const std::string& text, const SearchConfig& cfg = {});
std::string pa_decompress(const CodeStream& stream);

// Textbook LZW with 256 single-byte start codes and a dictionary frozen once
// code 65535 is assigned, so both codecs share the 16-bit symbol width.
CodeStream lzw_compress(const std::string& text);
std::string lzw_decompress(const CodeStream& stream);

struct CompressionStats {
  std::uint64_t input_bytes = 0;
  std::uint64_t pa_output_bytes = 0;   // serialized size including magic
  std::uint64_t lzw_output_bytes = 0;  // serialized size including magic
  std::uint64_t pathway_length_used = 0;
};

// Runs both codecs, checks both round trips, reports sizes.  Deliberately
// does not declare a winner.
CompressionStats compare_compression(const std::string& text,
                                     const SearchConfig& cfg = {});

}  // namespace pa
