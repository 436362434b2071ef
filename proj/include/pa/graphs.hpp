#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pa/common.hpp"
#include "pa/pathway.hpp"

namespace pa {

struct ColouredGraph {
  std::uint32_t palette_size = 0;
  std::vector<std::uint32_t> colours;                          // one per vertex
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // a < b

  std::size_t order() const { return colours.size(); }
};

bool operator==(const ColouredGraph& a, const ColouredGraph& b);

// Relabels vertices into a label-independent normal form: colour refinement,
// then individualization backtracking keeping the minimum encoding.
// Disconnected graphs are normalized per component and the components sorted.
ColouredGraph canonical_form(const ColouredGraph& g);

// Serialization of an already-canonical graph; equal strings mean isomorphic.
std::string graph_key(const ColouredGraph& g);

// All joins of a and b: disjoint union plus any subset of edges between the
// two parts.  Throws BudgetExceeded when order(a)*order(b) > max_cross_pairs.
std::vector<ColouredGraph> compose_graphs(const ColouredGraph& a,
                                          const ColouredGraph& b,
                                          std::uint32_t max_cross_pairs = 12);

// Does x split into parts isomorphic to u and v (cross edges arbitrary)?
// Backtracking embedding; throws BudgetExceeded past the node budget.
bool graph_join_contains(const ColouredGraph& x, const ColouredGraph& u,
                         const ColouredGraph& v,
                         std::uint64_t node_budget = 2'000'000);

ColouredGraph graph_from_text(const std::string& text);
std::string graph_to_text(const ColouredGraph& g);

class GraphSystem {
 public:
  using object_type = ColouredGraph;

  explicit GraphSystem(std::uint32_t palette_size,
                       std::uint32_t max_cross_pairs = 12);

  std::uint32_t palette_size() const { return palette_; }

  std::vector<ColouredGraph> basis() const;
  std::vector<ColouredGraph> compose(const ColouredGraph& a,
                                     const ColouredGraph& b) const {
    return compose_graphs(a, b, max_cross_pairs_);
  }
  ColouredGraph canonical(const ColouredGraph& g) const;
  std::string key(const ColouredGraph& g) const { return graph_key(g); }
  std::string display(const ColouredGraph& g) const { return graph_to_text(g); }
  std::uint64_t size(const ColouredGraph& g) const { return g.order(); }

  std::vector<ColouredGraph> fragments(const ColouredGraph& g) const;
  std::vector<std::pair<ColouredGraph, ColouredGraph>> splits(
      const ColouredGraph& g) const;
  std::vector<MeasureSpec<ColouredGraph>> measures() const;

  // vectorial chain bound over the per-colour node counts
  std::uint64_t root_lower_bound(const ColouredGraph& g) const;

  bool compose_contains(const ColouredGraph& x, const ColouredGraph& u,
                        const ColouredGraph& v) const {
    return graph_join_contains(x, u, v);
  }

  ColouredGraph parse(const std::string& text) const {
    return canonical(graph_from_text(text));
  }

  // largest order the exhaustive search will enumerate fragments for
  static constexpr std::size_t kMaxExhaustiveOrder = 14;

 private:
  std::uint32_t palette_;
  std::uint32_t max_cross_pairs_;
};

// Rectangular pixel images, row-major colour indices.
struct GridImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> pixels;
  bool orientation_locked = false;

  std::uint32_t at(std::size_t r, std::size_t c) const {
    return pixels[r * cols + c];
  }
  std::uint32_t palette_size() const;  // max pixel value + 1
};

// P1 (two colours, digit rows) or P2 (space-separated indices) text form.
GridImage image_from_text(const std::string& text);
std::string image_to_text(const GridImage& img);

// 4-neighbour lattice graph of the image.  When orientation is locked each
// colour is doubled by the column parity of its cell; horizontal neighbours
// then differ in the marker bit while vertical neighbours share it, so a
// fragment and its 90-degree rotation stop being interchangeable.
ColouredGraph grid_to_graph(const GridImage& img);

// Decomposition of the image by guillotine cuts, shared panels counted once.
// The pathway ends at grid_to_graph(img).
Pathway<ColouredGraph> grid_tree_pathway(const GridImage& img);

}  // namespace pa

#include "pa/search.hpp"

namespace pa {

inline IndexResult<ColouredGraph> graph_assembly_index(const ColouredGraph& g,
                                                       const SearchConfig& cfg = {}) {
  std::uint32_t palette = g.palette_size;
  for (std::uint32_t c : g.colours) palette = std::max(palette, c + 1);
  GraphSystem sys(palette);
  return assembly_index(sys, g, cfg);
}

inline IndexResult<ColouredGraph> image_assembly_index(const GridImage& img,
                                                       const SearchConfig& cfg = {}) {
  ColouredGraph g = grid_to_graph(img);
  GraphSystem sys(g.palette_size);
  Pathway<ColouredGraph> seed = grid_tree_pathway(img);
  return assembly_index(sys, sys.canonical(g), cfg, &seed);
}

}  // namespace pa
