#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "interdict/matrix.hpp"
#include "interdict/reduction.hpp"

namespace interdict {

struct MmilpEdge {
  int group = 0;       // variable group k
  int var = 0;         // index j within W_k
  int constraint = 0;  // index i within V
  double weight = 0.0; // the constraint coefficient E^{W_k,V}_{i,j}

  friend bool operator==(const MmilpEdge&, const MmilpEdge&) = default;
};

/// The multipartite MILP-induced graph: one vertex group per variable group
/// (W_0 = interdiction variables), one constraint group V, and weighted
/// edges only between a variable vertex and a constraint vertex.
struct MmilpGraph {
  std::vector<Matrix> var_features;  // var_features[k]: |W_k| x (5 + r)
  Matrix con_features;               // |V| x (4 + r)
  std::vector<MmilpEdge> edges;

  std::size_t group_count() const { return var_features.size(); }  // p + 1
  std::size_t var_count(int k) const { return var_features[k].rows; }
  std::size_t con_count() const { return con_features.rows; }

  friend bool operator==(const MmilpGraph&, const MmilpGraph&) = default;
};

struct FeatureConfig {
  int random_feature_dim = 0;  // r extra i.i.d. uniform[0,1) columns per vertex
};

// Base feature layouts (random columns appended after):
//   variable vertex:   [objective coeff, lb, ub, is_binary, degree]
//   constraint vertex: [rhs, relation (-1/0/+1 for <=/=/>=), tag (dual=0,
//                       budget=1, other=2), degree]
inline constexpr int kVarBaseFeatures = 5;
inline constexpr int kConBaseFeatures = 4;

/// Builds the MMILP-graph of a MILP. Edge weights are the constraint
/// coefficients; exact zero coefficients produce no edge. Random feature
/// columns are drawn from `seed` and are part of the graph (not of any
/// downstream model).
MmilpGraph build_graph(const MilpInstance& milp, const FeatureConfig& cfg, std::uint64_t seed);

/// Per-group vertex relabelings; perm[old_index] = new_index.
struct GroupPermutations {
  std::vector<std::vector<int>> var_perms;  // one per W_k
  std::vector<int> con_perm;
};

/// Consistently relabels vertices, feature rows, and edges. Rejects
/// non-bijective permutations.
MmilpGraph permute_graph(const MmilpGraph& g, const GroupPermutations& perms);

/// Color refinement transcript. Vertex classes are stored per round as
/// interned color ids; ids are canonical for the vertex set the refinement
/// ran on (per round, keys are sorted and ranked), so color multisets are
/// comparable across graphs refined jointly or built identically.
struct ColorRefinement {
  // rounds[l][g][v]: color of vertex v of group g after round l
  // (g = 0..p are the W groups, g = p+1 is the constraint group V).
  std::vector<std::vector<std::vector<int>>> rounds;

  const std::vector<std::vector<int>>& final_colors() const { return rounds.back(); }
  /// Number of distinct colors per group in a given round.
  std::vector<std::size_t> partition_sizes(std::size_t round) const;
};

/// Runs `rounds` refinement rounds (>= 1). Round 0 hashes the exact feature
/// bytes; later rounds hash (own previous color, per-group sorted multiset
/// of (weight, neighbor color) pairs). Weights enter as decimal strings of
/// the coefficient rounded to 1e-9, keeping colors platform-independent.
ColorRefinement refine(const MmilpGraph& g, int rounds);

/// Joint refinement over several graphs with one shared color dictionary;
/// required when comparing color multisets across graphs.
std::vector<ColorRefinement> refine_jointly(const std::vector<const MmilpGraph*>& graphs,
                                            int rounds);

/// True iff the graphs differ in group signature or in any group's final
/// color multiset after joint refinement.
bool distinguishable(const MmilpGraph& a, const MmilpGraph& b, int rounds);

/// JSON dump for inspection.
std::string graph_to_json(const MmilpGraph& g);

/// Text report: per-round partition sizes per group.
std::string wl_report(const ColorRefinement& refinement);

}  // namespace interdict
