#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prong/cot.hpp"
#include "prong/rational.hpp"

namespace prong {

enum class MoveKind { WhiteheadCollapse, WhiteheadSplit, CenterSplit, CenterMerge, SaddleBreak, SaddleForm };

struct Move {
  MoveKind kind = MoveKind::CenterMerge;
  NodePath path;   // node of the tree the move acts on
  int choice = 0;  // edge, split or band index, depending on kind
};

std::string to_string(MoveKind k);
nlohmann::json to_json(const Move& m);

// Ways to split a k-prong: `count` consecutive darts starting `start` steps after slot 0
// move to one side. Complementary splits are listed once.
struct SplitChoice {
  int start = 0;
  int count = 0;
};
std::vector<SplitChoice> split_choices(int k);

// edge indexes the node's separatrices in template order (by smaller dart).
CotTree whitehead_collapse(const CotTree& t, const NodePath& node, int edge);
CotTree whitehead_split(const CotTree& t, const NodePath& node, int prong, int pairing);
CotTree center_split(const CotTree& t, const NodePath& node);
CotTree center_merge(const CotTree& t, const NodePath& node);

// Coheight-zero trees obtained by perturbing the single coheight-one node of t,
// canonical and sorted. Throws UnsupportedError for boundary and fake-prong families.
std::vector<CotTree> resolutions(const CotTree& t);
// Coheight-one trees one move away from the coheight-zero tree t, distinct by
// (move kind, result).
std::vector<std::pair<Move, CotTree>> degenerations(const CotTree& t);

Rational index_sum_positive(const CotTree& t);

// Canonical coheight-zero trees with exactly max_tripods 3-prongs.
std::vector<std::string> enumerate_zero(int max_tripods, const std::string& root = "sigma_0",
                                        bool allow_beta_leaves = false);

struct TransitionEdge {
  std::string via;
  int a = 0;
  int b = 0;
  auto operator<=>(const TransitionEdge&) const = default;
};

struct TransitionGraph {
  Rational i;
  std::vector<std::string> nodes;  // sorted canonical strings
  std::vector<TransitionEdge> edges;
};

TransitionGraph build_transition_graph(const std::vector<CotTree>& seeds, int max_tripods);
TransitionGraph build_transition_graph(int max_tripods, const std::string& root = "sigma_0",
                                       bool allow_beta_leaves = false);
nlohmann::json to_json(const TransitionGraph& g);
std::string to_dot(const TransitionGraph& g);

}  // namespace prong
