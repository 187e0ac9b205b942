#pragma once

#include <optional>
#include <vector>

#include "prong/cot.hpp"
#include "prong/ribbon.hpp"

namespace prong {

// What a face of a local configuration holds.
struct FaceItem {
  enum class Kind { Empty, Parent, Boundary, Content };
  Kind kind = Kind::Empty;
  int label = -1;  // Content: index into the caller's content list
  bool operator==(const FaceItem&) const = default;
};

// A connection together with the content of each of its faces.
struct Placed {
  RibbonGraph graph;
  std::vector<FaceItem> items;  // indexed like graph.faces()
};

// The template of s with child i as Content label i (children flattened in group order).
Placed instantiate(const CotSymbol& s);

struct SymbolMatch {
  const CotSymbol* symbol = nullptr;
  std::vector<int> box_labels;  // Content label in each box, group order
};

// The manifest symbol whose template, rooted like p, is isomorphic to p.
std::optional<SymbolMatch> match_symbol(const Placed& p);

// Build the node for p, filling boxes from contents[label]. Throws DomainError when no
// symbol matches.
CotTree encode(const Placed& p, const std::vector<CotTree>& contents);

// Isomorphic as graphs with face contents (labels compared exactly).
bool same_placed(const Placed& a, const Placed& b);

}  // namespace prong
