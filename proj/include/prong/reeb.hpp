#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prong/classify.hpp"
#include "prong/cot.hpp"

namespace prong {

struct ReebVertex {
  std::string label;  // symbol name
  bool boundary = false;
  int parent = -1;
};

// Rooted tree: one vertex per COT node, one edge per periodic annulus (parent, child).
struct ReebTree {
  std::vector<ReebVertex> vertices;
  std::vector<std::pair<int, int>> edges;
  int root = 0;

  int degree(int v) const;
};

// Vertices in preorder of the canonical tree.
ReebTree build_reeb(const CotTree& t);
std::vector<std::string> validate_reeb(const ReebTree& r, Stratum::Level level);
std::string to_dot(const ReebTree& r);

}  // namespace prong
