#pragma once

#include <optional>
#include <vector>

#include "prong/diagram.hpp"

namespace prong {

// What sits in one face of a connection, as seen from the COT nesting.
struct FaceRole {
  enum class Kind { Outer, Boundary, Child };
  Kind kind = Kind::Child;
  SlotRef dart;          // any dart on that face
  int child = -1;        // Child: position among the node's flattened children
  int connection = -1;   // Child: connection index of that child, -1 for a boundary leaf
};

// Embedding data for one connection: its node in the tree and the role of every face.
struct ConnectionEmbedding {
  std::vector<int> node_path;
  std::vector<FaceRole> faces;
};

struct EmbeddingContext {
  std::vector<ConnectionEmbedding> connections;  // parallel to Diagram::connections
};

}  // namespace prong
