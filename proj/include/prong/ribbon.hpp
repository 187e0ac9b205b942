#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace prong {

// Combinatorial map on half-edges ("darts"). Dart d belongs to vertex vertex_of(d);
// sigma(d) is the next dart counterclockwise around that vertex, alpha(d) the other end
// of its edge. Faces are the orbits of phi = sigma . alpha.
class RibbonGraph {
 public:
  RibbonGraph() = default;

  // Vertices get degrees[v] darts numbered consecutively; rotation is the slot order.
  // pairs lists edges as (dart, dart) over those flat ids.
  static RibbonGraph build(const std::vector<int>& degrees,
                           const std::vector<std::pair<int, int>>& pairs);
  // Same, with an explicit successor for every dart (must cycle within each vertex).
  static RibbonGraph build(const std::vector<int>& degrees,
                           const std::vector<std::pair<int, int>>& pairs,
                           const std::vector<int>& sigma);

  int num_vertices() const { return static_cast<int>(degree_.size()); }
  int num_darts() const { return static_cast<int>(alpha_.size()); }
  int num_edges() const { return num_darts() / 2; }
  int degree(int v) const { return degree_[v]; }
  const std::vector<int>& degrees() const { return degree_; }
  int first_dart(int v) const { return offset_[v]; }
  int dart(int v, int slot) const { return offset_[v] + slot; }
  int vertex_of(int d) const { return vertex_[d]; }
  int slot_of(int d) const { return d - offset_[vertex_[d]]; }

  int alpha(int d) const { return alpha_[d]; }
  int sigma(int d) const { return sigma_[d]; }
  int phi(int d) const { return sigma_[alpha_[d]]; }
  const std::vector<int>& alpha_table() const { return alpha_; }
  const std::vector<int>& sigma_table() const { return sigma_; }

  bool is_loop(int d) const { return vertex_[d] == vertex_[alpha_[d]]; }
  int num_loops() const;

  // Orbits of phi, each starting at its smallest dart, ordered by that dart.
  // A graph without darts (isolated centers) has one empty face per vertex.
  std::vector<std::vector<int>> faces() const;
  // Face index of every dart, consistent with faces().
  std::vector<int> face_of_darts() const;
  int num_faces() const;

  // Component id per vertex, numbered by smallest vertex.
  std::vector<int> components() const;
  int num_components() const;
  bool connected() const { return num_components() <= 1; }
  // Every component has genus zero.
  bool planar() const;

  // Breadth-first relabelling from dart d; equal codes mean isomorphic rooted maps.
  std::vector<int> code_from(int d) const;
  // Minimum code over all darts. Isolated vertices give {degree} (centers: {0}).
  std::vector<int> canonical_code() const;

  // Rotation-preserving isomorphism sending dart da of a to dart db of b, as a dart map.
  static std::optional<std::vector<int>> match(const RibbonGraph& a, int da,
                                               const RibbonGraph& b, int db);
  // Automorphisms as dart permutations (identity first).
  std::vector<std::vector<int>> automorphisms() const;

  // Result of a structural edit, with the old-to-new dart map (-1 for removed darts).
  struct Edit;

  // Replace alpha on the four darts: alpha'(h) = alpha(g), alpha'(alpha(h)) = g.
  RibbonGraph repaired(int h, int g) const;
  static Edit disjoint_union(const RibbonGraph& a, const RibbonGraph& b);
  // Split into connected components; dart_map[d] is the dart inside its component.
  std::vector<RibbonGraph> split_components(std::vector<int>& component_of_dart,
                                            std::vector<int>& dart_map) const;
  // Contract the non-loop edge of dart d; the end vertices merge.
  Edit contract(int d) const;
  // Split vertex v: darts start, sigma(start), ... (count of them) move to one new vertex,
  // the rest to another, and a new edge joins the two.
  Edit split_vertex(int v, int start, int count) const;

  bool operator==(const RibbonGraph&) const = default;

 private:
  std::vector<int> degree_;
  std::vector<int> offset_;
  std::vector<int> vertex_;
  std::vector<int> alpha_;
  std::vector<int> sigma_;
};

struct RibbonGraph::Edit {
  RibbonGraph graph;
  std::vector<int> dart_map;
};

}  // namespace prong
