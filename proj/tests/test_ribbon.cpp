#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "prong/ribbon.hpp"

using namespace prong;

namespace {

oracle::Map to_map(const RibbonGraph& g) {
  oracle::Map m;
  for (int d = 0; d < g.num_darts(); ++d) {
    m.vertex.push_back(g.vertex_of(d));
    m.next.push_back(g.sigma(d));
    m.other.push_back(g.alpha(d));
  }
  return m;
}

RibbonGraph random_graph(std::mt19937& rng, int max_vertices, int max_degree) {
  for (;;) {
    std::uniform_int_distribution<int> nv(1, max_vertices), deg(1, max_degree);
    std::vector<int> degrees(nv(rng));
    int total = 0;
    for (auto& d : degrees) total += d = deg(rng);
    if (total % 2) {
      ++degrees.back();
      ++total;
    }
    std::vector<int> darts(total);
    std::iota(darts.begin(), darts.end(), 0);
    std::shuffle(darts.begin(), darts.end(), rng);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < total; i += 2) pairs.emplace_back(darts[i], darts[i + 1]);
    auto g = RibbonGraph::build(degrees, pairs);
    if (g.connected()) return g;
  }
}

// Same map with vertices reordered and each rotation started at a different slot.
RibbonGraph relabel(const RibbonGraph& g, std::mt19937& rng) {
  int nv = g.num_vertices();
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> degrees, new_id(g.num_darts());
  int next = 0;
  for (int v : order) {
    int k = g.degree(v);
    degrees.push_back(k);
    if (k == 0) continue;
    std::uniform_int_distribution<int> shift(0, k - 1);
    int d = g.dart(v, shift(rng));
    for (int i = 0; i < k; ++i, d = g.sigma(d)) new_id[d] = next++;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int d = 0; d < g.num_darts(); ++d)
    if (d < g.alpha(d)) pairs.emplace_back(new_id[d], new_id[g.alpha(d)]);
  return RibbonGraph::build(degrees, pairs);
}

RibbonGraph theta() { return RibbonGraph::build({3, 3}, {{0, 3}, {1, 5}, {2, 4}}); }

}  // namespace

TEST(Ribbon, BuildLayout) {
  auto g = RibbonGraph::build({3, 1}, {{0, 1}, {2, 3}});
  EXPECT_EQ(g.num_vertices(), 2);
  EXPECT_EQ(g.num_darts(), 4);
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.vertex_of(3), 1);
  EXPECT_EQ(g.slot_of(2), 2);
  EXPECT_EQ(g.sigma(2), 0);
  EXPECT_TRUE(g.is_loop(0));
  EXPECT_FALSE(g.is_loop(2));
  EXPECT_EQ(g.num_loops(), 1);
}

TEST(Ribbon, FacesMatchOracle) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto g = random_graph(rng, 5, 4);
    auto mine = g.faces();
    auto ref = oracle::faces(to_map(g));
    std::set<std::set<int>> a, b;
    for (const auto& f : mine) a.insert({f.begin(), f.end()});
    for (const auto& f : ref) b.insert({f.begin(), f.end()});
    EXPECT_EQ(a, b);
    EXPECT_EQ(g.num_faces(), static_cast<int>(ref.size()));
    auto face_of = g.face_of_darts();
    for (std::size_t f = 0; f < mine.size(); ++f) {
      EXPECT_EQ(mine[f].front(), *std::min_element(mine[f].begin(), mine[f].end()));
      if (f) { EXPECT_LT(mine[f - 1].front(), mine[f].front()); }
      for (int d : mine[f]) EXPECT_EQ(face_of[d], static_cast<int>(f));
    }
  }
}

TEST(Ribbon, PlanarityIsEulerCharacteristicTwo) {
  std::mt19937 rng(12);
  int planar = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = random_graph(rng, 5, 4);
    int euler = g.num_vertices() - g.num_edges() + static_cast<int>(oracle::faces(to_map(g)).size());
    EXPECT_EQ(g.planar(), euler == 2);
    planar += g.planar();
  }
  EXPECT_GT(planar, 0);
  EXPECT_TRUE(theta().planar());
  // Two loops crossing at one vertex: a torus.
  EXPECT_FALSE(RibbonGraph::build({4}, {{0, 2}, {1, 3}}).planar());
}

TEST(Ribbon, CenterIsOneEmptyFace) {
  auto c = RibbonGraph::build({0}, {});
  EXPECT_EQ(c.num_faces(), 1);
  EXPECT_TRUE(c.faces()[0].empty());
  EXPECT_EQ(c.canonical_code(), std::vector<int>{0});
}

TEST(Ribbon, CanonicalCodeIgnoresLabels) {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 5, 4);
    auto h = relabel(g, rng);
    EXPECT_EQ(g.canonical_code(), h.canonical_code());
    bool found = false;
    for (int d = 0; d < h.num_darts() && !found; ++d) found = RibbonGraph::match(g, 0, h, d).has_value();
    EXPECT_TRUE(found);
  }
}

TEST(Ribbon, EqualCodesIffIsomorphic) {
  std::mt19937 rng(16);
  std::vector<RibbonGraph> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(random_graph(rng, 3, 3));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j)
      EXPECT_EQ(pool[i].canonical_code() == pool[j].canonical_code(),
                oracle::isomorphic(to_map(pool[i]), to_map(pool[j])));
}

TEST(Ribbon, AutomorphismsGiveFaceOrbits) {
  std::mt19937 rng(14);
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 4, 4);
    auto autos = g.automorphisms();
    ASSERT_FALSE(autos.empty());
    std::vector<int> id(g.num_darts());
    std::iota(id.begin(), id.end(), 0);
    EXPECT_EQ(autos.front(), id);
    auto faces = g.faces();
    auto face_of = g.face_of_darts();
    std::set<std::set<int>> orbits;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      std::set<int> orbit;
      for (const auto& a : autos) orbit.insert(face_of[a[faces[f].front()]]);
      orbits.insert(orbit);
    }
    EXPECT_EQ(static_cast<int>(orbits.size()), oracle::rooted_face_classes(to_map(g)));
  }
}

TEST(Ribbon, ContractThenSplitRestoresGraph) {
  std::mt19937 rng(15);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 5, 4);
    for (int d = 0; d < g.num_darts(); ++d) {
      if (g.is_loop(d) || d > g.alpha(d)) continue;
      int u = g.vertex_of(d);
      int w = g.vertex_of(g.alpha(d));
      if (g.degree(u) < 2 || g.degree(w) < 2) continue;
      auto e = g.contract(d);
      EXPECT_EQ(e.graph.num_vertices(), g.num_vertices() - 1);
      EXPECT_EQ(e.graph.num_edges(), g.num_edges() - 1);
      EXPECT_EQ(e.dart_map[d], -1);
      EXPECT_EQ(e.dart_map[g.alpha(d)], -1);
      int k = g.degree(u) + g.degree(w) - 2;
      int merged = -1;
      for (int x = 0; x < g.num_darts(); ++x)
        if (g.vertex_of(x) == u && x != d) merged = e.graph.vertex_of(e.dart_map[x]);
      if (merged < 0) continue;
      ASSERT_EQ(e.graph.degree(merged), k);
      bool restored = false;
      for (int s = 0; s < k && !restored; ++s) {
        auto back = e.graph.split_vertex(merged, e.graph.dart(merged, s), g.degree(u) - 1);
        restored = back.graph.canonical_code() == g.canonical_code();
      }
      EXPECT_TRUE(restored);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Ribbon, DisjointUnion) {
  auto a = theta();
  auto b = RibbonGraph::build({1, 1}, {{0, 1}});
  auto u = RibbonGraph::disjoint_union(a, b);
  EXPECT_EQ(u.graph.num_vertices(), 4);
  EXPECT_EQ(u.graph.num_darts(), 8);
  EXPECT_EQ(u.graph.num_components(), 2);
  EXPECT_EQ(u.graph.components(), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_EQ(u.graph.num_faces(), a.num_faces() + b.num_faces());
  std::vector<int> comp, map;
  auto parts = u.graph.split_components(comp, map);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].canonical_code(), a.canonical_code());
  EXPECT_EQ(parts[1].canonical_code(), b.canonical_code());
}

TEST(Ribbon, RepairedSwapsPartners) {
  auto g = theta();
  int h = 0, x = 1;
  auto r = g.repaired(h, x);
  EXPECT_EQ(r.alpha(h), g.alpha(x));
  EXPECT_EQ(r.alpha(g.alpha(h)), x);
  EXPECT_EQ(r.alpha(x), g.alpha(h));
  for (int d = 0; d < r.num_darts(); ++d) EXPECT_EQ(r.alpha(r.alpha(d)), d);
  EXPECT_EQ(r.sigma_table(), g.sigma_table());
}
