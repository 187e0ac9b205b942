#include "prong/ribbon.hpp"

#include <algorithm>
#include <numeric>

#include "prong/error.hpp"

namespace prong {

RibbonGraph RibbonGraph::build(const std::vector<int>& degrees,
                               const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> sigma;
  int base = 0;
  for (int k : degrees) {
    for (int s = 0; s < k; ++s) sigma.push_back(base + (s + 1) % k);
    base += k;
  }
  return build(degrees, pairs, sigma);
}

RibbonGraph RibbonGraph::build(const std::vector<int>& degrees,
                               const std::vector<std::pair<int, int>>& pairs,
                               const std::vector<int>& sigma) {
  RibbonGraph g;
  g.degree_ = degrees;
  int total = 0;
  for (int v = 0; v < static_cast<int>(degrees.size()); ++v) {
    if (degrees[v] < 0) throw DomainError("negative vertex degree");
    g.offset_.push_back(total);
    for (int s = 0; s < degrees[v]; ++s) g.vertex_.push_back(v);
    total += degrees[v];
  }
  if (static_cast<int>(sigma.size()) != total) throw DomainError("rotation size mismatch");
  g.alpha_.assign(total, -1);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= total || b >= total || a == b)
      throw DomainError("edge end out of range");
    if (g.alpha_[a] != -1 || g.alpha_[b] != -1) throw DomainError("dart used by two edges");
    g.alpha_[a] = b;
    g.alpha_[b] = a;
  }
  for (int d = 0; d < total; ++d)
    if (g.alpha_[d] == -1) throw DomainError("dart without an edge");
  g.sigma_ = sigma;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int k = degrees[v];
    if (k == 0) continue;
    int d = g.offset_[v];
    std::vector<char> seen(k, 0);
    for (int i = 0; i < k; ++i) {
      if (d < g.offset_[v] || d >= g.offset_[v] + k || seen[d - g.offset_[v]])
        throw DomainError("rotation is not a cycle on the vertex slots");
      seen[d - g.offset_[v]] = 1;
      d = g.sigma_[d];
    }
    if (d != g.offset_[v]) throw DomainError("rotation is not a cycle on the vertex slots");
  }
  return g;
}

int RibbonGraph::num_loops() const {
  int n = 0;
  for (int d = 0; d < num_darts(); ++d)
    if (d < alpha_[d] && is_loop(d)) ++n;
  return n;
}

std::vector<std::vector<int>> RibbonGraph::faces() const {
  std::vector<std::vector<int>> out;
  if (num_darts() == 0) {
    out.resize(num_vertices());
    return out;
  }
  std::vector<char> seen(num_darts(), 0);
  for (int d = 0; d < num_darts(); ++d) {
    if (seen[d]) continue;
    std::vector<int> orbit;
    for (int x = d; !seen[x]; x = phi(x)) {
      seen[x] = 1;
      orbit.push_back(x);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<int> RibbonGraph::face_of_darts() const {
  std::vector<int> f(num_darts(), -1);
  auto fs = faces();
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    for (int d : fs[i]) f[d] = i;
  return f;
}

int RibbonGraph::num_faces() const { return static_cast<int>(faces().size()); }

std::vector<int> RibbonGraph::components() const {
  std::vector<int> comp(num_vertices(), -1);
  int next = 0;
  for (int v = 0; v < num_vertices(); ++v) {
    if (comp[v] != -1) continue;
    std::vector<int> stack{v};
    comp[v] = next;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int s = 0; s < degree_[u]; ++s) {
        int w = vertex_[alpha_[offset_[u] + s]];
        if (comp[w] == -1) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

int RibbonGraph::num_components() const {
  auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

bool RibbonGraph::planar() const {
  auto comp = components();
  int n = num_components();
  std::vector<int> chi(n, 0);
  for (int v = 0; v < num_vertices(); ++v) {
    chi[comp[v]] += 1;
    if (degree_[v] == 0) chi[comp[v]] += 1;  // an isolated center bounds one face
  }
  for (int d = 0; d < num_darts(); ++d)
    if (d < alpha_[d]) chi[comp[vertex_[d]]] -= 1;
  for (const auto& f : faces())
    if (!f.empty()) chi[comp[vertex_[f.front()]]] += 1;
  return std::all_of(chi.begin(), chi.end(), [](int c) { return c == 2; });
}

std::vector<int> RibbonGraph::code_from(int d0) const {
  std::vector<int> label(num_darts(), -1);
  std::vector<int> order;
  order.reserve(num_darts());
  auto visit = [&](int d) {
    int x = d;
    for (int j = 0; j < degree_[vertex_[d]]; ++j) {
      label[x] = static_cast<int>(order.size());
      order.push_back(x);
      x = sigma_[x];
    }
  };
  std::vector<int> code{degree_[vertex_[d0]]};
  visit(d0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int y = alpha_[order[i]];
    if (label[y] == -1) {
      code.push_back(-1 - degree_[vertex_[y]]);
      visit(y);
    }
    code.push_back(label[y]);
  }
  return code;
}

std::vector<int> RibbonGraph::canonical_code() const {
  if (num_darts() == 0) {
    std::vector<int> code;
    for (int k : degree_) code.push_back(k);
    return code;
  }
  std::vector<int> best = code_from(0);
  for (int d = 1; d < num_darts(); ++d) {
    auto c = code_from(d);
    if (c < best) best = std::move(c);
  }
  return best;
}

std::optional<std::vector<int>> RibbonGraph::match(const RibbonGraph& a, int da,
                                                   const RibbonGraph& b, int db) {
  if (a.num_darts() != b.num_darts() || a.num_vertices() != b.num_vertices()) return std::nullopt;
  std::vector<int> fwd(a.num_darts(), -1), back(b.num_darts(), -1);
  std::vector<std::pair<int, int>> stack{{da, db}};
  fwd[da] = db;
  back[db] = da;
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (a.degree_[a.vertex_[x]] != b.degree_[b.vertex_[y]]) return std::nullopt;
    for (int step = 0; step < 2; ++step) {
      int x2 = step == 0 ? a.sigma_[x] : a.alpha_[x];
      int y2 = step == 0 ? b.sigma_[y] : b.alpha_[y];
      if (fwd[x2] == -1 && back[y2] == -1) {
        fwd[x2] = y2;
        back[y2] = x2;
        stack.emplace_back(x2, y2);
      } else if (fwd[x2] != y2 || back[y2] != x2) {
        return std::nullopt;
      }
    }
  }
  if (std::find(fwd.begin(), fwd.end(), -1) != fwd.end()) return std::nullopt;
  return fwd;
}

std::vector<std::vector<int>> RibbonGraph::automorphisms() const {
  std::vector<std::vector<int>> out;
  if (num_darts() == 0) {
    out.emplace_back();
    return out;
  }
  for (int d = 0; d < num_darts(); ++d)
    if (auto m = match(*this, 0, *this, d)) out.push_back(std::move(*m));
  return out;
}

RibbonGraph RibbonGraph::repaired(int h, int g) const {
  int a = alpha_[h];
  int b = alpha_[g];
  if (h == g || g == a) throw DomainError("re-pairing needs darts of two different edges");
  RibbonGraph r = *this;
  r.alpha_[h] = b;
  r.alpha_[b] = h;
  r.alpha_[a] = g;
  r.alpha_[g] = a;
  return r;
}

RibbonGraph::Edit RibbonGraph::disjoint_union(const RibbonGraph& a, const RibbonGraph& b) {
  std::vector<int> degrees = a.degree_;
  degrees.insert(degrees.end(), b.degree_.begin(), b.degree_.end());
  int shift = a.num_darts();
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> sigma = a.sigma_;
  for (int d = 0; d < a.num_darts(); ++d)
    if (d < a.alpha_[d]) pairs.emplace_back(d, a.alpha_[d]);
  for (int d = 0; d < b.num_darts(); ++d) {
    if (d < b.alpha_[d]) pairs.emplace_back(d + shift, b.alpha_[d] + shift);
    sigma.push_back(b.sigma_[d] + shift);
  }
  Edit e{build(degrees, pairs, sigma), {}};
  e.dart_map.resize(b.num_darts());
  std::iota(e.dart_map.begin(), e.dart_map.end(), shift);
  return e;
}

std::vector<RibbonGraph> RibbonGraph::split_components(std::vector<int>& component_of_dart,
                                                       std::vector<int>& dart_map) const {
  auto comp = components();
  int n = num_components();
  std::vector<std::vector<int>> degrees(n);
  std::vector<int> vertex_pos(num_vertices());
  std::vector<int> dart_base(num_vertices());
  std::vector<int> count(n, 0);
  for (int v = 0; v < num_vertices(); ++v) {
    vertex_pos[v] = static_cast<int>(degrees[comp[v]].size());
    degrees[comp[v]].push_back(degree_[v]);
    dart_base[v] = count[comp[v]];
    count[comp[v]] += degree_[v];
  }
  component_of_dart.assign(num_darts(), -1);
  dart_map.assign(num_darts(), -1);
  for (int d = 0; d < num_darts(); ++d) {
    int v = vertex_[d];
    component_of_dart[d] = comp[v];
    dart_map[d] = dart_base[v] + slot_of(d);
  }
  std::vector<std::vector<std::pair<int, int>>> pairs(n);
  std::vector<std::vector<int>> sigma(n);
  for (int c = 0; c < n; ++c) sigma[c].assign(count[c], -1);
  for (int d = 0; d < num_darts(); ++d) {
    int c = component_of_dart[d];
    if (d < alpha_[d]) pairs[c].emplace_back(dart_map[d], dart_map[alpha_[d]]);
    sigma[c][dart_map[d]] = dart_map[sigma_[d]];
  }
  std::vector<RibbonGraph> out;
  for (int c = 0; c < n; ++c) out.push_back(build(degrees[c], pairs[c], sigma[c]));
  return out;
}

namespace {

// Rebuild a graph from explicit cyclic dart lists per vertex (old dart ids), dropping
// darts not listed; new_edges are extra pairs given as positions (vertex, slot).
RibbonGraph::Edit rebuild(const RibbonGraph& g, const std::vector<std::vector<int>>& rotation,
                          const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>&
                              new_edges) {
  std::vector<int> degrees;
  std::vector<int> offset;
  int total = 0;
  for (const auto& r : rotation) {
    offset.push_back(total);
    degrees.push_back(static_cast<int>(r.size()));
    total += static_cast<int>(r.size());
  }
  RibbonGraph::Edit e;
  e.dart_map.assign(g.num_darts(), -1);
  for (std::size_t v = 0; v < rotation.size(); ++v)
    for (std::size_t s = 0; s < rotation[v].size(); ++s)
      if (rotation[v][s] >= 0) e.dart_map[rotation[v][s]] = offset[v] + static_cast<int>(s);
  std::vector<std::pair<int, int>> pairs;
  for (int d = 0; d < g.num_darts(); ++d) {
    int a = g.alpha(d);
    if (d < a && e.dart_map[d] >= 0 && e.dart_map[a] >= 0)
      pairs.emplace_back(e.dart_map[d], e.dart_map[a]);
  }
  for (const auto& [p, q] : new_edges)
    pairs.emplace_back(offset[p.first] + p.second, offset[q.first] + q.second);
  e.graph = RibbonGraph::build(degrees, pairs);
  return e;
}

}  // namespace

RibbonGraph::Edit RibbonGraph::contract(int d) const {
  int a = alpha_[d];
  int x = vertex_[d];
  int y = vertex_[a];
  if (x == y) throw DomainError("cannot contract a homoclinic edge");
  std::vector<std::vector<int>> rotation;
  for (int v = 0; v < num_vertices(); ++v) {
    if (v == y) continue;
    std::vector<int> r;
    if (v == x) {
      for (int t = sigma_[d]; t != d; t = sigma_[t]) r.push_back(t);
      for (int t = sigma_[a]; t != a; t = sigma_[t]) r.push_back(t);
    } else {
      int t = offset_[v];
      for (int s = 0; s < degree_[v]; ++s, t = sigma_[t]) r.push_back(t);
    }
    rotation.push_back(std::move(r));
  }
  return rebuild(*this, rotation, {});
}

RibbonGraph::Edit RibbonGraph::split_vertex(int v, int start, int count) const {
  int k = degree_[v];
  if (vertex_[start] != v) throw DomainError("split start dart is not on the vertex");
  if (count < 1 || count >= k) throw DomainError("split must leave darts on both sides");
  std::vector<int> ring;
  for (int t = start, s = 0; s < k; ++s, t = sigma_[t]) ring.push_back(t);
  std::vector<std::vector<int>> rotation;
  for (int u = 0; u < num_vertices(); ++u) {
    std::vector<int> r;
    if (u == v) {
      r.push_back(-1);
      r.insert(r.end(), ring.begin(), ring.begin() + count);
    } else {
      int t = offset_[u];
      for (int s = 0; s < degree_[u]; ++s, t = sigma_[t]) r.push_back(t);
    }
    rotation.push_back(std::move(r));
  }
  std::vector<int> other{-1};
  other.insert(other.end(), ring.begin() + count, ring.end());
  rotation.push_back(std::move(other));
  int fresh = static_cast<int>(rotation.size()) - 1;
  return rebuild(*this, rotation, {{{v, 0}, {fresh, 0}}});
}

}  // namespace prong
