#include "prong/placed.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "prong/error.hpp"

namespace prong {

namespace {

using Key = std::tuple<std::vector<int>, bool, bool>;

Key key_of(const RibbonGraph& g, bool parent, bool boundary) {
  std::vector<int> k = g.degrees();
  std::sort(k.begin(), k.end());
  return {k, parent, boundary};
}

const std::map<Key, std::vector<const CotSymbol*>>& template_index() {
  static const auto index = [] {
    std::map<Key, std::vector<const CotSymbol*>> m;
    for (const auto& s : manifest().symbols())
      if (s.tmpl) m[key_of(s.tmpl->graph, s.tmpl->outer >= 0, s.tmpl->boundary >= 0)].push_back(&s);
    return m;
  }();
  return index;
}

}  // namespace

Placed instantiate(const CotSymbol& s) {
  if (!s.tmpl) throw DomainError(s.name + " has no connection");
  const auto& t = *s.tmpl;
  Placed p{t.graph, std::vector<FaceItem>(t.graph.num_faces())};
  if (t.outer >= 0) p.items[t.outer] = {FaceItem::Kind::Parent, -1};
  if (t.boundary >= 0) p.items[t.boundary] = {FaceItem::Kind::Boundary, -1};
  for (std::size_t i = 0; i < t.boxes.size(); ++i)
    p.items[t.boxes[i]] = {FaceItem::Kind::Content, static_cast<int>(i)};
  return p;
}

std::optional<SymbolMatch> match_symbol(const Placed& p) {
  const auto& g = p.graph;
  auto faces = g.faces();
  if (faces.size() != p.items.size()) return std::nullopt;
  int parent_face = -1;
  bool has_boundary = false;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    switch (p.items[f].kind) {
      case FaceItem::Kind::Empty: return std::nullopt;
      case FaceItem::Kind::Parent:
        if (parent_face >= 0) return std::nullopt;
        parent_face = static_cast<int>(f);
        break;
      case FaceItem::Kind::Boundary:
        if (has_boundary) return std::nullopt;
        has_boundary = true;
        break;
      case FaceItem::Kind::Content: break;
    }
  }
  auto it = template_index().find(key_of(g, parent_face >= 0, has_boundary));
  if (it == template_index().end()) return std::nullopt;
  if (!g.connected()) return std::nullopt;

  for (const CotSymbol* s : it->second) {
    const auto& t = *s->tmpl;
    if (t.graph.num_darts() != g.num_darts()) continue;
    if (g.num_darts() == 0) {
      if (t.graph.degrees() == g.degrees()) return SymbolMatch{s, {}};
      continue;
    }
    auto tfaces = t.graph.faces();
    int anchor_face = t.outer >= 0 ? t.outer : t.boxes.front();
    int anchor = tfaces[anchor_face].front();
    const std::vector<int>* targets = nullptr;
    std::vector<int> all;
    if (parent_face >= 0) {
      targets = &faces[parent_face];
    } else {
      all.resize(g.num_darts());
      for (int d = 0; d < g.num_darts(); ++d) all[d] = d;
      targets = &all;
    }
    auto gface = g.face_of_darts();
    for (int target : *targets) {
      auto iso = RibbonGraph::match(t.graph, anchor, g, target);
      if (!iso) continue;
      auto image = [&](int tf) { return gface[(*iso)[tfaces[tf].front()]]; };
      if (t.outer >= 0 && image(t.outer) != parent_face) continue;
      if (t.boundary >= 0 && p.items[image(t.boundary)].kind != FaceItem::Kind::Boundary) continue;
      SymbolMatch m{s, {}};
      bool ok = true;
      for (int b : t.boxes) {
        const auto& item = p.items[image(b)];
        if (item.kind != FaceItem::Kind::Content) {
          ok = false;
          break;
        }
        m.box_labels.push_back(item.label);
      }
      if (ok) return m;
    }
  }
  return std::nullopt;
}

CotTree encode(const Placed& p, const std::vector<CotTree>& contents) {
  auto m = match_symbol(p);
  if (!m) throw DomainError("configuration matches no manifest symbol");
  CotTree node{m->symbol, {}};
  std::size_t at = 0;
  for (const auto& g : m->symbol->groups) {
    std::vector<CotTree> group;
    for (int i = 0; i < g.size; ++i) group.push_back(contents.at(m->box_labels[at++]));
    node.groups.push_back(std::move(group));
  }
  return node;
}

bool same_placed(const Placed& a, const Placed& b) {
  const auto& ga = a.graph;
  const auto& gb = b.graph;
  if (ga.num_darts() != gb.num_darts() || ga.degrees().size() != gb.degrees().size()) return false;
  if (a.items.size() != b.items.size()) return false;
  if (ga.num_darts() == 0) return ga.degrees() == gb.degrees() && a.items == b.items;
  auto fa = ga.face_of_darts();
  auto fb = gb.face_of_darts();
  for (int d = 0; d < gb.num_darts(); ++d) {
    auto iso = RibbonGraph::match(ga, 0, gb, d);
    if (!iso) continue;
    bool ok = true;
    for (int x = 0; x < ga.num_darts() && ok; ++x) ok = a.items[fa[x]] == b.items[fb[(*iso)[x]]];
    if (ok) return true;
  }
  return false;
}

}  // namespace prong
