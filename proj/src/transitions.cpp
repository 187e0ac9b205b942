#include "prong/transitions.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "prong/error.hpp"
#include "prong/placed.hpp"

namespace prong {

namespace {

// ---- local surgery on placed connections ----------------------------------

// Move face contents along a dart map. Faces in `skip` are dropped. Fails when an old
// face spreads over several new faces, two contents meet, or a new face stays empty.
std::optional<std::vector<FaceItem>> carry(const std::vector<const Placed*>& olds,
                                           const std::vector<std::vector<int>>& maps,
                                           const std::vector<int>& skip, const RibbonGraph& g) {
  std::vector<FaceItem> items(g.num_faces());
  if (g.num_darts() == 0) return std::nullopt;
  auto face = g.face_of_darts();
  for (std::size_t k = 0; k < olds.size(); ++k) {
    auto old_faces = olds[k]->graph.faces();
    for (int f = 0; f < static_cast<int>(old_faces.size()); ++f) {
      if (f == skip[k]) continue;
      int target = -1;
      for (int d : old_faces[f]) {
        int nd = maps[k][d];
        if (nd < 0) continue;
        if (target == -1) target = face[nd];
        else if (target != face[nd]) return std::nullopt;
      }
      if (target == -1 || items[target].kind != FaceItem::Kind::Empty) return std::nullopt;
      items[target] = olds[k]->items[f];
    }
  }
  for (const auto& it : items)
    if (it.kind == FaceItem::Kind::Empty) return std::nullopt;
  return items;
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  return m;
}

std::optional<Placed> collapse_local(const Placed& p, int dart) {
  auto e = p.graph.contract(dart);
  auto items = carry({&p}, {e.dart_map}, {-1}, e.graph);
  if (!items) return std::nullopt;
  return Placed{std::move(e.graph), std::move(*items)};
}

std::optional<Placed> split_local(const Placed& p, int vertex, SplitChoice c) {
  int start = p.graph.first_dart(vertex);
  for (int i = 0; i < c.start; ++i) start = p.graph.sigma(start);
  auto e = p.graph.split_vertex(vertex, start, c.count);
  auto items = carry({&p}, {e.dart_map}, {-1}, e.graph);
  if (!items) return std::nullopt;
  return Placed{std::move(e.graph), std::move(*items)};
}

// Band across the annulus between face top_face of `top` and face bottom_face of
// `bottom`, cutting the edges of darts h and g. twist picks which ends are rejoined.
std::optional<Placed> band_merge(const Placed& top, int top_face, const Placed& bottom,
                                 int bottom_face, int h, int g, bool twist) {
  auto u = RibbonGraph::disjoint_union(top.graph, bottom.graph);
  int other = u.dart_map[twist ? bottom.graph.alpha(g) : g];
  RibbonGraph merged = u.graph.repaired(h, other);
  if (!merged.connected() || !merged.planar()) return std::nullopt;
  auto items = carry({&top, &bottom}, {identity_map(top.graph.num_darts()), u.dart_map},
                     {top_face, bottom_face}, merged);
  if (!items) return std::nullopt;
  return Placed{std::move(merged), std::move(*items)};
}

bool coheight_zero_graph(const RibbonGraph& g) {
  int minus = 0;
  for (int k : g.degrees()) {
    if (k != 1 && k != 3) return false;
    minus += k == 3;
  }
  int b1 = 1 - g.num_vertices() + g.num_edges();
  return minus == b1;
}

// ---- placeholders ---------------------------------------------------------

constexpr int kMaxBoxes = 8;

const std::vector<CotSymbol>& placeholders() {
  static const std::vector<CotSymbol> p = [] {
    std::vector<CotSymbol> v;
    for (int i = 0; i < kMaxBoxes; ++i) {
      CotSymbol s;
      s.name = "?" + std::to_string(i);
      s.kind = SymbolKind::Terminal;
      v.push_back(std::move(s));
    }
    return v;
  }();
  return p;
}

std::vector<CotTree> placeholder_contents(int n) {
  std::vector<CotTree> out;
  for (int i = 0; i < n; ++i) out.push_back(CotTree{&placeholders()[i], {}});
  return out;
}

CotTree substitute(const CotTree& t, const std::vector<CotTree>& contents) {
  const auto& ph = placeholders();
  if (t.symbol >= ph.data() && t.symbol < ph.data() + ph.size())
    return contents.at(static_cast<std::size_t>(t.symbol - ph.data()));
  CotTree out{t.symbol, {}};
  for (const auto& g : t.groups) {
    std::vector<CotTree> grp;
    for (const auto& c : g) grp.push_back(substitute(c, contents));
    out.groups.push_back(std::move(grp));
  }
  return out;
}

std::vector<CotTree> flat_children(const CotTree& n) {
  std::vector<CotTree> out;
  for (const auto& g : n.groups)
    for (const auto& c : g) out.push_back(c);
  return out;
}

std::vector<std::pair<int, int>> edge_list(const RibbonGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int d = 0; d < g.num_darts(); ++d)
    if (d < g.alpha(d)) out.emplace_back(d, g.alpha(d));
  return out;
}

// ---- h-unstable resolutions -----------------------------------------------

bool gives_back(const Placed& merged, const CotSymbol& s, const std::vector<CotTree>& contents,
                const std::string& self) {
  auto m = match_symbol(merged);
  return m && m->symbol == &s && serialize(encode(merged, contents)) == self;
}

// All ways to undo a band inside the h-unstable node s: re-pair two separatrices so the
// connection falls into two coheight-zero pieces, nest one piece in a face of the other,
// distribute the contents, and keep the configurations whose band merge gives back s.
// Results are local trees over placeholder leaves ?0..?n-1.
std::vector<CotTree> compute_h_resolutions(const CotSymbol& s) {
  Placed u = instantiate(s);
  const int m = s.arity();
  const auto& g = u.graph;
  std::vector<CotTree> contents = placeholder_contents(m);
  const std::string self = serialize(encode(u, contents));
  std::map<std::string, CotTree> found;
  std::set<std::string> rejected;

  std::vector<FaceItem> pool;
  for (const auto& it : u.items) pool.push_back(it);

  for (int h = 0; h < g.num_darts(); ++h)
    for (int x = 0; x < g.num_darts(); ++x) {
      if (x == h || x == g.alpha(h)) continue;
      RibbonGraph cut = g.repaired(h, x);
      if (cut.num_components() != 2) continue;
      std::vector<int> comp_of, dart_map;
      auto parts = cut.split_components(comp_of, dart_map);
      if (!parts[0].planar() || !parts[1].planar()) continue;
      if (!coheight_zero_graph(parts[0]) || !coheight_zero_graph(parts[1])) continue;
      int fa = parts[0].num_faces(), fb = parts[1].num_faces();
      if (fa + fb - 2 != static_cast<int>(pool.size())) continue;

      for (int xa = 0; xa < fa; ++xa)
        for (int xb = 0; xb < fb; ++xb) {
          std::vector<std::pair<int, int>> slots;  // (part, face)
          for (int f = 0; f < fa; ++f)
            if (f != xa) slots.emplace_back(0, f);
          for (int f = 0; f < fb; ++f)
            if (f != xb) slots.emplace_back(1, f);
          std::vector<int> order(pool.size());
          for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
          do {
            Placed pa{parts[0], std::vector<FaceItem>(fa)};
            Placed pb{parts[1], std::vector<FaceItem>(fb)};
            int parent_part = -1;
            for (std::size_t i = 0; i < slots.size(); ++i) {
              const FaceItem& it = pool[order[i]];
              (slots[i].first == 0 ? pa : pb).items[slots[i].second] = it;
              if (it.kind == FaceItem::Kind::Parent) parent_part = slots[i].first;
            }
            Placed& top = parent_part == 0 ? pa : pb;
            Placed& bottom = parent_part == 0 ? pb : pa;
            int top_face = parent_part == 0 ? xa : xb;
            int bottom_face = parent_part == 0 ? xb : xa;
            top.items[top_face] = {FaceItem::Kind::Content, m};
            bottom.items[bottom_face] = {FaceItem::Kind::Parent, -1};

            auto mb = match_symbol(bottom);
            if (!mb || mb->symbol->coheight != 0) continue;
            auto mt = match_symbol(top);
            if (!mt || mt->symbol->coheight != 0) continue;
            std::vector<CotTree> local = contents;
            local.push_back(encode(bottom, contents));
            CotTree r = encode(top, local);
            std::string key = serialize(r);
            if (found.count(key) || rejected.count(key)) continue;

            // The band must be reversible: some merge across the nesting annulus rebuilds s.
            bool back = false;
            Placed tb = top, bb = bottom;
            auto tfaces = tb.graph.faces();
            auto bfaces = bb.graph.faces();
            for (int hh : tfaces[top_face])
              for (int gg : bfaces[bottom_face])
                for (bool twist : {false, true}) {
                  if (back) break;
                  auto merged = band_merge(tb, top_face, bb, bottom_face, hh, gg, twist);
                  back = merged && gives_back(*merged, s, contents, self);
                }
            if (back) found.emplace(key, canonicalize(r));
            else rejected.insert(key);
          } while (std::next_permutation(order.begin(), order.end()));
        }
    }
  std::vector<CotTree> out;
  for (auto& [k, t] : found) out.push_back(std::move(t));
  return out;
}

const std::vector<CotTree>& h_resolutions(const CotSymbol& s) {
  static std::mutex mu;
  static std::map<const CotSymbol*, std::vector<CotTree>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(&s);
  if (it == table.end()) it = table.emplace(&s, compute_h_resolutions(s)).first;
  return it->second;
}

void require_connection_node(const CotTree& n) {
  if (n.symbol->is_beta()) throw DomainError("'" + n.symbol->name + "' has no prong connection");
}

std::vector<CotTree> sorted_unique(std::vector<CotTree> v) {
  std::map<std::string, CotTree> m;
  for (auto& t : v) {
    auto c = canonicalize(t);
    m.emplace(serialize(c), std::move(c));
  }
  std::vector<CotTree> out;
  for (auto& [k, t] : m) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::WhiteheadCollapse: return "WhiteheadCollapse";
    case MoveKind::WhiteheadSplit: return "WhiteheadSplit";
    case MoveKind::CenterSplit: return "CenterSplit";
    case MoveKind::CenterMerge: return "CenterMerge";
    case MoveKind::SaddleBreak: return "SaddleBreak";
    case MoveKind::SaddleForm: return "SaddleForm";
  }
  return "";
}

nlohmann::json to_json(const Move& m) {
  return {{"kind", to_string(m.kind)}, {"path", m.path}, {"choice", m.choice}};
}

std::vector<SplitChoice> split_choices(int k) {
  std::vector<SplitChoice> out;
  for (int count = k / 2; count >= 1; --count)
    for (int start = 0; start < k; ++start) {
      if (2 * count == k && start >= count) continue;
      out.push_back({start, count});
    }
  return out;
}

CotTree whitehead_collapse(const CotTree& t, const NodePath& path, int edge) {
  const CotTree& n = node_at(t, path);
  require_connection_node(n);
  if (path.empty()) throw DomainError("moves do not act on the root");
  Placed p = instantiate(*n.symbol);
  auto edges = edge_list(p.graph);
  if (edge < 0 || edge >= static_cast<int>(edges.size())) throw DomainError("edge index out of range");
  int d = edges[edge].first;
  const auto& g = p.graph;
  if (g.is_loop(d) || g.degree(g.vertex_of(d)) != 3 || g.degree(g.vertex_of(g.alpha(d))) != 3)
    throw DomainError("separatrix is not heteroclinic between two 3-prongs");
  auto r = collapse_local(p, d);
  if (!r) throw InternalError("collapse lost a face");
  return replace_at(t, path, encode(*r, flat_children(n)));
}

CotTree whitehead_split(const CotTree& t, const NodePath& path, int prong, int pairing) {
  const CotTree& n = node_at(t, path);
  require_connection_node(n);
  if (path.empty()) throw DomainError("moves do not act on the root");
  Placed p = instantiate(*n.symbol);
  if (prong < 0 || prong >= p.graph.num_vertices()) throw DomainError("prong index out of range");
  int k = p.graph.degree(prong);
  if (k < 4) throw DomainError("only prongs with k >= 4 can be split");
  auto choices = split_choices(k);
  if (pairing < 0 || pairing >= static_cast<int>(choices.size())) throw DomainError("invalid pairing");
  auto r = split_local(p, prong, choices[pairing]);
  if (!r) throw InternalError("split lost a face");
  auto m = match_symbol(*r);
  if (!m) throw DomainError("split result is not a COT symbol");
  return replace_at(t, path, encode(*r, flat_children(n)));
}

CotTree center_split(const CotTree& t, const NodePath& path) {
  const CotTree& n = node_at(t, path);
  if (n.symbol->name != "sigma_pm") throw DomainError("center split needs a sigma_pm node");
  return replace_at(t, path, make_node("sigma"));
}

CotTree center_merge(const CotTree& t, const NodePath& path) {
  const CotTree& n = node_at(t, path);
  if (path.empty() || n.symbol->name != "sigma") throw DomainError("center merge needs a sigma leaf");
  return replace_at(t, path, make_node("sigma_pm"));
}

std::vector<CotTree> resolutions(const CotTree& t) {
  if (tree_coheight(t) != 1) throw DomainError("resolutions need a tree of coheight one");
  NodePath where;
  for (const auto& p : node_paths(t))
    if (node_at(t, p).symbol->coheight == 1) where = p;
  const CotTree& n = node_at(t, where);
  const CotSymbol& s = *n.symbol;
  std::vector<CotTree> out;
  switch (*s.family) {
    case Family::CUnstable: out.push_back(center_split(t, where)); break;
    case Family::PUnstable: {
      Placed p = instantiate(s);
      for (int v = 0; v < p.graph.num_vertices(); ++v) {
        if (p.graph.degree(v) < 4) continue;
        auto choices = split_choices(p.graph.degree(v));
        for (int c = 0; c < static_cast<int>(choices.size()); ++c) {
          auto r = split_local(p, v, choices[c]);
          if (!r) continue;
          auto m = match_symbol(*r);
          if (!m || m->symbol->coheight != 0) continue;
          out.push_back(replace_at(t, where, encode(*r, flat_children(n))));
        }
      }
      break;
    }
    case Family::HUnstable: {
      auto kids = flat_children(n);
      for (const auto& local : h_resolutions(s)) out.push_back(replace_at(t, where, substitute(local, kids)));
      break;
    }
    case Family::BUnstable:
    case Family::FUnstable:
      throw UnsupportedError("transitions for " + to_string(*s.family) + " are not supported");
  }
  return sorted_unique(std::move(out));
}

std::vector<std::pair<Move, CotTree>> degenerations(const CotTree& t) {
  if (tree_coheight(t) != 0) throw DomainError("degenerations need a tree of coheight zero");
  std::vector<std::pair<Move, CotTree>> out;
  std::set<std::pair<MoveKind, std::string>> seen;
  auto add = [&](Move m, const CotTree& r) {
    CotTree c = canonicalize(r);
    if (seen.emplace(m.kind, serialize(c)).second) out.emplace_back(std::move(m), std::move(c));
  };
  for (const auto& path : node_paths(t)) {
    if (path.empty()) continue;
    const CotTree& n = node_at(t, path);
    const CotSymbol& s = *n.symbol;
    if (s.name == "sigma") add({MoveKind::CenterMerge, path, 0}, center_merge(t, path));
    if (s.is_beta()) continue;

    Placed p = instantiate(s);
    auto edges = edge_list(p.graph);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      int d = edges[e].first;
      const auto& g = p.graph;
      if (g.is_loop(d) || g.degree(g.vertex_of(d)) != 3 || g.degree(g.vertex_of(g.alpha(d))) != 3) continue;
      add({MoveKind::WhiteheadCollapse, path, e}, whitehead_collapse(t, path, e));
    }

    auto kids = flat_children(n);
    const int m = static_cast<int>(kids.size());
    int choice = 0;
    for (int ci = 0; ci < m; ++ci) {
      const CotSymbol& cs = *kids[ci].symbol;
      if (cs.is_beta() || cs.tmpl->graph.num_darts() == 0) continue;
      Placed child = instantiate(cs);
      for (auto& it : child.items)
        if (it.kind == FaceItem::Kind::Content) it.label += m;
      auto contents = kids;
      auto grandkids = flat_children(kids[ci]);
      contents.insert(contents.end(), grandkids.begin(), grandkids.end());
      int x1 = s.tmpl->boxes[ci];
      int x2 = cs.tmpl->outer;
      auto pf = p.graph.faces();
      auto cf = child.graph.faces();
      for (int h : pf[x1])
        for (int g : cf[x2])
          for (bool twist : {false, true}) {
            int this_choice = choice++;
            auto merged = band_merge(p, x1, child, x2, h, g, twist);
            if (!merged) continue;
            auto ms = match_symbol(*merged);
            if (!ms || ms->symbol->family != Family::HUnstable) continue;
            add({MoveKind::SaddleForm, path, this_choice}, replace_at(t, path, encode(*merged, contents)));
          }
    }
  }
  return out;
}

Rational index_sum_positive(const CotTree& t) { return index_sum_positive(to_diagram(t).diagram); }

std::vector<std::string> enumerate_zero(int max_tripods, const std::string& root, bool allow_beta_leaves) {
  if (max_tripods < 0 || max_tripods > 6) throw DomainError("atlas enumeration is limited to 6 tripods");
  const CotSymbol& r = manifest().at(root);
  if (!r.is_root()) throw DomainError("'" + root + "' is not a root symbol");

  // by_tripods[n]: canonical subtrees with exactly n tripods.
  std::vector<std::vector<CotTree>> by_tripods(max_tripods + 1);
  by_tripods[0].push_back(make_node("sigma"));
  if (allow_beta_leaves) by_tripods[0].push_back(make_node("beta"));
  for (int n = 1; n <= max_tripods; ++n) {
    std::vector<CotTree> level;
    for (const auto& c : by_tripods[n - 1]) {
      level.push_back(make_node("p_o", {{c}}));
      level.push_back(make_node("p_i", {{c}}));
    }
    for (int a = 0; a + 2 <= n; ++a) {
      int b = n - 2 - a;
      const auto& xs = by_tripods[a];
      const auto& ys = by_tripods[b];
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
          level.push_back(make_node("b_i", {{xs[i], ys[j]}}));
          if (a < b || (a == b && i <= j)) {
            level.push_back(make_node("b_theta", {{xs[i], ys[j]}}));
            level.push_back(make_node("b_o", {{xs[i], ys[j]}}));
          }
        }
    }
    by_tripods[n] = sorted_unique(std::move(level));
  }
  std::vector<std::string> out;
  for (const auto& c : by_tripods[max_tripods]) {
    CotTree t{&r, {{c}}};
    if (!poincare_hopf_check(to_diagram(t).diagram).ok) continue;
    out.push_back(serialize(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TransitionGraph build_transition_graph(const std::vector<CotTree>& seeds, int max_tripods) {
  TransitionGraph tg;
  std::map<std::string, CotTree> nodes;
  std::deque<std::string> queue;
  bool first = true;
  for (const auto& s : seeds) {
    if (tree_coheight(s) != 0) throw DomainError("seeds must have coheight zero");
    Rational i = index_sum_positive(s);
    if (first) tg.i = i;
    else if (i != tg.i) throw DomainError("seeds have different positive index sums");
    first = false;
    if (tree_tripods(s) > max_tripods) continue;
    CotTree c = canonicalize(s);
    std::string key = serialize(c);
    if (nodes.emplace(key, c).second) queue.push_back(key);
  }
  std::set<std::tuple<std::string, std::string, std::string>> edges;  // (a, b, via)
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& [move, u] : degenerations(nodes.at(cur))) {
      std::string via = serialize(u);
      std::vector<std::string> ends;
      for (const auto& r : resolutions(u)) {
        std::string key = serialize(r);
        ends.push_back(key);
        if (tree_tripods(r) <= max_tripods && nodes.emplace(key, r).second) queue.push_back(key);
      }
      if (ends.size() == 1) edges.emplace(ends[0], ends[0], via);
      for (std::size_t a = 0; a < ends.size(); ++a)
        for (std::size_t b = a + 1; b < ends.size(); ++b) edges.emplace(ends[a], ends[b], via);
    }
  }
  std::map<std::string, int> index;
  for (const auto& [k, _] : nodes) {
    index[k] = static_cast<int>(tg.nodes.size());
    tg.nodes.push_back(k);
  }
  for (const auto& [a, b, via] : edges)
    if (index.count(a) && index.count(b)) tg.edges.push_back({via, index[a], index[b]});
  std::sort(tg.edges.begin(), tg.edges.end(), [](const TransitionEdge& x, const TransitionEdge& y) {
    return std::tie(x.a, x.b, x.via) < std::tie(y.a, y.b, y.via);
  });
  return tg;
}

TransitionGraph build_transition_graph(int max_tripods, const std::string& root, bool allow_beta_leaves) {
  std::vector<CotTree> seeds;
  for (const auto& s : enumerate_zero(max_tripods, root, allow_beta_leaves)) seeds.push_back(parse(s));
  return build_transition_graph(seeds, max_tripods);
}

nlohmann::json to_json(const TransitionGraph& g) {
  nlohmann::json j;
  j["i"] = g.i.to_string();
  j["nodes"] = g.nodes;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"via", e.via}, {"a", e.a}, {"b", e.b}});
  return j;
}

std::string to_dot(const TransitionGraph& g) {
  std::ostringstream o;
  o << "graph transitions {\n";
  o << "  label=\"i = " << g.i.to_string() << "\";\n";
  for (std::size_t v = 0; v < g.nodes.size(); ++v) o << "  n" << v << " [label=\"" << g.nodes[v] << "\"];\n";
  for (const auto& e : g.edges) o << "  n" << e.a << " -- n" << e.b << " [label=\"" << e.via << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace prong
