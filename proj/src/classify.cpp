#include "prong/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "prong/error.hpp"
#include "prong/placed.hpp"

namespace prong {

namespace {

// Abstract classes keyed by multigraph, per family; coheight-zero symbols under nullopt.
using ClassTable = std::map<std::optional<Family>, std::map<std::string, std::string>>;

const ClassTable& class_table() {
  static const ClassTable table = [] {
    ClassTable t;
    for (const auto& s : manifest().symbols()) {
      if (!s.tmpl || s.family == Family::BUnstable) continue;
      auto [it, fresh] = t[s.family].emplace(multigraph_key(s.tmpl->graph), s.graph_class);
      if (!fresh && it->second != s.graph_class)
        throw ManifestError(s.name + ": graph shared by two abstract classes");
    }
    return t;
  }();
  return table;
}

ZeroClass zero_class_by_rules(const ProngConnection& c) {
  auto n = counts(c);
  int n1 = n.n_k.count(1) ? n.n_k.at(1) : 0;
  int n3 = n.n_k.count(3) ? n.n_k.at(3) : 0;
  if (n1 + n3 != n.n_V)
    throw InternalError("coheight-zero connection with prongs other than 1- and 3-prongs");
  int het = n.n_E - n.n_homoclinic;
  if (n3 == 0 && n1 == 2 && n.n_E == 1) return ZeroClass::Sigma;
  if (n3 == 1 && n1 == 1 && het == 1 && n.n_homoclinic == 1) return ZeroClass::P;
  if (n3 == 2 && n1 == 0 && het == 3) return ZeroClass::Btheta;
  if (n3 == 2 && n1 == 0 && het == 1 && n.n_homoclinic == 2) return ZeroClass::B;
  throw InternalError("coheight-zero connection outside the four graph classes");
}

std::optional<ZeroTag> tag_of(const std::string& name) {
  if (name == "sigma" || name == "sigma_0") return ZeroTag::Sigma;
  if (name == "p_o") return ZeroTag::Po;
  if (name == "p_i") return ZeroTag::Pi;
  if (name == "b_theta") return ZeroTag::Btheta;
  if (name == "b_o") return ZeroTag::Bo;
  if (name == "b_i") return ZeroTag::Bi;
  return std::nullopt;
}

std::vector<const CotSymbol*> symbols_of(Family f, const std::string& cls) {
  std::vector<const CotSymbol*> out;
  for (const auto& s : manifest().symbols())
    if (s.family == f && s.graph_class == cls) out.push_back(&s);
  return out;
}

}  // namespace

std::string to_string(ZeroTag t) {
  switch (t) {
    case ZeroTag::Sigma: return "Sigma";
    case ZeroTag::Po: return "Po";
    case ZeroTag::Pi: return "Pi";
    case ZeroTag::Btheta: return "Btheta";
    case ZeroTag::Bo: return "Bo";
    case ZeroTag::Bi: return "Bi";
  }
  return "";
}

std::string to_string(ZeroClass c) {
  switch (c) {
    case ZeroClass::Sigma: return "Sigma";
    case ZeroClass::P: return "P";
    case ZeroClass::Btheta: return "Btheta";
    case ZeroClass::B: return "B";
  }
  return "";
}

const CotSymbol* embedded_symbol(const ProngConnection& c, const ConnectionEmbedding& ctx) {
  const auto& g = c.ribbon();
  Placed p{g, std::vector<FaceItem>(g.num_faces())};
  auto face = g.face_of_darts();
  for (const auto& role : ctx.faces) {
    int f = role.dart.slot < 0 ? 0 : face[c.dart_of(role.dart)];
    if (p.items[f].kind != FaceItem::Kind::Empty) return nullptr;
    switch (role.kind) {
      case FaceRole::Kind::Outer: p.items[f] = {FaceItem::Kind::Parent, -1}; break;
      case FaceRole::Kind::Boundary: p.items[f] = {FaceItem::Kind::Boundary, -1}; break;
      case FaceRole::Kind::Child: p.items[f] = {FaceItem::Kind::Content, role.child}; break;
    }
  }
  auto m = match_symbol(p);
  return m ? m->symbol : nullptr;
}

std::optional<ZeroType> classify_zero(const ProngConnection& c, const ConnectionEmbedding* ctx) {
  if (coheight_connection(c) != 0) return std::nullopt;
  if (counts(c).n_fake > 0) throw UnsupportedError("coheight-zero connection through a fake prong");
  ZeroType z;
  z.abstract_class = zero_class_by_rules(c);
  if (ctx) {
    const CotSymbol* s = embedded_symbol(c, *ctx);
    if (!s || s->coheight != 0) throw ClassificationGap("embedded connection matches no coheight-zero symbol");
    z.tag = tag_of(s->name);
    return z;
  }
  switch (z.abstract_class) {
    case ZeroClass::Sigma: z.tag = ZeroTag::Sigma; break;
    case ZeroClass::Btheta: z.tag = ZeroTag::Btheta; break;
    default: z.needs_embedding = true;
  }
  return z;
}

std::optional<OneType> classify_one(const ProngConnection& c, const ConnectionEmbedding* ctx) {
  if (coheight_connection(c) != 1) return std::nullopt;
  auto n = counts(c);
  OneType o;
  if (n.n_boundary == 1)
    o.family = Family::BUnstable;
  else if (n.n_V == 1 && n.n_k.count(0))
    o.family = Family::CUnstable;
  else if (n.n_fake == 1)
    o.family = Family::FUnstable;
  else if (coheight_p(c) == 2)
    o.family = Family::PUnstable;
  else
    o.family = Family::HUnstable;

  if (o.family == Family::FUnstable) return o;  // no manifest symbols for this family

  std::string cls;
  if (o.family == Family::BUnstable) {
    cls = to_string(zero_class_by_rules(c));
  } else {
    const auto& table = class_table().at(o.family);
    auto it = table.find(multigraph_key(c));
    if (it == table.end())
      throw ClassificationGap(to_string(o.family) + " connection whose graph has no manifest class");
    cls = it->second;
  }
  auto candidates = symbols_of(o.family, cls);
  if (candidates.empty())
    throw ClassificationGap(to_string(o.family) + " connection of class " + cls + " has no manifest symbol");
  o.abstract_class = cls;
  if (ctx) {
    const CotSymbol* s = embedded_symbol(c, *ctx);
    if (!s || s->family != o.family) throw ClassificationGap("embedded connection matches no symbol");
    o.subtype = s->name;
  } else if (candidates.size() == 1) {
    o.subtype = candidates.front()->name;
  } else {
    o.needs_embedding = true;
  }
  return o;
}

Classification classify(const ProngConnection& c, const ConnectionEmbedding* ctx) {
  Classification r;
  r.coheight = coheight_connection(c);
  if (auto z = classify_zero(c, ctx)) {
    r.abstract_class = to_string(z->abstract_class);
    r.needs_embedding = z->needs_embedding;
    if (ctx) {
      r.subtype = embedded_symbol(c, *ctx)->name;
    } else if (z->tag) {
      r.subtype = z->tag == ZeroTag::Sigma ? "sigma" : "b_theta";
    }
  } else if (auto o = classify_one(c, ctx)) {
    r.family = to_string(o->family);
    r.subtype = o->subtype;
    r.abstract_class = o->abstract_class;
    r.needs_embedding = o->needs_embedding;
  }
  return r;
}

nlohmann::json to_json(const Classification& c) {
  auto opt = [](const std::optional<std::string>& s) -> nlohmann::json {
    return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
  };
  return {{"coheight", c.coheight},
          {"family", opt(c.family)},
          {"subtype", opt(c.subtype)},
          {"abstract_class", opt(c.abstract_class)},
          {"needs_embedding", c.needs_embedding}};
}

Stratum stratum(const Diagram& d) {
  int ones = 0, total = 0;
  bool other = false;
  for (const auto& c : d.connections) {
    int h = coheight_connection(c);
    total += h;
    if (h == 1) ++ones;
    else if (h != 0) other = true;
  }
  if (total == 0 && !other) return {Stratum::Level::L0, 0};
  if (ones == 1 && !other && total == 1) return {Stratum::Level::L1, 1};
  return {Stratum::Level::Higher, total};
}

std::string to_string(const Stratum& s) {
  switch (s.level) {
    case Stratum::Level::L0: return "L0";
    case Stratum::Level::L1: return "L1";
    case Stratum::Level::Higher: return "Higher(" + std::to_string(s.coheight) + ")";
  }
  return "";
}

std::string multigraph_key(const RibbonGraph& g) {
  int n = g.num_vertices();
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (int d = 0; d < g.num_darts(); ++d) {
    int a = g.alpha(d);
    if (d < a) {
      int u = g.vertex_of(d), v = g.vertex_of(a);
      adj[u][v] += 1;
      if (u != v) adj[v][u] += 1;
    }
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
  std::string best;
  // Only orders that keep degrees sorted can be minimal.
  auto sorted_degrees = [&] {
    for (int i = 1; i < n; ++i)
      if (g.degree(perm[i - 1]) > g.degree(perm[i])) return false;
    return true;
  };
  std::sort(perm.begin(), perm.end());
  do {
    if (!sorted_degrees()) continue;
    std::string s;
    for (int i = 0; i < n; ++i) s += std::to_string(g.degree(perm[i])) + ",";
    s += "|";
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) s += std::to_string(adj[perm[i]][perm[j]]) + ",";
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string multigraph_key(const ProngConnection& c) { return multigraph_key(c.ribbon()); }

std::vector<ProngConnection> enumerate_connections(int max_prongs, const EnumerationConstraints& cons) {
  if (max_prongs > 6) throw DomainError("enumeration is limited to 6 prongs");
  std::vector<std::pair<std::vector<int>, RibbonGraph>> found;
  if (max_prongs >= 1 && cons.allowed_k.count(0))
    found.emplace_back(std::vector<int>{0}, RibbonGraph::build({0}, {}));

  std::vector<int> degrees;
  std::vector<int> alpha;
  int loops = 0;
  std::vector<int> vertex;

  std::function<void()> extend = [&] {
    auto it = std::find(alpha.begin(), alpha.end(), -1);
    if (it == alpha.end()) {
      std::vector<std::pair<int, int>> pairs;
      for (int d = 0; d < static_cast<int>(alpha.size()); ++d)
        if (d < alpha[d]) pairs.emplace_back(d, alpha[d]);
      RibbonGraph g = RibbonGraph::build(degrees, pairs);
      if (cons.planar_only && !g.planar()) return;
      auto code = g.code_from(0);
      if (code != g.canonical_code()) return;
      found.emplace_back(std::move(code), std::move(g));
      return;
    }
    int d = static_cast<int>(it - alpha.begin());
    for (int e = d + 1; e < static_cast<int>(alpha.size()); ++e) {
      if (alpha[e] != -1) continue;
      bool loop = vertex[d] == vertex[e];
      if (loop && cons.max_homoclinic >= 0 && loops + 1 > cons.max_homoclinic) continue;
      alpha[d] = e;
      alpha[e] = d;
      loops += loop;
      extend();
      loops -= loop;
      alpha[d] = alpha[e] = -1;
    }
    if (static_cast<int>(degrees.size()) < max_prongs) {
      for (int k : cons.allowed_k) {
        if (k < 1) continue;
        int v = static_cast<int>(degrees.size());
        int first = static_cast<int>(alpha.size());
        degrees.push_back(k);
        for (int s = 0; s < k; ++s) {
          alpha.push_back(-1);
          vertex.push_back(v);
        }
        alpha[d] = first;
        alpha[first] = d;
        extend();
        alpha[d] = -1;
        degrees.pop_back();
        alpha.resize(first);
        vertex.resize(first);
      }
    }
  };
  if (max_prongs >= 1)
    for (int k : cons.allowed_k) {
      if (k < 1) continue;
      degrees = {k};
      alpha.assign(k, -1);
      vertex.assign(k, 0);
      loops = 0;
      extend();
    }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.num_vertices() != b.second.num_vertices())
      return a.second.num_vertices() < b.second.num_vertices();
    return a.first < b.first;
  });
  std::vector<ProngConnection> out;
  for (const auto& [code, g] : found) {
    out.push_back(ProngConnection::from_ribbon(g));
    if (cons.boundary_allowed) out.push_back(ProngConnection::from_ribbon(g, "", {}, 1));
  }
  return out;
}

}  // namespace prong
