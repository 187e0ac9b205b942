#include <algorithm>
#include <set>

#include "manifest_data.hpp"
#include "prong/cot.hpp"
#include "prong/error.hpp"

namespace prong {

namespace {

using nlohmann::json;

SymbolKind parse_kind(const std::string& s) {
  if (s == "Root") return SymbolKind::Root;
  if (s == "Terminal") return SymbolKind::Terminal;
  if (s == "IntermediateZero") return SymbolKind::IntermediateZero;
  if (s == "IntermediateOne") return SymbolKind::IntermediateOne;
  throw ManifestError("unknown symbol kind " + s);
}

Family parse_family(const std::string& s) {
  if (s == "BUnstable") return Family::BUnstable;
  if (s == "CUnstable") return Family::CUnstable;
  if (s == "FUnstable") return Family::FUnstable;
  if (s == "PUnstable") return Family::PUnstable;
  if (s == "HUnstable") return Family::HUnstable;
  throw ManifestError("unknown family " + s);
}

SymbolTemplate parse_template(const json& j, const std::string& name) {
  SymbolTemplate t;
  std::vector<int> degrees = j.at("prongs").get<std::vector<int>>();
  std::vector<int> offset(degrees.size(), 0);
  for (std::size_t i = 1; i < degrees.size(); ++i) offset[i] = offset[i - 1] + degrees[i - 1];
  auto dart = [&](const json& e, std::size_t at) {
    int v = e.at(at).get<int>();
    int s = e.at(at + 1).get<int>();
    if (v < 0 || v >= static_cast<int>(degrees.size()) || s < 0 || s >= degrees[v])
      throw ManifestError(name + ": template dart out of range");
    return offset[v] + s;
  };
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : j.at("edges")) pairs.emplace_back(dart(e, 0), dart(e, 2));
  try {
    t.graph = RibbonGraph::build(degrees, pairs);
  } catch (const DomainError& e) {
    throw ManifestError(name + ": " + e.what());
  }
  auto face = t.graph.face_of_darts();
  auto face_of = [&](const json& e) { return e.is_null() ? -1 : face[dart(e, 0)]; };
  // A center has no darts; its one face holds the parent.
  if (t.graph.num_darts() == 0)
    t.outer = 0;
  else
    t.outer = face_of(j.at("outer"));
  t.boundary = face_of(j.at("boundary_face"));
  for (const auto& b : j.at("boxes")) t.boxes.push_back(face[dart(b, 0)]);
  return t;
}

// Permutations of box positions allowed by the group shapes.
std::set<std::vector<int>> shape_permutations(const std::vector<GroupShape>& groups) {
  std::set<std::vector<int>> out{{}};
  int base = 0;
  for (const auto& g : groups) {
    std::set<std::vector<int>> next;
    int rotations = g.type == GroupType::Cyclic ? g.size : 1;
    for (const auto& p : out)
      for (int r = 0; r < rotations; ++r) {
        auto q = p;
        for (int i = 0; i < g.size; ++i) q.push_back(base + (i + r) % g.size);
        next.insert(q);
      }
    out = std::move(next);
    base += g.size;
  }
  return out;
}

void check_template(const CotSymbol& s) {
  const auto& t = *s.tmpl;
  const auto& g = t.graph;
  if (!g.connected() || !g.planar()) throw ManifestError(s.name + ": template is not a planar connection");
  if (static_cast<int>(t.boxes.size()) != s.arity())
    throw ManifestError(s.name + ": box count does not match the group shapes");
  std::vector<int> used;
  if (t.outer >= 0) used.push_back(t.outer);
  if (t.boundary >= 0) used.push_back(t.boundary);
  used.insert(used.end(), t.boxes.begin(), t.boxes.end());
  std::vector<int> sorted = used;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> all(g.num_faces());
  for (int i = 0; i < g.num_faces(); ++i) all[i] = i;
  if (sorted != all) throw ManifestError(s.name + ": faces are not each used exactly once");
  if (s.is_root() != (t.outer < 0)) throw ManifestError(s.name + ": outer face mismatch");
  if ((t.boundary >= 0) != (s.family == Family::BUnstable))
    throw ManifestError(s.name + ": boundary face only on b-unstable symbols");

  // Rooted automorphisms must act on the boxes exactly as the group shapes say.
  auto face = g.face_of_darts();
  std::set<std::vector<int>> induced;
  for (const auto& a : g.automorphisms()) {
    auto image = [&](int f) {
      if (f < 0 || g.num_darts() == 0) return f;
      return face[a[g.faces()[f].front()]];
    };
    if (image(t.outer) != t.outer || image(t.boundary) != t.boundary) continue;
    std::vector<int> p;
    for (int b : t.boxes) {
      int im = image(b);
      p.push_back(static_cast<int>(std::find(t.boxes.begin(), t.boxes.end(), im) - t.boxes.begin()));
    }
    induced.insert(p);
  }
  auto shapes = shape_permutations(s.groups);
  if (induced != shapes) {
    // Box notation may also count reflections: add orientation-reversing symmetries.
    std::vector<int> inverse(g.num_darts());
    for (int d = 0; d < g.num_darts(); ++d) inverse[g.sigma(d)] = d;
    std::vector<std::pair<int, int>> pairs;
    for (int d = 0; d < g.num_darts(); ++d)
      if (d < g.alpha(d)) pairs.emplace_back(d, g.alpha(d));
    RibbonGraph mirror = RibbonGraph::build(g.degrees(), pairs, inverse);
    auto faces = g.faces();
    for (int d = 0; d < g.num_darts(); ++d) {
      auto a = RibbonGraph::match(g, 0, mirror, d);
      if (!a) continue;
      auto image = [&](int f) { return f < 0 ? f : face[g.alpha((*a)[faces[f].front()])]; };
      if (image(t.outer) != t.outer || image(t.boundary) != t.boundary) continue;
      std::vector<int> p;
      for (int b : t.boxes)
        p.push_back(static_cast<int>(std::find(t.boxes.begin(), t.boxes.end(), image(b)) - t.boxes.begin()));
      induced.insert(p);
    }
  }
  if (induced != shapes)
    throw ManifestError(s.name + ": group shapes disagree with the template symmetry");
}

}  // namespace

int CotSymbol::arity() const {
  int n = 0;
  for (const auto& g : groups) n += g.size;
  return n;
}

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Root: return "Root";
    case SymbolKind::Terminal: return "Terminal";
    case SymbolKind::IntermediateZero: return "IntermediateZero";
    case SymbolKind::IntermediateOne: return "IntermediateOne";
  }
  return "";
}

std::string to_string(Family f) {
  switch (f) {
    case Family::BUnstable: return "BUnstable";
    case Family::CUnstable: return "CUnstable";
    case Family::FUnstable: return "FUnstable";
    case Family::PUnstable: return "PUnstable";
    case Family::HUnstable: return "HUnstable";
  }
  return "";
}

SymbolManifest SymbolManifest::load(std::string_view json_text) {
  SymbolManifest m;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    for (const auto& j : doc.at("symbols")) {
      CotSymbol s;
      s.name = j.at("name").get<std::string>();
      s.aliases = j.value("aliases", std::vector<std::string>{});
      s.kind = parse_kind(j.at("kind").get<std::string>());
      s.coheight = j.at("coheight").get<int>();
      s.boundary = j.at("boundary").get<int>();
      if (!j.at("family").is_null()) s.family = parse_family(j.at("family").get<std::string>());
      if (!j.at("class").is_null()) s.graph_class = j.at("class").get<std::string>();
      for (const auto& g : j.at("groups")) {
        std::string type = g.at("type").get<std::string>();
        if (type != "ordered" && type != "cyclic") throw ManifestError(s.name + ": bad group type");
        int size = g.at("size").get<int>();
        if (size < 1) throw ManifestError(s.name + ": empty group");
        s.groups.push_back({type == "cyclic" ? GroupType::Cyclic : GroupType::Ordered, size});
      }
      if (!j.at("template").is_null()) {
        s.tmpl = parse_template(j.at("template"), s.name);
        for (int k : s.tmpl->graph.degrees()) s.prong_content[k] += 1;
      }
      m.symbols_.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ManifestError(std::string("malformed manifest entry: ") + e.what());
  }

  for (std::size_t i = 0; i < m.symbols_.size(); ++i) {
    const auto& s = m.symbols_[i];
    std::vector<std::string> names{s.name};
    names.insert(names.end(), s.aliases.begin(), s.aliases.end());
    for (const auto& n : names)
      if (!m.index_.emplace(n, i).second) throw ManifestError("duplicate symbol name " + n);
  }

  std::set<std::string> zero;
  for (const auto& s : m.symbols_) {
    bool one = s.kind == SymbolKind::IntermediateOne;
    if (s.coheight != (one ? 1 : 0)) throw ManifestError(s.name + ": coheight does not match kind");
    if (one != s.family.has_value()) throw ManifestError(s.name + ": family does not match kind");
    if (s.is_root() && !(s.groups.size() == 1 && s.groups[0] == GroupShape{GroupType::Ordered, 1}))
      throw ManifestError(s.name + ": root symbols take one ordered child");
    if (s.is_terminal() && !s.groups.empty()) throw ManifestError(s.name + ": terminals take no children");
    if (s.is_beta() && !(s.boundary == 1 && (s.is_root() || s.is_terminal())))
      throw ManifestError(s.name + ": only boundary leaves may lack a connection");
    if (!s.is_beta()) {
      if ((s.tmpl->boundary >= 0 ? 1 : 0) != s.boundary)
        throw ManifestError(s.name + ": boundary count does not match the template");
      check_template(s);
    }
    if (!one) zero.insert(s.name);
  }
  const std::set<std::string> table{"sigma_0", "beta_0", "sigma", "beta", "p_o",
                                    "p_i",     "b_theta", "b_o",  "b_i"};
  if (zero != table) throw ManifestError("coheight-zero symbols differ from the expected set");
  for (const auto& r : {"sigma_0", "beta_0"})
    if (!m.at(r).is_root()) throw ManifestError(std::string(r) + " must be a root");
  for (const auto& r : {"sigma", "beta"})
    if (!m.at(r).is_terminal()) throw ManifestError(std::string(r) + " must be a terminal");
  return m;
}

const CotSymbol* SymbolManifest::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

const CotSymbol& SymbolManifest::at(std::string_view name) const {
  if (const auto* s = find(name)) return *s;
  throw DomainError("unknown symbol " + std::string(name));
}

const SymbolManifest& manifest() {
  static const SymbolManifest m = SymbolManifest::load(detail::kManifestJson);
  return m;
}

}  // namespace prong
