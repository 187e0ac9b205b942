#include "prong/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "prong/error.hpp"

namespace prong {

ProngConnection::ProngConnection(std::vector<Prong> prongs, std::vector<Separatrix> separatrices,
                                 std::map<std::string, std::vector<int>> rotation,
                                 int boundary_touch)
    : prongs_(std::move(prongs)),
      separatrices_(std::move(separatrices)),
      rotation_(std::move(rotation)),
      boundary_touch_(boundary_touch) {
  if (prongs_.empty()) throw DomainError("connection has no prongs");
  if (boundary_touch_ < 0) throw DomainError("negative boundary_touch");
  std::set<std::string> ids;
  std::vector<int> degrees;
  for (const auto& p : prongs_) {
    if (p.k < 0) throw DomainError("prong " + p.id + " has negative k");
    if (!ids.insert(p.id).second) throw DomainError("duplicate prong id " + p.id);
    degrees.push_back(p.k);
  }
  std::set<std::string> sep_ids;
  for (const auto& s : separatrices_)
    if (!sep_ids.insert(s.id).second) throw DomainError("duplicate separatrix id " + s.id);

  std::vector<int> offset(prongs_.size(), 0);
  for (std::size_t i = 1; i < prongs_.size(); ++i) offset[i] = offset[i - 1] + prongs_[i - 1].k;
  auto flat = [&](const SlotRef& r) {
    int v = prong_position(r.prong);
    if (v < 0) throw DomainError("separatrix end on unknown prong " + r.prong);
    if (r.slot < 0 || r.slot >= prongs_[v].k)
      throw DomainError("slot " + std::to_string(r.slot) + " out of range on prong " + r.prong);
    return offset[v] + r.slot;
  };
  int total = std::accumulate(degrees.begin(), degrees.end(), 0);
  if (total != 2 * static_cast<int>(separatrices_.size()))
    throw DomainError("handshake violated: sum of k is not twice the separatrix count");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& s : separatrices_) pairs.emplace_back(flat(s.a), flat(s.b));

  std::vector<int> sigma(total, -1);
  for (std::size_t v = 0; v < prongs_.size(); ++v) {
    const auto& p = prongs_[v];
    auto it = rotation_.find(p.id);
    std::vector<int> order;
    if (it == rotation_.end()) {
      order.resize(p.k);
      std::iota(order.begin(), order.end(), 0);
      rotation_[p.id] = order;
    } else {
      order = it->second;
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(p.k);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect)
      throw DomainError("rotation of prong " + p.id + " is not a cyclic order of its slots");
    for (int i = 0; i < p.k; ++i)
      sigma[offset[v] + order[i]] = offset[v] + order[(i + 1) % p.k];
  }
  for (const auto& [id, _] : rotation_)
    if (!ids.count(id)) throw DomainError("rotation given for unknown prong " + id);
  ribbon_ = RibbonGraph::build(degrees, pairs, sigma);
  if (!ribbon_.connected()) throw DomainError("connection is not connected");
  for (const auto& p : prongs_)
    if (p.k == 0 && prongs_.size() != 1) throw DomainError("a center must form its own connection");
}

ProngConnection ProngConnection::from_ribbon(const RibbonGraph& g, const std::string& prefix,
                                             const std::vector<bool>& on_boundary,
                                             int boundary_touch) {
  std::vector<Prong> prongs;
  std::map<std::string, std::vector<int>> rotation;
  for (int v = 0; v < g.num_vertices(); ++v) {
    Prong p{prefix + "v" + std::to_string(v), g.degree(v),
            v < static_cast<int>(on_boundary.size()) && on_boundary[v]};
    std::vector<int> order;
    int d = g.first_dart(v);
    for (int s = 0; s < g.degree(v); ++s, d = g.sigma(d)) order.push_back(g.slot_of(d));
    rotation[p.id] = order;
    prongs.push_back(std::move(p));
  }
  std::vector<Separatrix> seps;
  for (int d = 0; d < g.num_darts(); ++d) {
    int a = g.alpha(d);
    if (d > a) continue;
    Separatrix s;
    s.id = prefix + "e" + std::to_string(seps.size());
    s.a = {prongs[g.vertex_of(d)].id, g.slot_of(d)};
    s.b = {prongs[g.vertex_of(a)].id, g.slot_of(a)};
    seps.push_back(std::move(s));
  }
  return ProngConnection(std::move(prongs), std::move(seps), std::move(rotation), boundary_touch);
}

int ProngConnection::prong_position(const std::string& id) const {
  for (std::size_t i = 0; i < prongs_.size(); ++i)
    if (prongs_[i].id == id) return static_cast<int>(i);
  return -1;
}

int ProngConnection::dart_of(const SlotRef& s) const {
  int v = prong_position(s.prong);
  if (v < 0 || s.slot < 0 || s.slot >= prongs_[v].k) throw DomainError("no such slot");
  return ribbon_.dart(v, s.slot);
}

SlotRef ProngConnection::slot_of_dart(int d) const {
  return {prongs_[ribbon_.vertex_of(d)].id, ribbon_.slot_of(d)};
}

void check_diagram(const Diagram& d) {
  std::set<std::string> ids;
  int touch = 0;
  for (const auto& c : d.connections) {
    for (const auto& p : c.prongs())
      if (!ids.insert(p.id).second) throw DomainError("prong id " + p.id + " used twice");
    touch += c.boundary_touch();
  }
  if (d.num_boundary < 0) throw DomainError("negative boundary count");
  if (touch > d.num_boundary)
    throw DomainError("connections touch more boundary components than the surface has");
}

Rational prong_index(int k, bool /*on_boundary*/) {
  // On the boundary: half the index of the doubled (2k-2)-prong, which is the same value.
  return Rational(-(k - 2), 2);
}

int betti1(const ProngConnection& c) {
  return 1 - static_cast<int>(c.prongs().size()) + static_cast<int>(c.separatrices().size());
}

CountVector counts(const ProngConnection& c) {
  CountVector v;
  v.n_V = static_cast<int>(c.prongs().size());
  v.n_E = static_cast<int>(c.separatrices().size());
  v.n_boundary = c.boundary_touch();
  for (const auto& p : c.prongs()) {
    v.n_k[p.k] += 1;
    if (p.k >= 3) ++v.n_V_minus;
    if (p.k <= 1) ++v.n_V_plus;
    if (p.fake()) ++v.n_fake;
  }
  for (const auto& s : c.separatrices())
    if (s.homoclinic()) ++v.n_homoclinic;
  return v;
}

int coheight_p_prong(const Prong& p) {
  if (p.k == 0) return 1;
  if (p.k == 1) return 0;
  if (p.k == 2) return p.on_boundary ? 2 : 0;
  return 2 * (p.k - 3);
}

int coheight_p(const ProngConnection& c) {
  int s = 0;
  for (const auto& p : c.prongs()) s += coheight_p_prong(p);
  return s;
}

int coheight_h(const ProngConnection& c) { return counts(c).n_V_minus - betti1(c); }

int coheight_connection(const ProngConnection& c) {
  auto n = counts(c);
  return n.n_boundary + n.n_fake + coheight_h(c) + coheight_p(c);
}

int coheight_total(const Diagram& d) {
  int s = 0;
  for (const auto& c : d.connections) s += coheight_connection(c);
  return s;
}

PoincareHopf poincare_hopf_check(const Diagram& d) {
  if (!d.closed_sphere_context)
    throw UnsupportedError("Poincare-Hopf check needs the sphere-with-holes context");
  PoincareHopf r;
  for (const auto& c : d.connections)
    for (const auto& p : c.prongs()) r.sum += prong_index(p.k, p.on_boundary);
  r.chi = 2 - d.num_boundary;
  r.ok = r.sum == Rational(r.chi);
  return r;
}

Rational index_sum_positive(const Diagram& d) {
  Rational s;
  for (const auto& c : d.connections)
    for (const auto& p : c.prongs()) {
      Rational i = prong_index(p.k, p.on_boundary);
      if (i > Rational(0)) s += i;
    }
  return s;
}

nlohmann::json to_json(const ProngConnection& c) {
  nlohmann::json j;
  j["prongs"] = nlohmann::json::array();
  for (const auto& p : c.prongs())
    j["prongs"].push_back({{"id", p.id}, {"k", p.k}, {"boundary", p.on_boundary}});
  j["separatrices"] = nlohmann::json::array();
  for (const auto& s : c.separatrices())
    j["separatrices"].push_back(
        {{"id", s.id},
         {"ends", nlohmann::json::array({nlohmann::json::array({s.a.prong, s.a.slot}),
                                         nlohmann::json::array({s.b.prong, s.b.slot})})}});
  j["rotation"] = nlohmann::json::object();
  for (const auto& [id, order] : c.rotation()) j["rotation"][id] = order;
  j["boundary_touch"] = c.boundary_touch();
  return j;
}

nlohmann::json to_json(const Diagram& d) {
  nlohmann::json j;
  j["boundary"] = d.num_boundary;
  j["connections"] = nlohmann::json::array();
  for (const auto& c : d.connections) j["connections"].push_back(to_json(c));
  return j;
}

ProngConnection connection_from_json(const nlohmann::json& j) {
  try {
    std::vector<Prong> prongs;
    for (const auto& p : j.at("prongs"))
      prongs.push_back({p.at("id").get<std::string>(), p.at("k").get<int>(),
                        p.value("boundary", false)});
    std::vector<Separatrix> seps;
    for (const auto& s : j.value("separatrices", nlohmann::json::array())) {
      const auto& e = s.at("ends");
      if (e.size() != 2) throw DomainError("separatrix needs exactly two ends");
      seps.push_back({s.at("id").get<std::string>(),
                      {e[0].at(0).get<std::string>(), e[0].at(1).get<int>()},
                      {e[1].at(0).get<std::string>(), e[1].at(1).get<int>()}});
    }
    std::map<std::string, std::vector<int>> rotation;
    if (j.contains("rotation"))
      for (const auto& [id, order] : j.at("rotation").items())
        rotation[id] = order.get<std::vector<int>>();
    return ProngConnection(std::move(prongs), std::move(seps), std::move(rotation),
                           j.value("boundary_touch", 0));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed connection JSON: ") + e.what());
  }
}

Diagram diagram_from_json(const nlohmann::json& j) {
  Diagram d;
  try {
    d.num_boundary = j.value("boundary", 0);
    for (const auto& c : j.at("connections")) d.connections.push_back(connection_from_json(c));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed diagram JSON: ") + e.what());
  }
  check_diagram(d);
  return d;
}

}  // namespace prong
