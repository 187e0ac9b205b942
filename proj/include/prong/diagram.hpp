#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "prong/rational.hpp"
#include "prong/ribbon.hpp"

namespace prong {

struct Prong {
  std::string id;
  int k = 0;
  bool on_boundary = false;

  bool center() const { return k == 0; }
  bool fake() const { return k == 2; }
};

struct SlotRef {
  std::string prong;
  int slot = 0;
  auto operator<=>(const SlotRef&) const = default;
};

struct Separatrix {
  std::string id;
  SlotRef a;
  SlotRef b;

  bool homoclinic() const { return a.prong == b.prong; }
};

// A connected component of the prong connection diagram with its rotation system.
class ProngConnection {
 public:
  // Throws DomainError unless: ids unique, every slot used exactly once, rotation a cyclic
  // order of each prong's slots, and the graph connected.
  ProngConnection(std::vector<Prong> prongs, std::vector<Separatrix> separatrices,
                  std::map<std::string, std::vector<int>> rotation, int boundary_touch = 0);

  // Prong ids are prefix + "v<i>", separatrix ids prefix + "e<i>".
  static ProngConnection from_ribbon(const RibbonGraph& g, const std::string& prefix = "",
                                     const std::vector<bool>& on_boundary = {},
                                     int boundary_touch = 0);

  const std::vector<Prong>& prongs() const { return prongs_; }
  const std::vector<Separatrix>& separatrices() const { return separatrices_; }
  const std::map<std::string, std::vector<int>>& rotation() const { return rotation_; }
  int boundary_touch() const { return boundary_touch_; }

  int prong_position(const std::string& id) const;
  // Vertex v of the ribbon graph is prongs()[v]; dart (v, slot) is ribbon().dart(v, slot).
  const RibbonGraph& ribbon() const { return ribbon_; }
  int dart_of(const SlotRef& s) const;
  SlotRef slot_of_dart(int d) const;

 private:
  std::vector<Prong> prongs_;
  std::vector<Separatrix> separatrices_;
  std::map<std::string, std::vector<int>> rotation_;
  int boundary_touch_ = 0;
  RibbonGraph ribbon_;
};

struct CountVector {
  int n_V = 0;
  int n_V_minus = 0;
  int n_V_plus = 0;
  int n_E = 0;
  int n_boundary = 0;
  int n_fake = 0;
  int n_homoclinic = 0;
  std::map<int, int> n_k;

  bool operator==(const CountVector&) const = default;
};

struct Diagram {
  std::vector<ProngConnection> connections;
  int num_boundary = 0;
  bool closed_sphere_context = true;
};

// Throws DomainError on duplicate prong ids or more boundary contacts than boundaries.
void check_diagram(const Diagram& d);

Rational prong_index(int k, bool on_boundary);
int betti1(const ProngConnection& c);
CountVector counts(const ProngConnection& c);
int coheight_p_prong(const Prong& p);
int coheight_p(const ProngConnection& c);
int coheight_h(const ProngConnection& c);
int coheight_connection(const ProngConnection& c);
int coheight_total(const Diagram& d);

struct PoincareHopf {
  Rational sum;
  int chi = 0;
  bool ok = false;
};
// Throws UnsupportedError outside the sphere-with-holes context.
PoincareHopf poincare_hopf_check(const Diagram& d);
Rational index_sum_positive(const Diagram& d);

nlohmann::json to_json(const ProngConnection& c);
nlohmann::json to_json(const Diagram& d);
ProngConnection connection_from_json(const nlohmann::json& j);
Diagram diagram_from_json(const nlohmann::json& j);

}  // namespace prong
