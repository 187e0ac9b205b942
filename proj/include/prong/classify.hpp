#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prong/cot.hpp"
#include "prong/diagram.hpp"
#include "prong/embedding.hpp"

namespace prong {

enum class ZeroTag { Sigma, Po, Pi, Btheta, Bo, Bi };
enum class ZeroClass { Sigma, P, Btheta, B };

struct ZeroType {
  std::optional<ZeroTag> tag;  // empty when the embedding is needed and not given
  ZeroClass abstract_class = ZeroClass::Sigma;
  bool needs_embedding = false;
};

struct OneType {
  Family family = Family::HUnstable;
  std::optional<std::string> subtype;
  std::optional<std::string> abstract_class;
  bool needs_embedding = false;
};

std::string to_string(ZeroTag t);
std::string to_string(ZeroClass c);

// nullopt means the connection does not have coheight 0 (resp. 1).
std::optional<ZeroType> classify_zero(const ProngConnection& c,
                                      const ConnectionEmbedding* ctx = nullptr);
std::optional<OneType> classify_one(const ProngConnection& c,
                                    const ConnectionEmbedding* ctx = nullptr);

// Classification of any connection, in the shape the tools print.
struct Classification {
  int coheight = 0;
  std::optional<std::string> family;
  std::optional<std::string> subtype;
  std::optional<std::string> abstract_class;
  bool needs_embedding = false;
};
Classification classify(const ProngConnection& c, const ConnectionEmbedding* ctx = nullptr);
nlohmann::json to_json(const Classification& c);

// Manifest symbol of an embedded connection, or nullptr.
const CotSymbol* embedded_symbol(const ProngConnection& c, const ConnectionEmbedding& ctx);

struct Stratum {
  enum class Level { L0, L1, Higher };
  Level level = Level::L0;
  int coheight = 0;
  bool operator==(const Stratum&) const = default;
};
Stratum stratum(const Diagram& d);
std::string to_string(const Stratum& s);

struct EnumerationConstraints {
  std::set<int> allowed_k{1, 3};
  int max_homoclinic = -1;        // -1: unbounded
  bool boundary_allowed = false;  // also emit each graph with boundary_touch 1
  bool planar_only = false;
};

// Connected ribbon graphs with at most max_prongs prongs, one per isomorphism class,
// sorted by prong count then canonical code. Throws DomainError above 6 prongs.
std::vector<ProngConnection> enumerate_connections(int max_prongs,
                                                   const EnumerationConstraints& constraints);

// Canonical form of the underlying multigraph (rotation forgotten).
std::string multigraph_key(const RibbonGraph& g);
std::string multigraph_key(const ProngConnection& c);

}  // namespace prong
