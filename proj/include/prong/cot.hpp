#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "prong/diagram.hpp"
#include "prong/embedding.hpp"
#include "prong/ribbon.hpp"

namespace prong {

enum class SymbolKind { Root, Terminal, IntermediateZero, IntermediateOne };
enum class GroupType { Ordered, Cyclic };
enum class Family { BUnstable, CUnstable, FUnstable, PUnstable, HUnstable };

struct GroupShape {
  GroupType type = GroupType::Ordered;
  int size = 0;
  bool operator==(const GroupShape&) const = default;
};

// A symbol's connection. Faces are indices into graph.faces().
struct SymbolTemplate {
  RibbonGraph graph;
  int outer = -1;          // face holding the parent; -1 for root symbols
  int boundary = -1;       // face that is a boundary disk; -1 if none
  std::vector<int> boxes;  // face of each child box, in group order
};

struct CotSymbol {
  std::string name;
  std::vector<std::string> aliases;
  SymbolKind kind = SymbolKind::Terminal;
  std::vector<GroupShape> groups;
  std::map<int, int> prong_content;  // k -> count
  int coheight = 0;
  int boundary = 0;  // boundary components contributed
  std::optional<Family> family;
  std::string graph_class;  // abstract class of the connection, empty for boundary leaves
  std::optional<SymbolTemplate> tmpl;

  int arity() const;
  bool is_root() const { return kind == SymbolKind::Root; }
  bool is_terminal() const { return kind == SymbolKind::Terminal; }
  bool is_beta() const { return !tmpl.has_value(); }
};

class SymbolManifest {
 public:
  // Parses and checks the data; throws ManifestError.
  static SymbolManifest load(std::string_view json_text);

  const std::vector<CotSymbol>& symbols() const { return symbols_; }
  // Primary names and aliases; nullptr if unknown.
  const CotSymbol* find(std::string_view name) const;
  const CotSymbol& at(std::string_view name) const;

 private:
  std::vector<CotSymbol> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// The built-in manifest, loaded once.
const SymbolManifest& manifest();

std::string to_string(SymbolKind k);
std::string to_string(Family f);

struct CotTree {
  const CotSymbol* symbol = nullptr;
  std::vector<std::vector<CotTree>> groups;

  const std::string& name() const { return symbol->name; }
  // Children of all groups in order.
  std::vector<const CotTree*> children() const;
  std::size_t node_count() const;
};

// A leaf or internal node built from a symbol name; for tests and tools.
CotTree make_node(std::string_view name, std::vector<std::vector<CotTree>> groups = {});

CotTree parse(std::string_view text);
// Parses a subtree without the root requirement.
CotTree parse_node(std::string_view text);
// Canonical text: cyclic groups in their minimal rotation.
std::string serialize(const CotTree& t);
// Text in stored order.
std::string serialize_raw(const CotTree& t);
CotTree canonicalize(const CotTree& t);
bool equivalent(const CotTree& a, const CotTree& b);
std::vector<std::string> validate(const CotTree& t);
int tree_coheight(const CotTree& t);
// Tripods in the expansion.
int tree_tripods(const CotTree& t);
nlohmann::json to_json(const CotTree& t);

struct Expansion {
  Diagram diagram;
  EmbeddingContext context;
};
Expansion to_diagram(const CotTree& t);

// Path of flattened child indices from the root.
using NodePath = std::vector<int>;
const CotTree& node_at(const CotTree& t, const NodePath& path);
CotTree replace_at(const CotTree& t, const NodePath& path, CotTree replacement);
// Paths of all nodes in preorder.
std::vector<NodePath> node_paths(const CotTree& t);
std::string path_to_string(const NodePath& p);

}  // namespace prong
