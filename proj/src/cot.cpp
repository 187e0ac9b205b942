#include "prong/cot.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "prong/error.hpp"
#include "prong/placed.hpp"

namespace prong {

namespace {

// ---- lexer / parser -------------------------------------------------------

struct Token {
  enum class Type { Name, Open, Close, OpenBrace, CloseBrace, Comma, End };
  Type type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token::Type t;
    switch (c) {
      case '(': t = Token::Type::Open; break;
      case ')': t = Token::Type::Close; break;
      case '{': t = Token::Type::OpenBrace; break;
      case '}': t = Token::Type::CloseBrace; break;
      case ',': t = Token::Type::Comma; break;
      default:
        if (c >= 'a' && c <= 'z') {
          std::size_t j = i + 1;
          while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') ||
                                  s[j] == '_'))
            ++j;
          out.push_back({Token::Type::Name, std::string(s.substr(i, j - i)), i});
          i = j;
          continue;
        }
        throw ParseError(ParseError::Kind::Lexical,
                         std::string("unexpected character '") + static_cast<char>(c) + "'", i);
    }
    out.push_back({t, std::string(1, static_cast<char>(c)), i});
    ++i;
  }
  out.push_back({Token::Type::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  CotTree tree() {
    CotTree t = node(/*at_root=*/true);
    expect_end();
    return t;
  }

  CotTree subtree() {
    CotTree t = node(/*at_root=*/false);
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(ParseError::Kind k, const std::string& msg, std::size_t at) const {
    throw ParseError(k, msg, at);
  }

  void expect_end() {
    if (peek().type != Token::Type::End)
      fail(ParseError::Kind::Syntax, "trailing input '" + peek().text + "'", peek().pos);
  }

  CotTree node(bool at_root) {
    const Token& name = take();
    if (name.type != Token::Type::Name)
      fail(ParseError::Kind::Syntax,
           name.type == Token::Type::End ? "unexpected end of input" : "expected a symbol name",
           name.pos);
    const CotSymbol* sym = manifest().find(name.text);
    if (!sym) fail(ParseError::Kind::UnknownSymbol, "unknown symbol '" + name.text + "'", name.pos);
    if (at_root && !sym->is_root())
      fail(ParseError::Kind::RootPosition, "tree must start with sigma_0 or beta_0", name.pos);
    if (!at_root && sym->is_root())
      fail(ParseError::Kind::RootPosition, "root symbol '" + sym->name + "' below the root",
           name.pos);

    CotTree t{sym, {}};
    std::vector<GroupType> types;
    std::vector<std::size_t> positions;
    while (peek().type == Token::Type::Open || peek().type == Token::Type::OpenBrace) {
      if (sym->is_terminal())
        fail(ParseError::Kind::TerminalChildren, "terminal '" + sym->name + "' cannot have children",
             peek().pos);
      bool cyclic = peek().type == Token::Type::OpenBrace;
      positions.push_back(peek().pos);
      take();
      std::vector<CotTree> group;
      group.push_back(node(false));
      while (peek().type == Token::Type::Comma) {
        take();
        group.push_back(node(false));
      }
      const Token& close = take();
      if (close.type != (cyclic ? Token::Type::CloseBrace : Token::Type::Close))
        fail(ParseError::Kind::Syntax, std::string("expected '") + (cyclic ? "}" : ")") + "'",
             close.pos);
      types.push_back(cyclic ? GroupType::Cyclic : GroupType::Ordered);
      t.groups.push_back(std::move(group));
    }
    if (t.groups.size() != sym->groups.size())
      fail(ParseError::Kind::Arity,
           "'" + sym->name + "' takes " + std::to_string(sym->groups.size()) + " child group(s), got " +
               std::to_string(t.groups.size()),
           name.pos);
    for (std::size_t i = 0; i < t.groups.size(); ++i) {
      const auto& want = sym->groups[i];
      if (types[i] != want.type || static_cast<int>(t.groups[i].size()) != want.size)
        fail(ParseError::Kind::Arity,
             "group " + std::to_string(i + 1) + " of '" + sym->name + "' must be " +
                 (want.type == GroupType::Cyclic ? "cyclic" : "ordered") + " of size " +
                 std::to_string(want.size),
             positions[i]);
    }
    return t;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---- canonical form -------------------------------------------------------

std::string raw(const CotTree& t) {
  std::string s = t.symbol->name;
  for (std::size_t g = 0; g < t.groups.size(); ++g) {
    bool cyclic = g < t.symbol->groups.size() && t.symbol->groups[g].type == GroupType::Cyclic;
    s += cyclic ? '{' : '(';
    for (std::size_t i = 0; i < t.groups[g].size(); ++i) {
      if (i) s += ',';
      s += raw(t.groups[g][i]);
    }
    s += cyclic ? '}' : ')';
  }
  return s;
}

// Canonical subtree and its text.
std::pair<CotTree, std::string> canon(const CotTree& t) {
  CotTree out{t.symbol, {}};
  std::string text = t.symbol->name;
  for (std::size_t g = 0; g < t.groups.size(); ++g) {
    std::vector<CotTree> kids;
    std::vector<std::string> texts;
    for (const auto& c : t.groups[g]) {
      auto [ct, cs] = canon(c);
      kids.push_back(std::move(ct));
      texts.push_back(std::move(cs));
    }
    bool cyclic = g < t.symbol->groups.size() && t.symbol->groups[g].type == GroupType::Cyclic;
    if (cyclic && !kids.empty()) {
      std::size_t n = kids.size(), best = 0;
      auto rotated = [&](std::size_t r) {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(texts[(i + r) % n]);
        return v;
      };
      auto best_seq = rotated(0);
      for (std::size_t r = 1; r < n; ++r) {
        auto seq = rotated(r);
        if (seq < best_seq) {
          best_seq = std::move(seq);
          best = r;
        }
      }
      std::rotate(kids.begin(), kids.begin() + static_cast<std::ptrdiff_t>(best), kids.end());
      texts = std::move(best_seq);
    }
    text += cyclic ? '{' : '(';
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (i) text += ',';
      text += texts[i];
    }
    text += cyclic ? '}' : ')';
    out.groups.push_back(std::move(kids));
  }
  return {std::move(out), std::move(text)};
}

bool shape_ok(const CotTree& t) {
  if (t.groups.size() != t.symbol->groups.size()) return false;
  for (std::size_t g = 0; g < t.groups.size(); ++g)
    if (static_cast<int>(t.groups[g].size()) != t.symbol->groups[g].size) return false;
  return true;
}

void preorder(const CotTree& t, NodePath& path,
              const std::function<void(const CotTree&, const NodePath&)>& f) {
  f(t, path);
  int i = 0;
  for (const auto& g : t.groups)
    for (const auto& c : g) {
      path.push_back(i++);
      preorder(c, path, f);
      path.pop_back();
    }
}

}  // namespace

std::vector<const CotTree*> CotTree::children() const {
  std::vector<const CotTree*> out;
  for (const auto& g : groups)
    for (const auto& c : g) out.push_back(&c);
  return out;
}

std::size_t CotTree::node_count() const {
  std::size_t n = 1;
  for (const auto& g : groups)
    for (const auto& c : g) n += c.node_count();
  return n;
}

CotTree make_node(std::string_view name, std::vector<std::vector<CotTree>> groups) {
  return CotTree{&manifest().at(name), std::move(groups)};
}

CotTree parse(std::string_view text) { return Parser(text).tree(); }
CotTree parse_node(std::string_view text) { return Parser(text).subtree(); }

std::string serialize(const CotTree& t) { return canon(t).second; }
std::string serialize_raw(const CotTree& t) { return raw(t); }
CotTree canonicalize(const CotTree& t) { return canon(t).first; }
bool equivalent(const CotTree& a, const CotTree& b) { return serialize(a) == serialize(b); }

int tree_coheight(const CotTree& t) {
  int n = t.symbol->coheight;
  for (const auto& g : t.groups)
    for (const auto& c : g) n += tree_coheight(c);
  return n;
}

int tree_tripods(const CotTree& t) {
  auto it = t.symbol->prong_content.find(3);
  int n = it == t.symbol->prong_content.end() ? 0 : it->second;
  for (const auto& g : t.groups)
    for (const auto& c : g) n += tree_tripods(c);
  return n;
}

std::vector<std::string> validate(const CotTree& t) {
  std::vector<std::string> out;
  if (!t.symbol->is_root()) out.push_back("root: '" + t.symbol->name + "' is not a root symbol");
  int unstable = 0;
  bool shapes = true;
  NodePath path;
  preorder(t, path, [&](const CotTree& n, const NodePath& p) {
    std::string where = p.empty() ? "root" : path_to_string(p);
    if (!p.empty() && n.symbol->is_root())
      out.push_back(where + ": root symbol '" + n.symbol->name + "' below the root");
    if (n.symbol->is_terminal() && !n.groups.empty())
      out.push_back(where + ": terminal '" + n.symbol->name + "' has children");
    if (!shape_ok(n)) {
      shapes = false;
      out.push_back(where + ": children of '" + n.symbol->name + "' do not match its groups");
    }
    if (n.symbol->coheight == 1) ++unstable;
  });
  if (unstable > 1) out.push_back("multiple coheight-one symbols");
  if (shapes) {
    auto ph = poincare_hopf_check(to_diagram(t).diagram);
    if (!ph.ok)
      out.push_back("Poincare-Hopf: index sum " + ph.sum.to_string() + " differs from Euler characteristic " +
                    std::to_string(ph.chi));
  }
  return out;
}

nlohmann::json to_json(const CotTree& t) {
  nlohmann::json j;
  j["symbol"] = t.symbol->name;
  j["kind"] = to_string(t.symbol->kind);
  j["groups"] = nlohmann::json::array();
  for (std::size_t g = 0; g < t.groups.size(); ++g) {
    nlohmann::json grp;
    bool cyclic = g < t.symbol->groups.size() && t.symbol->groups[g].type == GroupType::Cyclic;
    grp["type"] = cyclic ? "cyclic" : "ordered";
    grp["children"] = nlohmann::json::array();
    for (const auto& c : t.groups[g]) grp["children"].push_back(to_json(c));
    j["groups"].push_back(std::move(grp));
  }
  return j;
}

Expansion to_diagram(const CotTree& t) {
  struct Item {
    const CotTree* node;
    NodePath path;
  };
  std::vector<Item> nodes;
  NodePath path;
  preorder(t, path, [&](const CotTree& n, const NodePath& p) { nodes.push_back({&n, p}); });

  std::map<NodePath, int> conn_of;
  for (const auto& it : nodes)
    if (!it.node->symbol->is_beta()) conn_of.emplace(it.path, static_cast<int>(conn_of.size()));

  Expansion e;
  for (const auto& it : nodes) {
    const CotSymbol& s = *it.node->symbol;
    e.diagram.num_boundary += s.boundary;
    if (s.is_beta()) continue;
    int ci = conn_of.at(it.path);
    const auto& tm = *s.tmpl;
    const auto& g = tm.graph;
    auto faces = g.faces();
    std::vector<bool> on_boundary(g.num_vertices(), false);
    if (tm.boundary >= 0)
      for (int d : faces[tm.boundary]) on_boundary[g.vertex_of(d)] = true;
    std::string prefix = "c" + std::to_string(ci) + "_";
    auto conn = ProngConnection::from_ribbon(g, prefix, on_boundary, s.boundary);

    ConnectionEmbedding emb;
    emb.node_path = it.path;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      FaceRole role;
      role.dart = faces[f].empty() ? SlotRef{conn.prongs()[0].id, -1} : conn.slot_of_dart(faces[f].front());
      if (f == tm.outer) {
        role.kind = FaceRole::Kind::Outer;
      } else if (f == tm.boundary) {
        role.kind = FaceRole::Kind::Boundary;
      } else {
        role.kind = FaceRole::Kind::Child;
        auto pos = std::find(tm.boxes.begin(), tm.boxes.end(), f) - tm.boxes.begin();
        role.child = static_cast<int>(pos);
        NodePath cp = it.path;
        cp.push_back(role.child);
        auto c = conn_of.find(cp);
        role.connection = c == conn_of.end() ? -1 : c->second;
      }
      emb.faces.push_back(role);
    }
    e.diagram.connections.push_back(std::move(conn));
    e.context.connections.push_back(std::move(emb));
  }
  return e;
}

const CotTree& node_at(const CotTree& t, const NodePath& path) {
  const CotTree* n = &t;
  for (int i : path) {
    auto kids = n->children();
    if (i < 0 || i >= static_cast<int>(kids.size())) throw DomainError("node path out of range");
    n = kids[i];
  }
  return *n;
}

CotTree replace_at(const CotTree& t, const NodePath& path, CotTree replacement) {
  if (path.empty()) return replacement;
  CotTree out = t;
  CotTree* n = &out;
  for (int i : path) {
    CotTree* next = nullptr;
    int k = i;
    for (auto& g : n->groups) {
      if (k < static_cast<int>(g.size())) {
        next = &g[k];
        break;
      }
      k -= static_cast<int>(g.size());
    }
    if (!next || i < 0) throw DomainError("node path out of range");
    n = next;
  }
  *n = std::move(replacement);
  return out;
}

std::vector<NodePath> node_paths(const CotTree& t) {
  std::vector<NodePath> out;
  NodePath path;
  preorder(t, path, [&](const CotTree&, const NodePath& p) { out.push_back(p); });
  return out;
}

std::string path_to_string(const NodePath& p) {
  if (p.empty()) return "/";
  std::string s;
  for (int i : p) s += "/" + std::to_string(i);
  return s;
}

}  // namespace prong
