#include "prong/reeb.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace prong {

int ReebTree::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

ReebTree build_reeb(const CotTree& t) {
  ReebTree r;
  std::function<void(const CotTree&, int)> walk = [&](const CotTree& n, int parent) {
    int id = static_cast<int>(r.vertices.size());
    r.vertices.push_back({n.symbol->name, n.symbol->is_beta(), parent});
    if (parent >= 0) r.edges.emplace_back(parent, id);
    for (const CotTree* c : n.children()) walk(*c, id);
  };
  walk(canonicalize(t), -1);
  return r;
}

std::vector<std::string> validate_reeb(const ReebTree& r, Stratum::Level level) {
  std::vector<std::string> out;
  int n = static_cast<int>(r.vertices.size());
  if (static_cast<int>(r.edges.size()) != n - 1) out.push_back("not a tree: edge count is not vertices - 1");
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : r.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      out.push_back("edge references a missing vertex");
      return out;
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  if (n > 0) {
    stack.push_back(r.root);
    seen[r.root] = 1;
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) out.push_back("not a tree: vertex " + std::to_string(v) + " unreachable from the root");

  const std::set<std::string> zero_inner{"p_o", "p_i", "b_theta", "b_o", "b_i"};
  // sigma_0 is the sigma connection at infinity.
  std::set<std::string> leaves{"sigma", "sigma_0"};
  if (level != Stratum::Level::L0) leaves.insert({"sigma_3", "sigma_pm", "p_obar"});
  for (int v = 0; v < n; ++v) {
    const auto& x = r.vertices[v];
    int deg = static_cast<int>(adj[v].size());
    std::string where = "vertex " + std::to_string(v) + " (" + x.label + ")";
    const CotSymbol* s = manifest().find(x.label);
    if (!s) {
      out.push_back(where + ": unknown symbol");
      continue;
    }
    int expected = s->arity() + (v == r.root ? 0 : 1);
    if (deg != expected)
      out.push_back(where + ": degree " + std::to_string(deg) + ", symbol needs " + std::to_string(expected));
    if (deg == 1 && !x.boundary && !leaves.count(x.label))
      out.push_back(where + ": degree-one vertex is neither sigma nor a boundary");
    if (deg > 1) {
      bool ok = zero_inner.count(x.label) ||
                (level != Stratum::Level::L0 && s->coheight == 1) || s->is_root();
      if (!ok) out.push_back(where + ": not allowed as an inner vertex");
    }
    if (level == Stratum::Level::L0 && s->coheight == 1)
      out.push_back(where + ": coheight-one symbol in a coheight-zero tree");
  }
  return out;
}

std::string to_dot(const ReebTree& r) {
  std::ostringstream o;
  o << "graph reeb {\n";
  for (std::size_t v = 0; v < r.vertices.size(); ++v) {
    o << "  n" << v << " [label=\"" << r.vertices[v].label << "\"";
    if (static_cast<int>(v) == r.root) o << ", shape=doublecircle";
    else if (r.vertices[v].boundary) o << ", shape=box";
    o << "];\n";
  }
  for (auto [a, b] : r.edges) o << "  n" << a << " -- n" << b << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace prong
