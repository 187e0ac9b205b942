#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prong/classify.hpp"
#include "prong/cot.hpp"
#include "prong/diagram.hpp"
#include "prong/error.hpp"
#include "prong/reeb.hpp"
#include "prong/transitions.hpp"

using nlohmann::json;
using namespace prong;

namespace {

enum class Format { Default, Json, Dot, Text };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Positional value, "-" for stdin, or the --input file.
std::string load_input(const std::string& arg, const std::string& file) {
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw UsageError("cannot open " + file);
    return trim(read_all(f));
  }
  if (arg.empty() || arg == "-") return trim(read_all(std::cin));
  return arg;
}

bool is_diagram(const std::string& text) { return !text.empty() && text.front() == '{'; }

Diagram load_diagram(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid diagram JSON: ") + e.what());
  }
  try {
    return diagram_from_json(j);
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid diagram JSON: ") + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_lines(const std::vector<std::string>& lines, Format f) {
  if (f == Format::Json) {
    emit(json(lines));
    return;
  }
  for (const auto& l : lines) std::cout << l << "\n";
}

json classify_tree(const CotTree& t) {
  auto ex = to_diagram(t);
  json out = json::array();
  for (std::size_t i = 0; i < ex.diagram.connections.size(); ++i) {
    const auto& emb = ex.context.connections[i];
    json j = to_json(classify(ex.diagram.connections[i], &emb));
    j["node"] = path_to_string(emb.node_path);
    j["symbol"] = node_at(t, emb.node_path).name();
    out.push_back(std::move(j));
  }
  return out;
}

json classify_diagram(const Diagram& d) {
  json out = json::array();
  for (const auto& c : d.connections) out.push_back(to_json(classify(c)));
  return out;
}

json reeb_json(const ReebTree& r) {
  json j;
  j["root"] = r.root;
  j["vertices"] = json::array();
  for (const auto& v : r.vertices)
    j["vertices"].push_back({{"label", v.label}, {"boundary", v.boundary}, {"parent", v.parent}});
  j["edges"] = json::array();
  for (const auto& [a, b] : r.edges) j["edges"].push_back({a, b});
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prong connection diagrams and COT trees"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "default";
  std::string input_file;
  std::string root = "sigma_0";
  int max_tripods = -1;
  bool allow_beta = false;

  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"default", "json", "dot", "text"}));
  app.add_option("--input", input_file, "Read the input from a file");

  std::string arg1, arg2;
  int n = -1;
  auto tree_cmd = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", arg1, "COT tree, diagram JSON, or - for stdin");
    return sub;
  };
  auto* parse_cmd = tree_cmd("parse", "Print the tree as JSON");
  auto* canon_cmd = tree_cmd("canon", "Print the canonical string");
  auto* eq_cmd = app.add_subcommand("eq", "Test two trees for equivalence");
  eq_cmd->add_option("a", arg1)->required();
  eq_cmd->add_option("b", arg2)->required();
  auto* validate_cmd = tree_cmd("validate", "List structural violations");
  auto* coheight_cmd = tree_cmd("coheight", "Print the coheight");
  auto* classify_cmd = tree_cmd("classify", "Classify every connection");
  auto* diagram_cmd = tree_cmd("diagram", "Print the expansion as diagram JSON");
  auto* reeb_cmd = tree_cmd("reeb", "Print the Reeb tree");
  auto* resolve_cmd = tree_cmd("resolve", "Coheight-zero resolutions of a coheight-one tree");
  auto* degen_cmd = tree_cmd("degen", "Coheight-one degenerations of a coheight-zero tree");
  auto* atlas_cmd = app.add_subcommand("atlas", "Coheight-zero trees with N tripods");
  auto* graph_cmd = app.add_subcommand("graph", "Transition graph up to N tripods");
  for (auto* sub : {atlas_cmd, graph_cmd}) {
    sub->add_option("n", n, "Number of tripods");
    sub->add_option("--max-tripods", max_tripods, "Number of tripods");
    sub->add_option("--root", root, "Root symbol")->check(CLI::IsMember({"sigma_0", "beta_0"}));
    sub->add_flag("--allow-beta-leaves", allow_beta, "Allow beta leaves");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Format format = Format::Default;
  if (format_name == "json") format = Format::Json;
  else if (format_name == "dot") format = Format::Dot;
  else if (format_name == "text") format = Format::Text;

  try {
    if (*eq_cmd) {
      bool same = equivalent(parse(arg1), parse(arg2));
      std::cout << (same ? "true" : "false") << "\n";
      return same ? 0 : 1;
    }
    if (*atlas_cmd || *graph_cmd) {
      int count = max_tripods >= 0 ? max_tripods : n;
      if (count < 0) throw UsageError("missing tripod count");
      if (*atlas_cmd) {
        emit_lines(enumerate_zero(count, root, allow_beta), format);
      } else {
        auto g = build_transition_graph(count, root, allow_beta);
        if (format == Format::Dot) std::cout << to_dot(g);
        else emit(to_json(g));
      }
      return 0;
    }

    std::string text = load_input(arg1, input_file);
    if (*coheight_cmd) {
      int c = is_diagram(text) ? coheight_total(load_diagram(text)) : tree_coheight(parse(text));
      std::cout << c << "\n";
      return 0;
    }
    if (*classify_cmd) {
      emit(is_diagram(text) ? classify_diagram(load_diagram(text)) : classify_tree(parse(text)));
      return 0;
    }
    if (*validate_cmd && is_diagram(text)) {
      load_diagram(text);
      emit(json::array());
      return 0;
    }

    CotTree t = parse(text);
    if (*parse_cmd) {
      emit(to_json(t));
    } else if (*canon_cmd) {
      if (format == Format::Json) emit(json(serialize(t)));
      else std::cout << serialize(t) << "\n";
    } else if (*validate_cmd) {
      auto v = validate(t);
      if (format == Format::Text) emit_lines(v, format);
      else emit(json(v));
      return v.empty() ? 0 : 1;
    } else if (*diagram_cmd) {
      emit(to_json(to_diagram(t).diagram));
    } else if (*reeb_cmd) {
      auto r = build_reeb(t);
      if (format == Format::Json) emit(reeb_json(r));
      else std::cout << to_dot(r);
    } else if (*resolve_cmd) {
      std::vector<std::string> lines;
      for (const auto& r : resolutions(t)) lines.push_back(serialize(r));
      if (format == Format::Text) emit_lines(lines, format);
      else emit(json(lines));
    } else if (*degen_cmd) {
      auto d = degenerations(t);
      if (format == Format::Text) {
        for (const auto& [m, u] : d)
          std::cout << to_string(m.kind) << " " << path_to_string(m.path) << " " << m.choice << " "
                    << serialize(u) << "\n";
      } else {
        json out = json::array();
        for (const auto& [m, u] : d) out.push_back({{"move", to_json(m)}, {"result", serialize(u)}});
        emit(out);
      }
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
