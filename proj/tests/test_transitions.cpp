#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "prong/error.hpp"
#include "prong/transitions.hpp"

using namespace prong;

namespace {

std::set<std::string> strings(const std::vector<CotTree>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(serialize(t));
  return out;
}

std::set<std::string> resolved(const std::string& text) { return strings(resolutions(parse(text))); }

const NodePath kTop{0};

// Indices of the node's edges whose collapse succeeds.
std::vector<int> collapsible(const CotTree& t, const NodePath& p) {
  std::vector<int> out;
  const auto& s = *node_at(t, p).symbol;
  for (int e = 0; s.tmpl && e < s.tmpl->graph.num_edges(); ++e) {
    try {
      whitehead_collapse(t, p, e);
      out.push_back(e);
    } catch (const DomainError&) {
    }
  }
  return out;
}

}  // namespace

TEST(SplitChoices, FourProng) {
  // Contiguous arcs of 4 cyclic ends with a complement, each unordered split once.
  std::set<std::set<int>> ref;
  for (int start = 0; start < 4; ++start)
    for (int count = 1; count <= 3; ++count) {
      std::set<int> arc, rest;
      for (int i = 0; i < 4; ++i) ((i - start + 4) % 4 < count ? arc : rest).insert(i);
      ref.insert(std::min(arc, rest));
    }
  std::set<std::set<int>> mine;
  for (auto c : split_choices(4)) {
    std::set<int> arc, rest;
    for (int i = 0; i < 4; ++i) ((i - c.start + 4) % 4 < c.count ? arc : rest).insert(i);
    EXPECT_TRUE(mine.insert(std::min(arc, rest)).second);
  }
  EXPECT_EQ(mine, ref);
  EXPECT_EQ(split_choices(4).size(), 6u);
  EXPECT_EQ(split_choices(5).size(), 10u);
}

TEST(WhiteheadCollapse, ThetaGivesPUnstable) {
  auto t = parse("sigma_0(b_theta{p_o(sigma),p_i(sigma)})");
  std::set<std::string> names;
  for (int e : collapsible(t, kTop)) {
    auto u = whitehead_collapse(t, kTop, e);
    EXPECT_EQ(tree_coheight(u), 1);
    EXPECT_EQ(index_sum_positive(u), index_sum_positive(t));
    auto kids = node_at(u, kTop).children();
    std::multiset<std::string> ks;
    for (const auto* k : kids) ks.insert(serialize_raw(*k));
    EXPECT_EQ(ks, (std::multiset<std::string>{"p_o(sigma)", "p_i(sigma)"}));
    names.insert(node_at(u, kTop).name());
    EXPECT_EQ(node_at(u, kTop).symbol->family, Family::PUnstable);
  }
  EXPECT_EQ(collapsible(t, kTop).size(), 3u);
  EXPECT_EQ(names, (std::set<std::string>{"b_pmpm", "b_pmmp"}));
}

TEST(WhiteheadCollapse, OuterAndInnerB) {
  auto o = parse("sigma_0(b_o{sigma,sigma})");
  auto eo = collapsible(o, kTop);
  ASSERT_EQ(eo.size(), 1u);
  EXPECT_EQ(serialize(whitehead_collapse(o, kTop, eo[0])), "sigma_0(b_pmpm{sigma,sigma})");
  auto i = parse("sigma_0(b_i(sigma,sigma))");
  auto ei = collapsible(i, kTop);
  ASSERT_EQ(ei.size(), 1u);
  EXPECT_EQ(serialize(whitehead_collapse(i, kTop, ei[0])), "sigma_0(b_pmmp(sigma,sigma))");
}

TEST(WhiteheadCollapse, Errors) {
  auto s = parse("sigma_0(sigma)");
  EXPECT_THROW(whitehead_collapse(s, kTop, 0), DomainError);
  EXPECT_THROW(whitehead_collapse(s, {}, 0), DomainError);
  // The only edge between distinct prongs of p_o joins a 3-prong to a 1-prong.
  EXPECT_TRUE(collapsible(parse("sigma_0(p_o(sigma))"), kTop).empty());
}

TEST(WhiteheadSplit, PUnstableFourProng) {
  auto t = parse("sigma_0(b_pmpm{sigma,sigma})");
  std::set<std::string> out;
  for (std::size_t p = 0; p < split_choices(4).size(); ++p) {
    try {
      auto r = whitehead_split(t, kTop, 0, static_cast<int>(p));
      EXPECT_EQ(tree_coheight(r), 0);
      out.insert(serialize(r));
    } catch (const DomainError&) {
    }
  }
  EXPECT_EQ(out, resolved("sigma_0(b_pmpm{sigma,sigma})"));
  EXPECT_TRUE(out.count("sigma_0(b_theta{sigma,sigma})"));
  EXPECT_TRUE(out.count("sigma_0(b_o{sigma,sigma})"));
}

TEST(WhiteheadSplit, BothPUnstableSymbolsCoverAllThreeB) {
  auto all = resolved("sigma_0(b_pmpm{sigma,sigma})");
  auto more = resolved("sigma_0(b_pmmp(sigma,sigma))");
  all.insert(more.begin(), more.end());
  EXPECT_EQ(all, (std::set<std::string>{"sigma_0(b_i(sigma,sigma))", "sigma_0(b_o{sigma,sigma})",
                                        "sigma_0(b_theta{sigma,sigma})"}));
}

TEST(WhiteheadSplit, Errors) {
  auto p = parse("sigma_0(p_o(sigma))");
  EXPECT_THROW(whitehead_split(p, kTop, 0, 0), DomainError);
  auto t = parse("sigma_0(b_pmpm{sigma,sigma})");
  EXPECT_THROW(whitehead_split(t, kTop, 0, 99), DomainError);
}

TEST(WhiteheadMoves, CollapseThenSplitRestores) {
  for (const auto& text : enumerate_zero(2)) {
    auto t = parse(text);
    for (const auto& p : node_paths(t)) {
      if (p.empty()) continue;
      for (int e : collapsible(t, p)) {
        auto u = whitehead_collapse(t, p, e);
        bool back = false;
        for (std::size_t c = 0; c < split_choices(4).size() && !back; ++c) {
          try {
            back = equivalent(whitehead_split(u, p, 0, static_cast<int>(c)), t);
          } catch (const DomainError&) {
          }
        }
        EXPECT_TRUE(back) << text << " edge " << e;
      }
    }
  }
}

TEST(CenterMoves, Examples) {
  EXPECT_EQ(serialize(center_split(parse("sigma_0(sigma_pm)"), kTop)), "sigma_0(sigma)");
  EXPECT_EQ(serialize(center_merge(parse("sigma_0(sigma)"), kTop)), "sigma_0(sigma_pm)");
  EXPECT_THROW(center_split(parse("beta_0(beta)"), kTop), DomainError);
  EXPECT_THROW(center_merge(parse("beta_0(beta)"), kTop), DomainError);
  auto t = parse("sigma_0(b_i(sigma,p_o(sigma)))");
  for (const auto& p : node_paths(t)) {
    if (node_at(t, p).name() != "sigma") continue;
    auto m = center_merge(t, p);
    EXPECT_EQ(tree_coheight(m), 1);
    EXPECT_EQ(index_sum_positive(m), index_sum_positive(t));
    EXPECT_TRUE(equivalent(center_split(m, p), t));
  }
}

TEST(Resolutions, Examples) {
  EXPECT_EQ(resolved("sigma_0(sigma_pm)"), (std::set<std::string>{"sigma_0(sigma)"}));
  EXPECT_EQ(resolved("sigma_0(sigma_3)"), (std::set<std::string>{"sigma_0(p_o(sigma))", "sigma_0(p_i(sigma))"}));
}

TEST(Resolutions, Errors) {
  EXPECT_THROW(resolutions(parse("sigma_0(sigma)")), DomainError);
  EXPECT_THROW(resolutions(parse("sigma_0(p_obar)")), UnsupportedError);
}

TEST(Resolutions, GoldenTable) {
  std::ifstream f(GOLDEN_DIR "/resolutions.txt");
  ASSERT_TRUE(f);
  std::string line;
  int rows = 0;
  while (std::getline(f, line)) {
    auto arrow = line.find(" -> ");
    ASSERT_NE(arrow, std::string::npos);
    std::istringstream rest(line.substr(arrow + 4));
    std::set<std::string> expected;
    for (std::string r; rest >> r;) expected.insert(r);
    EXPECT_EQ(resolved(line.substr(0, arrow)), expected) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 35);
}

TEST(Resolutions, ResultsAreCoheightZeroWithSameInvariants) {
  std::ifstream f(GOLDEN_DIR "/resolutions.txt");
  std::string line;
  while (std::getline(f, line)) {
    auto u = parse(line.substr(0, line.find(" -> ")));
    for (const auto& r : resolutions(u)) {
      EXPECT_EQ(tree_coheight(r), 0);
      EXPECT_TRUE(validate(r).empty()) << serialize(r);
      EXPECT_EQ(index_sum_positive(r), index_sum_positive(u));
      if (node_at(u, kTop).symbol->family == Family::HUnstable) { EXPECT_EQ(tree_tripods(r), tree_tripods(u)); }
      EXPECT_TRUE(poincare_hopf_check(to_diagram(r).diagram).ok);
    }
  }
}

TEST(Resolutions, IgnoreChildOrderWithinCyclicGroups) {
  auto a = resolved("sigma_0(b_om{p_o(sigma),sigma})");
  auto b = resolved("sigma_0(b_om{sigma,p_o(sigma)})");
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(Degenerations, Examples) {
  auto d = degenerations(parse("sigma_0(sigma)"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first.kind, MoveKind::CenterMerge);
  EXPECT_EQ(serialize(d[0].second), "sigma_0(sigma_pm)");

  bool collapse = false;
  for (const auto& [m, u] : degenerations(parse("sigma_0(b_theta{sigma,sigma})")))
    collapse = collapse || (m.kind == MoveKind::WhiteheadCollapse &&
                            node_at(u, kTop).symbol->family == Family::PUnstable);
  EXPECT_TRUE(collapse);

  bool saddle = false;
  for (const auto& [m, u] : degenerations(parse("sigma_0(p_i(sigma))")))
    saddle = saddle || (m.kind == MoveKind::SaddleForm && serialize(u) == "sigma_0(sigma_3)");
  EXPECT_TRUE(saddle);
}

TEST(Degenerations, ConsistentWithResolutionsOverSmallAtlas) {
  for (int n = 0; n <= 2; ++n)
    for (const auto& text : enumerate_zero(n)) {
      auto t = parse(text);
      std::set<std::pair<int, std::string>> seen;
      for (const auto& [m, u] : degenerations(t)) {
        EXPECT_TRUE(seen.insert({static_cast<int>(m.kind), serialize(u)}).second);
        EXPECT_EQ(tree_coheight(u), 1);
        EXPECT_TRUE(resolved(serialize(u)).count(text)) << text << " via " << serialize(u);
        EXPECT_EQ(index_sum_positive(u), index_sum_positive(t));
        EXPECT_TRUE(poincare_hopf_check(to_diagram(u).diagram).ok);
      }
    }
}

TEST(Degenerations, EveryResolutionDegeneratesBack) {
  std::ifstream f(GOLDEN_DIR "/resolutions.txt");
  std::string line;
  while (std::getline(f, line)) {
    auto u = serialize(parse(line.substr(0, line.find(" -> "))));
    for (const auto& r : resolutions(parse(u))) {
      bool found = false;
      for (const auto& [m, x] : degenerations(r)) found = found || serialize(x) == u;
      EXPECT_TRUE(found) << serialize(r) << " does not degenerate to " << u;
    }
  }
}

TEST(EnumerateZero, Examples) {
  EXPECT_EQ(enumerate_zero(0), (std::vector<std::string>{"sigma_0(sigma)"}));
  EXPECT_EQ(enumerate_zero(1), (std::vector<std::string>{"sigma_0(p_i(sigma))", "sigma_0(p_o(sigma))"}));
  EXPECT_EQ(enumerate_zero(2).size(), 7u);
}

TEST(EnumerateZero, MatchesGrammarOracle) {
  for (int n = 0; n <= 4; ++n) {
    auto mine = enumerate_zero(n);
    EXPECT_TRUE(std::is_sorted(mine.begin(), mine.end()));
    std::set<std::string> as_set(mine.begin(), mine.end());
    EXPECT_EQ(as_set.size(), mine.size());
    EXPECT_EQ(as_set, oracle::atlas(n)) << n;
  }
}

TEST(EnumerateZero, TreesAreValid) {
  for (const auto& text : enumerate_zero(3)) {
    auto t = parse(text);
    EXPECT_EQ(serialize(t), text);
    EXPECT_TRUE(validate(t).empty());
    EXPECT_EQ(tree_tripods(t), 3);
  }
}

TEST(EnumerateZero, BetaOptions) {
  auto b = enumerate_zero(1, "beta_0", false);
  EXPECT_FALSE(b.empty());
  for (const auto& s : b) {
    EXPECT_EQ(s.rfind("beta_0(", 0), 0u);
    EXPECT_TRUE(validate(parse(s)).empty()) << s;
  }
  auto leaves = enumerate_zero(1, "sigma_0", true);
  EXPECT_GT(leaves.size(), enumerate_zero(1).size());
  for (const auto& s : leaves) EXPECT_TRUE(validate(parse(s)).empty()) << s;
}

TEST(EnumerateZero, BoundExceeded) { EXPECT_THROW(enumerate_zero(7), DomainError); }

TEST(TransitionGraph, SingleTreeKeepsSelfLoop) {
  auto g = build_transition_graph({parse("sigma_0(sigma)")}, 0);
  EXPECT_EQ(g.nodes, (std::vector<std::string>{"sigma_0(sigma)"}));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0], (TransitionEdge{"sigma_0(sigma_pm)", 0, 0}));
  EXPECT_EQ(g.i, Rational(2));
}

TEST(TransitionGraph, OneTripod) {
  auto g = build_transition_graph({parse("sigma_0(p_o(sigma))")}, 1);
  EXPECT_EQ(g.nodes, (std::vector<std::string>{"sigma_0(p_i(sigma))", "sigma_0(p_o(sigma))"}));
  bool found = false;
  for (const auto& e : g.edges) found = found || (e.via == "sigma_0(sigma_3)" && e.a != e.b);
  EXPECT_TRUE(found);
}

TEST(TransitionGraph, TwoTripodsReachTheAtlas) {
  auto g = build_transition_graph(2);
  EXPECT_EQ(g.nodes, enumerate_zero(2));
  for (const auto& e : g.edges) {
    auto u = parse(e.via);
    EXPECT_EQ(tree_coheight(u), 1);
    auto r = resolved(e.via);
    EXPECT_TRUE(r.count(g.nodes[e.a]));
    EXPECT_TRUE(r.count(g.nodes[e.b]));
    EXPECT_EQ(index_sum_positive(u), g.i);
  }
  EXPECT_TRUE(std::is_sorted(g.edges.begin(), g.edges.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b, x.via) < std::tie(y.a, y.b, y.via);
  }));
}

TEST(TransitionGraph, MixedIndexSumsRejected) {
  EXPECT_THROW(build_transition_graph({parse("sigma_0(sigma)"), parse("beta_0(p_i(sigma))")}, 1), DomainError);
}

TEST(TransitionGraph, JsonAndDot) {
  auto g = build_transition_graph({parse("sigma_0(sigma)")}, 0);
  auto j = to_json(g);
  EXPECT_EQ(j.at("i"), "2");
  EXPECT_EQ(j.at("nodes")[0], "sigma_0(sigma)");
  EXPECT_EQ(j.at("edges")[0].at("via"), "sigma_0(sigma_pm)");
  EXPECT_EQ(to_dot(g),
            "graph transitions {\n"
            "  label=\"i = 2\";\n"
            "  n0 [label=\"sigma_0(sigma)\"];\n"
            "  n0 -- n0 [label=\"sigma_0(sigma_pm)\"];\n"
            "}\n");
}

TEST(Moves, Json) {
  auto j = to_json(Move{MoveKind::SaddleForm, {0, 1}, 3});
  EXPECT_EQ(j.at("kind"), "SaddleForm");
  EXPECT_EQ(j.at("path"), nlohmann::json::array({0, 1}));
  EXPECT_EQ(j.at("choice"), 3);
}
