#include "catch_amalgamated.hpp"
#include "mirrorwit/catalog.hpp"
#include "mirrorwit/graphs.hpp"

using namespace mirrorwit;

namespace {

std::string only_label(const PauliSum& p) {
  REQUIRE(p.terms().size() == 1);
  return p.terms().begin()->first;
}

// Independent odd-cycle search: DFS for a closed walk of odd length via parity states.
bool has_odd_cycle(const Graph& g) {
  for (int s = 0; s < g.n; ++s) {
    std::set<std::pair<int, int>> seen{{s, 0}};
    std::vector<std::pair<int, int>> stack{{s, 0}};
    while (!stack.empty()) {
      auto [v, par] = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v)) {
        std::pair<int, int> st{w, 1 - par};
        if (w == s && st.second == 1) return true;
        if (seen.insert(st).second) stack.push_back(st);
      }
    }
  }
  return false;
}

std::vector<Graph> test_graphs() {
  std::vector<Graph> out;
  for (int n = 2; n <= 6; ++n) {
    out.push_back(named_graph("linear-cluster", n));
    out.push_back(named_graph("ghz-star", n));
  }
  out.push_back(named_graph("grid", 2, 2));
  out.push_back(named_graph("grid", 2, 3));
  out.push_back(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  out.push_back(Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
  out.push_back(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}));
  out.push_back(Graph(4, {{0, 1}, {2, 3}}));
  out.push_back(Graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}));
  return out;
}

}  // namespace

TEST_CASE("graph generators") {
  auto lc = named_graph("linear-cluster", 4);
  CHECK(only_label(generator(lc, 0)) == "XZII");
  CHECK(only_label(generator(lc, 1)) == "ZXZI");
  Graph iso(3, {});
  CHECK(only_label(generator(iso, 1)) == "IXI");
  CHECK_THROWS(generator(lc, 4));
  CHECK_THROWS(Graph(2, {{0, 0}}));
}

TEST_CASE("GHZ generators stabilize GHZ") {
  auto g3 = ghz_generators(3);
  REQUIRE(g3.size() == 3);
  CHECK(only_label(g3[0]) == "XXX");
  CHECK(only_label(g3[1]) == "ZZI");
  CHECK(only_label(g3[2]) == "IZZ");
  for (int n = 2; n <= 5; ++n) {
    Vec ghz = ghz_vector(n);
    for (const auto& g : ghz_generators(n)) CHECK((pauli_to_matrix(g).matrix() * ghz - ghz).norm() < 1e-12);
    auto strs = to_strings(ghz_generators(n));
    auto prod = stabilizer_product(strs, (1UL << n) - 1);
    CHECK((prod * prod).label == std::string(n, 'I'));
    CHECK((prod * prod).phase == 0);
  }
  CHECK_THROWS(ghz_generators(1));
}

TEST_CASE("stabilizer elements with exact signs") {
  Graph edge(2, {{0, 1}});
  auto el = stabilizer_elements(graph_generators(edge));
  REQUIRE(el.size() == 4);
  std::map<std::string, double> got;
  for (const auto& e : el) got[only_label(e)] = e.terms().begin()->second;
  CHECK(got.at("II") == 1.0);
  CHECK(got.at("XZ") == 1.0);
  CHECK(got.at("ZX") == 1.0);
  // XZ * ZX = (XZ)(ZX) = (-iY)(iY) = YY
  CHECK(got.at("YY") == 1.0);

  auto ghz = stabilizer_elements(ghz_generators(3));
  CHECK(ghz.size() == 8);
  auto strs = to_strings(ghz_generators(3));
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b)
      CHECK(stabilizer_product(strs, a).commutes(stabilizer_product(strs, b)));

  std::vector<PauliSum> bad{PauliSum{{"XI", 1.0}}, PauliSum{{"ZI", 1.0}}};
  CHECK_THROWS(stabilizer_elements(bad));
}

TEST_CASE("stabilizer group closure") {
  for (const auto& g : {named_graph("linear-cluster", 4), named_graph("ghz-star", 4)}) {
    auto strs = to_strings(graph_generators(g));
    std::set<std::pair<std::string, int>> group;
    for (unsigned long m = 0; m < 16; ++m) {
      auto p = stabilizer_product(strs, m);
      group.insert({p.label, p.phase});
    }
    CHECK(group.size() == 16);
    for (const auto& a : group)
      for (const auto& b : group) {
        auto p = PauliString{a.first, a.second} * PauliString{b.first, b.second};
        CHECK(group.count({p.label, p.phase}) == 1);
      }
  }
}

TEST_CASE("graph projectors") {
  auto p = graph_projector(ghz_generators(3));
  CHECK(max_abs(p.matrix() - HermitianOperator::projector(ghz_vector(3), Dims::qubits(3)).matrix()) < 1e-12);
  for (int n = 2; n <= 6; ++n) {
    auto pg = graph_projector(ghz_generators(n));
    CHECK(max_abs(pg.matrix() - HermitianOperator::projector(ghz_vector(n), Dims::qubits(n)).matrix()) < 1e-12);
  }
  for (const auto& g : test_graphs()) {
    if (g.n > 6) continue;
    auto gens = graph_generators(g);
    auto proj = graph_projector(gens).matrix();
    CHECK(max_abs(proj * proj - proj) < 1e-10);
    CHECK(std::abs(proj.trace() - cplx(1.0)) < 1e-10);
    for (const auto& gen : gens) CHECK(max_abs(pauli_to_matrix(gen).matrix() * proj - proj) < 1e-10);
  }
  auto edge = graph_projector(graph_generators(Graph(2, {{0, 1}})));
  auto ev = eigenvalues(edge);
  CHECK(std::abs(ev(3) - 1.0) < 1e-12);
  CHECK(std::abs(ev(0)) < 1e-12);
}

TEST_CASE("two colorings") {
  auto c = two_coloring(named_graph("linear-cluster", 4));
  REQUIRE(c);
  CHECK(c->red == std::set<int>{0, 2});
  CHECK(c->blue == std::set<int>{1, 3});
  CHECK_FALSE(two_coloring(Graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  auto star = two_coloring(named_graph("ghz-star", 5));
  REQUIRE(star);
  CHECK(star->red == std::set<int>{0});
  CHECK(star->blue == std::set<int>{1, 2, 3, 4});

  for (const auto& g : test_graphs()) {
    auto col = two_coloring(g);
    CHECK(col.has_value() == !has_odd_cycle(g));
    if (!col) continue;
    CHECK(col->red.size() + col->blue.size() == static_cast<size_t>(g.n));
    for (auto [a, b] : g.edges) CHECK((col->red.count(a) != col->red.count(b)));
  }
}

TEST_CASE("named graphs") {
  auto lc = named_graph("linear-cluster", 4);
  CHECK(lc.edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(named_graph("ghz-star", 3).edges == std::set<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(named_graph("grid", 2, 2).edges.size() == 4);
  CHECK_THROWS(named_graph("torus", 4));
}
