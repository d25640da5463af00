#include "catch_amalgamated.hpp"
#include "mirrorwit/io.hpp"

using namespace mirrorwit;
using namespace mirrorwit::io;

TEST_CASE("rationals") {
  CHECK((Rational(2, 4) == Rational(1, 2)));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK((Rational(1, 6) + Rational(1, 3)).str() == "1/2");
  CHECK((Rational(3, 2) / Rational(14)).str() == "3/28");
  CHECK_THROWS(Rational(1, 0));
  CHECK(to_rational(1.0 / 14)->str() == "1/14");
  CHECK(to_rational(-1.0 / 48)->str() == "-1/48");
  CHECK(to_rational(11.0 / 112)->str() == "11/112");
  CHECK(to_rational(0.0)->str() == "0");
  CHECK_FALSE(to_rational(std::sqrt(2.0)));
  CHECK_FALSE(to_rational(kPi));
  auto j = number(0.25);
  CHECK(j["exact"] == "1/4");
  CHECK(number(std::sqrt(2.0))["exact"].is_null());
}

TEST_CASE("number parsing") {
  CHECK(parse_real("0.5") == 0.5);
  CHECK(parse_real("1/3") == Catch::Approx(1.0 / 3));
  CHECK(parse_real("pi") == Catch::Approx(kPi));
  CHECK(parse_real("pi/3") == Catch::Approx(kPi / 3));
  CHECK(parse_real("-3pi/4") == Catch::Approx(-3 * kPi / 4));
  CHECK(parse_real("2*pi") == Catch::Approx(2 * kPi));
  CHECK_THROWS(parse_real("abc"));
  CHECK_THROWS(parse_real("1.5x"));
  CHECK_THROWS(parse_real(""));
  CHECK(parse_list("1,0,1") == std::vector<double>{1, 0, 1});
  CHECK_THROWS(parse_int("3a"));
}

TEST_CASE("operator JSON round trip") {
  auto w = pair33().pair.w.op;
  auto back = operator_from_json(to_json(w));
  CHECK(back.dims() == w.dims());
  CHECK(max_abs(back.matrix() - w.matrix()) == 0);

  auto y = pauli_to_matrix(PauliSum{{"YI", 1.0}});
  auto yb = operator_from_json(to_json(y));
  CHECK(max_abs(yb.matrix() - y.matrix()) == 0);

  json real_only = {{"dims", {2}}, {"re", {{1, 0}, {0, -1}}}};
  CHECK(max_abs(operator_from_json(real_only).matrix() - pauli('Z')) == 0);

  json bad_rows = {{"dims", {2, 2}}, {"re", {{1, 0}, {0, 1}}}};
  CHECK_THROWS(operator_from_json(bad_rows));
  json ragged = {{"dims", {2}}, {"re", {{1, 0}, {0}}}};
  CHECK_THROWS(operator_from_json(ragged));
  json nonherm = {{"dims", {2}}, {"re", {{0, 1}, {0, 0}}}};
  CHECK_THROWS(HermitianOperator(operator_from_json(nonherm)));
}

TEST_CASE("graph JSON") {
  auto g = named_graph("grid", 2, 3);
  auto back = graph_from_json(to_json(g));
  CHECK(back.n == 6);
  CHECK(back.edges == g.edges);
  CHECK_THROWS(graph_from_json(json{{"n", 2}, {"edges", {{0, 0}}}}));
  CHECK_THROWS(graph_from_json(json{{"n", 2}, {"edges", {{0, 1, 1}}}}));
}

TEST_CASE("name resolution") {
  CHECK(resolve_pair("pair33")->mu == 4.0);
  CHECK(resolve_pair("ghz-alt:4")->w.op.dim() == 16);
  CHECK(resolve_pair("graph:grid:2,2")->w.op.dims() == Dims::qubits(4));
  CHECK_FALSE(resolve_pair("choi:1,0,1"));
  CHECK(max_abs(resolve_witness("class2:pi/2").op.matrix() - wabcd_class(WClass::II, kPi / 2).op.matrix()) == 0);
  CHECK(max_abs(resolve_witness("choi-phi:pi/3").op.matrix() - choi_abc(1, 0, 1).op.matrix()) < 1e-12);
  CHECK(resolve_state("rho-bc:2,1/2").params.at("c") == 0.5);
  CHECK(resolve_state("tau:1,1").op.dims() == Dims({4, 4}));
  CHECK_THROWS_AS(resolve_witness("nosuch"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_state("rho-bc:1,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_pair("w3q:12"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_graph("torus:4"), std::invalid_argument);
  // every catalog entry resolves and every catalog state is a valid density matrix
  CHECK(catalog_witnesses().size() >= 20);
  for (const auto& n : catalog_state_names()) CHECK(std::abs(resolve_state(n).op.trace() - 1.0) < 1e-12);
}
