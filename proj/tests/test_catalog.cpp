#include "catch_amalgamated.hpp"
#include "mirrorwit/analysis.hpp"

using namespace mirrorwit;
using Catch::Approx;

namespace {

Mat ident(int d) { return Mat::Identity(d, d); }

}  // namespace

TEST_CASE("canonical GHZ witness") {
  for (int n = 2; n <= 6; ++n) {
    auto w = canonical_ghz_witness(n);
    CHECK(w.op.trace() == Approx(1.0));
    CHECK(std::abs(w.op.expectation(ghz_state(n).op) + 1.0 / (std::pow(2.0, n) - 2)) < 1e-12);
    auto pair = canonical_ghz_pair(n);
    CHECK(pair.identity_defect() < 1e-12);
  }
  CHECK(canonical_ghz_pair(2).mu == Approx(0.5));
  CHECK(std::abs(canonical_ghz_witness(3).op.expectation(ghz_state(3).op) + 1.0 / 6) < 1e-12);
  CHECK_THROWS(canonical_ghz_witness(1));
}

TEST_CASE("alternative GHZ witness") {
  for (int n = 2; n <= 6; ++n) {
    auto p = alternative_ghz_witness(n);
    const int d = 1 << n;
    CHECK(max_abs(p.w.op.matrix() + p.m.matrix() - std::pow(2.0, 1 - n) * ident(d)) < 1e-12);
    CHECK(p.w.op.trace() == Approx(1.0));
    CHECK(p.m.trace() == Approx(1.0));
    const double expect = -1.0 / ((n - 1) * std::pow(2.0, n));
    CHECK(std::abs(p.w.op.expectation(ghz_state(n).op) - expect) < 1e-12);
    CHECK(std::abs(p.m.expectation(ghz_alt_state(n).op) - expect) < 1e-12);
  }
  CHECK(std::abs(alternative_ghz_witness(3).w.op.expectation(ghz_state(3).op) + 1.0 / 16) < 1e-12);
  CHECK(std::abs(alternative_ghz_witness(4).m.expectation(ghz_alt_state(4).op) + 1.0 / 48) < 1e-12);
}

TEST_CASE("two-measurement witness") {
  for (int n = 3; n <= 6; ++n) {
    auto p = ghz_two_measurement_witness(n);
    CHECK(p.w.op.trace() == Approx(1.0));
    CHECK(p.m.trace() == Approx(1.0));
    CHECK(p.mu == Approx(1.5 / (std::pow(2.0, n) - 2)));
    CHECK(p.identity_defect() < 1e-12);
    CHECK(lambda_min(p.m) >= -1e-12);
    CHECK(std::abs(p.w.op.expectation(ghz_state(n).op) + 1.0 / (2 * (std::pow(2.0, n) - 2))) < 1e-12);
  }
  CHECK(ghz_two_measurement_witness(3).mu == Approx(0.25));
  auto lc = two_measurement_witness(named_graph("linear-cluster", 4));
  CHECK(lc.identity_defect() < 1e-12);
  auto gs = graph_projector(graph_generators(named_graph("linear-cluster", 4)));
  CHECK(lc.w.op.expectation(gs) < 0);
  CHECK_THROWS(two_measurement_witness(Graph(3, {{0, 1}, {1, 2}, {0, 2}})));
}

TEST_CASE("graph witnesses and their flip unitaries") {
  std::vector<Graph> graphs;
  for (int n = 2; n <= 6; ++n) {
    graphs.push_back(named_graph("linear-cluster", n));
    graphs.push_back(named_graph("ghz-star", n));
  }
  graphs.push_back(named_graph("grid", 2, 2));
  graphs.push_back(named_graph("grid", 2, 3));
  for (const auto& g : graphs) {
    auto p = graph_witness(g);
    const int d = 1 << g.n;
    CHECK(max_abs(p.w.op.matrix() + p.m.matrix() - 2.0 * (g.n - 1) * ident(d)) < 1e-12);
    Mat u = graph_flip_unitary(g);
    CHECK(max_abs(conjugate_by(u, p.w.op.matrix()) - p.m.matrix()) < 1e-10);
  }
  auto lc = graph_witness(named_graph("linear-cluster", 4));
  CHECK(lu_equivalent_by(lc.w.op, lc.m, pauli_locals("XYYX")));
  auto ghz = ghz_graph_witness(3);
  CHECK(max_abs(ghz.w.op.matrix() - (2.0 * ident(8) - pauli_string("XXX") - pauli_string("ZZI") -
                                     pauli_string("IZZ"))) < 1e-12);
  CHECK(lu_equivalent_by(ghz.w.op, ghz.m, pauli_locals("ZYZ")));
}

TEST_CASE("three-qubit X-shaped witnesses") {
  Mat yyy = pauli_string("YYY");
  for (int i = 0; i < 8; ++i) {
    int a = i >> 2 & 1, b = i >> 1 & 1, c = i & 1;
    auto w = w3q(a, b, c).op, m = m3q(a, b, c).op;
    CHECK(max_abs(w.matrix() + m.matrix() - 2.0 * ident(8)) < 1e-12);
    CHECK(max_abs(conjugate_by(yyy, w.matrix()) - m.matrix()) < 1e-12);
  }
  const std::map<std::string, std::string> table = {{"111", "ZZZ"}, {"110", "ZXX"}, {"101", "XZX"},
                                                    {"100", "XXZ"}, {"011", "YYI"}, {"010", "YIY"},
                                                    {"001", "IYY"}};
  for (const auto& [bits, lu] : table) {
    int a = bits[0] - '0', b = bits[1] - '0', c = bits[2] - '0';
    CHECK(lu_equivalent_by(w3q(0, 0, 0).op, w3q(a, b, c).op, pauli_locals(lu)));
    CHECK(lu_equivalent_by(m3q(0, 0, 0).op, m3q(a, b, c).op, pauli_locals(lu)));
  }
  CHECK_THROWS(w3q(2, 0, 0));
}

TEST_CASE("X-shaped PPT states") {
  auto r = rho_xyz(0.5, 0.5, 2.0);
  const double nu = 2 + 0.5 + 0.5 + 2 + 2 + 2 + 0.5;
  CHECK(r.op.matrix()(0, 7).real() == Approx(1.0 / nu));
  CHECK(r.op.matrix()(1, 1).real() == Approx(0.5 / nu));
  CHECK(r.op.matrix()(6, 6).real() == Approx(2.0 / nu));
  CHECK(is_ppt_all(r.op));

  auto bc = rho_bc(2.0, 0.5);
  CHECK(bc.op.matrix()(3, 3).real() == Approx(2.0 / 8.5));
  CHECK(bc.op.matrix()(4, 4).real() == Approx(0.5 / 8.5));
  CHECK(bc.op.matrix()(2, 5).real() == Approx(1.0 / 8.5));
  CHECK(bc.op.matrix()(3, 4).real() == Approx(-1.0 / 8.5));
  for (const auto& s : bipartitions(3)) CHECK(lambda_min(partial_transpose(bc.op, s)) >= -1e-10);

  XShapeParams ones;
  ones.u = {1, 1, 1, 1};
  auto g = rho_ppt(ones);
  CHECK(g.op.trace() == Approx(1.0));
  // GHZ-diagonal mixture sitting exactly on the boundary of W[0,0,0]
  CHECK(w3q(0, 0, 0).op.expectation(g.op) == Approx(0.0).margin(1e-12));

  XShapeParams bad;
  bad.s = {2, 1, 1, 1};
  CHECK_THROWS(rho_ppt(bad));
  CHECK_THROWS(rho_bc(0.5, 0.5));
}

TEST_CASE("Choi family") {
  auto p = choi_phi_params(kPi / 3);
  CHECK(p[0] == Approx(1.0));
  CHECK(p[1] == Approx(0.0).margin(1e-15));
  CHECK(p[2] == Approx(1.0));
  p = choi_phi_params(5 * kPi / 3);
  CHECK(p[0] == Approx(1.0));
  CHECK(p[1] == Approx(1.0));
  CHECK(p[2] == Approx(0.0).margin(1e-15));
  p = choi_phi_params(kPi);
  CHECK(p[0] == Approx(0.0).margin(1e-15));
  CHECK(p[1] == Approx(1.0));
  CHECK(p[2] == Approx(1.0));
  for (int k = 0; k < 50; ++k) {
    auto q = choi_phi_params(2 * kPi * k / 50);
    CHECK(std::abs(q[0] + q[1] + q[2] - 2) < 1e-12);
    CHECK(std::abs(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] - 2) < 1e-12);
    CHECK_NOTHROW(choi_phi(2 * kPi * k / 50));
  }
  CHECK_THROWS(choi_abc(0.5, 0.5, 0.5));
  CHECK_THROWS(choi_abc(0.5, 0.1, 1.4));
}

TEST_CASE("covariant witnesses") {
  auto w = covariant_witness({1, 1, 0});
  CHECK(max_abs(w.op.matrix() - choi_abc(1, 1, 0).op.matrix()) == 0);
  CHECK(covariant_residuals({0, 1, 1}).gram < 1e-15);
  auto c2 = wabcd_params(WClass::II, kPi / 2);
  std::vector<double> alpha(c2.begin(), c2.end());
  auto r = covariant_residuals(alpha);
  CHECK(r.sum < 1e-12);
  CHECK(r.gram < 1e-12);
  CHECK_THROWS(covariant_witness({1, 1, 1}));
}

TEST_CASE("four-parameter classes") {
  auto w0 = wabcd_class(WClass::I, 0);
  CHECK(max_abs(w0.op.matrix() - covariant_matrix({1, 1, 1, 0})) < 1e-15);
  auto wpi = wabcd_class(WClass::I, kPi);
  CHECK(max_abs(wpi.op.matrix() - covariant_matrix({1, 0, 1, 1})) < 1e-15);
  auto h = wabcd_params(WClass::I, kPi / 2);
  CHECK(h[0] == Approx(0.5));
  CHECK(h[1] == Approx(0.5));
  CHECK(h[2] == Approx(1.5));
  CHECK(h[3] == Approx(0.5));
  auto h2 = wabcd_params(WClass::II, kPi / 2);
  CHECK(h2[0] == Approx(0.5));
  CHECK(h2[1] == Approx(0.5));
  CHECK(h2[2] == Approx(0.5));
  CHECK(h2[3] == Approx(1.5));
  for (double t : {0.1, 0.7, 1.9, 2.8}) {
    for (auto cls : {WClass::I, WClass::II}) {
      auto q = wabcd_params(cls, t);
      CHECK(std::abs(q[0] + q[1] + q[2] + q[3] - 3) < 1e-12);
      CHECK(std::abs(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] - 3) < 1e-12);
      if (cls == WClass::I) {
        CHECK(q[0] + q[2] == Approx(2));
        CHECK(q[1] + q[3] == Approx(1));
      } else {
        CHECK(q[0] + q[2] == Approx(1));
        CHECK(q[1] + q[3] == Approx(2));
      }
    }
  }
}

TEST_CASE("rho_x") {
  Mat m = 4.0 / 3.0 * ident(16) - covariant_matrix({1, 1, 1, 0});
  for (double x : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0}) {
    auto r = rho_x(x);
    CHECK(r.op.trace() == Approx(1.0));
    CHECK(is_ppt_all(r.op));
    // calibrated by the unnormalized matrix
    double raw = (m * rho_x_unnormalized(x)).trace().real();
    CHECK(std::abs(raw - 4.0 / (3 * x) * (x * x - 5 * x + 4)) < 1e-12);
    CHECK(std::abs(raw / r.params.at("nu") - HermitianOperator(m, Dims({4, 4})).expectation(r.op)) < 1e-12);
  }
  CHECK_THROWS(rho_x(0));
}

TEST_CASE("3x3 pair") {
  auto p = pair33();
  CHECK(max_abs(p.pair.w.op.matrix() + p.pair.m.matrix() - 4.0 * ident(9)) == 0);
  CHECK(std::abs(p.pair.w.op.expectation(p.rho_w.op) + 0.4) < 1e-12);
  CHECK(std::abs(p.pair.m.expectation(p.rho_m.op) + 0.4) < 1e-12);
  CHECK(is_ppt_all(p.rho_w.op));
  CHECK(is_ppt_all(p.rho_m.op));
  CHECK(max_abs(p.u.adjoint() * p.u - ident(3)) < 1e-12);
  Mat uu = kron(p.u, Mat(p.u.conjugate()));
  CHECK(max_abs(conjugate_by(uu, p.pair.w.op.matrix()) - p.pair.m.matrix()) < 1e-10);
}

TEST_CASE("tau states") {
  for (int j = 0; j < 4; ++j) {
    auto t = tau_state(4, j, 1);
    CHECK(t.op.trace() == Approx(1.0));
    auto ev = eigenvalues(t.op);
    int rank = 0;
    for (int i = 0; i < ev.size(); ++i) rank += ev(i) > 1e-10;
    CHECK(rank == 2);
    CHECK_FALSE(is_ppt_all(t.op));
  }
}

TEST_CASE("two-qubit examples") {
  auto e1 = bell_pair_witness("example1");
  CHECK(max_abs(e1.w.op.matrix() + e1.m.matrix() - 0.5 * ident(4)) < 1e-15);
  CHECK(std::abs(e1.w.op.expectation(bell_projector(2, 0, 0)) + 0.25) < 1e-12);
  CHECK(std::abs(e1.m.expectation(bell_projector(2, 1, 1)) + 0.25) < 1e-12);

  auto e2 = bell_pair_witness("example2");
  CHECK(e2.identity_defect() < 1e-12);
  CHECK(std::abs(lambda_min(e2.m)) < 1e-12);
  CHECK(max_abs(e2.m.matrix() * e2.m.matrix() - e2.m.matrix()) < 1e-12);

  // product-state expectations stay in [0, 1/2]
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10000; ++k) {
    auto p = haar_product(Dims::qubits(2), rng);
    double v = e1.w.op.expectation_vec(p.vector());
    CHECK((v >= -1e-12 && v <= 0.5 + 1e-12));
  }
  CHECK_THROWS(bell_pair_witness("example3"));
}

TEST_CASE("catalog witnesses are block-positive") {
  std::vector<HermitianOperator> ws = {
      canonical_ghz_witness(3).op,     alternative_ghz_witness(3).w.op,
      alternative_ghz_witness(3).m,    ghz_two_measurement_witness(3).w.op,
      graph_witness(named_graph("linear-cluster", 4)).w.op,
      graph_witness(named_graph("linear-cluster", 4)).m,
      choi_phi(kPi / 3).op,            choi_phi(kPi).op,
      wabcd_class(WClass::I, 0).op,    wabcd_class(WClass::II, kPi / 4).op,
      pair33().pair.w.op,              pair33().pair.m,
      bell_pair_witness("example1").w.op, bell_pair_witness("example2").w.op};
  for (int i = 0; i < 8; ++i) {
    ws.push_back(w3q(i >> 2 & 1, i >> 1 & 1, i & 1).op);
    ws.push_back(m3q(i >> 2 & 1, i >> 1 & 1, i & 1).op);
  }
  for (const auto& w : ws) CHECK(block_positive(w).block_positive);
}
