#include "catch_amalgamated.hpp"
#include "mirrorwit/catalog.hpp"
#include "mirrorwit/sepopt.hpp"

using namespace mirrorwit;

namespace {

Vec qubit(double theta, double phi) {
  Vec v(2);
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return v;
}

double two_qubit_value(const Mat& o, const double* x) {
  Vec psi = kron(qubit(x[0], x[1]), qubit(x[2], x[3]));
  return psi.dot(o * psi).real();
}

// Grid search on the Bloch angles followed by compass refinement.
std::pair<double, double> grid_oracle(const Mat& o) {
  const int n = 16;
  double best_lo[4] = {}, best_hi[4] = {};
  double lo = 1e300, hi = -1e300;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c <= n; ++c)
        for (int d = 0; d < n; ++d) {
          double x[4] = {kPi * a / n, 2 * kPi * b / n, kPi * c / n, 2 * kPi * d / n};
          double v = two_qubit_value(o, x);
          if (v < lo) {
            lo = v;
            std::copy(x, x + 4, best_lo);
          }
          if (v > hi) {
            hi = v;
            std::copy(x, x + 4, best_hi);
          }
        }
  auto refine = [&](double* x, double sgn) {
    double f = sgn * two_qubit_value(o, x);
    for (double step = 0.2; step > 1e-9; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (int k = 0; k < 4; ++k)
          for (double s : {step, -step}) {
            x[k] += s;
            double g = sgn * two_qubit_value(o, x);
            if (g > f + 1e-15) {
              f = g;
              moved = true;
            } else {
              x[k] -= s;
            }
          }
      }
    }
    return sgn * f;
  };
  return {refine(best_lo, -1.0), refine(best_hi, 1.0)};
}

Mat random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("seesaw on simple observables") {
  auto phi = bell_projector(2, 0, 0);
  auto r = seesaw(phi, Sense::max);
  CHECK(std::abs(r.value - 0.5) < 1e-10);
  CHECK(r.monotone);

  auto zz = HermitianOperator(Operator(kron(pauli('Z'), pauli('Z')), Dims::qubits(2)));
  auto mx = seesaw(zz, Sense::max);
  auto mn = seesaw(zz, Sense::min);
  CHECK(std::abs(mx.value - 1) < 1e-12);
  CHECK(std::abs(mn.value + 1) < 1e-12);
  // minimizer is |01> or |10>
  Vec v = mn.state.vector();
  CHECK(std::norm(v(1)) + std::norm(v(2)) > 1 - 1e-10);

  auto wa = alternative_ghz_witness(3).w.op;
  CHECK(std::abs(seesaw(wa, Sense::max).value - 0.25) < 1e-7);
}

TEST_CASE("seesaw is monotone on every run") {
  std::mt19937_64 rng(3);
  for (const Dims& d : {Dims::qubits(2), Dims::qubits(3), Dims({3, 3}), Dims({2, 3})}) {
    for (int trial = 0; trial < 5; ++trial) {
      HermitianOperator o(random_hermitian(d.total(), rng), d);
      ProductContractor pc(o);
      for (int r = 0; r < 8; ++r) {
        auto g = restart_rng(9, r);
        for (Sense s : {Sense::min, Sense::max}) {
          auto run = seesaw_from(pc, s, haar_product(d, g));
          CHECK(run.monotone);
          double prev = s == Sense::max ? -1e300 : 1e300;
          for (double v : run.trace) {
            if (s == Sense::max) CHECK(v >= prev - 1e-12);
            else CHECK(v <= prev + 1e-12);
            prev = v;
          }
        }
      }
    }
  }
}

TEST_CASE("separable bounds bracket the spectrum") {
  auto w = bell_pair_witness("example1").w.op;
  auto b = separable_bounds(w);
  CHECK(std::abs(b.lower) < 1e-7);
  CHECK(std::abs(b.upper - 0.5) < 1e-7);
  auto e = eig_extremes(w);
  CHECK(e.min <= b.lower + 1e-12);
  CHECK(b.upper <= e.max + 1e-12);

  auto id = separable_bounds(HermitianOperator::identity(Dims::qubits(2)));
  CHECK(std::abs(id.lower - 1) < 1e-12);
  CHECK(std::abs(id.upper - 1) < 1e-12);

  auto p = pair33();
  auto b33 = separable_bounds(p.pair.w.op);
  CHECK(b33.lower >= -1e-7);
  CHECK(b33.upper <= 4 + 1e-7);
}

TEST_CASE("seesaw matches a two-qubit grid oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    Mat o = random_hermitian(4, rng);
    auto b = separable_bounds(HermitianOperator(o, Dims::qubits(2)), 16, 7 + trial);
    auto [lo, hi] = grid_oracle(o);
    CHECK(std::abs(b.lower - lo) < 1e-5);
    CHECK(std::abs(b.upper - hi) < 1e-5);
  }
}

TEST_CASE("separable bounds are local-unitary invariant") {
  std::mt19937_64 rng(77);
  const Dims d = Dims::qubits(3);
  for (int trial = 0; trial < 4; ++trial) {
    HermitianOperator o(random_hermitian(8, rng), d);
    std::vector<Mat> locals;
    for (int k = 0; k < 3; ++k) {
      Eigen::HouseholderQR<Mat> qr(random_hermitian(2, rng) + cplx(0, 1) * random_hermitian(2, rng));
      locals.push_back(qr.householderQ());
    }
    auto u = tensor_mats(locals);
    auto a = separable_bounds(o);
    auto b = separable_bounds(conjugate_by(u, o));
    CHECK(std::abs(a.lower - b.lower) < 1e-6);
    CHECK(std::abs(a.upper - b.upper) < 1e-6);
  }
}

TEST_CASE("block positivity") {
  CHECK(block_positive(choi_abc(1, 0, 1).op).block_positive);
  CHECK(block_positive(m3q(0, 1, 0).op).block_positive);
  auto neg = block_positive(bell_projector(2, 0, 0).scaled(-1.0));
  CHECK_FALSE(neg.block_positive);
  CHECK(std::norm(neg.arg.vector().dot(generalized_bell(2, 0, 0))) > 0.49);
}

TEST_CASE("zero sets and spanning dimension") {
  auto zeros = zero_set_search(w3q(0, 0, 0).op, 8);
  CHECK(zeros.size() >= 8);
  CHECK(spanning_dimension(zeros) == 8);
  ProductContractor pc(w3q(0, 0, 0).op);
  for (const auto& z : zeros) CHECK(std::abs(pc.value(z)) <= 1e-8);

  // the eight listed zero states are among the zeros of W[0,0,0]
  Vec k0(2), k1(2), p(2), m(2);
  k0 << 1, 0;
  k1 << 0, 1;
  p << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  m << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  std::vector<ProductState> listed = {{{k0, k0, k0}}, {{k0, k1, k1}}, {{k1, k0, k1}}, {{k1, k1, k0}},
                                      {{p, p, p}},    {{p, m, m}},    {{m, p, m}},    {{m, m, p}}};
  for (const auto& s : listed) CHECK(std::abs(pc.value(s)) < 1e-14);
  CHECK(spanning_dimension(listed) == 8);
  auto from_candidates = zero_set_search(w3q(0, 0, 0).op, 8, 42, listed);
  CHECK(from_candidates.size() == 8);

  // optimal decomposable two-qubit witness spans the full space
  auto w2 = bell_pair_witness("example2").w.op;
  auto z2 = zero_set_search(w2, 4);
  CHECK(spanning_dimension(z2) == 4);

  CHECK(zero_set_search(HermitianOperator::identity(Dims::qubits(2)), 4, 42, {}, {8}).empty());

  CHECK(spanning_dimension({listed[0]}) == 1);
  CHECK(spanning_dimension({listed[0], listed[0]}) == 1);
  CHECK_THROWS(spanning_dimension({}));
}
