#pragma once

#include "mirrorwit/graphs.hpp"
#include "mirrorwit/linops.hpp"

#include <array>
#include <sstream>

namespace mirrorwit {

using Params = std::map<std::string, double>;

struct Witness {
  HermitianOperator op;
  std::string family;
  Params params;
  bool normalized = false;

  Witness normalize() const {
    Witness w = *this;
    w.op = op.normalized();
    w.normalized = true;
    return w;
  }
};

struct StateSpec {
  HermitianOperator op;
  std::string family;
  Params params;

  StateSpec() = default;
  StateSpec(HermitianOperator o, std::string fam, Params p = {})
      : op(std::move(o)), family(std::move(fam)), params(std::move(p)) {
    if (std::abs(op.trace() - 1.0) > 1e-12) throw std::invalid_argument("state trace is not 1");
    if (lambda_min(op) < -kPosTol) throw std::invalid_argument("state is not positive semidefinite");
  }
  static StateSpec pure(const Vec& psi, const Dims& d, std::string fam, Params p = {}) {
    return {HermitianOperator::projector(psi, d), std::move(fam), std::move(p)};
  }
};

enum class MirrorClass { witness, positive, undetermined };

inline std::string to_string(MirrorClass c) {
  switch (c) {
    case MirrorClass::witness: return "witness";
    case MirrorClass::positive: return "positive";
    default: return "undetermined";
  }
}

// mu*I - w = rescale * m; rescale is 1 for canonical pairs.
struct MirrorPair {
  Witness w;
  HermitianOperator m;
  double mu = 0;
  double rescale = 1.0;
  MirrorClass m_class = MirrorClass::undetermined;

  double identity_defect() const {
    return max_abs(mu * Mat::Identity(w.op.dim(), w.op.dim()) - w.op.matrix() -
                   rescale * m.matrix());
  }
  bool canonical() const { return rescale == 1.0; }
};

// ---------------------------------------------------------------- GHZ

inline Vec ghz_vector(int n) {
  Vec v = Vec::Zero(1 << n);
  v(0) = v((1 << n) - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

inline StateSpec ghz_state(int n) {
  return StateSpec::pure(ghz_vector(n), Dims::qubits(n), "ghz", {{"n", n}});
}

// (|0101..> - |1010..>)/sqrt(2)
inline Vec ghz_alt_vector(int n) {
  int a = 0;
  for (int k = 0; k < n; ++k) a = (a << 1) | (k % 2);
  const int b = ((1 << n) - 1) ^ a;
  Vec v = Vec::Zero(1 << n);
  v(a) = 1.0 / std::sqrt(2.0);
  v(b) = -1.0 / std::sqrt(2.0);
  return v;
}

inline StateSpec ghz_alt_state(int n) {
  return StateSpec::pure(ghz_alt_vector(n), Dims::qubits(n), "ghz-alt", {{"n", n}});
}

inline void check_n(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
}

inline Witness canonical_ghz_witness(int n) {
  check_n(n);
  const Dims d = Dims::qubits(n);
  const double pref = 1.0 / (std::pow(2.0, n - 1) - 1.0);
  Mat g = HermitianOperator::projector(ghz_vector(n), d).matrix();
  Mat w = pref * (0.5 * Mat::Identity(1 << n, 1 << n) - g);
  return {HermitianOperator(w, d), "ghz-canonical", {{"n", n}}, true};
}

inline MirrorPair canonical_ghz_pair(int n) {
  Witness w = canonical_ghz_witness(n);
  MirrorPair p{w, HermitianOperator::projector(ghz_vector(n), Dims::qubits(n)),
               1.0 / (std::pow(2.0, n) - 2.0), 1.0 / (std::pow(2.0, n - 1) - 1.0),
               MirrorClass::positive};
  return p;
}

inline Mat generator_sum(const std::vector<PauliSum>& gens) {
  PauliSum s;
  for (const auto& g : gens) s += g;
  return pauli_to_matrix(s, gens.front().num_qubits()).matrix();
}

inline MirrorPair alternative_ghz_witness(int n) {
  check_n(n);
  const Dims d = Dims::qubits(n);
  const int dim = 1 << n;
  const Mat id = Mat::Identity(dim, dim);
  const Mat s = generator_sum(ghz_generators(n)) / double(n - 1);
  const double pref = std::pow(2.0, -n);
  Witness w{HermitianOperator(pref * (id - s), d), "ghz-alt", {{"n", n}}, true};
  return {w, HermitianOperator(pref * (id + s), d), std::pow(2.0, 1 - n), 1.0,
          MirrorClass::witness};
}

// (3/2 I - P_red - P_blue) normalized to trace 1; mirror is (P_red + P_blue) at trace 1.
inline MirrorPair two_measurement_from(const std::vector<PauliSum>& gens,
                                       const std::vector<int>& red, const std::vector<int>& blue,
                                       std::string family, Params params) {
  const int n = gens.front().num_qubits();
  const Dims d = Dims::qubits(n);
  const int dim = 1 << n;
  const Mat pr = partial_projector(gens, red).matrix();
  const Mat pb = partial_projector(gens, blue).matrix();
  const Mat raw = 1.5 * Mat::Identity(dim, dim) - pr - pb;
  const double nw = raw.trace().real();
  const double nm = (pr + pb).trace().real();
  Witness w{HermitianOperator(raw / nw, d), std::move(family), std::move(params), true};
  return {w, HermitianOperator((pr + pb) / nm, d), 1.5 / nw, nm / nw, MirrorClass::positive};
}

inline MirrorPair two_measurement_witness(const Graph& g) {
  auto col = two_coloring(g);
  if (!col) throw std::invalid_argument("graph is not two-colorable");
  std::vector<int> red(col->red.begin(), col->red.end());
  std::vector<int> blue(col->blue.begin(), col->blue.end());
  return two_measurement_from(graph_generators(g), red, blue, "graph-2m", {{"n", g.n}});
}

inline MirrorPair ghz_two_measurement_witness(int n) {
  check_n(n);
  std::vector<int> blue;
  for (int i = 1; i < n; ++i) blue.push_back(i);
  return two_measurement_from(ghz_generators(n), {0}, blue, "ghz-2m", {{"n", n}});
}

// W = (n-1)I - sum g, M = (n-1)I + sum g
inline MirrorPair stabilizer_witness(const std::vector<PauliSum>& gens, std::string family,
                                     Params params) {
  const int n = gens.front().num_qubits();
  const Dims d = Dims::qubits(n);
  const int dim = 1 << n;
  const Mat id = Mat::Identity(dim, dim);
  const Mat s = generator_sum(gens);
  Witness w{HermitianOperator((n - 1) * id - s, d), std::move(family), std::move(params), false};
  return {w, HermitianOperator((n - 1) * id + s, d), 2.0 * (n - 1), 1.0, MirrorClass::witness};
}

inline MirrorPair graph_witness(const Graph& g) {
  return stabilizer_witness(graph_generators(g), "graph", {{"n", g.n}});
}

inline MirrorPair ghz_graph_witness(int n) {
  check_n(n);
  return stabilizer_witness(ghz_generators(n), "ghz-stabilizer", {{"n", n}});
}

// ---------------------------------------------------------------- three-qubit X-shaped

inline void check_bits(int a, int b, int c) {
  for (int x : {a, b, c})
    if (x != 0 && x != 1) throw std::invalid_argument("index bits must be 0 or 1");
}

inline Mat w3q_matrix(int i1, int i2, int i3, double sign) {
  check_bits(i1, i2, i3);
  auto pm = [](int e) { return (e % 2 == 0) ? 1.0 : -1.0; };
  Mat s = pauli_string("ZZZ") + pm(i1) * pauli_string("XXX") + pm(i2) * pauli_string("XYY") +
          pm(i3) * pauli_string("YXY") + pm(i1 + i2 + i3 + 1) * pauli_string("YYX");
  return Mat::Identity(8, 8) + sign * s;
}

inline std::string bits_tag(int a, int b, int c) {
  return std::to_string(a) + std::to_string(b) + std::to_string(c);
}

inline Witness w3q(int i1, int i2, int i3) {
  return {HermitianOperator(w3q_matrix(i1, i2, i3, -1.0), Dims::qubits(3)), "w3q",
          {{"i1", i1}, {"i2", i2}, {"i3", i3}}, false};
}

inline Witness m3q(int i1, int i2, int i3) {
  return {HermitianOperator(w3q_matrix(i1, i2, i3, 1.0), Dims::qubits(3)), "m3q",
          {{"i1", i1}, {"i2", i2}, {"i3", i3}}, false};
}

inline MirrorPair w3q_pair(int i1, int i2, int i3) {
  return {w3q(i1, i2, i3), m3q(i1, i2, i3).op, 2.0, 1.0, MirrorClass::witness};
}

struct XShapeParams {
  std::array<double, 4> s{1, 1, 1, 1};
  std::array<double, 4> t{1, 1, 1, 1};
  std::array<cplx, 4> u{0, 0, 0, 0};

  double nu() const {
    double v = 0;
    for (int i = 0; i < 4; ++i) v += s[i] + t[i];
    return v;
  }
};

// Trace-normalized X-shaped matrix without any positivity checks.
inline HermitianOperator xshape_density(const XShapeParams& p) {
  XShapedOperator x{{p.s.begin(), p.s.end()}, {p.t.begin(), p.t.end()}, {p.u.begin(), p.u.end()}};
  return xshape_expand(x).scaled(1.0 / p.nu());
}

inline StateSpec rho_ppt(const XShapeParams& p) {
  for (int i = 0; i < 4; ++i) {
    if (p.s[i] <= 0 || p.t[i] <= 0) throw std::invalid_argument("s, t must be positive");
    if (std::abs(p.s[i] * p.t[i] - 1.0) > 1e-12) throw std::invalid_argument("need s_i t_i = 1");
    if (std::abs(p.u[i]) > 1.0 + 1e-12) throw std::invalid_argument("need |u_i| <= 1");
  }
  return {xshape_density(p), "rho-ppt"};
}

inline XShapeParams xyz_params(double x, double y, double z) {
  XShapeParams p;
  p.s = {1, x, y, z};
  p.t = {1, 1 / x, 1 / y, 1 / z};
  p.u = {1, 0, 0, 0};
  return p;
}

inline StateSpec rho_xyz(double x, double y, double z) {
  if (x <= 0 || y <= 0 || z <= 0) throw std::invalid_argument("x, y, z must be positive");
  StateSpec s = rho_ppt(xyz_params(x, y, z));
  s.family = "rho-xyz";
  s.params = {{"x", x}, {"y", y}, {"z", z}};
  return s;
}

inline XShapeParams bc_params(double b, double c) {
  XShapeParams p;
  p.s = {1, 1, 1, b};
  p.t = {1, 1, 1, c};
  p.u = {-1, -1, 1, -1};
  return p;
}

inline StateSpec rho_bc(double b, double c) {
  if (b <= 0 || c <= 0 || b * c < 1.0 - 1e-12)
    throw std::invalid_argument("rho(b,c) is a state only for b, c > 0 and bc >= 1");
  return {xshape_density(bc_params(b, c)), "rho-bc", {{"b", b}, {"c", c}}};
}

inline XShapedOperator wopt_xshape(double s2, double s3, double s4, double theta) {
  return {{0, s2, s3, s4}, {0, 1 / s2, 1 / s3, 1 / s4}, {std::polar(1.0, theta), 0, 0, 0}};
}

// ---------------------------------------------------------------- covariant d x d

inline Mat covariant_matrix(const std::vector<double>& alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n < 2) throw std::invalid_argument("covariant family needs n >= 2");
  Mat w = Mat::Zero(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) w(k * n + l, k * n + l) = alpha[((l - k) % n + n) % n];
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (k != l) w(k * n + k, l * n + l) -= 1.0;
  return w;
}

struct CovariantResiduals {
  double sum;   // |sum alpha - (n-1)|
  double gram;  // max |A A^T - I - (n-2)J|
};

inline CovariantResiduals covariant_residuals(const std::vector<double>& alpha) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd a(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) a(k, l) = alpha[((l - k) % n + n) % n];
  Eigen::MatrixXd target = Eigen::MatrixXd::Identity(n, n) + (n - 2) * Eigen::MatrixXd::Ones(n, n);
  double s = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  return {std::abs(s - (n - 1)), (a * a.transpose() - target).cwiseAbs().maxCoeff()};
}

inline Params alpha_params(const std::vector<double>& alpha) {
  Params p;
  for (size_t i = 0; i < alpha.size(); ++i) p["alpha" + std::to_string(i)] = alpha[i];
  return p;
}

inline Witness covariant_witness(const std::vector<double>& alpha) {
  auto r = covariant_residuals(alpha);
  if (r.sum > 1e-9 || r.gram > 1e-9) {
    std::ostringstream os;
    os << "covariant constraints violated: sum residual " << r.sum << ", gram residual " << r.gram;
    throw std::invalid_argument(os.str());
  }
  const int n = static_cast<int>(alpha.size());
  return {HermitianOperator(covariant_matrix(alpha), Dims({n, n})), "covariant",
          alpha_params(alpha), false};
}

inline Witness choi_abc(double a, double b, double c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("a, b, c must be nonnegative");
  if (a + b + c < 2 - 1e-12) throw std::invalid_argument("need a + b + c >= 2");
  if (a <= 1 && b * c < (1 - a) * (1 - a) - 1e-12)
    throw std::invalid_argument("need bc >= (1-a)^2 when a <= 1");
  return {HermitianOperator(covariant_matrix({a, b, c}), Dims({3, 3})), "choi-abc",
          {{"a", a}, {"b", b}, {"c", c}}, false};
}

inline std::array<double, 3> choi_phi_params(double phi) {
  const double r3 = std::sqrt(3.0);
  return {2.0 / 3.0 * (1 + std::cos(phi)), (2 - std::cos(phi) - r3 * std::sin(phi)) / 3.0,
          (2 - std::cos(phi) + r3 * std::sin(phi)) / 3.0};
}

// Clamp tiny negative round-off so exact boundary points pass the checks.
inline double clamp0(double x) { return (x < 0 && x > -1e-14) ? 0.0 : x; }

inline Witness choi_phi(double phi) {
  auto p = choi_phi_params(phi);
  Witness w = choi_abc(clamp0(p[0]), clamp0(p[1]), clamp0(p[2]));
  w.family = "choi-phi";
  w.params["phi"] = phi;
  return w;
}

enum class WClass { I, II };

inline std::array<double, 4> wabcd_params(WClass cls, double theta) {
  if (cls == WClass::I) {
    double a = (2 - std::sin(theta)) / 2, b = (1 + std::cos(theta)) / 2;
    return {a, b, 2 - a, 1 - b};
  }
  double a = (1 + std::cos(theta)) / 2, b = (2 - std::sin(theta)) / 2;
  return {a, b, 1 - a, 2 - b};
}

inline Witness wabcd(double a, double b, double c, double d) {
  return {HermitianOperator(covariant_matrix({a, b, c, d}), Dims({4, 4})), "wabcd",
          {{"a", a}, {"b", b}, {"c", c}, {"d", d}}, false};
}

inline Witness wabcd_class(WClass cls, double theta) {
  auto p = wabcd_params(cls, theta);
  Witness w = wabcd(p[0], p[1], p[2], p[3]);
  w.family = cls == WClass::I ? "class1" : "class2";
  w.params["theta"] = theta;
  return w;
}

// Unnormalized: diagonal 3, x, 1, 1/x on offsets 0..3, -1 between |ii> and |jj>.
inline Mat rho_x_unnormalized(double x) {
  if (x <= 0) throw std::invalid_argument("x must be positive");
  Mat r = Mat::Zero(16, 16);
  const double diag[4] = {3, x, 1, 1 / x};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) r(i * 4 + (i + k) % 4, i * 4 + (i + k) % 4) = diag[k];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) r(i * 5, j * 5) = -1.0;
  return r;
}

inline StateSpec rho_x(double x) {
  Mat r = rho_x_unnormalized(x);
  const double nu = r.trace().real();
  return {HermitianOperator(r / nu, Dims({4, 4})), "rho-x", {{"x", x}, {"nu", nu}}};
}

// ---------------------------------------------------------------- 3x3 pair

inline Mat int_matrix(int n, std::initializer_list<int> v) {
  Mat m(n, n);
  auto it = v.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = double(*it++);
  return m;
}

struct Pair33 {
  MirrorPair pair;
  StateSpec rho_w;
  StateSpec rho_m;
  Mat u;
};

inline Mat pair33_unitary() {
  const cplx w = std::polar(1.0, 2 * kPi / 3);
  Mat u(3, 3);
  u << 1, 1, w, 1, w, 1, std::conj(w), w, w;
  return u / std::sqrt(3.0);
}

inline Pair33 pair33() {
  const Dims d({3, 3});
  Mat w = int_matrix(9, {0, 0, 0, 0,  1, 0,  0,  0,  1,   //
                         0, 3, 0, 0,  0, -2, -2, 0,  0,   //
                         0, 0, 3, -2, 0, 0,  0,  -2, 0,   //
                         0, 0, -2, 3, 0, 0,  0,  -2, 0,   //
                         1, 0, 0, 0,  0, 0,  0,  0,  1,   //
                         0, -2, 0, 0, 0, 3,  -2, 0,  0,   //
                         0, -2, 0, 0, 0, -2, 3,  0,  0,   //
                         0, 0, -2, -2, 0, 0, 0,  3,  0,   //
                         1, 0, 0, 0,  1, 0,  0,  0,  0});
  Mat m = int_matrix(9, {4,  0, 0, 0, -1, 0, 0, 0, -1,  //
                         0,  1, 0, 0, 0,  2, 2, 0, 0,   //
                         0,  0, 1, 2, 0,  0, 0, 2, 0,   //
                         0,  0, 2, 1, 0,  0, 0, 2, 0,   //
                         -1, 0, 0, 0, 4,  0, 0, 0, -1,  //
                         0,  2, 0, 0, 0,  1, 2, 0, 0,   //
                         0,  2, 0, 0, 0,  2, 1, 0, 0,   //
                         0,  0, 2, 2, 0,  0, 0, 1, 0,   //
                         -1, 0, 0, 0, -1, 0, 0, 0, 4});
  Mat rw = int_matrix(9, {3, 0, 0, 0, 0, 0, 0, 0, 0,  //
                          0, 1, 0, 0, 0, 1, 1, 0, 0,  //
                          0, 0, 1, 1, 0, 0, 0, 1, 0,  //
                          0, 0, 1, 1, 0, 0, 0, 1, 0,  //
                          0, 0, 0, 0, 3, 0, 0, 0, 0,  //
                          0, 1, 0, 0, 0, 1, 1, 0, 0,  //
                          0, 1, 0, 0, 0, 1, 1, 0, 0,  //
                          0, 0, 1, 1, 0, 0, 0, 1, 0,  //
                          0, 0, 0, 0, 0, 0, 0, 0, 3});
  Mat rm = int_matrix(9, {1, 0,  0,  0,  1, 0,  0,  0,  1,  //
                          0, 2,  0,  0,  0, -1, -1, 0,  0,  //
                          0, 0,  2,  -1, 0, 0,  0,  -1, 0,  //
                          0, 0,  -1, 2,  0, 0,  0,  -1, 0,  //
                          1, 0,  0,  0,  1, 0,  0,  0,  1,  //
                          0, -1, 0,  0,  0, 2,  -1, 0,  0,  //
                          0, -1, 0,  0,  0, -1, 2,  0,  0,  //
                          0, 0,  -1, -1, 0, 0,  0,  2,  0,  //
                          1, 0,  0,  0,  1, 0,  0,  0,  1});
  Witness wit{HermitianOperator(w, d), "pair33-w", {}, false};
  return {MirrorPair{wit, HermitianOperator(m, d), 4.0, 1.0, MirrorClass::witness},
          StateSpec(HermitianOperator(rw / 15.0, d), "rho-w"),
          StateSpec(HermitianOperator(rm / 15.0, d), "rho-m"), pair33_unitary()};
}

// ---------------------------------------------------------------- Weyl mixtures

inline StateSpec tau_state(int n, int j, int k) {
  Mat t = 0.5 * (bell_projector(n, 0, 0).matrix() + bell_projector(n, j, k).matrix());
  return {HermitianOperator(t, Dims({n, n})), "tau", {{"n", n}, {"j", j}, {"k", k}}};
}

// ---------------------------------------------------------------- two-qubit examples

inline MirrorPair bell_pair_witness(const std::string& which) {
  const Dims d = Dims::qubits(2);
  if (which == "example1") {
    Witness w{pauli_to_matrix(PauliSum{{"II", 0.25}, {"XX", -0.25}, {"ZZ", -0.25}}), "example1",
              {}, true};
    return {w, pauli_to_matrix(PauliSum{{"II", 0.25}, {"XX", 0.25}, {"ZZ", 0.25}}), 0.5, 1.0,
            MirrorClass::witness};
  }
  if (which == "example2") {
    HermitianOperator psim = bell_projector(2, 1, 1);  // (I x XZ)|phi+> = singlet up to phase
    Witness w{partial_transpose(psim, {1}), "example2", {}, true};
    return {w, bell_projector(2, 0, 0), 0.5, 1.0, MirrorClass::positive};
  }
  throw std::invalid_argument("unknown two-qubit example " + which);
}

}  // namespace mirrorwit
