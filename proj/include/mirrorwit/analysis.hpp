#pragma once

#include "mirrorwit/mirror.hpp"

#include <functional>
#include <limits>

namespace mirrorwit {

enum class Bound { none, lower, upper };

inline std::string to_string(Bound b) {
  switch (b) {
    case Bound::lower: return "lower";
    case Bound::upper: return "upper";
    default: return "none";
  }
}

inline std::string describe(const std::string& family, const Params& p) {
  std::ostringstream os;
  os << family;
  if (!p.empty()) {
    os << "(";
    bool first = true;
    for (const auto& [k, v] : p) {
      os << (first ? "" : ",") << k << "=" << v;
      first = false;
    }
    os << ")";
  }
  return os.str();
}

struct DetectionVerdict {
  double value = 0;
  Bound bound_violated = Bound::none;
  std::string witness_id;
  std::string state_id;
};

inline void check_dims(const HermitianOperator& a, const HermitianOperator& b) {
  if (!(a.dims() == b.dims())) throw std::invalid_argument("dimension mismatch");
}

inline DetectionVerdict detect(const Witness& w, const StateSpec& rho) {
  check_dims(w.op, rho.op);
  DetectionVerdict v{w.op.expectation(rho.op), Bound::none, describe(w.family, w.params),
                     describe(rho.family, rho.params)};
  if (v.value < -kPosTol) v.bound_violated = Bound::lower;
  return v;
}

inline DetectionVerdict detect(const MirrorPair& pair, const StateSpec& rho) {
  DetectionVerdict v = detect(pair.w, rho);
  if (v.value > pair.mu + kPosTol) v.bound_violated = Bound::upper;
  return v;
}

// ---------------------------------------------------------------- PPT

inline bool is_ppt(const HermitianOperator& rho, const std::set<int>& side) {
  return lambda_min(partial_transpose(rho, side)) >= -kPosTol;
}

// Each bipartition once: subsets of all but the last subsystem.
inline std::vector<std::set<int>> bipartitions(int k) {
  std::vector<std::set<int>> out;
  for (int mask = 1; mask < (1 << (k - 1)); ++mask) {
    std::set<int> s;
    for (int i = 0; i < k - 1; ++i)
      if (mask >> i & 1) s.insert(i);
    out.push_back(s);
  }
  if (k == 1) out.push_back({});
  return out;
}

inline double min_pt_eigenvalue(const HermitianOperator& rho) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : bipartitions(rho.dims().size()))
    m = std::min(m, lambda_min(partial_transpose(rho, s)));
  return m;
}

inline bool is_ppt_all(const HermitianOperator& rho) { return min_pt_eigenvalue(rho) >= -kPosTol; }

// ---------------------------------------------------------------- LU equivalence

inline bool lu_equivalent_by(const HermitianOperator& a, const HermitianOperator& b,
                             const std::vector<Mat>& locals, double tol = 1e-10) {
  check_dims(a, b);
  if (static_cast<int>(locals.size()) != a.dims().size())
    throw std::invalid_argument("one local unitary per subsystem required");
  for (size_t k = 0; k < locals.size(); ++k) {
    const auto& u = locals[k];
    if (u.rows() != a.dims()[static_cast<int>(k)] || u.cols() != u.rows())
      throw std::invalid_argument("local unitary does not match subsystem dimension");
    if (max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.rows())) > 1e-10)
      throw std::invalid_argument("local factor is not unitary");
  }
  Mat u = tensor_mats(locals);
  return max_abs(conjugate_by(u, a.matrix()) - b.matrix()) <= tol;
}

inline std::vector<Mat> pauli_locals(const std::string& label) {
  std::vector<Mat> out;
  for (char c : label) out.push_back(pauli(c));
  return out;
}

// ---------------------------------------------------------------- X-shaped optimality

inline int vector_span(const std::vector<Vec>& vs, double rel = 1e-8) {
  if (vs.empty()) return 0;
  Mat cols(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (size_t k = 0; k < vs.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = vs[k];
  Eigen::JacobiSVD<Mat> svd(cols);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * sv(0)) ++rank;
  return rank;
}

// Zeros of W over pure states that are product across some bipartition S|rest.
// Each cut is searched as a two-party problem and the vectors are mapped back to the original order.
inline std::vector<Vec> biseparable_zero_set(const HermitianOperator& w, std::uint64_t seed = 42) {
  const Dims& d = w.dims();
  const int k = d.size();
  std::vector<Vec> out;
  for (const auto& cut : bipartitions(k)) {
    std::vector<int> order(cut.begin(), cut.end());
    for (int j = 0; j < k; ++j)
      if (!cut.count(j)) order.push_back(j);
    std::vector<int> pd;
    int da = 1;
    for (int j : order) pd.push_back(d[j]);
    for (int j : cut) da *= d[j];
    Dims permuted(pd);
    Mat perm = Mat::Zero(w.dim(), w.dim());
    for (int i = 0; i < w.dim(); ++i) {
      auto dig = d.digits(i);
      std::vector<int> nd;
      for (int j : order) nd.push_back(dig[j]);
      perm(permuted.index(nd), i) = 1;
    }
    HermitianOperator cutw(perm * w.matrix() * perm.adjoint(), Dims({da, w.dim() / da}));
    for (const auto& z : zero_set_search(cutw, w.dim(), seed)) out.push_back(perm.adjoint() * z.vector());
  }
  return out;
}

struct XOptimality {
  bool condition_iii = false;
  int slot = -1;  // upper-half index i of the zero-diagonal pair (i, ~i)
  double r = 0;
  int spanning_dim = -1;  // filled when cross-checked
  int zeros_found = 0;
};

inline XOptimality xshaped_optimality_check(const XShapedOperator& x, bool cross_check = false,
                                            std::uint64_t seed = 42, double tol = 1e-10) {
  XOptimality out;
  const int h = static_cast<int>(x.s.size());
  std::vector<int> zero_slots;
  for (int i = 0; i < h; ++i)
    if (std::abs(x.s[i]) <= tol && std::abs(x.t[i]) <= tol) zero_slots.push_back(i);
  if (zero_slots.size() == 1) {
    const int i = zero_slots.front();
    const double r = std::abs(x.u[i]);
    bool ok = r > tol;
    for (int j = 0; j < h && ok; ++j) {
      if (j == i) continue;
      if (std::abs(x.u[j]) > tol) ok = false;
      if (x.s[j] < 0 || x.t[j] < 0 || std::abs(std::sqrt(x.s[j] * x.t[j]) - r) > tol) ok = false;
    }
    if (ok) {
      out.condition_iii = true;
      out.slot = i;
      out.r = r;
    }
  }
  if (cross_check) {
    auto zeros = biseparable_zero_set(xshape_expand(x), seed);
    out.zeros_found = static_cast<int>(zeros.size());
    out.spanning_dim = vector_span(zeros);
  }
  return out;
}

// ---------------------------------------------------------------- three-qubit Pauli coefficients

inline const std::vector<std::string>& rcoeff_keys() {
  static const std::vector<std::string> keys = {"000", "300", "030", "003", "330", "303",
                                                "033", "333", "111", "112", "121", "211",
                                                "122", "212", "221", "222"};
  return keys;
}

inline std::string rcoeff_label(const std::string& key) {
  std::string l;
  for (char c : key) l += "IXYZ"[c - '0'];
  return l;
}

// r_ijk = Tr[rho (sigma_i x sigma_j x sigma_k)]
struct RCoeffs {
  std::map<std::string, double> r;
  double operator[](const std::string& k) const { return r.at(k); }
};

// Closed forms for the X-shaped family (Y = [[0,-i],[i,0]], big-endian order).
inline RCoeffs rijk(const XShapeParams& p) {
  const auto& s = p.s;
  const auto& t = p.t;
  const double nu = p.nu();
  double re[4], im[4];
  for (int i = 0; i < 4; ++i) {
    re[i] = p.u[i].real();
    im[i] = p.u[i].imag();
  }
  RCoeffs c;
  c.r["000"] = 1.0;
  c.r["300"] = (s[0] + s[1] + s[2] + s[3] - t[0] - t[1] - t[2] - t[3]) / nu;
  c.r["030"] = (s[0] + s[1] - s[2] - s[3] - t[0] - t[1] + t[2] + t[3]) / nu;
  c.r["003"] = (s[0] - s[1] + s[2] - s[3] - t[0] + t[1] - t[2] + t[3]) / nu;
  c.r["330"] = (s[0] + s[1] - s[2] - s[3] + t[0] + t[1] - t[2] - t[3]) / nu;
  c.r["303"] = (s[0] - s[1] + s[2] - s[3] + t[0] - t[1] + t[2] - t[3]) / nu;
  c.r["033"] = (s[0] - s[1] - s[2] + s[3] + t[0] - t[1] - t[2] + t[3]) / nu;
  c.r["333"] = (s[0] - s[1] - s[2] + s[3] - t[0] + t[1] + t[2] - t[3]) / nu;
  c.r["111"] = 2 * (re[0] + re[1] + re[2] + re[3]) / nu;
  c.r["112"] = 2 * (-im[0] + im[1] - im[2] + im[3]) / nu;
  c.r["121"] = 2 * (-im[0] - im[1] + im[2] + im[3]) / nu;
  c.r["211"] = -2 * (im[0] + im[1] + im[2] + im[3]) / nu;
  c.r["122"] = 2 * (-re[0] + re[1] + re[2] - re[3]) / nu;
  c.r["212"] = 2 * (-re[0] + re[1] - re[2] + re[3]) / nu;
  c.r["221"] = 2 * (-re[0] - re[1] + re[2] + re[3]) / nu;
  c.r["222"] = 2 * (im[0] - im[1] - im[2] + im[3]) / nu;
  return c;
}

inline RCoeffs rijk_direct(const HermitianOperator& rho) {
  RCoeffs c;
  for (const auto& k : rcoeff_keys())
    c.r[k] = (rho.matrix() * pauli_string(rcoeff_label(k))).trace().real();
  return c;
}

inline double expectation_via_coeffs(int i1, int i2, int i3, const RCoeffs& r) {
  check_bits(i1, i2, i3);
  auto pm = [](int e) { return (e % 2 == 0) ? 1.0 : -1.0; };
  return r["000"] - r["333"] - pm(i1) * r["111"] - pm(i2) * r["122"] - pm(i3) * r["212"] -
         pm(i1 + i2 + i3 + 1) * r["221"];
}

// ---------------------------------------------------------------- decomposability

enum class DecompTier { nondecomposable, decomposable, undecided };

inline std::string to_string(DecompTier t) {
  switch (t) {
    case DecompTier::nondecomposable: return "NONDECOMPOSABLE";
    case DecompTier::decomposable: return "DECOMPOSABLE";
    default: return "UNDECIDED";
  }
}

struct DecompCertificate {
  DecompTier tier = DecompTier::undecided;
  std::string reason;
  double value = 0;         // detecting value for NONDECOMPOSABLE
  std::string state_id;     // detected PPT state
  double residual = 0;      // AP residual for DECOMPOSABLE via splitting
  int iterations = 0;
  std::set<int> transposed;  // subsystems of the Q^Gamma part
};

struct DecompOptions {
  int samples = 1000;
  std::uint64_t seed = 42;
  int ap_iterations = 10000;
  double ap_residual = 1e-8;
  double detect_tol = 1e-8;
};

// Covariant PPT state: weights alpha on |k,k+j>, coherence beta between |kk> and |ll>.
inline HermitianOperator covariant_state(const std::vector<double>& alpha, double beta) {
  const int n = static_cast<int>(alpha.size());
  Mat r = Mat::Zero(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) r(k * n + l, k * n + l) = alpha[((l - k) % n + n) % n];
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (k != l) r(k * n + k, l * n + l) = beta;
  return HermitianOperator(r / r.trace().real(), Dims({n, n}));
}

inline std::vector<StateSpec> catalog_ppt_states(const Dims& d) {
  std::vector<StateSpec> out;
  if (d == Dims({3, 3})) {
    auto p = pair33();
    out.push_back(p.rho_w);
    out.push_back(p.rho_m);
  } else if (d == Dims({4, 4})) {
    for (double x : {0.5, 1.25, 1.5, 2.0, 2.5, 3.0, 3.5, 5.0}) out.push_back(rho_x(x));
  } else if (d == Dims::qubits(3)) {
    for (double b : {0.25, 0.5, 1.0, 2.0, 4.0}) out.push_back(rho_bc(b, 1.0 / b));
    for (double x : {0.5, 1.0, 2.0})
      for (double y : {0.5, 1.0, 2.0})
        for (double z : {0.5, 1.0, 2.0}) out.push_back(rho_xyz(x, y, z));
  }
  return out;
}

inline std::vector<std::pair<std::string, HermitianOperator>> random_ppt_states(const Dims& d,
                                                                               int samples,
                                                                               std::uint64_t seed) {
  std::vector<std::pair<std::string, HermitianOperator>> out;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto loguni = [&](std::mt19937_64& g) { return std::pow(10.0, -2.0 + 4.0 * unif(g)); };
  const bool bipartite_equal = d.size() == 2 && d[0] == d[1];
  const bool three_qubit = d == Dims::qubits(3);
  for (int s = 0; s < samples; ++s) {
    auto g = restart_rng(seed, 0xd3c0000ULL + static_cast<std::uint64_t>(s));
    if (three_qubit) {
      XShapeParams p;
      for (int i = 0; i < 4; ++i) {
        p.s[i] = loguni(g);
        p.t[i] = 1.0 / p.s[i];
        p.u[i] = std::polar(std::sqrt(unif(g)), 2 * kPi * unif(g));
      }
      out.push_back({"random-x-shaped", xshape_density(p)});
    } else if (bipartite_equal) {
      const int n = d[0];
      std::vector<double> alpha(n);
      for (auto& a : alpha) a = loguni(g);
      double bound = alpha[0];
      for (int j = 1; j < n; ++j) bound = std::min(bound, std::sqrt(alpha[j] * alpha[n - j]));
      double beta = bound * (0.5 + 0.5 * unif(g));
      if (unif(g) < 0.25) beta = -std::min(beta, alpha[0] / (n - 1));
      out.push_back({"random-covariant", covariant_state(alpha, beta)});
    }
  }
  return out;
}

inline std::vector<std::set<int>> transpose_sides(const Dims& d) {
  if (d.size() == 2) return {{1}};
  return bipartitions(d.size());
}

inline Mat psd_part(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

struct SplitResult {
  bool converged = false;
  int iterations = 0;
  double residual = 0;
};

// Alternating projections for W = P + Q^Gamma with P, Q >= 0.
inline SplitResult ap_split(const HermitianOperator& w, const std::set<int>& side,
                            int max_iter = 10000, double target = 1e-8) {
  const Dims& d = w.dims();
  auto pt = [&](const Mat& m) { return partial_transpose(Operator(m, d), side).matrix(); };
  const Mat& m = w.matrix();
  Mat p = psd_part(m);
  Mat q = Mat::Zero(m.rows(), m.cols());
  SplitResult out;
  for (int it = 1; it <= max_iter; ++it) {
    Mat r = m - p - pt(q);
    p = psd_part(p + 0.5 * r);
    q = psd_part(q + 0.5 * pt(r));
    out.iterations = it;
    out.residual = max_abs(m - p - pt(q));
    if (out.residual <= target) {
      out.converged = true;
      break;
    }
  }
  return out;
}

inline DecompCertificate decomposability_certificate(const HermitianOperator& w,
                                                     DecompOptions opt = {}) {
  DecompCertificate c;
  // (a) detection of a PPT state
  auto try_state = [&](const std::string& id, const HermitianOperator& rho) {
    double v = w.expectation(rho);
    if (v < -opt.detect_tol && v < c.value && is_psd(rho) && is_ppt_all(rho)) {
      c.tier = DecompTier::nondecomposable;
      c.value = v;
      c.state_id = id;
      c.reason = "detects a PPT state";
    }
  };
  for (const auto& s : catalog_ppt_states(w.dims())) try_state(describe(s.family, s.params), s.op);
  if (c.tier == DecompTier::nondecomposable) return c;
  for (const auto& [id, rho] : random_ppt_states(w.dims(), opt.samples, opt.seed))
    try_state(id, rho);
  if (c.tier == DecompTier::nondecomposable) return c;

  // (b) explicit decomposition
  if (is_psd(w)) {
    c.tier = DecompTier::decomposable;
    c.reason = "positive semidefinite";
    return c;
  }
  for (const auto& side : transpose_sides(w.dims())) {
    if (is_psd(partial_transpose(w, side))) {
      c.tier = DecompTier::decomposable;
      c.reason = "partial transpose is positive semidefinite";
      c.transposed = side;
      return c;
    }
  }
  for (const auto& side : transpose_sides(w.dims())) {
    auto s = ap_split(w, side, opt.ap_iterations, opt.ap_residual);
    c.iterations = s.iterations;
    c.residual = s.residual;
    if (s.converged) {
      c.tier = DecompTier::decomposable;
      c.reason = "alternating projections found P + Q^Gamma";
      c.transposed = side;
      return c;
    }
  }
  c.reason = "no PPT detection and no decomposition found";
  return c;
}

// ---------------------------------------------------------------- mirror family sweeps

enum class Family { choi_phi, class1, class2 };

inline Family parse_family(const std::string& s) {
  if (s == "choi_phi" || s == "choi-phi" || s == "choi") return Family::choi_phi;
  if (s == "class1") return Family::class1;
  if (s == "class2") return Family::class2;
  throw std::invalid_argument("unknown family " + s);
}

inline Witness family_witness(Family f, double param) {
  switch (f) {
    case Family::choi_phi: return choi_phi(param);
    case Family::class1: return wabcd_class(WClass::I, param);
    default: return wabcd_class(WClass::II, param);
  }
}

struct ClassifyRow {
  double param = 0;
  double a = 0;
  double mu = 0;
  double lambda_min_m = 0;
  std::string tier;
};

struct ClassifyCurve {
  std::vector<ClassifyRow> rows;
  std::vector<double> boundaries;  // midpoints where the tier changes
};

inline ClassifyRow classify_point(Family f, double param, RunOptions run = {},
                                  DecompOptions dopt = {}) {
  Witness w = family_witness(f, param);
  ClassifyRow row;
  row.param = param;
  row.a = w.params.at("a");
  row.mu = compute_mu(w, run);
  HermitianOperator m = w.op.reflected(row.mu);
  row.lambda_min_m = lambda_min(m);
  if (row.lambda_min_m >= -kPosTol) {
    row.tier = "positive";
    return row;
  }
  dopt.seed = run.seed;
  auto cert = decomposability_certificate(m, dopt);
  row.tier = cert.tier == DecompTier::decomposable      ? "decomposable-ew"
             : cert.tier == DecompTier::nondecomposable ? "nondecomposable-ew"
                                                        : "undecided";
  return row;
}

inline ClassifyCurve classify_mirror_family(Family f, const std::vector<double>& samples,
                                            RunOptions run = {}, DecompOptions dopt = {}) {
  ClassifyCurve curve;
  for (double p : samples) curve.rows.push_back(classify_point(f, p, run, dopt));
  for (size_t i = 1; i < curve.rows.size(); ++i)
    if (curve.rows[i].tier != curve.rows[i - 1].tier)
      curve.boundaries.push_back(0.5 * (curve.rows[i].param + curve.rows[i - 1].param));
  return curve;
}

}  // namespace mirrorwit
