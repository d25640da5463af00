#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mirrorwit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPosTol = 1e-10;
inline const double kPi = std::acos(-1.0);

// Subsystem dimensions; the first subsystem is the most significant digit.
class Dims {
 public:
  Dims() = default;
  explicit Dims(std::vector<int> d) : d_(std::move(d)) {
    for (int x : d_) {
      if (x < 2) throw std::invalid_argument("subsystem dimension must be >= 2");
    }
  }
  static Dims qubits(int n) { return Dims(std::vector<int>(n, 2)); }

  int total() const {
    return std::accumulate(d_.begin(), d_.end(), 1, std::multiplies<int>());
  }
  int size() const { return static_cast<int>(d_.size()); }
  int operator[](int i) const { return d_.at(i); }
  const std::vector<int>& vec() const { return d_; }
  bool operator==(const Dims& o) const = default;

  std::vector<int> digits(int index) const {
    std::vector<int> out(d_.size());
    for (int k = size() - 1; k >= 0; --k) {
      out[k] = index % d_[k];
      index /= d_[k];
    }
    return out;
  }
  int index(const std::vector<int>& digits) const {
    int idx = 0;
    for (int k = 0; k < size(); ++k) idx = idx * d_[k] + digits[k];
    return idx;
  }

 private:
  std::vector<int> d_;
};

class Operator {
 public:
  Operator() = default;
  Operator(Mat m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("operator must be square");
    if (m_.rows() != dims_.total())
      throw std::invalid_argument("matrix side does not match dims");
  }
  // Single-subsystem operator.
  explicit Operator(Mat m) : Operator(m, Dims({static_cast<int>(m.rows())})) {}

  const Mat& matrix() const { return m_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  Operator adjoint() const { return {m_.adjoint(), dims_}; }
  cplx trace() const { return m_.trace(); }

  static Operator identity(const Dims& d) {
    return {Mat::Identity(d.total(), d.total()), d};
  }

 private:
  Mat m_;
  Dims dims_;
};

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Mat& m) { return max_abs(m - m.adjoint()); }

class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Operator& op, double tol = kHermTol) {
    double defect = hermiticity_defect(op.matrix());
    if (defect > tol)
      throw std::invalid_argument("operator is not Hermitian (defect " +
                                  std::to_string(defect) + ")");
    op_ = Operator(0.5 * (op.matrix() + op.matrix().adjoint()), op.dims());
  }
  HermitianOperator(const Mat& m, const Dims& d) : HermitianOperator(Operator(m, d)) {}

  const Operator& op() const { return op_; }
  operator const Operator&() const { return op_; }
  const Mat& matrix() const { return op_.matrix(); }
  const Dims& dims() const { return op_.dims(); }
  int dim() const { return op_.dim(); }
  double trace() const { return op_.trace().real(); }

  HermitianOperator scaled(double c) const { return {c * matrix(), dims()}; }
  HermitianOperator operator+(const HermitianOperator& o) const {
    check_same(o);
    return {matrix() + o.matrix(), dims()};
  }
  HermitianOperator operator-(const HermitianOperator& o) const {
    check_same(o);
    return {matrix() - o.matrix(), dims()};
  }
  // c*I - this
  HermitianOperator reflected(double c) const {
    return {c * Mat::Identity(dim(), dim()) - matrix(), dims()};
  }
  HermitianOperator normalized() const {
    double t = trace();
    if (std::abs(t) < 1e-14) throw std::domain_error("cannot normalize traceless operator");
    return scaled(1.0 / t);
  }
  double expectation(const Mat& rho) const { return (matrix() * rho).trace().real(); }
  double expectation(const HermitianOperator& rho) const { return expectation(rho.matrix()); }
  double expectation_vec(const Vec& psi) const {
    return psi.dot(matrix() * psi).real();
  }

  static HermitianOperator identity(const Dims& d) {
    return HermitianOperator(Operator::identity(d));
  }
  static HermitianOperator projector(const Vec& psi, const Dims& d) {
    Vec v = psi / psi.norm();
    return {v * v.adjoint(), d};
  }

 private:
  void check_same(const HermitianOperator& o) const {
    if (!(dims() == o.dims())) throw std::invalid_argument("dims mismatch");
  }
  Operator op_;
};

// ---------------------------------------------------------------- tensor

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Operator tensor(const std::vector<Operator>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of empty sequence");
  Mat m = factors.front().matrix();
  std::vector<int> d = factors.front().dims().vec();
  for (size_t i = 1; i < factors.size(); ++i) {
    m = kron(m, factors[i].matrix());
    const auto& fd = factors[i].dims().vec();
    d.insert(d.end(), fd.begin(), fd.end());
  }
  return {m, Dims(d)};
}

inline Mat tensor_mats(const std::vector<Mat>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of empty sequence");
  Mat m = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) m = kron(m, factors[i]);
  return m;
}

inline Vec tensor_vecs(const std::vector<Vec>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of empty sequence");
  Vec v = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) v = kron(v, factors[i]);
  return v;
}

inline Mat conjugate_by(const Mat& u, const Mat& a) { return u * a * u.adjoint(); }

inline HermitianOperator conjugate_by(const Mat& u, const HermitianOperator& a) {
  return {conjugate_by(u, a.matrix()), a.dims()};
}

// ---------------------------------------------------------------- partial transpose

inline Operator partial_transpose(const Operator& op, const std::set<int>& subset) {
  const Dims& d = op.dims();
  for (int s : subset)
    if (s < 0 || s >= d.size()) throw std::out_of_range("partial transpose index out of range");
  if (subset.empty()) return op;
  const int n = op.dim();
  std::vector<std::vector<int>> dig(n);
  for (int i = 0; i < n; ++i) dig[i] = d.digits(i);
  Mat out(n, n);
  std::vector<int> r(d.size()), c(d.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r = dig[i];
      c = dig[j];
      for (int s : subset) std::swap(r[s], c[s]);
      out(d.index(r), d.index(c)) = op.matrix()(i, j);
    }
  }
  return {out, d};
}

inline HermitianOperator partial_transpose(const HermitianOperator& op,
                                           const std::set<int>& subset) {
  return HermitianOperator(partial_transpose(op.op(), subset));
}

// ---------------------------------------------------------------- spectra

struct Extremes {
  double min;
  double max;
};

inline Extremes eig_extremes(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Mat> es(op.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

inline Extremes eig_extremes(const Mat& m) {
  if (hermiticity_defect(m) > kHermTol) throw std::invalid_argument("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

inline double lambda_min(const HermitianOperator& op) { return eig_extremes(op).min; }
inline double lambda_max(const HermitianOperator& op) { return eig_extremes(op).max; }
inline bool is_psd(const HermitianOperator& op, double tol = kPosTol) {
  return lambda_min(op) >= -tol;
}

inline Eigen::VectorXd eigenvalues(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Mat> es(op.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Phase convention: first component with |.| > 1e-12 made real positive.
inline Vec fix_phase(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

// Extremal eigenvector of a Hermitian matrix with deterministic tie-breaking.
inline std::pair<double, Vec> extremal_eigvec(const Mat& h, bool maximize) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const auto& ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  Eigen::Index best = maximize ? n - 1 : 0;
  const double target = ev(best);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == best || std::abs(ev(i) - target) > 1e-12) continue;
    if (std::abs(es.eigenvectors()(0, i)) > std::abs(es.eigenvectors()(0, best)) + 1e-12)
      best = i;
  }
  return {target, fix_phase(es.eigenvectors().col(best))};
}

// ---------------------------------------------------------------- Paulis

inline Mat pauli(char c) {
  Mat m = Mat::Zero(2, 2);
  const cplx i(0, 1);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("bad Pauli letter ") + c);
  }
  return m;
}

inline Mat pauli_string(const std::string& label) {
  if (label.empty()) throw std::invalid_argument("empty Pauli label");
  Mat m = pauli(label[0]);
  for (size_t k = 1; k < label.size(); ++k) m = kron(m, pauli(label[k]));
  return m;
}

class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(std::initializer_list<std::pair<const std::string, double>> t) {
    for (const auto& [k, v] : t) add(k, v);
  }

  void add(const std::string& label, double coeff) {
    for (char c : label)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw std::invalid_argument("bad Pauli label " + label);
    if (!terms_.empty() && terms_.begin()->first.size() != label.size())
      throw std::invalid_argument("inconsistent Pauli label lengths");
    double v = (terms_.count(label) ? terms_[label] : 0.0) + coeff;
    if (v == 0.0)
      terms_.erase(label);
    else
      terms_[label] = v;
  }
  PauliSum& operator+=(const PauliSum& o) {
    for (const auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }
  PauliSum operator*(double c) const {
    PauliSum out;
    if (c == 0.0) return out;
    for (const auto& [k, v] : terms_) out.terms_[k] = v * c;
    return out;
  }
  const std::map<std::string, double>& terms() const { return terms_; }
  double coeff(const std::string& label) const {
    auto it = terms_.find(label);
    return it == terms_.end() ? 0.0 : it->second;
  }
  bool empty() const { return terms_.empty(); }
  int num_qubits() const {
    return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.size());
  }

 private:
  std::map<std::string, double> terms_;
};

// An empty sum needs an explicit qubit count to produce a sized zero matrix.
inline HermitianOperator pauli_to_matrix(const PauliSum& p, int n_qubits = -1) {
  int n = p.empty() ? n_qubits : p.num_qubits();
  if (n_qubits >= 0 && !p.empty() && n_qubits != n)
    throw std::invalid_argument("qubit count does not match labels");
  if (n < 1) throw std::invalid_argument("cannot size an empty Pauli sum");
  const int d = 1 << n;
  Mat m = Mat::Zero(d, d);
  for (const auto& [label, c] : p.terms()) m += c * pauli_string(label);
  return {m, Dims::qubits(n)};
}

inline PauliSum matrix_to_pauli(const HermitianOperator& op, double drop = 1e-12) {
  for (int x : op.dims().vec())
    if (x != 2) throw std::invalid_argument("matrix_to_pauli needs qubit dims");
  const int n = op.dims().size();
  const double scale = 1.0 / op.dim();
  PauliSum out;
  std::string label(n, 'I');
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  const long total = 1L << (2 * n);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int k = n - 1; k >= 0; --k) {
      label[k] = letters[c & 3];
      c >>= 2;
    }
    double v = (op.matrix() * pauli_string(label)).trace().real() * scale;
    if (std::abs(v) > drop) out.add(label, v);
  }
  return out;
}

// ---------------------------------------------------------------- Weyl / Bell

inline Mat weyl(int n, int m, int k) {
  if (n < 2) throw std::invalid_argument("weyl dimension must be >= 2");
  m = ((m % n) + n) % n;
  k = ((k % n) + n) % n;
  Mat u = Mat::Zero(n, n);
  for (int l = 0; l < n; ++l) u((l + k) % n, l) = std::polar(1.0, 2 * kPi * m * l / n);
  return u;
}

inline Vec generalized_bell(int n, int k, int l) {
  Vec psi00 = Vec::Zero(n * n);
  for (int j = 0; j < n; ++j) psi00(j * n + j) = 1.0 / std::sqrt(double(n));
  return kron(Mat(Mat::Identity(n, n)), weyl(n, k, l)) * psi00;
}

inline HermitianOperator bell_projector(int n, int k, int l) {
  return HermitianOperator::projector(generalized_bell(n, k, l), Dims({n, n}));
}

// ---------------------------------------------------------------- X-shaped

struct XShapedOperator {
  std::vector<double> s;  // diagonal entries 0..h-1
  std::vector<double> t;  // t[i] sits at diagonal position 2h-1-i
  std::vector<cplx> u;    // u[i] sits at (i, 2h-1-i)
};

inline HermitianOperator xshape_expand(const XShapedOperator& x) {
  const size_t h = x.s.size();
  if (h == 0 || x.t.size() != h || x.u.size() != h)
    throw std::invalid_argument("X-shaped parameter lengths differ");
  if ((h & (h - 1)) != 0) throw std::invalid_argument("X-shaped half length must be a power of 2");
  int n = 1;
  while ((1u << (n - 1)) < h) ++n;
  const int d = static_cast<int>(2 * h);
  Mat m = Mat::Zero(d, d);
  for (size_t i = 0; i < h; ++i) {
    const int j = d - 1 - static_cast<int>(i);
    m(i, i) = x.s[i];
    m(j, j) = x.t[i];
    m(i, j) = x.u[i];
    m(j, i) = std::conj(x.u[i]);
  }
  return {m, Dims::qubits(n)};
}

}  // namespace mirrorwit
