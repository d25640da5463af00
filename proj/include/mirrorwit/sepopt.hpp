#pragma once

#include "mirrorwit/linops.hpp"

#include <cstdint>
#include <random>

namespace mirrorwit {

enum class Sense { min, max };

inline constexpr int kDefaultRestarts = 64;
inline constexpr int kEscalatedRestarts = 512;
inline constexpr double kSeesawTol = 1e-11;
inline constexpr int kMaxSweeps = 500;
inline constexpr double kBlockPosTol = 1e-7;
inline constexpr double kZeroTol = 1e-8;

struct ProductState {
  std::vector<Vec> locals;

  Vec vector() const { return tensor_vecs(locals); }
  Dims dims() const {
    std::vector<int> d;
    for (const auto& v : locals) d.push_back(static_cast<int>(v.size()));
    return Dims(d);
  }
  static ProductState basis(const Dims& d, const std::vector<int>& digits) {
    ProductState p;
    for (int k = 0; k < d.size(); ++k) {
      Vec v = Vec::Zero(d[k]);
      v(digits.at(k)) = 1.0;
      p.locals.push_back(v);
    }
    return p;
  }
};

// Deterministic stream per (seed, restart): reproducible regardless of run order.
inline std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart),
                    static_cast<std::uint32_t>(restart >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

inline Vec haar_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline ProductState haar_product(const Dims& d, std::mt19937_64& rng) {
  ProductState p;
  for (int k = 0; k < d.size(); ++k) p.locals.push_back(haar_vector(d[k], rng));
  return p;
}

// Contraction plan for the single-party effective operators of an observable.
class ProductContractor {
 public:
  explicit ProductContractor(const HermitianOperator& op) : op_(op), d_(op.dims()) {
    if (d_.size() < 1) throw std::invalid_argument("observable without subsystems");
    const int n = op.dim();
    digit_.assign(d_.size(), std::vector<int>(n));
    rest_.assign(d_.size(), std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
      auto dig = d_.digits(i);
      for (int j = 0; j < d_.size(); ++j) {
        digit_[j][i] = dig[j];
        int r = 0;
        for (int k = 0; k < d_.size(); ++k)
          if (k != j) r = r * d_[k] + dig[k];
        rest_[j][i] = r;
      }
    }
  }

  const Dims& dims() const { return d_; }
  const HermitianOperator& op() const { return op_; }

  double value(const ProductState& p) const { return op_.expectation_vec(p.vector()); }

  Mat effective(const ProductState& p, int j) const {
    std::vector<Vec> others;
    for (int k = 0; k < d_.size(); ++k)
      if (k != j) others.push_back(p.locals[k]);
    Vec rest = others.empty() ? Vec::Ones(1) : tensor_vecs(others);
    const int n = op_.dim();
    Vec y(n);
    for (int i = 0; i < n; ++i) y(i) = rest(rest_[j][i]);
    const Mat& o = op_.matrix();
    Mat e = Mat::Zero(d_[j], d_[j]);
    for (int c = 0; c < n; ++c) {
      const cplx yc = y(c);
      const int b = digit_[j][c];
      for (int r = 0; r < n; ++r) e(digit_[j][r], b) += std::conj(y(r)) * o(r, c) * yc;
    }
    return 0.5 * (e + e.adjoint());
  }

 private:
  HermitianOperator op_;
  Dims d_;
  std::vector<std::vector<int>> digit_;
  std::vector<std::vector<int>> rest_;
};

struct SeesawRun {
  double value = 0;
  ProductState state;
  std::vector<double> trace;  // objective after each sweep
  int sweeps = 0;
  bool monotone = true;
};

inline SeesawRun seesaw_from(const ProductContractor& pc, Sense sense, ProductState start,
                             double tol = kSeesawTol, int max_sweeps = kMaxSweeps) {
  const bool maximize = sense == Sense::max;
  const double sgn = maximize ? 1.0 : -1.0;
  SeesawRun run;
  run.state = std::move(start);
  double prev = pc.value(run.state);
  const double slack = 1e-12 * std::max(1.0, max_abs(pc.op().matrix()));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int j = 0; j < pc.dims().size(); ++j)
      run.state.locals[j] = extremal_eigvec(pc.effective(run.state, j), maximize).second;
    double cur = pc.value(run.state);
    run.trace.push_back(cur);
    run.sweeps = sweep + 1;
    double gain = sgn * (cur - prev);
    if (gain < -slack) run.monotone = false;
    prev = cur;
    if (gain < tol) break;
  }
  run.value = prev;
  return run;
}

// Newton refinement of the Rayleigh quotient on the product manifold.
// Only strict improvements are accepted, so it never undoes the seesaw result.
inline SeesawRun newton_polish(const ProductContractor& pc, Sense sense, SeesawRun run,
                               int max_iter = 40) {
  const double sgn = sense == Sense::max ? 1.0 : -1.0;
  const Dims& dims = pc.dims();
  const int parties = dims.size();
  const Mat o = sgn * pc.op().matrix();
  const int dim = pc.op().dim();

  auto rayleigh = [&](const std::vector<Vec>& ws) {
    Vec psi = tensor_vecs(ws);
    return psi.dot(o * psi).real() / psi.squaredNorm();
  };

  std::vector<Vec> vs = run.state.locals;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<Mat> tangents;
    int nc = 0;
    for (int j = 0; j < parties; ++j) {
      const int d = dims[j];
      Mat proj = Mat::Identity(d, d) - vs[j] * vs[j].adjoint();
      Eigen::SelfAdjointEigenSolver<Mat> es(proj);
      tangents.push_back(es.eigenvectors().rightCols(d - 1));
      nc += 2 * (d - 1);
    }
    auto unpack = [&](const Eigen::VectorXd& x) {
      std::vector<Vec> ws;
      int p = 0;
      for (int j = 0; j < parties; ++j) {
        const int m = dims[j] - 1;
        Vec z(m);
        for (int a = 0; a < m; ++a) z(a) = cplx(x(p + a), x(p + m + a));
        p += 2 * m;
        ws.push_back(vs[j] + tangents[j] * z);
      }
      return ws;
    };
    auto gradient = [&](const Eigen::VectorXd& x) {
      auto ws = unpack(x);
      Vec psi = tensor_vecs(ws);
      const double den = psi.squaredNorm();
      const double r = psi.dot(o * psi).real() / den;
      Vec res = o * psi - r * psi;
      Eigen::VectorXd g(nc);
      int p = 0;
      for (int j = 0; j < parties; ++j) {
        const int m = dims[j] - 1;
        for (int part = 0; part < 2; ++part) {
          const cplx ph = part == 0 ? cplx(1, 0) : cplx(0, 1);
          for (int a = 0; a < m; ++a) {
            auto parts = ws;
            parts[j] = ph * tangents[j].col(a);
            g(p + part * m + a) = 2.0 * res.dot(tensor_vecs(parts)).real() / den;
          }
        }
        p += 2 * m;
      }
      return g;
    };

    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(nc);
    const Eigen::VectorXd g0 = gradient(x0);
    if (g0.norm() < 1e-15) break;
    const double h = 1e-5;
    Eigen::MatrixXd hess(nc, nc);
    for (int a = 0; a < nc; ++a) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(nc);
      e(a) = h;
      hess.col(a) = (gradient(e) - gradient(-e)) / (2 * h);
    }
    hess = 0.5 * (hess + hess.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    Eigen::VectorXd lam = es.eigenvalues().cwiseAbs().cwiseMax(1e-14);
    Eigen::VectorXd step = es.eigenvectors() * ((es.eigenvectors().transpose() * g0).cwiseQuotient(lam));

    const double f0 = rayleigh(vs);
    double t = 1.0;
    bool accepted = false;
    std::vector<Vec> next;
    while (t > 1e-8) {
      next = unpack(t * step);
      if (rayleigh(next) > f0) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    for (auto& w : next) w = fix_phase(w / w.norm());
    vs = next;
  }
  ProductState ps{vs};
  double v = pc.value(ps);
  if (sgn * (v - run.value) > 0) {
    run.state = ps;
    run.value = v;
  }
  return run;
}

struct OptimizeResult {
  double value = 0;
  ProductState state;
  int restarts_used = 0;
  int converged_basins = 0;  // restarts ending within 1e-8 of the best value
  bool all_monotone = true;
  std::vector<double> restart_values;
};

inline OptimizeResult optimize_product(const HermitianOperator& op, Sense sense,
                                       int restarts = kDefaultRestarts,
                                       std::uint64_t seed = 42, double tol = kSeesawTol,
                                       int polish_top = 8) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  ProductContractor pc(op);
  const double sgn = sense == Sense::max ? 1.0 : -1.0;
  std::vector<SeesawRun> runs;
  runs.reserve(restarts);
  OptimizeResult out;
  for (int r = 0; r < restarts; ++r) {
    auto rng = restart_rng(seed, static_cast<std::uint64_t>(r));
    runs.push_back(seesaw_from(pc, sense, haar_product(op.dims(), rng), tol));
    out.all_monotone = out.all_monotone && runs.back().monotone;
  }
  std::vector<int> order(restarts);
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](int a, int b) {
    if (runs[a].value != runs[b].value) return sgn * runs[a].value > sgn * runs[b].value;
    return a < b;
  };
  std::sort(order.begin(), order.end(), better);
  for (int k = 0; k < std::min(polish_top, restarts); ++k)
    runs[order[k]] = newton_polish(pc, sense, runs[order[k]]);
  std::sort(order.begin(), order.end(), better);

  const SeesawRun& best = runs[order.front()];
  out.value = best.value;
  out.state = best.state;
  out.restarts_used = restarts;
  for (const auto& run : runs) {
    out.restart_values.push_back(run.value);
    if (std::abs(run.value - best.value) <= 1e-8) ++out.converged_basins;
  }
  return out;
}

inline SeesawRun seesaw(const HermitianOperator& op, Sense sense, int restarts = kDefaultRestarts,
                        double tol = kSeesawTol, std::uint64_t seed = 42) {
  auto r = optimize_product(op, sense, restarts, seed, tol);
  SeesawRun run;
  run.value = r.value;
  run.state = r.state;
  run.monotone = r.all_monotone;
  return run;
}

struct BoundsReport {
  double lower = 0;
  double upper = 0;
  ProductState arg_lower;
  ProductState arg_upper;
  int restarts_used = 0;
  int converged_basins = 0;
  std::uint64_t seed = 42;
  bool monotone = true;
};

inline BoundsReport separable_bounds(const HermitianOperator& op,
                                     int restarts = kDefaultRestarts, std::uint64_t seed = 42) {
  auto lo = optimize_product(op, Sense::min, restarts, seed);
  auto hi = optimize_product(op, Sense::max, restarts, seed);
  BoundsReport rep;
  rep.lower = lo.value;
  rep.upper = hi.value;
  rep.arg_lower = lo.state;
  rep.arg_upper = hi.state;
  rep.restarts_used = restarts;
  rep.converged_basins = std::min(lo.converged_basins, hi.converged_basins);
  rep.seed = seed;
  rep.monotone = lo.all_monotone && hi.all_monotone;
  return rep;
}

struct BlockPositivity {
  bool block_positive = false;
  double min_value = 0;
  ProductState arg;  // minimizer; the counterexample when not block-positive
};

inline BlockPositivity block_positive(const HermitianOperator& op, double tol = kBlockPosTol,
                                      int restarts = kDefaultRestarts, std::uint64_t seed = 42) {
  auto r = optimize_product(op, Sense::min, restarts, seed);
  return {r.value >= -tol, r.value, r.state};
}

inline double product_overlap(const ProductState& a, const ProductState& b) {
  return std::norm(a.vector().dot(b.vector()));
}

inline int spanning_dimension(const std::vector<ProductState>& states, double rel = 1e-8) {
  if (states.empty()) throw std::invalid_argument("spanning_dimension of empty set");
  const Vec first = states.front().vector();
  Mat rows(static_cast<Eigen::Index>(states.size()), first.size());
  for (size_t i = 0; i < states.size(); ++i) rows.row(i) = states[i].vector().transpose();
  Eigen::JacobiSVD<Mat> svd(rows);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * sv(0)) ++rank;
  return rank;
}

struct ZeroSearchOptions {
  int max_attempts = 0;  // 0: 64 * count_target
  double zero_tol = kZeroTol;
  double dedup = 1e-6;
};

// Stops once count_target distinct zeros span min(count_target, dim) dimensions.
inline std::vector<ProductState> zero_set_search(const HermitianOperator& w, int count_target,
                                                 std::uint64_t seed = 42,
                                                 const std::vector<ProductState>& candidates = {},
                                                 ZeroSearchOptions opt = {}) {
  ProductContractor pc(w);
  std::vector<ProductState> found;
  auto consider = [&](const ProductState& p) {
    if (std::abs(pc.value(p)) > opt.zero_tol) return;
    for (const auto& q : found)
      if (product_overlap(p, q) > 1.0 - opt.dedup) return;
    found.push_back(p);
  };
  for (const auto& c : candidates) consider(c);
  const int want_span = std::min(count_target, w.dim());
  auto done = [&] {
    return static_cast<int>(found.size()) >= count_target &&
           spanning_dimension(found) >= want_span;
  };
  const int attempts = opt.max_attempts > 0 ? opt.max_attempts : 64 * count_target;
  // Odd attempts first push away from the span already covered: minimize W + lam * P_span,
  // then descend on W alone from there.
  const double lam = std::max(1.0, eig_extremes(w).max - eig_extremes(w).min);
  for (int a = 0; a < attempts && !(found.size() > 0 && done()); ++a) {
    auto rng = restart_rng(seed, 0x2e70000ULL + static_cast<std::uint64_t>(a));
    ProductState start = haar_product(w.dims(), rng);
    if (a % 2 == 1 && !found.empty()) {
      Mat basis(w.dim(), static_cast<Eigen::Index>(found.size()));
      for (size_t k = 0; k < found.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = found[k].vector();
      Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      Eigen::Index rank = 0;
      while (rank < sv.size() && sv(rank) > 1e-8 * sv(0)) ++rank;
      Mat u = svd.matrixU().leftCols(rank);
      HermitianOperator pen(w.matrix() + lam * (u * u.adjoint()), w.dims());
      ProductContractor ppc(pen);
      start = seesaw_from(ppc, Sense::min, start).state;
    }
    auto run = seesaw_from(pc, Sense::min, start);
    run = newton_polish(pc, Sense::min, run);
    consider(run.state);
  }
  return found;
}

}  // namespace mirrorwit
