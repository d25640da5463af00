#pragma once

#include "mirrorwit/catalog.hpp"
#include "mirrorwit/sepopt.hpp"

namespace mirrorwit {

inline constexpr double kWitnessGap = 1e-7;

struct NotBlockPositive : std::domain_error {
  ProductState violator;
  double value;
  NotBlockPositive(const std::string& what, ProductState p, double v)
      : std::domain_error(what), violator(std::move(p)), value(v) {}
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Window {
  double lo = 0;
  double hi = 0;
};

struct RunOptions {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 42;
};

inline MirrorClass classify_operator(const HermitianOperator& m, RunOptions opt = {}) {
  const double lmin = lambda_min(m);
  if (lmin >= -kPosTol) return MirrorClass::positive;
  if (lmin < -kWitnessGap &&
      block_positive(m, kBlockPosTol, opt.restarts, opt.seed).block_positive)
    return MirrorClass::witness;
  return MirrorClass::undetermined;
}

inline MirrorPair mirror_of(const Witness& w, double mu, RunOptions opt = {}) {
  HermitianOperator m = w.op.reflected(mu);
  auto bp = block_positive(m, kBlockPosTol, opt.restarts, opt.seed);
  if (!bp.block_positive)
    throw NotBlockPositive("mu is below the separable maximum of W", bp.arg, bp.min_value);
  MirrorClass cls = lambda_min(m) >= -kPosTol ? MirrorClass::positive
                    : lambda_min(m) < -kWitnessGap ? MirrorClass::witness
                                                   : MirrorClass::undetermined;
  return {w, m, mu, 1.0, cls};
}

struct MuResult {
  double mu = 0;
  ProductState arg;
  int restarts_used = 0;
  int converged_basins = 0;
  bool monotone = true;
};

// Separable maximum of W; escalates the restart budget when the two best basins disagree.
inline MuResult compute_mu_report(const HermitianOperator& w, RunOptions opt = {}) {
  auto top_gap = [](const OptimizeResult& r) {
    auto v = r.restart_values;
    std::sort(v.begin(), v.end(), std::greater<>());
    return v.size() < 2 ? 0.0 : v[0] - v[1];
  };
  auto r = optimize_product(w, Sense::max, opt.restarts, opt.seed);
  if (top_gap(r) > 1e-6 && opt.restarts < kEscalatedRestarts) {
    r = optimize_product(w, Sense::max, kEscalatedRestarts, opt.seed);
    if (top_gap(r) > 1e-6)
      throw ConvergenceError("separable maximum did not stabilize within the restart budget");
  }
  return {r.value, r.state, r.restarts_used, r.converged_basins, r.all_monotone};
}

inline double compute_mu(const Witness& w, RunOptions opt = {}) {
  return compute_mu_report(w.op, opt).mu;
}

struct Shifted {
  HermitianOperator op;
  double shift;
};

inline Shifted spa(const HermitianOperator& w) {
  const double p = std::max(0.0, -lambda_min(w));
  return {w + HermitianOperator::identity(w.dims()).scaled(p), p};
}

inline Shifted mspa(const HermitianOperator& w) {
  const double q = lambda_max(w);
  return {w.reflected(q), q};
}

inline Window window(const Witness& w, RunOptions opt = {}) {
  Witness n = w.normalized ? w : w.normalize();
  return {0.0, compute_mu(n, opt)};
}

inline MirrorPair finer_shift(const MirrorPair& pair, const HermitianOperator& p, double eps,
                              RunOptions opt = {}) {
  if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
  if (!is_psd(p)) throw std::invalid_argument("shift operator must be positive semidefinite");
  if (eps == 0) return pair;
  MirrorPair out = pair;
  out.w.op = pair.w.op - p.scaled(eps);
  auto bp = block_positive(out.w.op, kBlockPosTol, opt.restarts, opt.seed);
  if (!bp.block_positive)
    throw NotBlockPositive("shifted witness is not block-positive", bp.arg, bp.min_value);
  out.m = pair.m + p.scaled(eps / pair.rescale);
  return out;
}

struct PovmCloud {
  HermitianOperator w;
  HermitianOperator m;
  double mu;
  double lower;
  double upper;
};

inline PovmCloud povm_cloud(const HermitianOperator& o, RunOptions opt = {}) {
  auto b = separable_bounds(o, opt.restarts, opt.seed);
  return {o.reflected(b.lower).scaled(-1.0), o.reflected(b.upper), b.upper - b.lower, b.lower,
          b.upper};
}

struct GeneralizedPair {
  HermitianOperator m;
  HermitianOperator k;
  bool common_detection = false;  // some probe has Tr[W rho] < 0 and Tr[M rho] < 0
  std::vector<std::pair<double, double>> probe_values;
};

inline GeneralizedPair generalized_pair(const HermitianOperator& w, const Mat& u_local,
                                        const std::vector<HermitianOperator>& probes = {}) {
  const int d = static_cast<int>(u_local.rows());
  if (max_abs(u_local.adjoint() * u_local - Mat::Identity(d, d)) > 1e-10)
    throw std::invalid_argument("local operator is not unitary");
  const Dims& dims = w.dims();
  if (dims[dims.size() - 1] != d) throw std::invalid_argument("unitary does not match last subsystem");
  const int rest = w.dim() / d;
  Mat full = kron(Mat(Mat::Identity(rest, rest)), u_local);
  HermitianOperator m = conjugate_by(full, w);
  GeneralizedPair out{m, w + m};
  for (const auto& rho : probes) {
    double a = w.expectation(rho), b = m.expectation(rho);
    out.probe_values.push_back({a, b});
    if (a < -kPosTol && b < -kPosTol) out.common_detection = true;
  }
  return out;
}

}  // namespace mirrorwit
