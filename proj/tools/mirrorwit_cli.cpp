#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mirrorwit/acceptance.hpp"
#include "mirrorwit/io.hpp"

using namespace mirrorwit;
using io::json;
namespace acc = mirrorwit::acceptance;

namespace {

struct RunConfig {
  std::uint64_t seed = 42;
  int restarts = kDefaultRestarts;
  std::string format = "json";
  std::string out;
  double tolerance = 1e-10;  // verify-pair comparisons
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

// Top-level scalars of an object as key,value rows.
Table flatten(const json& doc) {
  Table t{{"key", "value"}, {}};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!it->is_structured()) t.rows.push_back({it.key(), cell(*it)});
  return t;
}

void emit(const RunConfig& cfg, const json& doc, const Table* table = nullptr) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw UsageError("cannot write " + cfg.out);
  }
  std::ostream& os = cfg.out.empty() ? std::cout : file;
  if (cfg.format == "csv") {
    Table t = table ? *table : flatten(doc);
    for (size_t i = 0; i < t.cols.size(); ++i) os << (i ? "," : "") << csv_escape(t.cols[i]);
    os << "\n";
    for (const auto& r : t.rows) {
      for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
      os << "\n";
    }
  } else {
    os << doc.dump(2) << "\n";
  }
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string exact_or_num(double x) {
  auto r = io::to_rational(x);
  return r ? r->str() : num(x);
}

RunOptions run_options(const RunConfig& c) { return {c.restarts, c.seed}; }

Witness pick_witness(const std::string& family, const std::string& op_path) {
  if (!family.empty() && !op_path.empty()) throw UsageError("give either --family or --op");
  if (!op_path.empty()) return io::resolve_witness("file:" + op_path);
  if (family.empty()) throw UsageError("--family or --op is required");
  return io::resolve_witness(family);
}

json bounds_json(const BoundsReport& b) {
  return {{"lower", b.lower},        {"upper", b.upper},
          {"arg_lower", io::to_json(b.arg_lower)}, {"arg_upper", io::to_json(b.arg_upper)},
          {"restarts_used", b.restarts_used}, {"converged_basins", b.converged_basins},
          {"seed", b.seed},          {"monotone", b.monotone}};
}

json checks_json(const std::vector<acc::Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

// ---------------------------------------------------------------- subcommands

int cmd_catalog(const RunConfig& cfg, bool manifest_only) {
  json ws = json::array(), ss = json::array();
  Table t{{"name", "kind", "family", "dims", "trace", "mu", "mirror_class"}, {}};
  for (const auto& [name, w] : io::catalog_witnesses()) {
    json e = {{"name", name},         {"family", w.family},
              {"params", io::params_json(w.params)}, {"dims", w.op.dims().vec()},
              {"normalized", w.normalized}, {"trace", w.op.trace()}};
    std::string mu, cls;
    if (auto p = io::resolve_pair(name)) {
      e["mirror"] = {{"mu", io::number(p->mu)}, {"rescale", p->rescale}, {"class", to_string(p->m_class)}};
      if (!manifest_only) e["mirror"]["operator"] = io::to_json(p->m);
      mu = exact_or_num(p->mu);
      cls = to_string(p->m_class);
    }
    if (!manifest_only) e["operator"] = io::to_json(w.op);
    t.rows.push_back({name, "witness", w.family, json(w.op.dims().vec()).dump(), exact_or_num(w.op.trace()), mu, cls});
    ws.push_back(e);
  }
  for (const auto& name : io::catalog_state_names()) {
    auto s = io::resolve_state(name);
    json e = {{"name", name}, {"family", s.family}, {"params", io::params_json(s.params)},
              {"dims", s.op.dims().vec()}, {"ppt", is_ppt_all(s.op)}};
    if (!manifest_only) e["operator"] = io::to_json(s.op);
    t.rows.push_back({name, "state", s.family, json(s.op.dims().vec()).dump(), "1", "", ""});
    ss.push_back(e);
  }
  emit(cfg, {{"witnesses", ws}, {"states", ss}}, &t);
  return 0;
}

int cmd_window_single(const RunConfig& cfg, const Witness& raw) {
  Witness w = raw.normalized ? raw : raw.normalize();
  auto r = compute_mu_report(w.op, run_options(cfg));
  auto cls = classify_operator(w.op.reflected(r.mu), run_options(cfg));
  json doc = {{"family", w.family},
              {"params", io::params_json(w.params)},
              {"mu", io::number(r.mu)},
              {"window", {0.0, r.mu}},
              {"classification", to_string(cls)},
              {"restarts_used", r.restarts_used},
              {"converged_basins", r.converged_basins},
              {"seed", cfg.seed}};
  emit(cfg, doc);
  return 0;
}

int cmd_windows(const RunConfig& cfg, int n_min, int n_max, bool no_opt) {
  if (n_min < 2 || n_max < n_min) throw UsageError("need 2 <= n-min <= n-max");
  json rows = json::array();
  Table t{{"n", "mu_c", "mu_2m", "mu_a", "opt_c", "opt_2m", "opt_a", "delta_c", "delta_2m", "delta_a"}, {}};
  for (int n = n_min; n <= n_max; ++n) {
    const io::Rational p(std::int64_t(1) << n);
    const io::Rational c = io::Rational(1) / (p - 2), m2 = io::Rational(3, 2) / (p - 2), a = io::Rational(2) / p;
    json row = {{"n", n}, {"mu_c", io::number(c)}, {"mu_2m", io::number(m2)}, {"mu_a", io::number(a)}};
    std::vector<std::string> tr = {std::to_string(n), c.str(), m2.str(), a.str()};
    if (!no_opt) {
      auto ro = run_options(cfg);
      double oc = compute_mu(canonical_ghz_witness(n).normalize(), ro);
      double o2 = compute_mu(ghz_two_measurement_witness(n).w.normalize(), ro);
      double oa = compute_mu(alternative_ghz_witness(n).w.normalize(), ro);
      row["opt"] = {{"mu_c", io::number(oc)}, {"mu_2m", io::number(o2)}, {"mu_a", io::number(oa)}};
      row["delta"] = {{"mu_c", oc - c.value()}, {"mu_2m", o2 - m2.value()}, {"mu_a", oa - a.value()}};
      for (double v : {oc, o2, oa}) tr.push_back(exact_or_num(v));
      for (double v : {oc - c.value(), o2 - m2.value(), oa - a.value()}) tr.push_back(num(v));
    } else {
      tr.resize(t.cols.size());
    }
    rows.push_back(row);
    t.rows.push_back(tr);
  }
  emit(cfg, {{"rows", rows}, {"seed", cfg.seed}, {"restarts", cfg.restarts}}, &t);
  return 0;
}

int cmd_robustness(const RunConfig& cfg, int n_min, int n_max) {
  if (n_min < 2 || n_max < n_min) throw UsageError("need 2 <= n-min <= n-max");
  json rows = json::array();
  Table t{{"n", "w_c", "w_a", "w_2m", "trace_c", "trace_a", "trace_2m"}, {}};
  for (int n = n_min; n <= n_max; ++n) {
    const io::Rational p(std::int64_t(1) << n);
    const io::Rational c = -io::Rational(1) / (p - 2), a = -io::Rational(1) / (io::Rational(n - 1) * p),
                       m2 = -io::Rational(1) / (io::Rational(2) * (p - 2));
    auto ghz = ghz_state(n).op;
    double tc = canonical_ghz_witness(n).normalize().op.expectation(ghz);
    double ta = alternative_ghz_witness(n).w.normalize().op.expectation(ghz);
    double t2 = ghz_two_measurement_witness(n).w.normalize().op.expectation(ghz);
    rows.push_back({{"n", n},
                    {"w_c", io::number(c)},
                    {"w_a", io::number(a)},
                    {"w_2m", io::number(m2)},
                    {"trace", {{"w_c", tc}, {"w_a", ta}, {"w_2m", t2}}}});
    t.rows.push_back({std::to_string(n), c.str(), a.str(), m2.str(), num(tc), num(ta), num(t2)});
  }
  emit(cfg, {{"rows", rows}}, &t);
  return 0;
}

int cmd_bounds(const RunConfig& cfg, const Witness& w, const std::string& sense) {
  json doc = {{"family", w.family}, {"params", io::params_json(w.params)}, {"seed", cfg.seed}};
  if (sense == "both") {
    doc.update(bounds_json(separable_bounds(w.op, cfg.restarts, cfg.seed)));
  } else {
    auto r = optimize_product(w.op, sense == "min" ? Sense::min : Sense::max, cfg.restarts, cfg.seed);
    doc[sense == "min" ? "lower" : "upper"] = r.value;
    doc["arg"] = io::to_json(r.state);
    doc["restarts_used"] = r.restarts_used;
    doc["converged_basins"] = r.converged_basins;
    doc["monotone"] = r.all_monotone;
  }
  emit(cfg, doc);
  return 0;
}

int cmd_mirror(const RunConfig& cfg, const Witness& raw, const std::string& mu_text, bool normalize) {
  Witness w = normalize ? raw.normalize() : raw;
  double mu;
  json doc = {{"family", w.family}, {"params", io::params_json(w.params)}, {"normalized", w.normalized}};
  if (mu_text.empty()) {
    auto r = compute_mu_report(w.op, run_options(cfg));
    mu = r.mu;
    doc["restarts_used"] = r.restarts_used;
    doc["converged_basins"] = r.converged_basins;
  } else {
    mu = io::parse_real(mu_text);
  }
  MirrorPair p = mirror_of(w, mu, run_options(cfg));
  if (p.m_class == MirrorClass::undetermined || p.m_class == MirrorClass::witness)
    p.m_class = classify_operator(p.m, run_options(cfg));
  doc["mu"] = io::number(mu);
  doc["window"] = {0.0, mu};
  doc["classification"] = to_string(p.m_class);
  doc["lambda_min_mirror"] = lambda_min(p.m);
  doc["mirror"] = io::to_json(p.m);
  emit(cfg, doc);
  return 0;
}

int cmd_spa(const RunConfig& cfg, const Witness& w) {
  auto s = spa(w.op);
  auto m = mspa(w.op);
  json doc = {{"family", w.family},
              {"params", io::params_json(w.params)},
              {"spa", {{"shift", io::number(s.shift)}, {"lambda_min", lambda_min(s.op)}, {"operator", io::to_json(s.op)}}},
              {"mspa", {{"shift", io::number(m.shift)}, {"lambda_min", lambda_min(m.op)}, {"operator", io::to_json(m.op)}}}};
  emit(cfg, doc);
  return 0;
}

int cmd_detect(const RunConfig& cfg, const std::string& family, const std::string& op_path,
               const std::string& state) {
  auto rho = io::resolve_state(state);
  DetectionVerdict v;
  json doc;
  std::optional<MirrorPair> pair;
  if (op_path.empty() && !family.empty()) pair = io::resolve_pair(family);
  if (pair) {
    v = detect(*pair, rho);
    doc["mu"] = io::number(pair->mu);
    doc["mirror_value"] = pair->m.expectation(rho.op);
  } else {
    v = detect(pick_witness(family, op_path), rho);
  }
  doc["witness"] = v.witness_id;
  doc["state"] = v.state_id;
  doc["value"] = io::number(v.value);
  doc["bound_violated"] = to_string(v.bound_violated);
  doc["detected"] = v.bound_violated != Bound::none;
  doc["state_ppt"] = is_ppt_all(rho.op);
  emit(cfg, doc);
  return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& family, const std::string& samples,
                 const std::string& from, const std::string& to, int steps) {
  Family f = parse_family(family);
  std::vector<double> xs;
  if (!samples.empty()) {
    xs = io::parse_list(samples);
  } else {
    if (steps < 2) throw UsageError("--steps must be at least 2");
    double a = io::parse_real(from), b = io::parse_real(to);
    for (int i = 0; i < steps; ++i) xs.push_back(a + (b - a) * i / (steps - 1));
  }
  DecompOptions dopt;
  dopt.seed = cfg.seed;
  auto curve = classify_mirror_family(f, xs, run_options(cfg), dopt);
  json rows = json::array();
  Table t{{"param", "a", "mu", "lambda_min_M", "tier"}, {}};
  for (const auto& r : curve.rows) {
    rows.push_back({{"param", r.param}, {"a", r.a}, {"mu", io::number(r.mu)}, {"lambda_min_M", r.lambda_min_m}, {"tier", r.tier}});
    t.rows.push_back({num(r.param), num(r.a), num(r.mu), num(r.lambda_min_m), r.tier});
  }
  emit(cfg, {{"family", family}, {"rows", rows}, {"boundaries", curve.boundaries}}, &t);
  return 0;
}

// ---------------------------------------------------------------- verify-pair

using acc::Check;
using acc::detail::flag;
using acc::detail::fmt;

Check identity_check(const MirrorPair& p, double tol) {
  double d = p.identity_defect();
  return flag("mu I - W = c M", d <= tol, "defect " + fmt(d) + ", mu " + fmt(p.mu) + ", c " + fmt(p.rescale));
}

Check value_check(const std::string& name, double got, double want, double tol) {
  return flag(name, std::abs(got - want) <= tol, "got " + fmt(got) + ", expected " + fmt(want));
}

std::vector<Check> verify_case(const RunConfig& cfg, const std::string& id) {
  const double tol = cfg.tolerance;
  const auto ro = run_options(cfg);
  std::vector<Check> out;
  auto [kind, arg] = io::head_tail(id);
  if (kind == "example1") {
    auto p = bell_pair_witness("example1");
    out.push_back(identity_check(p, tol));
    out.push_back(value_check("Tr[W phi+]", p.w.op.expectation(bell_projector(2, 0, 0)), -0.25, tol));
    out.push_back(value_check("Tr[M psi-]", p.m.expectation(bell_projector(2, 1, 1)), -0.25, tol));
    auto b = separable_bounds(p.w.op, cfg.restarts, cfg.seed);
    out.push_back(flag("separable window [0, 1/2]", std::abs(b.lower) <= 1e-7 && std::abs(b.upper - 0.5) <= 1e-7,
                       "[" + fmt(b.lower) + ", " + fmt(b.upper) + "]"));
    auto cls = classify_operator(p.m, ro);
    out.push_back(flag("M is a witness", cls == MirrorClass::witness, to_string(cls)));
  } else if (kind == "example2") {
    auto p = bell_pair_witness("example2");
    out.push_back(identity_check(p, tol));
    out.push_back(flag("M = |phi+><phi+|", max_abs(p.m.matrix() - bell_projector(2, 0, 0).matrix()) <= tol));
    auto cls = classify_operator(p.m, ro);
    out.push_back(flag("M positive", cls == MirrorClass::positive, to_string(cls) + ", lambda_min " + fmt(lambda_min(p.m))));
    out.push_back(value_check("Tr[W phi+]", p.w.op.expectation(bell_projector(2, 0, 0)), -0.5, tol));
  } else if (kind == "ghz-alt") {
    const int n = io::parse_int(arg);
    auto p = alternative_ghz_witness(n);
    const double pw = std::pow(2.0, n);
    out.push_back(identity_check(p, tol));
    out.push_back(value_check("Tr[W_a GHZ]", p.w.op.expectation(ghz_state(n).op), -1 / ((n - 1) * pw), tol));
    out.push_back(value_check("Tr[M_a GHZ_alt]", p.m.expectation(ghz_alt_state(n).op), -1 / ((n - 1) * pw), tol));
    double mu = compute_mu(p.w, ro);
    out.push_back(value_check("separable maximum = 2^(1-n)", mu, 2 / pw, 1e-6));
    auto cls = classify_operator(p.m, ro);
    out.push_back(flag("M_a is a witness", cls == MirrorClass::witness, to_string(cls)));
  } else if (kind == "graph") {
    Graph g = io::graph_from_json(io::read_json_file(arg));
    if (g.n < 2) throw UsageError("graph needs at least two vertices");
    auto p = graph_witness(g);
    out.push_back(identity_check(p, tol));
    auto proj = graph_projector(graph_generators(g));
    out.push_back(value_check("Tr[W G] = -1", p.w.op.expectation(proj), -1.0, tol));
    auto u = graph_flip_unitary(g);
    double lu = max_abs(conjugate_by(u, p.w.op.matrix()) - p.m.matrix());
    out.push_back(flag("M = U W U^dag", lu <= tol, "err " + fmt(lu)));
    auto b = separable_bounds(p.w.op, cfg.restarts, cfg.seed);
    out.push_back(flag("W block-positive", b.lower >= -1e-7, "separable window [" + fmt(b.lower) + ", " + fmt(b.upper) + "]"));
  } else if (kind == "w3q") {
    auto bits = io::parse_bits(arg);
    auto p = w3q_pair(bits[0], bits[1], bits[2]);
    out.push_back(identity_check(p, tol));
    auto y = pauli_locals("YYY");
    out.push_back(flag("M = Y W Y", lu_equivalent_by(p.w.op, p.m, y)));
    const double b = 2.0, c = 0.5;
    auto rho = rho_bc(b, c);
    double direct = p.w.op.expectation(rho.op);
    auto r = rijk(bc_params(b, c));
    out.push_back(value_check("coefficient expansion", expectation_via_coeffs(bits[0], bits[1], bits[2], r), direct, 1e-12));
    auto pm = acc::detail::pm;
    double printed = (2 * c + 6 + 4 * (pm(bits[0]) - pm(bits[2]) + pm(bits[0] + bits[1] + bits[2] + 1))) / (b + c + 6);
    out.push_back(value_check("Tr[W rho(2,1/2)] against the closed form", direct, printed, 1e-12));
    if (printed < 0) out.push_back(flag("rho(2,1/2) detected", direct < -kPosTol, "Tr " + fmt(direct)));
    out.push_back(flag("rho(2,1/2) PPT", is_ppt_all(rho.op)));
  } else if (kind == "pair33") {
    auto q = pair33();
    out.push_back(identity_check(q.pair, tol));
    out.push_back(value_check("Tr[W rho_W]", q.pair.w.op.expectation(q.rho_w.op), -0.4, 1e-12));
    out.push_back(value_check("Tr[M rho_M]", q.pair.m.expectation(q.rho_m.op), -0.4, 1e-12));
    out.push_back(flag("rho_W, rho_M PPT", is_ppt_all(q.rho_w.op) && is_ppt_all(q.rho_m.op)));
    Mat uu = kron(q.u, Mat(q.u.conjugate()));
    double lu = max_abs(conjugate_by(uu, q.pair.w.op.matrix()) - q.pair.m.matrix());
    out.push_back(flag("M = (U x U*) W (U x U*)^dag", lu <= tol, "err " + fmt(lu)));
  } else if (kind == "class1" || kind == "class2") {
    const double th = io::parse_real(arg);
    auto w = wabcd_class(kind == "class1" ? WClass::I : WClass::II, th);
    auto prm = wabcd_params(kind == "class1" ? WClass::I : WClass::II, th);
    double s1 = prm[0] + prm[1] + prm[2] + prm[3], s2 = 0;
    for (double v : prm) s2 += v * v;
    out.push_back(flag("a+b+c+d = a^2+b^2+c^2+d^2 = 3", std::abs(s1 - 3) <= 1e-12 && std::abs(s2 - 3) <= 1e-12,
                       fmt(s1) + ", " + fmt(s2)));
    auto b = separable_bounds(w.op, cfg.restarts, cfg.seed);
    out.push_back(flag("W block-positive", b.lower >= -1e-7, "lower " + fmt(b.lower)));
    auto p = mirror_of(w, b.upper, ro);
    out.push_back(identity_check(p, tol));
    auto cls = classify_operator(p.m, ro);
    out.push_back(flag("mirror classified", cls != MirrorClass::undetermined,
                       to_string(cls) + ", mu " + fmt(b.upper) + ", lambda_min " + fmt(lambda_min(p.m))));
    if (kind == "class2") {
      auto tau = tau_state(4, 1, 1).op;
      auto g = generalized_pair(w.op, weyl(4, 1, 1), {tau});
      out.push_back(value_check("Tr[W tau]", w.op.expectation(tau), (std::cos(th) - std::sin(th) - 3) / 4, tol));
      out.push_back(value_check("Tr[M tau] (Weyl U_11)", g.m.expectation(tau), (std::cos(th) + std::sin(th) - 3) / 4, tol));
    }
  } else {
    throw UsageError("unknown case '" + id + "'");
  }
  return out;
}

int cmd_verify_pair(const RunConfig& cfg, const std::string& id) {
  auto checks = verify_case(cfg, id);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass;
  emit(cfg, {{"case", id}, {"checks", checks_json(checks)}, {"passed", ok}});
  return ok ? 0 : 1;
}

int cmd_selftest(const RunConfig& cfg, bool quick, bool verbose) {
  acc::Options opt{quick, cfg.seed, cfg.restarts};
  json crit = json::array();
  int failed = 0;
  for (const auto& run : acc::suite()) {
    acc::Criterion c;
    try {
      c = run(opt);
    } catch (const std::exception& e) {
      c.title = "threw";
      c.checks.push_back({"exception", false, e.what()});
    }
    acc::print(std::cerr, c, verbose);
    failed += !c.pass();
    crit.push_back({{"id", c.id}, {"title", c.title}, {"status", acc::status(c)}, {"checks", checks_json(c.checks)}});
  }
  json doc = {{"criteria", crit}, {"failed", failed}, {"passed", failed == 0}, {"seed", cfg.seed}, {"quick", quick}};
  Table t{{"id", "title", "status"}, {}};
  for (const auto& c : crit) t.rows.push_back({std::to_string(c["id"].get<int>()), c["title"], c["status"]});
  emit(cfg, doc, &t);
  return failed ? 1 : 0;
}

void apply_config(CLI::App& app, RunConfig& cfg, const std::string& path) {
  json j = io::read_json_file(path);
  if (j.contains("seed") && !app.count("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("restarts") && !app.count("--restarts")) cfg.restarts = j["restarts"].get<int>();
  if (j.contains("format") && !app.count("--format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("out") && !app.count("--out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("format must be json or csv");
  if (cfg.restarts < 1) throw UsageError("restarts must be positive");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mirrored entanglement witnesses: construction, windows, detection and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string config_path;
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "seesaw restarts")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--config", config_path, "JSON file with seed, restarts, format, out, tolerance")->check(CLI::ExistingFile);

  std::function<int()> action;
  std::string family, op_path, state, mu_text, sense = "both", samples, from = "0", to = "2pi", case_id;
  int n_min = 2, n_max = 5, steps = 13;
  bool flag_a = false, flag_b = false;

  auto* cat = app.add_subcommand("catalog", "dump catalog witnesses and states");
  cat->add_flag("--manifest-only", flag_a, "omit matrices");
  cat->callback([&] { action = [&] { return cmd_catalog(cfg, flag_a); }; });

  auto* win = app.add_subcommand("windows", "separability windows of the GHZ families, or of one witness");
  win->add_option("--n-min", n_min)->capture_default_str();
  win->add_option("--n-max", n_max)->capture_default_str();
  win->add_flag("--no-opt", flag_a, "closed forms only");
  win->add_option("--family", family, "single witness instead of the GHZ table");
  win->add_option("--op", op_path, "single witness from Operator JSON");
  win->callback([&] {
    action = [&] {
      if (!family.empty() || !op_path.empty()) return cmd_window_single(cfg, pick_witness(family, op_path));
      return cmd_windows(cfg, n_min, n_max, flag_a);
    };
  });

  auto* rob = app.add_subcommand("robustness", "GHZ expectation values of the three GHZ witnesses");
  rob->add_option("--n-min", n_min)->capture_default_str();
  rob->add_option("--n-max", n_max)->capture_default_str();
  rob->callback([&] { action = [&] { return cmd_robustness(cfg, n_min, n_max); }; });

  auto* bnd = app.add_subcommand("bounds", "separable bounds of an operator");
  bnd->add_option("--op", op_path, "Operator JSON file");
  bnd->add_option("--family", family, "catalog witness name");
  bnd->add_option("--sense", sense)->capture_default_str()->check(CLI::IsMember({"min", "max", "both"}));
  bnd->callback([&] { action = [&] { return cmd_bounds(cfg, pick_witness(family, op_path), sense); }; });

  auto* mir = app.add_subcommand("mirror", "mirror of a witness");
  mir->add_option("--family", family);
  mir->add_option("--op", op_path);
  mir->add_option("--mu", mu_text, "mirror scalar (default: separable maximum)");
  mir->add_flag("--normalize", flag_b, "trace-normalize W first");
  mir->callback([&] { action = [&] { return cmd_mirror(cfg, pick_witness(family, op_path), mu_text, flag_b); }; });

  auto* sp = app.add_subcommand("spa", "structural physical approximation and its mirrored version");
  sp->add_option("--family", family);
  sp->add_option("--op", op_path);
  sp->callback([&] { action = [&] { return cmd_spa(cfg, pick_witness(family, op_path)); }; });

  auto* det = app.add_subcommand("detect", "expectation of a witness (or pair) on a state");
  det->add_option("--family", family);
  det->add_option("--op", op_path);
  det->add_option("--state", state)->required();
  det->callback([&] { action = [&] { return cmd_detect(cfg, family, op_path, state); }; });

  auto* cls = app.add_subcommand("classify", "mirror classification along choi_phi, class1 or class2");
  cls->add_option("--family", family)->required();
  cls->add_option("--samples", samples, "comma-separated parameters");
  cls->add_option("--from", from)->capture_default_str();
  cls->add_option("--to", to)->capture_default_str();
  cls->add_option("--steps", steps)->capture_default_str();
  cls->callback([&] { action = [&] { return cmd_classify(cfg, family, samples, from, to, steps); }; });

  auto* ver = app.add_subcommand("verify-pair",
                                 "check a known pair: example1, example2, ghz-alt:n, graph:<file>, w3q:ijk, "
                                 "pair33, class1:theta, class2:theta");
  ver->add_option("case", case_id)->required();
  ver->callback([&] { action = [&] { return cmd_verify_pair(cfg, case_id); }; });

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  st->add_flag("--quick", flag_a, "skip optimization-heavy criteria");
  st->add_flag("-v,--verbose", flag_b, "print every sub-check");
  st->callback([&] { action = [&] { return cmd_selftest(cfg, flag_a, flag_b); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (!config_path.empty()) apply_config(app, cfg, config_path);
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON input: " << e.what() << "\n";
    return 2;
  } catch (const NotBlockPositive& e) {
    std::cerr << "error: " << e.what() << " (product value " << e.value << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
