#pragma once
// JSON I/O, exact rationals and name resolution for the command-line front end.

#include <fstream>
#include <numeric>
#include <optional>

#include "json.hpp"
#include "mirrorwit/analysis.hpp"

namespace mirrorwit::io {

using json = nlohmann::json;

// ---------------------------------------------------------------- rationals

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) num = -num, den = -den;
    auto g = std::gcd(num, den);
    if (g > 1) num /= g, den /= g;
  }
  double value() const { return double(num) / double(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  Rational operator-() const { return {-num, den}; }
  bool operator==(const Rational&) const = default;
};

// Best rational with denominator <= max_den (continued fractions); nullopt if none is within tol.
inline std::optional<Rational> to_rational(double x, std::int64_t max_den = 100000, double tol = 1e-12) {
  if (!std::isfinite(x)) return std::nullopt;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (std::abs(a) > 9e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(double(p1) / double(q1) - x) <= tol * std::max(1.0, std::abs(x))) return Rational(p1, q1);
    double frac = r - a;
    if (frac < 1e-300) break;
    r = 1 / frac;
  }
  return std::nullopt;
}

// {"exact": "p/q" or null, "value": float}
inline json number(double x) {
  auto r = to_rational(x);
  return {{"exact", r ? json(r->str()) : json(nullptr)}, {"value", x}};
}

inline json number(const Rational& r) { return {{"exact", r.str()}, {"value", r.value()}}; }

// ---------------------------------------------------------------- scalars

// Accepts plain reals, "p/q", and multiples of pi such as "pi/3", "-3pi/4", "2*pi".
inline double parse_real(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw std::invalid_argument("empty number");
  auto full = [](const std::string& t) {
    size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad number '" + t + "'");
    return v;
  };
  auto pos = s.find("pi");
  if (pos != std::string::npos) {
    std::string coef = s.substr(0, pos), rest = s.substr(pos + 2);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double c = coef.empty() || coef == "+" ? 1.0 : coef == "-" ? -1.0 : full(coef);
    double d = 1.0;
    if (!rest.empty()) {
      if (rest[0] != '/') throw std::invalid_argument("bad angle '" + s + "'");
      d = full(rest.substr(1));
    }
    return c * kPi / d;
  }
  auto slash = s.find('/');
  if (slash != std::string::npos) return full(s.substr(0, slash)) / full(s.substr(slash + 1));
  return full(s);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& t : split(s, ',')) v.push_back(parse_real(t));
  return v;
}

inline int parse_int(const std::string& s) {
  size_t used = 0;
  int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

// ---------------------------------------------------------------- operators and graphs

inline json to_json(const Operator& op) {
  const Mat& m = op.matrix();
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"dims", op.dims().vec()}, {"re", re}, {"im", im}};
}

inline Operator operator_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("re")) throw std::invalid_argument("operator JSON needs dims and re");
  Dims d(j.at("dims").get<std::vector<int>>());
  const auto& re = j.at("re");
  const int n = d.total();
  if (!re.is_array() || static_cast<int>(re.size()) != n)
    throw std::invalid_argument("operator JSON: re has wrong row count");
  const bool has_im = j.contains("im");
  if (has_im && static_cast<int>(j.at("im").size()) != n)
    throw std::invalid_argument("operator JSON: im has wrong row count");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(re[i].size()) != n) throw std::invalid_argument("operator JSON: row length mismatch");
    if (has_im && static_cast<int>(j.at("im")[i].size()) != n)
      throw std::invalid_argument("operator JSON: row length mismatch");
    for (int k = 0; k < n; ++k)
      m(i, k) = cplx(re[i][k].get<double>(), has_im ? j.at("im")[i][k].get<double>() : 0.0);
  }
  return Operator(m, d);
}

inline json to_json(const Graph& g) {
  json e = json::array();
  for (auto [a, b] : g.edges) e.push_back({a, b});
  return {{"n", g.n}, {"edges", e}};
}

inline Graph graph_from_json(const json& j) {
  Graph g(j.at("n").get<int>(), {});
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw std::invalid_argument("graph JSON: edge needs two endpoints");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

inline json to_json(const ProductState& p) {
  json locals = json::array();
  for (const auto& v : p.locals) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      re.push_back(v(i).real());
      im.push_back(v(i).imag());
    }
    locals.push_back({{"re", re}, {"im", im}});
  }
  return locals;
}

inline json params_json(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

// ---------------------------------------------------------------- names

// Graph names: path:n, star:n, grid:r,c, or file:<path>.
inline Graph resolve_graph(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("graph spec needs kind:args");
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "file") return graph_from_json(read_json_file(arg));
  if (kind == "path") return named_graph("linear-cluster", parse_int(arg));
  if (kind == "star") return named_graph("ghz-star", parse_int(arg));
  if (kind == "grid") {
    auto rc = split(arg, ',');
    if (rc.size() != 2) throw std::invalid_argument("grid needs rows,cols");
    return named_graph("grid", parse_int(rc[0]), parse_int(rc[1]));
  }
  throw std::invalid_argument("unknown graph kind " + kind);
}

inline std::array<int, 3> parse_bits(const std::string& s) {
  if (s.size() != 3) throw std::invalid_argument("need three bits, e.g. 110");
  std::array<int, 3> b{};
  for (int k = 0; k < 3; ++k) {
    if (s[k] != '0' && s[k] != '1') throw std::invalid_argument("bits must be 0 or 1");
    b[k] = s[k] - '0';
  }
  return b;
}

inline std::pair<std::string, std::string> head_tail(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

// Catalog pairs addressable by name; nullopt when the name is a bare witness.
inline std::optional<MirrorPair> resolve_pair(const std::string& spec) {
  auto [kind, arg] = head_tail(spec);
  if (kind == "example1" || kind == "example2") return bell_pair_witness(kind);
  if (kind == "ghz-canonical") return canonical_ghz_pair(parse_int(arg));
  if (kind == "ghz-alt") return alternative_ghz_witness(parse_int(arg));
  if (kind == "ghz-2m") return ghz_two_measurement_witness(parse_int(arg));
  if (kind == "ghz-stabilizer") return ghz_graph_witness(parse_int(arg));
  if (kind == "graph") return graph_witness(resolve_graph(arg));
  if (kind == "w3q") {
    auto b = parse_bits(arg);
    return w3q_pair(b[0], b[1], b[2]);
  }
  if (kind == "pair33") return pair33().pair;
  return std::nullopt;
}

inline Witness resolve_witness(const std::string& spec) {
  if (auto p = resolve_pair(spec)) return p->w;
  auto [kind, arg] = head_tail(spec);
  if (kind == "file") {
    HermitianOperator op(operator_from_json(read_json_file(arg)));
    return {op, "file", {}, false};
  }
  if (kind == "m3q") {
    auto b = parse_bits(arg);
    return m3q(b[0], b[1], b[2]);
  }
  if (kind == "pair33-m") return {pair33().pair.m, "pair33-m", {}, false};
  if (kind == "choi") {
    auto v = parse_list(arg);
    if (v.size() != 3) throw std::invalid_argument("choi needs a,b,c");
    return choi_abc(v[0], v[1], v[2]);
  }
  if (kind == "choi-phi") return choi_phi(parse_real(arg));
  if (kind == "class1") return wabcd_class(WClass::I, parse_real(arg));
  if (kind == "class2") return wabcd_class(WClass::II, parse_real(arg));
  if (kind == "wabcd") {
    auto v = parse_list(arg);
    if (v.size() != 4) throw std::invalid_argument("wabcd needs a,b,c,d");
    return wabcd(v[0], v[1], v[2], v[3]);
  }
  if (kind == "covariant") return covariant_witness(parse_list(arg));
  if (kind == "wopt") {
    auto v = parse_list(arg);
    if (v.size() != 4) throw std::invalid_argument("wopt needs s2,s3,s4,theta");
    return {xshape_expand(wopt_xshape(v[0], v[1], v[2], v[3])), "wopt",
            {{"s2", v[0]}, {"s3", v[1]}, {"s4", v[2]}, {"theta", v[3]}}, false};
  }
  throw std::invalid_argument("unknown witness '" + spec + "'");
}

inline StateSpec resolve_state(const std::string& spec) {
  auto [kind, arg] = head_tail(spec);
  if (kind == "file") {
    HermitianOperator op(operator_from_json(read_json_file(arg)));
    return {op, "file"};
  }
  if (kind == "ghz") return ghz_state(parse_int(arg));
  if (kind == "ghz-alt") return ghz_alt_state(parse_int(arg));
  if (kind == "bell") {
    auto v = split(arg, ',');
    if (v.size() != 3) throw std::invalid_argument("bell needs n,k,l");
    int n = parse_int(v[0]), k = parse_int(v[1]), l = parse_int(v[2]);
    return {bell_projector(n, k, l), "bell", {{"n", n}, {"k", k}, {"l", l}}};
  }
  if (kind == "rho-bc") {
    auto v = parse_list(arg);
    if (v.size() != 2) throw std::invalid_argument("rho-bc needs b,c");
    return rho_bc(v[0], v[1]);
  }
  if (kind == "rho-xyz") {
    auto v = parse_list(arg);
    if (v.size() != 3) throw std::invalid_argument("rho-xyz needs x,y,z");
    return rho_xyz(v[0], v[1], v[2]);
  }
  if (kind == "rho-x") return rho_x(parse_real(arg));
  if (kind == "rho-w") return pair33().rho_w;
  if (kind == "rho-m") return pair33().rho_m;
  if (kind == "tau") {
    auto v = split(arg, ',');
    if (v.size() != 2) throw std::invalid_argument("tau needs j,k");
    return tau_state(4, parse_int(v[0]), parse_int(v[1]));
  }
  throw std::invalid_argument("unknown state '" + spec + "'");
}

// Catalog entries at default parameters.
inline std::vector<std::pair<std::string, Witness>> catalog_witnesses() {
  std::vector<std::pair<std::string, Witness>> out;
  for (const char* s : {"example1", "example2", "ghz-canonical:3", "ghz-alt:3", "ghz-2m:3",
                        "ghz-stabilizer:3", "graph:path:4", "graph:star:4", "graph:grid:2,2",
                        "w3q:000", "w3q:110", "m3q:110", "pair33", "pair33-m", "choi:1,0,1",
                        "choi:0,1,1", "choi-phi:pi/3", "class1:0", "class1:pi/2", "class2:pi/2",
                        "wopt:2,3,1/2,pi/4"})
    out.push_back({s, resolve_witness(s)});
  return out;
}

inline std::vector<std::string> catalog_state_names() {
  return {"ghz:3", "ghz-alt:3", "bell:2,0,0", "bell:3,1,1", "rho-bc:2,1/2", "rho-xyz:1/2,1/2,2",
          "rho-x:2", "rho-w", "rho-m", "tau:1,1"};
}

}  // namespace mirrorwit::io
