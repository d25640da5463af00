#pragma once

#include "mirrorwit/linops.hpp"

#include <optional>
#include <queue>

namespace mirrorwit {

struct Graph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // stored with first < second

  Graph() = default;
  Graph(int n_, const std::vector<std::pair<int, int>>& e) : n(n_) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (auto [a, b] : e) add_edge(a, b);
  }
  void add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("edge vertex out of range");
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
      if (a == v) out.push_back(b);
      if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
};

struct Coloring {
  std::set<int> red;
  std::set<int> blue;
};

// Pauli string with an exact phase i^phase.
struct PauliString {
  std::string label;
  int phase = 0;  // 0..3

  static std::pair<char, int> mul1(char a, char b) {
    if (a == 'I') return {b, 0};
    if (b == 'I') return {a, 0};
    if (a == b) return {'I', 0};
    // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
    auto cyc = [](char p, char q) {
      return (p == 'X' && q == 'Y') || (p == 'Y' && q == 'Z') || (p == 'Z' && q == 'X');
    };
    char r = static_cast<char>('X' + 'Y' + 'Z' - a - b);
    return {r, cyc(a, b) ? 1 : 3};
  }

  PauliString operator*(const PauliString& o) const {
    if (label.size() != o.label.size()) throw std::invalid_argument("Pauli length mismatch");
    PauliString out{std::string(label.size(), 'I'), (phase + o.phase) % 4};
    for (size_t k = 0; k < label.size(); ++k) {
      auto [c, ph] = mul1(label[k], o.label[k]);
      out.label[k] = c;
      out.phase = (out.phase + ph) % 4;
    }
    return out;
  }
  bool commutes(const PauliString& o) const {
    int anti = 0;
    for (size_t k = 0; k < label.size(); ++k) {
      char a = label[k], b = o.label[k];
      if (a != 'I' && b != 'I' && a != b) ++anti;
    }
    return anti % 2 == 0;
  }
  // Real sign when the phase is +-1.
  double sign() const {
    if (phase % 2 != 0) throw std::domain_error("Pauli string has imaginary phase");
    return phase == 0 ? 1.0 : -1.0;
  }
  PauliSum to_sum() const {
    PauliSum p;
    p.add(label, sign());
    return p;
  }
  static PauliString from_sum(const PauliSum& p) {
    if (p.terms().size() != 1) throw std::invalid_argument("generator must be a single Pauli string");
    auto [label, c] = *p.terms().begin();
    if (c == 1.0) return {label, 0};
    if (c == -1.0) return {label, 2};
    throw std::invalid_argument("generator coefficient must be +-1");
  }
};

inline PauliSum generator(const Graph& g, int i) {
  if (i < 0 || i >= g.n) throw std::out_of_range("vertex out of range");
  std::string label(g.n, 'I');
  label[i] = 'X';
  for (int j : g.neighbors(i)) label[j] = 'Z';
  PauliSum p;
  p.add(label, 1.0);
  return p;
}

inline std::vector<PauliSum> graph_generators(const Graph& g) {
  std::vector<PauliSum> out;
  for (int i = 0; i < g.n; ++i) out.push_back(generator(g, i));
  return out;
}

// X..X together with Z_i Z_{i+1} for i = 0..n-2.
inline std::vector<PauliSum> ghz_generators(int n) {
  if (n < 2) throw std::invalid_argument("GHZ needs n >= 2");
  std::vector<PauliSum> out;
  PauliSum x;
  x.add(std::string(n, 'X'), 1.0);
  out.push_back(x);
  for (int i = 0; i + 1 < n; ++i) {
    std::string l(n, 'I');
    l[i] = l[i + 1] = 'Z';
    PauliSum z;
    z.add(l, 1.0);
    out.push_back(z);
  }
  return out;
}

// Product of the generators selected by the bits of mask.
inline PauliString stabilizer_product(const std::vector<PauliString>& gens, unsigned long mask) {
  PauliString acc{std::string(gens.front().label.size(), 'I'), 0};
  for (size_t k = 0; k < gens.size(); ++k)
    if (mask >> k & 1UL) acc = acc * gens[k];
  return acc;
}

inline std::vector<PauliString> to_strings(const std::vector<PauliSum>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  std::vector<PauliString> out;
  for (const auto& g : gens) out.push_back(PauliString::from_sum(g));
  for (size_t a = 0; a < out.size(); ++a)
    for (size_t b = a + 1; b < out.size(); ++b)
      if (!out[a].commutes(out[b])) throw std::invalid_argument("generators do not commute");
  return out;
}

inline std::vector<PauliSum> stabilizer_elements(const std::vector<PauliSum>& gens) {
  auto strs = to_strings(gens);
  std::vector<PauliSum> out;
  for (unsigned long mask = 0; mask < (1UL << strs.size()); ++mask)
    out.push_back(stabilizer_product(strs, mask).to_sum());
  return out;
}

inline HermitianOperator graph_projector(const std::vector<PauliSum>& gens) {
  auto elems = stabilizer_elements(gens);
  PauliSum total;
  for (const auto& e : elems) total += e;
  const int n = gens.front().num_qubits();
  return pauli_to_matrix(total * (1.0 / static_cast<double>(elems.size())), n);
}

// Product of (I + g_k)/2 over the selected generators.
inline HermitianOperator partial_projector(const std::vector<PauliSum>& gens,
                                           const std::vector<int>& which) {
  const int n = gens.front().num_qubits();
  const int d = 1 << n;
  Mat p = Mat::Identity(d, d);
  for (int k : which) {
    Mat g = pauli_to_matrix(gens.at(k)).matrix();
    p = p * (0.5 * (Mat::Identity(d, d) + g));
  }
  return {p, Dims::qubits(n)};
}

inline std::optional<Coloring> two_coloring(const Graph& g) {
  std::vector<int> color(g.n, -1);
  for (int start = 0; start < g.n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Coloring c;
  for (int v = 0; v < g.n; ++v) (color[v] == 0 ? c.red : c.blue).insert(v);
  return c;
}

inline Graph named_graph(const std::string& kind, int n, int cols = 0) {
  if (kind == "ghz-star") {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    Graph g(n, {});
    for (int i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
  }
  if (kind == "linear-cluster") {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    Graph g(n, {});
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }
  if (kind == "grid") {
    // n rows by cols columns
    if (n < 1 || cols < 1 || n * cols < 2) throw std::invalid_argument("bad grid shape");
    Graph g(n * cols, {});
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < cols; ++c) {
        int v = r * cols + c;
        if (c + 1 < cols) g.add_edge(v, v + 1);
        if (r + 1 < n) g.add_edge(v, v + cols);
      }
    return g;
  }
  throw std::invalid_argument("unknown graph kind " + kind);
}

// Local unitary flipping every generator sign: Y on even-degree, X on odd-degree vertices.
inline Mat graph_flip_unitary(const Graph& g) {
  std::vector<Mat> f;
  for (int v = 0; v < g.n; ++v) f.push_back(pauli(g.degree(v) % 2 == 0 ? 'Y' : 'X'));
  return tensor_mats(f);
}

}  // namespace mirrorwit
