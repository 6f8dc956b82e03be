#pragma once

// Signal-flow-graph engine. Edge gains have the form coeff * z^zpow with z
// the one-slot delay operator. Two independent evaluators are provided: a
// linear-system formulation (node signals x = A(z) x + b, with H' from a
// second solve against A'(z) x) and classic path/loop enumeration with the
// graph determinant. Packet throughput is 1 / H'(1), which is exact because
// the M-packet transfer function is H^M and H(1) = 1 under probability
// conservation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccrn::sfg {

struct Edge {
  int from = 0;
  int to = 0;
  double coeff = 0.0;
  int zpow = 0;
};

struct FlowGraph {
  std::vector<std::string> node_names;
  std::vector<Edge> edges;
  int source = -1;
  int sink = -1;

  int add_node(const std::string& name) {
    node_names.push_back(name);
    return static_cast<int>(node_names.size()) - 1;
  }

  void add_edge(int from, int to, double coeff, int zpow) {
    edges.push_back(Edge{from, to, coeff, zpow});
  }

  int node_count() const { return static_cast<int>(node_names.size()); }

  void validate() const {
    const int n = node_count();
    if (source < 0 || source >= n || sink < 0 || sink >= n)
      throw std::invalid_argument("flow graph: bad source/sink");
    if (source == sink)
      throw std::invalid_argument("flow graph: source equals sink");
    std::vector<double> outflow(n, 0.0);
    std::vector<bool> has_out(n, false);
    for (const auto& e : edges) {
      if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
        throw std::invalid_argument("flow graph: edge endpoint out of range");
      if (!(e.coeff >= 0.0) || !std::isfinite(e.coeff) || e.zpow < 0)
        throw std::invalid_argument("flow graph: bad edge gain");
      if (e.from == sink)
        throw std::invalid_argument("flow graph: sink has an outgoing edge");
      outflow[e.from] += e.coeff;
      has_out[e.from] = true;
    }
    for (int v = 0; v < n; ++v) {
      if (v == sink) continue;
      if (!has_out[v] || std::abs(outflow[v] - 1.0) > 1e-12)
        throw std::invalid_argument(
            "flow graph: outgoing coefficients of node '" + node_names[v] +
            "' do not sum to 1");
    }
    // every node reachable from the source must reach the sink
    std::vector<bool> fwd(n, false), bwd(n, false);
    auto bfs = [&](int start, bool reverse, std::vector<bool>& seen) {
      std::vector<int> stack{start};
      seen[start] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : edges) {
          int a = reverse ? e.to : e.from, b = reverse ? e.from : e.to;
          if (a == v && !seen[b]) {
            seen[b] = true;
            stack.push_back(b);
          }
        }
      }
    };
    bfs(source, false, fwd);
    bfs(sink, true, bwd);
    for (int v = 0; v < n; ++v)
      if (fwd[v] && !bwd[v])
        throw std::invalid_argument("flow graph: node '" + node_names[v] +
                                    "' cannot reach the sink");
  }

  void dump(std::ostream& os) const {
    char buf[96];
    for (const auto& e : edges) {
      std::snprintf(buf, sizeof buf, "%s %s %.12g %d",
                    node_names[e.from].c_str(), node_names[e.to].c_str(),
                    e.coeff, e.zpow);
      os << buf << '\n';
    }
  }
};

struct TransferValue {
  double h = 0.0;   // H(z0)
  double dh = 0.0;  // H'(z0)
};

namespace detail {

// dense polynomial in z, coeffs[k] is the z^k coefficient
struct Poly {
  std::vector<double> c;

  static Poly zero() { return Poly{}; }
  static Poly one() { return Poly{{1.0}}; }
  static Poly term(double coeff, int zpow) {
    Poly p;
    p.c.assign(zpow + 1, 0.0);
    p.c[zpow] = coeff;
    return p;
  }

  Poly operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }

  Poly operator-(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    return r;
  }

  Poly operator*(const Poly& o) const {
    if (c.empty() || o.c.empty()) return zero();
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }

  Poly derivative() const {
    Poly r;
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * i;
    return r;
  }

  double eval(double z) const {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
  }
};

// Gaussian elimination with partial pivoting; A is row-major n x n.
inline std::vector<double> solve_dense(std::vector<double> A,
                                       std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (std::abs(A[piv * n + col]) < 1e-300)
      throw std::runtime_error("flow graph system is singular");
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(A[piv * n + k], A[col * n + k]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = A[r * n + col] / A[col * n + col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) A[r * n + k] -= f * A[col * n + k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= A[r * n + k] * x[k];
    x[r] = s / A[r * n + r];
  }
  return x;
}

}  // namespace detail

// H(z0) and H'(z0) from two dense solves: (I - A) x = b gives the node
// signals, (I - A) x' = A' x gives their derivatives.
inline TransferValue transfer_linear_solve(const FlowGraph& g, double z0) {
  if (!(z0 > 0.0 && z0 <= 1.0))
    throw std::invalid_argument("transfer_linear_solve: z0 must be in (0,1]");
  g.validate();
  const int n = g.node_count();
  std::vector<double> A(n * n, 0.0), dA(n * n, 0.0);
  for (const auto& e : g.edges) {
    A[e.to * n + e.from] += e.coeff * std::pow(z0, e.zpow);
    if (e.zpow > 0)
      dA[e.to * n + e.from] += e.coeff * e.zpow * std::pow(z0, e.zpow - 1);
  }
  std::vector<double> M(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[i * n + j] = (i == j ? 1.0 : 0.0) - A[i * n + j];
  std::vector<double> b(n, 0.0);
  b[g.source] = 1.0;
  std::vector<double> x = detail::solve_dense(M, b);
  std::vector<double> rhs(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += dA[i * n + j] * x[j];
    rhs[i] = s;
  }
  std::vector<double> dx = detail::solve_dense(M, rhs);
  return TransferValue{x[g.sink], dx[g.sink]};
}

// Intermediate quantities of the path/loop reduction, exposed so tests can
// check the graph determinant directly.
struct MasonDetails {
  detail::Poly numerator;
  detail::Poly determinant;
};

namespace detail {

struct Loop {
  Poly gain;
  std::vector<bool> nodes;  // membership mask
};

inline bool disjoint(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

// sum over all sets of pairwise non-touching loops (drawn from `loops`,
// excluding any touching `blocked`) of (-1)^{|set|} * product of gains
inline Poly alternating_loop_sum(const std::vector<Loop>& loops,
                                 const std::vector<bool>& blocked) {
  Poly total = Poly::one();
  // recursion over loop index with accumulated node mask
  struct Frame {
    std::size_t idx;
    Poly prod;
    std::vector<bool> used;
    int parity;
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{0, Poly::one(), blocked, 0});
  bool first = true;
  Poly acc = Poly::zero();
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (!first || f.idx != 0 || f.parity != 0) {
      // contribution of the set fixed so far is added when it was just
      // extended; handled below instead
    }
    first = false;
    for (std::size_t i = f.idx; i < loops.size(); ++i) {
      if (!disjoint(loops[i].nodes, f.used)) continue;
      Frame nf;
      nf.idx = i + 1;
      nf.prod = f.prod * loops[i].gain;
      nf.used = f.used;
      for (std::size_t k = 0; k < nf.used.size(); ++k)
        nf.used[k] = nf.used[k] || loops[i].nodes[k];
      nf.parity = f.parity ^ 1;
      acc = (nf.parity ? acc - nf.prod : acc + nf.prod);
      stack.push_back(std::move(nf));
    }
  }
  return total + acc;
}

}  // namespace detail

// Path/loop enumeration per Mason's rule. Returns the symbolic numerator
// and determinant; H and H' come from differentiating the rational form.
inline MasonDetails mason_reduce(const FlowGraph& g) {
  g.validate();
  const int n = g.node_count();
  if (n > 20)
    throw std::runtime_error("mason enumeration budget exceeded (node count)");

  // adjacency as edge indices
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    out[g.edges[i].from].push_back(i);

  // simple loops: DFS where the loop's smallest node index is the root
  std::vector<detail::Loop> loops;
  std::vector<int> path_edges;
  std::vector<bool> on_path(n, false);
  auto collect_loop = [&](int root) {
    detail::Poly gain = detail::Poly::one();
    std::vector<bool> nodes(n, false);
    nodes[root] = true;
    for (int ei : path_edges) {
      const auto& e = g.edges[ei];
      gain = gain * detail::Poly::term(e.coeff, e.zpow);
      nodes[e.to] = true;
    }
    loops.push_back(detail::Loop{gain, nodes});
  };
  std::function<void(int, int)> dfs_loops = [&](int root, int v) {
    for (int ei : out[v]) {
      const auto& e = g.edges[ei];
      if (e.to == root) {
        path_edges.push_back(ei);
        collect_loop(root);
        path_edges.pop_back();
      } else if (e.to > root && !on_path[e.to]) {
        on_path[e.to] = true;
        path_edges.push_back(ei);
        dfs_loops(root, e.to);
        path_edges.pop_back();
        on_path[e.to] = false;
      }
    }
  };
  for (int root = 0; root < n; ++root) {
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[root] = true;
    dfs_loops(root, root);
    if (loops.size() > 64)
      throw std::runtime_error("mason enumeration budget exceeded (loops)");
  }

  std::vector<bool> no_block(n, false);
  detail::Poly delta = detail::alternating_loop_sum(loops, no_block);

  // forward paths with cofactors
  detail::Poly numerator = detail::Poly::zero();
  std::vector<bool> visited(n, false);
  std::vector<int> pedges;
  long paths_seen = 0;
  std::function<void(int)> dfs_paths = [&](int v) {
    if (v == g.sink) {
      if (++paths_seen > 10000)
        throw std::runtime_error("mason enumeration budget exceeded (paths)");
      detail::Poly gain = detail::Poly::one();
      std::vector<bool> nodes(n, false);
      nodes[g.source] = true;
      for (int ei : pedges) {
        const auto& e = g.edges[ei];
        gain = gain * detail::Poly::term(e.coeff, e.zpow);
        nodes[e.to] = true;
      }
      numerator = numerator + gain * detail::alternating_loop_sum(loops, nodes);
      return;
    }
    for (int ei : out[v]) {
      const auto& e = g.edges[ei];
      if (visited[e.to]) continue;
      visited[e.to] = true;
      pedges.push_back(ei);
      dfs_paths(e.to);
      pedges.pop_back();
      visited[e.to] = false;
    }
  };
  visited[g.source] = true;
  dfs_paths(g.source);

  return MasonDetails{numerator, delta};
}

inline TransferValue transfer_mason(const FlowGraph& g, double z0) {
  if (!(z0 > 0.0 && z0 <= 1.0))
    throw std::invalid_argument("transfer_mason: z0 must be in (0,1]");
  MasonDetails md = mason_reduce(g);
  const double num = md.numerator.eval(z0);
  const double den = md.determinant.eval(z0);
  const double dnum = md.numerator.derivative().eval(z0);
  const double dden = md.determinant.derivative().eval(z0);
  if (den == 0.0) throw std::runtime_error("mason: determinant vanishes at z0");
  return TransferValue{num / den, (dnum * den - num * dden) / (den * den)};
}

// Stable packet throughput of the protocol graph: 1 / H'(1).
inline double throughput(const FlowGraph& g) {
  TransferValue tv = transfer_linear_solve(g, 1.0);
  if (std::abs(tv.h - 1.0) > 1e-10)
    throw std::runtime_error("flow graph: H(1) != 1, conservation violated");
  if (!(tv.dh > 0.0))
    throw std::runtime_error("flow graph: nonpositive mean transmission time");
  return 1.0 / tv.dh;
}

}  // namespace ccrn::sfg
