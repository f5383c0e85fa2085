#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "topo/dtm.hpp"
#include "topo/multigraph.hpp"
#include "topo/pathfinder.hpp"
#include "topo/rational.hpp"
#include "topo/symbolic.hpp"

namespace topo {

using Complex = std::complex<double>;
using ComplexMatrix = std::vector<std::vector<Complex>>;

/// Raised when Gaussian elimination meets a zero pivot or a non-finite
/// solution; callers treat the frequency as unusable and skip it.
struct SingularSystemError : std::runtime_error {
  SingularSystemError() : std::runtime_error("singular system") {}
};

namespace detail {

/// In-place LU with partial pivoting; returns the row swap performed at each
/// elimination step.
inline std::vector<std::size_t> lu_factor(ComplexMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> swaps(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a[k][k]);
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a[r][k]) > best) {
        best = std::abs(a[r][k]);
        pivot = r;
      }
    if (best == 0.0) throw SingularSystemError();
    swaps[k] = pivot;
    if (pivot != k) std::swap(a[k], a[pivot]);
    for (std::size_t r = k + 1; r < n; ++r) {
      a[r][k] /= a[k][k];
      for (std::size_t col = k + 1; col < n; ++col) a[r][col] -= a[r][k] * a[k][col];
    }
  }
  return swaps;
}

inline std::vector<Complex> lu_solve(const ComplexMatrix& lu, const std::vector<std::size_t>& swaps,
                                     std::vector<Complex> b) {
  const std::size_t n = lu.size();
  for (std::size_t k = 0; k < n; ++k)
    if (swaps[k] != k) std::swap(b[k], b[swaps[k]]);
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t col = 0; col < r; ++col) b[r] -= lu[r][col] * b[col];
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t col = r + 1; col < n; ++col) b[r] -= lu[r][col] * b[col];
    b[r] /= lu[r][r];
  }
  return b;
}

/// b - A*x accumulated in extended precision.
inline std::vector<Complex> residual_vector(const ComplexMatrix& a, const std::vector<Complex>& x,
                                            const std::vector<Complex>& b) {
  const std::size_t n = a.size();
  std::vector<Complex> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<long double> acc(b[i].real(), b[i].imag());
    for (std::size_t j = 0; j < n; ++j)
      acc -= std::complex<long double>(a[i][j].real(), a[i][j].imag()) *
             std::complex<long double>(x[j].real(), x[j].imag());
    r[i] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return r;
}

inline double vector_norm(const std::vector<Complex>& v) {
  double sum = 0.0;
  for (const Complex& e : v) sum += std::norm(e);
  return std::sqrt(sum);
}

}  // namespace detail

/// Numeric admittance of a component branch at the complex frequency s.
inline Complex branch_admittance(const Branch& b, Complex s) {
  const double v = to_double(b.value);
  switch (b.kind) {
    case BranchKind::Resistor: return Complex(1.0 / v);
    case BranchKind::Inductor: return Complex(1.0) / (v * s);
    case BranchKind::Capacitor: return v * s;
    default: throw std::invalid_argument("source branches carry no admittance");
  }
}

struct MnaSolution {
  Complex transfer;
  double residual;  // euclidean norm of b - A*x after refinement
  double rhs_norm;  // euclidean norm of b
};

/// Modified nodal analysis at one complex frequency: node-voltage equations
/// for every component admittance plus one current unknown enforcing a 1 V
/// transmitter, solved by pivoted LU with a single refinement step. The
/// reference node is 0 when present, otherwise the smallest label. Returns
/// the receptor voltage V(n+) - V(n-); a structurally singular system (for
/// example a disconnected or floating circuit) raises SingularSystemError.
inline MnaSolution mna_solve(const Circuit& c, Complex s) {
  validate_circuit(c);
  if (s == Complex(0.0)) throw std::invalid_argument("frequency must be nonzero");

  std::set<int> labels;
  for (const Branch& b : c.components) {
    labels.insert(b.first_node);
    labels.insert(b.second_node);
  }
  labels.insert(c.transmitter.first_node);
  labels.insert(c.transmitter.second_node);
  labels.insert(c.receptor.first_node);
  labels.insert(c.receptor.second_node);
  const int reference = labels.count(0) != 0 ? 0 : *labels.begin();

  std::map<int, std::size_t> index;
  for (int label : labels)
    if (label != reference) index.emplace(label, index.size());
  const std::size_t n = index.size();
  const std::size_t dim = n + 1;  // +1 for the transmitter current

  ComplexMatrix a(dim, std::vector<Complex>(dim, Complex(0.0)));
  std::vector<Complex> b(dim, Complex(0.0));
  const auto at = [&](int label) -> std::ptrdiff_t {
    return label == reference ? -1 : static_cast<std::ptrdiff_t>(index.at(label));
  };

  for (const Branch& comp : c.components) {
    if (comp.is_loop()) continue;  // a self-loop drops out of the node equations
    const Complex y = branch_admittance(comp, s);
    const std::ptrdiff_t i = at(comp.first_node);
    const std::ptrdiff_t j = at(comp.second_node);
    if (i >= 0) a[i][i] += y;
    if (j >= 0) a[j][j] += y;
    if (i >= 0 && j >= 0) {
      a[i][j] -= y;
      a[j][i] -= y;
    }
  }

  // transmitter: stored (n-, n+); constraint row V(n+) - V(n-) = 1 and a
  // source-current column feeding the two node equations
  const std::ptrdiff_t minus = at(c.transmitter.first_node);
  const std::ptrdiff_t plus = at(c.transmitter.second_node);
  if (plus >= 0) {
    a[n][plus] += 1.0;
    a[plus][n] += 1.0;
  }
  if (minus >= 0) {
    a[n][minus] -= 1.0;
    a[minus][n] -= 1.0;
  }
  b[n] = 1.0;

  ComplexMatrix lu = a;
  const std::vector<std::size_t> swaps = detail::lu_factor(lu);
  std::vector<Complex> x = detail::lu_solve(lu, swaps, b);
  const std::vector<Complex> correction = detail::lu_solve(lu, swaps, detail::residual_vector(a, x, b));
  for (std::size_t i = 0; i < dim; ++i) x[i] += correction[i];
  for (const Complex& e : x)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) throw SingularSystemError();

  const auto voltage = [&](int label) -> Complex {
    const std::ptrdiff_t i = at(label);
    return i < 0 ? Complex(0.0) : x[i];
  };
  return MnaSolution{voltage(c.receptor.first_node) - voltage(c.receptor.second_node),
                     detail::vector_norm(detail::residual_vector(a, x, b)),
                     detail::vector_norm(b)};
}

inline Complex mna_transfer(const Circuit& c, Complex s) { return mna_solve(c, s).transfer; }

namespace detail {
inline void brute_extend(const Multigraph& g, int end, std::vector<int>& vertices,
                         std::vector<std::string>& branches, std::set<int>& visited,
                         std::set<Path>& out) {
  const int current = vertices.back();
  if (current == end) {
    out.insert(Path{vertices, branches});
    return;
  }
  for (const IncidenceEntry& entry : g.incidences(current)) {
    if (visited.count(entry.neighbor) != 0) continue;
    visited.insert(entry.neighbor);
    vertices.push_back(entry.neighbor);
    branches.push_back(g.non_looped()[entry.branch].nature_name);
    brute_extend(g, end, vertices, branches, visited, out);
    branches.pop_back();
    vertices.pop_back();
    visited.erase(entry.neighbor);
  }
}
}  // namespace detail

/// Exhaustive recursive enumeration of vertex-simple paths, with no pruning;
/// the ground truth the frontier-driven enumeration is compared against.
inline std::set<Path> brute_paths(const Multigraph& g, int bgn, int end) {
  if (bgn == end) throw SameEndpointsError();
  g.incidences(bgn);
  g.incidences(end);
  std::set<Path> out;
  std::vector<int> vertices{bgn};
  std::vector<std::string> branches;
  std::set<int> visited{bgn};
  detail::brute_extend(g, end, vertices, branches, visited, out);
  return out;
}

/// Kirchhoff Matrix-Tree count: determinant of a Laplacian cofactor with
/// parallel branches adding and loops ignored, in exact integer arithmetic
/// (fraction-free Bareiss elimination).
inline BigInt tree_count(const Multigraph& g) {
  const std::vector<VertexRecord>& vs = g.vertices();
  if (vs.empty()) throw std::invalid_argument("tree count of an empty graph is undefined");
  const std::size_t n = vs.size();
  if (n == 1) return 1;

  std::map<int, std::size_t> index;
  for (const VertexRecord& v : vs) index.emplace(v.label, index.size());
  std::vector<std::vector<BigInt>> lap(n, std::vector<BigInt>(n, BigInt(0)));
  for (const Branch& b : g.non_looped()) {
    const std::size_t i = index.at(b.first_node);
    const std::size_t j = index.at(b.second_node);
    lap[i][i] += 1;
    lap[j][j] += 1;
    lap[i][j] -= 1;
    lap[j][i] -= 1;
  }

  const std::size_t m = n - 1;  // cofactor: drop the last row and column
  std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = lap[i][j];

  int sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < m && a[r][k] == 0) ++r;
      if (r == m) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i)
      for (std::size_t j = k + 1; j < m; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
    previous = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

/// Numeric spanning-tree admittance sum at s: determinant of the Laplacian
/// cofactor weighted by branch admittances. Equals sum over spanning trees of
/// the product of tree-branch admittances; 0 when the graph is disconnected.
inline Complex weighted_tree_sum(const Multigraph& g, Complex s) {
  const std::vector<VertexRecord>& vs = g.vertices();
  if (vs.empty()) throw std::invalid_argument("tree sum of an empty graph is undefined");
  const std::size_t n = vs.size();
  if (n == 1) return Complex(1.0);

  std::map<int, std::size_t> index;
  for (const VertexRecord& v : vs) index.emplace(v.label, index.size());
  const std::size_t m = n - 1;
  ComplexMatrix a(m, std::vector<Complex>(m, Complex(0.0)));
  for (const Branch& b : g.non_looped()) {
    const Complex y = branch_admittance(b, s);
    const std::size_t i = index.at(b.first_node);
    const std::size_t j = index.at(b.second_node);
    if (i < m) a[i][i] += y;
    if (j < m) a[j][j] += y;
    if (i < m && j < m) {
      a[i][j] -= y;
      a[j][i] -= y;
    }
  }
  try {
    const std::vector<std::size_t> swaps = detail::lu_factor(a);
    Complex det(1.0);
    for (std::size_t k = 0; k < m; ++k) det *= a[k][k];
    for (std::size_t k = 0; k < m; ++k)
      if (swaps[k] != k) det = -det;
    return det;
  } catch (const SingularSystemError&) {
    return Complex(0.0);
  }
}

/// Sixteen angular frequencies log-spaced over [1, 1e8] rad/s.
inline std::vector<double> default_frequencies() {
  std::vector<double> out;
  for (int k = 0; k < 16; ++k) out.push_back(std::pow(10.0, 8.0 * k / 15.0));
  return out;
}

struct VerifyReport {
  double max_rel_error = 0.0;
  int compared = 0;
  int skipped = 0;
};

/// Sweep s = j*omega comparing the symbolic N/D against the MNA oracle.
/// Frequencies are skipped when |D(j*omega)| falls below 1e-3 of D's
/// coefficient scale (near-pole noise) or when the MNA system is singular.
/// Relative error is normalized by max(1, |mna|).
inline VerifyReport verify_transfer(const Circuit& c,
                                    const std::vector<double>& omegas = default_frequencies()) {
  const TransferFunction tf = transfer_function(c);
  const SymbolAssignment values = symbol_values(c);
  VerifyReport report;
  for (double omega : omegas) {
    const Complex s(0.0, omega);
    const double scale = tf.denominator.eval_scale(values, s);
    const Complex d = tf.denominator.eval(values, s);
    if (scale == 0.0 || std::abs(d) < 1e-3 * scale) {
      ++report.skipped;
      continue;
    }
    Complex mna;
    try {
      mna = mna_transfer(c, s);
    } catch (const SingularSystemError&) {
      ++report.skipped;
      continue;
    }
    const Complex h = tf.numerator.eval(values, s) / d;
    const double err = std::abs(h - mna) / std::max(1.0, std::abs(mna));
    report.max_rel_error = std::max(report.max_rel_error, err);
    ++report.compared;
  }
  return report;
}

}  // namespace topo
