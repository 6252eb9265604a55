// Model bundle description and affine monodromy pullbacks.
#pragma once

#include "gcfol/forms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gcfol {

/// Deck transformation (x, t) -> (x + translation, M t + shift) of the model.
struct LatticeGenerator {
  std::vector<mpq_class> translation;  // one entry per real base coordinate
  std::vector<int> fibre_matrix;       // row-major p x p, empty = identity
  std::vector<mpq_class> fibre_shift;  // quarter periods, empty = zero

  friend bool operator==(const LatticeGenerator&, const LatticeGenerator&) = default;
};

/// A point of the total space; coordinates absent from the map read as zero.
struct Point {
  std::map<int, mpq_class> values;  // keyed by CoordId::code()

  mpq_class operator()(CoordId c) const {
    auto it = values.find(c.code());
    return it == values.end() ? mpq_class(0) : it->second;
  }
  void set(CoordId c, mpq_class v) { values[c.code()] = std::move(v); }
  friend bool operator==(const Point&, const Point&) = default;
};

struct SolverSettings {
  std::optional<int> degree_cap;  // default: data degree + 2
  int trials = 20;
  std::uint64_t seed = 1;
  friend bool operator==(const SolverSettings&, const SolverSettings&) = default;
};

/// Fibre torus T^p over a flat or torus base of complex dimension m, with connection
/// coefficients A^i_k (horizontal lifts d/dx^k + A^i_k d/dt^i) and leafwise form omega.
struct Scenario {
  std::string name;
  Layout layout;
  std::vector<std::vector<CoeffFn>> connection;  // [fibre i][real base k]
  GradedForm omega;
  std::vector<LatticeGenerator> lattice;
  std::optional<std::vector<GradedForm>> curvature_override;  // F^i, constant base 2-forms
  std::vector<Point> sample_points;
  SolverSettings solver;

  static Scenario flat_product(std::string name, Layout l) {
    Scenario s;
    s.name = std::move(name);
    s.layout = l;
    s.connection.assign(l.p, std::vector<CoeffFn>(2 * l.m));
    s.omega = GradedForm(l);
    return s;
  }

  const CoeffFn& A(int i, int k) const { return connection.at(i).at(k); }
  bool is_flat_connection_data() const {
    for (auto& row : connection)
      for (auto& a : row)
        if (!a.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.layout == b.layout && a.connection == b.connection &&
           a.omega == b.omega && a.lattice == b.lattice &&
           a.curvature_override == b.curvature_override && a.sample_points == b.sample_points &&
           a.solver == b.solver;
  }
};

/// Integer determinant by cofactor expansion (fibre ranks are small).
inline long integer_det(const std::vector<int>& mat, int n) {
  if (n == 0) return 1;
  if (n == 1) return mat[0];
  long det = 0;
  for (int c = 0; c < n; ++c) {
    if (mat[c] == 0) continue;
    std::vector<int> minor;
    for (int r = 1; r < n; ++r)
      for (int cc = 0; cc < n; ++cc)
        if (cc != c) minor.push_back(mat[r * n + cc]);
    det += ((c % 2) ? -1 : 1) * mat[c] * integer_det(minor, n - 1);
  }
  return det;
}

struct InvalidGenerator : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void check_generator(const LatticeGenerator& g, const Layout& l) {
  if (static_cast<int>(g.translation.size()) != 2 * l.m)
    throw InvalidGenerator("translation must have one entry per real base coordinate");
  if (!g.fibre_matrix.empty()) {
    if (static_cast<int>(g.fibre_matrix.size()) != l.p * l.p)
      throw InvalidGenerator("fibre matrix must be p x p");
    long det = integer_det(g.fibre_matrix, l.p);
    if (det != 1 && det != -1) throw InvalidGenerator("fibre matrix is not invertible over Z");
  }
  if (!g.fibre_shift.empty() && static_cast<int>(g.fibre_shift.size()) != l.p)
    throw InvalidGenerator("fibre shift must have p entries");
  if (l.base == BaseKind::Torus)
    for (auto& v : g.translation) quarter_phase(v);  // throws unless a quarter period
}

inline CoeffFn pullback_coeff(const LatticeGenerator& g, const Layout& l, const CoeffFn& f) {
  return f.substitute(l.p, g.fibre_matrix, g.fibre_shift, [&](CoordId c) -> mpq_class {
    return g.translation.at(c.index);
  });
}

/// Pullback of a form by the deck transformation: coefficients are composed with the map
/// and eta^i -> sum_j M_ij eta^j. The eta rule is the true pullback exactly when the
/// connection is equivariant, which check_equivariance verifies separately.
inline GradedForm pullback_affine(const LatticeGenerator& g, const GradedForm& a) {
  const Layout& l = a.layout();
  check_generator(g, l);
  auto M = [&](int i, int j) {
    return g.fibre_matrix.empty() ? int(i == j) : g.fibre_matrix[i * l.p + j];
  };
  GradedForm r(l);
  for (auto& [mono, f] : a.terms()) {
    GradedForm piece(l, pullback_coeff(g, l, f));
    for (int b = 0; b < l.generators(); ++b) {
      if (!(mono >> b & 1)) continue;
      GradedForm gen(l);
      if (b < 2 * l.m) {
        gen = GradedForm::term(l, Monomial{1} << b, 1);
      } else {
        int i = b - 2 * l.m;
        for (int j = 0; j < l.p; ++j)
          if (M(i, j) != 0) gen += GradedForm::eta(l, j) * Scalar(M(i, j));
      }
      piece = piece.wedge(gen);
    }
    r += piece;
  }
  return r;
}

}  // namespace gcfol
