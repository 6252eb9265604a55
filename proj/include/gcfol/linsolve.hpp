// Exact linear algebra over Q(i): sparse elimination and dense kernels.
#pragma once

#include "gcfol/forms.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace gcfol {

using SparseVec = std::map<int, GaussQ>;

/// Assigns dense row indices to (monomial, coefficient key, tau power) triples so that
/// forms can be flattened into Q(i)-vectors.
class FormIndexer {
 public:
  SparseVec flatten(const GradedForm& a) {
    SparseVec v;
    for (auto& [mono, f] : a.terms())
      for (auto& [key, s] : f.terms())
        for (auto& [tp, q] : s.coeffs()) v[index(mono, key, tp)] += q;
    std::erase_if(v, [](auto& e) { return e.second.is_zero(); });
    return v;
  }
  int rows() const { return static_cast<int>(idx_.size()); }

 private:
  int index(Monomial m, const CoeffFn::Key& k, int tp) {
    auto [it, inserted] = idx_.try_emplace(std::make_tuple(m, k, tp), static_cast<int>(idx_.size()));
    return it->second;
  }
  std::map<std::tuple<Monomial, CoeffFn::Key, int>, int> idx_;
};

/// Solves sum_c x_c * columns[c] = rhs exactly. Free variables are set to zero, so the
/// answer is deterministic for a given column order. Returns nullopt when inconsistent.
inline std::optional<std::vector<GaussQ>> solve_sparse(const std::vector<SparseVec>& columns,
                                                       const SparseVec& rhs) {
  const int ncols = static_cast<int>(columns.size());
  // transpose into equation rows: row -> (col -> value), with rhs stored at column -1
  std::map<int, SparseVec> eqs;
  for (int c = 0; c < ncols; ++c)
    for (auto& [r, v] : columns[c]) eqs[r][c] = v;
  for (auto& [r, v] : rhs) eqs[r][-1] = v;

  std::map<int, SparseVec> pivots;  // pivot column -> normalized row (pivot entry 1)
  for (auto& [r, row0] : eqs) {
    SparseVec row = row0;
    while (true) {
      auto it = std::find_if(row.begin(), row.end(), [&](auto& e) {
        return e.first >= 0 && pivots.count(e.first);
      });
      if (it == row.end()) break;
      GaussQ factor = it->second;
      const SparseVec& prow = pivots[it->first];
      for (auto& [c, v] : prow) {
        GaussQ nv = row[c] - factor * v;
        if (nv.is_zero())
          row.erase(c);
        else
          row[c] = nv;
      }
    }
    auto lead = row.upper_bound(-1);
    if (lead == row.end()) {
      if (row.count(-1)) return std::nullopt;
      continue;
    }
    GaussQ inv = lead->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    // keep earlier pivot rows free of the new pivot column
    int pc = lead->first;
    for (auto& [oc, orow] : pivots) {
      auto jt = orow.find(pc);
      if (jt == orow.end()) continue;
      GaussQ f = jt->second;
      for (auto& [c, v] : row) {
        GaussQ nv = orow[c] - f * v;
        if (nv.is_zero())
          orow.erase(c);
        else
          orow[c] = nv;
      }
    }
    pivots.emplace(pc, std::move(row));
  }
  std::vector<GaussQ> x(ncols);
  for (auto& [pc, row] : pivots) {
    auto it = row.find(-1);
    if (it != row.end()) x[pc] = it->second;
  }
  return x;
}

/// Dense matrix as rows of Q(i) entries.
using DenseMat = std::vector<std::vector<GaussQ>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(DenseMat& a) {
  std::vector<int> piv;
  if (a.empty()) return piv;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    GaussQ inv = a[r][c].inverse();
    for (auto& v : a[r]) v *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      GaussQ f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline int rank(DenseMat a) { return static_cast<int>(rref(a).size()); }

/// Basis of {x : A x = 0}.
inline std::vector<std::vector<GaussQ>> kernel(DenseMat a, int cols) {
  std::vector<int> piv = rref(a);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<GaussQ>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<GaussQ> v(cols);
    v[f] = GaussQ(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gcfol
