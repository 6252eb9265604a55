// Exterior derivative in the adapted coframe and its graded components.
//
// d is computed once, directly: for a function df = sum_k (X_k f) dx^k + sum_i (d_ti f) eta^i
// with horizontal lifts X_k = d/dx^k + A^i_k d/dt^i, and d eta^i = -sum_k dA^i_k ^ dx^k.
// Every graded operator is a degree projection of d.
#pragma once

#include "gcfol/scenario.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gcfol {

enum class Op { Del, DelBar, ThetaPlus, ThetaZero, ThetaMinus, DS };

inline constexpr std::array<Op, 6> kAllOps = {Op::Del,       Op::DelBar,     Op::ThetaPlus,
                                              Op::ThetaZero, Op::ThetaMinus, Op::DS};

inline Degree shift_of(Op op) {
  switch (op) {
    case Op::Del: return {1, 0, 0};
    case Op::DelBar: return {0, 1, 0};
    case Op::ThetaPlus: return {2, 0, -1};
    case Op::ThetaZero: return {1, 1, -1};
    case Op::ThetaMinus: return {0, 2, -1};
    case Op::DS: return {0, 0, 1};
  }
  return {};
}

inline std::string op_name(Op op) {
  switch (op) {
    case Op::Del: return "del";
    case Op::DelBar: return "delbar";
    case Op::ThetaPlus: return "theta+";
    case Op::ThetaZero: return "theta0";
    case Op::ThetaMinus: return "theta-";
    case Op::DS: return "d_S";
  }
  return "?";
}

class Bundle {
 public:
  explicit Bundle(const Scenario& s) : Bundle(s.layout, s.connection) {
    if (s.curvature_override) curvature_ = *s.curvature_override;
  }

  Bundle(Layout l, std::vector<std::vector<CoeffFn>> connection,
         std::vector<GradedForm> structure_perturbation = {})
      : layout_(l), A_(std::move(connection)) {
    if (A_.empty()) A_.assign(l.p, std::vector<CoeffFn>(2 * l.m));
    if (static_cast<int>(A_.size()) != l.p)
      throw std::invalid_argument("connection must have one row per fibre coordinate");
    for (auto& row : A_)
      if (static_cast<int>(row.size()) != 2 * l.m)
        throw std::invalid_argument("connection row must have one entry per base coordinate");
    for (int k = 0; k < 2 * l.m; ++k) dx_.push_back(GradedForm::dx(l, k));
    for (int i = 0; i < l.p; ++i) {
      GradedForm de(l);
      for (int k = 0; k < 2 * l.m; ++k) de -= d_function(A_[i][k]).wedge(dx_[k]);
      if (i < static_cast<int>(structure_perturbation.size())) de += structure_perturbation[i];
      d_eta_.push_back(std::move(de));
    }
  }

  const Layout& layout() const { return layout_; }
  const GradedForm& d_eta(int i) const { return d_eta_.at(i); }
  bool has_curvature_override() const { return curvature_.has_value(); }

  /// Horizontal lift X_k applied to f.
  CoeffFn horizontal(int k, const CoeffFn& f) const {
    CoeffFn r = f.differentiate(layout_.base_coord(k));
    for (int i = 0; i < layout_.p; ++i)
      if (!A_[i][k].is_zero()) r += A_[i][k] * f.differentiate(CoordId::fibre(i));
    return r;
  }

  GradedForm d_function(const CoeffFn& f) const {
    GradedForm r(layout_);
    for (int k = 0; k < 2 * layout_.m; ++k) {
      CoeffFn g = horizontal(k, f);
      if (!g.is_zero()) r += dx_[k] * g;
    }
    for (int i = 0; i < layout_.p; ++i)
      r.add(Monomial{1} << layout_.eta_bit(i), f.differentiate(CoordId::fibre(i)));
    return r;
  }

  GradedForm d_monomial(Monomial mono) const {
    GradedForm r(layout_);
    int before = 0;
    for (int b = 0; b < layout_.generators(); ++b) {
      if (!(mono >> b & 1)) continue;
      if (b >= 2 * layout_.m) {
        Monomial left = mono & ((Monomial{1} << b) - 1);
        Monomial right = mono & ~((Monomial{1} << (b + 1)) - 1);
        GradedForm piece = GradedForm::term(layout_, left, 1)
                               .wedge(d_eta_[b - 2 * layout_.m])
                               .wedge(GradedForm::term(layout_, right, 1));
        if (before & 1)
          r -= piece;
        else
          r += piece;
      }
      ++before;
    }
    return r;
  }

  GradedForm d(const GradedForm& a) const {
    check(a);
    GradedForm r(layout_);
    for (auto& [mono, f] : a.terms()) {
      r += d_function(f).wedge(GradedForm::term(layout_, mono, 1));
      if (mono >> (2 * layout_.m)) r += d_monomial(mono) * f;
    }
    return r;
  }

  /// Graded component of d, applied per homogeneous piece of a.
  GradedForm component(const GradedForm& a, Op op) const {
    if (curvature_ && (op == Op::ThetaPlus || op == Op::ThetaZero || op == Op::ThetaMinus))
      return theta_from_tensor(a, shift_of(op));
    GradedForm r(layout_);
    Degree sh = shift_of(op);
    for (Degree g : a.degrees()) r += d(a.project_degree(g)).project_degree(g + sh);
    return r;
  }

  GradedForm del(const GradedForm& a) const { return component(a, Op::Del); }
  GradedForm delbar(const GradedForm& a) const { return component(a, Op::DelBar); }
  GradedForm theta_plus(const GradedForm& a) const { return component(a, Op::ThetaPlus); }
  GradedForm theta_zero(const GradedForm& a) const { return component(a, Op::ThetaZero); }
  GradedForm theta_minus(const GradedForm& a) const { return component(a, Op::ThetaMinus); }
  GradedForm d_S(const GradedForm& a) const { return component(a, Op::DS); }
  GradedForm nabla(const GradedForm& a) const { return del(a) + delbar(a); }
  GradedForm theta(const GradedForm& a) const {
    if (curvature_) return theta_from_tensor(a);
    return theta_plus(a) + theta_zero(a) + theta_minus(a);
  }
  GradedForm d_K(const GradedForm& a) const { return d(a).restrict_K(); }

  /// Curvature acting as a tensor: sum_i F^i ^ (contraction with d/dt^i). With `part` set,
  /// only the (part.i, part.j) base-type piece of F is used.
  GradedForm theta_from_tensor(const GradedForm& a, std::optional<Degree> part = {}) const {
    GradedForm r(layout_);
    for (int i = 0; i < layout_.p; ++i) {
      GradedForm F = curvature_ ? curvature_->at(i) : d_eta_[i].project_bidegree(2, 0);
      if (part) F = F.project_degree({part->i, part->j, 0});
      r += F.wedge(a.contract(layout_.eta_bit(i)));
    }
    return r;
  }

 private:
  void check(const GradedForm& a) const {
    if (!(a.layout() == layout_)) throw std::invalid_argument("form does not belong to bundle");
  }

  Layout layout_;
  std::vector<std::vector<CoeffFn>> A_;
  std::vector<GradedForm> dx_;
  std::vector<GradedForm> d_eta_;
  std::optional<std::vector<GradedForm>> curvature_;
};

}  // namespace gcfol
