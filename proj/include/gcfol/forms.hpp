// Trigraded forms in the adapted coframe {dz^a, dzbar^a, eta^i}.
#pragma once

#include "gcfol/coeff.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcfol {

enum class BaseKind : std::uint8_t { Flat, Torus };

/// Shape of the model: complex base dimension m, fibre torus rank p, base model.
struct Layout {
  int m = 0;
  int p = 0;
  BaseKind base = BaseKind::Flat;

  int generators() const { return 2 * m + p; }
  int real_dim() const { return 2 * m + p; }

  /// Real base coordinate k (zero-based); z^a = x^{2a} + i x^{2a+1} in zero-based terms.
  CoordId base_coord(int k) const {
    return base == BaseKind::Flat ? CoordId::flat(k) : CoordId::angle(k);
  }
  CoordId fibre_coord(int i) const { return CoordId::fibre(i); }

  int dz_bit(int a) const { return a; }
  int dzbar_bit(int a) const { return m + a; }
  int eta_bit(int i) const { return 2 * m + i; }

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Tridegree (i, j; k): counts of dz, dzbar and eta generators.
struct Degree {
  int i = 0;
  int j = 0;
  int k = 0;
  auto operator<=>(const Degree&) const = default;
  Degree operator+(const Degree& o) const { return {i + o.i, j + o.j, k + o.k}; }
  int total() const { return i + j + k; }
  std::string str() const {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ";" + std::to_string(k) + ")";
  }
};

using Monomial = std::uint32_t;

/// Sign and result of wedging two coframe monomials; sign 0 when they share a generator.
inline int wedge_sign(Monomial a, Monomial b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Monomial rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

class GradedForm {
 public:
  using Terms = std::map<Monomial, CoeffFn>;

  GradedForm() = default;
  explicit GradedForm(Layout l) : layout_(l) {}
  GradedForm(Layout l, const CoeffFn& f) : layout_(l) { add(0, f); }

  static GradedForm term(Layout l, Monomial mono, const CoeffFn& f) {
    GradedForm r(l);
    r.add(mono, f);
    return r;
  }
  static GradedForm dz(Layout l, int a) { return term(l, Monomial{1} << l.dz_bit(a), 1); }
  static GradedForm dzbar(Layout l, int a) { return term(l, Monomial{1} << l.dzbar_bit(a), 1); }
  static GradedForm eta(Layout l, int i) { return term(l, Monomial{1} << l.eta_bit(i), 1); }
  /// Real coordinate differential dx^k of the base, k zero-based.
  static GradedForm dx(Layout l, int k) {
    int a = k / 2;
    if (k % 2 == 0) return (dz(l, a) + dzbar(l, a)) * Scalar::frac(1, 2);
    return (dz(l, a) - dzbar(l, a)) * Scalar(GaussQ(0, mpq_class(-1, 2)));
  }
  /// eta^{i1} ^ eta^{i2} ^ ...
  static GradedForm etas(Layout l, std::initializer_list<int> idx, const CoeffFn& f = 1) {
    GradedForm r(l, f);
    for (int i : idx) r = r.wedge(eta(l, i));
    return r;
  }

  const Layout& layout() const { return layout_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  Degree degree_of(Monomial mono) const {
    Monomial zmask = (Monomial{1} << layout_.m) - 1;
    return {std::popcount(mono & zmask), std::popcount((mono >> layout_.m) & zmask),
            std::popcount(mono >> (2 * layout_.m))};
  }
  std::set<Degree> degrees() const {
    std::set<Degree> r;
    for (auto& [mono, f] : t_) r.insert(degree_of(mono));
    return r;
  }
  bool is_homogeneous() const { return degrees().size() <= 1; }

  void add(Monomial mono, const CoeffFn& f) {
    if (f.is_zero()) return;
    auto it = t_.find(mono);
    if (it == t_.end()) {
      t_.emplace(mono, f);
      return;
    }
    it->second += f;
    if (it->second.is_zero()) t_.erase(it);
  }

  GradedForm& operator+=(const GradedForm& o) {
    check(o);
    for (auto& [m, f] : o.t_) add(m, f);
    return *this;
  }
  GradedForm& operator-=(const GradedForm& o) {
    check(o);
    for (auto& [m, f] : o.t_) add(m, -f);
    return *this;
  }
  friend GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
  friend GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
  GradedForm operator-() const {
    GradedForm r(layout_);
    for (auto& [m, f] : t_) r.t_.emplace(m, -f);
    return r;
  }
  friend GradedForm operator*(const GradedForm& a, const CoeffFn& g) {
    GradedForm r(a.layout_);
    for (auto& [m, f] : a.t_) r.add(m, f * g);
    return r;
  }
  friend GradedForm operator*(const CoeffFn& g, const GradedForm& a) { return a * g; }
  friend GradedForm operator*(const GradedForm& a, const Scalar& s) {
    GradedForm r(a.layout_);
    if (s.is_zero()) return r;
    for (auto& [m, f] : a.t_) r.add(m, f * s);
    return r;
  }
  friend GradedForm operator*(const Scalar& s, const GradedForm& a) { return a * s; }

  friend bool operator==(const GradedForm& a, const GradedForm& b) {
    return a.layout_ == b.layout_ && a.t_ == b.t_;
  }

  GradedForm wedge(const GradedForm& o) const {
    check(o);
    GradedForm r(layout_);
    for (auto& [ma, fa] : t_)
      for (auto& [mb, fb] : o.t_) {
        int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        CoeffFn prod = fa * fb;
        r.add(ma | mb, s > 0 ? prod : -prod);
      }
    return r;
  }

  /// Complex conjugation: conjugates coefficients and swaps dz with dzbar.
  GradedForm conj() const {
    GradedForm r(layout_);
    for (auto& [mono, f] : t_) {
      auto [cm, sign] = conj_monomial(mono);
      CoeffFn g = f.conj();
      r.add(cm, sign > 0 ? g : -g);
    }
    return r;
  }
  bool is_real() const { return conj() == *this; }
  GradedForm real_part() const { return (*this + conj()) * Scalar::frac(1, 2); }
  GradedForm imag_part() const {
    return (*this - conj()) * Scalar(GaussQ(0, mpq_class(-1, 2)));
  }

  GradedForm project_degree(Degree d) const {
    return filter([&](Degree g) { return g == d; });
  }
  /// Real-bidegree projection (j; k) with j = i + j.
  GradedForm project_bidegree(int n, int k) const {
    return filter([&](Degree g) { return g.i + g.j == n && g.k == k; });
  }
  GradedForm project_total(int n) const {
    return filter([&](Degree g) { return g.total() == n; });
  }
  /// Terms with at least one dz and one dzbar.
  GradedForm truncate() const {
    return filter([](Degree g) { return g.i >= 1 && g.j >= 1; });
  }
  /// Terms with no dz (the Lambda K^* summand).
  GradedForm restrict_K() const {
    return filter([](Degree g) { return g.i == 0; });
  }

  template <class Pred>
  GradedForm filter(Pred pred) const {
    GradedForm r(layout_);
    for (auto& [mono, f] : t_)
      if (pred(degree_of(mono))) r.t_.emplace(mono, f);
    return r;
  }

  /// Applies a map to every coefficient.
  template <class Fn>
  GradedForm map_coeffs(Fn fn) const {
    GradedForm r(layout_);
    for (auto& [mono, f] : t_) r.add(mono, fn(f));
    return r;
  }
  GradedForm fibre_average() const {
    return map_coeffs([](const CoeffFn& f) { return f.fibre_average(); });
  }

  /// Interior product with the dual vector of coframe generator `bit`.
  GradedForm contract(int bit) const {
    GradedForm r(layout_);
    for (auto& [mono, f] : t_) {
      if (!(mono >> bit & 1)) continue;
      int before = std::popcount(mono & ((Monomial{1} << bit) - 1));
      r.add(mono & ~(Monomial{1} << bit), (before & 1) ? -f : f);
    }
    return r;
  }

  int max_poly_degree() const {
    int d = 0;
    for (auto& [m, f] : t_) d = std::max(d, f.poly_degree());
    return d;
  }
  int max_frequency(CoordKind kind) const {
    int d = 0;
    for (auto& [m, f] : t_) d = std::max(d, f.frequency_norm(kind));
    return d;
  }

  std::string monomial_name(Monomial mono) const {
    if (mono == 0) return "1";
    std::string s;
    for (int b = 0; b < layout_.generators(); ++b) {
      if (!(mono >> b & 1)) continue;
      if (!s.empty()) s += "^";
      if (b < layout_.m)
        s += "dz" + std::to_string(b + 1);
      else if (b < 2 * layout_.m)
        s += "dzb" + std::to_string(b - layout_.m + 1);
      else
        s += "th" + std::to_string(b - 2 * layout_.m + 1);
    }
    return s;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [mono, f] : t_) {
      if (!s.empty()) s += " + ";
      s += "[" + f.str() + "]";
      if (mono) s += "*" + monomial_name(mono);
    }
    return s;
  }

 private:
  void check(const GradedForm& o) const {
    if (!(layout_ == o.layout_)) throw std::invalid_argument("forms from different scenarios");
  }

  std::pair<Monomial, int> conj_monomial(Monomial mono) const {
    // rebuild the wedge product generator by generator in the original order
    Monomial acc = 0;
    int sign = 1;
    for (int b = 0; b < layout_.generators(); ++b) {
      if (!(mono >> b & 1)) continue;
      int nb = b < layout_.m ? b + layout_.m : (b < 2 * layout_.m ? b - layout_.m : b);
      Monomial g = Monomial{1} << nb;
      sign *= wedge_sign(acc, g);
      acc |= g;
    }
    return {acc, sign};
  }

  Layout layout_;
  Terms t_;
};

inline std::ostream& operator<<(std::ostream& os, const GradedForm& f) { return os << f.str(); }

}  // namespace gcfol
