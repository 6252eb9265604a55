// Coefficient functions on the model total space: finite Fourier sums in the
// angle coordinates times polynomials in the flat coordinates.
#pragma once

#include "gcfol/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcfol {

enum class CoordKind : std::uint8_t { Fibre = 0, BaseAngle = 1, Flat = 2 };

/// A coordinate of the model: fibre angle t_i, torus-base angle u_j or flat x_k.
/// Indices are zero-based; names print one-based.
struct CoordId {
  CoordKind kind = CoordKind::Fibre;
  int index = 0;

  static CoordId fibre(int i) { return {CoordKind::Fibre, i}; }
  static CoordId angle(int j) { return {CoordKind::BaseAngle, j}; }
  static CoordId flat(int k) { return {CoordKind::Flat, k}; }

  bool is_angle() const { return kind != CoordKind::Flat; }
  int code() const { return static_cast<int>(kind) * 256 + index; }
  static CoordId from_code(int c) { return {static_cast<CoordKind>(c / 256), c % 256}; }

  std::string name() const {
    static const char* prefix[] = {"t", "u", "x"};
    return prefix[static_cast<int>(kind)] + std::to_string(index + 1);
  }
  friend bool operator==(const CoordId&, const CoordId&) = default;
};

/// Error raised when a periodic primitive is requested for a zero Fourier mode.
struct NotInvertibleMode : std::domain_error {
  using std::domain_error::domain_error;
};

/// Exact phase exp(2*pi*i*q) for q in (1/4)Z.
inline GaussQ quarter_phase(const mpq_class& q) {
  mpq_class four = q * 4;
  four.canonicalize();
  if (four.get_den() != 1) throw std::domain_error("angle is not a quarter period: " + q.get_str());
  mpz_class r = four.get_num() % 4;
  if (r < 0) r += 4;
  switch (r.get_si()) {
    case 0: return GaussQ(1);
    case 1: return GaussQ::I();
    case 2: return GaussQ(-1);
    default: return -GaussQ::I();
  }
}

class CoeffFn {
 public:
  /// Sorted (coordinate code, frequency-or-exponent) pairs with nonzero entries.
  using Key = std::vector<std::pair<int, int>>;
  using Terms = std::map<Key, Scalar>;

  CoeffFn() = default;
  CoeffFn(Scalar c) { add_term({}, std::move(c)); }  // NOLINT(google-explicit-constructor)
  CoeffFn(long c) : CoeffFn(Scalar(c)) {}            // NOLINT(google-explicit-constructor)

  /// x_k (flat) as a polynomial variable.
  static CoeffFn var(CoordId x, int power = 1) {
    if (x.is_angle()) throw std::domain_error("angle " + x.name() + " is not a polynomial variable");
    CoeffFn f;
    f.add_term(power == 0 ? Key{} : Key{{x.code(), power}}, Scalar(1));
    return f;
  }
  /// exp(2*pi*i*n*u) for an angle coordinate.
  static CoeffFn wave(CoordId u, int n) {
    if (!u.is_angle()) throw std::domain_error(u.name() + " is not an angle");
    CoeffFn f;
    f.add_term(n == 0 ? Key{} : Key{{u.code(), n}}, Scalar(1));
    return f;
  }
  static CoeffFn cos(CoordId u, int n) {
    return (wave(u, n) + wave(u, -n)) * Scalar(GaussQ::frac(1, 2));
  }
  static CoeffFn sin(CoordId u, int n) {
    return (wave(u, n) - wave(u, -n)) * Scalar(GaussQ(0, mpq_class(-1, 2)));
  }
  static CoeffFn monomial(Key key, Scalar c) {
    CoeffFn f;
    std::sort(key.begin(), key.end());
    std::erase_if(key, [](auto& e) { return e.second == 0; });
    f.add_term(std::move(key), std::move(c));
    return f;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  /// Entry of a key for a coordinate (0 when absent).
  static int entry(const Key& k, CoordId c) {
    for (auto& [code, v] : k)
      if (code == c.code()) return v;
    return 0;
  }

  CoeffFn& operator+=(const CoeffFn& o) {
    for (auto& [k, c] : o.t_) add_term(k, c);
    return *this;
  }
  CoeffFn& operator-=(const CoeffFn& o) {
    for (auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
  }
  CoeffFn operator-() const {
    CoeffFn r;
    for (auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }
  friend CoeffFn operator+(CoeffFn a, const CoeffFn& b) { return a += b; }
  friend CoeffFn operator-(CoeffFn a, const CoeffFn& b) { return a -= b; }

  friend CoeffFn operator*(const CoeffFn& a, const Scalar& s) {
    if (s.is_zero()) return {};
    CoeffFn r;
    for (auto& [k, c] : a.t_) r.add_term(k, c * s);
    return r;
  }
  friend CoeffFn operator*(const Scalar& s, const CoeffFn& a) { return a * s; }

  friend CoeffFn operator*(const CoeffFn& a, const CoeffFn& b) {
    CoeffFn r;
    for (auto& [ka, ca] : a.t_)
      for (auto& [kb, cb] : b.t_) r.add_term(merge(ka, kb), ca * cb);
    return r;
  }
  CoeffFn& operator*=(const CoeffFn& o) { return *this = *this * o; }

  friend bool operator==(const CoeffFn& a, const CoeffFn& b) { return a.t_ == b.t_; }

  /// (n, m, e, c) -> (-n, -m, e, conj c).
  CoeffFn conj() const {
    CoeffFn r;
    for (auto& [k, c] : t_) {
      Key nk = k;
      for (auto& [code, v] : nk)
        if (CoordId::from_code(code).is_angle()) v = -v;
      r.t_.emplace(std::move(nk), c.conj());
    }
    return r;
  }
  bool is_real() const { return conj() == *this; }
  CoeffFn real_part() const { return (*this + conj()) * Scalar::frac(1, 2); }

  CoeffFn differentiate(CoordId var) const {
    CoeffFn r;
    const int code = var.code();
    for (auto& [k, c] : t_) {
      auto it = std::find_if(k.begin(), k.end(), [&](auto& e) { return e.first == code; });
      if (it == k.end()) continue;
      const int v = it->second;
      if (var.is_angle()) {
        r.add_term(k, c * Scalar(GaussQ(v), 1));
      } else {
        Key nk = k;
        auto jt = nk.begin() + (it - k.begin());
        if (v == 1)
          nk.erase(jt);
        else
          jt->second = v - 1;
        r.add_term(std::move(nk), c * Scalar(v));
      }
    }
    return r;
  }

  /// Keeps the terms with zero fibre frequency.
  CoeffFn fibre_average() const {
    CoeffFn r;
    for (auto& [k, c] : t_)
      if (fibre_free(k)) r.t_.emplace(k, c);
    return r;
  }
  bool fibre_independent() const {
    return std::all_of(t_.begin(), t_.end(), [](auto& kv) { return fibre_free(kv.first); });
  }
  static bool fibre_free(const Key& k) {
    return std::none_of(k.begin(), k.end(), [](auto& e) {
      return CoordId::from_code(e.first).kind == CoordKind::Fibre;
    });
  }

  /// Terms whose fibre-frequency part equals the given sparse vector.
  CoeffFn fibre_mode(const Key& fibre_part) const {
    CoeffFn r;
    for (auto& [k, c] : t_)
      if (fibre_key(k) == fibre_part) r.t_.emplace(k, c);
    return r;
  }
  static Key fibre_key(const Key& k) {
    Key r;
    for (auto& e : k)
      if (CoordId::from_code(e.first).kind == CoordKind::Fibre) r.push_back(e);
    return r;
  }

  /// g with d/dvar g = this, exact.
  CoeffFn mode_primitive(CoordId var) const {
    CoeffFn r;
    const int code = var.code();
    for (auto& [k, c] : t_) {
      const int v = entry(k, var);
      if (var.is_angle()) {
        if (v == 0)
          throw NotInvertibleMode("zero frequency in " + var.name() + " has no periodic primitive");
        r.add_term(k, c.divided_by(Scalar(GaussQ(v), 1)));
      } else {
        Key nk = k;
        if (v == 0) {
          nk.emplace_back(code, 1);
          std::sort(nk.begin(), nk.end());
        } else {
          for (auto& e : nk)
            if (e.first == code) e.second = v + 1;
        }
        r.add_term(std::move(nk), c.divided_by(Scalar(v + 1)));
      }
    }
    return r;
  }

  /// Highest total polynomial degree and highest |frequency| sum (for search caps).
  int poly_degree() const {
    int d = 0;
    for (auto& [k, c] : t_) {
      int s = 0;
      for (auto& [code, v] : k)
        if (!CoordId::from_code(code).is_angle()) s += v;
      d = std::max(d, s);
    }
    return d;
  }
  int frequency_norm(CoordKind kind) const {
    int d = 0;
    for (auto& [k, c] : t_) {
      int s = 0;
      for (auto& [code, v] : k)
        if (CoordId::from_code(code).kind == kind) s += std::abs(v);
      d = std::max(d, s);
    }
    return d;
  }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  Scalar constant_term() const {
    auto it = t_.find(Key{});
    return it == t_.end() ? Scalar() : it->second;
  }

  /// Value at a point. Angle values must be quarter periods; every term must be tau-free
  /// after evaluation or a domain error is thrown.
  Scalar evaluate(const std::function<mpq_class(CoordId)>& value) const {
    Scalar r;
    for (auto& [k, c] : t_) {
      GaussQ w(1);
      for (auto& [code, v] : k) {
        CoordId id = CoordId::from_code(code);
        mpq_class x = value(id);
        if (id.is_angle()) {
          w *= quarter_phase(x * v);
        } else {
          mpq_class p = 1;
          for (int e = 0; e < v; ++e) p *= x;
          w *= GaussQ(p);
        }
      }
      r += c * Scalar(w);
    }
    return r;
  }

  /// Affine change of variables: fibre t -> M t + shift, base angles and flat coordinates
  /// translated. `fibre_matrix` is row-major p x p; empty means identity.
  CoeffFn substitute(int fibre_rank, const std::vector<int>& fibre_matrix,
                     const std::vector<mpq_class>& fibre_shift,
                     const std::function<mpq_class(CoordId)>& base_shift) const {
    CoeffFn r;
    for (auto& [k, c] : t_) {
      // exp(2 pi i n.(Mt + s)) = exp(2 pi i (M^T n).t) * exp(2 pi i n.s)
      std::vector<int> n(fibre_rank, 0);
      Key rest;
      for (auto& [code, v] : k) {
        CoordId id = CoordId::from_code(code);
        if (id.kind == CoordKind::Fibre)
          n.at(id.index) = v;
        else
          rest.emplace_back(code, v);
      }
      GaussQ phase(1);
      Key fk;
      for (int j = 0; j < fibre_rank; ++j) {
        int s = 0;
        for (int i = 0; i < fibre_rank; ++i)
          s += n[i] * (fibre_matrix.empty() ? (i == j) : fibre_matrix[i * fibre_rank + j]);
        if (s != 0) fk.emplace_back(CoordId::fibre(j).code(), s);
        if (!fibre_shift.empty() && n[j] != 0) phase *= quarter_phase(fibre_shift[j] * n[j]);
      }
      CoeffFn term = CoeffFn::monomial(fk, c * Scalar(phase));
      for (auto& [code, v] : rest) {
        CoordId id = CoordId::from_code(code);
        mpq_class sh = base_shift(id);
        if (id.is_angle()) {
          term = term * CoeffFn(Scalar(quarter_phase(sh * v))) * wave(id, v);
        } else {
          // (x + sh)^v by the binomial theorem
          CoeffFn poly;
          mpz_class binom = 1;
          mpq_class shp = 1;
          for (int j = 0; j <= v; ++j) {
            // coefficient of x^(v-j) is C(v,j) sh^j
            poly += CoeffFn::var(id, v - j) * Scalar(GaussQ(mpq_class(binom) * shp));
            binom = binom * (v - j) / (j + 1);
            shp *= sh;
          }
          term = term * poly;
        }
      }
      r += term;
    }
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, c] : t_) {
      if (!first) s += " + ";
      first = false;
      std::string mono;
      std::string waves;
      for (auto& [code, v] : k) {
        CoordId id = CoordId::from_code(code);
        if (id.is_angle()) {
          if (!waves.empty()) waves += (v > 0 ? "+" : "");
          waves += (v == 1 ? "" : v == -1 ? "-" : std::to_string(v) + "*") + id.name();
        } else {
          mono += "*" + id.name() + (v == 1 ? "" : "^" + std::to_string(v));
        }
      }
      std::string t = c.str();
      if (!waves.empty()) t += "*e(" + waves + ")";
      s += t + mono;
    }
    return s;
  }

 private:
  static Key merge(const Key& a, const Key& b) {
    Key r;
    r.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
      if (j == b.end() || (i != a.end() && i->first < j->first)) {
        r.push_back(*i++);
      } else if (i == a.end() || j->first < i->first) {
        r.push_back(*j++);
      } else {
        int v = i->second + j->second;
        if (v != 0) r.emplace_back(i->first, v);
        ++i;
        ++j;
      }
    }
    return r;
  }

  void add_term(Key k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(std::move(k), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  Terms t_;
};

}  // namespace gcfol
