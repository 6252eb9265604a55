// Exact scalars: Gaussian rationals and Laurent polynomials in the unit 2*pi*i.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gcfol {

/// Element of Q(i) with arbitrary-precision rational parts.
struct GaussQ {
  mpq_class re{0};
  mpq_class im{0};

  GaussQ() = default;
  GaussQ(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussQ(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  static GaussQ frac(long num, long den) { return GaussQ(mpq_class(num, den)); }
  static GaussQ I() { return GaussQ(0, 1); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussQ conj() const { return {re, -im}; }
  GaussQ operator-() const { return {-re, -im}; }

  GaussQ& operator+=(const GaussQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussQ& operator-=(const GaussQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussQ& operator*=(const GaussQ& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussQ inverse() const {
    mpq_class n = re * re + im * im;
    if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
    return {re / n, -im / n};
  }
  GaussQ& operator/=(const GaussQ& o) { return *this *= o.inverse(); }

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::string str() const {
    std::ostringstream os;
    if (sgn(im) == 0) {
      os << re;
    } else if (sgn(re) == 0) {
      if (im == 1)
        os << "i";
      else if (im == -1)
        os << "-i";
      else
        os << im << "i";
    } else {
      os << "(" << re << (sgn(im) > 0 ? "+" : "-");
      mpq_class a = abs(im);
      if (a != 1) os << a;
      os << "i)";
    }
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const GaussQ& q) { return os << q.str(); }

/// Laurent polynomial in the symbolic unit tau = 2*pi*i with Q(i) coefficients.
///
/// Derivatives of exp(2*pi*i*n*t) produce powers of tau and periodic primitives
/// divide by it, so tau is tracked symbolically. Conjugation sends tau to -tau.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) { set(0, GaussQ(v)); }  // NOLINT(google-explicit-constructor)
  Scalar(GaussQ q, int tau_power = 0) { set(tau_power, std::move(q)); }  // NOLINT

  static Scalar tau(int power = 1) { return Scalar(GaussQ(1), power); }
  static Scalar I() { return Scalar(GaussQ::I()); }
  static Scalar frac(long n, long d) { return Scalar(GaussQ::frac(n, d)); }

  bool is_zero() const { return c_.empty(); }
  bool is_tau_free() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
  const std::map<int, GaussQ>& coeffs() const { return c_; }

  /// The tau^0 coefficient; throws if other powers are present.
  GaussQ value() const {
    if (!is_tau_free()) throw std::domain_error("scalar depends on 2*pi*i: " + str());
    return c_.empty() ? GaussQ() : c_.begin()->second;
  }

  Scalar conj() const {
    Scalar r;
    for (auto& [k, q] : c_) r.c_.emplace(k, (k % 2 == 0) ? q.conj() : -q.conj());
    return r;
  }
  bool is_real() const { return conj() == *this; }

  /// Real and imaginary parts with respect to conjugation (tau is imaginary).
  Scalar real_part() const { return (*this + conj()) * Scalar(GaussQ::frac(1, 2)); }
  Scalar imag_part() const { return (*this - conj()) * Scalar(GaussQ(0, mpq_class(-1, 2))); }

  Scalar operator-() const {
    Scalar r;
    for (auto& [k, q] : c_) r.c_.emplace(k, -q);
    return r;
  }
  Scalar& operator+=(const Scalar& o) {
    for (auto& [k, q] : o.c_) add(k, q);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (auto& [k, q] : o.c_) add(k, -q);
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (auto& [ka, qa] : a.c_)
      for (auto& [kb, qb] : b.c_) r.add(ka + kb, qa * qb);
    return r;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Division by a monomial scalar q * tau^k (the only invertible elements).
  Scalar divided_by(const Scalar& d) const {
    if (d.c_.size() != 1) throw std::domain_error("non-monomial divisor: " + d.str());
    auto& [k, q] = *d.c_.begin();
    GaussQ inv = q.inverse();
    Scalar r;
    for (auto& [ka, qa] : c_) r.c_.emplace(ka - k, qa * inv);
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    // only used for deterministic ordering in tests
    return a.str() < b.str();
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, q] : c_) {
      if (!first) s += " + ";
      first = false;
      std::string qs = q.str();
      if (k == 0) {
        s += qs;
      } else {
        if (!(q == GaussQ(1))) s += qs + "*";
        s += "(2*pi*i)";
        if (k != 1) s += "^" + std::to_string(k);
      }
    }
    return c_.size() > 1 ? "(" + s + ")" : s;
  }

 private:
  void set(int k, GaussQ q) {
    c_.clear();
    if (!q.is_zero()) c_.emplace(k, std::move(q));
  }
  void add(int k, const GaussQ& q) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      if (!q.is_zero()) c_.emplace(k, q);
      return;
    }
    it->second += q;
    if (it->second.is_zero()) c_.erase(it);
  }

  std::map<int, GaussQ> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace gcfol
