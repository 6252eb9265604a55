// Scenario files: a small sectioned text format with an expression sub-language for
// coefficient functions.
//
//   [bundle]      name, base = flat|torus, base_dim (complex), fibre_rank
//   [connection]  A[i,k] = expr        fibre i, real base coordinate k (1-based)
//   [omega]       th1^th2 = expr
//   [lattice]     g1.translation = 1 0 ; g1.matrix = 1 0, 0 1 ; g1.shift = 0 1/4
//   [overrides]   F1.dz1^dz2 = expr ; point = t1=0 x1=1/2
//   [solver]      degree_cap, trials, seed
//
// Expressions: integers, rationals, i, pi, coordinates t1.. u1.. x1.. (x, y alias x1, x2),
// + - * / ^, and cos/sin/exp of 2*pi*(integer combination of angles), with 2*pi*i for exp.
#pragma once

#include "gcfol/obstruction.hpp"
#include "gcfol/scenario.hpp"

#include <cctype>
#include <cstdio>
#include <set>
#include <cstdint>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcfol {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
        line(line),
        column(col) {}
  int line, column;
};

namespace io {

// ---------------------------------------------------------------------------
// expressions

struct Linear {
  // scalar multiple of a linear combination of angles, or a plain constant
  Scalar constant;
  std::map<int, Scalar> angles;  // angle code -> coefficient
  bool is_constant() const { return angles.empty(); }
};

class ExprParser {
 public:
  ExprParser(std::string text, int line, int col0, Layout layout)
      : s_(std::move(text)), line_(line), col0_(col0), l_(layout) {}

  CoeffFn parse() {
    CoeffFn f = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, col0_ + static_cast<int>(pos_), msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  CoeffFn sum() {
    CoeffFn f = product();
    while (true) {
      if (eat('+'))
        f += product();
      else if (eat('-'))
        f -= product();
      else
        return f;
    }
  }
  CoeffFn product() {
    CoeffFn f = unary();
    while (true) {
      if (eat('*')) {
        f = f * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        CoeffFn d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        Scalar c = d.constant_term();
        if (c.coeffs().size() != 1) {
          pos_ = at;
          fail("division only by a monomial constant");
        }
        f = f * Scalar(1).divided_by(c);
      } else {
        return f;
      }
    }
  }
  CoeffFn unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  CoeffFn power() {
    CoeffFn base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    std::size_t at = pos_;
    long e = integer();
    if (neg) e = -e;
    if (e < 0) {
      if (!base.is_constant() || base.constant_term().coeffs().size() != 1) {
        pos_ = at;
        fail("negative powers only of monomial constants");
      }
      Scalar inv = Scalar(1).divided_by(base.constant_term());
      CoeffFn r(1);
      for (long k = 0; k < -e; ++k) r = r * inv;
      return r;
    }
    CoeffFn r(1);
    for (long k = 0; k < e; ++k) r = r * base;
    return r;
  }
  long integer() {
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected an integer");
    return std::stol(s_.substr(st, pos_ - st));
  }
  std::string word() {
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(st, pos_ - st);
  }

  CoordId coordinate(const std::string& w, std::size_t at) {
    auto bad = [&](const std::string& msg) {
      pos_ = at;
      fail(msg);
    };
    if (w == "x" || w == "y") {
      if (l_.base != BaseKind::Flat) bad("'" + w + "' needs a flat base");
      return CoordId::flat(w == "x" ? 0 : 1);
    }
    char k = w[0];
    int idx = std::stoi(w.substr(1)) - 1;
    if (k == 't') {
      if (idx < 0 || idx >= l_.p) bad("no fibre coordinate " + w);
      return CoordId::fibre(idx);
    }
    if (idx < 0 || idx >= 2 * l_.m) bad("no base coordinate " + w);
    if (k == 'x' && l_.base != BaseKind::Flat) bad("flat coordinate " + w + " on a torus base");
    if (k == 'u' && l_.base != BaseKind::Torus) bad("angle " + w + " on a flat base");
    return k == 'x' ? CoordId::flat(idx) : CoordId::angle(idx);
  }
  static bool is_coord_word(const std::string& w) {
    if (w == "x" || w == "y") return true;
    if (w.size() < 2 || (w[0] != 't' && w[0] != 'u' && w[0] != 'x')) return false;
    for (std::size_t k = 1; k < w.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(w[k]))) return false;
    return true;
  }

  CoeffFn atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      CoeffFn f = sum();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return CoeffFn(Scalar(GaussQ(mpq_class(s_.substr(st, pos_ - st)))));
    }
    std::size_t at = pos_;
    std::string w = word();
    if (w.empty()) fail("unexpected '" + std::string(1, c) + "'");
    if (w == "i") return CoeffFn(Scalar::I());
    if (w == "pi") return CoeffFn(Scalar(GaussQ(0, mpq_class(-1, 2)), 1));  // tau / (2i)
    if (w == "cos" || w == "sin" || w == "exp") return call(w, at);
    if (is_coord_word(w)) {
      CoordId id = coordinate(w, at);
      if (id.is_angle()) {
        pos_ = at;
        fail("angle " + w + " may only appear inside cos, sin or exp");
      }
      return CoeffFn::var(id);
    }
    pos_ = at;
    fail("unknown name '" + w + "'");
  }

  // argument of a periodic function: a linear combination of angles
  Linear lin_sum() {
    Linear a = lin_product();
    while (true) {
      if (eat('+'))
        a = lin_add(a, lin_product(), 1);
      else if (eat('-'))
        a = lin_add(a, lin_product(), -1);
      else
        return a;
    }
  }
  static Linear lin_add(Linear a, const Linear& b, long sign) {
    a.constant += b.constant * Scalar(sign);
    for (auto& [k, v] : b.angles) a.angles[k] += v * Scalar(sign);
    std::erase_if(a.angles, [](auto& e) { return e.second.is_zero(); });
    return a;
  }
  Linear lin_product() {
    Linear a = lin_unary();
    while (true) {
      std::size_t at = pos_;
      if (eat('*')) {
        Linear b = lin_unary();
        if (!a.is_constant() && !b.is_constant()) {
          pos_ = at;
          fail("product of two angles in a periodic argument");
        }
        if (!a.is_constant()) std::swap(a, b);
        Linear r;
        r.constant = a.constant * b.constant;
        for (auto& [k, v] : b.angles) r.angles[k] = a.constant * v;
        std::erase_if(r.angles, [](auto& e) { return e.second.is_zero(); });
        a = r;
      } else if (eat('/')) {
        Linear b = lin_unary();
        if (!b.is_constant() || b.constant.coeffs().size() != 1) {
          pos_ = at;
          fail("division only by a monomial constant");
        }
        a.constant = a.constant.divided_by(b.constant);
        for (auto& [k, v] : a.angles) v = v.divided_by(b.constant);
      } else {
        return a;
      }
    }
  }
  Linear lin_unary() {
    if (eat('-')) {
      Linear a = lin_unary();
      return lin_add(Linear{}, a, -1);
    }
    skip();
    if (eat('(')) {
      Linear a = lin_sum();
      expect(')');
      return a;
    }
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      return Linear{Scalar(GaussQ(mpq_class(integer()))), {}};
    }
    std::size_t at = pos_;
    std::string w = word();
    if (w == "i") return Linear{Scalar::I(), {}};
    if (w == "pi") return Linear{Scalar(GaussQ(0, mpq_class(-1, 2)), 1), {}};
    if (is_coord_word(w)) {
      CoordId id = coordinate(w, at);
      if (!id.is_angle()) {
        pos_ = at;
        fail("periodic functions take angles, not " + w);
      }
      return Linear{Scalar(), {{id.code(), Scalar(1)}}};
    }
    pos_ = at;
    fail("bad periodic argument");
  }

  CoeffFn call(const std::string& fn, std::size_t at) {
    expect('(');
    Linear arg = lin_sum();
    expect(')');
    if (!arg.constant.is_zero()) {
      pos_ = at;
      fail(fn + " argument must be a combination of angles without constant term");
    }
    // exp needs 2*pi*i*n, cos and sin need 2*pi*n
    Scalar unit = fn == "exp" ? Scalar::tau() : Scalar(GaussQ(0, -1), 1);
    CoeffFn w(1);
    for (auto& [code, c] : arg.angles) {
      Scalar n = c.divided_by(unit);
      bool ok = n.is_tau_free() && n.value().im == 0 && n.value().re.get_den() == 1;
      if (!ok) {
        pos_ = at;
        fail(fn + " argument must be " + (fn == "exp" ? "2*pi*i" : "2*pi") + " times an integer combination of angles");
      }
      w = w * CoeffFn::wave(CoordId::from_code(code), static_cast<int>(n.value().re.get_num().get_si()));
    }
    if (fn == "exp") return w;
    CoeffFn wc = w.conj();
    if (fn == "cos") return (w + wc) * Scalar::frac(1, 2);
    return (w - wc) * Scalar(GaussQ(0, mpq_class(-1, 2)));
  }

  std::string s_;
  std::size_t pos_ = 0;
  int line_, col0_;
  Layout l_;
};

// ---------------------------------------------------------------------------
// serialization of coefficient functions

inline std::string q_str(const mpq_class& q) { return q.get_str(); }

inline std::string gauss_str(const GaussQ& g) {
  if (g.im == 0) return q_str(g.re);
  if (g.re == 0) return "(" + q_str(g.im) + "*i)";
  return "(" + q_str(g.re) + "+" + q_str(g.im) + "*i)";
}

inline std::string coeff_str(const CoeffFn& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto& [key, s] : f.terms())
    for (auto& [tp, q] : s.coeffs()) {
      std::string t = gauss_str(q);
      if (tp != 0) t += "*(2*pi*i)^" + std::to_string(tp);
      std::string waves;
      for (auto& [code, v] : key) {
        CoordId id = CoordId::from_code(code);
        if (id.is_angle()) {
          if (!waves.empty()) waves += "+";
          waves += std::to_string(v) + "*" + id.name();
        } else {
          t += "*" + id.name() + (v != 1 ? "^" + std::to_string(v) : "");
        }
      }
      if (!waves.empty()) t += "*exp(2*pi*i*(" + waves + "))";
      out += (out.empty() ? "" : " + ") + t;
    }
  return out;
}

inline std::string monomial_str(const Layout& l, Monomial mono) {
  return GradedForm(l).monomial_name(mono);
}

inline Monomial parse_monomial(const std::string& w, const Layout& l, int line, int col) {
  Monomial m = 0;
  std::stringstream ss(w);
  std::string g;
  while (std::getline(ss, g, '^')) {
    auto num = [&](std::size_t off) {
      try {
        return std::stoi(g.substr(off)) - 1;
      } catch (...) {
        throw ParseError(line, col, "bad generator '" + g + "'");
      }
    };
    int bit = -1;
    if (g.rfind("dzb", 0) == 0) {
      int a = num(3);
      if (a >= 0 && a < l.m) bit = l.dzbar_bit(a);
    } else if (g.rfind("dz", 0) == 0) {
      int a = num(2);
      if (a >= 0 && a < l.m) bit = l.dz_bit(a);
    } else if (g.rfind("th", 0) == 0) {
      int i = num(2);
      if (i >= 0 && i < l.p) bit = l.eta_bit(i);
    }
    if (bit < 0) throw ParseError(line, col, "unknown generator '" + g + "'");
    Monomial b = Monomial{1} << bit;
    if (m & b) throw ParseError(line, col, "repeated generator '" + g + "'");
    if (m >= b) throw ParseError(line, col, "generators must be listed in order dz, dzb, th by index");
    m |= b;
  }
  return m;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline mpq_class parse_rational(const std::string& tok, int line, int col) {
  try {
    mpq_class q(tok);
    q.canonicalize();
    return q;
  } catch (...) {
    throw ParseError(line, col, "bad rational '" + tok + "'");
  }
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::stringstream ss(s);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace io

/// Parses the text into a Scenario without checking semantic invariants.
inline Scenario parse_scenario_unchecked(const std::string& text) {
  Scenario s;
  std::string section;
  struct Pending {
    std::string key, value;
    int line, vcol;
  };
  std::map<std::string, std::vector<Pending>> by_section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string body = raw.substr(0, raw.find('#'));
    std::string t = io::trim(body);
    if (t.empty()) continue;
    int col = static_cast<int>(body.find_first_not_of(" \t")) + 1;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(line, col, "unterminated section header");
      section = t.substr(1, t.size() - 2);
      static const std::set<std::string> known = {"bundle", "connection", "omega", "lattice", "overrides", "solver"};
      if (!known.count(section)) throw ParseError(line, col, "unknown section [" + section + "]");
      by_section[section];
      continue;
    }
    if (section.empty()) throw ParseError(line, col, "entry outside a section");
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, col, "expected 'key = value'");
    std::string key = io::trim(body.substr(0, eq));
    std::string value = body.substr(eq + 1);
    int vcol = static_cast<int>(eq) + 2;
    by_section[section].push_back({key, value, line, vcol});
  }

  // [bundle]
  int m = -1, p = -1;
  BaseKind base = BaseKind::Flat;
  for (auto& e : by_section["bundle"]) {
    std::string v = io::trim(e.value);
    auto as_int = [&] {
      try {
        std::size_t used = 0;
        int r = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return r;
      } catch (...) {
        throw ParseError(e.line, e.vcol, "expected an integer for " + e.key);
      }
    };
    if (e.key == "name")
      s.name = v;
    else if (e.key == "base_dim")
      m = as_int();
    else if (e.key == "fibre_rank")
      p = as_int();
    else if (e.key == "base") {
      if (v == "flat")
        base = BaseKind::Flat;
      else if (v == "torus")
        base = BaseKind::Torus;
      else
        throw ParseError(e.line, e.vcol, "base must be flat or torus");
    } else
      throw ParseError(e.line, 1, "unknown bundle key '" + e.key + "'");
  }
  if (m < 0 || p < 0) throw ParseError(line, 1, "[bundle] needs base_dim and fibre_rank");
  if (2 * m + p > 30) throw ParseError(line, 1, "model too large");
  Layout l{m, p, base};
  s.layout = l;
  s.connection.assign(p, std::vector<CoeffFn>(2 * m));
  s.omega = GradedForm(l);
  auto expr = [&](const Pending& e) { return io::ExprParser(e.value, e.line, e.vcol, l).parse(); };

  for (auto& e : by_section["connection"]) {
    static const std::regex entry(R"(A\[\s*(\d+)\s*,\s*(\d+)\s*\])");
    std::smatch mt;
    if (!std::regex_match(e.key, mt, entry)) throw ParseError(e.line, 1, "connection entries are written A[i,k] = expr");
    int i = std::stoi(mt[1]), k = std::stoi(mt[2]);
    if (i < 1 || i > p || k < 1 || k > 2 * m) throw ParseError(e.line, 1, "connection index out of range");
    s.connection[i - 1][k - 1] += expr(e);
  }
  for (auto& e : by_section["omega"]) {
    Monomial mono = io::parse_monomial(e.key, l, e.line, 1);
    s.omega += GradedForm::term(l, mono, expr(e));
  }
  std::map<int, LatticeGenerator> gens;
  for (auto& e : by_section["lattice"]) {
    int g = 0;
    char field[32] = {0};
    if (std::sscanf(e.key.c_str(), "g%d.%31s", &g, field) != 2 || g < 1)
      throw ParseError(e.line, 1, "lattice entries are written g<n>.translation|matrix|shift");
    LatticeGenerator& gen = gens[g];
    std::string f = field;
    std::string v = e.value;
    for (char& c : v)
      if (c == ',') c = ' ';
    std::vector<mpq_class> nums;
    for (auto& tok : io::split_ws(v)) nums.push_back(io::parse_rational(tok, e.line, e.vcol));
    if (f == "translation") {
      if (static_cast<int>(nums.size()) != 2 * m) throw ParseError(e.line, e.vcol, "translation needs one entry per real base coordinate");
      gen.translation = nums;
    } else if (f == "matrix") {
      if (static_cast<int>(nums.size()) != p * p) throw ParseError(e.line, e.vcol, "matrix needs fibre_rank^2 entries");
      gen.fibre_matrix.clear();
      for (auto& q : nums) {
        if (q.get_den() != 1) throw ParseError(e.line, e.vcol, "matrix entries must be integers");
        gen.fibre_matrix.push_back(static_cast<int>(q.get_num().get_si()));
      }
    } else if (f == "shift") {
      if (static_cast<int>(nums.size()) != p) throw ParseError(e.line, e.vcol, "shift needs fibre_rank entries");
      gen.fibre_shift = nums;
    } else {
      throw ParseError(e.line, 1, "unknown lattice field '" + f + "'");
    }
  }
  for (auto& [n, g] : gens) {
    if (g.translation.empty()) g.translation.assign(2 * m, mpq_class(0));
    s.lattice.push_back(g);
  }
  for (auto& e : by_section["overrides"]) {
    if (e.key == "point") {
      Point pt;
      for (auto& tok : io::split_ws(e.value)) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError(e.line, e.vcol, "points are written coord=value");
        std::string name = tok.substr(0, eq);
        CoordId id;
        if (name == "x" || name == "y") {
          id = CoordId::flat(name == "x" ? 0 : 1);
        } else {
          int idx = 0;
          if (name.size() < 2 || std::sscanf(name.c_str() + 1, "%d", &idx) != 1)
            throw ParseError(e.line, e.vcol, "bad coordinate '" + name + "'");
          if (name[0] == 't' && idx >= 1 && idx <= p)
            id = CoordId::fibre(idx - 1);
          else if (name[0] == 'u' && base == BaseKind::Torus && idx >= 1 && idx <= 2 * m)
            id = CoordId::angle(idx - 1);
          else if (name[0] == 'x' && base == BaseKind::Flat && idx >= 1 && idx <= 2 * m)
            id = CoordId::flat(idx - 1);
          else
            throw ParseError(e.line, e.vcol, "bad coordinate '" + name + "'");
        }
        pt.set(id, io::parse_rational(tok.substr(eq + 1), e.line, e.vcol));
      }
      s.sample_points.push_back(std::move(pt));
      continue;
    }
    int i = 0;
    char monos[64] = {0};
    if (std::sscanf(e.key.c_str(), "F%d.%63s", &i, monos) != 2 || i < 1 || i > p)
      throw ParseError(e.line, 1, "curvature entries are written F<i>.<base 2-form> = expr");
    if (!s.curvature_override) s.curvature_override.emplace(p, GradedForm(l));
    Monomial mono = io::parse_monomial(monos, l, e.line, 1);
    (*s.curvature_override)[i - 1] += GradedForm::term(l, mono, expr(e));
  }
  for (auto& e : by_section["solver"]) {
    std::string v = io::trim(e.value);
    long n = 0;
    try {
      std::size_t used = 0;
      n = std::stol(v, &used);
      if (used != v.size() || n < 0) throw std::invalid_argument("");
    } catch (...) {
      throw ParseError(e.line, e.vcol, "expected a nonnegative integer");
    }
    if (e.key == "degree_cap")
      s.solver.degree_cap = static_cast<int>(n);
    else if (e.key == "trials")
      s.solver.trials = static_cast<int>(n);
    else if (e.key == "seed")
      s.solver.seed = static_cast<std::uint64_t>(n);
    else
      throw ParseError(e.line, 1, "unknown solver key '" + e.key + "'");
  }
  return s;
}

/// Canonical text form; parse_scenario_unchecked(serialize_scenario(s)) == s.
inline std::string serialize_scenario(const Scenario& s) {
  const Layout& l = s.layout;
  std::ostringstream o;
  o << "[bundle]\n";
  if (!s.name.empty()) o << "name = " << s.name << "\n";
  o << "base = " << (l.base == BaseKind::Flat ? "flat" : "torus") << "\n";
  o << "base_dim = " << l.m << "\nfibre_rank = " << l.p << "\n\n[connection]\n";
  for (int i = 0; i < l.p; ++i)
    for (int k = 0; k < 2 * l.m; ++k)
      if (!s.A(i, k).is_zero()) o << "A[" << i + 1 << "," << k + 1 << "] = " << io::coeff_str(s.A(i, k)) << "\n";
  o << "\n[omega]\n";
  for (auto& [mono, f] : s.omega.terms()) o << io::monomial_str(l, mono) << " = " << io::coeff_str(f) << "\n";
  if (!s.lattice.empty()) {
    o << "\n[lattice]\n";
    for (std::size_t n = 0; n < s.lattice.size(); ++n) {
      auto& g = s.lattice[n];
      o << "g" << n + 1 << ".translation =";
      for (auto& q : g.translation) o << " " << q.get_str();
      o << "\n";
      if (!g.fibre_matrix.empty()) {
        o << "g" << n + 1 << ".matrix =";
        for (int r = 0; r < l.p; ++r) {
          for (int c = 0; c < l.p; ++c) o << " " << g.fibre_matrix[r * l.p + c];
          if (r + 1 < l.p) o << ",";
        }
        o << "\n";
      }
      if (!g.fibre_shift.empty()) {
        o << "g" << n + 1 << ".shift =";
        for (auto& q : g.fibre_shift) o << " " << q.get_str();
        o << "\n";
      }
    }
  }
  if (s.curvature_override || !s.sample_points.empty()) {
    o << "\n[overrides]\n";
    if (s.curvature_override)
      for (int i = 0; i < l.p; ++i)
        for (auto& [mono, f] : (*s.curvature_override)[i].terms())
          o << "F" << i + 1 << "." << io::monomial_str(l, mono) << " = " << io::coeff_str(f) << "\n";
    for (auto& pt : s.sample_points) {
      o << "point =";
      for (auto& [code, v] : pt.values) o << " " << CoordId::from_code(code).name() << "=" << v.get_str();
      o << "\n";
    }
  }
  o << "\n[solver]\n";
  if (s.solver.degree_cap) o << "degree_cap = " << *s.solver.degree_cap << "\n";
  o << "trials = " << s.solver.trials << "\nseed = " << s.solver.seed << "\n";
  return o.str();
}

/// Parses and validates; semantic violations raise InvalidScenario.
inline Scenario parse_scenario(const std::string& text) {
  Scenario s = parse_scenario_unchecked(text);
  validate_scenario(s);
  return s;
}

/// FNV-1a over the canonical serialization.
inline std::string scenario_hash(const Scenario& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize_scenario(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << h;
  return o.str();
}

}  // namespace gcfol
