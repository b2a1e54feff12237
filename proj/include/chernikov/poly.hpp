#pragma once

// Univariate polynomials over GF(2^k), their factorization, and homogeneous
// binary forms with the GL(2) substitution action.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chernikov/field.hpp"

namespace chernikov {

/// Dense polynomial in t; coefficient i multiplies t^i, no trailing zeros.
class Poly {
 public:
  explicit Poly(const Field& field) : field_(&field) {}
  Poly(const Field& field, std::vector<Elem> coeffs) : field_(&field), c_(std::move(coeffs)) {
    for (Elem e : c_)
      if (!field.contains(e)) throw usage_error("coefficient out of range for " + field.spec().to_string());
    trim();
  }

  static Poly constant(const Field& f, Elem c) { return Poly(f, {c}); }
  static Poly one(const Field& f) { return constant(f, 1); }
  static Poly monomial(const Field& f, Elem c, std::size_t deg) {
    std::vector<Elem> v(deg + 1, 0);
    v[deg] = c;
    return Poly(f, std::move(v));
  }
  static Poly t(const Field& f) { return monomial(f, 1, 1); }

  const Field& field() const { return *field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  Elem eval(Elem x) const {
    Elem r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_->mul(r, x) ^ *it;
    return r;
  }

  Poly scaled(Elem s) const {
    if (s == 0) return Poly(*field_);
    Poly r = *this;
    for (Elem& e : r.c_) e = field_->mul(e, s);
    return r;
  }

  Poly monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(field_->inv(lead()));
  }

  /// Formal derivative; in characteristic 2 only odd-degree terms survive.
  Poly derivative() const {
    std::vector<Elem> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(i % 2 ? c_[i] : 0);
    return Poly(*field_, std::move(v));
  }

  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Elem> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(*field_, std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] ^= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a += b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return Poly(*a.field_);
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, 0);
    const Field& f = *a.field_;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] ^= f.mul(a.c_[i], b.c_[j]);
    }
    return Poly(f, std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Quotient and remainder; b must be nonzero.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    a.check(b);
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    const Field& f = *a.field_;
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<Elem> r = a.c_;
    std::vector<Elem> q(a.c_.size() - b.c_.size() + 1, 0);
    const Elem lead_inv = f.inv(b.lead());
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t i = r.size(); i-- > db;) {
      if (r[i] == 0) continue;
      const Elem c = f.mul(r[i], lead_inv);
      q[i - db] = c;
      for (std::size_t j = 0; j <= db; ++j) r[i - db + j] ^= f.mul(c, b.c_[j]);
    }
    r.resize(db);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  /// Degree first, then coefficients read from the leading term down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check(const Poly& o) const {
    if (field_ != o.field_) throw usage_error("polynomials over different fields");
  }

  const Field* field_;
  std::vector<Elem> c_;
};

/// Monic greatest common divisor.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly pow(const Poly& p, unsigned e) {
  Poly r = Poly::one(p.field()), base = p;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

/// a^(2^times) mod m by repeated squaring.
inline Poly frobenius_mod(Poly a, unsigned times, const Poly& m) {
  for (unsigned i = 0; i < times; ++i) a = mulmod(a, a, m);
  return a;
}

/// g*(t) = t^d g(1/t); requires g(0) != 0 so that deg g* = deg g.
inline Poly reverse_star(const Poly& g) {
  if (g.is_zero()) throw domain_error("reverse_star of the zero polynomial");
  if (g[0] == 0) throw domain_error("reverse_star requires a nonzero constant term");
  std::vector<Elem> v(g.coeffs().rbegin(), g.coeffs().rend());
  return Poly(g.field(), std::move(v));
}

/// The unique h with deg h < m and g h = 1 mod t^m; requires g(0) = 1.
/// Coefficients follow h_0 = 1, h_i = sum_{j=1..i} g_j h_{i-j} (signs vanish in char 2).
inline Poly series_inverse_trunc(const Poly& g, std::size_t m) {
  if (m == 0) throw usage_error("truncation order must be positive");
  if (g[0] != 1) throw domain_error("series inverse requires constant term 1");
  const Field& f = g.field();
  std::vector<Elem> h(m, 0);
  h[0] = 1;
  for (std::size_t i = 1; i < m; ++i) {
    Elem s = 0;
    for (std::size_t j = 1; j <= i && j <= static_cast<std::size_t>(g.degree()); ++j) s ^= f.mul(g[j], h[i - j]);
    h[i] = s;
  }
  return Poly(f, std::move(h));
}

/// Square root of a polynomial whose odd coefficients vanish.
inline Poly poly_sqrt(const Poly& p) {
  const Field& f = p.field();
  std::vector<Elem> v;
  for (int i = 0; i <= p.degree(); ++i) {
    if (i % 2) {
      if (p[i] != 0) throw domain_error("polynomial is not a square");
      continue;
    }
    v.push_back(f.sqrt(p[i]));
  }
  return Poly(f, std::move(v));
}

/// Rabin's test: deg f = d, t^(q^d) = t mod f and gcd(t^(q^(d/p)) - t, f) = 1 for primes p | d.
inline bool is_irreducible(const Poly& f) {
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const Field& F = f.field();
  const Poly m = f.monic();
  const Poly t = Poly::t(F);
  const unsigned k = F.degree();
  std::vector<int> primes;
  for (int n = d, p = 2; n > 1; ++p)
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  for (int p : primes) {
    Poly x = frobenius_mod(t, k * static_cast<unsigned>(d / p), m);
    if (gcd(x - t, m).degree() != 0) return false;
  }
  return frobenius_mod(t, k * static_cast<unsigned>(d), m) == t % m;
}

/// Monic irreducible polynomials of the given degree, ascending.
inline std::vector<Poly> irreducible_polys(const Field& f, unsigned degree) {
  std::vector<Poly> out;
  const std::uint64_t q = f.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < degree; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Elem> v(degree + 1, 0);
    v[degree] = 1;
    std::uint64_t c = code;
    for (unsigned i = 0; i < degree; ++i) {
      v[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    Poly p(f, std::move(v));
    if (is_irreducible(p)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

using Factorization = std::vector<std::pair<Poly, unsigned>>;

namespace detail {

// Squarefree decomposition of a monic polynomial in characteristic 2:
// returns pairwise coprime squarefree parts with multiplicities.
inline void squarefree_parts(const Poly& f, unsigned scale, Factorization& out) {
  if (f.degree() < 1) return;
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * scale);
    ++i;
    w = std::move(y);
    c = c / w;
  }
  if (c.degree() > 0) squarefree_parts(poly_sqrt(c.monic()), 2 * scale, out);
}

// Splits a squarefree monic product of degree-`d` irreducibles (Cantor-Zassenhaus,
// characteristic 2 variant: gcd with the trace map to GF(2)).
inline void equal_degree_split(const Poly& g, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() <= static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  const Field& F = g.field();
  std::uniform_int_distribution<Elem> coeff(0, F.size() - 1);
  const unsigned trace_len = F.degree() * d;
  for (;;) {
    std::vector<Elem> v(static_cast<std::size_t>(g.degree()));
    for (Elem& e : v) e = coeff(rng);
    Poly a(F, std::move(v));
    if (a.degree() < 1) continue;
    Poly tr = a, s = a;
    for (unsigned i = 1; i < trace_len; ++i) {
      s = mulmod(s, s, g);
      tr += s;
    }
    Poly h = gcd(g, tr);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factorization into monic irreducibles with multiplicities, sorted by the Poly order.
/// The leading coefficient of g is dropped; multiply it back to recover g.
inline Factorization factor(const Poly& g) {
  if (g.is_zero()) throw domain_error("cannot factor the zero polynomial");
  const Field& F = g.field();
  Factorization sqf;
  detail::squarefree_parts(g.monic(), 1, sqf);

  std::mt19937_64 rng(0x5eedc0ffeeULL);
  std::map<Poly, unsigned> acc;
  const Poly t = Poly::t(F);
  for (auto& [part, mult] : sqf) {
    Poly rest = part;
    Poly x = t;
    for (unsigned d = 1; rest.degree() >= static_cast<int>(2 * d); ++d) {
      x = frobenius_mod(x, F.degree(), rest);
      Poly h = gcd(rest, x - t);
      if (h.degree() > 0) {
        std::vector<Poly> pieces;
        detail::equal_degree_split(h, d, rng, pieces);
        for (auto& p : pieces) acc[p.monic()] += mult;
        rest = rest / h;
        x = x % rest;
      }
    }
    if (rest.degree() > 0) acc[rest.monic()] += mult;
  }
  return {acc.begin(), acc.end()};
}

/// Homogeneous form of degree d in (x1, x2); coefficient i multiplies x1^i x2^(d-i).
class BinaryForm {
 public:
  BinaryForm(const Field& field, unsigned degree) : field_(&field), c_(degree + 1, 0) {}
  BinaryForm(const Field& field, std::vector<Elem> coeffs) : field_(&field), c_(std::move(coeffs)) {
    if (c_.empty()) throw usage_error("binary form needs at least one coefficient");
    for (Elem e : c_)
      if (!field.contains(e)) throw usage_error("coefficient out of range for " + field.spec().to_string());
  }

  static BinaryForm x1(const Field& f) { return BinaryForm(f, {0, 1}); }
  static BinaryForm x2(const Field& f) { return BinaryForm(f, {1, 0}); }

  const Field& field() const { return *field_; }
  unsigned degree() const { return static_cast<unsigned>(c_.size() - 1); }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Elem e) { return e == 0; });
  }
  bool is_x2() const { return degree() == 1 && c_[0] == 1 && c_[1] == 0; }

  /// Either exactly x2, or the x1^d coefficient is 1.
  bool is_unital() const { return is_x2() || c_.back() == 1; }

  /// Divides by the coefficient of the highest x1 power present.
  BinaryForm normalized() const {
    BinaryForm r = *this;
    for (std::size_t i = c_.size(); i-- > 0;)
      if (c_[i] != 0) {
        const Elem s = field_->inv(c_[i]);
        for (Elem& e : r.c_) e = field_->mul(e, s);
        break;
      }
    return r;
  }

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    a.check(b);
    if (a.degree() != b.degree()) throw usage_error("adding forms of different degrees");
    BinaryForm r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] ^= b.c_[i];
    return r;
  }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    a.check(b);
    BinaryForm r(*a.field_, a.degree() + b.degree());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] ^= a.field_->mul(a.c_[i], b.c_[j]);
    }
    return r;
  }

  BinaryForm scaled(Elem s) const {
    BinaryForm r = *this;
    for (Elem& e : r.c_) e = field_->mul(e, s);
    return r;
  }

  Elem eval(Elem x1v, Elem x2v) const {
    Elem r = 0, p1 = 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r ^= field_->mul(c_[i], field_->mul(p1, field_->pow(x2v, c_.size() - 1 - i)));
      p1 = field_->mul(p1, x1v);
    }
    return r;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  /// Degree first, then coefficients from the x1^d term down to x2^d.
  friend std::strong_ordering operator<=>(const BinaryForm& a, const BinaryForm& b) {
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  void check(const BinaryForm& o) const {
    if (field_ != o.field_) throw usage_error("forms over different fields");
  }

  const Field* field_;
  std::vector<Elem> c_;
};

inline BinaryForm pow(const BinaryForm& g, unsigned e) {
  BinaryForm r(g.field(), std::vector<Elem>{1});
  for (unsigned i = 0; i < e; ++i) r = r * g;
  return r;
}

/// x2^D f(x1/x2).
inline BinaryForm homogenize(const Poly& f, unsigned total_degree) {
  if (f.degree() > static_cast<int>(total_degree)) throw usage_error("homogenization degree below polynomial degree");
  std::vector<Elem> v(total_degree + 1, 0);
  for (int i = 0; i <= f.degree(); ++i) v[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)];
  return BinaryForm(f.field(), std::move(v));
}

/// (G(t,1), exponent of x2 dividing G). The zero form gives (0, 0).
inline std::pair<Poly, unsigned> dehomogenize(const BinaryForm& g) {
  Poly p(g.field(), g.coeffs());
  if (p.is_zero()) return {p, 0};
  return {p, g.degree() - static_cast<unsigned>(p.degree())};
}

/// Unital form of a monic irreducible f in t.
inline BinaryForm form_of(const Poly& f) { return homogenize(f.monic(), static_cast<unsigned>(f.degree())); }

/// 2x2 matrix over a field, acting on row vectors (x1, x2).
struct GL2Element {
  const Field* field = &Field::gf2();
  Elem q11 = 1, q12 = 0, q21 = 0, q22 = 1;

  static GL2Element identity(const Field& f) { return {&f, 1, 0, 0, 1}; }

  Elem det() const { return field->mul(q11, q22) ^ field->mul(q12, q21); }
  bool invertible() const { return det() != 0; }

  GL2Element transpose() const { return {field, q11, q21, q12, q22}; }

  GL2Element inverse() const {
    const Elem d = det();
    if (d == 0) throw domain_error("singular 2x2 matrix");
    const Elem s = field->inv(d);
    return {field, field->mul(q22, s), field->mul(q12, s), field->mul(q21, s), field->mul(q11, s)};
  }

  friend GL2Element operator*(const GL2Element& a, const GL2Element& b) {
    if (a.field != b.field) throw usage_error("2x2 matrices over different fields");
    const Field& f = *a.field;
    return {a.field, f.mul(a.q11, b.q11) ^ f.mul(a.q12, b.q21), f.mul(a.q11, b.q12) ^ f.mul(a.q12, b.q22),
            f.mul(a.q21, b.q11) ^ f.mul(a.q22, b.q21), f.mul(a.q21, b.q12) ^ f.mul(a.q22, b.q22)};
  }

  friend bool operator==(const GL2Element& a, const GL2Element& b) {
    return a.field == b.field && a.q11 == b.q11 && a.q12 == b.q12 && a.q21 == b.q21 && a.q22 == b.q22;
  }
};

/// g((x1, x2) Q) = g(q11 x1 + q21 x2, q12 x1 + q22 x2), not normalized.
inline BinaryForm substitute(const BinaryForm& g, const GL2Element& q) {
  if (g.field().spec() != q.field->spec()) throw usage_error("substitution over different fields");
  const Field& f = g.field();
  const BinaryForm l1(f, {q.q21, q.q11});
  const BinaryForm l2(f, {q.q22, q.q12});
  const unsigned d = g.degree();
  std::vector<BinaryForm> p1{BinaryForm(f, std::vector<Elem>{1})}, p2{BinaryForm(f, std::vector<Elem>{1})};
  for (unsigned i = 1; i <= d; ++i) {
    p1.push_back(p1.back() * l1);
    p2.push_back(p2.back() * l2);
  }
  BinaryForm r(f, d);
  for (unsigned i = 0; i <= d; ++i)
    if (g[i] != 0) r = r + (p1[i] * p2[d - i]).scaled(g[i]);
  return r;
}

/// A point of P~: either the symbol eps or a unital irreducible form.
class ProjPoint {
 public:
  static ProjPoint eps() { return ProjPoint(); }
  static ProjPoint of(BinaryForm g) {
    if (!g.is_unital()) throw usage_error("projective point must be a unital form");
    return ProjPoint(std::move(g));
  }
  static ProjPoint of(const Poly& monic_irreducible) { return of(form_of(monic_irreducible)); }

  bool is_eps() const { return !form_; }
  const BinaryForm& form() const {
    if (!form_) throw usage_error("eps has no form");
    return *form_;
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

  /// eps first, then forms by degree and coefficients.
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_eps() || b.is_eps()) return b.is_eps() <=> a.is_eps();
    return *a.form_ <=> *b.form_;
  }

 private:
  ProjPoint() = default;
  explicit ProjPoint(BinaryForm g) : form_(std::move(g)) {}
  std::optional<BinaryForm> form_;
};

/// Q*g: the unital form proportional to g((x1,x2)Q); eps is fixed.
/// Left action: act(Q1 Q2, g) = act(Q1, act(Q2, g)).
inline ProjPoint moebius_act(const GL2Element& q, const ProjPoint& p) {
  if (!q.invertible()) throw domain_error("moebius_act requires an invertible matrix");
  if (p.is_eps()) return p;
  return ProjPoint::of(substitute(p.form(), q).normalized());
}

// ---------------------------------------------------------------------------
// Text forms

namespace detail {

inline std::string coeff_text(const Field& f, Elem c) { return "{" + f.format(c) + "}"; }

// Parses one signed-free sum of terms `coef*var^e*var^e`, calling `term` for each.
template <class TermFn>
void parse_sum(std::string_view text, const Field& f, TermFn term) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw usage_error("empty polynomial text");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    return usage_error("cannot parse '" + std::string(text) + "' at column " + std::to_string(pos + 1) + ": " + why);
  };
  while (pos <= s.size()) {
    Elem coef = 1;
    std::vector<std::pair<std::string, unsigned>> vars;
    bool any = false;
    for (;;) {
      if (pos < s.size() && s[pos] == '{') {
        auto close = s.find('}', pos);
        if (close == std::string::npos) throw fail("unterminated '{'");
        coef = f.mul(coef, f.parse(s.substr(pos + 1, close - pos - 1)));
        pos = close + 1;
      } else if (pos < s.size() && std::isxdigit(static_cast<unsigned char>(s[pos])) && !std::isalpha(static_cast<unsigned char>(s[pos]))) {
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        coef = f.mul(coef, f.parse(s.substr(pos, end - pos)));
        pos = end;
      } else if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
        std::size_t end = pos;
        while (end < s.size() && std::isalnum(static_cast<unsigned char>(s[end]))) ++end;
        std::string name = s.substr(pos, end - pos);
        pos = end;
        unsigned e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          std::size_t stop = pos;
          while (stop < s.size() && std::isdigit(static_cast<unsigned char>(s[stop]))) ++stop;
          if (stop == pos) throw fail("expected exponent");
          e = static_cast<unsigned>(std::stoul(s.substr(pos, stop - pos)));
          pos = stop;
        }
        vars.emplace_back(std::move(name), e);
      } else {
        throw fail("expected coefficient or variable");
      }
      any = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) throw fail("empty term");
    term(coef, vars, fail);
    if (pos == s.size()) break;
    if (s[pos] != '+') throw fail("expected '+'");
    ++pos;
  }
}

}  // namespace detail

/// `t^3+t+1` over GF(2); `{3}*t^2+{1}` over larger fields; `0` for zero.
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  const Field& f = p.field();
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Elem c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    if (f.is_gf2())
      out += mono.empty() ? "1" : mono;
    else
      out += detail::coeff_text(f, c) + (mono.empty() ? "" : "*" + mono);
  }
  return out;
}

inline Poly parse_poly(std::string_view text, const Field& f) {
  if (text == "0") return Poly(f);
  std::vector<Elem> c;
  detail::parse_sum(text, f, [&](Elem coef, const auto& vars, auto fail) {
    unsigned e = 0;
    for (auto& [name, pw] : vars) {
      if (name != "t") throw fail("unknown variable '" + name + "'");
      e += pw;
    }
    if (c.size() <= e) c.resize(e + 1, 0);
    c[e] ^= coef;
  });
  return Poly(f, std::move(c));
}

/// `x1^2+x1*x2+x2^2`; coefficients other than 1 appear as `{c}*`.
inline std::string to_string(const BinaryForm& g) {
  if (g.is_zero()) return "0";
  const Field& f = g.field();
  const unsigned d = g.degree();
  std::string out;
  for (unsigned i = d + 1; i-- > 0;) {
    const Elem c = g[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::vector<std::string> parts;
    if (c != 1 || d == 0) parts.push_back(f.is_gf2() ? "1" : detail::coeff_text(f, c));
    if (i > 0) parts.push_back(i == 1 ? "x1" : "x1^" + std::to_string(i));
    if (d - i > 0) parts.push_back(d - i == 1 ? "x2" : "x2^" + std::to_string(d - i));
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "*" : "") + parts[k];
  }
  return out;
}

inline BinaryForm parse_form(std::string_view text, const Field& f) {
  if (text == "0") return BinaryForm(f, 0);
  std::vector<std::pair<unsigned, Elem>> terms;
  std::optional<unsigned> degree;
  detail::parse_sum(text, f, [&](Elem coef, const auto& vars, auto fail) {
    unsigned e1 = 0, e2 = 0;
    for (auto& [name, pw] : vars) {
      if (name == "x1")
        e1 += pw;
      else if (name == "x2")
        e2 += pw;
      else
        throw fail("unknown variable '" + name + "'");
    }
    if (degree && *degree != e1 + e2) throw fail("form is not homogeneous");
    degree = e1 + e2;
    terms.emplace_back(e1, coef);
  });
  std::vector<Elem> c(*degree + 1, 0);
  for (auto [e1, coef] : terms) c[e1] ^= coef;
  return BinaryForm(f, std::move(c));
}

inline std::string to_string(const ProjPoint& p) { return p.is_eps() ? "eps" : to_string(p.form()); }

inline ProjPoint parse_point(std::string_view text, const Field& f) {
  if (text == "eps") return ProjPoint::eps();
  BinaryForm g = parse_form(text, f);
  auto [poly, x2mult] = dehomogenize(g);
  if (!g.is_unital()) throw usage_error("'" + std::string(text) + "' is not unital");
  if (!(g.is_x2() || (x2mult == 0 && is_irreducible(poly))))
    throw usage_error("'" + std::string(text) + "' is not irreducible");
  return ProjPoint::of(std::move(g));
}

}  // namespace chernikov
