#pragma once

// Classification of alternating pairs up to congruence: validation, the
// Pfaffian of x1 A + x2 B, Kronecker invariants and the block decomposition.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chernikov/blocks.hpp"
#include "chernikov/field.hpp"
#include "chernikov/linalg.hpp"
#include "chernikov/poly.hpp"

namespace chernikov {

struct Violation {
  char matrix;  // 'A' or 'B'
  std::size_t row, col;

  std::string message() const {
    std::string where = std::string(1, matrix) + "[" + std::to_string(row + 1) + "][" + std::to_string(col + 1) + "]";
    if (row == col) return "matrix " + std::string(1, matrix) + " has a nonzero diagonal entry at " + where;
    return "matrix " + std::string(1, matrix) + " is not symmetric at " + where;
  }
  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::optional<Violation> validate_alternating(const Mat& m, char name) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (i == j && m(i, i) != 0) return Violation{name, i, i};
      if (i != j && m(i, j) != m(j, i)) return Violation{name, i, j};
    }
  return std::nullopt;
}

/// First entry (1-based in the message) at which A or B fails to be alternating.
inline std::optional<Violation> validate(const AlternatingPair& p) {
  if (auto v = validate_alternating(p.a, 'A')) return v;
  return validate_alternating(p.b, 'B');
}

inline void require_valid(const AlternatingPair& p) {
  if (auto v = validate(p)) throw usage_error("invalid alternating pair: " + v->message());
}

// ---------------------------------------------------------------------------
// Pfaffian

namespace detail {

// Embedding of a base field into GF(2^K), K a multiple of its degree.
struct FieldEmbedding {
  const Field* big;
  std::vector<Elem> image;              // base element -> big element
  std::map<Elem, Elem> preimage;        // big element -> base element

  FieldEmbedding(const Field& base, const Field& big_field) : big(&big_field) {
    Elem root = 1;
    if (!base.is_gf2()) {
      // A root of the base modulus in the big field.
      std::vector<Elem> mc;
      for (unsigned i = 0; i <= base.degree(); ++i) mc.push_back((base.spec().modulus >> i) & 1u);
      auto fac = factor(Poly(big_field, mc));
      bool found = false;
      for (auto& [p, mult] : fac)
        if (p.degree() == 1) {
          root = p[0];
          found = true;
          break;
        }
      if (!found) throw std::logic_error("base field does not embed in the evaluation field");
    }
    image.resize(base.size());
    for (Elem b = 0; b < base.size(); ++b) {
      Elem x = 0, pw = 1;
      for (unsigned j = 0; j < base.degree(); ++j) {
        if ((b >> j) & 1u) x ^= pw;
        pw = big_field.mul(pw, root);
      }
      image[b] = x;
      preimage[x] = b;
    }
  }

  Elem up(Elem b) const { return image[b]; }
  Elem down(Elem x) const {
    auto it = preimage.find(x);
    if (it == preimage.end()) throw std::logic_error("interpolated Pfaffian coefficient outside the base field");
    return it->second;
  }
};

inline const Field& evaluation_field(const Field& base, std::size_t points) {
  unsigned k = base.degree();
  while ((std::uint64_t{1} << k) < points) k += base.degree();
  if (k > kMaxFieldDegree) throw usage_error("pair too large for Pfaffian interpolation");
  return k == base.degree() ? base : Field::get(FieldSpec::with_default_modulus(k));
}

// Newton interpolation through (xs[i], ys[i]); returns coefficients in t.
inline std::vector<Elem> interpolate(const Field& f, const std::vector<Elem>& xs, std::vector<Elem> ys) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = f.div(ys[i] ^ ys[i - 1], xs[i] ^ xs[i - j]);
      if (i == j) break;
    }
  std::vector<Elem> poly(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // poly = poly * (t - xs[i]) + ys[i]
    std::vector<Elem> next(n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) next[k + 1] ^= poly[k];
    for (std::size_t k = 0; k < n; ++k) next[k] ^= f.mul(poly[k], xs[i]);
    next[0] ^= ys[i];
    poly = std::move(next);
  }
  return poly;
}

}  // namespace detail

/// The form Delta with Delta^2 = det(x1 A + x2 B); zero when the determinant vanishes
/// identically (always for odd dimension). Evaluated at x2 = 1 over an extension with
/// more than n points, square-rooted pointwise, interpolated, and cross-checked at x2 = 0.
inline BinaryForm pfaffian_form(const AlternatingPair& p) {
  require_valid(p);
  const Field& base = p.field();
  const std::size_t n = p.dim();
  if (n % 2) return BinaryForm(base, 0u);
  const unsigned half = static_cast<unsigned>(n / 2);
  if (n == 0) return BinaryForm(base, std::vector<Elem>{1});

  const Field& big = detail::evaluation_field(base, n + 1);
  const detail::FieldEmbedding emb(base, big);
  Mat a(big, n, n), b(big, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = emb.up(p.a(i, j));
      b(i, j) = emb.up(p.b(i, j));
    }

  std::vector<Elem> xs, ys;
  for (Elem x = 0; x <= n; ++x) {
    xs.push_back(x);
    ys.push_back(big.sqrt(determinant(a.scaled(x) + b)));
  }
  const auto coeffs = detail::interpolate(big, xs, ys);
  std::vector<Elem> out(half + 1, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (i > half) throw std::logic_error("Pfaffian interpolation exceeded degree n/2");
    out[i] = emb.down(coeffs[i]);
  }
  if (base.sqrt(determinant(p.a)) != out[half]) throw std::logic_error("Pfaffian leading term mismatch at x2 = 0");
  return BinaryForm(base, std::move(out));
}

/// det(x1 A + x2 B) by the same evaluation scheme, without square roots; used to check Delta^2.
inline BinaryForm pencil_determinant(const AlternatingPair& p) {
  const Field& base = p.field();
  const std::size_t n = p.dim();
  if (n == 0) return BinaryForm(base, std::vector<Elem>{1});
  const Field& big = detail::evaluation_field(base, n + 1);
  const detail::FieldEmbedding emb(base, big);
  Mat a(big, n, n), b(big, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = emb.up(p.a(i, j));
      b(i, j) = emb.up(p.b(i, j));
    }
  std::vector<Elem> xs, ys;
  for (Elem x = 0; x <= n; ++x) {
    xs.push_back(x);
    ys.push_back(determinant(a.scaled(x) + b));
  }
  const auto coeffs = detail::interpolate(big, xs, ys);
  std::vector<Elem> out(n + 1, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = emb.down(coeffs[i]);
  return BinaryForm(base, std::move(out));
}

// ---------------------------------------------------------------------------
// Kronecker invariants

struct KroneckerInvariants {
  std::vector<unsigned> minimal_indices;                          // ascending
  std::vector<std::pair<ProjPoint, unsigned>> elementary_divisors;  // sorted, with repetition

  friend bool operator==(const KroneckerInvariants&, const KroneckerInvariants&) = default;
};

namespace detail {

// Right minimal indices from the kernel dimensions N_k of the block Toeplitz maps
// x(t) = sum_{i<=k} x_i t^i  ->  (tA + B) x(t); N_k = sum_eps max(0, k - eps + 1).
inline std::vector<unsigned> minimal_indices(const AlternatingPair& p, std::size_t count) {
  std::vector<unsigned> out;
  if (count == 0) return out;
  const std::size_t n = p.dim();
  const Field& f = p.field();
  std::size_t prev_n = 0, prev_le = 0;
  for (std::size_t k = 0; out.size() < count; ++k) {
    if (k > n) throw std::logic_error("minimal index search did not terminate");
    Mat m(f, (k + 2) * n, (k + 1) * n);
    for (std::size_t j = 0; j <= k; ++j) {
      m.place(j * n, j * n, p.b);
      m.place((j + 1) * n, j * n, p.a);
    }
    const std::size_t kernel = (k + 1) * n - rank(std::move(m));
    const std::size_t le = kernel - prev_n;  // #{eps <= k}
    for (std::size_t c = prev_le; c < le; ++c) out.push_back(static_cast<unsigned>(k));
    prev_n = kernel;
    prev_le = le;
  }
  if (out.size() != count) throw std::logic_error("minimal index count disagrees with the pencil rank");
  return out;
}

}  // namespace detail

inline KroneckerInvariants kronecker_invariants(const AlternatingPair& p) {
  require_valid(p);
  const Field& f = p.field();
  KroneckerInvariants inv;

  const auto finite = smith_form(PolyMat::pencil(p.a, p.b));
  for (const Poly& d : finite) {
    if (d.degree() < 1) continue;
    for (auto& [g, e] : factor(d)) inv.elementary_divisors.emplace_back(ProjPoint::of(g), e);
  }
  // Infinite divisors: powers of s in the invariant factors of A + sB.
  for (const Poly& d : smith_form(PolyMat::pencil(p.b, p.a))) {
    unsigned v = 0;
    while (v <= static_cast<unsigned>(d.degree()) && d[v] == 0) ++v;
    if (v > 0) inv.elementary_divisors.emplace_back(ProjPoint::of(BinaryForm::x2(f)), v);
  }
  std::sort(inv.elementary_divisors.begin(), inv.elementary_divisors.end());
  inv.minimal_indices = detail::minimal_indices(p, p.dim() - finite.size());
  return inv;
}

// ---------------------------------------------------------------------------
// Class functions

/// rho: (point, n) -> multiplicity, finitely supported. (eps, n) stands for the
/// singular block of dimension 2n - 1; (x2, n) for the infinite block; (g, n) for
/// the finite block of f^n with f = g(t, 1).
class ClassFunction {
 public:
  using Key = std::pair<ProjPoint, unsigned>;

  explicit ClassFunction(const Field& field) : field_(&field) {}

  const Field& field() const { return *field_; }
  const std::map<Key, unsigned>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void add(const ProjPoint& g, unsigned n, unsigned mult = 1) {
    if (n == 0) throw usage_error("class function index n must be positive");
    if (!g.is_eps() && &g.form().field() != field_) throw usage_error("class function point over a different field");
    if (mult == 0) return;
    entries_[{g, n}] += mult;
  }

  unsigned operator()(const ProjPoint& g, unsigned n) const {
    auto it = entries_.find({g, n});
    return it == entries_.end() ? 0 : it->second;
  }

  static std::size_t block_dimension(const ProjPoint& g, unsigned n) {
    if (g.is_eps()) return 2 * std::size_t{n} - 1;
    if (g.form().is_x2()) return 2 * std::size_t{n};
    return 2 * std::size_t{n} * g.form().degree();
  }

  std::size_t total_dimension() const {
    std::size_t d = 0;
    for (auto& [key, mult] : entries_) d += mult * block_dimension(key.first, key.second);
    return d;
  }

  static BlockId block_id(const ProjPoint& g, unsigned n) {
    if (g.is_eps()) return PlusBlock{n - 1};
    if (g.form().is_x2()) return InfinityBlock{n};
    return FiniteBlock{dehomogenize(g.form()).first, n};
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.field_ == b.field_ && a.entries_ == b.entries_;
  }

  /// Lexicographic over the sorted entries (eps first, then forms, then n), then multiplicity.
  friend std::strong_ordering operator<=>(const ClassFunction& a, const ClassFunction& b) {
    auto ia = a.entries_.begin(), ib = b.entries_.begin();
    for (; ia != a.entries_.end() && ib != b.entries_.end(); ++ia, ++ib) {
      if (auto c = ia->first.first <=> ib->first.first; c != 0) return c;
      if (auto c = ia->first.second <=> ib->first.second; c != 0) return c;
      if (auto c = ia->second <=> ib->second; c != 0) return c;
    }
    return (ia != a.entries_.end()) <=> (ib != b.entries_.end());
  }

 private:
  const Field* field_;
  std::map<Key, unsigned> entries_;
};

/// The canonical pair: direct sum of the blocks of rho in entry order.
inline AlternatingPair assemble(const ClassFunction& rho) {
  std::vector<AlternatingPair> parts;
  for (auto& [key, mult] : rho.entries()) {
    const AlternatingPair block = build_block(rho.field(), ClassFunction::block_id(key.first, key.second));
    for (unsigned i = 0; i < mult; ++i) parts.push_back(block);
  }
  return direct_sum(rho.field(), parts);
}

inline ClassFunction decompose(const AlternatingPair& p) {
  const KroneckerInvariants inv = kronecker_invariants(p);
  ClassFunction rho(p.field());
  for (unsigned eps : inv.minimal_indices) rho.add(ProjPoint::eps(), eps + 1);
  const auto& divs = inv.elementary_divisors;
  for (std::size_t i = 0; i < divs.size();) {
    std::size_t j = i;
    while (j < divs.size() && divs[j] == divs[i]) ++j;
    if ((j - i) % 2)
      throw std::logic_error("elementary divisor " + to_string(divs[i].first) + "^" + std::to_string(divs[i].second) +
                             " has odd multiplicity");
    rho.add(divs[i].first, divs[i].second, static_cast<unsigned>((j - i) / 2));
    i = j;
  }
  if (rho.total_dimension() != p.dim()) throw std::logic_error("decomposition does not account for the dimension");
  return rho;
}

inline bool congruent(const AlternatingPair& p, const AlternatingPair& r) {
  if (&p.field() != &r.field()) throw usage_error("pairs over different fields");
  if (p.dim() != r.dim()) return false;
  return decompose(p) == decompose(r);
}

/// prod over non-eps entries of g^(n * mult), or zero when an eps entry is present.
inline BinaryForm pfaffian_of_class(const ClassFunction& rho) {
  const Field& f = rho.field();
  if (rho.total_dimension() % 2) return BinaryForm(f, 0u);
  BinaryForm out(f, std::vector<Elem>{1});
  for (auto& [key, mult] : rho.entries()) {
    if (key.first.is_eps()) return BinaryForm(f, static_cast<unsigned>(rho.total_dimension() / 2));
    out = out * pow(key.first.form(), key.second * mult);
  }
  return out;
}

inline std::string to_string(const ClassFunction& rho) {
  if (rho.empty()) return "{}";
  std::string out;
  for (auto& [key, mult] : rho.entries()) {
    if (!out.empty()) out += ", ";
    out += "rho(" + to_string(key.first) + ", " + std::to_string(key.second) + ") = " + std::to_string(mult);
  }
  return out;
}

}  // namespace chernikov
