#pragma once

// Canonical indecomposable alternating pairs and the residue construction
// of the finite blocks.

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chernikov/field.hpp"
#include "chernikov/linalg.hpp"
#include "chernikov/poly.hpp"

namespace chernikov {

/// A pair of n x n matrices over one field. Alternation is checked by `validate`.
struct AlternatingPair {
  Mat a, b;

  AlternatingPair(Mat a_, Mat b_) : a(std::move(a_)), b(std::move(b_)) {
    if (&a.field() != &b.field()) throw usage_error("pair matrices over different fields");
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
      throw usage_error("pair matrices must be square of equal size");
  }

  static AlternatingPair zero(const Field& f, std::size_t n) { return {Mat(f, n, n), Mat(f, n, n)}; }

  std::size_t dim() const { return a.rows(); }
  const Field& field() const { return a.field(); }

  AlternatingPair swapped() const { return {b, a}; }

  friend bool operator==(const AlternatingPair&, const AlternatingPair&) = default;
};

/// (S A S^T, S B S^T).
inline AlternatingPair congruence(const Mat& s, const AlternatingPair& p) {
  return {congruence(s, p.a), congruence(s, p.b)};
}

struct FiniteBlock {
  Poly f;
  unsigned n;
  friend bool operator==(const FiniteBlock&, const FiniteBlock&) = default;
};
struct InfinityBlock {
  unsigned n;
  friend bool operator==(const InfinityBlock&, const InfinityBlock&) = default;
};
struct PlusBlock {
  unsigned eps;
  friend bool operator==(const PlusBlock&, const PlusBlock&) = default;
};
using BlockId = std::variant<FiniteBlock, InfinityBlock, PlusBlock>;

namespace detail {

inline void require_monic_irreducible(const Poly& f) {
  if (!f.is_monic() || !is_irreducible(f))
    throw usage_error("'" + to_string(f) + "' is not a monic irreducible polynomial");
}

// d x d companion matrix: ones on the subdiagonal, coefficients of g in the last column.
inline Mat companion(const Poly& g) {
  const Field& fld = g.field();
  const std::size_t d = static_cast<std::size_t>(g.degree());
  Mat phi(fld, d, d);
  for (std::size_t i = 1; i < d; ++i) phi(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) phi(i, d - 1) ^= g[i];
  return phi;
}

// [[0, X], [X^T, 0]] for an r x c block X.
inline Mat hyperbolic(const Mat& x) {
  Mat m(x.field(), x.rows() + x.cols(), x.rows() + x.cols());
  m.place(0, x.rows(), x);
  m.place(x.rows(), 0, x.transpose());
  return m;
}

}  // namespace detail

/// A = [[0, I], [I, 0]], B = [[0, Phi], [Phi^T, 0]] with Phi the companion matrix of f^n.
inline AlternatingPair build_finite(const Poly& f, unsigned n) {
  if (n == 0) throw usage_error("block multiplicity must be positive");
  detail::require_monic_irreducible(f);
  const Field& fld = f.field();
  const Poly g = pow(f, n);
  const std::size_t d = static_cast<std::size_t>(g.degree());
  return {detail::hyperbolic(Mat::identity(fld, d)), detail::hyperbolic(detail::companion(g))};
}

/// A = [[0, J], [J^T, 0]], B = [[0, I], [I, 0]], J the nilpotent Jordan block (subdiagonal ones).
inline AlternatingPair build_infinity(const Field& fld, unsigned n) {
  if (n == 0) throw usage_error("block size must be positive");
  Mat j(fld, n, n);
  for (unsigned i = 1; i < n; ++i) j(i, i - 1) = 1;
  return {detail::hyperbolic(j), detail::hyperbolic(Mat::identity(fld, n))};
}

/// Singular block of minimal index eps, dimension 2 eps + 1:
/// A = [[0, I+], [I+^T, 0]], B = [[0, I-], [I-^T, 0]] with I+ = [I | 0], I- = [0 | I] of size eps x (eps+1).
inline AlternatingPair build_plus(const Field& fld, unsigned eps) {
  Mat plus(fld, eps, eps + 1), minus(fld, eps, eps + 1);
  for (unsigned i = 0; i < eps; ++i) {
    plus(i, i) = 1;
    minus(i, i + 1) = 1;
  }
  return {detail::hyperbolic(plus), detail::hyperbolic(minus)};
}

inline AlternatingPair build_block(const Field& fld, const BlockId& id) {
  return std::visit(
      [&](const auto& b) -> AlternatingPair {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteBlock>)
          return build_finite(b.f, b.n);
        else if constexpr (std::is_same_v<T, InfinityBlock>)
          return build_infinity(fld, b.n);
        else
          return build_plus(fld, b.eps);
      },
      id);
}

/// Orthogonal (block-diagonal) sum.
inline AlternatingPair direct_sum(const Field& fld, std::span<const AlternatingPair> pairs) {
  std::size_t n = 0;
  for (auto& p : pairs) {
    if (&p.field() != &fld) throw usage_error("direct sum of pairs over different fields");
    n += p.dim();
  }
  AlternatingPair out = AlternatingPair::zero(fld, n);
  std::size_t at = 0;
  for (auto& p : pairs) {
    out.a.place(at, at, p.a);
    out.b.place(at, at, p.b);
    at += p.dim();
  }
  return out;
}

inline AlternatingPair direct_sum(std::span<const AlternatingPair> pairs) {
  if (pairs.empty()) throw usage_error("direct sum of no pairs needs an explicit field");
  return direct_sum(pairs.front().field(), pairs);
}

/// Gram matrices of A_F(x, y) = res F(x, y) and B_F(x, y) = res F(t x, y) for the map
/// F(u, v) = 1/f^n on (R/f^n R)^2, in the basis u_k = t^(d-k-1) u, v_k = t^k v.
///
/// F(u_l, v_k) = t^m / g(t) with m = d+k-l-1 and g = f^n. Its residue at infinity is
/// co_1 t^-2 h(1/t); writing 1/g(1/t) = t^d / g*(t) = t^d sum_j beta_j t^j turns
/// t^-s h(1/t) into sum_j beta_j t^(j+d-m-s), whose t^-1 coefficient is beta_(m+s-1-d).
inline AlternatingPair residue_oracle(const Poly& f, unsigned n) {
  if (n == 0) throw usage_error("block multiplicity must be positive");
  detail::require_monic_irreducible(f);
  const Field& fld = f.field();
  const Poly g = pow(f, n);
  const int d = g.degree();

  // g*(t) = t^d g(1/t); for f = t this is 1, which the same expansion handles.
  std::vector<Elem> rev(static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; i <= d; ++i) rev[static_cast<std::size_t>(d - i)] = g[static_cast<std::size_t>(i)];
  const Poly beta = series_inverse_trunc(Poly(fld, rev), static_cast<std::size_t>(d) + 2);

  auto co1 = [&](int m, int s) -> Elem {
    const int j = m + s - 1 - d;
    return j < 0 ? 0 : beta[static_cast<std::size_t>(j)];
  };

  const std::size_t dd = static_cast<std::size_t>(d);
  Mat a(fld, 2 * dd, 2 * dd), b(fld, 2 * dd, 2 * dd);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      const int m = d + k - l - 1;
      const auto ul = static_cast<std::size_t>(l), vk = dd + static_cast<std::size_t>(k);
      a(ul, vk) = a(vk, ul) = co1(m, 2);
      b(ul, vk) = b(vk, ul) = co1(m, 3);
    }
  // F(u_k, u_l) = F(v_k, v_l) = 0: the diagonal blocks stay zero.
  return {a, b};
}

/// The congruence [[X^-1, 0], [0, I]] where X is the upper-right block of the residue
/// pair's first matrix; it carries residue_oracle(f, n) onto build_finite(f, n).
inline Mat residue_normalizer(const AlternatingPair& residue) {
  const std::size_t d = residue.dim() / 2;
  const Mat x = residue.a.slice(0, d, d, d);
  Mat s = Mat::identity(residue.field(), 2 * d);
  s.place(0, 0, mat_inv(x));
  return s;
}

// ---------------------------------------------------------------------------
// Text forms: fin:<poly>^<n>, inf:<n>, plus:<eps>

inline std::string to_string(const BlockId& id) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteBlock>) {
          return "fin:" + to_string(b.f) + "^" + std::to_string(b.n);
        } else if constexpr (std::is_same_v<T, InfinityBlock>) {
          return "inf:" + std::to_string(b.n);
        } else {
          return "plus:" + std::to_string(b.eps);
        }
      },
      id);
}

inline BlockId parse_block_id(std::string_view text, const Field& fld) {
  auto fail = [&](const std::string& why) { return usage_error("bad block id '" + std::string(text) + "': " + why); };
  auto parse_uint = [&](std::string_view s) -> unsigned {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) throw fail("expected an integer");
    return static_cast<unsigned>(std::stoul(std::string(s)));
  };
  if (text.substr(0, 4) == "inf:") {
    unsigned n = parse_uint(text.substr(4));
    if (n == 0) throw fail("size must be positive");
    return InfinityBlock{n};
  }
  if (text.substr(0, 5) == "plus:") return PlusBlock{parse_uint(text.substr(5))};
  if (text.substr(0, 4) != "fin:") throw fail("expected fin:, inf: or plus:");
  std::string_view body = text.substr(4);
  std::string_view poly_text = body;
  unsigned n = 1;
  if (auto caret = body.rfind('^'); caret != std::string_view::npos) {
    auto tail = body.substr(caret + 1);
    if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string_view::npos) {
      poly_text = body.substr(0, caret);
      n = parse_uint(tail);
    }
  }
  if (poly_text.size() >= 2 && poly_text.front() == '(' && poly_text.back() == ')')
    poly_text = poly_text.substr(1, poly_text.size() - 2);
  if (n == 0) throw fail("power must be positive");
  Poly f = parse_poly(poly_text, fld);
  if (!f.is_monic() || !is_irreducible(f)) throw fail("polynomial is not monic irreducible");
  return FiniteBlock{std::move(f), n};
}

}  // namespace chernikov
