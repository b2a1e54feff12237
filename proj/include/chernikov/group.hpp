#pragma once

// Class-2 nilpotent 2-groups attached to tuples of alternating matrices over GF(2):
// presentations, explicit finite quotients with bottom (Z/2^e)^m, isomorphisms
// induced by weak-equivalence witnesses, and a brute-force isomorphism oracle.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chernikov/blocks.hpp"
#include "chernikov/linalg.hpp"
#include "chernikov/pencil.hpp"
#include "chernikov/poly.hpp"

namespace chernikov {

/// Generators h_1..h_N (involutions) and central a_1..a_m of order 2, with
/// [h_i, h_j] = sum_k c^(k)_ij a_k. Commutator vectors are stored as bitmasks over k.
class GroupPresentation {
 public:
  GroupPresentation(unsigned num_h, unsigned m) : num_h_(num_h), m_(m), comm_(std::size_t{num_h} * num_h, 0) {
    if (m > 32) throw usage_error("at most 32 bottom generators");
  }

  unsigned num_h() const { return num_h_; }
  unsigned m() const { return m_; }

  /// Bitmask of a_k appearing in [h_i, h_j]; 0-based indices.
  std::uint32_t commutator(unsigned i, unsigned j) const { return comm_[std::size_t{i} * num_h_ + j]; }

  void set_commutator(unsigned i, unsigned j, std::uint32_t value) {
    if (i == j && value) throw usage_error("[h_i, h_i] must be trivial");
    if (value >> m_) throw usage_error("commutator names a nonexistent bottom generator");
    comm_[std::size_t{i} * num_h_ + j] = value;
    comm_[std::size_t{j} * num_h_ + i] = value;
  }

  /// The defining matrices A_1..A_m over GF(2).
  std::vector<Mat> tuple() const {
    const Field& f = Field::gf2();
    std::vector<Mat> out(m_, Mat(f, num_h_, num_h_));
    for (unsigned k = 0; k < m_; ++k)
      for (unsigned i = 0; i < num_h_; ++i)
        for (unsigned j = 0; j < num_h_; ++j) out[k](i, j) = (commutator(i, j) >> k) & 1u;
    return out;
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  unsigned num_h_, m_;
  std::vector<std::uint32_t> comm_;
};

/// Commutators read off the matrix entries: [h_i, h_j] = sum_k A_k[i][j] a_k.
inline GroupPresentation presentation_from_tuple(const std::vector<Mat>& tuple) {
  if (tuple.empty()) throw usage_error("presentation needs at least one matrix");
  const std::size_t n = tuple.front().rows();
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const Mat& a = tuple[k];
    if (!a.field().is_gf2()) throw usage_error("group construction requires matrices over GF(2)");
    if (!a.is_square() || a.rows() != n) throw usage_error("tuple matrices must be square of equal size");
    if (auto v = validate_alternating(a, static_cast<char>('1' + k)))
      throw usage_error("matrix " + std::to_string(k + 1) + " is not alternating at (" + std::to_string(v->row + 1) +
                        "," + std::to_string(v->col + 1) + ")");
  }
  GroupPresentation p(static_cast<unsigned>(n), static_cast<unsigned>(tuple.size()));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      std::uint32_t v = 0;
      for (std::size_t k = 0; k < tuple.size(); ++k)
        if (tuple[k](i, j)) v |= 1u << k;
      p.set_commutator(i, j, v);
    }
  return p;
}

namespace detail {

inline constexpr std::uint32_t kA1 = 1, kA2 = 2;

// Commutator table of one block in its own basis, following the generator/relation
// table for A_{+,n}, A_{inf,n} and A_{f,n} (1-based i < j inside the block).
inline std::vector<std::tuple<unsigned, unsigned, std::uint32_t>> table_block(const ProjPoint& g, unsigned n) {
  std::vector<std::tuple<unsigned, unsigned, std::uint32_t>> rel;
  if (g.is_eps()) {
    // Table indices 1..n are the (n)-side of the block, n+1..2n-1 the (n-1)-side;
    // the matrix basis lists the (n-1)-side first.
    const unsigned d = n, eps = n - 1;
    auto basis = [&](unsigned t) { return t <= n ? eps + t : t - n; };
    for (unsigned i = 1; i <= 2 * n - 1; ++i) {
      if (d + i <= 2 * n - 1) rel.emplace_back(basis(i), basis(d + i), kA1);
      if (i >= 2 && d + i - 1 <= 2 * n - 1) rel.emplace_back(basis(i), basis(d + i - 1), kA2);
    }
    return rel;
  }
  if (g.form().is_x2()) {
    const unsigned d = n;
    for (unsigned i = 1; i <= d; ++i) {
      rel.emplace_back(i, d + i, kA2);
      if (i >= 2) rel.emplace_back(i, d + i - 1, kA1);
    }
    return rel;
  }
  // f^n(x) = x^d + lambda_1 x^(d-1) + ... + lambda_d.
  const Poly fn = pow(dehomogenize(g.form()).first, n);
  const unsigned d = static_cast<unsigned>(fn.degree());
  auto lambda = [&](unsigned j) { return fn[d - j]; };
  for (unsigned i = 1; i <= d; ++i) {
    if (d + i < 2 * d) rel.emplace_back(i, d + i, kA1);
    if (i >= 2) rel.emplace_back(i, d + i - 1, kA2);
    if (i < d && lambda(d - i + 1)) rel.emplace_back(i, 2 * d, kA2);
    if (i == d) rel.emplace_back(i, 2 * d, kA1 | (lambda(1) ? kA2 : 0u));
  }
  return rel;
}

}  // namespace detail

/// Presentation of G(rho) assembled block by block from the commutator table;
/// generators are numbered in the basis order of the canonical pair for rho.
inline GroupPresentation presentation_from_class(const ClassFunction& rho) {
  if (!rho.field().is_gf2()) throw usage_error("group presentations are defined over GF(2) only");
  GroupPresentation p(static_cast<unsigned>(rho.total_dimension()), 2);
  unsigned offset = 0;
  for (auto& [key, mult] : rho.entries()) {
    const auto rel = detail::table_block(key.first, key.second);
    const auto dim = static_cast<unsigned>(ClassFunction::block_dimension(key.first, key.second));
    for (unsigned copy = 0; copy < mult; ++copy) {
      for (auto [i, j, v] : rel) p.set_commutator(offset + i - 1, offset + j - 1, p.commutator(offset + i - 1, offset + j - 1) ^ v);
      offset += dim;
    }
  }
  return p;
}

/// GAP-style relator list: h_i^2, a_k^2, centrality of the a_k, and Comm(h_i,h_j)
/// times the inverse of its value.
inline std::vector<std::string> relators(const GroupPresentation& p) {
  std::vector<std::string> out;
  auto h = [](unsigned i) { return "h" + std::to_string(i + 1); };
  auto a = [](unsigned k) { return "a" + std::to_string(k + 1); };
  for (unsigned i = 0; i < p.num_h(); ++i) out.push_back(h(i) + "^2");
  for (unsigned k = 0; k < p.m(); ++k) out.push_back(a(k) + "^2");
  for (unsigned i = 0; i < p.num_h(); ++i)
    for (unsigned k = 0; k < p.m(); ++k) out.push_back("Comm(" + h(i) + "," + a(k) + ")");
  for (unsigned k = 0; k < p.m(); ++k)
    for (unsigned l = k + 1; l < p.m(); ++l) out.push_back("Comm(" + a(k) + "," + a(l) + ")");
  for (unsigned i = 0; i < p.num_h(); ++i)
    for (unsigned j = i + 1; j < p.num_h(); ++j) {
      std::string r = "Comm(" + h(i) + "," + h(j) + ")";
      const std::uint32_t v = p.commutator(i, j);
      std::vector<std::string> terms;
      for (unsigned k = 0; k < p.m(); ++k)
        if ((v >> k) & 1u) terms.push_back(a(k));
      if (terms.size() == 1) r += "*" + terms[0] + "^-1";
      if (terms.size() > 1) {
        std::string prod;
        for (auto& t : terms) prod += (prod.empty() ? "" : "*") + t;
        r += "*(" + prod + ")^-1";
      }
      out.push_back(r);
    }
  return out;
}

inline std::string to_gap(const GroupPresentation& p) {
  std::string out = "F/[";
  bool first = true;
  for (auto& r : relators(p)) {
    out += (first ? "" : ", ") + r;
    first = false;
  }
  return out + "]";
}

/// Explicit group: pairs (x, a) with x in GF(2)^N and a in (Z/2^e)^m, multiplied by
/// (x,a)(y,b) = (x + y, a + b + beta(x,y)), beta(x,y) = 2^(e-1) sum_{i>j} x_i y_j c_ij.
/// Elements are packed codes: x in the low N bits, then m fields of e bits.
class FiniteQuotient {
 public:
  using Code = std::uint64_t;

  FiniteQuotient(const GroupPresentation& p, unsigned e) : n_(p.num_h()), m_(p.m()), e_(e), pres_(p) {
    if (e == 0) throw usage_error("quotient exponent must be positive");
    if (n_ + e_ * m_ > 62) throw usage_error("quotient too large to encode");
    lower_.assign(m_, std::vector<std::uint64_t>(n_, 0));
    for (unsigned k = 0; k < m_; ++k)
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < i; ++j)
          if ((p.commutator(i, j) >> k) & 1u) lower_[k][i] |= std::uint64_t{1} << j;
  }

  const GroupPresentation& presentation() const { return pres_; }
  unsigned num_h() const { return n_; }
  unsigned m() const { return m_; }
  unsigned e() const { return e_; }
  unsigned log2_order() const { return n_ + e_ * m_; }
  std::uint64_t order() const { return std::uint64_t{1} << log2_order(); }

  std::uint64_t top(Code c) const { return c & mask(n_); }
  std::uint64_t bottom(Code c, unsigned k) const { return (c >> (n_ + k * e_)) & mask(e_); }

  Code make(std::uint64_t x, const std::vector<std::uint64_t>& a) const {
    Code c = x & mask(n_);
    for (unsigned k = 0; k < m_; ++k) c |= (a[k] & mask(e_)) << (n_ + k * e_);
    return c;
  }

  Code identity() const { return 0; }
  Code h(unsigned i) const { return std::uint64_t{1} << i; }
  Code a(unsigned k) const { return std::uint64_t{1} << (n_ + k * e_); }
  /// The order-2 element 2^(e-1) a_k.
  Code socle(unsigned k) const { return std::uint64_t{1} << (n_ + k * e_ + e_ - 1); }

  /// beta(x, y) component k as 0/1.
  unsigned beta(std::uint64_t x, std::uint64_t y, unsigned k) const {
    unsigned s = 0;
    for (std::uint64_t xs = x; xs; xs &= xs - 1) {
      const unsigned i = static_cast<unsigned>(std::countr_zero(xs));
      s ^= static_cast<unsigned>(std::popcount(y & lower_[k][i])) & 1u;
    }
    return s;
  }

  Code mul(Code u, Code v) const {
    const std::uint64_t x = top(u), y = top(v);
    Code out = x ^ y;
    for (unsigned k = 0; k < m_; ++k) {
      std::uint64_t s = bottom(u, k) + bottom(v, k);
      if (beta(x, y, k)) s += std::uint64_t{1} << (e_ - 1);
      out |= (s & mask(e_)) << (n_ + k * e_);
    }
    return out;
  }

  /// (x, a)^-1 = (x, -a - beta(x, x)).
  Code inv(Code u) const {
    const std::uint64_t x = top(u);
    Code out = x;
    for (unsigned k = 0; k < m_; ++k) {
      std::uint64_t s = (std::uint64_t{1} << e_) - bottom(u, k);
      if (beta(x, x, k)) s += std::uint64_t{1} << (e_ - 1);
      out |= (s & mask(e_)) << (n_ + k * e_);
    }
    return out;
  }

  Code pow(Code u, std::uint64_t k) const {
    Code r = identity();
    for (; k; k >>= 1, u = mul(u, u))
      if (k & 1) r = mul(r, u);
    return r;
  }

  std::uint64_t order_of(Code u) const {
    std::uint64_t ord = 1;
    for (Code p = u; p != identity(); p = mul(p, p)) ord *= 2;
    return ord;
  }

  /// [u, v] = u^-1 v^-1 u v.
  Code commutator(Code u, Code v) const { return mul(mul(inv(u), inv(v)), mul(u, v)); }

  bool is_central(Code u) const {
    for (unsigned i = 0; i < n_; ++i)
      if (commutator(u, h(i)) != identity()) return false;
    return true;
  }

  std::vector<Code> generators() const {
    std::vector<Code> g;
    for (unsigned i = 0; i < n_; ++i) g.push_back(h(i));
    for (unsigned k = 0; k < m_; ++k) g.push_back(a(k));
    return g;
  }

 private:
  static std::uint64_t mask(unsigned bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

  unsigned n_, m_, e_;
  GroupPresentation pres_;
  std::vector<std::vector<std::uint64_t>> lower_;
};

inline FiniteQuotient build_quotient(const GroupPresentation& p, unsigned e) { return FiniteQuotient(p, e); }

/// An explicit map between two quotients, given on every element.
struct QuotientMap {
  const FiniteQuotient* source;
  const FiniteQuotient* target;
  std::function<FiniteQuotient::Code(FiniteQuotient::Code)> apply;
};

/// Homomorphism and bijectivity check. Orders up to 2^10 test every pair; larger groups
/// test phi(g s) = phi(g) phi(s) for every g and every generator s, which is equivalent,
/// plus `samples` random pairs. Injectivity is checked on all elements when the order is
/// at most 2^22.
inline bool verify_isomorphism(const QuotientMap& phi, std::size_t samples = 2000, std::uint64_t seed = 1) {
  const FiniteQuotient& g = *phi.source;
  const FiniteQuotient& h = *phi.target;
  if (g.order() != h.order()) return false;
  const std::uint64_t n = g.order();
  if (n > (std::uint64_t{1} << 22)) throw usage_error("group too large for exhaustive verification");
  std::vector<FiniteQuotient::Code> img(n);
  std::vector<bool> seen(n, false);
  for (std::uint64_t u = 0; u < n; ++u) {
    img[u] = phi.apply(u);
    if (img[u] >= n || seen[img[u]]) return false;
    seen[img[u]] = true;
  }
  if (n <= (std::uint64_t{1} << 10)) {
    for (std::uint64_t u = 0; u < n; ++u)
      for (std::uint64_t v = 0; v < n; ++v)
        if (img[g.mul(u, v)] != h.mul(img[u], img[v])) return false;
    return true;
  }
  const auto gens = g.generators();
  for (std::uint64_t u = 0; u < n; ++u)
    for (auto s : gens)
      if (img[g.mul(u, s)] != h.mul(img[u], img[s])) return false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto u = pick(rng), v = pick(rng);
    if (img[g.mul(u, v)] != h.mul(img[u], img[v])) return false;
  }
  return true;
}

/// The map G(A) -> G(B) induced by B = S o A o Q (m = 2, over GF(2)):
/// (x, a) -> (x S^-1, Q^T a + gamma(x)). gamma corrects squares of the h-images:
/// with D the symmetric GF(2)-bilinear defect between the two cocycles, gamma(x) =
/// 2^(e-2) q4(x) where q4(x) = sum_i x_i D_ii + 2 sum_{i<j} x_i x_j D_ij (mod 4).
/// At e = 1 such a gamma exists only when every D_ii vanishes; otherwise the
/// witness is rejected.
class WitnessIsomorphism {
 public:
  WitnessIsomorphism(const FiniteQuotient& source, const FiniteQuotient& target, const Mat& s, const GL2Element& q)
      : g_(&source), h_(&target) {
    const GroupPresentation& p = source.presentation();
    const GroupPresentation& r = target.presentation();
    if (p.m() != 2 || r.m() != 2) throw usage_error("witness isomorphisms need pairs (m = 2)");
    if (source.e() != target.e()) throw usage_error("quotients at different levels");
    if (!q.field->is_gf2() || !s.field().is_gf2()) throw usage_error("witness must be over GF(2)");
    if (!q.invertible()) throw usage_error("witness Q is singular");
    const auto ta = p.tuple();
    const auto tb = r.tuple();
    if (s.rows() != p.num_h() || r.num_h() != p.num_h()) throw usage_error("witness S has the wrong size");
    const AlternatingPair moved = recombine_pair(congruence(s, AlternatingPair(ta[0], ta[1])), q);
    if (!(moved.a == tb[0] && moved.b == tb[1])) throw usage_error("witness does not carry the source tuple to the target");

    const unsigned n = p.num_h(), e = source.e();
    t_ = mat_inv(s);
    rows_.assign(n, 0);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (t_(i, j)) rows_[i] |= std::uint64_t{1} << j;
    // a_l -> sum_k q_lk b_k.
    qmat_ = {{{q.q11, q.q12}, {q.q21, q.q22}}};

    // D_ij, component k: socle coefficient of beta_B(e_i T, e_j T) - Q^T beta_A(e_i, e_j).
    d_.assign(2, std::vector<std::uint64_t>(n, 0));
    for (unsigned k = 0; k < 2; ++k)
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          unsigned bb = target.beta(rows_[i], rows_[j], k);
          unsigned ba = 0;
          for (unsigned l = 0; l < 2; ++l)
            if (qmat_[l][k]) ba ^= source.beta(std::uint64_t{1} << i, std::uint64_t{1} << j, l);
          if (bb ^ ba) d_[k][i] |= std::uint64_t{1} << j;
        }
    for (unsigned k = 0; k < 2; ++k)
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          if (((d_[k][i] >> j) & 1u) != ((d_[k][j] >> i) & 1u))
            throw std::logic_error("cocycle defect is not symmetric; witness inconsistent");
    if (e == 1)
      for (unsigned k = 0; k < 2; ++k)
        for (unsigned i = 0; i < n; ++i)
          if ((d_[k][i] >> i) & 1u)
            throw domain_error("witness does not lift to the e = 1 quotient: the image of h" + std::to_string(i + 1) +
                               " would need a square root of a socle element");
  }

  FiniteQuotient::Code operator()(FiniteQuotient::Code u) const {
    const FiniteQuotient& g = *g_;
    const FiniteQuotient& h = *h_;
    const unsigned n = g.num_h(), e = g.e();
    const std::uint64_t x = g.top(u);
    std::uint64_t y = 0;
    for (std::uint64_t xs = x; xs; xs &= xs - 1) y ^= rows_[static_cast<unsigned>(std::countr_zero(xs))];
    const std::uint64_t mod = std::uint64_t{1} << e;
    std::vector<std::uint64_t> b(2, 0);
    for (unsigned k = 0; k < 2; ++k) {
      std::uint64_t s = 0;
      for (unsigned l = 0; l < 2; ++l)
        if (qmat_[l][k]) s += g.bottom(u, l);
      s += gamma(x, k, n, e);
      b[k] = s % mod;
    }
    return h.make(y, b);
  }

  QuotientMap as_map() const {
    return {g_, h_, [this](FiniteQuotient::Code u) { return (*this)(u); }};
  }

 private:
  static AlternatingPair recombine_pair(const AlternatingPair& p, const GL2Element& q) {
    return {p.a.scaled(q.q11) + p.b.scaled(q.q21), p.a.scaled(q.q12) + p.b.scaled(q.q22)};
  }

  std::uint64_t gamma(std::uint64_t x, unsigned k, unsigned n, unsigned e) const {
    unsigned diag = 0, off = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (!((x >> i) & 1u)) continue;
      diag += (d_[k][i] >> i) & 1u;
      off += static_cast<unsigned>(std::popcount(d_[k][i] & x & ((std::uint64_t{1} << i) - 1)));
    }
    if (e == 1) return off & 1u;
    const std::uint64_t q4 = (diag + 2 * off) & 3u;
    return q4 << (e - 2);
  }

  const FiniteQuotient* g_;
  const FiniteQuotient* h_;
  Mat t_{Field::gf2(), 0, 0};
  std::vector<std::uint64_t> rows_;
  std::array<std::array<Elem, 2>, 2> qmat_{};
  std::vector<std::vector<std::uint64_t>> d_;
};

/// Builds the witness map and verifies it; throws if the witness is invalid or does
/// not lift at this level.
inline WitnessIsomorphism iso_from_witness(const FiniteQuotient& source, const FiniteQuotient& target, const Mat& s,
                                           const GL2Element& q) {
  WitnessIsomorphism phi(source, target, s, q);
  if (!verify_isomorphism(phi.as_map())) throw std::logic_error("witness map failed isomorphism verification");
  return phi;
}

// ---------------------------------------------------------------------------
// Brute-force isomorphism oracle (orders up to 2^12)

inline constexpr unsigned kMaxBruteForceLog2 = 12;

namespace detail {

inline std::map<std::uint64_t, std::size_t> order_spectrum(const FiniteQuotient& g) {
  std::map<std::uint64_t, std::size_t> spec;
  for (std::uint64_t u = 0; u < g.order(); ++u) ++spec[g.order_of(u)];
  return spec;
}

inline std::vector<FiniteQuotient::Code> center(const FiniteQuotient& g) {
  std::vector<FiniteQuotient::Code> z;
  for (std::uint64_t u = 0; u < g.order(); ++u)
    if (g.is_central(u)) z.push_back(u);
  return z;
}

}  // namespace detail

/// Backtracking search for images of a_1..a_m (central, order 2^e) and h_1..h_N
/// (involutions, prescribed commutators), keeping the image subgroup as large as the
/// source subgroup at each step.
inline bool brute_force_isomorphic(const FiniteQuotient& g1, const FiniteQuotient& g2) {
  if (g1.log2_order() > kMaxBruteForceLog2 || g2.log2_order() > kMaxBruteForceLog2)
    throw usage_error("brute-force isomorphism is limited to order 2^" + std::to_string(kMaxBruteForceLog2));
  if (g1.order() != g2.order()) return false;
  if (detail::order_spectrum(g1) != detail::order_spectrum(g2)) return false;
  const auto z2 = detail::center(g2);
  if (detail::center(g1).size() != z2.size()) return false;

  using Code = FiniteQuotient::Code;
  const std::uint64_t n = g2.order();
  const unsigned m = g1.m(), nh = g1.num_h(), e = g1.e();
  const std::uint64_t a_order = std::uint64_t{1} << e;

  std::vector<Code> a_cands;
  for (Code z : z2)
    if (g2.order_of(z) == a_order) a_cands.push_back(z);
  std::vector<Code> h_cands;
  for (std::uint64_t u = 0; u < n; ++u)
    if (g2.order_of(u) == 2) h_cands.push_back(u);

  std::vector<Code> a_img(m), h_img(nh);

  // Subgroup as a membership bitmap; adding g with g^r in H for its order r.
  auto extend = [&](const std::vector<bool>& sub, Code gen) {
    std::vector<bool> out = sub;
    std::vector<Code> members;
    for (std::uint64_t u = 0; u < n; ++u)
      if (sub[u]) members.push_back(u);
    Code p = gen;
    while (!sub[p]) {
      for (Code u : members) out[g2.mul(p, u)] = true;
      p = g2.mul(p, gen);
    }
    return out;
  };
  auto socle_value = [&](std::uint32_t mask) {
    Code v = g2.identity();
    for (unsigned k = 0; k < m; ++k)
      if ((mask >> k) & 1u) v = g2.mul(v, g2.pow(a_img[k], a_order / 2));
    return v;
  };

  std::function<bool(unsigned, const std::vector<bool>&, std::uint64_t)> place_h;
  place_h = [&](unsigned i, const std::vector<bool>& sub, std::uint64_t size) -> bool {
    if (i == nh) return size == n;
    for (Code c : h_cands) {
      if (sub[c]) continue;
      bool ok = true;
      for (unsigned j = 0; j < i && ok; ++j)
        ok = g2.commutator(h_img[j], c) == socle_value(g1.presentation().commutator(j, i));
      if (!ok) continue;
      h_img[i] = c;
      if (place_h(i + 1, extend(sub, c), size * 2)) return true;
    }
    return false;
  };

  std::function<bool(unsigned, const std::vector<bool>&, std::uint64_t)> place_a;
  place_a = [&](unsigned k, const std::vector<bool>& sub, std::uint64_t size) -> bool {
    if (k == m) return place_h(0, sub, size);
    for (Code c : a_cands) {
      auto next = extend(sub, c);
      const auto grown = static_cast<std::uint64_t>(std::count(next.begin(), next.end(), true));
      if (grown != size * a_order) continue;
      a_img[k] = c;
      if (place_a(k + 1, next, grown)) return true;
    }
    return false;
  };

  std::vector<bool> trivial(n, false);
  trivial[g2.identity()] = true;
  return place_a(0, trivial, 1);
}

}  // namespace chernikov
