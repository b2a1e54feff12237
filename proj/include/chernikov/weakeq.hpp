#pragma once

// Weak equivalence: GL(2) acting on class functions, orbit representatives,
// and the weak-equivalence decision with a witness.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernikov/blocks.hpp"
#include "chernikov/pencil.hpp"
#include "chernikov/poly.hpp"

namespace chernikov {

/// Fields above GF(16) are refused: GL(2) is enumerated.
inline constexpr unsigned kMaxWeakEqDegree = 4;

/// Every invertible 2x2 matrix: identity first, the rest by (q11, q12, q21, q22).
inline std::vector<GL2Element> gl2_enumerate(const Field& f) {
  if (f.degree() > kMaxWeakEqDegree)
    throw usage_error("GL(2) enumeration is limited to GF(2^k), k <= " + std::to_string(kMaxWeakEqDegree) + "; got " +
                      f.spec().to_string());
  const GL2Element id = GL2Element::identity(f);
  std::vector<GL2Element> out{id};
  const Elem q = f.size();
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b)
      for (Elem c = 0; c < q; ++c)
        for (Elem d = 0; d < q; ++d) {
          GL2Element m{&f, a, b, c, d};
          if (m.invertible() && !(m == id)) out.push_back(m);
        }
  return out;
}

/// (rho * Q)(g, n) = rho(Q * g, n); eps entries are fixed.
/// act_on_class(Q1 Q2, rho) = act_on_class(Q2, act_on_class(Q1, rho)).
inline ClassFunction act_on_class(const GL2Element& q, const ClassFunction& rho) {
  if (q.field != &rho.field()) throw usage_error("matrix and class function over different fields");
  const GL2Element qinv = q.inverse();
  ClassFunction out(rho.field());
  for (auto& [key, mult] : rho.entries()) out.add(moebius_act(qinv, key.first), key.second, mult);
  return out;
}

/// The pair (A, B) o Q with components sum_l q_lk A_l: (q11 A + q21 B, q12 A + q22 B).
inline AlternatingPair recombine(const AlternatingPair& p, const GL2Element& q) {
  if (q.field != &p.field()) throw usage_error("matrix and pair over different fields");
  return {p.a.scaled(q.q11) + p.b.scaled(q.q21), p.a.scaled(q.q12) + p.b.scaled(q.q22)};
}

/// S o P o Q.
inline AlternatingPair weak_transform(const Mat& s, const AlternatingPair& p, const GL2Element& q) {
  return recombine(congruence(s, p), q);
}

/// Class function of P o Q given that of P: act_on_class(Q^-T, rho).
inline ClassFunction transport_class(const ClassFunction& rho, const GL2Element& q) {
  return act_on_class(q.transpose().inverse(), rho);
}

struct CanonicalRep {
  ClassFunction rho;
  GL2Element witness;  // rho = act_on_class(witness, input)
};

/// Least element of the GL(2) orbit; the witness is the first minimizer in enumeration order.
inline CanonicalRep canonical_rep(const ClassFunction& rho) {
  std::optional<CanonicalRep> best;
  for (const GL2Element& q : gl2_enumerate(rho.field())) {
    ClassFunction img = act_on_class(q, rho);
    if (!best || img < best->rho) best = CanonicalRep{std::move(img), q};
  }
  return *best;
}

struct WeakEquivalence {
  bool equivalent = false;
  std::optional<GL2Element> witness;  // R is congruent to P o witness
};

/// Decides weak equivalence by comparing canonical orbit representatives; on success the
/// witness is the first Q in enumeration order that transports rho(P) onto rho(R), checked
/// by rebuilding P o Q and deciding congruence with R.
inline WeakEquivalence weakly_equivalent(const AlternatingPair& p, const AlternatingPair& r) {
  if (&p.field() != &r.field()) throw usage_error("pairs over different fields");
  gl2_enumerate(p.field());  // refuses large fields before any work
  if (p.dim() != r.dim()) return {};
  const ClassFunction rp = decompose(p), rr = decompose(r);
  if (!(canonical_rep(rp).rho == canonical_rep(rr).rho)) return {};
  for (const GL2Element& q : gl2_enumerate(p.field())) {
    if (!(transport_class(rp, q) == rr)) continue;
    if (!congruent(recombine(p, q), r)) throw std::logic_error("weak-equivalence witness failed verification");
    return {true, q};
  }
  throw std::logic_error("equal canonical representatives but no transporting matrix");
}

/// Largest search space (q^n candidate rows) accepted by find_congruence.
inline constexpr std::uint64_t kMaxCongruenceRows = std::uint64_t{1} << 12;

/// An invertible S with S P S^T = R, found by row-by-row backtracking: row i of S must
/// pair with itself and every earlier row exactly as R prescribes, and stay independent
/// of the earlier rows. Returns nullopt when P and R are not congruent.
inline std::optional<Mat> find_congruence(const AlternatingPair& p, const AlternatingPair& r) {
  if (&p.field() != &r.field()) throw usage_error("pairs over different fields");
  const Field& f = p.field();
  const std::size_t n = p.dim();
  if (r.dim() != n) return std::nullopt;
  std::uint64_t rows = 1;
  for (std::size_t i = 0; i < n; ++i) {
    rows *= f.size();
    if (rows > kMaxCongruenceRows) throw usage_error("congruence search space too large");
  }
  if (n == 0) return Mat(f, 0, 0);
  if (!congruent(p, r)) return std::nullopt;

  std::vector<std::vector<Elem>> cand(rows, std::vector<Elem>(n));
  for (std::uint64_t c = 0; c < rows; ++c)
    for (std::size_t j = 0, v = c; j < n; ++j, v /= f.size()) cand[c][j] = static_cast<Elem>(v % f.size());
  // Row vector times matrix, cached per candidate.
  auto times = [&](const std::vector<Elem>& x, const Mat& m) {
    std::vector<Elem> y(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (x[i])
        for (std::size_t j = 0; j < n; ++j) y[j] = Field::add(y[j], f.mul(x[i], m(i, j)));
    return y;
  };
  auto dot = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
    Elem s = 0;
    for (std::size_t i = 0; i < n; ++i) s = Field::add(s, f.mul(x[i], y[i]));
    return s;
  };
  std::vector<std::vector<Elem>> xa(rows), xb(rows);
  for (std::uint64_t c = 0; c < rows; ++c) {
    xa[c] = times(cand[c], p.a);
    xb[c] = times(cand[c], p.b);
  }

  std::vector<std::uint64_t> chosen;
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::uint64_t c = 1; c < rows; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = dot(xa[chosen[j]], cand[c]) == r.a(j, i) && dot(xb[chosen[j]], cand[c]) == r.b(j, i);
      if (!ok) continue;
      Mat m(f, i + 1, n);
      for (std::size_t j = 0; j < i; ++j)
        for (std::size_t k = 0; k < n; ++k) m(j, k) = cand[chosen[j]][k];
      for (std::size_t k = 0; k < n; ++k) m(i, k) = cand[c][k];
      if (rank(m) != i + 1) continue;
      chosen.push_back(c);
      if (place(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!place(0)) throw std::logic_error("congruent pairs but no congruence found");
  Mat s(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s(i, k) = cand[chosen[i]][k];
  return s;
}

}  // namespace chernikov
