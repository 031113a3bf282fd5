#pragma once

// Codes attached to scattered subspaces: rank-metric codes from linearized
// polynomials (with the maximum-scatteredness criterion), projective
// two-weight codes from two-intersection linear sets, and multi-fold
// blocking sets.

#include <iterator>

#include "linset.hpp"

namespace scattered {

/* f(x) = sum_i coeffs[i] * x^(q^i), GF(q)-linear on GF(q^t) */
struct LinearizedPolynomial {
  TowerPtr tw;
  std::vector<u32> coeffs;  // top-field codes, low q-degree first, size <= t

  LinearizedPolynomial(TowerPtr tower, std::vector<u32> c) : tw(std::move(tower)), coeffs(std::move(c)) {
    if (coeffs.size() > tw->t()) throw std::invalid_argument("linearized polynomial has q-degree >= t");
    for (u32 c0 : coeffs)
      if (c0 >= tw->top_size()) throw std::invalid_argument("linearized coefficient out of range");
  }

  u32 eval(u32 x) const {
    u32 y = 0;
    for (u32 i = 0; i < coeffs.size(); ++i)
      y = tw->top().add(y, tw->top().mul(coeffs[i], tw->frobenius(x, i)));
    return y;
  }

  /* rows are the q_basis images in coordinates; the row space rank is the
     GF(q)-rank of the map */
  std::vector<u64> matrix_rows() const {
    const VectorSpace M(tw->base_ptr(), tw->t());
    std::vector<u64> rows;
    rows.reserve(tw->t());
    for (u32 j = 0; j < tw->t(); ++j) {
      const auto c = tw->coords(eval(tw->q_basis()[j]));
      rows.push_back(M.encode(c));
    }
    return rows;
  }

  u32 rank() const {
    const VectorSpace M(tw->base_ptr(), tw->t());
    return matrix_rank(M, matrix_rows());
  }
};

/* U_f = {phi(x, f(x))}, the graph of f inside the two-block reduction */
inline Subspace graph_subspace(const DesarguesianSpread& S, const LinearizedPolynomial& f) {
  if (S.r() != 2) throw std::invalid_argument("graph subspaces need r = 2");
  const FieldTower& tw = S.tower();
  std::vector<u64> gens;
  for (u32 j = 0; j < tw.t(); ++j) {
    const u32 b = tw.q_basis()[j];
    gens.push_back(S.reduction().phi(u64(b) * tw.top_size() + f.eval(b)));
  }
  Subspace U = Subspace::span(S.reduction().base_space(), gens);
  if (U.dim() != tw.t()) throw invariant_error("graph_rank", "a graph has full rank");
  return U;
}

/* minimum GF(q)-rank of x -> a*x + b*f(x) over nonzero pencil members */
inline u32 min_pencil_rank(const LinearizedPolynomial& f, const Budget& budget = {}) {
  const FieldTower& tw = *f.tw;
  const u64 Q = tw.top_size();
  budget.require(Q * Q, "pencil rank scan");
  u32 best = tw.t();
  for (u64 a = 0; a < Q; ++a)
    for (u64 b = 0; b < Q; ++b) {
      if (a == 0 && b == 0) continue;
      std::vector<u32> c = f.coeffs;
      c.resize(std::max<size_t>(c.size(), 1));
      for (u32& x : c) x = tw.top().mul(u32(b), x);
      c[0] = tw.top().add(c[0], u32(a));
      best = std::min(best, LinearizedPolynomial(f.tw, c).rank());
      if (best == 0) break;
    }
  return best;
}

/* U_f is scattered exactly when no pencil member drops rank below t-1 */
inline bool sheekey_rank_condition(const LinearizedPolynomial& f, const Budget& budget = {}) {
  return min_pencil_rank(f, budget) + 1 >= f.tw->t();
}

/* ---- rank-metric codes ---- */

struct RankMetricCode {
  u32 t = 0;
  u64 q = 0;
  u64 pair_count = 0;                   // (a, b) pairs folded into the code
  std::vector<std::vector<u64>> words;  // matrices as sorted row lists, zero included
  u32 min_distance = 0;                 // least rank of a nonzero word

  u64 size() const { return words.size(); }

  /* the Singleton bound for t x t rank-metric codes is q^(t(t-d+1)) */
  bool is_mrd() const { return size() == pow_u64(q, t * (t - min_distance + 1), "mrd bound"); }
};

inline u32 rank_distance(const VectorSpace& M, std::span<const u64> A, std::span<const u64> B) {
  if (A.size() != B.size()) throw std::invalid_argument("rank distance needs equal shapes");
  std::vector<u64> diff;
  diff.reserve(A.size());
  for (size_t i = 0; i < A.size(); ++i) diff.push_back(M.sub(A[i], B[i]));
  return matrix_rank(M, diff);
}

/* C_f = {matrix of a*x + b*f(x)} over all pairs; a GF(q)-subspace of t x t
   matrices of dimension 2t unless f is a scalar multiple of x */
inline RankMetricCode mrd_from_poly(const LinearizedPolynomial& f, const Budget& budget = {}) {
  const FieldTower& tw = *f.tw;
  const u64 Q = tw.top_size();
  budget.require(Q * Q, "rank code enumeration");
  RankMetricCode C;
  C.t = tw.t();
  C.q = tw.q();
  C.pair_count = Q * Q;
  const VectorSpace M(tw.base_ptr(), tw.t());
  std::set<std::vector<u64>> seen;
  for (u64 a = 0; a < Q; ++a)
    for (u64 b = 0; b < Q; ++b) {
      std::vector<u32> c = f.coeffs;
      c.resize(std::max<size_t>(c.size(), 1));
      for (u32& x : c) x = tw.top().mul(u32(b), x);
      c[0] = tw.top().add(c[0], u32(a));
      seen.insert(LinearizedPolynomial(f.tw, c).matrix_rows());
    }
  C.words.assign(seen.begin(), seen.end());
  C.min_distance = tw.t();
  const std::vector<u64> zero(tw.t(), 0);
  for (const auto& w : C.words)
    if (w != zero) C.min_distance = std::min(C.min_distance, u32(matrix_rank(M, w)));
  return C;
}

/* ---- two-intersection sets and two-weight codes ---- */

inline std::pair<u64, u64> two_intersection_numbers(u32 r, u32 t, u64 q) {
  const u32 m = r * t / 2;
  return {theta(static_cast<long long>(m) - t - 1, q), theta(static_cast<long long>(m) - t, q)};
}

/* w1 = q^(m-t) (q^t - 1)/(q-1) and w2 = q^(m-t+1) (q^(t-1) - 1)/(q-1) */
inline std::pair<u64, u64> two_weight_values(u32 r, u32 t, u64 q) {
  const u32 m = r * t / 2;
  const u64 w1 = pow_u64(q, m - t, "weight") * theta(static_cast<long long>(t) - 1, q);
  const u64 w2 = pow_u64(q, m - t + 1, "weight") * theta(static_cast<long long>(t) - 2, q);
  return {w1, w2};
}

inline std::map<u64, u64> hyperplane_spectrum(const DesarguesianSpread& S, const Subspace& U,
                                              const Budget& budget = {}) {
  const auto L = linear_set(S, U, budget);
  const VectorSpace& T = S.reduction().top_space();
  std::map<u64, u64> spec;
  for (u64 v : all_projective_points(T, budget)) {
    u64 zeros = 0;
    for (u64 p : L.points)
      if (T.dot(v, p) == 0) ++zeros;
    ++spec[zeros];
  }
  return spec;
}

struct TwoWeightCode {
  u32 r = 0, t = 0;
  u64 q = 0;
  u64 n = 0;  // code length = points of the linear set
  u64 m1 = 0, m2 = 0, w1 = 0, w2 = 0;
  std::map<u64, u64> spectrum;           // hyperplane intersection sizes
  std::map<u64, u64> weight_enumerator;  // Hamming weight -> codeword count
  bool two_intersection = false;
  bool two_weight = false;
};

/* the projective code whose generator columns are the points of a maximum
   scattered linear set; rt even */
inline TwoWeightCode two_weight_code(const DesarguesianSpread& S, const Subspace& U,
                                     const Budget& budget = {}) {
  if ((S.r() * S.t()) % 2 != 0) throw std::invalid_argument("two-weight codes need rt even");
  const auto L = linear_set(S, U, budget);
  if (L.rank != S.r() * S.t() / 2 || !is_scattered_linear_set(L))
    throw std::invalid_argument("two-weight codes need a maximum scattered subspace");

  TwoWeightCode C;
  C.r = S.r();
  C.t = S.t();
  C.q = S.q();
  C.n = L.size();
  std::tie(C.m1, C.m2) = two_intersection_numbers(C.r, C.t, C.q);
  std::tie(C.w1, C.w2) = two_weight_values(C.r, C.t, C.q);
  C.spectrum = hyperplane_spectrum(S, U, budget);
  C.two_intersection = true;
  for (const auto& [sz, cnt] : C.spectrum)
    if (sz != C.m1 && sz != C.m2) C.two_intersection = false;

  const VectorSpace& T = S.reduction().top_space();
  const VectorSpace Msg(S.tower().top_ptr(), S.r());
  budget.require(Msg.size() * C.n, "codeword enumeration");
  for (u64 msg = 0; msg < Msg.size(); ++msg) {
    u64 wt = 0;
    for (u64 p : L.points)
      if (T.dot(msg, p) != 0) ++wt;
    ++C.weight_enumerator[wt];
  }
  C.two_weight = true;
  for (const auto& [wt, cnt] : C.weight_enumerator)
    if (wt != 0 && wt != C.w1 && wt != C.w2) C.two_weight = false;
  return C;
}

/* ---- blocking sets ---- */

struct BlockingReport {
  u32 m = 0, k = 0;
  u64 q = 0;
  u32 subspace_dim = 0;  // vector dimension of the scanned subspaces
  u64 fold = 0;          // required hits per subspace
  u64 subspace_count = 0;
  u64 min_hits = 0;
  std::map<u64, u64> histogram;
  bool ok = false;
};

/* a scattered linear set of rank m blocks every projective subspace of
   dimension (rt-m+k)/t - 1 at least theta_{k-1}(q) times, for t | m-k */
inline BlockingReport verify_blocking(const DesarguesianSpread& S, const Subspace& U, u32 k,
                                      const Budget& budget = {}) {
  const auto L = linear_set(S, U, budget);
  const u32 m = L.rank;
  if (!is_scattered_linear_set(L)) throw std::invalid_argument("blocking sets here come from scattered subspaces");
  if (k < 1 || k > m || (m - k) % S.t() != 0)
    throw std::invalid_argument("need 1 <= k <= m and t dividing m-k");

  BlockingReport rep;
  rep.m = m;
  rep.k = k;
  rep.q = S.q();
  rep.subspace_dim = (S.r() * S.t() - m + k) / S.t();
  rep.fold = theta(static_cast<long long>(k) - 1, S.q());

  const VectorSpace& T = S.reduction().top_space();
  rep.min_hits = L.size() + 1;
  SubspaceStream subs(T, rep.subspace_dim, budget);
  while (auto W = subs.next()) {
    ++rep.subspace_count;
    u64 hits = 0;
    for (u64 p : W->projective_points())
      if (std::binary_search(L.points.begin(), L.points.end(), p)) ++hits;
    ++rep.histogram[hits];
    rep.min_hits = std::min(rep.min_hits, hits);
  }
  rep.ok = rep.min_hits >= rep.fold;
  return rep;
}

}  // namespace scattered
