#pragma once

// Incidence geometry built from a Desarguesian spread: the translation
// structure whose lines are the cosets of spread elements, translation
// hyperovals from maximum scattered subspaces at q = 2, r = 2, and affine
// caps from scattered subspaces at q = 2.

#include "linset.hpp"

namespace scattered {

/* the coset geometry is a 2-(q^(rt), q^t, 1) design with one parallel
   class per spread element */
struct DesignReport {
  u64 points = 0;
  u64 lines = 0;
  u64 points_per_line = 0;
  u64 lines_per_point = 0;
  u64 parallel_classes = 0;
  bool pair_coverage_once = false;
  bool parallel_partitions = false;
  bool ok = false;
};

inline std::vector<u64> line_through_points(const DesarguesianSpread& S, u64 a, u64 b) {
  const VectorSpace& B = S.reduction().base_space();
  if (a == b || a >= B.size() || b >= B.size()) throw std::invalid_argument("a line needs two distinct points");
  const Subspace E = S.element(S.classify(B.sub(b, a)));
  const u64 rep = E.reduce(a);
  auto pts = E.vectors();
  for (u64& v : pts) v = B.add(rep, v);
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline bool collinear(const DesarguesianSpread& S, u64 a, u64 b, u64 c) {
  if (a == b || a == c || b == c) return true;
  const VectorSpace& B = S.reduction().base_space();
  return S.classify(B.sub(b, a)) == S.classify(B.sub(c, a));
}

inline DesignReport design_check(const DesarguesianSpread& S, const Budget& budget = {}) {
  const VectorSpace& B = S.reduction().base_space();
  const u64 N = B.size();
  budget.require(N * N, "design pair matrix");

  DesignReport rep;
  rep.points = N;
  rep.points_per_line = pow_u64(S.q(), S.t(), "line size");
  rep.parallel_classes = S.element_count();

  std::vector<u32> pair_hits(size_t(N) * N, 0);
  std::vector<u64> lines_at(N, 0);
  rep.parallel_partitions = true;
  for (const auto& E : S.elements(budget)) {
    const auto vecs = E.vectors();
    std::set<u64> reps;
    for (u64 p = 0; p < N; ++p) reps.insert(E.reduce(p));
    if (reps.size() * vecs.size() != N) rep.parallel_partitions = false;
    for (u64 rep0 : reps) {
      ++rep.lines;
      std::vector<u64> pts;
      pts.reserve(vecs.size());
      for (u64 v : vecs) pts.push_back(B.add(rep0, v));
      for (u64 p : pts) ++lines_at[p];
      for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) ++pair_hits[pts[i] * N + pts[j]], ++pair_hits[pts[j] * N + pts[i]];
    }
  }
  rep.pair_coverage_once = true;
  for (u64 a = 0; a < N; ++a)
    for (u64 b = a + 1; b < N; ++b)
      if (pair_hits[a * N + b] != 1) rep.pair_coverage_once = false;
  rep.lines_per_point = lines_at.empty() ? 0 : lines_at[0];
  bool uniform = true;
  for (u64 c : lines_at)
    if (c != rep.lines_per_point) uniform = false;

  rep.ok = rep.pair_coverage_once && rep.parallel_partitions && uniform &&
           rep.lines_per_point == rep.parallel_classes &&
           rep.lines == rep.parallel_classes * (N / rep.points_per_line);
  return rep;
}

/* ---- translation hyperovals ---- */

struct HyperovalReport {
  u32 t = 0;
  u64 order = 0;  // the plane PG(2, 2^t)
  std::vector<u64> points;
  std::map<u64, u64> line_spectrum;
  u64 max_on_line = 0;
  bool ok = false;
};

/* a maximum scattered U at q = 2, r = 2 misses exactly two directions; its
   vectors plus those two infinite points form a hyperoval of PG(2, 2^t) */
inline HyperovalReport translation_hyperoval(const DesarguesianSpread& S, const Subspace& U,
                                             const Budget& budget = {}) {
  if (S.q() != 2 || S.r() != 2) throw std::invalid_argument("translation hyperovals need q = 2, r = 2");
  const auto L = linear_set(S, U, budget);
  if (L.rank != S.t() || !is_scattered_linear_set(L))
    throw std::invalid_argument("translation hyperovals need a maximum scattered subspace");

  const FieldTower& tw = S.tower();
  const u64 Q = tw.top_size();
  HyperovalReport rep;
  rep.t = S.t();
  rep.order = Q;

  const VectorSpace& T = S.reduction().top_space();
  for (u64 u : U.vectors())
    rep.points.push_back(Q * Q + S.reduction().phi_inv(u));  // (1, x, y)
  u64 missed = 0;
  for (u64 p : all_projective_points(T, budget))
    if (!std::binary_search(L.points.begin(), L.points.end(), p)) {
      rep.points.push_back(p);  // (0, s, u), already normalized
      ++missed;
    }
  if (missed != 2) throw invariant_error("undetermined_directions", "a scattered graph misses two directions");
  std::sort(rep.points.begin(), rep.points.end());

  const VectorSpace P3(tw.top_ptr(), 3);
  SubspaceStream lines(P3, 2, budget);
  while (auto line = lines.next()) {
    u64 hits = 0;
    for (u64 p : line->projective_points())
      if (std::binary_search(rep.points.begin(), rep.points.end(), p)) ++hits;
    ++rep.line_spectrum[hits];
    rep.max_on_line = std::max(rep.max_on_line, hits);
  }
  rep.ok = rep.max_on_line == 2 && rep.points.size() == Q + 2;
  return rep;
}

/* ---- affine caps ---- */

struct CapReport {
  u64 size = 0;
  u64 triples = 0;
  u64 collinear_triples = 0;
  bool is_cap = false;
  bool scattered = false;
};

/* over GF(2) the vectors of U, read in AG(r, 2^t), form a cap exactly when
   U is scattered: three points are collinear iff two nonzero differences
   share a spread element */
inline CapReport translation_cap(const DesarguesianSpread& S, const Subspace& U, const Budget& budget = {}) {
  if (S.q() != 2 || S.t() < 2) throw std::invalid_argument("affine caps here need q = 2 and t >= 2");
  CapReport rep;
  rep.scattered = is_scattered_linear_set(linear_set(S, U, budget));

  const VectorSpace& T = S.reduction().top_space();
  std::vector<u64> pts;
  for (u64 u : U.vectors()) pts.push_back(S.reduction().phi_inv(u));
  std::sort(pts.begin(), pts.end());
  rep.size = pts.size();
  const u64 n = pts.size();
  budget.require(n * (n - 1) * (n - 2) / 6, "cap triple scan");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const auto d1 = ProjectivePoint::of(T, T.sub(pts[j], pts[i]));
      for (size_t k = j + 1; k < pts.size(); ++k) {
        ++rep.triples;
        if (d1 == ProjectivePoint::of(T, T.sub(pts[k], pts[i]))) ++rep.collinear_triples;
      }
    }
  rep.is_cap = rep.collinear_triples == 0;
  return rep;
}

}  // namespace scattered
