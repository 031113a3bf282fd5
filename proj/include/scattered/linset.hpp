#pragma once

// Linear sets of PG(r-1, q^t) seen through field reduction: the point set
// B(U) with weights, duality via a trace form, splashes of subgeometries,
// subline intersections, and the pseudoregulus attached to maximum
// scattered linear sets over cubic extensions.

#include <iterator>

#include "scattered.hpp"

namespace scattered {

struct LinearSet {
  u32 r = 0, t = 0;
  u64 q = 0;
  u32 rank = 0;
  std::vector<u64> points;     // normalized top point codes, ascending
  std::map<u64, u32> weights;  // point -> weight, every listed point has weight >= 1

  u64 size() const { return points.size(); }
};

inline LinearSet linear_set(const DesarguesianSpread& S, const Subspace& U, const Budget& budget = {}) {
  LinearSet L;
  L.r = S.r();
  L.t = S.t();
  L.q = S.q();
  L.rank = U.dim();
  const auto counts = point_multiplicities(S, U, budget);
  L.points.reserve(counts.size());
  for (const auto& [pt, c] : counts) {
    L.points.push_back(pt);
    L.weights[pt] = weight_from_count(c, S.q(), S.t());
  }
  return L;
}

/* a rank m linear set has at most theta_{m-1}(q) points, with equality
   exactly when every weight is 1 */
inline bool is_scattered_linear_set(const LinearSet& L) {
  const bool full = L.size() == theta(static_cast<long long>(L.rank) - 1, L.q);
  bool all_one = true;
  for (const auto& [pt, w] : L.weights)
    if (w != 1) all_one = false;
  if (full != all_one) throw invariant_error("scattered_linear_set", "size and weight views disagree");
  return full;
}

/* ---- duality ---- */

struct DualityForm {
  u32 sigma_power = 0;  // beta(x, y) = Tr(sum_i x_i * y_i^(q^sigma_power))
};

/* orthogonal complement of U under the GF(q)-valued trace form; its linear
   set is the dual linear set of B(U) */
inline Subspace orthogonal_complement(const DesarguesianSpread& S, const Subspace& U,
                                      const DualityForm& form = {}, const Budget& budget = {}) {
  const auto& B = S.reduction().base_space();
  const auto& phi = S.reduction();
  const FieldTower& tw = S.tower();
  if (!(U.space() == B)) throw std::invalid_argument("subspace does not live in the spread's ambient space");

  const VectorSpace& T = phi.top_space();
  auto beta = [&](u64 x_base, u64 y_base) -> u32 {
    const u64 x = phi.phi_inv(x_base), y = phi.phi_inv(y_base);
    u32 s = 0;
    for (u32 i = 0; i < S.r(); ++i) {
      const u32 xi = T.digit(x, i);
      const u32 yi = tw.frobenius(T.digit(y, i), form.sigma_power);
      s = tw.top().add(s, tw.top().mul(xi, yi));
    }
    return tw.trace(s);
  };

  // the form must be nondegenerate, otherwise no polarity arises
  std::vector<u64> gram;
  for (u32 row = 0; row < B.n(); ++row) {
    u64 g = 0;
    for (u32 col = 0; col < B.n(); ++col) g = g * S.q() + beta(B.unit(row), B.unit(col));
    gram.push_back(g);
  }
  if (matrix_rank(B, gram) != B.n())
    throw invariant_error("polarity_nondegenerate", "trace form is degenerate");

  std::vector<u64> rows;
  rows.reserve(U.rows().size());
  for (u64 u : U.rows()) {
    u64 rv = 0;
    for (u32 col = 0; col < B.n(); ++col) rv = rv * S.q() + beta(u, B.unit(col));
    rows.push_back(rv);
  }
  Subspace perp = kernel(B, rows);
  if (perp.dim() + U.dim() != B.n())
    throw invariant_error("complement_dim", "orthogonal complement has wrong dimension");
  return perp;
}

inline LinearSet dual_linear_set(const DesarguesianSpread& S, const Subspace& U,
                                 const DualityForm& form = {}, const Budget& budget = {}) {
  return linear_set(S, orthogonal_complement(S, U, form, budget), budget);
}

/* ---- splash of a subgeometry on a line ---- */

struct SplashReport {
  u32 r = 0, n = 0;
  u64 q = 0;
  std::string kind;  // external | tangent | secant
  u64 rational_points_on_line = 0;
  std::vector<u64> points;                 // codes of pairs (s, u) on PG(1, q^n), ascending
  std::map<u64, u64> hyperplane_incidence; // splash point -> subgeometry hyperplanes through it
  bool one_hyperplane_each = false;
  LinearSet as_linear_set;  // B(U_psi) for the induced GF(q)-map psi
  bool matches_linear_set = false;
  bool scattered = false;
};

/* splash of the rational subgeometry PG(r-1, q) of PG(r-1, q^n) on the
   line through v1, v2: intersect every extended rational hyperplane with
   the line (the hyperplane containing the whole line, present only for
   secant lines, is skipped) */
inline SplashReport splash(TowerPtr tower, u32 r, u64 v1, u64 v2, const Budget& budget = {}) {
  if (r < 2) throw std::invalid_argument("splash needs r >= 2");
  const FieldTower& tw = *tower;
  SplashReport rep;
  rep.r = r;
  rep.n = tw.t();
  rep.q = tw.q();

  const VectorSpace P(tw.top_ptr(), r);   // ambient coordinates over GF(q^n)
  const VectorSpace Line(tw.top_ptr(), 2);  // coordinates (s, u) on the line
  {
    Subspace span = Subspace::span(P, std::vector<u64>{v1, v2});
    if (span.dim() != 2) throw std::invalid_argument("splash line needs independent v1, v2");
  }

  auto is_rational = [&](u64 point_code) {
    const u64 norm = ProjectivePoint::of(P, point_code).code;
    for (u32 i = 0; i < r; ++i)
      if (!tw.in_base(P.digit(norm, i))) return false;
    return true;
  };

  // rational points on the line
  budget.require(tw.top_size() + 1, "splash line scan");
  for (u64 p : all_projective_points(Line, budget)) {
    const u64 world = P.add(P.scal(Line.digit(p, 0), v1), P.scal(Line.digit(p, 1), v2));
    if (is_rational(world)) ++rep.rational_points_on_line;
  }
  if (rep.rational_points_on_line == 0)
    rep.kind = "external";
  else if (rep.rational_points_on_line == 1)
    rep.kind = "tangent";
  else if (rep.rational_points_on_line == rep.q + 1)
    rep.kind = "secant";
  else
    throw invariant_error("line_subgeometry_incidence", "a line meets the subgeometry in 0, 1 or q+1 points");

  // every rational hyperplane (normal vector a over GF(q)) cuts the line in
  // the point (s : u) = (a.v2 : -a.v1)
  const VectorSpace N(tw.base_ptr(), r);
  auto top_dot = [&](u64 a, u64 v) {
    u32 s = 0;
    for (u32 i = 0; i < r; ++i)
      s = tw.top().add(s, tw.top().mul(tw.embed(N.digit(a, i)), P.digit(v, i)));
    return s;
  };
  for (u64 a : all_projective_points(N, budget)) {
    const u32 sc = top_dot(a, v2);
    const u32 uc = tw.top().neg(top_dot(a, v1));
    if (sc == 0 && uc == 0) continue;  // hyperplane contains the line
    const u64 pair = u64(sc) * tw.top_size() + uc;
    ++rep.hyperplane_incidence[ProjectivePoint::of(Line, pair).code];
  }
  rep.points.reserve(rep.hyperplane_incidence.size());
  for (const auto& [pt, c] : rep.hyperplane_incidence) rep.points.push_back(pt);
  rep.one_hyperplane_each = true;
  for (const auto& [pt, c] : rep.hyperplane_incidence)
    if (c != 1) rep.one_hyperplane_each = false;

  // psi(a) = (a.v2, -a.v1) is GF(q)-linear, so the splash is the linear set
  // of U_psi = phi(psi(GF(q)^r)) under D_{2,n,q}
  DesarguesianSpread S2(FieldReduction(tower, 2));
  std::vector<u64> gens;
  for (u32 i = 0; i < r; ++i) {
    const u64 pair = u64(P.digit(v2, i)) * tw.top_size() + tw.top().neg(P.digit(v1, i));
    gens.push_back(S2.reduction().phi(pair));
  }
  Subspace U_psi = Subspace::span(S2.reduction().base_space(), gens);
  const u32 want_rank = rep.kind == "secant" ? r - 1 : r;
  if (U_psi.dim() != want_rank) throw invariant_error("splash_rank", "splash linear set has wrong rank");
  rep.as_linear_set = linear_set(S2, U_psi, budget);
  rep.matches_linear_set = rep.as_linear_set.points == rep.points;
  rep.scattered = is_scattered_linear_set(rep.as_linear_set);
  return rep;
}

/* ---- sublines of PG(1, q^n) ---- */

/* the unique GF(q)-subline through three distinct points, returned as the
   sorted q+1 point codes */
inline std::vector<u64> subline_through(const FieldTower& tw, u64 p1, u64 p2, u64 p3) {
  const VectorSpace Line(tw.top_ptr(), 2);
  const Field& K = tw.top();
  const u32 a1 = Line.digit(p1, 0), b1 = Line.digit(p1, 1);
  const u32 a2 = Line.digit(p2, 0), b2 = Line.digit(p2, 1);
  const u32 a3 = Line.digit(p3, 0), b3 = Line.digit(p3, 1);
  const u32 det = K.sub(K.mul(a1, b2), K.mul(a2, b1));
  if (det == 0) throw std::invalid_argument("subline needs three distinct points");
  // p3 = alpha p1 + beta p2
  const u32 alpha = K.div(K.sub(K.mul(a3, b2), K.mul(a2, b3)), det);
  const u32 beta = K.div(K.sub(K.mul(a1, b3), K.mul(a3, b1)), det);
  if (alpha == 0 || beta == 0) throw std::invalid_argument("subline needs three distinct points");
  const u64 w1 = Line.scal(alpha, p1);
  const u64 w2 = Line.scal(beta, p2);
  std::vector<u64> pts;
  pts.reserve(size_t(tw.q()) + 1);
  pts.push_back(ProjectivePoint::of(Line, w2).code);
  for (u32 lam = 0; lam < tw.q(); ++lam)
    pts.push_back(ProjectivePoint::of(Line, Line.add(w1, Line.scal(tw.embed(lam), w2))).code);
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw invariant_error("subline_size", "subline points collide");
  return pts;
}

struct SublineSpectrum {
  u64 subline_count = 0;
  std::map<u64, u64> histogram;  // |subline meet set| -> number of sublines
};

/* intersection sizes of every GF(q)-subline of PG(1, q^n) with the given
   sorted point set */
inline SublineSpectrum subline_spectrum(const FieldTower& tw, std::span<const u64> sorted_set,
                                        const Budget& budget = {}) {
  const VectorSpace Line(tw.top_ptr(), 2);
  const auto pts = all_projective_points(Line, budget);
  const u64 npts = pts.size();
  budget.require(npts * (npts - 1) * (npts - 2) / 6, "subline enumeration");

  std::set<std::vector<u64>> sublines;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      for (size_t k = j + 1; k < pts.size(); ++k)
        sublines.insert(subline_through(tw, pts[i], pts[j], pts[k]));

  SublineSpectrum spec;
  spec.subline_count = sublines.size();
  for (const auto& sl : sublines) {
    u64 hit = 0;
    for (u64 p : sl)
      if (std::binary_search(sorted_set.begin(), sorted_set.end(), p)) ++hit;
    ++spec.histogram[hit];
  }
  return spec;
}

/* ---- pseudoregulus ---- */

struct PseudoregulusReport {
  u32 n = 0;  // ambient PG(2n-1, q^3)
  u64 q = 0;
  LinearSet L;
  std::map<u64, u64> line_spectrum;  // |line meet L| -> line count
  u64 secant_count = 0;              // lines meeting L in q^2+q+1 points
  bool secants_disjoint = false;
  bool secants_cover_once = false;
  u64 transversal_count = 0;  // n-dim top subspaces meeting every long secant once
  bool ok = false;
};

/* scans every line of PG(2n-1, q^3) against the linear set of U (rank 3n,
   scattered); the long secants must form a pseudoregulus with exactly two
   transversal (n-1)-subspaces */
inline PseudoregulusReport pseudoregulus(const DesarguesianSpread& S, const Subspace& U,
                                         const Budget& budget = {}) {
  if (S.t() != 3 || S.r() % 2 != 0 || S.r() < 4)
    throw std::invalid_argument("pseudoregulus lives in PG(2n-1, q^3), n >= 2");
  PseudoregulusReport rep;
  rep.n = S.r() / 2;
  rep.q = S.q();
  rep.L = linear_set(S, U, budget);
  if (rep.L.rank != 3u * rep.n || !is_scattered_linear_set(rep.L))
    throw std::invalid_argument("pseudoregulus needs a scattered subspace of rank 3n");

  const u64 long_size = rep.q * rep.q + rep.q + 1;
  const VectorSpace T = S.reduction().top_space();
  std::vector<std::vector<u64>> secants;       // L-points per long secant
  std::vector<std::vector<u64>> secant_lines;  // all points of those lines
  {
    SubspaceStream lines(T, 2, budget);
    while (auto line = lines.next()) {
      auto lp = line->projective_points();
      std::vector<u64> hit;
      for (u64 p : lp)
        if (std::binary_search(rep.L.points.begin(), rep.L.points.end(), p)) hit.push_back(p);
      ++rep.line_spectrum[hit.size()];
      if (hit.size() == long_size) {
        secants.push_back(std::move(hit));
        secant_lines.push_back(std::move(lp));
      }
    }
  }
  rep.secant_count = secants.size();

  std::map<u64, u64> cover;
  for (const auto& s : secants)
    for (u64 p : s) ++cover[p];
  rep.secants_cover_once = cover.size() == rep.L.points.size();
  for (const auto& [p, c] : cover)
    if (c != 1) rep.secants_cover_once = false;
  rep.secants_disjoint = true;
  for (size_t i = 0; i < secants.size() && rep.secants_disjoint; ++i)
    for (size_t j = i + 1; j < secants.size() && rep.secants_disjoint; ++j) {
      std::vector<u64> inter;
      std::set_intersection(secants[i].begin(), secants[i].end(), secants[j].begin(), secants[j].end(),
                            std::back_inserter(inter));
      if (!inter.empty()) rep.secants_disjoint = false;
    }

  // a transversal meets each secant line in one point, usually outside L
  {
    SubspaceStream cands(T, rep.n, budget);
    while (auto W = cands.next()) {
      auto wp = W->projective_points();
      bool transversal = true;
      for (const auto& s : secant_lines) {
        u64 meet = 0;
        for (u64 p : s)
          if (std::binary_search(wp.begin(), wp.end(), p)) ++meet;
        if (meet != 1) {
          transversal = false;
          break;
        }
      }
      if (transversal) ++rep.transversal_count;
    }
  }

  const u64 expected_secants = rep.q * rep.q * rep.q + 1;
  bool spectrum_ok = true;
  for (const auto& [sz, cnt] : rep.line_spectrum)
    if (sz != 0 && sz != 1 && sz != rep.q + 1 && sz != long_size) spectrum_ok = false;
  rep.ok = spectrum_ok && rep.secant_count == expected_secants && rep.secants_disjoint &&
           rep.secants_cover_once && rep.transversal_count == 2;
  return rep;
}

}  // namespace scattered
