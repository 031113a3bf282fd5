#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scattered/linset.hpp"

using namespace scattered;

namespace {

DesarguesianSpread example_spread_12_2() {
  auto tw = make_tower(2, 1, 6, std::vector<u32>{1, 1, 0, 1, 1, 0, 1});
  return DesarguesianSpread(FieldReduction(std::move(tw), 2));
}

const std::vector<u64> kU5Rows = {0x806, 0x408, 0x203, 0x140, 0x0FE};

Subspace random_subspace(const VectorSpace& V, u32 gens, std::mt19937& rng) {
  std::vector<u64> rows;
  for (u32 i = 0; i < gens; ++i) rows.push_back(rng() % V.size());
  return Subspace::span(V, rows);
}

}  // namespace

TEST_CASE("linear set weights and scatteredness", "[linset]") {
  auto S = example_spread_12_2();
  const auto& B = S.reduction().base_space();

  Subspace U5 = Subspace::span(B, kU5Rows);
  auto L5 = linear_set(S, U5);
  REQUIRE(L5.rank == 5);
  REQUIRE(L5.size() == 31);
  for (const auto& [pt, w] : L5.weights) REQUIRE(w == 1);
  REQUIRE(is_scattered_linear_set(L5));

  auto L6 = linear_set(S, construct_max_scattered(S).U);
  REQUIRE(L6.size() == 63);
  REQUIRE(is_scattered_linear_set(L6));

  // the full space covers every point with weight t
  std::vector<u64> units;
  for (u32 i = 0; i < 12; ++i) units.push_back(B.unit(i));
  auto Lfull = linear_set(S, Subspace::span(B, units));
  REQUIRE(Lfull.rank == 12);
  REQUIRE(Lfull.size() == 65);
  for (const auto& [pt, w] : Lfull.weights) REQUIRE(w == 6);
  REQUIRE_FALSE(is_scattered_linear_set(Lfull));
}

TEST_CASE("orthogonal complement gives the dual linear set", "[linset][dual]") {
  auto S = example_spread_12_2();
  const auto& B = S.reduction().base_space();
  Subspace U5 = Subspace::span(B, kU5Rows);

  Subspace P5 = orthogonal_complement(S, U5);
  REQUIRE(P5.dim() == 7);
  REQUIRE(orthogonal_complement(S, P5) == U5);

  // the dual of the worked rank 5 example covers the whole line, with every
  // weight raised by rt - m - t = 1; the polarity pairs the spread element of
  // (s:u) with that of (u:-s), so the shift is read along that involution
  auto L5 = linear_set(S, U5);
  auto D5 = dual_linear_set(S, U5);
  REQUIRE(D5.rank == 7);
  REQUIRE(D5.size() == 65);
  std::map<u32, u32> hist;
  for (const auto& [pt, w] : D5.weights) ++hist[w];
  REQUIRE(hist == std::map<u32, u32>{{1, 34}, {2, 31}});
  const VectorSpace Line(S.tower().top_ptr(), 2);
  for (const auto& [pt, w] : D5.weights) {
    const u64 sw = u64(Line.digit(pt, 1)) * 64 + S.tower().top().neg(Line.digit(pt, 0));
    const auto it = L5.weights.find(ProjectivePoint::of(Line, sw).code);
    const u32 w5 = it == L5.weights.end() ? 0 : it->second;
    REQUIRE(w == w5 + 1);
  }

  // a twisted form still yields a complement of the right dimension
  REQUIRE(orthogonal_complement(S, U5, DualityForm{1}).dim() == 7);

  // dual of a maximum scattered subspace is maximum scattered (rt even)
  auto D6 = dual_linear_set(S, construct_max_scattered(S).U);
  REQUIRE(D6.rank == 6);
  REQUIRE(D6.size() == 63);
  REQUIRE(is_scattered_linear_set(D6));

  auto S42 = make_spread(4, 2, 2);
  auto U42 = construct_max_scattered(S42).U;
  auto D42 = dual_linear_set(S42, U42);
  REQUIRE(D42.rank == 4);
  REQUIRE(is_scattered_linear_set(D42));
  REQUIRE(orthogonal_complement(S42, orthogonal_complement(S42, U42)) == U42);

  auto S23 = make_spread(2, 2, 3);
  auto D23 = dual_linear_set(S23, construct_max_scattered(S23).U);
  REQUIRE(D23.rank == 2);
  REQUIRE(is_scattered_linear_set(D23));
}

TEST_CASE("orthogonal complement reverses containment and sends sums to intersections", "[linset][dual]") {
  auto S = make_spread(2, 2, 2);
  const auto& B = S.reduction().base_space();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Subspace U = random_subspace(B, 2, rng);
    Subspace W = random_subspace(B, 2, rng);
    Subspace pu = orthogonal_complement(S, U), pw = orthogonal_complement(S, W);
    REQUIRE(orthogonal_complement(S, U.sum(W)) == pu.intersect(pw));
    Subspace big = U.sum(W);
    REQUIRE(orthogonal_complement(S, big).contains_subspace(orthogonal_complement(S, big.sum(random_subspace(B, 1, rng)))));
  }

  Subspace foreign = Subspace::span(VectorSpace(S.tower().base_ptr(), 3), std::vector<u64>{1});
  REQUIRE_THROWS_AS(orthogonal_complement(S, foreign), std::invalid_argument);
}

TEST_CASE("splash of a subgeometry on a line", "[linset][splash]") {
  auto tw = make_tower(2, 1, 3);
  const VectorSpace P(tw->top_ptr(), 3);
  const u64 e0 = P.encode(std::vector<u32>{1, 0, 0});
  const u64 e1 = P.encode(std::vector<u32>{0, 1, 0});

  SECTION("secant line: the splash is the rational subline") {
    auto rep = splash(tw, 3, e0, e1);
    REQUIRE(rep.kind == "secant");
    REQUIRE(rep.rational_points_on_line == 3);
    REQUIRE(rep.points == std::vector<u64>{1, 8, 9});
    for (const auto& [pt, c] : rep.hyperplane_incidence) REQUIRE(c == 2);
    REQUIRE(rep.as_linear_set.rank == 2);
    REQUIRE(rep.matches_linear_set);
    REQUIRE(rep.scattered);
    REQUIRE(rep.points == subline_through(*tw, 1, 8, 9));
  }

  SECTION("tangent line: a club with the rational point on theta_{r-2}(q) hyperplanes") {
    auto rep = splash(tw, 3, e0, P.encode(std::vector<u32>{0, 1, 2}));
    REQUIRE(rep.kind == "tangent");
    REQUIRE(rep.rational_points_on_line == 1);
    REQUIRE(rep.points.size() == 5);  // q^2 + 1
    REQUIRE(rep.points == std::vector<u64>{1, 8, 9, 12, 14});
    REQUIRE(rep.hyperplane_incidence.at(8) == 3);  // the rational point (1:0)
    REQUIRE_FALSE(rep.one_hyperplane_each);
    REQUIRE(rep.as_linear_set.rank == 3);
    REQUIRE(rep.matches_linear_set);
    REQUIRE_FALSE(rep.scattered);
  }

  SECTION("external line: scattered, one hyperplane per point") {
    auto rep = splash(tw, 3, P.encode(std::vector<u32>{1, 0, 2}), P.encode(std::vector<u32>{0, 1, 4}));
    REQUIRE(rep.kind == "external");
    REQUIRE(rep.rational_points_on_line == 0);
    REQUIRE(rep.points == std::vector<u64>{1, 8, 9, 11, 12, 13, 14});
    REQUIRE(rep.one_hyperplane_each);
    REQUIRE(rep.as_linear_set.rank == 3);
    REQUIRE(rep.matches_linear_set);
    REQUIRE(rep.scattered);
  }

  SECTION("degenerate lines are rejected") {
    REQUIRE_THROWS_AS(splash(tw, 3, e0, P.scal(3, e0)), std::invalid_argument);
    REQUIRE_THROWS_AS(splash(tw, 1, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("every line of PG(2,9) is secant or tangent to the Baer subplane", "[linset][splash]") {
  auto tw = make_tower(3, 1, 2);
  const VectorSpace P(tw->top_ptr(), 3);
  std::map<std::string, u64> kinds;
  SubspaceStream lines(P, 2);
  while (auto ln = lines.next()) {
    auto rep = splash(tw, 3, ln->rows()[0], ln->rows()[1]);
    ++kinds[rep.kind];
    REQUIRE(rep.matches_linear_set);
    // scattered of full rank r exactly for external lines with injective incidence
    const bool full_rank_scattered = rep.scattered && rep.as_linear_set.rank == 3;
    REQUIRE(full_rank_scattered == (rep.kind == "external" && rep.one_hyperplane_each));
    if (rep.kind == "tangent") {
      REQUIRE(rep.points.size() == 10);  // q^2 + 1
      u64 heavy = 0;
      for (const auto& [pt, c] : rep.hyperplane_incidence) {
        REQUIRE((c == 1 || c == 4));
        if (c == 4) ++heavy;
      }
      REQUIRE(heavy == 1);
    }
    if (rep.kind == "secant") REQUIRE(rep.points.size() == 4);  // a subline
  }
  // a Baer subplane is a blocking set: no external lines at all
  REQUIRE(kinds == std::map<std::string, u64>{{"secant", 13}, {"tangent", 78}});
}

TEST_CASE("sublines through three points", "[linset][subline]") {
  auto tw = make_tower(3, 1, 3);
  const VectorSpace Line(tw->top_ptr(), 2);
  auto pts = all_projective_points(Line);
  REQUIRE(pts.size() == 28);

  auto sl = subline_through(*tw, pts[3], pts[9], pts[17]);
  REQUIRE(sl.size() == 4);
  for (u64 p : {pts[3], pts[9], pts[17]}) REQUIRE(std::binary_search(sl.begin(), sl.end(), p));
  REQUIRE(sl == subline_through(*tw, pts[17], pts[3], pts[9]));
  REQUIRE(sl == subline_through(*tw, pts[9], pts[17], pts[3]));
  REQUIRE_THROWS_AS(subline_through(*tw, pts[3], pts[3], pts[17]), std::invalid_argument);
  REQUIRE_THROWS_AS(subline_through(*tw, pts[3], pts[9], pts[9]), std::invalid_argument);

  // |PGL(2,27)| / |PGL(2,3)| distinct sublines, pairwise sharing at most 2 points
  std::set<std::vector<u64>> all;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      for (size_t k = j + 1; k < pts.size(); ++k) all.insert(subline_through(*tw, pts[i], pts[j], pts[k]));
  REQUIRE(all.size() == 819);
  REQUIRE(all.size() == (28 * 27 * 26) / (4 * 3 * 2));
  std::vector<std::vector<u64>> sls(all.begin(), all.end());
  for (size_t i = 0; i < sls.size(); ++i)
    for (size_t j = i + 1; j < sls.size(); ++j) {
      u64 common = 0;
      for (u64 p : sls[i])
        if (std::binary_search(sls[j].begin(), sls[j].end(), p)) ++common;
      REQUIRE(common <= 2);
    }
}

TEST_CASE("subline spectrum of scattered linear sets", "[linset][subline]") {
  SECTION("rank 3 over GF(27)") {
    auto tw = make_tower(3, 1, 3);
    DesarguesianSpread S(FieldReduction(tw, 2));
    auto L = linear_set(S, construct_max_scattered(S).U);
    REQUIRE(L.rank == 3);
    REQUIRE(L.size() == 13);
    REQUIRE(is_scattered_linear_set(L));

    auto spec = subline_spectrum(*tw, L.points);
    REQUIRE(spec.subline_count == 819);
    REQUIRE(spec.histogram ==
            std::map<u64, u64>{{0, 52}, {1, 247}, {2, 312}, {3, 182}, {4, 26}});
    // sizes stay in 0..min(q+1, k) or hit q+1 exactly
    for (const auto& [sz, cnt] : spec.histogram) REQUIRE((sz <= 3 || sz == 4));
    // every point of PG(1,27) lies on 117 sublines
    u64 incidences = 0;
    for (const auto& [sz, cnt] : spec.histogram) incidences += sz * cnt;
    REQUIRE(incidences == 13 * 117);
  }

  SECTION("rank 6 over GF(64)") {
    auto S = example_spread_12_2();
    auto L = linear_set(S, construct_max_scattered(S).U);
    auto spec = subline_spectrum(S.tower(), L.points, Budget{100'000'000});
    REQUIRE(spec.subline_count == 43680);  // every triple of PG(1,64) spans one
    REQUIRE(spec.histogram == std::map<u64, u64>{{1, 63}, {2, 3906}, {3, 39711}});
  }
}

TEST_CASE("rank three linear sets meet a subline in every possible size", "[linset][subline]") {
  auto tw = make_tower(3, 1, 3);
  DesarguesianSpread S(FieldReduction(tw, 2));
  const VectorSpace Line(tw->top_ptr(), 2);
  auto pts = all_projective_points(Line);

  const std::vector<std::vector<u64>> samples = {
      subline_through(*tw, pts[0], pts[1], pts[2]),
      subline_through(*tw, pts[3], pts[9], pts[17]),
      subline_through(*tw, pts[5], pts[11], pts[27]),
  };
  const std::vector<u64> expected_scans = {850, 15, 5};
  for (size_t si = 0; si < samples.size(); ++si) {
    std::set<u64> seen;
    u64 scanned = 0;
    SubspaceStream subs(S.reduction().base_space(), 3);
    while (auto U = subs.next()) {
      ++scanned;
      auto L = linear_set(S, *U);
      u64 j = 0;
      for (u64 p : samples[si])
        if (std::binary_search(L.points.begin(), L.points.end(), p)) ++j;
      seen.insert(j);
      if (seen.size() == 4) break;
    }
    REQUIRE(seen == std::set<u64>{0, 1, 2, 3});
    REQUIRE(scanned == expected_scans[si]);
  }
}

TEST_CASE("pseudoregulus of a maximum scattered linear set over a cubic field", "[linset][pseudoregulus]") {
  auto S = make_spread(4, 3, 2);
  auto U = construct_max_scattered(S).U;
  auto rep = pseudoregulus(S, U);

  REQUIRE(rep.n == 2);
  REQUIRE(rep.L.size() == 63);
  REQUIRE(rep.line_spectrum == std::map<u64, u64>{{0, 1376}, {1, 2772}, {3, 588}, {7, 9}});
  u64 total = 0;
  for (const auto& [sz, cnt] : rep.line_spectrum) total += cnt;
  REQUIRE(total == gaussian_binomial(4, 2, 8));
  REQUIRE(rep.secant_count == 9);
  REQUIRE(rep.secants_disjoint);
  REQUIRE(rep.secants_cover_once);
  REQUIRE(rep.transversal_count == 2);
  REQUIRE(rep.ok);

  const auto& B = S.reduction().base_space();
  REQUIRE_THROWS_AS(pseudoregulus(make_spread(2, 2, 2), U), std::invalid_argument);
  std::vector<u64> units;
  for (u32 i = 0; i < 6; ++i) units.push_back(B.unit(i));
  REQUIRE_THROWS_AS(pseudoregulus(S, Subspace::span(B, units)), std::invalid_argument);
  REQUIRE_THROWS_AS(pseudoregulus(S, U.extended(B.unit(7))), std::invalid_argument);
}

TEST_CASE("linset budgets stop runaway scans", "[linset][budget]") {
  auto tw = make_tower(2, 1, 3);
  const VectorSpace P(tw->top_ptr(), 3);
  REQUIRE_THROWS_AS(splash(tw, 3, P.encode(std::vector<u32>{1, 0, 0}), P.encode(std::vector<u32>{0, 1, 0}), Budget{3}),
                    budget_error);
  std::vector<u64> empty;
  REQUIRE_THROWS_AS(subline_spectrum(*tw, std::span<const u64>(empty.data(), 0), Budget{10}), budget_error);
}
