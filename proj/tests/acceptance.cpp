// Acceptance gate: twelve checks, one line each, exact equality throughout.
// Every line carries its wall time and the limit it must stay under; any
// mismatch or overrun fails the binary.

#include <chrono>
#include <cstdio>
#include <random>

#include <scattered/cli.hpp>

using namespace scattered;

namespace {

int failures = 0;

template <class Body>
void criterion(int idx, double limit_s, const char* label, Body&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& ex) {
    note = std::string(" [") + ex.what() + "]";
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < limit_s;
  const bool pass = ok && in_time;
  if (!pass) ++failures;
  std::printf("[%2d] %s  %7.3fs (< %.0fs)  %s%s%s\n", idx, pass ? "PASS" : "FAIL", dt, limit_s,
              label, ok || !note.empty() ? "" : " [mismatch]", note.c_str());
  std::fflush(stdout);
}

Subspace random_subspace(const VectorSpace& V, u32 gens, std::mt19937_64& rng) {
  std::vector<u64> rows;
  for (u32 i = 0; i < gens; ++i) rows.push_back(rng() % V.size());
  return Subspace::span(V, rows);
}

}  // namespace

int main() {
  criterion(1, 1.0, "reference dim-5 subspace is scattered and inextensible; squaring graph reaches 6", [] {
    auto tw = make_tower(2, 1, 6, std::vector<u32>{1, 1, 0, 1, 1, 0, 1});
    DesarguesianSpread S(FieldReduction(tw, 2));
    const VectorSpace& B = S.reduction().base_space();
    Subspace U5 = Subspace::span(B, std::vector<u64>{0x806, 0x408, 0x203, 0x140, 0x0FE});
    auto rep = analyze(S, U5);
    if (!(U5.dim() == 5 && rep.scattered && rep.maximal)) return false;
    if (extend_scattered(S, U5).has_value()) return false;
    Subspace U6 = graph_subspace(S, LinearizedPolynomial(tw, {0, 1}));
    auto rep6 = analyze(S, U6, {}, false);
    return U6.dim() == 6 && rep6.scattered;
  });

  criterion(2, 5.0, "spreads partition nonzero vectors with element counts 5, 9, 21, 91, 65", [] {
    const u32 rs[] = {2, 2, 3, 3, 2}, ts[] = {2, 3, 2, 2, 6};
    const u64 qs[] = {2, 2, 2, 3, 2}, counts[] = {5, 9, 21, 91, 65};
    for (int i = 0; i < 5; ++i) {
      auto S = make_spread(rs[i], ts[i], qs[i]);
      if (S.element_count() != counts[i]) return false;
      if (!S.verify_partition()) return false;
    }
    return true;
  });

  criterion(3, 60.0, "exhaustive maxima 2, 3, 3 for (2,2,2), (2,3,2), (3,2,2) match floor(rt/2)", [] {
    const u32 rs[] = {2, 2, 3}, ts[] = {2, 3, 2}, expect[] = {2, 3, 3};
    for (int i = 0; i < 3; ++i) {
      auto rep = exhaustive_max_scattered(make_spread(rs[i], ts[i], 2));
      if (rep.max_dim != expect[i] || rep.max_dim != (rs[i] * ts[i]) / 2) return false;
    }
    return true;
  });

  criterion(4, 10.0, "greedy completion from zero reaches dim >= ceil((rt-t)/2)+1 on all five sets", [] {
    const u32 rs[] = {2, 2, 3, 3, 2}, ts[] = {2, 3, 2, 2, 6};
    const u64 qs[] = {2, 2, 2, 3, 2};
    for (int i = 0; i < 5; ++i) {
      auto S = make_spread(rs[i], ts[i], qs[i]);
      Subspace zero = Subspace::span(S.reduction().base_space(), std::vector<u64>{});
      const u32 rt = rs[i] * ts[i];
      const u32 floor_dim = (rt - ts[i] + 1) / 2 + 1;
      if (maximally_scatter(S, zero).dim() < floor_dim) return false;
    }
    return true;
  });

  criterion(5, 5.0, "hyperplane spectra exactly {1,3} and {1,4}; binary code weights exactly {4,6} at n=7", [] {
    auto S2 = make_spread(3, 2, 2);
    auto U2 = construct_max_scattered(S2).U;
    auto spec2 = hyperplane_spectrum(S2, U2);
    if (spec2.size() != 2 || !spec2.count(1) || !spec2.count(3)) return false;
    auto S3 = make_spread(3, 2, 3);
    auto spec3 = hyperplane_spectrum(S3, construct_max_scattered(S3).U);
    if (spec3.size() != 2 || !spec3.count(1) || !spec3.count(4)) return false;
    auto C = two_weight_code(S2, U2);
    std::map<u64, u64> wts = C.weight_enumerator;
    wts.erase(0);
    return C.n == 7 && wts.size() == 2 && wts.count(4) && wts.count(6) && C.two_weight;
  });

  criterion(6, 1.0, "a rank-3 set of size 7 meets all 21 lines of the plane of order 4", [] {
    auto S = make_spread(3, 2, 2);
    auto U = construct_max_scattered(S).U;
    auto rep = verify_blocking(S, U, 1);
    return rep.ok && rep.subspace_count == 21 && linear_set(S, U).size() == 7;
  });

  criterion(7, 120.0, "all 512 q-polynomials at q=2, t=3: graph scattered iff code is 64 words at distance 2", [] {
    auto tw = make_tower(2, 1, 3);
    DesarguesianSpread S(FieldReduction(tw, 2));
    u64 scattered_count = 0;
    for (u32 c0 = 0; c0 < 8; ++c0)
      for (u32 c1 = 0; c1 < 8; ++c1)
        for (u32 c2 = 0; c2 < 8; ++c2) {
          LinearizedPolynomial f(tw, {c0, c1, c2});
          const bool sc = is_scattered_linear_set(linear_set(S, graph_subspace(S, f)));
          auto C = mrd_from_poly(f);
          const bool code_side = C.size() == 64 && C.min_distance == 2;
          if (sc != code_side) return false;
          if (sc) ++scattered_count;
        }
    return scattered_count == 112;
  });

  criterion(8, 30.0, "hyperovals of sizes 6, 10, 18 certified by full line scans of 21, 73, 273 lines", [] {
    const u32 ts[] = {2, 3, 4};
    const u64 sizes[] = {6, 10, 18}, lines[] = {21, 73, 273};
    for (int i = 0; i < 3; ++i) {
      auto S = make_spread(2, ts[i], 2);
      auto rep = translation_hyperoval(S, construct_max_scattered(S).U);
      if (!rep.ok || rep.points.size() != sizes[i]) return false;
      u64 scanned = 0;
      for (const auto& [k, v] : rep.line_spectrum) scanned += v;
      if (scanned != lines[i]) return false;
    }
    return true;
  });

  criterion(9, 1.0, "an exhaustively found dim-3 scattered subspace gives an 8-point cap, 56 clean triples", [] {
    auto S = make_spread(3, 2, 2);
    auto ex = exhaustive_max_scattered(S);
    if (ex.max_dim != 3 || !ex.example) return false;
    auto rep = translation_cap(S, *ex.example);
    return rep.size == 8 && rep.triples == 56 && rep.collinear_triples == 0 && rep.is_cap;
  });

  criterion(10, 60.0, "the rank-6 double graph over GF(8): 9 disjoint 7-secants, 2 transversals, spectrum in {0,1,3,7}", [] {
    auto S = make_spread(4, 3, 2);
    const FieldTower& tw = S.tower();
    const VectorSpace T(S.tower().top_ptr(), 4);
    std::vector<u64> gens;
    for (u32 b : tw.q_basis()) {
      const u32 b2 = tw.frobenius(b);
      gens.push_back(S.reduction().phi(T.encode(std::vector<u32>{b, b2, 0, 0})));
      gens.push_back(S.reduction().phi(T.encode(std::vector<u32>{0, 0, b, b2})));
    }
    Subspace U = Subspace::span(S.reduction().base_space(), gens);
    if (U.dim() != 6) return false;
    if (!analyze(S, U, {}, false).scattered) return false;  // certify before the geometry
    auto rep = pseudoregulus(S, U);
    if (!(rep.ok && rep.secant_count == 9 && rep.transversal_count == 2)) return false;
    for (const auto& [sz, cnt] : rep.line_spectrum)
      if (sz != 0 && sz != 1 && sz != 3 && sz != 7) return false;
    return rep.secants_disjoint && rep.secants_cover_once;
  });

  criterion(11, 5.0, "an external splash at (3,3,2): 7 points, one hyperplane each, equals its linear set", [] {
    auto tw = make_tower(2, 1, 3);
    const VectorSpace P(tw->top_ptr(), 3);
    auto rep = splash(tw, 3, P.encode(std::vector<u32>{1, 0, 2}), P.encode(std::vector<u32>{0, 1, 4}));
    return rep.kind == "external" && rep.points.size() == 7 && rep.one_hyperplane_each &&
           rep.matches_linear_set && rep.as_linear_set.rank == 3 && rep.scattered;
  });

  criterion(12, 60.0, "weight identity and duality on 1000 random subspaces; field maps exhaustive to order 81", [] {
    const u32 rs[] = {2, 3, 2}, ts[] = {3, 2, 2};
    const u64 qs[] = {2, 2, 3};
    const int trials[] = {334, 333, 333};
    std::mt19937_64 rng(20250814);
    for (int i = 0; i < 3; ++i) {
      auto S = make_spread(rs[i], ts[i], qs[i]);
      const VectorSpace& B = S.reduction().base_space();
      const u32 rt = rs[i] * ts[i];
      for (int n = 0; n < trials[i]; ++n) {
        Subspace U = random_subspace(B, 1 + u32(rng() % rt), rng);
        auto L = linear_set(S, U);
        u64 sum = 0;
        for (const auto& [pt, w] : L.weights) sum += pow_u64(qs[i], w, "weight identity") - 1;
        if (sum != pow_u64(qs[i], U.dim(), "weight identity") - 1) return false;
        Subspace Perp = orthogonal_complement(S, U);
        if (Perp.dim() != rt - U.dim()) return false;
        if (!(orthogonal_complement(S, Perp) == U)) return false;
      }
    }

    const u32 towers[][3] = {{2, 1, 2}, {2, 1, 3}, {2, 1, 4}, {2, 1, 5}, {2, 1, 6}, {2, 2, 2},
                             {2, 2, 3}, {2, 3, 2}, {3, 1, 2}, {3, 1, 3}, {3, 1, 4}, {3, 2, 2},
                             {5, 1, 2}, {7, 1, 2}};
    for (const auto& pet : towers) {
      auto tw = make_tower(pet[0], pet[1], pet[2]);
      const Field& K = tw->top();
      const u64 Q = tw->top_size(), q = tw->q();
      if (Q > 81) return false;
      u64 fixed = 0;
      std::map<u32, u64> trace_fibers, norm_fibers;
      for (u64 x = 0; x < Q; ++x) {
        if (tw->frobenius(u32(x)) == x) ++fixed;
        u32 iter = u32(x);
        for (u32 k = 0; k < tw->t(); ++k) iter = tw->frobenius(iter);
        if (iter != x) return false;  // frobenius has order t over the base
        ++trace_fibers[tw->trace(u32(x))];
        if (x) ++norm_fibers[tw->norm(u32(x))];
        for (u64 y = 0; y < Q; ++y) {
          if (tw->frobenius(K.add(u32(x), u32(y))) != K.add(tw->frobenius(u32(x)), tw->frobenius(u32(y))))
            return false;
          if (tw->frobenius(K.mul(u32(x), u32(y))) != K.mul(tw->frobenius(u32(x)), tw->frobenius(u32(y))))
            return false;
        }
      }
      if (fixed != q) return false;
      if (trace_fibers.size() != q) return false;
      for (const auto& [v, c] : trace_fibers)
        if (v >= q || c != Q / q) return false;
      if (norm_fibers.size() != q - 1) return false;
      for (const auto& [v, c] : norm_fibers)
        if (v == 0 || v >= q || c != (Q - 1) / (q - 1)) return false;
    }
    return true;
  });

  {  // non-gating: randomized search for a dim-6 scattered subspace at (3,4,2)
    const auto t0 = std::chrono::steady_clock::now();
    auto S = make_spread(3, 4, 2);
    auto rep = search_scattered(S, 6, 1, 32);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[st] %s  %7.3fs  randomized search for dim 6 at (3,4,2): best %u, restarts %u\n",
                rep.found ? "HIT " : "MISS", dt, rep.best_dim, rep.restarts_used);
  }

  std::printf("acceptance: %d/12 passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
