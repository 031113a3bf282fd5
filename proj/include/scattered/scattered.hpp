#pragma once

// Scattered subspaces with respect to a Desarguesian spread: weight
// profiles, dimension bounds, greedy and exhaustive extension, the known
// direct constructions, and a seeded randomized search.

#include <atomic>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "spread.hpp"

namespace scattered {

/* ---- dimension bounds ---- */

struct BoundSet {
  u32 r = 0, t = 0;
  u64 q = 0;
  u64 lower_maximal = 0;       // every maximal scattered subspace has at least this dimension
  u64 upper_general = 0;       // scattered w.r.t. any spread: dim <= rt - t
  u64 upper_desarguesian = 0;  // dim <= floor(rt/2)
  u64 existence_lower = 0;     // a scattered subspace of this dimension exists (0: no divisor applies)
  bool existence_ambiguous = false;
  std::string corollary;       // nonempty when a listed even-t existence case applies
  u64 attained_lower = 0;      // best dimension certified to exist by any route
};

inline BoundSet dim_bounds(u32 r, u32 t, u64 q) {
  if (r == 0 || t == 0 || q < 2) throw std::invalid_argument("dim_bounds needs r, t >= 1 and q >= 2");
  BoundSet b;
  b.r = r;
  b.t = t;
  b.q = q;
  const u64 rt = u64(r) * t;
  if (t == 1) {
    // the trivial spread: every subspace is scattered, the whole space is the
    // unique maximal one
    b.lower_maximal = b.upper_general = b.upper_desarguesian = r;
    b.existence_lower = b.attained_lower = r;
    return b;
  }
  if (r == 1) {
    // one spread element fills the space; only points are scattered
    b.lower_maximal = b.upper_general = b.upper_desarguesian = 1;
    b.existence_lower = b.attained_lower = 1;
    return b;
  }
  b.lower_maximal = (rt - t + 1) / 2 + 1;
  b.upper_general = rt - t;
  b.upper_desarguesian = rt / 2;

  // divisor bound: for r' | r with gcd(r', t) = 1 a scattered subspace of
  // dimension r'k exists whenever r'k < (rt - t + r' + 3)/2, except that
  // for q = 2, r' = 1 the sharper k < (rt - t + 3)/2 applies
  u64 best_product = 0;
  u64 best_k = 0, best_k_product = 0;
  for (u32 rp = 1; rp <= r; ++rp) {
    if (r % rp != 0 || std::gcd<u64>(rp, t) != 1) continue;
    u64 k_max;
    if (q == 2 && rp == 1) {
      k_max = (rt - t + 3 - 1) / 2;
    } else {
      k_max = ((rt - t + rp + 3 - 1) / 2) / rp;
    }
    if (k_max == 0) continue;
    best_product = std::max(best_product, u64(rp) * k_max);
    if (k_max > best_k) {
      best_k = k_max;
      best_k_product = u64(rp) * k_max;
    }
  }
  b.existence_lower = best_product;
  b.existence_ambiguous = best_product != best_k_product;

  if (t % 2 == 0) {
    if (q == 2 && t >= 4)
      b.corollary = "q = 2 and t >= 4";
    else if (t % 3 != 0)
      b.corollary = "t not divisible by 3";
    else if (q % 3 == 1)
      b.corollary = "q = 1 mod 3 and t = 0 mod 3";
  }

  b.attained_lower = std::max<u64>(b.existence_lower, 1);
  if (r % 2 == 0) b.attained_lower = std::max(b.attained_lower, rt / 2);
  if (t == 2) b.attained_lower = std::max<u64>(b.attained_lower, r);
  if (!b.corollary.empty() && r >= 2) b.attained_lower = std::max(b.attained_lower, rt / 2);
  return b;
}

/* ---- weight profile ---- */

/* spread element (normalized point code) -> |E meet U minus 0|; absent = 0 */
inline std::map<u64, u64> point_multiplicities(const DesarguesianSpread& S, const Subspace& U,
                                               const Budget& budget = {}) {
  if (!(U.space() == S.reduction().base_space()))
    throw std::invalid_argument("subspace does not live in the spread's ambient space");
  budget.require(U.vector_count(), "weight profile");
  std::map<u64, u64> counts;
  U.for_each_vector([&](u64 v) {
    if (v) ++counts[S.classify(v).code];
  });
  return counts;
}

inline u32 weight_from_count(u64 count, u64 q, u32 t) {
  u64 x = count + 1;
  for (u32 w = 0; w <= t; ++w) {
    if (x == 1) return w;
    if (x % q != 0) break;
    x /= q;
  }
  throw invariant_error("weight_power", "intersection count is not q^w - 1");
}

enum class MaximumStatus { yes, no, unknown };

inline const char* to_string(MaximumStatus m) {
  switch (m) {
    case MaximumStatus::yes: return "yes";
    case MaximumStatus::no: return "no";
    default: return "unknown";
  }
}

struct ScatterReport {
  u32 r = 0, t = 0;
  u64 q = 0;
  u32 dim = 0;
  bool scattered = false;
  u64 elements_met = 0;
  u32 max_weight = 0;
  std::vector<u64> weight_histogram;  // index w: spread elements of weight w
  bool maximal = false;
  MaximumStatus maximum = MaximumStatus::unknown;
  BoundSet bounds;
};

/* ---- extension machinery ---- */

namespace detail {

/* U scattered with profile `counts`; true iff U + <v> is still scattered.
   v must be outside U and classify(v) must be unmet (weight 0). */
inline bool extension_stays_scattered(const DesarguesianSpread& S, const Subspace& U,
                                      const std::map<u64, u64>& counts, u64 v) {
  const auto& B = S.reduction().base_space();
  const u64 limit = S.q() - 1;
  std::map<u64, u64> touched;
  bool ok = true;
  for (u32 lam = 1; lam < S.q() && ok; ++lam) {
    const u64 lv = B.scal(lam, v);
    U.for_each_vector([&](u64 u) {
      if (!ok) return;
      const u64 e = S.classify(B.add(u, lv)).code;
      const auto it = counts.find(e);
      const u64 base = it == counts.end() ? 0 : it->second;
      if (base + ++touched[e] > limit) ok = false;
    });
  }
  return ok;
}

inline bool candidate_ok(const DesarguesianSpread& S, const Subspace& U, const std::map<u64, u64>& counts,
                         u64 v) {
  if (U.contains(v)) return false;
  // meeting an already met element would put two directions into it
  if (counts.count(S.classify(v).code)) return false;
  return extension_stays_scattered(S, U, counts, v);
}

}  // namespace detail

/* smallest vector code v with U + <v> scattered, or nothing if U is maximal */
inline std::optional<u64> extend_scattered(const DesarguesianSpread& S, const Subspace& U,
                                           const Budget& budget = {}, u32 threads = 1) {
  const auto& B = S.reduction().base_space();
  budget.require(B.size(), "extension scan");
  const auto counts = point_multiplicities(S, U, budget);
  for (const auto& [e, c] : counts)
    if (c > S.q() - 1) throw std::invalid_argument("extend_scattered needs a scattered input");

  constexpr u64 kNone = std::numeric_limits<u64>::max();
  if (threads <= 1) {
    for (u64 v = 1; v < B.size(); ++v)
      if (detail::candidate_ok(S, U, counts, v)) return v;
    return std::nullopt;
  }

  std::atomic<u64> best{kNone};
  auto worker = [&](u64 lo, u64 hi) {
    for (u64 v = lo; v < hi; ++v) {
      if (v >= best.load(std::memory_order_relaxed)) break;  // candidates ascend within a chunk
      if (!detail::candidate_ok(S, U, counts, v)) continue;
      u64 cur = best.load();
      while (v < cur && !best.compare_exchange_weak(cur, v)) {
      }
      break;
    }
  };
  std::vector<std::thread> pool;
  const u64 total = B.size() - 1;
  const u64 chunk = (total + threads - 1) / threads;
  for (u32 i = 0; i < threads; ++i) {
    const u64 lo = 1 + u64(i) * chunk;
    const u64 hi = std::min(B.size(), lo + chunk);
    if (lo < hi) pool.emplace_back(worker, lo, hi);
  }
  for (auto& th : pool) th.join();
  const u64 found = best.load();
  if (found == kNone) return std::nullopt;
  return found;
}

/* greedy first-fit completion to a maximal scattered subspace */
inline Subspace maximally_scatter(const DesarguesianSpread& S, Subspace U, const Budget& budget = {},
                                  u32 threads = 1) {
  while (auto v = extend_scattered(S, U, budget, threads)) U = U.extended(*v);
  return U;
}

/* ---- analysis ---- */

inline ScatterReport analyze(const DesarguesianSpread& S, const Subspace& U, const Budget& budget = {},
                             bool check_maximal = true, u32 threads = 1) {
  ScatterReport rep;
  rep.r = S.r();
  rep.t = S.t();
  rep.q = S.q();
  rep.dim = U.dim();
  rep.bounds = dim_bounds(rep.r, rep.t, rep.q);

  const auto counts = point_multiplicities(S, U, budget);
  rep.elements_met = counts.size();
  rep.weight_histogram.assign(S.t() + 1, 0);
  u64 vector_sum = 0;
  for (const auto& [e, c] : counts) {
    const u32 w = weight_from_count(c, S.q(), S.t());
    rep.max_weight = std::max(rep.max_weight, w);
    ++rep.weight_histogram[w];
    vector_sum += c;
  }
  rep.weight_histogram[0] = S.element_count() - rep.elements_met;
  if (vector_sum != U.vector_count() - 1)
    throw invariant_error("multiplicity_sum", "weights do not add up to the subspace size");
  rep.scattered = rep.max_weight <= 1;

  if (check_maximal && rep.scattered) {
    rep.maximal = !extend_scattered(S, U, budget, threads).has_value();
    // a maximal scattered subspace cannot sit below the general lower bound
    if (rep.maximal && S.t() >= 2 && rep.dim < rep.bounds.lower_maximal)
      throw invariant_error("maximal_lower_bound", "maximal scattered subspace below the lower bound");
  }

  if (!rep.scattered)
    rep.maximum = MaximumStatus::no;
  else if (rep.dim == rep.bounds.upper_desarguesian)
    rep.maximum = MaximumStatus::yes;
  else if (rep.dim < rep.bounds.attained_lower)
    rep.maximum = MaximumStatus::no;
  else
    rep.maximum = MaximumStatus::unknown;
  return rep;
}

/* ---- constructions ---- */

struct Construction {
  std::string method;
  Subspace U;
};

namespace detail {

/* top vector placing x at coordinate i and y at coordinate j */
inline u64 two_slot_top(const VectorSpace& T, u32 i, u32 j, u32 x, u32 y) {
  u64 v = 0;
  v += u64(x) * T.qpow(T.n() - 1 - i);
  v += u64(y) * T.qpow(T.n() - 1 - j);
  return v;
}

}  // namespace detail

/* builds a maximum scattered subspace (dimension rt/2) when a direct
   construction covers the parameters, and certifies the result */
inline Construction construct_max_scattered(const DesarguesianSpread& S, const Budget& budget = {}) {
  const FieldTower& tw = S.tower();
  const auto& T = S.reduction().top_space();
  const auto& phi = S.reduction();
  std::vector<u64> gens;
  std::string method;

  if (S.r() == 2) {
    // graph of the q-power map: pairs (x, x^q)
    method = "graph of the q-power map";
    for (u32 j = 0; j < S.t(); ++j) {
      const u32 b = tw.q_basis()[j];
      gens.push_back(phi.phi(detail::two_slot_top(T, 0, 1, b, tw.frobenius(b))));
    }
  } else if (S.t() == 2) {
    // subfield subspace: all coordinates in GF(q)
    method = "rational subspace";
    for (u32 i = 0; i < S.r(); ++i) gens.push_back(phi.phi(T.unit(i)));
  } else if (S.r() % 2 == 0) {
    // q-power graphs on disjoint coordinate pairs
    method = "direct sum of q-power graphs";
    for (u32 blk = 0; blk + 1 < S.r(); blk += 2)
      for (u32 j = 0; j < S.t(); ++j) {
        const u32 b = tw.q_basis()[j];
        gens.push_back(phi.phi(detail::two_slot_top(T, blk, blk + 1, b, tw.frobenius(b))));
      }
  } else {
    throw error("no direct construction for these parameters; use the randomized search");
  }

  Construction c{method, Subspace::span(phi.base_space(), gens)};
  const u64 want = u64(S.r()) * S.t() / 2;
  ScatterReport rep = analyze(S, c.U, budget, /*check_maximal=*/false);
  if (!rep.scattered || rep.dim != want)
    throw invariant_error("construction_certify", "construction failed certification");
  return c;
}

/* ---- exhaustive search (complete by downward closure) ---- */

struct ExhaustiveReport {
  u32 max_dim = 0;
  u64 count_at_max = 0;
  std::vector<u64> count_per_dim;  // index = dimension, starting at 0
  std::optional<Subspace> example;
};

/* level k+1 is generated from level k, so every scattered subspace is
   reached: each one contains scattered subspaces of every lower dimension */
inline ExhaustiveReport exhaustive_max_scattered(const DesarguesianSpread& S, const Budget& budget = {}) {
  const auto& B = S.reduction().base_space();
  const auto points = all_projective_points(B, budget);
  ExhaustiveReport rep;
  rep.count_per_dim.push_back(1);  // the zero subspace

  std::set<std::vector<u64>> level;
  for (u64 p : points) level.insert(Subspace::span(B, std::vector<u64>{p}).rows());
  u64 work = 0;
  u32 dim = 1;
  std::vector<u64> first_rows;
  while (!level.empty()) {
    rep.max_dim = dim;
    rep.count_at_max = level.size();
    rep.count_per_dim.push_back(level.size());
    first_rows = *level.begin();

    std::set<std::vector<u64>> next;
    for (const auto& rows : level) {
      Subspace U = Subspace::span(B, rows);
      const auto counts = point_multiplicities(S, U, budget);
      work += points.size() + U.vector_count();
      budget.require(work, "exhaustive scattered search");
      for (u64 v : points)
        if (detail::candidate_ok(S, U, counts, v)) next.insert(U.extended(v).rows());
    }
    level = std::move(next);
    ++dim;
  }
  if (!first_rows.empty()) rep.example = Subspace::span(B, first_rows);
  return rep;
}

/* ---- randomized search ---- */

struct SearchReport {
  bool found = false;
  u32 target = 0;
  u32 best_dim = 0;
  u64 seed = 0;
  u32 restarts_used = 0;
  std::optional<Subspace> best;
};

/* greedy completion along shuffled candidate orders; deterministic per seed */
inline SearchReport search_scattered(const DesarguesianSpread& S, u32 target_dim, u64 seed = 1,
                                     u32 restarts = 32, const Budget& budget = {}) {
  const auto& B = S.reduction().base_space();
  auto points = all_projective_points(B, budget);
  std::mt19937_64 rng(seed);
  SearchReport rep;
  rep.target = target_dim;
  rep.seed = seed;

  for (u32 round = 0; round < restarts; ++round) {
    rep.restarts_used = round + 1;
    std::shuffle(points.begin(), points.end(), rng);
    Subspace U(B);
    auto counts = point_multiplicities(S, U, budget);
    u64 work = 0;
    for (u64 v : points) {
      if (U.dim() >= target_dim) break;
      work += U.vector_count() * (S.q() - 1);
      budget.require(work, "randomized scattered search");
      if (detail::candidate_ok(S, U, counts, v)) {
        U = U.extended(v);
        counts = point_multiplicities(S, U, budget);
      }
    }
    if (U.dim() > rep.best_dim || !rep.best) {
      rep.best_dim = U.dim();
      rep.best = U;
    }
    if (rep.best_dim >= target_dim) {
      rep.found = true;
      break;
    }
  }
  return rep;
}

}  // namespace scattered
