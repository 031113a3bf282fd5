#pragma once

// Field reduction GF(q^t)^r -> GF(q)^(rt) and the Desarguesian spread it
// induces: the images of the one-dimensional GF(q^t)-subspaces partition
// the nonzero vectors of GF(q)^(rt) into (q^(rt)-1)/(q^t-1) pieces of
// dimension t.

#include <memory>

#include "linalg.hpp"

namespace scattered {

class FieldReduction {
 public:
  explicit FieldReduction(TowerPtr tower, u32 r)
      : tw_(std::move(tower)),
        r_(r),
        top_space_(tw_->top_ptr(), r),
        base_space_(tw_->base_ptr(), r * tw_->t()) {
    if (r_ == 0) throw std::invalid_argument("field reduction needs r >= 1");
    // per-coordinate chunk tables: top code <-> t base-q digits, MSB first
    const u64 Q = tw_->top_size();
    const u32 t = tw_->t();
    auto chunk_of_top = std::make_shared<std::vector<u64>>(Q);
    auto top_of_chunk = std::make_shared<std::vector<u32>>(Q);
    for (u64 x = 0; x < Q; ++x) {
      const auto c = tw_->coords(u32(x));
      u64 chunk = 0;
      for (u32 i = 0; i < t; ++i) chunk = chunk * tw_->q() + c[i];
      (*chunk_of_top)[x] = chunk;
      (*top_of_chunk)[chunk] = u32(x);
    }
    chunk_of_top_ = std::move(chunk_of_top);
    top_of_chunk_ = std::move(top_of_chunk);
  }

  const FieldTower& tower() const { return *tw_; }
  TowerPtr tower_ptr() const { return tw_; }
  u32 r() const { return r_; }
  u32 t() const { return tw_->t(); }
  u64 q() const { return tw_->q(); }
  const VectorSpace& top_space() const { return top_space_; }
  const VectorSpace& base_space() const { return base_space_; }

  /* phi: vector over GF(q^t) -> vector over GF(q), coordinatewise */
  u64 phi(u64 top_vec) const {
    const u64 Q = tw_->top_size();
    u64 out = 0;
    for (u32 i = 0; i < r_; ++i) {
      const u64 x = (top_vec / top_space_.qpow(r_ - 1 - i)) % Q;
      out = out * base_space_.qpow(tw_->t()) + (*chunk_of_top_)[x];
    }
    return out;
  }

  u64 phi_inv(u64 base_vec) const {
    const u64 block = base_space_.qpow(tw_->t());
    u64 out = 0;
    for (u32 i = 0; i < r_; ++i) {
      const u64 chunk = (base_vec / base_space_.qpow((r_ - 1 - i) * tw_->t())) % block;
      out = out * tw_->top_size() + (*top_of_chunk_)[chunk];
    }
    return out;
  }

 private:
  TowerPtr tw_;
  u32 r_;
  VectorSpace top_space_;
  VectorSpace base_space_;
  std::shared_ptr<const std::vector<u64>> chunk_of_top_;
  std::shared_ptr<const std::vector<u32>> top_of_chunk_;
};

class DesarguesianSpread {
 public:
  explicit DesarguesianSpread(FieldReduction phi) : phi_(std::move(phi)) {}

  const FieldReduction& reduction() const { return phi_; }
  const FieldTower& tower() const { return phi_.tower(); }
  u32 r() const { return phi_.r(); }
  u32 t() const { return phi_.t(); }
  u64 q() const { return phi_.q(); }

  u64 element_count() const { return theta(static_cast<long long>(r()) - 1, phi_.tower().top_size()); }

  /* the spread element through nonzero v, named by a point of PG(r-1, q^t) */
  ProjectivePoint classify(u64 base_vec) const {
    return ProjectivePoint::of(phi_.top_space(), phi_.phi_inv(base_vec));
  }

  /* the t-dimensional GF(q)-subspace phi(<w>) for a top point w */
  Subspace element(const ProjectivePoint& pt) const {
    const auto& T = phi_.top_space();
    std::vector<u64> gens;
    gens.reserve(t());
    // scale w by the q-basis of GF(q^t); any GF(q)-basis of the line works
    for (u32 j = 0; j < t(); ++j) {
      const u32 b = phi_.tower().q_basis()[j];
      u64 scaled = 0;
      for (u32 i = 0; i < r(); ++i) {
        const u32 x = u32((pt.code / T.qpow(r() - 1 - i)) % phi_.tower().top_size());
        scaled = scaled * phi_.tower().top_size() + phi_.tower().top().mul(b, x);
      }
      gens.push_back(phi_.phi(scaled));
    }
    Subspace S = Subspace::span(phi_.base_space(), gens);
    if (S.dim() != t()) throw invariant_error("spread_element_dim", "spread element has wrong dimension");
    return S;
  }

  std::vector<Subspace> elements(const Budget& budget = {}) const {
    auto pts = all_projective_points(phi_.top_space(), budget);
    std::vector<Subspace> out;
    out.reserve(pts.size());
    for (u64 p : pts) out.push_back(element(ProjectivePoint::of(phi_.top_space(), p)));
    return out;
  }

  /* every nonzero vector lies in the element classify names, and the
     element count matches theta_{r-1}(q^t) */
  bool verify_partition(const Budget& budget = {}) const {
    const auto& B = phi_.base_space();
    budget.require(B.size(), "spread partition check");
    std::vector<u64> hits(size_t(element_count()), 0);
    auto pts = all_projective_points(phi_.top_space(), budget);
    for (u64 v = 1; v < B.size(); ++v) {
      const ProjectivePoint pt = classify(v);
      const auto it = std::lower_bound(pts.begin(), pts.end(), pt.code);
      if (it == pts.end() || *it != pt.code) return false;
      ++hits[size_t(it - pts.begin())];
    }
    const u64 per = phi_.tower().top_size() - 1;
    for (u64 h : hits)
      if (h != per) return false;
    // membership: v really lies in the subspace named by classify(v)
    for (u64 v = 1; v < B.size(); ++v)
      if (!element(classify(v)).contains(v)) return false;
    return true;
  }

 private:
  FieldReduction phi_;
};

inline DesarguesianSpread make_spread(u32 r, u32 t, u64 q, const Budget& = {}) {
  auto [p, e] = factor_prime_power(q);
  return DesarguesianSpread(FieldReduction(make_tower(u32(p), u32(e), t), r));
}

/* independent presentation for r = 2: pairs (M^k u applied by the companion
   matrix of the top modulus); kept only as a cross-check of phi */
inline Subspace spread_element_companion(const FieldReduction& phi, u64 u_top, u64 v_top) {
  if (phi.r() != 2) throw std::invalid_argument("companion presentation is a 2-dim check");
  const FieldTower& tw = phi.tower();
  const u32 t = tw.t();
  const VectorSpace half(tw.base_ptr(), t);
  const auto& irr = tw.top_irreducible();

  // companion action on coordinate columns: x * (c_0..c_{t-1})
  auto companion = [&](std::vector<u32> c) {
    std::vector<u32> out(t, 0);
    const u32 top_coeff = c[t - 1];
    for (u32 i = t; i-- > 1;) out[i] = c[i - 1];
    if (top_coeff) {
      const Field& B = tw.base();
      for (u32 i = 0; i < t; ++i) out[i] = B.sub(out[i], B.mul(top_coeff, irr[i]));
    }
    return out;
  };

  auto coords_u = tw.coords(u32(u_top));
  auto coords_v = tw.coords(u32(v_top));
  std::vector<u64> gens;
  for (u32 k = 0; k < t; ++k) {
    u64 row = half.encode(coords_u) * half.size() + half.encode(coords_v);
    gens.push_back(row);
    coords_u = companion(coords_u);
    coords_v = companion(coords_v);
  }
  return Subspace::span(VectorSpace(tw.base_ptr(), 2 * t), gens);
}

}  // namespace scattered
