#pragma once

// Linear algebra over a finite field with vectors packed as base-q digit
// codes in a u64.  Coordinate 0 occupies the most significant digit, so
// numeric order on codes equals lexicographic order on coordinate tuples
// (for GF(2) a code is literally the bit pattern of the vector).
//
// A Subspace is stored in reduced row echelon form with rows sorted by
// descending code; that basis is a canonical key, so subspace equality is
// plain vector equality.

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace scattered {

class VectorSpace {
 public:
  VectorSpace(FieldPtr F, u32 n) : F_(std::move(F)), n_(n) {
    if (!F_) throw std::invalid_argument("vector space needs a field");
    if (n_ == 0) throw std::invalid_argument("ambient dimension must be positive");
    pow_.resize(n_ + 1);
    pow_[0] = 1;
    for (u32 i = 1; i <= n_; ++i) {
      auto p = checked_pow(F_->size(), i);
      if (!p) throw std::invalid_argument("vector space larger than 2^64");
      pow_[i] = *p;
    }
  }

  const Field& field() const { return *F_; }
  FieldPtr field_ptr() const { return F_; }
  u32 n() const { return n_; }
  u32 q() const { return F_->size(); }
  u64 size() const { return pow_[n_]; }  // q^n
  u64 qpow(u32 i) const { return pow_[i]; }

  bool operator==(const VectorSpace& o) const { return F_.get() == o.F_.get() && n_ == o.n_; }

  u32 digit(u64 v, u32 i) const { return u32((v / pow_[n_ - 1 - i]) % q()); }

  u64 unit(u32 i) const { return pow_[n_ - 1 - i]; }

  u64 encode(std::span<const u32> coords) const {
    if (coords.size() != n_) throw std::invalid_argument("encode: wrong coordinate count");
    u64 v = 0;
    for (u32 i = 0; i < n_; ++i) {
      if (coords[i] >= q()) throw std::invalid_argument("encode: coordinate out of range");
      v = v * q() + coords[i];
    }
    return v;
  }

  std::vector<u32> decode(u64 v) const {
    std::vector<u32> c(n_);
    for (u32 i = n_; i-- > 0;) {
      c[i] = u32(v % q());
      v /= q();
    }
    return c;
  }

  u64 add(u64 a, u64 b) const {
    if (F_->characteristic() == 2) return a ^ b;  // digit boundaries are bit-aligned
    const u64 qq = q();
    u64 r = 0, m = 1;
    for (u32 i = 0; i < n_; ++i) {
      r += u64(F_->add(u32(a % qq), u32(b % qq))) * m;
      a /= qq;
      b /= qq;
      m *= qq;
    }
    return r;
  }

  u64 neg(u64 a) const {
    if (F_->characteristic() == 2) return a;
    const u64 qq = q();
    u64 r = 0, m = 1;
    for (u32 i = 0; i < n_; ++i) {
      r += u64(F_->neg(u32(a % qq))) * m;
      a /= qq;
      m *= qq;
    }
    return r;
  }

  u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }

  u64 scal(u32 c, u64 a) const {
    if (c == 0) return 0;
    if (c == 1) return a;
    const u64 qq = q();
    u64 r = 0, m = 1;
    for (u32 i = 0; i < n_; ++i) {
      r += u64(F_->mul(c, u32(a % qq))) * m;
      a /= qq;
      m *= qq;
    }
    return r;
  }

  u32 dot(u64 a, u64 b) const {
    const u64 qq = q();
    u32 s = 0;
    for (u32 i = 0; i < n_; ++i) {
      s = F_->add(s, F_->mul(u32(a % qq), u32(b % qq)));
      a /= qq;
      b /= qq;
    }
    return s;
  }

  /* index of the leftmost nonzero coordinate; v must be nonzero */
  u32 leading_index(u64 v) const {
    if (v == 0) throw std::invalid_argument("leading_index of zero vector");
    if (q() == 2) return n_ - u32(std::bit_width(v));
    // first i with v >= q^(n-1-i) is the leading digit position
    for (u32 i = 0;; ++i)
      if (v >= pow_[n_ - 1 - i]) return i;
  }

 private:
  FieldPtr F_;
  u32 n_;
  std::vector<u64> pow_;
};

class Subspace {
 public:
  explicit Subspace(VectorSpace V) : V_(std::move(V)) {}

  static Subspace span(VectorSpace V, std::span<const u64> gens) {
    Subspace S(std::move(V));
    for (u64 g : gens) S.insert(g);
    return S;
  }

  const VectorSpace& space() const { return V_; }
  u32 n() const { return V_.n(); }
  u32 dim() const { return u32(rows_.size()); }
  const std::vector<u64>& rows() const { return rows_; }
  u64 vector_count() const { return V_.qpow(dim()); }

  bool operator==(const Subspace& o) const { return V_ == o.V_ && rows_ == o.rows_; }

  /* canonical residue of v modulo the row space (zero iff v is contained) */
  u64 reduce(u64 v) const {
    for (size_t k = 0; k < rows_.size() && v != 0; ++k) {
      const u32 d = V_.digit(v, lead_[k]);
      if (d) v = V_.sub(v, V_.scal(d, rows_[k]));
    }
    return v;
  }

  bool contains(u64 v) const { return reduce(v) == 0; }

  bool contains_subspace(const Subspace& o) const {
    for (u64 r : o.rows_)
      if (!contains(r)) return false;
    return true;
  }

  Subspace extended(u64 v) const {
    Subspace S = *this;
    S.insert(v);
    return S;
  }

  Subspace sum(const Subspace& o) const {
    require_same_space(o);
    Subspace S = *this;
    for (u64 r : o.rows_) S.insert(r);
    return S;
  }

  /* Zassenhaus: row-reduce [a|a] and [b|0]; rows with zero left half give
     right halves spanning the intersection */
  Subspace intersect(const Subspace& o) const {
    require_same_space(o);
    VectorSpace W(V_.field_ptr(), 2 * V_.n());
    const u64 shift = V_.size();
    std::vector<u64> gens;
    gens.reserve(rows_.size() + o.rows_.size());
    for (u64 a : rows_) gens.push_back(a * shift + a);
    for (u64 b : o.rows_) gens.push_back(b * shift);
    const Subspace Z = Subspace::span(std::move(W), gens);
    Subspace R(V_);
    for (u64 r : Z.rows())
      if (r < shift) R.insert(r);
    return R;
  }

  /* all q^dim vectors in ascending (lexicographic) order, zero included */
  template <class Fn>
  void for_each_vector(Fn&& fn) const {
    const u32 k = dim();
    const u32 qq = V_.q();
    if (k == 0) {
      fn(u64(0));
      return;
    }
    std::vector<u32> dig(k, 0);
    std::vector<u64> pref(k + 1, 0);
    for (;;) {
      fn(pref[k]);
      int pos = int(k) - 1;
      while (pos >= 0 && dig[size_t(pos)] == qq - 1) dig[size_t(pos--)] = 0;
      if (pos < 0) break;
      ++dig[size_t(pos)];
      for (u32 j = u32(pos); j < k; ++j)
        pref[j + 1] = V_.add(pref[j], V_.scal(dig[j], rows_[j]));
    }
  }

  std::vector<u64> vectors() const {
    std::vector<u64> out;
    out.reserve(size_t(vector_count()));
    for_each_vector([&](u64 v) { out.push_back(v); });
    return out;
  }

  /* normalized representatives of the 1-spaces inside, ascending */
  std::vector<u64> projective_points() const {
    std::vector<u64> out;
    out.reserve(size_t(theta(static_cast<long long>(dim()) - 1, V_.q())));
    for_each_vector([&](u64 v) {
      if (v != 0 && V_.digit(v, V_.leading_index(v)) == 1) out.push_back(v);
    });
    return out;
  }

 private:
  VectorSpace V_;
  std::vector<u64> rows_;
  std::vector<u32> lead_;

  void require_same_space(const Subspace& o) const {
    if (!(V_ == o.V_)) throw std::invalid_argument("subspaces from different ambient spaces");
  }

  void insert(u64 v) {
    v = reduce(v);
    if (v == 0) return;
    const u32 li = V_.leading_index(v);
    const u32 c = V_.digit(v, li);
    if (c != 1) v = V_.scal(V_.field().inv(c), v);
    for (size_t k = 0; k < rows_.size(); ++k) {
      const u32 d = V_.digit(rows_[k], li);
      if (d) rows_[k] = V_.sub(rows_[k], V_.scal(d, v));
    }
    // descending row codes == ascending pivot indices
    const auto it = std::lower_bound(rows_.begin(), rows_.end(), v, std::greater<u64>());
    const size_t pos = size_t(it - rows_.begin());
    rows_.insert(it, v);
    lead_.insert(lead_.begin() + long(pos), li);
  }
};

/* ---- counting ---- */

inline u64 gaussian_binomial(u32 n, u32 k, u64 q) {
  if (k > n) return 0;
  u64 result = 1;
  for (u32 i = 1; i <= k; ++i) {
    const u64 num = pow_u64(q, n - k + i, "gaussian binomial") - 1;
    const u64 den = pow_u64(q, i, "gaussian binomial") - 1;
    const unsigned __int128 wide = static_cast<unsigned __int128>(result) * num;
    if (wide / num != result) throw error("gaussian binomial: 128-bit overflow");
    const unsigned __int128 exact = wide / den;
    if (exact > std::numeric_limits<u64>::max()) throw error("gaussian binomial: 64-bit overflow");
    result = u64(exact);
  }
  return result;
}

/* ---- enumeration ---- */

/* normalized representatives of all points of PG(n-1, q), ascending */
inline std::vector<u64> all_projective_points(const VectorSpace& V, const Budget& budget = {}) {
  const u64 count = theta(static_cast<long long>(V.n()) - 1, V.q());
  budget.require(count, "projective point enumeration");
  std::vector<u64> out;
  out.reserve(size_t(count));
  for (u64 v = 1; v < V.size(); ++v)
    if (V.digit(v, V.leading_index(v)) == 1) out.push_back(v);
  if (out.size() != count) throw invariant_error("point_count", "PG point count mismatch");
  return out;
}

/* all k-dimensional subspaces of V, emitted once each in a fixed order:
   pivot-column sets ascend lexicographically, free entries run an odometer */
class SubspaceStream {
 public:
  SubspaceStream(VectorSpace V, u32 k, const Budget& budget = {})
      : V_(std::move(V)), k_(k), total_(gaussian_binomial(V_.n(), k, V_.q())) {
    budget.require(total_, "subspace enumeration");
    if (k_ > 0) {
      pivots_.resize(k_);
      for (u32 i = 0; i < k_; ++i) pivots_[i] = i;
      rebuild_free_slots();
    }
  }

  u64 total() const { return total_; }

  std::optional<Subspace> next() {
    if (done_) return std::nullopt;
    if (k_ == 0) {
      done_ = true;
      return Subspace(V_);
    }
    Subspace S = emit();
    if (!advance_values() && !advance_pivots()) done_ = true;
    return S;
  }

 private:
  VectorSpace V_;
  u32 k_;
  u64 total_;
  std::vector<u32> pivots_;
  std::vector<std::pair<u32, u32>> free_slots_;  // (row, column), row-major
  std::vector<u32> values_;
  bool done_ = false;

  void rebuild_free_slots() {
    free_slots_.clear();
    for (u32 i = 0; i < k_; ++i)
      for (u32 c = pivots_[i] + 1; c < V_.n(); ++c)
        if (!std::binary_search(pivots_.begin(), pivots_.end(), c)) free_slots_.emplace_back(i, c);
    values_.assign(free_slots_.size(), 0);
  }

  Subspace emit() const {
    std::vector<u64> rows(k_, 0);
    for (u32 i = 0; i < k_; ++i) rows[i] = V_.unit(pivots_[i]);
    for (size_t s = 0; s < free_slots_.size(); ++s) {
      const auto [i, c] = free_slots_[s];
      rows[i] = V_.add(rows[i], V_.scal(values_[s], V_.unit(c)));
    }
    return Subspace::span(V_, rows);
  }

  bool advance_values() {
    const u32 qq = V_.q();
    for (size_t s = values_.size(); s-- > 0;) {
      if (values_[s] + 1 < qq) {
        ++values_[s];
        return true;
      }
      values_[s] = 0;
    }
    return false;
  }

  bool advance_pivots() {
    // next k-combination of {0..n-1} in lexicographic order
    const u32 n = V_.n();
    int i = int(k_) - 1;
    while (i >= 0 && pivots_[size_t(i)] == n - k_ + u32(i)) --i;
    if (i < 0) return false;
    ++pivots_[size_t(i)];
    for (u32 j = u32(i) + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
    rebuild_free_slots();
    return true;
  }
};

/* ---- matrices as row-code lists ---- */

inline u32 matrix_rank(const VectorSpace& V, std::span<const u64> rows) {
  return Subspace::span(V, rows).dim();
}

/* right kernel {v : M v = 0} of the matrix whose rows live in V */
inline Subspace kernel(const VectorSpace& V, std::span<const u64> rows) {
  const Subspace S = Subspace::span(V, rows);
  std::vector<bool> is_pivot(V.n(), false);
  std::vector<u32> leads;
  for (u64 r : S.rows()) {
    leads.push_back(V.leading_index(r));
    is_pivot[leads.back()] = true;
  }
  std::vector<u64> basis;
  for (u32 f = 0; f < V.n(); ++f) {
    if (is_pivot[f]) continue;
    u64 v = V.unit(f);
    for (size_t k = 0; k < S.rows().size(); ++k) {
      const u32 c = V.digit(S.rows()[k], f);
      if (c) v = V.add(v, V.scal(V.field().neg(c), V.unit(leads[k])));
    }
    basis.push_back(v);
  }
  return Subspace::span(V, basis);
}

/* ---- projective points ---- */

struct ProjectivePoint {
  const Field* F = nullptr;
  u32 n = 0;
  u64 code = 0;  // normalized: leading coordinate is 1

  static ProjectivePoint of(const VectorSpace& V, u64 v) {
    if (v == 0) throw std::invalid_argument("projective point of zero vector");
    const u32 li = V.leading_index(v);
    const u32 c = V.digit(v, li);
    if (c != 1) v = V.scal(V.field().inv(c), v);
    return {&V.field(), V.n(), v};
  }

  bool operator==(const ProjectivePoint& o) const = default;
  bool operator<(const ProjectivePoint& o) const { return code < o.code; }
};

}  // namespace scattered
