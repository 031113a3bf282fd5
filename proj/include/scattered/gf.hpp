#pragma once

// Exact arithmetic for the tower GF(p) <= GF(q) <= GF(q^t), q = p^e.
//
// Every element is an integer code.  An extension element is the vector of
// its coordinates over the immediate subfield, packed base-|subfield| with
// the coefficient of x^j in digit j.  Fields of at most kFieldTableLimit
// elements carry full add/mul/inv tables; larger fields multiply by
// polynomial reduction mod the stored monic irreducible.

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "common.hpp"

namespace scattered {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr u32 kFieldTableLimit = 1024;
inline constexpr u64 kFieldSizeLimit = u64(1) << 16;

class Field {
 public:
  static FieldPtr prime(u32 p);
  static FieldPtr extension(FieldPtr sub, std::vector<u32> irr);

  u32 size() const { return q_; }
  u32 characteristic() const { return p_; }
  u32 degree() const { return deg_; }  // over the immediate subfield
  u32 degree_over_prime() const { return deg_prime_; }
  const Field* subfield() const { return sub_.get(); }       // nullptr for prime fields
  const std::vector<u32>& modulus() const { return irr_; }   // empty for prime fields

  u32 add(u32 a, u32 b) const {
    if (tabled_) return add_[u64(a) * q_ + b];
    return add_slow(a, b);
  }

  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

  u32 neg(u32 a) const {
    if (p_ == 2) return a;
    if (tabled_) return neg_[a];
    return neg_slow(a);
  }

  u32 mul(u32 a, u32 b) const {
    if (tabled_) return mul_[u64(a) * q_ + b];
    return mul_slow(a, b);
  }

  u32 inv(u32 a) const {
    if (a == 0) throw std::invalid_argument("field inverse of zero");
    if (tabled_) return inv_[a];
    return pow(a, q_ - 2);
  }

  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

  u32 pow(u32 a, u64 e) const {
    if (a == 0) return e == 0 ? 1u : 0u;
    if (q_ > 2 && e >= q_ - 1) e %= q_ - 1;  // a^{q-1} = 1 for a != 0
    u32 acc = 1, b = a;
    while (e) {
      if (e & 1) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1;
    }
    return acc;
  }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field() = default;

  u32 q_ = 0;
  u32 p_ = 0;
  u32 deg_ = 1;        // degree over sub_ (1 for prime fields)
  u32 deg_prime_ = 1;  // degree over GF(p)
  FieldPtr sub_;
  std::vector<u32> irr_;  // monic, low degree first, length deg_ + 1
  bool tabled_ = false;
  std::vector<u16> add_, mul_, inv_, neg_;

  void to_digits(u32 x, u32* out) const {
    const u32 s = sub_->size();
    for (u32 j = 0; j < deg_; ++j) {
      out[j] = x % s;
      x /= s;
    }
  }

  u32 from_digits(const u32* d) const {
    const u32 s = sub_->size();
    u32 x = 0;
    for (u32 j = deg_; j-- > 0;) x = x * s + d[j];
    return x;
  }

  u32 add_slow(u32 a, u32 b) const {
    if (p_ == 2) return a ^ b;  // char 2: digit boundaries are bit boundaries
    if (!sub_) return (a + b) % p_;
    u32 da[32], db[32];
    to_digits(a, da);
    to_digits(b, db);
    for (u32 j = 0; j < deg_; ++j) da[j] = sub_->add(da[j], db[j]);
    return from_digits(da);
  }

  u32 neg_slow(u32 a) const {
    if (!sub_) return a == 0 ? 0u : p_ - a;
    u32 d[32];
    to_digits(a, d);
    for (u32 j = 0; j < deg_; ++j) d[j] = sub_->neg(d[j]);
    return from_digits(d);
  }

  u32 mul_slow(u32 a, u32 b) const {
    if (!sub_) return u32((u64(a) * b) % p_);
    u32 da[32], db[32], prod[64] = {0};
    to_digits(a, da);
    to_digits(b, db);
    for (u32 i = 0; i < deg_; ++i) {
      if (da[i] == 0) continue;
      for (u32 j = 0; j < deg_; ++j)
        prod[i + j] = sub_->add(prod[i + j], sub_->mul(da[i], db[j]));
    }
    // reduce: x^k = -sum_j irr_[j] x^{k-deg+j} for k >= deg (irr_ is monic)
    for (u32 k = 2 * deg_ - 2; k + 1 > deg_; --k) {
      const u32 c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (u32 j = 0; j < deg_; ++j)
        prod[k - deg_ + j] = sub_->sub(prod[k - deg_ + j], sub_->mul(c, irr_[j]));
    }
    return from_digits(prod);
  }

  void build_tables() {
    if (q_ > kFieldTableLimit) return;
    add_.resize(u64(q_) * q_);
    mul_.resize(u64(q_) * q_);
    neg_.resize(q_);
    inv_.resize(q_);
    for (u32 a = 0; a < q_; ++a) {
      neg_[a] = u16(neg_slow(a));
      for (u32 b = 0; b < q_; ++b) {
        add_[u64(a) * q_ + b] = u16(add_slow(a, b));
        mul_[u64(a) * q_ + b] = u16(mul_slow(a, b));
      }
    }
    inv_[0] = 0;
    for (u32 a = 1; a < q_; ++a) {
      for (u32 b = 1; b < q_; ++b)
        if (mul_[u64(a) * q_ + b] == 1) {
          inv_[a] = u16(b);
          break;
        }
    }
    tabled_ = true;
  }
};

/* ---- dense polynomials over a Field: coefficient codes, low degree first ---- */

inline int poly_deg(const std::vector<u32>& f) {
  int d = int(f.size()) - 1;
  while (d >= 0 && f[size_t(d)] == 0) --d;
  return d;
}

inline std::vector<u32> poly_trim(std::vector<u32> f) {
  f.resize(size_t(poly_deg(f) + 1));
  return f;
}

inline std::vector<u32> poly_mul(const Field& F, const std::vector<u32>& a,
                                 const std::vector<u32>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u32> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return poly_trim(std::move(c));
}

/* remainder of a mod m; m must be monic of degree >= 1 */
inline std::vector<u32> poly_mod(const Field& F, std::vector<u32> a,
                                 const std::vector<u32>& m) {
  const int dm = poly_deg(m);
  if (dm < 1 || m[size_t(dm)] != 1) throw std::invalid_argument("poly_mod: modulus not monic");
  int da = poly_deg(a);
  while (da >= dm) {
    const u32 c = a[size_t(da)];
    if (c != 0) {
      for (int j = 0; j < dm; ++j) {
        auto& slot = a[size_t(da - dm + j)];
        slot = F.sub(slot, F.mul(c, m[size_t(j)]));
      }
      a[size_t(da)] = 0;
    }
    --da;
  }
  a.resize(size_t(dm));
  return poly_trim(std::move(a));
}

/* trial division by every monic polynomial of degree 1..deg/2 */
inline bool poly_is_irreducible(const Field& F, const std::vector<u32>& f) {
  const int d = poly_deg(f);
  if (d <= 0) return false;
  if (f[size_t(d)] != 1) throw std::invalid_argument("irreducibility: polynomial not monic");
  if (d == 1) return true;
  const u32 q = F.size();
  for (u32 dd = 1; dd <= u32(d) / 2; ++dd) {
    const u64 count = pow_u64(q, dd, "irreducibility scan");
    std::vector<u32> div(dd + 1, 0);
    div[dd] = 1;
    for (u64 n = 0; n < count; ++n) {
      u64 m = n;
      for (u32 j = 0; j < dd; ++j) {
        div[j] = u32(m % q);
        m /= q;
      }
      if (poly_deg(poly_mod(F, f, div)) < 0) return false;
    }
  }
  return true;
}

/* smallest monic irreducible of the given degree, ordered lexicographically
   by the coefficient tuple (c_0, c_1, ..., c_{d-1}) */
inline std::vector<u32> smallest_irreducible(const Field& F, u32 deg) {
  if (deg == 0) throw std::invalid_argument("smallest_irreducible: degree must be positive");
  const u32 q = F.size();
  const u64 count = pow_u64(q, deg, "irreducible search");
  std::vector<u32> f(deg + 1, 0);
  f[deg] = 1;
  for (u64 n = 0; n < count; ++n) {
    u64 m = n;
    for (u32 i = deg; i-- > 0;) {  // digit order: c_0 most significant
      f[i] = u32(m % q);
      m /= q;
    }
    if (poly_is_irreducible(F, f)) return f;
  }
  throw invariant_error("irreducible_exists", "no irreducible of requested degree found");
}

inline FieldPtr Field::prime(u32 p) {
  if (p < 2) throw std::invalid_argument("characteristic must be at least 2");
  for (u32 d = 2; u64(d) * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("characteristic is not prime");
  if (p > kFieldSizeLimit) throw std::invalid_argument("field size exceeds 2^16");
  auto F = std::shared_ptr<Field>(new Field());
  F->q_ = p;
  F->p_ = p;
  F->build_tables();
  return F;
}

inline FieldPtr Field::extension(FieldPtr sub, std::vector<u32> irr) {
  if (!sub) throw std::invalid_argument("extension: null subfield");
  irr = poly_trim(std::move(irr));
  const int d = poly_deg(irr);
  if (d < 1) throw std::invalid_argument("extension: modulus must have degree >= 1");
  if (irr[size_t(d)] != 1) throw std::invalid_argument("extension: modulus must be monic");
  for (u32 c : irr)
    if (c >= sub->size()) throw std::invalid_argument("extension: modulus coefficient out of range");
  if (!poly_is_irreducible(*sub, irr))
    throw std::invalid_argument("extension: modulus is reducible");
  const auto size = checked_pow(sub->size(), u64(d));
  if (!size || *size > kFieldSizeLimit) throw std::invalid_argument("field size exceeds 2^16");
  auto F = std::shared_ptr<Field>(new Field());
  F->q_ = u32(*size);
  F->p_ = sub->characteristic();
  F->deg_ = u32(d);
  F->deg_prime_ = u32(d) * sub->degree_over_prime();
  F->sub_ = std::move(sub);
  F->irr_ = std::move(irr);
  F->build_tables();
  return F;
}

/* ---- the tower GF(q) <= GF(q^t) ---- */

class FieldElement;

class FieldTower {
 public:
  FieldTower(u32 p, u32 e, u32 t,
             std::optional<std::vector<u32>> top_irr = std::nullopt,
             std::optional<std::vector<u32>> q_basis = std::nullopt)
      : p_(p), e_(e), t_(t) {
    if (e < 1 || t < 1) throw std::invalid_argument("tower degrees must be positive");
    prime_ = Field::prime(p);
    if (e == 1) {
      base_ = prime_;
      base_irr_ = {0, 1};
    } else {
      base_irr_ = smallest_irreducible(*prime_, e);
      base_ = Field::extension(prime_, base_irr_);
    }
    top_irr_ = top_irr ? poly_trim(std::move(*top_irr)) : smallest_irreducible(*base_, t);
    if (poly_deg(top_irr_) != int(t))
      throw std::invalid_argument("top modulus degree does not match t");
    top_ = Field::extension(base_, top_irr_);

    const u32 q = base_->size();
    if (q_basis) {
      qbasis_ = std::move(*q_basis);
      if (qbasis_.size() != t) throw std::invalid_argument("q_basis must have t elements");
      for (u32 b : qbasis_)
        if (b >= top_->size()) throw std::invalid_argument("q_basis element out of range");
    } else {
      qbasis_.resize(t);
      u64 pw = 1;
      for (u32 j = 0; j < t; ++j) {
        qbasis_[j] = u32(pw);  // power basis: 1, x, ..., x^{t-1}
        pw *= q;
      }
    }
    // cob_ = B^{-1} where column j of B holds the power coordinates of qbasis_[j]
    std::vector<u32> B(size_t(t) * t);
    for (u32 j = 0; j < t; ++j) {
      u32 x = qbasis_[j];
      for (u32 i = 0; i < t; ++i) {
        B[size_t(i) * t + j] = x % q;
        x /= q;
      }
    }
    auto inv = invert_matrix(B, t);
    if (!inv) throw std::invalid_argument("q_basis is linearly dependent");
    cob_ = std::move(*inv);
  }

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  u32 p() const { return p_; }
  u32 e() const { return e_; }
  u32 t() const { return t_; }
  u32 q() const { return base_->size(); }
  u32 top_size() const { return top_->size(); }

  const Field& base() const { return *base_; }
  const Field& top() const { return *top_; }
  FieldPtr base_ptr() const { return base_; }
  FieldPtr top_ptr() const { return top_; }

  const std::vector<u32>& base_irreducible() const { return base_irr_; }  // over GF(p)
  const std::vector<u32>& top_irreducible() const { return top_irr_; }    // over GF(q)
  const std::vector<u32>& q_basis() const { return qbasis_; }

  /* x -> x^{q^i} */
  u32 frobenius(u32 x, u32 i = 1) const {
    i %= t_;
    return top_->pow(x, pow_u64(q(), i, "frobenius"));
  }

  /* sum of the Frobenius orbit; lands in GF(q) */
  u32 trace(u32 x) const {
    u32 s = 0;
    for (u32 i = 0; i < t_; ++i) s = top_->add(s, frobenius(x, i));
    if (s >= q()) throw invariant_error("trace_in_base", "trace left the base field");
    return s;
  }

  /* x^{(q^t-1)/(q-1)}; lands in GF(q) */
  u32 norm(u32 x) const {
    const u64 ex = (pow_u64(q(), t_, "norm") - 1) / (q() - 1);
    const u32 v = top_->pow(x, ex);
    if (v >= q()) throw invariant_error("norm_in_base", "norm left the base field");
    return v;
  }

  /* coordinates of x with respect to q_basis (length t, base-field codes) */
  std::vector<u32> coords(u32 x) const {
    const u32 q0 = q();
    std::vector<u32> d(t_), c(t_, 0);
    for (u32 i = 0; i < t_; ++i) {
      d[i] = x % q0;
      x /= q0;
    }
    for (u32 i = 0; i < t_; ++i)
      for (u32 j = 0; j < t_; ++j)
        c[i] = base_->add(c[i], base_->mul(cob_[size_t(i) * t_ + j], d[j]));
    return c;
  }

  u32 uncoords(std::span<const u32> c) const {
    if (c.size() != t_) throw std::invalid_argument("uncoords: wrong coordinate count");
    u32 x = 0;
    for (u32 j = 0; j < t_; ++j) x = top_->add(x, top_->mul(embed(c[j]), qbasis_[j]));
    return x;
  }

  /* GF(q) sits inside GF(q^t) as the constant polynomials */
  u32 embed(u32 base_code) const {
    if (base_code >= q()) throw std::invalid_argument("embed: not a base-field code");
    return base_code;
  }
  bool in_base(u32 top_code) const { return top_code < q(); }

  FieldElement element(u32 top_code) const;       // defined after FieldElement
  FieldElement base_element(u32 base_code) const;

 private:
  u32 p_, e_, t_;
  FieldPtr prime_, base_, top_;
  std::vector<u32> base_irr_, top_irr_;
  std::vector<u32> qbasis_;
  std::vector<u32> cob_;  // t x t row-major over the base field

  /* Gauss-Jordan over the base field; nullopt if singular */
  std::optional<std::vector<u32>> invert_matrix(std::vector<u32> m, u32 n) const {
    std::vector<u32> inv(size_t(n) * n, 0);
    for (u32 i = 0; i < n; ++i) inv[size_t(i) * n + i] = 1;
    for (u32 col = 0; col < n; ++col) {
      u32 piv = col;
      while (piv < n && m[size_t(piv) * n + col] == 0) ++piv;
      if (piv == n) return std::nullopt;
      if (piv != col)
        for (u32 j = 0; j < n; ++j) {
          std::swap(m[size_t(piv) * n + j], m[size_t(col) * n + j]);
          std::swap(inv[size_t(piv) * n + j], inv[size_t(col) * n + j]);
        }
      const u32 s = base_->inv(m[size_t(col) * n + col]);
      for (u32 j = 0; j < n; ++j) {
        m[size_t(col) * n + j] = base_->mul(s, m[size_t(col) * n + j]);
        inv[size_t(col) * n + j] = base_->mul(s, inv[size_t(col) * n + j]);
      }
      for (u32 i = 0; i < n; ++i) {
        if (i == col) continue;
        const u32 f = m[size_t(i) * n + col];
        if (f == 0) continue;
        for (u32 j = 0; j < n; ++j) {
          m[size_t(i) * n + j] = base_->sub(m[size_t(i) * n + j], base_->mul(f, m[size_t(col) * n + j]));
          inv[size_t(i) * n + j] =
              base_->sub(inv[size_t(i) * n + j], base_->mul(f, inv[size_t(col) * n + j]));
        }
      }
    }
    return inv;
  }
};

using TowerPtr = std::shared_ptr<const FieldTower>;

inline TowerPtr make_tower(u32 p, u32 e, u32 t,
                           std::optional<std::vector<u32>> top_irr = std::nullopt,
                           std::optional<std::vector<u32>> q_basis = std::nullopt) {
  return std::make_shared<const FieldTower>(p, e, t, std::move(top_irr), std::move(q_basis));
}

inline std::pair<u32, u32> factor_prime_power(u64 q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  for (u64 p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    u32 e = 0;
    u64 m = q;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (m != 1) throw std::invalid_argument("q is not a prime power");
    return {u32(p), e};
  }
  return {u32(q), 1};
}

inline TowerPtr make_tower_q(u64 q, u32 t,
                             std::optional<std::vector<u32>> top_irr = std::nullopt) {
  auto [p, e] = factor_prime_power(q);
  return make_tower(p, e, t, std::move(top_irr));
}

/* ---- checked element wrapper ---- */

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldTower* tw, const Field* f, u32 code) : tw_(tw), f_(f), code_(code) {
    if (code >= f->size()) throw std::invalid_argument("element code out of range");
  }

  u32 code() const { return code_; }
  const FieldTower& tower() const { return *tw_; }
  bool in_top() const { return f_ == &tw_->top(); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.match(b);
    return {a.tw_, a.f_, a.f_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.match(b);
    return {a.tw_, a.f_, a.f_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.match(b);
    return {a.tw_, a.f_, a.f_->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    a.match(b);
    if (b.code_ == 0) throw std::invalid_argument("division by zero");
    return {a.tw_, a.f_, a.f_->div(a.code_, b.code_)};
  }
  FieldElement operator-() const { return {tw_, f_, f_->neg(code_)}; }
  bool operator==(const FieldElement& o) const { return f_ == o.f_ && code_ == o.code_; }

  FieldElement pow(u64 e) const { return {tw_, f_, f_->pow(code_, e)}; }

  /* x -> x^{q^i}; fixes the base field pointwise */
  FieldElement frobenius(u32 i = 1) const {
    if (in_top()) return {tw_, f_, tw_->frobenius(code_, i)};
    return *this;  // a^{q^i} = a for a in GF(q)
  }

  FieldElement trace() const {
    require_top("trace");
    return {tw_, &tw_->base(), tw_->trace(code_)};
  }
  FieldElement norm() const {
    require_top("norm");
    return {tw_, &tw_->base(), tw_->norm(code_)};
  }
  std::vector<u32> coords() const {
    require_top("coords");
    return tw_->coords(code_);
  }

 private:
  const FieldTower* tw_ = nullptr;
  const Field* f_ = nullptr;
  u32 code_ = 0;

  void match(const FieldElement& o) const {
    if (tw_ != o.tw_ || f_ != o.f_)
      throw std::invalid_argument("operands live in different fields");
  }
  void require_top(const char* op) const {
    if (!in_top()) throw std::invalid_argument(std::string(op) + ": top-field elements only");
  }
};

inline FieldElement FieldTower::element(u32 top_code) const {
  return FieldElement(this, top_.get(), top_code);
}

inline FieldElement FieldTower::base_element(u32 base_code) const {
  return FieldElement(this, base_.get(), base_code);
}

}  // namespace scattered
