#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace lgalg {

// Dense univariate polynomials over Q, coefficient of x^i at index i.
using QPoly = std::vector<Q>;

inline void qp_trim(QPoly& p) {
  while (!p.empty() && kv_is_zero(p.back())) p.pop_back();
}

inline int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Q(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qp_trim(r);
  return r;
}

inline QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Q(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qp_trim(r);
  return r;
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Q(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qp_trim(r);
  return r;
}

// Division with remainder; b need not be monic.
inline std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  QPoly rem = a, quot;
  const int db = qp_deg(b);
  const Q lc = b.back();
  while (qp_deg(rem) >= db) {
    const int k = qp_deg(rem) - db;
    const Q c = rem.back() / lc;
    if (static_cast<int>(quot.size()) < k + 1) quot.resize(k + 1, Q(0));
    quot[k] += c;
    for (int i = 0; i <= db; ++i) rem[i + k] -= c * b[i];
    qp_trim(rem);
  }
  qp_trim(quot);
  return {quot, rem};
}

inline QPoly qp_divexact(const QPoly& a, const QPoly& b) {
  auto [q, r] = qp_divmod(a, b);
  if (!r.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

inline QPoly qp_monic(QPoly p) {
  qp_trim(p);
  if (p.empty()) return p;
  const Q lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

inline QPoly qp_gcd(QPoly a, QPoly b) {
  qp_trim(a);
  qp_trim(b);
  while (!b.empty()) {
    auto r = qp_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return qp_monic(a);
}

inline QPoly qp_pow(const QPoly& a, long e) {
  QPoly r{Q(1)};
  for (long i = 0; i < e; ++i) r = qp_mul(r, a);
  return r;
}

inline Q qp_eval(const QPoly& a, const Q& x) {
  Q r(0);
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

inline QPoly qp_derivative(const QPoly& a) {
  QPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Q(static_cast<long>(i)));
  qp_trim(r);
  return r;
}

// extended gcd: returns (g, u, v) with u*a + v*b = g, g monic
inline std::tuple<QPoly, QPoly, QPoly> qp_ext_gcd(QPoly a, QPoly b) {
  qp_trim(a);
  qp_trim(b);
  QPoly u0{Q(1)}, v0, u1, v1{Q(1)};
  while (!b.empty()) {
    auto [q, r] = qp_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    QPoly u2 = qp_sub(u0, qp_mul(q, u1));
    QPoly v2 = qp_sub(v0, qp_mul(q, v1));
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (!a.empty()) {
    Q lc = a.back();
    for (auto& c : a) c /= lc;
    for (auto& c : u0) c /= lc;
    for (auto& c : v0) c /= lc;
  }
  return {a, u0, v0};
}

// Cyclotomic polynomial, computed by dividing x^N-1 by the proper-divisor
// factors.
inline const QPoly& cyclotomic_poly(long N) {
  static std::map<long, QPoly> memo;
  auto it = memo.find(N);
  if (it != memo.end()) return it->second;
  if (N < 1) throw std::domain_error("cyclotomic index must be positive");
  QPoly num(N + 1, Q(0));
  num[0] = Q(-1);
  num[N] = Q(1);
  for (long d = 1; d < N; ++d)
    if (N % d == 0) num = qp_divexact(num, cyclotomic_poly(d));
  return memo.emplace(N, std::move(num)).first->second;
}

// Etale extension Q(z)[s]/(m(s)) with z a primitive N-th root of unity and
// m monic over Q(z). Q(z) itself is Q[z]/Phi_N(z), a genuine field, so only
// the s-level modulus can split; attempting to invert a zero divisor reports
// a proper monic factor of m, from which the ring splits into a product.
class EtaleCtx;
using EtaleRef = std::shared_ptr<const EtaleCtx>;

// Element of the base field Q(z): dense poly in z of length dphi.
using CElt = std::vector<Q>;
// Element of the full ring: dense poly in s of length dm, base coefficients.
using EData = std::vector<CElt>;

struct ZeroDivisor : std::runtime_error {
  EData factor;  // proper monic factor of the s-modulus
  explicit ZeroDivisor(EData f)
      : std::runtime_error("zero divisor in etale ring"), factor(std::move(f)) {}
};

class EtaleCtx : public std::enable_shared_from_this<EtaleCtx> {
 public:
  long N;       // cyclotomic level
  QPoly phi;    // Phi_N, monic
  int dphi;     // deg Phi_N
  EData mod;    // s-modulus, monic over Q(z), length dm+1
  int dm;       // deg of s-modulus, >= 1

  static EtaleRef make(long N, const EData& modulus) {
    auto c = std::make_shared<EtaleCtx>();
    c->N = N;
    c->phi = cyclotomic_poly(N);
    c->dphi = qp_deg(c->phi);
    c->mod = modulus;
    c->dm = static_cast<int>(modulus.size()) - 1;
    if (c->dm < 1 || !c->bis_one(modulus.back()))
      throw std::domain_error("s-modulus must be monic of degree >= 1");
    return c;
  }

  // Q(zeta_N)[s]/(s^d - c).
  static EtaleRef make_radical(long N, int d, const Q& c) {
    auto ctx = std::make_shared<EtaleCtx>();
    ctx->N = N;
    ctx->phi = cyclotomic_poly(N);
    ctx->dphi = qp_deg(ctx->phi);
    EData m(d + 1, CElt(ctx->dphi, Q(0)));
    m[0][0] = -c;
    m[d][0] = Q(1);
    ctx->mod = std::move(m);
    ctx->dm = d;
    return ctx;
  }

  static EtaleRef make_cyclotomic(long N) { return make_radical(N, 1, Q(0)); }

  // ---- base field Q(z) ----
  CElt bzero() const { return CElt(dphi, Q(0)); }
  CElt bone() const {
    CElt e = bzero();
    if (dphi > 0) e[0] = Q(1);
    return e;
  }
  CElt bfrom_q(const Q& q) const {
    CElt e = bzero();
    if (dphi > 0) e[0] = q;
    return e;
  }
  bool bis_zero(const CElt& x) const {
    for (const auto& c : x)
      if (!kv_is_zero(c)) return false;
    return true;
  }
  bool bis_one(const CElt& x) const {
    if (dphi == 0) return false;
    if (!kv_is_zero(Q(x[0] - 1))) return false;
    for (int i = 1; i < dphi; ++i)
      if (!kv_is_zero(x[i])) return false;
    return true;
  }
  CElt badd(const CElt& a, const CElt& b) const {
    CElt r = a;
    for (int i = 0; i < dphi; ++i) r[i] += b[i];
    return r;
  }
  CElt bsub(const CElt& a, const CElt& b) const {
    CElt r = a;
    for (int i = 0; i < dphi; ++i) r[i] -= b[i];
    return r;
  }
  CElt bneg(const CElt& a) const {
    CElt r = a;
    for (auto& c : r) c = -c;
    return r;
  }
  CElt bmul(const CElt& a, const CElt& b) const {
    QPoly pa(a.begin(), a.end()), pb(b.begin(), b.end());
    qp_trim(pa);
    qp_trim(pb);
    QPoly pr = qp_divmod(qp_mul(pa, pb), phi).second;
    pr.resize(dphi, Q(0));
    return CElt(pr.begin(), pr.end());
  }
  CElt binv(const CElt& a) const {
    if (bis_zero(a)) throw std::domain_error("division by zero in Q(z)");
    // extended gcd of a against Phi_N; Phi_N irreducible so gcd is constant
    QPoly r0 = phi, r1(a.begin(), a.end());
    qp_trim(r1);
    QPoly v0, v1{Q(1)};
    while (!r1.empty()) {
      auto [q, r] = qp_divmod(r0, r1);
      QPoly v2 = qp_sub(v0, qp_mul(q, v1));
      r0 = std::move(r1);
      r1 = std::move(r);
      v0 = std::move(v1);
      v1 = std::move(v2);
    }
    if (qp_deg(r0) != 0) throw std::logic_error("cyclotomic modulus not irreducible");
    const Q g = r0[0];
    QPoly inv = qp_divmod(v0, phi).second;
    inv.resize(dphi, Q(0));
    CElt out(inv.begin(), inv.end());
    for (auto& c : out) c /= g;
    return out;
  }

  // ---- full ring ----
  EData zero() const { return EData(dm, bzero()); }
  EData one() const {
    EData e = zero();
    e[0] = bone();
    return e;
  }
  EData from_q(const Q& q) const {
    EData e = zero();
    e[0] = bfrom_q(q);
    return e;
  }
  EData zeta() const {
    EData e = zero();
    e[0] = bzero();
    if (dphi >= 2)
      e[0][1] = Q(1);
    else
      // N in {1,2}: z is rational
      e[0][0] = (N == 2) ? Q(-1) : Q(1);
    return e;
  }
  EData gen_s() const {
    if (dm >= 2) {
      EData e = zero();
      e[1] = bone();
      return e;
    }
    // degree-1 modulus s - c: s is identified with c
    EData e = zero();
    e[0] = bneg(mod[0]);
    return e;
  }
  bool is_zero(const EData& x) const {
    for (const auto& c : x)
      if (!bis_zero(c)) return false;
    return true;
  }
  EData add(const EData& a, const EData& b) const {
    EData r = a;
    for (int i = 0; i < dm; ++i) r[i] = badd(r[i], b[i]);
    return r;
  }
  EData sub(const EData& a, const EData& b) const {
    EData r = a;
    for (int i = 0; i < dm; ++i) r[i] = bsub(r[i], b[i]);
    return r;
  }
  EData neg(const EData& a) const {
    EData r = a;
    for (auto& c : r) c = bneg(c);
    return r;
  }

  using BPoly = std::vector<CElt>;  // poly in s, arbitrary length

  void bp_trim(BPoly& p) const {
    while (!p.empty() && bis_zero(p.back())) p.pop_back();
  }
  // remainder mod a monic-leading divisor is hidden in bp_divmod; the leading
  // coefficient is inverted in the base field, which never fails there
  std::pair<BPoly, BPoly> bp_divmod(const BPoly& a, const BPoly& b) const {
    BPoly rem = a, quot;
    bp_trim(rem);
    BPoly bb = b;
    bp_trim(bb);
    if (bb.empty()) throw std::domain_error("division by zero in etale ring");
    const int db = static_cast<int>(bb.size()) - 1;
    const CElt lcinv = binv(bb.back());
    while (static_cast<int>(rem.size()) - 1 >= db) {
      const int k = static_cast<int>(rem.size()) - 1 - db;
      const CElt c = bmul(rem.back(), lcinv);
      if (static_cast<int>(quot.size()) < k + 1) quot.resize(k + 1, bzero());
      quot[k] = badd(quot[k], c);
      for (int i = 0; i <= db; ++i) rem[i + k] = bsub(rem[i + k], bmul(c, bb[i]));
      bp_trim(rem);
    }
    return {quot, rem};
  }

  EData reduce(const BPoly& p) const {
    BPoly r = bp_divmod(p, BPoly(mod.begin(), mod.end())).second;
    r.resize(dm, bzero());
    return EData(r.begin(), r.end());
  }

  EData mul(const EData& a, const EData& b) const {
    BPoly prod(2 * dm - 1, bzero());
    for (int i = 0; i < dm; ++i)
      for (int j = 0; j < dm; ++j)
        prod[i + j] = badd(prod[i + j], bmul(a[i], b[j]));
    return reduce(prod);
  }

  // Inverse, or the obstructing factor of the modulus.
  std::optional<EData> try_inverse(const EData& a, EData* factor = nullptr) const {
    if (is_zero(a)) throw std::domain_error("division by zero in etale ring");
    BPoly r0(mod.begin(), mod.end()), r1(a.begin(), a.end());
    bp_trim(r1);
    BPoly v0, v1{bone()};
    while (!r1.empty()) {
      auto [q, r] = bp_divmod(r0, r1);
      BPoly qv(std::max(v0.size(), q.size() + v1.size()), bzero());
      for (size_t i = 0; i < v0.size(); ++i) qv[i] = v0[i];
      if (!q.empty() && !v1.empty())
        for (size_t i = 0; i < q.size(); ++i)
          for (size_t j = 0; j < v1.size(); ++j)
            qv[i + j] = bsub(qv[i + j], bmul(q[i], v1[j]));
      bp_trim(qv);
      r0 = std::move(r1);
      r1 = std::move(r);
      v0 = std::move(v1);
      v1 = std::move(qv);
    }
    if (static_cast<int>(r0.size()) - 1 > 0) {
      // gcd(a, m) proper: a is a zero divisor; hand back the monic factor
      const CElt lcinv = binv(r0.back());
      for (auto& c : r0) c = bmul(c, lcinv);
      if (factor) *factor = EData(r0.begin(), r0.end());
      return std::nullopt;
    }
    const CElt ginv = binv(r0[0]);
    BPoly inv = bp_divmod(v0, BPoly(mod.begin(), mod.end())).second;
    inv.resize(dm, bzero());
    EData out(inv.begin(), inv.end());
    for (auto& c : out) c = bmul(c, ginv);
    return out;
  }

  std::string str(const EData& a) const {
    std::string out;
    for (int i = 0; i < dm; ++i)
      for (int k = 0; k < dphi; ++k) {
        const Q& c = a[i][k];
        if (kv_is_zero(c)) continue;
        std::string term = c.get_str();
        if (i > 0) term += "*s" + (i > 1 ? "^" + std::to_string(i) : "");
        if (k > 0) term += "*z" + (k > 1 ? "^" + std::to_string(k) : "");
        if (!out.empty()) out += " + ";
        out += term;
      }
    return out.empty() ? "0" : out;
  }
};

// Value-semantics element handle.
class Ext {
 public:
  EtaleRef ctx;
  EData v;

  Ext() = default;
  explicit Ext(EtaleRef c) : ctx(std::move(c)), v(ctx->zero()) {}
  Ext(EtaleRef c, EData d) : ctx(std::move(c)), v(std::move(d)) {}
  Ext(EtaleRef c, const Q& q) : ctx(std::move(c)), v(ctx->from_q(q)) {}

  friend Ext operator+(const Ext& a, const Ext& b) { return {a.ctx, a.ctx->add(a.v, b.v)}; }
  friend Ext operator-(const Ext& a, const Ext& b) { return {a.ctx, a.ctx->sub(a.v, b.v)}; }
  friend Ext operator*(const Ext& a, const Ext& b) { return {a.ctx, a.ctx->mul(a.v, b.v)}; }
  Ext operator-() const { return {ctx, ctx->neg(v)}; }
  friend bool operator==(const Ext& a, const Ext& b) { return a.ctx->is_zero(a.ctx->sub(a.v, b.v)); }
  friend bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }
  Ext& operator+=(const Ext& b) { v = ctx->add(v, b.v); return *this; }
  Ext& operator-=(const Ext& b) { v = ctx->sub(v, b.v); return *this; }
  Ext& operator*=(const Ext& b) { v = ctx->mul(v, b.v); return *this; }
};

inline bool kv_is_zero(const Ext& x) { return x.ctx->is_zero(x.v); }

inline Ext kv_inv(const Ext& x) {
  EData factor;
  auto inv = x.ctx->try_inverse(x.v, &factor);
  if (!inv) throw ZeroDivisor(factor);
  return {x.ctx, *inv};
}

inline Ext kv_int(const Ext& sample, long k) { return {sample.ctx, Q(k)}; }

inline std::string kv_str(const Ext& x) { return x.ctx->str(x.v); }

inline Ext ext_zeta(const EtaleRef& c) { return {c, c->zeta()}; }
inline Ext ext_s(const EtaleRef& c) { return {c, c->gen_s()}; }

inline Ext ext_pow(Ext x, long k) {
  Ext r = kv_int(x, 1);
  for (; k > 0; k >>= 1) {
    if (k & 1) r *= x;
    x *= x;
  }
  return r;
}

// Splits Q(z)[s]/(m) along a proper monic factor g of m into the two quotient
// rings; project elements with ext_project.
inline std::pair<EtaleRef, EtaleRef> etale_split(const EtaleRef& c, const EData& g) {
  EtaleCtx::BPoly m(c->mod.begin(), c->mod.end()), gg(g.begin(), g.end());
  c->bp_trim(gg);
  auto [quot, rem] = c->bp_divmod(m, gg);
  if (!rem.empty()) throw std::domain_error("factor does not divide the modulus");
  return {EtaleCtx::make(c->N, EData(gg.begin(), gg.end())),
          EtaleCtx::make(c->N, EData(quot.begin(), quot.end()))};
}

inline Ext ext_project(const Ext& x, const EtaleRef& target) {
  if (x.ctx->N != target->N)
    throw std::domain_error("projection requires the same cyclotomic level");
  EtaleCtx::BPoly p(x.v.begin(), x.v.end());
  return {target, target->reduce(p)};
}

}  // namespace lgalg
