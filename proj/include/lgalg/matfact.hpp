#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ainf.hpp"
#include "grading.hpp"
#include "jacobian.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace lgalg {

// ---------------------------------------------------------------------------
// Koszul-type matrix factorizations of the deformed potential
//   Ztilde = -u_1..u_n + sum_j r_j u_j^a
// on K = Lambda(theta_1..theta_n) over Q[r_1..r_n, u_1..u_n], with
//   delta = sum_j ( u_j iota_j + w_j theta_j ),
//   w_j   = -(1/n) prod_{i != j} u_i + r_j u_j^{a-1},
// so that sum_j u_j w_j = Ztilde and delta^2 = Ztilde * id.  The endomorphism
// algebra of K is a honest DGA under the graded commutator with delta; its
// minimal model is extracted by homotopy transfer through an explicit
// contraction onto the u-degree-zero core.
// ---------------------------------------------------------------------------

struct MFCtx {
  int n = 0;
  long a = 0;
  long rho = 1;    // coefficient cap in the r block (-1: none)
  long ucap = -1;  // coefficient cap in the u block (-1: none)
  std::shared_ptr<const TCtx> tc;  // r_1..r_n = vars 0..n-1, u_1..u_n = n..2n-1
};

inline MFCtx make_mf_ctx(int n, long a, long rho, long ucap) {
  MFCtx C;
  C.n = n;
  C.a = a;
  C.rho = rho;
  C.ucap = ucap;
  VarTable vt = ru_vars(n);
  std::vector<int> block(2 * n, 0);
  for (int j = 0; j < n; ++j) block[n + j] = 1;
  C.tc = make_tctx(vt.names, block, {rho, ucap});
  return C;
}

inline TPolyQ mf_one(const MFCtx& C) { return tp_const(C.tc, Q(1)); }
inline TPolyQ mf_r(const MFCtx& C, int j) { return tp_var(C.tc, j, Q(1)); }
inline TPolyQ mf_u(const MFCtx& C, int j) { return tp_var(C.tc, C.n + j, Q(1)); }

inline TPolyQ mf_w(const MFCtx& C, int j) {
  Poly<Q> p(2 * C.n);
  Mono prod(2 * C.n, 0);
  for (int i = 0; i < C.n; ++i)
    if (i != j) prod[C.n + i] = 1;
  p.add_term(prod, Q(-1) / Q(C.n));
  Mono m(2 * C.n, 0);
  m[j] = 1;
  m[C.n + j] = static_cast<int>(C.a) - 1;
  p.add_term(m, Q(1));
  return TPolyQ(C.tc, std::move(p));
}

inline TPolyQ mf_ztilde(const MFCtx& C) {
  return TPolyQ(C.tc, deformed_potential(C.n, C.a));
}

// ---------------------------------------------------------------------------
// Endomorphisms of Lambda(theta).  Basis: matrix units E[A|B] : theta^B ->
// theta^A over subset masks; composition E[A|B] E[C|D] = [B=C] E[A|D] carries
// no sign.  All Koszul signs sit in the coefficients of the generator
// operators; parity of E[A|B] is |A| + |B| mod 2.
// ---------------------------------------------------------------------------

using EndElt = std::map<uint32_t, TPolyQ>;

inline uint32_t ekey(uint32_t A, uint32_t B) { return (A << 16) | B; }
inline uint32_t ekey_a(uint32_t k) { return k >> 16; }
inline uint32_t ekey_b(uint32_t k) { return k & 0xffffu; }
inline int ekey_parity(uint32_t k) {
  return (std::popcount(ekey_a(k)) + std::popcount(ekey_b(k))) & 1;
}

inline void end_add(EndElt& x, uint32_t key, const TPolyQ& c) {
  if (c.is_zero()) return;
  auto it = x.find(key);
  if (it == x.end()) {
    x.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) x.erase(it);
}

inline void end_acc(EndElt& x, const EndElt& y) {
  for (const auto& [k, c] : y) end_add(x, k, c);
}

inline void end_acc_scaled(EndElt& x, const EndElt& y, const TPolyQ& s) {
  if (s.is_zero()) return;
  for (const auto& [k, c] : y) end_add(x, k, c * s);
}

inline EndElt end_sub(const EndElt& x, const EndElt& y) {
  EndElt r = x;
  for (const auto& [k, c] : y) end_add(r, k, -c);
  return r;
}

inline bool end_is_zero(const EndElt& x) {
  for (const auto& [k, c] : x)
    if (!c.is_zero()) return false;
  return true;
}

inline bool end_eq(const EndElt& x, const EndElt& y) {
  return end_is_zero(end_sub(x, y));
}

inline EndElt end_compose(const EndElt& x, const EndElt& y) {
  EndElt r;
  if (x.empty() || y.empty()) return r;
  for (const auto& [kx, cx] : x) {
    const uint32_t B = ekey_b(kx);
    for (auto it = y.lower_bound(ekey(B, 0)); it != y.end() && ekey_a(it->first) == B; ++it)
      end_add(r, ekey(ekey_a(kx), ekey_b(it->first)), cx * it->second);
  }
  return r;
}

inline EndElt end_id(const MFCtx& C) {
  EndElt r;
  const TPolyQ one = mf_one(C);
  for (uint32_t A = 0; A < (1u << C.n); ++A) r.emplace(ekey(A, A), one);
  return r;
}

inline int below_sign(uint32_t mask, int j) {
  return (std::popcount(mask & ((1u << j) - 1u)) & 1) ? -1 : 1;
}

// theta_j wedge: theta_j ^ theta^B = (-1)^{#(i in B, i < j)} theta^{B+j}
inline EndElt op_wedge(const MFCtx& C, int j) {
  EndElt r;
  for (uint32_t B = 0; B < (1u << C.n); ++B) {
    if (B & (1u << j)) continue;
    r.emplace(ekey(B | (1u << j), B), tp_const(C.tc, Q(below_sign(B, j))));
  }
  return r;
}

// contraction: iota_j theta^B = (-1)^{#(i in B, i < j)} theta^{B-j} for j in B
inline EndElt op_iota(const MFCtx& C, int j) {
  EndElt r;
  for (uint32_t B = 0; B < (1u << C.n); ++B) {
    if (!(B & (1u << j))) continue;
    r.emplace(ekey(B & ~(1u << j), B), tp_const(C.tc, Q(below_sign(B, j))));
  }
  return r;
}

// ---------------------------------------------------------------------------
// The matrix factorization itself.
// ---------------------------------------------------------------------------

struct MatFact {
  MFCtx ctx;
  EndElt delta;    // odd, delta^2 = ztilde * id
  EndElt delta_u;  // sum_j u_j iota_j
  EndElt delta_w;  // sum_j w_j theta_j
  TPolyQ ztilde;
};

inline MatFact build_K(int n, long a, long rho = 1, long ucap = -1) {
  if (n < 3 || a < 2 || a > n - 1)
    throw std::invalid_argument("build_K: parameters must satisfy 2 <= a <= n-1");
  if (rho >= 0 && rho < 1)
    throw std::invalid_argument("build_K: r-degree bound must be at least 1");
  if (ucap >= 0 && ucap < n)
    throw std::invalid_argument("build_K: u-degree bound must be at least n");
  MatFact M;
  M.ctx = make_mf_ctx(n, a, rho, ucap);
  M.ztilde = mf_ztilde(M.ctx);
  TPolyQ uw;
  for (int j = 0; j < n; ++j) {
    const TPolyQ wj = mf_w(M.ctx, j);
    uw = uw + mf_u(M.ctx, j) * wj;
    end_acc_scaled(M.delta_u, op_iota(M.ctx, j), mf_u(M.ctx, j));
    end_acc_scaled(M.delta_w, op_wedge(M.ctx, j), wj);
  }
  if (!(uw == M.ztilde)) throw std::runtime_error("build_K: sum u_j w_j != Ztilde");
  M.delta = M.delta_u;
  end_acc(M.delta, M.delta_w);
  EndElt sq = end_compose(M.delta, M.delta);
  EndElt target;
  for (uint32_t A = 0; A < (1u << n); ++A) target.emplace(ekey(A, A), M.ztilde);
  if (!end_eq(sq, target)) throw std::runtime_error("build_K: delta^2 != Ztilde * id");
  return M;
}

// Graded commutator with an odd operator: [D, x] = D x - (-1)^{|x|} x D,
// taken per matrix-unit component of x.
inline EndElt end_comm_odd(const EndElt& D, const EndElt& x) {
  EndElt xe, xo;
  for (const auto& [k, c] : x) (ekey_parity(k) ? xo : xe)[k] = c;
  EndElt r = end_compose(D, x);
  EndElt re = end_compose(xe, D);
  EndElt ro = end_compose(xo, D);
  for (const auto& [k, c] : re) end_add(r, k, -c);
  end_acc(r, ro);
  return r;
}

inline EndElt end_d(const MatFact& M, const EndElt& x) { return end_comm_odd(M.delta, x); }
inline EndElt end_d0(const MatFact& M, const EndElt& x) { return end_comm_odd(M.delta_u, x); }
inline EndElt end_t(const MatFact& M, const EndElt& x) { return end_comm_odd(M.delta_w, x); }

inline EndElt end_unit_elt(const MFCtx& C, uint32_t key) {
  EndElt r;
  r.emplace(key, mf_one(C));
  return r;
}

// ---------------------------------------------------------------------------
// DGA certificate: d(id) = 0, d^2 = 0 on every matrix unit, d flips parity,
// and the Leibniz rule on sampled pairs.
// ---------------------------------------------------------------------------

struct EndDgaReport {
  bool d_id_zero = false;
  bool d_sq_zero = false;
  bool d_odd = false;
  bool leibniz_ok = false;
  long leibniz_pairs = 0;
  std::string fail;
  bool ok() const { return d_id_zero && d_sq_zero && d_odd && leibniz_ok; }
};

inline EndDgaReport end_dga_check(const MatFact& M, long leibniz_samples = 48,
                                  uint64_t seed = 1) {
  EndDgaReport rep;
  const int n = M.ctx.n;
  rep.d_id_zero = end_is_zero(end_d(M, end_id(M.ctx)));
  rep.d_sq_zero = true;
  rep.d_odd = true;
  for (uint32_t A = 0; A < (1u << n) && (rep.d_sq_zero && rep.d_odd); ++A)
    for (uint32_t B = 0; B < (1u << n); ++B) {
      const uint32_t k = ekey(A, B);
      EndElt dx = end_d(M, end_unit_elt(M.ctx, k));
      for (const auto& [ko, c] : dx)
        if (ekey_parity(ko) == ekey_parity(k)) {
          rep.d_odd = false;
          rep.fail = "even d-component";
          break;
        }
      if (!end_is_zero(end_d(M, dx))) {
        rep.d_sq_zero = false;
        rep.fail = "d^2 != 0";
        break;
      }
    }
  std::mt19937_64 rng(seed);
  rep.leibniz_ok = true;
  const uint32_t mask = (1u << n) - 1u;
  for (long t = 0; t < leibniz_samples && rep.leibniz_ok; ++t) {
    const uint32_t k1 = ekey(static_cast<uint32_t>(rng()) & mask,
                             static_cast<uint32_t>(rng()) & mask);
    const uint32_t k2 = ekey(static_cast<uint32_t>(rng()) & mask,
                             static_cast<uint32_t>(rng()) & mask);
    EndElt x = end_unit_elt(M.ctx, k1), y = end_unit_elt(M.ctx, k2);
    EndElt lhs = end_d(M, end_compose(x, y));
    EndElt rhs = end_compose(end_d(M, x), y);
    EndElt xdy = end_compose(x, end_d(M, y));
    if (ekey_parity(k1)) {
      for (const auto& [k, c] : xdy) end_add(rhs, k, -c);
    } else {
      end_acc(rhs, xdy);
    }
    rep.leibniz_pairs++;
    if (!end_eq(lhs, rhs)) {
      rep.leibniz_ok = false;
      rep.fail = "Leibniz failure";
    }
  }
  return rep;
}

// The DGA packaged as a two-operation A-infinity algebra on the matrix-unit
// basis, through the fixed dictionary
//   mu^1(x) = (-1)^{sigma(x)} d x,   mu^2(x2, x1) = (-1)^{sigma(x1)} x2 x1.
inline AInf<TPolyQ> end_dga_ainf(const MatFact& M) {
  const int n = M.ctx.n;
  const uint32_t N = 1u << n;
  AInf<TPolyQ> A;
  A.sample = mf_one(M.ctx);
  auto set_name = [n](uint32_t m) {
    std::string s;
    for (int j = 0; j < n; ++j)
      if (m & (1u << j)) s += std::to_string(j + 1);
    return s.empty() ? std::string("-") : s;
  };
  for (uint32_t Am = 0; Am < N; ++Am)
    for (uint32_t Bm = 0; Bm < N; ++Bm) {
      A.names.push_back("E[" + set_name(Am) + "|" + set_name(Bm) + "]");
      A.parity.push_back(ekey_parity(ekey(Am, Bm)));
      A.weight.push_back(std::popcount(Am) + n - std::popcount(Bm));
    }
  A.set_smax(3);
  auto idx = [N](uint32_t key) {
    return static_cast<uint32_t>(ekey_a(key) * N + ekey_b(key));
  };
  for (uint32_t Am = 0; Am < N; ++Am)
    for (uint32_t Bm = 0; Bm < N; ++Bm) {
      const uint32_t k = ekey(Am, Bm);
      EndElt dx = end_d(M, end_unit_elt(M.ctx, k));
      const int sg = ekey_parity(k);
      for (const auto& [ko, c] : dx)
        A.add_mu(1, {idx(k)}, idx(ko), sg ? -c : c);
    }
  for (uint32_t Am = 0; Am < N; ++Am)
    for (uint32_t Bm = 0; Bm < N; ++Bm)
      for (uint32_t Dm = 0; Dm < N; ++Dm) {
        const uint32_t k2 = ekey(Am, Bm), k1 = ekey(Bm, Dm);
        const TPolyQ c = ekey_parity(k1) ? -mf_one(M.ctx) : mf_one(M.ctx);
        A.add_mu(2, {idx(k1), idx(k2)}, idx(ekey(Am, Dm)), c);
      }
  return A;
}

// ---------------------------------------------------------------------------
// Contraction onto the u-degree-zero core.
//
// Variable by variable: for the piece d0^j = [u_j iota_j, -] the four local
// states at a fixed complement are P = E[A|B], Q = E[A+j|B], R = E[A|B+j],
// T = E[A+j|B+j] (j not in A, B).  The division homotopy sends a term
// c E[A|B] with j not in A and u_j | c to -(-1)^{#(i in A, i < j)} (c/u_j)
// E[A+j|B], everything else to zero; the projection keeps the u_j-free part
// of the R states and completes P to the local cocycle P + s T.  Composing
// the n steps gives a contraction (I, P, H) with
//   P I = id,   id - I P = d0 H + H d0,   H H = 0,  H I = 0,  P H = 0
// onto the 2^n classes xi_S, and P d0 I = 0.  Perturbing by t = [sum w_j
// theta_j, -] through the usual series (t raises the filtration |A| + n -
// |B| strictly, so every series below is finite).
// ---------------------------------------------------------------------------

struct MFContraction {
  MatFact mf;
  std::vector<EndElt> xi;  // embedded classes, xi[S]; xi[0] = id
  int series_guard = 0;

  EndElt h_var(int j, const EndElt& x) const {
    const int n = mf.ctx.n;
    EndElt r;
    const uint32_t bj = 1u << j;
    const int uvar = n + j;
    for (const auto& [k, c] : x) {
      const uint32_t A = ekey_a(k);
      if (A & bj) continue;
      Poly<Q> q = Poly<Q>::zero(2 * n);
      for (const auto& [m, cf] : c.p.t)
        if (m[uvar] > 0) {
          Mono mm = m;
          --mm[uvar];
          q.add_term(mm, cf);
        }
      if (q.t.empty()) continue;
      if (below_sign(A, j) < 0) q = -q;
      end_add(r, ekey(A | bj, ekey_b(k)), TPolyQ(mf.ctx.tc, std::move(q)));
    }
    return r;
  }

  EndElt pi_var(int j, const EndElt& x) const {
    const int n = mf.ctx.n;
    EndElt r;
    const uint32_t bj = 1u << j;
    const int uvar = n + j;
    for (const auto& [k, c] : x) {
      const uint32_t A = ekey_a(k), B = ekey_b(k);
      if (A & bj) continue;
      Poly<Q> q = Poly<Q>::zero(2 * n);
      for (const auto& [m, cf] : c.p.t)
        if (m[uvar] == 0) q.add_term(m, cf);
      if (q.t.empty()) continue;
      TPolyQ c0(mf.ctx.tc, std::move(q));
      end_add(r, k, c0);
      if (!(B & bj)) {
        int sg = below_sign(A, j) * below_sign(B, j);
        if (ekey_parity(k)) sg = -sg;
        end_add(r, ekey(A | bj, B | bj), sg > 0 ? c0 : -c0);
      }
    }
    return r;
  }

  EndElt proj(EndElt x) const {
    for (int j = 0; j < mf.ctx.n; ++j) x = pi_var(j, x);
    return x;
  }

  EndElt hzero(const EndElt& x) const {
    EndElt acc, cur = x;
    for (int j = 0; j < mf.ctx.n; ++j) {
      end_acc(acc, h_var(j, cur));
      cur = pi_var(j, cur);
    }
    return acc;
  }

  // coordinates on the xi basis; valid on the image of proj, where the
  // coefficient of xi_S is the coefficient at the leading key E[-|S]
  std::vector<TPolyQ> pcoords(const EndElt& x) const {
    std::vector<TPolyQ> out(1u << mf.ctx.n);
    for (uint32_t S = 0; S < (1u << mf.ctx.n); ++S) {
      auto it = x.find(ekey(0, S));
      if (it != x.end()) out[S] = it->second;
    }
    return out;
  }

  EndElt embed(const std::vector<TPolyQ>& c) const {
    EndElt r;
    for (uint32_t S = 0; S < c.size(); ++S) end_acc_scaled(r, xi[S], c[S]);
    return r;
  }

  // perturbed inclusion sum_k (H t)^k xi_S
  EndElt iprime(uint32_t S) const { return perturb_right(xi[S]); }

  EndElt perturb_right(const EndElt& x) const {
    EndElt acc = x, cur = x;
    for (int k = 0; k < series_guard; ++k) {
      cur = hzero(end_t(mf, cur));
      if (end_is_zero(cur)) return acc;
      end_acc(acc, cur);
    }
    throw std::runtime_error("matfact: perturbation series did not terminate");
  }

  // perturbed projection coords( P sum_k (t H)^k x )
  std::vector<TPolyQ> pprime(const EndElt& x) const {
    EndElt acc = x, cur = x;
    for (int k = 0; k < series_guard; ++k) {
      cur = end_t(mf, hzero(cur));
      if (end_is_zero(cur)) return pcoords(proj(acc));
      end_acc(acc, cur);
    }
    throw std::runtime_error("matfact: perturbation series did not terminate");
  }

  // perturbed homotopy sum_k (H t)^k H x
  EndElt hprime(const EndElt& x) const {
    EndElt h0 = hzero(x);
    EndElt acc = h0, cur = h0;
    for (int k = 0; k < series_guard; ++k) {
      cur = hzero(end_t(mf, cur));
      if (end_is_zero(cur)) return acc;
      end_acc(acc, cur);
    }
    throw std::runtime_error("matfact: perturbation series did not terminate");
  }
};

inline MFContraction make_contraction(const MatFact& M) {
  MFContraction C;
  C.mf = M;
  C.series_guard = 2 * M.ctx.n + 4;
  C.xi.resize(1u << M.ctx.n);
  for (uint32_t S = 0; S < C.xi.size(); ++S)
    C.xi[S] = C.proj(end_unit_elt(M.ctx, ekey(0, S)));
  return C;
}

struct ContractionReport {
  bool pi_id = false;
  bool homotopy_id = false;
  bool h_sq = false;
  bool h_i = false;
  bool p_h = false;
  bool proj_d0 = false;
  long checked = 0;
  std::string fail;
  bool ok() const { return pi_id && homotopy_id && h_sq && h_i && p_h && proj_d0; }
};

// Verifies the contraction identities on all matrix units with u-monomial
// coefficients of total degree <= u_slice (exact: d0 raises the u-degree by
// one, so the slice never meets a coefficient cap when ucap < 0 or
// ucap >= u_slice + 1).
inline ContractionReport contraction_check(const MFContraction& C, long u_slice) {
  ContractionReport rep;
  const MFCtx& X = C.mf.ctx;
  const int n = X.n;
  if (X.ucap >= 0 && X.ucap < u_slice + 1)
    throw std::invalid_argument("contraction_check: slice exceeds the u cap");
  rep.pi_id = true;
  rep.h_i = true;
  rep.proj_d0 = true;
  for (uint32_t S = 0; S < (1u << n); ++S) {
    auto coords = C.pcoords(C.xi[S]);
    for (uint32_t T = 0; T < (1u << n); ++T) {
      const bool want = (S == T);
      if (coords[T].is_zero() == want) rep.pi_id = false;
      if (want && !(coords[T] == mf_one(X))) rep.pi_id = false;
    }
    if (!end_is_zero(C.hzero(C.xi[S]))) rep.h_i = false;
    if (!end_is_zero(C.proj(end_d0(C.mf, C.xi[S])))) rep.proj_d0 = false;
  }
  rep.homotopy_id = true;
  rep.h_sq = true;
  rep.p_h = true;
  std::vector<Mono> mons;
  std::function<void(int, long, Mono&)> gen = [&](int v, long left, Mono& m) {
    if (v == n) {
      mons.push_back(m);
      return;
    }
    for (long e = 0; e <= left; ++e) {
      m[n + v] = static_cast<int>(e);
      gen(v + 1, left - e, m);
    }
    m[n + v] = 0;
  };
  Mono m0(2 * n, 0);
  gen(0, u_slice, m0);
  for (uint32_t A = 0; A < (1u << n); ++A)
    for (uint32_t B = 0; B < (1u << n); ++B)
      for (const Mono& mn : mons) {
        Poly<Q> p = Poly<Q>::zero(2 * n);
        p.add_term(mn, Q(1));
        EndElt x;
        x.emplace(ekey(A, B), TPolyQ(X.tc, std::move(p)));
        EndElt hx = C.hzero(x);
        EndElt lhs = end_d0(C.mf, hx);
        end_acc(lhs, C.hzero(end_d0(C.mf, x)));
        EndElt rhs = end_sub(x, C.proj(x));
        rep.checked++;
        if (!end_eq(lhs, rhs)) {
          rep.homotopy_id = false;
          rep.fail = "homotopy identity fails";
        }
        if (!end_is_zero(C.hzero(hx))) rep.h_sq = false;
        if (!end_is_zero(C.proj(hx))) rep.p_h = false;
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Reduced-model helpers.
// ---------------------------------------------------------------------------

inline std::string core_basis_name(int n, uint32_t S) {
  if (S == 0) return "e";
  std::string s = "x";
  for (int j = 0; j < n; ++j)
    if (S & (1u << j)) s += std::to_string(j + 1);
  return s;
}

// slice of every table coefficient in a fixed total r-degree
inline AInf<TPolyQ> model_r_part(const AInf<TPolyQ>& A, long rdeg) {
  AInf<TPolyQ> R = A;
  for (int s = 0; s <= R.s_max; ++s) R.mu[s].clear();
  for (int s = 0; s <= A.s_max; ++s)
    for (const auto& [key, out] : A.mu[s])
      for (const auto& [b, c] : out) {
        TPolyQ part = tp_block_part(c, 0, rdeg);
        if (!part.is_zero()) R.add_mu(s, key, b, part);
      }
  return R;
}

// scalar shadow of the r-degree-zero part
inline AInf<Q> model_order_zero(const AInf<TPolyQ>& A) {
  AInf<Q> Z;
  Z.names = A.names;
  Z.parity = A.parity;
  Z.weight = A.weight;
  Z.unit = A.unit;
  Z.sample = Q(1);
  Z.set_smax(A.s_max);
  for (int s = 0; s <= A.s_max; ++s)
    for (const auto& [key, out] : A.mu[s])
      for (const auto& [b, c] : out) {
        TPolyQ part = tp_block_part(tp_block_part(c, 0, 0), 1, 0);
        if (part.is_zero()) continue;
        Z.add_mu(s, key, b, part.p.t.begin()->second);
      }
  return Z;
}

// coefficient-level comparison (context-independent: compares raw monomials)
inline bool model_tables_equal(const AInf<TPolyQ>& A, const AInf<TPolyQ>& B,
                               int s_cap) {
  auto snap = [s_cap](const AInf<TPolyQ>& X) {
    std::map<std::pair<int, std::vector<uint32_t>>,
             std::map<size_t, std::map<Mono, Q>>> m;
    for (int s = 0; s <= std::min(s_cap, X.s_max); ++s)
      for (const auto& [k, out] : X.mu[s])
        for (const auto& [b, c] : out)
          if (!c.is_zero()) m[{s, k}][b] = c.p.t;
    return m;
  };
  return snap(A) == snap(B);
}

// restriction of the tables to r-degree <= rho and arity <= s_cap
inline AInf<TPolyQ> model_restrict(const AInf<TPolyQ>& A, long rho, int s_cap) {
  AInf<TPolyQ> R = A;
  R.set_smax(s_cap);
  for (int s = 0; s <= std::min(s_cap, A.s_max); ++s)
    for (const auto& [key, out] : A.mu[s])
      for (const auto& [b, c] : out)
        for (long d = 0; d <= rho; ++d) {
          TPolyQ part = tp_block_part(c, 0, d);
          if (!part.is_zero()) R.add_mu(s, key, b, part);
        }
  return R;
}

// identical tables under a larger arity bound (the new top tables are empty)
inline AInf<TPolyQ> model_with_smax(const AInf<TPolyQ>& A, int s) {
  AInf<TPolyQ> R = A;
  R.set_smax(s);
  for (int t = 0; t <= std::min(s, A.s_max); ++t)
    for (const auto& [key, out] : A.mu[t])
      for (const auto& [b, c] : out) R.add_mu(t, key, b, c);
  return R;
}

// ---------------------------------------------------------------------------
// Homogeneous cochain spaces on the core basis.
//
// Basis elements of the candidate space in cohomological degree deg and a
// fixed r-exponent vector c: ordered input tuples (theta-subset masks) whose
// per-variable containment counts N_k solve
//   a c_k + [k in K0] - N_k = q,    deg - s = (n-2) q + (2-a) sum(c),
// together with an output mask K0.  These are exactly the entries allowed by
// the grading; the enumeration is complete for arities 1..s_max.
// ---------------------------------------------------------------------------

struct MuCochainBasis {
  int deg = 0;
  std::vector<long> c;
  std::vector<std::pair<std::vector<uint32_t>, uint32_t>> elems;
  std::map<std::pair<std::vector<uint32_t>, uint32_t>, size_t> index;
};

inline MuCochainBasis mu_cochain_basis(const GradingDatum& G, int deg,
                                       const std::vector<long>& c, int s_max) {
  MuCochainBasis B;
  B.deg = deg;
  B.c = c;
  const int n = G.n;
  long j = 0, cmin = c.empty() ? 0 : c[0], cmax = cmin;
  for (long e : c) {
    j += e;
    cmin = std::min(cmin, e);
    cmax = std::max(cmax, e);
  }
  for (long q = G.a * cmax - s_max; q <= G.a * cmin + 1; ++q) {
    const long s = deg - (n - 2) * q - (2 - G.a) * j;
    if (s < 1 || s > s_max) continue;
    for (uint32_t K0 = 0; K0 < (1u << n); ++K0) {
      std::vector<long> N(n);
      bool feasible = true;
      for (int k = 0; k < n; ++k) {
        N[k] = G.a * c[k] + ((K0 >> k) & 1u) - q;
        if (N[k] < 0 || N[k] > s) feasible = false;
      }
      if (!feasible) continue;
      std::vector<uint32_t> tuple(s, 0);
      std::function<void(int)> place = [&](int k) {
        if (k == n) {
          B.elems.emplace_back(tuple, K0);
          return;
        }
        std::vector<int> slots;
        std::function<void(int, long)> choose = [&](int from, long left) {
          if (left == 0) {
            for (int t : slots) tuple[t] |= (1u << k);
            place(k + 1);
            for (int t : slots) tuple[t] &= ~(1u << k);
            return;
          }
          for (int t = from; t <= static_cast<int>(s - left); ++t) {
            slots.push_back(t);
            choose(t + 1, left - 1);
            slots.pop_back();
          }
        };
        choose(0, N[k]);
      };
      place(0);
    }
  }
  for (size_t i = 0; i < B.elems.size(); ++i) B.index[B.elems[i]] = i;
  return B;
}

// column vector of the Hochschild differential of a basis cochain, expressed
// in a target basis; entries outside the target are an enumeration error
inline std::vector<Q> hodelta_column(const AInf<Q>& A0, const MuCochainBasis& src,
                                     size_t i, const MuCochainBasis& dst,
                                     int s_max) {
  Cochain<Q> phi;
  phi.sp = (src.deg - 1) & 1;
  phi.add(static_cast<int>(src.elems[i].first.size()), src.elems[i].first,
          src.elems[i].second, Q(1));
  Cochain<Q> d = hodelta(A0, phi, s_max);
  std::vector<Q> col(dst.elems.size(), Q(0));
  for (const auto& [s, tab] : d.val)
    for (const auto& [key, out] : tab)
      for (const auto& [b, cf] : out) {
        auto it = dst.index.find({key, static_cast<uint32_t>(b)});
        if (it == dst.index.end())
          throw std::logic_error("hodelta_column: entry outside the enumerated space");
        col[it->second] = col[it->second] + cf;
      }
  return col;
}

// ---------------------------------------------------------------------------
// First-order class of a reduced model: the r-linear part of the tables,
// reduced modulo the differential of the gauge space, must be spanned by the
// n generator entries mu^a(theta_j,..,theta_j) = r_j e.
// ---------------------------------------------------------------------------

struct FirstOrderClass {
  bool solvable = false;  // r-linear part = sum_j eps_j gen_j + exact
  bool unique = false;    // generator coordinates pinned modulo exact
  bool pm_one = false;    // every eps_j is +1 or -1
  std::vector<Q> eps;
  std::string text;
};

inline FirstOrderClass first_order_class(const AInf<TPolyQ>& model, int n, long a) {
  FirstOrderClass F;
  F.solvable = true;
  F.unique = true;
  F.pm_one = true;
  const GradingDatum G{n, a};
  AInf<Q> A0 = model_order_zero(model);
  for (int jv = 0; jv < n; ++jv) {
    std::vector<long> c(n, 0);
    c[jv] = 1;
    MuCochainBasis b2 = mu_cochain_basis(G, 2, c, model.s_max);
    MuCochainBasis b1 = mu_cochain_basis(G, 1, c, model.s_max);
    // rhs: the r_j-linear part of the tables in the product basis
    std::vector<Q> rhs(b2.elems.size(), Q(0));
    for (int s = 0; s <= model.s_max; ++s)
      for (const auto& [key, out] : model.mu[s])
        for (const auto& [b, cf] : out)
          for (const auto& [mn, q] : cf.p.t) {
            long rdeg = 0;
            bool mine = (mn[jv] == 1);
            for (int k = 0; k < n; ++k) {
              rdeg += mn[k];
              if (mn[n + k] != 0) mine = false;
            }
            if (rdeg != 1 || !mine) continue;
            auto it = b2.index.find({key, static_cast<uint32_t>(b)});
            if (it == b2.index.end()) {
              F.solvable = false;
              F.text = "r-linear entry outside the homogeneous space";
              return F;
            }
            rhs[it->second] = rhs[it->second] + q;
          }
    const std::pair<std::vector<uint32_t>, uint32_t> gen{
        std::vector<uint32_t>(static_cast<size_t>(a), 1u << jv), 0u};
    auto git = b2.index.find(gen);
    if (git == b2.index.end()) throw std::logic_error("generator entry not enumerated");
    Matrix<Q> M(b2.elems.size());
    std::vector<std::vector<Q>> cols;
    for (size_t i = 0; i < b1.elems.size(); ++i)
      cols.push_back(hodelta_column(A0, b1, i, b2, model.s_max));
    for (size_t r = 0; r < b2.elems.size(); ++r) {
      M[r].resize(cols.size() + 1, Q(0));
      for (size_t cI = 0; cI < cols.size(); ++cI) M[r][cI] = cols[cI][r];
      M[r][cols.size()] = (r == git->second) ? Q(1) : Q(0);
    }
    Matrix<Q> Mbare = M;
    for (auto& row : Mbare) row.pop_back();
    if (mat_rank(Mbare) + 1 != mat_rank(M)) F.unique = false;
    std::vector<Q> sol;
    try {
      sol = mat_solve(M, rhs);
    } catch (const std::domain_error&) {
      F.solvable = false;
      F.text = "r-linear part is not generator plus exact";
      return F;
    }
    const Q e = sol.back();
    F.eps.push_back(e);
    if (!(e == Q(1) || e == Q(-1))) F.pm_one = false;
  }
  std::ostringstream os;
  for (int jv = 0; jv < n; ++jv)
    os << (jv ? " + " : "") << "(" << kv_str(F.eps[jv]) << ")*r" << (jv + 1)
       << "*x" << (jv + 1) << "^" << a;
  F.text = os.str();
  return F;
}

// ---------------------------------------------------------------------------
// Gauge moves at first r-order.  gauge_push adds the bracket [mu, F]; with F
// r-linear and the coefficient cap at r-degree 1 this is the exact
// pushforward of the structure along id + F.  gauge_reconstruct solves
// [mu_0, F] = B - A for F, or reports the obstruction class in generator
// coordinates.
// ---------------------------------------------------------------------------

inline AInf<TPolyQ> gauge_push(const AInf<TPolyQ>& A, const Cochain<TPolyQ>& F) {
  Cochain<TPolyQ> br = hodelta(A, F, A.s_max);
  AInf<TPolyQ> B = A;
  for (const auto& [s, tab] : br.val)
    for (const auto& [key, out] : tab)
      for (const auto& [b, c] : out) B.add_mu(s, key, b, c);
  return B;
}

struct GaugeRecon {
  bool ok = false;
  Cochain<TPolyQ> F;
  std::vector<Q> obstruction;  // generator coordinate per deformation direction
  std::string note;
};

inline GaugeRecon gauge_reconstruct(const AInf<TPolyQ>& A, const AInf<TPolyQ>& B,
                                    int n, long a) {
  GaugeRecon R;
  R.obstruction.assign(n, Q(0));
  if (A.dim() != B.dim() || A.parity != B.parity) {
    R.note = "incompatible bases";
    return R;
  }
  if (!model_tables_equal(model_r_part(A, 0), model_r_part(B, 0),
                          std::max(A.s_max, B.s_max))) {
    R.note = "order-zero parts differ";
    return R;
  }
  const GradingDatum G{n, a};
  AInf<Q> A0 = model_order_zero(A);
  const auto* actx = [&]() -> const std::shared_ptr<const TCtx>* {
    for (int s = 0; s <= A.s_max; ++s)
      for (const auto& [key, out] : A.mu[s])
        for (const auto& [b, c] : out)
          if (c.ctx) return &c.ctx;
    return nullptr;
  }();
  if (!actx) throw std::invalid_argument("gauge_reconstruct: contextless model");
  R.F.sp = 0;
  bool solvable = true;
  for (int jv = 0; jv < n; ++jv) {
    std::vector<long> c(n, 0);
    c[jv] = 1;
    MuCochainBasis b2 = mu_cochain_basis(G, 2, c, A.s_max);
    MuCochainBasis b1 = mu_cochain_basis(G, 1, c, A.s_max);
    std::vector<Q> rhs(b2.elems.size(), Q(0));
    auto accumulate = [&](const AInf<TPolyQ>& X, const Q& sgn) {
      for (int s = 0; s <= X.s_max; ++s)
        for (const auto& [key, out] : X.mu[s])
          for (const auto& [b, cf] : out)
            for (const auto& [mn, q] : cf.p.t) {
              long rdeg = 0;
              bool mine = (mn[jv] == 1);
              for (int k = 0; k < n; ++k) {
                rdeg += mn[k];
                if (mn[n + k] != 0) mine = false;
              }
              if (rdeg != 1 || !mine) continue;
              auto it = b2.index.find({key, static_cast<uint32_t>(b)});
              if (it == b2.index.end())
                throw std::logic_error("gauge_reconstruct: entry outside the space");
              rhs[it->second] = rhs[it->second] + sgn * q;
            }
    };
    accumulate(B, Q(1));
    accumulate(A, Q(-1));
    std::vector<std::vector<Q>> cols;
    for (size_t i = 0; i < b1.elems.size(); ++i)
      cols.push_back(hodelta_column(A0, b1, i, b2, A.s_max));
    Matrix<Q> M(b2.elems.size());
    for (size_t r = 0; r < b2.elems.size(); ++r) {
      M[r].resize(cols.size(), Q(0));
      for (size_t cI = 0; cI < cols.size(); ++cI) M[r][cI] = cols[cI][r];
    }
    std::vector<Q> sol;
    bool this_ok = true;
    try {
      sol = mat_solve(M, rhs);
    } catch (const std::domain_error&) {
      this_ok = false;
    }
    if (this_ok) {
      const TPolyQ rj = tp_var(*actx, jv, Q(1));
      for (size_t i = 0; i < sol.size(); ++i) {
        if (sol[i] == Q(0)) continue;
        Poly<Q> sc = Poly<Q>::zero((*actx)->nv());
        sc.add_term(Mono((*actx)->nv(), 0), sol[i]);
        R.F.add(static_cast<int>(b1.elems[i].first.size()), b1.elems[i].first,
                b1.elems[i].second, rj * TPolyQ(*actx, std::move(sc)));
      }
    } else {
      solvable = false;
      // residual class: solve with the generator column appended
      const std::pair<std::vector<uint32_t>, uint32_t> gen{
          std::vector<uint32_t>(static_cast<size_t>(a), 1u << jv), 0u};
      auto git = b2.index.find(gen);
      if (git == b2.index.end()) throw std::logic_error("generator entry not enumerated");
      Matrix<Q> Mg = M;
      for (size_t r = 0; r < Mg.size(); ++r)
        Mg[r].push_back(r == git->second ? Q(1) : Q(0));
      try {
        std::vector<Q> sg = mat_solve(Mg, rhs);
        R.obstruction[jv] = sg.back();
      } catch (const std::domain_error&) {
        R.note = "difference class outside the generator span";
        return R;
      }
    }
  }
  if (!solvable) {
    R.note = "obstructed";
    return R;
  }
  R.ok = model_tables_equal(gauge_push(A, R.F), B, A.s_max);
  if (!R.ok) R.note = "solved change fails to reproduce the target";
  return R;
}

// dimension of the residual deformation space in a fixed total r-order:
// closed candidate entries modulo differentials of the gauge space, summed
// over all r-monomials of that order
inline long deformation_class_dim(const GradingDatum& G, const AInf<Q>& A0,
                                  long order, int s_max) {
  std::vector<std::vector<long>> cs;
  std::vector<long> cur(G.n, 0);
  std::function<void(int, long)> gen = [&](int k, long left) {
    if (k == G.n - 1) {
      cur[k] = left;
      cs.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      cur[k] = v;
      gen(k + 1, left - v);
    }
  };
  gen(0, order);
  long dim = 0;
  for (const auto& c : cs) {
    MuCochainBasis b1 = mu_cochain_basis(G, 1, c, s_max);
    MuCochainBasis b2 = mu_cochain_basis(G, 2, c, s_max);
    MuCochainBasis b3 = mu_cochain_basis(G, 3, c, s_max);
    if (b2.elems.empty()) continue;
    Matrix<Q> D1(b2.elems.size());
    for (size_t r = 0; r < b2.elems.size(); ++r) D1[r].resize(b1.elems.size(), Q(0));
    for (size_t i = 0; i < b1.elems.size(); ++i) {
      auto col = hodelta_column(A0, b1, i, b2, s_max);
      for (size_t r = 0; r < col.size(); ++r) D1[r][i] = col[r];
    }
    Matrix<Q> D2(b3.elems.size());
    for (size_t r = 0; r < b3.elems.size(); ++r) D2[r].resize(b2.elems.size(), Q(0));
    for (size_t i = 0; i < b2.elems.size(); ++i) {
      auto col = hodelta_column(A0, b2, i, b3, s_max);
      for (size_t r = 0; r < col.size(); ++r) D2[r][i] = col[r];
    }
    const long rk1 = b1.elems.empty() ? 0 : static_cast<long>(mat_rank(D1));
    const long rk2 = b3.elems.empty() ? 0 : static_cast<long>(mat_rank(D2));
    dim += static_cast<long>(b2.elems.size()) - rk1 - rk2;
  }
  return dim;
}

// ---------------------------------------------------------------------------
// Homotopy transfer.
//
// phi_1 = i'; phi_s = sum over splits of mu^2-dictionary applied to the
// h'-wrapped sub-values (leaves stay i'); the transferred operation is p' of
// phi_s.  In the shifted conventions every wrapped sub-value is an even
// operator, so the only signs are the dictionary's (-1)^{sigma(right factor)}.
// ---------------------------------------------------------------------------

struct MMBounds {
  long rho = 1;    // r-degree cap
  long ucap = -1;  // u-degree cap on intermediates (-1: exact)
  int s_max = 4;   // arity cap
};

struct MinimalCert {
  bool identities = false;   // delta^2 = Ztilde id, sum u_j w_j = Ztilde
  bool dga_ok = false;       // d id = 0, d^2 = 0, odd, sampled Leibniz
  bool contraction_ok = false;
  bool mu1_zero = false;
  bool unit_ok = false;      // i'(xi_0) = id and the transferred unit is strict
  bool wedge_r0 = false;     // order-zero table is the exterior product
  std::vector<Q> wedge_scale;  // realized diagonal rescale (all 1 when exact)
  bool degree_ok = false;    // every entry passes the two grading equations
  AinfReport ainf;
  FirstOrderClass first_order;
  bool stability_ok = true;
  std::string stability_note;
  std::string note;
  bool ok() const {
    return identities && dga_ok && contraction_ok && mu1_zero && unit_ok &&
           wedge_r0 && degree_ok && ainf.ok && first_order.solvable &&
           first_order.pm_one && stability_ok;
  }
};

struct MinimalModel {
  MFCtx ctx;
  AInf<TPolyQ> model;
  MFContraction con;
  MinimalCert cert;
};

namespace detail {

// true if the discrete degrees admit any output class: [S_out] = sum [S_i] -
// c (1,..,1) mod a with a 0/1 vector [S_out]
inline bool mf_gfilter(int n, long a, const std::vector<uint32_t>& key) {
  std::vector<long> g(n, 0);
  for (uint32_t S : key)
    for (int k = 0; k < n; ++k) g[k] += (S >> k) & 1u;
  for (long c = 0; c < a; ++c) {
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      const long v = ((g[k] - c) % a + a) % a;
      if (v != 0 && v != 1) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// true if some homogeneous output (K0, r^c) exists for the tuple
inline bool mf_yfilter(int n, long a, long rho, const std::vector<uint32_t>& key) {
  if (rho < 0) return true;  // no r cap: do not prune
  std::vector<long> N(n, 0);
  for (uint32_t S : key)
    for (int k = 0; k < n; ++k) N[k] += (S >> k) & 1u;
  const long s = static_cast<long>(key.size());
  std::vector<std::vector<long>> cs;
  std::vector<long> cur(n, 0);
  std::function<void(int, long)> gen = [&](int k, long left) {
    if (k == n - 1) {
      cur[k] = left;
      cs.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      cur[k] = v;
      gen(k + 1, left - v);
    }
  };
  const long rmax = rho < 0 ? s : rho;
  for (long tot = 0; tot <= rmax; ++tot) gen(0, tot);
  for (const auto& c : cs) {
    long j = 0;
    for (long e : c) j += e;
    for (uint32_t K0 = 0; K0 < (1u << n); ++K0) {
      const long q = a * c[0] + (K0 & 1u) - N[0];
      bool good = true;
      for (int k = 1; k < n && good; ++k)
        if (a * c[k] + ((K0 >> k) & 1u) - N[k] != q) good = false;
      if (!good) continue;
      if (2 - s == (n - 2) * q + (2 - a) * j) return true;
    }
  }
  return false;
}

struct TransferState {
  const MFContraction* con;
  std::vector<EndElt> leaves;  // i'(xi_S)
  std::map<std::vector<uint32_t>, EndElt> memo;  // h'(phi) per subtuple
};

// mu^2 dictionary on values: (-1)^{sigma(x1)} x2 x1 per component
inline EndElt dict_mu2(const EndElt& x2, const EndElt& x1) {
  EndElt x1s;
  for (const auto& [k, c] : x1) x1s[k] = ekey_parity(k) ? -c : c;
  return end_compose(x2, x1s);
}

inline EndElt tree_phi(TransferState& st, const std::vector<uint32_t>& key);

inline const EndElt& tree_hval(TransferState& st, const std::vector<uint32_t>& key) {
  if (key.size() == 1) return st.leaves[key[0]];
  auto it = st.memo.find(key);
  if (it != st.memo.end()) return it->second;
  EndElt v = st.con->hprime(tree_phi(st, key));
  return st.memo.emplace(key, std::move(v)).first->second;
}

inline int g_tree_sign_mode = 0;

inline EndElt tree_phi(TransferState& st, const std::vector<uint32_t>& key) {
  EndElt acc;
  const size_t s = key.size();
  for (size_t k = 1; k < s; ++k) {
    const EndElt& right = tree_hval(st, {key.begin(), key.begin() + k});
    const EndElt& left = tree_hval(st, {key.begin() + k, key.end()});
    int sL = 0;
    for (size_t i = k; i < s; ++i) sL += std::popcount(key[i]);
    const int nL = int(s - k);
    bool gate = false;
    int xp = 0;
    switch (g_tree_sign_mode) {
      case 1: gate = k >= 2; xp = sL; break;
      case 2: gate = k >= 2; xp = sL + nL; break;
      case 3: gate = (((k >= 2 ? 1 : 0) + int(k) + 1) & 1) != 0; xp = sL; break;
      case 4: gate = (((k >= 2 ? 1 : 0) + int(k) + 1) & 1) != 0; xp = sL + nL; break;
      default: break;
    }
    if (gate && (xp & 1)) {
      EndElt t = dict_mu2(left, right);
      for (auto& [kk, c] : t) c = -c;
      end_acc(acc, t);
    } else {
      end_acc(acc, dict_mu2(left, right));
    }
  }
  return acc;
}

}  // namespace detail

inline MinimalModel minimal_model(int n, long a, const MMBounds& bounds = {},
                                  bool with_stability = true) {
  MinimalModel MM;
  MatFact M = build_K(n, a, bounds.rho, bounds.ucap);
  MM.ctx = M.ctx;
  MM.cert.identities = true;  // build_K postcondition
  EndDgaReport dga = end_dga_check(M);
  MM.cert.dga_ok = dga.ok();
  MM.con = make_contraction(M);
  ContractionReport crep = contraction_check(MM.con, n <= 4 ? 2 : 1);
  MM.cert.contraction_ok = crep.ok();
  if (!MM.cert.dga_ok || !MM.cert.contraction_ok) {
    MM.cert.note = dga.fail + crep.fail;
    return MM;
  }

  const uint32_t N = 1u << n;
  AInf<TPolyQ>& A = MM.model;
  A.sample = mf_one(M.ctx);
  for (uint32_t S = 0; S < N; ++S) {
    A.names.push_back(core_basis_name(n, S));
    A.parity.push_back(std::popcount(S) & 1);
    A.weight.push_back(std::popcount(S));
  }
  A.unit = 0;
  A.set_smax(bounds.s_max);

  detail::TransferState st;
  st.con = &MM.con;
  for (uint32_t S = 0; S < N; ++S) st.leaves.push_back(MM.con.iprime(S));

  // transferred differential (must vanish)
  MM.cert.mu1_zero = true;
  for (uint32_t S = 0; S < N && MM.cert.mu1_zero; ++S) {
    auto coords = MM.con.pprime(end_d(M, st.leaves[S]));
    for (const auto& c : coords)
      if (!c.is_zero()) MM.cert.mu1_zero = false;
  }

  std::vector<uint32_t> key;
  std::function<void(int, int)> roots = [&](int s, int pos) {
    if (pos == s) {
      if (!detail::mf_gfilter(n, a, key)) return;
      if (!detail::mf_yfilter(n, a, bounds.rho, key)) return;
      auto coords = MM.con.pprime(detail::tree_phi(st, key));
      for (uint32_t S = 0; S < N; ++S)
        if (!coords[S].is_zero()) A.add_mu(s, key, S, coords[S]);
      return;
    }
    for (uint32_t b = 0; b < N; ++b) {
      key[pos] = b;
      roots(s, pos + 1);
    }
  };
  for (int s = 2; s <= bounds.s_max; ++s) {
    key.assign(s, 0);
    roots(s, 0);
  }

  // unit: i' takes xi_0 to the identity, and the transferred unit is strict
  MM.cert.unit_ok = end_eq(st.leaves[0], end_id(M.ctx)) && unit_strict(A);

  // order-zero product vs the exterior table, up to a diagonal basis rescale
  {
    AInf<TPolyQ> A0 = model_r_part(A, 0);
    std::vector<Q> lambda(N, Q(1));
    // dictionary form of the exterior product: mu^2(x_T, x_S) =
    // (-1)^{|S|} (-1)^{#{t in T, s in S : t > s}} x_{T u S} for T, S disjoint
    auto wedge_coeff = [&](uint32_t T, uint32_t S) {
      long cross = 0;
      for (int tt = 0; tt < n; ++tt)
        if (T & (1u << tt)) cross += std::popcount(S & ((1u << tt) - 1u));
      int sg = (cross & 1) ? -1 : 1;
      if (std::popcount(S) & 1) sg = -sg;
      return Q(sg);
    };
    bool match = true;
    std::vector<std::vector<Q>> got(N, std::vector<Q>(N, Q(0)));
    for (uint32_t S = 0; S < N && match; ++S)
      for (uint32_t T = 0; T < N && match; ++T) {
        const AElt<TPolyQ>* e = A0.mu_at(2, {S, T});
        if ((T & S) != 0) {
          if (e && !e->empty()) {
            match = false;
            MM.cert.note += " nonzero product on overlapping classes;";
          }
          continue;
        }
        if (!e) {
          match = false;
          MM.cert.note += " missing order-zero product entry;";
          continue;
        }
        for (const auto& [b, cc] : *e) {
          TPolyQ cst = tp_block_part(tp_block_part(cc, 0, 0), 1, 0);
          if (b != (T | S) || !(cst == cc) || cst.is_zero()) {
            match = false;
            MM.cert.note += " stray order-zero product entry;";
            continue;
          }
          got[T][S] = cst.p.t.begin()->second;
        }
        if (match && got[T][S] == Q(0)) match = false;
      }
    if (match) {
      // solve lambda by induction on the class size, then check every pair
      for (uint32_t U = 1; U < N; ++U) {
        const uint32_t T = U & (~U + 1u);  // lowest set bit
        const uint32_t S = U & ~T;
        lambda[U] = lambda[T] * lambda[S] * got[T][S] / wedge_coeff(T, S);
      }
      for (uint32_t S = 0; S < N && match; ++S)
        for (uint32_t T = 0; T < N && match; ++T) {
          if ((T & S) != 0) continue;
          const Q want = wedge_coeff(T, S) * lambda[T | S] / (lambda[T] * lambda[S]);
          if (!(got[T][S] == want)) match = false;
        }
    }
    MM.cert.wedge_r0 = match;
    MM.cert.wedge_scale = lambda;
  }

  // grading: every entry of every table satisfies the two degree equations
  {
    const GradingDatum G{n, a};
    MM.cert.degree_ok = true;
    for (int s = 0; s <= A.s_max && MM.cert.degree_ok; ++s)
      for (const auto& [k, out] : A.mu[s])
        for (const auto& [b, cc] : out)
          for (const auto& [mn, q] : cc.p.t) {
            std::vector<long> re(n, 0);
            bool u0 = true;
            for (int kk = 0; kk < n; ++kk) {
              re[kk] = mn[kk];
              if (mn[n + kk] != 0) u0 = false;
            }
            if (!u0 ||
                !mu_entry_degree(G, k, static_cast<uint32_t>(b), re).homogeneous) {
              MM.cert.degree_ok = false;
              MM.cert.note += " inhomogeneous entry;";
              break;
            }
          }
  }

  // one arity above the bound: the next relation holds with an empty top table
  MM.cert.ainf = ainf_verify(model_with_smax(A, bounds.s_max + 1), 0, bounds.s_max + 1);

  MM.cert.first_order = first_order_class(A, n, a);

  if (with_stability) {
    MM.cert.stability_ok = true;
    MMBounds b1 = bounds;
    b1.rho = bounds.rho + 1;
    MinimalModel M1 = minimal_model(n, a, b1, false);
    if (!model_tables_equal(model_restrict(M1.model, bounds.rho, bounds.s_max),
                            model_restrict(A, bounds.rho, bounds.s_max),
                            bounds.s_max)) {
      MM.cert.stability_ok = false;
      MM.cert.stability_note += "r-degree increment changed reported entries; ";
    }
    if (bounds.ucap >= 0) {
      MMBounds b2 = bounds;
      b2.ucap = 2 * bounds.ucap;
      MinimalModel M2 = minimal_model(n, a, b2, false);
      if (!model_tables_equal(M2.model, A, bounds.s_max)) {
        MM.cert.stability_ok = false;
        MM.cert.stability_note += "u-degree doubling changed entries; ";
      }
    } else {
      MM.cert.stability_note += "u-degrees exact (no cap); ";
    }
    // arity increment cannot feed back into lower tables: the arity-s entry
    // is a sum over trees with s leaves only
    MM.cert.stability_note += "arity increment structural";
  }
  return MM;
}

// ---------------------------------------------------------------------------
// Type conditions and the disk potential.
//
// The reduced model is transplanted to Q[r, v], homotopy units are attached,
// and the potential P'(v) is read off the powers of the odd vector
// v = sum v_j x_j.  The three conditions: order-zero product is the exterior
// algebra; P' is supported on {v_1..v_n, r_j v_j^a} with unit coefficients
// and matches Ztilde after a diagonal sign change; the model is flat
// (mu^0 = 0) with vanishing differential.
// ---------------------------------------------------------------------------

struct TypeReport {
  MinimalModel mm;
  bool flat = false;
  bool mu1_zero = false;
  bool wedge_r0 = false;
  bool powers_unit = false;
  bool mc_zero = false;
  TPolyQ potential;  // over r_1..r_n, v_1..v_n
  bool potential_matches = false;
  std::vector<int> v_signs;  // realized diagonal signs on the v's
  std::vector<int> r_signs;  // realized signs on the deformation directions
  bool w_total_matches = false;
  std::string note;
  bool ok() const {
    return flat && mu1_zero && wedge_r0 && powers_unit && mc_zero &&
           potential_matches && w_total_matches;
  }
};

inline TypeReport type_check_and_disk_potential(int n, long a,
                                                const MMBounds& bounds = {}) {
  TypeReport rep;
  rep.mm = minimal_model(n, a, bounds, false);
  const AInf<TPolyQ>& A = rep.mm.model;
  rep.flat = A.mu[0].empty();
  rep.mu1_zero = rep.mm.cert.mu1_zero && A.mu[1].empty();
  rep.wedge_r0 = rep.mm.cert.wedge_r0;

  // coefficient ring Q[r, v]
  VarTable vt;
  for (int j = 0; j < n; ++j) vt.names.push_back("r" + std::to_string(j + 1));
  for (int j = 0; j < n; ++j) vt.names.push_back("v" + std::to_string(j + 1));
  std::vector<int> block(2 * n, 0);
  for (int j = 0; j < n; ++j) block[n + j] = 1;
  auto vctx = make_tctx(vt.names, block, {bounds.rho, -1});

  AInf<TPolyQ> Av;
  Av.names = A.names;
  Av.parity = A.parity;
  Av.weight = A.weight;
  Av.unit = A.unit;
  Av.sample = tp_const(vctx, Q(1));
  Av.set_smax(A.s_max);
  for (int s = 0; s <= A.s_max; ++s)
    for (const auto& [k, out] : A.mu[s])
      for (const auto& [b, cc] : out) {
        Poly<Q> p = Poly<Q>::zero(2 * n);
        for (const auto& [mn, q] : cc.p.t) {
          for (int kk = 0; kk < n; ++kk)
            if (mn[n + kk] != 0)
              throw std::logic_error("type check: reduced entry with u-dependence");
          Mono mm(2 * n, 0);
          for (int kk = 0; kk < n; ++kk) mm[kk] = mn[kk];
          p.add_term(mm, q);
        }
        Av.add_mu(s, k, b, TPolyQ(vctx, std::move(p)));
      }

  HUExt<TPolyQ> H = extend_homotopy_units(Av, /*e_idx=*/0);
  AElt<TPolyQ> v;
  for (int j = 0; j < n; ++j)
    ae_add(v, static_cast<size_t>(1u << j), tp_var(vctx, n + j, Q(1)));
  DiskReport<TPolyQ> disk = disk_potential(H, v);
  rep.powers_unit = disk.powers_unit;
  rep.mc_zero = disk.mc_zero;
  rep.potential = disk.potential;
  if (!disk.fail.empty()) rep.note += disk.fail + ";";

  // compare with Ztilde(v) monomial-wise, allowing v_j -> s_j v_j and
  // sign flips of the deformation directions
  rep.v_signs.assign(n, 1);
  rep.r_signs.assign(n, 1);
  {
    Mono top(2 * n, 0);
    for (int j = 0; j < n; ++j) top[n + j] = 1;
    std::map<Mono, Q> want;
    want[top] = Q(-1);
    std::vector<Mono> rterm(n, Mono(2 * n, 0));
    for (int j = 0; j < n; ++j) {
      rterm[j][j] = 1;
      rterm[j][n + j] = static_cast<int>(a);
      want[rterm[j]] = Q(1);
    }
    bool support_ok = !rep.potential.is_zero();
    std::map<Mono, Q> gotm;
    for (const auto& [mn, q] : rep.potential.p.t) {
      if (want.find(mn) == want.end()) support_ok = false;
      if (!(q == Q(1) || q == Q(-1))) support_ok = false;
      gotm[mn] = q;
    }
    for (const auto& [mn, q] : want)
      if (gotm.find(mn) == gotm.end()) support_ok = false;
    if (support_ok) {
      // flip v signs to fix the top coefficient, r signs for the rest
      if (gotm[top] == Q(1)) rep.v_signs[0] = -1;
      for (int j = 0; j < n; ++j) {
        Q c = gotm[rterm[j]];
        if (rep.v_signs[j] < 0 && (a % 2) != 0) c = -c;
        rep.r_signs[j] = (c == Q(1)) ? 1 : -1;
      }
      // verify: applying both sign changes turns the potential into Ztilde
      Q topc = gotm[top];
      for (int j = 0; j < n; ++j)
        if (rep.v_signs[j] < 0) topc = -topc;
      bool fixed = (topc == Q(-1));
      for (int j = 0; j < n; ++j) {
        Q c = gotm[rterm[j]];
        if (rep.v_signs[j] < 0) {
          for (long t = 0; t < a; ++t) c = -c;
        }
        if (rep.r_signs[j] < 0) c = -c;
        if (!(c == Q(1))) fixed = false;
      }
      rep.potential_matches = fixed;
    }
  }

  // total at r = 1 against the fiber potential, under the realized signs
  {
    std::map<int, Q> ones;
    for (int j = 0; j < n; ++j) ones[j] = Q(1);
    TPolyQ spec = tp_eval_vars(rep.potential, ones);
    Poly<Q> adj = Poly<Q>::zero(2 * n);
    for (const auto& [mn, q] : spec.p.t) {
      Q c = q;
      for (int j = 0; j < n; ++j) {
        if (rep.v_signs[j] < 0 && (mn[n + j] % 2) != 0) c = -c;
        if (rep.r_signs[j] < 0 && mn[n + j] == static_cast<int>(a) &&
            mono_total(mn) == a)
          c = -c;  // undo the recorded deformation-direction flip
      }
      adj.add_term(mn, c);
    }
    Poly<Q> fib = Poly<Q>::zero(2 * n);
    for (const auto& [mn, q] : undeformed_potential(n, a).t) {
      Mono mm(2 * n, 0);
      for (int k = 0; k < n; ++k) mm[n + k] = mn[k];
      fib.add_term(mm, q);
    }
    rep.w_total_matches = (adj == fib);
  }
  return rep;
}

}  // namespace lgalg
