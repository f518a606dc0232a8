#pragma once

#include <vector>

#include "groebner.hpp"
#include "poly.hpp"

namespace lgalg {

// The deformation family lives in Q[r_1..r_n, u_1..u_n]: variables 0..n-1 are
// the r's, n..2n-1 the u's. The potential is
//   -u_1...u_n + sum_j r_j u_j^a,
// its fiber at r = 1 the one-parameter potential on Q[u].

inline Poly<Q> deformed_potential(int n, long a) {
  Poly<Q> p(2 * n);
  Mono top(2 * n, 0);
  for (int j = 0; j < n; ++j) top[n + j] = 1;
  p.add_term(top, Q(-1));
  for (int j = 0; j < n; ++j) {
    Mono m(2 * n, 0);
    m[j] = 1;
    m[n + j] = static_cast<int>(a);
    p.add_term(m, Q(1));
  }
  return p;
}

inline Poly<Q> undeformed_potential(int n, long a) {
  Poly<Q> p(n);
  Mono top(n, 1);
  p.add_term(top, Q(-1));
  for (int j = 0; j < n; ++j) {
    Mono m(n, 0);
    m[j] = static_cast<int>(a);
    p.add_term(m, Q(1));
  }
  return p;
}

// Additive constant w of the full potential: -a! in the Fano-index-one case
// a = n-1, zero otherwise.
inline Q scalar_correction(int n, long a) {
  if (a != n - 1) return Q(0);
  Q f(1);
  for (long k = 2; k <= a; ++k) f *= Q(k);
  return -f;
}

inline std::vector<Poly<Q>> deformed_partials(int n, long a) {
  Poly<Q> Z = deformed_potential(n, a);
  std::vector<Poly<Q>> out;
  for (int j = 0; j < n; ++j) out.push_back(Z.derivative(n + j));
  return out;
}

inline std::vector<Poly<Q>> potential_partials(int n, long a) {
  Poly<Q> Z = undeformed_potential(n, a);
  std::vector<Poly<Q>> out;
  for (int j = 0; j < n; ++j) out.push_back(Z.derivative(j));
  return out;
}

// r-block eliminates first: under this order the u-partials have pairwise
// coprime heads a r_j u_j^(a-1) and are a basis as they stand.
inline MonoOrder order_r_elim(int n) {
  return order_elim(iota_vars(n, 0), iota_vars(n, n));
}

// u-block graded with lex tiebreak u_n > ... > u_1, then the r-block.
inline MonoOrder order_u_hom_ru(int n) {
  std::vector<int> uv;
  for (int j = n - 1; j >= 0; --j) uv.push_back(n + j);
  return {{OrderBlock{uv, true}, OrderBlock{iota_vars(n, 0), true}}};
}

inline MonoOrder order_u_hom(int n) {
  std::vector<int> uv;
  for (int j = n - 1; j >= 0; --j) uv.push_back(j);
  return {{OrderBlock{uv, true}}};
}

// Closed-form basis of the partial-derivative ideal after the diagonal
// rescaling r -> r/a, written with head terms first:
//   (1)  u_2...u_n - r_1 u_1^(a-1)
//   (2)  r_j u_j^a - r_1 u_1^a                      for j != 1
//   (3)  (r_1 u_1^a)^(|Kc|-1) u_K - r_Kc u_Kc^(a-1) for 1 in K, K proper,
// with Kc the complement of K. Counts 1 + (n-1) + (2^(n-1) - 1).
inline std::vector<Poly<Q>> shape_family(int n, long a) {
  const int N = 2 * n;
  std::vector<Poly<Q>> F;
  auto term = [&](const Mono& m, const Q& c) { return Poly<Q>::monomial(N, m, c); };
  {
    Mono h(N, 0), t(N, 0);
    for (int k = 1; k < n; ++k) h[n + k] = 1;
    t[0] = 1;
    t[n] = static_cast<int>(a - 1);
    F.push_back(term(h, Q(1)) - term(t, Q(1)));
  }
  for (int j = 1; j < n; ++j) {
    Mono h(N, 0), t(N, 0);
    h[j] = 1;
    h[n + j] = static_cast<int>(a);
    t[0] = 1;
    t[n] = static_cast<int>(a);
    F.push_back(term(h, Q(1)) - term(t, Q(1)));
  }
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    // K = {1} united with the mask over {2..n}, proper
    std::vector<int> K{0};
    for (int k = 1; k < n; ++k)
      if (mask & (1 << (k - 1))) K.push_back(k);
    if (static_cast<int>(K.size()) == n) continue;
    std::vector<bool> inK(n, false);
    for (int k : K) inK[k] = true;
    const int kc = n - static_cast<int>(K.size());
    Mono h(N, 0), t(N, 0);
    h[0] = kc - 1;
    h[n] = static_cast<int>(a) * (kc - 1);
    for (int k : K) h[n + k] += 1;
    for (int k = 0; k < n; ++k)
      if (!inK[k]) {
        t[k] = 1;
        t[n + k] = static_cast<int>(a - 1);
      }
    F.push_back(term(h, Q(1)) - term(t, Q(1)));
  }
  return F;
}

// Apply the diagonal substitution r_j -> rho_j r_j, u_j -> lam_j u_j.
inline Poly<Q> diagonal_rescale(const Poly<Q>& f, int n, const std::vector<Q>& rho,
                                const std::vector<Q>& lam) {
  Poly<Q> out(2 * n);
  for (const auto& [m, c] : f.t) {
    Q s = c;
    for (int j = 0; j < n; ++j) {
      for (int e = 0; e < m[j]; ++e) s *= rho[j];
      for (int e = 0; e < m[n + j]; ++e) s *= lam[j];
    }
    out.add_term(m, s);
  }
  return out;
}

struct FamilyReport {
  bool buchberger_ok = false;
  GroebnerCertificate cert;
  std::vector<Q> rho;       // solved rescaling of the r's (u's stay fixed)
  bool rescale_solved = false;
  bool family_in_partials = false;
  bool partials_in_family = false;
  bool ok() const {
    return buchberger_ok && rescale_solved && family_in_partials && partials_in_family;
  }
};

// Checks that the closed-form family is a basis with respect to the
// u-homogeneous order and generates exactly the rescaled partial ideal:
// solve the diagonal rescaling from proportionality of the two-term
// generators, then certify equality by normal forms in both directions.
inline FamilyReport verify_shape_family(int n, long a) {
  FamilyReport rep;
  MonoOrder uord = order_u_hom_ru(n);
  MonoOrder rord = order_r_elim(n);
  auto F = shape_family(n, a);
  rep.cert = certify_groebner(F, uord);
  rep.buchberger_ok = rep.cert.ok;

  // solve rho_j from  d_j(rho.r, u) ~ u_{j-complement} - r_j u_j^(a-1)
  auto partials = deformed_partials(n, a);
  rep.rho.assign(n, Q(0));
  rep.rescale_solved = true;
  for (int j = 0; j < n; ++j) {
    // d_j = -u_bar_j + a r_j u_j^(a-1); target shape u_bar_j - r_j u_j^(a-1)
    Mono rterm(2 * n, 0);
    rterm[j] = 1;
    rterm[n + j] = static_cast<int>(a - 1);
    Mono uterm(2 * n, 0);
    for (int k = 0; k < n; ++k)
      if (k != j) uterm[n + k] = 1;
    auto cr = partials[j].t.find(rterm);
    auto cu = partials[j].t.find(uterm);
    if (cr == partials[j].t.end() || cu == partials[j].t.end() || partials[j].nterms() != 2) {
      rep.rescale_solved = false;
      continue;
    }
    // want rho_j * cr = -cu, the ratio making both coefficients match up to
    // the overall sign of the shape
    rep.rho[j] = Q(-cu->second / cr->second);
  }
  if (!rep.rescale_solved) return rep;

  std::vector<Q> lam(n, Q(1));
  std::vector<Poly<Q>> scaled;
  for (const auto& p : partials) scaled.push_back(diagonal_rescale(p, n, rep.rho, lam));

  // scaled partials have coprime heads under r-elimination: a basis as given
  rep.partials_in_family = true;
  for (const auto& p : scaled)
    if (!ideal_contains(p, F, uord)) rep.partials_in_family = false;
  rep.family_in_partials = true;
  for (const auto& f : F)
    if (!ideal_contains(f, scaled, rord)) rep.family_in_partials = false;
  return rep;
}

// r_1 u_1^a, the distinguished degree-two class of the deformed ring.
inline Poly<Q> beta_tilde(int n, long a) {
  Mono m(2 * n, 0);
  m[0] = 1;
  m[n] = static_cast<int>(a);
  return Poly<Q>::monomial(2 * n, m, Q(1));
}

inline Poly<Q> top_monomial_ru(int n) {
  Mono m(2 * n, 0);
  for (int j = 0; j < n; ++j) m[n + j] = 1;
  return Poly<Q>::monomial(2 * n, m, Q(1));
}

inline Poly<Q> r_product(int n) {
  Mono m(2 * n, 0);
  for (int j = 0; j < n; ++j) m[j] = 1;
  return Poly<Q>::monomial(2 * n, m, Q(1));
}

// beta^(n-1) - a^a (r_1...r_n) beta^(a-1) evaluated on the class above.
inline Poly<Q> beta_min_poly_deformed(int n, long a) {
  Poly<Q> b = beta_tilde(n, a);
  Q aa(1);
  for (long k = 0; k < a; ++k) aa *= Q(a);
  return b.pow(n - 1) - r_product(n).scaled(aa) * b.pow(a - 1);
}

// (1/a) u_1...u_n in Q[u].
inline Poly<Q> beta_bar(int n, long a) {
  Mono m(n, 1);
  return Poly<Q>::monomial(n, m, Q(1) / Q(a));
}

// x^(n-1) - a^a x^(a-1) composed with f.
inline Poly<Q> min_poly_at(int n, long a, const Poly<Q>& f) {
  Q aa(1);
  for (long k = 0; k < a; ++k) aa *= Q(a);
  return f.pow(n - 1) - f.pow(a - 1).scaled(aa);
}

// Reduced basis of the fiber Jacobian ideal in Q[u].
inline std::vector<Poly<Q>> fiber_jacobian_basis(int n, long a, const MonoOrder& ord) {
  return groebner_basis(potential_partials(n, a), ord);
}

inline size_t fiber_milnor_number(int n, long a) {
  MonoOrder ord = order_grlex(n);
  auto G = fiber_jacobian_basis(n, a, ord);
  return standard_monomials(G, ord).size();
}

}  // namespace lgalg

#include "linalg.hpp"

namespace lgalg {

// The fiber quotient splits as (local algebra at the origin) x (semisimple
// part at the nonzero critical points). Multiplication by beta is nilpotent
// on the first factor and invertible on the second, so the column space of a
// stabilized power of its matrix is exactly the second factor. Membership of
// f in the local ideal at the origin is then a rank condition.
struct OriginLocalData {
  MonoOrder ord;
  std::vector<Poly<Q>> G;
  std::vector<Mono> basis;
  Matrix<Q> stab;       // M_beta^dim
  size_t stab_rank = 0;
  size_t mu0 = 0;       // origin multiplicity
};

inline OriginLocalData origin_local(int n, long a) {
  OriginLocalData D;
  D.ord = order_grlex(n);
  D.G = fiber_jacobian_basis(n, a, D.ord);
  D.basis = standard_monomials(D.G, D.ord);
  auto M = multiplication_matrix(beta_bar(n, a), D.G, D.ord, D.basis, Q(0));
  Matrix<Q> P = mat_identity(D.basis.size(), Q(1));
  for (size_t k = 0; k < D.basis.size(); ++k) P = mat_mul(P, M);
  D.stab = P;
  D.stab_rank = mat_rank(P);
  D.mu0 = D.basis.size() - D.stab_rank;
  return D;
}

inline bool in_origin_local_ideal(const OriginLocalData& D, const Poly<Q>& f) {
  auto v = nf_coords(f, D.G, D.ord, D.basis, Q(0));
  Matrix<Q> aug = D.stab;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(v[i]);
  return mat_rank(aug) == D.stab_rank;
}

}  // namespace lgalg
