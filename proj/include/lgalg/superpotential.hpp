#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "grading.hpp"
#include "jacobian.hpp"
#include "linalg.hpp"

namespace lgalg {

// Critical locus of the fiber potential -u_1...u_n + sum u_j^a + w. All
// nonzero critical points have coordinates u_j = s zeta_M^e with s^(n-a) = a
// and M = a(n-a), so everything lives in the etale ring Q(zeta_M)[s]/(s^(n-a)-a).

struct CriticalPoint {
  long k = 0;                  // which branch of the value xi_k
  std::vector<long> m;         // exponent pattern, sum m = -k mod a
  std::vector<Ext> u;          // coordinates
  Ext value;                   // potential value including the constant w
};

struct CriticalLocus {
  int n = 0;
  long a = 0;
  EtaleRef ring;
  std::vector<CriticalPoint> small_points;  // grouped by k, then lex in m
  std::vector<Ext> branch_values;           // xi-derived value per k, with w added
};

inline EtaleRef critical_ring(int n, long a) {
  return EtaleCtx::make_radical(a * (n - a), static_cast<int>(n - a), Q(a));
}

inline CriticalLocus critical_locus(int n, long a) {
  CriticalLocus L;
  L.n = n;
  L.a = a;
  L.ring = critical_ring(n, a);
  const long d = n - a;
  const long M = a * d;
  Ext s = ext_s(L.ring), zM = ext_zeta(L.ring);
  Ext w = Ext(L.ring, scalar_correction(n, a));
  for (long k = 0; k < d; ++k) {
    // xi_k = s^a zeta_(n-a)^k, critical value (n-a) xi_k + w
    Ext xi = ext_pow(s, a) * ext_pow(zM, (a * k) % M);
    L.branch_values.push_back(Ext(L.ring, Q(d)) * xi + w);
  }
  // enumerate m in (Z/a)^n with sum m = -k (mod a)
  std::vector<long> m(n, 0);
  for (long k = 0; k < d; ++k) {
    std::fill(m.begin(), m.end(), 0);
    while (true) {
      long sum = 0;
      for (int j = 0; j < n - 1; ++j) sum += m[j];
      m[n - 1] = ((-k - sum) % a + a) % a;
      CriticalPoint p;
      p.k = k;
      p.m = m;
      for (int j = 0; j < n; ++j) {
        long e = (k + d * m[j]) % M;
        p.u.push_back(s * ext_pow(zM, (e + M) % M));
      }
      p.value = L.branch_values[k];
      L.small_points.push_back(p);
      int j = n - 2;
      while (j >= 0 && ++m[j] == a) m[j--] = 0;
      if (j < 0) break;
    }
  }
  return L;
}

// Gradient of the full fiber potential at a point, as exact ring elements.
inline std::vector<Ext> gradient_at(int n, long a, const std::vector<Ext>& u) {
  auto partials = potential_partials(n, a);
  std::vector<Ext> out;
  for (const auto& p : partials) {
    auto pe = p.map_coeffs<Ext>([&u](const Q& c) { return Ext(u[0].ctx, c); });
    out.push_back(pe.eval(u));
  }
  return out;
}

inline Ext value_at(int n, long a, const std::vector<Ext>& u) {
  auto Z = undeformed_potential(n, a);
  auto Ze = Z.map_coeffs<Ext>([&u](const Q& c) { return Ext(u[0].ctx, c); });
  return Ze.eval(u) + Ext(u[0].ctx, scalar_correction(n, a));
}

inline Matrix<Ext> hessian_at(int n, long a, const std::vector<Ext>& u) {
  auto Z = undeformed_potential(n, a);
  Matrix<Ext> H(n, std::vector<Ext>(n, Ext(u[0].ctx)));
  for (int i = 0; i < n; ++i) {
    auto di = Z.derivative(i);
    for (int j = 0; j < n; ++j) {
      auto dij = di.derivative(j).map_coeffs<Ext>([&u](const Q& c) { return Ext(u[0].ctx, c); });
      H[i][j] = dij.eval(u);
    }
  }
  return H;
}

inline bool hessian_nondegenerate(const Matrix<Ext>& H) {
  Ext d = mat_det(H);
  if (kv_is_zero(d)) return false;
  EData factor;
  return H[0][0].ctx->try_inverse(d.v, &factor).has_value();
}

// gamma acts by u_j -> zeta_a^(gamma_j) u_j.
inline std::vector<Ext> act_on_point(const EtaleRef& R, int n, long a,
                                     const std::vector<long>& gamma,
                                     const std::vector<Ext>& u) {
  const long M = R->N;
  Ext zM = ext_zeta(R);
  std::vector<Ext> out;
  for (int j = 0; j < n; ++j) {
    long e = ((M / a) * gamma[j]) % M;
    out.push_back(ext_pow(zM, (e + M) % M) * u[j]);
  }
  return out;
}

inline std::string point_key(const std::vector<Ext>& u) {
  std::string k;
  for (const auto& x : u) k += kv_str(x) + ";";
  return k;
}

struct OrbitReport {
  bool free_action = true;
  bool transitive = true;
};

// The character group acts on each constant-value fiber; check the action is
// free and transitive fiber by fiber.
inline OrbitReport orbit_structure(const CriticalLocus& L) {
  OrbitReport rep;
  auto gammas = gamma_star(L.n, L.a);
  const long d = L.n - L.a;
  for (long k = 0; k < d; ++k) {
    std::map<std::string, int> fiber;
    const CriticalPoint* first = nullptr;
    for (const auto& p : L.small_points)
      if (p.k == k) {
        fiber[point_key(p.u)] += 1;
        if (!first) first = &p;
      }
    for (const auto& [key, cnt] : fiber)
      if (cnt != 1) rep.free_action = false;  // duplicate points
    std::map<std::string, int> orbit;
    for (const auto& g : gammas) {
      auto moved = act_on_point(L.ring, L.n, L.a, g, first->u);
      orbit[point_key(moved)] += 1;
    }
    for (const auto& [key, cnt] : orbit)
      if (cnt != 1) rep.free_action = false;  // stabilizer nontrivial
    if (orbit.size() != fiber.size()) rep.transitive = false;
    for (const auto& [key, cnt] : fiber)
      if (orbit.find(key) == orbit.end()) rep.transitive = false;
  }
  return rep;
}

struct CompletenessReport {
  size_t quotient_dim = 0;       // dim of Q[u]/ideal of partials
  size_t origin_multiplicity = 0;  // generalized kernel of multiplication by beta
  size_t enumerated_smalls = 0;
  bool complete() const { return quotient_dim == origin_multiplicity + enumerated_smalls; }
};

// Exact count certificate: the quotient dimension splits as the origin
// multiplicity plus one for each nonzero critical point, so matching the
// enumeration proves it complete with all multiplicities one.
inline CompletenessReport critical_completeness(int n, long a) {
  CompletenessReport rep;
  MonoOrder ord = order_grlex(n);
  auto G = fiber_jacobian_basis(n, a, ord);
  auto B = standard_monomials(G, ord);
  rep.quotient_dim = B.size();
  auto M = multiplication_matrix(beta_bar(n, a), G, ord, B, Q(0));
  rep.origin_multiplicity = generalized_kernel_dim(M);
  CriticalLocus L = critical_locus(n, a);
  rep.enumerated_smalls = L.small_points.size();
  return rep;
}

}  // namespace lgalg
