#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace lgalg {

// Grading group Y = (Z + Z^n) / <(2(a-n), (1,...,1))>, elements written as a
// pair (t, c) with the canonical representative having min_j c_j = 0.
struct GradingDatum {
  int n = 0;
  long a = 0;
};

struct YDeg {
  long t = 0;
  std::vector<long> c;

  friend bool operator==(const YDeg& x, const YDeg& y) { return x.t == y.t && x.c == y.c; }
};

inline YDeg normalize_degree(const GradingDatum& G, YDeg d) {
  if (static_cast<int>(d.c.size()) != G.n) throw std::domain_error("degree arity mismatch");
  long mn = *std::min_element(d.c.begin(), d.c.end());
  long k = -mn;  // add k copies of the relation (2(a-n), 1)
  d.t += 2 * (G.a - G.n) * k;
  for (auto& x : d.c) x += k;
  return d;
}

// Parity: t mod 2 is relation-invariant since 2(a-n) is even.
inline int sigma_parity(const YDeg& d) {
  return static_cast<int>(((d.t % 2) + 2) % 2);
}

inline YDeg deg_r(const GradingDatum& G, int j) {
  YDeg d{2 - 2 * G.a, std::vector<long>(G.n, 0)};
  d.c[j] = G.a;
  return normalize_degree(G, d);
}

inline YDeg deg_u(const GradingDatum& G, int j) {
  YDeg d{-1, std::vector<long>(G.n, 0)};
  d.c[j] = 1;
  return normalize_degree(G, d);
}

inline YDeg deg_theta(const GradingDatum& G, int k) { return deg_u(G, k); }

// Degree of the polyvector r^cexp u^bexp theta^K.
inline YDeg monomial_degree(const GradingDatum& G, const std::vector<long>& cexp,
                            const std::vector<long>& bexp, const std::vector<int>& K) {
  YDeg d{0, std::vector<long>(G.n, 0)};
  long j = 0, ub = 0;
  for (int i = 0; i < G.n; ++i) {
    j += cexp[i];
    ub += bexp[i];
    d.c[i] += G.a * cexp[i] + bexp[i];
  }
  for (int k : K) d.c[k] += 1;
  d.t = (2 - 2 * G.a) * j - ub - static_cast<long>(K.size());
  return normalize_degree(G, d);
}

// Map to the hyperplane-type datum with a = 1: (t, c) -> (t + 2(1-a)*sum c, a*c).
inline YDeg degree_to_hyperplane(const GradingDatum& G, const YDeg& d) {
  GradingDatum H{G.n, 1};
  YDeg out{d.t, d.c};
  long sc = 0;
  for (long x : d.c) sc += x;
  out.t += 2 * (1 - G.a) * sc;
  for (auto& x : out.c) x *= G.a;
  return normalize_degree(H, out);
}

// Character group of the covering: vectors z in (Z/a)^n with sum z = 0,
// a^(n-1) of them, in lexicographic order.
inline std::vector<std::vector<long>> gamma_star(int n, long a) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(n, 0);
  while (true) {
    long s = 0;
    for (int i = 0; i < n - 1; ++i) s += cur[i];
    cur[n - 1] = ((a - s % a) % a + a) % a;
    out.push_back(cur);
    int i = n - 2;
    while (i >= 0 && ++cur[i] == a) cur[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// Length-s Hochschild cochain supports in degree s+t: inputs are b_k copies of
// the k-th odd generator plus an optional distinguished product input over K1,
// the output is r^c theta^{K0}. Degree bookkeeping reduces to the system
//   b_k = a*c_k + [k in K0] - [k in K1] - q  >= 0,    j = sum c,
//   t = (n-2)*q + (2-a)*j,                            s = |b| + (K1 ? 1 : 0),
// with q the winding multiple of the grading relation.
struct CochainSupport {
  std::vector<long> c;
  std::vector<long> b;
  std::vector<int> K0, K1;
  bool has_K1 = false;
  long q = 0, j = 0, t = 0, s = 0;
};

struct EnumBounds {
  long max_abs_q = 0, max_j = 0, max_len = 0;  // zeros = use defaults 2n, 2n, 2n
};

inline std::vector<CochainSupport> enumerate_cochain_supports(const GradingDatum& G, long t_target,
                                                              EnumBounds bounds = {}) {
  const int n = G.n;
  const long a = G.a;
  const long qmax = bounds.max_abs_q > 0 ? bounds.max_abs_q : 2 * n;
  const long jmax = bounds.max_j > 0 ? bounds.max_j : 2 * n;
  const long lmax = bounds.max_len > 0 ? bounds.max_len : 2 * n;
  std::vector<CochainSupport> out;

  std::vector<std::vector<int>> subsets;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> S;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) S.push_back(k);
    subsets.push_back(S);
  }

  for (long q = -qmax; q <= qmax; ++q) {
    std::vector<long> js;
    if (a != 2) {
      long num = t_target - (n - 2) * q;
      if (num % (2 - a) != 0) continue;
      long j = num / (2 - a);
      if (j < 0 || j > jmax) continue;
      js.push_back(j);
    } else {
      if (t_target != (n - 2) * q) continue;
      for (long j = 0; j <= jmax; ++j) js.push_back(j);
    }
    for (long j : js)
      for (const auto& K0 : subsets)
        for (size_t k1i = 0; k1i < subsets.size(); ++k1i) {
          const auto& K1 = subsets[k1i];
          // a singleton product input is an ordinary single-generator input
          // and is already counted through b
          if (K1.size() == 1) continue;
          const bool hasK1 = !K1.empty();
          long s = a * j + static_cast<long>(K0.size()) - static_cast<long>(K1.size()) +
                   (hasK1 ? 1 : 0) - n * q;
          if (s < 0 || s > lmax) continue;
          std::vector<long> inK0(n, 0), inK1(n, 0);
          for (int k : K0) inK0[k] = 1;
          for (int k : K1) inK1[k] = 1;
          // c_k >= lb_k so that b_k >= 0
          std::vector<long> lb(n, 0);
          long lbsum = 0;
          bool bad = false;
          for (int k = 0; k < n; ++k) {
            long need = q + inK1[k] - inK0[k];
            lb[k] = need <= 0 ? 0 : (need + a - 1) / a;
            lbsum += lb[k];
            if (lb[k] < 0) bad = true;
          }
          if (bad || lbsum > j) continue;
          // weak compositions of j - lbsum on top of the lower bounds
          const long rem = j - lbsum;
          std::vector<long> extra(n, 0);
          auto emit = [&]() {
            CochainSupport cs;
            cs.c.resize(n);
            cs.b.assign(n, 0);
            long bsum = 0;
            for (int k = 0; k < n; ++k) {
              cs.c[k] = lb[k] + extra[k];
              cs.b[k] = a * cs.c[k] + inK0[k] - inK1[k] - q;
              bsum += cs.b[k];
            }
            cs.K0 = K0;
            cs.K1 = K1;
            cs.has_K1 = hasK1;
            cs.q = q;
            cs.j = j;
            cs.t = t_target;
            cs.s = bsum + (hasK1 ? 1 : 0);
            if (cs.s <= lmax) out.push_back(cs);
          };
          auto rec = [&](auto&& self, int k, long left) -> void {
            if (k == n - 1) {
              extra[k] = left;
              emit();
              return;
            }
            for (long v = 0; v <= left; ++v) {
              extra[k] = v;
              self(self, k + 1, left - v);
            }
          };
          rec(rec, 0, rem);
        }
  }
  std::sort(out.begin(), out.end(), [](const CochainSupport& x, const CochainSupport& y) {
    if (x.q != y.q) return x.q < y.q;
    if (x.c != y.c) return x.c < y.c;
    if (x.K0 != y.K0) return x.K0 < y.K0;
    return x.K1 < y.K1;
  });
  return out;
}

// Homogeneity test for a product-table entry mu^s(theta^{J_s},..,theta^{J_1})
// containing r^c theta^{K0}.  Homogeneous iff for a single integer q
//     a*c_k + [k in K0] - #{inputs containing k} = q     for every k,
// and  2 - s = (n-2)*q + (2-a)*sum(c).
struct MuDegreeReport {
  bool homogeneous = false;
  long q = 0;  // common defect of the exponent equations
  long j = 0;  // total r-order of the output coefficient
};

inline MuDegreeReport mu_entry_degree(const GradingDatum& G,
                                      const std::vector<uint32_t>& in_masks,
                                      uint32_t out_mask,
                                      const std::vector<long>& r_exp) {
  if (static_cast<int>(r_exp.size()) != G.n)
    throw std::domain_error("mu_entry_degree: r-exponent arity mismatch");
  MuDegreeReport rep;
  for (long e : r_exp) rep.j += e;
  const long s = static_cast<long>(in_masks.size());
  bool first = true;
  for (int k = 0; k < G.n; ++k) {
    long v = G.a * r_exp[k] + ((out_mask >> k) & 1u);
    for (uint32_t J : in_masks) v -= (J >> k) & 1u;
    if (first) {
      rep.q = v;
      first = false;
    } else if (v != rep.q) {
      return rep;
    }
  }
  rep.homogeneous = (2 - s == (G.n - 2) * rep.q + (2 - G.a) * rep.j);
  return rep;
}

}  // namespace lgalg
