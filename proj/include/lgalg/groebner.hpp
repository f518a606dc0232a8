#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace lgalg {

// Full normal form (head and tail reduction) of f against basis G.
template <class K>
Poly<K> normal_form(Poly<K> f, const std::vector<Poly<K>>& G, const MonoOrder& ord) {
  Poly<K> r(f.nvars);
  while (!f.is_zero()) {
    auto* lt = poly_lead(f, ord);
    bool reduced = false;
    for (const auto& g : G) {
      if (g.is_zero()) continue;
      auto* lg = poly_lead(g, ord);
      if (!mono_divides(lg->first, lt->first)) continue;
      K c = lt->second * kv_inv(lg->second);
      f -= g.scaled(c) * Poly<K>::monomial(f.nvars, mono_div(lt->first, lg->first), kv_int(c, 1));
      reduced = true;
      break;
    }
    if (!reduced) {
      r.add_term(lt->first, lt->second);
      Poly<K> head = Poly<K>::monomial(f.nvars, lt->first, lt->second);
      f -= head;
    }
  }
  return r;
}

template <class K>
Poly<K> s_polynomial(const Poly<K>& f, const Poly<K>& g, const MonoOrder& ord) {
  auto* lf = poly_lead(f, ord);
  auto* lg = poly_lead(g, ord);
  Mono l = mono_lcm(lf->first, lg->first);
  Poly<K> mf = Poly<K>::monomial(f.nvars, mono_div(l, lf->first), kv_inv(lf->second));
  Poly<K> mg = Poly<K>::monomial(g.nvars, mono_div(l, lg->first), kv_inv(lg->second));
  return mf * f - mg * g;
}

template <class K>
Poly<K> make_monic(const Poly<K>& f, const MonoOrder& ord) {
  if (f.is_zero()) return f;
  return f.scaled(kv_inv(poly_lead(f, ord)->second));
}

// Buchberger with normal selection (smallest lcm first) and the coprime-head
// skip. Returns the reduced monic basis, generators sorted by increasing
// leading monomial.
template <class K>
std::vector<Poly<K>> groebner_basis(const std::vector<Poly<K>>& gens, const MonoOrder& ord) {
  std::vector<Poly<K>> G;
  for (const auto& g : gens)
    if (!g.is_zero()) G.push_back(make_monic(g, ord));
  if (G.empty()) return G;
  const int nv = G[0].nvars;

  struct PairRec {
    Mono lcm;
    int i, j;
  };
  auto pair_less = [&ord](const PairRec& a, const PairRec& b) {
    int c = ord.cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<PairRec> pending;
  auto push_pairs = [&](size_t upto) {
    for (size_t i = 0; i < upto; ++i) {
      PairRec p;
      p.lcm = mono_lcm(poly_lead(G[i], ord)->first, poly_lead(G[upto], ord)->first);
      p.i = static_cast<int>(i);
      p.j = static_cast<int>(upto);
      pending.push_back(p);
    }
  };
  for (size_t k = 1; k < G.size(); ++k) push_pairs(k);

  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(), pair_less);
    PairRec p = *it;
    pending.erase(it);
    const Mono& mi = poly_lead(G[p.i], ord)->first;
    const Mono& mj = poly_lead(G[p.j], ord)->first;
    if (mono_coprime(mi, mj)) continue;
    Poly<K> rem = normal_form(s_polynomial(G[p.i], G[p.j], ord), G, ord);
    if (!rem.is_zero()) {
      G.push_back(make_monic(rem, ord));
      push_pairs(G.size() - 1);
    }
  }

  // interreduce to the reduced basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < G.size(); ++i) {
      std::vector<Poly<K>> others;
      for (size_t j = 0; j < G.size(); ++j)
        if (j != i) others.push_back(G[j]);
      Poly<K> r = normal_form(G[i], others, ord);
      if (r.is_zero()) {
        G.erase(G.begin() + i);
        changed = true;
        break;
      }
      r = make_monic(r, ord);
      if (r != G[i]) {
        G[i] = r;
        changed = true;
      }
    }
  }
  (void)nv;
  std::sort(G.begin(), G.end(), [&ord](const Poly<K>& a, const Poly<K>& b) {
    return ord.cmp(poly_lead(a, ord)->first, poly_lead(b, ord)->first) < 0;
  });
  return G;
}

// Per-pair record of the Buchberger criterion check.
struct SPairOutcome {
  int i = 0, j = 0;
  Mono lcm;
  bool coprime_skip = false;
  bool reduced_to_zero = false;
};

struct GroebnerCertificate {
  std::vector<SPairOutcome> pairs;
  bool ok = true;
};

template <class K>
GroebnerCertificate certify_groebner(const std::vector<Poly<K>>& G, const MonoOrder& ord) {
  GroebnerCertificate cert;
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j) {
      SPairOutcome rec;
      rec.i = static_cast<int>(i);
      rec.j = static_cast<int>(j);
      const Mono& mi = poly_lead(G[i], ord)->first;
      const Mono& mj = poly_lead(G[j], ord)->first;
      rec.lcm = mono_lcm(mi, mj);
      if (mono_coprime(mi, mj)) {
        rec.coprime_skip = true;
        rec.reduced_to_zero = true;
      } else {
        rec.reduced_to_zero = normal_form(s_polynomial(G[i], G[j], ord), G, ord).is_zero();
      }
      if (!rec.reduced_to_zero) cert.ok = false;
      cert.pairs.push_back(rec);
    }
  return cert;
}

template <class K>
bool ideal_contains(const Poly<K>& f, const std::vector<Poly<K>>& GB, const MonoOrder& ord) {
  return normal_form(f, GB, ord).is_zero();
}

template <class K>
bool ideals_equal(const std::vector<Poly<K>>& gensA, const std::vector<Poly<K>>& gensB,
                  const MonoOrder& ord) {
  auto GA = groebner_basis(gensA, ord);
  auto GB = groebner_basis(gensB, ord);
  for (const auto& a : gensA)
    if (!ideal_contains(a, GB, ord)) return false;
  for (const auto& b : gensB)
    if (!ideal_contains(b, GA, ord)) return false;
  return true;
}

// Staircase of a zero-dimensional ideal: all monomials not divisible by any
// leading monomial of the reduced basis. Throws if some variable has no pure
// power among the leading monomials (ideal not zero-dimensional).
template <class K>
std::vector<Mono> standard_monomials(const std::vector<Poly<K>>& GB, const MonoOrder& ord) {
  if (GB.empty()) throw std::domain_error("zero ideal is not zero-dimensional");
  const int nv = GB[0].nvars;
  std::vector<Mono> lead;
  for (const auto& g : GB) lead.push_back(poly_lead(g, ord)->first);
  for (const auto& m : lead)
    if (mono_total(m) == 0) return {};  // unit ideal
  std::vector<int> bound(nv, -1);
  for (const auto& m : lead) {
    int nzvar = -1;
    bool pure = true;
    for (int v = 0; v < nv; ++v)
      if (m[v] > 0) {
        if (nzvar >= 0) {
          pure = false;
          break;
        }
        nzvar = v;
      }
    if (pure && nzvar >= 0)
      bound[nzvar] = bound[nzvar] < 0 ? m[nzvar] : std::min(bound[nzvar], m[nzvar]);
  }
  for (int v = 0; v < nv; ++v)
    if (bound[v] < 0)
      throw std::domain_error("ideal is not zero-dimensional: no pure power in variable " +
                              std::to_string(v));
  std::vector<Mono> out;
  Mono cur(nv, 0);
  while (true) {
    bool divisible = false;
    for (const auto& m : lead)
      if (mono_divides(m, cur)) {
        divisible = true;
        break;
      }
    if (!divisible) out.push_back(cur);
    int v = 0;
    while (v < nv) {
      if (++cur[v] < bound[v]) break;
      cur[v] = 0;
      ++v;
    }
    if (v == nv) break;
  }
  std::sort(out.begin(), out.end(),
            [&ord](const Mono& a, const Mono& b) { return ord.cmp(a, b) < 0; });
  return out;
}

// Coordinates of NF(f) in the standard-monomial basis of the quotient.
template <class K>
std::vector<K> nf_coords(const Poly<K>& f, const std::vector<Poly<K>>& GB, const MonoOrder& ord,
                         const std::vector<Mono>& basis, const K& zero) {
  Poly<K> r = normal_form(f, GB, ord);
  std::vector<K> out(basis.size(), zero);
  for (const auto& [m, c] : r.t) {
    auto it = std::find(basis.begin(), basis.end(), m);
    if (it == basis.end()) throw std::logic_error("normal form outside the staircase");
    out[it - basis.begin()] = c;
  }
  return out;
}

// Matrix of multiplication by g on the quotient algebra, columns indexed by
// the standard monomials. Entry (i,j): coefficient of basis[i] in g*basis[j].
template <class K>
std::vector<std::vector<K>> multiplication_matrix(const Poly<K>& g,
                                                  const std::vector<Poly<K>>& GB,
                                                  const MonoOrder& ord,
                                                  const std::vector<Mono>& basis,
                                                  const K& zero) {
  const size_t n = basis.size();
  std::vector<std::vector<K>> M(n, std::vector<K>(n, zero));
  for (size_t j = 0; j < n; ++j) {
    Poly<K> bj = Poly<K>::monomial(g.nvars, basis[j], kv_int(zero, 1));
    auto col = nf_coords(g * bj, GB, ord, basis, zero);
    for (size_t i = 0; i < n; ++i) M[i][j] = col[i];
  }
  return M;
}

}  // namespace lgalg
