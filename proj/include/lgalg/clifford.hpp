#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace lgalg {

// Clifford algebras on the subset basis theta_S, S a bitmask over n
// generators, with v.v = Q(v) and e_i e_j + e_j e_i = 2 B_ij. Off-diagonal
// forms are allowed; products then spread over several subsets.

template <class K>
struct Clifford {
  int n = 0;
  Matrix<K> B;
  using Elt = std::map<unsigned, K>;

  Clifford(int n_, Matrix<K> B_) : n(n_), B(std::move(B_)) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(B[i][j] == B[j][i]))
          throw std::invalid_argument("form matrix is not symmetric");
  }

  size_t dim() const { return size_t{1} << n; }

  static void add_term(Elt& e, unsigned m, const K& c) {
    auto it = e.find(m);
    if (it == e.end()) {
      if (!kv_is_zero(c)) e.emplace(m, c);
      return;
    }
    it->second = it->second + c;
    if (kv_is_zero(it->second)) e.erase(it);
  }

  Elt one() const { return {{0u, kv_int(B[0][0], 1)}}; }
  Elt gen(int i) const { return {{1u << i, kv_int(B[0][0], 1)}}; }
  Elt basis_elt(unsigned m) const { return {{m, kv_int(B[0][0], 1)}}; }

  // theta_S . e_i, with S's generators in increasing order
  void term_times_gen(unsigned mask, const K& c, int i, Elt& out) const {
    if (mask == 0 || (mask >> (i + 1)) == 0) {
      // all generators in mask are <= i
      if (mask & (1u << i))
        add_term(out, mask ^ (1u << i), c * B[i][i]);
      else
        add_term(out, mask | (1u << i), c);
      return;
    }
    int m = 31 - __builtin_clz(mask);  // largest generator, m > i
    unsigned rest = mask ^ (1u << m);
    Elt sub;
    term_times_gen(rest, c, i, sub);
    for (const auto& [mk, cc] : sub) add_term(out, mk | (1u << m), -cc);
    K tw = c * (B[m][i] + B[m][i]);
    add_term(out, rest, tw);
  }

  Elt mul(const Elt& x, const Elt& y) const {
    Elt acc;
    for (const auto& [t, ct] : y) {
      Elt cur = x;
      for (int i = 0; i < n; ++i) {
        if (!(t & (1u << i))) continue;
        Elt next;
        for (const auto& [mk, c] : cur) term_times_gen(mk, c, i, next);
        cur = std::move(next);
      }
      for (const auto& [mk, c] : cur) add_term(acc, mk, c * ct);
    }
    return acc;
  }

  Elt from_vector(const std::vector<K>& v) const {
    Elt e;
    for (int i = 0; i < n; ++i) add_term(e, 1u << i, v[i]);
    return e;
  }

  K form_value(const std::vector<K>& v) const {
    K q = kv_int(B[0][0], 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q = q + v[i] * B[i][j] * v[j];
    return q;
  }
};

// structure constants with parity, the common input of the bar-complex and
// isomorphism machinery
template <class K>
struct SuperSC {
  std::vector<std::vector<std::vector<K>>> sc;
  std::vector<int> parity;
  size_t unit = 0;
  size_t dim() const { return parity.size(); }
};

template <class K>
SuperSC<K> clifford_sc(const Clifford<K>& C) {
  SuperSC<K> A;
  const size_t d = C.dim();
  A.parity.resize(d);
  for (size_t m = 0; m < d; ++m)
    A.parity[m] = __builtin_popcount(static_cast<unsigned>(m)) & 1;
  A.unit = 0;
  A.sc.assign(d, std::vector<std::vector<K>>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      std::vector<K> v(d, kv_int(C.B[0][0], 0));
      for (const auto& [mk, c] :
           C.mul(C.basis_elt(static_cast<unsigned>(i)),
                 C.basis_elt(static_cast<unsigned>(j))))
        v[mk] = c;
      A.sc[i][j] = std::move(v);
    }
  return A;
}

// ---------------------------------------------------------------------------
// Normalized bar cochain complexes. C^s = Hom(Abar^(x s), A) with Abar
// spanned by the non-unit basis elements; the basis of C^s is indexed by
// (t_1..t_s | m). In the super version the only Koszul sign sits in the
// left-action term, weighted by the internal parity of the cochain.

struct BarComplex {
  size_t d = 0;                 // algebra dimension
  std::vector<size_t> nonunit;  // basis indices spanning Abar
  size_t cdim(int s) const {
    size_t r = d;
    for (int i = 0; i < s; ++i) r *= nonunit.size();
    return r;
  }
};

inline size_t bar_index(const BarComplex& B, const std::vector<size_t>& t,
                        size_t m) {
  size_t idx = 0;
  for (size_t ti : t) idx = idx * B.nonunit.size() + ti;
  return idx * B.d + m;
}

// columns of the differential C^s -> C^(s+1) as sparse (row, coeff) lists
inline std::vector<std::vector<std::pair<size_t, Q>>> bar_delta_columns(
    const SuperSC<Q>& A, int s, bool super) {
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  const size_t nb = B.nonunit.size();
  std::vector<std::vector<std::pair<size_t, Q>>> cols(B.cdim(s));
  std::vector<size_t> t(static_cast<size_t>(s), 0);
  size_t col = 0;
  while (true) {
    for (size_t m = 0; m < B.d; ++m, ++col) {
      auto& out = cols[col];
      int pphi = A.parity[m];
      for (size_t i = 0; i < static_cast<size_t>(s); ++i)
        pphi ^= A.parity[B.nonunit[t[i]]];
      // left action: rows (a, t_1..t_s | u)
      std::vector<size_t> tt(static_cast<size_t>(s) + 1);
      for (size_t a = 0; a < nb; ++a) {
        tt[0] = a;
        for (size_t i = 0; i < static_cast<size_t>(s); ++i) tt[i + 1] = t[i];
        const auto& prod = A.sc[B.nonunit[a]][m];
        Q sgn = (super && pphi && A.parity[B.nonunit[a]]) ? Q(-1) : Q(1);
        for (size_t u = 0; u < B.d; ++u)
          if (!kv_is_zero(prod[u]))
            out.emplace_back(bar_index(B, tt, u), sgn * prod[u]);
      }
      // inner contractions: replace (x, y) whose product hits t_i
      for (size_t i = 0; i < static_cast<size_t>(s); ++i) {
        Q sgn = (i % 2 == 0) ? Q(-1) : Q(1);  // (-1)^(i+1) for slot i+1
        for (size_t x = 0; x < nb; ++x)
          for (size_t y = 0; y < nb; ++y) {
            const Q& c = A.sc[B.nonunit[x]][B.nonunit[y]][B.nonunit[t[i]]];
            if (kv_is_zero(c)) continue;
            size_t k = 0;
            for (size_t j = 0; j < static_cast<size_t>(s); ++j) {
              if (j == i) {
                tt[k++] = x;
                tt[k++] = y;
              } else {
                tt[k++] = t[j];
              }
            }
            out.emplace_back(bar_index(B, tt, m), sgn * c);
          }
      }
      // right action: rows (t_1..t_s, a | u)
      Q rsgn = (s % 2 == 0) ? Q(-1) : Q(1);  // (-1)^(s+1)
      for (size_t a = 0; a < nb; ++a) {
        for (size_t i = 0; i < static_cast<size_t>(s); ++i) tt[i] = t[i];
        tt[static_cast<size_t>(s)] = a;
        const auto& prod = A.sc[m][B.nonunit[a]];
        for (size_t u = 0; u < B.d; ++u)
          if (!kv_is_zero(prod[u]))
            out.emplace_back(bar_index(B, tt, u), rsgn * prod[u]);
      }
    }
    // advance the tuple t
    int pos = s - 1;
    while (pos >= 0 && t[static_cast<size_t>(pos)] + 1 == nb) {
      t[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++t[static_cast<size_t>(pos)];
  }
  return cols;
}

inline Matrix<Q> bar_delta_matrix(const SuperSC<Q>& A, int s, bool super) {
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  auto cols = bar_delta_columns(A, s, super);
  Matrix<Q> M(B.cdim(s + 1), std::vector<Q>(cols.size(), Q(0)));
  for (size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) M[r][c] += v;
  return M;
}

// cohomology dimensions HH^0..HH^smax of the ungraded complex
inline std::vector<size_t> hh_ungraded(const SuperSC<Q>& A, int s_max) {
  std::vector<size_t> dims, ranks;
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  for (int s = 0; s <= s_max; ++s)
    ranks.push_back(mat_rank(bar_delta_matrix(A, s, false)));
  for (int s = 0; s <= s_max; ++s) {
    size_t ker = B.cdim(s) - ranks[static_cast<size_t>(s)];
    size_t im = s == 0 ? 0 : ranks[static_cast<size_t>(s) - 1];
    dims.push_back(ker - im);
  }
  return dims;
}

// parity of a bar basis cochain at flat index `col`
inline int bar_col_parity(const SuperSC<Q>& A, const BarComplex& B, int s,
                          size_t col) {
  size_t m = col % B.d;
  size_t rest = col / B.d;
  int p = A.parity[m];
  for (int i = 0; i < s; ++i) {
    p ^= A.parity[B.nonunit[rest % B.nonunit.size()]];
    rest /= B.nonunit.size();
  }
  return p;
}

// per-(length, parity) cohomology dimensions of the signed complex
inline std::vector<std::array<size_t, 2>> hh_super(const SuperSC<Q>& A,
                                                   int s_max) {
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  std::vector<std::array<size_t, 2>> cdims, ranks;
  for (int s = 0; s <= s_max; ++s) {
    Matrix<Q> full = bar_delta_matrix(A, s, true);
    std::array<size_t, 2> cd{0, 0}, rk{0, 0};
    for (int p = 0; p < 2; ++p) {
      std::vector<size_t> keep;
      for (size_t c = 0; c < B.cdim(s); ++c)
        if (bar_col_parity(A, B, s, c) == p) keep.push_back(c);
      cd[static_cast<size_t>(p)] = keep.size();
      Matrix<Q> sub(full.size(), std::vector<Q>(keep.size(), Q(0)));
      for (size_t j = 0; j < keep.size(); ++j)
        for (size_t r = 0; r < full.size(); ++r) sub[r][j] = full[r][keep[j]];
      rk[static_cast<size_t>(p)] = mat_rank(sub);
    }
    cdims.push_back(cd);
    ranks.push_back(rk);
  }
  std::vector<std::array<size_t, 2>> dims;
  for (int s = 0; s <= s_max; ++s) {
    std::array<size_t, 2> h{0, 0};
    for (size_t p = 0; p < 2; ++p) {
      size_t ker = cdims[static_cast<size_t>(s)][p] -
                   ranks[static_cast<size_t>(s)][p];
      size_t im = s == 0 ? 0 : ranks[static_cast<size_t>(s) - 1][p];
      h[p] = ker - im;
    }
    dims.push_back(h);
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Vanishing certificates over a prime field. Ranks mod p can only undershoot
// ranks over Q, so if the mod-p ranks of the incoming and outgoing
// differentials already add up to the full dimension of C^s, the rational
// cohomology there is exactly zero. The prime must be odd: mod 2 every
// Clifford algebra degenerates to the exterior one. Tall column sets are
// first compressed through a fixed random row projection, which again only
// lowers the rank, the safe direction for these certificates.

inline constexpr uint64_t kCertPrime = 65521;

inline size_t rank_lower_modp(
    const std::vector<std::vector<std::pair<size_t, uint32_t>>>& cols,
    size_t nrows) {
  const uint64_t p = kCertPrime;
  const size_t m = cols.size() + 64;
  const bool sketch = nrows > m;
  const size_t rows = sketch ? m : nrows;
  std::vector<std::array<std::pair<uint32_t, uint32_t>, 3>> proj;
  if (sketch) {
    std::minstd_rand rng(1299709);
    proj.resize(nrows);
    for (auto& pr : proj)
      for (auto& [t, c] : pr) {
        t = static_cast<uint32_t>(rng() % rows);
        c = static_cast<uint32_t>(1 + rng() % (p - 1));
      }
  }
  std::vector<std::vector<uint32_t>> pivots;
  std::vector<size_t> pivot_pos;
  std::vector<uint64_t> v(rows);
  auto modpow = [&](uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (const auto& col : cols) {
    std::fill(v.begin(), v.end(), 0);
    for (const auto& [r, val] : col) {
      if (sketch)
        for (const auto& [t, c] : proj[r]) v[t] += uint64_t{val} * c;
      else
        v[r] += val;
    }
    // lazy reduction: every step adds at most p^2 per entry, far below 2^64
    for (size_t k = 0; k < pivots.size(); ++k) {
      uint64_t c = v[pivot_pos[k]] % p;
      if (!c) continue;
      const auto& piv = pivots[k];
      for (size_t j = 0; j < rows; ++j) v[j] += c * (p - piv[j]);
    }
    size_t lead = rows;
    for (size_t j = 0; j < rows; ++j) {
      v[j] %= p;
      if (lead == rows && v[j]) lead = j;
    }
    if (lead == rows) continue;
    uint64_t inv = modpow(v[lead], p - 2);
    std::vector<uint32_t> piv(rows);
    for (size_t j = 0; j < rows; ++j)
      piv[j] = static_cast<uint32_t>(v[j] * inv % p);
    pivots.push_back(std::move(piv));
    pivot_pos.push_back(lead);
  }
  return pivots.size();
}

// parity -1 keeps every column
inline std::vector<std::vector<std::pair<size_t, uint32_t>>>
bar_delta_columns_modp(const SuperSC<Q>& A, int s, int parity, bool super) {
  const uint64_t p = kCertPrime;
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  auto cols = bar_delta_columns(A, s, super);
  std::vector<std::vector<std::pair<size_t, uint32_t>>> out;
  for (size_t c = 0; c < cols.size(); ++c) {
    if (parity >= 0 && bar_col_parity(A, B, s, c) != parity) continue;
    std::map<size_t, uint64_t> acc;
    for (const auto& [r, v] : cols[c]) {
      mpz_class num = v.get_num() % p, den = v.get_den() % p;
      if (den == 0) throw std::runtime_error("denominator divisible by p");
      uint64_t nu = mpz_class((num % p + p) % p).get_ui();
      uint64_t de = den.get_ui(), dinv = 1, e = p - 2, b = de;
      while (e) {
        if (e & 1) dinv = dinv * b % p;
        b = b * b % p;
        e >>= 1;
      }
      acc[r] = (acc[r] + nu * dinv) % p;
    }
    std::vector<std::pair<size_t, uint32_t>> rows;
    for (const auto& [r, val] : acc)
      if (val) rows.emplace_back(r, static_cast<uint32_t>(val));
    out.push_back(std::move(rows));
  }
  return out;
}

struct FormalityPiece {
  int s = 0;
  int parity = 0;
  size_t cdim = 0;
  size_t rank_out = 0;
  size_t rank_in = 0;
  bool vanishes = false;
};

inline FormalityPiece bar_piece_mod2(const SuperSC<Q>& A, int s, int parity) {
  FormalityPiece F;
  F.s = s;
  F.parity = parity;
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  auto out_cols = bar_delta_columns_modp(A, s, F.parity, true);
  auto in_cols = bar_delta_columns_modp(A, s - 1, F.parity, true);
  F.cdim = out_cols.size();
  F.rank_out = rank_lower_modp(out_cols, B.cdim(s + 1));
  F.rank_in = rank_lower_modp(in_cols, B.cdim(s));
  F.vanishes = F.rank_out + F.rank_in == F.cdim;
  return F;
}

// the deformation-relevant piece: total degree 2 and length s force internal
// parity s mod 2
inline FormalityPiece formality_piece_mod2(const SuperSC<Q>& A, int s) {
  return bar_piece_mod2(A, s, s & 1);
}

// Exact dimensions HH^0..HH^(s_max-1) plus a vanishing certificate for
// HH^(s_max), whose outgoing differential is the one matrix too large for
// dense rational elimination. Its mod-p rank only undershoots the rational
// one, so rank_p(d_top) + rank_Q(d_(top-1)) == dim C^top still proves
// HH^(s_max) = 0 over Q exactly.
struct HHTopReport {
  std::vector<size_t> hh_exact;
  bool top_vanishes = false;
};

inline HHTopReport hh_with_top_certificate(const SuperSC<Q>& A, int s_max) {
  HHTopReport R;
  BarComplex B;
  B.d = A.dim();
  for (size_t i = 0; i < A.dim(); ++i)
    if (i != A.unit) B.nonunit.push_back(i);
  std::vector<size_t> ranks;
  for (int s = 0; s < s_max; ++s)
    ranks.push_back(mat_rank(bar_delta_matrix(A, s, false)));
  for (int s = 0; s < s_max; ++s) {
    size_t ker = B.cdim(s) - ranks[static_cast<size_t>(s)];
    size_t im = s == 0 ? 0 : ranks[static_cast<size_t>(s) - 1];
    R.hh_exact.push_back(ker - im);
  }
  auto cols = bar_delta_columns_modp(A, s_max, -1, false);
  size_t rank_top = rank_lower_modp(cols, B.cdim(s_max + 1));
  R.top_vanishes =
      rank_top + ranks[static_cast<size_t>(s_max) - 1] == B.cdim(s_max);
  return R;
}

// ---------------------------------------------------------------------------
// Separability witness: e = 2^(-n) sum_S theta_S (x) theta_S^(-1) is an
// idempotent splitting the multiplication map of A (x) A, so the algebra is
// a direct summand of a free bimodule and its positive-degree Hochschild
// cohomology vanishes. Tensors live in coordinates T[i][j] on b_i (x) b_j.

struct SeparabilityReport {
  bool defined = false;       // all basis squares invertible
  bool bimodule_ok = false;   // a e = e a for every generator
  bool section_ok = false;    // multiplying e back gives 1
  bool ok() const { return defined && bimodule_ok && section_ok; }
};

inline SeparabilityReport clifford_separability(const Clifford<Q>& C) {
  SeparabilityReport R;
  const size_t d = C.dim();
  SuperSC<Q> A = clifford_sc(C);
  Matrix<Q> e(d, std::vector<Q>(d, Q(0)));
  Q half_n(1);
  for (int i = 0; i < C.n; ++i) half_n /= Q(2);
  for (size_t S = 0; S < d; ++S) {
    auto sq = C.mul(C.basis_elt(static_cast<unsigned>(S)),
                    C.basis_elt(static_cast<unsigned>(S)));
    if (sq.size() != 1 || sq.begin()->first != 0 ||
        kv_is_zero(sq.begin()->second))
      return R;  // basis square not a nonzero scalar
    e[S][S] = half_n / sq.begin()->second;
  }
  R.defined = true;
  R.bimodule_ok = true;
  for (int g = 0; g < C.n; ++g) {
    size_t gi = size_t{1} << g;
    Matrix<Q> lhs(d, std::vector<Q>(d, Q(0))), rhs = lhs;
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        if (kv_is_zero(e[i][j])) continue;
        for (size_t u = 0; u < d; ++u) {
          lhs[u][j] += A.sc[gi][i][u] * e[i][j];
          rhs[i][u] += A.sc[j][gi][u] * e[i][j];
        }
      }
    if (lhs != rhs) R.bimodule_ok = false;
  }
  std::vector<Q> back(d, Q(0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (!kv_is_zero(e[i][j]))
        for (size_t u = 0; u < d; ++u) back[u] += e[i][j] * A.sc[i][j][u];
  R.section_ok = true;
  for (size_t u = 0; u < d; ++u)
    if (back[u] != (u == 0 ? Q(1) : Q(0))) R.section_ok = false;
  return R;
}

// ---------------------------------------------------------------------------
// Graded isomorphism witnesses and refutations.

// img rows are images of A's basis in B's basis; unit_b is B's unit in the
// same coordinates (it need not be a basis element there)
template <class K>
bool verify_super_iso(const SuperSC<K>& A, const SuperSC<K>& Bq,
                      const Matrix<K>& img, const std::vector<K>& unit_b) {
  const size_t d = A.dim();
  if (Bq.dim() != d || img.size() != d) return false;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (!kv_is_zero(img[i][j]) && A.parity[i] != Bq.parity[j]) return false;
  if (mat_rank(img) != d) return false;
  for (size_t j = 0; j < d; ++j)
    if (!(img[A.unit][j] == unit_b[j])) return false;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      // image of b_i b_j vs product of images
      std::vector<K> lhs(d, kv_int(img[0][0], 0));
      for (size_t k = 0; k < d; ++k)
        for (size_t u = 0; u < d; ++u) lhs[u] = lhs[u] + A.sc[i][j][k] * img[k][u];
      std::vector<K> rhs(d, kv_int(img[0][0], 0));
      for (size_t x = 0; x < d; ++x) {
        if (kv_is_zero(img[i][x])) continue;
        for (size_t y = 0; y < d; ++y) {
          if (kv_is_zero(img[j][y])) continue;
          K c = img[i][x] * img[j][y];
          for (size_t u = 0; u < d; ++u) rhs[u] = rhs[u] + c * Bq.sc[x][y][u];
        }
      }
      if (!(lhs == rhs)) return false;
    }
  return true;
}

struct GradedInvariants {
  size_t dim_even = 0;
  size_t dim_odd = 0;
  size_t center_dim = 0;
  size_t supercenter_dim = 0;
};

template <class K>
GradedInvariants graded_invariants(const SuperSC<K>& A) {
  GradedInvariants G;
  const size_t d = A.dim();
  for (size_t i = 0; i < d; ++i)
    (A.parity[i] ? G.dim_odd : G.dim_even)++;
  // x central: [x, b_j] = 0 for all j; supercentral uses the signed bracket
  for (int super = 0; super < 2; ++super) {
    Matrix<K> M(d * d, std::vector<K>(d, kv_int(A.sc[0][0][0], 0)));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        for (size_t u = 0; u < d; ++u) {
          K c = A.sc[i][j][u] - (super && A.parity[i] && A.parity[j]
                                     ? -A.sc[j][i][u]
                                     : A.sc[j][i][u]);
          M[j * d + u][i] = c;
        }
    size_t k = d - mat_rank(M);
    (super ? G.supercenter_dim : G.center_dim) = k;
  }
  return G;
}

// End of a one-even one-odd line: basis E11, E12, E21, E22 with matrix-unit
// products; the off-diagonal units are odd
template <class K>
SuperSC<K> matrix_superalgebra_1_1(const K& sample) {
  SuperSC<K> A;
  A.parity = {0, 1, 1, 0};
  A.unit = 0;  // the unit E11 + E22 is not a basis element; pass it explicitly
  A.sc.assign(4, std::vector<std::vector<K>>(4, std::vector<K>(4, kv_int(sample, 0))));
  auto idx = [](int r, int c) { return (r - 1) * 2 + (c - 1); };
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c)
      for (int r2 = 1; r2 <= 2; ++r2)
        for (int c2 = 1; c2 <= 2; ++c2)
          if (c == r2)
            A.sc[idx(r, c)][idx(r2, c2)][idx(r, c2)] = kv_int(sample, 1);
  return A;
}

// square-class obstruction for rank-1 forms over Q: a graded isomorphism
// sends the odd generator to a multiple c of the other one, forcing
// q = c^2 q', so q/q' must be a square
inline bool rank1_ratio_is_square(const Q& q, const Q& qp) {
  Q r = q / qp;
  if (r < 0) return false;
  mpz_class n = r.get_num(), dpart = r.get_den(), s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  if (s * s != n) return false;
  mpz_sqrt(s.get_mpz_t(), dpart.get_mpz_t());
  return s * s == dpart;
}

}  // namespace lgalg
