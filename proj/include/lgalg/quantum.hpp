#pragma once

#include <cctype>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cyclotomic.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "superpotential.hpp"

namespace lgalg {

// Finite-dimensional commutative Frobenius algebras over Q, given by
// structure constants on a fixed basis: the one-variable hyperplane-class
// model Q[P]/q(P - w0), and the cubic surface with its full product table.

struct FrobAlgebra {
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<Q>>> sc;  // sc[i][j] = basis_i * basis_j
  Matrix<Q> pairing;
  std::vector<Q> unit;
  std::vector<Q> c1;

  size_t dim() const { return names.size(); }

  std::vector<Q> zero_vec() const { return std::vector<Q>(dim(), Q(0)); }

  std::vector<Q> basis_vec(size_t i) const {
    auto v = zero_vec();
    v[i] = Q(1);
    return v;
  }

  std::vector<Q> mul(const std::vector<Q>& x, const std::vector<Q>& y) const {
    auto r = zero_vec();
    for (size_t i = 0; i < dim(); ++i) {
      if (kv_is_zero(x[i])) continue;
      for (size_t j = 0; j < dim(); ++j) {
        if (kv_is_zero(y[j])) continue;
        Q c = x[i] * y[j];
        for (size_t k = 0; k < dim(); ++k) r[k] += c * sc[i][j][k];
      }
    }
    return r;
  }

  Q pair(const std::vector<Q>& x, const std::vector<Q>& y) const {
    Q r(0);
    for (size_t i = 0; i < dim(); ++i)
      for (size_t j = 0; j < dim(); ++j) r += x[i] * pairing[i][j] * y[j];
    return r;
  }

  // columns are x * basis_j
  Matrix<Q> mult_matrix(const std::vector<Q>& x) const {
    Matrix<Q> M(dim(), std::vector<Q>(dim(), Q(0)));
    for (size_t j = 0; j < dim(); ++j) {
      auto col = mul(x, basis_vec(j));
      for (size_t i = 0; i < dim(); ++i) M[i][j] = col[i];
    }
    return M;
  }

  std::vector<Q> pow(const std::vector<Q>& x, long e) const {
    auto r = unit;
    for (long i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }
};

struct FrobeniusCertificate {
  bool unit_ok = true;
  bool commutative_ok = true;
  bool associative_ok = true;
  bool frobenius_ok = true;
  bool pairing_nondegenerate = true;
  std::vector<std::tuple<size_t, size_t, size_t>> failures;
  bool ok() const {
    return unit_ok && commutative_ok && associative_ok && frobenius_ok &&
           pairing_nondegenerate;
  }
};

inline FrobeniusCertificate verify_frobenius(const FrobAlgebra& A) {
  FrobeniusCertificate c;
  const size_t d = A.dim();
  for (size_t i = 0; i < d; ++i) {
    auto b = A.basis_vec(i);
    if (A.mul(A.unit, b) != b || A.mul(b, A.unit) != b) c.unit_ok = false;
  }
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (A.mul(A.basis_vec(i), A.basis_vec(j)) !=
          A.mul(A.basis_vec(j), A.basis_vec(i)))
        c.commutative_ok = false;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k) {
        auto bi = A.basis_vec(i), bj = A.basis_vec(j), bk = A.basis_vec(k);
        if (A.mul(A.mul(bi, bj), bk) != A.mul(bi, A.mul(bj, bk))) {
          c.associative_ok = false;
          if (c.failures.size() < 16) c.failures.emplace_back(i, j, k);
        }
        if (A.pair(A.mul(bi, bj), bk) != A.pair(bi, A.mul(bj, bk))) {
          c.frobenius_ok = false;
          if (c.failures.size() < 16) c.failures.emplace_back(i, j, k);
        }
      }
  c.pairing_nondegenerate = mat_rank(A.pairing) == d;
  return c;
}

// ---------------------------------------------------------------------------
// Hyperplane-class model: Q[P] / q(P - w0) with q(x) = x^(n-1) - a^a x^(a-1),
// w0 the scalar disk correction, basis 1, P, ..., P^(n-2), c1 = (n-a) P.
// The pairing is the residue functional of the top basis power.

inline QPoly hyperplane_modulus(int n, long a) {
  Q w0 = scalar_correction(n, a);
  QPoly base{-w0, Q(1)};  // P - w0
  Q aa(1);
  for (long i = 0; i < a; ++i) aa *= Q(a);
  QPoly m = qp_sub(qp_pow(base, n - 1),
                   qp_mul(QPoly{aa}, qp_pow(base, a - 1)));
  qp_trim(m);
  return m;
}

inline FrobAlgebra hyperplane_model(int n, long a) {
  FrobAlgebra A;
  const size_t d = static_cast<size_t>(n - 1);
  QPoly m = hyperplane_modulus(n, a);
  for (size_t i = 0; i < d; ++i)
    A.names.push_back(i == 0 ? "1" : (i == 1 ? "P" : "P^" + std::to_string(i)));
  A.sc.assign(d, std::vector<std::vector<Q>>(d));
  A.pairing.assign(d, std::vector<Q>(d, Q(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      QPoly p(i + j + 1, Q(0));
      p[i + j] = Q(1);
      QPoly r = qp_divmod(p, m).second;
      r.resize(d, Q(0));
      A.sc[i][j] = r;
      A.pairing[i][j] = r[d - 1];
    }
  A.unit = A.basis_vec(0);
  A.c1 = A.zero_vec();
  A.c1[1] = Q(n - a);
  return A;
}

// ---------------------------------------------------------------------------
// Generalized eigendecomposition of multiplication by c1 over Q.

struct EigenComponent {
  Q value;
  size_t alg_mult = 0;
  size_t geo_mult = 0;
  std::vector<std::vector<Q>> gen_basis;
  std::vector<Q> idempotent;  // present only when the decomposition is complete
};

struct EigenDecomposition {
  QPoly charpoly;
  std::vector<EigenComponent> comps;
  QPoly residual;  // nonconstant iff eigenvalues escape Q
  bool complete = false;
};

// rational roots of a monic polynomial over Q, by clearing denominators and
// trial division over divisors of the constant term
inline std::vector<Q> qp_rational_roots(QPoly f) {
  qp_trim(f);
  std::vector<Q> roots;
  if (qp_deg(f) < 1) return roots;
  mpz_class L(1);
  for (const auto& c : f) L = L / mpz_class(gcd(L, c.get_den())) * c.get_den();
  // g(y) = L^deg f(y/L) is monic with integer coefficients; its rational
  // roots are the integers dividing g(0)
  long dg = qp_deg(f);
  std::vector<mpz_class> g(static_cast<size_t>(dg) + 1);
  mpz_class Lp(1);
  for (long i = dg; i >= 0; --i) {
    mpz_class num = f[i].get_num() * Lp / f[i].get_den();
    g[i] = num;
    Lp *= L;
  }
  auto geval = [&](const mpz_class& y) {
    mpz_class r(0);
    for (size_t i = g.size(); i-- > 0;) r = r * y + g[i];
    return r;
  };
  std::set<Q> found;
  while (!g.empty() && g[0] == 0) {
    found.insert(Q(0));
    g.erase(g.begin());
  }
  if (!g.empty() && g.size() > 1) {
    mpz_class c0 = abs(g[0]);
    for (mpz_class i(1); i * i <= c0; ++i) {
      if (c0 % i != 0) continue;
      mpz_class co = c0 / i;
      for (const mpz_class& dv : {mpz_class(i), co}) {
        if (geval(dv) == 0) found.insert(Q(dv) / Q(L));
        mpz_class nd = -dv;
        if (geval(nd) == 0) found.insert(Q(nd) / Q(L));
      }
    }
  }
  roots.assign(found.begin(), found.end());
  return roots;
}

inline EigenDecomposition c1_spectrum(const FrobAlgebra& A) {
  EigenDecomposition D;
  const size_t d = A.dim();
  Matrix<Q> M = A.mult_matrix(A.c1);
  auto cs = char_poly(M);
  D.charpoly = QPoly(cs.begin(), cs.end());
  D.residual = D.charpoly;
  for (const Q& r : qp_rational_roots(D.charpoly)) {
    EigenComponent C;
    C.value = r;
    QPoly lin{-r, Q(1)};
    while (true) {
      auto [q, rem] = qp_divmod(D.residual, lin);
      qp_trim(rem);
      if (!rem.empty()) break;
      D.residual = q;
      ++C.alg_mult;
    }
    Matrix<Q> S = M;
    for (size_t i = 0; i < d; ++i) S[i][i] -= r;
    C.geo_mult = d - mat_rank(S);
    Matrix<Q> P = mat_identity(d, Q(1));
    for (size_t k = 0; k < d; ++k) P = mat_mul(P, S);
    C.gen_basis = mat_kernel(P);
    D.comps.push_back(std::move(C));
  }
  D.complete = qp_deg(D.residual) == 0;
  if (D.complete && !D.comps.empty()) {
    // CRT idempotents from the coprime factorization of the char poly
    for (auto& C : D.comps) {
      QPoly fi = qp_pow(QPoly{-C.value, Q(1)}, static_cast<long>(C.alg_mult));
      QPoly gi = qp_divexact(D.charpoly, fi);
      auto [g, u, v] = qp_ext_gcd(gi, fi);
      (void)v;
      QPoly ei = qp_divmod(qp_mul(u, gi), D.charpoly).second;
      // evaluate e_i at the multiplication operator, applied to the unit
      std::vector<Q> acc = A.zero_vec();
      std::vector<Q> pw = A.unit;
      for (size_t k = 0; k < ei.size(); ++k) {
        for (size_t t = 0; t < d; ++t) acc[t] += ei[k] * pw[t];
        pw = A.mul(pw, A.c1);
      }
      C.idempotent = acc;
    }
  }
  return D;
}

inline bool eigenspaces_orthogonal(const FrobAlgebra& A,
                                   const EigenDecomposition& D) {
  for (size_t p = 0; p < D.comps.size(); ++p)
    for (size_t q = p + 1; q < D.comps.size(); ++q)
      for (const auto& x : D.comps[p].gen_basis)
        for (const auto& y : D.comps[q].gen_basis)
          if (!kv_is_zero(A.pair(x, y))) return false;
  return true;
}

// minimal polynomial of an element, from the first linear dependence among
// its powers
inline QPoly element_minpoly(const FrobAlgebra& A, const std::vector<Q>& x) {
  const size_t d = A.dim();
  std::vector<std::vector<Q>> pows{A.unit};
  while (true) {
    Matrix<Q> M(d, std::vector<Q>(pows.size(), Q(0)));
    for (size_t j = 0; j < pows.size(); ++j)
      for (size_t i = 0; i < d; ++i) M[i][j] = pows[j][i];
    auto ker = mat_kernel(M);
    if (!ker.empty()) {
      QPoly m = ker[0];
      Q lc = m.back();
      for (auto& c : m) c /= lc;
      return m;
    }
    pows.push_back(A.mul(pows.back(), x));
  }
}

struct SemisimplicityReport {
  QPoly generic_minpoly;
  bool generic_squarefree = true;
  size_t trace_rank = 0;
  size_t radical_dim = 0;
  bool semisimple = true;
};

// over Q the radical of a commutative algebra is the kernel of the trace
// form, so its rank decides semisimplicity; the squarefree test on a generic
// element is reported alongside
inline SemisimplicityReport semisimplicity(const FrobAlgebra& A) {
  SemisimplicityReport R;
  const size_t d = A.dim();
  std::vector<Q> g = A.zero_vec();
  for (size_t i = 0; i < d; ++i) g[i] = Q(static_cast<long>(i + 1));
  R.generic_minpoly = element_minpoly(A, g);
  QPoly der = qp_derivative(R.generic_minpoly);
  R.generic_squarefree = qp_deg(qp_gcd(R.generic_minpoly, der)) == 0;
  Matrix<Q> T(d, std::vector<Q>(d, Q(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      T[i][j] = mat_trace(A.mult_matrix(A.mul(A.basis_vec(i), A.basis_vec(j))));
  R.trace_rank = mat_rank(T);
  R.radical_dim = d - R.trace_rank;
  R.semisimple = R.radical_dim == 0;
  return R;
}

// ---------------------------------------------------------------------------
// Spectrum certificate: the char poly of c1* on the hyperplane model factors
// over the critical-value ring as (x - value(origin))^(a-1) times the product
// of (x - v) over the branch values of the potential.

struct SpectrumCertificate {
  int n = 0;
  long a = 0;
  QPoly charpoly;
  bool branch_values_distinct = true;
  bool matches = false;
};

inline SpectrumCertificate spectrum_certificate(int n, long a) {
  SpectrumCertificate S;
  S.n = n;
  S.a = a;
  FrobAlgebra A = hyperplane_model(n, a);
  Matrix<Q> M = A.mult_matrix(A.c1);
  auto cs = char_poly(M);
  S.charpoly = QPoly(cs.begin(), cs.end());
  CriticalLocus L = critical_locus(n, a);
  for (size_t i = 0; i < L.branch_values.size(); ++i)
    for (size_t j = i + 1; j < L.branch_values.size(); ++j)
      if (L.branch_values[i] == L.branch_values[j])
        S.branch_values_distinct = false;
  Ext one = Ext(L.ring, Q(1));
  Ext origin_value = Ext(L.ring, scalar_correction(n, a));
  std::vector<Ext> prod{one};
  auto mul_linear = [&](const Ext& v) {
    std::vector<Ext> next(prod.size() + 1, Ext(L.ring, Q(0)));
    for (size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] += prod[i];
      next[i] -= v * prod[i];
    }
    prod = std::move(next);
  };
  for (long i = 0; i < a - 1; ++i) mul_linear(origin_value);
  for (const auto& v : L.branch_values) mul_linear(v);
  S.matches = prod.size() == S.charpoly.size();
  if (S.matches)
    for (size_t i = 0; i < prod.size(); ++i)
      if (!(prod[i] == Ext(L.ring, S.charpoly[i]))) S.matches = false;
  return S;
}

// ---------------------------------------------------------------------------
// Cubic surface: basis 1, h, p, e1..e6 with M = e1+...+e6, A = 3h - M + 6,
// c1 = A - 6, and the product table stated through A. The pairing is the
// intersection form.

inline FrobAlgebra cubic_surface() {
  FrobAlgebra X;
  X.names = {"1", "h", "p", "e1", "e2", "e3", "e4", "e5", "e6"};
  const size_t d = 9;
  auto vec = [&](Q c1c, Q hc, Q pc) {
    std::vector<Q> v(d, Q(0));
    v[0] = c1c;
    v[1] = hc;
    v[2] = pc;
    return v;
  };
  std::vector<Q> Av = vec(Q(6), Q(3), Q(0));
  for (size_t i = 3; i < d; ++i) Av[i] = Q(-1);
  auto lin = [&](Q cA, Q c1c, Q ch, Q cp) {
    std::vector<Q> v(d, Q(0));
    for (size_t k = 0; k < d; ++k) v[k] = cA * Av[k];
    v[0] += c1c;
    v[1] += ch;
    v[2] += cp;
    return v;
  };
  X.sc.assign(d, std::vector<std::vector<Q>>(d));
  for (size_t j = 0; j < d; ++j) {
    auto b = std::vector<Q>(d, Q(0));
    b[j] = Q(1);
    X.sc[0][j] = b;
    X.sc[j][0] = b;
  }
  X.sc[1][1] = lin(Q(25), Q(-30), Q(-12), Q(1));       // h*h
  X.sc[1][2] = lin(Q(42), Q(0), Q(-6), Q(0));          // h*p
  X.sc[2][1] = X.sc[1][2];
  X.sc[2][2] = lin(Q(84), Q(36), Q(0), Q(0));          // p*p
  for (size_t i = 3; i < d; ++i) {
    auto he = lin(Q(9), Q(-12), Q(-2), Q(0));          // h*e_i
    he[i] += Q(-6);
    X.sc[1][i] = he;
    X.sc[i][1] = he;
    auto pe = lin(Q(14), Q(0), Q(0), Q(0));            // p*e_i
    pe[i] += Q(-6);
    X.sc[2][i] = pe;
    X.sc[i][2] = pe;
    for (size_t j = 3; j < d; ++j) {
      if (i == j) {
        auto ee = lin(Q(5), Q(-10), Q(0), Q(-1));      // e_i*e_i
        ee[i] += Q(-4);
        X.sc[i][i] = ee;
      } else {
        auto ee = lin(Q(3), Q(-4), Q(0), Q(0));        // e_i*e_j
        ee[i] += Q(-2);
        ee[j] += Q(-2);
        X.sc[i][j] = ee;
      }
    }
  }
  X.pairing.assign(d, std::vector<Q>(d, Q(0)));
  X.pairing[0][2] = Q(1);
  X.pairing[2][0] = Q(1);
  X.pairing[1][1] = Q(1);
  for (size_t i = 3; i < d; ++i) X.pairing[i][i] = Q(-1);
  X.unit = X.basis_vec(0);
  X.c1 = Av;
  X.c1[0] -= Q(6);
  return X;
}

// the eight spanning vectors of the big generalized eigenspace: A - 27,
// A*(A - 27), and 3 e_i - c1 (the latter are plain eigenvectors, since
// A*(3 e_i - A + 6) = 0 in the table algebra)
inline std::vector<std::vector<Q>> cubic_big_eigenvectors(const FrobAlgebra& X) {
  std::vector<Q> Av = X.c1;
  Av[0] += Q(6);
  std::vector<Q> v1 = Av;
  v1[0] -= Q(27);
  std::vector<std::vector<Q>> out{v1, X.mul(Av, v1)};
  for (size_t i = 3; i < 9; ++i) {
    std::vector<Q> v(9, Q(0));
    for (size_t k = 0; k < 9; ++k) v[k] = -X.c1[k];
    v[i] += Q(3);
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formal disk-count parameter: the relation q(P - w) with w left symbolic,
// in the two-variable ring Q[w][P] (variable 0 is w, variable 1 is P).

inline MonoOrder order_wp() {
  MonoOrder ord;
  ord.blocks.push_back({{1}, true});
  ord.blocks.push_back({{0}, true});
  return ord;
}

inline Poly<Q> shifted_relation(int n, long a) {
  Poly<Q> P = Poly<Q>::monomial(2, Mono{0, 1}, Q(1));
  Poly<Q> w = Poly<Q>::monomial(2, Mono{1, 0}, Q(1));
  Poly<Q> base = P - w;
  Q aa(1);
  for (long i = 0; i < a; ++i) aa *= Q(a);
  return base.pow(n - 1) - base.pow(a - 1).scaled(aa);
}

// coefficient of P^k as a polynomial in w
inline QPoly wp_coeff(const Poly<Q>& f, int k) {
  QPoly out;
  for (const auto& [m, c] : f.t) {
    if (m[1] != k) continue;
    if (out.size() <= static_cast<size_t>(m[0]))
      out.resize(static_cast<size_t>(m[0]) + 1, Q(0));
    out[m[0]] += c;
  }
  qp_trim(out);
  return out;
}

struct LineCountReport {
  QPoly count_form;       // <P^2, P> as a polynomial in w
  Q count_at_w = Q(0);    // evaluated at the disk number w = -6
  bool table_cross_check = false;
};

// <P^2, P> = <P^3, 1> = 3 * (coefficient of P^2 in the reduction of P^3),
// the 3 being <P, P> on the surface
inline LineCountReport line_count() {
  LineCountReport R;
  MonoOrder ord = order_wp();
  std::vector<Poly<Q>> G{shifted_relation(4, 3)};
  Poly<Q> P3 = Poly<Q>::monomial(2, Mono{0, 3}, Q(1));
  QPoly lam = wp_coeff(normal_form(P3, G, ord), 2);
  R.count_form = qp_mul(QPoly{Q(3)}, lam);
  R.count_at_w = qp_eval(R.count_form, Q(-6));
  FrobAlgebra X = cubic_surface();
  R.table_cross_check = X.pair(X.mul(X.c1, X.c1), X.c1) == R.count_at_w;
  return R;
}

// ---------------------------------------------------------------------------
// Structure-constant text format: lines "basis ...", "unit name", "c1 expr",
// "pair name name rational", "prod name name = expr", where expr is a sum of
// terms c, c*name or name. Unknown names and malformed lines throw.

inline std::vector<Q> parse_combination(const FrobAlgebra& A, const std::string& s) {
  auto idx = [&](const std::string& nm) {
    for (size_t i = 0; i < A.names.size(); ++i)
      if (A.names[i] == nm) return i;
    throw std::runtime_error("unknown basis element: " + nm);
  };
  std::vector<Q> v(A.dim(), Q(0));
  size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    Q sign(1);
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = Q(-1);
      ++i;
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           s[j] != '+' && s[j] != '-' && s[j] != '*')
      ++j;
    std::string tok = s.substr(i, j - i);
    if (tok.empty()) throw std::runtime_error("malformed combination: " + s);
    Q coef(1);
    std::string name;
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      coef = q_parse(tok);
      size_t k = j;
      while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
      if (k < s.size() && s[k] == '*') {
        ++k;
        while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
        size_t l = k;
        while (l < s.size() && !std::isspace(static_cast<unsigned char>(s[l])) &&
               s[l] != '+' && s[l] != '-')
          ++l;
        name = s.substr(k, l - k);
        j = l;
      }
    } else {
      name = tok;
    }
    if (name.empty()) {
      // bare constant: a multiple of the unit
      for (size_t k = 0; k < A.dim(); ++k) v[k] += sign * coef * A.unit[k];
    } else {
      v[idx(name)] += sign * coef;
    }
    any = true;
    i = j;
  }
  if (!any) throw std::runtime_error("empty combination");
  return v;
}

inline FrobAlgebra algebra_from_text(std::istream& in) {
  FrobAlgebra A;
  std::string line;
  auto idx = [&](const std::string& nm) {
    for (size_t i = 0; i < A.names.size(); ++i)
      if (A.names[i] == nm) return i;
    throw std::runtime_error("unknown basis element: " + nm);
  };
  std::vector<std::tuple<std::string, std::string, std::string>> prods;
  std::string c1_expr;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "basis") {
      std::string nm;
      while (ls >> nm) A.names.push_back(nm);
      const size_t d = A.dim();
      A.sc.assign(d, std::vector<std::vector<Q>>(d, std::vector<Q>(d, Q(0))));
      A.pairing.assign(d, std::vector<Q>(d, Q(0)));
    } else if (key == "unit") {
      std::string nm;
      ls >> nm;
      A.unit.assign(A.dim(), Q(0));
      A.unit[idx(nm)] = Q(1);
    } else if (key == "c1") {
      std::getline(ls, c1_expr);
    } else if (key == "pair") {
      std::string x, y, val;
      ls >> x >> y >> val;
      A.pairing[idx(x)][idx(y)] = q_parse(val);
      A.pairing[idx(y)][idx(x)] = q_parse(val);
    } else if (key == "prod") {
      std::string x, y, eq, rest;
      ls >> x >> y >> eq;
      if (eq != "=") throw std::runtime_error("expected '=': " + line);
      std::getline(ls, rest);
      prods.emplace_back(x, y, rest);
    } else {
      throw std::runtime_error("unknown directive: " + key);
    }
  }
  if (A.unit.empty()) throw std::runtime_error("no unit declared");
  for (auto& [x, y, e] : prods) {
    auto v = parse_combination(A, e);
    A.sc[idx(x)][idx(y)] = v;
    A.sc[idx(y)][idx(x)] = v;
  }
  size_t u = 0;
  while (u < A.dim() && kv_is_zero(A.unit[u])) ++u;
  for (size_t j = 0; j < A.dim(); ++j) {
    A.sc[u][j] = A.basis_vec(j);
    A.sc[j][u] = A.basis_vec(j);
  }
  A.c1 = c1_expr.empty() ? A.unit : parse_combination(A, c1_expr);
  return A;
}

inline void algebra_to_text(const FrobAlgebra& A, std::ostream& out) {
  out << "basis";
  for (const auto& nm : A.names) out << " " << nm;
  out << "\n";
  for (size_t i = 0; i < A.dim(); ++i)
    if (A.unit == A.basis_vec(i)) out << "unit " << A.names[i] << "\n";
  auto combo = [&](const std::vector<Q>& v) {
    std::string s;
    for (size_t k = 0; k < v.size(); ++k) {
      if (kv_is_zero(v[k])) continue;
      Q c = v[k];
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      Q ac = abs(c);
      if (ac != 1)
        s += kv_str(ac) + "*" + A.names[k];
      else
        s += A.names[k];
    }
    return s.empty() ? "0*" + A.names[0] : s;
  };
  out << "c1 " << combo(A.c1) << "\n";
  for (size_t i = 0; i < A.dim(); ++i)
    for (size_t j = i; j < A.dim(); ++j)
      if (!kv_is_zero(A.pairing[i][j]))
        out << "pair " << A.names[i] << " " << A.names[j] << " "
            << kv_str(A.pairing[i][j]) << "\n";
  for (size_t i = 0; i < A.dim(); ++i)
    for (size_t j = i; j < A.dim(); ++j)
      out << "prod " << A.names[i] << " " << A.names[j] << " = "
          << combo(A.sc[i][j]) << "\n";
}

}  // namespace lgalg
