#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgalg/linalg.hpp"
#include "lgalg/poly.hpp"
#include "lgalg/rational.hpp"

namespace lgalg {

// ---------------------------------------------------------------------------
// Block-truncated polynomial scalars.
//
// TPoly<B> is a polynomial over B whose variables are partitioned into blocks,
// each block carrying an optional total-degree cap; monomials exceeding a cap
// are dropped on every operation.  This is the coefficient ring for structure
// constants computed "up to order rho in the deformation block": arithmetic
// stays exact below the caps and silently truncates above them.
// ---------------------------------------------------------------------------

struct TCtx {
  std::vector<std::string> names;
  std::vector<int> block;  // block id per variable
  std::vector<long> cap;   // per block; cap < 0 means unbounded
  int nv() const { return static_cast<int>(names.size()); }
};

inline std::shared_ptr<const TCtx> make_tctx(std::vector<std::string> names,
                                             std::vector<int> block,
                                             std::vector<long> cap) {
  auto c = std::make_shared<TCtx>();
  c->names = std::move(names);
  c->block = std::move(block);
  c->cap = std::move(cap);
  if (c->block.size() != c->names.size())
    throw std::invalid_argument("make_tctx: block/name size mismatch");
  return c;
}

template <class B>
struct TPoly {
  std::shared_ptr<const TCtx> ctx;  // null: context-free constant
  Poly<B> p{0};

  TPoly() = default;
  TPoly(int k) : p(0) {  // NOLINT: implicit by design (integer literals)
    if (k != 0) {
      if constexpr (std::is_constructible_v<B, int>)
        p.add_term(Mono{}, B(k));
      else
        throw std::logic_error("TPoly literal needs int-constructible base");
    }
  }
  TPoly(std::shared_ptr<const TCtx> c, Poly<B> q) : ctx(std::move(c)), p(std::move(q)) {
    if (ctx && p.nvars != ctx->nv())
      throw std::invalid_argument("TPoly: nvars mismatch with context");
    truncate();
  }

  bool is_zero() const { return p.t.empty(); }

  void truncate() {
    if (!ctx) return;
    for (auto it = p.t.begin(); it != p.t.end();) {
      if (over_cap(it->first))
        it = p.t.erase(it);
      else
        ++it;
    }
  }

  bool over_cap(const Mono& m) const {
    size_t nb = ctx->cap.size();
    std::vector<long> tot(nb, 0);
    for (int v = 0; v < ctx->nv(); ++v) tot[ctx->block[v]] += m[v];
    for (size_t b = 0; b < nb; ++b)
      if (ctx->cap[b] >= 0 && tot[b] > ctx->cap[b]) return true;
    return false;
  }

  static Poly<B> lifted(const TPoly& x, const std::shared_ptr<const TCtx>& c) {
    if (x.ctx) return x.p;
    Poly<B> r = Poly<B>::zero(c->nv());
    for (const auto& [m, cf] : x.p.t) r.add_term(Mono(c->nv(), 0), cf);
    return r;
  }

  static std::shared_ptr<const TCtx> merge(const TPoly& a, const TPoly& b) {
    if (a.ctx && b.ctx && a.ctx != b.ctx)
      throw std::invalid_argument("TPoly: mixed contexts");
    return a.ctx ? a.ctx : b.ctx;
  }

  friend TPoly operator+(const TPoly& a, const TPoly& b) {
    auto c = merge(a, b);
    if (!c) { TPoly r; r.p = a.p + b.p; return r; }
    return TPoly(c, lifted(a, c) + lifted(b, c));
  }
  friend TPoly operator-(const TPoly& a, const TPoly& b) {
    auto c = merge(a, b);
    if (!c) { TPoly r; r.p = a.p - b.p; return r; }
    return TPoly(c, lifted(a, c) - lifted(b, c));
  }
  friend TPoly operator*(const TPoly& a, const TPoly& b) {
    auto c = merge(a, b);
    if (!c) { TPoly r; r.p = a.p * b.p; return r; }
    return TPoly(c, lifted(a, c) * lifted(b, c));
  }
  TPoly operator-() const {
    TPoly r = *this;
    r.p = -r.p;
    return r;
  }
  friend bool operator==(const TPoly& a, const TPoly& b) {
    auto c = merge(a, b);
    if (!c) return a.p == b.p;
    return lifted(a, c) == lifted(b, c);
  }
  friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }
};

template <class B>
bool kv_is_zero(const TPoly<B>& x) {
  return x.is_zero();
}

template <class B>
TPoly<B> kv_int(const TPoly<B>& sample, long k) {
  B bs{};
  if (!sample.p.t.empty())
    bs = kv_int(sample.p.t.begin()->second, k);
  else if constexpr (std::is_constructible_v<B, int>)
    bs = kv_int(B(0), k);
  else
    throw std::logic_error("kv_int(TPoly): empty sample over non-literal base");
  TPoly<B> r;
  r.ctx = sample.ctx;
  r.p = Poly<B>::zero(sample.ctx ? sample.ctx->nv() : 0);
  if (!kv_is_zero(bs)) r.p.add_term(Mono(r.p.nvars, 0), bs);
  return r;
}

// Inverse by geometric series around the constant term.  Requires the
// non-constant part to be nilpotent under truncation, i.e. every monomial
// must touch at least one capped block.
template <class B>
TPoly<B> kv_inv(const TPoly<B>& x) {
  Mono zm(x.p.nvars, 0);
  auto it = x.p.t.find(zm);
  if (it == x.p.t.end())
    throw std::domain_error("TPoly inverse: zero constant term");
  B c0 = it->second;
  B c0i = kv_inv(c0);
  TPoly<B> n = x;
  n.p.t.erase(zm);
  if (n.is_zero()) {
    TPoly<B> r;
    r.ctx = x.ctx;
    r.p = Poly<B>::constant(x.p.nvars, c0i);
    return r;
  }
  if (!x.ctx) throw std::domain_error("TPoly inverse: non-constant without context");
  long bound = 0;
  for (const auto& [m, cf] : n.p.t) {
    bool capped = false;
    for (int v = 0; v < x.ctx->nv(); ++v)
      if (m[v] > 0 && x.ctx->cap[x.ctx->block[v]] >= 0) capped = true;
    if (!capped)
      throw std::domain_error("TPoly inverse: non-nilpotent tail");
  }
  for (long cb : x.ctx->cap)
    if (cb >= 0) bound += cb;
  // x = c0 (1 + c0^{-1} n);  x^{-1} = c0^{-1} sum (-c0^{-1} n)^k
  TPoly<B> u = n;
  u.p = u.p.template map_coeffs<B>([&](const B& c) { return B(-(c0i * c)); });
  TPoly<B> acc = kv_int(TPoly<B>(x.ctx, Poly<B>::constant(x.p.nvars, c0)), 1);
  TPoly<B> term = acc;
  for (long k = 1; k <= bound; ++k) {
    term = term * u;
    if (term.is_zero()) break;
    acc = acc + term;
  }
  TPoly<B> sc;
  sc.ctx = x.ctx;
  sc.p = Poly<B>::constant(x.p.nvars, c0i);
  return sc * acc;
}

template <class B>
std::string kv_str(const TPoly<B>& x) {
  if (!x.ctx) {
    if (x.p.t.empty()) return "0";
    return kv_str(x.p.t.begin()->second);
  }
  return poly_str(x.p, x.ctx->names);
}

template <class B>
TPoly<B> tp_const(const std::shared_ptr<const TCtx>& c, const B& v) {
  return TPoly<B>(c, Poly<B>::constant(c->nv(), v));
}

template <class B>
TPoly<B> tp_var(const std::shared_ptr<const TCtx>& c, int i, const B& one) {
  return TPoly<B>(c, Poly<B>::var(c->nv(), i, one));
}

// Substitute values for a subset of variables (exact, then re-truncate).
template <class B>
TPoly<B> tp_eval_vars(const TPoly<B>& x, const std::map<int, B>& vals) {
  if (!x.ctx) return x;
  Poly<B> q = x.p;
  for (const auto& [v, c] : vals) q = q.subst(v, Poly<B>::constant(q.nvars, c));
  return TPoly<B>(x.ctx, std::move(q));
}

// Full evaluation at a point (all variables).
template <class B>
B tp_eval(const TPoly<B>& x, const std::vector<B>& pt, const B& zero) {
  if (!x.ctx) return x.p.t.empty() ? zero : x.p.t.begin()->second;
  if (x.p.t.empty()) return zero;
  return x.p.eval(pt);
}

// Part of given total degree in one block.
template <class B>
TPoly<B> tp_block_part(const TPoly<B>& x, int blk, long deg) {
  if (!x.ctx) {
    if (deg == 0) return x;
    return TPoly<B>();
  }
  std::vector<int> vars;
  for (int v = 0; v < x.ctx->nv(); ++v)
    if (x.ctx->block[v] == blk) vars.push_back(v);
  return TPoly<B>(x.ctx, x.p.homogeneous_part_in(vars, deg));
}

using TPolyQ = TPoly<Q>;

// ---------------------------------------------------------------------------
// A-infinity algebras with a distinguished basis.
//
// Structure maps are sparse tables: mu[s] maps an input tuple to an output
// element.  Tuple keys are stored with key[0] the RIGHTMOST argument, i.e.
// mu^s(a_s, ..., a_1) is keyed by {a_1, a_2, ..., a_s}.  parity is the
// cohomological Z/2 degree sigma; all operation signs in this file reduce to
// the single primitive: an odd operator acting at a tensor slot picks up
// (-1)^{sum of reduced degrees strictly to the right of the slot}, where the
// reduced degree of a basis element is sigma + 1 mod 2.
// ---------------------------------------------------------------------------

template <class K>
using AElt = std::map<size_t, K>;  // sparse element: basis index -> coefficient

template <class K>
void ae_add(AElt<K>& a, size_t i, const K& c) {
  if (kv_is_zero(c)) return;
  auto it = a.find(i);
  if (it == a.end()) {
    a.emplace(i, c);
  } else {
    it->second = it->second + c;
    if (kv_is_zero(it->second)) a.erase(it);
  }
}

template <class K>
void ae_add_scaled(AElt<K>& a, const AElt<K>& b, const K& c) {
  if (kv_is_zero(c)) return;
  for (const auto& [i, v] : b) ae_add(a, i, K(c * v));
}

template <class K>
AElt<K> ae_scale(const AElt<K>& a, const K& c) {
  AElt<K> r;
  ae_add_scaled(r, a, c);
  return r;
}

template <class K>
bool ae_is_zero(const AElt<K>& a) {
  return a.empty();
}

template <class K>
struct AInf {
  std::vector<std::string> names;
  std::vector<int> parity;   // sigma mod 2
  std::vector<long> weight;  // auxiliary integer labels (filtration weights)
  size_t unit = SIZE_MAX;    // strict unit index, if any
  int s_max = 0;
  K sample{};  // nonzero scalar sample for coefficient construction
  // mu[s]: input tuple (key[0] = rightmost argument) -> output element
  std::vector<std::map<std::vector<uint32_t>, AElt<K>>> mu;

  size_t dim() const { return names.size(); }
  int sprime(size_t b) const { return (parity[b] + 1) & 1; }

  void set_smax(int s) {
    s_max = s;
    mu.assign(static_cast<size_t>(s) + 1, {});
  }

  void add_mu(int s, const std::vector<uint32_t>& in, size_t out, const K& c) {
    if (s < 0 || s > s_max) throw std::out_of_range("add_mu: arity out of range");
    if (static_cast<int>(in.size()) != s)
      throw std::invalid_argument("add_mu: tuple length != arity");
    auto& elt = mu[s][in];
    ae_add(elt, out, c);
    if (elt.empty()) mu[s].erase(in);
  }

  const AElt<K>* mu_at(int s, const std::vector<uint32_t>& in) const {
    if (s < 0 || s > s_max) return nullptr;
    auto it = mu[s].find(in);
    return it == mu[s].end() ? nullptr : &it->second;
  }

  K unit_one() const { return kv_int(sample, 1); }
};

// Multilinear evaluation of mu^s on sparse elements; args[0] is the rightmost
// argument a_1.  No signs here: signs belong to the calling convention.
template <class K>
AElt<K> mu_eval(const AInf<K>& A, int s, const std::vector<AElt<K>>& args) {
  AElt<K> acc;
  if (s < 0 || s > A.s_max) return acc;
  for (const auto& [key, out] : A.mu[s]) {
    bool live = true;
    K coeff = A.unit_one();
    for (int i = 0; i < s && live; ++i) {
      auto it = args[i].find(key[i]);
      if (it == args[i].end())
        live = false;
      else
        coeff = coeff * it->second;
    }
    if (!live || kv_is_zero(coeff)) continue;
    ae_add_scaled(acc, out, coeff);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// A-infinity relation check.
//
// For each s and each basis tuple (a_s, ..., a_1), the residual
//   sum_{i+j+k=s} (-1)^{maltese(i)} mu^{i+k+1}(a_s..a_{i+j+1},
//                                              mu^j(a_{i+j}..a_{i+1}),
//                                              a_i..a_1)
// must vanish, where maltese(i) is the sum of reduced degrees of the i
// rightmost arguments.  Relation terms that would need an arity beyond s_max
// are dropped and counted, so the result is a statement "modulo arity > s_max"
// whenever truncated > 0.
// ---------------------------------------------------------------------------

struct AinfReport {
  bool ok = true;
  long checked = 0;
  long truncated = 0;  // relation terms dropped for arity > s_max
  bool sampled = false;
  int fail_s = -1;
  std::vector<uint32_t> fail_tuple;  // storage order (rightmost first)
  std::string detail;
};

template <class K>
AElt<K> ainf_residual(const AInf<K>& A, const std::vector<uint32_t>& key,
                      long* truncated) {
  const int s = static_cast<int>(key.size());
  AElt<K> acc;
  for (int i = 0; i <= s; ++i) {
    for (int j = 0; i + j <= s; ++j) {
      if (j == 0 && A.mu[0].empty()) continue;
      const int outer = s - j + 1;
      if (outer > A.s_max) {
        // inner may still vanish; only count a genuine drop
        std::vector<uint32_t> inner_key(key.begin() + i, key.begin() + i + j);
        if (A.mu_at(j, inner_key) && truncated) ++(*truncated);
        continue;
      }
      std::vector<uint32_t> inner_key(key.begin() + i, key.begin() + i + j);
      const AElt<K>* inner = A.mu_at(j, inner_key);
      if (!inner) continue;
      int sg = 0;
      for (int m = 0; m < i; ++m) sg += A.sprime(key[m]);
      const bool neg = sg & 1;
      for (const auto& [b, cb] : *inner) {
        std::vector<uint32_t> okey;
        okey.reserve(outer);
        okey.insert(okey.end(), key.begin(), key.begin() + i);
        okey.push_back(static_cast<uint32_t>(b));
        okey.insert(okey.end(), key.begin() + i + j, key.end());
        const AElt<K>* out = A.mu_at(outer, okey);
        if (!out) continue;
        ae_add_scaled(acc, *out, neg ? K(-cb) : cb);
      }
    }
  }
  return acc;
}

template <class K>
AinfReport ainf_verify(const AInf<K>& A, int s_lo = 0, int s_hi = -1,
                       long tuple_cap = 2000000) {
  AinfReport rep;
  if (s_hi < 0) s_hi = A.s_max;
  const size_t d = A.dim();
  for (int s = s_lo; s <= s_hi && rep.ok; ++s) {
    if (s == 0) {
      if (A.mu[0].empty()) continue;
      long tr = 0;
      AElt<K> r = ainf_residual(A, {}, &tr);
      rep.truncated += tr;
      ++rep.checked;
      if (!ae_is_zero(r)) {
        rep.ok = false;
        rep.fail_s = 0;
        rep.detail = "curvature relation fails";
      }
      continue;
    }
    double total = 1;
    for (int i = 0; i < s; ++i) total *= static_cast<double>(d);
    auto check_tuple = [&](const std::vector<uint32_t>& key) {
      long tr = 0;
      AElt<K> r = ainf_residual(A, key, &tr);
      rep.truncated += tr;
      ++rep.checked;
      if (!ae_is_zero(r)) {
        rep.ok = false;
        rep.fail_s = s;
        rep.fail_tuple = key;
        std::ostringstream os;
        os << "relation fails at s=" << s << " on (";
        for (int i = s - 1; i >= 0; --i)
          os << A.names[key[i]] << (i ? "," : "");
        os << "); residual:";
        for (const auto& [b, c] : r)
          os << " " << kv_str(c) << "*" << A.names[b];
        rep.detail = os.str();
      }
    };
    if (total <= static_cast<double>(tuple_cap)) {
      std::vector<uint32_t> key(s, 0);
      bool done = false;
      while (!done && rep.ok) {
        check_tuple(key);
        int pos = 0;
        while (pos < s) {
          if (++key[pos] < d) break;
          key[pos] = 0;
          ++pos;
        }
        if (pos == s) done = true;
      }
    } else {
      rep.sampled = true;
      uint64_t state = 0x9e3779b97f4a7c15ull;
      auto next = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 16;
      };
      for (long n = 0; n < tuple_cap && rep.ok; ++n) {
        std::vector<uint32_t> key(s);
        for (int i = 0; i < s; ++i) key[i] = static_cast<uint32_t>(next() % d);
        check_tuple(key);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Text serialization.
//
//   ainf v1
//   dim <d> smax <s>
//   basis <name> parity <p> weight <w>
//   unit <name>            (omitted when there is none)
//   mu <s> | in: xL,...,x1 | out: (c)*name + ...
//
// The in-list is written in application order mu^s(x_s, ..., x_1), i.e. the
// leftmost listed name is the last argument; coefficients are parenthesized.
// ---------------------------------------------------------------------------

template <class K>
std::string ainf_to_text(const AInf<K>& A) {
  std::ostringstream os;
  os << "ainf v1\n";
  os << "dim " << A.dim() << " smax " << A.s_max << "\n";
  for (size_t b = 0; b < A.dim(); ++b)
    os << "basis " << A.names[b] << " parity " << A.parity[b] << " weight "
       << A.weight[b] << "\n";
  if (A.unit != SIZE_MAX) os << "unit " << A.names[A.unit] << "\n";
  for (int s = 0; s <= A.s_max; ++s) {
    for (const auto& [key, out] : A.mu[s]) {
      os << "mu " << s << " | in:";
      for (int i = s - 1; i >= 0; --i)
        os << (i == s - 1 ? " " : ",") << A.names[key[i]];
      os << " | out:";
      bool first = true;
      for (const auto& [b, c] : out) {
        os << (first ? " " : " + ") << "(" << kv_str(c) << ")*" << A.names[b];
        first = false;
      }
      os << "\n";
    }
  }
  return os.str();
}

template <class K>
AInf<K> ainf_from_text(const std::string& text, const K& sample,
                       const std::function<K(const std::string&)>& parse_coeff) {
  AInf<K> A;
  A.sample = sample;
  std::map<std::string, size_t> index;
  std::istringstream is(text);
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  std::string unit_name;
  struct MuLine {
    int s;
    std::string in, out;
  };
  std::vector<MuLine> mus;
  int smax = 0;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "ainf" || tok == "dim") {
      if (tok == "dim") {
        size_t d;
        std::string sm;
        ls >> d >> sm >> smax;
      }
    } else if (tok == "basis") {
      std::string name, pk, wk;
      int p;
      long w = 0;
      ls >> name >> pk >> p;
      if (ls >> wk >> w) {
      }
      index[name] = A.names.size();
      A.names.push_back(name);
      A.parity.push_back(p);
      A.weight.push_back(w);
    } else if (tok == "unit") {
      ls >> unit_name;
    } else if (tok == "mu") {
      int s;
      ls >> s;
      size_t p1 = line.find("| in:");
      size_t p2 = line.find("| out:");
      if (p1 == std::string::npos || p2 == std::string::npos)
        throw std::invalid_argument("ainf_from_text: malformed mu line");
      mus.push_back({s, trim(line.substr(p1 + 5, p2 - (p1 + 5))),
                     trim(line.substr(p2 + 6))});
    } else {
      throw std::invalid_argument("ainf_from_text: unknown directive " + tok);
    }
  }
  A.set_smax(smax);
  if (!unit_name.empty()) {
    auto it = index.find(unit_name);
    if (it == index.end())
      throw std::invalid_argument("ainf_from_text: unknown unit name");
    A.unit = it->second;
  }
  for (const auto& m : mus) {
    std::vector<uint32_t> key;
    if (!m.in.empty()) {
      std::vector<std::string> parts;
      std::string cur;
      for (char ch : m.in) {
        if (ch == ',') {
          parts.push_back(trim(cur));
          cur.clear();
        } else {
          cur += ch;
        }
      }
      parts.push_back(trim(cur));
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        auto f = index.find(*it);
        if (f == index.end())
          throw std::invalid_argument("ainf_from_text: unknown basis " + *it);
        key.push_back(static_cast<uint32_t>(f->second));
      }
    }
    if (static_cast<int>(key.size()) != m.s)
      throw std::invalid_argument("ainf_from_text: arity/tuple mismatch");
    // out: (c)*name + (c)*name + ...
    size_t pos = 0;
    while (pos < m.out.size()) {
      size_t lp = m.out.find('(', pos);
      if (lp == std::string::npos) break;
      int depth = 0;
      size_t rp = lp;
      for (; rp < m.out.size(); ++rp) {
        if (m.out[rp] == '(') ++depth;
        if (m.out[rp] == ')' && --depth == 0) break;
      }
      if (rp >= m.out.size() || m.out[rp] != ')')
        throw std::invalid_argument("ainf_from_text: unbalanced coefficient");
      std::string cs = m.out.substr(lp + 1, rp - lp - 1);
      size_t st = m.out.find('*', rp);
      if (st == std::string::npos)
        throw std::invalid_argument("ainf_from_text: missing *name");
      size_t ne = m.out.find(" + ", st);
      std::string name = (ne == std::string::npos)
                             ? trim(m.out.substr(st + 1))
                             : trim(m.out.substr(st + 1, ne - st - 1));
      auto f = index.find(name);
      if (f == index.end())
        throw std::invalid_argument("ainf_from_text: unknown output " + name);
      A.add_mu(m.s, key, f->second, parse_coeff(cs));
      pos = (ne == std::string::npos) ? m.out.size() : ne + 3;
    }
  }
  return A;
}

// ---------------------------------------------------------------------------
// Strict unit certificate: mu^2(x, e) = x, mu^2(e, x) = (-1)^{sigma(x)} x,
// and e never appears in any other structure map input.
// ---------------------------------------------------------------------------

template <class K>
bool unit_strict(const AInf<K>& A, std::string* why = nullptr) {
  if (A.unit == SIZE_MAX) {
    if (why) *why = "no unit set";
    return false;
  }
  const size_t e = A.unit;
  const K one = A.unit_one();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (A.parity[e] != 0) return fail("unit has odd parity");
  const auto eu = static_cast<uint32_t>(e);
  for (size_t x = 0; x < A.dim(); ++x) {
    const AElt<K>* r = A.mu_at(2, {eu, static_cast<uint32_t>(x)});
    AElt<K> want;
    ae_add(want, x, one);
    if (!r || !(*r == want)) return fail("mu^2(x,e) != x at " + A.names[x]);
    if (x == e) continue;
    const AElt<K>* l = A.mu_at(2, {static_cast<uint32_t>(x), eu});
    AElt<K> wl;
    ae_add(wl, x, A.parity[x] ? K(-one) : one);
    if (!l || !(*l == wl))
      return fail("mu^2(e,x) != (-1)^sigma x at " + A.names[x]);
  }
  for (int s = 0; s <= A.s_max; ++s) {
    if (s == 2) continue;
    for (const auto& [key, out] : A.mu[s])
      for (uint32_t k : key)
        if (k == e) return fail("unit appears in mu^" + std::to_string(s));
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hochschild cochains and operations.
//
// A cochain is a collection of multilinear components, one table per arity,
// plus a single reduced parity sp.  The circle product inserts psi into phi at
// every slot, with sign (-1)^{sp(psi) * maltese(slot)}.
// ---------------------------------------------------------------------------

template <class K>
struct Cochain {
  std::map<int, std::map<std::vector<uint32_t>, AElt<K>>> val;
  int sp = 0;  // reduced parity of the cochain as an operator

  void add(int s, const std::vector<uint32_t>& in, size_t out, const K& c) {
    auto& e = val[s][in];
    ae_add(e, out, c);
    if (e.empty()) {
      val[s].erase(in);
      if (val[s].empty()) val.erase(s);
    }
  }
  bool is_zero() const {
    for (const auto& [s, tab] : val)
      if (!tab.empty()) return false;
    return true;
  }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    auto norm = [](const Cochain& c) {
      std::map<int, std::map<std::vector<uint32_t>, AElt<K>>> m;
      for (const auto& [s, tab] : c.val)
        for (const auto& [k, v] : tab)
          if (!v.empty()) m[s][k] = v;
      return m;
    };
    return norm(a) == norm(b);
  }
};

template <class K>
Cochain<K> mu_cochain(const AInf<K>& A) {
  Cochain<K> c;
  c.sp = 1;
  for (int s = 0; s <= A.s_max; ++s)
    for (const auto& [key, out] : A.mu[s])
      for (const auto& [b, cf] : out) c.add(s, key, b, cf);
  return c;
}

template <class K>
Cochain<K> gerst_circ(const AInf<K>& A, const Cochain<K>& phi,
                      const Cochain<K>& psi, int arity_cap) {
  Cochain<K> r;
  r.sp = (phi.sp + psi.sp) & 1;
  for (const auto& [fs, ftab] : phi.val) {
    for (const auto& [fkey, fout] : ftab) {
      for (int q = 0; q < fs; ++q) {
        for (const auto& [ps, ptab] : psi.val) {
          if (fs + ps - 1 > arity_cap) continue;
          for (const auto& [pkey, pout] : ptab) {
            auto it = pout.find(fkey[q]);
            if (it == pout.end()) continue;
            int sg = 0;
            for (int m = 0; m < q; ++m) sg += (A.sprime(fkey[m]) * psi.sp);
            std::vector<uint32_t> nk;
            nk.reserve(fs + ps - 1);
            nk.insert(nk.end(), fkey.begin(), fkey.begin() + q);
            nk.insert(nk.end(), pkey.begin(), pkey.end());
            nk.insert(nk.end(), fkey.begin() + q + 1, fkey.end());
            const K c = (sg & 1) ? K(-it->second) : it->second;
            for (const auto& [b, cf] : fout)
              r.add(fs + ps - 1, nk, b, K(cf * c));
          }
        }
      }
    }
  }
  return r;
}

template <class K>
Cochain<K> cc_sub(const Cochain<K>& a, const Cochain<K>& b, int sign_b) {
  Cochain<K> r = a;
  for (const auto& [s, tab] : b.val)
    for (const auto& [k, v] : tab)
      for (const auto& [idx, c] : v) r.add(s, k, idx, sign_b < 0 ? K(-c) : c);
  return r;
}

template <class K>
Cochain<K> gerst_bracket(const AInf<K>& A, const Cochain<K>& phi,
                         const Cochain<K>& psi, int arity_cap) {
  Cochain<K> fg = gerst_circ(A, phi, psi, arity_cap);
  Cochain<K> gf = gerst_circ(A, psi, phi, arity_cap);
  int sg = (phi.sp * psi.sp) & 1;
  Cochain<K> r = cc_sub(fg, gf, sg ? +1 : -1);
  r.sp = (phi.sp + psi.sp) & 1;
  return r;
}

// Hochschild differential delta(phi) = [mu, phi], truncated at arity_cap.
template <class K>
Cochain<K> hodelta(const AInf<K>& A, const Cochain<K>& phi, int arity_cap) {
  return gerst_bracket(A, mu_cochain(A), phi, arity_cap);
}

// Yoneda product on cochains.  With inputs written (a_s, ..., a_1),
//   (phi * psi)(a_s..a_1) = sum over s >= l >= k >= j >= i >= 0 of
//     (-1)^dd mu(a_s.., phi(a_l..a_{k+1}), a_k.., psi(a_j..a_{i+1}), a_i..a_1),
//   dd = sp(phi)*[sigma' sum of a_1..a_k] + sp(psi)*[sigma' sum of a_1..a_i].
// Each inserted map crosses the raw inputs strictly below its own block,
// the same counting as the Gerstenhaber product; with this convention the
// product of two delta-closed cochains is delta-closed.
template <class K>
Cochain<K> cc_yoneda(const AInf<K>& A, const Cochain<K>& phi,
                     const Cochain<K>& psi, int arity_cap) {
  Cochain<K> r;
  r.sp = (phi.sp + psi.sp + 1) & 1;
  for (int m = 2; m <= A.s_max; ++m) {
    for (const auto& [mkey, mout] : A.mu[m]) {
      // psi lands in storage slot qs, phi in slot fs2 > qs (phi to the left).
      for (int qs = 0; qs < m; ++qs) {
        for (int fs2 = qs + 1; fs2 < m; ++fs2) {
          for (const auto& [qa, qtab] : psi.val) {
            for (const auto& [pa, ptab] : phi.val) {
              const int s = m - 2 + qa + pa;
              if (s > arity_cap) continue;
              for (const auto& [qkey, qout] : qtab) {
                auto qit = qout.find(mkey[qs]);
                if (qit == qout.end()) continue;
                int mi = 0;
                for (int t = 0; t < qs; ++t) mi += A.sprime(mkey[t]);
                int mk = mi;
                for (uint32_t b : qkey) mk += A.sprime(b);
                for (int t = qs + 1; t < fs2; ++t) mk += A.sprime(mkey[t]);
                for (const auto& [pkey, pout] : ptab) {
                  auto pit = pout.find(mkey[fs2]);
                  if (pit == pout.end()) continue;
                  const int sg = (phi.sp * mk + psi.sp * mi) & 1;
                  std::vector<uint32_t> nk;
                  nk.reserve(s);
                  nk.insert(nk.end(), mkey.begin(), mkey.begin() + qs);
                  nk.insert(nk.end(), qkey.begin(), qkey.end());
                  nk.insert(nk.end(), mkey.begin() + qs + 1,
                            mkey.begin() + fs2);
                  nk.insert(nk.end(), pkey.begin(), pkey.end());
                  nk.insert(nk.end(), mkey.begin() + fs2 + 1, mkey.end());
                  K c = K(qit->second * pit->second);
                  if (sg) c = -c;
                  for (const auto& [ob, oc] : mout) r.add(s, nk, ob, K(oc * c));
                }
              }
            }
          }
        }
      }
    }
  }
  return r;
}

// Hochschild chain m (x) a_s (x) .. (x) a_1, the algebra itself as the
// coefficient slot; keys stored [m, a_1, .., a_s].
template <class K>
struct HChain {
  std::map<std::vector<uint32_t>, K> val;
  void add(const std::vector<uint32_t>& key, const K& c) {
    if (kv_is_zero(c)) return;
    auto [it, fresh] = val.try_emplace(key, c);
    if (!fresh) {
      it->second = K(it->second + c);
      if (kv_is_zero(it->second)) val.erase(it);
    }
  }
  bool is_zero() const { return val.empty(); }
  friend bool operator==(const HChain& a, const HChain& b) {
    return a.val == b.val;
  }
};

// Cap product of a cochain on chains:
//   alpha cap (m (x) a_s .. a_1) = sum over s >= l >= k >= j >= i >= 0 of
//     +- mu(a_i..a_1, m, a_s.., alpha(a_l..a_{k+1}), a_k..a_{j+1})
//        (x) a_j (x) .. (x) a_{i+1},
// sign (-1)^dd with
//   dd = [sig' sum a_1..a_i]*(sigma(m) + [sig' sum a_{i+1}..a_s])
//        + sp(alpha)*[sig' sum a_{i+1}..a_k] + [sig' sum a_{i+1}..a_j]
// times the coefficient-slot sign (-1)^{1 + sig' sum of inputs right of m}.
template <class K>
HChain<K> cc_cap(const AInf<K>& A, const Cochain<K>& alpha,
                 const HChain<K>& ch) {
  HChain<K> r;
  for (const auto& [ck, cc] : ch.val) {
    const int s = static_cast<int>(ck.size()) - 1;
    std::vector<int> sp(s + 1, 0);
    for (int t = 1; t <= s; ++t) sp[t] = A.sprime(ck[t]);
    for (int l = s; l >= 0; --l)
      for (int k = l; k >= 0; --k) {
        auto ai = alpha.val.find(l - k);
        if (ai == alpha.val.end()) continue;
        std::vector<uint32_t> akey(ck.begin() + k + 1, ck.begin() + l + 1);
        auto ae = ai->second.find(akey);
        if (ae == ai->second.end()) continue;
        for (int j = k; j >= 0; --j)
          for (int i = j; i >= 0; --i) {
            const int arity = (k - j) + (s - l) + i + 2;
            if (arity > A.s_max) continue;
            int x1i = 0, xs = 0, xk = 0, xj = 0;
            for (int t = 1; t <= i; ++t) x1i += sp[t];
            for (int t = i + 1; t <= s; ++t) xs += sp[t];
            for (int t = i + 1; t <= k; ++t) xk += sp[t];
            for (int t = i + 1; t <= j; ++t) xj += sp[t];
            int dia = 1;
            for (int t = l + 1; t <= s; ++t) dia += sp[t];
            for (int t = j + 1; t <= k; ++t) dia += sp[t];
            const int base =
                x1i * (A.parity[ck[0]] + xs) + alpha.sp * xk + xj;
            for (const auto& [ab, ac] : ae->second) {
              const int sg = (base + dia + A.sprime(ab)) & 1;
              std::vector<uint32_t> mk;
              mk.reserve(arity);
              for (int t = j + 1; t <= k; ++t) mk.push_back(ck[t]);
              mk.push_back(ab);
              for (int t = l + 1; t <= s; ++t) mk.push_back(ck[t]);
              mk.push_back(ck[0]);
              for (int t = 1; t <= i; ++t) mk.push_back(ck[t]);
              const AElt<K>* mo = A.mu_at(arity, mk);
              if (!mo) continue;
              K c = K(cc * ac);
              if (sg) c = -c;
              for (const auto& [ob, oc] : *mo) {
                std::vector<uint32_t> nk;
                nk.reserve(static_cast<size_t>(j - i) + 1);
                nk.push_back(ob);
                for (int t = i + 1; t <= j; ++t) nk.push_back(ck[t]);
                r.add(nk, K(oc * c));
              }
            }
          }
      }
  }
  return r;
}

// Evaluation of a cochain on a basis tuple (rightmost first).
template <class K>
AElt<K> cc_eval(const Cochain<K>& phi, const std::vector<uint32_t>& key) {
  auto si = phi.val.find(static_cast<int>(key.size()));
  if (si == phi.val.end()) return {};
  auto it = si->second.find(key);
  return it == si->second.end() ? AElt<K>() : it->second;
}

// Diagonal arity-1 cochain x -> weight(x) * x.
template <class K>
Cochain<K> euler_cochain(const AInf<K>& A) {
  Cochain<K> c;
  c.sp = 0;  // arity-1 even operator: reduced parity p + s - 1 = 0
  for (size_t b = 0; b < A.dim(); ++b)
    if (A.weight[b] != 0)
      c.add(1, {static_cast<uint32_t>(b)}, b, kv_int(A.sample, A.weight[b]));
  return c;
}

// ---------------------------------------------------------------------------
// Homotopy-unit extension.
//
// Adjoins f (odd, weight -1) and e+ (even, weight 0) with
//   mu^1(f) = e+ - e,
//   mu^2(x, e+) = x                    for every x,
//   mu^2(e+, x) = (-1)^{sigma(x)} x    for every x != e+,
// and no other new entries; e+ becomes a strict unit for the extension.
// ---------------------------------------------------------------------------

template <class K>
struct HUExt {
  AInf<K> ext;
  size_t e = SIZE_MAX, f = SIZE_MAX, eplus = SIZE_MAX;
};

template <class K>
HUExt<K> extend_homotopy_units(const AInf<K>& A, size_t e_idx) {
  HUExt<K> H;
  H.ext = A;
  H.e = e_idx;
  H.f = A.dim();
  H.eplus = A.dim() + 1;
  H.ext.names.push_back("f");
  H.ext.names.push_back("e+");
  H.ext.parity.push_back(1);
  H.ext.parity.push_back(0);
  H.ext.weight.push_back(-1);
  H.ext.weight.push_back(0);
  H.ext.unit = H.eplus;
  if (H.ext.s_max < 2) H.ext.set_smax(2);
  const K one = A.unit_one();
  const auto f = static_cast<uint32_t>(H.f);
  const auto ep = static_cast<uint32_t>(H.eplus);
  H.ext.add_mu(1, {f}, H.eplus, one);
  H.ext.add_mu(1, {f}, H.e, K(-one));
  for (uint32_t x = 0; x < H.ext.dim(); ++x) {
    H.ext.add_mu(2, {ep, x}, x, one);  // mu^2(x, e+) = x
    if (x != ep)
      H.ext.add_mu(2, {x, ep}, x, H.ext.parity[x] ? K(-one) : one);
  }
  return H;
}

// ---------------------------------------------------------------------------
// Disk potential of an odd vector v = sum v_i g_i:
//   each power mu^s(v, ..., v) must lie on the line K*e; the potential is the
//   accumulated e-coefficient, and iota(v) = v + potential * f solves the
//   Maurer-Cartan equation sum_s mu^s(iota v, ...) = potential * e+ exactly
//   in the homotopy-unit extension.
// ---------------------------------------------------------------------------

template <class K>
struct DiskReport {
  bool powers_unit = true;
  K potential{};
  bool mc_zero = false;
  std::string fail;
};

template <class K>
DiskReport<K> disk_potential(const HUExt<K>& H, const AElt<K>& v) {
  DiskReport<K> rep;
  const AInf<K>& A = H.ext;
  rep.potential = A.sample - A.sample;
  for (int s = 0; s <= A.s_max; ++s) {
    std::vector<AElt<K>> args(s, v);
    AElt<K> m = mu_eval(A, s, args);
    for (const auto& [b, c] : m) {
      if (b == H.e) {
        rep.potential = rep.potential + c;
      } else {
        rep.powers_unit = false;
        rep.fail = "mu^" + std::to_string(s) + "(v..v) leaves the unit line at " +
                   A.names[b];
      }
    }
    if (!rep.powers_unit) return rep;
  }
  AElt<K> alpha = v;
  ae_add(alpha, H.f, rep.potential);
  AElt<K> mc;
  for (int s = 0; s <= A.s_max; ++s) {
    std::vector<AElt<K>> args(s, alpha);
    ae_add_scaled(mc, mu_eval(A, s, args), A.unit_one());
  }
  ae_add(mc, H.eplus, K(-rep.potential));
  rep.mc_zero = ae_is_zero(mc);
  if (!rep.mc_zero && rep.fail.empty()) {
    std::ostringstream os;
    os << "Maurer-Cartan residual:";
    for (const auto& [b, c] : mc) os << " " << kv_str(c) << "*" << A.names[b];
    rep.fail = os.str();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Operations twisted by Maurer-Cartan elements.
//
//   d(x)          = sum_{i,k} mu^{i+1+k}(beta^{(i)}, x, alpha^{(k)})
//   m2(x2, x1)    = sum       mu(gamma^(i), x2, beta^(j), x1, alpha^(k))
//
// beta sits on the left of the module argument, alpha on the right; all
// arities up to s_max contribute.
// ---------------------------------------------------------------------------

template <class K>
AElt<K> twisted_mu1_apply(const AInf<K>& A, const AElt<K>& beta,
                          const AElt<K>& alpha, const AElt<K>& x) {
  AElt<K> acc;
  for (int i = 0; i + 1 <= A.s_max; ++i) {
    for (int k = 0; i + 1 + k <= A.s_max; ++k) {
      std::vector<AElt<K>> args;
      args.reserve(i + 1 + k);
      for (int t = 0; t < k; ++t) args.push_back(alpha);
      args.push_back(x);
      for (int t = 0; t < i; ++t) args.push_back(beta);
      ae_add_scaled(acc, mu_eval(A, i + 1 + k, args), A.unit_one());
    }
  }
  return acc;
}

template <class K>
Matrix<K> twisted_mu1(const AInf<K>& A, const AElt<K>& beta,
                      const AElt<K>& alpha) {
  const size_t d = A.dim();
  const K z = A.sample - A.sample;
  Matrix<K> M(d, std::vector<K>(d, z));
  for (size_t x = 0; x < d; ++x) {
    AElt<K> xe;
    ae_add(xe, x, A.unit_one());
    AElt<K> col = twisted_mu1_apply(A, beta, alpha, xe);
    for (const auto& [b, c] : col) M[b][x] = c;
  }
  return M;
}

template <class K>
AElt<K> twisted_mu2_apply(const AInf<K>& A, const AElt<K>& gamma,
                          const AElt<K>& beta, const AElt<K>& alpha,
                          const AElt<K>& x2, const AElt<K>& x1) {
  AElt<K> acc;
  for (int i = 0; i + 2 <= A.s_max; ++i) {
    for (int j = 0; i + j + 2 <= A.s_max; ++j) {
      for (int k = 0; i + j + k + 2 <= A.s_max; ++k) {
        std::vector<AElt<K>> args;
        args.reserve(i + j + k + 2);
        for (int t = 0; t < k; ++t) args.push_back(alpha);
        args.push_back(x1);
        for (int t = 0; t < j; ++t) args.push_back(beta);
        args.push_back(x2);
        for (int t = 0; t < i; ++t) args.push_back(gamma);
        ae_add_scaled(acc, mu_eval(A, i + j + k + 2, args), A.unit_one());
      }
    }
  }
  return acc;
}

// Materialize the full twisted structure mu_alpha (same alpha in every gap).
template <class K>
AInf<K> twist(const AInf<K>& A, const AElt<K>& alpha) {
  AInf<K> T;
  T.names = A.names;
  T.parity = A.parity;
  T.weight = A.weight;
  T.unit = A.unit;
  T.sample = A.sample;
  T.set_smax(A.s_max);
  const size_t d = A.dim();
  for (int s = 0; s <= A.s_max; ++s) {
    std::vector<uint32_t> key(s, 0);
    bool done = (s > 0 && d == 0);
    while (!done) {
      // sum over insertions of alpha into the s+1 gaps, total extra <= s_max-s
      AElt<K> acc;
      std::vector<int> gaps(s + 1, 0);
      std::function<void(int, int)> rec = [&](int g, int used) {
        if (g == s + 1) {
          std::vector<AElt<K>> args;
          args.reserve(s + used);
          for (int i = 0; i <= s; ++i) {
            for (int t = 0; t < gaps[i]; ++t) args.push_back(alpha);
            if (i < s) {
              AElt<K> xe;
              ae_add(xe, key[i], A.unit_one());
              args.push_back(xe);
            }
          }
          ae_add_scaled(acc, mu_eval(A, s + used, args), A.unit_one());
          return;
        }
        for (int t = 0; s + used + t <= A.s_max; ++t) {
          gaps[g] = t;
          rec(g + 1, used + t);
        }
        gaps[g] = 0;
      };
      rec(0, 0);
      for (const auto& [b, c] : acc) T.add_mu(s, key, b, c);
      if (s == 0) break;
      int pos = 0;
      while (pos < s) {
        if (++key[pos] < d) break;
        key[pos] = 0;
        ++pos;
      }
      if (pos == s) done = true;
    }
  }
  return T;
}

// ---------------------------------------------------------------------------
// Contracting homotopies by perturbation series.
//
// Given an odd matrix d on a weighted basis that splits as d = d1 + t where
// d1 raises weight by exactly +1 and every component of t strictly lowers it,
// and a seed H with [d1, H] = Id, H^2 = 0, the series
//   H' = sum_k (-1)^k (H t)^k H
// satisfies [d, H'] = Id; nilpotence of (H t) makes the sum finite.
// ---------------------------------------------------------------------------

template <class K>
Matrix<K> weight_component(const Matrix<K>& M, const std::vector<long>& wt,
                           long delta, const K& zero) {
  const size_t n = M.size();
  Matrix<K> R(n, std::vector<K>(n, zero));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (wt[i] - wt[j] == delta) R[i][j] = M[i][j];
  return R;
}

template <class K>
bool mat_is_zero(const Matrix<K>& M) {
  for (const auto& row : M)
    for (const auto& c : row)
      if (!kv_is_zero(c)) return false;
  return true;
}

template <class K>
struct HomotopyResult {
  bool ok = false;
  Matrix<K> d, H;
  int terms = 0;
  std::string note;
};

template <class K>
HomotopyResult<K> complete_homotopy(const Matrix<K>& d,
                                    const std::vector<long>& wt,
                                    const Matrix<K>& seed, const K& one) {
  HomotopyResult<K> res;
  res.d = d;
  const size_t n = d.size();
  const K zero = one - one;
  Matrix<K> d1 = weight_component(d, wt, +1, zero);
  Matrix<K> id = mat_identity(n, one);
  // seed must contract d1 on the nose and square to zero
  Matrix<K> comm = mat_add(mat_mul(d1, seed), mat_mul(seed, d1));
  if (!(comm == id)) {
    res.note = "[d1, seed] != Id";
    return res;
  }
  if (!mat_is_zero(mat_mul(seed, seed))) {
    res.note = "seed^2 != 0";
    return res;
  }
  Matrix<K> t = mat_add(d, mat_scale(d1, K(-one)));
  Matrix<K> acc = seed;
  Matrix<K> term = seed;
  res.terms = 1;
  long span = 0;
  if (!wt.empty()) {
    long lo = *std::min_element(wt.begin(), wt.end());
    long hi = *std::max_element(wt.begin(), wt.end());
    span = hi - lo;
  }
  for (long k = 1; k <= span + 1; ++k) {
    term = mat_mul(seed, mat_mul(t, term));
    term = mat_scale(term, K(-one));
    if (mat_is_zero(term)) break;
    acc = mat_add(acc, term);
    ++res.terms;
  }
  Matrix<K> full = mat_add(mat_mul(d, acc), mat_mul(acc, d));
  if (!(full == id)) {
    res.note = "[d, H] != Id after series";
    return res;
  }
  res.H = acc;
  res.ok = true;
  return res;
}

// Seed homotopy for a twisted differential between two Maurer-Cartan elements
// whose leading part is wedging with w = (left - right): on a subset-indexed
// wedge basis, contract with the covector eta dual to a pivot of w; f and e+
// complete the pair (H f = 0, H e+ = f).  Both global signs are attempted.
template <class K>
HomotopyResult<K> contracting_homotopy(const AInf<K>& A,
                                       const std::vector<uint32_t>& mask,
                                       const AElt<K>& left,
                                       const AElt<K>& right, size_t f_idx,
                                       size_t eplus_idx) {
  const size_t n = A.dim();
  const K one = A.unit_one();
  const K zero = one - one;
  Matrix<K> d = twisted_mu1(A, left, right);
  // generator components of w = left - right live on the popcount-1 masks
  std::map<int, K> wgen;  // generator bit -> coefficient
  std::map<int, size_t> genidx;
  for (size_t b = 0; b < n; ++b) {
    uint32_t m = mask[b];
    if (m && !(m & (m - 1))) {
      int bit = 0;
      while (!((m >> bit) & 1)) ++bit;
      genidx[bit] = b;
      K c = zero;
      auto il = left.find(b);
      if (il != left.end()) c = c + il->second;
      auto ir = right.find(b);
      if (ir != right.end()) c = c - ir->second;
      if (!kv_is_zero(c)) wgen[bit] = c;
    }
  }
  if (wgen.empty()) {
    HomotopyResult<K> res;
    res.d = d;
    res.note = "left and right agree on generators";
    return res;
  }
  const int piv = wgen.begin()->first;
  const K etac = kv_inv(wgen.begin()->second);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Matrix<K> H(n, std::vector<K>(n, zero));
    for (size_t b = 0; b < n; ++b) {
      if (b == f_idx || b == eplus_idx) continue;
      uint32_t m = mask[b];
      if (!((m >> piv) & 1)) continue;
      uint32_t below = m & ((1u << piv) - 1);
      int pop = __builtin_popcount(m);
      int sg = __builtin_popcount(below) + pop + 1 + attempt;
      uint32_t tm = m & ~(1u << piv);
      size_t tb = SIZE_MAX;
      for (size_t c = 0; c < n; ++c)
        if (c != f_idx && c != eplus_idx && mask[c] == tm) tb = c;
      if (tb == SIZE_MAX) continue;
      H[tb][b] = (sg & 1) ? K(-etac) : etac;
    }
    H[f_idx][eplus_idx] = one;
    HomotopyResult<K> res = complete_homotopy(d, A.weight, H, one);
    if (res.ok) {
      res.note = attempt ? "seed sign flipped" : "";
      return res;
    }
    if (attempt == 1) return res;
  }
  HomotopyResult<K> res;
  res.d = d;
  res.note = "unreachable";
  return res;
}

// ---------------------------------------------------------------------------
// Finite-abelian-group actions, semidirect products, and the Fourier
// equivalence with the block model.
//
// Gamma = prod Z/mods[t].  A group degree gdeg[b] is attached to each basis
// element; strictness means every structure constant preserves the total
// group degree.  Characters are exponent vectors k with values
// chi_k(g) = zeta^(sum k_t g_t N/mods[t]) supplied by a callback.
// ---------------------------------------------------------------------------

struct GammaSpec {
  std::vector<long> mods;
  long order() const {
    long o = 1;
    for (long m : mods) o *= m;
    return o;
  }
  std::vector<long> reduce(std::vector<long> g) const {
    for (size_t t = 0; t < mods.size(); ++t) {
      g[t] %= mods[t];
      if (g[t] < 0) g[t] += mods[t];
    }
    return g;
  }
  std::vector<long> add(const std::vector<long>& a,
                        const std::vector<long>& b) const {
    std::vector<long> r(mods.size());
    for (size_t t = 0; t < mods.size(); ++t) r[t] = a[t] + b[t];
    return reduce(r);
  }
  std::vector<long> neg(const std::vector<long>& a) const {
    std::vector<long> r(mods.size());
    for (size_t t = 0; t < mods.size(); ++t) r[t] = -a[t];
    return reduce(r);
  }
  std::vector<std::vector<long>> elements() const {
    std::vector<std::vector<long>> out;
    std::vector<long> g(mods.size(), 0);
    while (true) {
      out.push_back(g);
      size_t t = 0;
      while (t < mods.size()) {
        if (++g[t] < mods[t]) break;
        g[t] = 0;
        ++t;
      }
      if (t == mods.size()) break;
    }
    return out;
  }
  size_t index_of(const std::vector<long>& g) const {
    std::vector<long> r = reduce(g);
    size_t idx = 0, stride = 1;
    for (size_t t = 0; t < mods.size(); ++t) {
      idx += static_cast<size_t>(r[t]) * stride;
      stride *= static_cast<size_t>(mods[t]);
    }
    return idx;
  }
};

template <class K>
using ChiVal = std::function<K(const std::vector<long>& /*char exps*/,
                               const std::vector<long>& /*group elt*/)>;

// Every structure constant must add group degrees.
template <class K>
bool gdeg_strict(const AInf<K>& A, const std::vector<std::vector<long>>& gdeg,
                 const GammaSpec& G, std::string* why = nullptr) {
  for (int s = 0; s <= A.s_max; ++s) {
    for (const auto& [key, out] : A.mu[s]) {
      std::vector<long> tot(G.mods.size(), 0);
      for (uint32_t b : key) tot = G.add(tot, gdeg[b]);
      for (const auto& [b, c] : out) {
        if (G.reduce(gdeg[b]) != tot) {
          if (why) {
            std::ostringstream os;
            os << "mu^" << s << " entry violates group grading at output "
               << A.names[b];
            *why = os.str();
          }
          return false;
        }
      }
    }
  }
  return true;
}

// Semidirect product with the character group: basis (b, chi), and
//   mu((b_s,chi_s), ..., (b_1,chi_1)) =
//     c * mu(b_s..b_1) tensor (chi_s...chi_1),
//   c = prod_{i=1}^{s-1} (chi_s...chi_{i+1})(gdeg b_i).
// Index layout: (b, chi) -> b * |Gamma| + chi.
template <class K>
AInf<K> semidirect_product(const AInf<K>& A,
                           const std::vector<std::vector<long>>& gdeg,
                           const GammaSpec& G, const ChiVal<K>& chi) {
  std::string why;
  if (!gdeg_strict(A, gdeg, G, &why))
    throw std::invalid_argument("semidirect_product: " + why);
  const auto chars = G.elements();
  const size_t nch = chars.size();
  AInf<K> S;
  S.sample = A.sample;
  S.set_smax(A.s_max);
  for (size_t b = 0; b < A.dim(); ++b) {
    for (size_t x = 0; x < nch; ++x) {
      std::ostringstream nm;
      nm << A.names[b] << "|x";
      for (size_t t = 0; t < chars[x].size(); ++t)
        nm << (t ? "." : "") << chars[x][t];
      S.names.push_back(nm.str());
      S.parity.push_back(A.parity[b]);
      S.weight.push_back(A.weight[b]);
    }
  }
  if (A.unit != SIZE_MAX) S.unit = A.unit * nch + G.index_of(std::vector<long>(G.mods.size(), 0));
  for (int s = 0; s <= A.s_max; ++s) {
    for (const auto& [key, out] : A.mu[s]) {
      std::vector<size_t> cidx(s, 0);
      while (true) {
        // suffix sums of character exponents: suff[i] = k_s + ... + k_{i+1}
        std::vector<long> total(G.mods.size(), 0);
        for (int i = 0; i < s; ++i)
          total = G.add(total, chars[cidx[i]]);
        K c = A.unit_one();
        std::vector<long> suff(G.mods.size(), 0);
        for (int i = s - 1; i >= 1; --i) {
          suff = G.add(suff, chars[cidx[i]]);
          c = c * chi(suff, gdeg[key[i - 1]]);
        }
        size_t outch = G.index_of(total);
        for (const auto& [b, cf] : out) {
          std::vector<uint32_t> nk(s);
          for (int i = 0; i < s; ++i)
            nk[i] = static_cast<uint32_t>(key[i] * nch + cidx[i]);
          S.add_mu(s, nk, b * nch + outch, K(cf * c));
        }
        if (s == 0) break;
        int pos = 0;
        while (pos < s) {
          if (++cidx[pos] < nch) break;
          cidx[pos] = 0;
          ++pos;
        }
        if (pos == s) break;
      }
    }
  }
  return S;
}

// Block model: basis (b, g) with products gated by composability
// g_{i+1} = g_i + gdeg(b_i); the output sits in the rightmost column g_1.
// Index layout: (b, g) -> b * |Gamma| + g.
template <class K>
AInf<K> block_model(const AInf<K>& A,
                    const std::vector<std::vector<long>>& gdeg,
                    const GammaSpec& G) {
  std::string why;
  if (!gdeg_strict(A, gdeg, G, &why))
    throw std::invalid_argument("block_model: " + why);
  const auto els = G.elements();
  const size_t ng = els.size();
  AInf<K> T;
  T.sample = A.sample;
  T.set_smax(A.s_max);
  for (size_t b = 0; b < A.dim(); ++b) {
    for (size_t g = 0; g < ng; ++g) {
      std::ostringstream nm;
      nm << A.names[b] << "|g";
      for (size_t t = 0; t < els[g].size(); ++t)
        nm << (t ? "." : "") << els[g][t];
      T.names.push_back(nm.str());
      T.parity.push_back(A.parity[b]);
      T.weight.push_back(A.weight[b]);
    }
  }
  for (int s = 0; s <= A.s_max; ++s) {
    for (const auto& [key, out] : A.mu[s]) {
      for (size_t g1 = 0; g1 < ng; ++g1) {
        std::vector<uint32_t> nk(s);
        std::vector<long> g = els[g1];
        for (int i = 0; i < s; ++i) {
          nk[i] = static_cast<uint32_t>(key[i] * ng + G.index_of(g));
          g = G.add(g, gdeg[key[i]]);
        }
        for (const auto& [b, cf] : out)
          T.add_mu(s, nk, b * ng + g1, cf);
      }
    }
  }
  return T;
}

// Group action on the block model: g0 . (b, g) = (b, g + g0).
template <class K>
Matrix<K> block_model_action(const AInf<K>& A, const GammaSpec& G,
                             const std::vector<long>& g0, const K& one) {
  const size_t ng = static_cast<size_t>(G.order());
  const size_t n = A.dim() * ng;
  const K zero = one - one;
  Matrix<K> M(n, std::vector<K>(n, zero));
  const auto els = G.elements();
  for (size_t b = 0; b < A.dim(); ++b)
    for (size_t g = 0; g < ng; ++g)
      M[b * ng + G.index_of(G.add(els[g], g0))][b * ng + g] = one;
  return M;
}

// Fourier matrix from the semidirect product to the block model:
//   F(b tensor chi_k) = sum_g chi_k(g) (b, g).
template <class K>
Matrix<K> fourier_matrix(const AInf<K>& A, const GammaSpec& G,
                         const ChiVal<K>& chi) {
  const auto els = G.elements();
  const size_t ng = els.size();
  const size_t n = A.dim() * ng;
  const K zero = A.sample - A.sample;
  Matrix<K> F(n, std::vector<K>(n, zero));
  for (size_t b = 0; b < A.dim(); ++b)
    for (size_t k = 0; k < ng; ++k)
      for (size_t g = 0; g < ng; ++g)
        F[b * ng + g][b * ng + k] = chi(els[k], els[g]);
  return F;
}

// Exhaustive strict-morphism check: F mu_S(tuple) = mu_T(F tuple) for all
// basis tuples of the source, arities 1..s_hi.
template <class K>
bool strict_morphism_check(const AInf<K>& S, const AInf<K>& T,
                           const Matrix<K>& F, int s_hi,
                           std::string* why = nullptr) {
  const size_t d = S.dim();
  auto apply_F = [&](const AElt<K>& x) {
    AElt<K> r;
    for (const auto& [b, c] : x)
      for (size_t i = 0; i < F.size(); ++i)
        if (!kv_is_zero(F[i][b])) ae_add(r, i, K(F[i][b] * c));
    return r;
  };
  for (int s = 1; s <= s_hi; ++s) {
    std::vector<uint32_t> key(s, 0);
    while (true) {
      std::vector<AElt<K>> src(s), img(s);
      for (int i = 0; i < s; ++i) {
        ae_add(src[i], key[i], S.unit_one());
        img[i] = apply_F(src[i]);
      }
      AElt<K> lhs = apply_F(mu_eval(S, s, src));
      AElt<K> rhs = mu_eval(T, s, img);
      if (!(lhs == rhs)) {
        if (why) {
          std::ostringstream os;
          os << "morphism fails at s=" << s << " on (";
          for (int i = s - 1; i >= 0; --i)
            os << S.names[key[i]] << (i ? "," : "");
          os << ")";
          *why = os.str();
        }
        return false;
      }
      int pos = 0;
      while (pos < s) {
        if (++key[pos] < d) break;
        key[pos] = 0;
        ++pos;
      }
      if (pos == s) break;
    }
  }
  return true;
}

}  // namespace lgalg
