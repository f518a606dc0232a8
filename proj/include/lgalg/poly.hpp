#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <type_traits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace lgalg {

// Exponent vector of fixed length nvars.
using Mono = std::vector<int>;

inline long mono_total(const Mono& m) {
  long t = 0;
  for (int e : m) t += e;
  return t;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline bool mono_divides(const Mono& a, const Mono& b) {  // a | b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Mono mono_div(const Mono& b, const Mono& a) {  // b / a
  Mono r = b;
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] -= a[i];
    if (r[i] < 0) throw std::domain_error("monomial division with negative exponent");
  }
  return r;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
  return r;
}

inline bool mono_coprime(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// Block order: each block optionally compares the total degree over its
// variables first, then runs lex through them in the listed sequence. Blocks
// apply left to right, so a leading block is an elimination block.
struct OrderBlock {
  std::vector<int> vars;
  bool graded = true;
};

struct MonoOrder {
  std::vector<OrderBlock> blocks;

  // +1 if a > b, -1 if a < b, 0 if equal on all blocks
  int cmp(const Mono& a, const Mono& b) const {
    for (const auto& blk : blocks) {
      if (blk.graded) {
        long ta = 0, tb = 0;
        for (int v : blk.vars) {
          ta += a[v];
          tb += b[v];
        }
        if (ta != tb) return ta > tb ? 1 : -1;
      }
      for (int v : blk.vars) {
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      }
    }
    return 0;
  }
  bool less(const Mono& a, const Mono& b) const { return cmp(a, b) < 0; }
};

inline std::vector<int> iota_vars(int n, int from = 0) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = from + i;
  return v;
}

inline MonoOrder order_grlex(int nvars) { return {{OrderBlock{iota_vars(nvars), true}}}; }
inline MonoOrder order_lex(int nvars) { return {{OrderBlock{iota_vars(nvars), false}}}; }

// Variables in `front` dominate (graded within each block): an elimination
// order for the front block.
inline MonoOrder order_elim(const std::vector<int>& front, const std::vector<int>& back) {
  return {{OrderBlock{front, true}, OrderBlock{back, true}}};
}

template <class K>
struct Poly {
  int nvars = 0;
  std::map<Mono, K> t;  // invariant: no stored coefficient is zero

  Poly() = default;
  explicit Poly(int nv) : nvars(nv) {}

  static Poly zero(int nv) { return Poly(nv); }
  static Poly constant(int nv, const K& c) {
    Poly p(nv);
    p.add_term(Mono(nv, 0), c);
    return p;
  }
  static Poly var(int nv, int i, const K& one) {
    Poly p(nv);
    Mono m(nv, 0);
    m[i] = 1;
    p.add_term(m, one);
    return p;
  }
  static Poly monomial(int nv, const Mono& m, const K& c) {
    Poly p(nv);
    p.add_term(m, c);
    return p;
  }

  bool is_zero() const { return t.empty(); }
  size_t nterms() const { return t.size(); }

  void add_term(const Mono& m, const K& c) {
    if (kv_is_zero(c)) return;
    auto it = t.find(m);
    if (it == t.end()) {
      t.emplace(m, c);
    } else {
      K s = it->second + c;
      if (kv_is_zero(s))
        t.erase(it);
      else
        it->second = s;
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.t) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.t) r.add_term(m, K(-c));
    return r;
  }
  Poly operator-() const {
    Poly r(nvars);
    for (const auto& [m, c] : t) r.t.emplace(m, K(-c));
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars);
    for (const auto& [ma, ca] : a.t)
      for (const auto& [mb, cb] : b.t) r.add_term(mono_mul(ma, mb), K(ca * cb));
    return r;
  }
  Poly scaled(const K& c) const {
    Poly r(nvars);
    if (kv_is_zero(c)) return r;
    for (const auto& [m, k] : t) {
      K s = k * c;
      if (!kv_is_zero(s)) r.t.emplace(m, s);
    }
    return r;
  }
  Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
  Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.t.size() != b.t.size()) return false;
    auto ia = a.t.begin();
    auto ib = b.t.begin();
    for (; ia != a.t.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
      if (!kv_is_zero(K(ia->second - ib->second))) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(long e) const {
    if (e < 0) throw std::domain_error("negative power");
    Poly r = constant(nvars, sample_one());
    Poly base = *this;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * base;
      base = base * base;
    }
    return r;
  }

  Poly derivative(int var) const {
    Poly r(nvars);
    for (const auto& [m, c] : t) {
      if (m[var] == 0) continue;
      Mono m2 = m;
      m2[var] -= 1;
      r.add_term(m2, scale_int(c, m[var]));
    }
    return r;
  }

  // Substitute variable var by the polynomial g (same nvars).
  Poly subst(int var, const Poly& g) const {
    Poly r(nvars);
    for (const auto& [m, c] : t) {
      Mono m2 = m;
      const int e = m2[var];
      m2[var] = 0;
      Poly term = Poly::monomial(nvars, m2, c);
      if (e > 0) term = term * g.pow(e);
      r += term;
    }
    return r;
  }

  K eval(const std::vector<K>& pt) const {
    K acc = t.empty() && !pt.empty() ? K(pt[0] - pt[0]) : sample_zero();
    for (const auto& [m, c] : t) {
      K v = c;
      for (int i = 0; i < nvars; ++i)
        for (int e = 0; e < m[i]; ++e) v = v * pt[i];
      acc = acc + v;
    }
    return acc;
  }

  long total_degree() const {  // -1 for zero
    long d = -1;
    for (const auto& [m, c] : t) d = std::max(d, mono_total(m));
    return d;
  }

  long degree_in(const std::vector<int>& vars) const {
    long d = -1;
    for (const auto& [m, c] : t) {
      long s = 0;
      for (int v : vars) s += m[v];
      d = std::max(d, s);
    }
    return d;
  }

  // Sum of terms whose total degree over `vars` equals d.
  Poly homogeneous_part_in(const std::vector<int>& vars, long d) const {
    Poly r(nvars);
    for (const auto& [m, c] : t) {
      long s = 0;
      for (int v : vars) s += m[v];
      if (s == d) r.t.emplace(m, c);
    }
    return r;
  }

  template <class K2, class F>
  Poly<K2> map_coeffs(F f) const {
    Poly<K2> r(nvars);
    for (const auto& [m, c] : t) {
      K2 c2 = f(c);
      if (!kv_is_zero(c2)) r.t.emplace(m, c2);
    }
    return r;
  }

 private:
  K sample_zero() const {
    if (!t.empty()) return K(t.begin()->second - t.begin()->second);
    if constexpr (std::is_constructible_v<K, int>)
      return K(0);
    else
      throw std::logic_error("no scalar sample available in empty polynomial");
  }
  K sample_one() const {
    if (!t.empty()) return kv_int(t.begin()->second, 1);
    if constexpr (std::is_constructible_v<K, int>)
      return K(1);
    else
      throw std::logic_error("no scalar sample available in empty polynomial");
  }
  static K scale_int(const K& c, long k) { return c * kv_int(c, k); }
};

// Leading data with respect to an order.
template <class K>
const std::pair<const Mono, K>* poly_lead(const Poly<K>& f, const MonoOrder& ord) {
  const std::pair<const Mono, K>* best = nullptr;
  for (const auto& term : f.t)
    if (!best || ord.cmp(term.first, best->first) > 0) best = &term;
  return best;
}

template <class K>
std::string poly_str(const Poly<K>& f, const std::vector<std::string>& names,
                     const MonoOrder* ord = nullptr) {
  if (f.is_zero()) return "0";
  std::vector<const std::pair<const Mono, K>*> terms;
  for (const auto& term : f.t) terms.push_back(&term);
  MonoOrder dflt = order_grlex(f.nvars);
  const MonoOrder& o = ord ? *ord : dflt;
  std::sort(terms.begin(), terms.end(),
            [&o](auto* a, auto* b) { return o.cmp(a->first, b->first) > 0; });
  std::string out;
  bool first = true;
  for (auto* term : terms) {
    std::string cs = kv_str(term->second);
    bool neg = false;
    if (cs.find_first_of(" +*") != std::string::npos) {
      cs = "(" + cs + ")";
    } else if (cs == "-1") {
      neg = true;
      cs = "1";
    } else if (!cs.empty() && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    std::string vars;
    for (int i = 0; i < f.nvars; ++i) {
      const int e = term->first[i];
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names[i];
      if (e > 1) vars += "^" + std::to_string(e);
    }
    std::string body;
    if (vars.empty())
      body = cs;
    else if (cs == "1")
      body = vars;
    else
      body = cs + "*" + vars;
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

// Recursive-descent parser for the textual syntax used throughout:
//   -u1*u2*u3*u4 + 3/2*r1*u1^3 - (x - 1)^2
// Identifiers resolve through var_of first, then const_of.
template <class K>
class PolyParser {
 public:
  int nvars;
  std::function<std::optional<int>(const std::string&)> var_of;
  std::function<std::optional<K>(const std::string&)> const_of;
  std::function<K(const Q&)> scalar_of;

  Poly<K> parse(const std::string& src) const {
    src_ = &src;
    pos_ = 0;
    Poly<K> e = expr();
    skip_ws();
    if (pos_ != src.size()) throw std::invalid_argument("trailing input at position " + std::to_string(pos_));
    return e;
  }

 private:
  mutable const std::string* src_ = nullptr;
  mutable size_t pos_ = 0;

  void skip_ws() const {
    while (pos_ < src_->size() && isspace(static_cast<unsigned char>((*src_)[pos_]))) ++pos_;
  }
  char peek() const {
    skip_ws();
    return pos_ < src_->size() ? (*src_)[pos_] : '\0';
  }

  Poly<K> expr() const {
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = ((*src_)[pos_++] == '-');
    Poly<K> acc = term();
    if (neg) acc = -acc;
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Poly<K> rhs = term();
      acc = (c == '+') ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Poly<K> term() const {
    Poly<K> acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  Poly<K> factor() const {
    Poly<K> b = base();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      size_t start = pos_;
      while (pos_ < src_->size() && isdigit(static_cast<unsigned char>((*src_)[pos_]))) ++pos_;
      if (start == pos_) throw std::invalid_argument("expected exponent");
      b = b.pow(std::stol(src_->substr(start, pos_ - start)));
    }
    return b;
  }

  Poly<K> base() const {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly<K> e = expr();
      if (peek() != ')') throw std::invalid_argument("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_->size() && (isdigit(static_cast<unsigned char>((*src_)[pos_])) || (*src_)[pos_] == '/'))
        ++pos_;
      return Poly<K>::constant(nvars, scalar_of(q_parse(src_->substr(start, pos_ - start))));
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_->size() &&
             (isalnum(static_cast<unsigned char>((*src_)[pos_])) || (*src_)[pos_] == '_'))
        ++pos_;
      std::string name = src_->substr(start, pos_ - start);
      if (auto v = var_of(name)) return Poly<K>::var(nvars, *v, scalar_of(Q(1)));
      if (const_of)
        if (auto k = const_of(name)) return Poly<K>::constant(nvars, *k);
      throw std::invalid_argument("unknown identifier '" + name + "'");
    }
    throw std::invalid_argument("unexpected character in polynomial");
  }
};

// Name table helper: a ring presentation for printing and parsing.
struct VarTable {
  std::vector<std::string> names;
  std::optional<int> index(const std::string& n) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    return std::nullopt;
  }
  int n() const { return static_cast<int>(names.size()); }
};

// r1..rn then u1..un, the coordinate ring used by the deformation modules.
inline VarTable ru_vars(int n) {
  VarTable v;
  for (int j = 1; j <= n; ++j) v.names.push_back("r" + std::to_string(j));
  for (int j = 1; j <= n; ++j) v.names.push_back("u" + std::to_string(j));
  return v;
}

inline VarTable u_vars(int n) {
  VarTable v;
  for (int j = 1; j <= n; ++j) v.names.push_back("u" + std::to_string(j));
  return v;
}

template <class K>
PolyParser<K> make_parser(const VarTable& vt,
                          std::function<K(const Q&)> scalar_of,
                          std::function<std::optional<K>(const std::string&)> const_of = nullptr) {
  PolyParser<K> p;
  p.nvars = vt.n();
  p.var_of = [vt](const std::string& n) { return vt.index(n); };
  p.const_of = std::move(const_of);
  p.scalar_of = std::move(scalar_of);
  return p;
}

inline PolyParser<Q> make_q_parser(const VarTable& vt) {
  return make_parser<Q>(vt, [](const Q& q) { return q; });
}

}  // namespace lgalg
