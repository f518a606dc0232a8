#include <catch2/catch_amalgamated.hpp>

#include "lgalg/cyclotomic.hpp"

using namespace lgalg;

namespace {
QPoly qp(std::initializer_list<long> coeffs) {
  QPoly p;
  for (long c : coeffs) p.push_back(Q(c));
  qp_trim(p);
  return p;
}
}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == qp({-1, 1}));
  CHECK(cyclotomic_poly(2) == qp({1, 1}));
  CHECK(cyclotomic_poly(3) == qp({1, 1, 1}));
  CHECK(cyclotomic_poly(4) == qp({1, 0, 1}));
  CHECK(cyclotomic_poly(6) == qp({1, -1, 1}));
  CHECK(cyclotomic_poly(8) == qp({1, 0, 0, 0, 1}));
  CHECK(cyclotomic_poly(12) == qp({1, 0, -1, 0, 1}));
}

TEST_CASE("univariate helpers") {
  QPoly a = qp({-1, 0, 1});  // x^2 - 1
  QPoly b = qp({1, 1});      // x + 1
  CHECK(qp_divexact(a, b) == qp({-1, 1}));
  CHECK(qp_gcd(a, b) == qp({1, 1}));
  auto [q, r] = qp_divmod(qp({1, 2, 3}), qp({1, 1}));
  CHECK(qp_add(qp_mul(q, qp({1, 1})), r) == qp({1, 2, 3}));
}

TEST_CASE("gaussian rationals") {
  auto R = EtaleCtx::make_cyclotomic(4);
  Ext i = ext_zeta(R);
  Ext one = kv_int(i, 1);
  CHECK(i * i == -one);
  Ext x = one + i;
  CHECK(kv_inv(x) * x == one);
  CHECK(kv_inv(x) == (one - i) * kv_inv(kv_int(i, 2)));
}

TEST_CASE("radical extension of Q(i)") {
  // Q(i)[s]/(s^2 - 2)
  auto R = EtaleCtx::make_radical(4, 2, Q(2));
  Ext s = ext_s(R), i = ext_zeta(R), one = kv_int(s, 1);
  CHECK(s * s == kv_int(s, 2));
  CHECK((s * i) * (s * i) == kv_int(s, -2));
  CHECK(kv_inv(s) * s == one);
  CHECK(ext_pow(s, 4) == kv_int(s, 4));
}

TEST_CASE("degree-one radical identifies s with the radicand") {
  auto R = EtaleCtx::make_radical(3, 1, Q(3));
  CHECK(ext_s(R) == kv_int(ext_s(R), 3));
}

TEST_CASE("zero divisor detection and ring splitting") {
  // Q(z8)[s]/(s^4 - 2): sqrt2 = z - z^3 lies in the base, so s^2 - sqrt2 is a
  // zero divisor and the ring splits into two quadratic pieces.
  auto R = EtaleCtx::make_radical(8, 4, Q(2));
  Ext z = ext_zeta(R), s = ext_s(R);
  Ext sqrt2 = ext_pow(z, 1) - ext_pow(z, 3);
  CHECK(sqrt2 * sqrt2 == kv_int(z, 2));
  Ext f = s * s - sqrt2;
  EData factor;
  auto inv = R->try_inverse(f.v, &factor);
  CHECK(!inv.has_value());
  auto [R1, R2] = etale_split(R, factor);
  CHECK(R1->dm + R2->dm == 4);
  Ext f1 = ext_project(f, R1), f2 = ext_project(f, R2);
  CHECK(kv_is_zero(f1));
  CHECK(!kv_is_zero(f2));
  CHECK(kv_inv(f2) * f2 == kv_int(f2, 1));
  // complementary factor dies in the other ring
  Ext g = s * s + sqrt2;
  CHECK(kv_is_zero(ext_project(g, R2)));
  CHECK(!kv_is_zero(ext_project(g, R1)));
}

TEST_CASE("element printing") {
  auto R = EtaleCtx::make_radical(4, 2, Q(2));
  Ext x = ext_s(R) * ext_zeta(R) + kv_int(ext_s(R), 1);
  CHECK(kv_str(x) == "1 + 1*s*z");
  CHECK(kv_str(Ext(R)) == "0");
}
