#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lgalg/superpotential.hpp"

using namespace lgalg;

TEST_CASE("critical points of the index one cubic case") {
  CriticalLocus L = critical_locus(4, 3);
  CHECK(L.small_points.size() == 27);
  // all values equal 3*xi + w = 3*9 - 6 = 21
  for (const auto& p : L.small_points) CHECK(p.value == Ext(L.ring, Q(21)));
  // every enumerated point is critical, with pairwise distinct coordinates
  std::set<std::string> keys;
  for (const auto& p : L.small_points) {
    for (const auto& g : gradient_at(4, 3, p.u)) CHECK(kv_is_zero(g));
    CHECK(value_at(4, 3, p.u) == p.value);
    keys.insert(point_key(p.u));
  }
  CHECK(keys.size() == 27);
}

TEST_CASE("origin is critical with vanishing hessian for cubic fibers") {
  CriticalLocus L = critical_locus(4, 3);
  std::vector<Ext> origin(4, Ext(L.ring));
  for (const auto& g : gradient_at(4, 3, origin)) CHECK(kv_is_zero(g));
  CHECK(value_at(4, 3, origin) == Ext(L.ring, Q(-6)));
  auto H = hessian_at(4, 3, origin);
  for (const auto& row : H)
    for (const auto& x : row) CHECK(kv_is_zero(x));
}

TEST_CASE("real point hessian") {
  CriticalLocus L = critical_locus(4, 3);
  // m = 0 gives u = (3,3,3,3)
  const CriticalPoint* p0 = nullptr;
  for (const auto& p : L.small_points)
    if (p.m == std::vector<long>{0, 0, 0, 0}) p0 = &p;
  REQUIRE(p0 != nullptr);
  for (const auto& x : p0->u) CHECK(x == Ext(L.ring, Q(3)));
  auto H = hessian_at(4, 3, p0->u);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(H[i][j] == Ext(L.ring, i == j ? Q(18) : Q(-9)));
  CHECK(mat_det(H) == Ext(L.ring, Q(-177147)));
  CHECK(hessian_nondegenerate(H));
}

TEST_CASE("small hessians are nondegenerate") {
  CriticalLocus L = critical_locus(4, 3);
  for (const auto& p : L.small_points) CHECK(hessian_nondegenerate(hessian_at(4, 3, p.u)));
}

TEST_CASE("character group acts freely and transitively on fibers") {
  for (auto [n, a] : {std::pair<int, long>{4, 3}, {4, 2}}) {
    CriticalLocus L = critical_locus(n, a);
    auto rep = orbit_structure(L);
    CHECK(rep.free_action);
    CHECK(rep.transitive);
  }
}

TEST_CASE("square fiber values and fiber sizes") {
  CriticalLocus L = critical_locus(4, 2);
  CHECK(L.small_points.size() == 16);
  REQUIRE(L.branch_values.size() == 2);
  CHECK(L.branch_values[0] == Ext(L.ring, Q(4)));
  CHECK(L.branch_values[1] == Ext(L.ring, Q(-4)));
  long f0 = 0, f1 = 0;
  for (const auto& p : L.small_points) {
    (p.k == 0 ? f0 : f1) += 1;
    for (const auto& g : gradient_at(4, 2, p.u)) CHECK(kv_is_zero(g));
  }
  CHECK(f0 == 8);
  CHECK(f1 == 8);
  // origin is Morse for quadric fibers
  std::vector<Ext> origin(4, Ext(L.ring));
  auto H = hessian_at(4, 2, origin);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(H[i][j] == Ext(L.ring, i == j ? Q(2) : Q(0)));
}

TEST_CASE("completeness certificates") {
  auto c43 = critical_completeness(4, 3);
  CHECK(c43.quotient_dim == 43);
  CHECK(c43.origin_multiplicity == 16);
  CHECK(c43.enumerated_smalls == 27);
  CHECK(c43.complete());
  auto c42 = critical_completeness(4, 2);
  CHECK(c42.quotient_dim == 17);
  CHECK(c42.origin_multiplicity == 1);
  CHECK(c42.enumerated_smalls == 16);
  CHECK(c42.complete());
}

TEST_CASE("larger grid gradient checks") {
  for (auto [n, a] : {std::pair<int, long>{5, 3}, {5, 4}}) {
    CriticalLocus L = critical_locus(n, a);
    long d = n - a, expect = d;
    for (long k = 1; k < n - 1; ++k) expect *= a;
    // (n-a) * a^(n-1) points
    expect = d;
    for (int k = 0; k < n - 1; ++k) expect *= a;
    CHECK(static_cast<long>(L.small_points.size()) == expect);
    // spot check gradients on the first fiber
    int checked = 0;
    for (const auto& p : L.small_points) {
      if (p.k != 0 || checked >= 5) continue;
      for (const auto& g : gradient_at(n, a, p.u)) CHECK(kv_is_zero(g));
      ++checked;
    }
  }
}
