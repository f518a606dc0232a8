#include <catch2/catch_amalgamated.hpp>

#include <lgalg/matfact.hpp>

#include <map>
#include <set>
#include <vector>

using namespace lgalg;

namespace {

EndElt end_unit(const MFCtx& C, uint32_t A, uint32_t B, const TPolyQ& c) {
  EndElt r;
  r.emplace(ekey(A, B), c);
  return r;
}

}  // namespace

TEST_CASE("matrix units compose without signs") {
  MFCtx C = make_mf_ctx(3, 2, 1, -1);
  EndElt x = end_unit(C, 0b011, 0b001, mf_one(C));
  EndElt y = end_unit(C, 0b001, 0b100, mf_u(C, 0));
  EndElt xy = end_compose(x, y);
  REQUIRE(xy.size() == 1);
  CHECK(xy.begin()->first == ekey(0b011, 0b100));
  CHECK(xy.begin()->second == mf_u(C, 0));
  CHECK(end_is_zero(end_compose(y, x)));
}

TEST_CASE("wedge and contraction operators anticommute correctly") {
  MFCtx C = make_mf_ctx(3, 2, 1, -1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EndElt ti = op_wedge(C, i), ij = op_iota(C, j);
      EndElt ac = end_compose(ti, ij);
      end_acc(ac, end_compose(ij, ti));
      EndElt want;
      if (i == j) want = end_id(C);
      CHECK(end_eq(ac, want));  // iota_j theta_i + theta_i iota_j = delta_ij
      if (i != j) {
        EndElt ww = end_compose(op_wedge(C, i), op_wedge(C, j));
        end_acc(ww, end_compose(op_wedge(C, j), op_wedge(C, i)));
        CHECK(end_is_zero(ww));
      }
    }
}

TEST_CASE("factorization identity on the parameter grid") {
  // delta^2 = Ztilde * id and sum_j u_j w_j = Ztilde for (n,a) in the grid
  struct Case {
    int n;
    long a;
  };
  for (Case cs : {Case{4, 2}, Case{4, 3}, Case{5, 3}, Case{5, 4}}) {
    CAPTURE(cs.n, cs.a);
    MatFact M = build_K(cs.n, cs.a);  // build_K verifies both identities
    CHECK(M.ztilde == TPolyQ(M.ctx.tc, deformed_potential(cs.n, cs.a)));
    EndElt sq = end_compose(M.delta, M.delta);
    for (uint32_t A = 0; A < (1u << cs.n); ++A) {
      auto it = sq.find(ekey(A, A));
      REQUIRE(it != sq.end());
      CHECK(it->second == M.ztilde);
    }
    // off-diagonal terms vanish
    long offdiag = 0;
    for (const auto& [k, c] : sq)
      if (ekey_a(k) != ekey_b(k) && !c.is_zero()) ++offdiag;
    CHECK(offdiag == 0);
    // the two halves square to zero separately
    CHECK(end_is_zero(end_compose(M.delta_u, M.delta_u)));
    CHECK(end_is_zero(end_compose(M.delta_w, M.delta_w)));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_K(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_K(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_K(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_K(4, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_K(4, 3, 1, 3), std::invalid_argument);  // u cap < n
  CHECK_NOTHROW(build_K(4, 3, 1, 4));
}

TEST_CASE("product-table degree test accepts the known entries") {
  GradingDatum G{4, 3};
  // generator entry: mu^3(theta_j, theta_j, theta_j) = r_j * e
  CHECK(mu_entry_degree(G, {1u, 1u, 1u}, 0u, {1, 0, 0, 0}).homogeneous);
  // quartic entry: mu^4(theta_4, theta_3, theta_2, theta_1) = -e
  CHECK(mu_entry_degree(G, {1u, 2u, 4u, 8u}, 0u, {0, 0, 0, 0}).homogeneous);
  // binary product: mu^2(theta_1, theta_2) = +- theta_12
  CHECK(mu_entry_degree(G, {2u, 1u}, 3u, {0, 0, 0, 0}).homogeneous);
  // wrong coefficient for the generator entry
  CHECK_FALSE(mu_entry_degree(G, {1u, 1u, 1u}, 0u, {0, 1, 0, 0}).homogeneous);
  // wrong output class for the product
  CHECK_FALSE(mu_entry_degree(G, {2u, 1u}, 5u, {0, 0, 0, 0}).homogeneous);
  CHECK_FALSE(mu_entry_degree(G, {1u, 1u, 1u}, 0u, {0, 0, 0, 0}).homogeneous);
  // a = 2 case: mu^2(theta_j, theta_j) = r_j * e
  GradingDatum G2{4, 2};
  CHECK(mu_entry_degree(G2, {1u, 1u}, 0u, {1, 0, 0, 0}).homogeneous);
  CHECK(mu_entry_degree(G2, {8u, 4u, 2u, 1u}, 0u, {0, 0, 0, 0}).homogeneous);
}

TEST_CASE("endomorphism differential is a differential graded structure") {
  for (auto [n, a] : std::vector<std::pair<int, long>>{{3, 2}, {4, 3}}) {
    CAPTURE(n, a);
    MatFact M = build_K(n, a);
    EndDgaReport rep = end_dga_check(M);
    INFO(rep.fail);
    CHECK(rep.d_id_zero);
    CHECK(rep.d_sq_zero);
    CHECK(rep.d_odd);
    CHECK(rep.leibniz_ok);
    CHECK(rep.leibniz_pairs >= 48);
  }
}

TEST_CASE("endomorphism structure as a two-operation algebra verifies") {
  MatFact M = build_K(3, 2);
  AInf<TPolyQ> A = end_dga_ainf(M);
  CHECK(A.dim() == 64);
  AinfReport rep = ainf_verify(A, 0, 3, 400000);
  INFO(rep.detail);
  CHECK(rep.ok);
  CHECK(rep.truncated == 0);  // associativity and Leibniz close exactly
}

TEST_CASE("contraction identities hold exhaustively on a u slice") {
  for (auto [n, a, slice] :
       std::vector<std::tuple<int, long, long>>{{3, 2, 3}, {4, 3, 2}}) {
    CAPTURE(n, a, slice);
    MatFact M = build_K(n, a);
    MFContraction con = make_contraction(M);
    ContractionReport rep = contraction_check(con, slice);
    INFO(rep.fail);
    CHECK(rep.pi_id);        // coordinates of xi_S are delta_S
    CHECK(rep.homotopy_id);  // x - proj x = d0 h x + h d0 x
    CHECK(rep.h_sq);
    CHECK(rep.h_i);
    CHECK(rep.p_h);
    CHECK(rep.proj_d0);      // transferred differential-free at order zero
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("embedded unit class is the identity endomorphism") {
  for (auto [n, a] : std::vector<std::pair<int, long>>{{3, 2}, {4, 2}, {4, 3}}) {
    CAPTURE(n, a);
    MatFact M = build_K(n, a);
    MFContraction con = make_contraction(M);
    CHECK(end_eq(con.xi[0], end_id(M.ctx)));
    CHECK(end_eq(con.iprime(0), end_id(M.ctx)));  // perturbation fixes it
  }
}
