#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cakit/lie.hpp"

using namespace cakit;

TEST_CASE("bracket basics and jacobi") {
  auto L = make_sl2();
  CHECK(L.antisymmetry_check());
  CHECK(L.jacobi_check());

  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    LieVec x = L.zero_vec();
    for (int i = 0; i < 3; ++i) x[static_cast<size_t>(i)] = L.field().from_rat(static_cast<int>(rng.range(-5, 5)));
    CHECK(L.vec_is_zero(L.bracket(x, x)));
  }

  // perturbed constants violate Jacobi: set [e,f] = h + e
  auto bad = make_sl2();
  LieVec v = bad.zero_vec();
  v[0] = bad.field().from_rat(1);
  v[1] = bad.field().from_rat(1);
  bad.set_bracket(1, 2, v);
  CHECK_FALSE(bad.jacobi_check());
}

TEST_CASE("centralizers") {
  auto A = make_abelian(NumberField::rationals(), 4);
  CHECK(A.centralizer_basis(A.basis_vec(2)).size() == 4);

  auto L = make_sl2();
  auto ch = L.centralizer_basis(L.basis_vec(0)); // h
  CHECK(ch.size() == 1);

  auto Q = build_pure_quaternions(-1, -1);
  CHECK(Q.jacobi_check());
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    LieVec x = Q.zero_vec();
    bool nz = false;
    for (int i = 0; i < 3; ++i) {
      int c = static_cast<int>(rng.range(-4, 4));
      if (c) nz = true;
      x[static_cast<size_t>(i)] = Q.field().from_rat(c);
    }
    if (!nz) continue;
    CHECK(Q.centralizer_basis(x).size() == 1);
  }
}

TEST_CASE("ca audit leaves the CA families clean") {
  auto A = make_abelian(NumberField::rationals(), 4);
  CHECK_FALSE(ca_audit(A, 100, 5).witness_found);

  auto L = make_sl2();
  CHECK_FALSE(ca_audit(L, 500, 5).witness_found);

  auto Q = build_pure_quaternions(-1, -1);
  CHECK_FALSE(ca_audit(Q, 500, 5).witness_found);
}

TEST_CASE("metabelian semidirect products") {
  auto K = NumberField::cyclic(2);
  auto act = field_mult_action(K);
  auto fv = fixed_point_free_check(act, FpfMode::Certificate);
  CHECK(fv.fixed_point_free);
  CHECK(fv.proven);

  auto L = build_metabelian(act);
  CHECK(L.dim() == 4);
  CHECK(L.jacobi_check());
  CHECK_FALSE(ca_audit(L, 300, 9).witness_found);

  // a singular action matrix is detected with a kernel-vector witness
  LinearAction bad;
  bad.base = NumberField::rationals();
  bad.source_dim = 1;
  bad.target_dim = 2;
  bad.mats = {{{bad.base->from_rat(1), bad.base->zero()}, {bad.base->zero(), bad.base->zero()}}};
  auto bv = fixed_point_free_check(bad, FpfMode::Randomized);
  CHECK_FALSE(bv.fixed_point_free);
  CHECK(bv.proven);
  CHECK_FALSE(bv.witness_kernel.empty());

  // m = 1 with the identity action is fixed-point free and gives a CA algebra
  LinearAction idact;
  idact.base = NumberField::rationals();
  idact.source_dim = 1;
  idact.target_dim = 2;
  idact.mats = {{{idact.base->from_rat(1), idact.base->zero()}, {idact.base->zero(), idact.base->from_rat(1)}}};
  auto iv = fixed_point_free_check(idact, FpfMode::Randomized);
  CHECK(iv.fixed_point_free);
  CHECK(iv.proven);
  auto Li = build_metabelian(idact);
  CHECK(Li.jacobi_check());
  CHECK_FALSE(ca_audit(Li, 200, 11).witness_found);
}

TEST_CASE("quasi-split sl3 and its witness triple") {
  auto qs = build_quasi_split_sl3(2);
  CHECK(qs.L.dim() == 8);
  CHECK(qs.L.jacobi_check());
  CHECK(qs.L.antisymmetry_check());

  LieVec x = qs.L.basis_vec(qs.witness_x);
  LieVec y = qs.L.basis_vec(qs.witness_y);
  LieVec z = qs.L.basis_vec(qs.witness_z);
  CHECK(qs.L.vec_is_zero(qs.L.bracket(x, y)));
  CHECK(qs.L.vec_is_zero(qs.L.bracket(y, z)));
  CHECK_FALSE(qs.L.vec_is_zero(qs.L.bracket(x, z)));

  auto rep = ca_audit(qs.L, 50, 17);
  CHECK(rep.witness_found);
  // the reported witness is exact
  CHECK(qs.L.vec_is_zero(qs.L.bracket(rep.witness.x, rep.witness.y)));
  CHECK(qs.L.vec_is_zero(qs.L.bracket(rep.witness.y, rep.witness.z)));
  CHECK_FALSE(qs.L.vec_is_zero(qs.L.bracket(rep.witness.x, rep.witness.z)));

  CHECK_THROWS(build_quasi_split_sl3(4)); // square
}

TEST_CASE("derived algebras of cyclic algebras") {
  auto d2 = build_derived_cyclic(2);
  CHECK(d2.L.dim() == 3);
  CHECK(d2.L.jacobi_check());
  CHECK_FALSE(ca_audit(d2.L, 300, 23).witness_found);

  auto d3 = build_derived_cyclic(3);
  CHECK(d3.L.dim() == 8);
  CHECK(d3.L.jacobi_check());
  CHECK_FALSE(ca_audit(d3.L, 300, 23).witness_found);

  auto d4 = build_derived_cyclic(4);
  CHECK(d4.L.dim() == 15);
  CHECK(d4.L.jacobi_check());
  REQUIRE(d4.has_witness);
  auto tri = d4.witness_triple();
  CHECK(d4.L.vec_is_zero(d4.L.bracket(tri[0], tri[1])));
  CHECK(d4.L.vec_is_zero(d4.L.bracket(tri[1], tri[2])));
  CHECK_FALSE(d4.L.vec_is_zero(d4.L.bracket(tri[0], tri[2])));

  auto rep = ca_audit(d4.L, 100, 29);
  CHECK(rep.witness_found);
}

TEST_CASE("star formula") {
  auto dc = build_derived_cyclic(3);
  const auto& W = dc.W;

  // base-field z brackets to zero
  CHECK(star_formula_check(dc, W->from_rat(5), W->gen(), 1));

  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    NumberField::Elem z = W->zero(), zp = W->zero();
    for (int j = 0; j < 3; ++j) {
      z[static_cast<size_t>(j)] = static_cast<int>(rng.range(-4, 4));
      zp[static_cast<size_t>(j)] = static_cast<int>(rng.range(-4, 4));
    }
    int i = 1 + static_cast<int>(rng.below(2));
    CHECK(star_formula_check(dc, z, zp, i));
  }

  // z not fixed by sigma^i and z' = (z - sigma^i z)^{-1} give bracket x^i
  NumberField::Elem z = W->gen();
  NumberField::Elem diff = W->sub(z, W->sigma_iter(z, 1));
  REQUIRE_FALSE(W->is_zero(diff));
  NumberField::Elem zp = W->inv(diff);
  std::vector<NumberField::Elem> a(3, W->zero()), b(3, W->zero());
  a[0] = z;
  b[1] = zp;
  auto br = dc.d_bracket(a, b);
  CHECK(W->eq(br[1], W->one()));
  CHECK(W->is_zero(br[0]));
  CHECK(W->is_zero(br[2]));
}

namespace {

// type (c) shape: pure quaternions acting by left multiplication on copies of
// the quaternion algebra itself
StructureLieAlgebra make_type_c(int copies) {
  Rat qa = -1, qb = -1;
  auto Q = NumberField::rationals();
  int dim = 3 + 4 * copies;
  StructureLieAlgebra L(Q, dim, "type_c");
  // source brackets: pure quaternions u, v, w
  auto setv = [&](int i, int j, int k, long long val) {
    LieVec v = L.zero_vec();
    v[static_cast<size_t>(k)] = Q->from_rat(Rat(val));
    L.set_bracket(i, j, v);
  };
  setv(0, 1, 2, 2);
  setv(0, 2, 1, 2 * (-1)); // 2a with a = -1
  setv(1, 2, 0, -2 * (-1)); // -2b with b = -1
  // left multiplication of u, v, w on basis 1,u,v,w
  // columns: image coordinates
  long long a = -1, b = -1;
  long long lu[4][4] = {{0, a, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, a}, {0, 0, 1, 0}};
  long long lv[4][4] = {{0, 0, b, 0}, {0, 0, 0, -b}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  long long lw[4][4] = {{0, 0, 0, -a * b}, {0, 0, b, 0}, {0, -a, 0, 0}, {1, 0, 0, 0}};
  (void)qa;
  (void)qb;
  auto set_action = [&](int src, long long (*m)[4]) {
    for (int copy = 0; copy < copies; ++copy)
      for (int col = 0; col < 4; ++col) {
        LieVec val = L.zero_vec();
        for (int row = 0; row < 4; ++row)
          val[static_cast<size_t>(3 + 4 * copy + row)] = Q->from_rat(Rat(m[row][col]));
        L.set_bracket(src, 3 + 4 * copy + col, val);
      }
  };
  set_action(0, lu);
  set_action(1, lv);
  set_action(2, lw);
  return L;
}

} // namespace

TEST_CASE("quotients") {
  // quotient by zero is isomorphic
  auto L = make_sl2();
  auto Q0 = quotient_by_ideal(L, {});
  CHECK(Q0.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(L.field().eq(L.c(i, j, k), Q0.c(i, j, k)));

  // metabelian C x N quotient by N is abelian
  auto act = field_mult_action(NumberField::cyclic(2));
  auto M = build_metabelian(act);
  std::vector<LieVec> n_part = {M.basis_vec(2), M.basis_vec(3)};
  auto MB = quotient_by_ideal(M, n_part);
  CHECK(MB.dim() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(MB.field().is_zero(MB.c(i, j, k)));

  // a non-ideal is rejected with the violating pair
  CHECK_THROWS_AS(quotient_by_ideal(L, {L.basis_vec(1)}), NonIdealError);

  // type (c) modulo an invariant complement is type (c) again
  auto L2 = make_type_c(2);
  CHECK(L2.jacobi_check());
  std::vector<LieVec> first_copy;
  for (int r = 0; r < 4; ++r) first_copy.push_back(L2.basis_vec(3 + r));
  auto Qc = quotient_by_ideal(L2, first_copy);
  auto L1 = make_type_c(1);
  REQUIRE(Qc.dim() == L1.dim());
  for (int i = 0; i < L1.dim(); ++i)
    for (int j = 0; j < L1.dim(); ++j)
      for (int k = 0; k < L1.dim(); ++k) CHECK(L1.field().eq(L1.c(i, j, k), Qc.c(i, j, k)));
}

namespace {

// exact oracle for the BCH table: 6x6 strictly upper-triangular rational
// matrices are nilpotent of order 6, so exp/log terminate and
// log(exp X exp Y) equals the BCH series truncated at degree 5
struct RMat {
  std::vector<Rat> a;
  RMat() : a(36, Rat(0)) {}
  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * 6 + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * 6 + j]; }
};

RMat mul(const RMat& x, const RMat& y) {
  RMat r;
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < 6; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

RMat add(const RMat& x, const RMat& y) {
  RMat r;
  for (size_t i = 0; i < 36; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

RMat scale(const RMat& x, const Rat& c) {
  RMat r;
  for (size_t i = 0; i < 36; ++i) r.a[i] = x.a[i] * c;
  return r;
}

RMat bracket(const RMat& x, const RMat& y) { return add(mul(x, y), scale(mul(y, x), -1)); }

bool eqm(const RMat& x, const RMat& y) {
  for (size_t i = 0; i < 36; ++i)
    if (x.a[i] != y.a[i]) return false;
  return true;
}

RMat mexp(const RMat& x) {
  RMat r;
  for (int i = 0; i < 6; ++i) r.at(i, i) = 1;
  RMat pw = x;
  Rat fact = 1;
  for (int k = 1; k <= 5; ++k) {
    fact *= k;
    r = add(r, scale(pw, Rat(1) / fact));
    pw = mul(pw, x);
  }
  return r;
}

RMat mlog(const RMat& x) {
  RMat n = x;
  for (int i = 0; i < 6; ++i) n.at(i, i) -= 1;
  RMat r;
  RMat pw = n;
  for (int k = 1; k <= 5; ++k) {
    r = add(r, scale(pw, Rat(k % 2 ? 1 : -1) / k));
    pw = mul(pw, n);
  }
  return r;
}

} // namespace

TEST_CASE("bch word table matches log(exp exp) on nilpotent matrices") {
  Rng rng(41);
  const auto& table = bch_word_coefficients(5);
  for (int rep = 0; rep < 3; ++rep) {
    RMat X, Y;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        X.at(i, j) = static_cast<int>(rng.range(-3, 3));
        Y.at(i, j) = static_cast<int>(rng.range(-3, 3));
      }
    RMat want = mlog(mul(mexp(X), mexp(Y)));
    RMat got;
    for (size_t len = 1; len < table.size(); ++len)
      for (const auto& [bits, c] : table[len]) {
        // right-nested evaluation [w1,[w2,[...,wd]]]
        RMat val = (bits >> (len - 1)) & 1u ? Y : X;
        for (int pos = static_cast<int>(len) - 2; pos >= 0; --pos)
          val = bracket((bits >> pos) & 1u ? Y : X, val);
        got = add(got, scale(val, c));
      }
    CHECK(eqm(got, want));
  }
}

TEST_CASE("bch group law on the quaternion lattice") {
  auto Q = build_pure_quaternions(-1, -1);
  BchContext ctx(Q, 3, 6);
  CHECK(ctx.truncation_degree() >= 5);

  Rng rng(43);
  auto zero = ctx.zero();
  for (int t = 0; t < 50; ++t) {
    auto u = ctx.random_element(rng);
    auto v = ctx.random_element(rng);
    auto w = ctx.random_element(rng);
    CHECK(ctx.eq(ctx.bch(u, zero), u));
    CHECK(ctx.is_zero(ctx.bch(u, ctx.neg(u))));
    auto l = ctx.bch(ctx.bch(u, v), w);
    auto r = ctx.bch(u, ctx.bch(v, w));
    CHECK(ctx.eq(l, r));
  }

  auto rep = group_lie_commutation_audit(ctx, 200, 47);
  CHECK(rep.mismatches == 0);
  CHECK(rep.commuting_pairs > 0); // the colinear pairs

  // abelian lattice: all group commutators vanish
  auto A = make_abelian(NumberField::rationals(), 3);
  BchContext actx(A, 3, 6);
  Rng rng2(53);
  for (int t = 0; t < 20; ++t) {
    auto u = actx.random_element(rng2);
    auto v = actx.random_element(rng2);
    CHECK(actx.is_zero(actx.group_commutator(u, v)));
  }

  CHECK_THROWS(BchContext(Q, 2, 4)); // even p unsupported
}
