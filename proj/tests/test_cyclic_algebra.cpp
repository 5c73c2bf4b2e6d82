#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cakit/cyclic_algebra.hpp"

using namespace cakit;

TEST_CASE("defining relations of the cyclic algebra") {
  CyclicAlgebra A(5, 3, 12);
  Rng rng(1);

  auto d = A.sample_sl1n(1, rng);
  CHECK(A.eq_at_precision(A.mul(A.one(), d), d));

  // x z = sigma(z) x for random z in W
  for (int i = 0; i < 10; ++i) {
    auto z = A.w_field().random_element(rng);
    auto lhs = A.mul(A.x(), A.embed(z));
    auto rhs = A.mul(A.embed(A.w_field().frobenius(z)), A.x());
    CHECK(A.eq_at_precision(lhs, rhs));
  }

  // x^l = p * 1
  auto xl = A.pow(A.x(), 3);
  CHECK(A.eq_at_precision(xl, A.scalar(PadicScalar::from_int(5, 5, 12))));
}

TEST_CASE("reduced norm") {
  CyclicAlgebra A(5, 3, 12);
  CHECK((A.reduced_norm(A.one()) - PadicScalar::one(5, 12)).is_zero_at_precision());

  // multiplicativity on random pairs
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto d1 = A.sample_sl1n(1, rng);
    auto d2 = A.sample_sl1n(1, rng);
    auto lhs = A.reduced_norm(A.mul(d1, d2));
    auto rhs = A.reduced_norm(d1) * A.reduced_norm(d2);
    CHECK((lhs - rhs).is_zero_at_precision());
  }

  // Nrd(x) = (-1)^{l+1} p: +p for odd degree, -p for degree 2
  CHECK((A.reduced_norm(A.x()) - PadicScalar::from_int(5, 5, 12)).is_zero_at_precision());
  CyclicAlgebra B(3, 2, 12);
  CHECK((B.reduced_norm(B.x()) - PadicScalar::from_int(3, -3, 12)).is_zero_at_precision());

  // Nrd restricted to W is the field norm; Nrd of a base scalar is its l-th power
  auto c = A.scalar(PadicScalar::from_int(5, 7, 12));
  CHECK((A.reduced_norm(c) - PadicScalar::from_int(5, 343, 12)).is_zero_at_precision());
}

TEST_CASE("valuation is the x-adic one and is additive") {
  CyclicAlgebra A(5, 3, 12);
  CHECK(A.valuation(A.scalar(PadicScalar::from_int(5, 5, 12))) == 3);
  CHECK(A.valuation(A.x()) == 1);

  Rng rng(3);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    AlgebraElement d1 = A.zero(), d2 = A.zero();
    for (int k = 0; k < 3; ++k) {
      d1.c[static_cast<size_t>(k)] = A.w_field().random_element(rng);
      d2.c[static_cast<size_t>(k)] = A.w_field().random_element(rng);
    }
    if (A.is_zero_at_precision(d1) || A.is_zero_at_precision(d2)) continue;
    int64_t lhs = A.valuation(A.mul(d1, d2));
    CHECK(lhs == A.valuation(d1) + A.valuation(d2));
    ++checked;
  }
  CHECK(checked >= 90);
}

TEST_CASE("congruence levels") {
  CyclicAlgebra A(5, 3, 12);
  CHECK(A.congruence_level(A.add(A.one(), A.x())) == 1);
  CHECK(A.congruence_level(A.one()) == A.level_cap());
  CHECK_THROWS(A.congruence_level(A.x())); // not a unit of the maximal order

  CyclicAlgebra B(5, 3, 12);
  CHECK_THROWS(A.mul(A.one(), B.one())); // mismatched algebras
  // 1 + p*z for a unit z of W sits at level l
  Rng rng(4);
  auto z = A.w_field().random_unit(rng);
  auto g = A.add(A.one(), A.embed(z * PadicScalar::from_int(5, 5, 12)));
  CHECK(A.congruence_level(g) == 3);
}

TEST_CASE("congruence sampler") {
  CyclicAlgebra A(5, 3, 12);
  Rng r1(99), r2(99);
  auto g1 = A.sample_sl1n(1, r1);
  auto g2 = A.sample_sl1n(1, r2);
  CHECK(A.eq_at_precision(g1, g2)); // determinism

  CHECK((A.reduced_norm(g1) - PadicScalar::one(5, 12)).is_zero_at_precision());
  Rng r3(7);
  auto g3 = A.sample_sl1n(3, r3);
  CHECK(A.congruence_level(g3) >= 3);
  CHECK((A.reduced_norm(g3) - PadicScalar::one(5, 12)).is_zero_at_precision());
}

TEST_CASE("torsion-freeness probe in SL_1^n") {
  CyclicAlgebra A(5, 3, 12);
  Rng rng(12);
  auto g = A.sample_sl1n(1, rng);
  REQUIRE_FALSE(A.is_zero_at_precision(A.sub(g, A.one())));
  auto acc = g;
  for (int m = 2; m <= 64; ++m) {
    acc = A.mul(acc, g);
    CHECK_FALSE(A.is_zero_at_precision(A.sub(acc, A.one())));
  }
}

TEST_CASE("delta torus") {
  CyclicAlgebra A(5, 3, 10);
  auto delta = A.delta_torus();
  CHECK(delta.size() == 31); // (125 - 1) / 4

  bool has_identity = false;
  for (const auto& w : delta)
    if (A.eq_at_precision(w, A.one())) has_identity = true;
  CHECK(has_identity);

  // closed under multiplication
  auto member = [&](const AlgebraElement& z) {
    for (const auto& w : delta)
      if (A.eq_at_precision(w, z)) return true;
    return false;
  };
  for (size_t i = 0; i < delta.size(); i += 5)
    for (size_t j = 0; j < delta.size(); j += 7)
      CHECK(member(A.mul(delta[i], delta[j])));

  CyclicAlgebra B(3, 2, 10);
  CHECK(B.delta_torus().size() == 4); // (9 - 1) / 2
}

TEST_CASE("centralizer dimensions") {
  CyclicAlgebra A(5, 3, 12);
  CHECK(A.centralizer_dimension(A.one()) == 9);
  CHECK(A.centralizer_dimension(A.x()) == 3);

  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    auto g = A.sample_sl1n(1, rng);
    if (A.is_zero_at_precision(A.sub(g, A.one()))) continue;
    CHECK(A.centralizer_dimension(g) == 3);
  }
}

TEST_CASE("ca criteria table") {
  auto c53 = ca_criteria(5, 3, 1);
  CHECK(c53.sl1_ca);
  CHECK(c53.sl1_1_ca);
  CHECK(c53.sl1n_bound == 1);

  auto c32 = ca_criteria(3, 2, 1);
  CHECK_FALSE(c32.sl1_ca); // -1 in Q_3
  CHECK(c32.sl1_1_ca);
  CHECK(c32.sl1n_bound == 1); // ceil(2/2)

  auto c33 = ca_criteria(3, 3, 1);
  CHECK(c33.sl1_1_ca); // no cube roots of unity in Q_3

  auto c22 = ca_criteria(2, 2, 1);
  CHECK_FALSE(c22.sl1_1_ca); // -1 in Q_2

  CHECK_FALSE(ca_criteria(7, 2, 1).sl1_ca);
  CHECK_FALSE(ca_criteria(7, 3, 1).sl1_ca); // 3 | 7-1, so mu_3 lies in Q_7
}

TEST_CASE("transitivity audit") {
  CyclicAlgebra A(5, 3, 12);
  auto rep = transitivity_audit(A, 1, 40, 314);
  CHECK(rep.commutant_pair_violations == 0);
  CHECK_FALSE(rep.witness.has_value());

  CyclicAlgebra B(3, 2, 12);
  auto repB = transitivity_audit(B, 1, 20, 314);
  REQUIRE(repB.witness.has_value()); // explicit triple (-1, g, h)
  CHECK(repB.commutant_pair_violations == 0);
}

TEST_CASE("malnormality audit") {
  CyclicAlgebra A(5, 3, 12);
  auto rep = malnormality_audit(A, 30, 2718);
  CHECK(rep.valid_trials > 0);
  CHECK(rep.violations == 0);
  for (int d : rep.intersection_dims) CHECK(d == 1);

  CyclicAlgebra B(3, 2, 12);
  CHECK_THROWS(malnormality_audit(B, 5, 1)); // precondition sl1_ca fails
}

TEST_CASE("quaternion commutation system rank") {
  CHECK(quaternion_commutant_rank(0, 0, 0) == 3);
  CHECK(quaternion_commutant_rank(1, 0, 0) == 1);
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    Rat b = static_cast<int>(rng.range(-9, 9));
    Rat g = static_cast<int>(rng.range(-9, 9));
    Rat d = static_cast<int>(rng.range(-9, 9));
    if (b == 0 && g == 0 && d == 0) b = 1;
    CHECK(quaternion_commutant_rank(b, g, d) == 1);
  }
}
