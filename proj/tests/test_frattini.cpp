#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cakit/frattini.hpp"

using namespace cakit;

TEST_CASE("universal cover of C4 at level 1 is C8") {
  auto c4 = FiniteGroupTable::cyclic(4);
  auto phi = build_phi_quotient(c4, 1);
  CHECK(phi.ext->order() == 8);
  CHECK(phi.ext->group_axioms_check());
  int maxord = 0;
  for (uint64_t x = 0; x < phi.ext->order(); ++x) maxord = std::max(maxord, phi.ext->elem_order(x));
  CHECK(maxord == 8); // cyclic of order 8

  // generator lift generates the order-8 group
  CHECK(frattini_quality_check(*phi.ext));
}

TEST_CASE("the Q8 cover cocycle is not a coboundary") {
  auto q8 = FiniteGroupTable::quaternion(8);
  auto phi = build_phi_quotient(q8, 1);
  auto cb = cocycle_is_coboundary(phi.ext->table());
  CHECK_FALSE(cb.is_coboundary);
  CHECK(cb.augmented_rank > cb.system_rank); // rank certificate

  // a coboundary built from the zero function splits, as a sanity check
  CocycleTable zero = phi.ext->table();
  for (auto& v : zero.c) std::fill(v.begin(), v.end(), 0u);
  CHECK(cocycle_is_coboundary(zero).is_coboundary);
}

TEST_CASE("upsilon quotient of Q8 at level 1") {
  auto q8 = FiniteGroupTable::quaternion(8);
  auto up = build_upsilon_quotient(q8, 1);
  CHECK(up.split.rank_minus == 4);
  CHECK(up.ext->order() == 128); // 8 * 2^4
  CHECK(up.ext->group_axioms_check());

  // sigma-lift inverts the embedded module elementwise
  uint64_t slift = up.ext->pack(q8.sigma(), std::vector<uint32_t>(4, 0));
  for (uint32_t code = 0; code < 16; ++code) {
    std::vector<uint32_t> m = {code & 1u, (code >> 1) & 1u, (code >> 2) & 1u, (code >> 3) & 1u};
    uint64_t jm = up.ext->j_embed(m);
    uint64_t conj = up.ext->mul(up.ext->mul(slift, jm), up.ext->inv(slift));
    CHECK(conj == up.ext->inv(jm));
  }

  CHECK_FALSE(cocycle_is_coboundary(up.ext->table()).is_coboundary);
  CHECK(frattini_quality_check(*up.ext));

  // a split extension with the same nontrivial module fails Frattini quality
  CocycleTable split_table = up.ext->table();
  for (auto& v : split_table.c) std::fill(v.begin(), v.end(), 0u);
  ExtensionGroup split_ext(split_table, "split");
  CHECK_FALSE(frattini_quality_check(split_ext));
}

TEST_CASE("upsilon of C4 collapses to C4") {
  auto c4 = FiniteGroupTable::cyclic(4);
  auto up = build_upsilon_quotient(c4, 2);
  CHECK(up.split.rank_minus == 0);
  CHECK(up.ext->order() == 4);
}

TEST_CASE("centralizer structure of upsilon(Q8) at level 2") {
  auto q8 = FiniteGroupTable::quaternion(8);
  auto up = build_upsilon_quotient(q8, 2);
  CHECK(up.ext->order() == 2048); // 8 * 2^8
  CHECK(up.ext->group_axioms_check());

  // C(sigma-lift) meets j(M) exactly in the 2-torsion 2M (index 2^4)
  auto fixed = fixed_points(up.ext->table().mod, {q8.sigma()});
  CHECK(fixed.size() == 4);
  for (const auto& v : fixed)
    for (uint32_t x : v) CHECK((x & 1u) == 0u); // inside 2M

  auto rep = centralizer_audit(*up.ext, true);
  CHECK(rep.even_violations == 0);
  CHECK(rep.odd_fixed_violations == 0);
  CHECK(rep.case3_violations == 0);

  auto shadow = ca_shadow_audit(*up.ext);
  CHECK(shadow.full_sweep);
  CHECK(shadow.violations == 0);
  CHECK(shadow.probed_centers > 0);
  // the torsion shadow is genuinely present at finite level
  CHECK(shadow.strict_noncommuting_pairs > 0);
}

TEST_CASE("ca shadow at level 1") {
  auto q8 = FiniteGroupTable::quaternion(8);
  auto up = build_upsilon_quotient(q8, 1);
  auto shadow = ca_shadow_audit(*up.ext);
  CHECK(shadow.full_sweep);
  CHECK(shadow.violations == 0);
}

TEST_CASE("centralizer audit for upsilon(SL2(3))") {
  auto s = FiniteGroupTable::sl2_3();
  auto up = build_upsilon_quotient(s, 2);
  CHECK(up.ext->order() == 24 * 256);

  // odd-order images fix nothing in the minus module (fixed point property)
  auto rep = centralizer_audit(*up.ext, true);
  CHECK(rep.odd_fixed_violations == 0);
  CHECK(rep.even_violations == 0);
  CHECK(rep.case3_violations == 0);

  // direct check of the example: an order-3 image has trivial fixed submodule
  int g3 = -1;
  for (int g = 0; g < s.order(); ++g)
    if (s.elem_order(g) == 3) {
      g3 = g;
      break;
    }
  REQUIRE(g3 >= 0);
  auto fixed = fixed_points(up.ext->table().mod, {g3});
  bool all_zero = true;
  for (const auto& v : fixed)
    for (uint32_t x : v)
      if (x != 0) all_zero = false;
  CHECK(all_zero);
}

TEST_CASE("iso classifier agrees with the minus rank") {
  auto check = [](const char* name, bool expect_iso, int expect_rank) {
    auto g = FiniteGroupTable::by_name(name);
    auto res = upsilon_iso_classifier(g, 1);
    CHECK(res.tau_is_isomorphism == expect_iso);
    CHECK(res.rank_minus == expect_rank);
    CHECK(res.consistent);
  };
  check("c4", true, 0);
  check("c6", true, 0);
  check("q8", false, 4);
  check("q16", false, 8);
  check("sl2_3", false, 4);
}

TEST_CASE("tower compatibility") {
  auto q8 = FiniteGroupTable::quaternion(8);
  auto rep = tower_compatibility_check(q8, 1);
  CHECK(rep.cocycle_compatible);
  CHECK(rep.reduction_is_hom);
  CHECK(rep.kernel_matches);
  CHECK(rep.kernel_size == 16); // 2 Omega-bar-minus at level 2 has 2^4 elements
}
