#include "cakit/checks.hpp"

#include <chrono>
#include <sstream>

#include "cakit/cyclic_algebra.hpp"
#include "cakit/frattini.hpp"
#include "cakit/lie.hpp"
#include "cakit/modrep.hpp"

namespace cakit {

namespace {

struct Checker {
  CheckResult r;
  explicit Checker(int id, std::string name, double budget) {
    r.id = id;
    r.name = std::move(name);
    r.pass = true;
    r.budget_seconds = budget;
  }
  void require(bool cond, const std::string& what) {
    if (!cond) {
      r.pass = false;
      r.details.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { r.details.push_back(s); }
};

template <typename F>
CheckResult timed(int id, const std::string& name, double budget, F&& body) {
  Checker c(id, name, budget);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& ex) {
    c.r.pass = false;
    c.r.details.push_back(std::string("exception: ") + ex.what());
  }
  c.r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.r.seconds > budget) {
    c.r.pass = false;
    c.r.details.push_back("budget exceeded");
  }
  return c.r;
}

std::string fmt_vec(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

// pure quaternions acting by left multiplication on copies of the quaternion
// algebra: the semisimple-by-abelian shape used by the quotient checks
StructureLieAlgebra make_division_action_algebra(int copies) {
  auto Q = NumberField::rationals();
  int dim = 3 + 4 * copies;
  StructureLieAlgebra L(Q, dim, "division_action");
  auto setv = [&](int i, int j, int k, long long val) {
    LieVec v = L.zero_vec();
    v[static_cast<size_t>(k)] = Q->from_rat(Rat(val));
    L.set_bracket(i, j, v);
  };
  long long a = -1, b = -1;
  setv(0, 1, 2, 2);
  setv(0, 2, 1, 2 * a);
  setv(1, 2, 0, -2 * b);
  long long lu[4][4] = {{0, a, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, a}, {0, 0, 1, 0}};
  long long lv[4][4] = {{0, 0, b, 0}, {0, 0, 0, -b}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  long long lw[4][4] = {{0, 0, 0, -a * b}, {0, 0, b, 0}, {0, -a, 0, 0}, {1, 0, 0, 0}};
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

std::vector<CheckResult> run_full_checks(int level, uint64_t seed) {
  std::vector<CheckResult> out;

  out.push_back(timed(1, "rank formulas for the quaternion family", 90.0, [&](Checker& c) {
    const int orders[3] = {8, 16, 32};
    const int want_rank[3] = {9, 17, 33};
    const int want_minus[3] = {4, 8, 16};
    for (int i = 0; i < 3; ++i) {
      auto g = FiniteGroupTable::quaternion(orders[i]);
      auto rep = rank_identities_check(g, level);
      c.require(rep.dim_f2 == want_rank[i], "dim F2 of q" + std::to_string(orders[i]));
      c.require(rep.rank_z == want_rank[i], "Z/2^k rank of q" + std::to_string(orders[i]));
      c.require(rep.rank_minus == want_minus[i], "minus rank of q" + std::to_string(orders[i]));
      c.require(rep.rk1.value_or(false), "(d-1)|G|+1 identity");
      c.require(rep.minus_rank_formula.value_or(false), "(d-1)|G|/2 identity");
      c.require(rep.rk_equal && rep.rk2b && rep.res_decomposition, "rank identities");
      c.note("q" + std::to_string(orders[i]) + ": rank " + std::to_string(rep.rank_z) + ", minus " +
             std::to_string(rep.rank_minus));
    }
  }));

  out.push_back(timed(2, "Loewy structures over F_4 for C3xV4", 10.0, [&](Checker& c) {
    auto a4 = FiniteGroupTable::c3_semidirect_v4();
    auto covers = simples_and_projectives(a4, Ring::gf(2));
    c.require(covers.size() == 3, "three simples");
    auto l0 = loewy_series(covers[0].mod);
    c.require(l0 == std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 1}, {1, 0, 0}}, "P0 layers");
    auto l1 = loewy_series(covers[1].mod);
    c.require(l1 == std::vector<std::vector<int>>{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}, "P1 layers");
    MinimalResolution res(a4, Ring::gf(2));
    c.require(res.omega_rank() == 5, "dim Omega_2 = 5");
    auto lo = loewy_series(res.omega());
    c.require(lo == std::vector<std::vector<int>>{{1, 1, 1}, {0, 1, 1}}, "Omega_2 layers");
    for (const auto& layer : lo) c.note("layer " + fmt_vec(layer));
  }));

  out.push_back(timed(3, "restriction identity for SL2(3)", 60.0, [&](Checker& c) {
    auto s = FiniteGroupTable::sl2_3();
    auto rep = rank_identities_check(s, level);
    c.require(rep.dim_f2_bar == 5, "dim over the central quotient = 5");
    c.require(rep.dim_f2 == 9, "dim Omega_2(SL2(3), F_2) = 9");
    c.require(rep.m2_identity.value_or(false), "5 - 1 = (9 - 1)/2");
  }));

  out.push_back(timed(4, "composition factors of the codimension-1 submodule for SL2(3)", 60.0, [&](Checker& c) {
    auto s = FiniteGroupTable::sl2_3();
    auto oc = omega_circ(s);
    c.require(!oc.candidates.empty(), "classifying hyperplane exists");
    for (const auto& cand : oc.candidates) {
      auto factors = composition_factors_f4(*oc.gbar, cand);
      c.require(factors.size() == 3, "three simple classes");
      c.require(factors[0] == 0, "no trivial factor");
      c.require(factors[1] == 2 && factors[2] == 2, "2 S1 + 2 S2");
      c.note("factors " + fmt_vec(factors));
    }
    c.require(fixed_point_property_check(s), "fixed point property");
  }));

  out.push_back(timed(5, "upsilon quotients of Q8", 180.0, [&](Checker& c) {
    auto q8 = FiniteGroupTable::quaternion(8);
    for (int k = 1; k <= 2; ++k) {
      auto up = build_upsilon_quotient(q8, k);
      uint64_t want = 8ULL << (4 * k);
      c.require(up.ext->order() == want, "order 8*2^{4k} at k=" + std::to_string(k));
      c.require(up.ext->group_axioms_check(), "group axioms at k=" + std::to_string(k));
      auto cb = cocycle_is_coboundary(up.ext->table());
      c.require(!cb.is_coboundary, "nonsplit at k=" + std::to_string(k));
      c.require(frattini_quality_check(*up.ext), "Frattini quality at k=" + std::to_string(k));
      // sigma-lift inverts the embedded module
      uint64_t slift = up.ext->pack(q8.sigma(), std::vector<uint32_t>(4, 0));
      bool inverts = true;
      for (uint32_t code = 0; code < (1u << (2 * k)); ++code) {
        std::vector<uint32_t> m(4, 0);
        m[0] = code & ((1u << k) - 1);
        m[1] = (code >> k) & ((1u << k) - 1);
        uint64_t jm = up.ext->j_embed(m);
        if (up.ext->mul(up.ext->mul(slift, jm), up.ext->inv(slift)) != up.ext->inv(jm)) inverts = false;
      }
      c.require(inverts, "sigma-lift inverts j(M) at k=" + std::to_string(k));
      auto aud = centralizer_audit(*up.ext, true);
      c.require(aud.even_violations == 0, "even-image torsion bound at k=" + std::to_string(k));
      c.require(aud.case3_violations == 0, "module-element case at k=" + std::to_string(k));
      auto shadow = ca_shadow_audit(*up.ext);
      c.require(shadow.full_sweep, "full sweep at k=" + std::to_string(k));
      c.require(shadow.violations == 0, "CA shadow (mod torsion) at k=" + std::to_string(k));
      c.note("k=" + std::to_string(k) + ": order " + std::to_string(up.ext->order()) + ", probed " +
             std::to_string(shadow.probed_centers) + " centers, strict noncommuting pairs " +
             std::to_string(shadow.strict_noncommuting_pairs) + " all inside the torsion shadow");
    }
    c.note("finite-level certificates, not proofs of the profinite statements");
  }));

  out.push_back(timed(6, "isomorphism classifier corpus", 60.0, [&](Checker& c) {
    const char* names[5] = {"c4", "c6", "q8", "q16", "sl2_3"};
    const bool iso[5] = {true, true, false, false, false};
    for (int i = 0; i < 5; ++i) {
      auto g = FiniteGroupTable::by_name(names[i]);
      auto res = upsilon_iso_classifier(g, 1);
      c.require(res.tau_is_isomorphism == iso[i], std::string(names[i]) + " classifier");
      c.require(res.consistent, std::string(names[i]) + " rank cross-check");
      c.note(std::string(names[i]) + ": iso=" + (res.tau_is_isomorphism ? "yes" : "no") + ", minus rank " +
             std::to_string(res.rank_minus));
    }
  }));

  out.push_back(timed(7, "division algebra over Q_5 of degree 3", 60.0, [&](Checker& c) {
    CyclicAlgebra A(5, 3, 12);
    auto delta = A.delta_torus();
    c.require(delta.size() == 31, "delta order 31");
    auto member = [&](const AlgebraElement& z) {
      for (const auto& w : delta)
        if (A.eq_at_precision(w, z)) return true;
      return false;
    };
    bool closed = true;
    for (const auto& wa : delta)
      for (const auto& wb : delta)
        if (!member(A.mul(wa, wb))) closed = false;
    c.require(closed, "delta closed under multiplication");

    Rng rng(seed ^ 0x7001);
    int norm_fail = 0, val_fail = 0;
    for (int t = 0; t < 200; ++t) {
      auto d1 = A.sample_sl1n(1, rng);
      auto d2 = A.sample_sl1n(1, rng);
      if (!(A.reduced_norm(A.mul(d1, d2)) - A.reduced_norm(d1) * A.reduced_norm(d2)).is_zero_at_precision())
        ++norm_fail;
      AlgebraElement r1 = A.zero(), r2 = A.zero();
      for (int i = 0; i < 3; ++i) {
        r1.c[static_cast<size_t>(i)] = A.w_field().random_element(rng);
        r2.c[static_cast<size_t>(i)] = A.w_field().random_element(rng);
      }
      if (!A.is_zero_at_precision(r1) && !A.is_zero_at_precision(r2) &&
          A.valuation(A.mul(r1, r2)) != A.valuation(r1) + A.valuation(r2))
        ++val_fail;
    }
    c.require(norm_fail == 0, "norm multiplicative on 200 pairs");
    c.require(val_fail == 0, "valuation additive on 200 pairs");
    int cd_fail = 0;
    for (int t = 0; t < 50; ++t) {
      auto g = A.sample_sl1n(1, rng);
      if (A.is_zero_at_precision(A.sub(g, A.one()))) continue;
      if (A.centralizer_dimension(g) != 3) ++cd_fail;
    }
    c.require(cd_fail == 0, "centralizer dimension 3 on 50 noncentral samples");
  }));

  out.push_back(timed(8, "CA criteria and audits for the congruence family", 120.0, [&](Checker& c) {
    // (5,3) CA; (3,2), (7,3), (7,2) not CA (the base field contains the
    // relevant roots of unity), each with an explicit witness triple
    struct Row {
      uint32_t p, ell;
      bool ca;
    };
    const Row rows[4] = {{5, 3, true}, {3, 2, false}, {7, 3, false}, {7, 2, false}};
    for (const auto& row : rows) {
      auto crit = ca_criteria(row.p, row.ell, 1);
      c.require(crit.sl1_ca == row.ca,
                "criterion for (" + std::to_string(row.p) + "," + std::to_string(row.ell) + ")");
      if (!row.ca) {
        CyclicAlgebra A(row.p, static_cast<int>(row.ell), 12);
        auto rep = transitivity_audit(A, 1, 20, seed ^ (row.p * 100 + row.ell));
        c.require(rep.witness.has_value(),
                  "non-CA witness for (" + std::to_string(row.p) + "," + std::to_string(row.ell) + ")");
        c.require(rep.commutant_pair_violations == 0, "commutant pairs commute");
      }
    }
    CyclicAlgebra A53(5, 3, 12);
    auto rep = transitivity_audit(A53, 1, 200, seed ^ 0x53);
    c.require(rep.commutant_pair_violations == 0, "(5,3): 0 violations in 200 trials");
    c.require(!rep.witness.has_value(), "(5,3): no witness");
    auto mal = malnormality_audit(A53, 200, seed ^ 0x54);
    c.require(mal.violations == 0, "(5,3): malnormal commutants");
    bool all_one = true;
    for (int d : mal.intersection_dims)
      if (d != 1) all_one = false;
    c.require(all_one && mal.valid_trials > 0, "(5,3): intersection dimension 1 in all valid trials");
    c.note("(5,3) malnormality: " + std::to_string(mal.valid_trials) + " valid trials");
  }));

  out.push_back(timed(9, "Lie constructions", 120.0, [&](Checker& c) {
    auto Q = NumberField::rationals();
    auto abelian = make_abelian(Q, 4);
    auto sl2 = make_sl2();
    auto quat = build_pure_quaternions(-1, -1);
    auto act = field_mult_action(NumberField::cyclic(2));
    auto cert = fixed_point_free_check(act, FpfMode::Certificate);
    c.require(cert.fixed_point_free && cert.proven, "field action certificate");
    auto metab = build_metabelian(act);
    auto d2 = build_derived_cyclic(2);
    auto d3 = build_derived_cyclic(3);
    auto d4 = build_derived_cyclic(4);
    auto qs = build_quasi_split_sl3(2);

    const StructureLieAlgebra* all[] = {&abelian, &sl2, &quat, &metab, &d2.L, &d3.L, &d4.L, &qs.L};
    for (const auto* L : all) {
      c.require(L->jacobi_check(), L->name() + " Jacobi");
      c.require(L->antisymmetry_check(), L->name() + " antisymmetry");
    }

    const StructureLieAlgebra* clean[] = {&abelian, &metab, &sl2, &quat, &d2.L, &d3.L};
    for (const auto* L : clean)
      c.require(!ca_audit(*L, 500, seed ^ 0x11).witness_found, L->name() + " has no witness in 500 trials");

    auto wq = ca_audit(qs.L, 50, seed ^ 0x12);
    c.require(wq.witness_found, "quasi-split sl3 witness found");
    auto w4 = ca_audit(d4.L, 50, seed ^ 0x13);
    c.require(w4.witness_found, "derived-cyclic degree-4 witness found");
    if (w4.witness_found) {
      c.require(d4.L.vec_is_zero(d4.L.bracket(w4.witness.x, w4.witness.y)) &&
                    d4.L.vec_is_zero(d4.L.bracket(w4.witness.y, w4.witness.z)) &&
                    !d4.L.vec_is_zero(d4.L.bracket(w4.witness.x, w4.witness.z)),
                "degree-4 witness verified exactly");
    }

    Rng rng(seed ^ 0x14);
    int star_fail = 0;
    for (int t = 0; t < 100; ++t) {
      NumberField::Elem z = d3.W->zero(), zp = d3.W->zero();
      for (int j = 0; j < 3; ++j) {
        z[static_cast<size_t>(j)] = static_cast<int>(rng.range(-4, 4));
        zp[static_cast<size_t>(j)] = static_cast<int>(rng.range(-4, 4));
      }
      if (!star_formula_check(d3, z, zp, 1 + static_cast<int>(rng.below(2)))) ++star_fail;
    }
    c.require(star_fail == 0, "100 instances of the bracket formula");

    // quotient closure
    auto q0 = quotient_by_ideal(sl2, {});
    c.require(q0.dim() == 3, "quotient by zero");
    std::vector<LieVec> npart = {metab.basis_vec(2), metab.basis_vec(3)};
    auto qm = quotient_by_ideal(metab, npart);
    bool abelian_q = true;
    for (int i = 0; i < qm.dim(); ++i)
      for (int j = 0; j < qm.dim(); ++j)
        for (int k2 = 0; k2 < qm.dim(); ++k2)
          if (!qm.field().is_zero(qm.c(i, j, k2))) abelian_q = false;
    c.require(abelian_q, "metabelian mod N is abelian");
    auto tc2 = make_division_action_algebra(2);
    c.require(tc2.jacobi_check(), "semisimple-by-abelian Jacobi");
    std::vector<LieVec> first;
    for (int r = 0; r < 4; ++r) first.push_back(tc2.basis_vec(3 + r));
    auto qc = quotient_by_ideal(tc2, first);
    auto tc1 = make_division_action_algebra(1);
    bool same = qc.dim() == tc1.dim();
    for (int i = 0; same && i < tc1.dim(); ++i)
      for (int j = 0; same && j < tc1.dim(); ++j)
        for (int k2 = 0; k2 < tc1.dim(); ++k2)
          if (!tc1.field().eq(tc1.c(i, j, k2), qc.c(i, j, k2))) same = false;
    c.require(same, "invariant-complement quotient keeps the shape");
  }));

  out.push_back(timed(10, "BCH group law at p = 3, precision 3^6", 60.0, [&](Checker& c) {
    auto quat = build_pure_quaternions(-1, -1);
    BchContext ctx(quat, 3, 6);
    c.note("truncation degree " + std::to_string(ctx.truncation_degree()));
    Rng rng(seed ^ 0x15);
    int id_fail = 0, inv_fail = 0, assoc_fail = 0;
    for (int t = 0; t < 50; ++t) {
      auto u = ctx.random_element(rng);
      auto v = ctx.random_element(rng);
      auto w = ctx.random_element(rng);
      if (!ctx.eq(ctx.bch(u, ctx.zero()), u)) ++id_fail;
      if (!ctx.is_zero(ctx.bch(u, ctx.neg(u)))) ++inv_fail;
      if (!ctx.eq(ctx.bch(ctx.bch(u, v), w), ctx.bch(u, ctx.bch(v, w)))) ++assoc_fail;
    }
    c.require(id_fail == 0, "identity on 50 triples");
    c.require(inv_fail == 0, "inverses on 50 triples");
    c.require(assoc_fail == 0, "associativity on 50 triples");
    auto rep = group_lie_commutation_audit(ctx, 200, seed ^ 0x16);
    c.require(rep.mismatches == 0, "commutation equivalence in 200 trials");
    c.note(std::to_string(rep.commuting_pairs) + " commuting pairs among 200");
  }));

  (void)level;
  return out;
}

} // namespace cakit
