#include "cakit/frattini.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cakit {

// ---------------- ExtensionGroup ----------------

ExtensionGroup::ExtensionGroup(CocycleTable table, std::string name)
    : t_(std::move(table)), name_(std::move(name)) {
  if (t_.mod.ring.kind != Ring::Kind::Z2k)
    throw std::domain_error("extension groups use Z/2^k module coefficients");
  gsize_ = t_.G->order();
  mbits_ = 1ULL << t_.mod.ring.param;
  uint64_t mcount = 1;
  for (int i = 0; i < t_.mod.rank; ++i) mcount *= mbits_;
  order_ = static_cast<uint64_t>(gsize_) * mcount;
  if (!t_.verify_identity()) throw std::runtime_error("cocycle identity failed at construction");
}

uint64_t ExtensionGroup::identity() const { return pack(t_.G->identity(), std::vector<uint32_t>(static_cast<size_t>(t_.mod.rank), 0)); }

uint64_t ExtensionGroup::pack(int g, const std::vector<uint32_t>& m) const {
  uint64_t acc = 0;
  for (int i = t_.mod.rank - 1; i >= 0; --i) acc = acc * mbits_ + (m[static_cast<size_t>(i)] & (mbits_ - 1));
  return acc * static_cast<uint64_t>(gsize_) + static_cast<uint64_t>(g);
}

std::vector<uint32_t> ExtensionGroup::module_part(uint64_t x) const {
  x /= static_cast<uint64_t>(gsize_);
  std::vector<uint32_t> m(static_cast<size_t>(t_.mod.rank));
  for (int i = 0; i < t_.mod.rank; ++i) {
    m[static_cast<size_t>(i)] = static_cast<uint32_t>(x % mbits_);
    x /= mbits_;
  }
  return m;
}

uint64_t ExtensionGroup::mul(uint64_t x, uint64_t y) const {
  int g = tau(x), h = tau(y);
  std::vector<uint32_t> m = module_part(x);
  std::vector<uint32_t> n = module_part(y);
  const Ring& R = t_.mod.ring;
  std::vector<uint32_t> gn = mmat_apply(R, t_.mod.action(g), n);
  const auto& c = t_.c[static_cast<size_t>(g) * gsize_ + h];
  for (int i = 0; i < t_.mod.rank; ++i)
    m[static_cast<size_t>(i)] = R.add(R.add(m[static_cast<size_t>(i)], gn[static_cast<size_t>(i)]), c[static_cast<size_t>(i)]);
  return pack(t_.G->mul(g, h), m);
}

uint64_t ExtensionGroup::inv(uint64_t x) const {
  // (g,m)^{-1} = (g^{-1}, -g^{-1} m - c(g^{-1}, g))
  int g = tau(x);
  int gi = t_.G->inv(g);
  const Ring& R = t_.mod.ring;
  std::vector<uint32_t> m = module_part(x);
  std::vector<uint32_t> gm = mmat_apply(R, t_.mod.action(gi), m);
  const auto& c = t_.c[static_cast<size_t>(gi) * gsize_ + g];
  std::vector<uint32_t> out(static_cast<size_t>(t_.mod.rank));
  for (int i = 0; i < t_.mod.rank; ++i)
    out[static_cast<size_t>(i)] = R.neg(R.add(gm[static_cast<size_t>(i)], c[static_cast<size_t>(i)]));
  return pack(gi, out);
}

int ExtensionGroup::elem_order(uint64_t x) const {
  uint64_t e = identity();
  uint64_t acc = x;
  int k = 1;
  while (acc != e) {
    acc = mul(acc, x);
    ++k;
    if (static_cast<uint64_t>(k) > order_) throw std::runtime_error("order overflow");
  }
  return k;
}

bool ExtensionGroup::group_axioms_check(uint64_t seed) const {
  uint64_t e = identity();
  for (uint64_t x = 0; x < order_; ++x) {
    if (mul(e, x) != x || mul(x, e) != x) return false;
    uint64_t xi = inv(x);
    if (mul(x, xi) != e || mul(xi, x) != e) return false;
  }
  if (order_ <= 128) {
    for (uint64_t a = 0; a < order_; ++a)
      for (uint64_t b = 0; b < order_; ++b)
        for (uint64_t c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  } else {
    Rng rng(seed);
    for (int t = 0; t < 4000; ++t) {
      uint64_t a = rng.below(order_), b = rng.below(order_), c = rng.below(order_);
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    }
  }
  return true;
}

std::vector<uint64_t> ExtensionGroup::centralizer(uint64_t x) const {
  std::vector<uint64_t> out;
  for (uint64_t y = 0; y < order_; ++y)
    if (mul(x, y) == mul(y, x)) out.push_back(y);
  return out;
}

std::vector<uint64_t> ExtensionGroup::closure(const std::vector<uint64_t>& gens) const {
  std::set<uint64_t> seen;
  std::vector<uint64_t> frontier;
  seen.insert(identity());
  frontier.push_back(identity());
  for (uint64_t g : gens)
    if (seen.insert(g).second) frontier.push_back(g);
  for (size_t i = 0; i < frontier.size(); ++i)
    for (size_t j = 0; j < frontier.size(); ++j) {
      uint64_t p = mul(frontier[i], frontier[j]);
      if (seen.insert(p).second) frontier.push_back(p);
      if (seen.size() == order_) return {seen.begin(), seen.end()};
    }
  return {seen.begin(), seen.end()};
}

// ---------------- builders ----------------

PhiQuotient build_phi_quotient(const FiniteGroupTable& G, int k) {
  PhiQuotient out;
  out.k = k;
  out.padded_res = std::make_shared<MinimalResolution>(G, Ring::z2k(k + 2));
  const auto& coc = out.padded_res->cocycle();
  CocycleTable t;
  t.G = &G;
  t.mod = reduce_mod(out.padded_res->omega(), k);
  t.c.reserve(coc.size());
  Ring Rt = Ring::z2k(k);
  for (const auto& v : coc) {
    std::vector<uint32_t> w = v;
    for (auto& x : w) x &= Rt.mask;
    t.c.push_back(std::move(w));
  }
  out.ext = std::make_shared<ExtensionGroup>(std::move(t), "Phi(" + G.name() + ")/2^" + std::to_string(k));
  return out;
}

UpsilonQuotient build_upsilon_quotient(const FiniteGroupTable& G, int k) {
  if (G.sigma() < 0) throw std::domain_error("upsilon needs a central involution");
  UpsilonQuotient out;
  out.k = k;
  out.padded_res = std::make_shared<MinimalResolution>(G, Ring::z2k(k + 2));
  out.split = sigma_split(out.padded_res->omega(), G.sigma(), k);
  const auto& coc = out.padded_res->cocycle();
  const Ring& Rp = out.padded_res->omega().ring;
  Ring Rt = Ring::z2k(k);
  CocycleTable t;
  t.G = &G;
  t.mod = out.split.m_minus;
  t.c.reserve(coc.size());
  for (const auto& v : coc) {
    std::vector<uint32_t> w = mmat_apply(Rp, out.split.minus_proj, v);
    for (auto& x : w) x &= Rt.mask;
    t.c.push_back(std::move(w));
  }
  out.ext = std::make_shared<ExtensionGroup>(std::move(t), "Upsilon(" + G.name() + ")/2^" + std::to_string(k));
  return out;
}

// ---------------- splitting / Frattini quality ----------------

CoboundaryResult cocycle_is_coboundary(const CocycleTable& t) {
  CoboundaryResult out;
  auto f = coboundary_solve(t);
  out.is_coboundary = f.has_value();
  out.splitting = f;
  // rank accounting over the residue field for the certificate
  const FiniteGroupTable& G = *t.G;
  const Ring& R = t.mod.ring;
  int n = G.order();
  int r = t.mod.rank;
  int id = G.identity();
  std::vector<int> gidx(static_cast<size_t>(n), -1);
  int nv = 0;
  for (int g = 0; g < n; ++g)
    if (g != id) gidx[static_cast<size_t>(g)] = nv++;
  MMat sys(n * n * r, nv * r + 1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int row0 = (g * n + h) * r;
      if (h != id) {
        const MMat& ag = t.mod.action(g);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            sys.at(row0 + i, gidx[static_cast<size_t>(h)] * r + j) =
                R.add(sys.at(row0 + i, gidx[static_cast<size_t>(h)] * r + j), ag.at(i, j));
      }
      int gh = G.mul(g, h);
      if (gh != id)
        for (int i = 0; i < r; ++i)
          sys.at(row0 + i, gidx[static_cast<size_t>(gh)] * r + i) =
              R.sub(sys.at(row0 + i, gidx[static_cast<size_t>(gh)] * r + i), R.one());
      if (g != id)
        for (int i = 0; i < r; ++i)
          sys.at(row0 + i, gidx[static_cast<size_t>(g)] * r + i) =
              R.add(sys.at(row0 + i, gidx[static_cast<size_t>(g)] * r + i), R.one());
    }
  MMat noaug = sys;
  for (int i = 0; i < noaug.rows; ++i) noaug.at(i, noaug.cols - 1) = 0;
  out.system_rank = residue_rank(R, noaug);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int row0 = (g * n + h) * r;
      const auto& cv = t.c[static_cast<size_t>(g) * n + h];
      for (int i = 0; i < r; ++i) sys.at(row0 + i, sys.cols - 1) = cv[static_cast<size_t>(i)];
    }
  out.augmented_rank = residue_rank(R, sys);
  return out;
}

bool frattini_quality_check(const ExtensionGroup& e, int sampled_tuples, uint64_t seed) {
  if (e.order() > (1ULL << 15)) throw std::domain_error("frattini_quality_check capped at order 2^15");
  const FiniteGroupTable& G = e.base();
  std::vector<uint32_t> zero(static_cast<size_t>(e.module_rank()), 0);
  // deterministic worst case: zero-component lifts
  std::vector<uint64_t> lifts;
  for (int g : G.generators()) lifts.push_back(e.pack(g, zero));
  if (e.closure(lifts).size() != e.order()) return false;
  Rng rng(seed);
  for (int t = 0; t < sampled_tuples; ++t) {
    std::vector<uint64_t> tup;
    for (int g : G.generators()) {
      std::vector<uint32_t> m(static_cast<size_t>(e.module_rank()));
      for (auto& x : m) x = static_cast<uint32_t>(rng.below(1ULL << e.level()));
      tup.push_back(e.pack(g, m));
    }
    if (e.closure(tup).size() != e.order()) return false;
  }
  return true;
}

// ---------------- centralizer audits ----------------

CentralizerAuditReport centralizer_audit(const ExtensionGroup& e, bool group_has_fpp) {
  CentralizerAuditReport rep;
  rep.order = e.order();
  rep.fpp_assumed = group_has_fpp;
  rep.full_sweep = e.order() <= (1ULL << 12);
  const FiniteGroupTable& G = e.base();
  const GModule& M = e.table().mod;
  const Ring& R = M.ring;
  int k = e.level();

  // classification only depends on the image tau(x); sweep G
  for (int g = 0; g < G.order(); ++g) {
    int od = G.elem_order(g);
    if (g == G.identity()) continue;
    if (od % 2 == 0) {
      ++rep.histogram["even_image"];
      // C(x) meets j(M) in ker(g - 1); every element there must have order <= 2
      auto fixed = fixed_points(M, {g});
      for (const auto& v : fixed) {
        // 2v = 0 for every generator forces order <= 2 on the whole kernel
        bool order_le_2 = true;
        for (uint32_t x : v)
          if (R.add(x, x) != 0) order_le_2 = false;
        if (!order_le_2) ++rep.even_violations;
      }
    } else {
      ++rep.histogram["odd_image"];
      std::vector<int> gens = {g};
      auto fixed = fixed_points(M, gens);
      bool trivial = true;
      for (const auto& v : fixed) {
        bool zero = true;
        for (uint32_t x : v)
          if (x != 0) zero = false;
        if (!zero) trivial = false;
      }
      if (group_has_fpp && !trivial) ++rep.odd_fixed_violations;
    }
  }

  // case tau(x) = 1: x = j(w) of maximal order; no even-order image may
  // centralize it unless x is its own inverse (impossible at order 2^k >= 4)
  {
    ++rep.histogram["module_elements"];
    for (int g = 0; g < G.order(); ++g) {
      if (G.elem_order(g) % 2 != 0) continue;
      // fixed vectors of g of maximal order would witness a violation
      auto fixed = fixed_points(M, {g});
      for (const auto& v : fixed) {
        // maximal order means a unit coordinate
        bool maximal = false;
        for (uint32_t x : v)
          if (R.is_unit(x)) maximal = true;
        bool self_inverse = true;
        for (uint32_t x : v)
          if (R.add(x, x) != 0) self_inverse = false;
        if (maximal && !self_inverse && k >= 2) ++rep.case3_violations;
      }
    }
  }
  rep.notes.push_back("finite-level certificate at k=" + std::to_string(k) + ", not a proof of the profinite statement");
  return rep;
}

CaShadowReport ca_shadow_audit(const ExtensionGroup& e, int sample_centers, uint64_t seed) {
  CaShadowReport rep;
  rep.order = e.order();
  rep.full_sweep = e.order() <= (1ULL << 12);
  const Ring& R = e.table().mod.ring;

  auto in_torsion_shadow = [&](uint64_t y) {
    if (e.tau(y) != e.base().identity()) return false;
    auto m = e.module_part(y);
    for (uint32_t x : m)
      if (R.add(x, x) != 0) return false;
    return true; // j(m) with 2m = 0
  };

  if (rep.full_sweep) {
    // dense multiplication and inverse tables make the order^2 sweep cheap
    uint32_t n = static_cast<uint32_t>(e.order());
    std::vector<uint32_t> tab(static_cast<size_t>(n) * n);
    std::vector<uint32_t> itab(n);
    for (uint32_t a = 0; a < n; ++a) {
      itab[a] = static_cast<uint32_t>(e.inv(a));
      for (uint32_t b = 0; b < n; ++b)
        tab[static_cast<size_t>(a) * n + b] = static_cast<uint32_t>(e.mul(a, b));
    }
    auto comm = [&](uint32_t a, uint32_t b) {
      uint32_t ab = tab[static_cast<size_t>(a) * n + b];
      uint32_t iaib = tab[static_cast<size_t>(itab[a]) * n + itab[b]];
      return tab[static_cast<size_t>(ab) * n + iaib];
    };
    uint32_t id = static_cast<uint32_t>(e.identity());
    for (uint32_t y = 0; y < n; ++y) {
      if (y == id || in_torsion_shadow(y)) {
        ++rep.skipped_torsion_shadow;
        continue;
      }
      ++rep.probed_centers;
      std::vector<uint32_t> cz;
      for (uint32_t x = 0; x < n; ++x)
        if (tab[static_cast<size_t>(x) * n + y] == tab[static_cast<size_t>(y) * n + x]) cz.push_back(x);
      for (size_t i = 0; i < cz.size(); ++i)
        for (size_t j = i + 1; j < cz.size(); ++j) {
          if (tab[static_cast<size_t>(cz[i]) * n + cz[j]] == tab[static_cast<size_t>(cz[j]) * n + cz[i]]) continue;
          ++rep.strict_noncommuting_pairs;
          uint32_t c = comm(cz[i], cz[j]);
          if (!(c == id || in_torsion_shadow(c))) ++rep.violations;
        }
    }
  } else {
    Rng rng(seed);
    uint64_t id = e.identity();
    for (int t = 0; t < sample_centers; ++t) {
      uint64_t y = rng.below(e.order());
      if (y == id || in_torsion_shadow(y)) {
        ++rep.skipped_torsion_shadow;
        continue;
      }
      ++rep.probed_centers;
      auto cz = e.centralizer(y);
      for (size_t i = 0; i < cz.size(); ++i)
        for (size_t j = i + 1; j < cz.size(); ++j) {
          if (e.mul(cz[i], cz[j]) == e.mul(cz[j], cz[i])) continue;
          ++rep.strict_noncommuting_pairs;
          uint64_t c = e.mul(e.mul(cz[i], cz[j]), e.mul(e.inv(cz[i]), e.inv(cz[j])));
          if (!(c == id || in_torsion_shadow(c))) ++rep.violations;
        }
    }
  }
  rep.notes.push_back("transitivity of commutation checked modulo the 2-torsion shadow of j(M); "
                      "the literal conclusion fails at finite level because shadow elements are "
                      "forced into even-image centralizers");
  return rep;
}

IsoClassifierResult upsilon_iso_classifier(const FiniteGroupTable& G, int k) {
  if (G.sigma() < 0) throw std::domain_error("classifier needs a central involution");
  IsoClassifierResult out;
  auto sa = subgroup_analysis(G);
  bool product = static_cast<int>(sa.sylow2.size() * sa.o2prime.size()) == G.order();
  out.tau_is_isomorphism = sa.sylow2_cyclic && product;
  MinimalResolution res(G, Ring::z2k(k + 2));
  SigmaSplit split = sigma_split(res.omega(), G.sigma(), k);
  out.rank_minus = split.rank_minus;
  out.consistent = (out.tau_is_isomorphism == (out.rank_minus == 0));
  return out;
}

TowerCompatReport tower_compatibility_check(const FiniteGroupTable& G, int k_low, uint64_t seed) {
  TowerCompatReport rep;
  UpsilonQuotient hi = build_upsilon_quotient(G, k_low + 1);
  UpsilonQuotient lo = build_upsilon_quotient(G, k_low);
  const Ring Rlo = Ring::z2k(k_low);

  // cocycles agree after reduction
  rep.cocycle_compatible = true;
  int n = G.order();
  for (int g = 0; g < n && rep.cocycle_compatible; ++g)
    for (int h = 0; h < n && rep.cocycle_compatible; ++h) {
      const auto& chv = hi.ext->table().c[static_cast<size_t>(g) * n + h];
      const auto& clv = lo.ext->table().c[static_cast<size_t>(g) * n + h];
      for (size_t i = 0; i < chv.size(); ++i)
        if ((chv[i] & Rlo.mask) != clv[i]) rep.cocycle_compatible = false;
    }

  // reduction map is a surjective homomorphism with kernel 2^k Omega-bar-minus
  auto reduce_elem = [&](uint64_t x) {
    auto m = hi.ext->module_part(x);
    for (auto& v : m) v &= Rlo.mask;
    return lo.ext->pack(hi.ext->tau(x), m);
  };
  rep.reduction_is_hom = true;
  Rng rng(seed);
  uint64_t trials = std::min<uint64_t>(hi.ext->order() * 4, 20000);
  for (uint64_t t = 0; t < trials; ++t) {
    uint64_t a = rng.below(hi.ext->order());
    uint64_t b = rng.below(hi.ext->order());
    if (reduce_elem(hi.ext->mul(a, b)) != lo.ext->mul(reduce_elem(a), reduce_elem(b))) {
      rep.reduction_is_hom = false;
      break;
    }
  }
  uint64_t kernel = 0;
  for (uint64_t x = 0; x < hi.ext->order() && kernel <= (1ULL << 20); ++x)
    if (reduce_elem(x) == lo.ext->identity()) ++kernel;
  rep.kernel_size = kernel;
  int rank = hi.ext->module_rank();
  rep.kernel_matches = (kernel == (1ULL << rank)); // 2^k m, m mod 2: 2^rank elements
  return rep;
}

} // namespace cakit
