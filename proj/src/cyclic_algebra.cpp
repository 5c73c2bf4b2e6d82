#include "cakit/cyclic_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace cakit {

CyclicAlgebra::CyclicAlgebra(uint32_t p, int ell, int precision)
    : p_(p), ell_(ell), n_(precision), W_(p, ell, precision) {
  if (!is_prime_u64(static_cast<uint64_t>(ell))) throw std::domain_error("degree must be prime");
}

AlgebraElement CyclicAlgebra::zero() const {
  AlgebraElement a;
  a.A = this;
  a.c.assign(static_cast<size_t>(ell_), W_.zero());
  return a;
}

AlgebraElement CyclicAlgebra::one() const {
  AlgebraElement a = zero();
  a.c[0] = W_.one();
  return a;
}

AlgebraElement CyclicAlgebra::x() const {
  AlgebraElement a = zero();
  a.c[1] = W_.one();
  return a;
}

AlgebraElement CyclicAlgebra::embed(const UnramifiedElement& z, int i) const {
  AlgebraElement a = zero();
  a.c[static_cast<size_t>(i)] = z;
  return a;
}

AlgebraElement CyclicAlgebra::scalar(const PadicScalar& s) const {
  AlgebraElement a = zero();
  a.c[0] = W_.from_scalar(s);
  return a;
}

AlgebraElement CyclicAlgebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.A != this || b.A != this) throw std::domain_error("algebra mismatch");
  AlgebraElement r = zero();
  for (int i = 0; i < ell_; ++i) r.c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)];
  return r;
}

AlgebraElement CyclicAlgebra::sub(const AlgebraElement& a, const AlgebraElement& b) const {
  return add(a, neg(b));
}

AlgebraElement CyclicAlgebra::neg(const AlgebraElement& a) const {
  AlgebraElement r = zero();
  for (int i = 0; i < ell_; ++i) r.c[static_cast<size_t>(i)] = -a.c[static_cast<size_t>(i)];
  return r;
}

AlgebraElement CyclicAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.A != this || b.A != this) throw std::domain_error("algebra mismatch");
  AlgebraElement r = zero();
  PadicScalar gamma = PadicScalar::from_int(p_, p_, n_);
  for (int i = 0; i < ell_; ++i) {
    // exact-zero coefficients contribute nothing; inexact zeros must still
    // propagate their precision bound
    if (a.c[static_cast<size_t>(i)].val() >= PadicScalar::kInfinity) continue;
    for (int j = 0; j < ell_; ++j) {
      // z x^i * w x^j = z sigma^i(w) x^{i+j}
      UnramifiedElement term = a.c[static_cast<size_t>(i)] * W_.frobenius_iter(b.c[static_cast<size_t>(j)], i);
      int k = i + j;
      if (k >= ell_) {
        k -= ell_;
        term = term * gamma;
      }
      r.c[static_cast<size_t>(k)] = r.c[static_cast<size_t>(k)] + term;
    }
  }
  return r;
}

AlgebraElement CyclicAlgebra::pow(const AlgebraElement& a, uint64_t k) const {
  AlgebraElement r = one();
  AlgebraElement b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

AlgebraElement CyclicAlgebra::inverse_principal(const AlgebraElement& g) const {
  AlgebraElement s = sub(g, one());
  if (valuation(s) < 1) throw std::domain_error("inverse_principal: g must be congruent to 1");
  // geometric series 1 - s + s^2 - ...
  AlgebraElement acc = one();
  AlgebraElement term = one();
  for (int64_t k = 1; k <= level_cap() + 1; ++k) {
    term = mul(term, s);
    if (is_zero_at_precision(term)) break;
    acc = (k % 2) ? sub(acc, term) : add(acc, term);
  }
  return acc;
}

bool CyclicAlgebra::is_zero_at_precision(const AlgebraElement& a) const {
  for (const auto& z : a.c)
    if (!z.is_zero_at_precision()) return false;
  return true;
}

bool CyclicAlgebra::eq_at_precision(const AlgebraElement& a, const AlgebraElement& b) const {
  return is_zero_at_precision(sub(a, b));
}

std::string CyclicAlgebra::str(const AlgebraElement& a) const {
  std::ostringstream os;
  for (int i = 0; i < ell_; ++i) {
    if (i) os << " + ";
    os << a.c[static_cast<size_t>(i)].str() << "*x^" << i;
  }
  return os.str();
}

namespace {

UnramifiedElement det_rec(const UnramifiedField& W, std::vector<std::vector<UnramifiedElement>>& m,
                          std::vector<int>& cols, int row) {
  int n = static_cast<int>(m.size());
  if (row == n) return W.one();
  UnramifiedElement acc = W.zero();
  for (size_t ci = 0; ci < cols.size(); ++ci) {
    int col = cols[ci];
    if (col < 0) continue;
    cols[ci] = -1;
    UnramifiedElement minor = det_rec(W, m, cols, row + 1);
    cols[ci] = col;
    UnramifiedElement term = m[static_cast<size_t>(row)][static_cast<size_t>(col)] * minor;
    // sign by the number of surviving columns before this one
    int before = 0;
    for (size_t cj = 0; cj < ci; ++cj)
      if (cols[cj] >= 0) ++before;
    if (before % 2) term = -term;
    acc = acc + term;
  }
  return acc;
}

} // namespace

PadicScalar CyclicAlgebra::reduced_norm(const AlgebraElement& d) const {
  // right multiplication by d on the left W-module D with basis x^0..x^{l-1}:
  // (x^j) d = sum_i sigma^j(z_i) x^{j+i}, with x^l = p.
  std::vector<std::vector<UnramifiedElement>> m(
      static_cast<size_t>(ell_), std::vector<UnramifiedElement>(static_cast<size_t>(ell_), W_.zero()));
  PadicScalar gamma = PadicScalar::from_int(p_, p_, n_);
  for (int j = 0; j < ell_; ++j) {
    for (int i = 0; i < ell_; ++i) {
      UnramifiedElement entry = W_.frobenius_iter(d.c[static_cast<size_t>(i)], j);
      int k = i + j;
      if (k >= ell_) {
        k -= ell_;
        entry = entry * gamma;
      }
      m[static_cast<size_t>(k)][static_cast<size_t>(j)] = m[static_cast<size_t>(k)][static_cast<size_t>(j)] + entry;
    }
  }
  std::vector<int> cols(static_cast<size_t>(ell_));
  for (int i = 0; i < ell_; ++i) cols[static_cast<size_t>(i)] = i;
  UnramifiedElement det = det_rec(W_, m, cols, 0);
  for (int j = 1; j < ell_; ++j)
    if (det.coeffs()[static_cast<size_t>(j)].distinguishable_from_zero())
      throw std::runtime_error("reduced norm did not land in the base field");
  return det.coeffs()[0];
}

int64_t CyclicAlgebra::valuation(const AlgebraElement& d) const {
  int64_t v = PadicScalar::kInfinity;
  bool seen = false;
  for (int i = 0; i < ell_; ++i) {
    const auto& z = d.c[static_cast<size_t>(i)];
    if (z.is_zero_at_precision()) continue;
    seen = true;
    v = std::min(v, static_cast<int64_t>(ell_) * z.val() + i);
  }
  if (!seen) throw PrecisionError("valuation of element indistinguishable from 0");
  return v;
}

int64_t CyclicAlgebra::congruence_level(const AlgebraElement& g) const {
  if (valuation(g) != 0) throw std::domain_error("congruence_level: input must be a unit of the maximal order");
  AlgebraElement d = sub(g, one());
  if (is_zero_at_precision(d)) return level_cap();
  return valuation(d);
}

AlgebraElement CyclicAlgebra::sample_sl1n(int n, Rng& rng) const {
  if (n < 1) throw std::domain_error("sample_sl1n: n >= 1 required");
  AlgebraElement s = zero();
  for (int i = 0; i < ell_; ++i) {
    int64_t mv = (n - i + ell_ - 1) / ell_;
    if (mv < 0) mv = 0;
    s.c[static_cast<size_t>(i)] = W_.random_element(rng, mv);
  }
  AlgebraElement g = add(one(), s);
  PadicScalar nu = reduced_norm(g);
  PadicScalar target = nu.inv();
  UnramifiedElement w = W_.norm_correct(W_.one(), target);
  return mul(embed(w), g);
}

std::vector<AlgebraElement> CyclicAlgebra::delta_torus() const {
  std::vector<AlgebraElement> out;
  uint64_t q = pow_u64(p_, static_cast<unsigned>(ell_));
  for (uint64_t code = 1; code < q; ++code) {
    std::vector<uint32_t> r(static_cast<size_t>(ell_));
    uint64_t cdown = code;
    for (int i = 0; i < ell_; ++i) {
      r[static_cast<size_t>(i)] = static_cast<uint32_t>(cdown % p_);
      cdown /= p_;
    }
    UnramifiedElement w = W_.teichmuller(r);
    AlgebraElement el = embed(w);
    PadicScalar nu = reduced_norm(el);
    if ((nu - PadicScalar::one(p_, n_)).is_zero_at_precision()) out.push_back(el);
  }
  return out;
}

std::vector<PadicScalar> CyclicAlgebra::coords(const AlgebraElement& d) const {
  std::vector<PadicScalar> v;
  v.reserve(static_cast<size_t>(ell_) * ell_);
  for (int i = 0; i < ell_; ++i)
    for (int a = 0; a < ell_; ++a) v.push_back(d.c[static_cast<size_t>(i)].coeffs()[static_cast<size_t>(a)]);
  return v;
}

AlgebraElement CyclicAlgebra::from_coords(const std::vector<PadicScalar>& v) const {
  AlgebraElement d = zero();
  for (int i = 0; i < ell_; ++i) {
    std::vector<PadicScalar> c(static_cast<size_t>(ell_));
    for (int a = 0; a < ell_; ++a) c[static_cast<size_t>(a)] = v[static_cast<size_t>(i * ell_ + a)];
    d.c[static_cast<size_t>(i)] = UnramifiedElement(&W_, std::move(c));
  }
  return d;
}

std::vector<AlgebraElement> CyclicAlgebra::centralizer_basis(const AlgebraElement& d, PrecisionLog* log) const {
  int dim = ell_ * ell_;
  PadicMatrix m(dim, dim, PadicScalar::exact_zero(p_));
  for (int col = 0; col < dim; ++col) {
    std::vector<PadicScalar> b(static_cast<size_t>(dim), PadicScalar::exact_zero(p_));
    b[static_cast<size_t>(col)] = PadicScalar::one(p_, n_);
    AlgebraElement eb = from_coords(b);
    AlgebraElement comm = sub(mul(d, eb), mul(eb, d));
    auto cc = coords(comm);
    for (int row = 0; row < dim; ++row) m.at(row, col) = cc[static_cast<size_t>(row)];
  }
  auto ker = padic_kernel(std::move(m), floor(), log);
  std::vector<AlgebraElement> basis;
  basis.reserve(ker.size());
  for (auto& v : ker) basis.push_back(from_coords(v));
  return basis;
}

int CyclicAlgebra::centralizer_dimension(const AlgebraElement& d, PrecisionLog* log) const {
  int dim = static_cast<int>(centralizer_basis(d, log).size());
  if (dim != ell_ && dim != ell_ * ell_)
    throw PrecisionError("centralizer dimension ill-conditioned at precision: got " + std::to_string(dim));
  return dim;
}

CaCriteria ca_criteria(uint32_t p, uint32_t ell, int e) {
  if (!is_prime_u64(p) || !is_prime_u64(ell)) throw std::domain_error("p, ell must be prime");
  if (e < 1) throw std::domain_error("e >= 1 required");
  CaCriteria r;
  r.sl1_ca = !has_primitive_ell_root(p, e, ell);
  // SL_1^1 is pro-p: it meets the center only in p-power roots of unity, and
  // the unramified tower has p-th roots of unity only for p = 2.
  r.sl1_1_ca = (p != ell) || (p != 2);
  int num = e * static_cast<int>(ell);
  int den = static_cast<int>(p) - 1;
  r.sl1n_bound = (num + den - 1) / den;
  return r;
}

TransitivityReport transitivity_audit(const CyclicAlgebra& A, int level, int trials, uint64_t seed) {
  TransitivityReport rep;
  rep.p = A.prime();
  rep.ell = static_cast<uint32_t>(A.degree());
  rep.level = level;
  rep.trials = trials;
  rep.seed = seed;
  PrecisionLog log;
  Rng master(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = master.child(static_cast<uint64_t>(t));
    // family (i): two elements of one commutant commute
    AlgebraElement g = A.sample_sl1n(level, rng);
    if (A.is_zero_at_precision(A.sub(g, A.one()))) continue;
    auto basis = A.centralizer_basis(g, &log);
    if (basis.empty()) continue;
    auto pick = [&]() {
      AlgebraElement acc = A.zero();
      for (const auto& b : basis) {
        long long cscal = rng.range(-3, 3);
        if (cscal == 0) continue;
        acc = A.add(acc, A.mul(A.scalar(PadicScalar::from_int(A.prime(), cscal, A.precision())), b));
      }
      return acc;
    };
    AlgebraElement a = pick(), c = pick();
    if (!A.is_zero_at_precision(A.sub(A.mul(a, c), A.mul(c, a)))) ++rep.commutant_pair_violations;
    // family (ii): independent pair
    AlgebraElement h = A.sample_sl1n(level, rng);
    if (A.is_zero_at_precision(A.sub(A.mul(g, h), A.mul(h, g)))) ++rep.independent_commuting;
  }
  // explicit witness when the base field has nontrivial ell-th roots of unity
  CaCriteria crit = ca_criteria(A.prime(), static_cast<uint32_t>(A.degree()), 1);
  if (!crit.sl1_ca) {
    uint32_t p = A.prime();
    uint32_t ell = static_cast<uint32_t>(A.degree());
    // find a residue of multiplicative order ell in F_p^*
    uint32_t r0 = 0;
    for (uint32_t cand = 2; cand < p; ++cand) {
      uint64_t prod = 1;
      bool ord_ell = true;
      for (uint32_t k = 1; k < ell; ++k) {
        prod = (prod * cand) % p;
        if (prod == 1) {
          ord_ell = false;
          break;
        }
      }
      prod = (prod * cand) % p;
      if (ord_ell && prod == 1) {
        r0 = cand;
        break;
      }
    }
    if (r0 != 0) {
      const UnramifiedField& W = A.w_field();
      std::vector<uint32_t> res(static_cast<size_t>(A.degree()), 0);
      res[0] = r0;
      AlgebraElement omega = A.embed(W.teichmuller(res));
      Rng rng(seed ^ 0x5eedULL);
      for (int attempt = 0; attempt < 50; ++attempt) {
        AlgebraElement g = A.sample_sl1n(1, rng);
        AlgebraElement h = A.sample_sl1n(1, rng);
        bool cg = A.is_zero_at_precision(A.sub(A.mul(omega, g), A.mul(g, omega)));
        bool ch = A.is_zero_at_precision(A.sub(A.mul(omega, h), A.mul(h, omega)));
        bool gh = A.is_zero_at_precision(A.sub(A.mul(g, h), A.mul(h, g)));
        if (cg && ch && !gh) {
          NonCaWitness w;
          w.center_element = A.str(omega);
          w.g = A.str(g);
          w.h = A.str(h);
          rep.witness = w;
          break;
        }
      }
    }
  }
  rep.precision_flags = log.flags;
  return rep;
}

MalnormalityReport malnormality_audit(const CyclicAlgebra& A, int trials, uint64_t seed) {
  CaCriteria crit = ca_criteria(A.prime(), static_cast<uint32_t>(A.degree()), 1);
  if (!crit.sl1_ca)
    throw std::domain_error("malnormality_audit requires parameters with sl1_ca = true");
  MalnormalityReport rep;
  rep.p = A.prime();
  rep.ell = static_cast<uint32_t>(A.degree());
  rep.trials = trials;
  rep.seed = seed;
  int dim = A.degree() * A.degree();
  Rng master(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = master.child(static_cast<uint64_t>(t));
    PrecisionLog log;
    AlgebraElement g = A.sample_sl1n(1, rng);
    if (A.is_zero_at_precision(A.sub(g, A.one()))) {
      ++rep.rejected_trials; // central g
      continue;
    }
    std::vector<AlgebraElement> C;
    try {
      C = A.centralizer_basis(g, &log);
    } catch (const PrecisionError&) {
      ++rep.discarded_trials;
      continue;
    }
    if (static_cast<int>(C.size()) != A.degree()) {
      ++rep.rejected_trials; // central at precision
      continue;
    }
    AlgebraElement h = A.sample_sl1n(1, rng);
    // reject h in C: test rank([C | h])
    {
      PadicMatrix m(dim, static_cast<int>(C.size()) + 1, PadicScalar::exact_zero(A.prime()));
      for (size_t j = 0; j < C.size(); ++j) {
        auto cc = A.coords(C[j]);
        for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = cc[static_cast<size_t>(i)];
      }
      auto hc = A.coords(h);
      for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(C.size())) = hc[static_cast<size_t>(i)];
      if (padic_rank(std::move(m), A.floor(), &log) == static_cast<int>(C.size())) {
        ++rep.rejected_trials; // h in C
        continue;
      }
    }
    AlgebraElement hinv = A.inverse_principal(h);
    // stack C and h C h^{-1}, intersection dim = dim C + dim C' - rank
    PadicMatrix m(dim, 2 * static_cast<int>(C.size()), PadicScalar::exact_zero(A.prime()));
    for (size_t j = 0; j < C.size(); ++j) {
      auto cc = A.coords(C[j]);
      AlgebraElement conj = A.mul(A.mul(h, C[j]), hinv);
      auto cj = A.coords(conj);
      for (int i = 0; i < dim; ++i) {
        m.at(i, static_cast<int>(j)) = cc[static_cast<size_t>(i)];
        m.at(i, static_cast<int>(C.size() + j)) = cj[static_cast<size_t>(i)];
      }
    }
    int rank;
    try {
      rank = padic_rank(std::move(m), A.floor(), &log);
    } catch (const PrecisionError&) {
      ++rep.discarded_trials;
      continue;
    }
    int inter = 2 * static_cast<int>(C.size()) - rank;
    ++rep.valid_trials;
    rep.intersection_dims.push_back(inter);
    if (inter != 1) ++rep.violations;
    for (auto& fstr : log.flags) rep.precision_flags.push_back(fstr);
  }
  return rep;
}

int quaternion_commutant_rank(const Rat& beta, const Rat& gamma, const Rat& delta) {
  RatMatrix m(3, 3);
  // gamma z = delta y ; delta x = beta z ; gamma x = beta y  on (x, y, z)
  m.at(0, 1) = -delta;
  m.at(0, 2) = gamma;
  m.at(1, 0) = delta;
  m.at(1, 2) = -beta;
  m.at(2, 0) = gamma;
  m.at(2, 1) = -beta;
  return 3 - rat_rank(m);
}

} // namespace cakit
