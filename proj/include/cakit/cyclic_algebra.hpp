#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cakit/padic.hpp"
#include "cakit/rational.hpp"
#include "cakit/rng.hpp"

namespace cakit {

class CyclicAlgebra;

/// Element of D = W + W x + ... + W x^{l-1}; coeffs[i] is the x^i coefficient.
struct AlgebraElement {
  const CyclicAlgebra* A = nullptr;
  std::vector<UnramifiedElement> c;
};

/// Cyclic division algebra of prime degree l over Q_p with x^l = p and
/// x z = sigma(z) x for z in the unramified degree-l extension W.
class CyclicAlgebra {
public:
  CyclicAlgebra(uint32_t p, int ell, int precision);

  uint32_t prime() const { return p_; }
  int degree() const { return ell_; }
  int precision() const { return n_; }
  const UnramifiedField& w_field() const { return W_; }
  /// zero-decision floor used by all rank computations (valuation >= floor)
  int64_t floor() const { return n_ - 2; }

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement x() const;
  AlgebraElement embed(const UnramifiedElement& z, int i = 0) const;
  AlgebraElement scalar(const PadicScalar& s) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement neg(const AlgebraElement& a) const;
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  /// Inverse of a unit congruent to 1 mod the maximal ideal (geometric series).
  AlgebraElement inverse_principal(const AlgebraElement& g) const;
  AlgebraElement pow(const AlgebraElement& a, uint64_t k) const;

  bool is_zero_at_precision(const AlgebraElement& a) const;
  bool eq_at_precision(const AlgebraElement& a, const AlgebraElement& b) const;
  std::string str(const AlgebraElement& a) const;

  /// Reduced norm as the determinant of the right regular representation over
  /// W; lands in the base field.
  PadicScalar reduced_norm(const AlgebraElement& d) const;

  /// The valuation with w(x) = 1, w(p) = l: min_i (l*val_W(z_i) + i).
  int64_t valuation(const AlgebraElement& d) const;

  /// Largest n with w(g - 1) >= n, capped at l*precision for g == 1.
  int64_t congruence_level(const AlgebraElement& g) const;
  int64_t level_cap() const { return static_cast<int64_t>(ell_) * n_; }

  /// Element of SL_1^n(D): 1 + (random of valuation >= n), norm-corrected.
  AlgebraElement sample_sl1n(int n, Rng& rng) const;

  /// All Teichmueller lifts of reduced norm 1; order (p^l - 1)/(p - 1).
  std::vector<AlgebraElement> delta_torus() const;

  /// Q_p-dimension of the commutant {y : dy = yd}; l for noncentral d,
  /// l^2 for central d. Throws PrecisionError when the rank decision is
  /// ill-conditioned at the precision floor.
  int centralizer_dimension(const AlgebraElement& d, PrecisionLog* log = nullptr) const;
  std::vector<AlgebraElement> centralizer_basis(const AlgebraElement& d, PrecisionLog* log = nullptr) const;

  std::vector<PadicScalar> coords(const AlgebraElement& d) const;
  AlgebraElement from_coords(const std::vector<PadicScalar>& v) const;

private:
  uint32_t p_;
  int ell_;
  int n_;
  UnramifiedField W_;
};

/// Verdicts of the three items of the congruence-subgroup CA criterion for a
/// division algebra of degree ell over the unramified extension of Q_p of
/// degree e (the bound uses e as ramification index in the formula
/// ceil(e*ell/(p-1))).
struct CaCriteria {
  bool sl1_ca;
  bool sl1_1_ca;
  int sl1n_bound;
};

CaCriteria ca_criteria(uint32_t p, uint32_t ell, int e);

struct NonCaWitness {
  std::string center_element; // the central root of unity
  std::string g, h;           // noncommuting pair, both commuting with the center
};

struct TransitivityReport {
  uint32_t p = 0, ell = 0;
  int level = 1;
  int trials = 0;
  uint64_t seed = 0;
  int commutant_pair_violations = 0; // family (i)
  int independent_commuting = 0;     // family (ii) count of commuting pairs
  std::optional<NonCaWitness> witness;
  std::vector<std::string> precision_flags;
};

/// Family (i): pairs drawn from one commutant must commute. Family (ii):
/// independent pairs essentially never commute. When the base field contains
/// nontrivial ell-th roots of unity an explicit non-CA triple is exhibited.
TransitivityReport transitivity_audit(const CyclicAlgebra& A, int level, int trials, uint64_t seed);

struct MalnormalityReport {
  uint32_t p = 0, ell = 0;
  int trials = 0;
  uint64_t seed = 0;
  int valid_trials = 0;
  int rejected_trials = 0;   // h landed in C, or g central
  int discarded_trials = 0;  // ill-conditioned rank decision
  int violations = 0;        // intersection dimension > 1
  std::vector<int> intersection_dims;
  std::vector<std::string> precision_flags;
};

/// Checks that the commutant field of g and its conjugate by an outside h
/// intersect only in the center (dimension 1 over Q_p).
MalnormalityReport malnormality_audit(const CyclicAlgebra& A, int trials, uint64_t seed);

/// Rank of the solution space in (x,y,z) of the quaternion commutation system
/// gamma*z = delta*y, delta*x = beta*z, gamma*x = beta*y over Q.
int quaternion_commutant_rank(const Rat& beta, const Rat& gamma, const Rat& delta);

} // namespace cakit
