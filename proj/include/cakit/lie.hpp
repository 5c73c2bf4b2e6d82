#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cakit/exact_field.hpp"
#include "cakit/rng.hpp"

namespace cakit {

/// Coordinate vector over the base field of an algebra.
using LieVec = std::vector<NumberField::Elem>;

/// Finite-dimensional Lie algebra over an exact field, given by structure
/// constants c_{ij}^k. Antisymmetry is enforced at construction; the Jacobi
/// identity is checked exhaustively on demand.
class StructureLieAlgebra {
public:
  StructureLieAlgebra(std::shared_ptr<const NumberField> base, int dim, std::string name = "");

  const NumberField& field() const { return *base_; }
  std::shared_ptr<const NumberField> field_ptr() const { return base_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  /// Sets [e_i, e_j] = value and [e_j, e_i] = -value.
  void set_bracket(int i, int j, const LieVec& value);
  const NumberField::Elem& c(int i, int j, int k) const;

  LieVec zero_vec() const;
  LieVec basis_vec(int i) const;
  LieVec add(const LieVec& a, const LieVec& b) const;
  LieVec sub(const LieVec& a, const LieVec& b) const;
  LieVec scale(const LieVec& a, const NumberField::Elem& s) const;
  bool vec_is_zero(const LieVec& a) const;
  bool vec_eq(const LieVec& a, const LieVec& b) const;

  LieVec bracket(const LieVec& x, const LieVec& y) const;

  bool antisymmetry_check() const;
  bool jacobi_check() const;

  /// Exact basis of ker(ad x).
  std::vector<LieVec> centralizer_basis(const LieVec& x) const;

private:
  std::shared_ptr<const NumberField> base_;
  int dim_;
  std::string name_;
  std::vector<NumberField::Elem> c_; // c[(i*dim + j)*dim + k]
};

struct CaWitness {
  LieVec x, y, z; // [x,y] = 0 = [y,z], [x,z] != 0; y is the probed element
};

struct CaAuditReport {
  int trials = 0;
  uint64_t seed = 0;
  bool witness_found = false;
  CaWitness witness;
  int candidates_probed = 0;
};

/// Randomized CA audit: probe the basis vectors first, then seeded random
/// elements; for each probe y compute ker(ad y) and bracket all pairs of its
/// basis. A violating triple is returned as an exact witness. Absence of a
/// witness is evidence, not proof.
CaAuditReport ca_audit(const StructureLieAlgebra& L, int trials, uint64_t seed);

/// Action of an abelian k^m on k^n by pairwise commuting matrices.
struct LinearAction {
  std::shared_ptr<const NumberField> base;
  int source_dim = 0;
  int target_dim = 0;
  std::vector<std::vector<std::vector<NumberField::Elem>>> mats; // mats[i][r][c]
  bool field_certificate = false; // built from a field acting on itself
};

/// K acting on itself by multiplication, restricted to the first m basis
/// elements, as matrices over Q. Fixed-point-freeness is certified.
LinearAction field_mult_action(const std::shared_ptr<const NumberField>& K, int m = -1);

enum class FpfMode { Certificate, Randomized };

struct FpfVerdict {
  bool fixed_point_free = false;
  bool proven = false;
  std::vector<NumberField::Elem> witness_combo; // singular combination, when found
  LieVec witness_kernel;                        // the fixed vector
};

FpfVerdict fixed_point_free_check(const LinearAction& a, FpfMode mode, int trials = 50, uint64_t seed = 1);

/// Semidirect product k^m x k^n with [c, v] = alpha(c) v. Source must act by
/// pairwise commuting matrices.
StructureLieAlgebra build_metabelian(const LinearAction& a);

StructureLieAlgebra make_abelian(std::shared_ptr<const NumberField> base, int n);
StructureLieAlgebra make_sl2();

/// Pure quaternions of Q(a,b) with basis u, v, uv.
StructureLieAlgebra build_pure_quaternions(const Rat& a, const Rat& b);

struct QuasiSplitSl3 {
  StructureLieAlgebra L;
  int witness_x, witness_y, witness_z; // basis indices; y is the middle element
};

/// The 8-dimensional quasi-split form over Q inside 3x3 matrices over
/// Q(sqrt q), together with the non-CA witness triple.
QuasiSplitSl3 build_quasi_split_sl3(const Rat& q);

/// Derived algebra of the cyclic algebra (W/Q, sigma, gamma=2) of degree n,
/// as a structure-constant algebra over Q of dimension n^2 - 1. The grade-0
/// part W_0 is the trace-zero hyperplane of W; for composite n its basis is
/// adapted to the fixed field of sigma^{i0} so that the classification
/// witness appears among the basis vectors.
struct DerivedCyclicAlgebra {
  StructureLieAlgebra L;
  std::shared_ptr<const NumberField> W;
  int n = 0;
  Rat gamma;
  std::vector<std::vector<Rat>> w0_basis; // coordinates in the power basis of W
  // witness data for composite n: (a, b, b x^{i0})
  bool has_witness = false;
  int witness_a_idx = -1, witness_b_idx = -1, i0 = 0;

  /// The vectors (a, b, b x^{i0}) of the classification witness; requires
  /// has_witness.
  std::vector<LieVec> witness_triple() const;

  /// Multiplication in the ambient cyclic algebra D: elements are x-graded
  /// coefficient vectors (grade i holds the W-coefficient of x^i).
  std::vector<NumberField::Elem> d_mul(const std::vector<NumberField::Elem>& a,
                                       const std::vector<NumberField::Elem>& b) const;
  std::vector<NumberField::Elem> d_bracket(const std::vector<NumberField::Elem>& a,
                                           const std::vector<NumberField::Elem>& b) const;
};

DerivedCyclicAlgebra build_derived_cyclic(int n);

/// Verifies [z, z' x^i] = (z - sigma^i(z)) z' x^i exactly in the ambient
/// algebra of the derived-cyclic construction.
bool star_formula_check(const DerivedCyclicAlgebra& dc, const NumberField::Elem& z,
                        const NumberField::Elem& zp, int i);

struct NonIdealError : std::domain_error {
  int basis_index, ideal_index;
  NonIdealError(int bi, int ii)
      : std::domain_error("span is not an ideal: [e_" + std::to_string(bi) + ", u_" + std::to_string(ii) +
                          "] leaves the span"),
        basis_index(bi), ideal_index(ii) {}
};

/// Quotient by the span of the given vectors; throws NonIdealError when the
/// span is not an ideal.
StructureLieAlgebra quotient_by_ideal(const StructureLieAlgebra& L, const std::vector<LieVec>& ideal_gens);

// ---- truncated BCH group law on p Lambda ----

/// Group law u * v = BCH(u, v) truncated at the degree where all further
/// terms are guaranteed to vanish at the working precision. Constants of the
/// algebra must be p-integral; elements are coordinate vectors mod p^prec
/// with all coordinates divisible by p.
class BchContext {
public:
  BchContext(const StructureLieAlgebra& L, uint32_t p, int prec);

  uint32_t prime() const { return p_; }
  int precision() const { return prec_; }
  int truncation_degree() const { return degree_; }
  int dim() const { return dim_; }
  uint64_t modulus() const { return mod_prec_; }

  std::vector<uint64_t> reduce(const std::vector<long long>& coords) const;
  std::vector<uint64_t> zero() const { return std::vector<uint64_t>(static_cast<size_t>(dim_), 0); }
  std::vector<uint64_t> neg(const std::vector<uint64_t>& u) const;
  bool is_zero(const std::vector<uint64_t>& u) const;
  bool eq(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const;

  std::vector<uint64_t> lie_bracket(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const;
  std::vector<uint64_t> bch(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const;
  std::vector<uint64_t> group_commutator(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const;

  /// Random element of p*Lambda mod p^prec.
  std::vector<uint64_t> random_element(Rng& rng) const;

private:
  uint32_t p_;
  int prec_;
  int dim_;
  int degree_;
  int numax_;
  int kwork_;
  uint64_t mod_prec_;
  uint64_t mod_work_;
  std::vector<uint64_t> sc_; // structure constants mod p^kwork, sign-folded
  struct Term {
    uint8_t len;
    uint32_t bits;
    uint64_t factor; // unit part of the coefficient mod p^kwork
    int nu;          // p-valuation of the denominator
  };
  std::vector<Term> terms_;

  std::vector<uint64_t> bracket_work(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const;
};

struct CommutationAuditReport {
  int trials = 0;
  uint64_t seed = 0;
  int mismatches = 0;
  int commuting_pairs = 0;
};

/// Checks that the BCH group commutator vanishes at precision exactly when
/// the Lie bracket does, on random pairs (every fifth pair colinear).
CommutationAuditReport group_lie_commutation_audit(const BchContext& ctx, int trials, uint64_t seed);

/// Exact BCH word coefficients up to the given degree; exposed for oracle
/// tests. Returns pairs (length, bits) -> coefficient for the right-nested
/// bracketing, bit i = letter at position i (0 = first argument).
const std::vector<std::vector<std::pair<uint32_t, Rat>>>& bch_word_coefficients(int degree);

} // namespace cakit
