#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cakit/rng.hpp"

namespace cakit {

class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NormCorrectionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Collects the rank/zero decisions that were made at the precision floor
/// instead of at exact valuation zero. Audits attach these to their reports.
struct PrecisionLog {
  std::vector<std::string> flags;
  void note(const std::string& s) { flags.push_back(s); }
};

uint64_t pow_u64(uint64_t base, unsigned exp);
bool is_prime_u64(uint64_t n);

/// Truncated element of Q_p: value = unit * p^val + O(p^(val+rel)).
/// rel == 0 encodes an inexact zero O(p^val); exact zero is a separate state.
/// Arithmetic never claims more digits than the inputs guarantee.
class PadicScalar {
public:
  PadicScalar() : p_(2), val_(0), unit_(0), rel_(0), exact_zero_(true) {}

  static PadicScalar exact_zero(uint32_t p);
  static PadicScalar inexact_zero(uint32_t p, int64_t abs_prec);
  static PadicScalar from_int(uint32_t p, long long value, int rel_prec);
  /// unit must be coprime to p; rel_prec >= 1.
  static PadicScalar from_unit(uint32_t p, int64_t val, uint64_t unit, int rel_prec);
  static PadicScalar one(uint32_t p, int rel_prec) { return from_int(p, 1, rel_prec); }

  uint32_t prime() const { return p_; }
  bool is_exact_zero() const { return exact_zero_; }
  /// True when the element cannot be told apart from 0 at its precision.
  bool is_zero_at_precision() const { return exact_zero_ || rel_ == 0; }
  bool distinguishable_from_zero() const { return !is_zero_at_precision(); }
  /// Valuation; for an inexact zero this is the guaranteed lower bound.
  int64_t val() const;
  int rel_prec() const { return rel_; }
  int64_t abs_prec() const; // val + rel; "infinite" for the exact zero
  uint64_t unit() const { return unit_; }

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator-() const;
  PadicScalar inv() const;
  PadicScalar operator/(const PadicScalar& o) const { return *this * o.inv(); }

  /// Truncate to absolute precision <= a.
  PadicScalar truncated(int64_t abs) const;
  bool eq_at_precision(const PadicScalar& o) const { return (*this - o).is_zero_at_precision(); }

  /// Residue in F_p (0 if val > 0). Requires val >= 0.
  uint32_t residue_mod_p() const;
  /// Integer representative of the value modulo p^m. Requires val >= 0 and
  /// abs_prec >= m.
  uint64_t rep_mod(int m) const;

  std::string str() const;

  static const int64_t kInfinity = std::numeric_limits<int64_t>::max() / 4;

private:
  uint32_t p_;
  int64_t val_;
  uint64_t unit_;
  int rel_;
  bool exact_zero_;

  void canonicalize();
};

/// Largest r with p^r below the 62-bit headroom used by scalar arithmetic.
int max_rel_digits(uint32_t p);

class UnramifiedField;

/// Element of the unramified extension W of degree e, stored as a polynomial
/// representative of degree < e with PadicScalar coefficients.
class UnramifiedElement {
public:
  UnramifiedElement() : field_(nullptr) {}
  UnramifiedElement(const UnramifiedField* f, std::vector<PadicScalar> c)
      : field_(f), coeffs_(std::move(c)) {}

  const UnramifiedField& field() const { return *field_; }
  const std::vector<PadicScalar>& coeffs() const { return coeffs_; }
  PadicScalar coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }

  UnramifiedElement operator+(const UnramifiedElement& o) const;
  UnramifiedElement operator-(const UnramifiedElement& o) const;
  UnramifiedElement operator*(const UnramifiedElement& o) const;
  UnramifiedElement operator-() const;
  UnramifiedElement operator*(const PadicScalar& s) const;
  UnramifiedElement inverse() const;
  UnramifiedElement pow(uint64_t n) const;

  /// min over coefficient valuations; valid for the unramified integral basis.
  int64_t val() const;
  bool is_zero_at_precision() const;
  bool eq_at_precision(const UnramifiedElement& o) const;

  std::string str() const;

private:
  const UnramifiedField* field_;
  std::vector<PadicScalar> coeffs_;
};

/// The unramified extension of Q_p of degree e given by a monic integral
/// polynomial f that is irreducible mod p. Frobenius is the unique
/// automorphism congruent to x -> x^p on the residue field.
class UnramifiedField {
public:
  /// If f_coeffs is empty a Conway-style defining polynomial is found by
  /// search (lexicographically least monic f with t primitive mod p).
  UnramifiedField(uint32_t p, int e, int precision, std::vector<int64_t> f_coeffs = {});

  uint32_t prime() const { return p_; }
  int degree() const { return e_; }
  int precision() const { return n_; }
  const std::vector<int64_t>& poly() const { return f_; } // f_0..f_{e-1}, monic

  UnramifiedElement zero() const;
  UnramifiedElement one() const;
  UnramifiedElement gen() const; // the class of t
  UnramifiedElement from_ints(const std::vector<long long>& c) const;
  UnramifiedElement from_scalar(const PadicScalar& s) const;
  UnramifiedElement from_residue(const std::vector<uint32_t>& r) const;

  UnramifiedElement frobenius(const UnramifiedElement& z) const;
  UnramifiedElement frobenius_iter(const UnramifiedElement& z, int i) const;
  PadicScalar norm_to_base(const UnramifiedElement& z) const;
  PadicScalar trace_to_base(const UnramifiedElement& z) const;

  /// Teichmueller lift of a nonzero residue r in F_{p^e}.
  UnramifiedElement teichmuller(const std::vector<uint32_t>& r) const;

  /// w == 1 (mod p) with norm_to_base(w) = t, found by Newton iteration on the
  /// norm map starting at u. Requires u == 1 (mod p), t == 1 (mod p), p != e mod p issues:
  /// fails with NormCorrectionError when p divides the degree.
  UnramifiedElement norm_correct(const UnramifiedElement& u, const PadicScalar& t) const;

  UnramifiedElement random_element(Rng& rng, int64_t min_val = 0) const;
  UnramifiedElement random_unit(Rng& rng) const;
  UnramifiedElement random_principal_unit(Rng& rng) const;

  // residue-field helpers (coefficient vectors over F_p of length e)
  std::vector<uint32_t> res_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) const;
  std::vector<uint32_t> res_inv(const std::vector<uint32_t>& a) const;
  std::vector<uint32_t> residue_of(const UnramifiedElement& z) const;

private:
  uint32_t p_;
  int e_;
  int n_;
  std::vector<int64_t> f_;
  std::vector<std::vector<PadicScalar>> frob_matrix_; // column i = coords of sigma(t)^i? no: sigma(t^i)

  void build_frobenius();
  UnramifiedElement reduce_poly(std::vector<PadicScalar> c) const;
  friend class UnramifiedElement;
};

/// True iff the unramified extension of Q_p of degree e contains a primitive
/// ell-th root of unity.
bool has_primitive_ell_root(uint32_t p, int e, uint32_t ell);

// --- dense linear algebra over Q_p at working precision ---

struct PadicMatrix {
  int rows = 0, cols = 0;
  std::vector<PadicScalar> a;
  PadicMatrix() = default;
  PadicMatrix(int r, int c, const PadicScalar& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}
  PadicScalar& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const PadicScalar& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

/// Row reduction with min-valuation pivoting. Entries whose valuation is at or
/// above `floor` are treated as zero and each such decision is logged.
int padic_rank(PadicMatrix m, int64_t floor, PrecisionLog* log);
std::vector<std::vector<PadicScalar>> padic_kernel(PadicMatrix m, int64_t floor, PrecisionLog* log);

} // namespace cakit
