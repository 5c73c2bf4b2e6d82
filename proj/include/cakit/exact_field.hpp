#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cakit/rational.hpp"

namespace cakit {

/// Q or a simple extension Q[t]/(f) with a designated automorphism of exact
/// order n, given by the image of t. Elements are coefficient vectors of
/// length degree().
class NumberField {
public:
  using Elem = std::vector<Rat>;

  static std::shared_ptr<const NumberField> rationals();
  /// t^2 - q with sigma(t) = -t; q must be a non-square rational.
  static std::shared_ptr<const NumberField> quadratic(const Rat& q);
  /// Cyclic model of degree n with an order-n automorphism:
  ///   n = 1: Q;  n = 2: t^2 - 2, sigma(t) = -t;
  ///   n = 3: t^3 - 3t - 1, sigma(t) = t^2 - 2;
  ///   n = 4: t^4 + t^3 + t^2 + t + 1, sigma(t) = t^2.
  static std::shared_ptr<const NumberField> cyclic(int n);

  /// General constructor; f monic with integer coefficients (f_0..f_{n-1}),
  /// checked irreducible over Q by root/factor search (degree <= 5).
  NumberField(std::vector<Rat> f, std::vector<Rat> sigma_image, int sigma_order);

  int degree() const { return n_; }
  int sigma_order() const { return sigma_order_; }
  const std::vector<Rat>& poly() const { return f_; }

  Elem zero() const { return Elem(static_cast<size_t>(n_), Rat(0)); }
  Elem one() const;
  Elem gen() const;
  Elem from_rat(const Rat& r) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem mul_rat(const Elem& a, const Rat& r) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const;

  Elem sigma(const Elem& a) const;
  Elem sigma_iter(const Elem& a, int i) const;

  /// Sum over the sigma-orbit; requires sigma_order == degree. Lands in Q.
  Rat trace(const Elem& a) const;

  /// Matrix of multiplication by a in the power basis (degree x degree over Q).
  RatMatrix mult_matrix(const Elem& a) const;

  std::string str(const Elem& a) const;

private:
  int n_;
  std::vector<Rat> f_;          // monic: low n_ coefficients
  std::vector<Rat> sigma_t_;    // image of t
  int sigma_order_;
  std::vector<Elem> sigma_pows_; // sigma(t^i) for i < n

  Elem reduce(std::vector<Rat> c) const;
};

bool rat_is_square(const Rat& q);

} // namespace cakit
