#include "cakit/exact_field.hpp"

#include <sstream>
#include <stdexcept>

namespace cakit {

namespace {

// monic integer polynomial irreducibility over Q by root and factor search;
// enough for the desk degrees (<= 5) used by the cyclic models
bool int_poly_irreducible(const std::vector<Int>& f /* low coeffs, monic of degree f.size() */) {
  int deg = static_cast<int>(f.size());
  if (deg <= 1) return true;
  // rational root test: any rational root of a monic integer polynomial is an
  // integer dividing f_0
  auto eval = [&](const Int& x) {
    Int acc = 1;
    Int result = 0;
    std::vector<Int> pow(static_cast<size_t>(deg) + 1);
    pow[0] = 1;
    for (int i = 1; i <= deg; ++i) pow[static_cast<size_t>(i)] = pow[static_cast<size_t>(i - 1)] * x;
    result = pow[static_cast<size_t>(deg)];
    for (int i = 0; i < deg; ++i) result += f[static_cast<size_t>(i)] * pow[static_cast<size_t>(i)];
    (void)acc;
    return result;
  };
  Int f0 = f[0];
  if (f0 == 0) return false; // t divides
  for (Int d = 1; d * d <= boost::multiprecision::abs(f0); ++d) {
    if (f0 % d != 0) continue;
    Int q = f0 / d;
    std::vector<Int> cands = {d, Int(-d), q, Int(-q)};
    for (const Int& cand : cands)
      if (eval(cand) == 0) return false;
  }
  if (deg <= 3) return true;
  // quadratic factor search: monic t^2 + a t + b with b | f_0
  auto divides = [&](const Int& a, const Int& b) {
    // does t^2 + a t + b divide f? synthetic division
    std::vector<Int> r(f);
    r.push_back(1); // monic leading coefficient
    for (int k = deg; k >= 2; --k) {
      Int c = r[static_cast<size_t>(k)];
      if (c == 0) continue;
      r[static_cast<size_t>(k)] = 0;
      r[static_cast<size_t>(k - 1)] -= c * a;
      r[static_cast<size_t>(k - 2)] -= c * b;
    }
    return r[0] == 0 && r[1] == 0;
  };
  Int bound = 0;
  for (const auto& c : f) bound += boost::multiprecision::abs(c);
  bound += 1;
  for (Int b = 1; b <= boost::multiprecision::abs(f0); ++b) {
    if (f0 % b != 0) continue;
    std::vector<Int> bbs = {b, Int(-b)};
    for (const Int& bb : bbs) {
      for (Int a = -bound; a <= bound; ++a)
        if (divides(a, bb)) return false;
    }
  }
  return true;
}

} // namespace

bool rat_is_square(const Rat& q) {
  if (q < 0) return false;
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  Int sn = boost::multiprecision::sqrt(num);
  Int sd = boost::multiprecision::sqrt(den);
  return sn * sn == num && sd * sd == den;
}

NumberField::NumberField(std::vector<Rat> f, std::vector<Rat> sigma_image, int sigma_order)
    : n_(static_cast<int>(f.size())), f_(std::move(f)), sigma_t_(std::move(sigma_image)), sigma_order_(sigma_order) {
  if (n_ < 1) throw std::domain_error("degree must be >= 1");
  if (n_ > 1) {
    std::vector<Int> fi(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      if (boost::multiprecision::denominator(f_[static_cast<size_t>(i)]) != 1)
        throw std::domain_error("defining polynomial must have integer coefficients");
      fi[static_cast<size_t>(i)] = boost::multiprecision::numerator(f_[static_cast<size_t>(i)]);
    }
    if (!int_poly_irreducible(fi)) throw std::domain_error("defining polynomial is reducible over Q");
    if (static_cast<int>(sigma_t_.size()) != n_) throw std::domain_error("sigma image has wrong length");
  }
  // cache sigma on the power basis and verify the automorphism order
  sigma_pows_.resize(static_cast<size_t>(n_));
  Elem acc = one();
  for (int i = 0; i < n_; ++i) {
    sigma_pows_[static_cast<size_t>(i)] = acc;
    if (i + 1 < n_) {
      std::vector<Rat> prod(acc.size() + sigma_t_.size() - 1, Rat(0));
      for (size_t a = 0; a < acc.size(); ++a)
        for (size_t b = 0; b < sigma_t_.size(); ++b) prod[a + b] += acc[a] * sigma_t_[b];
      acc = reduce(std::move(prod));
    }
  }
  if (n_ > 1) {
    Elem t = gen();
    Elem cur = t;
    for (int i = 1; i <= sigma_order_; ++i) {
      cur = sigma(cur);
      bool back = eq(cur, t);
      if (i < sigma_order_ && back)
        throw std::domain_error("designated automorphism has smaller order than declared");
      if (i == sigma_order_ && !back)
        throw std::domain_error("designated automorphism does not have the declared order");
    }
  }
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  return std::make_shared<NumberField>(std::vector<Rat>{Rat(0)}, std::vector<Rat>{}, 1);
}

std::shared_ptr<const NumberField> NumberField::quadratic(const Rat& q) {
  if (rat_is_square(q)) throw std::domain_error("q must be a non-square");
  if (boost::multiprecision::denominator(q) != 1)
    throw std::domain_error("quadratic model expects an integer q");
  return std::make_shared<NumberField>(std::vector<Rat>{-q, Rat(0)}, std::vector<Rat>{Rat(0), Rat(-1)}, 2);
}

std::shared_ptr<const NumberField> NumberField::cyclic(int n) {
  switch (n) {
    case 1:
      return rationals();
    case 2:
      return std::make_shared<NumberField>(std::vector<Rat>{Rat(-2), Rat(0)}, std::vector<Rat>{Rat(0), Rat(-1)}, 2);
    case 3:
      // t^3 - 3t + 1; the roots are 2cos(2pi/9), 2cos(4pi/9), 2cos(8pi/9) and
      // t -> t^2 - 2 doubles the angle, permuting them cyclically
      return std::make_shared<NumberField>(std::vector<Rat>{Rat(1), Rat(-3), Rat(0)},
                                           std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}, 3);
    case 4:
      // fifth cyclotomic field, sigma(zeta) = zeta^2
      return std::make_shared<NumberField>(std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(1)},
                                           std::vector<Rat>{Rat(0), Rat(0), Rat(1), Rat(0)}, 4);
    default:
      throw std::domain_error("no built-in cyclic model of degree " + std::to_string(n));
  }
}

NumberField::Elem NumberField::one() const {
  Elem e = zero();
  e[0] = 1;
  return e;
}

NumberField::Elem NumberField::gen() const {
  Elem e = zero();
  if (n_ == 1) return e; // t == 0 in the degree-1 model
  e[1] = 1;
  return e;
}

NumberField::Elem NumberField::from_rat(const Rat& r) const {
  Elem e = zero();
  e[0] = r;
  return e;
}

NumberField::Elem NumberField::reduce(std::vector<Rat> c) const {
  for (int k = static_cast<int>(c.size()) - 1; k >= n_; --k) {
    Rat top = c[static_cast<size_t>(k)];
    if (top == 0) continue;
    c[static_cast<size_t>(k)] = 0;
    for (int j = 0; j < n_; ++j)
      c[static_cast<size_t>(k - n_ + j)] -= top * f_[static_cast<size_t>(j)];
  }
  c.resize(static_cast<size_t>(n_), Rat(0));
  return c;
}

NumberField::Elem NumberField::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (int i = 0; i < n_; ++i) r[static_cast<size_t>(i)] += b[static_cast<size_t>(i)];
  return r;
}

NumberField::Elem NumberField::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (int i = 0; i < n_; ++i) r[static_cast<size_t>(i)] -= b[static_cast<size_t>(i)];
  return r;
}

NumberField::Elem NumberField::neg(const Elem& a) const {
  Elem r = a;
  for (auto& x : r) x = -x;
  return r;
}

NumberField::Elem NumberField::mul(const Elem& a, const Elem& b) const {
  std::vector<Rat> c(static_cast<size_t>(2 * n_ - 1), Rat(0));
  for (int i = 0; i < n_; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (b[static_cast<size_t>(j)] == 0) continue;
      c[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
  }
  return reduce(std::move(c));
}

NumberField::Elem NumberField::mul_rat(const Elem& a, const Rat& r) const {
  Elem out = a;
  for (auto& x : out) x *= r;
  return out;
}

NumberField::Elem NumberField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (n_ == 1) {
    Elem r = zero();
    r[0] = Rat(1) / a[0];
    return r;
  }
  // solve mult_matrix(a) x = e_0 over Q
  RatMatrix m = mult_matrix(a);
  std::vector<Rat> b(static_cast<size_t>(n_), Rat(0));
  b[0] = 1;
  std::vector<Rat> x;
  if (!rat_solve(std::move(m), std::move(b), x))
    throw std::domain_error("inverse: element is a zero divisor (f reducible?)");
  return x;
}

bool NumberField::is_zero(const Elem& a) const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

bool NumberField::eq(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }

NumberField::Elem NumberField::sigma(const Elem& a) const {
  if (n_ == 1) return a;
  Elem r = zero();
  for (int i = 0; i < n_; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n_; ++j)
      r[static_cast<size_t>(j)] += a[static_cast<size_t>(i)] * sigma_pows_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return r;
}

NumberField::Elem NumberField::sigma_iter(const Elem& a, int i) const {
  Elem r = a;
  i = ((i % sigma_order_) + sigma_order_) % sigma_order_;
  for (int k = 0; k < i; ++k) r = sigma(r);
  return r;
}

Rat NumberField::trace(const Elem& a) const {
  if (sigma_order_ != n_)
    throw std::domain_error("trace requires a full cyclic model (sigma order == degree)");
  Elem acc = a;
  Elem cur = a;
  for (int i = 1; i < n_; ++i) {
    cur = sigma(cur);
    acc = add(acc, cur);
  }
  for (int j = 1; j < n_; ++j)
    if (acc[static_cast<size_t>(j)] != 0) throw std::runtime_error("trace did not land in Q");
  return acc[0];
}

RatMatrix NumberField::mult_matrix(const Elem& a) const {
  RatMatrix m(n_, n_);
  Elem col = a;
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) m.at(i, j) = col[static_cast<size_t>(i)];
    if (j + 1 < n_) {
      // multiply by t
      std::vector<Rat> c(static_cast<size_t>(n_) + 1, Rat(0));
      for (int i = 0; i < n_; ++i) c[static_cast<size_t>(i + 1)] = col[static_cast<size_t>(i)];
      col = reduce(std::move(c));
    }
  }
  return m;
}

std::string NumberField::str(const Elem& a) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    if (i) os << ", ";
    os << a[static_cast<size_t>(i)];
  }
  os << "]";
  return os.str();
}

} // namespace cakit
