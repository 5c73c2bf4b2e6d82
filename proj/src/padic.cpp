#include "cakit/padic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cakit {

uint64_t pow_u64(uint64_t base, unsigned exp) {
  uint64_t r = 1;
  while (exp) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int max_rel_digits(uint32_t p) {
  int r = 0;
  uint64_t v = 1;
  const uint64_t cap = 1ULL << 62;
  while (v < cap / p) {
    v *= p;
    ++r;
  }
  return r;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// inverse of a mod m for gcd(a,m)=1
uint64_t invmod(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

} // namespace

// ---------------- PadicScalar ----------------

PadicScalar PadicScalar::exact_zero(uint32_t p) {
  PadicScalar s;
  s.p_ = p;
  s.exact_zero_ = true;
  return s;
}

PadicScalar PadicScalar::inexact_zero(uint32_t p, int64_t abs_prec) {
  PadicScalar s;
  s.p_ = p;
  s.exact_zero_ = false;
  s.val_ = abs_prec;
  s.unit_ = 0;
  s.rel_ = 0;
  return s;
}

PadicScalar PadicScalar::from_int(uint32_t p, long long value, int rel_prec) {
  if (rel_prec < 1 || rel_prec > max_rel_digits(p))
    throw std::domain_error("from_int: bad precision");
  if (value == 0) return exact_zero(p);
  PadicScalar s;
  s.p_ = p;
  s.exact_zero_ = false;
  bool neg = value < 0;
  uint64_t v = neg ? static_cast<uint64_t>(-value) : static_cast<uint64_t>(value);
  int64_t w = 0;
  while (v % p == 0) {
    v /= p;
    ++w;
  }
  uint64_t m = pow_u64(p, static_cast<unsigned>(rel_prec));
  v %= m;
  if (neg && v != 0) v = m - v;
  s.val_ = w;
  s.unit_ = v;
  s.rel_ = rel_prec;
  s.canonicalize();
  return s;
}

PadicScalar PadicScalar::from_unit(uint32_t p, int64_t val, uint64_t unit, int rel_prec) {
  if (rel_prec < 1) throw std::domain_error("from_unit: rel_prec < 1");
  if (unit % p == 0) throw std::domain_error("from_unit: unit divisible by p");
  PadicScalar s;
  s.p_ = p;
  s.exact_zero_ = false;
  s.val_ = val;
  s.unit_ = unit % pow_u64(p, static_cast<unsigned>(rel_prec));
  s.rel_ = rel_prec;
  return s;
}

void PadicScalar::canonicalize() {
  if (exact_zero_) return;
  if (rel_ <= 0) {
    rel_ = 0;
    unit_ = 0;
    return;
  }
  uint64_t m = pow_u64(p_, static_cast<unsigned>(rel_));
  unit_ %= m;
  if (unit_ == 0) {
    // all known digits vanished: inexact zero at the old absolute precision
    val_ += rel_;
    rel_ = 0;
    return;
  }
  int shift = 0;
  while (unit_ % p_ == 0) {
    unit_ /= p_;
    ++shift;
  }
  if (shift) {
    val_ += shift;
    rel_ -= shift;
  }
}

int64_t PadicScalar::val() const {
  if (exact_zero_) return kInfinity;
  return val_;
}

int64_t PadicScalar::abs_prec() const {
  if (exact_zero_) return kInfinity;
  return val_ + rel_;
}

PadicScalar PadicScalar::truncated(int64_t abs) const {
  if (exact_zero_) {
    return inexact_zero(p_, abs);
  }
  if (abs >= abs_prec()) return *this;
  PadicScalar s = *this;
  s.rel_ = static_cast<int>(std::max<int64_t>(0, abs - val_));
  if (s.rel_ == 0) {
    s.val_ = abs; // O(p^abs)
    s.unit_ = 0;
  } else {
    s.unit_ %= pow_u64(p_, static_cast<unsigned>(s.rel_));
  }
  s.canonicalize();
  return s;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  if (p_ != o.p_) throw std::domain_error("scalar prime mismatch");
  if (exact_zero_) return o;
  if (o.exact_zero_) return *this;
  int64_t A = std::min(abs_prec(), o.abs_prec());
  int64_t vmin = std::min(val_, o.val_);
  if (A <= vmin) return inexact_zero(p_, A);
  int m = static_cast<int>(A - vmin);
  if (m > max_rel_digits(p_)) {
    // clamp representable window; drop guaranteed-high digits
    vmin = A - max_rel_digits(p_);
    m = max_rel_digits(p_);
  }
  uint64_t mod = pow_u64(p_, static_cast<unsigned>(m));
  uint64_t s = 0;
  auto contrib = [&](const PadicScalar& x) {
    if (x.rel_ == 0) return; // inexact zero adds nothing below its abs prec
    if (x.val_ >= A) return;
    int sh = static_cast<int>(x.val_ - vmin);
    uint64_t u = x.unit_ % pow_u64(p_, static_cast<unsigned>(std::min<int64_t>(x.rel_, A - x.val_)));
    s = (s + mulmod(u, pow_u64(p_, static_cast<unsigned>(sh)), mod)) % mod;
  };
  contrib(*this);
  contrib(o);
  if (s == 0) return inexact_zero(p_, A);
  PadicScalar r;
  r.p_ = p_;
  r.exact_zero_ = false;
  r.val_ = vmin;
  r.unit_ = s;
  r.rel_ = m;
  r.canonicalize();
  return r;
}

PadicScalar PadicScalar::operator-() const {
  if (exact_zero_ || rel_ == 0) return *this;
  PadicScalar r = *this;
  uint64_t m = pow_u64(p_, static_cast<unsigned>(rel_));
  r.unit_ = (m - unit_) % m;
  r.canonicalize();
  return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  if (p_ != o.p_) throw std::domain_error("scalar prime mismatch");
  if (exact_zero_ || o.exact_zero_) return exact_zero(p_);
  PadicScalar r;
  r.p_ = p_;
  r.exact_zero_ = false;
  r.val_ = val_ + o.val_;
  r.rel_ = std::min(rel_, o.rel_);
  if (r.rel_ == 0) {
    r.unit_ = 0;
    return r;
  }
  uint64_t m = pow_u64(p_, static_cast<unsigned>(r.rel_));
  r.unit_ = mulmod(unit_ % m, o.unit_ % m, m);
  r.canonicalize();
  return r;
}

PadicScalar PadicScalar::inv() const {
  if (is_zero_at_precision())
    throw PrecisionError("precision-zero divisor: inverting an element indistinguishable from 0");
  PadicScalar r;
  r.p_ = p_;
  r.exact_zero_ = false;
  r.val_ = -val_;
  r.rel_ = rel_;
  uint64_t m = pow_u64(p_, static_cast<unsigned>(rel_));
  r.unit_ = invmod(unit_, m);
  return r;
}

uint32_t PadicScalar::residue_mod_p() const {
  if (is_zero_at_precision()) return 0;
  if (val_ < 0) throw std::domain_error("residue of non-integral element");
  if (val_ > 0) return 0;
  return static_cast<uint32_t>(unit_ % p_);
}

uint64_t PadicScalar::rep_mod(int m) const {
  uint64_t mod = pow_u64(p_, static_cast<unsigned>(m));
  if (exact_zero_) return 0;
  if (val_ < 0) throw std::domain_error("rep_mod of non-integral element");
  if (abs_prec() < m) throw PrecisionError("rep_mod: insufficient precision");
  if (val_ >= m) return 0;
  return mulmod(unit_ % mod, pow_u64(p_, static_cast<unsigned>(val_)), mod);
}

std::string PadicScalar::str() const {
  std::ostringstream os;
  if (exact_zero_) {
    os << "0";
  } else if (rel_ == 0) {
    os << "O(" << p_ << "^" << val_ << ")";
  } else {
    os << unit_ << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << abs_prec() << ")";
  }
  return os.str();
}

// ---------------- residue-field polynomial helpers ----------------

namespace {

// polynomials over F_p as coefficient vectors, lowest degree first
std::vector<uint32_t> fp_trim(std::vector<uint32_t> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<uint32_t> fp_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<uint32_t>((c[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
  return fp_trim(std::move(c));
}

// remainder of a modulo monic-ish b (b need not be monic; uses inverse of lead)
std::vector<uint32_t> fp_mod(std::vector<uint32_t> a, const std::vector<uint32_t>& b, uint32_t p) {
  a = fp_trim(std::move(a));
  auto bb = fp_trim(b);
  if (bb.empty()) throw std::domain_error("fp_mod by zero");
  uint32_t linv = static_cast<uint32_t>(invmod(bb.back(), p));
  while (a.size() >= bb.size()) {
    uint32_t c = static_cast<uint32_t>((static_cast<uint64_t>(a.back()) * linv) % p);
    size_t off = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); ++i)
      a[off + i] = static_cast<uint32_t>((a[off + i] + static_cast<uint64_t>(p - 1) * c % p * bb[i]) % p);
    a = fp_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

// extended gcd: returns g and u with u*a == g (mod m), g constant when coprime
void fp_ext_gcd(std::vector<uint32_t> a, std::vector<uint32_t> m, uint32_t p,
                std::vector<uint32_t>& g, std::vector<uint32_t>& u) {
  std::vector<uint32_t> r0 = fp_trim(std::move(m)), r1 = fp_trim(std::move(a));
  std::vector<uint32_t> s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // division step: r0 = q*r1 + r2
    std::vector<uint32_t> q;
    std::vector<uint32_t> r = r0;
    uint32_t linv = static_cast<uint32_t>(invmod(r1.back(), p));
    q.assign(r.size() > r1.size() ? r.size() - r1.size() + 1 : 1, 0);
    while (r.size() >= r1.size() && !r.empty()) {
      uint32_t c = static_cast<uint32_t>((static_cast<uint64_t>(r.back()) * linv) % p);
      size_t off = r.size() - r1.size();
      q[off] = c;
      for (size_t i = 0; i < r1.size(); ++i)
        r[off + i] = static_cast<uint32_t>((r[off + i] + static_cast<uint64_t>(p - c % p) % p * r1[i]) % p);
      r = fp_trim(std::move(r));
      if (r.empty()) break;
    }
    q = fp_trim(std::move(q));
    // (r0, r1) <- (r1, r); (s0, s1) <- (s1, s0 - q*s1)
    std::vector<uint32_t> qs = fp_mul(q, s1, p);
    std::vector<uint32_t> s2(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s2.size(); ++i) {
      uint32_t x = i < s0.size() ? s0[i] : 0;
      uint32_t y = i < qs.size() ? qs[i] : 0;
      s2[i] = static_cast<uint32_t>((x + p - y) % p);
    }
    s0 = std::move(s1);
    s1 = fp_trim(std::move(s2));
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  g = std::move(r0);
  u = std::move(s0);
}

bool fp_is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  // brute-force trial division by all monic polynomials of degree <= deg/2
  auto ff = fp_trim(f);
  int deg = static_cast<int>(ff.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  for (int d = 1; 2 * d <= deg; ++d) {
    uint64_t count = pow_u64(p, static_cast<unsigned>(d));
    for (uint64_t code = 0; code < count; ++code) {
      std::vector<uint32_t> g(static_cast<size_t>(d) + 1, 0);
      uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[static_cast<size_t>(i)] = static_cast<uint32_t>(c % p);
        c /= p;
      }
      g[static_cast<size_t>(d)] = 1;
      if (fp_mod(ff, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<uint32_t> fp_powmod(std::vector<uint32_t> base, uint64_t e,
                                const std::vector<uint32_t>& f, uint32_t p) {
  std::vector<uint32_t> r = {1};
  base = fp_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = fp_mod(fp_mul(r, base, p), f, p);
    base = fp_mod(fp_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

bool fp_t_is_primitive(const std::vector<uint32_t>& f, uint32_t p, int e) {
  uint64_t q = pow_u64(p, static_cast<unsigned>(e)) - 1;
  std::vector<uint32_t> t = {0, 1};
  if (fp_powmod(t, q, f, p) != std::vector<uint32_t>{1}) return false;
  uint64_t m = q;
  for (uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      if (fp_powmod(t, q / d, f, p) == std::vector<uint32_t>{1}) return false;
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1 && fp_powmod(t, q / m, f, p) == std::vector<uint32_t>{1}) return false;
  return true;
}

} // namespace

// ---------------- UnramifiedField ----------------

UnramifiedField::UnramifiedField(uint32_t p, int e, int precision, std::vector<int64_t> f_coeffs)
    : p_(p), e_(e), n_(precision) {
  if (!is_prime_u64(p)) throw std::domain_error("p must be prime");
  if (e < 1) throw std::domain_error("degree must be >= 1");
  if (precision < 2 || precision > max_rel_digits(p))
    throw std::domain_error("unsupported precision");
  if (!f_coeffs.empty()) {
    if (static_cast<int>(f_coeffs.size()) != e)
      throw std::domain_error("defining polynomial must have degree e (monic, low coefficients given)");
    f_ = std::move(f_coeffs);
    std::vector<uint32_t> fm(static_cast<size_t>(e) + 1);
    for (int i = 0; i < e; ++i)
      fm[static_cast<size_t>(i)] = static_cast<uint32_t>(((f_[static_cast<size_t>(i)] % p) + p) % p);
    fm[static_cast<size_t>(e)] = 1;
    if (!fp_is_irreducible(fm, p)) throw std::domain_error("f is reducible mod p");
  } else if (e == 1) {
    f_ = {0}; // t
  } else {
    // Conway-style lift: least monic f (coefficients in [0,p)) that is
    // irreducible mod p with t a generator of the residue multiplicative group.
    uint64_t total = pow_u64(p, static_cast<unsigned>(e));
    bool found = false;
    for (uint64_t code = 0; code < total && !found; ++code) {
      std::vector<uint32_t> fm(static_cast<size_t>(e) + 1, 0);
      uint64_t c = code;
      for (int i = 0; i < e; ++i) {
        fm[static_cast<size_t>(i)] = static_cast<uint32_t>(c % p);
        c /= p;
      }
      fm[static_cast<size_t>(e)] = 1;
      if (!fp_is_irreducible(fm, p)) continue;
      if (!fp_t_is_primitive(fm, p, e)) continue;
      f_.assign(static_cast<size_t>(e), 0);
      for (int i = 0; i < e; ++i) f_[static_cast<size_t>(i)] = fm[static_cast<size_t>(i)];
      found = true;
    }
    if (!found) throw std::domain_error("no defining polynomial found");
  }
  build_frobenius();
}

UnramifiedElement UnramifiedField::zero() const {
  return UnramifiedElement(this, std::vector<PadicScalar>(static_cast<size_t>(e_), PadicScalar::exact_zero(p_)));
}

UnramifiedElement UnramifiedField::one() const {
  auto c = std::vector<PadicScalar>(static_cast<size_t>(e_), PadicScalar::exact_zero(p_));
  c[0] = PadicScalar::one(p_, n_);
  return UnramifiedElement(this, std::move(c));
}

UnramifiedElement UnramifiedField::gen() const {
  auto c = std::vector<PadicScalar>(static_cast<size_t>(e_), PadicScalar::exact_zero(p_));
  if (e_ == 1) {
    // t reduces to 0 for the degree-1 model f = t
    return UnramifiedElement(this, std::move(c));
  }
  c[1] = PadicScalar::one(p_, n_);
  return UnramifiedElement(this, std::move(c));
}

UnramifiedElement UnramifiedField::from_ints(const std::vector<long long>& c) const {
  if (static_cast<int>(c.size()) > e_) throw std::domain_error("too many coefficients");
  auto v = std::vector<PadicScalar>(static_cast<size_t>(e_), PadicScalar::exact_zero(p_));
  for (size_t i = 0; i < c.size(); ++i)
    v[i] = PadicScalar::from_int(p_, c[i], n_);
  return UnramifiedElement(this, std::move(v));
}

UnramifiedElement UnramifiedField::from_scalar(const PadicScalar& s) const {
  auto v = std::vector<PadicScalar>(static_cast<size_t>(e_), PadicScalar::exact_zero(p_));
  v[0] = s;
  return UnramifiedElement(this, std::move(v));
}

UnramifiedElement UnramifiedField::from_residue(const std::vector<uint32_t>& r) const {
  std::vector<long long> c(static_cast<size_t>(e_), 0);
  for (size_t i = 0; i < r.size() && i < c.size(); ++i) c[i] = r[i];
  return from_ints(c);
}

UnramifiedElement UnramifiedField::reduce_poly(std::vector<PadicScalar> c) const {
  // fold degrees >= e using the monic relation t^e = -(f_{e-1} t^{e-1} + ... + f_0)
  for (int k = static_cast<int>(c.size()) - 1; k >= e_; --k) {
    PadicScalar top = c[static_cast<size_t>(k)];
    c[static_cast<size_t>(k)] = PadicScalar::exact_zero(p_);
    if (top.is_exact_zero()) continue;
    for (int j = 0; j < e_; ++j) {
      if (f_[static_cast<size_t>(j)] == 0) continue;
      PadicScalar fj = PadicScalar::from_int(p_, -f_[static_cast<size_t>(j)], n_);
      c[static_cast<size_t>(k - e_ + j)] = c[static_cast<size_t>(k - e_ + j)] + top * fj;
    }
  }
  c.resize(static_cast<size_t>(e_), PadicScalar::exact_zero(p_));
  return UnramifiedElement(this, std::move(c));
}

// ---------------- UnramifiedElement ----------------

UnramifiedElement UnramifiedElement::operator+(const UnramifiedElement& o) const {
  std::vector<PadicScalar> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] + o.coeffs_[i];
  return UnramifiedElement(field_, std::move(c));
}

UnramifiedElement UnramifiedElement::operator-(const UnramifiedElement& o) const {
  std::vector<PadicScalar> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] - o.coeffs_[i];
  return UnramifiedElement(field_, std::move(c));
}

UnramifiedElement UnramifiedElement::operator-() const {
  std::vector<PadicScalar> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return UnramifiedElement(field_, std::move(c));
}

UnramifiedElement UnramifiedElement::operator*(const PadicScalar& s) const {
  std::vector<PadicScalar> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] * s;
  return UnramifiedElement(field_, std::move(c));
}

UnramifiedElement UnramifiedElement::operator*(const UnramifiedElement& o) const {
  if (field_ != o.field_) throw std::domain_error("field mismatch");
  int e = field_->degree();
  std::vector<PadicScalar> c(static_cast<size_t>(2 * e - 1), PadicScalar::exact_zero(field_->prime()));
  for (int i = 0; i < e; ++i) {
    if (coeffs_[static_cast<size_t>(i)].is_exact_zero()) continue;
    for (int j = 0; j < e; ++j) {
      if (o.coeffs_[static_cast<size_t>(j)].is_exact_zero()) continue;
      c[static_cast<size_t>(i + j)] =
          c[static_cast<size_t>(i + j)] + coeffs_[static_cast<size_t>(i)] * o.coeffs_[static_cast<size_t>(j)];
    }
  }
  return field_->reduce_poly(std::move(c));
}

UnramifiedElement UnramifiedElement::pow(uint64_t n) const {
  UnramifiedElement r = field_->one();
  UnramifiedElement b = *this;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

int64_t UnramifiedElement::val() const {
  int64_t v = PadicScalar::kInfinity;
  for (const auto& c : coeffs_) v = std::min(v, c.val());
  return v;
}

bool UnramifiedElement::is_zero_at_precision() const {
  for (const auto& c : coeffs_)
    if (c.distinguishable_from_zero()) return false;
  return true;
}

bool UnramifiedElement::eq_at_precision(const UnramifiedElement& o) const {
  return (*this - o).is_zero_at_precision();
}

UnramifiedElement UnramifiedElement::inverse() const {
  const UnramifiedField& F = *field_;
  if (is_zero_at_precision())
    throw PrecisionError("precision-zero divisor: inverting W-element indistinguishable from 0");
  int64_t v = val();
  UnramifiedElement z = *this;
  if (v != 0) {
    PadicScalar shift = PadicScalar::from_unit(F.prime(), -v, 1, F.precision());
    z = z * shift;
  }
  // Newton lift of the residue-field inverse: w <- w(2 - z w)
  std::vector<uint32_t> r = F.residue_of(z);
  std::vector<uint32_t> rinv = F.res_inv(r);
  UnramifiedElement w = F.from_residue(rinv);
  UnramifiedElement two = F.from_ints({2});
  for (int it = 0; it < 8; ++it) {
    w = w * (two - z * w);
    if ((z * w - F.one()).is_zero_at_precision()) break;
  }
  if (!(z * w - F.one()).is_zero_at_precision())
    throw PrecisionError("inverse: Newton iteration failed to converge");
  if (v != 0) {
    PadicScalar shift = PadicScalar::from_unit(F.prime(), -v, 1, F.precision());
    w = w * shift;
  }
  return w;
}

std::string UnramifiedElement::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i].str();
  }
  os << "]";
  return os.str();
}

// ---------------- Frobenius / norm / Teichmueller ----------------

void UnramifiedField::build_frobenius() {
  frob_matrix_.clear();
  if (e_ == 1) return;
  // find the root w of f with w == t^p (mod p) by Newton iteration
  UnramifiedElement w = gen().pow(p_);
  auto eval_f = [&](const UnramifiedElement& x) {
    UnramifiedElement acc = x.pow(static_cast<uint64_t>(e_));
    for (int j = 0; j < e_; ++j) {
      if (f_[static_cast<size_t>(j)] == 0) continue;
      acc = acc + x.pow(static_cast<uint64_t>(j)) * PadicScalar::from_int(p_, f_[static_cast<size_t>(j)], n_);
    }
    return acc;
  };
  auto eval_fprime = [&](const UnramifiedElement& x) {
    UnramifiedElement acc = x.pow(static_cast<uint64_t>(e_ - 1)) * PadicScalar::from_int(p_, e_, n_);
    for (int j = 1; j < e_; ++j) {
      if (f_[static_cast<size_t>(j)] == 0) continue;
      acc = acc + x.pow(static_cast<uint64_t>(j - 1)) *
                      PadicScalar::from_int(p_, static_cast<long long>(j) * f_[static_cast<size_t>(j)], n_);
    }
    return acc;
  };
  for (int it = 0; it < 2 * n_ + 4; ++it) {
    UnramifiedElement fv = eval_f(w);
    if (fv.is_zero_at_precision()) break;
    w = w - fv * eval_fprime(w).inverse();
  }
  if (!eval_f(w).is_zero_at_precision())
    throw std::runtime_error("frobenius: root lifting failed");
  // columns: sigma(t^i) = w^i
  frob_matrix_.resize(static_cast<size_t>(e_));
  UnramifiedElement acc = one();
  for (int i = 0; i < e_; ++i) {
    frob_matrix_[static_cast<size_t>(i)] = acc.coeffs();
    if (i + 1 < e_) acc = acc * w;
  }
}

UnramifiedElement UnramifiedField::frobenius(const UnramifiedElement& z) const {
  if (e_ == 1) return z;
  std::vector<PadicScalar> out(static_cast<size_t>(e_), PadicScalar::exact_zero(p_));
  for (int i = 0; i < e_; ++i) {
    const PadicScalar& ci = z.coeffs()[static_cast<size_t>(i)];
    if (ci.is_exact_zero()) continue;
    for (int j = 0; j < e_; ++j)
      out[static_cast<size_t>(j)] = out[static_cast<size_t>(j)] + frob_matrix_[static_cast<size_t>(i)][static_cast<size_t>(j)] * ci;
  }
  return UnramifiedElement(this, std::move(out));
}

UnramifiedElement UnramifiedField::frobenius_iter(const UnramifiedElement& z, int i) const {
  UnramifiedElement r = z;
  i = ((i % e_) + e_) % e_;
  for (int k = 0; k < i; ++k) r = frobenius(r);
  return r;
}

PadicScalar UnramifiedField::norm_to_base(const UnramifiedElement& z) const {
  UnramifiedElement acc = z;
  UnramifiedElement cur = z;
  for (int i = 1; i < e_; ++i) {
    cur = frobenius(cur);
    acc = acc * cur;
  }
  for (int j = 1; j < e_; ++j)
    if (acc.coeffs()[static_cast<size_t>(j)].distinguishable_from_zero())
      throw std::runtime_error("norm did not land in the base field");
  return acc.coeffs()[0];
}

PadicScalar UnramifiedField::trace_to_base(const UnramifiedElement& z) const {
  UnramifiedElement acc = z;
  UnramifiedElement cur = z;
  for (int i = 1; i < e_; ++i) {
    cur = frobenius(cur);
    acc = acc + cur;
  }
  for (int j = 1; j < e_; ++j)
    if (acc.coeffs()[static_cast<size_t>(j)].distinguishable_from_zero())
      throw std::runtime_error("trace did not land in the base field");
  return acc.coeffs()[0];
}

UnramifiedElement UnramifiedField::teichmuller(const std::vector<uint32_t>& r) const {
  bool nonzero = false;
  for (auto x : r)
    if (x % p_) nonzero = true;
  for (auto x : r)
    if (x >= p_) throw std::domain_error("teichmuller: residue entries must lie in [0,p)");
  if (!nonzero) throw std::domain_error("teichmuller of zero residue");
  UnramifiedElement z = from_residue(r);
  uint64_t q = pow_u64(p_, static_cast<unsigned>(e_));
  for (int it = 0; it < n_ + 2; ++it) z = z.pow(q);
  return z;
}

UnramifiedElement UnramifiedField::norm_correct(const UnramifiedElement& u, const PadicScalar& t) const {
  if ((t - PadicScalar::one(p_, n_)).val() < 1)
    throw std::domain_error("norm_correct: t must be a principal unit");
  if ((u - one()).val() < 1)
    throw std::domain_error("norm_correct: u must be a principal unit");
  if (e_ % static_cast<int>(p_) == 0)
    throw NormCorrectionError("norm-correction failure: p divides the degree");
  UnramifiedElement w = u;
  for (int it = 0; it < n_ + 6; ++it) {
    PadicScalar nu = norm_to_base(w);
    PadicScalar delta = t * nu.inv();
    PadicScalar d1 = delta - PadicScalar::one(p_, n_);
    if (d1.is_zero_at_precision()) return w;
    PadicScalar eps = d1 * PadicScalar::from_int(p_, e_, n_).inv();
    w = w * (one() + from_scalar(eps));
  }
  if ((norm_to_base(w) - t).is_zero_at_precision()) return w;
  throw NormCorrectionError("norm-correction failure: no convergence within precision budget");
}

UnramifiedElement UnramifiedField::random_element(Rng& rng, int64_t min_val) const {
  std::vector<PadicScalar> c(static_cast<size_t>(e_));
  for (auto& x : c) {
    long long digits = static_cast<long long>(rng.below(pow_u64(p_, static_cast<unsigned>(std::min(n_, max_rel_digits(p_) - 1)))));
    PadicScalar s = digits == 0 ? PadicScalar::exact_zero(p_) : PadicScalar::from_int(p_, digits, n_);
    if (min_val != 0) s = s * PadicScalar::from_unit(p_, min_val, 1, n_);
    x = s;
  }
  return UnramifiedElement(this, std::move(c));
}

UnramifiedElement UnramifiedField::random_unit(Rng& rng) const {
  for (int tries = 0; tries < 200; ++tries) {
    UnramifiedElement z = random_element(rng);
    if (z.val() == 0) return z;
  }
  throw std::runtime_error("random_unit: sampling failed");
}

UnramifiedElement UnramifiedField::random_principal_unit(Rng& rng) const {
  return one() + random_element(rng, 1);
}

std::vector<uint32_t> UnramifiedField::residue_of(const UnramifiedElement& z) const {
  std::vector<uint32_t> r(static_cast<size_t>(e_), 0);
  for (int i = 0; i < e_; ++i) {
    const PadicScalar& c = z.coeffs()[static_cast<size_t>(i)];
    if (c.distinguishable_from_zero() && c.val() == 0) r[static_cast<size_t>(i)] = c.residue_mod_p();
  }
  return r;
}

std::vector<uint32_t> UnramifiedField::res_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) const {
  std::vector<uint32_t> fm(static_cast<size_t>(e_) + 1);
  for (int i = 0; i < e_; ++i) fm[static_cast<size_t>(i)] = static_cast<uint32_t>(((f_[static_cast<size_t>(i)] % p_) + p_) % p_);
  fm[static_cast<size_t>(e_)] = 1;
  auto c = fp_mod(fp_mul(a, b, p_), fm, p_);
  c.resize(static_cast<size_t>(e_), 0);
  return c;
}

std::vector<uint32_t> UnramifiedField::res_inv(const std::vector<uint32_t>& a) const {
  std::vector<uint32_t> fm(static_cast<size_t>(e_) + 1);
  for (int i = 0; i < e_; ++i) fm[static_cast<size_t>(i)] = static_cast<uint32_t>(((f_[static_cast<size_t>(i)] % p_) + p_) % p_);
  fm[static_cast<size_t>(e_)] = 1;
  std::vector<uint32_t> g, u;
  fp_ext_gcd(fp_trim(a), fm, p_, g, u);
  if (g.size() != 1) throw std::domain_error("res_inv: not invertible");
  uint32_t ginv = static_cast<uint32_t>(invmod(g[0], p_));
  std::vector<uint32_t> r = fp_mul(u, {ginv}, p_);
  r = fp_mod(std::move(r), fm, p_);
  r.resize(static_cast<size_t>(e_), 0);
  return r;
}

bool has_primitive_ell_root(uint32_t p, int e, uint32_t ell) {
  if (!is_prime_u64(p)) throw std::domain_error("p must be prime");
  if (!is_prime_u64(ell)) throw std::domain_error("ell must be prime");
  if (e < 1) throw std::domain_error("e must be >= 1");
  if (p == 2 && ell == 2) return true;
  if (ell == p) return false;
  return (pow_u64(p, static_cast<unsigned>(e)) - 1) % ell == 0;
}

// ---------------- linear algebra at precision ----------------

namespace {

struct ReduceResult {
  int rank;
  std::vector<int> pivot_cols;
};

bool entry_is_zero(const PadicScalar& x, int64_t floor, PrecisionLog* log, int i, int j) {
  if (x.is_zero_at_precision()) return true;
  if (x.val() >= floor) {
    if (log) {
      log->note("entry (" + std::to_string(i) + "," + std::to_string(j) + ") with valuation " +
                std::to_string(x.val()) + " >= floor " + std::to_string(floor) + " treated as zero");
    }
    return true;
  }
  return false;
}

ReduceResult padic_rref(PadicMatrix& m, int64_t floor, PrecisionLog* log) {
  ReduceResult res;
  res.rank = 0;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int piv = -1;
    int64_t best = PadicScalar::kInfinity;
    for (int i = r; i < m.rows; ++i) {
      const PadicScalar& x = m.at(i, col);
      if (entry_is_zero(x, floor, log, i, col)) continue;
      if (x.val() < best) {
        best = x.val();
        piv = i;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    PadicScalar pinv = m.at(r, col).inv();
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * pinv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const PadicScalar& x = m.at(i, col);
      if (entry_is_zero(x, floor, nullptr, i, col)) continue;
      PadicScalar factor = x;
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
    }
    res.pivot_cols.push_back(col);
    ++r;
  }
  res.rank = r;
  return res;
}

} // namespace

int padic_rank(PadicMatrix m, int64_t floor, PrecisionLog* log) {
  return padic_rref(m, floor, log).rank;
}

std::vector<std::vector<PadicScalar>> padic_kernel(PadicMatrix m, int64_t floor, PrecisionLog* log) {
  uint32_t p = 2;
  for (const auto& x : m.a)
    if (!x.is_exact_zero()) {
      p = x.prime();
      break;
    }
  ReduceResult rr = padic_rref(m, floor, log);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<PadicScalar>> basis;
  for (int fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[static_cast<size_t>(fc)]) continue;
    std::vector<PadicScalar> v(static_cast<size_t>(m.cols), PadicScalar::exact_zero(p));
    // generous relative precision for the inserted 1; arithmetic clamps to inputs
    v[static_cast<size_t>(fc)] = PadicScalar::one(p, max_rel_digits(p) - 2);
    for (int i = 0; i < rr.rank; ++i) {
      const PadicScalar& x = m.at(i, fc);
      if (x.is_zero_at_precision()) continue;
      v[static_cast<size_t>(rr.pivot_cols[static_cast<size_t>(i)])] = -x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace cakit
