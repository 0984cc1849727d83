#include "betamatch/numberfield.hpp"

#include <algorithm>
#include <mutex>

namespace betamatch {

struct NumberField::Impl {
  std::vector<Int> minpoly;  // ascending, monic
  int degree = 0;
  Rat iso_lo, iso_hi;
  std::vector<std::vector<Rat>> powers;  // beta^j reduced, j = degree..2*degree-2

  mutable std::mutex mu;
  mutable Rat enc_lo, enc_hi;
  mutable int sign_at_lo = 0;  // sign of minpoly at enc_lo (0 only when enc is a point)

  void bisect_locked() const {
    if (enc_lo == enc_hi) return;
    Rat mid = (enc_lo + enc_hi) / 2;
    int s = poly::sign_at(minpoly, mid);
    if (s == 0) {  // rational root: degree-1 fields only
      enc_lo = enc_hi = mid;
      sign_at_lo = 0;
      return;
    }
    if (s == sign_at_lo)
      enc_lo = mid;
    else
      enc_hi = mid;
  }
};

NumberField NumberField::make(std::vector<Int> minpoly, Rat root_lo, Rat root_hi) {
  if (minpoly.size() < 2 || minpoly.back() != 1)
    throw Error("NotMonic", "minimal polynomial must be monic of degree >= 1");
  if (!poly::is_irreducible_monic(minpoly))
    throw Error("ReduciblePolynomial", "minimal polynomial is reducible over Q");
  if (!(root_lo < root_hi))
    throw Error("NoRoot", "empty isolation interval");
  if (root_lo < 1)
    throw Error("RootNotGreaterThanOne", "isolation interval must start at 1 or above");
  if (poly::sign_at(minpoly, root_lo) == 0 || poly::sign_at(minpoly, root_hi) == 0)
    throw Error("NoRoot", "isolation endpoints must not be roots");
  int count = poly::count_real_roots(minpoly, root_lo, root_hi);
  if (count == 0) throw Error("NoRoot", "no root in the isolation interval");
  if (count > 1) throw Error("MultipleRoots", "more than one root in the isolation interval");

  auto impl = std::make_shared<Impl>();
  impl->degree = static_cast<int>(minpoly.size()) - 1;
  impl->minpoly = std::move(minpoly);
  impl->iso_lo = root_lo;
  impl->iso_hi = root_hi;
  impl->enc_lo = root_lo;
  impl->enc_hi = root_hi;
  impl->sign_at_lo = poly::sign_at(impl->minpoly, root_lo);

  const int d = impl->degree;
  if (d >= 2) {
    std::vector<Rat> base(d);
    for (int i = 0; i < d; ++i) base[i] = Rat(-impl->minpoly[i]);
    impl->powers.push_back(base);
    std::vector<Rat> cur = base;
    for (int j = d + 1; j <= 2 * d - 2; ++j) {
      std::vector<Rat> nxt(d);
      Rat lead = cur[d - 1];
      for (int i = d - 1; i >= 1; --i) nxt[i] = cur[i - 1] + lead * base[i];
      nxt[0] = lead * base[0];
      impl->powers.push_back(nxt);
      cur = std::move(nxt);
    }
  }

  NumberField f(impl);
  // warm the enclosure so later sign tests usually resolve in one pass
  for (int i = 0; i < 80; ++i) impl->bisect_locked();
  return f;
}

int NumberField::degree() const { return impl_->degree; }
const std::vector<Int>& NumberField::minpoly() const { return impl_->minpoly; }
std::pair<Rat, Rat> NumberField::isolation() const {
  return {impl_->iso_lo, impl_->iso_hi};
}

std::pair<Rat, Rat> NumberField::enclosure() const {
  std::lock_guard lock(impl_->mu);
  return {impl_->enc_lo, impl_->enc_hi};
}

void NumberField::refine_enclosure() const {
  std::lock_guard lock(impl_->mu);
  impl_->bisect_locked();
}

std::pair<Rat, Rat> NumberField::enclosure_within(const Rat& width) const {
  std::lock_guard lock(impl_->mu);
  while (impl_->enc_hi - impl_->enc_lo > width) impl_->bisect_locked();
  return {impl_->enc_lo, impl_->enc_hi};
}

bool NumberField::same_as(const NumberField& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->minpoly == other.impl_->minpoly &&
         impl_->iso_lo == other.impl_->iso_lo && impl_->iso_hi == other.impl_->iso_hi;
}

const std::vector<std::vector<Rat>>& NumberField::power_table() const {
  return impl_->powers;
}

FieldElement NumberField::element(std::vector<Rat> coeffs) const {
  if (coeffs.size() > static_cast<size_t>(impl_->degree))
    throw Error("BadCoefficients", "coefficient vector longer than the field degree");
  coeffs.resize(impl_->degree);
  return FieldElement(*this, std::move(coeffs));
}

FieldElement NumberField::from_rational(Rat q) const {
  std::vector<Rat> c(impl_->degree);
  c[0] = std::move(q);
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::from_int(long n) const { return from_rational(Rat(n)); }

FieldElement NumberField::beta() const {
  if (impl_->degree == 1) return from_rational(Rat(-impl_->minpoly[0]));
  std::vector<Rat> c(impl_->degree);
  c[1] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::zero() const { return from_int(0); }
FieldElement NumberField::one() const { return from_int(1); }

FieldElement NumberField::beta_power(int n) const {
  FieldElement r = one();
  FieldElement b = beta();
  for (int i = 0; i < n; ++i) r = r * b;
  return r;
}

// ---- FieldElement ----

void FieldElement::check_same_field(const FieldElement& o) const {
  if (!field_.same_as(o.field_))
    throw Error("FieldMismatch", "elements belong to different fields");
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FieldElement::is_integer() const {
  return is_rational() && c_[0].get_den() == 1;
}

Rat FieldElement::as_rational() const {
  if (!is_rational()) throw Error("NotRational", "element is irrational");
  return c_[0];
}

namespace {

// Horner over an interval [lo,hi] with 0 < lo <= hi.
std::pair<Rat, Rat> interval_horner(const std::vector<Rat>& c, const Rat& lo,
                                    const Rat& hi) {
  Rat a = 0, b = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    Rat na = (sgn(a) >= 0 ? a * lo : a * hi) + *it;
    Rat nb = (sgn(b) >= 0 ? b * hi : b * lo) + *it;
    a = std::move(na);
    b = std::move(nb);
  }
  return {a, b};
}

constexpr int kSignBisectionCap = 4096;

}  // namespace

int FieldElement::sign() const {
  if (is_rational()) return sgn(c_[0]);
  for (int i = 0; i < kSignBisectionCap; ++i) {
    auto [lo, hi] = field_.enclosure();
    auto [a, b] = interval_horner(c_, lo, hi);
    if (sgn(a) > 0) return 1;
    if (sgn(b) < 0) return -1;
    field_.refine_enclosure();
  }
  throw Error("SignRefinementCapExceeded", "sign undecided after 4096 bisections");
}

long FieldElement::floor_long() const {
  if (is_rational()) {
    Int f = rational_floor(c_[0]);
    if (!f.fits_slong_p()) throw Error("Overflow", "floor out of range");
    return f.get_si();
  }
  for (int i = 0; i < kSignBisectionCap; ++i) {
    auto [lo, hi] = field_.enclosure();
    auto [a, b] = interval_horner(c_, lo, hi);
    Int fa = rational_floor(a), fb = rational_floor(b);
    if (fa == fb) {
      if (!fa.fits_slong_p()) throw Error("Overflow", "floor out of range");
      return fa.get_si();
    }
    field_.refine_enclosure();
  }
  throw Error("SignRefinementCapExceeded", "floor undecided after 4096 bisections");
}

std::pair<Rat, Rat> FieldElement::enclosure(const Rat& width) const {
  if (is_rational()) return {c_[0], c_[0]};
  for (;;) {
    auto [lo, hi] = field_.enclosure();
    auto [a, b] = interval_horner(c_, lo, hi);
    if (b - a <= width) return {a, b};
    field_.refine_enclosure();
  }
}

std::string FieldElement::decimal(int digits) const {
  if (digits < 1) throw Error("BadDigits", "digits must be >= 1");
  if (is_rational()) return rational_decimal(c_[0], digits);
  Int pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned>(digits));
  Rat scale(pow10);
  for (int i = 0; i < kSignBisectionCap; ++i) {
    auto [a, b] = enclosure(Rat(1) / scale);
    Int na = rational_floor(a * scale + Rat(1, 2));
    Int nb = rational_floor(b * scale + Rat(1, 2));
    if (na == nb) return rational_decimal(Rat(na) / scale, digits);
    field_.refine_enclosure();
  }
  throw Error("SignRefinementCapExceeded", "decimal rounding did not stabilize");
}

FieldElement FieldElement::operator-() const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(o);
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(o);
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(o);
  const size_t d = c_.size();
  if (d == 1) return FieldElement(field_, {c_[0] * o.c_[0]});
  std::vector<Rat> conv(2 * d - 1);
  for (size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rat> r(conv.begin(), conv.begin() + d);
  const auto& powers = field_.power_table();
  for (size_t j = d; j <= 2 * d - 2; ++j) {
    if (conv[j] == 0) continue;
    const auto& pj = powers[j - d];
    for (size_t i = 0; i < d; ++i) r[i] += conv[j] * pj[i];
  }
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  const size_t d = c_.size();
  if (d == 1) return FieldElement(field_, {Rat(1) / c_[0]});
  // Solve (mult-by-this) x = 1 by Gaussian elimination over Q.
  std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d + 1));
  for (size_t col = 0; col < d; ++col) {
    std::vector<Rat> e(d);
    e[col] = 1;
    FieldElement img = *this * FieldElement(field_, std::move(e));
    for (size_t row = 0; row < d; ++row) M[row][col] = img.c_[row];
  }
  M[0][d] = 1;
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && M[piv][col] == 0) ++piv;
    if (piv == d) throw Error("DivisionByZero", "singular multiplication matrix");
    std::swap(M[col], M[piv]);
    Rat pv = M[col][col];
    for (auto& v : M[col]) v /= pv;
    for (size_t row = 0; row < d; ++row) {
      if (row == col || M[row][col] == 0) continue;
      Rat f = M[row][col];
      for (size_t k = col; k <= d; ++k) M[row][k] -= f * M[col][k];
    }
  }
  std::vector<Rat> x(d);
  for (size_t row = 0; row < d; ++row) x[row] = M[row][d];
  return FieldElement(field_, std::move(x));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same_field(o);
  return *this * o.inverse();
}

FieldElement FieldElement::operator+(const Rat& q) const {
  std::vector<Rat> r = c_;
  r[0] += q;
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const Rat& q) const {
  std::vector<Rat> r = c_;
  r[0] -= q;
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const Rat& q) const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * q;
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator/(const Rat& q) const {
  if (q == 0) throw Error("DivisionByZero", "division by zero rational");
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / q;
  return FieldElement(field_, std::move(r));
}

bool FieldElement::operator==(const FieldElement& o) const {
  check_same_field(o);
  return c_ == o.c_;
}

int compare(const FieldElement& a, const FieldElement& b) {
  return (a - b).sign();
}

const char* slope_tag_name(SlopeTag t) {
  switch (t) {
    case SlopeTag::Pisot: return "Pisot";
    case SlopeTag::Salem: return "Salem";
    case SlopeTag::OtherAlgebraic: return "OtherAlgebraic";
  }
  return "?";
}

}  // namespace betamatch
