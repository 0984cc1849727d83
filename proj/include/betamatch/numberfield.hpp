#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "betamatch/polynomial.hpp"
#include "betamatch/rational.hpp"

namespace betamatch {

class FieldElement;

/// The real algebraic slope beta > 1: a monic irreducible integer polynomial
/// together with a rational interval isolating one real root. Immutable and
/// cheap to copy; safe to share across threads (the internal root enclosure
/// refines monotonically under a lock).
class NumberField {
 public:
  NumberField() = default;  // empty handle; assign before use

  /// minpoly: ascending coefficients including the leading 1.
  /// Throws: ReduciblePolynomial, NoRoot, MultipleRoots, RootNotGreaterThanOne.
  static NumberField make(std::vector<Int> minpoly, Rat root_lo, Rat root_hi);

  int degree() const;
  const std::vector<Int>& minpoly() const;
  std::pair<Rat, Rat> isolation() const;

  /// Current refined enclosure of beta (always inside the isolation interval).
  std::pair<Rat, Rat> enclosure() const;
  /// Bisect the enclosure once.
  void refine_enclosure() const;
  /// Refine until the enclosure has width <= `width`, then return it.
  std::pair<Rat, Rat> enclosure_within(const Rat& width) const;

  bool same_as(const NumberField& other) const;

  FieldElement element(std::vector<Rat> coeffs) const;
  FieldElement from_rational(Rat q) const;
  FieldElement from_int(long n) const;
  FieldElement beta() const;
  FieldElement zero() const;
  FieldElement one() const;
  /// beta^n as a reduced element, n >= 0.
  FieldElement beta_power(int n) const;

  /// Reduction table: beta^j as a coefficient vector, j = degree..2*degree-2
  /// (indexed j - degree).
  const std::vector<std::vector<Rat>>& power_table() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit NumberField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend class FieldElement;
};

/// An exact element of Q(beta): rational coordinates in the power basis
/// 1, beta, ..., beta^{d-1}, always fully reduced.
class FieldElement {
 public:
  FieldElement() = default;

  const std::vector<Rat>& coeffs() const { return c_; }
  const NumberField& field() const { return field_; }

  bool is_zero() const;
  bool is_rational() const;  // all basis coordinates above 1 vanish
  bool is_integer() const;
  Rat as_rational() const;   // pre: is_rational()

  /// Sign of the real embedding under the selected root. Exact: 0 iff the
  /// coefficient vector is zero; otherwise decided by interval evaluation
  /// with bisection of the root enclosure (cap 4096 bisections).
  int sign() const;

  /// Largest integer <= value.
  long floor_long() const;

  /// Correctly rounded decimal string with `digits` fractional digits.
  std::string decimal(int digits) const;

  /// Rational interval enclosing the value, of width <= `width`.
  std::pair<Rat, Rat> enclosure(const Rat& width) const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  /// Exact division; throws DivisionByZero.
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;

  FieldElement operator+(const Rat& q) const;
  FieldElement operator-(const Rat& q) const;
  FieldElement operator*(const Rat& q) const;
  FieldElement operator/(const Rat& q) const;

  /// Exact coefficient-wise equality (same field required).
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement abs() const { return sign() < 0 ? -*this : *this; }

 private:
  NumberField field_;
  std::vector<Rat> c_;
  FieldElement(NumberField f, std::vector<Rat> c)
      : field_(std::move(f)), c_(std::move(c)) {}
  void check_same_field(const FieldElement& o) const;
  friend class NumberField;
};

/// sign(a - b)
int compare(const FieldElement& a, const FieldElement& b);

enum class SlopeTag { Pisot, Salem, OtherAlgebraic };

struct ConjugateBound {
  Rat lo, hi;  // enclosure of the conjugate's modulus
};

struct SlopeClass {
  SlopeTag tag;
  std::vector<ConjugateBound> conjugate_moduli;
};

/// Pisot/Salem classification. Conjugates on the unit circle are detected
/// exactly (palindromic transform + Sturm); off-circle conjugates are
/// enclosed by certified root disks refined until conclusive.
/// Throws Inconclusive if the refinement cap is reached.
SlopeClass classify(const NumberField& f);

const char* slope_tag_name(SlopeTag t);

}  // namespace betamatch
