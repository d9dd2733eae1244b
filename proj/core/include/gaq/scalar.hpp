#ifndef GAQ_SCALAR_HPP
#define GAQ_SCALAR_HPP

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace gaq {

using Rational = mpq_class;

/// Exact Gaussian rational re + im*i.
///
/// Both components are kept canonical (lowest terms, positive denominator),
/// so structural equality is value equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im = 0);

  /// Parses "p" or "p/q" into a real scalar.
  static Scalar from_string(const std::string& text);
  static Scalar i() { return Scalar(0, 1); }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }
  bool is_integer() const { return is_real() && re_.get_den() == 1; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |s|^2 = s * conj(s), always real.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  /// Throws DivisionByZero.
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Total order (re, then im); used only for deterministic containers.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  Scalar pow(long exponent) const;

  /// Canonical text: "3/4", "-i", "1/2+3*i", "-2/3*i".
  std::string str() const;
  /// True when str() would need parentheses inside a product.
  bool needs_parens() const { return !is_real() && !is_imaginary(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// "p/q" (or "p" for integers) for a rational.
std::string rational_string(const Rational& q);

}  // namespace gaq

#endif  // GAQ_SCALAR_HPP
