#include "gaq/scalar.hpp"

#include <ostream>

#include "gaq/errors.hpp"

namespace gaq {

Scalar::Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::from_string(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw Error("malformed rational literal '" + text + "'");
  if (q.get_den() == 0) throw DivisionByZero("rational literal with zero denominator");
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& other) {
  re_ += other.re_;
  im_ += other.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  re_ -= other.re_;
  im_ -= other.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  if (is_real() && other.is_real()) {
    re_ *= other.re_;
    return *this;
  }
  Rational re = re_ * other.re_ - im_ * other.im_;
  Rational im = re_ * other.im_ + im_ * other.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  if (other.is_zero()) throw DivisionByZero();
  if (other.is_real()) {
    re_ /= other.re_;
    im_ /= other.re_;
    return *this;
  }
  const Rational n = other.norm();
  *this *= other.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  int c = cmp(a.im_, b.im_);
  if (c == 0) return std::strong_ordering::equal;
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return (Scalar(1) / *this).pow(-exponent);
  Scalar result(1);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string imaginary_part_string(const Rational& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return rational_string(im) + "*i";
}

}  // namespace

std::string Scalar::str() const {
  if (is_real()) return rational_string(re_);
  if (is_imaginary()) return imaginary_part_string(im_);
  std::string out = rational_string(re_);
  std::string imag = imaginary_part_string(im_);
  if (imag.front() != '-') out += '+';
  return out + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace gaq
