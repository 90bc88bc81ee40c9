#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hyperlap {

/// An exact binary rational a * 2^-q with an arbitrary-precision numerator.
///
/// Canonical form: the numerator is odd or zero, and zero always carries
/// exponent 0.  Addition, subtraction, and multiplication are closed and
/// exact (sums go through the common exponent max(q1, q2)), which is what
/// makes the certificate arithmetic in this project loss-free.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long v) : num_(v), exp_(0) {}          // NOLINT(google-explicit-constructor)
  Dyadic(const mpz_class& num, unsigned long exp) : num_(num), exp_(exp) {
    canonicalize();
  }

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1); }

  /// Exact conversion; every finite double is a dyadic rational.
  static Dyadic from_double(double v);

  /// Accepts "a", "a*2^-q", and decimal strings like "-3.625".  Decimal
  /// strings are converted exactly or rejected: 0.1 has no finite binary
  /// expansion and throws ParseError rather than being rounded.
  static Dyadic parse(const std::string& text);

  /// 2^k for any sign of k.
  static Dyadic pow2(long k);

  const mpz_class& numerator() const { return num_; }
  unsigned long exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const { return compare(o) < 0; }
  bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
  bool operator>(const Dyadic& o) const { return compare(o) > 0; }
  bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }
  int compare(const Dyadic& o) const;

  Dyadic abs() const { return num_ >= 0 ? *this : -*this; }

  mpq_class to_rational() const;
  double to_double() const;

  /// Canonical text form: "a" when q = 0, otherwise "a*2^-q".
  std::string to_string() const;

 private:
  void canonicalize();

  mpz_class num_;
  unsigned long exp_;  // value = num_ * 2^-exp_
};

inline Dyadic abs(const Dyadic& d) { return d.abs(); }

/// Nearest multiple of 2^-grid_bits, ties to even multiples.
Dyadic round_to_grid(const mpq_class& value, long grid_bits);

/// Smallest multiple of `step` (a positive dyadic) that is >= value.
Dyadic ceil_to_step(const mpq_class& value, const Dyadic& step);

/// Exact conversion when the reduced denominator is a power of two;
/// throws ParseError otherwise.
Dyadic dyadic_from_rational(const mpq_class& value);

std::string rational_to_string(const mpq_class& q);
mpq_class rational_from_string(const std::string& text);

}  // namespace hyperlap
