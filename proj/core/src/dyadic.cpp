#include "hyperlap/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hyperlap/errors.hpp"

namespace hyperlap {

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long trailing = mpz_scan1(num_.get_mpz_t(), 0);
  unsigned long shift = std::min(trailing, exp_);
  if (shift > 0) {
    num_ >>= shift;
    exp_ -= shift;
  }
}

Dyadic Dyadic::from_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "non-finite double has no dyadic value");
  }
  mpq_class q(v);  // exact for finite doubles
  return dyadic_from_rational(q);
}

Dyadic Dyadic::pow2(long k) {
  Dyadic d;
  if (k <= 0) {
    d.num_ = 1;
    d.exp_ = static_cast<unsigned long>(-k);
  } else {
    d.num_ = mpz_class(1) << static_cast<unsigned long>(k);
    d.exp_ = 0;
  }
  return d;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  unsigned long q = std::max(exp_, o.exp_);
  mpz_class a = num_ << (q - exp_);
  mpz_class b = o.num_ << (q - o.exp_);
  return Dyadic(a + b, q);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  unsigned long q = std::max(exp_, o.exp_);
  mpz_class a = num_ << (q - exp_);
  mpz_class b = o.num_ << (q - o.exp_);
  return Dyadic(a - b, q);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(num_ * o.num_, exp_ + o.exp_);
}

int Dyadic::compare(const Dyadic& o) const {
  unsigned long q = std::max(exp_, o.exp_);
  mpz_class a = num_ << (q - exp_);
  mpz_class b = o.num_ << (q - o.exp_);
  return cmp(a, b);
}

mpq_class Dyadic::to_rational() const {
  mpq_class q(num_, mpz_class(1) << exp_);
  q.canonicalize();
  return q;
}

double Dyadic::to_double() const { return to_rational().get_d(); }

std::string Dyadic::to_string() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "*2^-" + std::to_string(exp_);
}

namespace {

bool parse_plain_integer(const std::string& s, mpz_class* out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  out->set_str(s, 10);
  return true;
}

}  // namespace

Dyadic Dyadic::parse(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty dyadic literal");

  size_t star = s.find("*2^-");
  if (star != std::string::npos) {
    mpz_class a;
    if (!parse_plain_integer(s.substr(0, star), &a)) {
      throw Error(ErrorCode::ParseError, "bad dyadic numerator in '" + text + "'");
    }
    std::string qs = s.substr(star + 4);
    mpz_class q;
    if (!parse_plain_integer(qs, &q) || q < 0 || !q.fits_ulong_p()) {
      throw Error(ErrorCode::ParseError, "bad dyadic exponent in '" + text + "'");
    }
    return Dyadic(a, q.get_ui());
  }

  size_t dot = s.find('.');
  if (dot == std::string::npos) {
    mpz_class a;
    if (!parse_plain_integer(s, &a)) {
      throw Error(ErrorCode::ParseError, "bad numeric literal '" + text + "'");
    }
    return Dyadic(a, 0);
  }

  // Decimal string: digits.digits -> N / 10^k, accepted only when exact.
  std::string intpart = s.substr(0, dot);
  std::string fracpart = s.substr(dot + 1);
  if (fracpart.empty()) fracpart = "0";
  bool neg = !intpart.empty() && intpart[0] == '-';
  std::string digits = intpart + fracpart;
  digits.erase(std::remove(digits.begin(), digits.end(), '+'), digits.end());
  digits.erase(std::remove(digits.begin(), digits.end(), '-'), digits.end());
  if (digits.empty()) throw Error(ErrorCode::ParseError, "bad decimal '" + text + "'");
  mpz_class n;
  if (!parse_plain_integer(digits, &n)) {
    throw Error(ErrorCode::ParseError, "bad decimal '" + text + "'");
  }
  if (neg) n = -n;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fracpart.size());
  mpq_class q(n, den);
  q.canonicalize();
  return dyadic_from_rational(q);
}

Dyadic dyadic_from_rational(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  const mpz_class& den = q.get_den();
  // A canonical rational is dyadic iff its denominator is a power of two.
  unsigned long bits = mpz_scan1(den.get_mpz_t(), 0);
  if ((den >> bits) != 1) {
    throw Error(ErrorCode::ParseError,
                "value " + q.get_str() + " is not a dyadic rational");
  }
  return Dyadic(q.get_num(), bits);
}

Dyadic round_to_grid(const mpq_class& value, long grid_bits) {
  // k = round(value * 2^grid_bits), ties to even.
  mpq_class scaled = value;
  if (grid_bits >= 0) {
    scaled *= mpq_class(mpz_class(1) << static_cast<unsigned long>(grid_bits));
  } else {
    scaled /= mpq_class(mpz_class(1) << static_cast<unsigned long>(-grid_bits));
  }
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(),
             scaled.get_den().get_mpz_t());
  mpq_class frac = scaled - mpq_class(fl);
  mpz_class k;
  int c = cmp(frac, mpq_class(1, 2));
  if (c < 0) {
    k = fl;
  } else if (c > 0) {
    k = fl + 1;
  } else {
    k = mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
  }
  if (grid_bits >= 0) return Dyadic(k, static_cast<unsigned long>(grid_bits));
  return Dyadic(k << static_cast<unsigned long>(-grid_bits), 0);
}

Dyadic ceil_to_step(const mpq_class& value, const Dyadic& step) {
  if (step.sign() <= 0) {
    throw Error(ErrorCode::InvariantViolation, "ceil_to_step needs a positive step");
  }
  mpq_class ratio = value / step.to_rational();
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), ratio.get_num().get_mpz_t(),
             ratio.get_den().get_mpz_t());
  return Dyadic(k, 0) * step;
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class rational_from_string(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (s.find("*2^-") != std::string::npos || s.find('.') != std::string::npos) {
        return Dyadic::parse(s).to_rational();
      }
      mpq_class q(s);
      q.canonicalize();
      return q;
    }
    mpq_class q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
  }
}

}  // namespace hyperlap
