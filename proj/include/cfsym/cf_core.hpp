// include/cfsym/cf_core.hpp — convergent matrices, evaluation, fundamental
// intervals and digit extraction for finite continued fractions [0; a1, ..., an].

#pragma once

#include "cfsym/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <type_traits>

namespace cfsym {

/// The matrix (p_prev p; q_prev q) holding the last two convergents of a
/// string of the given length. It equals the product of the factors (0 1; 1 ai).
struct ConvergentMatrix {
  BigInt p_prev{0};
  BigInt p{1};
  BigInt q_prev{1};
  BigInt q{0};
  std::size_t length = 0;

  /// p*q_prev - q*p_prev, which is (-1)^(length-1).
  BigInt determinant() const { return p * q_prev - q * p_prev; }

  /// Entries of the matrix of the reversed string: p and q_prev swap.
  ConvergentMatrix transposed() const { return {p_prev, q_prev, p, q, length}; }

  friend bool operator==(const ConvergentMatrix&, const ConvergentMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const ConvergentMatrix& c) {
    return os << '(' << c.p_prev << ',' << c.p << ';' << c.q_prev << ',' << c.q << ')';
  }
};

enum class ExtendMode { append, prepend, prepend_to_reverse };

/// Extends the convergent matrix of a by one digit t without recomputing the
/// whole product: (a,t), (t,a) or (t,reverse(a)).
inline ConvergentMatrix extend_matrix(const ConvergentMatrix& c, const BigInt& t, ExtendMode mode) {
  if (t < 1) throw DomainError("extension digit must be positive, got " + t.str());
  if (c.length == 0) throw DomainError("cannot extend the matrix of an empty string");
  switch (mode) {
    case ExtendMode::append:
      return {c.p, c.p_prev + t * c.p, c.q, c.q_prev + t * c.q, c.length + 1};
    case ExtendMode::prepend:
      return {c.q_prev, c.q, c.p_prev + t * c.q_prev, c.p + t * c.q, c.length + 1};
    case ExtendMode::prepend_to_reverse:
      return {c.p, c.q, c.p_prev + t * c.p, c.q_prev + t * c.q, c.length + 1};
  }
  throw DomainError("unknown extension mode");
}

inline ConvergentMatrix convergent_matrix(const DigitString& a) {
  // C((a1)) = (0 1; 1 a1); each further digit multiplies on the right.
  ConvergentMatrix c{BigInt(0), BigInt(1), BigInt(1), a[0], 1};
  for (std::size_t i = 1; i < a.size(); ++i) c = extend_matrix(c, a[i], ExtendMode::append);
  return c;
}

/// Value p/q of the finite continued fraction, in lowest terms.
inline BigRational evaluate(const DigitString& a) {
  const auto c = convergent_matrix(a);
  return BigRational(c.p, c.q);
}

/// The half-open set of x in [0,1) whose expansion begins with a given string.
/// Both endpoints are stored exactly; the included one is p/q.
struct FundamentalInterval {
  BigRational included_endpoint;
  BigRational excluded_endpoint;
  int orientation = 1;  // +1 when included < excluded

  const BigRational& lo() const { return orientation > 0 ? included_endpoint : excluded_endpoint; }
  const BigRational& hi() const { return orientation > 0 ? excluded_endpoint : included_endpoint; }
  BigRational width() const { return hi() - lo(); }

  bool contains(const BigRational& x) const {
    if (orientation > 0) return included_endpoint <= x && x < excluded_endpoint;
    return excluded_endpoint < x && x <= included_endpoint;
  }

  /// Interval notation with the bracket on the included side, e.g. "(6/23,5/19]".
  std::string str() const {
    if (orientation > 0) return "[" + to_string(lo()) + "," + to_string(hi()) + ")";
    return "(" + to_string(lo()) + "," + to_string(hi()) + "]";
  }

  friend bool operator==(const FundamentalInterval&, const FundamentalInterval&) = default;
};

inline FundamentalInterval interval_of_matrix(const ConvergentMatrix& c) {
  BigRational included(c.p, c.q);
  BigRational excluded(c.p_prev + c.p, c.q_prev + c.q);
  return {included, excluded, c.length % 2 == 0 ? 1 : -1};
}

inline FundamentalInterval fundamental_interval(const DigitString& a) {
  return interval_of_matrix(convergent_matrix(a));
}

/// Merges a trailing digit 1 into its predecessor: [..., x, 1] = [..., x+1].
inline DigitString canonicalize(const DigitString& a) {
  if (a.size() < 2 || a.back() != 1) return a;
  std::vector<BigInt> d(a.begin(), a.end() - 1);
  d.back() += 1;
  return DigitString(std::move(d));
}

/// Euclid's algorithm. The result is canonical: its last digit exceeds 1.
inline DigitString digits_of_rational(const BigRational& x) {
  if (x <= 0 || x >= 1) throw DomainError("digits_of_rational requires 0 < x < 1, got " + to_string(x));
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  std::vector<BigInt> digits;
  while (num != 0) {
    BigInt a = den / num;
    BigInt r = den - a * num;
    digits.push_back(std::move(a));
    den = std::move(num);
    num = std::move(r);
  }
  return DigitString(std::move(digits));
}

inline constexpr std::size_t kDefaultMaxDigits = 25;

/// Gauss-map digit extraction for a real x in (0,1). Works for double and for
/// Boost.Multiprecision floating types. Stops after max_digits or once the
/// remainder falls to the type's epsilon, whichever comes first.
template <typename Real>
DigitString digits_of_real(const Real& x, std::size_t max_digits = kDefaultMaxDigits) {
  if (!(x > 0) || !(x < 1)) throw DomainError("digits_of_real requires 0 < x < 1");
  if (max_digits < 1) throw DomainError("max_digits must be at least 1");
  using std::floor;
  const Real floor_eps = std::numeric_limits<Real>::epsilon();
  std::vector<BigInt> digits;
  Real r = x;
  while (digits.size() < max_digits) {
    Real y = Real(1) / r;
    Real a = floor(y);
    if constexpr (std::is_floating_point_v<Real>) {
      digits.emplace_back(a);
    } else {
      digits.push_back(a.template convert_to<BigInt>());
    }
    r = y - a;
    if (!(r > floor_eps)) break;
  }
  return DigitString(std::move(digits));
}

}  // namespace cfsym
