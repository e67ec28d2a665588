// include/cfsym/gk_measure.hpp — exact Gauss-Kuzmin probabilities of digit
// strings and intervals.
//
// A probability log2(num/den) is carried as the exact rational num/den, so
// equality of measures reduces to integer comparison and sums of measures to
// products of rationals.

#pragma once

#include "cfsym/cf_core.hpp"
#include "cfsym/types.hpp"

#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace cfsym {

enum class Parity { even, odd };

inline Parity parity_of(std::size_t length) { return length % 2 == 0 ? Parity::even : Parity::odd; }

/// chi(a) = (p + q)(q_prev + q), paired with the length parity. Together they
/// determine the Gauss-Kuzmin probability of a.
struct CharacteristicNumber {
  BigInt value;
  Parity parity = Parity::odd;

  friend bool operator==(const CharacteristicNumber&, const CharacteristicNumber&) = default;
};

/// The real number log2(num/den), num >= den > 0, num/den in lowest terms.
class LogRatio {
 public:
  LogRatio() = default;
  LogRatio(BigInt num, BigInt den) : LogRatio(BigRational(std::move(num), std::move(den))) {}
  explicit LogRatio(const BigRational& argument) : argument_(argument) {
    if (argument_ < 1) throw DomainError("log ratio argument must be >= 1, got " + to_string(argument_));
  }

  BigInt num() const { return boost::multiprecision::numerator(argument_); }
  BigInt den() const { return boost::multiprecision::denominator(argument_); }
  const BigRational& argument() const noexcept { return argument_; }
  bool is_zero() const { return argument_ == 1; }

  /// log2(x) + log2(y) = log2(x*y).
  friend LogRatio operator+(const LogRatio& x, const LogRatio& y) {
    return LogRatio(x.argument_ * y.argument_);
  }
  LogRatio& operator+=(const LogRatio& y) {
    argument_ *= y.argument_;
    return *this;
  }
  /// Difference; requires x >= y.
  friend LogRatio operator-(const LogRatio& x, const LogRatio& y) {
    return LogRatio(x.argument_ / y.argument_);
  }

  friend bool operator==(const LogRatio&, const LogRatio&) = default;
  friend bool operator<(const LogRatio& x, const LogRatio& y) { return x.argument_ < y.argument_; }

  /// log2(num/den) rounded to nearest with the given number of significant
  /// bits (1..53), evaluated with a 332-bit working precision.
  double to_double(int precision_bits = 53) const {
    if (precision_bits < 1 || precision_bits > 53)
      throw DomainError("precision_bits must lie in [1, 53]");
    using Wide = boost::multiprecision::cpp_bin_float_100;
    const Wide v = high_precision<Wide>();
    if (v == 0) return 0.0;
    int exponent = 0;
    Wide mantissa = frexp(v, &exponent);  // v = mantissa * 2^exponent, mantissa in [0.5, 1)
    Wide scaled = ldexp(mantissa, precision_bits);
    Wide rounded = floor(scaled);
    Wide frac = scaled - rounded;
    if (frac > Wide(0.5) || (frac == Wide(0.5) && fmod(rounded, Wide(2)) != 0)) rounded += 1;
    return std::ldexp(rounded.convert_to<double>(), exponent - precision_bits);
  }

  /// Decimal rendering with the given number of significant digits.
  std::string decimal(int significant_digits = 17) const {
    using Wide = boost::multiprecision::cpp_bin_float_100;
    return high_precision<Wide>().str(significant_digits, std::ios_base::fmtflags(0));
  }

  std::string str() const { return "log2(" + num().str() + "/" + den().str() + ")"; }

  template <typename Wide>
  Wide high_precision() const {
    const Wide excess = Wide(num() - den()) / Wide(den());
    return boost::math::log1p(excess) / log(Wide(2));
  }

 private:
  BigRational argument_{1};
};

inline CharacteristicNumber chi_of_matrix(const ConvergentMatrix& c) {
  return {(c.p + c.q) * (c.q_prev + c.q), parity_of(c.length)};
}

inline CharacteristicNumber chi(const DigitString& a) { return chi_of_matrix(convergent_matrix(a)); }

/// Even length gives log2((chi+1)/chi); odd length gives log2(chi/(chi-1)).
inline LogRatio pgk_of_chi(const CharacteristicNumber& c) {
  if (c.parity == Parity::even) return LogRatio(c.value + 1, c.value);
  return LogRatio(c.value, c.value - 1);
}

inline LogRatio pgk_exact(const DigitString& a) { return pgk_of_chi(chi(a)); }

inline double pgk_float(const DigitString& a, int precision_bits = 53) {
  return pgk_exact(a).to_double(precision_bits);
}

inline std::string pgk_decimal(const DigitString& a, int significant_digits = 17) {
  return pgk_exact(a).decimal(significant_digits);
}

/// Gauss-Kuzmin measure of [lo, hi], i.e. log2((1+hi)/(1+lo)).
inline LogRatio gk_measure_of_interval(const BigRational& lo, const BigRational& hi) {
  if (lo < 0 || hi > 1) throw DomainError("interval endpoints must lie in [0,1]");
  if (lo > hi) throw DomainError("interval endpoints out of order: " + to_string(lo) + " > " + to_string(hi));
  return LogRatio((1 + hi) / (1 + lo));
}

inline LogRatio gk_measure_of_interval(const FundamentalInterval& iv) {
  return gk_measure_of_interval(iv.lo(), iv.hi());
}

/// Exact equality of Gauss-Kuzmin probabilities. Same-parity strings compare
/// by chi alone; mixed parities fall back to the exact log arguments.
inline bool measure_equal(const DigitString& a, const DigitString& b) {
  const auto ca = chi(a);
  const auto cb = chi(b);
  if (ca.parity == cb.parity) return ca.value == cb.value;
  return pgk_of_chi(ca) == pgk_of_chi(cb);
}

}  // namespace cfsym
