// include/cfsym/types.hpp — digit strings, big numbers and the error types
// shared by every cfsym module.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfsym {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a configured size or work budget.
class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

/// A nonempty finite sequence of positive integers (continued fraction
/// partial quotients a1, ..., an with a0 = 0 implied).
class DigitString {
 public:
  explicit DigitString(std::vector<BigInt> digits) : digits_(std::move(digits)) {
    validate();
  }
  DigitString(std::initializer_list<std::uint64_t> digits) {
    digits_.reserve(digits.size());
    for (auto d : digits) digits_.emplace_back(d);
    validate();
  }

  static DigitString from_words(std::span<const std::uint64_t> words) {
    std::vector<BigInt> d(words.begin(), words.end());
    return DigitString(std::move(d));
  }

  std::size_t size() const noexcept { return digits_.size(); }
  const BigInt& operator[](std::size_t i) const { return digits_[i]; }
  const BigInt& front() const { return digits_.front(); }
  const BigInt& back() const { return digits_.back(); }
  const std::vector<BigInt>& digits() const noexcept { return digits_; }
  auto begin() const noexcept { return digits_.begin(); }
  auto end() const noexcept { return digits_.end(); }

  bool odd_length() const noexcept { return digits_.size() % 2 == 1; }

  DigitString reversed() const {
    return DigitString(std::vector<BigInt>(digits_.rbegin(), digits_.rend()));
  }

  bool is_palindrome() const { return std::equal(begin(), end(), digits_.rbegin()); }

  /// Machine-word view, empty when some digit does not fit in 64 bits.
  std::optional<std::vector<std::uint64_t>> to_words() const {
    std::vector<std::uint64_t> out;
    out.reserve(digits_.size());
    for (const auto& d : digits_) {
      if (d > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
      out.push_back(static_cast<std::uint64_t>(d));
    }
    return out;
  }

  std::string str(char sep = ',') const {
    std::string s;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (i) s += sep;
      s += digits_[i].str();
    }
    return s;
  }

  friend bool operator==(const DigitString&, const DigitString&) = default;
  friend auto operator<=>(const DigitString& a, const DigitString& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end(),
                                                  [](const BigInt& x, const BigInt& y) {
                                                    return x.compare(y) <=> 0;
                                                  });
  }

  friend std::ostream& operator<<(std::ostream& os, const DigitString& a) {
    return os << '(' << a.str() << ')';
  }

 private:
  void validate() const {
    if (digits_.empty()) throw DomainError("digit string must be nonempty");
    for (const auto& d : digits_)
      if (d < 1) throw DomainError("digit " + d.str() + " is not a positive integer");
  }

  std::vector<BigInt> digits_;
};

/// Parses "3,1,4" into a digit string. Whitespace around entries is ignored.
inline DigitString parse_digits(const std::string& text) {
  std::vector<BigInt> digits;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw DomainError("empty entry in digit list '" + text + "'");
    item = item.substr(first, last - first + 1);
    if (!std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw DomainError("'" + item + "' is not a positive integer");
    digits.emplace_back(item);
  }
  if (!text.empty() && text.back() == ',') throw DomainError("trailing comma in '" + text + "'");
  return DigitString(std::move(digits));
}

}  // namespace cfsym
