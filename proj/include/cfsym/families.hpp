// include/cfsym/families.hpp — stable strings and the strings with nontrivial
// symmetries built from them.
//
// A string is s-stable when its convergent matrix satisfies p = (s^2+s) q_prev
// (stable is s = 1). Stable strings of every length come from two seeds and
// the step a -> (t, reverse(a), (s^2+s) t), which preserves s-stability.

#pragma once

#include "cfsym/cf_core.hpp"
#include "cfsym/gk_measure.hpp"
#include "cfsym/types.hpp"

namespace cfsym {

enum class FamilyKind { stable, s_stable, a_plus, concluding };

/// A member of one of the constructive families. params[0] is the innermost
/// parameter t1 (the seed's), params[k] is the parameter added by step k.
struct FamilySpec {
  FamilyKind kind = FamilyKind::stable;
  std::size_t length = 2;
  std::vector<BigInt> params;
  BigInt s{1};

  /// Number of free parameters: floor(n/2) for (s-)stable strings, one
  /// fewer for a+ strings (built from a stable string of length n-2), one
  /// for the concluding family.
  std::size_t expected_params() const {
    switch (kind) {
      case FamilyKind::stable:
      case FamilyKind::s_stable:
        return length / 2;
      case FamilyKind::a_plus:
        return length >= 4 ? (length - 2) / 2 : 0;
      case FamilyKind::concluding:
        return 1;
    }
    return 0;
  }

  void validate() const {
    if (kind == FamilyKind::concluding && length != 4) throw DomainError("concluding family has length 4");
    if ((kind == FamilyKind::stable || kind == FamilyKind::s_stable) && length < 2)
      throw DomainError("stable families start at length 2");
    if (kind == FamilyKind::a_plus && length < 4) throw DomainError("a+ families start at length 4");
    if (params.size() != expected_params())
      throw DomainError("family of length " + std::to_string(length) + " takes " +
                        std::to_string(expected_params()) + " parameters, got " + std::to_string(params.size()));
    for (const auto& t : params)
      if (t < 1) throw DomainError("family parameters must be positive");
    if (s < 1) throw DomainError("s must be positive");
  }
};

inline bool is_s_stable(const DigitString& a, const BigInt& s) {
  if (s < 1) throw DomainError("s must be positive");
  const auto c = convergent_matrix(a);
  return c.p == (s * s + s) * c.q_prev;
}

inline bool is_stable(const DigitString& a) { return is_s_stable(a, BigInt(1)); }

/// (t, reverse(a), (s^2+s) t).
inline DigitString stable_step(const DigitString& a, const BigInt& t, const BigInt& s = 1) {
  std::vector<BigInt> d;
  d.reserve(a.size() + 2);
  d.push_back(t);
  d.insert(d.end(), a.digits().rbegin(), a.digits().rend());
  d.push_back((s * s + s) * t);
  return DigitString(std::move(d));
}

/// Member of the (s-)stable family of the given length. Even lengths grow from
/// (t, k t), odd lengths from (t, k - 1, k t + 1), with k = s^2 + s. The
/// result is checked against the defining identity before it is returned.
inline DigitString stable_family(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::stable && spec.kind != FamilyKind::s_stable)
    throw DomainError("stable_family needs a stable or s_stable spec");
  spec.validate();
  const BigInt s = spec.kind == FamilyKind::stable ? BigInt(1) : spec.s;
  const BigInt k = s * s + s;
  const BigInt& t1 = spec.params[0];
  DigitString a = spec.length % 2 == 0 ? DigitString(std::vector<BigInt>{t1, k * t1})
                                       : DigitString(std::vector<BigInt>{t1, k - 1, k * t1 + 1});
  for (std::size_t i = 1; i < spec.params.size(); ++i) a = stable_step(a, spec.params[i], s);
  if (!is_s_stable(a, s))
    throw std::logic_error("constructed string " + a.str() + " is not " + s.str() + "-stable");
  return a;
}

/// a+ = (2, 1, a1, ..., a_{n-1}, a_n + 1) and its partner
/// (2, a_n + 1, a_{n-1}, ..., a1, 1), which share chi whenever a is stable.
struct APlusPair {
  DigitString a_plus;
  DigitString partner;
};

inline APlusPair a_plus(const DigitString& a) {
  if (!is_stable(a)) throw DomainError("a_plus requires a stable string, got " + a.str());
  const std::size_t n = a.size();
  std::vector<BigInt> plus{BigInt(2), BigInt(1)};
  plus.insert(plus.end(), a.begin(), a.end());
  plus.back() += 1;
  std::vector<BigInt> partner{BigInt(2), a.back() + 1};
  for (std::size_t i = n - 1; i-- > 0;) partner.push_back(a[i]);
  partner.emplace_back(1);
  return {DigitString(std::move(plus)), DigitString(std::move(partner))};
}

/// Member of the a+ family of the given length (>= 4), built from the stable
/// string of length n - 2 with the same parameters.
inline APlusPair a_plus_family(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::a_plus) throw DomainError("a_plus_family needs an a_plus spec");
  spec.validate();
  FamilySpec base{FamilyKind::stable, spec.length - 2, spec.params, BigInt(1)};
  return a_plus(stable_family(base));
}

/// (t+1, 1, t+3, t+2) and (t+2, 1, t+1, t+3); chi equality is asserted.
inline std::pair<DigitString, DigitString> concluding_family(const BigInt& t) {
  if (t < 1) throw DomainError("concluding family parameter must be positive");
  DigitString a(std::vector<BigInt>{t + 1, BigInt(1), t + 3, t + 2});
  DigitString b(std::vector<BigInt>{t + 2, BigInt(1), t + 1, t + 3});
  if (chi(a) != chi(b)) throw std::logic_error("concluding family identity failed at t = " + t.str());
  return {std::move(a), std::move(b)};
}

/// Whether b is a nontrivial symmetry of a: a permutation of a, neither a nor
/// its reverse, with equal Gauss-Kuzmin probability.
inline bool is_nontrivial_symmetry_pair(const DigitString& a, const DigitString& b) {
  if (a.size() != b.size()) return false;
  std::vector<BigInt> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x != y) return false;
  if (b == a || b == a.reversed()) return false;
  return measure_equal(a, b);
}

}  // namespace cfsym
