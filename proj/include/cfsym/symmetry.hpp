// include/cfsym/symmetry.hpp — permutation symmetries of digit strings.
//
// A permutation b of a is a nontrivial symmetry when b != a, b != reverse(a)
// and both have the same Gauss-Kuzmin probability. All permutations of a share
// its length, so equal probability is equal chi.

#pragma once

#include "cfsym/chi_kernel.hpp"
#include "cfsym/gk_measure.hpp"
#include "cfsym/types.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cfsym {

inline constexpr std::size_t kDefaultPermutationBound = 10;

namespace detail {

inline BigInt fast_chi(const DigitString& a) {
  if (auto words = a.to_words()) return kernel::chi_words(*words);
  return chi(a).value;
}

inline void check_bound(std::size_t n, std::size_t bound) {
  if (n > bound)
    throw SizeError("string length " + std::to_string(n) + " exceeds the permutation bound " +
                    std::to_string(bound) + " (n! orderings)");
}

inline std::vector<std::uint64_t> checked_digit_set(const std::vector<BigInt>& set, std::size_t bound) {
  if (set.size() < 2) throw DomainError("digit set needs at least 2 elements");
  check_bound(set.size(), bound);
  std::vector<std::uint64_t> words;
  for (const auto& d : set) {
    if (d < 1) throw DomainError("digit " + d.str() + " is not a positive integer");
    if (d > std::numeric_limits<std::uint64_t>::max())
      throw DomainError("digit " + d.str() + " exceeds 64 bits");
    words.push_back(static_cast<std::uint64_t>(d));
  }
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end())
    throw DomainError("digit set contains a repeated digit");
  return words;
}

}  // namespace detail

/// Distinct orderings of the multiset of digits of a, in lexicographic order.
inline std::vector<DigitString> distinct_permutations(const DigitString& a,
                                                      std::size_t bound = kDefaultPermutationBound) {
  detail::check_bound(a.size(), bound);
  std::vector<BigInt> d(a.begin(), a.end());
  std::sort(d.begin(), d.end());
  std::vector<DigitString> out;
  do {
    out.emplace_back(d);
  } while (std::next_permutation(d.begin(), d.end()));
  return out;
}

/// Every permutation of a, other than a and its reverse, with the same
/// Gauss-Kuzmin probability. Sorted lexicographically.
inline std::vector<DigitString> nontrivial_symmetries(const DigitString& a,
                                                      std::size_t bound = kDefaultPermutationBound) {
  detail::check_bound(a.size(), bound);
  const BigInt target = detail::fast_chi(a);
  const DigitString rev = a.reversed();
  std::vector<DigitString> out;
  std::vector<BigInt> d(a.begin(), a.end());
  std::sort(d.begin(), d.end());
  do {
    DigitString b(d);
    if (b == a || b == rev) continue;
    if (detail::fast_chi(b) == target) out.push_back(std::move(b));
  } while (std::next_permutation(d.begin(), d.end()));
  return out;
}

inline bool has_nontrivial_symmetry(const DigitString& a, std::size_t bound = kDefaultPermutationBound) {
  return !nontrivial_symmetries(a, bound).empty();
}

/// Number of distinct Gauss-Kuzmin probabilities over all n! orderings of a
/// set of distinct digits.
inline std::uint64_t nu(const std::vector<BigInt>& digit_set, std::size_t bound = kDefaultPermutationBound) {
  const auto words = detail::checked_digit_set(digit_set, bound);
  auto reps = kernel::representative_chis(words);
  std::vector<BigInt> values;
  values.reserve(reps.size());
  for (auto& r : reps) values.push_back(std::move(r.chi));
  std::sort(values.begin(), values.end());
  return static_cast<std::uint64_t>(std::unique(values.begin(), values.end()) - values.begin());
}

inline bool is_exceptional_set(const std::vector<BigInt>& digit_set,
                               std::size_t bound = kDefaultPermutationBound) {
  return nu(digit_set, bound) < kernel::half_factorial(digit_set.size());
}

/// 1 - nu/(n!/2): the share of reversal classes lost to collisions.
inline BigRational epsilon_defect(const std::vector<BigInt>& digit_set,
                                  std::size_t bound = kDefaultPermutationBound) {
  const auto v = nu(digit_set, bound);
  return BigRational(1) - BigRational(BigInt(v), BigInt(kernel::half_factorial(digit_set.size())));
}

/// Two orderings of one digit set, not reverses of each other, with equal chi.
struct WitnessPair {
  DigitString first;
  DigitString second;
  BigInt chi;
};

/// Collision witnesses of a distinct-digit set: within each group of reversal
/// classes sharing chi, the first representative is paired with every other.
inline std::vector<WitnessPair> collision_witnesses(const std::vector<BigInt>& digit_set,
                                                    std::size_t bound = kDefaultPermutationBound) {
  const auto words = detail::checked_digit_set(digit_set, bound);
  const auto reps = kernel::representative_chis(words);
  std::map<BigInt, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < reps.size(); ++i) groups[reps[i].chi].push_back(i);
  std::vector<WitnessPair> out;
  for (const auto& [value, members] : groups) {
    for (std::size_t k = 1; k < members.size(); ++k) {
      out.push_back({DigitString::from_words(reps[members[0]].ordering),
                     DigitString::from_words(reps[members[k]].ordering), value});
    }
  }
  std::sort(out.begin(), out.end(), [](const WitnessPair& x, const WitnessPair& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });
  return out;
}

struct SymmetryReport {
  DigitString subject;
  std::vector<DigitString> nontrivial_partners;
  std::uint64_t nu = 0;  // distinct probabilities over the distinct orderings
  std::optional<std::uint64_t> half_factorial_bound;  // set for distinct digits
  bool is_exceptional = false;                        // subject has a partner
};

inline SymmetryReport symmetry_report(const DigitString& a, std::size_t bound = kDefaultPermutationBound) {
  SymmetryReport r{a, nontrivial_symmetries(a, bound), 0, std::nullopt, false};
  r.is_exceptional = !r.nontrivial_partners.empty();
  std::set<BigInt> values;
  for (const auto& b : distinct_permutations(a, bound)) values.insert(detail::fast_chi(b));
  r.nu = values.size();
  std::vector<BigInt> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && a.size() >= 2)
    r.half_factorial_bound = kernel::half_factorial(a.size());
  return r;
}

}  // namespace cfsym
