// include/cfsym/verify.hpp — batch checks of the structural identities, run
// by `cfsym verify` and the acceptance suite.

#pragma once

#include "cfsym/cf_core.hpp"
#include "cfsym/families.hpp"
#include "cfsym/gk_measure.hpp"
#include "cfsym/symmetry.hpp"

#include <random>

namespace cfsym::verify {

struct CheckResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;  // empty when every case passed

  bool ok() const { return failures == 0 && cases > 0; }

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

/// Random strings of length 1..max_length. Half of the digits are small
/// (1..10), the rest log-uniform up to max_digit, so that short and huge
/// partial quotients both appear.
class StringSampler {
 public:
  StringSampler(std::uint64_t seed, std::size_t max_length = 12, std::uint64_t max_digit = 1'000'000)
      : rng_(seed), max_length_(max_length), max_digit_(max_digit) {}

  DigitString operator()() {
    std::uniform_int_distribution<std::size_t> len(1, max_length_);
    std::vector<BigInt> d(len(rng_));
    for (auto& x : d) x = digit();
    return DigitString(std::move(d));
  }

  std::uint64_t digit() {
    if (std::bernoulli_distribution(0.5)(rng_))
      return std::uniform_int_distribution<std::uint64_t>(1, std::min<std::uint64_t>(10, max_digit_))(rng_);
    const double hi = std::log(static_cast<double>(max_digit_) + 1.0);
    const double v = std::exp(std::uniform_real_distribution<double>(0.0, hi)(rng_));
    return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(v), 1, max_digit_);
  }

 private:
  std::mt19937_64 rng_;
  std::size_t max_length_;
  std::uint64_t max_digit_;
};

/// No string of length 3 with digits <= max_digit has a nontrivial symmetry.
inline CheckResult theorem3i(std::uint64_t max_digit = 40) {
  CheckResult r{"theorem3i: no length-3 string has a nontrivial symmetry"};
  for (std::uint64_t a = 1; a <= max_digit; ++a)
    for (std::uint64_t b = 1; b <= max_digit; ++b)
      for (std::uint64_t c = 1; c <= max_digit; ++c) {
        ++r.cases;
        const std::uint64_t s[3] = {a, b, c};
        const BigInt target = kernel::chi_words(s);
        const std::uint64_t perms[4][3] = {{a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}};
        // The remaining two orderings are s itself and its reverse.
        for (const auto& p : perms) {
          const bool same_multiset_as_trivial = (p[0] == a && p[1] == b && p[2] == c) ||
                                                (p[0] == c && p[1] == b && p[2] == a);
          if (same_multiset_as_trivial) continue;
          if (kernel::chi_words(p) == target) {
            r.fail("(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
            break;
          }
        }
      }
  return r;
}

/// Closed forms of the stable families for n = 2..7, written out digit by
/// digit; params[0] is t1.
inline DigitString stable_table_pattern(std::size_t n, const std::vector<BigInt>& t) {
  auto D = [](std::initializer_list<BigInt> xs) { return DigitString(std::vector<BigInt>(xs)); };
  switch (n) {
    case 2: return D({t[0], 2 * t[0]});
    case 3: return D({t[0], 1, 2 * t[0] + 1});
    case 4: return D({t[1], 2 * t[0], t[0], 2 * t[1]});
    case 5: return D({t[1], 2 * t[0] + 1, 1, t[0], 2 * t[1]});
    case 6: return D({t[2], 2 * t[1], t[0], 2 * t[0], t[1], 2 * t[2]});
    case 7: return D({t[2], 2 * t[1], t[0], 1, 2 * t[0] + 1, t[1], 2 * t[2]});
    default: throw DomainError("table patterns cover n = 2..7");
  }
}

namespace detail {

template <typename Fn>
void for_each_tuple(std::size_t k, std::uint64_t max, Fn&& fn) {
  std::vector<BigInt> t(k, 1);
  while (true) {
    fn(t);
    std::size_t i = 0;
    while (i < k && t[i] == max) t[i++] = 1;
    if (i == k) return;
    t[i] += 1;
  }
}

}  // namespace detail

/// Stable table patterns, a+ symmetries, the concluding family and the
/// s-stable seeds with their inductive step.
inline std::vector<CheckResult> families(std::uint64_t max_param = 50, std::uint64_t max_t = 100,
                                         std::uint64_t max_s = 10, std::uint64_t max_s_t = 50) {
  CheckResult stable{"families: table patterns are stable and match the generator"};
  CheckResult plus{"families: a+ partner is a nontrivial symmetry"};
  for (std::size_t n = 2; n <= 7; ++n) {
    detail::for_each_tuple(n / 2, max_param, [&](const std::vector<BigInt>& t) {
      ++stable.cases;
      const auto a = stable_table_pattern(n, t);
      if (!is_stable(a) || stable_family({FamilyKind::stable, n, t}) != a) stable.fail(a.str());
      ++plus.cases;
      const auto pair = a_plus(a);
      if (!is_nontrivial_symmetry_pair(pair.a_plus, pair.partner)) plus.fail(pair.a_plus.str());
    });
  }
  CheckResult concl{"families: concluding family (t+1,1,t+3,t+2) ~ (t+2,1,t+1,t+3)"};
  for (std::uint64_t t = 1; t <= max_t; ++t) {
    ++concl.cases;
    try {
      const auto [a, b] = concluding_family(t);
      if (!is_nontrivial_symmetry_pair(a, b)) concl.fail("t=" + std::to_string(t));
    } catch (const std::logic_error&) {
      concl.fail("t=" + std::to_string(t));
    }
  }
  CheckResult sstable{"families: s-stable seeds and inductive step"};
  for (std::uint64_t s = 1; s <= max_s; ++s) {
    const BigInt k = BigInt(s) * s + s;
    for (std::uint64_t t1 = 1; t1 <= max_s_t; ++t1) {
      const DigitString even(std::vector<BigInt>{t1, k * t1});
      const DigitString odd(std::vector<BigInt>{t1, k - 1, k * t1 + 1});
      for (const auto* seed : {&even, &odd}) {
        ++sstable.cases;
        if (!is_s_stable(*seed, s)) sstable.fail("s=" + std::to_string(s) + " seed " + seed->str());
        for (std::uint64_t t = 1; t <= max_s_t; ++t) {
          ++sstable.cases;
          const auto next = stable_step(*seed, t, s);
          if (!is_s_stable(next, s)) sstable.fail("s=" + std::to_string(s) + " " + next.str());
        }
      }
    }
  }
  return {stable, plus, concl, sstable};
}

/// Determinant, transpose and width laws, reversal invariance of chi and the
/// rational round trip on random strings, plus the exact normalization of the
/// single-digit probabilities for every A <= max_A.
inline std::vector<CheckResult> invariants(std::uint64_t count = 100'000, std::uint64_t seed = 1,
                                           std::uint64_t max_A = 10'000) {
  CheckResult det{"invariants: det C(a) = (-1)^(n-1)"};
  CheckResult transpose{"invariants: C(reverse(a)) is C(a) with p and q_prev swapped"};
  CheckResult reversal{"invariants: chi(a) = chi(reverse(a))"};
  CheckResult width{"invariants: |I(a)| = 1/(q (q_prev + q))"};
  CheckResult round{"invariants: digits_of_rational(evaluate(a)) = canonicalize(a)"};
  StringSampler sample(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto a = sample();
    const auto c = convergent_matrix(a);
    const auto rev = a.reversed();
    const auto cr = convergent_matrix(rev);
    ++det.cases;
    if (c.determinant() != (a.size() % 2 == 1 ? 1 : -1)) det.fail(a.str());
    ++transpose.cases;
    if (cr != c.transposed()) transpose.fail(a.str());
    ++reversal.cases;
    if (chi_of_matrix(c) != chi_of_matrix(cr)) reversal.fail(a.str());
    ++width.cases;
    if (interval_of_matrix(c).width() != BigRational(BigInt(1), c.q * (c.q_prev + c.q))) width.fail(a.str());
    if (a.size() == 1 && a[0] == 1) continue;  // [1] = 1 lies outside (0,1)
    ++round.cases;
    if (digits_of_rational(BigRational(c.p, c.q)) != canonicalize(a)) round.fail(a.str());
  }
  CheckResult norm{"invariants: sum_{a<=A} P((a)) = log2(2(A+1)/(A+2))"};
  LogRatio sum;
  for (std::uint64_t A = 1; A <= max_A; ++A) {
    sum += pgk_exact(DigitString{A});
    ++norm.cases;
    if (sum != LogRatio(BigRational(BigInt(2 * (A + 1)), BigInt(A + 2)))) norm.fail("A=" + std::to_string(A));
  }
  return {det, transpose, reversal, width, round, norm};
}

}  // namespace cfsym::verify
