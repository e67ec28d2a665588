#include "cfsym/cf_core.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

using namespace cfsym;

namespace {

DigitString S(std::initializer_list<std::uint64_t> d) { return DigitString(d); }

void expect_matches_oracle(const DigitString& a, const ConvergentMatrix& c) {
  const auto m = oracle::matrix(a.digits());
  EXPECT_EQ(c.p_prev, m[0]) << a;
  EXPECT_EQ(c.p, m[1]) << a;
  EXPECT_EQ(c.q_prev, m[2]) << a;
  EXPECT_EQ(c.q, m[3]) << a;
  EXPECT_EQ(c.length, a.size());
}

}  // namespace

TEST(DigitString, ParsesAndPrints) {
  const auto a = parse_digits("3,1,4");
  EXPECT_EQ(a, S({3, 1, 4}));
  EXPECT_EQ(a.str(), "3,1,4");
  std::ostringstream os;
  os << a;
  EXPECT_EQ(os.str(), "(3,1,4)");
  EXPECT_EQ(parse_digits(" 12 , 7 "), S({12, 7}));
  EXPECT_EQ(parse_digits("123456789012345678901234567890")[0], BigInt("123456789012345678901234567890"));
}

TEST(DigitString, RejectsBadInput) {
  EXPECT_THROW(parse_digits(""), DomainError);
  EXPECT_THROW(parse_digits("3,0,4"), DomainError);
  EXPECT_THROW(parse_digits("3,-1"), DomainError);
  EXPECT_THROW(parse_digits("3,,4"), DomainError);
  EXPECT_THROW(parse_digits("3,x"), DomainError);
  EXPECT_THROW(parse_digits("3,4,"), DomainError);
  EXPECT_THROW(DigitString(std::vector<BigInt>{}), DomainError);
}

TEST(DigitString, ReverseAndPalindrome) {
  EXPECT_EQ(S({3, 1, 4}).reversed(), S({4, 1, 3}));
  EXPECT_TRUE(S({2, 5, 2}).is_palindrome());
  EXPECT_FALSE(S({2, 5}).is_palindrome());
}

TEST(ConvergentMatrix, WorkedExamples) {
  const auto c = convergent_matrix(S({3, 1, 4}));
  EXPECT_EQ(c, (ConvergentMatrix{1, 5, 4, 19, 3}));
  EXPECT_EQ(evaluate(S({3, 1, 4})), BigRational(5, 19));
  EXPECT_EQ(convergent_matrix(S({2, 1, 1, 3})), (ConvergentMatrix{2, 7, 5, 18, 4}));
  EXPECT_EQ(convergent_matrix(S({7})), (ConvergentMatrix{0, 1, 1, 7, 1}));
}

TEST(ConvergentMatrix, AgreesWithDirectProduct) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const DigitString a(oracle::random_digits(rng));
    expect_matches_oracle(a, convergent_matrix(a));
    EXPECT_EQ(evaluate(a), oracle::value(a.digits())) << a;
  }
}

TEST(ConvergentMatrix, DeterminantAndTranspose) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const DigitString a(oracle::random_digits(rng));
    const auto c = convergent_matrix(a);
    EXPECT_EQ(c.determinant(), a.size() % 2 ? 1 : -1) << a;
    EXPECT_EQ(convergent_matrix(a.reversed()), c.transposed()) << a;
  }
}

TEST(ExtendMatrix, EachModeMatchesTheExtendedString) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const std::vector<BigInt> d = oracle::random_digits(rng, 8);
    const BigInt t = rng() % 1000 + 1;
    const DigitString a(d);
    const auto c = convergent_matrix(a);

    std::vector<BigInt> appended = d;
    appended.push_back(t);
    expect_matches_oracle(DigitString(appended), extend_matrix(c, t, ExtendMode::append));

    std::vector<BigInt> prepended{t};
    prepended.insert(prepended.end(), d.begin(), d.end());
    expect_matches_oracle(DigitString(prepended), extend_matrix(c, t, ExtendMode::prepend));

    std::vector<BigInt> to_reverse{t};
    to_reverse.insert(to_reverse.end(), d.rbegin(), d.rend());
    expect_matches_oracle(DigitString(to_reverse), extend_matrix(c, t, ExtendMode::prepend_to_reverse));
  }
  EXPECT_THROW(extend_matrix(convergent_matrix(S({1})), 0, ExtendMode::append), DomainError);
}

TEST(FundamentalInterval, WorkedExamples) {
  const auto odd = fundamental_interval(S({3, 1, 4}));
  EXPECT_EQ(odd.str(), "(6/23,5/19]");
  EXPECT_EQ(odd.orientation, -1);
  EXPECT_EQ(odd.width(), BigRational(1, 19 * 23));
  EXPECT_TRUE(odd.contains(BigRational(5, 19)));
  EXPECT_FALSE(odd.contains(BigRational(6, 23)));

  const auto also_odd = fundamental_interval(S({1, 3, 4}));
  EXPECT_EQ(also_odd.str(), "(16/21,13/17]");
  EXPECT_TRUE(also_odd.contains(BigRational(13, 17)));
  EXPECT_FALSE(also_odd.contains(BigRational(16, 21)));

  // C(2,1,1,3) = (2,7;5,18).
  const auto even = fundamental_interval(S({2, 1, 1, 3}));
  EXPECT_EQ(even.str(), "[7/18,9/23)");
  EXPECT_EQ(even.orientation, 1);
  EXPECT_EQ(even.width(), BigRational(1, 18 * 23));
  EXPECT_TRUE(even.contains(BigRational(7, 18)));
  EXPECT_FALSE(even.contains(BigRational(9, 23)));
}

TEST(FundamentalInterval, ContainsExactlyTheNumbersWithThatPrefix) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    const auto d = oracle::random_digits(rng, 6, 50);
    const DigitString a(d);
    const auto iv = fundamental_interval(a);
    // A point with a longer expansion extending a lies inside.
    auto longer = d;
    longer.push_back(rng() % 9 + 1);
    longer.push_back(rng() % 9 + 2);
    EXPECT_TRUE(iv.contains(oracle::value(longer))) << a;
    // So does the value of a itself, canonically expanded.
    EXPECT_TRUE(iv.contains(oracle::value(d))) << a;
    // Neighbours with a different last digit do not.
    auto other = d;
    other.back() += 1;
    other.push_back(2);
    EXPECT_FALSE(iv.contains(oracle::value(other))) << a;
    EXPECT_EQ(iv.width(), BigRational(BigInt(1), oracle::matrix(d)[3] * (oracle::matrix(d)[2] + oracle::matrix(d)[3])));
  }
}

TEST(Canonicalize, MergesTrailingOne) {
  EXPECT_EQ(canonicalize(S({3, 1, 1})), S({3, 2}));
  EXPECT_EQ(canonicalize(S({3, 1, 4})), S({3, 1, 4}));
  EXPECT_EQ(canonicalize(S({1})), S({1}));
  EXPECT_EQ(canonicalize(S({1, 1})), S({2}));
}

TEST(DigitsOfRational, WorkedExamplesAndErrors) {
  EXPECT_EQ(digits_of_rational(BigRational(5, 19)), S({3, 1, 4}));
  EXPECT_EQ(digits_of_rational(BigRational(1, 2)), S({2}));
  EXPECT_THROW(digits_of_rational(BigRational(0)), DomainError);
  EXPECT_THROW(digits_of_rational(BigRational(1)), DomainError);
  EXPECT_THROW(digits_of_rational(BigRational(3, 2)), DomainError);
  EXPECT_THROW(digits_of_rational(BigRational(-1, 2)), DomainError);
}

TEST(DigitsOfRational, AgreesWithEuclidOracle) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 2000; ++i) {
    const BigInt den = BigInt(rng() % 1'000'000'000) + 2;
    const BigInt num = BigInt(rng()) % (den - 1) + 1;
    const BigRational x(num, den);
    EXPECT_EQ(digits_of_rational(x).digits(),
              oracle::expand(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x)));
  }
}

TEST(DigitsOfReal, HighPrecisionPointsInsideAnInterval) {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  // Just below 5/19 lies inside (6/23,5/19], and its expansion starts (3,1,4).
  const Dec x = Dec(5) / 19 - Dec("1e-30");
  const auto d = digits_of_real(x, 3);
  EXPECT_EQ(d, S({3, 1, 4}));
  // Just above 5/19 lies outside I((3,1,4)); its expansion is (3,1,3,1,...).
  const auto above = digits_of_real(Dec(5) / 19 + Dec("1e-30"), 4);
  EXPECT_EQ(above, S({3, 1, 3, 1}));
}

TEST(DigitsOfReal, GoldenRatioAndPrecisionFloor) {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  const Dec phi = (sqrt(Dec(5)) - 1) / 2;
  const auto d = digits_of_real(phi, 40);
  EXPECT_EQ(d.size(), 40u);
  for (const auto& x : d) EXPECT_EQ(x, 1);
  EXPECT_EQ(digits_of_real((std::sqrt(5.0) - 1) / 2, 6), S({1, 1, 1, 1, 1, 1}));
  const auto dd = digits_of_real((std::sqrt(5.0) - 1) / 2);
  EXPECT_EQ(dd.size(), kDefaultMaxDigits);
  for (std::size_t i = 0; i < 15; ++i) EXPECT_EQ(dd[i], 1);
  EXPECT_EQ(digits_of_real(0.5, 5), S({2}));
  EXPECT_EQ(digits_of_real(0.25), S({4}));
  EXPECT_THROW(digits_of_real(0.0), DomainError);
  EXPECT_THROW(digits_of_real(1.0), DomainError);
}

TEST(DigitsOfReal, DoubleAgreesWithExactExpansionForTheLeadingDigits) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const auto approx = digits_of_real(x, 8);
    // The double x is an exact dyadic rational; its expansion is the oracle.
    int e = 0;
    const double m = std::frexp(x, &e);
    const BigInt num = static_cast<std::int64_t>(std::ldexp(m, 53));
    const BigInt den = BigInt(1) << (53 - e);
    const auto exact = oracle::expand(num, den);
    // Compare while the convergent denominators stay small enough for the
    // rounding error of the Gauss map to be harmless.
    BigInt q_prev = 1, q = 0;
    for (std::size_t k = 0; k + 1 < approx.size() && k + 1 < exact.size(); ++k) {
      ASSERT_EQ(approx[k], exact[k]) << x;
      const BigInt next = exact[k] * q + q_prev;
      q_prev = q;
      q = next;
      if (q > 10'000) break;
    }
  }
}
