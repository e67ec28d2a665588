// include/cfsym/chi_kernel.hpp — machine-word characteristic numbers for the
// hot loops (census, permutation scans).
//
// Each digit set is first classified by a magnitude bound: q <= prod(ai + 1)
// and chi <= 4 q^2. Sets whose bound fits in 64 or 128 bits run on native
// words; anything larger is promoted to BigInt, so no result ever depends on
// wrapped arithmetic.

#pragma once

#include "cfsym/types.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace cfsym::kernel {

using u128 = unsigned __int128;

enum class Width { w64, w128, big };

/// Smallest word width that provably holds chi for every ordering of digits.
inline Width width_for(std::span<const std::uint64_t> digits) {
  u128 bound = 1;
  for (auto d : digits) {
    const u128 factor = static_cast<u128>(d) + 1;
    if (__builtin_mul_overflow(bound, factor, &bound)) return Width::big;
  }
  if (bound < (u128{1} << 31)) return Width::w64;
  if (bound < (u128{1} << 62)) return Width::w128;
  return Width::big;
}

/// chi of a single ordering; Word must be wide enough (see width_for).
template <typename Word>
Word chi_of(std::span<const std::uint64_t> digits) {
  Word pp = 0, p = 1, qp = 1, q = Word(digits[0]);
  for (std::size_t i = 1; i < digits.size(); ++i) {
    const Word d = Word(digits[i]);
    Word np = pp + d * p;
    Word nq = qp + d * q;
    pp = p;
    qp = q;
    p = np;
    q = nq;
  }
  return (p + q) * (qp + q);
}

/// chi as a BigInt, choosing the fastest safe width.
inline BigInt chi_words(std::span<const std::uint64_t> digits) {
  switch (width_for(digits)) {
    case Width::w64:
      return BigInt(chi_of<std::uint64_t>(digits));
    case Width::w128: {
      const u128 v = chi_of<u128>(digits);
      BigInt hi = BigInt(static_cast<std::uint64_t>(v >> 64));
      return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
    }
    case Width::big:
      break;
  }
  return chi_of<BigInt>(digits);
}

/// Enumerates one ordering from every reversal pair of a set of pairwise
/// distinct digits (the one whose first digit is smaller than its last), in
/// lexicographic order when the input is sorted. Matrices are extended
/// incrementally along the shared prefix.
template <typename Word>
class ReversalClassScanner {
 public:
  static constexpr std::size_t kMaxLength = 16;

  /// Calls visit(chi, ordering) for each representative; stops early and
  /// returns false as soon as visit returns false.
  template <typename Visit>
  bool scan(std::span<const std::uint64_t> digits, Visit&& visit) {
    n_ = digits.size();
    if (n_ < 2 || n_ > kMaxLength) throw SizeError("reversal-class scan supports lengths 2..16");
    digits_.assign(digits.begin(), digits.end());
    used_.assign(n_, false);
    order_.assign(n_, 0);
    frames_.resize(n_);
    return descend(0, visit);
  }

 private:
  template <typename Visit>
  bool descend(std::size_t level, Visit& visit) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (used_[i]) continue;
      const std::uint64_t d = digits_[i];
      if (level == n_ - 1 && d < order_[0]) continue;
      order_[level] = d;
      auto& m = frames_[level];
      if (level == 0) {
        m = {Word(0), Word(1), Word(1), Word(d)};
      } else {
        const auto& prev = frames_[level - 1];
        m[0] = prev[1];
        m[1] = prev[0] + Word(d) * prev[1];
        m[2] = prev[3];
        m[3] = prev[2] + Word(d) * prev[3];
      }
      if (level == n_ - 1) {
        const Word chi = (m[1] + m[3]) * (m[2] + m[3]);
        if (!visit(chi, std::span<const std::uint64_t>(order_))) return false;
        continue;
      }
      used_[i] = true;
      const bool keep_going = descend(level + 1, visit);
      used_[i] = false;
      if (!keep_going) return false;
    }
    return true;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> digits_;
  std::vector<bool> used_;
  std::vector<std::uint64_t> order_;
  std::vector<std::array<Word, 4>> frames_;
};

/// Open-addressing set of native words with O(1) clear via generation stamps.
template <typename Word>
class WordSet {
 public:
  void reset(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 4 * expected) cap <<= 1;
    if (cap != keys_.size()) {
      keys_.assign(cap, 0);
      stamps_.assign(cap, 0);
      generation_ = 0;
    }
    mask_ = cap - 1;
    if (++generation_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      generation_ = 1;
    }
  }

  /// Returns false when the key was already present.
  bool insert(Word key) {
    std::size_t h = hash(key) & mask_;
    while (stamps_[h] == generation_) {
      if (keys_[h] == key) return false;
      h = (h + 1) & mask_;
    }
    stamps_[h] = generation_;
    keys_[h] = key;
    return true;
  }

 private:
  static std::size_t hash(Word key) {
    std::uint64_t x = static_cast<std::uint64_t>(key);
    if constexpr (sizeof(Word) > 8) x ^= static_cast<std::uint64_t>(key >> 64) * 0x9E3779B97F4A7C15ull;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }

  std::vector<Word> keys_;
  std::vector<std::uint32_t> stamps_;
  std::uint32_t generation_ = 0;
  std::size_t mask_ = 0;
};

inline std::uint64_t half_factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 3; i <= n; ++i) f *= i;
  return f;  // n!/2 for n >= 2
}

/// Decides whether a set of distinct digits is exceptional (two orderings
/// outside one reversal pair share chi), stopping at the first collision.
class ExceptionalTest {
 public:
  bool operator()(std::span<const std::uint64_t> sorted_digits) {
    switch (width_for(sorted_digits)) {
      case Width::w64:
        return run_native<std::uint64_t>(sorted_digits, scanner64_, set64_);
      case Width::w128:
        return run_native<u128>(sorted_digits, scanner128_, set128_);
      case Width::big:
        break;
    }
    std::vector<BigInt> values;
    big_scanner_.scan(sorted_digits, [&](const BigInt& chi, auto) {
      values.push_back(chi);
      return true;
    });
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) != values.end();
  }

 private:
  template <typename Word>
  bool run_native(std::span<const std::uint64_t> digits, ReversalClassScanner<Word>& scanner,
                  WordSet<Word>& set) {
    set.reset(half_factorial(digits.size()));
    bool collision = false;
    scanner.scan(digits, [&](Word chi, auto) {
      if (!set.insert(chi)) {
        collision = true;
        return false;
      }
      return true;
    });
    return collision;
  }

  ReversalClassScanner<std::uint64_t> scanner64_;
  ReversalClassScanner<u128> scanner128_;
  ReversalClassScanner<BigInt> big_scanner_;
  WordSet<std::uint64_t> set64_;
  WordSet<u128> set128_;
};

/// One reversal-class representative and its characteristic number.
struct OrderingChi {
  std::vector<std::uint64_t> ordering;
  BigInt chi;
};

/// All n!/2 representatives of a distinct-digit set with their chi values,
/// in lexicographic order of the orderings.
inline std::vector<OrderingChi> representative_chis(std::span<const std::uint64_t> sorted_digits) {
  std::vector<OrderingChi> out;
  out.reserve(half_factorial(sorted_digits.size()));
  auto collect = [&](const auto& chi, std::span<const std::uint64_t> ordering) {
    OrderingChi rec{std::vector<std::uint64_t>(ordering.begin(), ordering.end()), BigInt(0)};
    using W = std::decay_t<decltype(chi)>;
    if constexpr (std::is_same_v<W, u128>) {
      rec.chi = (BigInt(static_cast<std::uint64_t>(chi >> 64)) << 64) |
                BigInt(static_cast<std::uint64_t>(chi));
    } else {
      rec.chi = BigInt(chi);
    }
    out.push_back(std::move(rec));
    return true;
  };
  switch (width_for(sorted_digits)) {
    case Width::w64:
      ReversalClassScanner<std::uint64_t>().scan(sorted_digits, collect);
      break;
    case Width::w128:
      ReversalClassScanner<u128>().scan(sorted_digits, collect);
      break;
    case Width::big:
      ReversalClassScanner<BigInt>().scan(sorted_digits, collect);
      break;
  }
  return out;
}

}  // namespace cfsym::kernel
