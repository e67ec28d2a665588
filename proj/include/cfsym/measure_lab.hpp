// include/cfsym/measure_lab.hpp — numerical experiments around the
// Gauss-Kuzmin measure: alternative densities and their reversal defect,
// the ratio of the child intervals I(a,t) and I(t,reverse(a)), and Monte
// Carlo digit frequencies.

#pragma once

#include "cfsym/cf_core.hpp"
#include "cfsym/gk_measure.hpp"
#include "cfsym/types.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <thread>
#include <variant>

namespace cfsym {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double gk_density(double x) { return 1.0 / (std::numbers::ln2 * (1.0 + x)); }

/// A probability density on [0,1].
class Density {
 public:
  enum class Kind { gauss_kuzmin, perturbed, tabulated };

  struct Perturbed {
    DigitString base;
    double epsilon;
    double alpha;  // lower endpoint of I(base)
    double beta;   // upper endpoint of I(base)
  };
  struct Tabulated {
    std::vector<double> xs;
    std::vector<double> ys;
  };

  static Density gauss_kuzmin() { return Density(std::monostate{}); }

  /// Piecewise-linear interpolation through (xs[i], ys[i]); xs must run from
  /// 0 to 1 strictly increasing, ys must be nonnegative.
  static Density tabulated(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() < 2 || xs.size() != ys.size()) throw DomainError("tabulated density needs >= 2 matching samples");
    if (xs.front() != 0.0 || xs.back() != 1.0) throw DomainError("tabulated grid must span [0,1]");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1])) throw DomainError("tabulated grid must be strictly increasing");
    for (double y : ys)
      if (!(y >= 0.0)) throw DomainError("tabulated density must be nonnegative");
    return Density(Tabulated{std::move(xs), std::move(ys)});
  }

  static Density from_perturbed(Perturbed p) { return Density(std::move(p)); }

  Kind kind() const {
    if (std::holds_alternative<std::monostate>(rep_)) return Kind::gauss_kuzmin;
    if (std::holds_alternative<Perturbed>(rep_)) return Kind::perturbed;
    return Kind::tabulated;
  }

  const Perturbed* perturbation() const { return std::get_if<Perturbed>(&rep_); }

  double operator()(double x) const {
    if (const auto* p = std::get_if<Perturbed>(&rep_)) {
      double f = gk_density(x);
      if (x > p->alpha && x < p->beta)
        f += p->epsilon * std::sin(2.0 * std::numbers::pi * (x - p->alpha) / (p->beta - p->alpha));
      return f;
    }
    if (const auto* t = std::get_if<Tabulated>(&rep_)) {
      if (x <= 0.0) return t->ys.front();
      if (x >= 1.0) return t->ys.back();
      auto it = std::upper_bound(t->xs.begin(), t->xs.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - t->xs.begin());
      const double w = (x - t->xs[i - 1]) / (t->xs[i] - t->xs[i - 1]);
      return t->ys[i - 1] * (1.0 - w) + t->ys[i] * w;
    }
    return gk_density(x);
  }

  /// Points where the density is not smooth; quadrature splits there.
  std::vector<double> breakpoints() const {
    if (const auto* p = std::get_if<Perturbed>(&rep_)) return {p->alpha, p->beta};
    if (const auto* t = std::get_if<Tabulated>(&rep_)) return t->xs;
    return {};
  }

 private:
  using Rep = std::variant<std::monostate, Perturbed, Tabulated>;
  explicit Density(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// Largest admissible bump amplitude on I(a0): half the minimum of the
/// Gauss-Kuzmin density there, 1/(2 ln2 (1 + beta)).
inline double perturbation_limit(const DigitString& a0) {
  const double beta = fundamental_interval(a0).hi().convert_to<double>();
  return 1.0 / (2.0 * std::numbers::ln2 * (1.0 + beta));
}

/// f_GK plus epsilon * sin(2 pi (x - alpha)/(beta - alpha)) on I(a0) = (alpha, beta).
/// The bump vanishes at both endpoints and integrates to zero, so every
/// fundamental interval of length |a0| keeps its Gauss-Kuzmin mass.
inline Density perturbed_density(const DigitString& a0, double epsilon) {
  const double limit = perturbation_limit(a0);
  if (!(epsilon > 0.0) || epsilon > limit)
    throw DomainError("epsilon must lie in (0, " + std::to_string(limit) + "]");
  const auto iv = fundamental_interval(a0);
  return Density::from_perturbed(
      {a0, epsilon, iv.lo().convert_to<double>(), iv.hi().convert_to<double>()});
}

inline constexpr double kDefaultQuadratureTolerance = 1e-10;
inline constexpr std::size_t kQuadratureSubdivisionCap = std::size_t{1} << 20;

namespace detail {

struct SimpsonState {
  const std::function<double(double)>* f;
  std::size_t subdivisions = 0;
};

inline double simpson_recurse(SimpsonState& st, double a, double fa, double b, double fb, double m, double fm,
                              double whole, double eps, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm), frm = (*st.f)(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (++st.subdivisions > kQuadratureSubdivisionCap)
    throw QuadratureError("adaptive Simpson exceeded the subdivision cap");
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_recurse(st, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
         simpson_recurse(st, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integral of f over [a,b] to absolute tolerance abs_tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  detail::SimpsonState st{&f};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(st, a, fa, b, fb, m, fm, whole, abs_tol, 60);
}

/// Integral of the density over [lo, hi] with relative error about tol.
/// The interval is split at the density's breakpoints first.
inline double measure_of(const Density& density, double lo, double hi, double tol = kDefaultQuadratureTolerance) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(lo <= hi)) throw DomainError("interval endpoints out of order");
  if (density.kind() == Density::Kind::gauss_kuzmin) return std::log1p((hi - lo) / (1.0 + lo)) / std::numbers::ln2;
  std::vector<double> cuts{lo};
  for (double x : density.breakpoints())
    if (x > lo && x < hi) cuts.push_back(x);
  cuts.push_back(hi);
  std::function<double(double)> f = [&density](double x) { return density(x); };
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1], b = cuts[i];
    // Scale the absolute target by a Gauss-Kuzmin-sized estimate of the piece.
    const double scale = std::max((b - a) * gk_density(b), std::numeric_limits<double>::min());
    total += adaptive_simpson(f, a, b, tol * scale);
  }
  return total;
}

/// Mass of a fundamental interval. The Gauss-Kuzmin density takes the exact
/// log-ratio path; other densities are integrated numerically.
inline double measure_of(const Density& density, const FundamentalInterval& iv,
                         double tol = kDefaultQuadratureTolerance) {
  if (density.kind() == Density::Kind::gauss_kuzmin) return gk_measure_of_interval(iv).to_double();
  return measure_of(density, iv.lo().convert_to<double>(), iv.hi().convert_to<double>(), tol);
}

/// mu(I(a)) - mu(I(reverse(a))).
inline double symmetry_defect(const Density& density, const DigitString& a, double tol = kDefaultQuadratureTolerance) {
  return measure_of(density, fundamental_interval(a), tol) - measure_of(density, fundamental_interval(a.reversed()), tol);
}

// ---- child-interval ratio ---------------------------------------------------

struct RatioSample {
  BigInt t;
  BigRational delta;    // |I(a,t)|
  BigRational epsilon;  // |I(t,reverse(a))|
  BigRational ratio;    // epsilon / delta
};

struct RatioTrace {
  DigitString base;
  BigRational r;      // value of [a]
  BigRational limit;  // 1/(1+r) = q/(p+q)
  std::vector<RatioSample> samples;
};

/// Widths of I(a,t) and I(t,reverse(a)) from the convergent matrix of a, and
/// their ratio (q_prev + (t+1) q)/(p_prev + q_prev + t (p+q)), which tends to
/// 1/(1+r) as t grows.
inline RatioTrace lemma5_trace(const DigitString& a, const std::vector<BigInt>& t_values) {
  const auto c = convergent_matrix(a);
  RatioTrace trace{a, BigRational(c.p, c.q), BigRational(c.q, c.p + c.q), {}};
  for (const auto& t : t_values) {
    if (t < 1) throw DomainError("t must be positive");
    const BigInt base = c.q_prev + t * c.q;
    const BigRational delta{BigInt(1), base * (c.q_prev + (t + 1) * c.q)};
    const BigRational eps{BigInt(1), base * (c.p_prev + c.q_prev + t * (c.p + c.q))};
    trace.samples.push_back({t, delta, eps, eps / delta});
  }
  return trace;
}

// ---- Monte Carlo -------------------------------------------------------------

enum class Sampling {
  uniform,      // x uniform on (0,1)
  gauss_kuzmin  // x drawn from the invariant measure, x = 2^u - 1
};

struct MonteCarloResult {
  double empirical = 0.0;
  double expected = 0.0;  // Gauss-Kuzmin probability of the target
  std::uint64_t occurrences = 0;
  std::uint64_t windows = 0;
  double standard_error = 0.0;  // binomial, windows treated as independent
};

inline constexpr std::uint64_t kMonteCarloBlock = 4096;
inline constexpr std::size_t kMonteCarloDigitCap = 20;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent stream for block b of a run with the given seed.
inline std::mt19937_64 block_stream(std::uint64_t seed, std::uint64_t block) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(block + 1)));
}

inline double unit_open(std::mt19937_64& rng) {
  while (true) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

}  // namespace detail

/// Frequency of target among sliding windows of the digit streams of random
/// reals, next to its Gauss-Kuzmin probability. Deterministic for a seed,
/// whatever the worker count: blocks own their streams and counts are summed
/// as integers.
inline MonteCarloResult montecarlo_frequency(const DigitString& target, std::uint64_t sample_count,
                                             std::size_t digits_per_sample, std::uint64_t seed,
                                             unsigned workers = 1, Sampling sampling = Sampling::uniform) {
  if (sample_count < 1) throw DomainError("sample_count must be at least 1");
  if (digits_per_sample < target.size()) throw DomainError("digits_per_sample shorter than the target");
  const auto target_words = target.to_words();
  const std::size_t n = target.size();
  const std::uint64_t blocks = (sample_count + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::uint64_t> occ(blocks, 0), win(blocks, 0);
  std::atomic<std::uint64_t> next{0};

  auto work = [&] {
    std::vector<std::uint64_t> stream;
    while (true) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) break;
      auto rng = detail::block_stream(seed, b);
      const std::uint64_t begin = b * kMonteCarloBlock;
      const std::uint64_t end = std::min(sample_count, begin + kMonteCarloBlock);
      for (std::uint64_t s = begin; s < end; ++s) {
        const double u = detail::unit_open(rng);
        const double x = sampling == Sampling::uniform ? u : std::exp2(u) - 1.0;
        if (!(x > 0.0 && x < 1.0)) continue;
        const auto digits = digits_of_real(x, digits_per_sample);
        stream.clear();
        for (const auto& d : digits)
          stream.push_back(d > std::numeric_limits<std::uint64_t>::max() ? 0 : static_cast<std::uint64_t>(d));
        if (stream.size() < n) continue;
        win[b] += stream.size() - n + 1;
        if (!target_words) continue;
        for (std::size_t i = 0; i + n <= stream.size(); ++i)
          if (std::equal(target_words->begin(), target_words->end(), stream.begin() + static_cast<std::ptrdiff_t>(i)))
            ++occ[b];
      }
    }
  };
  workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  MonteCarloResult r;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    r.occurrences += occ[b];
    r.windows += win[b];
  }
  r.expected = pgk_float(target);
  if (r.windows) {
    r.empirical = static_cast<double>(r.occurrences) / static_cast<double>(r.windows);
    r.standard_error = std::sqrt(r.expected * (1.0 - r.expected) / static_cast<double>(r.windows));
  }
  return r;
}

}  // namespace cfsym
