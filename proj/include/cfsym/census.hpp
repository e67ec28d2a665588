// include/cfsym/census.hpp — exhaustive census of exceptional digit sets.
//
// f(N,n) counts the n-subsets a1 < ... < an <= N whose orderings realise fewer
// than n!/2 distinct Gauss-Kuzmin probabilities. A subset is counted for every
// N >= an, so one pass bucketed by the largest element yields f for all
// report points at once.
//
// Work is split into units (largest element m, smallest element a1). Units
// are handed out dynamically to worker threads; per-unit counts are merged in
// unit order, so results do not depend on the worker count.

#pragma once

#include "cfsym/chi_kernel.hpp"
#include "cfsym/symmetry.hpp"
#include "cfsym/types.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace cfsym {

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct CensusRow {
  unsigned n = 0;
  unsigned N = 0;
  BigInt total;        // binomial(N, n)
  std::uint64_t f = 0; // exceptional subsets
  BigRational delta;   // f / total
  double elapsed_seconds = 0.0;

  friend bool operator==(const CensusRow& a, const CensusRow& b) {
    return a.n == b.n && a.N == b.N && a.total == b.total && a.f == b.f && a.delta == b.delta;
  }
};

struct CensusProgress {
  std::size_t units_done = 0;
  std::size_t units_total = 0;
  unsigned max_element = 0;  // largest element of the unit just finished
};

inline constexpr double kDefaultCensusBudget = 5e9;

struct CensusOptions {
  unsigned n = 4;
  unsigned N_max = 10;
  std::vector<unsigned> report_points;  // empty: default grid
  unsigned workers = 0;                 // 0: hardware concurrency
  double budget = kDefaultCensusBudget; // chi evaluations allowed without force
  bool force = false;
  std::optional<std::filesystem::path> checkpoint;
  double checkpoint_interval_seconds = 5.0;
  std::size_t max_units = 0;            // stop after this many new units (0: run to the end)
  std::function<void(const CensusProgress&)> progress;
};

struct CensusRun {
  std::vector<CensusRow> rows;
  std::vector<std::uint64_t> exceptional_by_max;  // index m: exceptional sets with largest element m
  bool complete = false;
  std::size_t units_done = 0;
  std::size_t units_total = 0;
};

/// Multiples of 10 (n = 4, 5) or of 5 (n >= 6) up to N_max, plus N_max itself.
inline std::vector<unsigned> default_report_points(unsigned n, unsigned N_max) {
  const unsigned step = n >= 6 ? 5 : 10;
  std::vector<unsigned> pts;
  for (unsigned N = step; N <= N_max; N += step)
    if (N >= n) pts.push_back(N);
  if (pts.empty() || pts.back() != N_max) pts.push_back(N_max);
  return pts;
}

inline double census_evaluations(unsigned n, unsigned N_max) {
  return binomial(N_max, n).convert_to<double>() * static_cast<double>(kernel::half_factorial(n));
}

namespace detail {

struct CensusUnit {
  unsigned max_element;
  unsigned min_element;
};

inline std::vector<CensusUnit> census_units(unsigned n, unsigned N_max) {
  std::vector<CensusUnit> units;
  for (unsigned m = n; m <= N_max; ++m)
    for (unsigned a1 = 1; a1 + n - 1 <= m; ++a1) units.push_back({m, a1});
  return units;
}

/// Visits every n-subset with the given smallest and largest elements, in
/// lexicographic order.
template <typename Visit>
void for_each_subset_in_unit(unsigned n, const CensusUnit& u, Visit&& visit) {
  std::vector<std::uint64_t> digits(n);
  digits.front() = u.min_element;
  digits.back() = u.max_element;
  const unsigned k = n - 2;
  const unsigned lo = u.min_element + 1;
  const unsigned hi = u.max_element - 1;  // inclusive
  if (k == 0) {
    visit(std::span<const std::uint64_t>(digits));
    return;
  }
  if (hi < lo || hi - lo + 1 < k) return;
  std::vector<unsigned> c(k);
  for (unsigned i = 0; i < k; ++i) c[i] = lo + i;
  while (true) {
    for (unsigned i = 0; i < k; ++i) digits[i + 1] = c[i];
    visit(std::span<const std::uint64_t>(digits));
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[i] == hi - (k - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (unsigned j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline std::uint64_t count_unit(unsigned n, const CensusUnit& u, kernel::ExceptionalTest& test) {
  std::uint64_t count = 0;
  for_each_subset_in_unit(n, u, [&](std::span<const std::uint64_t> d) {
    if (test(d)) ++count;
  });
  return count;
}

inline constexpr const char* kCheckpointFormat = "cfsym-census-checkpoint";
inline constexpr int kCheckpointVersion = 1;

}  // namespace detail

/// Completed units of an interrupted census, keyed by (max, min) element.
struct CensusCheckpoint {
  unsigned n = 0;
  unsigned N_max = 0;
  std::map<std::pair<unsigned, unsigned>, std::uint64_t> completed;

  /// Text JSON, so the file does not depend on byte order.
  nlohmann::json to_json() const {
    nlohmann::json units = nlohmann::json::array();
    for (const auto& [key, count] : completed) units.push_back({key.first, key.second, count});
    return {{"format", detail::kCheckpointFormat},
            {"version", detail::kCheckpointVersion},
            {"n", n},
            {"N_max", N_max},
            {"unit_fields", {"max_element", "min_element", "exceptional"}},
            {"units", units}};
  }

  static CensusCheckpoint from_json(const nlohmann::json& j) {
    if (j.value("format", "") != detail::kCheckpointFormat)
      throw DomainError("not a census checkpoint file");
    if (j.value("version", 0) != detail::kCheckpointVersion)
      throw DomainError("unsupported checkpoint version " + j.value("version", nlohmann::json()).dump());
    CensusCheckpoint c;
    c.n = j.at("n").get<unsigned>();
    c.N_max = j.at("N_max").get<unsigned>();
    for (const auto& u : j.at("units"))
      c.completed[{u.at(0).get<unsigned>(), u.at(1).get<unsigned>()}] = u.at(2).get<std::uint64_t>();
    return c;
  }

  void save(const std::filesystem::path& path) const {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw DomainError("cannot write checkpoint " + tmp.string());
      out << to_json().dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  static std::optional<CensusCheckpoint> load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError("corrupt checkpoint " + path.string() + ": " + e.what());
    }
    return from_json(j);
  }
};

inline CensusRun run_census(const CensusOptions& opt) {
  if (opt.n < 3) throw DomainError("census requires n >= 3");
  if (opt.n > kernel::ReversalClassScanner<std::uint64_t>::kMaxLength)
    throw SizeError("census length n too large");
  if (opt.N_max < opt.n) throw DomainError("census requires N >= n");
  auto report = opt.report_points.empty() ? default_report_points(opt.n, opt.N_max) : opt.report_points;
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (report[i] < opt.n || report[i] > opt.N_max)
      throw DomainError("report point " + std::to_string(report[i]) + " outside [n, N]");
    if (i && report[i] <= report[i - 1]) throw DomainError("report points must be strictly ascending");
  }
  const double evals = census_evaluations(opt.n, opt.N_max);
  if (evals > opt.budget && !opt.force) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", evals);
    throw SizeError(std::string("census needs ~") + buf + " chi evaluations, above the budget; pass force to run anyway");
  }

  const auto units = detail::census_units(opt.n, opt.N_max);
  std::vector<std::int64_t> unit_count(units.size(), -1);
  std::vector<double> unit_time(units.size(), 0.0);

  CensusCheckpoint ckpt{opt.n, opt.N_max, {}};
  if (opt.checkpoint) {
    if (auto loaded = CensusCheckpoint::load(*opt.checkpoint)) {
      if (loaded->n != opt.n) throw DomainError("checkpoint was written for a different n");
      ckpt.completed = loaded->completed;
    }
  }
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto it = ckpt.completed.find({units[i].max_element, units[i].min_element});
    if (it != ckpt.completed.end()) {
      unit_count[i] = static_cast<std::int64_t>(it->second);
    } else {
      pending.push_back(i);
    }
  }
  if (opt.max_units && pending.size() > opt.max_units) pending.resize(opt.max_units);

  unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, pending.size())));

  const auto start = std::chrono::steady_clock::now();
  auto seconds_since_start = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  std::atomic<std::size_t> next{0};
  std::mutex mu;  // guards ckpt, done counter and progress callback
  std::size_t done = units.size() - std::count(unit_count.begin(), unit_count.end(), -1);
  double last_save = 0.0;
  std::exception_ptr failure;

  auto worker = [&] {
    kernel::ExceptionalTest test;
    try {
      while (true) {
        const std::size_t slot = next.fetch_add(1);
        if (slot >= pending.size()) break;
        const std::size_t idx = pending[slot];
        const auto count = detail::count_unit(opt.n, units[idx], test);
        const double t = seconds_since_start();
        std::lock_guard lock(mu);
        unit_count[idx] = static_cast<std::int64_t>(count);
        unit_time[idx] = t;
        ++done;
        ckpt.completed[{units[idx].max_element, units[idx].min_element}] = count;
        if (opt.checkpoint && t - last_save >= opt.checkpoint_interval_seconds) {
          ckpt.save(*opt.checkpoint);
          last_save = t;
        }
        if (opt.progress) opt.progress({done, units.size(), units[idx].max_element});
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next = pending.size();
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (opt.checkpoint) ckpt.save(*opt.checkpoint);

  CensusRun run;
  run.units_total = units.size();
  run.units_done = done;
  run.complete = done == units.size();
  run.exceptional_by_max.assign(opt.N_max + 1, 0);
  std::vector<double> time_by_max(opt.N_max + 1, 0.0);
  std::vector<bool> max_complete(opt.N_max + 1, true);
  for (std::size_t i = 0; i < units.size(); ++i) {
    const unsigned m = units[i].max_element;
    if (unit_count[i] < 0) {
      max_complete[m] = false;
      continue;
    }
    run.exceptional_by_max[m] += static_cast<std::uint64_t>(unit_count[i]);
    time_by_max[m] = std::max(time_by_max[m], unit_time[i]);
  }
  std::uint64_t f = 0;
  double elapsed = 0.0;
  bool prefix_complete = true;
  std::size_t r = 0;
  for (unsigned m = 0; m <= opt.N_max && r < report.size(); ++m) {
    f += run.exceptional_by_max[m];
    elapsed = std::max(elapsed, time_by_max[m]);
    prefix_complete = prefix_complete && max_complete[m];
    if (m == report[r]) {
      if (!prefix_complete) break;
      BigInt total = binomial(m, opt.n);
      run.rows.push_back({opt.n, m, total, f, BigRational(BigInt(f), total), elapsed});
      ++r;
    }
  }
  return run;
}

/// f(N,n) and delta(N,n) at each report point.
inline std::vector<CensusRow> census(unsigned n, unsigned N_max, std::vector<unsigned> report_points = {},
                                     unsigned workers = 0) {
  CensusOptions opt;
  opt.n = n;
  opt.N_max = N_max;
  opt.report_points = std::move(report_points);
  opt.workers = workers;
  return run_census(opt).rows;
}

struct RatioPoint {
  unsigned N = 0;
  std::uint64_t f = 0;
  BigRational ratio;  // f(N,n)/N
  double value = 0.0;
};

/// f(N,n)/N for every N in [n, N_max].
inline std::vector<RatioPoint> ratio_series(unsigned N_max, unsigned n = 4, unsigned workers = 0) {
  CensusOptions opt;
  opt.n = n;
  opt.N_max = N_max;
  opt.workers = workers;
  const auto run = run_census(opt);
  std::vector<RatioPoint> out;
  std::uint64_t f = 0;
  for (unsigned N = 0; N <= N_max; ++N) {
    f += run.exceptional_by_max[N];
    if (N < n) continue;
    const BigRational ratio{BigInt(f), BigInt(N)};
    out.push_back({N, f, ratio, ratio.convert_to<double>()});
  }
  return out;
}

struct ExceptionalSet {
  std::vector<std::uint64_t> digits;  // ascending
  std::uint64_t nu = 0;
  std::vector<WitnessPair> witnesses;
};

/// Streams every exceptional n-subset of {1..N} in ascending lexicographic
/// order, each with its exact nu and collision witnesses. Returns the count.
inline std::uint64_t list_exceptional(unsigned n, unsigned N, const std::function<void(const ExceptionalSet&)>& sink,
                                      double budget = kDefaultCensusBudget, bool force = false) {
  if (n < 3) throw DomainError("exceptional listing requires n >= 3");
  if (N < n) throw DomainError("exceptional listing requires N >= n");
  if (census_evaluations(n, N) > budget && !force) throw SizeError("listing exceeds the evaluation budget");
  kernel::ExceptionalTest test;
  std::uint64_t emitted = 0;
  std::vector<std::uint64_t> c(n);
  for (unsigned i = 0; i < n; ++i) c[i] = i + 1;
  while (true) {
    if (test(c)) {
      std::vector<BigInt> set(c.begin(), c.end());
      ExceptionalSet rec{c, nu(set, kernel::ReversalClassScanner<std::uint64_t>::kMaxLength),
                         collision_witnesses(set, kernel::ReversalClassScanner<std::uint64_t>::kMaxLength)};
      sink(rec);
      ++emitted;
    }
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && c[i] == N - (n - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (unsigned j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
  }
  return emitted;
}

inline std::vector<ExceptionalSet> list_exceptional(unsigned n, unsigned N) {
  std::vector<ExceptionalSet> out;
  list_exceptional(n, N, [&](const ExceptionalSet& s) { out.push_back(s); });
  return out;
}

// ---- table emission -------------------------------------------------------

inline std::string format_significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline constexpr const char* kCensusCsvHeader = "n,N,total,f,delta,delta_exact,elapsed_seconds";

/// One CSV line. Without timing the elapsed field is left empty so that runs
/// are byte-comparable.
inline std::string census_csv_line(const CensusRow& r, bool include_timing) {
  return std::to_string(r.n) + "," + std::to_string(r.N) + "," + r.total.str() + "," + std::to_string(r.f) +
         "," + format_significant(r.delta.convert_to<double>(), 6) + "," + std::to_string(r.f) + "/" +
         r.total.str() + "," + (include_timing ? format_fixed(r.elapsed_seconds, 3) : std::string());
}

inline nlohmann::ordered_json census_json(const CensusRow& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["N"] = r.N;
  j["total"] = r.total.convert_to<std::uint64_t>();
  j["f"] = r.f;
  j["delta"] = std::stod(format_significant(r.delta.convert_to<double>(), 6));
  j["delta_exact"] = std::to_string(r.f) + "/" + r.total.str();
  j["elapsed_seconds"] = include_timing ? nlohmann::ordered_json(std::stod(format_fixed(r.elapsed_seconds, 3)))
                                        : nlohmann::ordered_json(nullptr);
  return j;
}

inline void write_census_csv(std::ostream& os, const std::vector<CensusRow>& rows, bool include_timing = true) {
  os << kCensusCsvHeader << '\n';
  for (const auto& r : rows) os << census_csv_line(r, include_timing) << '\n';
}

inline void write_census_jsonl(std::ostream& os, const std::vector<CensusRow>& rows, bool include_timing = true) {
  for (const auto& r : rows) os << census_json(r, include_timing).dump() << '\n';
}

}  // namespace cfsym
