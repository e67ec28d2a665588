// tools/cli.hpp — the `cfsym` command line. run() is separate from main() so
// the tests can drive it with string streams.

#pragma once

#include "cfsym/cfsym.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace cfsym::cli {

enum class Format { table, csv, json };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Cell {
  std::string text;
  nlohmann::ordered_json json;
};

inline Cell cell(const std::string& s) { return {s, s}; }
inline Cell cell(const char* s) { return cell(std::string(s)); }
inline Cell cell(std::uint64_t v) { return {std::to_string(v), v}; }
inline Cell cell(bool v) { return {v ? "yes" : "no", v}; }
inline Cell cell(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return {v.str(), v.convert_to<std::int64_t>()};
  return {v.str(), v.str()};
}
inline Cell cell(const BigRational& v) { return cell(to_string(v)); }
inline Cell cell(double v, const std::string& text) { return {text, std::stod(text)}; }
inline Cell cell_g(double v, int sig = 12) { return cell(v, format_significant(v, sig)); }
inline Cell cell_f(double v, int decimals) { return cell(v, format_fixed(v, decimals)); }
inline Cell null_cell() { return {"", nullptr}; }

/// Rows rendered as an aligned table, CSV or JSON lines.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::logic_error("row width mismatch");
    rows_.push_back(std::move(row));
  }

  bool empty() const { return rows_.empty(); }

  void emit(std::ostream& out, Format format) const {
    switch (format) {
      case Format::csv: {
        out << join(columns_) << '\n';
        for (const auto& r : rows_) {
          std::vector<std::string> t;
          for (const auto& c : r) t.push_back(csv_escape(c.text));
          out << join(t) << '\n';
        }
        break;
      }
      case Format::json:
        for (const auto& r : rows_) {
          nlohmann::ordered_json j;
          for (std::size_t i = 0; i < columns_.size(); ++i) j[columns_[i]] = r[i].json;
          out << j.dump() << '\n';
        }
        break;
      case Format::table: {
        std::vector<std::size_t> w(columns_.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
          w[i] = columns_[i].size();
          for (const auto& r : rows_) w[i] = std::max(w[i], r[i].text.size());
        }
        auto line = [&](auto&& text_of) {
          std::string s;
          for (std::size_t i = 0; i < w.size(); ++i) {
            const std::string t = text_of(i);
            s += t;
            if (i + 1 < w.size()) s += std::string(w[i] - t.size() + 2, ' ');
          }
          out << s << '\n';
        };
        line([&](std::size_t i) { return columns_[i]; });
        for (const auto& r : rows_) line([&](std::size_t i) { return r[i].text; });
        break;
      }
    }
  }

 private:
  static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  static std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s;
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// ---- argument parsing helpers ----------------------------------------------

/// "10,20,...,120" expands to the arithmetic progression; plain lists pass
/// through unchanged.
inline std::vector<unsigned> parse_report_points(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(item);
  auto number = [&](const std::string& s) -> unsigned {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw DomainError("--report: '" + s + "' is not a non-negative integer");
    return static_cast<unsigned>(std::stoul(s));
  };
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] != "...") {
      out.push_back(number(items[i]));
      continue;
    }
    if (out.size() < 2 || i + 1 >= items.size())
      throw DomainError("--report: '...' needs two leading terms and a final term");
    const unsigned a = out[out.size() - 2], b = out.back();
    const unsigned last = number(items[i + 1]);
    if (b <= a) throw DomainError("--report: progression must be increasing");
    for (unsigned v = b + (b - a); v < last; v += b - a) out.push_back(v);
    out.push_back(last);
    ++i;
  }
  if (out.empty()) throw DomainError("--report is empty");
  return out;
}

inline std::vector<BigInt> parse_digit_set(const std::string& text) {
  const auto d = parse_digits(text);
  return {d.begin(), d.end()};
}

inline std::vector<BigInt> parse_params(const std::string& text) {
  if (text.empty()) return {};
  return parse_digit_set(text);
}

inline unsigned default_workers() {
  if (const char* env = std::getenv("CFSYM_WORKERS")) {
    const std::string s(env);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) ||
        std::stoul(s) == 0)
      throw UsageError("CFSYM_WORKERS must be a positive integer, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---- commands ---------------------------------------------------------------

struct Globals {
  std::string format = "table";
  bool csv = false;
  bool json = false;
  unsigned workers = 0;
  bool quiet = false;

  Format resolved() const {
    if (csv) return Format::csv;
    if (json) return Format::json;
    if (format == "csv") return Format::csv;
    if (format == "json") return Format::json;
    return Format::table;
  }
};

inline Table eval_table(const DigitString& a) {
  Table t({"string", "value", "decimal"});
  const auto v = evaluate(a);
  t.add({cell(a.str()), cell(v), cell_g(v.convert_to<double>(), 17)});
  return t;
}

inline Table interval_table(const DigitString& a) {
  Table t({"string", "interval", "included", "excluded", "width"});
  const auto iv = fundamental_interval(a);
  t.add({cell(a.str()), cell(iv.str()), cell(iv.included_endpoint), cell(iv.excluded_endpoint), cell(iv.width())});
  return t;
}

inline Table chi_table(const DigitString& a) {
  Table t({"string", "chi", "parity"});
  const auto c = chi(a);
  t.add({cell(a.str()), cell(c.value), cell(c.parity == Parity::even ? "even" : "odd")});
  return t;
}

inline Table pgk_table(const DigitString& a, int digits) {
  Table t({"string", "chi", "pgk", "value"});
  const auto p = pgk_exact(a);
  t.add({cell(a.str()), cell(chi(a).value), cell(p.str()), cell(p.to_double(), p.decimal(digits))});
  return t;
}

/// Every distinct ordering of a's digits with its interval, chi and
/// probability; orderings with equal probability share a class number.
inline Table perms_table(const DigitString& a, std::size_t bound, int digits) {
  Table t({"permutation", "interval", "chi", "pgk", "value", "class"});
  std::vector<std::pair<BigInt, Parity>> classes;
  for (const auto& b : distinct_permutations(a, bound)) {
    const auto c = chi(b);
    auto it = std::find(classes.begin(), classes.end(), std::pair{c.value, c.parity});
    if (it == classes.end()) it = classes.insert(classes.end(), {c.value, c.parity});
    const auto p = pgk_of_chi(c);
    t.add({cell(b.str()), cell(fundamental_interval(b).str()), cell(c.value), cell(p.str()),
           cell(p.to_double(), p.decimal(digits)), cell(static_cast<std::uint64_t>(it - classes.begin() + 1))});
  }
  return t;
}

inline Table symmetries_table(const DigitString& a, std::size_t bound) {
  Table t({"string", "partner", "chi"});
  const auto target = chi(a).value;
  for (const auto& b : nontrivial_symmetries(a, bound)) t.add({cell(a.str()), cell(b.str()), cell(target)});
  return t;
}

inline Table nu_table(const std::vector<BigInt>& set, std::size_t bound) {
  Table t({"set", "n", "nu", "half_factorial", "exceptional", "defect", "witnesses"});
  const auto v = nu(set, bound);
  const auto w = collision_witnesses(set, bound);
  std::string ws;
  for (const auto& p : w) ws += (ws.empty() ? "" : " ") + p.first.str() + "~" + p.second.str();
  t.add({cell(DigitString(set).str()), cell(static_cast<std::uint64_t>(set.size())), cell(v),
         cell(kernel::half_factorial(set.size())), cell(is_exceptional_set(set, bound)),
         cell(epsilon_defect(set, bound)), cell(ws)});
  return t;
}

inline void census_command(const CensusOptions& opt, Format format, bool omit_timing, std::ostream& out,
                           std::ostream& err) {
  const auto run = run_census(opt);
  if (!run.complete)
    err << "census: stopped after " << run.units_done << " of " << run.units_total
        << " units; rerun with the same checkpoint to continue\n";
  switch (format) {
    case Format::csv:
      write_census_csv(out, run.rows, !omit_timing);
      break;
    case Format::json:
      write_census_jsonl(out, run.rows, !omit_timing);
      break;
    case Format::table: {
      Table t({"n", "N", "total", "f", "delta", "delta_exact", "f/N", "elapsed_seconds"});
      for (const auto& r : run.rows) {
        const double ratio = static_cast<double>(r.f) / r.N;
        t.add({cell(std::uint64_t{r.n}), cell(std::uint64_t{r.N}), cell(r.total), cell(r.f),
               cell_g(r.delta.convert_to<double>(), 6), cell(std::to_string(r.f) + "/" + r.total.str()),
               cell_f(ratio, 4), omit_timing ? null_cell() : cell_f(r.elapsed_seconds, 3)});
      }
      t.emit(out, format);
      break;
    }
  }
}

inline Table verify_table(const std::vector<verify::CheckResult>& results) {
  Table t({"check", "cases", "failures", "status", "first_failure"});
  for (const auto& r : results)
    t.add({cell(r.name), cell(r.cases), cell(r.failures), cell(r.ok() ? "PASS" : "FAIL"), cell(r.first_failure)});
  return t;
}

inline FamilyKind parse_family_kind(const std::string& s) {
  if (s == "stable") return FamilyKind::stable;
  if (s == "s-stable") return FamilyKind::s_stable;
  if (s == "a-plus") return FamilyKind::a_plus;
  return FamilyKind::concluding;
}

inline Table families_table(const FamilySpec& spec) {
  Table t({"kind", "string", "partner", "chi", "nontrivial"});
  switch (spec.kind) {
    case FamilyKind::stable:
    case FamilyKind::s_stable: {
      const auto a = stable_family(spec);
      const auto c = convergent_matrix(a);
      t.add({cell(spec.kind == FamilyKind::stable ? "stable" : "s-stable"), cell(a.str()), cell(""),
             cell(chi_of_matrix(c).value), cell(false)});
      break;
    }
    case FamilyKind::a_plus: {
      const auto p = a_plus_family(spec);
      t.add({cell("a-plus"), cell(p.a_plus.str()), cell(p.partner.str()), cell(chi(p.a_plus).value),
             cell(is_nontrivial_symmetry_pair(p.a_plus, p.partner))});
      break;
    }
    case FamilyKind::concluding: {
      spec.validate();
      const auto [a, b] = concluding_family(spec.params.at(0));
      t.add({cell("concluding"), cell(a.str()), cell(b.str()), cell(chi(a).value),
             cell(is_nontrivial_symmetry_pair(a, b))});
      break;
    }
  }
  return t;
}

inline Table aplus_table(const DigitString& a) {
  Table t({"string", "a_plus", "partner", "chi", "nontrivial"});
  const auto p = a_plus(a);
  t.add({cell(a.str()), cell(p.a_plus.str()), cell(p.partner.str()), cell(chi(p.a_plus).value),
         cell(is_nontrivial_symmetry_pair(p.a_plus, p.partner))});
  return t;
}

/// Every string of length 1..max_length with digits in 1..max_digit.
inline std::vector<DigitString> all_strings(std::size_t max_length, std::uint64_t max_digit) {
  std::vector<DigitString> out;
  for (std::size_t n = 1; n <= max_length; ++n) {
    std::vector<std::uint64_t> d(n, 1);
    while (true) {
      out.push_back(DigitString::from_words(d));
      std::size_t i = n;
      while (i > 0 && d[i - 1] == max_digit) d[--i] = 1;
      if (i == 0) break;
      ++d[i - 1];
    }
  }
  return out;
}

inline Table perturb_table(const DigitString& a0, double epsilon, double tol) {
  Table t({"a0", "alpha", "beta", "epsilon", "epsilon_max", "mu_I", "mu_gk_I", "mu_total"});
  const auto d = perturbed_density(a0, epsilon);
  const auto iv = fundamental_interval(a0);
  const double lo = iv.lo().convert_to<double>(), hi = iv.hi().convert_to<double>();
  t.add({cell(a0.str()), cell_g(lo, 17), cell_g(hi, 17), cell_g(epsilon), cell_g(perturbation_limit(a0), 17),
         cell_g(measure_of(d, lo, hi, tol), 15), cell_g(gk_measure_of_interval(iv).to_double(), 15),
         cell_g(measure_of(d, 0.0, 1.0, tol), 15)});
  return t;
}

inline Table lemma5_table(const DigitString& a, const std::vector<BigInt>& ts) {
  Table t({"t", "delta", "epsilon", "ratio", "ratio_value", "limit", "gap"});
  const auto trace = lemma5_trace(a, ts);
  for (const auto& s : trace.samples) {
    const BigRational gap = s.ratio - trace.limit;
    t.add({cell(s.t), cell(s.delta), cell(s.epsilon), cell(s.ratio), cell_g(s.ratio.convert_to<double>(), 12),
           cell(trace.limit), cell_g(gap.convert_to<double>(), 6)});
  }
  return t;
}

// ---- entry point ------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss-Kuzmin frequencies and permutation symmetries of continued-fraction digit strings", "cfsym"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* fmt = app.add_option("--format", g.format, "Output format")
                  ->check(CLI::IsMember({"table", "csv", "json"}));
  auto* fcsv = app.add_flag("--csv", g.csv, "Shorthand for --format csv");
  auto* fjson = app.add_flag("--json", g.json, "Shorthand for --format json (JSON lines)");
  fcsv->excludes(fjson)->excludes(fmt);
  fjson->excludes(fmt);
  app.add_option("--workers", g.workers, "Worker threads (default: CFSYM_WORKERS or hardware)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "No progress messages on stderr");

  std::string str, set_text;
  std::size_t bound = kDefaultPermutationBound;
  int digits = 17;

  auto string_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("string", str, "Digits, comma separated (e.g. 3,1,4)")->required();
    return c;
  };
  auto* c_eval = string_cmd("eval", "Value [0;a1,...,an] as an exact fraction");
  auto* c_interval = string_cmd("interval", "Fundamental interval I(a)");
  auto* c_chi = string_cmd("chi", "Characteristic number chi(a) = (p+q)(q'+q)");
  auto* c_pgk = string_cmd("pgk", "Exact Gauss-Kuzmin probability");
  c_pgk->add_option("--digits", digits, "Significant digits of the decimal")->check(CLI::Range(1, 60));
  auto* c_perms = string_cmd("perms", "All orderings with intervals, chi and probability");
  c_perms->add_option("--max-length", bound, "Refuse strings longer than this");
  c_perms->add_option("--digits", digits, "Significant digits of the decimal")->check(CLI::Range(1, 60));
  auto* c_sym = string_cmd("symmetries", "Nontrivial symmetries of a string");
  c_sym->add_option("--max-length", bound, "Refuse strings longer than this");

  auto* c_nu = app.add_subcommand("nu", "Distinct probabilities over the orderings of a digit set");
  c_nu->add_option("set", set_text, "Distinct digits, comma separated")->required();
  c_nu->add_option("--max-length", bound, "Refuse sets larger than this");

  CensusOptions copt;
  std::string report_text;
  bool omit_timing = false;
  std::string checkpoint;
  auto* c_census = app.add_subcommand("census", "Count exceptional n-subsets of {1..N}");
  c_census->add_option("--n", copt.n, "Subset size")->required();
  c_census->add_option("--N", copt.N_max, "Largest digit")->required();
  c_census->add_option("--report", report_text, "Report points, e.g. 10,20,...,120");
  c_census->add_flag("--force", copt.force, "Run past the evaluation budget");
  c_census->add_option("--budget", copt.budget, "Evaluation budget")->check(CLI::PositiveNumber);
  c_census->add_option("--checkpoint", checkpoint, "Resume from and save progress to this file");
  c_census->add_option("--max-units", copt.max_units, "Stop after this many new work units");
  c_census->add_flag("--omit-timing", omit_timing, "Leave elapsed_seconds empty");

  unsigned ex_n = 4, ex_N = 10;
  bool ex_force = false;
  auto* c_exc = app.add_subcommand("exceptional", "List exceptional n-subsets of {1..N} with witnesses");
  c_exc->add_option("--n", ex_n, "Subset size")->required();
  c_exc->add_option("--N", ex_N, "Largest digit")->required();
  c_exc->add_flag("--force", ex_force, "Run past the evaluation budget");

  std::string kind = "stable", params_text;
  std::size_t fam_length = 2;
  std::uint64_t fam_s = 1;
  auto* c_fam = app.add_subcommand("families", "Members of the constructive families");
  c_fam->add_option("--kind", kind, "Family")->check(CLI::IsMember({"stable", "s-stable", "a-plus", "concluding"}));
  c_fam->add_option("--length", fam_length, "String length");
  c_fam->add_option("--params", params_text, "Parameters t1,t2,... (t1 innermost)")->required();
  c_fam->add_option("--s", fam_s, "s for s-stable strings")->check(CLI::PositiveNumber);

  auto* c_aplus = string_cmd("aplus", "a+ of a stable string and its symmetric partner");

  std::uint64_t max_digit = 40, max_param = 50, max_t = 100, max_s = 10, max_s_t = 50;
  std::uint64_t count = 100'000, max_A = 10'000, seed = 1;
  auto* c_verify = app.add_subcommand("verify", "Exhaustive and randomized checks");
  c_verify->require_subcommand(1);
  auto* v_t3 = c_verify->add_subcommand("theorem3i", "No length-3 string has a nontrivial symmetry");
  v_t3->add_option("--max-digit", max_digit, "Largest digit scanned")->check(CLI::PositiveNumber);
  auto* v_fam = c_verify->add_subcommand("families", "Stable, a+, concluding and s-stable families");
  v_fam->add_option("--max-param", max_param, "Largest stable-family parameter")->check(CLI::PositiveNumber);
  v_fam->add_option("--max-t", max_t, "Largest concluding-family parameter")->check(CLI::PositiveNumber);
  v_fam->add_option("--max-s", max_s, "Largest s")->check(CLI::PositiveNumber);
  v_fam->add_option("--max-s-t", max_s_t, "Largest s-stable parameter")->check(CLI::PositiveNumber);
  auto* v_inv = c_verify->add_subcommand("invariants", "Matrix, interval and normalization identities");
  v_inv->add_option("--count", count, "Random strings")->check(CLI::PositiveNumber);
  v_inv->add_option("--max-A", max_A, "Normalization range")->check(CLI::PositiveNumber);
  v_inv->add_option("--seed", seed, "Random seed");

  std::string a0_text = "1,1", defect_string, ts_text = "1,10,100,1000";
  double epsilon = 0.05, tol = kDefaultQuadratureTolerance;
  std::size_t defect_max_length = 0;
  std::uint64_t defect_max_digit = 8;
  auto* c_lab = app.add_subcommand("measurelab", "Measure experiments");
  c_lab->require_subcommand(1);
  auto* l_perturb = c_lab->add_subcommand("perturb", "Perturbed density on I(a0)");
  auto* l_defect = c_lab->add_subcommand("defect", "Symmetry defect under the perturbed density");
  for (auto* c : {l_perturb, l_defect}) {
    c->add_option("--a0", a0_text, "Perturbed interval I(a0)");
    c->add_option("--epsilon", epsilon, "Bump amplitude");
    c->add_option("--tol", tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  }
  l_defect->add_option("--string", defect_string, "Single string instead of a scan");
  l_defect->add_option("--max-length", defect_max_length, "Scan lengths 1..L (default: length of a0 + 1)");
  l_defect->add_option("--max-digit", defect_max_digit, "Scan digits 1..D")->check(CLI::PositiveNumber);
  auto* l_lemma5 = c_lab->add_subcommand("lemma5", "Child-interval width ratio and its limit");
  l_lemma5->add_option("--string", str, "Base string")->required();
  l_lemma5->add_option("--t", ts_text, "Values of t");

  std::string target = "1", sampling = "uniform";
  std::uint64_t samples = 100'000;
  std::size_t mc_digits = kMonteCarloDigitCap;
  auto* c_mc = app.add_subcommand("montecarlo", "Empirical digit-string frequency of random reals");
  c_mc->add_option("--target", target, "Target string");
  c_mc->add_option("--samples", samples, "Number of random reals")->check(CLI::PositiveNumber);
  c_mc->add_option("--digits", mc_digits, "Digits extracted per real")->check(CLI::Range(1, 20));
  c_mc->add_option("--seed", seed, "Random seed");
  c_mc->add_option("--sampling", sampling, "Distribution of x")->check(CLI::IsMember({"uniform", "gauss-kuzmin"}));

  std::string figure;
  unsigned plot_N = 120;
  auto* c_plot = app.add_subcommand("plotdata", "Two-column data series for plotting");
  c_plot->add_option("figure", figure, "Series name")->required()->check(CLI::IsMember({"fN4_ratio"}));
  c_plot->add_option("--N", plot_N, "Largest N")->check(CLI::Range(4u, 100000u));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "cfsym: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (!g.workers) g.workers = default_workers();
    const Format format = g.resolved();
    auto emit = [&](const Table& t) { t.emit(out, format); };

    if (*c_eval) emit(eval_table(parse_digits(str)));
    else if (*c_interval) emit(interval_table(parse_digits(str)));
    else if (*c_chi) emit(chi_table(parse_digits(str)));
    else if (*c_pgk) emit(pgk_table(parse_digits(str), digits));
    else if (*c_perms) emit(perms_table(parse_digits(str), bound, digits));
    else if (*c_sym) {
      const auto a = parse_digits(str);
      const auto t = symmetries_table(a, bound);
      if (t.empty() && format == Format::table) out << a << ": no nontrivial symmetry\n";
      else emit(t);
    } else if (*c_nu) {
      emit(nu_table(parse_digit_set(set_text), bound));
    } else if (*c_census) {
      copt.workers = g.workers;
      if (!report_text.empty()) copt.report_points = parse_report_points(report_text);
      if (!checkpoint.empty()) copt.checkpoint = checkpoint;
      unsigned last_max = 0;
      if (!g.quiet)
        copt.progress = [&](const CensusProgress& p) {
          if (p.max_element != last_max || p.units_done == p.units_total) {
            last_max = p.max_element;
            err << "census: " << p.units_done << "/" << p.units_total << " units (max element " << p.max_element
                << ")\n";
          }
        };
      census_command(copt, format, omit_timing, out, err);
    } else if (*c_exc) {
      Table t({"set", "nu", "witness_first", "witness_second", "chi", "witness_pairs"});
      std::vector<std::string> pending;
      list_exceptional(
          ex_n, ex_N,
          [&](const ExceptionalSet& s) {
            const auto& w = s.witnesses.front();
            t.add({cell(DigitString::from_words(s.digits).str()), cell(s.nu), cell(w.first.str()),
                   cell(w.second.str()), cell(w.chi), cell(static_cast<std::uint64_t>(s.witnesses.size()))});
          },
          kDefaultCensusBudget, ex_force);
      if (t.empty() && format == Format::table) out << "no exceptional sets\n";
      else emit(t);
    } else if (*c_fam) {
      FamilySpec spec{parse_family_kind(kind), fam_length, parse_params(params_text), BigInt(fam_s)};
      if (spec.kind == FamilyKind::concluding) spec.length = 4;
      emit(families_table(spec));
    } else if (*c_aplus) {
      emit(aplus_table(parse_digits(str)));
    } else if (*c_verify) {
      std::vector<verify::CheckResult> results;
      if (*v_t3) results.push_back(verify::theorem3i(max_digit));
      else if (*v_fam) results = verify::families(max_param, max_t, max_s, max_s_t);
      else results = verify::invariants(count, seed, max_A);
      emit(verify_table(results));
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.ok(); });
      if (*v_t3 && format == Format::table) {
        const auto& r = results.front();
        if (r.ok())
          out << "no nontrivial symmetry found among " << r.cases << " strings (0 exceptions)\n";
        else
          out << r.failures << " exceptions, first " << r.first_failure << "\n";
      }
      return ok ? 0 : 1;
    } else if (*c_lab) {
      if (*l_perturb) {
        emit(perturb_table(parse_digits(a0_text), epsilon, tol));
      } else if (*l_defect) {
        const auto a0 = parse_digits(a0_text);
        const auto d = perturbed_density(a0, epsilon);
        std::vector<DigitString> strings;
        if (!defect_string.empty()) strings.push_back(parse_digits(defect_string));
        else strings = all_strings(defect_max_length ? defect_max_length : a0.size() + 1, defect_max_digit);
        Table t({"string", "reverse", "defect"});
        for (const auto& a : strings) {
          if (a.is_palindrome()) continue;
          if (a.reversed() < a) continue;
          t.add({cell(a.str()), cell(a.reversed().str()), cell_g(symmetry_defect(d, a, tol), 6)});
        }
        emit(t);
      } else {
        emit(lemma5_table(parse_digits(str), parse_params(ts_text)));
      }
    } else if (*c_mc) {
      const auto tgt = parse_digits(target);
      const auto mode = sampling == "uniform" ? Sampling::uniform : Sampling::gauss_kuzmin;
      const auto r = montecarlo_frequency(tgt, samples, mc_digits, seed, g.workers, mode);
      Table t({"target", "samples", "digits", "seed", "sampling", "windows", "occurrences", "empirical",
               "expected", "standard_error"});
      t.add({cell(tgt.str()), cell(samples), cell(static_cast<std::uint64_t>(mc_digits)), cell(seed), cell(sampling),
             cell(r.windows), cell(r.occurrences), cell_g(r.empirical, 8), cell_g(r.expected, 8),
             cell_g(r.standard_error, 3)});
      emit(t);
    } else if (*c_plot) {
      const auto series = ratio_series(plot_N, 4, g.workers);
      Table t({"N", "ratio"});
      for (const auto& p : series) t.add({cell(std::uint64_t{p.N}), cell_f(p.value, 4)});
      t.emit(out, format == Format::json ? Format::json : Format::csv);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "cfsym: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "cfsym: " << e.what() << '\n';
    return 1;
  } catch (const QuadratureError& e) {
    err << "cfsym: " << e.what() << '\n';
    return 1;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace cfsym::cli
