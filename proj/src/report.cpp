#include "selmer/report.hpp"

#include "selmer/density.hpp"
#include "selmer/distributions.hpp"
#include "selmer/masses.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace selmer::report {

Format parse_format(const std::string &name) {
  if (name == "md")
    return Format::md;
  if (name == "csv")
    return Format::csv;
  if (name == "json")
    return Format::json;
  throw std::invalid_argument("unknown format '" + name + "' (md, csv, json)");
}

void ReportConfig::validate() const {
  if (prime_bound < 2)
    throw std::invalid_argument("prime bound must be at least 2");
  if (precision < 0 || precision > 30)
    throw std::invalid_argument("precision must be between 0 and 30");
  if (cap == 0 || cap > 64)
    throw std::invalid_argument("enumeration cap must be between 1 and 64");
  if (max_degree < 4 || max_degree % 2)
    throw std::invalid_argument("max degree must be even and at least 4");
}

unsigned thread_count(const ReportConfig &config) {
  if (config.threads)
    return config.threads;
  if (const char *env = std::getenv("SELMER_LAB_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs job(i) for i < count on up to `threads` workers. Results are written
// by index, so the merge order never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)> &job) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++)
          job(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto &th : pool)
    th.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

std::string signature(unsigned r1, unsigned r2) { return fmt::format("({},{})", r1, r2); }

} // namespace

Cell text_cell(const std::string &s) { return {s, s}; }

Cell int_cell(std::uint64_t v) { return {std::to_string(v), v}; }

Cell rational_cell(const BigRational &r) {
  const std::string s = to_string(r);
  return {s, s};
}

Cell float_cell(const Certified &c, int precision) {
  nlohmann::json j = {{"value", c.value}, {"error", c.error}};
  if (c.divergent)
    j["divergent"] = true;
  return {format_fixed(c.value, precision), j};
}

// ---------------------------------------------------------------- rendering

nlohmann::json to_json(const Report &r) {
  nlohmann::json out;
  out["command"] = r.command;
  if (r.passed)
    out["passed"] = *r.passed;
  auto &tables = out["tables"] = nlohmann::json::array();
  for (const auto &t : r.tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : t.rows) {
      nlohmann::json cells = nlohmann::json::array();
      for (const auto &c : row)
        cells.push_back(c.value);
      rows.push_back(cells);
    }
    tables.push_back({{"title", t.title}, {"columns", t.columns}, {"rows", rows},
                      {"notes", t.notes}});
  }
  return out;
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render_md(const Report &r) {
  std::ostringstream os;
  bool first = true;
  for (const auto &t : r.tables) {
    if (!first)
      os << "\n";
    first = false;
    os << "## " << t.title << "\n\n|";
    for (const auto &c : t.columns)
      os << " " << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << " --- |";
    os << "\n";
    for (const auto &row : t.rows) {
      os << "|";
      for (const auto &c : row)
        os << " " << c.text << " |";
      os << "\n";
    }
    if (!t.notes.empty()) {
      os << "\n";
      for (const auto &n : t.notes)
        os << n << "\n";
    }
  }
  if (r.passed)
    os << "\nresult: " << (*r.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_csv(const Report &r) {
  std::ostringstream os;
  bool first = true;
  for (const auto &t : r.tables) {
    if (!first)
      os << "\n";
    first = false;
    os << "# " << t.title << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? "," : "") << csv_field(t.columns[i]);
    os << "\n";
    for (const auto &row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << csv_field(row[i].text);
      os << "\n";
    }
  }
  if (r.passed)
    os << "\n# result: " << (*r.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

} // namespace

std::string render(const Report &r, Format format) {
  switch (format) {
  case Format::md:
    return render_md(r);
  case Format::csv:
    return render_csv(r);
  case Format::json:
    return to_json(r).dump(2) + "\n";
  }
  throw std::logic_error("render: bad format");
}

// ------------------------------------------------------------------- tables

const std::vector<std::string> &table_targets() {
  static const std::vector<std::string> names{"s4-real", "s4-mixed",  "s6-real",
                                              "bi-trivial", "quadratic", "moments"};
  return names;
}

namespace {

Table law_table(unsigned n, unsigned r1, unsigned r2, const ReportConfig &config) {
  Table t;
  t.title = fmt::format("Type densities and isotropy-rank laws, degree {}, signature {}", n,
                        signature(r1, r2));
  t.columns = {"type", "density"};
  for (unsigned k = 0; k <= r1 / 2; ++k)
    t.columns.push_back(fmt::format("k={}", k));
  const auto k = abcde(n, config.prime_bound);
  for (const auto &d : type_density_table(k)) {
    std::vector<Cell> row{text_cell(std::string(type_label(d.type))), float_cell(d.value, config.precision)};
    const auto law = isotropy_law(d.type, r1, r2);
    for (unsigned k = 0; k <= r1 / 2; ++k)
      row.push_back(rational_cell(law.at(k)));
    t.rows.push_back(std::move(row));
  }
  t.notes.push_back(fmt::format("a = {}, b = {}, c = {}, d = {}, e = {}", to_string(k.a),
                                format_fixed(k.b.value, std::max(config.precision, 5)),
                                to_string(k.c), to_string(k.d), to_string(k.e)));
  t.notes.push_back(fmt::format("Euler products over primes up to {}, certified error {:.1e}",
                                config.prime_bound, k.b.error));
  return t;
}

Table bi_trivial_table(const ReportConfig &config) {
  std::vector<unsigned> degrees;
  for (unsigned n = 4; n <= config.max_degree; n += 2)
    degrees.push_back(n);
  std::vector<Certified> bi(degrees.size()), trivial(degrees.size());
  parallel_for(degrees.size(), thread_count(config), [&](std::size_t i) {
    bi[i] = type_density_table(degrees[i], config.prime_bound)[2].value;
    trivial[i] = trivial_type_density(degrees[i], config.prime_bound);
  });
  Table t;
  t.title = "Density of B(i) and trivial-type fields by degree";
  t.columns = {"n", "B(i)", "trivial"};
  for (std::size_t i = 0; i < degrees.size(); ++i)
    t.rows.push_back({int_cell(degrees[i]), float_cell(bi[i], config.precision),
                      float_cell(trivial[i], config.precision)});
  return t;
}

Table quadratic_table(const ReportConfig &config) {
  Table t;
  t.title = "Type densities for quadratic fields";
  t.columns = {"type", "density", "exact"};
  for (const auto &d : type_density_table(2, config.prime_bound)) {
    // b diverges to 0 here, so every density is its constant term.
    t.rows.push_back({text_cell(std::string(type_label(d.type))), float_cell(d.value, config.precision),
                      rational_cell(d.constant)});
  }
  t.notes.push_back("b = 0: the product over primes 3 mod 4 diverges for n = 2");
  return t;
}

std::vector<Table> moments_tables(const ReportConfig &config) {
  const std::vector<std::pair<unsigned, unsigned>> sigs{{4, 0}, {2, 1}, {0, 2}};
  std::vector<Table> out;
  Table ranks;
  ranks.title = "Predicted class group 2-rank distribution, quartic fields";
  ranks.columns = {"rank"};
  for (auto [r1, r2] : sigs)
    ranks.columns.push_back(signature(r1, r2));
  for (unsigned rho = 0; rho <= 3; ++rho) {
    std::vector<Cell> row{int_cell(rho)};
    for (auto [r1, r2] : sigs)
      row.push_back(float_cell(class_rank_distribution(r1, r2, rho), config.precision));
    ranks.rows.push_back(std::move(row));
  }
  out.push_back(std::move(ranks));

  Table avg;
  avg.title = "Average 2-torsion, quartic fields";
  avg.columns = {"signature", "class group", "narrow class group"};
  for (auto [r1, r2] : sigs)
    avg.rows.push_back({text_cell(signature(r1, r2)), rational_cell(class_moments(r1, r2, 1)),
                        rational_cell(narrow_avg_2torsion(r1, r2))});
  out.push_back(std::move(avg));
  return out;
}

} // namespace

Report tables(const std::string &target, const ReportConfig &config) {
  config.validate();
  Report r;
  r.command = "tables " + target;
  if (target == "s4-real")
    r.tables.push_back(law_table(4, 4, 0, config));
  else if (target == "s4-mixed")
    r.tables.push_back(law_table(4, 2, 1, config));
  else if (target == "s6-real")
    r.tables.push_back(law_table(6, 6, 0, config));
  else if (target == "bi-trivial")
    r.tables.push_back(bi_trivial_table(config));
  else if (target == "quadratic")
    r.tables.push_back(quadratic_table(config));
  else if (target == "moments")
    r.tables = moments_tables(config);
  else
    throw std::invalid_argument("unknown table '" + target + "'");
  return r;
}

// ------------------------------------------------------------------- verify

const std::vector<std::string> &verify_suites() {
  static const std::vector<std::string> names{"counts", "distributions", "masses", "all"};
  return names;
}

namespace {

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

using CheckJob = std::function<Check()>;

std::string histogram_string(const std::map<unsigned, BigInt> &h) {
  std::string s;
  for (const auto &[k, v] : h)
    s += fmt::format("{}{}:{}", s.empty() ? "" : " ", k, v.get_str());
  return s.empty() ? "-" : s;
}

void count_jobs(std::vector<CheckJob> &jobs, std::size_t cap) {
  for (unsigned t = 0; t <= 5; ++t)
    jobs.push_back([t, cap] {
      const auto want = b_count(t);
      const auto got = count_mti(BilinearSpace::hyperbolic(t), Subspace(2 * t), cap);
      return Check{"counts", fmt::format("b({}) in H^{}", t, t), want == got,
                   fmt::format("formula {}, enumerated {}", want.get_str(), got)};
    });
  for (unsigned t = 0; t <= 4; ++t)
    jobs.push_back([t, cap] {
      const auto want = b_count(t);
      const auto got = count_mti(BilinearSpace::i2_plus_h(t), Subspace(2 * t + 2), cap);
      return Check{"counts", fmt::format("b({}) in I^2+H^{}", t, t), want == got,
                   fmt::format("formula {}, enumerated {}", want.get_str(), got)};
    });

  // The four model families for d(n,m,k). `shift` is the isotropy rank offset
  // and `scale` the multiplier for the case without (w_can, 0).
  for (unsigned n = 0; 2 * n <= 4; ++n)
    for (unsigned m = 0; 2 * n + m <= 4; ++m)
      for (int c = 0; c < 4; ++c)
        jobs.push_back([n, m, c, cap] {
          static const char *names[] = {"1", "2", "3a", "3b"};
          const auto v = BilinearSpace::i2_plus_h(n);
          const auto s =
              c == 0 ? BilinearSpace::orthogonal_sum(BilinearSpace::hyperbolic(n),
                                                     BilinearSpace::hyperbolic(n + m))
              : c == 1
                  ? BilinearSpace::orthogonal_sum(v, BilinearSpace::hyperbolic(n + m))
                  : BilinearSpace::orthogonal_sum(v, BilinearSpace::i2_plus_h(n + m));
          const Subspace fixed = c >= 2 ? Subspace::from_bits(s.dim(), {v.canonical_bits()})
                                        : Subspace(s.dim());
          const unsigned shift = c == 1 || c == 2 ? 1 : 0;
          const BigInt scale = c == 3 ? BigInt(BigInt(1) << (2 * n + m + 1)) : BigInt(1);
          RankHistogram h = rank_histogram(s, fixed, cap);
          if (c == 3) {
            const auto all = rank_histogram(s, Subspace(s.dim()), cap);
            RankHistogram without;
            for (const auto &[k, v] : all) {
              const auto it = h.find(k);
              const std::uint64_t w = it == h.end() ? 0 : it->second;
              if (v > w)
                without[k] = v - w;
            }
            h = std::move(without);
          }
          std::map<unsigned, BigInt> want, got;
          for (unsigned k = 0; k <= n; ++k) {
            const BigInt d = scale * d_count(n, m, k);
            if (d != 0)
              want[k + shift] = d;
          }
          for (const auto &[k, v] : h)
            got[static_cast<unsigned>(k)] = v;
          return Check{"counts", fmt::format("d({},{},k) case {}", n, m, names[c]), want == got,
                       fmt::format("formula {}; enumerated {}", histogram_string(want),
                                   histogram_string(got))};
        });
}

void distribution_jobs(std::vector<CheckJob> &jobs, std::size_t cap) {
  const std::vector<std::pair<unsigned, unsigned>> sigs{{2, 0}, {4, 0}, {2, 1}, {4, 1}};
  for (QType type : kAllTypes)
    for (auto [r1, r2] : sigs) {
      if ((type == QType::B2 || type == QType::B4) && r1 == 2 && r2 == 0)
        continue;
      jobs.push_back([type, r1, r2, cap] {
        const auto law = isotropy_distribution(type, r1, r2);
        const auto model = signature_model(type, r1, r2);
        const auto h = rank_histogram(model.space, model.sq, cap);
        std::uint64_t total = 0;
        for (const auto &[k, v] : h)
          total += v;
        Distribution empirical;
        for (const auto &[k, v] : h)
          empirical.support.emplace_back(static_cast<unsigned>(k), make_rational(v, total));
        bool ok = total > 0;
        for (unsigned k = 0; k <= r1 / 2; ++k)
          ok = ok && law.at(k) == empirical.at(k);
        std::string want, got;
        for (unsigned k = 0; k <= r1 / 2; ++k) {
          want += (k ? " " : "") + to_string(law.at(k));
          got += (k ? " " : "") + to_string(empirical.at(k));
        }
        return Check{"distributions",
                     fmt::format("{} at {}", type_label(type), signature(r1, r2)), ok,
                     fmt::format("law {}; enumerated {} ({} MTIs)", want, got, total)};
      });
    }
}

void mass_jobs(std::vector<CheckJob> &jobs) {
  for (unsigned n = 1; n <= 8; ++n)
    jobs.push_back([n] {
      MassPoly sum;
      for (const auto &s : enumerate_symbols(n))
        sum += symbol_mass(s);
      const auto want = c_poly(n);
      return Check{"masses", fmt::format("sum over S({}) = c({})", n, n), sum == want,
                   fmt::format("c = {}; sum = {}", want.to_string(), sum.to_string())};
    });
  for (unsigned m = 1; m <= 4; ++m)
    jobs.push_back([m] {
      MassPoly sum;
      for (const auto &s : enumerate_symbols_even(2 * m))
        sum += symbol_mass(s);
      const auto want = c_poly(m) * MassPoly::monomial(1, m);
      return Check{"masses", fmt::format("sum over even S({}) = x^{} c({})", 2 * m, m, m),
                   sum == want,
                   fmt::format("expected {}; sum = {}", want.to_string(), sum.to_string())};
    });
  for (unsigned m = 1; m <= 4; ++m)
    for (unsigned disc = 0; disc <= 3; ++disc)
      jobs.push_back([m, disc] {
        const std::string name = fmt::format("unramified family m={} disc={}", m, disc);
        try {
          const auto f = mass_unramified_family(m, disc);
          return Check{"masses", name, f.by_symbols == f.closed_form, f.closed_form.to_string()};
        } catch (const std::logic_error &e) {
          return Check{"masses", name, false, e.what()};
        }
      });
}

} // namespace

Report verify(const std::string &suite, const ReportConfig &config) {
  config.validate();
  const bool all = suite == "all";
  if (!all && suite != "counts" && suite != "distributions" && suite != "masses")
    throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<CheckJob> jobs;
  if (all || suite == "counts")
    count_jobs(jobs, config.cap);
  if (all || suite == "distributions")
    distribution_jobs(jobs, config.cap);
  if (all || suite == "masses")
    mass_jobs(jobs);

  std::vector<Check> results(jobs.size());
  parallel_for(jobs.size(), thread_count(config), [&](std::size_t i) {
    try {
      results[i] = jobs[i]();
    } catch (const std::exception &e) {
      // A crashing check is a failing check.
      results[i] = Check{"error", fmt::format("job {}", i), false, e.what()};
    }
  });

  Report r;
  r.command = "verify " + suite;
  Table t;
  t.title = "Verification: " + suite;
  t.columns = {"suite", "check", "result", "detail"};
  std::size_t passed = 0;
  for (const auto &c : results) {
    passed += c.passed;
    t.rows.push_back({text_cell(c.suite), text_cell(c.name),
                      Cell{c.passed ? "pass" : "FAIL", c.passed}, text_cell(c.detail)});
  }
  t.notes.push_back(fmt::format("{} of {} checks passed", passed, results.size()));
  r.tables.push_back(std::move(t));
  r.passed = passed == results.size();
  return r;
}

// ---------------------------------------------------------------------- mc

Report monte_carlo(QType type, unsigned r1, unsigned r2, std::uint64_t samples,
                   const ReportConfig &config) {
  config.validate();
  if (samples == 0)
    throw std::invalid_argument("need at least one sample");
  const auto law = isotropy_law(type, r1, r2);
  const auto model = signature_model(type, r1, r2);
  const MtiSampler sampler(model.space, model.sq, config.seed, config.cap);
  std::vector<std::size_t> rank_of;
  for (const auto &s : sampler.candidates())
    rank_of.push_back(isotropy_rank(model.space, s));

  // Fixed-size chunks of draw counters; summing per-chunk histograms gives
  // the same totals for any thread count.
  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  const std::size_t kmax = r1 / 2;
  std::vector<std::vector<std::uint64_t>> partial(chunks,
                                                  std::vector<std::uint64_t>(kmax + 1));
  parallel_for(chunks, thread_count(config), [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk, hi = std::min(samples, lo + kChunk);
    for (std::uint64_t i = lo; i < hi; ++i)
      ++partial[c][rank_of[sampler.index(i)]];
  });
  std::vector<std::uint64_t> counts(kmax + 1);
  for (const auto &p : partial)
    for (std::size_t k = 0; k <= kmax; ++k)
      counts[k] += p[k];

  Report r;
  r.command = fmt::format("mc {} {} {} {}", type_code(type), r1, r2, samples);
  Table t;
  t.title = fmt::format("Monte Carlo isotropy ranks, {} at {}", type_label(type),
                        signature(r1, r2));
  t.columns = {"k", "count", "empirical", "exact", "std error", "z", "within 3 sigma"};
  const double N = static_cast<double>(samples);
  double chi2 = 0;
  unsigned dof = 0;
  bool ok = true;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const BigRational p = law.at(static_cast<unsigned>(k));
    const double pd = p.get_d();
    const double freq = static_cast<double>(counts[k]) / N;
    const double se = std::sqrt(pd * (1 - pd) / N);
    bool cell_ok;
    std::string z = "-";
    if (p == 0 || p == 1) {
      // Degenerate cells have zero variance: the count must be exact.
      cell_ok = counts[k] == (p == 0 ? 0 : samples);
    } else {
      const double zv = (freq - pd) / se;
      cell_ok = std::abs(zv) <= 3;
      z = fmt::format("{:.2f}", zv);
      chi2 += std::pow(static_cast<double>(counts[k]) - N * pd, 2) / (N * pd);
      ++dof;
    }
    ok = ok && cell_ok;
    t.rows.push_back({int_cell(k), int_cell(counts[k]),
                      float_cell({freq, 0, false}, config.precision), rational_cell(p),
                      float_cell({se, 0, false}, config.precision), text_cell(z),
                      Cell{cell_ok ? "yes" : "NO", cell_ok}});
  }
  t.notes.push_back(fmt::format("samples {}, seed {}, {} candidate MTIs", samples, config.seed,
                                sampler.candidates().size()));
  t.notes.push_back(fmt::format("chi-square {:.4f} on {} degrees of freedom (reported only)",
                                chi2, dof > 0 ? dof - 1 : 0));
  r.tables.push_back(std::move(t));
  r.passed = ok;
  return r;
}

// -------------------------------------------------------------------- dist

Report distribution(QType type, unsigned r1, unsigned r2, const ReportConfig &config) {
  config.validate();
  const auto law = isotropy_law(type, r1, r2);
  Report r;
  r.command = fmt::format("dist {} {} {}", type_code(type), r1, r2);
  Table t;
  t.title = fmt::format("Isotropy-rank law, {} at {}", type_label(type), signature(r1, r2));
  t.columns = {"k", "probability", "decimal"};
  for (unsigned k = 0; k <= r1 / 2; ++k)
    t.rows.push_back({int_cell(k), rational_cell(law.at(k)),
                      text_cell(format_fixed(law.at(k), config.precision))});
  r.tables.push_back(std::move(t));
  return r;
}

// -------------------------------------------------------------------- mass

Report mass(unsigned degree, unsigned long prime, const ReportConfig &config) {
  config.validate();
  if (degree == 0)
    throw std::invalid_argument("degree must be positive");
  if (!is_prime(prime))
    throw std::invalid_argument(fmt::format("{} is not prime", prime));
  Report r;
  r.command = fmt::format("mass {} {}", degree, prime);
  Table t;
  t.title = fmt::format("Local masses of degree {} algebras over Q_{}", degree, prime);
  t.columns = {"symbol", "disc exponent", "mass in x = 1/p", "mass", "decimal"};
  MassPoly sum;
  for (const auto &s : enumerate_symbols(degree)) {
    const auto m = symbol_mass(s);
    sum += m;
    const auto v = m.at_prime(prime);
    t.rows.push_back({text_cell(s.to_string()), int_cell(s.disc_exponent()),
                      text_cell(m.to_string()), rational_cell(v),
                      text_cell(format_fixed(v, config.precision))});
  }
  const auto c = c_poly(degree);
  const auto total = sum.at_prime(prime);
  t.rows.push_back({text_cell("total"), text_cell("-"), text_cell(sum.to_string()),
                    rational_cell(total), text_cell(format_fixed(total, config.precision))});
  t.notes.push_back(fmt::format("c({}) = {}", degree, c.to_string()));
  r.tables.push_back(std::move(t));
  r.passed = sum == c;
  return r;
}

} // namespace selmer::report
