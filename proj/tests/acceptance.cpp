// Acceptance gate: one PASS/FAIL line per criterion, with wall time.
// Published values are compared as printed, after half-even rounding of the
// computed value to the same number of decimals.

#include "selmer/density.hpp"
#include "selmer/distributions.hpp"
#include "selmer/report.hpp"

#include <fmt/format.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace selmer;
using namespace selmer::report;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int decimals(const std::string &printed) {
  const auto dot = printed.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
}

// Rounds `value` to the printed precision and compares the strings.
void expect_printed(Outcome &o, const std::string &label, double value,
                    const std::string &printed) {
  const auto got = format_fixed(value, decimals(printed));
  o.require(got == printed, fmt::format("{}: computed {} ({:.6f}), published {}", label, got,
                                        value, printed));
}

void expect_rational(Outcome &o, const std::string &label, const std::string &got,
                     const std::string &want) {
  o.require(parse_rational(got) == parse_rational(want),
            fmt::format("{}: got {}, want {}", label, got, want));
}

double value_of(const Cell &c) { return c.value.at("value").get<double>(); }

const std::vector<Cell> &row_for(const Report &r, const std::string &label) {
  for (const auto &row : r.tables.at(0).rows)
    if (row.at(0).text == label)
      return row;
  throw std::runtime_error("no row " + label);
}

std::string run_cli(const std::string &args, int &code) {
  const std::string cmd = std::string(SELMER_LAB_PATH) + " " + args;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    throw std::runtime_error("cannot start selmer-lab");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Outcome s4_real_densities() {
  Outcome o;
  const auto r = tables("s4-real", ReportConfig{});
  const std::vector<std::pair<std::string, std::string>> want{
      {"A(i)", "0.0018"}, {"A(ii)", "0.0423"}, {"B(i)", "0.7280"},
      {"B(ii)", "0.0996"}, {"B(iii)", "0.1138"}, {"B(iv)", "0.0143"}};
  for (const auto &[type, printed] : want) {
    const auto &row = row_for(r, type);
    o.require(row.at(1).text == printed,
              fmt::format("{}: emitted {} ({:.6f}), published {}", type, row.at(1).text,
                          value_of(row.at(1)), printed));
  }
  return o;
}

Outcome quartic_laws() {
  Outcome o;
  const auto real = tables("s4-real", ReportConfig{});
  const auto mixed = tables("s4-mixed", ReportConfig{});
  const auto &b1 = row_for(real, "B(i)");
  expect_rational(o, "B(i) (4,0) k=0", b1.at(2).text, "16/45");
  expect_rational(o, "B(i) (4,0) k=1", b1.at(3).text, "26/45");
  expect_rational(o, "B(i) (4,0) k=2", b1.at(4).text, "3/45");
  const auto &b1m = row_for(mixed, "B(i)");
  expect_rational(o, "B(i) (2,1) k=0", b1m.at(2).text, "4/5");
  expect_rational(o, "B(i) (2,1) k=1", b1m.at(3).text, "1/5");
  const auto &a1 = row_for(real, "A(i)");
  expect_rational(o, "A(i) (4,0) k=0", a1.at(2).text, "0");
  expect_rational(o, "A(i) (4,0) k=1", a1.at(3).text, "2/3");
  expect_rational(o, "A(i) (4,0) k=2", a1.at(4).text, "1/3");
  return o;
}

Outcome sextic_table() {
  Outcome o;
  const auto r = tables("s6-real", ReportConfig{});
  const auto &b1 = row_for(r, "B(i)");
  const std::array<const char *, 4> law{"512/1683", "976/1683", "190/1683", "5/1683"};
  for (std::size_t k = 0; k < law.size(); ++k)
    expect_rational(o, fmt::format("B(i) (6,0) k={}", k), b1.at(2 + k).text, law[k]);
  const double d = value_of(b1.at(1));
  o.require(std::abs(d - 0.8848) <= 5e-5, fmt::format("B(i) density {:.6f}", d));
  return o;
}

Outcome quadratic_table() {
  Outcome o;
  const auto r = tables("quadratic", ReportConfig{});
  expect_rational(o, "A(ii)", row_for(r, "A(ii)").at(2).text, "1/6");
  expect_rational(o, "B(iii)", row_for(r, "B(iii)").at(2).text, "5/6");
  expect_rational(o, "B(i)", row_for(r, "B(i)").at(2).text, "0");
  o.require(value_of(row_for(r, "B(i)").at(1)) == 0, "B(i) float value not exactly 0");
  return o;
}

Outcome bi_trivial_table() {
  Outcome o;
  const auto r = tables("bi-trivial", ReportConfig{});
  const std::vector<std::string> bi{"0.7280", "0.8848", "0.9434", "0.9732", "0.9863",
                                    "0.9931", "0.9965", "0.9982", "0.9991"};
  const std::vector<std::string> trivial{"0.6837", "0.8762", "0.9417", "0.9728", "0.9862",
                                         "0.9931", "0.9965", "0.9982", "0.9991"};
  const auto &rows = r.tables.at(0).rows;
  o.require(rows.size() == bi.size(), "wrong number of degrees");
  std::size_t matched = 0;
  for (std::size_t i = 0; i < rows.size() && i < bi.size(); ++i) {
    const auto n = rows[i].at(0).text;
    const bool a = rows[i].at(1).text == bi[i];
    const bool b = rows[i].at(2).text == trivial[i];
    matched += a + b;
    o.require(a, fmt::format("n={} B(i): emitted {} ({:.6f}), published {}", n,
                             rows[i].at(1).text, value_of(rows[i].at(1)), bi[i]));
    o.require(b, fmt::format("n={} trivial: emitted {} ({:.6f}), published {}", n,
                             rows[i].at(2).text, value_of(rows[i].at(2)), trivial[i]));
  }
  o.detail = fmt::format("{}/18 cells match", matched) + (o.detail.empty() ? "" : "; ") +
             o.detail;
  return o;
}

std::size_t count_rows(const Report &r, const std::string &prefix) {
  std::size_t n = 0;
  for (const auto &row : r.tables.at(0).rows)
    n += row.at(1).text.starts_with(prefix);
  return n;
}

void require_suite(Outcome &o, const Report &r) {
  o.require(r.passed == true, "suite reported a failure");
  for (const auto &row : r.tables.at(0).rows)
    if (!row.at(2).value.get<bool>())
      o.require(false, row.at(1).text + ": " + row.at(3).text);
}

Outcome counting_oracle() {
  Outcome o;
  const auto r = verify("counts", ReportConfig{});
  require_suite(o, r);
  // b(t) for t <= 4 in both models, and 4 cases for each (n, m) with 2n + m <= 4.
  o.require(count_rows(r, "b(") >= 10, "missing b(t) checks");
  o.require(count_rows(r, "d(") == 4 * 9, "missing d(n,m,k) checks");
  o.detail = o.detail.empty() ? fmt::format("{} checks", r.tables[0].rows.size()) : o.detail;
  return o;
}

Outcome distribution_oracle() {
  Outcome o;
  const auto r = verify("distributions", ReportConfig{});
  require_suite(o, r);
  // 6 types x 4 signatures, less B(ii) and B(iv) at (2,0).
  o.require(r.tables.at(0).rows.size() == 22, "expected 22 checks");
  o.detail = o.detail.empty() ? "22 type/signature pairs" : o.detail;
  return o;
}

Outcome mass_identities() {
  Outcome o;
  const auto r = verify("masses", ReportConfig{});
  require_suite(o, r);
  o.require(count_rows(r, "sum over S(") == 8, "expected n = 1..8");
  o.require(count_rows(r, "sum over even") == 4, "expected m = 1..4");
  o.require(count_rows(r, "unramified family") == 16, "expected m = 1..4, disc 0..3");
  return o;
}

Outcome quartic_constants() {
  Outcome o;
  const auto k = abcde(4);
  expect_rational(o, "a", to_string(k.a), "3/17");
  expect_rational(o, "c", to_string(k.c), "3/68");
  expect_rational(o, "d", to_string(k.d), "3/272");
  expect_rational(o, "e", to_string(k.e), "1/544");
  o.require(std::abs(k.b.value - 0.87434) <= 1e-5, fmt::format("b = {:.7f}", k.b.value));
  o.require(k.b.error <= 1e-6, fmt::format("b error bound {:.1e}", k.b.error));
  return o;
}

Outcome class_group_predictions() {
  Outcome o;
  const auto r = tables("moments", ReportConfig{});
  const std::array<std::array<const char *, 3>, 4> want{{{"0.8847", "0.7864", "0.6291"},
                                                          {"0.1106", "0.1966", "0.3146"},
                                                          {"0.0046", "0.0164", "0.0524"},
                                                          {"0.00008", "0.0006", "0.0037"}}};
  const auto &ranks = r.tables.at(0).rows;
  for (std::size_t rho = 0; rho < 4; ++rho)
    for (std::size_t s = 0; s < 3; ++s)
      expect_printed(o, fmt::format("rho={} {}", rho, r.tables[0].columns[s + 1]),
                     value_of(ranks.at(rho).at(s + 1)), want[rho][s]);
  const auto &avg = r.tables.at(1).rows;
  const std::array<const char *, 3> cl{"9/8", "5/4", "3/2"};
  const std::array<const char *, 3> narrow{"2", "3/2", "3/2"};
  for (std::size_t s = 0; s < 3; ++s) {
    expect_rational(o, "class " + avg.at(s).at(0).text, avg.at(s).at(1).text, cl[s]);
    expect_rational(o, "narrow " + avg.at(s).at(0).text, avg.at(s).at(2).text, narrow[s]);
  }
  return o;
}

Outcome monte_carlo_law() {
  Outcome o;
  const std::string args = "mc B1 4 0 100000 --seed 20261017 --json";
  int code1 = 0, code2 = 0;
  const auto first = run_cli(args, code1);
  const auto second = run_cli(args, code2);
  o.require(first == second, "re-run output differs");
  o.require(code1 == 0 && code2 == 0, fmt::format("exit codes {} {}", code1, code2));
  const auto j = nlohmann::json::parse(first);
  const auto &rows = j.at("tables").at(0).at("rows");
  const auto law = isotropy_distribution(QType::B1, 4, 0);
  const double n = 100000;
  std::string cells;
  std::uint64_t total = 0;
  for (const auto &row : rows) {
    const auto k = row.at(0).get<unsigned>();
    const auto count = row.at(1).get<std::uint64_t>();
    total += count;
    const double p = law.at(k).get_d();
    const double sigma = std::sqrt(p * (1 - p) / n);
    const double freq = static_cast<double>(count) / n;
    cells += fmt::format("{}k={}: {:.4f} vs {:.4f}", cells.empty() ? "" : ", ", k, freq, p);
    o.require(std::abs(freq - p) <= 3 * sigma, fmt::format("k={} off by more than 3 sigma", k));
  }
  o.require(total == 100000, "counts do not add up");
  o.detail = o.detail.empty() ? cells : o.detail + "; " + cells;
  return o;
}

struct Criterion {
  const char *id;
  const char *name;
  double limit_seconds;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "quartic totally real type densities", 10, s4_real_densities},
      {"AC2", "quartic isotropy-rank laws", 1, quartic_laws},
      {"AC3", "sextic totally real law and B(i) density", 10, sextic_table},
      {"AC4", "quadratic type densities", 10, quadratic_table},
      {"AC5", "B(i) and trivial densities, n = 4..20", 60, bi_trivial_table},
      {"AC6", "MTI counts against enumeration", 120, counting_oracle},
      {"AC7", "isotropy laws against enumeration", 300, distribution_oracle},
      {"AC8", "local mass identities", 30, mass_identities},
      {"AC9", "quartic constants a..e", 10, quartic_constants},
      {"AC10", "class group 2-rank predictions", 10, class_group_predictions},
      {"AC11", "seeded Monte Carlo for B(i) at (4,0)", 60, monte_carlo_law},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds)
      o.require(false, fmt::format("took {:.2f} s, limit {} s", secs, c.limit_seconds));
    failures += !o.ok;
    fmt::print("{:<5} {}  {} [{:.2f} s]{}{}\n", c.id, o.ok ? "PASS" : "FAIL", c.name, secs,
               o.detail.empty() ? "" : " : ", o.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures ? 1 : 0;
}
