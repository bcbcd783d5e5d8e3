// selmer-lab: tables, verification suites and Monte Carlo runs.
// Exit codes: 0 success, 1 a check failed, 2 usage error.

#include "selmer/report.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace selmer;

int main(int argc, char **argv) {
  CLI::App app{"Rational 2-Selmer types, isotropy ranks and local masses"};
  app.require_subcommand(1);
  app.fallthrough();

  report::ReportConfig config;
  std::string format = "md";
  bool json = false;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"md", "csv", "json"}));
  app.add_flag("--json", json, "Same as --format json");
  app.add_option("--prime-bound", config.prime_bound, "Truncate Euler products here")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1000000000}));
  app.add_option("--precision", config.precision, "Decimals in float columns")
      ->check(CLI::Range(0, 30));
  app.add_option("--seed", config.seed, "Monte Carlo seed");
  app.add_option("--cap", config.cap, "Largest space dimension to enumerate")
      ->check(CLI::Range(1, 64));
  app.add_option("--max-degree", config.max_degree, "Last degree in the bi-trivial table");

  std::string target, suite, type_name;
  unsigned r1 = 0, r2 = 0, degree = 0;
  std::uint64_t samples = 0;
  unsigned long prime = 0;

  auto *tables = app.add_subcommand("tables", "Print a density table");
  tables->add_option("target", target, "s4-real, s4-mixed, s6-real, bi-trivial, quadratic, moments")
      ->required()
      ->check(CLI::IsMember(report::table_targets()));

  auto *verify = app.add_subcommand("verify", "Check closed forms against enumeration");
  verify->add_option("suite", suite, "counts, distributions, masses or all")
      ->required()
      ->check(CLI::IsMember(report::verify_suites()));

  auto *mc = app.add_subcommand("mc", "Sample random maximal isotropic subspaces");
  mc->add_option("type", type_name, "A1, A2, B1, B2, B3 or B4")->required();
  mc->add_option("r1", r1)->required();
  mc->add_option("r2", r2)->required();
  mc->add_option("samples", samples)->required()->check(CLI::PositiveNumber);

  auto *dist = app.add_subcommand("dist", "Print an isotropy-rank law");
  dist->add_option("type", type_name, "A1, A2, B1, B2, B3 or B4")->required();
  dist->add_option("r1", r1)->required();
  dist->add_option("r2", r2)->required();

  auto *mass = app.add_subcommand("mass", "Local masses by splitting symbol");
  mass->add_option("degree", degree)->required()->check(CLI::Range(1u, 24u));
  mass->add_option("prime", prime)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    config.format = report::parse_format(json ? "json" : format);
    report::Report out;
    if (*tables)
      out = report::tables(target, config);
    else if (*verify)
      out = report::verify(suite, config);
    else if (*mc)
      out = report::monte_carlo(parse_type(type_name), r1, r2, samples, config);
    else if (*dist)
      out = report::distribution(parse_type(type_name), r1, r2, config);
    else
      out = report::mass(degree, prime, config);
    std::cout << report::render(out, config.format);
    return out.exit_code();
  } catch (const std::exception &e) {
    std::cerr << "selmer-lab: " << e.what() << "\n";
    return 2;
  }
}
