#pragma once

// Tables, verification suites and Monte Carlo runs behind the selmer-lab CLI.
// Every command builds a Report first; rendering is a separate step so the
// same content comes out as Markdown, CSV or JSON.

#include "selmer/enumerate.hpp"
#include "selmer/euler.hpp"
#include "selmer/types.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace selmer::report {

enum class Format { md, csv, json };

Format parse_format(const std::string &name);

struct ReportConfig {
  Format format = Format::md;
  std::uint64_t prime_bound = kDefaultPrimeBound;
  int precision = 4;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultEnumerationCap;
  unsigned max_degree = 20; // last n in the bi-trivial table
  unsigned threads = 0;     // 0: SELMER_LAB_THREADS, else hardware concurrency

  /// Throws std::invalid_argument on a non-positive bound or bad precision.
  void validate() const;
};

/// Worker count actually used for a config.
unsigned thread_count(const ReportConfig &config);

/// `text` goes into Markdown and CSV, `value` into JSON. Rationals are stored
/// as "num/den" strings, floats as {"value", "error"} objects.
struct Cell {
  std::string text;
  nlohmann::json value;
};

Cell text_cell(const std::string &s);
Cell int_cell(std::uint64_t v);
Cell rational_cell(const BigRational &r);
Cell float_cell(const Certified &c, int precision);

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
};

struct Report {
  std::string command;
  std::vector<Table> tables;
  std::optional<bool> passed; // set by verify, mc and mass

  /// 0 unless a check failed.
  int exit_code() const { return passed.value_or(true) ? 0 : 1; }
};

nlohmann::json to_json(const Report &r);
std::string render(const Report &r, Format format);

const std::vector<std::string> &table_targets();
const std::vector<std::string> &verify_suites();

/// Throws std::invalid_argument for an unknown target.
Report tables(const std::string &target, const ReportConfig &config);
/// Throws std::invalid_argument for an unknown suite; failed checks only show
/// up in the report.
Report verify(const std::string &suite, const ReportConfig &config);
/// Throws CapExceeded when the model space is larger than config.cap.
Report monte_carlo(QType type, unsigned r1, unsigned r2, std::uint64_t samples,
                   const ReportConfig &config);
Report distribution(QType type, unsigned r1, unsigned r2, const ReportConfig &config);
Report mass(unsigned degree, unsigned long prime, const ReportConfig &config);

} // namespace selmer::report
