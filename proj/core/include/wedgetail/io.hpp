#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wedgetail/angular.hpp"
#include "wedgetail/hrv.hpp"
#include "wedgetail/risk.hpp"
#include "wedgetail/types.hpp"

namespace wedgetail {

// Shortest decimal string that round-trips to the same double. All CSV
// writers below use this, so written files re-read bit-identically.
std::string format_double(double value);

// Generic numeric table, column oriented. Fields split on commas or runs of
// whitespace. The first row is taken as a header only when none of its
// fields parse as a number (a mixed row is a bad data row, not a header).
// Every data row must be fully numeric and finite; parse errors carry
// 1-based row/column positions, column 0 meaning the row shape itself.
struct numeric_table {
  std::vector<std::string> header;  // empty when the file had none
  std::vector<std::vector<double>> columns;
  std::size_t rows = 0;
};

numeric_table read_numeric_csv(const std::filesystem::path& path);

void write_numeric_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

// Bivariate sample: exactly two numeric columns.
sample2 read_xy_csv(const std::filesystem::path& path);
void write_xy_csv(const std::filesystem::path& path, const sample2& points);

// Directed edge list reduced to per-node degree counts. Each line names an
// edge "src dst"; extra trailing fields (weights, timestamps) are ignored,
// lines starting with '#' or '%' are comments, and ids are arbitrary tokens.
// Nodes are sorted numerically when every id parses as an integer,
// lexicographically otherwise, so the output order is reproducible.
struct degree_record {
  std::string node;
  std::uint64_t out_degree = 0;
  std::uint64_t in_degree = 0;
};

std::vector<degree_record> edges_to_degrees(const std::filesystem::path& path);

void write_degrees_csv(const std::filesystem::path& path,
                       const std::vector<degree_record>& records);

// Simple returns p_t/p_{t-1} - 1, or log returns when log_returns is set.
// Needs at least two prices, all strictly positive.
std::vector<double> prices_to_returns(std::span<const double> prices,
                                      bool log_returns = false);

// Estimator curve as CSV: "k,value", or "theta,k,value" when the curve
// carries the exploration exponent.
void write_curve_csv(const std::filesystem::path& path,
                     const estimator_curve& curve);

void write_angular_csv(const std::filesystem::path& path,
                       const angular_sample& angles);

void write_s0_csv(const std::filesystem::path& path,
                  const empirical_angular_measure& measure);

// Two product-diagnostic curves over a shared k grid: "k,hillish,hillish_neg".
void write_pair_curves_csv(const std::filesystem::path& path,
                           const estimator_curve& eta_curve,
                           const estimator_curve& neg_eta_curve);

void write_ratio_table_csv(const std::filesystem::path& path,
                           const std::vector<ratio_row>& rows);

void write_ratio_summary_csv(const std::filesystem::path& path,
                             const std::vector<ratio_summary_row>& summary);

// Detection report as JSON, including the resolved configuration and a
// schema_version field. read(write(r)) reproduces every numeric field to
// within round-trip precision.
void write_report_json(const std::filesystem::path& path,
                       const hrv_report& report);

hrv_report read_report_json(const std::filesystem::path& path);

}  // namespace wedgetail
