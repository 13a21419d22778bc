#include "wedgetail/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "wedgetail/errors.hpp"

namespace wedgetail {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  if (line.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    std::istringstream stream(line);
    std::string token;
    while (stream >> token) fields.push_back(token);
  }
  return fields;
}

enum class field_kind { finite_number, nonfinite_number, not_a_number };

field_kind classify_field(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ptr != last || field.empty()) return field_kind::not_a_number;
  if (ec == std::errc::result_out_of_range || !std::isfinite(out)) {
    return field_kind::nonfinite_number;
  }
  if (ec != std::errc()) return field_kind::not_a_number;
  return field_kind::finite_number;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw error(errc::file_not_found, "cannot open " + path.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out.is_open()) {
    throw error(errc::io_error, "cannot write " + path.string());
  }
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw error(errc::io_error, "write failed for " + path.string());
  }
}

// Tracks physical 1-based line numbers and skips blank lines.
bool next_content_line(std::istream& in, std::string& line,
                       std::size_t& row) {
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

numeric_table read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  numeric_table table;
  std::string line;
  std::size_t row = 0;
  bool saw_first_row = false;
  std::size_t ncols = 0;

  while (next_content_line(in, line, row)) {
    const std::vector<std::string> fields = split_fields(line);
    std::vector<double> values(fields.size());
    std::vector<field_kind> kinds(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      kinds[c] = classify_field(fields[c], values[c]);
    }
    if (!saw_first_row) {
      saw_first_row = true;
      ncols = fields.size();
      const bool all_non_numeric =
          std::all_of(kinds.begin(), kinds.end(), [](field_kind k) {
            return k == field_kind::not_a_number;
          });
      if (all_non_numeric) {
        table.header = fields;
        table.columns.resize(ncols);
        continue;
      }
      table.columns.resize(ncols);
    }
    if (fields.size() != ncols) {
      throw parse_error(row, 0,
                        "expected " + std::to_string(ncols) + " fields, got " +
                            std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (kinds[c] != field_kind::finite_number) {
        throw parse_error(row, c + 1,
                          "'" + fields[c] + "' is not a finite number");
      }
      table.columns[c].push_back(values[c]);
    }
    ++table.rows;
  }
  if (!saw_first_row) {
    throw error(errc::empty_file, path.string() + " has no content");
  }
  return table;
}

void write_numeric_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  for (const auto& col : columns) {
    if (col.size() != columns.front().size()) {
      throw error(errc::invalid_argument, "columns of unequal length");
    }
  }
  if (!header.empty() && header.size() != columns.size()) {
    throw error(errc::invalid_argument, "header width differs from data");
  }
  std::ofstream out = open_output(path);
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      out << (c ? "," : "") << header[c];
    }
    out << '\n';
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_double(columns[c][r]);
    }
    out << '\n';
  }
  finish_output(out, path);
}

sample2 read_xy_csv(const std::filesystem::path& path) {
  const numeric_table table = read_numeric_csv(path);
  if (table.columns.size() != 2) {
    throw parse_error(1, 0,
                      "expected two numeric columns, got " +
                          std::to_string(table.columns.size()));
  }
  sample2 points;
  points.reserve(table.rows);
  for (std::size_t r = 0; r < table.rows; ++r) {
    points.push_back({table.columns[0][r], table.columns[1][r]});
  }
  return points;
}

void write_xy_csv(const std::filesystem::path& path, const sample2& points) {
  std::ofstream out = open_output(path);
  out << "x1,x2\n";
  for (const point2& p : points) {
    out << format_double(p.x1) << ',' << format_double(p.x2) << '\n';
  }
  finish_output(out, path);
}

std::vector<degree_record> edges_to_degrees(
    const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>>
      counts;
  std::string line;
  std::size_t row = 0;
  std::size_t edges = 0;
  while (next_content_line(in, line, row)) {
    if (line[line.find_first_not_of(" \t")] == '#' ||
        line[line.find_first_not_of(" \t")] == '%') {
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      throw parse_error(row, 0, "expected an edge 'src dst'");
    }
    ++edges;
    counts[fields[0]].first += 1;   // out-degree of the source
    counts[fields[1]].second += 1;  // in-degree of the destination
  }
  if (edges == 0) {
    throw error(errc::empty_file, path.string() + " has no edges");
  }

  std::vector<degree_record> records;
  records.reserve(counts.size());
  bool all_integer = true;
  std::vector<long long> keys;
  keys.reserve(counts.size());
  for (const auto& [node, degs] : counts) {
    records.push_back({node, degs.first, degs.second});
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(node.data(), node.data() + node.size(), value);
    if (ec != std::errc() || ptr != node.data() + node.size()) {
      all_integer = false;
    }
    keys.push_back(value);
  }
  if (all_integer) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<degree_record> sorted;
    sorted.reserve(records.size());
    for (std::size_t i : order) sorted.push_back(std::move(records[i]));
    return sorted;
  }
  std::sort(records.begin(), records.end(),
            [](const degree_record& a, const degree_record& b) {
              return a.node < b.node;
            });
  return records;
}

void write_degrees_csv(const std::filesystem::path& path,
                       const std::vector<degree_record>& records) {
  std::ofstream out = open_output(path);
  out << "node,out_degree,in_degree\n";
  for (const degree_record& rec : records) {
    out << rec.node << ',' << rec.out_degree << ',' << rec.in_degree << '\n';
  }
  finish_output(out, path);
}

std::vector<double> prices_to_returns(std::span<const double> prices,
                                      bool log_returns) {
  if (prices.size() < 2) {
    throw error(errc::too_short, "need at least two prices");
  }
  for (double p : prices) {
    if (!(p > 0.0)) {
      throw error(errc::nonpositive_price, "prices must be positive");
    }
  }
  std::vector<double> returns(prices.size() - 1);
  for (std::size_t t = 1; t < prices.size(); ++t) {
    returns[t - 1] = log_returns ? std::log(prices[t] / prices[t - 1])
                                 : (prices[t] - prices[t - 1]) / prices[t - 1];
  }
  return returns;
}

void write_curve_csv(const std::filesystem::path& path,
                     const estimator_curve& curve) {
  std::ofstream out = open_output(path);
  out << (curve.has_theta ? "k,value,theta\n" : "k,value\n");
  for (const curve_entry& e : curve.entries) {
    out << e.k << ',' << format_double(e.value);
    if (curve.has_theta) out << ',' << format_double(e.theta);
    out << '\n';
  }
  finish_output(out, path);
}

void write_angular_csv(const std::filesystem::path& path,
                       const angular_sample& angles) {
  std::ofstream out = open_output(path);
  out << "theta,norm\n";
  for (std::size_t i = 0; i < angles.thetas.size(); ++i) {
    out << format_double(angles.thetas[i]) << ','
        << format_double(angles.norms[i]) << '\n';
  }
  finish_output(out, path);
}

void write_s0_csv(const std::filesystem::path& path,
                  const empirical_angular_measure& measure) {
  std::ofstream out = open_output(path);
  out << "mu1,mu2,weight\n";
  for (const auto& atom : measure.atoms) {
    out << format_double(atom.mu.x1) << ',' << format_double(atom.mu.x2)
        << ',' << format_double(atom.weight) << '\n';
  }
  finish_output(out, path);
}

void write_pair_curves_csv(const std::filesystem::path& path,
                           const estimator_curve& eta_curve,
                           const estimator_curve& neg_eta_curve) {
  if (eta_curve.entries.size() != neg_eta_curve.entries.size()) {
    throw error(errc::length_mismatch, "curves cover different k grids");
  }
  std::ofstream out = open_output(path);
  out << "k,hillish,hillish_neg\n";
  for (std::size_t i = 0; i < eta_curve.entries.size(); ++i) {
    if (eta_curve.entries[i].k != neg_eta_curve.entries[i].k) {
      throw error(errc::length_mismatch, "curves cover different k grids");
    }
    out << eta_curve.entries[i].k << ','
        << format_double(eta_curve.entries[i].value) << ','
        << format_double(neg_eta_curve.entries[i].value) << '\n';
  }
  finish_output(out, path);
}

void write_ratio_table_csv(const std::filesystem::path& path,
                           const std::vector<ratio_row>& rows) {
  std::ofstream out = open_output(path);
  out << "rep,quantity,x,ratio\n";
  for (const ratio_row& row : rows) {
    out << row.rep << ',' << row.quantity << ',' << format_double(row.x)
        << ',' << format_double(row.ratio) << '\n';
  }
  finish_output(out, path);
}

void write_ratio_summary_csv(const std::filesystem::path& path,
                             const std::vector<ratio_summary_row>& summary) {
  std::ofstream out = open_output(path);
  out << "quantity,x,min,q1,median,q3,max\n";
  for (const ratio_summary_row& row : summary) {
    out << row.quantity << ',' << format_double(row.x) << ','
        << format_double(row.min) << ',' << format_double(row.q1) << ','
        << format_double(row.median) << ',' << format_double(row.q3) << ','
        << format_double(row.max) << '\n';
  }
  finish_output(out, path);
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

double from_json_or_nan(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

ordered_json to_json(const std::optional<double>& opt) {
  if (!opt) return nullptr;
  return *opt;
}

ordered_json curve_to_json(const estimator_curve& curve) {
  ordered_json entries = ordered_json::array();
  for (const curve_entry& e : curve.entries) {
    ordered_json entry = ordered_json::array({e.k, e.value});
    if (curve.has_theta) entry.push_back(e.theta);
    entries.push_back(std::move(entry));
  }
  return ordered_json{{"has_theta", curve.has_theta},
                      {"entries", std::move(entries)}};
}

estimator_curve curve_from_json(const ordered_json& j) {
  estimator_curve curve;
  curve.has_theta = j.at("has_theta").get<bool>();
  for (const ordered_json& entry : j.at("entries")) {
    curve_entry e;
    e.k = entry.at(0).get<std::size_t>();
    e.value = entry.at(1).get<double>();
    if (curve.has_theta) e.theta = entry.at(2).get<double>();
    curve.entries.push_back(e);
  }
  return curve;
}

ordered_json summary_to_json(const curve_summary& s) {
  return ordered_json{{"mean", to_json_or_null(s.mean)},
                      {"max_dev", to_json_or_null(s.max_dev)},
                      {"curve", curve_to_json(s.curve)}};
}

curve_summary summary_from_json(const ordered_json& j) {
  curve_summary s;
  s.mean = from_json_or_nan(j.at("mean"));
  s.max_dev = from_json_or_nan(j.at("max_dev"));
  s.curve = curve_from_json(j.at("curve"));
  return s;
}

ordered_json branch_to_json(const branch_diagnostics& d) {
  return ordered_json{{"alpha0", to_json(d.alpha0)},
                      {"n_points", d.n_points},
                      {"hillish_eta", summary_to_json(d.hillish_eta)},
                      {"hillish_neg_eta", summary_to_json(d.hillish_neg_eta)},
                      {"hrv_supported", d.hrv_supported}};
}

branch_diagnostics branch_from_json(const ordered_json& j) {
  branch_diagnostics d;
  if (!j.at("alpha0").is_null()) d.alpha0 = j.at("alpha0").get<double>();
  d.n_points = j.at("n_points").get<std::size_t>();
  d.hillish_eta = summary_from_json(j.at("hillish_eta"));
  d.hillish_neg_eta = summary_from_json(j.at("hillish_neg_eta"));
  d.hrv_supported = j.at("hrv_supported").get<bool>();
  return d;
}

ordered_json config_to_json(const hrv_config& c) {
  ordered_json j{{"k_angles", c.k_angles},
                 {"q_low", c.q_low},
                 {"q_high", c.q_high},
                 {"wedge_override", nullptr},
                 {"k_marginal", c.k_marginal},
                 {"k_alpha0", c.k_alpha0},
                 {"marginal",
                  c.marginal == marginal_estimator::hill_estimator ? "hill"
                                                                   : "qq"},
                 {"pool_branches", c.pool_branches},
                 {"alpha0_margin", c.alpha0_margin},
                 {"hillish_band", c.hillish_band},
                 {"stable_low_frac", c.stable_low_frac},
                 {"stable_high_frac", c.stable_high_frac},
                 {"hillish_grid_points", c.hillish_grid_points},
                 {"jitter_ties", c.jitter_ties},
                 {"jitter_seed", c.jitter_seed}};
  if (c.wedge_override) {
    j["wedge_override"] =
        ordered_json{{"a_l", c.wedge_override->a_l},
                     {"a_u", c.wedge_override->a_u}};
  }
  return j;
}

hrv_config config_from_json(const ordered_json& j) {
  hrv_config c;
  c.k_angles = j.at("k_angles").get<std::size_t>();
  c.q_low = j.at("q_low").get<double>();
  c.q_high = j.at("q_high").get<double>();
  if (!j.at("wedge_override").is_null()) {
    c.wedge_override = wedge(j.at("wedge_override").at("a_l").get<double>(),
                             j.at("wedge_override").at("a_u").get<double>());
  }
  c.k_marginal = j.at("k_marginal").get<std::size_t>();
  c.k_alpha0 = j.at("k_alpha0").get<std::size_t>();
  c.marginal = j.at("marginal").get<std::string>() == "qq"
                   ? marginal_estimator::qq_estimator
                   : marginal_estimator::hill_estimator;
  c.pool_branches = j.at("pool_branches").get<bool>();
  c.alpha0_margin = j.at("alpha0_margin").get<double>();
  c.hillish_band = j.at("hillish_band").get<double>();
  c.stable_low_frac = j.at("stable_low_frac").get<double>();
  c.stable_high_frac = j.at("stable_high_frac").get<double>();
  c.hillish_grid_points = j.at("hillish_grid_points").get<std::size_t>();
  c.jitter_ties = j.at("jitter_ties").get<bool>();
  c.jitter_seed = j.at("jitter_seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void write_report_json(const std::filesystem::path& path,
                       const hrv_report& report) {
  ordered_json j{
      {"schema_version", 1},
      {"config", config_to_json(report.config)},
      {"n", report.n},
      {"wedge", ordered_json{{"a_l", report.w.a_l},
                             {"a_u", report.w.a_u},
                             {"fitted", report.wedge_fitted}}},
      {"alpha_hat", report.alpha_hat},
      {"alpha_hat_x1", report.alpha_hat_x1},
      {"alpha_hat_x2", report.alpha_hat_x2},
      {"alpha0_above", to_json(report.alpha0_above)},
      {"alpha0_below", to_json(report.alpha0_below)},
      {"alpha0_pooled", to_json(report.alpha0_pooled)},
      {"b0_hat", to_json(report.b0_hat)},
      {"k_used", report.k_used},
      {"above", report.above ? branch_to_json(*report.above)
                             : ordered_json(nullptr)},
      {"below", report.below ? branch_to_json(*report.below)
                             : ordered_json(nullptr)},
      {"hrv_supported", report.hrv_supported},
      {"flags", report.flags}};
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  finish_output(out, path);
}

hrv_report read_report_json(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  ordered_json j;
  try {
    in >> j;
    if (j.at("schema_version").get<int>() != 1) {
      throw error(errc::parse_error, "unsupported report schema version");
    }
    hrv_report report;
    report.config = config_from_json(j.at("config"));
    report.n = j.at("n").get<std::size_t>();
    report.w = wedge(j.at("wedge").at("a_l").get<double>(),
                     j.at("wedge").at("a_u").get<double>());
    report.wedge_fitted = j.at("wedge").at("fitted").get<bool>();
    report.alpha_hat = j.at("alpha_hat").get<double>();
    report.alpha_hat_x1 = j.at("alpha_hat_x1").get<double>();
    report.alpha_hat_x2 = j.at("alpha_hat_x2").get<double>();
    const auto read_opt = [&](const char* key) -> std::optional<double> {
      if (j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<double>();
    };
    report.alpha0_above = read_opt("alpha0_above");
    report.alpha0_below = read_opt("alpha0_below");
    report.alpha0_pooled = read_opt("alpha0_pooled");
    report.b0_hat = read_opt("b0_hat");
    report.k_used = j.at("k_used").get<std::size_t>();
    if (!j.at("above").is_null()) {
      report.above = branch_from_json(j.at("above"));
    }
    if (!j.at("below").is_null()) {
      report.below = branch_from_json(j.at("below"));
    }
    report.hrv_supported = j.at("hrv_supported").get<bool>();
    report.flags = j.at("flags").get<std::vector<std::string>>();
    return report;
  } catch (const ordered_json::exception& e) {
    throw error(errc::parse_error,
                path.string() + ": " + std::string(e.what()));
  }
}

}  // namespace wedgetail
