// Command-line front end. Every subcommand delegates to one library
// operation; all numeric output goes through format_double so repeated runs
// with the same flags are byte-identical.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wedgetail/angular.hpp"
#include "wedgetail/errors.hpp"
#include "wedgetail/geometry.hpp"
#include "wedgetail/hrv.hpp"
#include "wedgetail/io.hpp"
#include "wedgetail/risk.hpp"
#include "wedgetail/simulate.hpp"
#include "wedgetail/tail_estimators.hpp"
#include "wedgetail/types.hpp"

namespace wt = wedgetail;

namespace {

std::vector<double> load_column(const std::string& path, std::size_t col) {
  const wt::numeric_table table = wt::read_numeric_csv(path);
  if (col < 1 || col > table.columns.size()) {
    throw wt::error(wt::errc::invalid_argument,
                    "column " + std::to_string(col) + " not in file with " +
                        std::to_string(table.columns.size()) + " columns");
  }
  return table.columns[col - 1];
}

std::string opt_str(const std::optional<double>& v) {
  return v ? wt::format_double(*v) : "na";
}

const char* bool_str(bool v) { return v ? "true" : "false"; }

// --al/--au pair shared by several subcommands; explicit wedge wins over a
// fitted one.
struct wedge_options {
  double a_l = 0.0;
  double a_u = 0.0;
  CLI::Option* opt_l = nullptr;
  CLI::Option* opt_u = nullptr;

  void attach(CLI::App* cmd) {
    opt_l = cmd->add_option("--al", a_l,
                            "lower wedge slope (with --au: skip fitting)")
                ->check(CLI::PositiveNumber);
    opt_u = cmd->add_option("--au", a_u,
                            "upper wedge slope (with --al: skip fitting)")
                ->check(CLI::PositiveNumber);
    opt_l->needs(opt_u);
    opt_u->needs(opt_l);
  }

  bool given() const { return opt_l->count() > 0 && opt_u->count() > 0; }
  wt::wedge value() const { return wt::wedge(a_l, a_u); }
};

void print_report_summary(const wt::hrv_report& rep) {
  std::cout << "n=" << rep.n << '\n';
  std::cout << "wedge=" << (rep.wedge_fitted ? "fitted" : "given")
            << " a_l=" << wt::format_double(rep.w.a_l)
            << " a_u=" << wt::format_double(rep.w.a_u)
            << " brackets_diagonal=" << bool_str(rep.w.brackets_diagonal())
            << '\n';
  std::cout << "alpha_hat=" << wt::format_double(rep.alpha_hat)
            << " x1=" << wt::format_double(rep.alpha_hat_x1)
            << " x2=" << wt::format_double(rep.alpha_hat_x2) << '\n';
  std::cout << "alpha0_above=" << opt_str(rep.alpha0_above) << '\n';
  std::cout << "alpha0_below=" << opt_str(rep.alpha0_below) << '\n';
  std::cout << "alpha0_pooled=" << opt_str(rep.alpha0_pooled) << '\n';
  std::cout << "b0_hat=" << opt_str(rep.b0_hat) << '\n';
  std::cout << "k_used=" << rep.k_used << '\n';
  std::cout << "hrv_supported=" << bool_str(rep.hrv_supported) << '\n';
  for (const std::string& flag : rep.flags) {
    std::cout << "flag: " << flag << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "wedgetail: heavy-tail dependence analysis around a forbidden wedge"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a model sample");
  std::string sim_model_name;
  wt::sim_config sim_cfg;
  std::string sim_out;
  sim->add_option("--model", sim_model_name, "example1 or example2")
      ->required()
      ->check(CLI::IsMember({"example1", "example2"}));
  sim->add_option("--n", sim_cfg.n, "sample size")->required();
  sim->add_option("--seed", sim_cfg.seed, "generator seed (default 0)");
  sim->add_option("--out", sim_out, "output CSV path")->required();
  sim->callback([&] {
    sim_cfg.model = sim_model_name == "example1" ? wt::sim_model::example1
                                                 : wt::sim_model::example2;
    wt::write_xy_csv(sim_out, wt::generate(sim_cfg));
  });

  // hill
  auto* hill_cmd = app.add_subcommand("hill", "tail index at one k");
  std::string hill_in;
  std::size_t hill_col = 1, hill_k = 0;
  hill_cmd->add_option("--in", hill_in, "input CSV")->required();
  hill_cmd->add_option("--col", hill_col, "1-based column (default 1)");
  hill_cmd->add_option("--k", hill_k, "number of upper order statistics")
      ->required();
  hill_cmd->callback([&] {
    std::cout << wt::format_double(wt::hill(load_column(hill_in, hill_col),
                                            hill_k))
              << '\n';
  });

  // althill
  auto* alt = app.add_subcommand(
      "althill", "tail index curve over k = ceil(n^theta)");
  std::string alt_in, alt_out;
  std::size_t alt_col = 1;
  double alt_min = 0.10, alt_max = 0.95, alt_step = 0.01;
  alt->add_option("--in", alt_in, "input CSV")->required();
  alt->add_option("--col", alt_col, "1-based column (default 1)");
  alt->add_option("--theta-min", alt_min, "grid start (default 0.10)");
  alt->add_option("--theta-max", alt_max, "grid end (default 0.95)");
  alt->add_option("--theta-step", alt_step, "grid step (default 0.01)");
  alt->add_option("--out", alt_out, "output curve CSV")->required();
  alt->callback([&] {
    if (!(alt_min > 0.0 && alt_min <= alt_max && alt_max < 1.0 &&
          alt_step > 0.0)) {
      throw CLI::ValidationError(
          "need 0 < theta-min <= theta-max < 1 and theta-step > 0");
    }
    std::vector<double> grid;
    const auto steps =
        static_cast<std::size_t>((alt_max - alt_min) / alt_step + 1e-9);
    for (std::size_t i = 0; i <= steps; ++i) {
      grid.push_back(alt_min + static_cast<double>(i) * alt_step);
    }
    wt::write_curve_csv(
        alt_out, wt::alt_hill_curve(load_column(alt_in, alt_col), grid));
  });

  // qq
  auto* qq = app.add_subcommand("qq", "tail index from the QQ-plot slope");
  std::string qq_in;
  std::size_t qq_col = 1, qq_k = 0;
  qq->add_option("--in", qq_in, "input CSV")->required();
  qq->add_option("--col", qq_col, "1-based column (default 1)");
  qq->add_option("--k", qq_k, "number of upper order statistics")->required();
  qq->callback([&] {
    std::cout << wt::format_double(
                     wt::qq_slope(load_column(qq_in, qq_col), qq_k))
              << '\n';
  });

  // hillish
  auto* hsh = app.add_subcommand(
      "hillish", "product-measure diagnostic over concomitant ranks");
  std::string hsh_in, hsh_out;
  std::size_t hsh_xi_col = 1, hsh_eta_col = 2, hsh_k = 0;
  std::size_t hsh_kmin = 0, hsh_kmax = 0, hsh_kcount = 32;
  bool hsh_jitter = false;
  std::uint64_t hsh_jitter_seed = 0;
  hsh->add_option("--in", hsh_in, "input CSV with xi and eta columns")
      ->required();
  hsh->add_option("--xi-col", hsh_xi_col, "1-based xi column (default 1)");
  hsh->add_option("--eta-col", hsh_eta_col, "1-based eta column (default 2)");
  hsh->add_option("--k", hsh_k, "single k: print Hillish(xi,eta)");
  hsh->add_option("--k-min", hsh_kmin, "curve mode: smallest k");
  hsh->add_option("--k-max", hsh_kmax, "curve mode: largest k");
  hsh->add_option("--k-count", hsh_kcount,
                  "curve mode: grid size (default 32)");
  hsh->add_option("--out", hsh_out,
                  "curve mode: output CSV (k,hillish,hillish_neg)");
  hsh->add_flag("--jitter", hsh_jitter, "break eta ties with seeded jitter");
  hsh->add_option("--jitter-seed", hsh_jitter_seed, "jitter seed (default 0)");
  hsh->callback([&] {
    const wt::numeric_table table = wt::read_numeric_csv(hsh_in);
    if (hsh_xi_col < 1 || hsh_xi_col > table.columns.size() ||
        hsh_eta_col < 1 || hsh_eta_col > table.columns.size()) {
      throw wt::error(wt::errc::invalid_argument, "column out of range");
    }
    const std::vector<double>& xi = table.columns[hsh_xi_col - 1];
    const std::vector<double>& eta = table.columns[hsh_eta_col - 1];
    const wt::hillish_options opts{hsh_jitter, hsh_jitter_seed};
    const bool curve_mode = !hsh_out.empty();
    if (curve_mode == (hsh_k != 0)) {
      throw CLI::ValidationError(
          "give either --k (print one value) or --out with --k-min/--k-max "
          "(write the curve)");
    }
    if (curve_mode) {
      if (hsh_kmin < 2 || hsh_kmax <= hsh_kmin) {
        throw CLI::ValidationError("need 2 <= k-min < k-max");
      }
      std::vector<std::size_t> grid;
      const std::size_t count = std::max<std::size_t>(2, hsh_kcount);
      const std::size_t span = hsh_kmax - hsh_kmin;
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = hsh_kmin + (span * i) / (count - 1);
        if (grid.empty() || k > grid.back()) grid.push_back(k);
      }
      const auto [pos, neg] = wt::hillish_pair_curve(xi, eta, grid, opts);
      wt::write_pair_curves_csv(hsh_out, pos, neg);
    } else {
      std::cout << wt::format_double(wt::hillish(xi, eta, hsh_k, opts))
                << '\n';
    }
  });

  // diamond
  auto* dia = app.add_subcommand(
      "diamond", "angles and norms of the top-k points by L1 norm");
  std::string dia_in, dia_out;
  std::size_t dia_k = 200;
  dia->add_option("--in", dia_in, "input CSV")->required();
  dia->add_option("--k", dia_k, "threshold count (default 200)");
  dia->add_option("--out", dia_out, "output CSV (theta,norm)")->required();
  dia->callback([&] {
    wt::write_angular_csv(dia_out,
                          wt::top_k_angles(wt::read_xy_csv(dia_in), dia_k));
  });

  // wedge-fit
  auto* wf = app.add_subcommand(
      "wedge-fit", "wedge from quantiles of the top-k angles");
  std::string wf_in;
  std::size_t wf_k = 200;
  std::vector<double> wf_q{0.05, 0.95};
  wf->add_option("--in", wf_in, "input CSV")->required();
  wf->add_option("--k-angles", wf_k, "threshold count (default 200)");
  wf->add_option("--q", wf_q, "quantile pair (default 0.05,0.95)")
      ->expected(2)
      ->delimiter(',');
  wf->callback([&] {
    const wt::wedge w = wt::fit_wedge(
        wt::top_k_angles(wt::read_xy_csv(wf_in), wf_k), wf_q[0], wf_q[1]);
    std::cout << "a_l=" << wt::format_double(w.a_l) << '\n'
              << "a_u=" << wt::format_double(w.a_u) << '\n'
              << "theta_l=" << wt::format_double(w.theta_l()) << '\n'
              << "theta_u=" << wt::format_double(w.theta_u()) << '\n'
              << "brackets_diagonal=" << bool_str(w.brackets_diagonal())
              << '\n';
  });

  // hrv-detect
  auto* det = app.add_subcommand("hrv-detect",
                                 "full detection pipeline with a report");
  std::string det_in, det_out, det_marginal = "hill", det_filter = "none";
  wt::hrv_config det_cfg;
  std::vector<double> det_q{0.05, 0.95};
  std::vector<double> det_stable{0.005, 0.05};
  bool det_per_branch = false;
  wedge_options det_wedge;
  det->add_option("--in", det_in, "input CSV")->required();
  det->add_option("--k-angles", det_cfg.k_angles,
                  "angles used for the wedge fit (default 200)");
  det->add_option("--q", det_q, "wedge-fit quantile pair (default 0.05,0.95)")
      ->expected(2)
      ->delimiter(',');
  det_wedge.attach(det);
  det->add_option("--k-marginal", det_cfg.k_marginal,
                  "k for the marginal index (default n/30)");
  det->add_option("--k-alpha0", det_cfg.k_alpha0,
                  "k for the residual index (default n/60)");
  det->add_option("--marginal", det_marginal,
                  "marginal estimator: hill or qq (default hill)")
      ->check(CLI::IsMember({"hill", "qq"}));
  det->add_flag("--per-branch", det_per_branch,
                "judge each branch by its own alpha0 instead of the pooled "
                "one");
  det->add_option("--margin", det_cfg.alpha0_margin,
                  "required alpha0 - alpha gap (default 0.3)");
  det->add_option("--band", det_cfg.hillish_band,
                  "allowed product-diagnostic deviation from 1 (default "
                  "0.15)");
  det->add_option("--stable-range", det_stable,
                  "k range for curve summaries as fractions of n (default "
                  "0.005,0.05)")
      ->expected(2)
      ->delimiter(',');
  det->add_option("--grid-points", det_cfg.hillish_grid_points,
                  "points per diagnostic curve (default 64)");
  det->add_option("--quadrant-filter", det_filter,
                  "none or upper: keep only points whose nearest wedge point "
                  "lies on the upper boundary ray (for data with negative "
                  "coordinates)")
      ->check(CLI::IsMember({"none", "upper"}));
  det->add_flag("--jitter", det_cfg.jitter_ties,
                "break eta ties with seeded jitter");
  det->add_option("--jitter-seed", det_cfg.jitter_seed,
                  "jitter seed (default 0)");
  det->add_option("--out", det_out, "write the full JSON report here");
  det->callback([&] {
    det_cfg.q_low = det_q[0];
    det_cfg.q_high = det_q[1];
    det_cfg.stable_low_frac = det_stable[0];
    det_cfg.stable_high_frac = det_stable[1];
    det_cfg.marginal = det_marginal == "qq"
                           ? wt::marginal_estimator::qq_estimator
                           : wt::marginal_estimator::hill_estimator;
    det_cfg.pool_branches = !det_per_branch;
    if (det_wedge.given()) det_cfg.wedge_override = det_wedge.value();
    wt::sample2 points = wt::read_xy_csv(det_in);
    if (det_filter == "upper") {
      const wt::wedge for_filter = det_wedge.given()
                                       ? det_wedge.value()
                                       : wt::fit_wedge(
                                             wt::top_k_angles(
                                                 points, det_cfg.k_angles),
                                             det_cfg.q_low, det_cfg.q_high);
      points = wt::region_filter_upper(points, for_filter);
    }
    const wt::hrv_report rep = wt::detect(points, det_cfg);
    print_report_summary(rep);
    if (!det_out.empty()) wt::write_report_json(det_out, rep);
  });

  // risk
  auto* risk = app.add_subcommand(
      "risk", "tail probability of {x2 > c*x1 + x*sqrt(1+c^2)}-type "
              "half-planes via the residual measure");
  std::string risk_in;
  std::size_t risk_k = 0, risk_k_angles = 200;
  double risk_b0 = 0.0, risk_c = 0.0, risk_x = 0.0, risk_alpha0 = 0.0;
  std::vector<double> risk_q{0.05, 0.95};
  wedge_options risk_wedge;
  risk->add_option("--in", risk_in, "input CSV")->required();
  risk_wedge.attach(risk);
  risk->add_option("--k-angles", risk_k_angles,
                   "angles for the wedge fit when --al/--au are absent "
                   "(default 200)");
  risk->add_option("--q", risk_q,
                   "wedge-fit quantile pair (default 0.05,0.95)")
      ->expected(2)
      ->delimiter(',');
  risk->add_option("--c", risk_c, "event slope, must exceed a_u")->required();
  risk->add_option("--x", risk_x, "event level")->required();
  auto* risk_k_opt =
      risk->add_option("--k", risk_k, "number of top wedge distances");
  auto* risk_b0_opt = risk->add_option(
      "--b0", risk_b0, "fixed distance threshold (implies its own k)");
  risk_k_opt->excludes(risk_b0_opt);
  risk->add_option("--alpha0", risk_alpha0,
                   "residual tail index; estimated from the data when "
                   "omitted");
  risk->callback([&] {
    const bool has_k = risk->count("--k") > 0;
    const bool has_b0 = risk->count("--b0") > 0;
    if (has_k == has_b0) {
      throw CLI::ValidationError("give exactly one of --k or --b0");
    }
    const wt::sample2 points = wt::read_xy_csv(risk_in);
    const wt::wedge w =
        risk_wedge.given()
            ? risk_wedge.value()
            : wt::fit_wedge(wt::top_k_angles(points, risk_k_angles),
                            risk_q[0], risk_q[1]);
    const std::size_t k =
        has_k ? risk_k : wt::implied_k_for_b0(points, w, risk_b0);
    const double alpha0 = risk->count("--alpha0") > 0
                              ? risk_alpha0
                              : wt::estimate_alpha0(points, w, k, {});
    const wt::risk_query query{risk_c, risk_x};
    const wt::risk_estimate est =
        has_k ? wt::estimate_risk(points, w, query, alpha0, k)
              : wt::estimate_risk_fixed_b0(points, w, query, alpha0, risk_b0);
    for (const std::string& warning : est.warnings) {
      std::cerr << "warning: " << warning << '\n';
    }
    std::cout << wt::format_double(est.p_hat) << '\n';
  });

  // ratio-study
  auto* ratio = app.add_subcommand(
      "ratio-study", "estimated-over-exact ratios across replications");
  std::size_t ratio_reps = 100, ratio_n = 10000;
  wt::ratio_study_config ratio_cfg;
  ratio_cfg.base_seed = 0;
  std::string ratio_out, ratio_summary_out;
  std::vector<double> ratio_fit_q{0.05, 0.95};
  wedge_options ratio_wedge;
  ratio->add_option("--reps", ratio_reps, "replications (default 100)");
  ratio->add_option("--n", ratio_n, "sample size per replication (default "
                                    "10000)");
  ratio->add_option("--base-seed", ratio_cfg.base_seed,
                    "seed of replication 0; replication r uses base+r "
                    "(default 424242)");
  ratio->add_option("--b0", ratio_cfg.b0_target,
                    "fixed distance threshold (default 2)");
  ratio->add_option("--x", ratio_cfg.x_values, "event levels (default 1,4)")
      ->delimiter(',');
  ratio_wedge.attach(ratio);
  ratio->add_option("--fit-k-angles", ratio_cfg.fit_k_angles,
                    "angles for the per-replication wedge fit (default 100)");
  ratio->add_option("--fit-q", ratio_fit_q,
                    "quantile pair for the per-replication fit (default "
                    "0.05,0.95)")
      ->expected(2)
      ->delimiter(',');
  ratio->add_option("--out", ratio_out, "write the per-replication table "
                                        "here");
  ratio->add_option("--summary-out", ratio_summary_out,
                    "write the summary table here");
  ratio->callback([&] {
    ratio_cfg.fit_q_low = ratio_fit_q[0];
    ratio_cfg.fit_q_high = ratio_fit_q[1];
    if (ratio_wedge.given()) ratio_cfg.forced_wedge = ratio_wedge.value();
    const wt::ratio_study_result result =
        wt::ratio_study(ratio_reps, ratio_n, ratio_cfg);
    std::cout << "quantity,x,min,q1,median,q3,max\n";
    for (const wt::ratio_summary_row& row : result.summary) {
      std::cout << row.quantity << ',' << wt::format_double(row.x) << ','
                << wt::format_double(row.min) << ','
                << wt::format_double(row.q1) << ','
                << wt::format_double(row.median) << ','
                << wt::format_double(row.q3) << ','
                << wt::format_double(row.max) << '\n';
    }
    if (!ratio_out.empty()) wt::write_ratio_table_csv(ratio_out, result.rows);
    if (!ratio_summary_out.empty()) {
      wt::write_ratio_summary_csv(ratio_summary_out, result.summary);
    }
  });

  // degrees
  auto* deg = app.add_subcommand(
      "degrees", "directed edge list to per-node degree counts");
  std::string deg_in, deg_out, deg_xy_out;
  deg->add_option("--in", deg_in, "edge list file")->required();
  deg->add_option("--out", deg_out, "degree CSV (node,out_degree,in_degree)");
  deg->add_option("--xy-out", deg_xy_out,
                  "two-column CSV of (out_degree,in_degree) pairs, ready for "
                  "wedge-fit and hrv-detect");
  deg->callback([&] {
    const std::vector<wt::degree_record> records =
        wt::edges_to_degrees(deg_in);
    std::uint64_t edges = 0;
    for (const wt::degree_record& r : records) edges += r.out_degree;
    std::cout << "nodes=" << records.size() << '\n'
              << "edges=" << edges << '\n';
    if (!deg_out.empty()) wt::write_degrees_csv(deg_out, records);
    if (!deg_xy_out.empty()) {
      wt::sample2 xy;
      xy.reserve(records.size());
      for (const wt::degree_record& r : records) {
        xy.push_back({static_cast<double>(r.out_degree),
                      static_cast<double>(r.in_degree)});
      }
      wt::write_xy_csv(deg_xy_out, xy);
    }
  });

  // returns
  auto* ret = app.add_subcommand(
      "returns", "price columns to per-column return columns");
  std::string ret_in, ret_out;
  bool ret_log = false;
  ret->add_option("--in", ret_in, "price CSV (one or more columns)")
      ->required();
  ret->add_flag("--log", ret_log, "log returns instead of simple returns");
  ret->add_option("--out", ret_out, "output CSV")->required();
  ret->callback([&] {
    const wt::numeric_table table = wt::read_numeric_csv(ret_in);
    std::vector<std::vector<double>> columns;
    std::vector<std::string> header;
    columns.reserve(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      columns.push_back(wt::prices_to_returns(table.columns[c], ret_log));
      header.push_back("r" + std::to_string(c + 1));
    }
    wt::write_numeric_csv(ret_out, header, columns);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wt::error& e) {
    std::cerr << "error (" << wt::errc_name(e.code()) << "): " << e.what()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
