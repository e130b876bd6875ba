// l1p: command-line front end for libl1precode. Eight commands cover
// single-point analysis (saddle, predict, simulate, tune) and the four
// parameter sweeps; every run can be replayed from its JSON sidecar.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "l1precode.h"

using nlohmann::json;

namespace {

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(l1p_status st) {
  switch (st) {
    case L1P_OK:
      return 0;
    case L1P_ERR_INVALID_ARGUMENT:
    case L1P_ERR_SCALING_UNDEFINED:
      return 2;
    case L1P_ERR_INFEASIBLE_TARGET:
      return 3;
    case L1P_ERR_DEGENERATE_SADDLE:
      return 4;
    case L1P_ERR_NO_CONVERGENCE:
      return 5;
    default:
      return 1;
  }
}

void check(l1p_status st, const std::string& what) {
  if (st != L1P_OK) throw CliError{exit_code_for(st), what + ": " + l1p_last_error()};
}

struct Saddle {
  l1p_saddle* p = nullptr;
  ~Saddle() { l1p_saddle_free(p); }
  Saddle() = default;
  Saddle(const Saddle&) = delete;
  Saddle& operator=(const Saddle&) = delete;
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_db(double lin) { return lin > 0.0 ? 10.0 * std::log10(lin) : -HUGE_VAL; }

struct TrialSpec {
  std::size_t n = 256;
  std::size_t m = 128;
  int num_channels = 1;
  int num_symbol_draws = 50;
  std::uint64_t seed = 0;
  std::optional<double> threshold;
  int threads = 1;
  std::size_t ref_sample_size = 100000;
  std::optional<int> max_iters;  // solver budget; empty = library default
};

struct TargetSpec {
  double kappa = 0.5;
  double pb = 1.0;
  std::string mode = "l1";
  std::optional<double> t_x;
};

struct Config {
  std::string command;
  l1p_params params{1.0, 1.0, 0.0, 0.0, 1.0, 0.0};
  std::optional<TrialSpec> trial;
  std::optional<TargetSpec> target;
  std::vector<double> grid;
  std::string out;
  int threshold_grid_size = 25;
  double max_failed_fraction = 0.0;
};

json params_to_json(const l1p_params& p) {
  return {{"rho", p.rho},         {"delta", p.delta}, {"lambda1", p.lambda1},
          {"lambda2", p.lambda2}, {"p_cap", p.p_cap}, {"sigma2", p.sigma2}};
}

void params_from_json(const json& j, l1p_params& p) {
  p.rho = j.value("rho", p.rho);
  p.delta = j.value("delta", p.delta);
  p.lambda1 = j.value("lambda1", p.lambda1);
  p.lambda2 = j.value("lambda2", p.lambda2);
  p.p_cap = j.value("p_cap", p.p_cap);
  p.sigma2 = j.value("sigma2", p.sigma2);
}

json trial_to_json(const TrialSpec& t) {
  json j{{"n", t.n},
         {"m", t.m},
         {"num_channels", t.num_channels},
         {"num_symbol_draws", t.num_symbol_draws},
         {"seed", t.seed},
         {"threads", t.threads},
         {"ref_sample_size", t.ref_sample_size}};
  if (t.threshold) j["threshold"] = *t.threshold;
  if (t.max_iters) j["max_iters"] = *t.max_iters;
  return j;
}

TrialSpec trial_from_json(const json& j) {
  TrialSpec t;
  t.n = j.value("n", t.n);
  t.m = j.value("m", t.m);
  t.num_channels = j.value("num_channels", t.num_channels);
  t.num_symbol_draws = j.value("num_symbol_draws", t.num_symbol_draws);
  t.seed = j.value("seed", t.seed);
  if (j.contains("threshold")) t.threshold = j["threshold"].get<double>();
  t.threads = j.value("threads", t.threads);
  t.ref_sample_size = j.value("ref_sample_size", t.ref_sample_size);
  if (j.contains("max_iters")) t.max_iters = j["max_iters"].get<int>();
  return t;
}

json target_to_json(const TargetSpec& t) {
  json j{{"kappa", t.kappa}, {"pb", t.pb}, {"mode", t.mode}};
  if (t.t_x) j["t_x"] = *t.t_x;
  return j;
}

TargetSpec target_from_json(const json& j) {
  TargetSpec t;
  t.kappa = j.value("kappa", t.kappa);
  t.pb = j.value("pb", t.pb);
  t.mode = j.value("mode", t.mode);
  if (j.contains("t_x")) t.t_x = j["t_x"].get<double>();
  return t;
}

json config_to_json(const Config& c) {
  json j{{"command", c.command},
         {"params", params_to_json(c.params)},
         {"sweep_grid", c.grid},
         {"output_path", c.out},
         {"threshold_grid_size", c.threshold_grid_size},
         {"max_failed_fraction", c.max_failed_fraction}};
  if (c.trial) j["trial"] = trial_to_json(*c.trial);
  if (c.target) j["target"] = target_to_json(*c.target);
  return j;
}

void config_from_json(const json& j, Config& c) {
  c.command = j.value("command", c.command);
  if (j.contains("params")) params_from_json(j["params"], c.params);
  if (j.contains("trial")) c.trial = trial_from_json(j["trial"]);
  if (j.contains("target")) c.target = target_from_json(j["target"]);
  if (j.contains("sweep_grid")) c.grid = j["sweep_grid"].get<std::vector<double>>();
  c.out = j.value("output_path", c.out);
  c.threshold_grid_size = j.value("threshold_grid_size", c.threshold_grid_size);
  c.max_failed_fraction = j.value("max_failed_fraction", c.max_failed_fraction);
}

json rng_doc(const Config& c) {
  json j{{"generator", "philox4x32-10"},
         {"stream_layout", "purpose<<56 | (channel & 0xffffff)<<32 | draw_index"},
         {"purposes",
          {{"channel", 1}, {"symbols", 2}, {"noise", 3}, {"reference", 4}, {"init", 5}}}};
  if (c.trial) j["seed"] = c.trial->seed;
  return j;
}

json saddle_info_json(const l1p_saddle* sp) {
  double tau, beta, tau_tilde, psi, rt, rb;
  check(l1p_saddle_info(sp, &tau, &beta, &tau_tilde, &psi, &rt, &rb), "saddle info");
  return {{"tau", tau},           {"beta", beta}, {"tau_tilde", tau_tilde}, {"psi", psi},
          {"residual_tau", rt},   {"residual_beta", rb}};
}

json metrics_to_json(const l1p_metrics& m) {
  return {{"p_b", m.p_b},
          {"kappa", m.kappa},
          {"sinad_lb", m.sinad_lb},
          {"sinad_lb_db", to_db(m.sinad_lb)},
          {"ber", m.ber},
          {"scale", m.scale}};
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError{2, "cannot open output file: " + path};
  f << body;
  if (!f) throw CliError{2, "failed while writing: " + path};
}

void emit_result(const Config& c, json result) {
  json doc = config_to_json(c);
  doc["library_version"] = l1p_version();
  doc["rng"] = rng_doc(c);
  doc["result"] = std::move(result);
  std::string body = doc.dump(2) + "\n";
  if (c.out.empty())
    std::fputs(body.c_str(), stdout);
  else
    write_text(c.out, body);
}

// Predicted metrics at one operating point: plain l1 law, or the
// thresholded law when a gate t_x > 0 is supplied.
json predict_point(const l1p_saddle* sp, const l1p_params& p, double t_x) {
  l1p_metrics m;
  if (t_x > 0.0) {
    double theta, alpha_tilde;
    check(l1p_predict_thresholded(sp, &p, t_x, &m, &theta, &alpha_tilde),
          "thresholded prediction");
    json j = metrics_to_json(m);
    j["theta"] = theta;
    j["alpha_tilde"] = alpha_tilde;
    j["t_x"] = t_x;
    return j;
  }
  check(l1p_predict(sp, &p, &m), "prediction");
  return metrics_to_json(m);
}

l1p_trial_config make_trial_config(const TrialSpec& t, const l1p_params& p, double t_x) {
  l1p_trial_config tc;
  l1p_trial_config_default(&tc);
  tc.n = t.n;
  tc.m = t.m;
  tc.params = p;
  tc.num_channels = t.num_channels;
  tc.num_symbol_draws = t.num_symbol_draws;
  tc.seed = t.seed;
  tc.threshold = t_x;
  tc.threads = t.threads;
  tc.ref_sample_size = t.ref_sample_size;
  if (t.max_iters) tc.solver.max_iters = *t.max_iters;
  return tc;
}

json report_to_json(const l1p_trial_report& r) {
  json j = metrics_to_json(r.metrics);
  j["se_p_b"] = r.se_p_b;
  j["se_kappa"] = r.se_kappa;
  j["se_sinad_lb"] = r.se_sinad_lb;
  j["se_ber"] = r.se_ber;
  j["w2_x"] = r.w2_x;
  j["w2_e_plus"] = r.w2_e_plus;
  j["w2_e_minus"] = r.w2_e_minus;
  j["failed_solves"] = r.failed_solves;
  j["total_solves"] = r.total_solves;
  return j;
}

void enforce_failure_budget(const Config& c, int failed, int total) {
  if (total == 0) return;
  double frac = static_cast<double>(failed) / static_cast<double>(total);
  if (frac > c.max_failed_fraction)
    throw CliError{5, "solver failed on " + std::to_string(failed) + " of " +
                          std::to_string(total) + " solves, above the allowed fraction " +
                          fmt(c.max_failed_fraction)};
}

int run_saddle(const Config& c) {
  Saddle sp;
  check(l1p_saddle_solve(&c.params, &sp.p), "saddle solve");
  emit_result(c, json{{"saddle", saddle_info_json(sp.p)}});
  return 0;
}

int run_predict(const Config& c) {
  Saddle sp;
  check(l1p_saddle_solve(&c.params, &sp.p), "saddle solve");
  const double t_x = c.target && c.target->t_x ? *c.target->t_x : 0.0;
  emit_result(c, json{{"saddle", saddle_info_json(sp.p)},
                      {"predicted", predict_point(sp.p, c.params, t_x)}});
  return 0;
}

int run_simulate(Config& c) {
  if (!c.trial) throw CliError{2, "simulate needs a trial section (or --n/--m flags)"};
  const TrialSpec& t = *c.trial;
  c.params.delta =
      static_cast<double>(t.m) / static_cast<double>(t.n);  // the campaign pins delta

  Saddle sp;
  check(l1p_saddle_solve(&c.params, &sp.p), "saddle solve");
  const double t_x = t.threshold.value_or(0.0);
  json predicted = predict_point(sp.p, c.params, t_x);

  l1p_trial_config tc = make_trial_config(t, c.params, t_x);
  l1p_trial_report rep;
  check(l1p_run_trials(&tc, &rep), "trial campaign");

  emit_result(c, json{{"saddle", saddle_info_json(sp.p)},
                      {"predicted", std::move(predicted)},
                      {"empirical", report_to_json(rep)}});
  enforce_failure_budget(c, rep.failed_solves, rep.total_solves);
  return 0;
}

int run_tune(const Config& c) {
  if (!c.target) throw CliError{2, "tune needs a target section (or --kappa/--pb flags)"};
  const TargetSpec& t = *c.target;
  if (t.mode != "l1" && t.mode != "thresholded")
    throw CliError{2, "target mode must be \"l1\" or \"thresholded\""};

  json tuned;
  l1p_params at = c.params;
  double t_x = 0.0;
  if (t.mode == "thresholded" && !t.t_x) {
    // no gate given: scan for the SINAD-optimal one
    double best_t, lambda1, rho, sinad;
    check(l1p_optimal_threshold(t.kappa, t.pb, &c.params, c.threshold_grid_size, &best_t,
                                &lambda1, &rho, &sinad),
          "threshold scan");
    tuned = {{"t_x", best_t}, {"lambda1", lambda1}, {"rho", rho}, {"sinad_lb", sinad}};
    at.lambda1 = lambda1;
    at.rho = rho;
    t_x = best_t;
  } else {
    const int mode = t.mode == "thresholded" ? L1P_TUNE_THRESHOLDED : L1P_TUNE_L1;
    t_x = t.t_x.value_or(0.0);
    double lambda1, rho;
    check(l1p_calibrate_pair(t.kappa, t.pb, &c.params, mode, t_x, &lambda1, &rho),
          "pair calibration");
    tuned = {{"lambda1", lambda1}, {"rho", rho}};
    if (t.t_x) tuned["t_x"] = *t.t_x;
    at.lambda1 = lambda1;
    at.rho = rho;
  }

  Saddle sp;
  check(l1p_saddle_solve(&at, &sp.p), "saddle solve at the tuned point");
  json predicted = predict_point(sp.p, at, t_x);
  tuned["kappa_residual"] = predicted["kappa"].get<double>() - t.kappa;
  tuned["pb_residual"] = predicted["p_b"].get<double>() - t.pb;
  emit_result(c, json{{"tuned", std::move(tuned)},
                      {"params_at_tuned_point", params_to_json(at)},
                      {"saddle", saddle_info_json(sp.p)},
                      {"predicted", std::move(predicted)}});
  return 0;
}

constexpr const char* kCsvHeader =
    "sweep_value,predicted_pb,predicted_kappa,predicted_sinad_lb,predicted_sinad_lb_db,"
    "predicted_ber,empirical_pb,empirical_kappa,empirical_sinad_lb,empirical_sinad_lb_db,"
    "empirical_ber,se_pb,se_kappa,se_sinad_lb,se_ber,seed";

enum class SweepKind { kLambda1, kPb, kThreshold, kTsnr };

int run_sweep(Config& c, SweepKind kind) {
  if (c.out.empty()) throw CliError{2, "sweeps need --out for the CSV"};
  if (c.grid.size() < 2) throw CliError{2, "sweeps need a grid of at least two values"};
  for (std::size_t i = 0; i + 1 < c.grid.size(); ++i)
    if (!(c.grid[i] < c.grid[i + 1]))
      throw CliError{2, "sweep grid must be strictly increasing"};

  if (c.trial)
    c.params.delta = static_cast<double>(c.trial->m) / static_cast<double>(c.trial->n);

  const double fixed_tx = c.target && c.target->t_x ? *c.target->t_x : 0.0;

  // tSNR sweeps fix one calibrated pair and move only the noise floor
  l1p_params base = c.params;
  if (kind == SweepKind::kTsnr) {
    if (!c.target) throw CliError{2, "sweep-tsnr needs a target (--kappa/--pb)"};
    const int mode = fixed_tx > 0.0 ? L1P_TUNE_THRESHOLDED : L1P_TUNE_L1;
    double lambda1, rho;
    check(l1p_calibrate_pair(c.target->kappa, c.target->pb, &base, mode, fixed_tx, &lambda1,
                             &rho),
          "pair calibration");
    base.lambda1 = lambda1;
    base.rho = rho;
  }

  std::string csv(kCsvHeader);
  csv += "\n";
  json points = json::array();
  int failed = 0, total = 0;

  for (double v : c.grid) {
    l1p_params p = base;
    double t_x = fixed_tx;
    switch (kind) {
      case SweepKind::kLambda1:
        p.lambda1 = v;
        break;
      case SweepKind::kPb: {
        const int mode = fixed_tx > 0.0 ? L1P_TUNE_THRESHOLDED : L1P_TUNE_L1;
        check(l1p_calibrate_rho(p.lambda1, v, &p, mode, fixed_tx, &p.rho),
              "power calibration at " + fmt(v));
        break;
      }
      case SweepKind::kThreshold:
        t_x = v;
        break;
      case SweepKind::kTsnr:
        if (!(v > 0.0)) throw CliError{2, "tSNR grid values must be > 0"};
        p.sigma2 = c.target->pb / v;
        break;
    }

    Saddle sp;
    check(l1p_saddle_solve(&p, &sp.p), "saddle solve at " + fmt(v));
    json predicted = predict_point(sp.p, p, t_x);

    csv += fmt(v);
    csv += "," + fmt(predicted["p_b"].get<double>());
    csv += "," + fmt(predicted["kappa"].get<double>());
    csv += "," + fmt(predicted["sinad_lb"].get<double>());
    csv += "," + fmt(predicted["sinad_lb_db"].get<double>());
    csv += "," + fmt(predicted["ber"].get<double>());

    json point{{"sweep_value", v},
               {"params", params_to_json(p)},
               {"saddle", saddle_info_json(sp.p)},
               {"predicted", predicted}};

    if (c.trial) {
      l1p_trial_config tc = make_trial_config(*c.trial, p, t_x);
      l1p_trial_report rep;
      check(l1p_run_trials(&tc, &rep), "trial campaign at " + fmt(v));
      csv += "," + fmt(rep.metrics.p_b);
      csv += "," + fmt(rep.metrics.kappa);
      csv += "," + fmt(rep.metrics.sinad_lb);
      csv += "," + fmt(to_db(rep.metrics.sinad_lb));
      csv += "," + fmt(rep.metrics.ber);
      csv += "," + fmt(rep.se_p_b);
      csv += "," + fmt(rep.se_kappa);
      csv += "," + fmt(rep.se_sinad_lb);
      csv += "," + fmt(rep.se_ber);
      char seed_buf[24];
      std::snprintf(seed_buf, sizeof seed_buf, "%" PRIu64, c.trial->seed);
      csv += ",";
      csv += seed_buf;
      point["empirical"] = report_to_json(rep);
      failed += rep.failed_solves;
      total += rep.total_solves;
    } else {
      csv += ",,,,,,,,,,";  // predictions-only row
    }
    csv += "\n";
    points.push_back(std::move(point));
  }

  write_text(c.out, csv);

  json sidecar = config_to_json(c);
  sidecar["library_version"] = l1p_version();
  sidecar["rng"] = rng_doc(c);
  if (kind == SweepKind::kTsnr)
    sidecar["calibrated_base"] = params_to_json(base);
  sidecar["points"] = std::move(points);
  write_text(c.out + ".json", sidecar.dump(2) + "\n");

  enforce_failure_budget(c, failed, total);
  return 0;
}

std::vector<double> parse_grid_list(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{2, "bad grid entry: \"" + item + "\""};
    }
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-capped sparse precoder analysis toolkit"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<double> rho, delta, lambda1, lambda2, pcap, sigma2;
  std::optional<std::size_t> n_opt, m_opt, ref_samples;
  std::optional<int> channels, draws, threshold_grid, max_iters;
  std::optional<double> kappa, pb, tx, max_failed;
  std::optional<std::string> mode;
  std::optional<std::string> grid_list;
  std::optional<double> grid_from, grid_to;
  std::optional<int> grid_points;

  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  app.add_option("--seed", seed, "RNG seed for the trial campaign");
  app.add_option("--out", out, "output path (CSV for sweeps, JSON otherwise)");
  app.add_option("--threads", threads, "worker threads for trial channels");
  app.add_option("--rho", rho, "signal power rho");
  app.add_option("--delta", delta, "user-to-antenna ratio m/n");
  app.add_option("--lambda1", lambda1, "l1 penalty weight");
  app.add_option("--lambda2", lambda2, "ridge penalty weight");
  app.add_option("--pcap", pcap, "per-antenna power cap P");
  app.add_option("--sigma2", sigma2, "receiver noise variance");
  app.add_option("--n", n_opt, "antenna count for trials");
  app.add_option("--m", m_opt, "user count for trials");
  app.add_option("--channels", channels, "number of channel realizations");
  app.add_option("--draws", draws, "symbol draws per channel");
  app.add_option("--ref-samples", ref_samples, "reference sample size for W2");
  app.add_option("--max-iters", max_iters, "solver iteration budget for trials");
  app.add_option("--kappa", kappa, "target active-antenna fraction");
  app.add_option("--pb", pb, "target per-antenna power");
  app.add_option("--tx", tx, "threshold t_x");
  app.add_option("--mode", mode, "tuning mode: l1 or thresholded");
  app.add_option("--grid", grid_list, "sweep grid as comma-separated values");
  app.add_option("--grid-from", grid_from, "sweep grid start");
  app.add_option("--grid-to", grid_to, "sweep grid end");
  app.add_option("--grid-points", grid_points, "sweep grid size");
  app.add_option("--threshold-grid-size", threshold_grid, "grid size for the threshold scan");
  app.add_option("--max-failed-fraction", max_failed, "allowed fraction of failed solves");
  app.set_version_flag("--version", l1p_version());

  const char* names[] = {"saddle",        "predict",  "simulate",        "tune",
                         "sweep-lambda1", "sweep-pb", "sweep-threshold", "sweep-tsnr"};
  const char* descs[] = {"solve the scalar saddle-point system",
                         "asymptotic metric predictions",
                         "Monte Carlo verification campaign",
                         "calibrate (lambda1, rho) or scan thresholds",
                         "sweep the l1 weight",
                         "sweep the per-antenna power target",
                         "sweep the sparsification threshold",
                         "sweep the transmit SNR"};
  for (int i = 0; i < 8; ++i) app.add_subcommand(names[i], descs[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Config cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw CliError{2, "cannot read config file: " + config_path};
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw CliError{2, std::string("config parse error: ") + e.what()};
      }
      try {
        config_from_json(j, cfg);
      } catch (const json::exception& e) {
        throw CliError{2, std::string("config field error: ") + e.what()};
      }
    }

    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command.empty())
      throw CliError{2, "no command given (subcommand or \"command\" in the config)"};

    if (rho) cfg.params.rho = *rho;
    if (delta) cfg.params.delta = *delta;
    if (lambda1) cfg.params.lambda1 = *lambda1;
    if (lambda2) cfg.params.lambda2 = *lambda2;
    if (pcap) cfg.params.p_cap = *pcap;
    if (sigma2) cfg.params.sigma2 = *sigma2;

    const bool trial_flags = n_opt || m_opt || channels || draws || max_iters;
    if ((trial_flags || cfg.command == "simulate") && !cfg.trial) cfg.trial = TrialSpec{};
    if (cfg.trial) {
      if (n_opt) cfg.trial->n = *n_opt;
      if (m_opt) cfg.trial->m = *m_opt;
      if (channels) cfg.trial->num_channels = *channels;
      if (draws) cfg.trial->num_symbol_draws = *draws;
      if (seed) cfg.trial->seed = *seed;
      if (threads) cfg.trial->threads = *threads;
      if (ref_samples) cfg.trial->ref_sample_size = *ref_samples;
      if (max_iters) cfg.trial->max_iters = *max_iters;
      if (tx && (cfg.command == "simulate")) cfg.trial->threshold = *tx;
    }

    const bool target_flags = kappa || pb || mode || tx;
    if (target_flags && !cfg.target) cfg.target = TargetSpec{};
    if (cfg.target) {
      if (kappa) cfg.target->kappa = *kappa;
      if (pb) cfg.target->pb = *pb;
      if (mode) cfg.target->mode = *mode;
      if (tx) cfg.target->t_x = *tx;
    }

    if (out) cfg.out = *out;
    if (threshold_grid) cfg.threshold_grid_size = *threshold_grid;
    if (max_failed) cfg.max_failed_fraction = *max_failed;

    if (grid_list) {
      cfg.grid = parse_grid_list(*grid_list);
    } else if (grid_from || grid_to || grid_points) {
      if (!(grid_from && grid_to && grid_points))
        throw CliError{2, "--grid-from/--grid-to/--grid-points must be given together"};
      if (*grid_points < 2) throw CliError{2, "--grid-points must be >= 2"};
      if (!(*grid_from < *grid_to)) throw CliError{2, "--grid-from must be below --grid-to"};
      cfg.grid.clear();
      for (int i = 0; i < *grid_points; ++i)
        cfg.grid.push_back(*grid_from + (*grid_to - *grid_from) * static_cast<double>(i) /
                                            (*grid_points - 1));
    }

    if (cfg.command == "saddle") return run_saddle(cfg);
    if (cfg.command == "predict") return run_predict(cfg);
    if (cfg.command == "simulate") return run_simulate(cfg);
    if (cfg.command == "tune") return run_tune(cfg);
    if (cfg.command == "sweep-lambda1") return run_sweep(cfg, SweepKind::kLambda1);
    if (cfg.command == "sweep-pb") return run_sweep(cfg, SweepKind::kPb);
    if (cfg.command == "sweep-threshold") return run_sweep(cfg, SweepKind::kThreshold);
    if (cfg.command == "sweep-tsnr") return run_sweep(cfg, SweepKind::kTsnr);
    throw CliError{2, "unknown command: " + cfg.command};
  } catch (const CliError& e) {
    std::fprintf(stderr, "l1p: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "l1p: unexpected error: %s\n", e.what());
    return 1;
  }
}
