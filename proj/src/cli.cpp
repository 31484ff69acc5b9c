#include "tsyb/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "tsyb/config.hpp"
#include "tsyb/csv.hpp"
#include "tsyb/verify.hpp"

namespace tsyb {

namespace {

namespace fs = std::filesystem;

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_meta(const fs::path& path, const ExperimentConfig& cfg,
                std::vector<std::pair<std::string, std::string>> extra) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("version", kVersion);
  kv.emplace_back("created", timestamp());
  kv.insert(kv.end(), extra.begin(), extra.end());
  std::ostringstream cfg_line;
  for (char c : cfg.source_text) cfg_line << (c == '\n' ? '|' : c);
  kv.emplace_back("config", cfg_line.str());
  write_kv(path, kv);
}

Vec parse_w_flag(const std::string& w_flag, int d) {
  Vec w(d);
  if (fs::exists(w_flag)) {
    const auto lines = read_lines(w_flag);
    if (lines.empty()) throw ConfigError("empty weight file " + w_flag);
    // Model files carry one data line, optionally under a header.
    const std::string& data =
        (lines.size() >= 2 && lines[0].rfind("w1", 0) == 0) ? lines[1] : lines[0];
    const auto cells = split_csv_line(data);
    if (static_cast<int>(cells.size()) != d)
      throw ConfigError("weight file has " + std::to_string(cells.size()) +
                        " coordinates, expected " + std::to_string(d));
    for (int i = 0; i < d; ++i)
      w(i) = std::strtod(cells[static_cast<size_t>(i)].c_str(), nullptr);
  } else {
    const auto cells = split_csv_line(w_flag);
    if (static_cast<int>(cells.size()) != d)
      throw ConfigError("--w has " + std::to_string(cells.size()) +
                        " coordinates, expected " + std::to_string(d));
    for (int i = 0; i < d; ++i)
      w(i) = std::strtod(cells[static_cast<size_t>(i)].c_str(), nullptr);
  }
  if (!w.allFinite()) throw ConfigError("--w has non-finite coordinates");
  if (w.norm() == 0.0) throw ConfigError("--w must be nonzero");
  return w;
}

void write_model_csv(const fs::path& path, const Vec& w) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (int j = 0; j < w.size(); ++j) out << (j ? "," : "") << "w" << (j + 1);
  out << "\n";
  for (int j = 0; j < w.size(); ++j)
    out << (j ? "," : "") << format_double(w(j));
  out << "\n";
}

int cmd_gen(const std::string& config_path, long n, const std::string& out) {
  const ExperimentConfig cfg = parse_config_file(config_path);
  if (n < 1) throw ConfigError("--n must be >= 1");
  const OracleConfig oracle = cfg.make_oracle();
  const Dataset data = draw(oracle, n);
  const fs::path out_path(out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  write_dataset_csv(out_path, data);
  fs::path meta = out_path;
  meta += ".meta";
  write_meta(meta, cfg, {{"n", std::to_string(n)}, {"kind", "dataset"}});
  std::cout << "wrote " << n << " samples to " << out_path.string() << "\n";
  return 0;
}

int cmd_certify(const std::string& config_path, const std::string& w_flag,
                const std::string& data_path, long n, const std::string& out) {
  const ExperimentConfig cfg = parse_config_file(config_path);
  const Vec w_raw = parse_w_flag(w_flag, cfg.d);
  const Halfspace w(w_raw);

  const double m_size = binomial(cfg.d + cfg.k, cfg.k);
  if (m_size > 2e5)
    throw ConfigError("basis size C(d+k,k) = " + std::to_string(m_size) +
                      " exceeds the 2e5 cap");

  Dataset fit, holdout;
  if (!data_path.empty()) {
    const Dataset all = read_dataset_csv(data_path);
    if (all.n() < 2) throw ConfigError("--data needs at least 2 rows");
    const long half = all.n() / 2;
    fit.points = all.points.topRows(half);
    fit.labels = all.labels.head(half);
    holdout.points = all.points.bottomRows(all.n() - half);
    holdout.labels = all.labels.tail(all.n() - half);
  } else {
    if (n < 2) throw ConfigError("--n must be >= 2");
    OracleConfig oracle = cfg.make_oracle();
    oracle.seed = derive_seed(cfg.seed, "certify-fit");
    fit = draw(oracle, n);
    oracle.seed = derive_seed(cfg.seed, "certify-holdout");
    holdout = draw(oracle, n);
  }

  const CertifyOutcome outcome =
      certify_candidate(fit, holdout, w, cfg.eps, cfg.make_bounds(), cfg.k,
                        cfg.q_bound, cfg.accept_z);

  const fs::path dir(out);
  fs::create_directories(dir);
  std::ofstream report(dir / "certify_report.csv");
  if (!report) throw std::runtime_error("cannot write certify_report.csv");
  report << "feasible,fit_feasible,fit_objective,holdout_objective,holdout_std_err\n"
         << (outcome.feasible ? 1 : 0) << "," << (outcome.fit_feasible ? 1 : 0)
         << "," << format_double(outcome.fit_objective) << ","
         << format_double(outcome.holdout_objective) << ","
         << format_double(outcome.holdout_std_err) << "\n";
  if (outcome.certificate)
    write_certificate_csv(dir / "certificate.csv", *outcome.certificate);
  write_meta(dir / "certify_report.csv.meta", cfg,
             {{"kind", "certify"},
              {"w", w_flag},
              {"n_fit", std::to_string(fit.n())},
              {"n_holdout", std::to_string(holdout.n())}});

  std::cout << (outcome.feasible ? "feasible" : "infeasible")
            << " fit_objective=" << format_double(outcome.fit_objective)
            << " holdout=" << format_double(outcome.holdout_objective)
            << " +/- " << format_double(outcome.holdout_std_err) << "\n";
  return 0;
}

int cmd_learn(const std::string& config_path, const std::string& out) {
  const ExperimentConfig cfg = parse_config_file(config_path);
  const OracleConfig oracle = cfg.make_oracle();
  const LearnerConfig lc = cfg.make_learner();

  const auto [w_hat, trace] = run(lc, oracle);

  const fs::path dir(out.empty() ? cfg.output_dir : out);
  fs::create_directories(dir);
  write_model_csv(dir / "model.csv", w_hat);

  std::ofstream tr(dir / "trace.csv");
  if (!tr) throw std::runtime_error("cannot write trace.csv");
  tr << "t,w_norm,angle_to_target,cert_found,cert_objective,cert_std_err,"
        "loss_value,grad_norm,step_size,l_at_w,l_at_wstar,sep_std_err\n";
  for (const auto& r : trace.rows) {
    tr << r.t << "," << format_double(r.w_norm) << ","
       << format_double(r.angle_to_target) << "," << (r.cert_found ? 1 : 0)
       << "," << format_double(r.cert_objective) << ","
       << format_double(r.cert_std_err) << "," << format_double(r.loss_value)
       << "," << format_double(r.grad_norm) << ","
       << format_double(r.step_size) << "," << format_double(r.l_at_w) << ","
       << format_double(r.l_at_wstar) << "," << format_double(r.sep_std_err)
       << "\n";
  }

  const double final_angle = angle(w_hat, oracle.target.normal());
  write_meta(dir / "model.csv.meta", cfg,
             {{"kind", "model"},
              {"status", status_name(trace.status)},
              {"iterations", std::to_string(trace.rows.size())},
              {"final_angle", format_double(final_angle)}});

  std::cout << "status=" << status_name(trace.status)
            << " iterations=" << trace.rows.size()
            << " final_angle=" << format_double(final_angle) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& out,
               std::uint64_t seed) {
  const std::vector<CheckRow> rows = run_verify_suite(suite, seed);
  std::ostringstream csv;
  csv << "check,value,bound,holds\n";
  bool all_ok = true;
  for (const auto& r : rows) {
    csv << r.name << "," << format_double(r.value) << ","
        << format_double(r.bound) << "," << (r.holds ? 1 : 0) << "\n";
    if (!r.holds) all_ok = false;
  }
  std::cout << csv.str();
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << csv.str();
  }
  std::cout << "suite " << suite << ": " << (all_ok ? "PASS" : "FAIL") << "\n";
  return all_ok ? 0 : 1;
}

struct SweepMetrics {
  std::map<std::string, double> values;
};

SweepMetrics sweep_run_certify(const ExperimentConfig& cfg, std::uint64_t seed) {
  OracleConfig oracle = cfg.make_oracle();
  // Candidate at angle eps from the target, in a seed-derived plane.
  Rng rng(derive_seed(seed, "sweep-candidate"));
  Vec dir(cfg.d);
  for (int j = 0; j < cfg.d; ++j) dir(j) = rng.normal();
  const Halfspace w(
      rotate_in_plane(oracle.target.normal(), dir, cfg.eps));

  oracle.seed = derive_seed(seed, "sweep-fit");
  const Dataset fit = draw(oracle, cfg.n_per_iter);
  oracle.seed = derive_seed(seed, "sweep-holdout");
  const Dataset holdout = draw(oracle, cfg.n_per_iter);
  const CertifyOutcome outcome =
      certify_candidate(fit, holdout, w, cfg.eps, cfg.make_bounds(), cfg.k,
                        cfg.q_bound, cfg.accept_z);
  SweepMetrics metrics;
  metrics.values["feasible"] = outcome.feasible ? 1.0 : 0.0;
  metrics.values["fit_objective"] = outcome.fit_objective;
  metrics.values["holdout_objective"] = outcome.holdout_objective;
  metrics.values["holdout_std_err"] = outcome.holdout_std_err;
  return metrics;
}

SweepMetrics sweep_run_learn(const ExperimentConfig& cfg, std::uint64_t seed) {
  OracleConfig oracle = cfg.make_oracle();
  LearnerConfig lc = cfg.make_learner();
  lc.seed = derive_seed(seed, "sweep-learner");
  oracle.seed = derive_seed(seed, "sweep-oracle");
  const auto [w_hat, trace] = run(lc, oracle);
  SweepMetrics metrics;
  metrics.values["final_angle"] = angle(w_hat, oracle.target.normal());
  metrics.values["accepted"] =
      trace.status == RunStatus::certificate_failed_accept ? 1.0 : 0.0;
  metrics.values["iterations"] = static_cast<double>(trace.rows.size());
  return metrics;
}

SweepMetrics sweep_run_moments(const ExperimentConfig& cfg, std::uint64_t seed) {
  // Error of the moment estimate at n_per_iter samples against a
  // 10x-larger reference draw.
  OracleConfig oracle = cfg.make_oracle();
  const Halfspace w = oracle.target;  // moments around the target itself
  const BandIndicator band(w, cfg.eps, cfg.make_bounds().r_rad);
  const BasisPtr basis = make_basis(cfg.d, cfg.k);
  oracle.seed = derive_seed(seed, "sweep-mom");
  const Dataset data = draw(oracle, cfg.n_per_iter);
  oracle.seed = derive_seed(seed, "sweep-mom-ref");
  const Dataset ref = draw(oracle, 10 * cfg.n_per_iter);
  const MomentMatrix m_est = estimate_moment_matrix(data, w, band, basis);
  const MomentMatrix m_ref = estimate_moment_matrix(ref, w, band, basis);
  SweepMetrics metrics;
  metrics.values["frobenius_error"] = (m_est.entries - m_ref.entries).norm();
  return metrics;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<std::string>& values, int replicates,
              const std::string& runner, const std::string& out) {
  if (values.empty()) throw ConfigError("--values must be nonempty");
  if (replicates < 1) throw ConfigError("--replicates must be >= 1");
  const ExperimentConfig base = parse_config_file(config_path);

  const fs::path dir(out.empty() ? base.output_dir : out);
  fs::create_directories(dir);

  std::vector<std::string> metric_names;
  // value -> metric -> replicate values
  std::vector<std::map<std::string, std::vector<double>>> table(values.size());

  std::ostringstream longform;
  bool header_written = false;
  for (size_t vi = 0; vi < values.size(); ++vi) {
    for (int rep = 0; rep < replicates; ++rep) {
      ExperimentConfig cfg = base;
      apply_override(cfg, param, values[vi]);
      const std::uint64_t rep_seed =
          derive_seed(cfg.seed, "sweep", static_cast<std::uint64_t>(rep));
      SweepMetrics metrics;
      if (runner == "certify") metrics = sweep_run_certify(cfg, rep_seed);
      else if (runner == "learn") metrics = sweep_run_learn(cfg, rep_seed);
      else if (runner == "moments") metrics = sweep_run_moments(cfg, rep_seed);
      else throw ConfigError("unknown --run '" + runner + "'");

      if (!header_written) {
        longform << "param,value,replicate";
        for (const auto& [k, v] : metrics.values) {
          longform << "," << k;
          metric_names.push_back(k);
        }
        longform << "\n";
        header_written = true;
      }
      longform << param << "," << values[vi] << "," << rep;
      for (const auto& [k, v] : metrics.values) {
        longform << "," << format_double(v);
        table[vi][k].push_back(v);
      }
      longform << "\n";
    }
  }

  {
    std::ofstream f(dir / "sweep.csv");
    if (!f) throw std::runtime_error("cannot write sweep.csv");
    f << longform.str();
  }
  for (const auto& metric : metric_names) {
    std::ofstream f(dir / ("plot_" + metric + ".csv"));
    if (!f) throw std::runtime_error("cannot write plot data");
    f << "value,mean,stderr\n";
    for (size_t vi = 0; vi < values.size(); ++vi) {
      const auto& samples = table[vi].at(metric);
      double mean = 0.0;
      for (double s : samples) mean += s;
      mean /= static_cast<double>(samples.size());
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      const double se =
          samples.size() > 1
              ? std::sqrt(var / (static_cast<double>(samples.size()) *
                                 (static_cast<double>(samples.size()) - 1)))
              : 0.0;
      f << values[vi] << "," << format_double(mean) << "," << format_double(se)
        << "\n";
    }
  }
  write_meta(dir / "sweep.csv.meta", base,
             {{"kind", "sweep"},
              {"param", param},
              {"replicates", std::to_string(replicates)},
              {"run", runner}});
  std::cout << "sweep over " << param << ": " << values.size() << " values x "
            << replicates << " replicates -> " << (dir / "sweep.csv").string()
            << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Certificate-driven halfspace learning under label noise"};
  app.require_subcommand(1);

  std::string config_path, out, w_flag, data_path, suite, param, runner;
  std::vector<std::string> values;
  long n = 200000;
  int replicates = 1;
  std::uint64_t verify_seed = 20240501;

  auto* gen = app.add_subcommand("gen", "generate a labeled dataset");
  gen->add_option("--config", config_path, "experiment config file")->required();
  gen->add_option("--n", n, "number of samples")->required();
  gen->add_option("--out", out, "output CSV path")->required();

  auto* certify = app.add_subcommand("certify", "fit and validate a certificate");
  certify->add_option("--config", config_path)->required();
  certify->add_option("--w", w_flag, "candidate vector (csv or model file)")->required();
  certify->add_option("--data", data_path, "labeled dataset (default: fresh draws)");
  certify->add_option("--n", n, "fresh samples per split");
  certify->add_option("--out", out, "output directory")->default_val("certify_out");

  auto* learn = app.add_subcommand("learn", "run the full learner");
  learn->add_option("--config", config_path)->required();
  learn->add_option("--out", out, "output directory");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite)->required();
  verify->add_option("--out", out, "report CSV path");
  verify->add_option("--seed", verify_seed);

  auto* sweep = app.add_subcommand("sweep", "sweep one config scalar");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--param", param, "section.key to vary")->required();
  sweep->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--replicates", replicates);
  sweep->add_option("--run", runner, "certify | learn | moments")
      ->default_val("certify");
  sweep->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(config_path, n, out);
    if (certify->parsed()) return cmd_certify(config_path, w_flag, data_path, n, out);
    if (learn->parsed()) return cmd_learn(config_path, out);
    if (verify->parsed()) return cmd_verify(suite, out, verify_seed);
    if (sweep->parsed())
      return cmd_sweep(config_path, param, values, replicates, runner, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace tsyb
