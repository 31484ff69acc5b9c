#include "tsyb/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tsyb/rng.hpp"

namespace tsyb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("invalid number for " + key + ": '" + value + "'");
  return v;
}

long parse_integer(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v))
    throw ConfigError("expected an integer for " + key + ": '" + value + "'");
  return static_cast<long>(v);
}

std::vector<double> parse_vector(const std::string& key,
                                 const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(parse_number(key, trim(tok)));
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.source_text = text;
  cfg.bounds_preset = true;
  bool bounds_explicit = false;

  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "marginal" && section != "noise" && section != "target" &&
          section != "learner" && section != "bounds" && section != "output")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section.empty() ? key : section + "." + key;

    if (section.empty()) {
      if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(qual, value));
      else throw ConfigError("unknown top-level key '" + key + "'");
    } else if (section == "marginal") {
      if (key == "family") {
        if (value == "gaussian") cfg.marginal_family = MarginalSampler::Family::gaussian;
        else if (value == "uniform_ball") cfg.marginal_family = MarginalSampler::Family::uniform_ball;
        else if (value == "laplace_product") cfg.marginal_family = MarginalSampler::Family::laplace_product;
        else throw ConfigError("unknown marginal family '" + value + "'");
      } else if (key == "d") cfg.d = static_cast<int>(parse_integer(qual, value));
      else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "noise") {
      if (key == "family") {
        if (value != "zero" && value != "boundary_power" && value != "massart")
          throw ConfigError("unknown noise family '" + value + "'");
        cfg.noise_family = value;
      } else if (key == "alpha") cfg.alpha = parse_number(qual, value);
      else if (key == "a_const") cfg.a_const = parse_number(qual, value);
      else if (key == "c") cfg.c = parse_number(qual, value);
      else if (key == "eta") cfg.eta = parse_number(qual, value);
      else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "target") {
      if (key == "seed") cfg.target_seed = static_cast<std::uint64_t>(parse_integer(qual, value));
      else if (key == "w") cfg.target_w = parse_vector(qual, value);
      else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "learner") {
      if (key == "eps") cfg.eps = parse_number(qual, value);
      else if (key == "delta") cfg.delta = parse_number(qual, value);
      else if (key == "k") cfg.k = static_cast<int>(parse_integer(qual, value));
      else if (key == "t_max") cfg.t_max = static_cast<int>(parse_integer(qual, value));
      else if (key == "n_per_iter") cfg.n_per_iter = parse_integer(qual, value);
      else if (key == "lambda") cfg.lambda = value == "default" ? -1.0 : parse_number(qual, value);
      else if (key == "q_bound") cfg.q_bound = value == "default" ? -1.0 : parse_number(qual, value);
      else if (key == "G") {
        if (value == "adaptive") cfg.g_bound.reset();
        else cfg.g_bound = parse_number(qual, value);
      } else if (key == "accept_z") cfg.accept_z = parse_number(qual, value);
      else if (key == "median_of_means") cfg.median_of_means = parse_integer(qual, value) != 0;
      else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "bounds") {
      if (key == "preset") {
        if (value != "log_concave_default")
          throw ConfigError("unknown bounds preset '" + value + "'");
        cfg.bounds_preset = true;
      } else if (key == "L") { cfg.l_low = parse_number(qual, value); bounds_explicit = true; }
      else if (key == "R") { cfg.r_rad = parse_number(qual, value); bounds_explicit = true; }
      else if (key == "U") { cfg.u_up = parse_number(qual, value); bounds_explicit = true; }
      else if (key == "B") cfg.b_tail = parse_number(qual, value);
      else if (key == "beta") { cfg.beta_tail = parse_number(qual, value); bounds_explicit = true; }
      else throw ConfigError("unknown key '" + qual + "'");
    } else if (section == "output") {
      if (key == "directory") cfg.output_dir = value;
      else throw ConfigError("unknown key '" + qual + "'");
    }
  }
  if (bounds_explicit) cfg.bounds_preset = false;

  // Range validation; messages name the offending field.
  if (cfg.d < 2) throw ConfigError("marginal.d must be >= 2");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw ConfigError("noise.alpha must be in (0, 1)");
  if (!(cfg.a_const > 0.0)) throw ConfigError("noise.a_const must be positive");
  if (cfg.noise_family == "boundary_power" && !(cfg.c > 0.0))
    throw ConfigError("noise.c must be positive");
  if (cfg.noise_family == "massart" && !(cfg.eta >= 0.0 && cfg.eta < 0.5))
    throw ConfigError("noise.eta must be in [0, 1/2)");
  if (cfg.target_w) {
    if (static_cast<int>(cfg.target_w->size()) != cfg.d)
      throw ConfigError("target.w length must equal marginal.d");
    double norm = 0.0;
    for (double v : *cfg.target_w) norm += v * v;
    if (norm == 0.0) throw ConfigError("target.w must be nonzero");
  }
  if (!(cfg.eps > 0.0 && cfg.eps <= 1.5707963267948966 + 1e-12))
    throw ConfigError("learner.eps must be in (0, pi/2]");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw ConfigError("learner.delta must be in (0, 1)");
  if (cfg.k < 1) throw ConfigError("learner.k must be >= 1");
  if (cfg.t_max < 1) throw ConfigError("learner.t_max must be >= 1");
  if (cfg.n_per_iter < 1) throw ConfigError("learner.n_per_iter must be >= 1");
  if (!cfg.bounds_preset) {
    if (!(cfg.l_low > 0.0)) throw ConfigError("bounds.L must be positive");
    if (!(cfg.r_rad > 0.0)) throw ConfigError("bounds.R must be positive");
    if (!(cfg.beta_tail > 0.0)) throw ConfigError("bounds.beta must be positive");
    if (!(cfg.b_tail > 0.0)) throw ConfigError("bounds.B must be positive");
    if (cfg.u_up && *cfg.u_up < cfg.l_low) throw ConfigError("bounds.U must be >= bounds.L");
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

MarginalSampler ExperimentConfig::make_marginal() const {
  MarginalSampler m;
  m.family = marginal_family;
  m.d = d;
  return m;
}

NoiseField ExperimentConfig::make_noise() const {
  if (noise_family == "zero") return NoiseField::zero();
  if (noise_family == "massart") return NoiseField::constant_massart(eta);
  return NoiseField::boundary_power(c, alpha);
}

TsybakovParams ExperimentConfig::make_tsybakov() const {
  return TsybakovParams(alpha, a_const);
}

BoundedParams ExperimentConfig::make_bounds() const {
  if (bounds_preset) return log_concave_default_bounds(b_tail);
  return BoundedParams(l_low, r_rad, u_up, b_tail, beta_tail);
}

Halfspace ExperimentConfig::make_target() const {
  if (target_w) {
    Vec w(static_cast<long>(target_w->size()));
    for (size_t i = 0; i < target_w->size(); ++i)
      w(static_cast<long>(i)) = (*target_w)[i];
    return Halfspace(w);
  }
  const std::uint64_t s = target_seed ? *target_seed : derive_seed(seed, "target");
  Rng rng(s);
  Vec w(d);
  do {
    for (int i = 0; i < d; ++i) w(i) = rng.normal();
  } while (w.norm() == 0.0);
  return Halfspace(w);
}

OracleConfig ExperimentConfig::make_oracle() const {
  return OracleConfig(make_marginal(), make_target(), make_noise(),
                      make_tsybakov(), derive_seed(seed, "oracle"));
}

LearnerConfig ExperimentConfig::make_learner() const {
  LearnerConfig lc{eps,
                   delta,
                   k,
                   t_max,
                   n_per_iter,
                   lambda,
                   g_bound,
                   q_bound,
                   make_bounds(),
                   make_tsybakov(),
                   derive_seed(seed, "learner"),
                   accept_z,
                   median_of_means};
  lc.validate();
  return lc;
}

void apply_override(ExperimentConfig& cfg, const std::string& param,
                    const std::string& value) {
  const auto dot = param.find('.');
  if (dot == std::string::npos) {
    if (param == "seed") {
      ExperimentConfig next = cfg;
      next.seed = static_cast<std::uint64_t>(parse_integer("seed", value));
      next.source_text += "\n# override\nseed = " + value + "\n";
      cfg = next;
      return;
    }
    throw ConfigError("override path must be section.key: " + param);
  }
  const std::string section = param.substr(0, dot);
  const std::string key = param.substr(dot + 1);
  if (key == "w" || key == "family" || key == "preset" || key == "directory")
    throw ConfigError("override path must address one config scalar: " + param);
  // Re-parse with the override appended: one validation path, and the
  // sidecar text stays faithful to what actually ran.
  const std::string text =
      cfg.source_text + "\n# override\n[" + section + "]\n" + key + " = " + value + "\n";
  cfg = parse_config_text(text);
}

}  // namespace tsyb
