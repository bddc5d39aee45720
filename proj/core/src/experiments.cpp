#include "catlink/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "catlink/channel.hpp"
#include "catlink/detection.hpp"
#include "catlink/fock.hpp"
#include "catlink/preparation.hpp"
#include "catlink/purification.hpp"
#include "catlink/qubit.hpp"
#include "catlink/version.hpp"

namespace catlink {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for parameter '" + key + "': " + s);
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_double(it->second, key);
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  if (v != std::floor(v)) throw ConfigError("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key,
                                               const std::vector<double>& fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_double(item, key));
  }
  if (out.empty()) throw ConfigError("parameter '" + key + "' holds no values");
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "prepare",       "transmit",   "purify-walk", "purify-fock", "mean-steps",
      "eof-curve",     "backaction-curve", "interference", "complementarity"};
  return names;
}

int thread_budget() {
  if (const char* env = std::getenv("CATLINK_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

ExperimentResult run_prepare(const ExperimentConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 1.5);
  const double beta = cfg.get_double("beta", 1.0 / std::sqrt(2.0));
  const double tmod = cfg.get_double("T", 1.0 / std::sqrt(2.0));
  require(alpha >= 0.0, "alpha must be nonnegative");
  require(beta > 0.0, "beta must be positive");
  require(tmod > 0.0 && tmod < 1.0, "T must be in (0,1)");
  const double rmod = std::sqrt(1.0 - tmod * tmod);
  PrepOptions opt;
  if (cfg.params.contains("cutoff")) opt.signal_cutoff = cfg.get_int("cutoff", 0);

  ExperimentResult res;
  res.columns = {"alpha", "p", "p_closed", "fidelity", "p_third", "p_third_closed", "fidelity_third"};

  const PrepResult prep = prepare_entangled_cats(alpha, beta, tmod, rmod, opt);
  const PrepResult third = third_party_prepare(alpha, beta, opt);
  const int cutoff = opt.signal_cutoff.value_or(default_cutoff(alpha));
  double fid = 0.0, fid3 = 0.0;
  if (prep.probability > 0.0) {
    const PureState target = analytic_entangled_cat(alpha, cutoff);
    fid = std::norm(prep.state.overlap(target));
    fid3 = std::norm(third.state.overlap(target));
  } else {
    fid = fid3 = 1.0;  // vacuum branch: preparation degenerates, nothing to compare
  }
  if (prep.state.max_top_level_weight() > kTauLeak) {
    res.warnings.push_back("under-truncated preparation output; raise cutoff");
  }
  res.rows.push_back({alpha, prep.probability,
                      preparation_probability_closed_form(alpha, beta, tmod, rmod), fid,
                      third.probability, third_party_probability_closed_form(alpha, beta), fid3});
  return res;
}

ExperimentResult run_transmit(const ExperimentConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 1.0);
  const double t0 = cfg.get_double("T0", 0.9);
  const double t1 = cfg.get_double("T1", 0.9);
  const double lmax = cfg.get_double("l-max", 1.0);
  const int points = cfg.get_int("points", 21);
  const int n_steps = cfg.get_int("n-steps", 4);
  require(t0 > 0.0 && t0 <= 1.0 && t1 > 0.0 && t1 <= 1.0, "T0, T1 must be in (0,1]");
  require(points >= 2, "points must be >= 2");
  require(lmax > 0.0, "l-max must be positive");
  require(n_steps >= 1, "n-steps must be >= 1");
  const int cutoff = cfg.params.contains("cutoff") ? cfg.get_int("cutoff", 0) : default_cutoff(alpha);
  require(cutoff >= 1, "cutoff must be >= 1");

  ExperimentResult res;
  res.columns = {"l_over_L", "r", "abs_alpha0", "abs_alpha1", "E", "r_discrete", "fit_residual"};
  const ParamState init = ParamState::initial(alpha);
  const DensityMatrix rho0 = to_density_matrix(init, cutoff);
  for (int i = 0; i < points; ++i) {
    const double l = lmax * i / (points - 1);
    ChannelSpec spec{t0, t1, 1.0, l, n_steps};
    const ParamState ps = propagate_analytic(init, spec);
    const double e = entanglement_of_formation(bell_mixture_from_purity(ps.r));
    const DensityMatrix rho = propagate_discrete(rho0, spec);
    const FitResult fit = fit_param_state(rho, alpha);
    res.rows.push_back({l, ps.r, std::abs(ps.alpha0), std::abs(ps.alpha1), e, fit.state.r, fit.residual});
  }
  return res;
}

ExperimentResult run_purify_walk(const ExperimentConfig& cfg) {
  const double r = cfg.get_double("r", 0.5);
  const double epsilon = cfg.get_double("epsilon", 1e-5);
  const int max_steps = cfg.get_int("max-steps", 100000);
  require(std::abs(r) <= 1.0, "r must be in [-1,1]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must be in (0,1)");
  require(max_steps >= 1, "max-steps must be >= 1");

  const PurityWalk walk = run_walk(r, epsilon, max_steps, cfg.seed);
  if (!walk.converged) throw NonConvergence("purify-walk: step budget exhausted");
  ExperimentResult res;
  res.columns = {"n", "R", "sign", "prob"};
  res.rows.push_back({0.0, walk.initial_R, 0.0, 1.0});
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    res.rows.push_back({static_cast<double>(i + 1), walk.steps[i].R,
                        static_cast<double>(walk.steps[i].sign), walk.steps[i].prob});
  }
  return res;
}

ExperimentResult run_purify_fock(const ExperimentConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 2.5);
  const double r = cfg.get_double("r", 0.5);
  const double r0 = cfg.get_double("R0", r);
  const double epsilon = cfg.get_double("epsilon", 1e-3);
  const int max_steps = cfg.get_int("max-steps", 500);
  const int cutoff = cfg.params.contains("cutoff") ? cfg.get_int("cutoff", 0) : default_cutoff(alpha);
  require(std::abs(r) <= 1.0 && std::abs(r0) <= 1.0, "purities must be in [-1,1]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must be in (0,1)");
  require(alpha > 0.0, "alpha must be positive");
  require(cutoff >= 2, "cutoff must be >= 2");

  std::vector<DeviceOutcome> outcomes;
  const PurityWalk walk = feedback_loop(r0, r, epsilon, alpha, cfg.seed, SimLevel::fock,
                                        max_steps, cutoff, &outcomes);
  if (!walk.converged) throw NonConvergence("purify-fock: step budget exhausted");
  ExperimentResult res;
  res.columns = {"n", "R", "sign", "prob", "j0", "k0", "j1", "k1"};
  res.rows.push_back({0.0, walk.initial_R, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    const DeviceOutcome& o = outcomes[i];
    res.rows.push_back({static_cast<double>(i + 1), walk.steps[i].R,
                        static_cast<double>(walk.steps[i].sign), walk.steps[i].prob,
                        static_cast<double>(o.j0), static_cast<double>(o.k0),
                        static_cast<double>(o.j1), static_cast<double>(o.k1)});
  }
  return res;
}

ExperimentResult run_mean_steps(const ExperimentConfig& cfg) {
  const double epsilon = cfg.get_double("epsilon", 1e-5);
  const int trials = cfg.get_int("trials", 10000);
  const std::vector<double> rs =
      cfg.get_list("r", {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1});
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must be in (0,1)");
  require(trials >= 1, "trials must be >= 1");
  for (double r : rs) require(std::abs(r) <= 1.0, "r must be in [-1,1]");

  ExperimentResult res;
  res.columns = {"r", "mean_steps", "std_error", "trials"};
  bool any_failed = false;
  for (double r : rs) {
    const MeanStepsResult m = mean_steps(r, epsilon, trials, cfg.seed, 1000000, thread_budget());
    if (m.not_converged > 0) any_failed = true;
    res.rows.push_back({r, m.mean, m.std_error, static_cast<double>(m.trials)});
  }
  if (any_failed) throw NonConvergence("mean-steps: some walks exhausted the step budget");
  return res;
}

ExperimentResult run_eof_curve(const ExperimentConfig& cfg) {
  const double rmin = cfg.get_double("r-min", 0.0);
  const double rmax = cfg.get_double("r-max", 1.0);
  const double rstep = cfg.get_double("r-step", 0.01);
  require(rstep > 0.0, "r-step must be positive");
  require(rmax >= rmin, "r-max must be >= r-min");
  require(std::abs(rmin) <= 1.0 && std::abs(rmax) <= 1.0, "r grid must stay in [-1,1]");

  ExperimentResult res;
  res.columns = {"r", "E"};
  for (double r = rmin; r <= rmax + 1e-12; r += rstep) {
    const double rr = std::min(r, rmax);
    res.rows.push_back({rr, entanglement_of_formation(bell_mixture_from_purity(rr))});
  }
  return res;
}

ExperimentResult run_backaction_curve(const ExperimentConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 3.0);
  const double r = cfg.get_double("r", 1.0);
  const double gmin = cfg.get_double("gamma-min", 0.0);
  const double gmax = cfg.get_double("gamma-max", 1.5);
  const double gstep = cfg.get_double("gamma-step", 0.05);
  require(std::abs(r) <= 1.0, "r must be in [-1,1]");
  require(gstep > 0.0 && gmax >= gmin && gmin >= 0.0, "bad gamma grid");
  const int cutoff = cfg.params.contains("cutoff") ? cfg.get_int("cutoff", 0) : default_cutoff(alpha);
  require(cutoff >= 1, "cutoff must be >= 1");

  ExperimentResult res;
  res.columns = {"gamma", "E", "C", "S", "deviation"};
  const ParamState ps{alpha, alpha, r, alpha};
  for (double g = gmin; g <= gmax + 1e-12; g += gstep) {
    const BackactionResult back = backaction_state(ps, g, cutoff);
    const double x = 2.0 * g * g;
    res.rows.push_back({g, entanglement_of_formation(back.mixture), coeff_C(x), coeff_S(x),
                        state_deviation(g)});
  }
  return res;
}

ExperimentResult run_interference(const ExperimentConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 1.2);
  const double r = cfg.get_double("r", 0.5);
  const double gamma = cfg.get_double("gamma", 0.6);
  const int grid = cfg.get_int("dphi-grid", 33);
  require(std::abs(r) <= 1.0, "r must be in [-1,1]");
  require(grid >= 2, "dphi-grid must be >= 2");
  require(gamma > 0.0, "gamma must be positive");
  const int cutoff = cfg.params.contains("cutoff") ? cfg.get_int("cutoff", 0) : default_cutoff(alpha);
  require(cutoff >= 1, "cutoff must be >= 1");

  const ParamState ps{alpha, alpha, r, alpha};
  ExperimentResult res;
  res.columns = {"delta_phi", "intensity", "intensity_closed"};
  const InterferencePattern pat = interference_pattern(ps, gamma, grid, cutoff);
  for (const auto& [phi, intensity] : pat.samples) {
    res.rows.push_back({phi, intensity, interference_intensity_closed_form(ps, gamma, phi)});
  }
  return res;
}

ExperimentResult run_complementarity(const ExperimentConfig& cfg) {
  const double alpha = cfg.get_double("alpha", 3.0);
  const int cutoff = cfg.params.contains("cutoff") ? cfg.get_int("cutoff", 0) : default_cutoff(alpha);
  require(alpha > 0.0, "alpha must be positive");
  require(cutoff >= 1, "cutoff must be >= 1");

  const ComplementarityReport rep = complementarity_demo(alpha, cutoff);
  ExperimentResult res;
  res.columns = {"scenario", "mutual_information", "entanglement"};
  res.rows.push_back({0.0, rep.mi_none, rep.e_none});
  res.rows.push_back({1.0, rep.mi_loss_only, rep.e_loss_only});
  res.rows.push_back({2.0, rep.mi_dephasing_only, rep.e_dephasing_only});
  res.rows.push_back({3.0, rep.mi_both, rep.e_both});
  res.warnings.push_back("scenarios: 0=none 1=loss-only 2=dephasing-only 3=both");
  if (rep.max_leakage > 1e-3) res.warnings.push_back("large qubit-subspace leakage; raise alpha or cutoff");
  return res;
}

}  // namespace

ExperimentResult compute_experiment(const ExperimentConfig& config) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), config.experiment) == names.end()) {
    throw ConfigError("unknown experiment '" + config.experiment + "'");
  }
  if (config.experiment == "prepare") return run_prepare(config);
  if (config.experiment == "transmit") return run_transmit(config);
  if (config.experiment == "purify-walk") return run_purify_walk(config);
  if (config.experiment == "purify-fock") return run_purify_fock(config);
  if (config.experiment == "mean-steps") return run_mean_steps(config);
  if (config.experiment == "eof-curve") return run_eof_curve(config);
  if (config.experiment == "backaction-curve") return run_backaction_curve(config);
  if (config.experiment == "interference") return run_interference(config);
  return run_complementarity(config);
}

std::string render_output(const ExperimentConfig& config, const ExperimentResult& result) {
  if (config.format == OutputFormat::json) {
    nlohmann::json j;
    j["catlink"] = kVersion;
    j["experiment"] = config.experiment;
    j["seed"] = config.seed;
    j["format"] = "json";
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : config.params) params[k] = v;
    j["params"] = params;
    j["columns"] = result.columns;
    j["rows"] = result.rows;
    j["warnings"] = result.warnings;
    return j.dump(2) + "\n";
  }
  std::string out;
  out += "# catlink=";
  out += kVersion;
  out += "\n# experiment=" + config.experiment + "\n";
  out += "# format=csv\n";
  out += "# seed=" + std::to_string(config.seed) + "\n";
  for (const auto& [k, v] : config.params) out += "# " + k + "=" + v + "\n";
  for (const auto& w : result.warnings) out += "# note " + w + "\n";
  out += "# columns=";
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) out += ",";
    out += result.columns[i];
  }
  out += "\n";
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) out += ",";
    out += result.columns[i];
  }
  out += "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.output_path.empty()) throw ConfigError("missing output path");
  ExperimentResult result = compute_experiment(config);
  std::ofstream f(config.output_path, std::ios::trunc | std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + config.output_path + "'");
  f << render_output(config, result);
  return result;
}

ExperimentConfig parse_output_header(const std::string& file_contents) {
  ExperimentConfig cfg;
  if (!file_contents.empty() && file_contents[0] == '{') {
    const nlohmann::json j = nlohmann::json::parse(file_contents);
    cfg.experiment = j.at("experiment").get<std::string>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.format = OutputFormat::json;
    for (const auto& [k, v] : j.at("params").items()) cfg.params[k] = v.get<std::string>();
    return cfg;
  }
  std::stringstream ss(file_contents);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const std::string body = line.substr(2);
    if (body.rfind("note ", 0) == 0) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = body.substr(0, eq);
    const std::string value = body.substr(eq + 1);
    if (key == "catlink" || key == "columns") continue;
    if (key == "experiment") {
      cfg.experiment = value;
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "format") {
      cfg.format = value == "json" ? OutputFormat::json : OutputFormat::csv;
    } else {
      cfg.params[key] = value;
    }
  }
  if (cfg.experiment.empty()) throw ConfigError("no experiment header found");
  return cfg;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line is not key=value: " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto kend = key.find_last_not_of(" \t");
    key = key.substr(0, kend == std::string::npos ? 0 : kend + 1);
    const auto vbegin = value.find_first_not_of(" \t");
    value = vbegin == std::string::npos ? "" : value.substr(vbegin);
    if (key.empty()) throw ConfigError("config line has empty key: " + line);
    out[key] = value;
  }
  return out;
}

}  // namespace catlink
