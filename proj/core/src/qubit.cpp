#include "catlink/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "catlink/rng.hpp"

namespace catlink {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Bell vectors in the basis |uu>, |ud>, |du>, |dd| with up = index 0.
Eigen::Vector4cd bell_vector(int which) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (which) {
    case 0: v[1] = s; v[2] = s; break;   // Psi+
    case 1: v[1] = s; v[2] = -s; break;  // Psi-
    case 2: v[0] = s; v[3] = s; break;   // Phi+
    default: v[0] = s; v[3] = -s; break; // Phi-
  }
  return v;
}

}  // namespace

double BellMixture::max_weight() const {
  return std::max({psi_plus, psi_minus, phi_plus, phi_minus});
}

void BellMixture::validate(double tol) const {
  if (psi_plus < -tol || psi_minus < -tol || phi_plus < -tol || phi_minus < -tol) {
    throw std::invalid_argument("BellMixture: negative weight");
  }
  if (std::abs(sum() - 1.0) > tol) {
    throw std::invalid_argument("BellMixture: weights do not sum to 1");
  }
}

BellMixture bell_mixture_from_purity(double r) {
  if (std::abs(r) > 1.0) throw std::invalid_argument("bell_mixture_from_purity: |r| > 1");
  return BellMixture{0.5 * (1.0 + r), 0.5 * (1.0 - r), 0.0, 0.0};
}

double entanglement_of_formation(const BellMixture& mix) {
  mix.validate(1e-9);
  const double p = std::max(0.5, mix.max_weight());
  const double root = std::sqrt(std::max(0.0, p * (1.0 - p)));
  const double xp = 0.5 + root;
  const double xm = 0.5 - root;
  return -xlog2x(xp) - xlog2x(xm);
}

StepResult purification_step(double R_prev, double r, bool same_outcome) {
  if (std::abs(R_prev) > 1.0 || std::abs(r) > 1.0) {
    throw std::invalid_argument("purification_step: parameters out of [-1,1]");
  }
  const double sign = same_outcome ? 1.0 : -1.0;
  const double denom = 1.0 + sign * r * R_prev;
  if (denom <= 0.0) throw std::domain_error("purification_step: zero-probability branch");
  return StepResult{(R_prev + sign * r) / denom, 0.5 * denom};
}

double variance_increment(double R_prev, double r) {
  const double num = r * r * (1.0 - R_prev * R_prev) * (1.0 - R_prev * R_prev);
  return num / (1.0 - r * r * R_prev * R_prev);
}

PurityWalk run_walk(double r, double epsilon, int max_steps, std::uint64_t seed) {
  return run_walk_from(r, r, epsilon, max_steps, seed);
}

PurityWalk run_walk_from(double signal_r, double fresh_r, double epsilon,
                         int max_steps, std::uint64_t seed) {
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("run_walk: epsilon must be in (0,1)");
  }
  PurityWalk walk;
  walk.fresh_r = fresh_r;
  walk.initial_R = signal_r;
  walk.seed = seed;
  SplitRng rng(seed);
  double R = signal_r;
  for (int n = 0; n < max_steps; ++n) {
    if (1.0 - std::abs(R) < epsilon) {
      walk.converged = true;
      return walk;
    }
    const double p_plus = 0.5 * (1.0 + fresh_r * R);
    const bool same = rng.uniform() < p_plus;
    const StepResult step = purification_step(R, fresh_r, same);
    R = step.R_next;
    walk.steps.push_back(WalkStep{R, same ? +1 : -1, step.prob});
  }
  walk.converged = 1.0 - std::abs(R) < epsilon;
  return walk;
}

MeanStepsResult mean_steps(double r, double epsilon, int trials, std::uint64_t seed,
                           int max_steps, int threads) {
  if (trials < 1) throw std::invalid_argument("mean_steps: trials must be >= 1");
  std::vector<double> counts(trials, 0.0);
  std::vector<int> failed(trials, 0);

  auto worker = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      SplitRng rng(seed, static_cast<std::uint64_t>(t));
      double R = r;
      int n = 0;
      while (1.0 - std::abs(R) >= epsilon && n < max_steps) {
        const double p_plus = 0.5 * (1.0 + r * R);
        const bool same = rng.uniform() < p_plus;
        R = purification_step(R, r, same).R_next;
        ++n;
      }
      counts[t] = static_cast<double>(n);
      failed[t] = (1.0 - std::abs(R) >= epsilon) ? 1 : 0;
    }
  };

  const int nthreads = std::max(1, std::min(threads, trials));
  if (nthreads == 1) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (trials + nthreads - 1) / nthreads;
    for (int i = 0; i < nthreads; ++i) {
      const int begin = i * chunk;
      const int end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  MeanStepsResult res;
  res.trials = trials;
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= trials;
  double var = 0.0;
  for (double c : counts) var += (c - mean) * (c - mean);
  var = trials > 1 ? var / (trials - 1) : 0.0;
  res.mean = mean;
  res.std_error = std::sqrt(var / trials);
  for (int f : failed) res.not_converged += f;
  return res;
}

Eigen::Matrix4cd purification_gate_matrix() {
  // Row i of the defining table maps basis ket (dd,du,ud,uu)[i] to the
  // combination given by the table row; in flat indices (uu,ud,du,dd) =
  // (0,1,2,3) the listed order is (3,2,1,0).
  const double t[4][4] = {{1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}, {1, -1, 0, 0}};
  const int order[4] = {3, 2, 1, 0};
  Eigen::Matrix4cd U = Eigen::Matrix4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      U(order[j], order[i]) += s * t[i][j];
    }
  }
  return U;
}

Eigen::Matrix4cd bell_mixture_density(const BellMixture& mix) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const double w[4] = {mix.psi_plus, mix.psi_minus, mix.phi_plus, mix.phi_minus};
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4cd v = bell_vector(i);
    rho += w[i] * v * v.adjoint();
  }
  return rho;
}

BellMixture bell_weights_of_density(const Eigen::Matrix4cd& rho) {
  double w[4];
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4cd v = bell_vector(i);
    w[i] = (v.adjoint() * rho * v)(0, 0).real();
  }
  return BellMixture{w[0], w[1], w[2], w[3]};
}

GateResult apply_gate_to_mixture(const BellMixture& signal, const BellMixture& fresh,
                                 GateOutcome outcome) {
  signal.validate(1e-9);
  fresh.validate(1e-9);

  const Eigen::Matrix4cd rho_s = bell_mixture_density(signal);
  const Eigen::Matrix4cd rho_f = bell_mixture_density(fresh);
  const Eigen::Matrix4cd U = purification_gate_matrix();

  // Qubit order (s0, s1, f0, f1); flat index s0*8 + s1*4 + f0*2 + f1.
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(16, 16);
  for (int s0 = 0; s0 < 2; ++s0)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int f0 = 0; f0 < 2; ++f0)
        for (int f1 = 0; f1 < 2; ++f1)
          for (int t0 = 0; t0 < 2; ++t0)
            for (int t1 = 0; t1 < 2; ++t1)
              for (int g0 = 0; g0 < 2; ++g0)
                for (int g1 = 0; g1 < 2; ++g1) {
                  rho(s0 * 8 + s1 * 4 + f0 * 2 + f1, t0 * 8 + t1 * 4 + g0 * 2 + g1) =
                      rho_s(s0 * 2 + s1, t0 * 2 + t1) * rho_f(f0 * 2 + f1, g0 * 2 + g1);
                }

  // The gate acts on (signal qubit, fresh qubit) at each station.
  Eigen::MatrixXcd big_u = Eigen::MatrixXcd::Zero(16, 16);
  for (int s0 = 0; s0 < 2; ++s0)
    for (int f0 = 0; f0 < 2; ++f0)
      for (int s0p = 0; s0p < 2; ++s0p)
        for (int f0p = 0; f0p < 2; ++f0p)
          for (int s1 = 0; s1 < 2; ++s1)
            for (int f1 = 0; f1 < 2; ++f1)
              for (int s1p = 0; s1p < 2; ++s1p)
                for (int f1p = 0; f1p < 2; ++f1p) {
                  big_u(s0 * 8 + s1 * 4 + f0 * 2 + f1,
                        s0p * 8 + s1p * 4 + f0p * 2 + f1p) =
                      U(s0 * 2 + f0, s0p * 2 + f0p) * U(s1 * 2 + f1, s1p * 2 + f1p);
                }

  rho = big_u * rho * big_u.adjoint();

  const int o0 = outcome.claire == Spin::up ? 0 : 1;
  const int o1 = outcome.denis == Spin::up ? 0 : 1;
  Eigen::Matrix4cd cond = Eigen::Matrix4cd::Zero();
  for (int s0 = 0; s0 < 2; ++s0)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int t0 = 0; t0 < 2; ++t0)
        for (int t1 = 0; t1 < 2; ++t1) {
          cond(s0 * 2 + s1, t0 * 2 + t1) =
              rho(s0 * 8 + s1 * 4 + o0 * 2 + o1, t0 * 8 + t1 * 4 + o0 * 2 + o1);
        }

  const double prob = cond.trace().real();
  if (prob <= 0.0) throw std::domain_error("apply_gate_to_mixture: zero-probability outcome");
  cond /= prob;

  const BellMixture out = bell_weights_of_density(cond);
  const bool psi_in = signal.psi_plus + signal.psi_minus >= signal.phi_plus + signal.phi_minus;
  const bool psi_out = out.psi_plus + out.psi_minus >= out.phi_plus + out.phi_minus;
  return GateResult{out, prob, psi_in != psi_out};
}

}  // namespace catlink
