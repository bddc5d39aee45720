#include "catlink/purification.hpp"

#include <cmath>

#include "catlink/rng.hpp"

namespace catlink {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// Diagonal of Y0 Y1 acting on the joint (mode0, mode1) basis; y0/y1 are the
// per-mode diagonals.
Vec joint_diagonal(const Vec& y0, const Vec& y1) {
  Vec out(y0.size() * y1.size());
  for (Eigen::Index n0 = 0; n0 < y0.size(); ++n0) {
    for (Eigen::Index n1 = 0; n1 < y1.size(); ++n1) {
      out[n0 * y1.size() + n1] = y0[n0] * y1[n1];
    }
  }
  return out;
}

// The four-branch conditional update of one purification round, unnormalized.
// Branch kets/bras carry a fresh-pulse sign pair (+,-) or (-,+); cross terms
// are weighted by the fresh purity.
Mat four_branch_update(const Mat& rho, double fresh_r, const DeviceOutcome& o,
                       Complex alpha, int dim_per_mode) {
  const int c = dim_per_mode - 1;
  const Vec yp0 = conditional_op_diagonal(+1, o.j0, o.k0, alpha, c);
  const Vec ym0 = conditional_op_diagonal(-1, o.j0, o.k0, alpha, c);
  const Vec yp1 = conditional_op_diagonal(+1, o.j1, o.k1, alpha, c);
  const Vec ym1 = conditional_op_diagonal(-1, o.j1, o.k1, alpha, c);

  const Vec dpm = joint_diagonal(yp0, ym1);  // fresh branch (+alpha, -alpha)
  const Vec dmp = joint_diagonal(ym0, yp1);  // fresh branch (-alpha, +alpha)

  const double q = std::exp(-4.0 * std::norm(alpha));
  const double norm = 2.0 * (1.0 + fresh_r * q);

  Mat out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const Complex v = rho(i, j);
      out(i, j) = (dpm[i] * std::conj(dpm[j]) + dmp[i] * std::conj(dmp[j]) +
                   fresh_r * (dpm[i] * std::conj(dmp[j]) + dmp[i] * std::conj(dpm[j]))) *
                  v / norm;
    }
  }
  return out;
}

Vec phase_compensation_diagonal(const DeviceOutcome& o, int dim_per_mode) {
  // (-1)^{k0 n0 + (1-k1) n1}
  Vec out(static_cast<Eigen::Index>(dim_per_mode) * dim_per_mode);
  for (int n0 = 0; n0 < dim_per_mode; ++n0) {
    for (int n1 = 0; n1 < dim_per_mode; ++n1) {
      const int e = o.k0 * n0 + (1 - o.k1) * n1;
      out[static_cast<Eigen::Index>(n0) * dim_per_mode + n1] = (e & 1) ? -1.0 : 1.0;
    }
  }
  return out;
}

}  // namespace

Vec conditional_op_diagonal(int sign, int j, int k, Complex alpha, int cutoff) {
  if (sign != +1 && sign != -1) throw std::invalid_argument("conditional_op_diagonal: sign must be +-1");
  const double a2 = std::norm(alpha);
  Vec d(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const double front = (k * (n + j)) & 1 ? -1.0 : 1.0;
    const double par = (n + j) & 1 ? -1.0 : 1.0;
    const double body = std::exp(-a2) * (std::exp(sign * a2) * par + std::exp(-sign * a2));
    d[n] = 0.5 * front * body;
  }
  return d;
}

Vec conditional_op_diagonal_approx(int sign, int j, int k, int cutoff) {
  Vec d(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const double front = (k * (n + j)) & 1 ? -1.0 : 1.0;
    const double par = (n + j) & 1 ? -static_cast<double>(sign) : 1.0;
    d[n] = 0.5 * front * par;
  }
  return d;
}

Mat conditional_single_mode_op(int sign, int j, int k, Complex alpha, int cutoff) {
  if (sign != +1 && sign != -1) throw std::invalid_argument("conditional_single_mode_op: sign must be +-1");
  if (j < 0 || j > 1 || k < 0 || k > 1) throw std::invalid_argument("conditional_single_mode_op: clicks are bits");

  // modes: 0 signal, 1 fresh pulse |sign*alpha>, 2 and 3 the Mach-Zehnder arms
  const int fresh_cutoff = default_cutoff(alpha);
  const Complex fresh_amp = static_cast<double>(sign) * alpha;
  const int d0 = cutoff + 1;

  Mat Y = Mat::Zero(d0, d0);
  for (int n = 0; n < d0; ++n) {
    PureState s = tensor(tensor(fock_state(n, cutoff), coherent_state(fresh_amp, fresh_cutoff)),
                         tensor(fock_state(1, kSinglePhotonCutoff), fock_state(0, kSinglePhotonCutoff)));
    s = apply_beam_splitter(s, 2, 3, kInvSqrt2, -kInvSqrt2);   // photon enters arm 2
    s = apply_cross_kerr(s, 0, 3);                             // signal coupler on arm 3
    s = apply_cross_kerr(s, 1, 2);                             // fresh-pulse coupler on arm 2
    s = apply_beam_splitter(s, 3, 2, kInvSqrt2, kInvSqrt2);    // recombining splitter
    s = project_fock(s, 2, j).state;                           // j clicks at the arm-2 detector
    s = project_fock(s, 2, 1 - j).state;                       // arm 3 holds the complement
    // idealized discrimination of the fresh mode: coherent bra <(-1)^k alpha|
    const Vec bra = coherent_state(((k & 1) ? -1.0 : 1.0) * alpha, fresh_cutoff).amplitudes();
    s = project_mode(s, 1, bra);
    Y.col(n) = s.amplitudes();
  }
  return Y;
}

OnOffMapResult device_map_onoff(const Mat& rho_signal, int sign, int j, int k,
                                Complex alpha, int cutoff) {
  if (rho_signal.rows() != cutoff + 1 || rho_signal.cols() != cutoff + 1) {
    throw std::invalid_argument("device_map_onoff: signal size mismatch");
  }
  // The balanced splitter against the reference can pile both pulses into one
  // port, so those two modes get the cutoff of a sqrt(2)-scaled amplitude.
  const int fresh_cutoff = default_cutoff(std::sqrt(2.0) * alpha);
  const Complex fresh_amp = static_cast<double>(sign) * alpha;
  const int d0 = cutoff + 1;
  const int dfresh = fresh_cutoff + 1;
  const int dmon = dfresh;

  // Propagate each signal basis ket through the device, keeping the joint
  // vector on (fresh, monitor); branch[n] holds the vectors for input |n>.
  std::vector<Mat> branch(d0, Mat::Zero(dfresh, dmon));
  for (int n = 0; n < d0; ++n) {
    PureState s = tensor(tensor(fock_state(n, cutoff), coherent_state(fresh_amp, fresh_cutoff)),
                         tensor(fock_state(1, kSinglePhotonCutoff), fock_state(0, kSinglePhotonCutoff)));
    s = apply_beam_splitter(s, 2, 3, kInvSqrt2, -kInvSqrt2);
    s = apply_cross_kerr(s, 0, 3);
    s = apply_cross_kerr(s, 1, 2);
    s = apply_beam_splitter(s, 3, 2, kInvSqrt2, kInvSqrt2);
    s = project_fock(s, 2, j).state;
    s = project_fock(s, 2, 1 - j).state;
    // discrimination unit: balanced splitter against the |alpha> reference
    s = tensor(s, coherent_state(alpha, fresh_cutoff));
    s = apply_beam_splitter(s, 1, 2, kInvSqrt2, kInvSqrt2);
    // s now lives on (signal=|n> marker, fresh out, monitor out); signal mode
    // is a bare Fock ket so the remaining amplitudes factor on (fresh, monitor)
    for (int nf = 0; nf < dfresh; ++nf) {
      for (int nm = 0; nm < dmon; ++nm) {
        const int occ[3] = {n, nf, nm};
        branch[n](nf, nm) = s.amplitude(std::span<const int>(occ, 3));
      }
    }
  }

  // ON/OFF aggregation on the monitor mode: k=0 keeps the vacuum component,
  // k=1 sums every photon-carrying component; the fresh output port is traced.
  Mat out = Mat::Zero(d0, d0);
  const int m_lo = (k == 0) ? 0 : 1;
  const int m_hi = (k == 0) ? 0 : dmon - 1;
  for (int n = 0; n < d0; ++n) {
    for (int m = 0; m < d0; ++m) {
      Complex acc{0.0, 0.0};
      for (int nm = m_lo; nm <= m_hi; ++nm) {
        for (int nf = 0; nf < dfresh; ++nf) {
          acc += branch[n](nf, nm) * std::conj(branch[m](nf, nm));
        }
      }
      out(n, m) = acc * rho_signal(n, m);
    }
  }
  // The cross-Kerr conditioning is diagonal in the signal basis, so the
  // element-wise product above is the full conditional map.
  const double prob = out.trace().real();
  return OnOffMapResult{std::move(out), prob};
}

double pair_purity_formula(double R, double r, const DeviceOutcome& o) {
  const double sign = o.parity() ? -1.0 : 1.0;
  return (R + sign * r) / (1.0 + sign * r * R);
}

double pair_probability_formula(double R, double r, const DeviceOutcome& o) {
  const double sign = o.parity() ? -1.0 : 1.0;
  return (1.0 + sign * r * R) / 16.0;
}

PairResult purify_pair(const ParamState& signal, double fresh_r, DeviceOutcome outcome,
                       Complex alpha, int cutoff) {
  if (std::abs(fresh_r) > 1.0) throw std::invalid_argument("purify_pair: |fresh_r| > 1");
  const DensityMatrix rho = to_density_matrix(signal, cutoff);
  Mat updated = four_branch_update(rho.matrix(), fresh_r, outcome, alpha, cutoff + 1);
  const double prob = updated.trace().real();
  if (prob <= 0.0) throw std::domain_error("purify_pair: zero-probability outcome");

  const Vec comp = phase_compensation_diagonal(outcome, cutoff + 1);
  for (Eigen::Index i = 0; i < updated.rows(); ++i) {
    for (Eigen::Index j = 0; j < updated.cols(); ++j) {
      updated(i, j) *= comp[i] * std::conj(comp[j]);
    }
  }
  updated /= prob;

  const FitResult fit = fit_param_state(DensityMatrix(rho.modes(), std::move(updated)),
                                        signal.base_alpha);
  return PairResult{fit.state, prob, fit.residual};
}

std::array<double, 16> outcome_probabilities(const ParamState& signal, double fresh_r,
                                             Complex alpha, int cutoff) {
  const DensityMatrix rho = to_density_matrix(signal, cutoff);
  std::array<double, 16> probs{};
  for (int idx = 0; idx < 16; ++idx) {
    const Mat updated = four_branch_update(rho.matrix(), fresh_r,
                                           DeviceOutcome::from_index(idx), alpha, cutoff + 1);
    probs[idx] = updated.trace().real();
  }
  return probs;
}

PurityWalk feedback_loop(double signal_r, double fresh_r, double epsilon, Complex alpha,
                         std::uint64_t seed, SimLevel level, int max_steps, int cutoff,
                         std::vector<DeviceOutcome>* outcomes) {
  if (level == SimLevel::qubit) {
    return run_walk_from(signal_r, fresh_r, epsilon, max_steps, seed);
  }
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("feedback_loop: epsilon must be in (0,1)");
  }
  const int c = cutoff > 0 ? cutoff : default_cutoff(alpha);

  PurityWalk walk;
  walk.fresh_r = fresh_r;
  walk.initial_R = signal_r;
  walk.seed = seed;
  SplitRng rng(seed);

  ParamState state{alpha, alpha, signal_r, alpha};
  for (int n = 0; n < max_steps; ++n) {
    if (1.0 - std::abs(state.r) < epsilon) {
      walk.converged = true;
      return walk;
    }
    const std::array<double, 16> probs = outcome_probabilities(state, fresh_r, alpha, c);
    double total = 0.0;
    for (double p : probs) total += p;
    double u = rng.uniform() * total;
    int pick = 15;
    for (int idx = 0; idx < 16; ++idx) {
      u -= probs[idx];
      if (u <= 0.0) {
        pick = idx;
        break;
      }
    }
    const DeviceOutcome o = DeviceOutcome::from_index(pick);
    const PairResult res = purify_pair(state, fresh_r, o, alpha, c);
    state = res.state;
    state.alpha0 = alpha;  // the device re-prepares the canonical amplitudes
    state.alpha1 = alpha;
    walk.max_fit_residual = std::max(walk.max_fit_residual, res.fit_residual);
    walk.steps.push_back(WalkStep{state.r, o.parity() ? -1 : +1, probs[pick]});
    if (outcomes) outcomes->push_back(o);
  }
  walk.converged = 1.0 - std::abs(state.r) < epsilon;
  return walk;
}

InstantResult instant_purify(const ParamState& signal, Complex beta, int cutoff) {
  const DensityMatrix rho = to_density_matrix(signal, cutoff);
  const double g2 = std::exp(-std::norm(beta)) * std::norm(beta) * 0.5;  // |<0|b><1|b>|^2/2

  // conditional two-mode operator: scalar * [(-1)^n0 + (-1)^n1]
  const int d = cutoff + 1;
  Vec op(static_cast<Eigen::Index>(d) * d);
  for (int n0 = 0; n0 < d; ++n0) {
    for (int n1 = 0; n1 < d; ++n1) {
      const double p0 = (n0 & 1) ? -1.0 : 1.0;
      const double p1 = (n1 & 1) ? -1.0 : 1.0;
      op[static_cast<Eigen::Index>(n0) * d + n1] = p0 + p1;
    }
  }
  Mat updated(rho.matrix().rows(), rho.matrix().cols());
  for (Eigen::Index i = 0; i < updated.rows(); ++i) {
    for (Eigen::Index j = 0; j < updated.cols(); ++j) {
      updated(i, j) = g2 * op[i] * std::conj(op[j]) * rho.matrix()(i, j);
    }
  }
  const double prob = updated.trace().real();
  if (prob <= 0.0) throw std::domain_error("instant_purify: zero-probability branch");

  // compensating parity phase on mode 1
  for (Eigen::Index i = 0; i < updated.rows(); ++i) {
    const double pi = ((i % d) & 1) ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < updated.cols(); ++j) {
      const double pj = ((j % d) & 1) ? -1.0 : 1.0;
      updated(i, j) *= pi * pj;
    }
  }
  updated /= prob;

  const FitResult fit = fit_param_state(DensityMatrix(rho.modes(), std::move(updated)),
                                        signal.base_alpha);
  return InstantResult{fit.state, prob, fit.residual};
}

double instant_purify_prob_closed_form(double r, Complex beta, Complex alpha) {
  const double g2 = std::exp(-2.0 * std::norm(beta)) * std::norm(beta);
  const double q = std::exp(-4.0 * std::norm(alpha));
  return g2 * (1.0 + r) * (1.0 + q) / (1.0 + r * q);
}

}  // namespace catlink
