#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "catlink/channel.hpp"
#include "catlink/fock.hpp"
#include "catlink/qubit.hpp"

namespace catlink {

/// ON/OFF detector clicks at Claire's (j0, k0) and Denis's (j1, k1) devices.
struct DeviceOutcome {
  int j0 = 0;
  int k0 = 0;
  int j1 = 0;
  int k1 = 0;

  int parity() const { return (j0 + j1) & 1; }  // odd parity flips the branch sign
  int index() const { return j0 * 8 + k0 * 4 + j1 * 2 + k1; }
  static DeviceOutcome from_index(int idx) {
    return DeviceOutcome{(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
  }
};

/// Diagonal of the conditional single-mode operator for a fresh pulse of sign
/// `sign` and clicks (j, k), exact closed form:
/// (1/2)(-1)^{k(n+j)} e^{-|a|^2} [e^{s|a|^2}(-1)^{n+j} + e^{-s|a|^2}].
Vec conditional_op_diagonal(int sign, int j, int k, Complex alpha, int cutoff);

/// Large-amplitude limit of the same diagonal, (1/2)(-1)^{k(n+j)} (-s)^{n+j}.
Vec conditional_op_diagonal_approx(int sign, int j, int k, int cutoff);

/// Numerical contraction of the device circuit (Mach-Zehnder single photon,
/// two cross-Kerr couplers, coherent-state discrimination) as a matrix on the
/// signal mode. Agrees elementwise with conditional_op_diagonal.
Mat conditional_single_mode_op(int sign, int j, int k, Complex alpha, int cutoff);

/// Device-faithful discrimination: mixes the fresh mode with a coherent
/// reference on a balanced splitter and aggregates the ON/OFF branches of the
/// monitor mode (click = any photon). Returns the unnormalized conditional
/// signal state for outcome (j, k) and its probability weight. Differs from
/// the idealized operator map at O(e^{-2|alpha|^2}).
struct OnOffMapResult {
  Mat rho;
  double prob;
};
OnOffMapResult device_map_onoff(const Mat& rho_signal, int sign, int j, int k,
                                Complex alpha, int cutoff);

struct PairResult {
  ParamState state;
  double prob;
  double fit_residual;
};

/// One full purification round at the Fock level: the four-branch conditional
/// update from the fresh pulse of purity fresh_r, phase compensation, and a
/// refit to the analytic family.
PairResult purify_pair(const ParamState& signal, double fresh_r, DeviceOutcome outcome,
                       Complex alpha, int cutoff);

/// Exact probabilities of the 16 detector outcomes for one round.
std::array<double, 16> outcome_probabilities(const ParamState& signal, double fresh_r,
                                             Complex alpha, int cutoff);

/// Qubit-level reference values: R' = (R + (-1)^{j0+j1} r)/(1 + (-1)^{j0+j1} rR)
/// and p = (1 + (-1)^{j0+j1} rR)/16.
double pair_purity_formula(double R, double r, const DeviceOutcome& outcome);
double pair_probability_formula(double R, double r, const DeviceOutcome& outcome);

enum class SimLevel { qubit, fock };

/// Closed-loop run: the signal recirculates, each round consumes one fresh
/// pulse of purity fresh_r and the detector outcome is sampled from its exact
/// distribution. level=qubit reproduces run_walk_from bit for bit.
PurityWalk feedback_loop(double signal_r, double fresh_r, double epsilon, Complex alpha,
                         std::uint64_t seed, SimLevel level, int max_steps = 100000,
                         int cutoff = -1, std::vector<DeviceOutcome>* outcomes = nullptr);

struct InstantResult {
  ParamState state;
  double prob;
  double fit_residual;
};

/// Third-party shortcut: the two-mode conditional operator acts once on the
/// mixed signal, a parity phase is compensated, and the pure state returns.
/// Probability follows 4 p_max (1+r)/(1+r e^{-4|a|^2}) at |beta|^2 = 1/2.
InstantResult instant_purify(const ParamState& signal, Complex beta, int cutoff);

double instant_purify_prob_closed_form(double r, Complex beta, Complex alpha);

}  // namespace catlink
