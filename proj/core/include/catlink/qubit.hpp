#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace catlink {

/// Weights on the four Bell states in the cat-qubit basis (up = |alpha>,
/// down = |-alpha>): Psi± = (|ud> ± |du>)/√2, Phi± = (|uu> ± |dd>)/√2.
struct BellMixture {
  double psi_plus = 0.0;
  double psi_minus = 0.0;
  double phi_plus = 0.0;
  double phi_minus = 0.0;

  double sum() const { return psi_plus + psi_minus + phi_plus + phi_minus; }
  double max_weight() const;
  void validate(double tol = 1e-12) const;
};

/// Mixture (1+r)/2 Psi+ + (1-r)/2 Psi- for purity parameter |r| <= 1.
BellMixture bell_mixture_from_purity(double r);

/// Entanglement of formation of a Bell-diagonal state:
/// E = -x+ log2 x+ - x- log2 x-, x± = 1/2 ± sqrt(p(1-p)),
/// p = max(1/2, largest weight).
double entanglement_of_formation(const BellMixture& mix);

struct StepResult {
  double R_next;
  double prob;
};

/// One purification round on the purity parameter:
/// R' = (R ± r)/(1 ± rR) with probability (1 ± rR)/2; plus branch iff the two
/// detectors saw the same state. Throws std::domain_error on a
/// zero-probability branch.
StepResult purification_step(double R_prev, double r, bool same_outcome);

/// Outcome-averaged growth of Var(R) in one round:
/// p+(f+ - r)^2 + p-(f- - r)^2 - (R - r)^2 = r^2 (1-R^2)^2 / (1 - r^2 R^2).
double variance_increment(double R_prev, double r);

struct WalkStep {
  double R;
  int sign;     // +1 same detections, -1 different
  double prob;  // probability of the realized branch
};

/// A realized trajectory of the purity-parameter random walk.
struct PurityWalk {
  double fresh_r = 0.0;   // purity of each fresh pulse
  double initial_R = 0.0; // R_0
  std::vector<WalkStep> steps;
  std::uint64_t seed = 0;
  bool converged = false;
  double max_fit_residual = 0.0;  // used by the Fock-level loop

  double final_R() const { return steps.empty() ? initial_R : steps.back().R; }
  int final_sign() const { return final_R() >= 0.0 ? +1 : -1; }
  /// Bell sector alternates each round (tracked as a flag, not applied).
  int sector_parity() const { return static_cast<int>(steps.size()) % 2; }
};

/// Samples a walk with R_0 = r until 1-|R_n| < epsilon or max_steps.
PurityWalk run_walk(double r, double epsilon, int max_steps, std::uint64_t seed);

/// Same recursion with independent initial purity R_0 = signal_r.
PurityWalk run_walk_from(double signal_r, double fresh_r, double epsilon,
                         int max_steps, std::uint64_t seed);

struct MeanStepsResult {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  int not_converged = 0;
};

/// Monte Carlo estimate of the mean stopping time of run_walk. Trials use
/// split RNG streams, so the result is independent of `threads`.
MeanStepsResult mean_steps(double r, double epsilon, int trials,
                           std::uint64_t seed, int max_steps = 1000000,
                           int threads = 1);

enum class Spin { up, down };

struct GateOutcome {
  Spin claire;
  Spin denis;
  bool same() const { return claire == denis; }
};

struct GateResult {
  BellMixture mixture;  // normalized signal state after the detections
  double prob;          // probability of this outcome
  bool sector_flipped;  // Psi <-> Phi exchange caused by the gate
};

/// Exact two-pair update: the two-qubit gate acts on (signal, fresh) at each
/// station, the fresh qubits are measured in the up/down basis, and the
/// normalized signal mixture is returned with the outcome probability.
GateResult apply_gate_to_mixture(const BellMixture& signal,
                                 const BellMixture& fresh,
                                 GateOutcome outcome);

/// 4x4 matrix of the two-qubit purification gate in the basis
/// |uu>, |ud>, |du>, |dd> (first factor = signal qubit).
Eigen::Matrix4cd purification_gate_matrix();

/// Density matrix of a Bell mixture in the basis |uu>, |ud>, |du>, |dd>.
Eigen::Matrix4cd bell_mixture_density(const BellMixture& mix);

/// Bell weights of a 4x4 two-qubit density matrix.
BellMixture bell_weights_of_density(const Eigen::Matrix4cd& rho);

}  // namespace catlink
