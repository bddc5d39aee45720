#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "catlink/channel.hpp"
#include "catlink/fock.hpp"
#include "catlink/qubit.hpp"

namespace catlink {

/// Parity coincidence rate M = p(e,e)+p(u,u)-p(e,u)-p(u,e), summed over the
/// joint photon-number distribution of the two-mode state.
double parity_coincidence(const ParamState& ps, int cutoff);
/// Closed form (r + s)/(1 + r s) with s = e^{-2(|a0|^2+|a1|^2)}.
double parity_coincidence_closed_form(const ParamState& ps);

struct SampledParity {
  double estimate;
  double std_error;
};
/// Finite-trial photon-counting estimate of M with binomial error bars.
SampledParity parity_coincidence_sampled(const ParamState& ps, int cutoff, int trials,
                                         std::uint64_t seed);

/// Joint state of the two probe modes behind the cross-Kerr couplers,
/// contracted over the signal modes at the Fock level.
DensityMatrix probe_state(const ParamState& ps, Complex gamma, int signal_cutoff,
                          int probe_cutoff);

/// Screen intensity <I> at phase difference delta_phi, evaluated on the
/// Fock-level probe state (arbitrary units fixed to the operator expectation).
double interference_intensity(const ParamState& ps, Complex gamma, double delta_phi,
                              int cutoff);
/// Closed form 2|gamma|^2 (1 + M cos(delta_phi)).
double interference_intensity_closed_form(const ParamState& ps, Complex gamma,
                                          double delta_phi);
/// Variance of the intensity operator on the probe state (Fock route).
double interference_variance(const ParamState& ps, Complex gamma, double delta_phi,
                             int cutoff);

struct InterferencePattern {
  Complex gamma;
  std::vector<std::pair<double, double>> samples;  // (delta_phi, intensity)
  double contrast;
  int sign_of_r;
};
InterferencePattern interference_pattern(const ParamState& ps, Complex gamma,
                                         int n_samples, int cutoff);

struct ContrastResult {
  double visibility;
  int sign;  // +1 if the central fringe is a maximum
};
/// (I_max - I_min)/(I_max + I_min) from the fringe extremes, sign from the
/// intensity at zero phase difference.
ContrastResult contrast(const ParamState& ps, Complex gamma, int cutoff = -1);

/// Relative variance of the contrast estimate:
/// (|M|^-2 - 1)/2 (|gamma|^-2 + 1 + |M|^2); infinite at M = 0.
double contrast_uncertainty(Complex gamma, double M);

struct BackactionResult {
  DensityMatrix state;   // post-measurement signal state, Fock level
  BellMixture mixture;   // cat-qubit reading of that state
  double leakage;        // weight outside the two-qubit subspace
};
/// Reduced signal state after the probe coupling, contracted at the Fock
/// level, with its qubit reading (weights C(1±r)/2 and S(1±r)/2).
BackactionResult backaction_state(const ParamState& ps, Complex gamma, int cutoff);
/// Direct construction C rho + S P1 rho P1 with C = C(2|g|^2), S = S(2|g|^2).
DensityMatrix backaction_direct(const ParamState& ps, Complex gamma, int cutoff);

/// Relative state deviation (1 - C(2|gamma|^2))^2, and its small-probe limit.
double state_deviation(Complex gamma);
double state_deviation_small_gamma(Complex gamma);

/// Isometry from the cat qubit into the truncated Fock space: columns are the
/// orthonormalized |alpha>-like and |-alpha>-like states built from the
/// even/odd cat basis.
Mat cat_qubit_isometry(Complex alpha, int cutoff);

struct QubitReading {
  Eigen::Matrix4cd rho;  // unnormalized projection onto the qubit pair
  double leakage;
};
QubitReading qubit_reading(const DensityMatrix& two_mode, Complex alpha);
BellMixture bell_weights(const QubitReading& reading);

/// Quantum mutual information S(A) + S(B) - S(AB) of a two-qubit state, bits.
double mutual_information_bits(const Eigen::Matrix4cd& rho);

struct ComplementarityReport {
  double mi_none;        // pristine state
  double mi_loss_only;   // purity fully scattered away (r = 0)
  double mi_dephasing_only;
  double mi_both;
  double e_none;
  double e_loss_only;
  double e_dephasing_only;
  double e_both;
  double max_leakage;
};
/// Loss degrades the coherence, probe dephasing the phase; each alone leaves
/// one bit of classical correlation, together they erase it.
ComplementarityReport complementarity_demo(Complex alpha, int cutoff);

}  // namespace catlink
