#pragma once

#include "catlink/fock.hpp"

namespace catlink {

/// The analytic two-mode family: an equal mixture of the coherent branches
/// |alpha0,-alpha1> and |-alpha0,alpha1> plus their coherence, weighted by the
/// purity parameter r. base_alpha is the amplitude of the originally prepared
/// state and fixes the canonical branch sign.
struct ParamState {
  Complex alpha0;
  Complex alpha1;
  double r = 1.0;
  Complex base_alpha;

  static ParamState initial(Complex alpha) { return ParamState{alpha, alpha, 1.0, alpha}; }
};

/// Lossy line: T0, T1 are the survival amplitudes per characteristic length L;
/// the line has length l and the discrete model inserts n_steps couplers.
struct ChannelSpec {
  double T0 = 1.0;
  double T1 = 1.0;
  double L = 1.0;
  double l = 0.0;
  int n_steps = 1;

  void validate() const;
};

/// Dense two-mode density matrix of the family member (same cutoff per mode).
DensityMatrix to_density_matrix(const ParamState& ps, int cutoff);

/// One vacuum-coupler loss step on a single mode: attach a vacuum ancilla,
/// apply a beam splitter with |T| = transmittance, trace the ancilla. The
/// dilation is evaluated one environment Fock component at a time, which is
/// the same channel without materializing the enlarged state. env_cutoff < 0
/// keeps every component the mode cutoff admits.
DensityMatrix loss_step(const DensityMatrix& rho, int mode, double transmittance,
                        int env_cutoff = -1);

/// n_steps alternating loss steps on modes 0 and 1 with per-step
/// transmittances T_j^(l / (L n_steps)).
DensityMatrix propagate_discrete(const DensityMatrix& rho, const ChannelSpec& spec);

/// Exact parameter flow: alpha_j scales by T_j^(l/L) and r picks up
/// exp(-2 (|a0|^2+|a1|^2 - |a0'|^2-|a1'|^2)). Composes exactly (semigroup).
ParamState propagate_analytic(const ParamState& ps, const ChannelSpec& spec);

/// First-order short-line limit: r ~ exp[4|alpha|^2 (ln T0 + ln T1) l/L],
/// amplitudes unchanged.
ParamState propagate_small_l(const ParamState& ps, const ChannelSpec& spec);

struct FitResult {
  ParamState state;
  double residual;   // Frobenius distance to the refitted family member
  bool in_family;    // residual below the supplied threshold
};

/// Inverse of to_density_matrix within the family: amplitudes from the
/// quadratic moments <a_j^2> and <a_0 a_1>, purity from the coherent-branch
/// coherence <a0,-a1|rho|-a0,a1>.
FitResult fit_param_state(const DensityMatrix& rho, Complex base_alpha,
                          double family_threshold = 1e-3);

}  // namespace catlink
