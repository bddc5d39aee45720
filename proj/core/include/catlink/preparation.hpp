#pragma once

#include <optional>

#include "catlink/fock.hpp"

namespace catlink {

/// e^-x cosh x and e^-x sinh x, the even/odd weights of a dephased coherent
/// state.
double coeff_C(double x);
double coeff_S(double x);

/// Photon numbers found at the four ancilla detectors; the canonical pattern
/// heralds one photon at each station's "1" detector and none elsewhere.
struct Herald {
  int n2 = 1;
  int n3 = 1;
  int n4 = 0;
  int n5 = 0;
};

struct PrepResult {
  PureState state;     // normalized two-mode signal state (zero on a dead branch)
  double probability;  // success probability of the heralded branch
  Herald herald;
};

struct PrepOptions {
  std::optional<int> signal_cutoff;   // default: cutoff rule for alpha
  std::optional<int> ancilla_cutoff;  // default: cutoff rule for beta
  Herald herald = {};
};

/// Heralded preparation of the entangled two-mode cat state by full six-mode
/// simulation: signal pulses |alpha>|alpha>, a split single photon, coherent
/// |beta> ancillas, cross-Kerr couplers and photon counting.
PrepResult prepare_entangled_cats(Complex alpha, Complex beta, Complex T, Complex R,
                                  const PrepOptions& opt = {});

/// Third-party variant: both stations couple coherent |beta> ancillas which
/// meet on a remote beam splitter; herald is (1, 0) photons behind it.
PrepResult third_party_prepare(Complex alpha, Complex beta, const PrepOptions& opt = {});

/// Conditional two-mode operator of the canonical setup, contracted
/// numerically over the ancilla circuit; diagonal in the Fock basis.
Mat conditional_operator_matrix(const ModeSpec& signal, Complex beta, Complex T, Complex R);
/// Closed form: the diagonal (TR<0|beta><1|beta>/sqrt(2)) [(-1)^n0 + (-1)^n1].
Mat conditional_operator_closed_form(const ModeSpec& signal, Complex beta, Complex T, Complex R);

/// Same pair for the third-party setup: <0|beta><1|beta>/sqrt(2) [(-1)^n0 + (-1)^n1].
Mat third_party_operator_matrix(const ModeSpec& signal, Complex beta);
Mat third_party_operator_closed_form(const ModeSpec& signal, Complex beta);

/// The normalized target state (|a,-a> + |-a,a>)/sqrt(2(1+e^-4|a|^2)).
PureState analytic_entangled_cat(Complex alpha, int cutoff);

/// Success probability |TR<0|beta><1|beta>|^2 (1+e^-4|alpha|^2).
double preparation_probability_closed_form(Complex alpha, Complex beta, Complex T, Complex R);
/// Probability of the third-party herald, |<0|beta><1|beta>|^2 (1+e^-4|alpha|^2).
double third_party_probability_closed_form(Complex alpha, Complex beta);

/// Local reduced state after one cross-Kerr coupling:
/// C(|beta|^2)|alpha><alpha| + S(|beta|^2)|-alpha><-alpha|.
DensityMatrix kerr_reduced_state(Complex alpha, Complex beta, int cutoff);

}  // namespace catlink
