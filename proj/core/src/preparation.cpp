#include "catlink/preparation.hpp"

#include <cmath>

namespace catlink {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// Runs the Fig.-1 circuit on an arbitrary two-mode signal input and projects
// the canonical ancilla herald. Returns the unnormalized conditional state on
// the signal modes. Ancillas are projected as soon as their last coupler has
// acted to cap the peak dimension.
PureState run_preparation_circuit(const PureState& signal01, Complex beta, Complex T,
                                  Complex R, int ancilla_cutoff, const Herald& herald) {
  // modes: 0,1 signal; 2 carries the split photon to Alice, 3 to Bob
  PureState s = tensor(tensor(signal01, fock_state(1, kSinglePhotonCutoff)),
                       fock_state(0, kSinglePhotonCutoff));
  s = apply_beam_splitter(s, 2, 3, kInvSqrt2, -kInvSqrt2);
  s = apply_cross_kerr(s, 0, 2);
  s = apply_cross_kerr(s, 1, 3);

  // Alice mixes mode 2 with |beta> and counts photons on both ports.
  s = tensor(s, coherent_state(beta, ancilla_cutoff));  // mode 4
  s = apply_beam_splitter(s, 2, 4, T, R);
  s = project_fock(s, 4, herald.n4).state;
  s = project_fock(s, 2, herald.n2).state;

  // Bob does the same with mode 3 (now at index 2).
  s = tensor(s, coherent_state(beta, ancilla_cutoff));  // his |beta> at index 3
  s = apply_beam_splitter(s, 2, 3, T, R);
  s = project_fock(s, 3, herald.n5).state;
  s = project_fock(s, 2, herald.n3).state;
  return s;
}

PureState run_third_party_circuit(const PureState& signal01, Complex beta,
                                  int ancilla_cutoff, int n2, int n3) {
  PureState s = tensor(tensor(signal01, coherent_state(beta, ancilla_cutoff)),
                       coherent_state(beta, ancilla_cutoff));
  s = apply_cross_kerr(s, 0, 2);
  s = apply_cross_kerr(s, 1, 3);
  // inverse of the balanced splitter (T = -R = 1/sqrt(2))
  s = apply_beam_splitter(s, 2, 3, kInvSqrt2, kInvSqrt2);
  s = project_fock(s, 3, n3).state;
  s = project_fock(s, 2, n2).state;
  return s;
}

PrepResult finish(PureState conditional, const Herald& herald) {
  const double p = conditional.norm2();
  PrepResult res{std::move(conditional), p, herald};
  if (p > 1e-300) res.state.normalize();
  return res;
}

}  // namespace

double coeff_C(double x) { return std::exp(-x) * std::cosh(x); }
double coeff_S(double x) { return std::exp(-x) * std::sinh(x); }

PrepResult prepare_entangled_cats(Complex alpha, Complex beta, Complex T, Complex R,
                                  const PrepOptions& opt) {
  const int sc = opt.signal_cutoff.value_or(default_cutoff(alpha));
  const int ac = opt.ancilla_cutoff.value_or(default_cutoff(beta));
  const PureState in = tensor(coherent_state(alpha, sc), coherent_state(alpha, sc));
  PureState out = run_preparation_circuit(in, beta, T, R, ac, opt.herald);
  return finish(std::move(out), opt.herald);
}

PrepResult third_party_prepare(Complex alpha, Complex beta, const PrepOptions& opt) {
  const int sc = opt.signal_cutoff.value_or(default_cutoff(alpha));
  const int ac = opt.ancilla_cutoff.value_or(default_cutoff(beta));
  const PureState in = tensor(coherent_state(alpha, sc), coherent_state(alpha, sc));
  PureState out = run_third_party_circuit(in, beta, ac, opt.herald.n2, opt.herald.n3);
  return finish(std::move(out), opt.herald);
}

Mat conditional_operator_matrix(const ModeSpec& signal, Complex beta, Complex T, Complex R) {
  if (signal.num_modes() != 2) throw std::invalid_argument("conditional_operator_matrix: need 2 signal modes");
  const int d0 = signal.dim(0), d1 = signal.dim(1);
  const int ac = default_cutoff(beta);
  Mat Y = Mat::Zero(d0 * d1, d0 * d1);
  for (int n0 = 0; n0 < d0; ++n0) {
    for (int n1 = 0; n1 < d1; ++n1) {
      const PureState in = tensor(fock_state(n0, signal.cutoff(0)), fock_state(n1, signal.cutoff(1)));
      const PureState col = run_preparation_circuit(in, beta, T, R, ac, Herald{});
      Y.col(n0 * d1 + n1) = col.amplitudes();
    }
  }
  return Y;
}

Mat conditional_operator_closed_form(const ModeSpec& signal, Complex beta, Complex T, Complex R) {
  if (signal.num_modes() != 2) throw std::invalid_argument("conditional_operator_closed_form: need 2 signal modes");
  const int d0 = signal.dim(0), d1 = signal.dim(1);
  const Complex amp0 = std::exp(-0.5 * std::norm(beta));        // <0|beta>
  const Complex amp1 = beta * std::exp(-0.5 * std::norm(beta)); // <1|beta>
  const Complex g = T * R * amp0 * amp1 * kInvSqrt2;
  Mat Y = Mat::Zero(d0 * d1, d0 * d1);
  for (int n0 = 0; n0 < d0; ++n0) {
    for (int n1 = 0; n1 < d1; ++n1) {
      const double par = ((n0 & 1) ? -1.0 : 1.0) + ((n1 & 1) ? -1.0 : 1.0);
      Y(n0 * d1 + n1, n0 * d1 + n1) = g * par;
    }
  }
  return Y;
}

Mat third_party_operator_matrix(const ModeSpec& signal, Complex beta) {
  if (signal.num_modes() != 2) throw std::invalid_argument("third_party_operator_matrix: need 2 signal modes");
  const int d0 = signal.dim(0), d1 = signal.dim(1);
  const int ac = default_cutoff(beta);
  Mat Y = Mat::Zero(d0 * d1, d0 * d1);
  for (int n0 = 0; n0 < d0; ++n0) {
    for (int n1 = 0; n1 < d1; ++n1) {
      const PureState in = tensor(fock_state(n0, signal.cutoff(0)), fock_state(n1, signal.cutoff(1)));
      const PureState col = run_third_party_circuit(in, beta, ac, 1, 0);
      Y.col(n0 * d1 + n1) = col.amplitudes();
    }
  }
  return Y;
}

Mat third_party_operator_closed_form(const ModeSpec& signal, Complex beta) {
  if (signal.num_modes() != 2) throw std::invalid_argument("third_party_operator_closed_form: need 2 signal modes");
  const int d0 = signal.dim(0), d1 = signal.dim(1);
  const Complex amp0 = std::exp(-0.5 * std::norm(beta));
  const Complex amp1 = beta * std::exp(-0.5 * std::norm(beta));
  const Complex g = amp0 * amp1 * kInvSqrt2;
  Mat out = Mat::Zero(d0 * d1, d0 * d1);
  for (int n0 = 0; n0 < d0; ++n0) {
    for (int n1 = 0; n1 < d1; ++n1) {
      const double par = ((n0 & 1) ? -1.0 : 1.0) + ((n1 & 1) ? -1.0 : 1.0);
      out(n0 * d1 + n1, n0 * d1 + n1) = g * par;
    }
  }
  return out;
}

PureState analytic_entangled_cat(Complex alpha, int cutoff) {
  const PureState plus = coherent_state(alpha, cutoff);
  const PureState minus = coherent_state(-alpha, cutoff);
  PureState out = tensor(plus, minus);
  out.amplitudes() += tensor(minus, plus).amplitudes();
  out.normalize();
  return out;
}

double preparation_probability_closed_form(Complex alpha, Complex beta, Complex T, Complex R) {
  const double g2 = std::norm(T) * std::norm(R) * std::exp(-2.0 * std::norm(beta)) * std::norm(beta);
  return g2 * (1.0 + std::exp(-4.0 * std::norm(alpha)));
}

double third_party_probability_closed_form(Complex alpha, Complex beta) {
  const double g2 = std::exp(-2.0 * std::norm(beta)) * std::norm(beta);
  return g2 * (1.0 + std::exp(-4.0 * std::norm(alpha)));
}

DensityMatrix kerr_reduced_state(Complex alpha, Complex beta, int cutoff) {
  const double x = std::norm(beta);
  const DensityMatrix plus = outer(coherent_state(alpha, cutoff));
  const DensityMatrix minus = outer(coherent_state(-alpha, cutoff));
  Mat m = coeff_C(x) * plus.matrix() + coeff_S(x) * minus.matrix();
  return DensityMatrix(plus.modes(), std::move(m));
}

}  // namespace catlink
