#include "catlink/detection.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "catlink/rng.hpp"

namespace catlink {

namespace {

double branch_overlap(const ParamState& ps) {
  return std::exp(-2.0 * (std::norm(ps.alpha0) + std::norm(ps.alpha1)));
}

struct BranchPair {
  Complex x0, x1;  // coherent amplitudes of modes 0 and 1
};

// The two coherent branches of the family and their (ket, bra) weights.
std::array<BranchPair, 2> family_branches(const ParamState& ps) {
  return {BranchPair{ps.alpha0, -ps.alpha1}, BranchPair{-ps.alpha0, ps.alpha1}};
}

double branch_weight(const ParamState& ps, int ket, int bra) {
  const double norm = 2.0 * (1.0 + ps.r * branch_overlap(ps));
  return (ket == bra ? 1.0 : ps.r) / norm;
}

// Two-mode pure matrix A[n_sig, n_probe] of K (|x>_sig ⊗ |gamma>_probe).
Mat kerr_branch_matrix(Complex x, Complex gamma, int signal_cutoff, int probe_cutoff) {
  const Vec cs = coherent_state(x, signal_cutoff).amplitudes();
  const Vec cp = coherent_state(gamma, probe_cutoff).amplitudes();
  Mat a = cs * cp.transpose();
  for (int n = 1; n <= signal_cutoff; n += 2) {
    for (int m = 1; m <= probe_cutoff; m += 2) a(n, m) = -a(n, m);
  }
  return a;
}

Mat intensity_operator(int probe_dim, double delta_phi) {
  const Mat a = annihilation_matrix(probe_dim);
  const Mat n = a.adjoint() * a;
  const Mat id = Mat::Identity(probe_dim, probe_dim);
  const Eigen::Index d2 = static_cast<Eigen::Index>(probe_dim) * probe_dim;
  Mat op = Mat::Zero(d2, d2);
  auto kron = [&](const Mat& x, const Mat& y) {
    Mat out(d2, d2);
    for (int i = 0; i < probe_dim; ++i)
      for (int j = 0; j < probe_dim; ++j)
        out.block(i * probe_dim, j * probe_dim, probe_dim, probe_dim) = x(i, j) * y;
    return out;
  };
  op += kron(n, id) + kron(id, n);
  const Complex phase = std::exp(Complex{0.0, -delta_phi});
  op += phase * kron(a.adjoint(), a);
  op += std::conj(phase) * kron(a, a.adjoint());
  return op;
}

double entropy_bits(const Eigen::VectorXd& eigs) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double p = eigs[i];
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace

double parity_coincidence(const ParamState& ps, int cutoff) {
  const DensityMatrix rho = to_density_matrix(ps, cutoff);
  const int d = cutoff + 1;
  double m = 0.0;
  for (int n0 = 0; n0 < d; ++n0) {
    for (int n1 = 0; n1 < d; ++n1) {
      const Eigen::Index i = static_cast<Eigen::Index>(n0) * d + n1;
      const double par = ((n0 + n1) & 1) ? -1.0 : 1.0;
      m += par * rho.matrix()(i, i).real();
    }
  }
  return m;
}

double parity_coincidence_closed_form(const ParamState& ps) {
  const double s = branch_overlap(ps);
  return (ps.r + s) / (1.0 + ps.r * s);
}

SampledParity parity_coincidence_sampled(const ParamState& ps, int cutoff, int trials,
                                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("parity_coincidence_sampled: trials must be >= 1");
  const DensityMatrix rho = to_density_matrix(ps, cutoff);
  const int d = cutoff + 1;
  std::vector<double> probs(static_cast<std::size_t>(d) * d);
  std::vector<double> parity(probs.size());
  double total = 0.0;
  for (int n0 = 0; n0 < d; ++n0) {
    for (int n1 = 0; n1 < d; ++n1) {
      const std::size_t i = static_cast<std::size_t>(n0) * d + n1;
      probs[i] = std::max(0.0, rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
      parity[i] = ((n0 + n1) & 1) ? -1.0 : 1.0;
      total += probs[i];
    }
  }
  SplitRng rng(seed);
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    double u = rng.uniform() * total;
    std::size_t pick = probs.size() - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      u -= probs[i];
      if (u <= 0.0) {
        pick = i;
        break;
      }
    }
    acc += parity[pick];
  }
  const double est = acc / trials;
  const double se = std::sqrt(std::max(0.0, 1.0 - est * est) / trials);
  return SampledParity{est, se};
}

DensityMatrix probe_state(const ParamState& ps, Complex gamma, int signal_cutoff,
                          int probe_cutoff) {
  const auto branches = family_branches(ps);
  const int dp = probe_cutoff + 1;
  const Eigen::Index d2 = static_cast<Eigen::Index>(dp) * dp;
  Mat rho67 = Mat::Zero(d2, d2);
  for (int ket = 0; ket < 2; ++ket) {
    for (int bra = 0; bra < 2; ++bra) {
      const double w = branch_weight(ps, ket, bra);
      const Mat A0 = kerr_branch_matrix(branches[ket].x0, gamma, signal_cutoff, probe_cutoff);
      const Mat A1 = kerr_branch_matrix(branches[ket].x1, gamma, signal_cutoff, probe_cutoff);
      const Mat B0 = kerr_branch_matrix(branches[bra].x0, gamma, signal_cutoff, probe_cutoff);
      const Mat B1 = kerr_branch_matrix(branches[bra].x1, gamma, signal_cutoff, probe_cutoff);
      const Mat M6 = A0.transpose() * B0.conjugate();  // trace over signal mode 0
      const Mat M7 = A1.transpose() * B1.conjugate();  // trace over signal mode 1
      for (int i = 0; i < dp; ++i) {
        for (int j = 0; j < dp; ++j) {
          rho67.block(i * dp, j * dp, dp, dp) += w * M6(i, j) * M7;
        }
      }
    }
  }
  return DensityMatrix(ModeSpec({probe_cutoff, probe_cutoff}), std::move(rho67));
}

double interference_intensity(const ParamState& ps, Complex gamma, double delta_phi,
                              int cutoff) {
  const int pc = default_cutoff(gamma);
  const DensityMatrix rho67 = probe_state(ps, gamma, cutoff, pc);
  const Mat op = intensity_operator(pc + 1, delta_phi);
  return (rho67.matrix() * op).trace().real();
}

double interference_intensity_closed_form(const ParamState& ps, Complex gamma,
                                          double delta_phi) {
  const double m = parity_coincidence_closed_form(ps);
  return 2.0 * std::norm(gamma) * (1.0 + m * std::cos(delta_phi));
}

double interference_variance(const ParamState& ps, Complex gamma, double delta_phi,
                             int cutoff) {
  const int pc = default_cutoff(gamma);
  const DensityMatrix rho67 = probe_state(ps, gamma, cutoff, pc);
  const Mat op = intensity_operator(pc + 1, delta_phi);
  const double mean = (rho67.matrix() * op).trace().real();
  const double second = (rho67.matrix() * op * op).trace().real();
  return second - mean * mean;
}

InterferencePattern interference_pattern(const ParamState& ps, Complex gamma,
                                         int n_samples, int cutoff) {
  if (n_samples < 2) throw std::invalid_argument("interference_pattern: need >= 2 samples");
  InterferencePattern pat;
  pat.gamma = gamma;
  const int pc = default_cutoff(gamma);
  const DensityMatrix rho67 = probe_state(ps, gamma, cutoff, pc);
  for (int i = 0; i < n_samples; ++i) {
    const double phi = 2.0 * M_PI * i / (n_samples - 1);
    const Mat op = intensity_operator(pc + 1, phi);
    pat.samples.emplace_back(phi, (rho67.matrix() * op).trace().real());
  }
  const Mat op0 = intensity_operator(pc + 1, 0.0);
  const Mat oppi = intensity_operator(pc + 1, M_PI);
  const double i0 = (rho67.matrix() * op0).trace().real();
  const double ipi = (rho67.matrix() * oppi).trace().real();
  pat.contrast = std::abs(i0 - ipi) / (i0 + ipi);
  pat.sign_of_r = i0 >= ipi ? +1 : -1;
  return pat;
}

ContrastResult contrast(const ParamState& ps, Complex gamma, int cutoff) {
  const int c = cutoff > 0 ? cutoff : default_cutoff(ps.base_alpha);
  const double i0 = interference_intensity(ps, gamma, 0.0, c);
  const double ipi = interference_intensity(ps, gamma, M_PI, c);
  return ContrastResult{std::abs(i0 - ipi) / (i0 + ipi), i0 >= ipi ? +1 : -1};
}

double contrast_uncertainty(Complex gamma, double M) {
  const double m = std::abs(M);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  if (m > 1.0) throw std::invalid_argument("contrast_uncertainty: |M| > 1");
  const double g2 = std::norm(gamma);
  if (g2 == 0.0) throw std::invalid_argument("contrast_uncertainty: gamma = 0");
  return 0.5 * (1.0 / (m * m) - 1.0) * (1.0 / g2 + 1.0 + m * m);
}

DensityMatrix backaction_direct(const ParamState& ps, Complex gamma, int cutoff) {
  const DensityMatrix rho = to_density_matrix(ps, cutoff);
  const double x = 2.0 * std::norm(gamma);
  const DensityMatrix flipped = dm_apply_parity(rho, 1);
  Mat m = std::exp(-x) * std::cosh(x) * rho.matrix() + std::exp(-x) * std::sinh(x) * flipped.matrix();
  return DensityMatrix(rho.modes(), std::move(m));
}

BackactionResult backaction_state(const ParamState& ps, Complex gamma, int cutoff) {
  // Fock-level contraction over the probe modes: for each (ket, bra) branch
  // pair, tracing probe mode 6 leaves (A0 B0^dagger) on signal mode 0.
  const auto branches = family_branches(ps);
  const int pc = default_cutoff(gamma);
  const int d = cutoff + 1;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int ket = 0; ket < 2; ++ket) {
    for (int bra = 0; bra < 2; ++bra) {
      const double w = branch_weight(ps, ket, bra);
      const Mat A0 = kerr_branch_matrix(branches[ket].x0, gamma, cutoff, pc);
      const Mat A1 = kerr_branch_matrix(branches[ket].x1, gamma, cutoff, pc);
      const Mat B0 = kerr_branch_matrix(branches[bra].x0, gamma, cutoff, pc);
      const Mat B1 = kerr_branch_matrix(branches[bra].x1, gamma, cutoff, pc);
      const Mat M0 = A0 * B0.adjoint();  // signal mode 0 after tracing probe 6
      const Mat M1 = A1 * B1.adjoint();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          out.block(i * d, j * d, d, d) += w * M0(i, j) * M1;
        }
      }
    }
  }
  DensityMatrix state(ModeSpec({cutoff, cutoff}), std::move(out));
  const QubitReading reading = qubit_reading(state, ps.base_alpha);
  BellMixture mix = bell_weights(reading);
  return BackactionResult{std::move(state), mix, reading.leakage};
}

double state_deviation(Complex gamma) {
  const double x = 2.0 * std::norm(gamma);
  const double c = std::exp(-x) * std::cosh(x);
  return (1.0 - c) * (1.0 - c);
}

double state_deviation_small_gamma(Complex gamma) {
  const double g = std::abs(gamma);
  return 4.0 * g * g * g * g;
}

Mat cat_qubit_isometry(Complex alpha, int cutoff) {
  const Vec plus = coherent_state(alpha, cutoff).amplitudes();
  const Vec minus = coherent_state(-alpha, cutoff).amplitudes();
  Vec even = 0.5 * (plus + minus);
  Vec odd = 0.5 * (plus - minus);
  even /= even.norm();
  odd /= odd.norm();
  Mat v(cutoff + 1, 2);
  const double s = 1.0 / std::sqrt(2.0);
  v.col(0) = s * (even + odd);   // |alpha>-like, exactly normalized
  v.col(1) = s * (even - odd);   // |-alpha>-like
  return v;
}

QubitReading qubit_reading(const DensityMatrix& two_mode, Complex alpha) {
  const ModeSpec& ms = two_mode.modes();
  if (ms.num_modes() != 2 || ms.cutoff(0) != ms.cutoff(1)) {
    throw std::invalid_argument("qubit_reading: need 2 modes with equal cutoffs");
  }
  const Mat v = cat_qubit_isometry(alpha, ms.cutoff(0));
  const int d = ms.dim(0);
  Mat w(static_cast<Eigen::Index>(d) * d, 4);
  for (int q0 = 0; q0 < 2; ++q0) {
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int n0 = 0; n0 < d; ++n0) {
        for (int n1 = 0; n1 < d; ++n1) {
          w(static_cast<Eigen::Index>(n0) * d + n1, q0 * 2 + q1) = v(n0, q0) * v(n1, q1);
        }
      }
    }
  }
  QubitReading out;
  out.rho = (w.adjoint() * two_mode.matrix() * w).eval();
  out.leakage = two_mode.trace() - out.rho.trace().real();
  return out;
}

BellMixture bell_weights(const QubitReading& reading) {
  return bell_weights_of_density(reading.rho);
}

double mutual_information_bits(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd rho_a = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd rho_b = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) {
          if (b == bp) rho_a(a, ap) += rho(a * 2 + b, ap * 2 + bp);
          if (a == ap) rho_b(b, bp) += rho(a * 2 + b, ap * 2 + bp);
        }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> s_ab(rho, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s_a(rho_a, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s_b(rho_b, Eigen::EigenvaluesOnly);
  return entropy_bits(s_a.eigenvalues()) + entropy_bits(s_b.eigenvalues()) -
         entropy_bits(s_ab.eigenvalues());
}

ComplementarityReport complementarity_demo(Complex alpha, int cutoff) {
  const ParamState pristine = ParamState::initial(alpha);
  const ParamState scattered{alpha, alpha, 0.0, alpha};

  auto dephase_half = [&](const DensityMatrix& rho) {
    const DensityMatrix flipped = dm_apply_parity(rho, 1);
    return DensityMatrix(rho.modes(), 0.5 * (rho.matrix() + flipped.matrix()));
  };

  const DensityMatrix none = to_density_matrix(pristine, cutoff);
  const DensityMatrix loss = to_density_matrix(scattered, cutoff);
  const DensityMatrix deph = dephase_half(none);
  const DensityMatrix both = dephase_half(loss);

  ComplementarityReport rep{};
  auto analyze = [&](const DensityMatrix& rho, double& mi, double& e) {
    QubitReading reading = qubit_reading(rho, alpha);
    rep.max_leakage = std::max(rep.max_leakage, reading.leakage);
    const double tr = reading.rho.trace().real();
    Eigen::Matrix4cd normalized = reading.rho / tr;
    mi = mutual_information_bits(normalized);
    BellMixture mix = bell_weights_of_density(normalized);
    // tiny numerical negatives are clipped before the entropy formula
    mix.psi_plus = std::max(0.0, mix.psi_plus);
    mix.psi_minus = std::max(0.0, mix.psi_minus);
    mix.phi_plus = std::max(0.0, mix.phi_plus);
    mix.phi_minus = std::max(0.0, mix.phi_minus);
    const double sum = mix.sum();
    mix.psi_plus /= sum;
    mix.psi_minus /= sum;
    mix.phi_plus /= sum;
    mix.phi_minus /= sum;
    e = entanglement_of_formation(mix);
  };
  analyze(none, rep.mi_none, rep.e_none);
  analyze(loss, rep.mi_loss_only, rep.e_loss_only);
  analyze(deph, rep.mi_dephasing_only, rep.e_dephasing_only);
  analyze(both, rep.mi_both, rep.e_both);
  return rep;
}

}  // namespace catlink
