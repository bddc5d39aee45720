#include "catlink/channel.hpp"

#include <cmath>

namespace catlink {

namespace {

double branch_overlap(const ParamState& ps) {
  // <-a0,a1|a0,-a1> = e^{-2(|a0|^2+|a1|^2)}, real and positive
  return std::exp(-2.0 * (std::norm(ps.alpha0) + std::norm(ps.alpha1)));
}

}  // namespace

void ChannelSpec::validate() const {
  if (!(T0 > 0.0 && T0 <= 1.0) || !(T1 > 0.0 && T1 <= 1.0)) {
    throw std::invalid_argument("ChannelSpec: transmittances must be in (0,1]");
  }
  if (!(L > 0.0)) throw std::invalid_argument("ChannelSpec: L must be positive");
  if (l < 0.0) throw std::invalid_argument("ChannelSpec: l must be nonnegative");
  if (n_steps < 1) throw std::invalid_argument("ChannelSpec: n_steps must be >= 1");
}

DensityMatrix to_density_matrix(const ParamState& ps, int cutoff) {
  if (std::abs(ps.r) > 1.0) throw std::invalid_argument("to_density_matrix: |r| > 1");
  const Vec u = tensor(coherent_state(ps.alpha0, cutoff), coherent_state(-ps.alpha1, cutoff)).amplitudes();
  const Vec v = tensor(coherent_state(-ps.alpha0, cutoff), coherent_state(ps.alpha1, cutoff)).amplitudes();
  const double norm = 2.0 * (1.0 + ps.r * branch_overlap(ps));
  Mat m = (u * u.adjoint() + v * v.adjoint() + ps.r * (u * v.adjoint() + v * u.adjoint())) / norm;
  return DensityMatrix(ModeSpec({cutoff, cutoff}), std::move(m));
}

DensityMatrix loss_step(const DensityMatrix& rho, int mode, double transmittance,
                        int env_cutoff) {
  if (!(transmittance > 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("loss_step: transmittance must be in (0,1]");
  }
  const ModeSpec& ms = rho.modes();
  const int d = ms.dim(mode);
  const int kmax = env_cutoff < 0 ? d - 1 : std::min(env_cutoff, d - 1);
  const double t = transmittance;
  const double refl2 = std::max(0.0, 1.0 - t * t);

  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(d);
  const std::size_t dim = ms.total_dim();

  // Environment component k of the coupler unitary acting on |n>|0>:
  // A_k[p, p+k] = sqrt(C(p+k, k)) t^p (sqrt(1-t^2))^k.
  Mat out = Mat::Zero(rho.matrix().rows(), rho.matrix().cols());
  std::vector<double> tpow(dm);
  for (int p = 0; p < d; ++p) tpow[p] = std::pow(t, p);

  for (int k = 0; k <= kmax; ++k) {
    std::vector<double> f(dm, 0.0);
    for (int p = 0; p + k < d; ++p) {
      double binom = 1.0;
      for (int i = 1; i <= k; ++i) binom *= static_cast<double>(p + i) / static_cast<double>(i);
      f[p] = std::sqrt(binom) * tpow[p] * std::pow(refl2, 0.5 * k);
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t p = (i / sm) % dm;
      if (p + static_cast<std::size_t>(k) >= dm || f[p] == 0.0) continue;
      const std::size_t ik = i + static_cast<std::size_t>(k) * sm;
      for (std::size_t jcol = 0; jcol < dim; ++jcol) {
        const std::size_t q = (jcol / sm) % dm;
        if (q + static_cast<std::size_t>(k) >= dm || f[q] == 0.0) continue;
        const std::size_t jk = jcol + static_cast<std::size_t>(k) * sm;
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jcol)) +=
            f[p] * f[q] * rho.matrix()(static_cast<Eigen::Index>(ik), static_cast<Eigen::Index>(jk));
      }
    }
  }
  return DensityMatrix(ms, std::move(out));
}

DensityMatrix propagate_discrete(const DensityMatrix& rho, const ChannelSpec& spec) {
  spec.validate();
  if (rho.modes().num_modes() != 2) throw std::invalid_argument("propagate_discrete: need 2 modes");
  const double exponent = spec.l / (spec.L * spec.n_steps);
  const double t0 = std::pow(spec.T0, exponent);
  const double t1 = std::pow(spec.T1, exponent);
  DensityMatrix out = rho;
  for (int step = 0; step < spec.n_steps; ++step) {
    out = loss_step(out, 0, t0);
    out = loss_step(out, 1, t1);
  }
  return out;
}

ParamState propagate_analytic(const ParamState& ps, const ChannelSpec& spec) {
  spec.validate();
  const double s0 = std::pow(spec.T0, spec.l / spec.L);
  const double s1 = std::pow(spec.T1, spec.l / spec.L);
  ParamState out = ps;
  out.alpha0 = s0 * ps.alpha0;
  out.alpha1 = s1 * ps.alpha1;
  const double before = std::norm(ps.alpha0) + std::norm(ps.alpha1);
  const double after = std::norm(out.alpha0) + std::norm(out.alpha1);
  out.r = ps.r * std::exp(-2.0 * (before - after));
  return out;
}

ParamState propagate_small_l(const ParamState& ps, const ChannelSpec& spec) {
  spec.validate();
  ParamState out = ps;
  const double a2 = std::norm(ps.base_alpha);
  out.r = ps.r * std::exp(4.0 * a2 * (std::log(spec.T0) + std::log(spec.T1)) * spec.l / spec.L);
  return out;
}

FitResult fit_param_state(const DensityMatrix& rho, Complex base_alpha,
                          double family_threshold) {
  const ModeSpec& ms = rho.modes();
  if (ms.num_modes() != 2 || ms.cutoff(0) != ms.cutoff(1)) {
    throw std::invalid_argument("fit_param_state: need 2 modes with equal cutoffs");
  }

  const Mat a0op = annihilation_matrix(ms.dim(0));
  const Mat a1op = annihilation_matrix(ms.dim(1));
  const Complex a0sq = expectation_one_mode(rho, 0, Mat(a0op * a0op));
  const Complex a1sq = expectation_one_mode(rho, 1, Mat(a1op * a1op));

  // <a_0 a_1>, needed to pin the relative branch sign
  Complex a0a1{0.0, 0.0};
  {
    const std::size_t d0 = static_cast<std::size_t>(ms.dim(0));
    const std::size_t d1 = static_cast<std::size_t>(ms.dim(1));
    for (std::size_t n0 = 1; n0 < d0; ++n0) {
      for (std::size_t n1 = 1; n1 < d1; ++n1) {
        const std::size_t row = n0 * d1 + n1;
        const std::size_t col = (n0 - 1) * d1 + (n1 - 1);
        a0a1 += rho.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
                std::sqrt(static_cast<double>(n0) * static_cast<double>(n1));
      }
    }
  }

  ParamState fit;
  fit.base_alpha = base_alpha;
  Complex alpha0 = std::sqrt(a0sq);
  // align with the prepared amplitude; an overall branch swap is a symmetry
  if (base_alpha != Complex{0.0, 0.0} &&
      std::real(alpha0 * std::conj(base_alpha)) < 0.0) {
    alpha0 = -alpha0;
  }
  Complex alpha1;
  if (std::abs(alpha0) > 1e-8) {
    alpha1 = -a0a1 / alpha0;
  } else {
    alpha1 = std::sqrt(a1sq);
    if (base_alpha != Complex{0.0, 0.0} &&
        std::real(alpha1 * std::conj(base_alpha)) < 0.0) {
      alpha1 = -alpha1;
    }
  }
  fit.alpha0 = alpha0;
  fit.alpha1 = alpha1;

  // coherence <a0,-a1| rho |-a0,a1> inverts to r
  const Vec u = tensor(coherent_state(fit.alpha0, ms.cutoff(0)),
                       coherent_state(-fit.alpha1, ms.cutoff(1))).amplitudes();
  const Vec v = tensor(coherent_state(-fit.alpha0, ms.cutoff(0)),
                       coherent_state(fit.alpha1, ms.cutoff(1))).amplitudes();
  const Complex c = (u.adjoint() * rho.matrix() * v)(0, 0);
  const double s = std::exp(-2.0 * (std::norm(fit.alpha0) + std::norm(fit.alpha1)));
  const double denom = 1.0 + s * s - 2.0 * std::real(c) * s;
  double r;
  if (std::abs(denom) < 1e-14) {
    r = 1.0;  // degenerate at alpha ~ 0: every family member is the same state
  } else {
    r = 2.0 * (std::real(c) - s) / denom;
  }
  fit.r = std::min(1.0, std::max(-1.0, r));

  const DensityMatrix refit = to_density_matrix(fit, ms.cutoff(0));
  const double residual = frobenius_distance(rho, refit);
  return FitResult{fit, residual, residual < family_threshold};
}

}  // namespace catlink
