#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace catlink {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Norm / hermiticity tolerance (double-precision headroom over truncation).
inline constexpr double kTauNorm = 1e-9;
/// Truncation-leakage threshold: weight allowed on a mode's top Fock level.
inline constexpr double kTauLeak = 1e-6;
/// Default cap on the joint dimension of a multimode state.
inline constexpr std::size_t kMaxJointDimension = std::size_t{1} << 23;

/// Cutoff rule for a mode carrying a coherent amplitude: Poisson tail < 1e-10.
int default_cutoff(Complex alpha);
/// Modes that never hold more than one photon.
inline constexpr int kSinglePhotonCutoff = 2;

/// Per-mode Fock cutoffs of a joint truncated space. Mode i spans |0..cutoff_i>,
/// flat indices are row-major with the last mode fastest.
class ModeSpec {
 public:
  ModeSpec() = default;
  explicit ModeSpec(std::vector<int> cutoffs,
                    std::size_t max_dim = kMaxJointDimension);

  int num_modes() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_.at(mode); }
  int dim(int mode) const { return cutoffs_.at(mode) + 1; }
  std::size_t total_dim() const { return total_; }
  std::size_t stride(int mode) const { return strides_.at(mode); }

  /// Spec with one mode removed (indices above it shift down).
  ModeSpec without(int mode) const;
  /// Spec with the modes of `other` appended.
  ModeSpec append(const ModeSpec& other) const;

  std::size_t flat_index(std::span<const int> occupation) const;
  std::vector<int> occupation(std::size_t flat) const;

  bool operator==(const ModeSpec& o) const { return cutoffs_ == o.cutoffs_; }

 private:
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Dense complex amplitude tensor over a joint truncated Fock basis.
/// Amplitudes are kept unnormalized where truncation loses weight, so the
/// truncation deficit stays observable.
class PureState {
 public:
  explicit PureState(ModeSpec modes);
  PureState(ModeSpec modes, Vec amplitudes);

  static PureState vacuum(ModeSpec modes);

  const ModeSpec& modes() const { return modes_; }
  const Vec& amplitudes() const { return amp_; }
  Vec& amplitudes() { return amp_; }

  Complex amplitude(std::span<const int> occupation) const {
    return amp_[static_cast<Eigen::Index>(modes_.flat_index(occupation))];
  }

  double norm2() const { return amp_.squaredNorm(); }
  /// Rescales to unit norm; throws std::underflow_error on a zero branch.
  void normalize();

  /// ⟨this|other⟩.
  Complex overlap(const PureState& other) const;

  double expected_photon_number(int mode) const;
  /// Probability weight sitting on the top Fock level of a mode.
  double top_level_weight(int mode) const;
  double max_top_level_weight() const;
  bool under_truncated(double tau = kTauLeak) const {
    return max_top_level_weight() >= tau;
  }

 private:
  ModeSpec modes_;
  Vec amp_;
};

/// |alpha> as its truncated Poissonian series, not renormalized.
PureState coherent_state(Complex alpha, int cutoff);
PureState fock_state(int n, int cutoff);
PureState tensor(const PureState& a, const PureState& b);

/// Two-port coupler with complex transmittance T and reflectance R,
/// |T|^2+|R|^2 = 1. Photon number is conserved; output components beyond a
/// mode's cutoff are dropped (norm loss only from truncation).
PureState apply_beam_splitter(const PureState& s, int j, int k, Complex T,
                              Complex R);
/// The (dj*dk)x(dj*dk) Fock matrix of the coupler, pair index nj*dk+nk.
Mat beam_splitter_matrix(int dim_j, int dim_k, Complex T, Complex R);

/// Cross-Kerr coupler: each basis amplitude picks up (-1)^(nj*nk).
PureState apply_cross_kerr(const PureState& s, int j, int k);
/// Photon-number parity phase (-1)^n on one mode.
PureState apply_parity(const PureState& s, int mode);
/// Multiplies amplitudes by diag[n_mode].
PureState apply_one_mode_diagonal(const PureState& s, int mode,
                                  const Vec& diag);

struct Projection {
  PureState state;  // mode removed, unnormalized
  double weight;    // squared norm of the conditional branch
};
/// <n|_mode applied to the state; zero weight is a legal outcome.
Projection project_fock(const PureState& s, int mode, int n);
/// <bra|_mode contraction with an arbitrary single-mode bra vector.
PureState project_mode(const PureState& s, int mode, const Vec& bra);

/// Joint photon-number distribution over the listed modes (|amp|^2 marginal).
std::vector<double> marginal_distribution(const PureState& s,
                                          std::span<const int> modes);

/// Dense complex square matrix over a joint truncated Fock basis.
class DensityMatrix {
 public:
  explicit DensityMatrix(ModeSpec modes);
  DensityMatrix(ModeSpec modes, Mat m);

  const ModeSpec& modes() const { return modes_; }
  const Mat& matrix() const { return m_; }
  Mat& matrix() { return m_; }

  double trace() const { return m_.trace().real(); }
  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const;
  Eigen::VectorXd eigenvalues() const;

  double top_level_weight(int mode) const;
  double max_top_level_weight() const;

 private:
  ModeSpec modes_;
  Mat m_;
};

DensityMatrix outer(const PureState& psi);
DensityMatrix dm_tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Trace over the complement of `keep` (kept modes stay in the given order,
/// which must be ascending).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// rho -> Op rho Op^dagger with a dense single-mode operator.
DensityMatrix dm_apply_one_mode(const DensityMatrix& rho, int mode, const Mat& op);
/// rho -> D rho D^dagger with a diagonal single-mode operator.
DensityMatrix dm_apply_one_mode_diagonal(const DensityMatrix& rho, int mode,
                                         const Vec& diag);
/// rho -> U rho U^dagger with a dense two-mode operator (pair index nj*dk+nk).
DensityMatrix dm_apply_two_mode(const DensityMatrix& rho, int j, int k,
                                const Mat& op);
DensityMatrix dm_apply_parity(const DensityMatrix& rho, int mode);

/// Tr(rho * Op_mode), Op given as a single-mode matrix.
Complex expectation_one_mode(const DensityMatrix& rho, int mode, const Mat& op);

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);
double max_abs_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Single-mode annihilation operator on a truncated space.
Mat annihilation_matrix(int dim);
/// Diagonal of (-1)^n as a vector.
Vec parity_diagonal(int dim);

}  // namespace catlink
