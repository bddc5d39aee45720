#include "catlink/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace catlink {

namespace {

// z^n with z^0 == 1 exactly, also for z == 0.
Complex ipow(Complex z, int n) {
  Complex acc{1.0, 0.0};
  for (int i = 0; i < n; ++i) acc *= z;
  return acc;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

}  // namespace

int default_cutoff(Complex alpha) {
  const double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 5.0 * a + 10.0));
}

ModeSpec::ModeSpec(std::vector<int> cutoffs, std::size_t max_dim)
    : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw std::invalid_argument("ModeSpec: no modes");
  for (int c : cutoffs_) {
    if (c < 1) throw std::invalid_argument("ModeSpec: cutoff must be >= 1");
  }
  total_ = 1;
  for (int c : cutoffs_) {
    const std::size_t d = static_cast<std::size_t>(c) + 1;
    if (total_ > max_dim / d) {
      throw std::length_error("ModeSpec: joint dimension exceeds memory budget");
    }
    total_ *= d;
  }
  strides_.assign(cutoffs_.size(), 1);
  for (int i = num_modes() - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(cutoffs_[i + 1] + 1);
  }
}

ModeSpec ModeSpec::without(int mode) const {
  std::vector<int> c = cutoffs_;
  c.erase(c.begin() + mode);
  return ModeSpec(std::move(c));
}

ModeSpec ModeSpec::append(const ModeSpec& other) const {
  std::vector<int> c = cutoffs_;
  c.insert(c.end(), other.cutoffs_.begin(), other.cutoffs_.end());
  return ModeSpec(std::move(c));
}

std::size_t ModeSpec::flat_index(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != num_modes()) {
    throw std::invalid_argument("flat_index: wrong number of modes");
  }
  std::size_t idx = 0;
  for (int i = 0; i < num_modes(); ++i) {
    if (occupation[i] < 0 || occupation[i] > cutoffs_[i]) {
      throw std::out_of_range("flat_index: occupation out of range");
    }
    idx += static_cast<std::size_t>(occupation[i]) * strides_[i];
  }
  return idx;
}

std::vector<int> ModeSpec::occupation(std::size_t flat) const {
  std::vector<int> occ(cutoffs_.size());
  for (int i = 0; i < num_modes(); ++i) {
    occ[i] = static_cast<int>((flat / strides_[i]) % (static_cast<std::size_t>(cutoffs_[i]) + 1));
  }
  return occ;
}

PureState::PureState(ModeSpec modes)
    : modes_(std::move(modes)), amp_(Vec::Zero(static_cast<Eigen::Index>(modes_.total_dim()))) {}

PureState::PureState(ModeSpec modes, Vec amplitudes)
    : modes_(std::move(modes)), amp_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amp_.size()) != modes_.total_dim()) {
    throw std::invalid_argument("PureState: amplitude size mismatch");
  }
}

PureState PureState::vacuum(ModeSpec modes) {
  PureState s(std::move(modes));
  s.amp_[0] = 1.0;
  return s;
}

void PureState::normalize() {
  const double n2 = norm2();
  if (n2 < 1e-300) throw std::underflow_error("normalize: zero-norm branch");
  amp_ /= std::sqrt(n2);
}

Complex PureState::overlap(const PureState& other) const {
  if (!(modes_ == other.modes_)) throw std::invalid_argument("overlap: mode mismatch");
  return amp_.dot(other.amp_);  // Eigen dot conjugates the left argument
}

double PureState::expected_photon_number(int mode) const {
  const std::size_t dim = modes_.total_dim();
  const std::size_t stride = modes_.stride(mode);
  const std::size_t d = static_cast<std::size_t>(modes_.dim(mode));
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t n = (i / stride) % d;
    acc += static_cast<double>(n) * std::norm(amp_[static_cast<Eigen::Index>(i)]);
  }
  return acc;
}

double PureState::top_level_weight(int mode) const {
  const std::size_t dim = modes_.total_dim();
  const std::size_t stride = modes_.stride(mode);
  const std::size_t d = static_cast<std::size_t>(modes_.dim(mode));
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i / stride) % d == d - 1) acc += std::norm(amp_[static_cast<Eigen::Index>(i)]);
  }
  return acc;
}

double PureState::max_top_level_weight() const {
  double m = 0.0;
  for (int j = 0; j < modes_.num_modes(); ++j) m = std::max(m, top_level_weight(j));
  return m;
}

PureState coherent_state(Complex alpha, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coherent_state: cutoff must be >= 1");
  PureState s{ModeSpec({cutoff})};
  Complex c = std::exp(-0.5 * std::norm(alpha));
  s.amplitudes()[0] = c;
  for (int n = 1; n <= cutoff; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    s.amplitudes()[n] = c;
  }
  return s;
}

PureState fock_state(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw std::invalid_argument("fock_state: n out of range");
  PureState s{ModeSpec({cutoff})};
  s.amplitudes()[n] = 1.0;
  return s;
}

PureState tensor(const PureState& a, const PureState& b) {
  PureState out(a.modes().append(b.modes()));
  const Eigen::Index nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.amplitudes().segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  }
  return out;
}

Mat beam_splitter_matrix(int dim_j, int dim_k, Complex T, Complex R) {
  const int dj = dim_j, dk = dim_k;
  Mat B = Mat::Zero(dj * dk, dj * dk);
  for (int m = 0; m < dj; ++m) {
    for (int n = 0; n < dk; ++n) {
      const int N = m + n;
      const int p_lo = std::max(0, N - (dk - 1));
      const int p_hi = std::min(dj - 1, N);
      for (int p = p_lo; p <= p_hi; ++p) {
        const int q = N - p;
        Complex sum{0.0, 0.0};
        const int i_lo = std::max(0, p - n);
        const int i_hi = std::min(m, p);
        for (int i = i_lo; i <= i_hi; ++i) {
          sum += binomial(m, i) * binomial(n, p - i) * ipow(T, i) *
                 ipow(-std::conj(R), m - i) * ipow(R, p - i) *
                 ipow(std::conj(T), n - p + i);
        }
        const double scale = std::exp(0.5 * (log_factorial(p) + log_factorial(q) -
                                             log_factorial(m) - log_factorial(n)));
        B(p * dk + q, m * dk + n) = scale * sum;
      }
    }
  }
  return B;
}

PureState apply_beam_splitter(const PureState& s, int j, int k, Complex T, Complex R) {
  if (j == k) throw std::invalid_argument("apply_beam_splitter: j == k");
  if (std::abs(std::norm(T) + std::norm(R) - 1.0) > kTauNorm) {
    throw std::invalid_argument("apply_beam_splitter: |T|^2+|R|^2 != 1");
  }
  const ModeSpec& ms = s.modes();
  const int dj = ms.dim(j), dk = ms.dim(k);
  const std::size_t sj = ms.stride(j), sk = ms.stride(k);
  const Mat B = beam_splitter_matrix(dj, dk, T, R);

  PureState out(ms);
  const std::size_t dim = ms.total_dim();
  for (std::size_t i = 0; i < dim; ++i) {
    const Complex a = s.amplitudes()[static_cast<Eigen::Index>(i)];
    if (a == Complex{0.0, 0.0}) continue;
    const int nj = static_cast<int>((i / sj) % static_cast<std::size_t>(dj));
    const int nk = static_cast<int>((i / sk) % static_cast<std::size_t>(dk));
    const std::size_t base = i - static_cast<std::size_t>(nj) * sj - static_cast<std::size_t>(nk) * sk;
    const int N = nj + nk;
    const int col = nj * dk + nk;
    const int p_lo = std::max(0, N - (dk - 1));
    const int p_hi = std::min(dj - 1, N);
    for (int p = p_lo; p <= p_hi; ++p) {
      const int q = N - p;
      const Complex c = B(p * dk + q, col);
      if (c == Complex{0.0, 0.0}) continue;
      const std::size_t o = base + static_cast<std::size_t>(p) * sj + static_cast<std::size_t>(q) * sk;
      out.amplitudes()[static_cast<Eigen::Index>(o)] += c * a;
    }
  }
  return out;
}

PureState apply_cross_kerr(const PureState& s, int j, int k) {
  if (j == k) throw std::invalid_argument("apply_cross_kerr: j == k");
  const ModeSpec& ms = s.modes();
  const std::size_t sj = ms.stride(j), sk = ms.stride(k);
  const std::size_t dj = static_cast<std::size_t>(ms.dim(j));
  const std::size_t dk = static_cast<std::size_t>(ms.dim(k));
  PureState out = s;
  const std::size_t dim = ms.total_dim();
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t nj = (i / sj) % dj;
    const std::size_t nk = (i / sk) % dk;
    if ((nj & 1) && (nk & 1)) out.amplitudes()[static_cast<Eigen::Index>(i)] = -out.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  return out;
}

PureState apply_parity(const PureState& s, int mode) {
  const ModeSpec& ms = s.modes();
  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(ms.dim(mode));
  PureState out = s;
  for (std::size_t i = 0; i < ms.total_dim(); ++i) {
    if (((i / sm) % dm) & 1) out.amplitudes()[static_cast<Eigen::Index>(i)] = -out.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  return out;
}

PureState apply_one_mode_diagonal(const PureState& s, int mode, const Vec& diag) {
  const ModeSpec& ms = s.modes();
  if (diag.size() != ms.dim(mode)) throw std::invalid_argument("apply_one_mode_diagonal: size mismatch");
  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(ms.dim(mode));
  PureState out = s;
  for (std::size_t i = 0; i < ms.total_dim(); ++i) {
    out.amplitudes()[static_cast<Eigen::Index>(i)] *= diag[static_cast<Eigen::Index>((i / sm) % dm)];
  }
  return out;
}

Projection project_fock(const PureState& s, int mode, int n) {
  const ModeSpec& ms = s.modes();
  if (n < 0 || n > ms.cutoff(mode)) throw std::invalid_argument("project_fock: n out of range");
  Vec bra = Vec::Zero(ms.dim(mode));
  bra[n] = 1.0;
  PureState reduced = project_mode(s, mode, bra);
  const double w = reduced.norm2();
  return Projection{std::move(reduced), w};
}

PureState project_mode(const PureState& s, int mode, const Vec& bra) {
  const ModeSpec& ms = s.modes();
  if (bra.size() != ms.dim(mode)) throw std::invalid_argument("project_mode: bra size mismatch");
  const ModeSpec reduced_spec = ms.num_modes() > 1 ? ms.without(mode) : ModeSpec({1});
  if (ms.num_modes() == 1) {
    // scalar branch kept as a 1-mode vacuum-marker state
    PureState out(reduced_spec);
    Complex acc{0.0, 0.0};
    for (int n = 0; n < ms.dim(0); ++n) acc += std::conj(bra[n]) * s.amplitudes()[n];
    out.amplitudes()[0] = acc;
    return out;
  }
  PureState out(reduced_spec);
  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(ms.dim(mode));
  const std::size_t block = sm;            // inner stride below the removed mode
  const std::size_t outer = ms.total_dim() / (sm * dm);
  for (std::size_t u = 0; u < outer; ++u) {
    for (std::size_t n = 0; n < dm; ++n) {
      const Complex w = std::conj(bra[static_cast<Eigen::Index>(n)]);
      if (w == Complex{0.0, 0.0}) continue;
      const std::size_t src = u * sm * dm + n * sm;
      const std::size_t dst = u * block;
      for (std::size_t v = 0; v < block; ++v) {
        out.amplitudes()[static_cast<Eigen::Index>(dst + v)] +=
            w * s.amplitudes()[static_cast<Eigen::Index>(src + v)];
      }
    }
  }
  return out;
}

std::vector<double> marginal_distribution(const PureState& s, std::span<const int> modes) {
  const ModeSpec& ms = s.modes();
  std::size_t out_dim = 1;
  for (int m : modes) out_dim *= static_cast<std::size_t>(ms.dim(m));
  std::vector<double> probs(out_dim, 0.0);
  const std::size_t dim = ms.total_dim();
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t key = 0;
    for (int m : modes) {
      key = key * static_cast<std::size_t>(ms.dim(m)) +
            (i / ms.stride(m)) % static_cast<std::size_t>(ms.dim(m));
    }
    probs[key] += std::norm(s.amplitudes()[static_cast<Eigen::Index>(i)]);
  }
  return probs;
}

DensityMatrix::DensityMatrix(ModeSpec modes)
    : modes_(std::move(modes)),
      m_(Mat::Zero(static_cast<Eigen::Index>(modes_.total_dim()),
                   static_cast<Eigen::Index>(modes_.total_dim()))) {}

DensityMatrix::DensityMatrix(ModeSpec modes, Mat m) : modes_(std::move(modes)), m_(std::move(m)) {
  if (static_cast<std::size_t>(m_.rows()) != modes_.total_dim() || m_.rows() != m_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix size mismatch");
  }
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Mat h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityMatrix::top_level_weight(int mode) const {
  const std::size_t dim = modes_.total_dim();
  const std::size_t stride = modes_.stride(mode);
  const std::size_t d = static_cast<std::size_t>(modes_.dim(mode));
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i / stride) % d == d - 1) acc += m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return acc;
}

double DensityMatrix::max_top_level_weight() const {
  double m = 0.0;
  for (int j = 0; j < modes_.num_modes(); ++j) m = std::max(m, top_level_weight(j));
  return m;
}

DensityMatrix outer(const PureState& psi) {
  return DensityMatrix(psi.modes(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix dm_tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const ModeSpec spec = a.modes().append(b.modes());
  const Eigen::Index da = a.matrix().rows(), db = b.matrix().rows();
  Mat out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return DensityMatrix(spec, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const ModeSpec& ms = rho.modes();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep is empty");
  for (std::size_t i = 1; i < keep.size(); ++i) {
    if (keep[i] <= keep[i - 1]) throw std::invalid_argument("partial_trace: keep must be ascending");
  }
  std::vector<int> kept_cutoffs;
  std::vector<bool> is_kept(ms.num_modes(), false);
  for (int m : keep) {
    kept_cutoffs.push_back(ms.cutoff(m));
    is_kept.at(m) = true;
  }
  ModeSpec out_spec(kept_cutoffs);

  // offset tables: flat index = keep_offset[ki] + rest_offset[ri]
  std::vector<std::size_t> keep_offsets(out_spec.total_dim(), 0);
  for (std::size_t ki = 0; ki < out_spec.total_dim(); ++ki) {
    const std::vector<int> occ = out_spec.occupation(ki);
    std::size_t off = 0;
    for (std::size_t a = 0; a < keep.size(); ++a) off += static_cast<std::size_t>(occ[a]) * ms.stride(keep[a]);
    keep_offsets[ki] = off;
  }
  std::vector<int> rest_modes;
  for (int m = 0; m < ms.num_modes(); ++m) {
    if (!is_kept[m]) rest_modes.push_back(m);
  }
  std::size_t rest_dim = 1;
  for (int m : rest_modes) rest_dim *= static_cast<std::size_t>(ms.dim(m));
  std::vector<std::size_t> rest_offsets(rest_dim, 0);
  for (std::size_t ri = 0; ri < rest_dim; ++ri) {
    std::size_t tmp = ri, off = 0;
    for (auto it = rest_modes.rbegin(); it != rest_modes.rend(); ++it) {
      const std::size_t d = static_cast<std::size_t>(ms.dim(*it));
      off += (tmp % d) * ms.stride(*it);
      tmp /= d;
    }
    rest_offsets[ri] = off;
  }

  DensityMatrix out(out_spec);
  for (std::size_t ki = 0; ki < out_spec.total_dim(); ++ki) {
    for (std::size_t kj = 0; kj < out_spec.total_dim(); ++kj) {
      Complex acc{0.0, 0.0};
      for (std::size_t ri = 0; ri < rest_dim; ++ri) {
        acc += rho.matrix()(static_cast<Eigen::Index>(keep_offsets[ki] + rest_offsets[ri]),
                            static_cast<Eigen::Index>(keep_offsets[kj] + rest_offsets[ri]));
      }
      out.matrix()(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kj)) = acc;
    }
  }
  return out;
}

namespace {

// Applies a dense single-mode operator from the left: out = (Op on mode) * M.
Mat left_apply_one_mode(const ModeSpec& ms, int mode, const Mat& op, const Mat& m) {
  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(ms.dim(mode));
  const std::size_t dim = ms.total_dim();
  Mat out = Mat::Zero(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t n = (i / sm) % dm;
    const std::size_t base = i - n * sm;
    for (std::size_t np = 0; np < dm; ++np) {
      const Complex c = op(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(n));
      if (c == Complex{0.0, 0.0}) continue;
      out.row(static_cast<Eigen::Index>(base + np * sm)) += c * m.row(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

}  // namespace

DensityMatrix dm_apply_one_mode(const DensityMatrix& rho, int mode, const Mat& op) {
  if (op.rows() != rho.modes().dim(mode) || op.cols() != rho.modes().dim(mode)) {
    throw std::invalid_argument("dm_apply_one_mode: op size mismatch");
  }
  Mat tmp = left_apply_one_mode(rho.modes(), mode, op, rho.matrix());
  Mat out = left_apply_one_mode(rho.modes(), mode, op.conjugate(), tmp.transpose()).transpose();
  return DensityMatrix(rho.modes(), std::move(out));
}

DensityMatrix dm_apply_one_mode_diagonal(const DensityMatrix& rho, int mode, const Vec& diag) {
  const ModeSpec& ms = rho.modes();
  if (diag.size() != ms.dim(mode)) throw std::invalid_argument("dm_apply_one_mode_diagonal: size mismatch");
  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(ms.dim(mode));
  const std::size_t dim = ms.total_dim();
  Vec full(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) full[static_cast<Eigen::Index>(i)] = diag[static_cast<Eigen::Index>((i / sm) % dm)];
  Mat out = full.asDiagonal() * rho.matrix() * full.conjugate().asDiagonal();
  return DensityMatrix(ms, std::move(out));
}

DensityMatrix dm_apply_two_mode(const DensityMatrix& rho, int j, int k, const Mat& op) {
  const ModeSpec& ms = rho.modes();
  const std::size_t dj = static_cast<std::size_t>(ms.dim(j));
  const std::size_t dk = static_cast<std::size_t>(ms.dim(k));
  if (static_cast<std::size_t>(op.rows()) != dj * dk || op.rows() != op.cols()) {
    throw std::invalid_argument("dm_apply_two_mode: op size mismatch");
  }
  const std::size_t sj = ms.stride(j), sk = ms.stride(k);
  const std::size_t dim = ms.total_dim();

  auto left_apply = [&](const Mat& o, const Mat& m) {
    Mat out = Mat::Zero(m.rows(), m.cols());
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t nj = (i / sj) % dj;
      const std::size_t nk = (i / sk) % dk;
      const std::size_t base = i - nj * sj - nk * sk;
      const Eigen::Index col = static_cast<Eigen::Index>(nj * dk + nk);
      for (std::size_t pj = 0; pj < dj; ++pj) {
        for (std::size_t pk = 0; pk < dk; ++pk) {
          const Complex c = o(static_cast<Eigen::Index>(pj * dk + pk), col);
          if (c == Complex{0.0, 0.0}) continue;
          out.row(static_cast<Eigen::Index>(base + pj * sj + pk * sk)) += c * m.row(static_cast<Eigen::Index>(i));
        }
      }
    }
    return out;
  };

  Mat tmp = left_apply(op, rho.matrix());
  Mat out = left_apply(op.conjugate(), tmp.transpose()).transpose();
  return DensityMatrix(ms, std::move(out));
}

DensityMatrix dm_apply_parity(const DensityMatrix& rho, int mode) {
  return dm_apply_one_mode_diagonal(rho, mode, parity_diagonal(rho.modes().dim(mode)));
}

Complex expectation_one_mode(const DensityMatrix& rho, int mode, const Mat& op) {
  const ModeSpec& ms = rho.modes();
  if (op.rows() != ms.dim(mode) || op.cols() != ms.dim(mode)) {
    throw std::invalid_argument("expectation_one_mode: op size mismatch");
  }
  const std::size_t sm = ms.stride(mode);
  const std::size_t dm = static_cast<std::size_t>(ms.dim(mode));
  const std::size_t dim = ms.total_dim();
  Complex acc{0.0, 0.0};
  // Tr(rho Op) = sum_{i, n'} rho(i, i') Op(n_i', n_i) over the mode digit
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t n = (i / sm) % dm;
    const std::size_t base = i - n * sm;
    for (std::size_t np = 0; np < dm; ++np) {
      const Complex c = op(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(n));
      if (c == Complex{0.0, 0.0}) continue;
      acc += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(base + np * sm)) * c;
    }
  }
  return acc;
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).norm();
}

double max_abs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Mat annihilation_matrix(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Vec parity_diagonal(int dim) {
  Vec d(dim);
  for (int n = 0; n < dim; ++n) d[n] = (n & 1) ? -1.0 : 1.0;
  return d;
}

}  // namespace catlink
