#include "core/channels.hpp"

#include <bit>
#include <cmath>

namespace qecnm {

namespace {

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_data_capacity(const StabilizerCode& code) {
  if (code.n() > kMaxDenseDataQubits) {
    throw CapacityError("dense channel engine limited to " +
                        std::to_string(kMaxDenseDataQubits) +
                        " data qubits, code has " + std::to_string(code.n()));
  }
}

// S += weight * conj(a) (x) a, the superoperator of rho -> a rho a^dag.
void add_conjugation(Mat& s, const Mat& a, double weight) {
  const Eigen::Index out = a.rows(), in = a.cols();
  for (Eigen::Index r = 0; r < out; ++r) {
    for (Eigen::Index c = 0; c < in; ++c) {
      std::complex<double> f = weight * std::conj(a(r, c));
      if (f != 0.0) {
        s.block(r * out, c * in, out, in) += f * a;
      }
    }
  }
}

double int_pow(double base, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Channel::Channel(std::size_t in_dim, std::size_t out_dim, Mat matrix)
    : in_dim_(in_dim), out_dim_(out_dim), matrix_(std::move(matrix)) {
  if (!power_of_two(in_dim_) || !power_of_two(out_dim_)) {
    throw DimensionError("channel dimensions must be powers of two");
  }
  if (matrix_.rows() != static_cast<Eigen::Index>(out_dim_ * out_dim_) ||
      matrix_.cols() != static_cast<Eigen::Index>(in_dim_ * in_dim_)) {
    throw DimensionError("superoperator matrix shape does not match channel "
                         "dimensions");
  }
  if (!matrix_.allFinite()) {
    throw ValidationError("superoperator matrix has non-finite entries");
  }
}

Channel Channel::identity(std::size_t dim) {
  return Channel(dim, dim, Mat::Identity(dim * dim, dim * dim));
}

Channel Channel::conjugation(const Mat& a) {
  std::size_t out = static_cast<std::size_t>(a.rows());
  std::size_t in = static_cast<std::size_t>(a.cols());
  Mat s = Mat::Zero(out * out, in * in);
  add_conjugation(s, a, 1.0);
  return Channel(in, out, std::move(s));
}

Channel Channel::from_kraus(std::size_t in_dim, std::size_t out_dim,
                            const std::vector<Mat>& kraus) {
  Mat s = Mat::Zero(out_dim * out_dim, in_dim * in_dim);
  for (const Mat& k : kraus) {
    if (k.rows() != static_cast<Eigen::Index>(out_dim) ||
        k.cols() != static_cast<Eigen::Index>(in_dim)) {
      throw DimensionError("Kraus operator shape mismatch");
    }
    add_conjugation(s, k, 1.0);
  }
  return Channel(in_dim, out_dim, std::move(s));
}

Mat Channel::apply(const Mat& rho) const {
  if (rho.rows() != static_cast<Eigen::Index>(in_dim_) ||
      rho.cols() != static_cast<Eigen::Index>(in_dim_)) {
    throw DimensionError("operator dimension does not match channel input");
  }
  Eigen::VectorXcd v =
      matrix_ * Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
  return Eigen::Map<const Mat>(v.data(), out_dim_, out_dim_);
}

Mat Channel::apply_dual(const Mat& obs) const {
  if (obs.rows() != static_cast<Eigen::Index>(out_dim_) ||
      obs.cols() != static_cast<Eigen::Index>(out_dim_)) {
    throw DimensionError("observable dimension does not match channel output");
  }
  Eigen::VectorXcd v = matrix_.adjoint() *
                       Eigen::Map<const Eigen::VectorXcd>(obs.data(), obs.size());
  return Eigen::Map<const Mat>(v.data(), in_dim_, in_dim_);
}

Mat Channel::choi() const {
  const std::size_t di = in_dim_, dd = out_dim_;
  Mat c(di * dd, di * dd);
  for (std::size_t r = 0; r < di; ++r) {
    for (std::size_t cc = 0; cc < di; ++cc) {
      for (std::size_t rp = 0; rp < dd; ++rp) {
        for (std::size_t cp = 0; cp < dd; ++cp) {
          c(r * dd + rp, cc * dd + cp) = matrix_(rp + dd * cp, r + di * cc);
        }
      }
    }
  }
  return c;
}

double Channel::choi_min_eigenvalue() const {
  Mat c = choi();
  Mat h = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double Channel::trace_preservation_defect() const {
  Mat id = Mat::Identity(out_dim_, out_dim_);
  Mat dual = apply_dual(id);
  return max_abs_diff(dual, Mat::Identity(in_dim_, in_dim_));
}

bool Channel::is_cptp(double tp_tol, double cp_tol) const {
  return trace_preservation_defect() < tp_tol &&
         choi_min_eigenvalue() >= -cp_tol;
}

Channel compose(const Channel& after, const Channel& before) {
  if (before.out_dim_ != after.in_dim_) {
    throw DimensionError("channel composition dimension mismatch");
  }
  return Channel(before.in_dim_, after.out_dim_,
                 after.matrix_ * before.matrix_);
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Channel& a, const Channel& b) {
  if (a.in_dim_ != b.in_dim_ || a.out_dim_ != b.out_dim_) {
    throw DimensionError("channel dimension mismatch");
  }
  return max_abs_diff(a.matrix_, b.matrix_);
}

ConfusionMatrix::ConfusionMatrix(RealMat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DimensionError("confusion matrix must be square");
  }
  strictly_positive_ = true;
  for (Eigen::Index c = 0; c < m_.cols(); ++c) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < m_.rows(); ++r) {
      if (m_(r, c) < 0.0) {
        throw ValidationError("confusion matrix has a negative entry");
      }
      if (m_(r, c) <= 0.0) strictly_positive_ = false;
      sum += m_(r, c);
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ValidationError("confusion matrix column " + std::to_string(c) +
                            " sums to " + std::to_string(sum) +
                            ", expected 1");
    }
  }
}

ConfusionMatrix ConfusionMatrix::identity(std::size_t dim) {
  return ConfusionMatrix(RealMat::Identity(dim, dim));
}

ConfusionMatrix bitflip_confusion(const StabilizerCode& code, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("bitflip probability must lie in [0, 1]");
  }
  const int m = static_cast<int>(code.num_generators());
  const std::size_t dim = code.num_syndromes();
  RealMat chi(dim, dim);
  for (std::size_t t = 0; t < dim; ++t) {
    for (std::size_t r = 0; r < dim; ++r) {
      int h = std::popcount(r ^ t);
      chi(r, t) = int_pow(1.0 - p, m - h) * int_pow(p, h);
    }
  }
  return ConfusionMatrix(std::move(chi));
}

Mat encoding_isometry(const StabilizerCode& code) {
  check_data_capacity(code);
  const std::size_t dim = std::size_t{1} << code.n();
  const std::size_t ldim = std::size_t{1} << code.k();

  Mat p = syndrome_projector(code, Syndrome(0, code.num_generators()));
  for (const Pauli& z : code.logical_z()) {
    p = p * 0.5 * (Mat::Identity(dim, dim) + z.dense());
  }
  // p now projects onto the encoded all-zeros state; pull out the vector
  // and fix its global phase.
  Eigen::Index best = 0;
  p.colwise().norm().maxCoeff(&best);
  Eigen::VectorXcd v = p.col(best);
  double norm = v.norm();
  if (norm < 1e-8) {
    throw ValidationError("codespace has no joint +1 logical-Z eigenvector");
  }
  v /= norm;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }

  std::vector<Mat> xd;
  for (const Pauli& x : code.logical_x()) xd.push_back(x.dense());
  Mat e(dim, ldim);
  for (std::size_t l = 0; l < ldim; ++l) {
    Eigen::VectorXcd col = v;
    for (std::size_t i = 0; i < code.k(); ++i) {
      if ((l >> (code.k() - 1 - i)) & 1u) col = xd[i] * col;
    }
    e.col(l) = col;
  }
  return e;
}

Mat syndrome_projector(const StabilizerCode& code, const Syndrome& s) {
  check_data_capacity(code);
  if (s.length() != code.num_generators()) {
    throw DimensionError("syndrome length does not match the code");
  }
  const std::size_t dim = std::size_t{1} << code.n();
  Mat p = Mat::Identity(dim, dim);
  for (std::size_t j = 0; j < code.num_generators(); ++j) {
    double sign = s.bit(j) ? -1.0 : 1.0;
    p = p * 0.5 * (Mat::Identity(dim, dim) + sign * code.generators()[j].dense());
  }
  return p;
}

Channel recovery_map(const StabilizerCode& code) {
  check_data_capacity(code);
  const std::size_t dim = std::size_t{1} << code.n();
  Mat s = Mat::Zero(dim * dim, dim * dim);
  for (std::size_t idx = 0; idx < code.num_syndromes(); ++idx) {
    Syndrome syn(static_cast<std::uint32_t>(idx), code.num_generators());
    Mat a = code.correction(syn).dense() * syndrome_projector(code, syn);
    add_conjugation(s, a, 1.0);
  }
  return Channel(dim, dim, std::move(s));
}

Channel noisy_recovery_map(const StabilizerCode& code,
                           const ConfusionMatrix& chi) {
  check_data_capacity(code);
  if (chi.dim() != code.num_syndromes()) {
    throw DimensionError("confusion matrix dimension does not match the "
                         "code's syndrome count");
  }
  const std::size_t dim = std::size_t{1} << code.n();
  std::vector<Mat> proj, corr;
  for (std::size_t idx = 0; idx < code.num_syndromes(); ++idx) {
    Syndrome syn(static_cast<std::uint32_t>(idx), code.num_generators());
    proj.push_back(syndrome_projector(code, syn));
    corr.push_back(code.correction(syn).dense());
  }
  Mat s = Mat::Zero(dim * dim, dim * dim);
  for (std::size_t t = 0; t < code.num_syndromes(); ++t) {
    for (std::size_t r = 0; r < code.num_syndromes(); ++r) {
      double w = chi(r, t);
      if (w == 0.0) continue;
      Mat a = corr[r] * proj[t];
      add_conjugation(s, a, w);
    }
  }
  return Channel(dim, dim, std::move(s));
}

Channel encoding_operation(const StabilizerCode& code) {
  return Channel::conjugation(encoding_isometry(code));
}

Channel decoding_operation(const StabilizerCode& code) {
  Mat e = encoding_isometry(code);
  return compose(Channel::conjugation(e.adjoint()), recovery_map(code));
}

Channel gadget_retraction(const StabilizerCode& code, const Channel& lambda) {
  return gadget_retraction_chain(code, {&lambda});
}

Channel gadget_retraction_chain(const StabilizerCode& code,
                                const std::vector<const Channel*>& steps) {
  const std::size_t dim = std::size_t{1} << code.n();
  Channel acc = encoding_operation(code);
  for (const Channel* step : steps) {
    if (step->in_dim() != dim || step->out_dim() != dim) {
      throw DimensionError("retraction argument must act on the code's data "
                           "register");
    }
    acc = compose(*step, acc);
  }
  return compose(decoding_operation(code), acc);
}

Mat encoding_unitary(const StabilizerCode& code) {
  check_data_capacity(code);
  const std::size_t dim = std::size_t{1} << code.n();
  const std::size_t ldim = std::size_t{1} << code.k();
  Mat e = encoding_isometry(code);
  Mat u(dim, dim);
  for (std::size_t idx = 0; idx < code.num_syndromes(); ++idx) {
    Syndrome syn(static_cast<std::uint32_t>(idx), code.num_generators());
    Mat rdag = code.correction(syn).dense().adjoint();
    for (std::size_t l = 0; l < ldim; ++l) {
      u.col(idx * ldim + l) = rdag * e.col(l);
    }
  }
  return u;
}

Channel generalized_retraction(const StabilizerCode& code, const Mat& rho_syn,
                               const Channel& lambda) {
  check_data_capacity(code);
  const std::size_t sdim = code.num_syndromes();
  const std::size_t ldim = std::size_t{1} << code.k();
  const std::size_t dim = std::size_t{1} << code.n();
  if (rho_syn.rows() != static_cast<Eigen::Index>(sdim) ||
      rho_syn.cols() != static_cast<Eigen::Index>(sdim)) {
    throw DimensionError("syndrome state dimension must be 2^(n-k)");
  }
  if (std::abs(rho_syn.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho_syn.trace().imag()) > 1e-10) {
    throw DomainError("syndrome state must have unit trace");
  }
  Mat h = 0.5 * (rho_syn + rho_syn.adjoint());
  if (max_abs_diff(h, rho_syn) > 1e-10) {
    throw DomainError("syndrome state must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("syndrome state has a negative eigenvalue");
  }
  if (lambda.in_dim() != dim || lambda.out_dim() != dim) {
    throw DimensionError("retraction argument must act on the code's data "
                         "register");
  }

  Mat u = encoding_unitary(code);
  // Generalized encoding: X -> U (rho_syn (x) X) U^dag, columns assembled
  // per logical basis operator (the syndrome register is the leading
  // factor).
  Mat enc = Mat::Zero(dim * dim, ldim * ldim);
  for (std::size_t r = 0; r < ldim; ++r) {
    for (std::size_t c = 0; c < ldim; ++c) {
      Mat arg = Mat::Zero(dim, dim);
      for (std::size_t sr = 0; sr < sdim; ++sr) {
        for (std::size_t sc = 0; sc < sdim; ++sc) {
          arg(sr * ldim + r, sc * ldim + c) = rho_syn(sr, sc);
        }
      }
      Mat out = u * arg * u.adjoint();
      enc.col(r + ldim * c) =
          Eigen::Map<const Eigen::VectorXcd>(out.data(), out.size());
    }
  }
  Channel enc_chan(ldim, dim, std::move(enc));
  return compose(decoding_operation(code), compose(lambda, enc_chan));
}

Mat partial_trace_front(const Mat& rho, std::size_t dim_front) {
  const std::size_t total = static_cast<std::size_t>(rho.rows());
  if (rho.rows() != rho.cols() || dim_front == 0 || total % dim_front != 0) {
    throw DimensionError("partial trace dimensions are inconsistent");
  }
  const std::size_t rest = total / dim_front;
  Mat out = Mat::Zero(rest, rest);
  for (std::size_t s = 0; s < dim_front; ++s) {
    out += rho.block(s * rest, s * rest, rest, rest);
  }
  return out;
}

namespace {

std::size_t qubits_of_dim(std::size_t dim) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < dim) ++k;
  return k;
}

Pauli pauli_basis_element(std::size_t k, std::size_t index) {
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(k, 'I');
  for (std::size_t q = 0; q < k; ++q) {
    std::size_t digit = (index >> (2 * (k - 1 - q))) & 3u;
    s[q] = kLetters[digit];
  }
  return Pauli::parse(s);
}

}  // namespace

RealMat pauli_transfer(const Channel& chan) {
  if (chan.in_dim() != chan.out_dim()) {
    throw DimensionError("Pauli transfer matrix requires equal dimensions");
  }
  const std::size_t k = qubits_of_dim(chan.in_dim());
  const std::size_t nb = std::size_t{1} << (2 * k);
  const double dim = static_cast<double>(chan.in_dim());
  std::vector<Mat> basis;
  basis.reserve(nb);
  for (std::size_t a = 0; a < nb; ++a) {
    basis.push_back(pauli_basis_element(k, a).dense());
  }
  RealMat r(nb, nb);
  for (std::size_t b = 0; b < nb; ++b) {
    Mat out = chan.apply(basis[b]);
    for (std::size_t a = 0; a < nb; ++a) {
      r(a, b) = (basis[a] * out).trace().real() / dim;
    }
  }
  return r;
}

double pauli_offdiagonal(const Channel& chan) {
  if (chan.in_dim() != chan.out_dim()) {
    throw DimensionError("Pauli transfer matrix requires equal dimensions");
  }
  const std::size_t k = qubits_of_dim(chan.in_dim());
  const std::size_t nb = std::size_t{1} << (2 * k);
  const double dim = static_cast<double>(chan.in_dim());
  std::vector<Mat> basis;
  basis.reserve(nb);
  for (std::size_t a = 0; a < nb; ++a) {
    basis.push_back(pauli_basis_element(k, a).dense());
  }
  double worst = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    Mat out = chan.apply(basis[b]);
    for (std::size_t a = 0; a < nb; ++a) {
      std::complex<double> val = (basis[a] * out).trace() / dim;
      double dev = (a == b) ? std::abs(val.imag()) : std::abs(val);
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

std::vector<double> pauli_channel_probabilities(const Channel& chan,
                                                double tol) {
  if (pauli_offdiagonal(chan) > tol) {
    throw DomainError("channel is not Pauli (off-diagonal transfer entries)");
  }
  const std::size_t k = qubits_of_dim(chan.in_dim());
  const std::size_t nb = std::size_t{1} << (2 * k);
  RealMat r = pauli_transfer(chan);
  std::vector<Pauli> basis;
  for (std::size_t a = 0; a < nb; ++a) {
    basis.push_back(pauli_basis_element(k, a));
  }
  std::vector<double> probs(nb, 0.0);
  for (std::size_t c = 0; c < nb; ++c) {
    double acc = 0.0;
    for (std::size_t a = 0; a < nb; ++a) {
      double chi = commutes(basis[a], basis[c]) ? 1.0 : -1.0;
      acc += chi * r(a, a);
    }
    probs[c] = acc / static_cast<double>(nb);
  }
  return probs;
}

}  // namespace qecnm
