#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "core/code.hpp"

namespace qecnm {

using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;

/// Largest register the dense engine will allocate superoperators for.
constexpr std::size_t kMaxDenseDataQubits = 6;

/// A linear map on operators, stored as the dense matrix acting on
/// column-stacked operators: vec(out) = matrix * vec(in), with vec stacking
/// columns (index row + dim*col). Channels compose by plain matrix product.
/// Immutable after construction.
class Channel {
 public:
  Channel(std::size_t in_dim, std::size_t out_dim, Mat matrix);

  static Channel identity(std::size_t dim);
  /// rho -> a rho a^dag for a possibly rectangular a.
  static Channel conjugation(const Mat& a);
  static Channel from_kraus(std::size_t in_dim, std::size_t out_dim,
                            const std::vector<Mat>& kraus);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const Mat& matrix() const { return matrix_; }

  Mat apply(const Mat& rho) const;
  /// Heisenberg-picture action on observables: the adjoint map.
  Mat apply_dual(const Mat& obs) const;

  /// Choi matrix C = sum_{rc} |r><c| (x) Lambda(|r><c|), unnormalized.
  Mat choi() const;
  double choi_min_eigenvalue() const;
  /// Max-abs deviation of the dual of the identity from the identity.
  double trace_preservation_defect() const;
  bool is_cptp(double tp_tol = 1e-10, double cp_tol = 1e-10) const;

  friend Channel compose(const Channel& after, const Channel& before);
  friend double max_abs_diff(const Channel& a, const Channel& b);

 private:
  std::size_t in_dim_, out_dim_;
  Mat matrix_;
};

/// after . before (apply `before` first).
Channel compose(const Channel& after, const Channel& before);
double max_abs_diff(const Channel& a, const Channel& b);
double max_abs_diff(const Mat& a, const Mat& b);

/// Column-stochastic confusion matrix over syndrome strings: entry
/// (measured, true) = Pr(measured | true).
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(RealMat m);
  static ConfusionMatrix identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const RealMat& matrix() const { return m_; }
  double operator()(std::size_t measured, std::size_t truth) const {
    return m_(static_cast<Eigen::Index>(measured),
              static_cast<Eigen::Index>(truth));
  }
  /// True when every entry is > 0 (the hypothesis of the two-round
  /// composability violation).
  bool strictly_positive() const { return strictly_positive_; }

 private:
  RealMat m_;
  bool strictly_positive_;
};

/// Syndrome-readout confusion for independent ancilla bitflips with
/// probability p: entry (measured, true) = (1-p)^(m-h) p^h with h the
/// Hamming distance between the two syndromes.
ConfusionMatrix bitflip_confusion(const StabilizerCode& code, double p);

/// Encoding isometry E (2^n x 2^k). Column j is the encoded computational
/// state: logical |0...0> is the +1 eigenvector of every logical Z inside
/// the codespace (phase fixed by making its first nonzero amplitude real
/// positive), and the other columns are generated by the logical X
/// representatives. E^dag E = I and E E^dag is the codespace projector.
Mat encoding_isometry(const StabilizerCode& code);

/// Projector onto the syndrome-s subspace: prod_j (I + (-1)^{s_j} g_j) / 2.
Mat syndrome_projector(const StabilizerCode& code, const Syndrome& s);

/// Ideal recovery: rho -> sum_s R(s) Pi_s rho Pi_s R(s).
Channel recovery_map(const StabilizerCode& code);

/// Noisy recovery: rho -> sum_{s,s'} chi(s',s) R(s') Pi_s rho Pi_s R(s').
Channel noisy_recovery_map(const StabilizerCode& code,
                           const ConfusionMatrix& chi);

/// rho -> E rho E^dag (k-qubit operators to n-qubit operators).
Channel encoding_operation(const StabilizerCode& code);

/// Decoding: unencode after ideal recovery, rho -> E^dag R(rho) E.
Channel decoding_operation(const StabilizerCode& code);

/// Effective logical process of an n-qubit map: decode . lambda . encode.
Channel gadget_retraction(const StabilizerCode& code, const Channel& lambda);

/// Retraction of a composition chain without materializing the n-qubit
/// product: steps are applied first-to-last.
Channel gadget_retraction_chain(const StabilizerCode& code,
                                const std::vector<const Channel*>& steps);

/// Encoding unitary U_E on (syndrome register (x) logical register), the
/// syndrome register being the leading tensor factor:
/// |s> (x) |psi> -> R(s)^dag E |psi>.
Mat encoding_unitary(const StabilizerCode& code);

/// Retraction with the syndrome register initialized in rho_syn instead of
/// |0...0>. Reduces to gadget_retraction for rho_syn = |0...0><0...0|.
Channel generalized_retraction(const StabilizerCode& code, const Mat& rho_syn,
                               const Channel& lambda);

/// Partial trace over the leading factor of dimension dim_front.
Mat partial_trace_front(const Mat& rho, std::size_t dim_front);

/// Pauli transfer matrix R_ab = Tr[P_a Lambda(P_b)] / dim for a channel on
/// qubits; basis ordered I,X,Y,Z per qubit, last qubit fastest.
RealMat pauli_transfer(const Channel& chan);

/// Largest off-diagonal magnitude of the Pauli transfer matrix; zero for
/// Pauli channels.
double pauli_offdiagonal(const Channel& chan);

/// Pauli error probabilities of a Pauli channel (same basis order as
/// pauli_transfer). Throws DomainError if the channel is not Pauli to tol.
std::vector<double> pauli_channel_probabilities(const Channel& chan,
                                                double tol = 1e-9);

}  // namespace qecnm
