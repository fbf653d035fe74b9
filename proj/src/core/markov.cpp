#include "core/markov.hpp"

#include <algorithm>
#include <cmath>

namespace qecnm {

namespace {

std::string basis_label(std::size_t index, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q) {
    if ((index >> (n - 1 - q)) & 1u) s[q] = '1';
  }
  return s;
}

// Basis index hit by a column of the encoding unitary, or -1 when the
// column is not a computational basis vector (up to phase).
long basis_index_of_column(const Mat& u, std::size_t col, double tol = 1e-9) {
  long hit = -1;
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    double a = std::abs(u(r, col));
    if (a > tol) {
      if (std::abs(a - 1.0) > tol || hit >= 0) return -1;
      hit = static_cast<long>(r);
    }
  }
  return hit;
}

}  // namespace

bool classicality_check(const Channel& chan, double tol) {
  if (chan.in_dim() != chan.out_dim()) return false;
  const std::size_t dim = chan.in_dim();
  for (std::size_t b = 0; b < dim; ++b) {
    Mat rho = Mat::Zero(dim, dim);
    rho(b, b) = 1.0;
    Mat out = chan.apply(rho);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        if (r != c && std::abs(out(r, c)) > tol) return false;
      }
    }
  }
  return true;
}

std::vector<std::string> state_labels(const StabilizerCode& code,
                                      StateOrdering ordering) {
  const std::size_t dim = std::size_t{1} << code.n();
  std::vector<std::string> labels;
  labels.reserve(dim);
  if (ordering == StateOrdering::kBinaryAscending) {
    for (std::size_t b = 0; b < dim; ++b) {
      labels.push_back(basis_label(b, code.n()));
    }
    return labels;
  }
  Mat u = encoding_unitary(code);
  for (std::size_t col = 0; col < dim; ++col) {
    long b = basis_index_of_column(u, col);
    if (b < 0) {
      throw DomainError(
          "syndrome-grouped ordering needs an encoding unitary that "
          "permutes basis states; use binary ordering for this code");
    }
    labels.push_back(basis_label(static_cast<std::size_t>(b), code.n()));
  }
  return labels;
}

TransitionMatrix transition_matrix(const StabilizerCode& code,
                                   const Channel& chan,
                                   StateOrdering ordering) {
  const std::size_t dim = std::size_t{1} << code.n();
  if (chan.in_dim() != dim || chan.out_dim() != dim) {
    throw DimensionError("channel does not act on the code's data register");
  }
  if (!classicality_check(chan)) {
    throw DomainError(
        "channel is not classical over the computational basis; the "
        "stochastic picture does not apply");
  }
  std::vector<std::string> labels = state_labels(code, ordering);
  std::vector<std::size_t> index(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    index[i] = std::stoul(labels[i], nullptr, 2);
  }
  RealMat t(dim, dim);
  for (std::size_t cin = 0; cin < dim; ++cin) {
    Mat rho = Mat::Zero(dim, dim);
    rho(index[cin], index[cin]) = 1.0;
    Mat out = chan.apply(rho);
    for (std::size_t rout = 0; rout < dim; ++rout) {
      t(rout, cin) = out(index[rout], index[rout]).real();
    }
  }
  return {std::move(labels), std::move(t)};
}

Channel conditional_recovery(const StabilizerCode& code, const Syndrome& e) {
  if (e.length() != code.num_generators()) {
    throw DimensionError("error pattern length must be n-k");
  }
  const std::size_t dim = std::size_t{1} << code.n();
  std::vector<Mat> kraus;
  kraus.reserve(code.num_syndromes());
  for (std::size_t idx = 0; idx < code.num_syndromes(); ++idx) {
    Syndrome truth(static_cast<std::uint32_t>(idx), code.num_generators());
    Syndrome measured = truth ^ e;
    kraus.push_back(code.correction(measured).dense() *
                    syndrome_projector(code, truth));
  }
  return Channel::from_kraus(dim, dim, kraus);
}

SpectralSummary spectral_summary(const TransitionMatrix& tm) {
  Eigen::EigenSolver<RealMat> es(tm.m);
  std::vector<std::complex<double>> eig(es.eigenvalues().data(),
                                        es.eigenvalues().data() +
                                            es.eigenvalues().size());
  std::sort(eig.begin(), eig.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              double ma = std::abs(a), mb = std::abs(b);
              if (ma != mb) return ma > mb;
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  double second = eig.size() > 1 ? std::abs(eig[1]) : 0.0;
  return {std::move(eig), second, second};
}

LabeledGraph cube_graph(const StabilizerCode& code, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("error probability must lie in [0, 1]");
  }
  const std::size_t m = code.num_generators();
  const std::size_t dim = std::size_t{1} << code.n();

  // Gate on the stochastic picture being valid for this code.
  if (!classicality_check(noisy_recovery_map(code, bitflip_confusion(code, 0.5)))) {
    throw DomainError(
        "noisy recovery is not classical for this code; no cube graph");
  }

  Mat u = encoding_unitary(code);
  std::vector<int> logical_of(dim, -1);
  std::vector<std::string> syndrome_of_state(dim);
  const std::size_t ldim = std::size_t{1} << code.k();
  for (std::size_t col = 0; col < dim; ++col) {
    long b = basis_index_of_column(u, col);
    if (b < 0) {
      throw DomainError("encoding unitary does not permute basis states");
    }
    Syndrome s(static_cast<std::uint32_t>(col / ldim), m);
    logical_of[b] = static_cast<int>(col % ldim);
    syndrome_of_state[b] = s.str();
  }

  LabeledGraph g;
  for (std::size_t b = 0; b < dim; ++b) {
    g.nodes.push_back({basis_label(b, code.n()), logical_of[b],
                       syndrome_of_state[b]});
  }
  for (std::size_t e = 0; e < code.num_syndromes(); ++e) {
    Syndrome pattern(static_cast<std::uint32_t>(e), m);
    Channel cond = conditional_recovery(code, pattern);
    int h = pattern.weight();
    double prob = std::pow(1.0 - p, static_cast<int>(m) - h) * std::pow(p, h);
    for (std::size_t b = 0; b < dim; ++b) {
      Mat rho = Mat::Zero(dim, dim);
      rho(b, b) = 1.0;
      Mat out = cond.apply(rho);
      for (std::size_t t = 0; t < dim; ++t) {
        if (out(t, t).real() > 0.5) {
          g.edges.push_back({basis_label(b, code.n()),
                             basis_label(t, code.n()), pattern.str(), prob});
        }
      }
    }
  }
  return g;
}

}  // namespace qecnm
