#include "core/experiments.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace qecnm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_rates(DecayRecord& rec) {
  for (int m = 0; m < rec.rounds; ++m) {
    if (rec.q[m] != 0.0) {
      rec.eps.push_back((1.0 - rec.q[m + 1] / rec.q[m]) / 2.0);
    } else {
      rec.eps.push_back(kNaN);  // error rate undefined at vanishing q
    }
  }
  for (int m = 0; m + 1 < rec.rounds; ++m) {
    rec.delta_eps_abs.push_back(std::abs(rec.eps[m + 1] - rec.eps[m]));
  }
}

}  // namespace

DecayRecord polarization_sequence(const StabilizerCode& code, double p,
                                  int rounds) {
  if (code.k() != 1) {
    throw UnsupportedError(
        "polarization experiments require a single logical qubit");
  }
  if (rounds < 0) {
    throw DomainError("round count must be non-negative");
  }
  Channel rt = noisy_recovery_map(code, bitflip_confusion(code, p));
  Channel dec = decoding_operation(code);
  Mat e = encoding_isometry(code);

  Mat z_logical(2, 2);
  z_logical << 1, 0, 0, -1;
  Mat obs = dec.apply_dual(z_logical);

  // Two physical initializations combined into the synthetic observable
  // value (<Zbar>_0bar - <Zbar>_1bar)/2.
  Mat rho0 = e.col(0) * e.col(0).adjoint();
  Mat rho1 = e.col(1) * e.col(1).adjoint();

  DecayRecord rec;
  rec.p = p;
  rec.rounds = rounds;
  rec.q.reserve(rounds + 1);
  for (int m = 0; m <= rounds; ++m) {
    if (m > 0) {
      rho0 = rt.apply(rho0);
      rho1 = rt.apply(rho1);
    }
    double v0 = (obs * rho0).trace().real();
    double v1 = (obs * rho1).trace().real();
    rec.q.push_back((v0 - v1) / 2.0);
  }
  fill_rates(rec);
  return rec;
}

namespace {

// 3 data + 2 ancilla register for the repetition-code circuit. Ancillas are
// qubits 0 and 1 (the leading tensor factor), data qubits follow.
constexpr std::size_t kOracleQubits = 5;
constexpr std::size_t kOracleDim = 32;
constexpr std::size_t kAncDim = 4;
constexpr std::size_t kDataDim = 8;

std::size_t flip_qubit(std::size_t index, std::size_t q) {
  return index ^ (std::size_t{1} << (kOracleQubits - 1 - q));
}

bool qubit_bit(std::size_t index, std::size_t q) {
  return (index >> (kOracleQubits - 1 - q)) & 1u;
}

Mat cnot(std::size_t control, std::size_t target) {
  Mat u = Mat::Zero(kOracleDim, kOracleDim);
  for (std::size_t b = 0; b < kOracleDim; ++b) {
    u(qubit_bit(b, control) ? flip_qubit(b, target) : b, b) = 1.0;
  }
  return u;
}

Mat x_on(std::size_t q) {
  Mat u = Mat::Zero(kOracleDim, kOracleDim);
  for (std::size_t b = 0; b < kOracleDim; ++b) {
    u(flip_qubit(b, q), b) = 1.0;
  }
  return u;
}

// One syndrome-extraction round of the repetition-code circuit: ancilla
// reset, the four parity CNOTs, ancilla bitflip with probability p,
// measurement in the computational basis and the conditioned correction.
// The returned state is the data register after tracing the ancillas.
Mat oracle_round(const Mat& rho_data, double p) {
  static const Mat kCnots = cnot(2, 0) * cnot(3, 0) * cnot(3, 1) * cnot(4, 1);
  static const Mat kXa1 = x_on(0);
  static const Mat kXa2 = x_on(1);
  // Indexed by (a1, a2) as a big-endian syndrome: 00, 01, 10, 11.
  static const char* kCorrections[4] = {"III", "IIX", "XII", "IXI"};

  Mat rho = Mat::Zero(kOracleDim, kOracleDim);
  rho.topLeftCorner(kDataDim, kDataDim) = rho_data;  // ancillas in |00>
  rho = kCnots * rho * kCnots.adjoint();
  rho = (1.0 - p) * rho + p * (kXa1 * rho * kXa1.adjoint());
  rho = (1.0 - p) * rho + p * (kXa2 * rho * kXa2.adjoint());

  Mat next = Mat::Zero(kOracleDim, kOracleDim);
  for (std::size_t outcome = 0; outcome < kAncDim; ++outcome) {
    Mat op = Mat::Zero(kOracleDim, kOracleDim);
    Mat corr = Pauli::parse(kCorrections[outcome]).dense();
    op.block(outcome * kDataDim, outcome * kDataDim, kDataDim, kDataDim) =
        corr;
    next += op * rho * op.adjoint();
  }
  return partial_trace_front(next, kAncDim);
}

double oracle_measure(const Mat& rho_data) {
  // One terminal error-free round, then <E(Z)> on the data register.
  Mat rho = oracle_round(rho_data, 0.0);
  return rho(0, 0).real() - rho(7, 7).real();
}

}  // namespace

std::vector<double> circuit_oracle_rep3(double p, int rounds) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("bitflip probability must lie in [0, 1]");
  }
  if (rounds < 0 || rounds > 20) {
    throw CapacityError("circuit oracle supports at most 20 rounds");
  }
  Mat rho0 = Mat::Zero(kDataDim, kDataDim);
  rho0(0, 0) = 1.0;  // |000>
  Mat rho1 = Mat::Zero(kDataDim, kDataDim);
  rho1(7, 7) = 1.0;  // |111>

  std::vector<double> q;
  q.reserve(rounds + 1);
  for (int m = 0; m <= rounds; ++m) {
    if (m > 0) {
      rho0 = oracle_round(rho0, p);
      rho1 = oracle_round(rho1, p);
    }
    q.push_back((oracle_measure(rho0) - oracle_measure(rho1)) / 2.0);
  }
  return q;
}

ComposabilityReport composability_check(const StabilizerCode& code,
                                        const Channel& g_a,
                                        const Channel& g_b) {
  Channel lhs = gadget_retraction_chain(code, {&g_a, &g_b});
  Channel rhs = compose(gadget_retraction(code, g_b),
                        gadget_retraction(code, g_a));
  double distance = max_abs_diff(lhs, rhs);
  return {std::move(lhs), std::move(rhs), distance,
          distance > kComposabilityThreshold};
}

TheoremReport verify_theorem1(const StabilizerCode& code,
                              const ConfusionMatrix& chi) {
  if (!code.declared_distance() || *code.declared_distance() < 3) {
    throw DomainError("two-round violation requires declared distance >= 3");
  }
  if (!chi.strictly_positive()) {
    throw DomainError(
        "confusion matrix must be strictly positive (some entries vanish)");
  }
  Channel rt = noisy_recovery_map(code, chi);
  Channel one = gadget_retraction(code, rt);
  const std::size_t ldim = std::size_t{1} << code.k();
  if (max_abs_diff(one, Channel::identity(ldim)) > 1e-9) {
    throw ValidationError(
        "single noisy round did not retract to the logical identity");
  }
  Channel two = gadget_retraction_chain(code, {&rt, &rt});
  double distance = max_abs_diff(two, compose(one, one));
  std::vector<double> probs = pauli_channel_probabilities(two);
  UncorrectablePair witness = code.find_uncorrectable_pair();
  return {distance > kComposabilityThreshold, std::move(two), std::move(probs),
          distance, std::move(witness)};
}

LeadingOrderReport leading_order_report(const StabilizerCode& code,
                                        const std::vector<double>& p_list) {
  const std::size_t m = code.num_generators();
  int pairs = 0, xy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Syndrome s1(std::uint32_t{1} << (m - 1 - i), m);
      Syndrome s2(std::uint32_t{1} << (m - 1 - j), m);
      Pauli product = mul(code.correction(s1), code.correction(s2));
      Pauli logical = code.decompose(product).first;
      ++pairs;
      if (code.logical_pauli_of(logical).x_bits() != 0) ++xy;
    }
  }
  double fraction = pairs > 0 ? static_cast<double>(xy) / pairs : 0.0;

  LeadingOrderReport report;
  report.logical_xy_fraction = fraction;
  report.pair_count = pairs;
  const double mm = static_cast<double>(m);
  for (double p : p_list) {
    DecayRecord rec = polarization_sequence(code, p, 2);
    double measured = 1.0 - rec.q[2];
    double predicted = 2.0 * mm * (mm - 1.0) * fraction * p * p;
    LeadingOrderRow row{p, measured, predicted, std::nullopt};
    if (predicted > 0.0) row.ratio = measured / predicted;
    report.rows.push_back(row);
  }
  return report;
}

Channel random_cptp(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t big = dim * dim;
  Mat g(big, dim);
  for (std::size_t r = 0; r < big; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat v = qr.householderQ() * Mat::Identity(big, dim);
  // Kraus operators are the environment slices of the isometry; the
  // environment is the trailing index.
  std::vector<Mat> kraus;
  kraus.reserve(dim);
  for (std::size_t env = 0; env < dim; ++env) {
    Mat k(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      k.row(i) = v.row(i * dim + env);
    }
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(dim, dim, kraus);
}

}  // namespace qecnm
