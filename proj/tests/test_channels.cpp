#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/channels.hpp"
#include "core/experiments.hpp"
#include "core/export.hpp"
#include "support/helpers.hpp"

using namespace qecnm;
using testsupport::dense_from_string;
using testsupport::max_abs;

namespace {

Mat basis_op(std::size_t dim, std::size_t r, std::size_t c) {
  Mat m = Mat::Zero(dim, dim);
  m(r, c) = 1.0;
  return m;
}

Mat random_density(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss;
  Mat g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("encoding isometry spans the codespace") {
  StabilizerCode rep = StabilizerCode::rep3();
  Mat e = encoding_isometry(rep);
  CHECK(max_abs(e.col(0) - Mat::Identity(8, 8).col(0)) < 1e-12);  // |000>
  CHECK(max_abs(e.col(1) - Mat::Identity(8, 8).col(7)) < 1e-12);  // |111>

  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    Mat iso = encoding_isometry(code);
    std::size_t ldim = std::size_t{1} << code.k();
    CHECK(max_abs(iso.adjoint() * iso - Mat::Identity(ldim, ldim)) < 1e-12);
    Mat proj = iso * iso.adjoint();
    CHECK(max_abs(proj - proj.adjoint()) < 1e-12);
    CHECK(max_abs(proj * proj - proj) < 1e-12);
    Mat pi0 = syndrome_projector(code, Syndrome(0, code.num_generators()));
    CHECK(max_abs(proj - pi0) < 1e-12);
  }

  // Five-qubit codespace projector against an independent construction from
  // the published generator strings.
  Mat prod = Mat::Identity(32, 32);
  for (const char* g : {"ZZXIX", "XZZXI", "IXZZX", "XIXZZ"}) {
    prod = prod * 0.5 * (Mat::Identity(32, 32) + dense_from_string(g));
  }
  Mat e5 = encoding_isometry(StabilizerCode::five_qubit());
  CHECK(max_abs(e5 * e5.adjoint() - prod) < 1e-12);
}

TEST_CASE("syndrome projectors resolve the identity orthogonally") {
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    const std::size_t dim = std::size_t{1} << code.n();
    Mat sum = Mat::Zero(dim, dim);
    std::vector<Mat> projs;
    for (std::size_t s = 0; s < code.num_syndromes(); ++s) {
      Mat p = syndrome_projector(code,
                                 Syndrome(s, code.num_generators()));
      CHECK(max_abs(p - p.adjoint()) < 1e-12);
      CHECK(max_abs(p * p - p) < 1e-12);
      CHECK(std::lround(p.trace().real()) ==
            (std::int64_t{1} << code.k()));
      sum += p;
      projs.push_back(std::move(p));
    }
    CHECK(max_abs(sum - Mat::Identity(dim, dim)) < 1e-12);
    for (std::size_t a = 0; a < projs.size(); ++a) {
      for (std::size_t b = 0; b < projs.size(); ++b) {
        Mat expect = (a == b) ? projs[a] : Mat::Zero(dim, dim);
        CHECK(max_abs(projs[a] * projs[b] - expect) < 1e-12);
      }
    }
  }

  // rep3 syndrome (0,1) space is spanned by |001> and |110>.
  Mat p01 = syndrome_projector(StabilizerCode::rep3(), Syndrome::parse("01"));
  for (std::size_t b = 0; b < 8; ++b) {
    double expect = (b == 1 || b == 6) ? 1.0 : 0.0;
    CHECK(std::abs(p01(b, b).real() - expect) < 1e-12);
  }
}

TEST_CASE("ideal recovery cools onto the codespace and is idempotent") {
  StabilizerCode rep = StabilizerCode::rep3();
  Channel r = recovery_map(rep);
  Mat in = basis_op(8, 0, 0);
  CHECK(max_abs(r.apply(in) - in) < 1e-12);
  CHECK(max_abs(r.apply(basis_op(8, 1, 1)) - in) < 1e-12);  // |001> -> |000>
  CHECK(max_abs(r.matrix() * r.matrix() - r.matrix()) < 1e-10);

  std::mt19937_64 rng(31);
  Mat pi0 = syndrome_projector(rep, Syndrome::parse("00"));
  for (int trial = 0; trial < 5; ++trial) {
    Mat out = r.apply(random_density(rng, 8));
    CHECK(max_abs(pi0 * out * pi0 - out) < 1e-12);
  }
  CHECK(r.is_cptp());
}

TEST_CASE("bitflip confusion matrices are column-stochastic") {
  StabilizerCode rep = StabilizerCode::rep3();
  CHECK(max_abs((bitflip_confusion(rep, 0.0).matrix() -
                 RealMat::Identity(4, 4))
                    .cast<std::complex<double>>()) == 0.0);
  double p = 0.13;
  ConfusionMatrix chi = bitflip_confusion(rep, p);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t r = 0; r < 4; ++r) {
      int h = __builtin_popcount(static_cast<unsigned>(r ^ t));
      double expect = std::pow(1 - p, 2 - h) * std::pow(p, h);
      CHECK(std::abs(chi(r, t) - expect) < 1e-15);
    }
  }
  for (double pr : {0.01, 0.3, 0.9}) {
    ConfusionMatrix c = bitflip_confusion(rep, pr);
    for (std::size_t t = 0; t < 4; ++t) {
      double sum = 0;
      for (std::size_t r = 0; r < 4; ++r) sum += c(r, t);
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    CHECK(c.strictly_positive() == (pr > 0.0 && pr < 1.0));
  }
  CHECK_THROWS_AS(bitflip_confusion(rep, -0.1), DomainError);
  CHECK_THROWS_AS(bitflip_confusion(rep, 1.5), DomainError);
}

TEST_CASE("noisy recovery reduces to the ideal map and stays CP") {
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    Channel ideal = recovery_map(code);
    Channel noisy = noisy_recovery_map(
        code, ConfusionMatrix::identity(code.num_syndromes()));
    CHECK(max_abs_diff(ideal, noisy) < 1e-12);
  }
  StabilizerCode rep = StabilizerCode::rep3();
  for (double p : {0.0, 0.05, 0.5}) {
    Channel rt = noisy_recovery_map(rep, bitflip_confusion(rep, p));
    CHECK(rt.trace_preservation_defect() < 1e-10);
    CHECK(rt.choi_min_eigenvalue() >= -1e-10);
  }
  CHECK_THROWS_AS(
      noisy_recovery_map(rep, ConfusionMatrix::identity(8)), DimensionError);
}

TEST_CASE("arbitrary column-stochastic confusion matrices are accepted") {
  StabilizerCode rep = StabilizerCode::rep3();
  // Asymmetric readout: flips 0->1 far more often than 1->0 on the first
  // ancilla, plus a uniform leakage floor.
  RealMat m(4, 4);
  m << 0.80, 0.02, 0.25, 0.05,
       0.10, 0.90, 0.05, 0.15,
       0.06, 0.03, 0.60, 0.10,
       0.04, 0.05, 0.10, 0.70;
  ConfusionMatrix chi{m};
  CHECK(chi.strictly_positive());
  Channel rt = noisy_recovery_map(rep, chi);
  CHECK(rt.trace_preservation_defect() < 1e-12);
  CHECK(rt.choi_min_eigenvalue() >= -1e-10);
  // Still a perfect logical identity after one round from the codespace.
  CHECK(max_abs_diff(gadget_retraction(rep, rt), Channel::identity(2)) <
        1e-12);

  RealMat bad = m;
  bad(0, 0) = 0.5;  // column no longer sums to 1
  CHECK_THROWS_AS(ConfusionMatrix{bad}, ValidationError);
  RealMat neg = m;
  neg(0, 1) = -0.02;
  neg(1, 1) = 0.94;
  CHECK_THROWS_AS(ConfusionMatrix{neg}, ValidationError);
}

TEST_CASE("kraus construction rejects mismatched shapes") {
  std::vector<Mat> kraus{Mat::Identity(4, 4)};
  CHECK_THROWS_AS(Channel::from_kraus(2, 2, kraus), DimensionError);
  CHECK_THROWS_AS(Channel(2, 2, Mat::Zero(4, 3)), DimensionError);
  CHECK_THROWS_AS(Channel(3, 3, Mat::Zero(9, 9)), DimensionError);
}

TEST_CASE("decoding inverts encoding and reads out the logical Z") {
  StabilizerCode rep = StabilizerCode::rep3();
  Channel enc = encoding_operation(rep);
  Channel dec = decoding_operation(rep);
  CHECK(max_abs_diff(compose(dec, enc), Channel::identity(2)) < 1e-12);
  CHECK(dec.is_cptp());

  // D^dag(Z) is the diagonal observable that scores +1 on every state
  // decoding to |0> and -1 on every state decoding to |1>.
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  Mat obs = dec.apply_dual(z);
  Mat expect = Mat::Zero(8, 8);
  for (std::size_t b : {0, 1, 2, 4}) expect(b, b) = 1.0;   // 000,001,010,100
  for (std::size_t b : {7, 6, 5, 3}) expect(b, b) = -1.0;  // 111,110,101,011
  CHECK(max_abs(obs - expect) < 1e-12);

  Mat out = dec.apply(basis_op(8, 1, 1));  // |001><001|
  Mat zero = Mat::Zero(2, 2);
  zero(0, 0) = 1.0;
  CHECK(max_abs(out - zero) < 1e-12);
}

TEST_CASE("gadget retraction collapses one noisy round to the identity") {
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    const std::size_t dim = std::size_t{1} << code.n();
    CHECK(max_abs_diff(gadget_retraction(code, Channel::identity(dim)),
                       Channel::identity(2)) < 1e-12);
    for (double p : {0.01, 0.1, 0.37}) {
      Channel rt = noisy_recovery_map(code, bitflip_confusion(code, p));
      CHECK(max_abs_diff(gadget_retraction(code, rt), Channel::identity(2)) <
            1e-12);
    }
  }
}

TEST_CASE("two noisy rounds retract to a non-identity Pauli channel") {
  StabilizerCode rep = StabilizerCode::rep3();
  double p = 0.1;
  Channel rt = noisy_recovery_map(rep, bitflip_confusion(rep, p));
  Channel two = gadget_retraction_chain(rep, {&rt, &rt});
  CHECK(max_abs_diff(two, Channel::identity(2)) > 1e-4);
  CHECK(pauli_offdiagonal(two) < 1e-10);
  std::vector<double> probs = pauli_channel_probabilities(two);
  // Exactly the two-round flip probability of the underlying chain.
  double flip = 2 * p * p * (1 - p * p);
  CHECK(std::abs(probs[1] - flip) < 1e-12);
  CHECK(std::abs(probs[0] - (1 - flip)) < 1e-12);
  CHECK(std::abs(probs[2]) < 1e-12);
  CHECK(std::abs(probs[3]) < 1e-12);

  // The retraction of repeated noisy rounds stays Pauli for both codes.
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    Channel noisy = noisy_recovery_map(code, bitflip_confusion(code, 0.1));
    std::vector<const Channel*> chain;
    for (int m = 1; m <= 3; ++m) {
      chain.push_back(&noisy);
      CHECK(pauli_offdiagonal(gadget_retraction_chain(code, chain)) < 1e-10);
    }
  }
}

TEST_CASE("encoding unitary reproduces the syndrome/logical basis table") {
  StabilizerCode rep = StabilizerCode::rep3();
  Mat u = encoding_unitary(rep);
  CHECK(max_abs(u.adjoint() * u - Mat::Identity(8, 8)) < 1e-12);
  // Columns are ordered (syndrome, logical); expected images below.
  const std::size_t images[8] = {0, 7, 1, 6, 4, 3, 2, 5};
  for (std::size_t col = 0; col < 8; ++col) {
    CHECK(max_abs(u.col(col) - Mat::Identity(8, 8).col(images[col])) < 1e-12);
  }

  // Tracing the syndrome register after conjugating by U_E^dag is the
  // decoding operation, as channels.
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    const std::size_t dim = std::size_t{1} << code.n();
    Mat ue = encoding_unitary(code);
    CHECK(max_abs(ue.adjoint() * ue - Mat::Identity(dim, dim)) < 1e-12);
    Mat lhs = Mat::Zero(4, dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        Mat out = partial_trace_front(
            ue.adjoint() * basis_op(dim, r, c) * ue, code.num_syndromes());
        lhs.col(r + dim * c) =
            Eigen::Map<const Eigen::VectorXcd>(out.data(), out.size());
      }
    }
    CHECK(max_abs(lhs - decoding_operation(code).matrix()) < 1e-10);
  }
}

TEST_CASE("generalized retraction interpolates the syndrome preparation") {
  StabilizerCode rep = StabilizerCode::rep3();
  double p = 0.1;
  Channel rt = noisy_recovery_map(rep, bitflip_confusion(rep, p));
  Mat zero_syn = Mat::Zero(4, 4);
  zero_syn(0, 0) = 1.0;
  CHECK(max_abs_diff(generalized_retraction(rep, zero_syn, rt),
                     gadget_retraction(rep, rt)) < 1e-12);

  // Preparing the syndrome register in |01> and applying ideal recovery
  // still restores the logical content.
  Mat syn01 = Mat::Zero(4, 4);
  syn01(1, 1) = 1.0;
  CHECK(max_abs_diff(generalized_retraction(rep, syn01, recovery_map(rep)),
                     Channel::identity(2)) < 1e-10);

  Mat mixed = Mat::Identity(4, 4) / 4.0;
  Channel mixed_out = generalized_retraction(rep, mixed, rt);
  CHECK(mixed_out.is_cptp());
  CHECK(max_abs_diff(mixed_out, gadget_retraction(rep, rt)) > 1e-3);

  Mat bad = Mat::Identity(4, 4);  // trace 4
  CHECK_THROWS_AS(generalized_retraction(rep, bad, rt), DomainError);
}

TEST_CASE("perfect error correction restores gate composability") {
  std::uint64_t seed = 424242;
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    const std::size_t dim = std::size_t{1} << code.n();
    Channel perfect = recovery_map(code);
    int trials = code.n() == 3 ? 20 : 3;
    for (int t = 0; t < trials; ++t) {
      Channel a = compose(perfect, random_cptp(dim, seed++));
      Channel b = compose(perfect, random_cptp(dim, seed++));
      CHECK(composability_check(code, a, b).distance < 1e-9);
    }
  }
}

TEST_CASE("channel JSON export round-trips") {
  StabilizerCode rep = StabilizerCode::rep3();
  Channel dec = decoding_operation(rep);
  Channel back = channel_from_json(channel_to_json(dec));
  CHECK(back.in_dim() == dec.in_dim());
  CHECK(back.out_dim() == dec.out_dim());
  CHECK(max_abs_diff(back, dec) < 1e-15);
  CHECK_THROWS_AS(channel_from_json("{}"), ParseError);
}

TEST_CASE("every constructor output verifies as CPTP") {
  StabilizerCode rep = StabilizerCode::rep3();
  std::vector<Channel> chans;
  chans.push_back(recovery_map(rep));
  chans.push_back(noisy_recovery_map(rep, bitflip_confusion(rep, 0.07)));
  chans.push_back(encoding_operation(rep));
  chans.push_back(decoding_operation(rep));
  chans.push_back(gadget_retraction(rep, chans[1]));
  for (const Channel& c : chans) {
    CHECK(c.trace_preservation_defect() < 1e-10);
    CHECK(c.choi_min_eigenvalue() >= -1e-10);
  }
}
