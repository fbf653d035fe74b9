// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every tolerance is pinned here; nothing is deferred to calibration.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "core/experiments.hpp"
#include "core/markov.hpp"
#include "support/helpers.hpp"

using namespace qecnm;
using testsupport::linear_fit;

namespace {

const std::vector<double> kPGrid = {0.01, 0.05, 0.1};

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  }
  void note(const std::string& msg) {
    if (ok) detail = msg;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. One round of noisy QEC is a perfect logical identity: q_1 = 1.
Criterion criterion_single_round() {
  Criterion c;
  double worst = 0.0;
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    for (double p : kPGrid) {
      DecayRecord rec = polarization_sequence(code, p, 1);
      double dev = std::abs(rec.q[1] - 1.0);
      worst = std::max(worst, dev);
      c.require(dev < 1e-12, code.name() + " p=" + fmt(p) +
                                 " |q_1-1|=" + fmt(dev) + " >= 1e-12");
    }
  }
  c.note("max |q_1 - 1| = " + fmt(worst));
  return c;
}

// 2. Two noisy rounds violate composability and retract to a non-identity
//    Pauli channel.
Criterion criterion_theorem1() {
  Criterion c;
  double least = 1.0;
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    for (double p : kPGrid) {
      Channel rt = noisy_recovery_map(code, bitflip_confusion(code, p));
      Channel one = gadget_retraction(code, rt);
      Channel two = gadget_retraction_chain(code, {&rt, &rt});
      double dist = max_abs_diff(two, compose(one, one));
      least = std::min(least, dist);
      c.require(dist > 1e-6, code.name() + " p=" + fmt(p) +
                                 " violation distance " + fmt(dist) +
                                 " <= 1e-6");
      c.require(pauli_offdiagonal(two) < 1e-9,
                code.name() + " p=" + fmt(p) +
                    " two-round retraction is not a Pauli channel");
      c.require(max_abs_diff(two, Channel::identity(2)) > 1e-6,
                code.name() + " p=" + fmt(p) +
                    " two-round retraction is the identity");
    }
  }
  c.note("min violation distance = " + fmt(least));
  return c;
}

// 3. |delta eps_m| decreases log-linearly to below 1e-14 within 60 rounds;
//    the asymptotic decay rate matches the spectral subdominant factor on
//    the repetition code.
Criterion criterion_rate_settling() {
  Criterion c;
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    for (double p : kPGrid) {
      DecayRecord rec = polarization_sequence(code, p, 60);
      int first = -1;
      for (std::size_t m = 0; m < rec.delta_eps_abs.size(); ++m) {
        if (rec.delta_eps_abs[m] < 1e-14) {
          first = static_cast<int>(m);
          break;
        }
      }
      c.require(first >= 0, code.name() + " p=" + fmt(p) +
                                " |delta eps| never fell below 1e-14");
      if (first < 0) continue;
      c.require(first <= 60, code.name() + " p=" + fmt(p) +
                                 " settles only at m=" + std::to_string(first));
      std::vector<double> xs, ys;
      for (int m = 0; m < first - 1; ++m) {
        xs.push_back(m);
        ys.push_back(std::log10(rec.delta_eps_abs[m]));
      }
      if (xs.size() >= 3) {
        auto fit = linear_fit(xs, ys);
        c.require(fit.slope < 0.0, code.name() + " p=" + fmt(p) +
                                       " |delta eps| does not decrease");
        c.require(fit.r2 > 0.98, code.name() + " p=" + fmt(p) +
                                     " |delta eps| not log-linear (R^2=" +
                                     fmt(fit.r2) + ")");
      }
    }
  }
  StabilizerCode rep = StabilizerCode::rep3();
  double worst = 0.0;
  for (double p : kPGrid) {
    DecayRecord rec = polarization_sequence(rep, p, 60);
    std::vector<double> xs, ys;
    for (int m = 30; m <= 60; ++m) {
      xs.push_back(m);
      ys.push_back(std::log(rec.q[m]));
    }
    double fitted = std::exp(linear_fit(xs, ys).slope);
    SpectralSummary spec = spectral_summary(transition_matrix(
        rep, noisy_recovery_map(rep, bitflip_confusion(rep, p))));
    double dev = std::abs(fitted - spec.asymptotic_rate);
    worst = std::max(worst, dev);
    c.require(dev < 1e-6, "rep3 p=" + fmt(p) + " rate mismatch " + fmt(dev));
  }
  c.note("settles below 1e-14 on both codes; rep3 rate mismatch <= " +
         fmt(worst));
  return c;
}

// 4. The one-round transition matrix matches the printed pattern at p=0.1.
Criterion criterion_printed_matrix() {
  Criterion c;
  const char* pattern[8] = {"a0a0a0a0", "0a0a0a0a", "b0b00b0b", "0b0bb0b0",
                            "b00bb00b", "0bb00bb0", "c00c0cc0", "0cc0c00c"};
  const std::vector<std::string> order{"000", "111", "001", "110",
                                       "100", "011", "010", "101"};
  StabilizerCode rep = StabilizerCode::rep3();
  double p = 0.1;
  TransitionMatrix tm = transition_matrix(
      rep, noisy_recovery_map(rep, bitflip_confusion(rep, p)));
  c.require(tm.states == order, "state ordering differs from the grouped "
                                "syndrome order");
  double worst = 0.0;
  for (int r = 0; r < 8; ++r) {
    for (int col = 0; col < 8; ++col) {
      double expect = 0.0;
      switch (pattern[r][col]) {
        case 'a':
          expect = (1 - p) * (1 - p);
          break;
        case 'b':
          expect = p * (1 - p);
          break;
        case 'c':
          expect = p * p;
          break;
      }
      double dev = std::abs(tm.m(r, col) - expect);
      worst = std::max(worst, dev);
      c.require(dev < 1e-12, "entry (" + order[r] + "," + order[col] +
                                 ") off by " + fmt(dev));
    }
  }
  c.note("max entry deviation = " + fmt(worst));
  return c;
}

// 5. The encoding unitary reproduces the published basis table, is unitary,
//    and tracing the syndrome register reproduces the decoding operation.
Criterion criterion_encoding_unitary() {
  Criterion c;
  StabilizerCode rep = StabilizerCode::rep3();
  Mat u = encoding_unitary(rep);
  const std::size_t images[8] = {0, 7, 1, 6, 4, 3, 2, 5};
  for (std::size_t col = 0; col < 8; ++col) {
    double dev = (u.col(col) - Mat::Identity(8, 8).col(images[col]))
                     .cwiseAbs()
                     .maxCoeff();
    c.require(dev < 1e-12,
              "column " + std::to_string(col) + " deviates by " + fmt(dev));
  }
  double unit_dev =
      (u.adjoint() * u - Mat::Identity(8, 8)).cwiseAbs().maxCoeff();
  c.require(unit_dev < 1e-12, "U_E not unitary: " + fmt(unit_dev));

  Mat lhs = Mat::Zero(4, 64);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t cc = 0; cc < 8; ++cc) {
      Mat op = Mat::Zero(8, 8);
      op(r, cc) = 1.0;
      Mat out = partial_trace_front(u.adjoint() * op * u, 4);
      lhs.col(r + 8 * cc) =
          Eigen::Map<const Eigen::VectorXcd>(out.data(), out.size());
    }
  }
  double tr_dev =
      (lhs - decoding_operation(rep).matrix()).cwiseAbs().maxCoeff();
  c.require(tr_dev < 1e-10, "syndrome-trace identity off by " + fmt(tr_dev));
  c.note("basis table exact; unitarity " + fmt(unit_dev) +
         "; trace identity " + fmt(tr_dev));
  return c;
}

// 6. Superoperator, Markov-chain, and ancilla-circuit polarizations agree.
Criterion criterion_oracle_equivalence() {
  Criterion c;
  StabilizerCode rep = StabilizerCode::rep3();
  double worst = 0.0;
  for (double p : {0.01, 0.1, 0.3}) {
    DecayRecord rec = polarization_sequence(rep, p, 10);
    std::vector<double> oracle = circuit_oracle_rep3(p, 10);
    TransitionMatrix tm = transition_matrix(
        rep, noisy_recovery_map(rep, bitflip_confusion(rep, p)));
    Eigen::VectorXd v(8), w = Eigen::VectorXd::Zero(8);
    for (int i = 0; i < 8; ++i) v(i) = (i % 2 == 0) ? 1.0 : -1.0;
    w(0) = 0.5;
    w(1) = -0.5;
    for (int m = 0; m <= 10; ++m) {
      double markov_q = v.dot(w);
      double d1 = std::abs(rec.q[m] - oracle[m]);
      double d2 = std::abs(rec.q[m] - markov_q);
      double d3 = std::abs(oracle[m] - markov_q);
      worst = std::max({worst, d1, d2, d3});
      c.require(d1 < 1e-10 && d2 < 1e-10 && d3 < 1e-10,
                "p=" + fmt(p) + " m=" + std::to_string(m) +
                    " oracle spread " + fmt(std::max({d1, d2, d3})));
      w = tm.m * w;
    }
  }
  c.note("max pairwise deviation = " + fmt(worst));
  return c;
}

// 7. Perfect recovery restores composability for random CPTP maps, and
//    dropping it exposes at least one violation.
Criterion criterion_sufficiency() {
  Criterion c;
  const int trials = 20;
  std::uint64_t seed = 20240601;
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    const std::size_t dim = std::size_t{1} << code.n();
    Channel perfect = recovery_map(code);
    double worst = 0.0, best_raw = 0.0;
    for (int t = 0; t < trials; ++t) {
      Channel a = random_cptp(dim, seed++);
      Channel b = random_cptp(dim, seed++);
      Channel ra = compose(perfect, a);
      Channel rb = compose(perfect, b);
      double dist = composability_check(code, ra, rb).distance;
      worst = std::max(worst, dist);
      best_raw =
          std::max(best_raw, composability_check(code, a, b).distance);
    }
    c.require(worst < 1e-9, code.name() + " recovered maps drift to " +
                                fmt(worst));
    c.require(best_raw > 1e-6, code.name() +
                                   " no raw violation found (max " +
                                   fmt(best_raw) + ")");
    if (c.ok) {
      c.detail += (c.detail.empty() ? "" : "; ") + code.name() +
                  ": recovered<=" + fmt(worst) + " raw max=" + fmt(best_raw);
    }
  }
  return c;
}

// 8. Five-qubit combinatorics: weight-2 errors always defeat the decoder,
//    half of the weight-1 syndrome pairs are logically X/Y, and the
//    leading-order estimates land within 10%.
Criterion criterion_five_qubit_combinatorics() {
  Criterion c;
  StabilizerCode five = StabilizerCode::five_qubit();
  int weight2 = 0, uncorrectable = 0;
  static const char kKinds[3] = {'X', 'Y', 'Z'};
  for (std::size_t q = 0; q < 5; ++q) {
    for (char k1 : kKinds) {
      for (std::size_t r = q + 1; r < 5; ++r) {
        for (char k2 : kKinds) {
          Pauli err = mul(Pauli::single(5, q, k1), Pauli::single(5, r, k2));
          ++weight2;
          if (!five.in_stabilizer_span(five.decompose(err).first)) {
            ++uncorrectable;
          }
        }
      }
    }
  }
  c.require(weight2 == 90, "expected 90 weight-2 Paulis");
  c.require(uncorrectable == weight2,
            std::to_string(weight2 - uncorrectable) +
                " weight-2 errors were correctable");

  LeadingOrderReport rep5 = leading_order_report(five, {1e-3});
  c.require(rep5.pair_count == 6, "expected 6 weight-1 syndrome pairs");
  c.require(rep5.logical_xy_fraction == 0.5,
            "X/Y fraction " + fmt(rep5.logical_xy_fraction) + " != 1/2");
  c.require(rep5.rows[0].ratio.has_value() &&
                std::abs(*rep5.rows[0].ratio - 1.0) < 0.1,
            "five-qubit leading-order ratio off by more than 10%");

  LeadingOrderReport rep3 =
      leading_order_report(StabilizerCode::rep3(), {1e-3});
  c.require(rep3.rows[0].ratio.has_value() &&
                std::abs(*rep3.rows[0].ratio - 1.0) < 0.1,
            "rep3 leading-order ratio off by more than 10%");
  c.note("90/90 weight-2 uncorrectable; X/Y fraction 1/2; ratios " +
         fmt(*rep3.rows[0].ratio) + " and " + fmt(*rep5.rows[0].ratio));
  return c;
}

// 9. Every constructed channel is trace preserving and completely positive;
//    syndrome projectors are complete and orthogonal.
Criterion criterion_cptp_suite() {
  Criterion c;
  double worst_tp = 0.0, worst_cp = 0.0, worst_proj = 0.0;
  for (const StabilizerCode& code :
       {StabilizerCode::rep3(), StabilizerCode::five_qubit()}) {
    std::vector<std::pair<std::string, Channel>> chans;
    chans.emplace_back("recovery", recovery_map(code));
    for (double p : kPGrid) {
      chans.emplace_back("noisy p=" + fmt(p),
                         noisy_recovery_map(code, bitflip_confusion(code, p)));
    }
    chans.emplace_back("encoding", encoding_operation(code));
    chans.emplace_back("decoding", decoding_operation(code));
    {
      Channel rt = noisy_recovery_map(code, bitflip_confusion(code, 0.1));
      chans.emplace_back("retraction", gadget_retraction(code, rt));
      chans.emplace_back("two-round retraction",
                         gadget_retraction_chain(code, {&rt, &rt}));
    }
    for (std::size_t e = 0; e < code.num_syndromes(); ++e) {
      chans.emplace_back(
          "conditional e=" + Syndrome(e, code.num_generators()).str(),
          conditional_recovery(code, Syndrome(e, code.num_generators())));
    }
    for (const auto& [label, chan] : chans) {
      double tp = chan.trace_preservation_defect();
      double cp = chan.choi_min_eigenvalue();
      worst_tp = std::max(worst_tp, tp);
      worst_cp = std::min(worst_cp, cp);
      c.require(tp < 1e-10, code.name() + " " + label +
                                " trace defect " + fmt(tp));
      c.require(cp >= -1e-10, code.name() + " " + label +
                                  " Choi minimum " + fmt(cp));
    }

    const std::size_t dim = std::size_t{1} << code.n();
    std::vector<Mat> projs;
    Mat sum = Mat::Zero(dim, dim);
    for (std::size_t s = 0; s < code.num_syndromes(); ++s) {
      projs.push_back(
          syndrome_projector(code, Syndrome(s, code.num_generators())));
      sum += projs.back();
    }
    double comp = (sum - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff();
    worst_proj = std::max(worst_proj, comp);
    c.require(comp < 1e-12, code.name() + " projector completeness " +
                                fmt(comp));
    for (std::size_t a = 0; a < projs.size(); ++a) {
      for (std::size_t b = 0; b < projs.size(); ++b) {
        Mat expect = (a == b) ? projs[a] : Mat::Zero(dim, dim);
        double dev = (projs[a] * projs[b] - expect).cwiseAbs().maxCoeff();
        worst_proj = std::max(worst_proj, dev);
        c.require(dev < 1e-12, code.name() + " projector orthogonality " +
                                   fmt(dev));
      }
    }
  }
  c.note("worst trace defect " + fmt(worst_tp) + ", Choi min " +
         fmt(worst_cp) + ", projector defect " + fmt(worst_proj));
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const Entry entries[] = {
      {"single-round perfection (q_1 = 1 within 1e-12)",
       criterion_single_round},
      {"two-round composability violation (> 1e-6, Pauli channel)",
       criterion_theorem1},
      {"|delta eps| settles below 1e-14 by m<=60 at the spectral rate",
       criterion_rate_settling},
      {"printed one-round transition matrix at p=0.1 (1e-12)",
       criterion_printed_matrix},
      {"encoding-unitary basis table, unitarity, syndrome-trace identity",
       criterion_encoding_unitary},
      {"three-way oracle agreement on rep3 (1e-10)",
       criterion_oracle_equivalence},
      {"perfect recovery restores composability (20 random maps per code)",
       criterion_sufficiency},
      {"five-qubit weight-2 failure and leading-order rates",
       criterion_five_qubit_combinatorics},
      {"CPTP and projector suite (1e-10 / 1e-12)", criterion_cptp_suite},
  };

  int failures = 0;
  int idx = 0;
  for (const Entry& entry : entries) {
    ++idx;
    Criterion result = entry.fn();
    if (result.ok) {
      std::printf("PASS criterion %d: %s -- %s\n", idx, entry.name,
                  result.detail.c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %d: %s -- %s\n", idx, entry.name,
                  result.detail.c_str());
    }
    std::fflush(stdout);
  }
  if (failures) {
    std::printf("%d of 9 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
