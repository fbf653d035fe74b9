#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/channels.hpp"

namespace qecnm {

/// Per-round polarization data for a repeated noisy-QEC experiment.
/// q has rounds+1 entries (q[0] = 1 before any noisy round); eps has
/// `rounds` entries with eps[m] = (1 - q[m+1]/q[m]) / 2, NaN where q[m]
/// vanishes; delta_eps_abs[m] = |eps[m+1] - eps[m]|.
struct DecayRecord {
  double p = 0.0;
  int rounds = 0;
  std::vector<double> q;
  std::vector<double> eps;
  std::vector<double> delta_eps_abs;
};

struct ComposabilityReport {
  Channel lhs;       // retraction of the composed physical maps
  Channel rhs;       // composition of the individual retractions
  double distance;   // max-abs entrywise difference
  bool violated;     // distance > kComposabilityThreshold
};

inline constexpr double kComposabilityThreshold = 1e-10;

struct TheoremReport {
  bool violated;
  Channel logical_channel;            // retraction of two noisy rounds
  std::vector<double> pauli_probs;    // its Pauli error probabilities
  double distance;                    // vs. the squared one-round retraction
  UncorrectablePair witness;
};

struct LeadingOrderRow {
  double p;
  double one_minus_q2;
  double predicted;                // leading-order combinatorial estimate
  std::optional<double> ratio;     // measured / predicted; empty at p = 0
};

struct LeadingOrderReport {
  std::vector<LeadingOrderRow> rows;
  /// Fraction of distinct weight-1 syndrome pairs whose correction product
  /// has an X- or Y-type logical component (affects the Z polarization).
  double logical_xy_fraction;
  int pair_count;
};

/// Polarization after m rounds of noisy syndrome extraction, emulated with
/// the two physical initializations |0bar> and |1bar> and combined as
/// (<Zbar>_0 - <Zbar>_1)/2. Requires k = 1.
DecayRecord polarization_sequence(const StabilizerCode& code, double p,
                                  int rounds);

/// Independent brute-force oracle for the repetition code: simulates the
/// 3 data + 2 ancilla register through the syndrome-extraction circuit
/// (CNOTs, ancilla bitflip with probability p, measurement, conditioned
/// correction), m noisy rounds plus a terminal perfect round. Returns
/// q_1..q_m alongside q_0 = 1.
std::vector<double> circuit_oracle_rep3(double p, int rounds);

ComposabilityReport composability_check(const StabilizerCode& code,
                                        const Channel& g_a, const Channel& g_b);

/// Checks the two-round composability violation for a noisy recovery built
/// from chi. Requires declared distance >= 3 and a strictly positive chi.
TheoremReport verify_theorem1(const StabilizerCode& code,
                              const ConfusionMatrix& chi);

/// Compares 1 - q_2 against the leading-order prediction
/// 2 * m * (m-1) * f * p^2, with m the ancilla count and f the logical
/// X/Y fraction of distinct weight-1 syndrome error pairs.
LeadingOrderReport leading_order_report(const StabilizerCode& code,
                                        const std::vector<double>& p_list);

/// Random CPTP map on a register of the given dimension via a Haar-ish
/// random isometry into a doubled register. Deterministic for a fixed rng
/// state.
Channel random_cptp(std::size_t dim, std::uint64_t seed);

}  // namespace qecnm
