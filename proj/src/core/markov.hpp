#pragma once

#include <complex>
#include <string>
#include <vector>

#include "core/channels.hpp"

namespace qecnm {

/// Column-stochastic matrix of transition probabilities between
/// computational basis states; entry (row=out, col=in).
struct TransitionMatrix {
  std::vector<std::string> states;
  RealMat m;
};

enum class StateOrdering {
  kSyndromeGrouped,   // group by syndrome, decoded-0 state first (paper order)
  kBinaryAscending,
};

struct SpectralSummary {
  std::vector<std::complex<double>> eigenvalues;  // sorted by modulus, desc
  double second_largest_modulus;
  /// Implied asymptotic per-round polarization decay factor (the modulus of
  /// the subdominant eigenvalue; the stationary eigenvalue 1 carries no
  /// polarization).
  double asymptotic_rate;
};

struct GraphNode {
  std::string state;
  int logical_bit;
  std::string syndrome;
};

struct GraphEdge {
  std::string from;
  std::string to;
  std::string pattern;  // ancilla error pattern label
  double probability;
};

struct LabeledGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

/// True iff the channel maps every computational basis state to a state
/// that is diagonal in the computational basis (off-diagonal leakage below
/// tol). Gates the validity of the stochastic picture.
bool classicality_check(const Channel& chan, double tol = 1e-10);

/// Basis-state labels in the requested order. Syndrome-grouped ordering
/// lists, per syndrome, the states decoding to logical 0..2^k-1; it
/// requires the encoding unitary to permute basis states.
std::vector<std::string> state_labels(const StabilizerCode& code,
                                      StateOrdering ordering);

/// Transition matrix of a classical channel over computational basis
/// states, T[out][in] = Tr(|out><out| chan(|in><in|)). Throws DomainError
/// when classicality_check fails.
TransitionMatrix transition_matrix(
    const StabilizerCode& code, const Channel& chan,
    StateOrdering ordering = StateOrdering::kSyndromeGrouped);

/// Recovery conditioned on the ancilla error pattern e, with the pattern
/// probability divided out so the map is trace preserving on its own:
/// rho -> sum_s R(s ^ e) Pi_s rho Pi_s R(s ^ e). The convex combination
/// over patterns with bitflip weights reproduces the noisy recovery map.
Channel conditional_recovery(const StabilizerCode& code, const Syndrome& e);

SpectralSummary spectral_summary(const TransitionMatrix& tm);

/// State-transition graph of one noisy QEC round: one node per basis state
/// annotated with (decoded logical bit, syndrome), one edge per node and
/// error pattern, weighted by the pattern probability at this p.
LabeledGraph cube_graph(const StabilizerCode& code, double p);

}  // namespace qecnm
