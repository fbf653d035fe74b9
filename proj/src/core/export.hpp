#pragma once

#include <string>
#include <vector>

#include "core/experiments.hpp"
#include "core/markov.hpp"

namespace qecnm {

/// Shortest decimal form that round-trips through a double.
std::string format_double(double v);

/// Decay CSV: a `# code=<name> p=<p> fingerprint=<hex>` header line, a
/// column header `m,q_m,eps_m,abs_delta_eps`, then one row per round index.
/// Cells without a defined value (rates at the last rounds, vanishing q)
/// stay empty.
std::string decay_csv(const DecayRecord& rec, const std::string& code_name,
                      const std::string& fingerprint);

struct ParsedDecayCsv {
  std::string code_name;
  std::string fingerprint;
  DecayRecord record;
};
/// Inverse of decay_csv; throws ParseError on malformed input.
ParsedDecayCsv parse_decay_csv(const std::string& text);

std::string channel_to_json(const Channel& chan);
Channel channel_from_json(const std::string& text);
std::string operator_to_json(const Mat& op);

std::string transition_matrix_to_json(const TransitionMatrix& tm);
std::string eigenvalues_csv(const SpectralSummary& summary);

std::string graph_to_dot(const LabeledGraph& graph, const std::string& name);
std::string graph_to_json(const LabeledGraph& graph);

/// Encoding-unitary mapping table: columns logical,syndrome,encoded_state,
/// one row per (logical, syndrome) input basis state in logical-major
/// order. Basis-vector columns render as single kets; anything else as an
/// amplitude sum.
std::string encoding_unitary_csv(const StabilizerCode& code);

std::string theorem_report_to_json(const TheoremReport& report,
                                   const StabilizerCode& code, double p);
std::string leading_order_to_csv(const LeadingOrderReport& report);
std::string leading_order_to_json(const LeadingOrderReport& report);

struct SvgSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Standalone SVG with one panel per series group; y may be log scaled.
/// Non-finite values (and non-positive ones under log scale) are skipped.
std::string svg_line_chart(const std::string& title,
                           const std::vector<SvgSeries>& series, bool log_y);

/// Three-panel decay chart (polarization, error rate, |rate change|)
/// mirroring the repeated-extraction figures.
std::string decay_svg(const DecayRecord& rec, const std::string& code_name,
                      bool log_y);

}  // namespace qecnm
