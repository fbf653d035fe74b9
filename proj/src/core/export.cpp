#include "core/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace qecnm {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell(double v) { return std::isfinite(v) ? format_double(v) : ""; }

double parse_cell(const std::string& s, std::size_t lineno) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError("bad numeric cell '" + s + "'", lineno);
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string decay_csv(const DecayRecord& rec, const std::string& code_name,
                      const std::string& fingerprint) {
  std::ostringstream out;
  out << "# code=" << code_name << " p=" << format_double(rec.p)
      << " fingerprint=" << fingerprint << "\n";
  out << "m,q_m,eps_m,abs_delta_eps\n";
  for (int m = 0; m <= rec.rounds; ++m) {
    out << m << "," << cell(rec.q[m]) << ",";
    if (m < rec.rounds) out << cell(rec.eps[m]);
    out << ",";
    if (m + 1 < rec.rounds) out << cell(rec.delta_eps_abs[m]);
    out << "\n";
  }
  return out.str();
}

ParsedDecayCsv parse_decay_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line) || !line.starts_with("# code=")) {
    throw ParseError("missing decay CSV header line", 1);
  }
  ParsedDecayCsv parsed;
  {
    std::istringstream hs(line.substr(2));
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "code") parsed.code_name = val;
      if (key == "p") parsed.record.p = parse_cell(val, 1);
      if (key == "fingerprint") parsed.fingerprint = val;
    }
  }
  if (!std::getline(in, line) || line != "m,q_m,eps_m,abs_delta_eps") {
    throw ParseError("missing decay CSV column header", 2);
  }
  lineno = 2;
  std::vector<std::string> eps_cells, deps_cells;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != 4) {
      throw ParseError("expected 4 cells per row", lineno);
    }
    parsed.record.q.push_back(parse_cell(cells[1], lineno));
    eps_cells.push_back(cells[2]);
    deps_cells.push_back(cells[3]);
  }
  parsed.record.rounds = static_cast<int>(parsed.record.q.size()) - 1;
  for (int m = 0; m < parsed.record.rounds; ++m) {
    parsed.record.eps.push_back(
        eps_cells[m].empty() ? std::nan("") : parse_cell(eps_cells[m], 0));
  }
  for (int m = 0; m + 1 < parsed.record.rounds; ++m) {
    parsed.record.delta_eps_abs.push_back(
        deps_cells[m].empty() ? std::nan("") : parse_cell(deps_cells[m], 0));
  }
  return parsed;
}

namespace {

json matrix_entries(const Mat& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return entries;
}

}  // namespace

std::string channel_to_json(const Channel& chan) {
  json j;
  j["in_dim"] = chan.in_dim();
  j["out_dim"] = chan.out_dim();
  j["representation"] = "column-stacked";
  j["entries"] = matrix_entries(chan.matrix());
  return j.dump();
}

Channel channel_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("invalid channel JSON", 0);
  }
  if (!j.contains("in_dim") || !j.contains("out_dim") ||
      !j.contains("entries") ||
      j.value("representation", "") != "column-stacked") {
    throw ParseError("channel JSON missing required fields", 0);
  }
  std::size_t in_dim = j["in_dim"], out_dim = j["out_dim"];
  const auto& entries = j["entries"];
  Eigen::Index rows = static_cast<Eigen::Index>(out_dim * out_dim);
  Eigen::Index cols = static_cast<Eigen::Index>(in_dim * in_dim);
  if (entries.size() != static_cast<std::size_t>(rows * cols)) {
    throw ParseError("channel JSON entry count mismatch", 0);
  }
  Mat m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++idx) {
      m(r, c) = std::complex<double>(entries[idx][0], entries[idx][1]);
    }
  }
  return Channel(in_dim, out_dim, std::move(m));
}

std::string operator_to_json(const Mat& op) {
  json j;
  j["dim"] = op.rows();
  j["entries"] = matrix_entries(op);
  return j.dump();
}

std::string transition_matrix_to_json(const TransitionMatrix& tm) {
  json j;
  j["states"] = tm.states;
  json rows = json::array();
  for (Eigen::Index r = 0; r < tm.m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < tm.m.cols(); ++c) {
      row.push_back(tm.m(r, c));
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = rows;
  return j.dump();
}

std::string eigenvalues_csv(const SpectralSummary& summary) {
  std::ostringstream out;
  out << "index,re,im,modulus\n";
  for (std::size_t i = 0; i < summary.eigenvalues.size(); ++i) {
    const auto& ev = summary.eigenvalues[i];
    out << i << "," << format_double(ev.real()) << ","
        << format_double(ev.imag()) << "," << format_double(std::abs(ev))
        << "\n";
  }
  return out.str();
}

std::string graph_to_dot(const LabeledGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (const auto& node : graph.nodes) {
    out << "  \"" << node.state << "\" [label=\"|" << node.state
        << ">\\nlogical " << node.logical_bit << ", syndrome "
        << node.syndrome << "\"];\n";
  }
  for (const auto& edge : graph.edges) {
    out << "  \"" << edge.from << "\" -> \"" << edge.to << "\" [label=\"e="
        << edge.pattern << " p=" << format_double(edge.probability)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graph_to_json(const LabeledGraph& graph) {
  json j;
  json nodes = json::array();
  for (const auto& node : graph.nodes) {
    nodes.push_back({{"state", node.state},
                     {"logical", node.logical_bit},
                     {"syndrome", node.syndrome}});
  }
  json edges = json::array();
  for (const auto& edge : graph.edges) {
    edges.push_back({{"from", edge.from},
                     {"to", edge.to},
                     {"pattern", edge.pattern},
                     {"probability", edge.probability}});
  }
  j["nodes"] = nodes;
  j["edges"] = edges;
  return j.dump();
}

namespace {

std::string ket_of_column(const Mat& u, std::size_t col, std::size_t n) {
  auto bits = [n](std::size_t b) {
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
      if ((b >> (n - 1 - q)) & 1u) s[q] = '1';
    }
    return s;
  };
  // Single basis amplitude renders as a bare ket, otherwise emit the
  // amplitude sum.
  std::size_t support = 0;
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    if (std::abs(u(r, col)) > 1e-12) ++support;
  }
  std::ostringstream out;
  bool first = true;
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    std::complex<double> a = u(r, col);
    if (std::abs(a) <= 1e-12) continue;
    if (support == 1 && std::abs(a - 1.0) < 1e-9) {
      return "|" + bits(static_cast<std::size_t>(r)) + ">";
    }
    if (std::abs(a.imag()) < 1e-12) {
      double re = a.real();
      if (!first && re >= 0) out << "+";
      out << format_double(std::round(re * 1e9) / 1e9);
    } else {
      // Comma-free complex form keeps the CSV cells unquoted.
      if (!first) out << "+";
      out << "(" << format_double(a.real())
          << (a.imag() < 0 ? "" : "+") << format_double(a.imag()) << "i)";
    }
    out << "|" << bits(static_cast<std::size_t>(r)) << ">";
    first = false;
  }
  return out.str();
}

}  // namespace

std::string encoding_unitary_csv(const StabilizerCode& code) {
  Mat u = encoding_unitary(code);
  const std::size_t ldim = std::size_t{1} << code.k();
  std::ostringstream out;
  out << "logical,syndrome,encoded_state\n";
  for (std::size_t l = 0; l < ldim; ++l) {
    for (std::size_t s = 0; s < code.num_syndromes(); ++s) {
      Syndrome syn(static_cast<std::uint32_t>(s), code.num_generators());
      std::string lbits(code.k(), '0');
      for (std::size_t i = 0; i < code.k(); ++i) {
        if ((l >> (code.k() - 1 - i)) & 1u) lbits[i] = '1';
      }
      out << lbits << "," << syn.str() << ","
          << ket_of_column(u, s * ldim + l, code.n()) << "\n";
    }
  }
  return out.str();
}

std::string theorem_report_to_json(const TheoremReport& report,
                                   const StabilizerCode& code, double p) {
  json j;
  j["code"] = code.name().empty() ? code.fingerprint() : code.name();
  j["p"] = p;
  j["violated"] = report.violated;
  j["distance"] = report.distance;
  j["witness"] = {{"s1", report.witness.s1.str()},
                  {"s2", report.witness.s2.str()},
                  {"logical", report.witness.logical.str()},
                  {"logical_label",
                   code.logical_pauli_of(report.witness.logical).str()}};
  json probs = json::object();
  const std::size_t k = code.k();
  const std::size_t nb = report.pauli_probs.size();
  for (std::size_t a = 0; a < nb; ++a) {
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    std::string label(k, 'I');
    for (std::size_t q = 0; q < k; ++q) {
      label[q] = kLetters[(a >> (2 * (k - 1 - q))) & 3u];
    }
    probs[label] = report.pauli_probs[a];
  }
  j["pauli_error_probabilities"] = probs;
  j["two_round_channel"] =
      json::parse(channel_to_json(report.logical_channel));
  return j.dump(2);
}

std::string leading_order_to_csv(const LeadingOrderReport& report) {
  std::ostringstream out;
  out << "p,one_minus_q2,predicted,ratio\n";
  for (const auto& row : report.rows) {
    out << format_double(row.p) << "," << format_double(row.one_minus_q2)
        << "," << format_double(row.predicted) << ",";
    if (row.ratio) out << format_double(*row.ratio);
    out << "\n";
  }
  return out.str();
}

std::string leading_order_to_json(const LeadingOrderReport& report) {
  json j;
  j["logical_xy_fraction"] = report.logical_xy_fraction;
  j["pair_count"] = report.pair_count;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = {{"p", row.p},
              {"one_minus_q2", row.one_minus_q2},
              {"predicted", row.predicted}};
    if (row.ratio) {
      r["ratio"] = *row.ratio;
    } else {
      r["ratio"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  return j.dump(2);
}

namespace {

struct Panel {
  double x0, y0, w, h;  // plot area in page coordinates
};

void render_panel(std::ostringstream& out, const Panel& pn,
                  const SvgSeries& series, bool log_y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < series.xs.size(); ++i) {
    double y = series.ys[i];
    if (!std::isfinite(y)) continue;
    if (log_y) {
      if (y <= 0.0) continue;
      y = std::log10(y);
    }
    pts.emplace_back(series.xs[i], y);
  }
  char buf[160];
  auto put = [&](const char* fmt, double a, double b) {
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    out << buf;
  };
  out << "<g>\n";
  snprintf(buf, sizeof(buf),
           "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
           "fill=\"none\" stroke=\"black\"/>\n",
           pn.x0, pn.y0, pn.w, pn.h);
  out << buf;
  snprintf(buf, sizeof(buf),
           "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s%s</text>\n",
           pn.x0, pn.y0 - 6.0, series.label.c_str(),
           log_y ? " (log scale)" : "");
  out << buf;
  if (pts.empty()) {
    out << "</g>\n";
    return;
  }
  double xmin = pts.front().first, xmax = pts.front().first;
  double ymin = pts.front().second, ymax = pts.front().second;
  for (auto& [x, y] : pts) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  auto sx = [&](double x) { return pn.x0 + (x - xmin) / (xmax - xmin) * pn.w; };
  auto sy = [&](double y) {
    return pn.y0 + pn.h - (y - ymin) / (ymax - ymin) * pn.h;
  };
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
         "points=\"";
  for (auto& [x, y] : pts) put("%.2f,%.2f ", sx(x), sy(y));
  out << "\"/>\n";
  // Corner tick labels are enough for a diagnostic chart.
  snprintf(buf, sizeof(buf),
           "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\">%g</text>\n",
           pn.x0 - 4.0, pn.y0 + pn.h + 12.0, xmin);
  out << buf;
  snprintf(buf, sizeof(buf),
           "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\">%g</text>\n",
           pn.x0 + pn.w - 10.0, pn.y0 + pn.h + 12.0, xmax);
  out << buf;
  snprintf(buf, sizeof(buf),
           "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\" "
           "text-anchor=\"end\">%.3g</text>\n",
           pn.x0 - 4.0, pn.y0 + pn.h, log_y ? std::pow(10.0, ymin) : ymin);
  out << buf;
  snprintf(buf, sizeof(buf),
           "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\" "
           "text-anchor=\"end\">%.3g</text>\n",
           pn.x0 - 4.0, pn.y0 + 10.0, log_y ? std::pow(10.0, ymax) : ymax);
  out << buf;
  out << "</g>\n";
}

}  // namespace

std::string svg_line_chart(const std::string& title,
                           const std::vector<SvgSeries>& series, bool log_y) {
  const double width = 640.0;
  const double panel_h = 180.0, pad_top = 40.0, pad_between = 50.0;
  const double pad_left = 70.0, pad_right = 20.0;
  double height = pad_top + series.size() * (panel_h + pad_between);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<text x=\"" << pad_left << "\" y=\"20\" font-size=\"14\" "
      << "font-weight=\"bold\">" << title << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    Panel pn{pad_left, pad_top + i * (panel_h + pad_between),
             width - pad_left - pad_right, panel_h};
    render_panel(out, pn, series[i], log_y);
  }
  out << "</svg>\n";
  return out.str();
}

std::string decay_svg(const DecayRecord& rec, const std::string& code_name,
                      bool log_y) {
  SvgSeries q{"polarization q_m", {}, {}};
  for (int m = 0; m <= rec.rounds; ++m) {
    q.xs.push_back(m);
    q.ys.push_back(rec.q[m]);
  }
  SvgSeries eps{"error rate eps_m", {}, {}};
  for (int m = 0; m < rec.rounds; ++m) {
    eps.xs.push_back(m);
    eps.ys.push_back(rec.eps[m]);
  }
  SvgSeries deps{"|delta eps_m|", {}, {}};
  for (int m = 0; m + 1 < rec.rounds; ++m) {
    deps.xs.push_back(m);
    deps.ys.push_back(rec.delta_eps_abs[m]);
  }
  std::string title = "repeated noisy syndrome extraction: code=" + code_name +
                      " p=" + format_double(rec.p);
  return svg_line_chart(title, {q, eps, deps}, log_y);
}

}  // namespace qecnm
