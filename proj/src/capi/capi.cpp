#include "qecnm/qecnm.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "core/channels.hpp"
#include "core/code.hpp"
#include "core/experiments.hpp"
#include "core/export.hpp"
#include "core/markov.hpp"

struct qecnm_code {
  qecnm::StabilizerCode code;
};

struct qecnm_channel {
  qecnm::Channel chan;
};

namespace {

thread_local std::string g_last_error = "ok";

template <typename F>
qecnm_status guarded(F&& f) {
  try {
    f();
    g_last_error = "ok";
    return QECNM_OK;
  } catch (const qecnm::DimensionError& e) {
    g_last_error = e.what();
    return QECNM_ERR_DIMENSION;
  } catch (const qecnm::CapacityError& e) {
    g_last_error = e.what();
    return QECNM_ERR_CAPACITY;
  } catch (const qecnm::ParseError& e) {
    g_last_error = e.what();
    return QECNM_ERR_PARSE;
  } catch (const qecnm::ValidationError& e) {
    g_last_error = e.what();
    return QECNM_ERR_VALIDATION;
  } catch (const qecnm::DomainError& e) {
    g_last_error = e.what();
    return QECNM_ERR_DOMAIN;
  } catch (const qecnm::UnsupportedError& e) {
    g_last_error = e.what();
    return QECNM_ERR_UNSUPPORTED;
  } catch (const qecnm::SearchExhaustedError& e) {
    g_last_error = e.what();
    return QECNM_ERR_SEARCH_EXHAUSTED;
  } catch (const qecnm::IoError& e) {
    g_last_error = e.what();
    return QECNM_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QECNM_ERR_INTERNAL;
  }
}

qecnm_status invalid(const char* what) {
  g_last_error = what;
  return QECNM_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qecnm_status write_buf(const std::string& s, char* buf, size_t buflen) {
  if (buflen < s.size() + 1) {
    return invalid("output buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return QECNM_OK;
}

qecnm_status make_code(qecnm_code** out, qecnm::StabilizerCode code) {
  *out = new qecnm_code{std::move(code)};
  return QECNM_OK;
}

}  // namespace

extern "C" {

const char* qecnm_last_error(void) { return g_last_error.c_str(); }

void qecnm_string_free(char* s) { delete[] s; }

qecnm_status qecnm_code_rep3(qecnm_code** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { make_code(out, qecnm::StabilizerCode::rep3()); });
}

qecnm_status qecnm_code_five_qubit(qecnm_code** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { make_code(out, qecnm::StabilizerCode::five_qubit()); });
}

qecnm_status qecnm_code_parse(const char* text, qecnm_code** out) {
  if (!text || !out) return invalid("text/out is null");
  return guarded([&] { make_code(out, qecnm::StabilizerCode::parse(text)); });
}

qecnm_status qecnm_code_load(const char* path, qecnm_code** out) {
  if (!path || !out) return invalid("path/out is null");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) {
      throw qecnm::IoError(std::string("cannot open code file '") + path +
                           "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    make_code(out, qecnm::StabilizerCode::parse(text.str()));
  });
}

void qecnm_code_free(qecnm_code* code) { delete code; }

size_t qecnm_code_n(const qecnm_code* code) { return code ? code->code.n() : 0; }
size_t qecnm_code_k(const qecnm_code* code) { return code ? code->code.k() : 0; }

int qecnm_code_distance(const qecnm_code* code) {
  if (!code || !code->code.declared_distance()) return -1;
  return *code->code.declared_distance();
}

size_t qecnm_code_num_syndromes(const qecnm_code* code) {
  return code ? code->code.num_syndromes() : 0;
}

qecnm_status qecnm_code_syndrome_of(const qecnm_code* code, const char* pauli,
                                    char* buf, size_t buflen) {
  if (!code || !pauli || !buf) return invalid("argument is null");
  return guarded([&] {
    qecnm::Syndrome s = code->code.syndrome_of(qecnm::Pauli::parse(pauli));
    if (write_buf(s.str(), buf, buflen) != QECNM_OK) {
      throw qecnm::CapacityError("output buffer too small");
    }
  });
}

qecnm_status qecnm_code_correction(const qecnm_code* code,
                                   const char* syndrome, char* buf,
                                   size_t buflen) {
  if (!code || !syndrome || !buf) return invalid("argument is null");
  return guarded([&] {
    qecnm::Syndrome s = qecnm::Syndrome::parse(syndrome);
    if (s.length() != code->code.num_generators()) {
      throw qecnm::DimensionError("syndrome length does not match the code");
    }
    if (write_buf(code->code.correction(s).str(), buf, buflen) != QECNM_OK) {
      throw qecnm::CapacityError("output buffer too small");
    }
  });
}

qecnm_status qecnm_code_fingerprint(const qecnm_code* code, char* buf,
                                    size_t buflen) {
  if (!code || !buf) return invalid("argument is null");
  return write_buf(code->code.fingerprint(), buf, buflen);
}

qecnm_status qecnm_code_canonical_text(const qecnm_code* code, char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] { *out = dup_string(code->code.canonical_text()); });
}

qecnm_status qecnm_recovery(const qecnm_code* code, qecnm_channel** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded(
      [&] { *out = new qecnm_channel{qecnm::recovery_map(code->code)}; });
}

qecnm_status qecnm_noisy_recovery(const qecnm_code* code, double p,
                                  qecnm_channel** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    *out = new qecnm_channel{qecnm::noisy_recovery_map(
        code->code, qecnm::bitflip_confusion(code->code, p))};
  });
}

qecnm_status qecnm_conditional_recovery(const qecnm_code* code,
                                        const char* pattern,
                                        qecnm_channel** out) {
  if (!code || !pattern || !out) return invalid("argument is null");
  return guarded([&] {
    *out = new qecnm_channel{qecnm::conditional_recovery(
        code->code, qecnm::Syndrome::parse(pattern))};
  });
}

qecnm_status qecnm_encoding(const qecnm_code* code, qecnm_channel** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded(
      [&] { *out = new qecnm_channel{qecnm::encoding_operation(code->code)}; });
}

qecnm_status qecnm_decoding(const qecnm_code* code, qecnm_channel** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded(
      [&] { *out = new qecnm_channel{qecnm::decoding_operation(code->code)}; });
}

qecnm_status qecnm_compose(const qecnm_channel* after,
                           const qecnm_channel* before, qecnm_channel** out) {
  if (!after || !before || !out) return invalid("argument is null");
  return guarded([&] {
    *out = new qecnm_channel{qecnm::compose(after->chan, before->chan)};
  });
}

qecnm_status qecnm_retraction(const qecnm_code* code,
                              const qecnm_channel* lambda,
                              qecnm_channel** out) {
  if (!code || !lambda || !out) return invalid("argument is null");
  return guarded([&] {
    *out = new qecnm_channel{qecnm::gadget_retraction(code->code,
                                                      lambda->chan)};
  });
}

void qecnm_channel_free(qecnm_channel* chan) { delete chan; }

size_t qecnm_channel_in_dim(const qecnm_channel* chan) {
  return chan ? chan->chan.in_dim() : 0;
}

size_t qecnm_channel_out_dim(const qecnm_channel* chan) {
  return chan ? chan->chan.out_dim() : 0;
}

qecnm_status qecnm_channel_entries(const qecnm_channel* chan, double* re,
                                   double* im, size_t len) {
  if (!chan || !re || !im) return invalid("argument is null");
  const auto& m = chan->chan.matrix();
  if (len != static_cast<size_t>(m.size())) {
    return invalid("entry buffer length mismatch");
  }
  size_t idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, ++idx) {
      re[idx] = m(r, c).real();
      im[idx] = m(r, c).imag();
    }
  }
  return QECNM_OK;
}

qecnm_status qecnm_channel_to_json(const qecnm_channel* chan, char** out) {
  if (!chan || !out) return invalid("argument is null");
  return guarded([&] { *out = dup_string(qecnm::channel_to_json(chan->chan)); });
}

qecnm_status qecnm_channel_verify_cptp(const qecnm_channel* chan,
                                       double* tp_defect,
                                       double* choi_min_eig) {
  if (!chan) return invalid("argument is null");
  return guarded([&] {
    if (tp_defect) *tp_defect = chan->chan.trace_preservation_defect();
    if (choi_min_eig) *choi_min_eig = chan->chan.choi_min_eigenvalue();
  });
}

qecnm_status qecnm_channel_distance(const qecnm_channel* a,
                                    const qecnm_channel* b, double* out) {
  if (!a || !b || !out) return invalid("argument is null");
  return guarded([&] { *out = qecnm::max_abs_diff(a->chan, b->chan); });
}

qecnm_status qecnm_encoding_unitary_entries(const qecnm_code* code, double* re,
                                            double* im, size_t len) {
  if (!code || !re || !im) return invalid("argument is null");
  return guarded([&] {
    qecnm::Mat u = qecnm::encoding_unitary(code->code);
    if (len != static_cast<size_t>(u.size())) {
      throw qecnm::DimensionError("entry buffer length mismatch");
    }
    size_t idx = 0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c, ++idx) {
        re[idx] = u(r, c).real();
        im[idx] = u(r, c).imag();
      }
    }
  });
}

qecnm_status qecnm_encoding_unitary_csv(const qecnm_code* code, char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded(
      [&] { *out = dup_string(qecnm::encoding_unitary_csv(code->code)); });
}

qecnm_status qecnm_encoding_unitary_json(const qecnm_code* code, char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    *out = dup_string(
        qecnm::operator_to_json(qecnm::encoding_unitary(code->code)));
  });
}

qecnm_status qecnm_decay(const qecnm_code* code, double p, int rounds,
                         double* q, double* eps, double* deps) {
  if (!code) return invalid("argument is null");
  return guarded([&] {
    qecnm::DecayRecord rec = qecnm::polarization_sequence(code->code, p, rounds);
    auto copy_out = [](double* dst, const std::vector<double>& src) {
      if (dst && !src.empty()) {
        std::memcpy(dst, src.data(), src.size() * sizeof(double));
      }
    };
    copy_out(q, rec.q);
    copy_out(eps, rec.eps);
    copy_out(deps, rec.delta_eps_abs);
  });
}

qecnm_status qecnm_decay_csv(const qecnm_code* code, double p, int rounds,
                             char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    qecnm::DecayRecord rec = qecnm::polarization_sequence(code->code, p, rounds);
    *out = dup_string(qecnm::decay_csv(rec, code->code.name(),
                                       code->code.fingerprint()));
  });
}

qecnm_status qecnm_decay_svg(const qecnm_code* code, double p, int rounds,
                             int log_y, char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    qecnm::DecayRecord rec = qecnm::polarization_sequence(code->code, p, rounds);
    *out = dup_string(qecnm::decay_svg(rec, code->code.name(), log_y != 0));
  });
}

qecnm_status qecnm_circuit_oracle(double p, int rounds, double* q) {
  if (!q) return invalid("argument is null");
  return guarded([&] {
    std::vector<double> vals = qecnm::circuit_oracle_rep3(p, rounds);
    std::memcpy(q, vals.data(), vals.size() * sizeof(double));
  });
}

qecnm_status qecnm_verify_theorem1(const qecnm_code* code, double p,
                                   int* violated, double* distance,
                                   double* pauli_probs, size_t probs_len) {
  if (!code) return invalid("argument is null");
  return guarded([&] {
    qecnm::TheoremReport rep = qecnm::verify_theorem1(
        code->code, qecnm::bitflip_confusion(code->code, p));
    if (violated) *violated = rep.violated ? 1 : 0;
    if (distance) *distance = rep.distance;
    if (pauli_probs) {
      if (probs_len != rep.pauli_probs.size()) {
        throw qecnm::DimensionError("pauli_probs length must be 4^k");
      }
      std::memcpy(pauli_probs, rep.pauli_probs.data(),
                  rep.pauli_probs.size() * sizeof(double));
    }
  });
}

qecnm_status qecnm_verify_theorem1_json(const qecnm_code* code, double p,
                                        char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    qecnm::TheoremReport rep = qecnm::verify_theorem1(
        code->code, qecnm::bitflip_confusion(code->code, p));
    *out = dup_string(qecnm::theorem_report_to_json(rep, code->code, p));
  });
}

qecnm_status qecnm_composability_suite(const qecnm_code* code, int trials,
                                       unsigned long long seed,
                                       double* with_recovery_dist,
                                       double* raw_dist) {
  if (!code) return invalid("argument is null");
  if (trials < 1) return invalid("trials must be positive");
  return guarded([&] {
    const std::size_t dim = std::size_t{1} << code->code.n();
    qecnm::Channel recovery = qecnm::recovery_map(code->code);
    for (int t = 0; t < trials; ++t) {
      qecnm::Channel a = qecnm::random_cptp(dim, seed + 2 * t);
      qecnm::Channel b = qecnm::random_cptp(dim, seed + 2 * t + 1);
      if (with_recovery_dist) {
        qecnm::Channel ra = qecnm::compose(recovery, a);
        qecnm::Channel rb = qecnm::compose(recovery, b);
        with_recovery_dist[t] =
            qecnm::composability_check(code->code, ra, rb).distance;
      }
      if (raw_dist) {
        raw_dist[t] = qecnm::composability_check(code->code, a, b).distance;
      }
    }
  });
}

qecnm_status qecnm_composability_suite_json(const qecnm_code* code, int trials,
                                            unsigned long long seed,
                                            char** out) {
  if (!code || !out) return invalid("argument is null");
  if (trials < 1) return invalid("trials must be positive");
  std::vector<double> with_rec(trials), raw(trials);
  qecnm_status st =
      qecnm_composability_suite(code, trials, seed, with_rec.data(), raw.data());
  if (st != QECNM_OK) return st;
  return guarded([&] {
    nlohmann::json j;
    j["code"] = code->code.name().empty() ? code->code.fingerprint()
                                          : code->code.name();
    j["seed"] = seed;
    j["trials"] = trials;
    j["threshold"] = qecnm::kComposabilityThreshold;
    auto block = [](const std::vector<double>& d) {
      nlohmann::json b;
      b["distances"] = d;
      b["max_distance"] = *std::max_element(d.begin(), d.end());
      int v = 0;
      for (double x : d) {
        if (x > qecnm::kComposabilityThreshold) ++v;
      }
      b["violations"] = v;
      return b;
    };
    j["with_recovery"] = block(with_rec);
    j["raw"] = block(raw);
    *out = dup_string(j.dump(2));
  });
}

qecnm_status qecnm_leading_order_csv(const qecnm_code* code, const double* ps,
                                     size_t num_ps, char** out) {
  if (!code || !ps || !out) return invalid("argument is null");
  return guarded([&] {
    std::vector<double> plist(ps, ps + num_ps);
    *out = dup_string(
        qecnm::leading_order_to_csv(qecnm::leading_order_report(code->code, plist)));
  });
}

qecnm_status qecnm_leading_order_json(const qecnm_code* code, const double* ps,
                                      size_t num_ps, char** out) {
  if (!code || !ps || !out) return invalid("argument is null");
  return guarded([&] {
    std::vector<double> plist(ps, ps + num_ps);
    *out = dup_string(qecnm::leading_order_to_json(
        qecnm::leading_order_report(code->code, plist)));
  });
}

qecnm_status qecnm_classical(const qecnm_code* code, double p, int* out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    qecnm::Channel rt = qecnm::noisy_recovery_map(
        code->code, qecnm::bitflip_confusion(code->code, p));
    *out = qecnm::classicality_check(rt) ? 1 : 0;
  });
}

qecnm_status qecnm_transition_matrix(const qecnm_code* code, double p,
                                     char** labels, double* matrix,
                                     size_t len) {
  if (!code) return invalid("argument is null");
  return guarded([&] {
    qecnm::Channel rt = qecnm::noisy_recovery_map(
        code->code, qecnm::bitflip_confusion(code->code, p));
    qecnm::TransitionMatrix tm = qecnm::transition_matrix(code->code, rt);
    if (labels) {
      std::string joined;
      for (std::size_t i = 0; i < tm.states.size(); ++i) {
        if (i) joined += ",";
        joined += tm.states[i];
      }
      *labels = dup_string(joined);
    }
    if (matrix) {
      if (len != static_cast<size_t>(tm.m.size())) {
        throw qecnm::DimensionError("matrix buffer length mismatch");
      }
      size_t idx = 0;
      for (Eigen::Index r = 0; r < tm.m.rows(); ++r) {
        for (Eigen::Index c = 0; c < tm.m.cols(); ++c, ++idx) {
          matrix[idx] = tm.m(r, c);
        }
      }
    }
  });
}

qecnm_status qecnm_transition_matrix_json(const qecnm_code* code, double p,
                                          char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    qecnm::Channel rt = qecnm::noisy_recovery_map(
        code->code, qecnm::bitflip_confusion(code->code, p));
    *out = dup_string(qecnm::transition_matrix_to_json(
        qecnm::transition_matrix(code->code, rt)));
  });
}

qecnm_status qecnm_spectral_csv(const qecnm_code* code, double p, char** out,
                                double* second_largest_modulus,
                                double* asymptotic_rate) {
  if (!code) return invalid("argument is null");
  return guarded([&] {
    qecnm::Channel rt = qecnm::noisy_recovery_map(
        code->code, qecnm::bitflip_confusion(code->code, p));
    qecnm::SpectralSummary summary =
        qecnm::spectral_summary(qecnm::transition_matrix(code->code, rt));
    if (out) *out = dup_string(qecnm::eigenvalues_csv(summary));
    if (second_largest_modulus) {
      *second_largest_modulus = summary.second_largest_modulus;
    }
    if (asymptotic_rate) *asymptotic_rate = summary.asymptotic_rate;
  });
}

qecnm_status qecnm_cube_graph_dot(const qecnm_code* code, double p,
                                  char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    qecnm::LabeledGraph g = qecnm::cube_graph(code->code, p);
    std::string name = code->code.name().empty() ? "qec_round"
                                                 : code->code.name();
    for (char& c : name) {
      if (c == '-') c = '_';
    }
    *out = dup_string(qecnm::graph_to_dot(g, name));
  });
}

qecnm_status qecnm_cube_graph_json(const qecnm_code* code, double p,
                                   char** out) {
  if (!code || !out) return invalid("argument is null");
  return guarded([&] {
    *out = dup_string(qecnm::graph_to_json(qecnm::cube_graph(code->code, p)));
  });
}

}  // extern "C"
