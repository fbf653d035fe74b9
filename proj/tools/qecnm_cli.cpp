// Command-line frontend for the qecnm shared library. Talks to the core
// exclusively through the C API in qecnm/qecnm.h; everything here is
// argument handling, file placement and the run manifest.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qecnm/qecnm.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 2 config error, 3 capacity error, 4 invariant or
// validation failure.
struct CliError {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string& kind,
                       const std::string& message) {
  throw CliError{exit_code, kind, message};
}

void check(qecnm_status st, const std::string& context) {
  if (st == QECNM_OK) return;
  int exit_code = 4;
  std::string kind = "validation";
  switch (st) {
    case QECNM_ERR_INVALID_ARGUMENT:
    case QECNM_ERR_PARSE:
    case QECNM_ERR_IO:
      exit_code = 2;
      kind = "config";
      break;
    case QECNM_ERR_CAPACITY:
      exit_code = 3;
      kind = "capacity";
      break;
    case QECNM_ERR_DIMENSION:
    case QECNM_ERR_VALIDATION:
    case QECNM_ERR_DOMAIN:
    case QECNM_ERR_UNSUPPORTED:
    case QECNM_ERR_SEARCH_EXHAUSTED:
    default:
      exit_code = 4;
      kind = "validation";
      break;
  }
  fail(exit_code, kind, context + ": " + qecnm_last_error());
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { qecnm_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

struct CodeGuard {
  qecnm_code* code = nullptr;
  ~CodeGuard() { qecnm_code_free(code); }
};

void load_code(const std::string& spec, CodeGuard& guard) {
  if (spec == "rep3") {
    check(qecnm_code_rep3(&guard.code), "rep3");
  } else if (spec == "five-qubit") {
    check(qecnm_code_five_qubit(&guard.code), "five-qubit");
  } else {
    check(qecnm_code_load(spec.c_str(), &guard.code), spec);
  }
}

// Write via a temp file in the same directory, then rename into place.
void write_file(const fs::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(2, "config", "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path, ec);
  if (ec) fail(2, "config", "cannot rename into " + path.string());
  written.push_back(path.string());
}

std::string fingerprint_of(qecnm_code* code) {
  char buf[32];
  check(qecnm_code_fingerprint(code, buf, sizeof(buf)), "fingerprint");
  return buf;
}

struct Options {
  std::string command;
  std::string code = "rep3";
  std::vector<double> ps = {0.1};
  int rounds = 60;
  std::string output;
  std::vector<std::string> formats;
  unsigned long long seed = 1;
  bool log_y = false;
  int trials = 20;
};

fs::path output_prefix(const Options& opt) {
  std::string prefix = opt.output;
  if (prefix.empty()) {
    const char* dir = std::getenv("QECNM_OUTPUT_DIR");
    prefix = (dir && *dir) ? (fs::path(dir) / opt.command).string()
                           : opt.command;
  }
  return fs::path(prefix);
}

bool wants(const Options& opt, const std::string& fmt,
           const std::set<std::string>& defaults) {
  if (opt.formats.empty()) return defaults.count(fmt) > 0;
  for (const auto& f : opt.formats) {
    if (f == fmt) return true;
  }
  return false;
}

std::string fmt_p(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", p);
  return buf;
}

void emit_manifest(const Options& opt, qecnm_code* code,
                   const fs::path& prefix, std::vector<std::string>& written) {
  json j;
  j["command"] = opt.command;
  j["code"] = opt.code;
  j["code_fingerprint"] = fingerprint_of(code);
  j["p"] = opt.ps;
  j["rounds"] = opt.rounds;
  j["seed"] = opt.seed;
  j["log_y"] = opt.log_y;
  j["tolerances"] = {{"channel_equality", 1e-10},
                     {"trace_preservation", 1e-10},
                     {"choi_positivity", 1e-10}};
  j["outputs"] = written;
  write_file(prefix.string() + "_manifest.json", j.dump(2) + "\n", written);
}

void run_decay(const Options& opt, qecnm_code* code, const fs::path& prefix,
               std::vector<std::string>& written) {
  for (double p : opt.ps) {
    std::string suffix = opt.ps.size() > 1 ? "_p" + fmt_p(p) : "";
    if (wants(opt, "csv", {"csv", "svg", "json"})) {
      StringGuard csv;
      check(qecnm_decay_csv(code, p, opt.rounds, &csv.s), "decay");
      write_file(prefix.string() + suffix + "_decay.csv", csv.str(), written);
    }
    if (wants(opt, "svg", {"csv", "svg", "json"})) {
      StringGuard svg;
      check(qecnm_decay_svg(code, p, opt.rounds, opt.log_y ? 1 : 0, &svg.s),
            "decay svg");
      write_file(prefix.string() + suffix + "_decay.svg", svg.str(), written);
    }
  }
}

void run_composability(const Options& opt, qecnm_code* code,
                       const fs::path& prefix,
                       std::vector<std::string>& written) {
  StringGuard out;
  check(qecnm_composability_suite_json(code, opt.trials, opt.seed, &out.s),
        "composability");
  write_file(prefix.string() + "_composability.json", out.str() + "\n",
             written);
}

void run_theorem(const Options& opt, qecnm_code* code, const fs::path& prefix,
                 std::vector<std::string>& written) {
  for (double p : opt.ps) {
    std::string suffix = opt.ps.size() > 1 ? "_p" + fmt_p(p) : "";
    StringGuard out;
    check(qecnm_verify_theorem1_json(code, p, &out.s), "verify-theorem1");
    write_file(prefix.string() + suffix + "_theorem1.json", out.str() + "\n",
               written);
  }
}

void run_transition(const Options& opt, qecnm_code* code,
                    const fs::path& prefix,
                    std::vector<std::string>& written) {
  for (double p : opt.ps) {
    std::string suffix = opt.ps.size() > 1 ? "_p" + fmt_p(p) : "";
    if (wants(opt, "json", {"json", "csv"})) {
      StringGuard out;
      check(qecnm_transition_matrix_json(code, p, &out.s), "transition-matrix");
      write_file(prefix.string() + suffix + "_transition.json",
                 out.str() + "\n", written);
    }
    if (wants(opt, "csv", {"json", "csv"})) {
      StringGuard csv;
      check(qecnm_spectral_csv(code, p, &csv.s, nullptr, nullptr),
            "spectral csv");
      write_file(prefix.string() + suffix + "_eigenvalues.csv", csv.str(),
                 written);
    }
  }
}

void run_encoding_unitary(const Options& opt, qecnm_code* code,
                          const fs::path& prefix,
                          std::vector<std::string>& written) {
  if (wants(opt, "csv", {"csv"})) {
    StringGuard csv;
    check(qecnm_encoding_unitary_csv(code, &csv.s), "encoding-unitary");
    write_file(prefix.string() + "_encoding_unitary.csv", csv.str(), written);
  }
  if (wants(opt, "json", {"csv"})) {
    StringGuard json;
    check(qecnm_encoding_unitary_json(code, &json.s), "encoding-unitary");
    write_file(prefix.string() + "_encoding_unitary.json", json.str() + "\n",
               written);
  }
}

void run_cube_graph(const Options& opt, qecnm_code* code,
                    const fs::path& prefix,
                    std::vector<std::string>& written) {
  double p = opt.ps.front();
  if (wants(opt, "dot", {"dot", "json"})) {
    StringGuard dot;
    check(qecnm_cube_graph_dot(code, p, &dot.s), "cube-graph");
    write_file(prefix.string() + "_cube.dot", dot.str(), written);
  }
  if (wants(opt, "json", {"dot", "json"})) {
    StringGuard out;
    check(qecnm_cube_graph_json(code, p, &out.s), "cube-graph");
    write_file(prefix.string() + "_cube.json", out.str() + "\n", written);
  }
}

void run_leading_order(const Options& opt, qecnm_code* code,
                       const fs::path& prefix,
                       std::vector<std::string>& written) {
  if (wants(opt, "csv", {"csv", "json"})) {
    StringGuard csv;
    check(qecnm_leading_order_csv(code, opt.ps.data(), opt.ps.size(), &csv.s),
          "leading-order");
    write_file(prefix.string() + "_leading_order.csv", csv.str(), written);
  }
  if (wants(opt, "json", {"csv", "json"})) {
    StringGuard out;
    check(qecnm_leading_order_json(code, opt.ps.data(), opt.ps.size(), &out.s),
          "leading-order");
    write_file(prefix.string() + "_leading_order.json", out.str() + "\n",
               written);
  }
}

int run(const Options& opt) {
  for (double p : opt.ps) {
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(2, "config", "p must lie in [0, 1]");
    }
  }
  if (opt.rounds < 1) fail(2, "config", "rounds must be at least 1");

  CodeGuard code;
  load_code(opt.code, code);

  fs::path prefix = output_prefix(opt);
  std::vector<std::string> written;
  if (opt.command == "decay") {
    run_decay(opt, code.code, prefix, written);
  } else if (opt.command == "composability") {
    run_composability(opt, code.code, prefix, written);
  } else if (opt.command == "verify-theorem1") {
    run_theorem(opt, code.code, prefix, written);
  } else if (opt.command == "transition-matrix") {
    run_transition(opt, code.code, prefix, written);
  } else if (opt.command == "encoding-unitary") {
    run_encoding_unitary(opt, code.code, prefix, written);
  } else if (opt.command == "cube-graph") {
    run_cube_graph(opt, code.code, prefix, written);
  } else if (opt.command == "leading-order") {
    run_leading_order(opt, code.code, prefix, written);
  } else {
    fail(2, "config", "unknown command '" + opt.command + "'");
  }
  if (wants(opt, "json", {"json"}) || opt.formats.empty()) {
    emit_manifest(opt, code.code, prefix, written);
  }
  for (const auto& path : written) {
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logical-channel experiments on stabilizer QEC gadgets"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool with_rounds, bool with_seed) {
    sub->add_option("--code", opt.code,
                    "rep3, five-qubit, or a code-definition file path");
    sub->add_option("--p", opt.ps, "ancilla bitflip probability (repeatable)")
        ->expected(-1);
    if (with_rounds) {
      sub->add_option("--rounds", opt.rounds, "number of noisy rounds");
    }
    sub->add_option("--output", opt.output, "output path prefix");
    sub->add_option("--formats", opt.formats,
                    "subset of csv,json,dot,svg to emit")
        ->expected(-1);
    if (with_seed) {
      sub->add_option("--seed", opt.seed, "random-map seed");
    }
  };

  auto* decay = app.add_subcommand("decay", "polarization decay experiment");
  add_common(decay, true, false);
  decay->add_flag("--log-y", opt.log_y, "log-scale y axes in the SVG");

  auto* comp = app.add_subcommand(
      "composability", "random-CPTP logical gate composability suite");
  add_common(comp, false, true);
  comp->add_option("--trials", opt.trials, "number of random map pairs");

  add_common(app.add_subcommand("verify-theorem1",
                                "two-round composability violation"),
             false, false);
  add_common(app.add_subcommand("transition-matrix",
                                "stochastic picture of one noisy round"),
             false, false);
  add_common(app.add_subcommand("encoding-unitary",
                                "basis mapping table of the encoding unitary"),
             false, false);
  add_common(app.add_subcommand("cube-graph",
                                "state-transition graph of one noisy round"),
             false, false);
  add_common(app.add_subcommand("leading-order",
                                "small-p error-rate comparison"),
             false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error kind=config exit=2 msg=\"%s\"\n", e.what());
    return 2;
  }

  opt.command = app.get_subcommands().front()->get_name();
  try {
    return run(opt);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error kind=%s exit=%d msg=\"%s\"\n", e.kind.c_str(),
                 e.exit_code, e.message.c_str());
    return e.exit_code;
  }
}
