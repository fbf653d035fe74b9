#include "core/code.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qecnm {

namespace {

// 2n-bit symplectic vector of a Pauli's letter part, split in x/z halves.
struct SympVec {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  bool zero() const { return x == 0 && z == 0; }
  SympVec operator^(const SympVec& o) const { return {x ^ o.x, z ^ o.z}; }
};

SympVec symp(const Pauli& p) { return {p.x_bits(), p.z_bits()}; }

// Row space of symplectic vectors kept in echelon form, with each stored
// row tagged by the combination of original rows it came from. Supports
// rank queries and membership tests with coefficient recovery.
class SympSpan {
 public:
  // Returns false if v was already in the span (v does not increase rank).
  bool add(SympVec v, std::uint64_t tag) {
    reduce(v, tag);
    if (v.zero()) return false;
    rows_.push_back({v, tag});
    return true;
  }

  // Reduces v by the stored rows; if it reaches zero, v was in the span and
  // tag accumulates the combination used.
  bool contains(SympVec v, std::uint64_t* tag_out = nullptr) const {
    std::uint64_t tag = 0;
    reduce(v, tag);
    if (tag_out) *tag_out = tag;
    return v.zero();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(SympVec& v, std::uint64_t& tag) const {
    for (const auto& [row, row_tag] : rows_) {
      std::uint64_t lead_x = row.x & -row.x;
      // Eliminate against the row's leading bit (x half first, then z).
      if (row.x != 0) {
        if (v.x & lead_x) {
          v = v ^ row;
          tag ^= row_tag;
        }
      } else {
        std::uint64_t lead_z = row.z & -row.z;
        if (v.z & lead_z) {
          v = v ^ row;
          tag ^= row_tag;
        }
      }
    }
  }

  std::vector<std::pair<SympVec, std::uint64_t>> rows_;
};

// Solves <v, c_i> = rhs_i over GF(2) for up to 64 right-hand sides at once.
// The coefficient row of constraint c against the unknown (v.x | v.z) is
// (c.z | c.x). Returns one solution per system (free variables zero).
class SympSolver {
 public:
  explicit SympSolver(std::size_t n) : n_(n) {}

  void add_constraint(const Pauli& c, std::uint64_t rhs_bits) {
    rows_.push_back({symp(c).z, symp(c).x, rhs_bits});
  }

  std::vector<SympVec> solve(std::size_t num_systems) const {
    auto rows = rows_;
    std::vector<int> pivot_col(rows.size(), -1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < 2 * n_ && r < rows.size(); ++col) {
      std::size_t pr = r;
      while (pr < rows.size() && !bit(rows[pr], col)) ++pr;
      if (pr == rows.size()) continue;
      std::swap(rows[pr], rows[r]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != r && bit(rows[i], col)) {
          rows[i].lo ^= rows[r].lo;
          rows[i].hi ^= rows[r].hi;
          rows[i].rhs ^= rows[r].rhs;
        }
      }
      pivot_col[r] = static_cast<int>(col);
      ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i].rhs != 0) {
        throw ValidationError(
            "inconsistent symplectic constraint system (operators are not "
            "independent)");
      }
    }
    std::vector<SympVec> out(num_systems);
    for (std::size_t s = 0; s < num_systems; ++s) {
      for (std::size_t i = 0; i < r; ++i) {
        if ((rows[i].rhs >> s) & 1u) {
          std::size_t col = static_cast<std::size_t>(pivot_col[i]);
          if (col < n_) {
            out[s].x |= std::uint64_t{1} << col;
          } else {
            out[s].z |= std::uint64_t{1} << (col - n_);
          }
        }
      }
    }
    return out;
  }

 private:
  struct Row {
    std::uint64_t lo, hi, rhs;
  };
  bool bit(const Row& row, std::size_t col) const {
    return col < 64 ? (row.lo >> col) & 1u : (row.hi >> (col - 64)) & 1u;
  }

  std::size_t n_;
  std::vector<Row> rows_;
};

Pauli pauli_from_masks(std::size_t n, std::uint64_t x, std::uint64_t z) {
  std::string s;
  s.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return Pauli::parse(s);
}

void require_hermitian(const Pauli& p, const std::string& role) {
  if (!p.is_hermitian()) {
    throw ValidationError(role + " '" + p.str() +
                          "' is not Hermitian (phase must be +1 or -1)");
  }
}

constexpr std::size_t kMaxSynthesisQubits = 12;

}  // namespace

Syndrome::Syndrome(std::uint32_t index, std::size_t length)
    : index_(index), length_(length) {
  if (length == 0 || length > 32) {
    throw DimensionError("syndrome length must be in [1, 32]");
  }
  if (length < 32 && index >= (std::uint32_t{1} << length)) {
    throw DimensionError("syndrome index out of range for length " +
                         std::to_string(length));
  }
}

Syndrome Syndrome::parse(std::string_view bits) {
  if (bits.empty() || bits.size() > 32) {
    throw ParseError("syndrome must have between 1 and 32 bits", 0);
  }
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw ParseError(std::string("invalid syndrome bit '") + bits[i] + "'",
                       i);
    }
    idx = (idx << 1) | (bits[i] == '1' ? 1u : 0u);
  }
  return Syndrome(idx, bits.size());
}

int Syndrome::weight() const { return std::popcount(index_); }

std::string Syndrome::str() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (bit(i)) out[i] = '1';
  }
  return out;
}

Syndrome Syndrome::operator^(const Syndrome& o) const {
  if (length_ != o.length_) {
    throw DimensionError("syndrome length mismatch");
  }
  return Syndrome(index_ ^ o.index_, length_);
}

StabilizerCode StabilizerCode::make(std::size_t n, std::size_t k,
                                    std::vector<Pauli> generators,
                                    std::vector<Pauli> logical_z,
                                    std::vector<Pauli> logical_x,
                                    std::vector<Pauli> corrections,
                                    std::optional<int> distance,
                                    std::string name) {
  if (n == 0 || n > Pauli::kMaxQubits) {
    throw ValidationError("data qubit count must be in [1, 64]");
  }
  if (k == 0 || k >= n) {
    throw ValidationError("logical qubit count must satisfy 1 <= k < n");
  }
  std::size_t m = n - k;
  if (m > 20) {
    throw CapacityError("correction tables beyond 2^20 syndromes unsupported");
  }
  if (generators.size() != m) {
    throw ValidationError("expected " + std::to_string(m) +
                          " stabilizer generators, got " +
                          std::to_string(generators.size()));
  }
  if (logical_z.size() != k) {
    throw ValidationError("expected " + std::to_string(k) +
                          " logical_z operators, got " +
                          std::to_string(logical_z.size()));
  }
  auto check_width = [n](const Pauli& p, const std::string& role) {
    if (p.num_qubits() != n) {
      throw ValidationError(role + " '" + p.str() + "' acts on " +
                            std::to_string(p.num_qubits()) +
                            " qubits, expected " + std::to_string(n));
    }
  };

  // Generators: Hermitian, non-identity, pairwise commuting, independent.
  SympSpan gen_span;
  for (std::size_t i = 0; i < m; ++i) {
    check_width(generators[i], "generator " + std::to_string(i));
    require_hermitian(generators[i], "generator " + std::to_string(i));
    if (generators[i].is_identity_string()) {
      throw ValidationError("generator " + std::to_string(i) +
                            " is (plus or minus) the identity");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(generators[i], generators[j])) {
        throw ValidationError("generators " + std::to_string(j) + " and " +
                              std::to_string(i) + " anticommute");
      }
    }
    if (!gen_span.add(symp(generators[i]), std::uint64_t{1} << i)) {
      throw ValidationError("generator " + std::to_string(i) +
                            " is dependent on earlier generators");
    }
  }

  // Logical Z operators.
  for (std::size_t i = 0; i < k; ++i) {
    check_width(logical_z[i], "logical_z " + std::to_string(i));
    require_hermitian(logical_z[i], "logical_z " + std::to_string(i));
    for (std::size_t g = 0; g < m; ++g) {
      if (!commutes(logical_z[i], generators[g])) {
        throw ValidationError("logical_z " + std::to_string(i) +
                              " anticommutes with generator " +
                              std::to_string(g));
      }
    }
    if (gen_span.contains(symp(logical_z[i]))) {
      throw ValidationError("logical_z " + std::to_string(i) +
                            " lies in the stabilizer group");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(logical_z[i], logical_z[j])) {
        throw ValidationError("logical_z operators " + std::to_string(j) +
                              " and " + std::to_string(i) + " anticommute");
      }
    }
  }

  // Logical X operators: validate if given, otherwise synthesize one per
  // logical qubit from the symplectic constraints.
  if (!logical_x.empty() && logical_x.size() != k) {
    throw ValidationError("expected " + std::to_string(k) +
                          " logical_x operators, got " +
                          std::to_string(logical_x.size()));
  }
  if (logical_x.empty()) {
    for (std::size_t i = 0; i < k; ++i) {
      SympSolver solver(n);
      for (const auto& g : generators) solver.add_constraint(g, 0);
      for (std::size_t j = 0; j < k; ++j) {
        solver.add_constraint(logical_z[j], j == i ? 1 : 0);
      }
      for (const auto& lx : logical_x) solver.add_constraint(lx, 0);
      SympVec v = solver.solve(1)[0];
      logical_x.push_back(pauli_from_masks(n, v.x, v.z));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    check_width(logical_x[i], "logical_x " + std::to_string(i));
    require_hermitian(logical_x[i], "logical_x " + std::to_string(i));
    for (std::size_t g = 0; g < m; ++g) {
      if (!commutes(logical_x[i], generators[g])) {
        throw ValidationError("logical_x " + std::to_string(i) +
                              " anticommutes with generator " +
                              std::to_string(g));
      }
    }
    if (gen_span.contains(symp(logical_x[i]))) {
      throw ValidationError("logical_x " + std::to_string(i) +
                            " lies in the stabilizer group");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(logical_x[i], logical_x[j])) {
        throw ValidationError("logical_x operators " + std::to_string(j) +
                              " and " + std::to_string(i) + " anticommute");
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      bool anti = !commutes(logical_z[j], logical_x[i]);
      if (anti != (i == j)) {
        throw ValidationError("logical_z " + std::to_string(j) +
                              " and logical_x " + std::to_string(i) +
                              (anti ? " anticommute" : " commute") +
                              " but should " + (i == j ? "anticommute" : "commute"));
      }
    }
  }

  // Destabilizers: D_j anticommutes with generator j and commutes with the
  // other generators and the logical operators.
  std::vector<Pauli> destabilizers;
  {
    SympSolver solver(n);
    for (std::size_t g = 0; g < m; ++g) {
      solver.add_constraint(generators[g], std::uint64_t{1} << g);
    }
    for (const auto& lz : logical_z) solver.add_constraint(lz, 0);
    for (const auto& lx : logical_x) solver.add_constraint(lx, 0);
    for (const SympVec& v : solver.solve(m)) {
      destabilizers.push_back(pauli_from_masks(n, v.x, v.z));
    }
  }

  StabilizerCode code;
  code.n_ = n;
  code.k_ = k;
  code.generators_ = std::move(generators);
  code.logical_z_ = std::move(logical_z);
  code.logical_x_ = std::move(logical_x);
  code.destabilizers_ = std::move(destabilizers);
  code.distance_ = distance;
  code.name_ = std::move(name);
  if (distance && *distance < 1) {
    throw ValidationError("declared distance must be positive");
  }

  std::size_t table = std::size_t{1} << m;
  if (corrections.empty()) {
    if (n > kMaxSynthesisQubits) {
      throw CapacityError("correction synthesis limited to " +
                          std::to_string(kMaxSynthesisQubits) + " qubits");
    }
    // Fill each syndrome with the minimum-weight Pauli, breaking ties by
    // lexicographic order of the string form. The depth-first enumeration
    // below visits strings of a fixed weight in exactly that order ('I'
    // sorts before 'X' < 'Y' < 'Z').
    corrections.assign(table, Pauli(n));
    std::vector<bool> filled(table, false);
    filled[0] = true;  // weight-0 string is the identity with syndrome 0
    std::size_t remaining = table - 1;
    std::uint64_t xm = 0, zm = 0;
    auto dfs = [&](auto&& self, std::size_t q, int wleft) -> void {
      if (remaining == 0) return;
      if (q == code.n_) {
        if (wleft != 0) return;
        Pauli p = pauli_from_masks(code.n_, xm, zm);
        Syndrome s = code.syndrome_of(p);
        if (!filled[s.index()]) {
          filled[s.index()] = true;
          corrections[s.index()] = p;
          --remaining;
        }
        return;
      }
      if (static_cast<int>(code.n_ - q) < wleft) return;
      std::uint64_t bit = std::uint64_t{1} << q;
      self(self, q + 1, wleft);  // 'I'
      if (wleft > 0) {
        xm |= bit;
        self(self, q + 1, wleft - 1);  // 'X'
        zm |= bit;
        self(self, q + 1, wleft - 1);  // 'Y'
        xm &= ~bit;
        self(self, q + 1, wleft - 1);  // 'Z'
        zm &= ~bit;
      }
    };
    for (int w = 1; w <= static_cast<int>(n) && remaining > 0; ++w) {
      dfs(dfs, 0, w);
    }
    if (remaining != 0) {
      throw ValidationError("failed to synthesize a complete correction table");
    }
  } else {
    if (corrections.size() != table) {
      throw ValidationError("correction table has " +
                            std::to_string(corrections.size()) +
                            " entries, expected " + std::to_string(table));
    }
    for (std::size_t idx = 0; idx < table; ++idx) {
      Syndrome s(static_cast<std::uint32_t>(idx), m);
      check_width(corrections[idx], "correction for syndrome " + s.str());
      require_hermitian(corrections[idx],
                        "correction for syndrome " + s.str());
      Syndrome actual = code.syndrome_of(corrections[idx]);
      if (actual != s) {
        throw ValidationError("correction '" + corrections[idx].str() +
                              "' for syndrome " + s.str() + " has syndrome " +
                              actual.str());
      }
    }
    if (!corrections[0].is_identity()) {
      throw ValidationError(
          "the correction for the all-zero syndrome must be the identity");
    }
  }
  code.corrections_ = std::move(corrections);
  return code;
}

StabilizerCode StabilizerCode::rep3() {
  return make(3, 1, {Pauli::parse("ZZI"), Pauli::parse("IZZ")},
              {Pauli::parse("ZZZ")}, {Pauli::parse("XXX")},
              {Pauli::parse("III"), Pauli::parse("IIX"), Pauli::parse("XII"),
               Pauli::parse("IXI")},
              3, "rep3");
}

StabilizerCode StabilizerCode::five_qubit() {
  return make(5, 1,
              {Pauli::parse("ZZXIX"), Pauli::parse("XZZXI"),
               Pauli::parse("IXZZX"), Pauli::parse("XIXZZ")},
              {Pauli::parse("-XIZIX")}, {Pauli::parse("XXXXX")}, {}, 3,
              "five-qubit");
}

Syndrome StabilizerCode::syndrome_of(const Pauli& p) const {
  if (p.num_qubits() != n_) {
    throw DimensionError("operator acts on " + std::to_string(p.num_qubits()) +
                         " qubits but the code has " + std::to_string(n_));
  }
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < num_generators(); ++i) {
    idx = (idx << 1) | (commutes(p, generators_[i]) ? 0u : 1u);
  }
  return Syndrome(idx, num_generators());
}

std::pair<Pauli, Pauli> StabilizerCode::decompose(const Pauli& p) const {
  Syndrome s = syndrome_of(p);
  const Pauli& corr = corrections_[s.index()];
  return {mul(p, corr.adjoint()), corr};
}

bool StabilizerCode::in_stabilizer_span(const Pauli& p) const {
  SympSpan span;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    span.add(symp(generators_[i]), std::uint64_t{1} << i);
  }
  return span.contains(symp(p));
}

Pauli StabilizerCode::logical_pauli_of(const Pauli& l) const {
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    if (!commutes(l, generators_[g])) {
      throw DomainError("operator '" + l.str() +
                        "' is outside the normalizer (anticommutes with "
                        "generator " +
                        std::to_string(g) + ")");
    }
  }
  // Build the n-qubit representative and the k-qubit label from the same
  // ordered product of logical factors, so that rep E = E label holds
  // exactly. The leftover l * rep^-1 is then a stabilizer up to a sign,
  // which carries over to the label.
  Pauli rep(n_);
  Pauli label(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    bool xi = !commutes(l, logical_z_[i]);
    bool zi = !commutes(l, logical_x_[i]);
    if (xi) {
      rep = mul(rep, logical_x_[i]);
      label = mul(label, Pauli::single(k_, i, 'X'));
    }
    if (zi) {
      rep = mul(rep, logical_z_[i]);
      label = mul(label, Pauli::single(k_, i, 'Z'));
    }
  }
  Pauli residual = mul(l, rep.adjoint());
  SympSpan span;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    span.add(symp(generators_[i]), std::uint64_t{1} << i);
  }
  std::uint64_t combo = 0;
  if (!span.contains(symp(residual), &combo)) {
    throw ValidationError("internal error: residual of '" + l.str() +
                          "' is not a stabilizer");
  }
  Pauli canon(n_);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if ((combo >> i) & 1u) canon = mul(canon, generators_[i]);
  }
  int eta = (residual.phase() - canon.phase()) & 3;
  return label.times_i_power(eta);
}

UncorrectablePair StabilizerCode::find_uncorrectable_pair() const {
  std::size_t table = num_syndromes();
  for (std::size_t i = 0; i < table; ++i) {
    for (std::size_t j = i + 1; j < table; ++j) {
      Pauli product = mul(corrections_[i], corrections_[j]);
      auto [logical, corr] = decompose(product);
      if (!in_stabilizer_span(logical)) {
        return {Syndrome(static_cast<std::uint32_t>(i), num_generators()),
                Syndrome(static_cast<std::uint32_t>(j), num_generators()),
                logical};
      }
    }
  }
  throw SearchExhaustedError(
      "no pair of corrections combines into an uncorrectable error (distance "
      "below 3 or inconsistent corrections)");
}

StabilizerCode StabilizerCode::parse(std::string_view text) {
  std::optional<std::size_t> n, k;
  std::optional<int> d;
  std::vector<Pauli> gens, lz, lx;
  std::vector<std::pair<Syndrome, Pauli>> corr_lines;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ValidationError("line " + std::to_string(lineno) + ": " + msg);
  };
  auto parse_pauli_checked = [&](const std::string& tok) -> Pauli {
    try {
      return Pauli::parse(tok);
    } catch (const ParseError& e) {
      fail(std::string("bad Pauli string '") + tok + "': " + e.what());
      throw;  // unreachable
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    std::string a, b, extra;
    if (key == "n" || key == "k" || key == "d") {
      if (!(ls >> a) || (ls >> extra)) fail("expected exactly one integer");
      std::size_t val = 0;
      try {
        val = std::stoul(a);
      } catch (...) {
        fail("bad integer '" + a + "'");
      }
      if (key == "n") n = val;
      if (key == "k") k = val;
      if (key == "d") d = static_cast<int>(val);
    } else if (key == "stabilizer" || key == "logical_z" ||
               key == "logical_x") {
      if (!(ls >> a) || (ls >> extra)) fail("expected exactly one Pauli string");
      Pauli p = parse_pauli_checked(a);
      if (key == "stabilizer") gens.push_back(p);
      if (key == "logical_z") lz.push_back(p);
      if (key == "logical_x") lx.push_back(p);
    } else if (key == "correction") {
      if (!(ls >> a >> b) || (ls >> extra)) {
        fail("expected '<syndrome-bits> <pauli-string>'");
      }
      try {
        corr_lines.emplace_back(Syndrome::parse(a), parse_pauli_checked(b));
      } catch (const ParseError& e) {
        fail(std::string("bad syndrome '") + a + "': " + e.what());
      }
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!n || !k) {
    throw ValidationError("code definition must declare both n and k");
  }
  std::vector<Pauli> corrections;
  if (!corr_lines.empty()) {
    std::size_t m = *n - *k;
    if (*k >= *n) throw ValidationError("k must be smaller than n");
    std::size_t table = std::size_t{1} << m;
    if (corr_lines.size() != table) {
      throw ValidationError("correction table has " +
                            std::to_string(corr_lines.size()) +
                            " entries but must be complete (" +
                            std::to_string(table) + ")");
    }
    corrections.assign(table, Pauli(*n));
    std::vector<bool> seen(table, false);
    for (auto& [s, p] : corr_lines) {
      if (s.length() != m) {
        throw ValidationError("correction syndrome '" + s.str() +
                              "' has wrong length");
      }
      if (seen[s.index()]) {
        throw ValidationError("duplicate correction for syndrome " + s.str());
      }
      seen[s.index()] = true;
      corrections[s.index()] = p;
    }
  }
  return make(*n, *k, std::move(gens), std::move(lz), std::move(lx),
              std::move(corrections), d);
}

std::string StabilizerCode::canonical_text() const {
  std::ostringstream out;
  out << "n " << n_ << "\n";
  out << "k " << k_ << "\n";
  if (distance_) out << "d " << *distance_ << "\n";
  for (const auto& g : generators_) out << "stabilizer " << g.str() << "\n";
  for (const auto& z : logical_z_) out << "logical_z " << z.str() << "\n";
  for (const auto& x : logical_x_) out << "logical_x " << x.str() << "\n";
  for (std::size_t idx = 0; idx < corrections_.size(); ++idx) {
    Syndrome s(static_cast<std::uint32_t>(idx), num_generators());
    out << "correction " << s.str() << " " << corrections_[idx].str() << "\n";
  }
  return out.str();
}

std::string StabilizerCode::fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace qecnm
