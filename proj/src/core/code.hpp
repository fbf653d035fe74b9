#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/pauli.hpp"

namespace qecnm {

/// Syndrome bit string of length n-k. Bit i belongs to generator i; the
/// string form lists bit 0 first. index() packs the bits big-endian (first
/// generator = most significant), which is also the ordering used for
/// correction tables, confusion matrices and the syndrome register.
class Syndrome {
 public:
  Syndrome(std::uint32_t index, std::size_t length);
  static Syndrome parse(std::string_view bits);

  std::uint32_t index() const { return index_; }
  std::size_t length() const { return length_; }
  bool bit(std::size_t i) const {
    return (index_ >> (length_ - 1 - i)) & 1u;
  }
  int weight() const;
  bool is_zero() const { return index_ == 0; }
  std::string str() const;

  Syndrome operator^(const Syndrome& o) const;
  bool operator==(const Syndrome&) const = default;

 private:
  std::uint32_t index_;
  std::size_t length_;
};

struct UncorrectablePair {
  Syndrome s1;
  Syndrome s2;
  Pauli logical;  // logical component of R(s1) R(s2), in N(S) \ S
};

/// An [[n,k,d]] stabilizer code together with a complete syndrome-to-
/// correction table. Construction validates the full set of invariants
/// (commuting independent generators, logical operator algebra,
/// destabilizer pattern, correction syndromes) and synthesizes whatever
/// optional pieces were not supplied. Immutable after construction.
class StabilizerCode {
 public:
  /// Builds and validates a code. `logical_x`, `destabilizers` and
  /// `corrections` may be empty, in which case they are synthesized:
  /// destabilizers by symplectic Gaussian elimination, corrections as the
  /// minimum-weight Pauli per syndrome (ties broken lexicographically on
  /// the string form). `corrections`, when given, must be complete and is
  /// indexed by syndrome index.
  static StabilizerCode make(std::size_t n, std::size_t k,
                             std::vector<Pauli> generators,
                             std::vector<Pauli> logical_z,
                             std::vector<Pauli> logical_x = {},
                             std::vector<Pauli> corrections = {},
                             std::optional<int> distance = std::nullopt,
                             std::string name = "");

  /// The [3,1,3] bit-flip repetition code: generators ZZI, IZZ, logical
  /// Z = ZZZ, logical X = XXX, corrections III/XII/IIX/IXI for syndromes
  /// 00/10/01/11.
  static StabilizerCode rep3();

  /// The [[5,1,3]] code with generators ZZXIX, XZZXI, IXZZX, XIXZZ,
  /// logical Z = -XIZIX and logical X = XXXXX. Every nonzero syndrome is
  /// corrected by the unique single-qubit Pauli that produces it.
  static StabilizerCode five_qubit();

  /// Parses the line-oriented code-definition format:
  ///   n <int>
  ///   k <int>
  ///   d <int>                          (optional)
  ///   stabilizer <pauli-string>        (n-k times)
  ///   logical_z <pauli-string>         (k times)
  ///   logical_x <pauli-string>         (k times, optional)
  ///   correction <syndrome-bits> <pauli-string>   (optional, complete)
  /// Lines starting with '#' are comments.
  static StabilizerCode parse(std::string_view text);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t num_generators() const { return n_ - k_; }
  std::size_t num_syndromes() const { return std::size_t{1} << (n_ - k_); }
  std::optional<int> declared_distance() const { return distance_; }
  const std::string& name() const { return name_; }

  const std::vector<Pauli>& generators() const { return generators_; }
  const std::vector<Pauli>& logical_z() const { return logical_z_; }
  const std::vector<Pauli>& logical_x() const { return logical_x_; }
  const std::vector<Pauli>& destabilizers() const { return destabilizers_; }
  const Pauli& correction(const Syndrome& s) const {
    return corrections_[s.index()];
  }
  const std::vector<Pauli>& corrections() const { return corrections_; }

  /// Bit i of the result is 1 iff p anticommutes with generator i.
  Syndrome syndrome_of(const Pauli& p) const;

  /// Splits p = logical * correction with the correction taken from the
  /// table at p's syndrome and the logical component in N(S). The product
  /// of the returned parts reproduces p exactly, phase included.
  std::pair<Pauli, Pauli> decompose(const Pauli& p) const;

  /// Maps an element of N(S) to the k-qubit Pauli labelling its coset in
  /// N(S)/S. The result P satisfies l E = E P exactly for the encoding
  /// isometry built from this code's logical operators (stabilizers map to
  /// the identity). Throws DomainError if l anticommutes with a generator.
  Pauli logical_pauli_of(const Pauli& l) const;

  /// True iff the letter part of p lies in the span of the generators
  /// (i.e. p is a stabilizer up to phase).
  bool in_stabilizer_span(const Pauli& p) const;

  /// Lexicographically first pair of distinct syndromes whose corrections
  /// multiply to an operator with a non-stabilizer logical component.
  /// Throws SearchExhaustedError when no such pair exists.
  UncorrectablePair find_uncorrectable_pair() const;

  /// Canonical code-definition text (used for fingerprinting and
  /// round-tripping through parse()).
  std::string canonical_text() const;

  /// FNV-1a hash of canonical_text(), as fixed-width hex.
  std::string fingerprint() const;

 private:
  StabilizerCode() = default;

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Pauli> generators_;
  std::vector<Pauli> logical_z_;
  std::vector<Pauli> logical_x_;
  std::vector<Pauli> destabilizers_;
  std::vector<Pauli> corrections_;
  std::optional<int> distance_;
  std::string name_;
};

}  // namespace qecnm
