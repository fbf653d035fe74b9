#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>

#include "core/errors.hpp"

namespace qecnm {

/// An n-qubit Pauli operator in symplectic (x|z) form with an exact
/// power-of-i phase. The operator equals i^phase() times the tensor product
/// of single-qubit factors from {I, X, Y, Z}; qubit 0 is the leftmost
/// character of the string form. All instances are immutable values.
///
/// Internally the phase is tracked against the X-Z normal form
/// i^a * prod_q X^x_q Z^z_q, which makes group multiplication a pair of XORs
/// plus a mod-4 counter. The public phase() converts back to the string
/// convention (Y = i XZ contributes one power of i per Y factor).
class Pauli {
 public:
  static constexpr std::size_t kMaxQubits = 64;
  static constexpr std::size_t kMaxDenseQubits = 6;

  /// Identity on n qubits.
  explicit Pauli(std::size_t n);

  /// Parses an optional sign prefix ("+", "-", "i", "-i") followed by n
  /// characters from {I,X,Y,Z}. Throws ParseError with the offending
  /// position on any other input.
  static Pauli parse(std::string_view text);

  /// Single-qubit X/Y/Z ('X','Y','Z') embedded at `qubit` in an n-qubit
  /// identity string.
  static Pauli single(std::size_t n, std::size_t qubit, char kind);

  std::size_t num_qubits() const { return n_; }
  bool x_bit(std::size_t q) const { return (x_ >> q) & 1u; }
  bool z_bit(std::size_t q) const { return (z_ >> q) & 1u; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }

  /// Phase exponent in {0,1,2,3}: the operator is i^phase() * string form.
  int phase() const;
  bool is_hermitian() const {
    int p = phase();
    return p == 0 || p == 2;
  }
  /// True when the letter part is all-identity (any phase).
  bool is_identity_string() const { return (x_ | z_) == 0; }
  /// True for exactly +1 * I...I.
  bool is_identity() const { return is_identity_string() && xz_phase_ == 0; }

  /// Number of qubits acted on non-trivially.
  int weight() const;

  /// Hermitian adjoint; equals the inverse since Paulis are unitary.
  Pauli adjoint() const;

  /// This operator multiplied by i^m.
  Pauli times_i_power(int m) const;

  /// Sign prefix ("", "i", "-", "-i") followed by the letter string.
  std::string str() const;

  /// Dense 2^n x 2^n matrix. Guarded by kMaxDenseQubits to avoid runaway
  /// allocation; throws CapacityError beyond it.
  Eigen::MatrixXcd dense() const;

  friend Pauli mul(const Pauli& a, const Pauli& b);
  friend bool commutes(const Pauli& a, const Pauli& b);
  Pauli operator*(const Pauli& o) const { return mul(*this, o); }
  bool operator==(const Pauli&) const = default;

 private:
  Pauli(std::size_t n, std::uint64_t x, std::uint64_t z, std::uint8_t xz_phase)
      : n_(n), x_(x), z_(z), xz_phase_(xz_phase) {}

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  std::uint8_t xz_phase_ = 0;  // power of i against the X-Z normal form
};

/// Exact group product a*b, including the power-of-i phase.
Pauli mul(const Pauli& a, const Pauli& b);

/// True iff a and b commute (symplectic inner product is even).
bool commutes(const Pauli& a, const Pauli& b);

}  // namespace qecnm
