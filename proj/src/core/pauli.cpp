#include "core/pauli.hpp"

#include <bit>
#include <complex>

namespace qecnm {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

void check_size(std::size_t n) {
  if (n == 0) {
    throw DimensionError("Pauli operator needs at least one qubit");
  }
  if (n > Pauli::kMaxQubits) {
    throw CapacityError("Pauli operator limited to " +
                        std::to_string(Pauli::kMaxQubits) + " qubits, got " +
                        std::to_string(n));
  }
}

}  // namespace

Pauli::Pauli(std::size_t n) : n_(n) { check_size(n); }

Pauli Pauli::parse(std::string_view text) {
  std::size_t pos = 0;
  std::uint8_t prefix = 0;
  if (text.starts_with("-i")) {
    prefix = 3;
    pos = 2;
  } else if (text.starts_with("-")) {
    prefix = 2;
    pos = 1;
  } else if (text.starts_with("i")) {
    prefix = 1;
    pos = 1;
  } else if (text.starts_with("+")) {
    pos = 1;
  }
  if (pos >= text.size()) {
    throw ParseError("expected Pauli characters after sign prefix", pos);
  }
  std::size_t n = text.size() - pos;
  check_size(n);

  std::uint64_t x = 0, z = 0;
  int y_count = 0;
  for (std::size_t q = 0; q < n; ++q) {
    switch (text[pos + q]) {
      case 'I':
        break;
      case 'X':
        x |= std::uint64_t{1} << q;
        break;
      case 'Y':
        x |= std::uint64_t{1} << q;
        z |= std::uint64_t{1} << q;
        ++y_count;
        break;
      case 'Z':
        z |= std::uint64_t{1} << q;
        break;
      default:
        throw ParseError(std::string("invalid Pauli character '") +
                             text[pos + q] + "'",
                         pos + q);
    }
  }
  return Pauli(n, x, z, static_cast<std::uint8_t>((prefix + y_count) & 3));
}

Pauli Pauli::single(std::size_t n, std::size_t qubit, char kind) {
  check_size(n);
  if (qubit >= n) {
    throw DimensionError("qubit index out of range");
  }
  Pauli p(n);
  std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (kind) {
    case 'X':
      p.x_ = bit;
      break;
    case 'Y':
      p.x_ = bit;
      p.z_ = bit;
      p.xz_phase_ = 1;
      break;
    case 'Z':
      p.z_ = bit;
      break;
    default:
      throw DomainError(std::string("unknown Pauli kind '") + kind + "'");
  }
  return p;
}

int Pauli::phase() const {
  int y_count = std::popcount(x_ & z_);
  return (static_cast<int>(xz_phase_) - y_count) & 3;
}

int Pauli::weight() const { return std::popcount(x_ | z_); }

Pauli Pauli::adjoint() const {
  // (i^a prod X^x Z^z)^dag = i^-a prod Z^z X^x; moving each Z past the X on
  // the same qubit costs (-1)^(x z).
  std::uint8_t ph = static_cast<std::uint8_t>(
      (-static_cast<int>(xz_phase_) + 2 * parity64(x_ & z_)) & 3);
  return Pauli(n_, x_, z_, ph);
}

Pauli Pauli::times_i_power(int m) const {
  return Pauli(n_, x_, z_,
               static_cast<std::uint8_t>((static_cast<int>(xz_phase_) + m) & 3));
}

std::string Pauli::str() const {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string out = kPrefix[phase()];
  out.reserve(out.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) {
    bool x = x_bit(q), z = z_bit(q);
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return out;
}

Eigen::MatrixXcd Pauli::dense() const {
  if (n_ > kMaxDenseQubits) {
    throw CapacityError("dense expansion limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits, got " +
                        std::to_string(n_));
  }
  // Kronecker chain of the X^x Z^z factors; qubit 0 is the most significant
  // factor so that basis index b0 b1 ... reads left to right. Qubits are
  // folded in from the right to keep each step a plain 2x2-outer kron.
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t qi = n_; qi-- > 0;) {
    std::size_t q = qi;
    Eigen::Matrix2cd f;
    bool x = x_bit(q), z = z_bit(q);
    if (x && z) {
      f << 0, -1, 1, 0;  // X*Z = -iY
    } else if (x) {
      f << 0, 1, 1, 0;
    } else if (z) {
      f << 1, 0, 0, -1;
    } else {
      f << 1, 0, 0, 1;
    }
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    next.topLeftCorner(out.rows(), out.cols()) = f(0, 0) * out;
    next.topRightCorner(out.rows(), out.cols()) = f(0, 1) * out;
    next.bottomLeftCorner(out.rows(), out.cols()) = f(1, 0) * out;
    next.bottomRightCorner(out.rows(), out.cols()) = f(1, 1) * out;
    out.swap(next);
  }
  std::complex<double> ph(1.0, 0.0);
  for (int i = 0; i < xz_phase_; ++i) ph *= kI;
  return ph * out;
}

Pauli mul(const Pauli& a, const Pauli& b) {
  if (a.n_ != b.n_) {
    throw DimensionError("Pauli product of " + std::to_string(a.n_) + " and " +
                         std::to_string(b.n_) + " qubit operators");
  }
  // Moving a's Z factors past b's X factors gives (-1)^<a.z, b.x>.
  std::uint8_t ph = static_cast<std::uint8_t>(
      (a.xz_phase_ + b.xz_phase_ + 2 * parity64(a.z_ & b.x_)) & 3);
  return Pauli(a.n_, a.x_ ^ b.x_, a.z_ ^ b.z_, ph);
}

bool commutes(const Pauli& a, const Pauli& b) {
  if (a.n_ != b.n_) {
    throw DimensionError("commutation test between " + std::to_string(a.n_) +
                         " and " + std::to_string(b.n_) + " qubit operators");
  }
  return (parity64(a.x_ & b.z_) ^ parity64(a.z_ & b.x_)) == 0;
}

}  // namespace qecnm
