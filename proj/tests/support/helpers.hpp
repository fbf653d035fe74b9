#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using Mat = Eigen::MatrixXcd;

// Independent Kronecker-product oracle: expands a signed Pauli string to a
// dense matrix without touching the library's symplectic representation.
inline Mat dense_from_string(const std::string& text) {
  std::complex<double> phase(1.0, 0.0);
  std::size_t pos = 0;
  if (text.rfind("-i", 0) == 0) {
    phase = {0.0, -1.0};
    pos = 2;
  } else if (text.rfind("-", 0) == 0) {
    phase = {-1.0, 0.0};
    pos = 1;
  } else if (text.rfind("i", 0) == 0) {
    phase = {0.0, 1.0};
    pos = 1;
  } else if (text.rfind("+", 0) == 0) {
    pos = 1;
  }
  Mat out = Mat::Identity(1, 1);
  for (std::size_t idx = text.size(); idx-- > pos;) {
    Mat f(2, 2);
    switch (text[idx]) {
      case 'I':
        f << 1, 0, 0, 1;
        break;
      case 'X':
        f << 0, 1, 1, 0;
        break;
      case 'Y':
        f << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
        break;
      case 'Z':
        f << 1, 0, 0, -1;
        break;
      default:
        throw std::runtime_error("bad test Pauli string");
    }
    Mat next(out.rows() * 2, out.cols() * 2);
    next.topLeftCorner(out.rows(), out.cols()) = f(0, 0) * out;
    next.topRightCorner(out.rows(), out.cols()) = f(0, 1) * out;
    next.bottomLeftCorner(out.rows(), out.cols()) = f(1, 0) * out;
    next.bottomRightCorner(out.rows(), out.cols()) = f(1, 1) * out;
    out.swap(next);
  }
  return phase * out;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline std::string random_pauli_string(std::mt19937_64& rng, std::size_t n,
                                       bool with_sign = true) {
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  static const char* kSigns[4] = {"", "i", "-", "-i"};
  std::string s = with_sign ? kSigns[rng() % 4] : "";
  for (std::size_t q = 0; q < n; ++q) s += kLetters[rng() % 4];
  return s;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double dn = static_cast<double>(n);
  double cov = sxy - sx * sy / dn;
  double varx = sxx - sx * sx / dn;
  double vary = syy - sy * sy / dn;
  LinearFit fit;
  fit.slope = cov / varx;
  fit.intercept = (sy - fit.slope * sx) / dn;
  fit.r2 = vary > 0 ? (cov * cov) / (varx * vary) : 1.0;
  return fit;
}

}  // namespace testsupport
