#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace ttp {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex square matrix of dimension 2, 4 or 8 (one to three qubits).
///
/// Storage is a fixed inline array, so matrices are cheap value types with no
/// heap traffic. Row-major.
class CMatrix {
 public:
  static constexpr int kMaxDim = 8;

  explicit CMatrix(int dim);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(int dim);
  static CMatrix diagonal(std::span<const double> diag);
  static CMatrix outer(std::span<const Complex> ket);

  int dim() const { return dim_; }

  Complex& operator()(int r, int c) { return data_[r * kMaxDim + c]; }
  const Complex& operator()(int r, int c) const { return data_[r * kMaxDim + c]; }

  CMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;
  double hermiticity_error() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  int dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

double max_abs_diff(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out qubits 1 and 2 of an 8x8 operator, leaving qubit 3.
/// Linear, so it is also used on unnormalized operators.
CMatrix partial_trace_first_two(const CMatrix& m);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // orthonormal columns, same order as values
};

/// Cyclic complex Jacobi. Throws "expected Hermitian" on input that is not
/// Hermitian within 1e-10.
EigenSystem hermitian_eigen(const CMatrix& m);

/// e^{scale*m} split as exp(log_scale) * matrix, where matrix has largest
/// eigenvalue exactly 1. Callers that normalize afterwards can drop log_scale.
struct ShiftedExponential {
  CMatrix matrix;
  double log_scale;

  CMatrix value() const;
};

ShiftedExponential expm_hermitian_shifted(const CMatrix& m, double scale);
CMatrix expm_hermitian(const CMatrix& m, double scale);

struct DensityCheck {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const;
};

DensityCheck check_density(const CMatrix& m);

/// Hermitian, unit-trace, positive-semidefinite matrix. Construction validates.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kMinEigenvalue = -1e-10;

  /// Throws ttp::Error if any invariant is violated.
  static DensityMatrix from_matrix(const CMatrix& m);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(std::span<const Complex> ket);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  explicit DensityMatrix(const CMatrix& m) : m_(m) {}
  CMatrix m_;
};

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix partial_trace_first_two(const DensityMatrix& rho);

/// alpha^2 |0> weight and relative phase gamma: a = sqrt(alpha_sq),
/// b = sqrt(1 - alpha_sq) e^{i gamma}.
class PureQubit {
 public:
  PureQubit(double alpha_sq, double gamma);

  double alpha_sq() const { return alpha_sq_; }
  double gamma() const { return gamma_; }
  std::array<Complex, 2> ket() const;
  CMatrix projector() const;
  DensityMatrix density() const;

 private:
  double alpha_sq_;
  double gamma_;
};

}  // namespace ttp
