#include "ttp/densmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ttp {
namespace {

bool supported_dim(int dim) { return dim == 2 || dim == 4 || dim == 8; }

void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch");
}

constexpr double kJacobiTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kHermitianInputTol = 1e-10;

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

CMatrix::CMatrix(int dim) : dim_(dim) {
  if (!supported_dim(dim)) throw Error("unsupported dimension");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : CMatrix(static_cast<int>(rows.size())) {
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_) throw Error("matrix must be square");
    int c = 0;
    for (const auto& v : row) (*this)(r, c++) = v;
    ++r;
  }
}

CMatrix CMatrix::identity(int dim) {
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> ket) {
  CMatrix m(static_cast<int>(ket.size()));
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
  return m;
}

double CMatrix::hermiticity_error() const {
  double e = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return e;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_dim(*this, o);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) += o(r, c);
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_dim(*this, o);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) -= o(r, c);
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b);
  const int n = a.dim();
  CMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (int c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b);
  return (a - b).max_abs();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const int n = a.dim() * b.dim();
  if (n > CMatrix::kMaxDim) throw Error("unsupported dimension");
  CMatrix m(n);
  for (int ar = 0; ar < a.dim(); ++ar)
    for (int ac = 0; ac < a.dim(); ++ac) {
      const Complex s = a(ar, ac);
      for (int br = 0; br < b.dim(); ++br)
        for (int bc = 0; bc < b.dim(); ++bc)
          m(ar * b.dim() + br, ac * b.dim() + bc) = s * b(br, bc);
    }
  return m;
}

CMatrix partial_trace_first_two(const CMatrix& m) {
  if (m.dim() != 8) throw Error("partial trace expects an 8x8 operator");
  CMatrix out(2);
  for (int k = 0; k < 4; ++k)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(r, c) += m(2 * k + r, 2 * k + c);
  return out;
}

namespace pauli {
CMatrix identity() { return CMatrix::identity(2); }
CMatrix x() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix y() { return CMatrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
CMatrix z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

EigenSystem hermitian_eigen(const CMatrix& input) {
  if (input.hermiticity_error() > kHermitianInputTol) throw Error("expected Hermitian");
  const int n = input.dim();
  CMatrix a = input;
  CMatrix v = CMatrix::identity(n);
  for (int i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double scale = std::max(1.0, frobenius_norm(a));
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiTol * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // Phase rotation makes a(p,q) real, then a real Jacobi rotation
        // zeroes it. G is the combined 2x2 unitary on columns p,q.
        const Complex phase = std::conj(apq) / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex gpp = c, gpq = s;
        const Complex gqp = -s * phase, gqq = c * phase;

        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem es{std::vector<double>(n), CMatrix(n)};
  for (int i = 0; i < n; ++i) {
    es.values[i] = a(order[i], order[i]).real();
    for (int k = 0; k < n; ++k) es.vectors(k, i) = v(k, order[i]);
  }
  return es;
}

CMatrix ShiftedExponential::value() const { return matrix * Complex(std::exp(log_scale)); }

ShiftedExponential expm_hermitian_shifted(const CMatrix& m, double scale) {
  const EigenSystem es = hermitian_eigen(m);
  const int n = m.dim();
  double top = scale * es.values.front();
  for (double lam : es.values) top = std::max(top, scale * lam);
  CMatrix out(n);
  for (int i = 0; i < n; ++i) {
    const double w = std::exp(scale * es.values[i] - top);
    for (int r = 0; r < n; ++r) {
      const Complex vr = es.vectors(r, i) * w;
      for (int c = 0; c < n; ++c) out(r, c) += vr * std::conj(es.vectors(c, i));
    }
  }
  return {out, top};
}

CMatrix expm_hermitian(const CMatrix& m, double scale) {
  return expm_hermitian_shifted(m, scale).value();
}

bool DensityCheck::ok() const {
  return hermiticity_error <= DensityMatrix::kHermiticityTol &&
         trace_error <= DensityMatrix::kTraceTol &&
         min_eigenvalue >= DensityMatrix::kMinEigenvalue;
}

DensityCheck check_density(const CMatrix& m) {
  DensityCheck chk;
  chk.hermiticity_error = m.hermiticity_error();
  chk.trace_error = std::abs(m.trace() - 1.0);
  if (chk.hermiticity_error <= kHermitianInputTol)
    chk.min_eigenvalue = hermitian_eigen(m).values.front();
  else
    chk.min_eigenvalue = -std::numeric_limits<double>::infinity();
  return chk;
}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m) {
  const DensityCheck chk = check_density(m);
  if (chk.hermiticity_error > kHermiticityTol) throw Error("density matrix is not Hermitian");
  if (chk.trace_error > kTraceTol) throw Error("density matrix does not have unit trace");
  if (chk.min_eigenvalue < kMinEigenvalue)
    throw Error("density matrix is not positive semidefinite");
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(CMatrix::identity(dim) * Complex(1.0 / dim));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
  double norm = 0.0;
  for (const auto& x : ket) norm += std::norm(x);
  if (std::abs(norm - 1.0) > kTraceTol) throw Error("state vector is not normalized");
  return DensityMatrix(CMatrix::outer(ket));
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace_first_two(const DensityMatrix& rho) {
  return DensityMatrix::from_matrix(partial_trace_first_two(rho.matrix()));
}

PureQubit::PureQubit(double alpha_sq, double gamma) : alpha_sq_(alpha_sq), gamma_(gamma) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) throw Error("alpha_sq must lie in [0, 1]");
  if (!std::isfinite(gamma)) throw Error("gamma must be finite");
}

std::array<Complex, 2> PureQubit::ket() const {
  return {Complex(std::sqrt(alpha_sq_)), std::polar(std::sqrt(1.0 - alpha_sq_), gamma_)};
}

CMatrix PureQubit::projector() const {
  const auto k = ket();
  return CMatrix::outer(k);
}

DensityMatrix PureQubit::density() const {
  const auto k = ket();
  return DensityMatrix::pure(k);
}

}  // namespace ttp
