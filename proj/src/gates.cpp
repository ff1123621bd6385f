#include "projlab/gates.hpp"

#include <cmath>
#include <numbers>

namespace projlab::gates {

Matrix identity(long dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double a = 1.0 / std::sqrt(2.0);
  m << a, a, a, -a;
  return m;
}

Matrix phase_s() {
  Matrix m(2, 2);
  m << 1, 0, 0, Complex(0, 1);
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Matrix swap_registers(long dim) {
  Matrix m = Matrix::Zero(dim * dim, dim * dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) {
      m(j * dim + i, i * dim + j) = 1;
    }
  }
  return m;
}

Matrix qft(long r) {
  Matrix m(r, r);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r));
  for (long j = 0; j < r; ++j) {
    for (long k = 0; k < r; ++k) {
      double phase = 2.0 * std::numbers::pi * j * k / r;
      m(j, k) = scale * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return m;
}

Matrix iqft(long r) { return qft(r).adjoint(); }

Matrix ztilde(long r) {
  Matrix m = Matrix::Zero(r, r);
  for (long c = 0; c < r; ++c) {
    double phase = 2.0 * std::numbers::pi * c / r;
    m(c, c) = Complex(std::cos(phase), std::sin(phase));
  }
  return m;
}

Matrix prepare_unitary(const Vector& first_column) {
  const long n = first_column.size();
  if (n < 1) throw ParameterError("empty column in prepare_unitary");
  if (std::abs(first_column.norm() - 1.0) > kTolUnitary) {
    throw InvalidStateError("prepare_unitary column must be unit norm");
  }
  // Householder reflection about v - e^{i phi} e0, phased so the first column
  // comes out exactly as requested even for complex v0.
  Complex v0 = first_column(0);
  Complex phase = std::abs(v0) > 0 ? v0 / std::abs(v0) : Complex(1, 0);
  Vector w = first_column;
  w(0) -= phase;
  double wn2 = w.squaredNorm();
  if (wn2 < kTolAlgebra * kTolAlgebra) return Matrix::Identity(n, n);
  Matrix h = Matrix::Identity(n, n) - (2.0 / wn2) * (w * w.adjoint());
  return phase * h;
}

Matrix exp_i_hermitian(const Matrix& hermitian) {
  if ((hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() > kTolUnitary) {
    throw InvalidGeneratorError("generator is not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  const long n = hermitian.rows();
  Vector phases(n);
  for (long i = 0; i < n; ++i) {
    double lam = es.eigenvalues()(i);
    phases(i) = Complex(std::cos(lam), std::sin(lam));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace projlab::gates
