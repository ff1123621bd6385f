#pragma once

#include "projlab/tensor.hpp"

namespace projlab::gates {

Matrix identity(long dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix phase_s();
Matrix cnot();  // control = first (most significant) qubit
Matrix swap_registers(long dim);  // swaps two dim-level registers
Matrix qft(long r);
Matrix iqft(long r);
Matrix ztilde(long r);  // diag(exp(2 pi i c / r))

// Deterministic unitary whose first column is `first_column` (unit norm),
// completed by a Householder reflection.
Matrix prepare_unitary(const Vector& first_column);

// exp(i * H) for Hermitian H, via spectral decomposition.
Matrix exp_i_hermitian(const Matrix& hermitian);

}  // namespace projlab::gates
