#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "projlab/tensor.hpp"

namespace projlab {

// Catalog entry: a named pure state or density operator together with its
// canonical bipartition (names of the R-side registers).
struct NamedState {
  std::string name;
  std::variant<ComplexTensorState, DensityOperator> state;
  std::vector<std::string> canonical_cut;

  bool is_pure() const {
    return std::holds_alternative<ComplexTensorState>(state);
  }
  const ComplexTensorState& pure() const {
    return std::get<ComplexTensorState>(state);
  }
  const DensityOperator& density() const {
    return std::get<DensityOperator>(state);
  }
};

// (|00> + |11>)/sqrt(2) on registers (R, S).
NamedState make_bell();
// (|01> - |10>)/sqrt(2) on registers (A, B).
NamedState make_singlet();
// W state on n qubits; canonical cut keeps the first two qubits.
NamedState make_w(int n = 3);
NamedState make_ghz(int n);
// |Phi+>_{R S1} (x) |Phi+>_{S2 S3}; canonical cut 1:3.
NamedState make_double_bell();
// The six-qubit "pizza" state; canonical cut 3:3.
NamedState make_pizza();
// Werner state p Pi_S / (d(d+1)/2) + (1-p) Pi_A / (d(d-1)/2) on (A, B).
NamedState make_werner(double p, long d);
// Haar-random pure state over the given register dims, seeded.
NamedState make_random_pure(std::uint64_t seed, const std::vector<long>& dims);
// Computational basis state from a digit string, qubit registers.
NamedState make_basis(const std::string& digits);

// Catalog lookup by name: "bell", "singlet", "w", "w4", "ghz3", ...,
// "double_bell", "pizza", "werner:p[,d]", "random:seed[,d1xd2...]",
// "basis:010...". Throws ParameterError for unknown names.
NamedState make_state(const std::string& spec);

// Seeded helpers (deterministic per seed).
Vector random_state_vector(std::uint64_t seed, long dim);
Matrix random_unitary(std::uint64_t seed, long dim);
Matrix random_hermitian(std::uint64_t seed, long dim);

}  // namespace projlab
