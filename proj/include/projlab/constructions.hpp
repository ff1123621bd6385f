#pragma once

#include <utility>

#include "projlab/circuit.hpp"
#include "projlab/groups.hpp"

// Circuit builders for the projector-realization constructions: the G-Bose
// symmetry test, the recursive S_k symmetry and antisymmetry tests, the
// uncompute-based projector realization, projector concatenation, the
// difference-of-projectors and resolution-of-identity circuits, the Schmidt
// rank test, the Werner-state test, and the commutator switch.
namespace projlab::constructions {

struct ResourceCount {
  long qubits = 0;
  long two_qubit_gates = 0;
  long cswaps = 0;
  bool operator==(const ResourceCount&) const = default;
};

// Published resource model for the Schmidt rank test on an n-qubit state at
// cutoff r: ((r+1)(n+r), 4r(r-1), nr(r+1)).
ResourceCount schmidt_resource_count(int n, int r);

// Control-register prep, controlled-U(g), projective measurement onto |+_G>
// (control un-rotated so acceptance is the all-zeros outcome).
Circuit build_gbose_test(const UnitaryRep& rep, const ControlEncoding& enc);

// Recursive Barenco test for Pi_{S_k} on k registers of dimension d:
// A_j preparations and k(k-1)/2 controlled-SWAP gates.
Circuit build_sk_sym_test(int k, int d);

// The S_k test with Zbar layers inserted after the controlled-SWAPs,
// realizing Pi_anti.
Circuit build_antisym_test(int k, int d);

// Uncompute-based realization with a flag qubit C': outcome 1 projects onto
// Pi (post-state proportional to Pi psi), outcome 0 onto I - Pi, with
// Pi = Pi_G (anti=false) or Pi_A (anti=true).
Circuit build_projector_uncompute(const UnitaryRep& rep,
                                  const ControlEncoding& enc, bool anti);

// Two projectors realized in sequence with flag qubits Cp1 (for G) and Cp2
// (for H). shared_control requires identical representations.
Circuit build_concatenation(const UnitaryRep& rep_g, const UnitaryRep& rep_h,
                            bool shared_control);

// Symmetric then antisymmetric projection with a shared control register;
// outcomes (C', C''): sym flag first.
Circuit build_sym_anti_concat(const UnitaryRep& rep,
                              const ControlEncoding& enc);

// Difference-of-projectors circuit for U = P - Q (requires U^2 = I) over two
// purified copies. Copy registers carry suffixes #1/#2; each copy gets a
// reference register of dimension ref_dim (omitted when ref_dim == 1, for
// pure inputs). Measured registers: C3, C2, C1.
Circuit build_diff_proj(const Operator& u, long ref_dim);

// Resolution-of-identity circuit: r-level C2/C1 registers, QFT / controlled
// powers of U / Ztilde / inverse QFT, controlled swaps, measurement of
// (C3, C2, C1). U's spectrum must consist of r-th roots of unity.
Circuit build_res_identity(const Operator& u, int r, long ref_dim);

// Two parallel antisymmetry tests over r+1 copies of an (nR + nS)-qubit
// state; acceptance is the all-zeros outcome on both control registers.
std::pair<Circuit, ResourceCount> build_schmidt_test(int n_r, int n_s, int r);

// Tensors r+1 renamed copies of psi (registers R1..RnR, S1..SnS) into the
// Schmidt-test input.
ComplexTensorState schmidt_input(const ComplexTensorState& psi, int n_r,
                                 int n_s, int r);

// Werner-state test: diff-proj specialization with U the full SWAP of two
// half_dim halves (registers A and B).
Circuit build_werner_test(long half_dim, long ref_dim);

// Quantum-switch commutator circuit: Pr(outcome 0) = ||[A,B] psi||^2 / 4.
Circuit build_commutator(const Operator& a, const Operator& b);

// BCH variant: A is a Hermitian generator; the circuit compares
// e^{iA} B e^{-iA} against B, so Pr(0) = ||(e^{iA} B e^{-iA} - B) psi||^2 / 4.
Circuit build_commutator_bch(const Operator& a_generator, const Operator& b);

// Circuit-estimated (Frobenius-form, spectral-form) commutator summaries:
// the maximally-mixed input realized by purification gives
// ||[A,B]||_2^2 / (4d); the top singular vector input gives
// ||[A,B]||_inf^2 / 4. Both cross-checked against direct norms within 1e-9.
std::pair<double, double> commutator_norm_summaries(const Operator& a,
                                                    const Operator& b);

// Probability of the all-zeros outcome over the measured registers.
double all_zeros_probability(const Circuit& c, const ComplexTensorState& in);

// Input state for a two-copy circuit (diff-proj / res-identity / Werner):
// the purification of rho, copied twice with #1/#2 register names. The
// matching circuit must be built with ref_dim = purification reference dim.
ComplexTensorState two_copy_input(const DensityOperator& rho);
// Pure-state variant for circuits built with ref_dim == 1.
ComplexTensorState two_copy_input(const ComplexTensorState& psi);
// Reference dimension the purification of rho will use.
long purification_ref_dim(const DensityOperator& rho);

}  // namespace projlab::constructions
