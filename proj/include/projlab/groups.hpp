#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "projlab/tensor.hpp"

namespace projlab {

// Permutation of {1..k}. Stored 0-based; cycle notation in the public API is
// 1-based, matching the usual convention for S_k letters.
class Permutation {
 public:
  static Permutation identity(int k);
  // Transposition (a b) with 1-based letters a != b in {1..k}.
  static Permutation transposition(int k, int a, int b);
  // One-line notation: images[i] is the 1-based image of letter i+1.
  static Permutation from_one_line(const std::vector<int>& images_1based);

  int degree() const { return static_cast<int>(images_.size()); }
  // 0-based action: slot i maps to map0(i).
  int map0(int i) const { return images_[i]; }

  Permutation inverse() const;
  bool is_identity() const;
  int sign() const;  // +1 even, -1 odd

  // Cycle notation, e.g. "(1 2 3)"; "e" for the identity.
  std::string cycles() const;
  static Permutation parse_cycles(int k, const std::string& text);

  // (a * b)(x) = a(b(x)): apply b first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) = default;

 private:
  explicit Permutation(std::vector<int> images0) : images_(std::move(images0)) {}
  std::vector<int> images_;
};

int sign(const Permutation& p);

// Finite permutation group, validated exhaustively at construction: closure,
// identity, inverses.
class FiniteGroup {
 public:
  // Full symmetric group S_k; k in [1, 6] at desk scale.
  static FiniteGroup symmetric(int k);
  // Cyclic group generated by the k-cycle (1 2 ... k).
  static FiniteGroup cyclic(int k);
  static FiniteGroup trivial(int k);
  static FiniteGroup from_elements(std::vector<Permutation> elements);

  long order() const { return static_cast<long>(elements_.size()); }
  int degree() const { return degree_; }
  const Permutation& element(long i) const { return elements_[i]; }
  const std::vector<Permutation>& elements() const { return elements_; }
  long identity_index() const { return identity_index_; }
  long index_of(const Permutation& p) const;  // throws GroupError if absent
  bool contains(const Permutation& p) const;
  long compose_index(long a, long b) const;  // index of element(a)*element(b)

  bool operator==(const FiniteGroup& other) const {
    return elements_ == other.elements_;
  }

 private:
  explicit FiniteGroup(std::vector<Permutation> elements);
  std::vector<Permutation> elements_;
  std::map<Permutation, long> lookup_;
  long identity_index_ = 0;
  int degree_ = 0;
};

FiniteGroup symmetric_group(int k);

// Unitary representation of a finite group: one matrix per element, with the
// sign character. Validated at construction: unitarity, the homomorphism
// property over all pairs, and signs equal to permutation parity.
class UnitaryRep {
 public:
  UnitaryRep(FiniteGroup group, RegisterLayout data_layout,
             std::vector<Matrix> matrices);

  const FiniteGroup& group() const { return group_; }
  const RegisterLayout& data_layout() const { return data_layout_; }
  long dim() const { return data_layout_.total_dim(); }
  const Matrix& matrix(long element_index) const {
    return matrices_[element_index];
  }
  int sign_of(long element_index) const { return signs_[element_index]; }
  Operator op(long element_index) const {
    return Operator(data_layout_, matrices_[element_index]);
  }

 private:
  FiniteGroup group_;
  RegisterLayout data_layout_;
  std::vector<Matrix> matrices_;
  std::vector<int> signs_;
};

// Standard representation of S_k on k registers of dimension d: U(sigma)
// permutes the tensor factors.
UnitaryRep standard_rep(int k, int d);

// The two-qubit representation of S_3 built from H, CNOT and SWAP.
UnitaryRep s3_two_qubit_rep();

// Representation with matrices sgn(g) U(g); its symmetric projector is the
// antisymmetric projector of `rep`.
UnitaryRep signed_rep(const UnitaryRep& rep);

// Control-register encoding of group elements onto computational basis
// states. The Barenco layout uses qubit blocks of sizes 1, 2, ..., k-1
// (block j holds j-1 qubits, highest j first); a one-hot digit at position p
// of block j encodes the transposition (p+1, j), and a composite basis state
// encodes the composition with lower blocks applied first.
class ControlEncoding {
 public:
  static ControlEncoding barenco(int k);
  // Restriction of barenco(group.degree()) to the subgroup's elements.
  static ControlEncoding for_group(const FiniteGroup& group);

  const FiniteGroup& group() const { return group_; }
  const RegisterLayout& control_layout() const { return control_layout_; }
  long basis_of(long element_index) const {
    return element_to_basis_[element_index];
  }
  // Element index encoded by a control basis index, if any.
  std::optional<long> element_of(long basis_index) const;
  // Blocks of control register names: block j=2 last, matching layout order.
  const std::vector<std::vector<std::string>>& blocks() const {
    return blocks_;
  }
  // Parity of basis index equals permutation parity; validated at
  // construction and required by the |-_G> construction.
  bool parity_valid() const { return parity_valid_; }

 private:
  ControlEncoding(FiniteGroup group, RegisterLayout control_layout,
                  std::vector<long> element_to_basis,
                  std::vector<std::vector<std::string>> blocks);
  FiniteGroup group_;
  RegisterLayout control_layout_;
  std::vector<long> element_to_basis_;
  std::vector<std::vector<std::string>> blocks_;
  std::vector<long> basis_to_element_;
  bool parity_valid_ = true;
};

ControlEncoding barenco_encoding(int k);

// Uniform superposition over encoded elements: |+_G>.
ComplexTensorState plus_state(const ControlEncoding& enc);
// Sign-weighted superposition: |-_G>.
ComplexTensorState minus_state(const ControlEncoding& enc);

// G_p = <-_G|+_G> = mean sign over the group.
double g_p(const UnitaryRep& rep);
double g_p(const FiniteGroup& group);

// The Barenco preparation unitary A_j on j-1 qubits (j >= 2): first column
// (1/sqrt(j)) (|0...0> + sum_i |2^{i-1}>), completed deterministically.
Operator a_j_unitary(int j);

}  // namespace projlab
