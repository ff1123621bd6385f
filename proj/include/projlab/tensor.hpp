#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projlab/errors.hpp"

namespace projlab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Tolerance hierarchy used throughout: exact algebraic identities, unitarity
// and normalization, and spectral-decomposition round trips.
inline constexpr double kTolAlgebra = 1e-12;
inline constexpr double kTolUnitary = 1e-10;
inline constexpr double kTolSpectral = 1e-9;

// Total-dimension cap for any register layout. Defaults to 2^14 and can be
// raised via the PROJLAB_CAPACITY environment variable or programmatically.
long total_dim_capacity();
void set_total_dim_capacity(long cap);

struct Register {
  std::string name;
  long dim = 0;
};

// Ordered list of named registers. Register 0 is the most significant
// mixed-radix digit, so index digit strings read like the paper's kets.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> regs);

  long size() const { return static_cast<long>(regs_.size()); }
  long total_dim() const { return total_dim_; }
  const Register& reg(long pos) const { return regs_.at(pos); }
  const std::vector<Register>& registers() const { return regs_; }

  long position(std::string_view name) const;  // throws LayoutError
  bool contains(std::string_view name) const;
  long dim_of(std::string_view name) const { return regs_[position(name)].dim; }

  // Stride of register `pos` in the flat amplitude index.
  long stride(long pos) const { return strides_[pos]; }

  std::vector<long> digits(long index) const;
  long index_of(std::span<const long> digits) const;

  // Positions of the given register names, in the order given.
  std::vector<long> positions(std::span<const std::string> names) const;

  // Sub-layout of the named registers, in the order given.
  RegisterLayout subset(std::span<const std::string> names) const;

  bool operator==(const RegisterLayout& other) const;

 private:
  std::vector<Register> regs_;
  std::vector<long> strides_;
  long total_dim_ = 1;
};

// Dense statevector over a register layout. Immutable by convention: all
// operations return new values.
class ComplexTensorState {
 public:
  ComplexTensorState(RegisterLayout layout, Vector amplitudes,
                     bool normalized = true);

  static ComplexTensorState basis_state(RegisterLayout layout,
                                        std::span<const long> digits);
  static ComplexTensorState zero_state(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amps_; }
  bool normalized() const { return normalized_; }
  double norm() const { return amps_.norm(); }

 private:
  RegisterLayout layout_;
  Vector amps_;
  bool normalized_;
};

// Square operator acting on the registers of a (sub-)layout.
class Operator {
 public:
  Operator(RegisterLayout layout, Matrix matrix);

  const RegisterLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  long dim() const { return mat_.rows(); }

  Operator adjoint() const { return Operator(layout_, mat_.adjoint()); }
  bool is_unitary(double tol = kTolUnitary) const;
  bool is_hermitian(double tol = kTolUnitary) const;

  static Operator identity(RegisterLayout layout);

 private:
  RegisterLayout layout_;
  Matrix mat_;
};

// Density operator with validated Hermiticity, unit trace, and positivity.
class DensityOperator {
 public:
  DensityOperator(RegisterLayout layout, Matrix matrix);

  const RegisterLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  long dim() const { return mat_.rows(); }

 private:
  RegisterLayout layout_;
  Matrix mat_;
};

Operator kron(const Operator& a, const Operator& b);

ComplexTensorState apply(const Operator& op,
                         std::span<const std::string> targets,
                         const ComplexTensorState& state);

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const std::string> keep);

// Purification on layout (ref, original registers) built from the spectral
// decomposition sum_i sqrt(lambda_i) |i>_ref |v_i>. The reference dimension is
// max(2, rank(rho)).
ComplexTensorState purify(const DensityOperator& rho,
                          const std::string& ref_name = "ref");

DensityOperator to_density(const ComplexTensorState& psi);

// Reduced density operator of a pure state without forming the full |psi><psi|.
DensityOperator reduced_density(const ComplexTensorState& psi,
                                std::span<const std::string> keep);

ComplexTensorState tensor(const ComplexTensorState& a,
                          const ComplexTensorState& b);

ComplexTensorState renamed(const ComplexTensorState& state,
                           const std::map<std::string, std::string>& names);

// Merge consecutive registers into larger ones; amplitudes are unchanged.
// `groups` partitions the existing registers in layout order.
ComplexTensorState regrouped(const ComplexTensorState& state,
                             const std::vector<std::vector<std::string>>& groups,
                             const std::vector<std::string>& new_names);

// Embed a state into a larger layout; registers absent from `partial` start
// in |0>. Register names and dims must match.
ComplexTensorState embed(const RegisterLayout& full,
                         const ComplexTensorState& partial);

}  // namespace projlab
