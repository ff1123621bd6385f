#pragma once

#include <array>
#include <span>
#include <vector>

#include "projlab/groups.hpp"
#include "projlab/tensor.hpp"

// Brute-force dense projector construction and closed-form measurement
// probabilities. Everything here is computed straight from the defining
// matrix formulas, independent of the circuit simulation path, so circuits
// can be checked against it.
namespace projlab::oracle {

enum class ProjectorKind { GroupSym, SkSym, Antisym, Custom };

class ProjectorMatrix {
 public:
  ProjectorMatrix(Operator op, ProjectorKind kind);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  ProjectorKind kind() const { return kind_; }
  long dim() const { return op_.dim(); }
  long rank(double threshold = kTolSpectral) const;

 private:
  Operator op_;
  ProjectorKind kind_;
};

// (1/|G|) sum_g U(g).
ProjectorMatrix projector_sym(const UnitaryRep& rep);

// (1/|G|) sum_g sgn(g) U(g).
ProjectorMatrix projector_anti(const UnitaryRep& rep);

// Closed-form outcome law of the sym+anti concatenation for G = S_k
// (requires G_p = 0): probabilities of C'C'' = 00, 01, 10, 11.
struct SymAntiProbs {
  double p00, p01, p10, p11;
};
SymAntiProbs sym_anti_probs(const UnitaryRep& rep,
                            const ComplexTensorState& psi);

// General-G pre-measurement branches of the sym+anti concatenation, as
// explicit control (x) data vectors indexed by the C'C'' outcome. The
// probabilities are the squared norms.
struct SymAntiBranches {
  std::array<Vector, 4> branch;  // index = 2*cprime + cdoubleprime
  std::array<double, 4> probs() const;
};
SymAntiBranches sym_anti_branches(const UnitaryRep& rep,
                                  const ControlEncoding& enc,
                                  const ComplexTensorState& psi);

// p(abc) = (1/2)[Tr(P_b rho) Tr(P_c rho) + (-1)^a Tr(P_b rho P_c rho)] with
// P_1 = P, P_0 = Q = I - P; index = 4a + 2b + c.
std::array<double, 8> diff_proj_probs(const ProjectorMatrix& p,
                                      const DensityOperator& rho);

// ||Re(P rho Q)||_2^2, evaluated both directly and as (1/2) Tr(P rho Q rho);
// the two routes must agree within 1e-10. Requires P Q = 0.
double real_cross_norm(const ProjectorMatrix& p, const ProjectorMatrix& q,
                       const DensityOperator& rho);

// 2 r^2 probabilities p(x a b) for a validated resolution of identity;
// index = x*r*r + a*r + b. Indices into the projector list are taken mod r
// as P_{a-1}, P_{b-1}.
std::vector<double> res_identity_probs(std::span<const ProjectorMatrix> ps,
                                       const DensityOperator& rho);

// Validates sum P_i = I, Hermiticity, idempotence, and the pairwise
// orthogonality lemma P_i P_j = delta_ij P_i.
void validate_resolution(std::span<const ProjectorMatrix> ps);

// Spectral projectors of a unitary whose spectrum consists of r-th roots of
// unity (within 1e-8), via P_j = (1/r) sum_a w^{-ja} U^a.
std::vector<ProjectorMatrix> spectral_resolution(const Operator& u, int r);

// Number of singular values > 1e-9 of the amplitude matrix reshaped across
// the cut (r_side : rest).
int schmidt_rank(const ComplexTensorState& psi,
                 std::span<const std::string> r_side);

// ||(Pi_anti^{R,r+1} (x) Pi_anti^{S,r+1}) psi^{(x)(r+1)}||^2; zero within
// 1e-10 iff schmidt_rank <= r.
double antisym_schmidt_value(const ComplexTensorState& psi,
                             std::span<const std::string> r_side, int r);

}  // namespace projlab::oracle
