#include "projlab/oracle.hpp"

#include <cmath>
#include <numbers>

namespace projlab::oracle {

ProjectorMatrix::ProjectorMatrix(Operator op, ProjectorKind kind)
    : op_(std::move(op)), kind_(kind) {
  const Matrix& m = op_.matrix();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTolUnitary) {
    throw InvalidProjectorError("projector is not Hermitian within 1e-10");
  }
  if ((m * m - m).cwiseAbs().maxCoeff() > kTolUnitary) {
    throw InvalidProjectorError("projector is not idempotent within 1e-10");
  }
}

long ProjectorMatrix::rank(double threshold) const {
  Eigen::JacobiSVD<Matrix> svd(op_.matrix());
  long r = 0;
  for (long i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > threshold) ++r;
  }
  return r;
}

ProjectorMatrix projector_sym(const UnitaryRep& rep) {
  const long d = rep.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (long e = 0; e < rep.group().order(); ++e) {
    sum += rep.matrix(e);
  }
  sum /= static_cast<double>(rep.group().order());
  long factorial = 1;
  for (int i = 2; i <= rep.group().degree(); ++i) factorial *= i;
  bool is_sk = rep.group().order() == factorial;
  return ProjectorMatrix(Operator(rep.data_layout(), std::move(sum)),
                         is_sk ? ProjectorKind::SkSym : ProjectorKind::GroupSym);
}

ProjectorMatrix projector_anti(const UnitaryRep& rep) {
  const long d = rep.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (long e = 0; e < rep.group().order(); ++e) {
    sum += static_cast<double>(rep.sign_of(e)) * rep.matrix(e);
  }
  sum /= static_cast<double>(rep.group().order());
  return ProjectorMatrix(Operator(rep.data_layout(), std::move(sum)),
                         ProjectorKind::Antisym);
}

SymAntiProbs sym_anti_probs(const UnitaryRep& rep,
                            const ComplexTensorState& psi) {
  if (std::abs(g_p(rep)) > kTolAlgebra) {
    throw UnsupportedGroupError(
        "closed-form sym/anti probabilities require G_p = 0; use the "
        "branch-state oracle for general groups");
  }
  if (!(psi.layout() == rep.data_layout())) {
    throw LayoutError("state layout does not match representation");
  }
  Matrix ps = projector_sym(rep).matrix();
  Matrix pa = projector_anti(rep).matrix();
  const Vector& v = psi.amplitudes();
  Vector vs = ps * v;
  Vector va = pa * v;
  Vector rest = v - vs - va;
  return SymAntiProbs{rest.squaredNorm(), va.squaredNorm(), vs.squaredNorm(),
                      0.0};
}

std::array<double, 4> SymAntiBranches::probs() const {
  return {branch[0].squaredNorm(), branch[1].squaredNorm(),
          branch[2].squaredNorm(), branch[3].squaredNorm()};
}

SymAntiBranches sym_anti_branches(const UnitaryRep& rep,
                                  const ControlEncoding& enc,
                                  const ComplexTensorState& psi) {
  if (!(enc.group() == rep.group())) {
    throw GroupError("encoding and representation use different groups");
  }
  const Vector plus = plus_state(enc).amplitudes();
  const Vector minus = minus_state(enc).amplitudes();
  const double gp = g_p(rep);
  Matrix ps = projector_sym(rep).matrix();
  Matrix pa = projector_anti(rep).matrix();
  const Vector& v = psi.amplitudes();
  Vector s = ps * v;
  Vector a = pa * v;
  Vector rest = v - s - a;

  auto outer = [](const Vector& c, const Vector& d) {
    Vector out(c.size() * d.size());
    for (long i = 0; i < c.size(); ++i) {
      out.segment(i * d.size(), d.size()) = c(i) * d;
    }
    return out;
  };

  SymAntiBranches out;
  out.branch[0] = outer(plus, rest) + gp * outer(minus, s);
  out.branch[1] = outer(plus, a) - gp * outer(minus, s);
  out.branch[2] = outer(plus, s) - gp * outer(minus, s);
  out.branch[3] = gp * outer(minus, s);
  return out;
}

std::array<double, 8> diff_proj_probs(const ProjectorMatrix& p,
                                      const DensityOperator& rho) {
  const long d = p.dim();
  if (rho.dim() != d) throw LayoutError("projector/state dimension mismatch");
  Matrix q = Matrix::Identity(d, d) - p.matrix();
  ProjectorMatrix qproj(Operator(p.op().layout(), q), ProjectorKind::Custom);

  std::array<Matrix, 2> pb{std::move(q), p.matrix()};
  std::array<double, 8> probs{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        double t1 = (pb[b] * rho.matrix()).trace().real() *
                    (pb[c] * rho.matrix()).trace().real();
        double t2 =
            (pb[b] * rho.matrix() * pb[c] * rho.matrix()).trace().real();
        probs[4 * a + 2 * b + c] = 0.5 * (t1 + (a == 0 ? t2 : -t2));
      }
    }
  }
  return probs;
}

double real_cross_norm(const ProjectorMatrix& p, const ProjectorMatrix& q,
                       const DensityOperator& rho) {
  if ((p.matrix() * q.matrix()).cwiseAbs().maxCoeff() > kTolUnitary) {
    throw OrthogonalityError("projectors are not orthogonal (P Q != 0)");
  }
  Matrix x = p.matrix() * rho.matrix() * q.matrix();
  Matrix re = 0.5 * (x + x.adjoint());
  double direct = re.squaredNorm();
  double via_trace =
      0.5 * (p.matrix() * rho.matrix() * q.matrix() * rho.matrix())
                .trace()
                .real();
  if (std::abs(direct - via_trace) > kTolUnitary) {
    throw InvalidProjectorError(
        "cross-norm routes disagree beyond 1e-10; inputs are inconsistent");
  }
  return via_trace;
}

void validate_resolution(std::span<const ProjectorMatrix> ps) {
  if (ps.empty()) throw InvalidResolutionError("empty resolution");
  const long d = ps[0].dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& p : ps) {
    if (p.dim() != d) {
      throw InvalidResolutionError("mixed dimensions in resolution");
    }
    sum += p.matrix();
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTolUnitary) {
    throw InvalidResolutionError("projectors do not sum to the identity");
  }
  for (size_t i = 0; i < ps.size(); ++i) {
    for (size_t j = 0; j < ps.size(); ++j) {
      Matrix prod = ps[i].matrix() * ps[j].matrix();
      Matrix expect = (i == j) ? ps[i].matrix() : Matrix::Zero(d, d);
      if ((prod - expect).cwiseAbs().maxCoeff() > kTolUnitary) {
        throw InvalidResolutionError(
            "orthogonality lemma violated: P_i P_j != delta_ij P_i");
      }
    }
  }
}

std::vector<double> res_identity_probs(std::span<const ProjectorMatrix> ps,
                                       const DensityOperator& rho) {
  validate_resolution(ps);
  const long r = static_cast<long>(ps.size());
  if (rho.dim() != ps[0].dim()) {
    throw LayoutError("state dimension does not match resolution");
  }
  std::vector<double> tr1(r);
  std::vector<std::vector<double>> tr2(r, std::vector<double>(r));
  for (long i = 0; i < r; ++i) {
    tr1[i] = (ps[i].matrix() * rho.matrix()).trace().real();
    for (long j = 0; j < r; ++j) {
      tr2[i][j] = (ps[i].matrix() * rho.matrix() * ps[j].matrix() *
                   rho.matrix())
                      .trace()
                      .real();
    }
  }
  std::vector<double> probs(2 * r * r);
  for (int x = 0; x < 2; ++x) {
    for (long a = 0; a < r; ++a) {
      for (long b = 0; b < r; ++b) {
        long ia = (a - 1 + r) % r;
        long ib = (b - 1 + r) % r;
        double v = 0.5 * (tr1[ia] * tr1[ib] +
                          (x == 0 ? tr2[ia][ib] : -tr2[ia][ib]));
        probs[x * r * r + a * r + b] = v;
      }
    }
  }
  return probs;
}

std::vector<ProjectorMatrix> spectral_resolution(const Operator& u, int r) {
  if (r < 2) throw ParameterError("resolution order must be >= 2");
  if (!u.is_unitary()) {
    throw InvalidUnitaryError("spectral resolution requires a unitary");
  }
  const long d = u.dim();
  Eigen::ComplexEigenSolver<Matrix> es(u.matrix(), /*computeEigenvectors=*/false);
  for (long i = 0; i < d; ++i) {
    Complex lam = es.eigenvalues()(i);
    double best = 2.0;
    for (int j = 0; j < r; ++j) {
      double phase = 2.0 * std::numbers::pi * j / r;
      best = std::min(best,
                      std::abs(lam - Complex(std::cos(phase), std::sin(phase))));
    }
    if (best > 1e-8) {
      throw InvalidUnitaryError(
          "spectrum is not contained in the r-th roots of unity");
    }
  }
  // P_j = (1/r) sum_a w^{-ja} U^a is exact given the spectrum check above.
  std::vector<Matrix> powers(r);
  powers[0] = Matrix::Identity(d, d);
  for (int a = 1; a < r; ++a) powers[a] = powers[a - 1] * u.matrix();
  std::vector<ProjectorMatrix> out;
  for (int j = 0; j < r; ++j) {
    Matrix pj = Matrix::Zero(d, d);
    for (int a = 0; a < r; ++a) {
      double phase = -2.0 * std::numbers::pi * j * a / r;
      pj += Complex(std::cos(phase), std::sin(phase)) * powers[a];
    }
    pj /= static_cast<double>(r);
    out.emplace_back(Operator(u.layout(), std::move(pj)),
                     ProjectorKind::Custom);
  }
  return out;
}

namespace {

// Amplitudes reshaped to a (r_side x rest) matrix.
Matrix cut_matrix(const ComplexTensorState& psi,
                  std::span<const std::string> r_side) {
  const RegisterLayout& layout = psi.layout();
  std::vector<long> rpos = layout.positions(r_side);
  std::vector<bool> is_r(layout.size(), false);
  for (long p : rpos) is_r[p] = true;
  long dr = 1, ds = 1;
  for (long i = 0; i < layout.size(); ++i) {
    (is_r[i] ? dr : ds) *= layout.reg(i).dim;
  }
  Matrix m = Matrix::Zero(dr, ds);
  std::vector<long> digits(layout.size());
  const Vector& amps = psi.amplitudes();
  for (long idx = 0; idx < layout.total_dim(); ++idx) {
    long rem = idx;
    for (long p = layout.size() - 1; p >= 0; --p) {
      digits[p] = rem % layout.reg(p).dim;
      rem /= layout.reg(p).dim;
    }
    long row = 0, col = 0;
    // Row digits in the order given by r_side so the cut is explicit.
    for (long p : rpos) row = row * layout.reg(p).dim + digits[p];
    for (long i = 0; i < layout.size(); ++i) {
      if (!is_r[i]) col = col * layout.reg(i).dim + digits[i];
    }
    m(row, col) = amps(idx);
  }
  return m;
}

// Antisymmetric projector over `copies` factors of dimension d, from the
// standard permutation action (built directly, not via UnitaryRep, to stay
// independent of the groups module's matrices).
Matrix antisym_projector_direct(int copies, long d) {
  FiniteGroup group = FiniteGroup::symmetric(copies);
  long n = 1;
  for (int i = 0; i < copies; ++i) n *= d;
  Matrix sum = Matrix::Zero(n, n);
  std::vector<long> digits(copies), out_digits(copies);
  for (long e = 0; e < group.order(); ++e) {
    Permutation inv = group.element(e).inverse();
    double sgn = group.element(e).sign();
    for (long col = 0; col < n; ++col) {
      long rem = col;
      for (int i = copies - 1; i >= 0; --i) {
        digits[i] = rem % d;
        rem /= d;
      }
      for (int i = 0; i < copies; ++i) out_digits[i] = digits[inv.map0(i)];
      long row = 0;
      for (int i = 0; i < copies; ++i) row = row * d + out_digits[i];
      sum(row, col) += sgn;
    }
  }
  return sum / static_cast<double>(group.order());
}

}  // namespace

int schmidt_rank(const ComplexTensorState& psi,
                 std::span<const std::string> r_side) {
  Matrix m = cut_matrix(psi, r_side);
  Eigen::JacobiSVD<Matrix> svd(m);
  int rank = 0;
  for (long i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > kTolSpectral) ++rank;
  }
  return rank;
}

double antisym_schmidt_value(const ComplexTensorState& psi,
                             std::span<const std::string> r_side, int r) {
  const int copies = r + 1;
  Matrix m = cut_matrix(psi, r_side);
  const long dr = m.rows();
  const long ds = m.cols();

  double copies_dim = std::pow(static_cast<double>(dr * ds), copies);
  if (copies_dim > static_cast<double>(total_dim_capacity())) {
    throw CapacityError("r+1 copies exceed the total-dimension capacity");
  }

  // psi^{(x)(r+1)} arranged as (R_1..R_m, S_1..S_m): amplitude tensor built
  // from the cut matrix so register order inside each side is preserved.
  long ndr = 1, nds = 1;
  for (int i = 0; i < copies; ++i) {
    ndr *= dr;
    nds *= ds;
  }
  Vector big = Vector::Zero(ndr * nds);
  std::vector<long> rdig(copies), sdig(copies);
  for (long ri = 0; ri < ndr; ++ri) {
    long rem = ri;
    for (int i = copies - 1; i >= 0; --i) {
      rdig[i] = rem % dr;
      rem /= dr;
    }
    for (long si = 0; si < nds; ++si) {
      long rem2 = si;
      for (int i = copies - 1; i >= 0; --i) {
        sdig[i] = rem2 % ds;
        rem2 /= ds;
      }
      Complex amp = 1.0;
      for (int i = 0; i < copies; ++i) amp *= m(rdig[i], sdig[i]);
      big(ri * nds + si) = amp;
    }
  }

  Matrix pa_r = antisym_projector_direct(copies, dr);
  Matrix pa_s = antisym_projector_direct(copies, ds);
  // (pa_r (x) pa_s) big == pa_r * B * pa_s^T with big reshaped row-major.
  Matrix b(ndr, nds);
  for (long ri = 0; ri < ndr; ++ri) {
    b.row(ri) = big.segment(ri * nds, nds).transpose();
  }
  Matrix projected = pa_r * b * pa_s.transpose();
  return projected.squaredNorm();
}

}  // namespace projlab::oracle
