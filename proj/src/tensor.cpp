#include "projlab/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <sstream>

namespace projlab {

namespace {

std::atomic<long> g_capacity{0};  // 0 = not yet initialized

long read_capacity_env() {
  if (const char* env = std::getenv("PROJLAB_CAPACITY")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 2) return v;
  }
  return 1L << 14;
}

}  // namespace

long total_dim_capacity() {
  long cap = g_capacity.load();
  if (cap == 0) {
    cap = read_capacity_env();
    g_capacity.store(cap);
  }
  return cap;
}

void set_total_dim_capacity(long cap) {
  if (cap < 2) throw ParameterError("capacity must be at least 2");
  g_capacity.store(cap);
}

RegisterLayout::RegisterLayout(std::vector<Register> regs)
    : regs_(std::move(regs)) {
  if (regs_.empty()) throw LayoutError("layout requires at least one register");
  std::set<std::string> seen;
  for (const auto& r : regs_) {
    if (r.dim < 2) {
      throw LayoutError("register '" + r.name + "' has dim " +
                        std::to_string(r.dim) + "; need >= 2");
    }
    if (!seen.insert(r.name).second) {
      throw LayoutError("duplicate register name '" + r.name + "'");
    }
  }
  const long cap = total_dim_capacity();
  total_dim_ = 1;
  for (const auto& r : regs_) {
    if (total_dim_ > cap / r.dim) {
      throw CapacityError("total dimension exceeds capacity " +
                          std::to_string(cap) +
                          " (override with PROJLAB_CAPACITY)");
    }
    total_dim_ *= r.dim;
  }
  strides_.assign(regs_.size(), 1);
  for (long i = static_cast<long>(regs_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * regs_[i + 1].dim;
  }
}

long RegisterLayout::position(std::string_view name) const {
  for (long i = 0; i < size(); ++i) {
    if (regs_[i].name == name) return i;
  }
  throw LayoutError("unknown register '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(regs_.begin(), regs_.end(),
                     [&](const Register& r) { return r.name == name; });
}

std::vector<long> RegisterLayout::digits(long index) const {
  std::vector<long> out(regs_.size());
  for (long i = size() - 1; i >= 0; --i) {
    out[i] = index % regs_[i].dim;
    index /= regs_[i].dim;
  }
  return out;
}

long RegisterLayout::index_of(std::span<const long> digits) const {
  if (static_cast<long>(digits.size()) != size()) {
    throw LayoutError("digit count does not match register count");
  }
  long index = 0;
  for (long i = 0; i < size(); ++i) {
    if (digits[i] < 0 || digits[i] >= regs_[i].dim) {
      throw LayoutError("digit out of range for register '" + regs_[i].name +
                        "'");
    }
    index = index * regs_[i].dim + digits[i];
  }
  return index;
}

std::vector<long> RegisterLayout::positions(
    std::span<const std::string> names) const {
  std::vector<long> out;
  out.reserve(names.size());
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw LayoutError("register '" + n + "' listed twice");
    }
    out.push_back(position(n));
  }
  return out;
}

RegisterLayout RegisterLayout::subset(
    std::span<const std::string> names) const {
  std::vector<Register> regs;
  for (long p : positions(names)) regs.push_back(regs_[p]);
  return RegisterLayout(std::move(regs));
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (regs_.size() != other.regs_.size()) return false;
  for (size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].name != other.regs_[i].name ||
        regs_[i].dim != other.regs_[i].dim) {
      return false;
    }
  }
  return true;
}

ComplexTensorState::ComplexTensorState(RegisterLayout layout, Vector amplitudes,
                                       bool normalized)
    : layout_(std::move(layout)),
      amps_(std::move(amplitudes)),
      normalized_(normalized) {
  if (amps_.size() != layout_.total_dim()) {
    throw LayoutError("amplitude vector length " + std::to_string(amps_.size()) +
                      " does not match layout dimension " +
                      std::to_string(layout_.total_dim()));
  }
  if (normalized_ && std::abs(amps_.norm() - 1.0) > kTolUnitary) {
    throw InvalidStateError("state norm deviates from 1 by more than 1e-10");
  }
}

ComplexTensorState ComplexTensorState::basis_state(
    RegisterLayout layout, std::span<const long> digits) {
  Vector v = Vector::Zero(layout.total_dim());
  v(layout.index_of(digits)) = 1.0;
  return ComplexTensorState(std::move(layout), std::move(v));
}

ComplexTensorState ComplexTensorState::zero_state(RegisterLayout layout) {
  Vector v = Vector::Zero(layout.total_dim());
  v(0) = 1.0;
  return ComplexTensorState(std::move(layout), std::move(v));
}

Operator::Operator(RegisterLayout layout, Matrix matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
  if (mat_.rows() != mat_.cols()) {
    throw LayoutError("operator matrix must be square");
  }
  if (mat_.rows() != layout_.total_dim()) {
    throw LayoutError("operator dimension " + std::to_string(mat_.rows()) +
                      " does not match layout dimension " +
                      std::to_string(layout_.total_dim()));
  }
}

bool Operator::is_unitary(double tol) const {
  Matrix should_be_id = mat_.adjoint() * mat_;
  return (should_be_id - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <=
         tol;
}

bool Operator::is_hermitian(double tol) const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::identity(RegisterLayout layout) {
  long d = layout.total_dim();
  return Operator(std::move(layout), Matrix::Identity(d, d));
}

DensityOperator::DensityOperator(RegisterLayout layout, Matrix matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != layout_.total_dim()) {
    throw LayoutError("density matrix dimension does not match layout");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kTolUnitary) {
    throw InvalidStateError("density matrix is not Hermitian within 1e-10");
  }
  if (std::abs(mat_.trace().real() - 1.0) > kTolUnitary ||
      std::abs(mat_.trace().imag()) > kTolUnitary) {
    throw InvalidStateError("density matrix trace deviates from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kTolUnitary) {
    throw InvalidStateError("density matrix has negative eigenvalue beyond 1e-10");
  }
}

namespace {

// Auto-suffix colliding names so a kron product layout stays valid.
std::vector<Register> merge_registers(const RegisterLayout& a,
                                      const RegisterLayout& b) {
  std::vector<Register> regs = a.registers();
  std::set<std::string> names;
  for (const auto& r : regs) names.insert(r.name);
  for (const auto& r : b.registers()) {
    std::string name = r.name;
    while (names.count(name)) name += "'";
    names.insert(name);
    regs.push_back({name, r.dim});
  }
  return regs;
}

}  // namespace

Operator kron(const Operator& a, const Operator& b) {
  const Matrix& A = a.matrix();
  const Matrix& B = b.matrix();
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i) {
    for (long j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return Operator(RegisterLayout(merge_registers(a.layout(), b.layout())),
                  std::move(out));
}

ComplexTensorState apply(const Operator& op,
                         std::span<const std::string> targets,
                         const ComplexTensorState& state) {
  const RegisterLayout& layout = state.layout();
  std::vector<long> pos = layout.positions(targets);
  if (static_cast<long>(pos.size()) != op.layout().size()) {
    throw LayoutError("target count does not match operator layout");
  }
  long op_dim = 1;
  for (size_t i = 0; i < pos.size(); ++i) {
    long d = layout.reg(pos[i]).dim;
    if (d != op.layout().reg(static_cast<long>(i)).dim) {
      throw LayoutError("dimension mismatch on target '" +
                        layout.reg(pos[i]).name + "'");
    }
    op_dim *= d;
  }

  // Offset of each operator basis index within the flat state index.
  std::vector<long> offsets(op_dim, 0);
  {
    std::vector<long> tdigits(pos.size(), 0);
    for (long t = 0; t < op_dim; ++t) {
      long off = 0;
      long rem = t;
      for (long i = static_cast<long>(pos.size()) - 1; i >= 0; --i) {
        long d = layout.reg(pos[i]).dim;
        off += (rem % d) * layout.stride(pos[i]);
        rem /= d;
      }
      offsets[t] = off;
    }
  }

  const Vector& in = state.amplitudes();
  Vector out = Vector::Zero(in.size());
  const Matrix& M = op.matrix();
  Vector scratch(op_dim);

  // Enumerate base indices with all target digits zero.
  const long n = layout.total_dim();
  std::vector<bool> is_target(layout.size(), false);
  for (long p : pos) is_target[p] = true;
  for (long base = 0; base < n; ++base) {
    bool zero_targets = true;
    {
      long rem = base;
      for (long i = layout.size() - 1; i >= 0; --i) {
        long d = layout.reg(i).dim;
        if (is_target[i] && rem % d != 0) {
          zero_targets = false;
          break;
        }
        rem /= d;
      }
    }
    if (!zero_targets) continue;
    for (long t = 0; t < op_dim; ++t) scratch(t) = in(base + offsets[t]);
    Vector res = M * scratch;
    for (long t = 0; t < op_dim; ++t) out(base + offsets[t]) = res(t);
  }
  return ComplexTensorState(layout, std::move(out), state.normalized());
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const std::string> keep) {
  const RegisterLayout& layout = rho.layout();
  std::vector<long> keep_pos = layout.positions(keep);
  std::vector<bool> kept(layout.size(), false);
  for (long p : keep_pos) kept[p] = true;

  // Kept registers in original layout order.
  std::vector<Register> kept_regs;
  std::vector<long> kept_positions;
  for (long i = 0; i < layout.size(); ++i) {
    if (kept[i]) {
      kept_regs.push_back(layout.reg(i));
      kept_positions.push_back(i);
    }
  }
  if (kept_regs.empty()) throw LayoutError("must keep at least one register");

  RegisterLayout out_layout(kept_regs);
  long dk = out_layout.total_dim();
  long n = layout.total_dim();
  Matrix out = Matrix::Zero(dk, dk);

  // For each full index pair sharing traced digits, accumulate.
  std::vector<long> digits(layout.size());
  for (long i = 0; i < n; ++i) {
    long rem = i;
    for (long p = layout.size() - 1; p >= 0; --p) {
      digits[p] = rem % layout.reg(p).dim;
      rem /= layout.reg(p).dim;
    }
    long row = 0;
    for (long p : kept_positions) row = row * layout.reg(p).dim + digits[p];
    long traced_part = 0;
    for (long p = 0; p < layout.size(); ++p) {
      if (!kept[p]) traced_part = traced_part * layout.reg(p).dim + digits[p];
    }
    for (long j = 0; j < n; ++j) {
      long remj = j;
      long col = 0;
      long traced_j = 0;
      bool ok = true;
      std::vector<long> djs(layout.size());
      for (long p = layout.size() - 1; p >= 0; --p) {
        djs[p] = remj % layout.reg(p).dim;
        remj /= layout.reg(p).dim;
      }
      for (long p : kept_positions) col = col * layout.reg(p).dim + djs[p];
      for (long p = 0; p < layout.size(); ++p) {
        if (!kept[p]) {
          traced_j = traced_j * layout.reg(p).dim + djs[p];
          if (djs[p] != digits[p]) {
            ok = false;
            break;
          }
        }
      }
      (void)traced_j;
      if (ok) out(row, col) += rho.matrix()(i, j);
    }
  }
  return DensityOperator(std::move(out_layout), std::move(out));
}

ComplexTensorState purify(const DensityOperator& rho,
                          const std::string& ref_name) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.info() != Eigen::Success) {
    throw InvalidStateError("eigendecomposition failed in purify");
  }
  const auto& vals = es.eigenvalues();
  if (vals.minCoeff() < -kTolUnitary) {
    throw InvalidStateError("negative eigenvalue beyond tolerance in purify");
  }
  long d = rho.dim();
  long rank = 0;
  for (long i = 0; i < d; ++i) {
    if (vals(i) > kTolAlgebra) ++rank;
  }
  long ref_dim = std::max<long>(2, rank);

  std::string name = ref_name;
  while (rho.layout().contains(name)) name += "'";
  std::vector<Register> regs{{name, ref_dim}};
  for (const auto& r : rho.layout().registers()) regs.push_back(r);
  RegisterLayout out_layout(regs);

  Vector amps = Vector::Zero(ref_dim * d);
  long slot = 0;
  // Largest eigenvalue first, so pure states purify to |0>_ref |psi>.
  for (long i = d - 1; i >= 0 && slot < ref_dim; --i) {
    if (vals(i) <= kTolAlgebra) continue;
    amps.segment(slot * d, d) = std::sqrt(vals(i)) * es.eigenvectors().col(i);
    ++slot;
  }
  return ComplexTensorState(std::move(out_layout), std::move(amps));
}

DensityOperator to_density(const ComplexTensorState& psi) {
  Vector v = psi.amplitudes();
  if (!psi.normalized()) v /= v.norm();
  return DensityOperator(psi.layout(), v * v.adjoint());
}

DensityOperator reduced_density(const ComplexTensorState& psi,
                                std::span<const std::string> keep) {
  const RegisterLayout& layout = psi.layout();
  std::vector<long> keep_pos = layout.positions(keep);
  std::vector<bool> kept(layout.size(), false);
  for (long p : keep_pos) kept[p] = true;

  std::vector<Register> kept_regs;
  for (long i = 0; i < layout.size(); ++i) {
    if (kept[i]) kept_regs.push_back(layout.reg(i));
  }
  RegisterLayout out_layout(kept_regs);
  long dk = out_layout.total_dim();
  long dr = layout.total_dim() / dk;

  // Gather amplitudes into M[kept, rest]; rho = M M^dagger.
  Matrix M = Matrix::Zero(dk, dr);
  std::vector<long> digits(layout.size());
  const Vector& amps = psi.amplitudes();
  for (long i = 0; i < layout.total_dim(); ++i) {
    long rem = i;
    for (long p = layout.size() - 1; p >= 0; --p) {
      digits[p] = rem % layout.reg(p).dim;
      rem /= layout.reg(p).dim;
    }
    long row = 0, col = 0;
    for (long p = 0; p < layout.size(); ++p) {
      if (kept[p]) {
        row = row * layout.reg(p).dim + digits[p];
      } else {
        col = col * layout.reg(p).dim + digits[p];
      }
    }
    M(row, col) = amps(i);
  }
  Matrix rho = M * M.adjoint();
  double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTolUnitary) rho /= tr;
  return DensityOperator(std::move(out_layout), std::move(rho));
}

ComplexTensorState tensor(const ComplexTensorState& a,
                          const ComplexTensorState& b) {
  std::vector<Register> regs = a.layout().registers();
  for (const auto& r : b.layout().registers()) {
    if (a.layout().contains(r.name)) {
      throw LayoutError("register '" + r.name + "' present in both factors");
    }
    regs.push_back(r);
  }
  long na = a.amplitudes().size();
  long nb = b.amplitudes().size();
  Vector out(na * nb);
  for (long i = 0; i < na; ++i) {
    out.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return ComplexTensorState(RegisterLayout(std::move(regs)), std::move(out),
                            a.normalized() && b.normalized());
}

ComplexTensorState renamed(const ComplexTensorState& state,
                           const std::map<std::string, std::string>& names) {
  std::vector<Register> regs = state.layout().registers();
  for (auto& r : regs) {
    auto it = names.find(r.name);
    if (it != names.end()) r.name = it->second;
  }
  return ComplexTensorState(RegisterLayout(std::move(regs)),
                            state.amplitudes(), state.normalized());
}

ComplexTensorState regrouped(const ComplexTensorState& state,
                             const std::vector<std::vector<std::string>>& groups,
                             const std::vector<std::string>& new_names) {
  if (groups.size() != new_names.size()) {
    throw LayoutError("group and name counts differ");
  }
  const RegisterLayout& layout = state.layout();
  std::vector<Register> regs;
  long cursor = 0;
  for (size_t g = 0; g < groups.size(); ++g) {
    long dim = 1;
    for (const auto& name : groups[g]) {
      if (cursor >= layout.size() || layout.reg(cursor).name != name) {
        throw LayoutError("groups must cover registers contiguously in order");
      }
      dim *= layout.reg(cursor).dim;
      ++cursor;
    }
    regs.push_back({new_names[g], dim});
  }
  if (cursor != layout.size()) {
    throw LayoutError("groups must cover all registers");
  }
  return ComplexTensorState(RegisterLayout(std::move(regs)),
                            state.amplitudes(), state.normalized());
}

ComplexTensorState embed(const RegisterLayout& full,
                         const ComplexTensorState& partial) {
  if (partial.layout() == full) return partial;
  const RegisterLayout& sub = partial.layout();
  std::vector<long> sub_pos;  // position in full layout of each sub register
  for (long i = 0; i < sub.size(); ++i) {
    long p = full.position(sub.reg(i).name);
    if (full.reg(p).dim != sub.reg(i).dim) {
      throw LayoutError("dimension mismatch embedding register '" +
                        sub.reg(i).name + "'");
    }
    sub_pos.push_back(p);
  }
  Vector out = Vector::Zero(full.total_dim());
  std::vector<long> full_digits(full.size(), 0);
  const Vector& in = partial.amplitudes();
  for (long i = 0; i < sub.total_dim(); ++i) {
    if (in(i) == Complex(0, 0)) continue;
    std::vector<long> sub_digits = sub.digits(i);
    std::fill(full_digits.begin(), full_digits.end(), 0);
    for (size_t k = 0; k < sub_pos.size(); ++k) {
      full_digits[sub_pos[k]] = sub_digits[k];
    }
    out(full.index_of(full_digits)) = in(i);
  }
  return ComplexTensorState(full, std::move(out), partial.normalized());
}

}  // namespace projlab
