#include "projlab/constructions.hpp"

#include <cmath>
#include <numbers>

#include "projlab/gates.hpp"

namespace projlab::constructions {

namespace {

std::vector<std::string> control_names(const ControlEncoding& enc,
                                       const std::string& prefix) {
  std::vector<std::string> names;
  for (const auto& r : enc.control_layout().registers()) {
    names.push_back(prefix + r.name);
  }
  return names;
}

std::vector<std::string> data_names(const UnitaryRep& rep) {
  std::vector<std::string> names;
  for (const auto& r : rep.data_layout().registers()) {
    names.push_back(r.name);
  }
  return names;
}

void append_controlled_rep(std::vector<Gate>& gates,
                           const std::vector<std::string>& controls,
                           const ControlEncoding& enc, const UnitaryRep& rep,
                           bool dagger) {
  std::vector<std::string> targets = data_names(rep);
  for (long e = 0; e < rep.group().order(); ++e) {
    if (e == rep.group().identity_index()) continue;
    Matrix m = dagger ? rep.matrix(e).adjoint().eval() : rep.matrix(e);
    gates.push_back(ControlledUnitaryGate{
        controls, BasisPredicate{{enc.basis_of(e)}}, targets, std::move(m)});
  }
}

void check_same_group(const UnitaryRep& rep, const ControlEncoding& enc) {
  if (!(enc.group() == rep.group())) {
    throw GroupError("encoding and representation use different groups");
  }
}

}  // namespace

ResourceCount schmidt_resource_count(int n, int r) {
  if (n < 1 || r < 1) throw ParameterError("need n >= 1 and r >= 1");
  return ResourceCount{
      static_cast<long>(r + 1) * (n + r),
      4L * r * (r - 1),
      static_cast<long>(n) * r * (r + 1),
  };
}

Circuit build_gbose_test(const UnitaryRep& rep, const ControlEncoding& enc) {
  check_same_group(rep, enc);
  std::vector<Register> regs;
  for (const auto& r : enc.control_layout().registers()) regs.push_back(r);
  for (const auto& r : rep.data_layout().registers()) regs.push_back(r);
  RegisterLayout layout(regs);

  std::vector<std::string> controls = control_names(enc, "");
  Vector plus = plus_state(enc).amplitudes();

  std::vector<Gate> gates;
  gates.push_back(PrepareGate{controls, plus});
  append_controlled_rep(gates, controls, enc, rep, /*dagger=*/false);
  gates.push_back(UnitaryGate{controls, gates::prepare_unitary(plus).adjoint()});
  gates.push_back(MeasureGate{controls, "control"});
  return Circuit(std::move(layout), std::move(gates));
}

namespace {

Circuit build_barenco_test(int k, int d, bool anti) {
  if (k < 2) throw ParameterError("need k >= 2");
  if (d < 2) throw ParameterError("need d >= 2");
  ControlEncoding enc = ControlEncoding::barenco(k);

  std::vector<Register> regs;
  for (const auto& r : enc.control_layout().registers()) regs.push_back(r);
  for (int i = 1; i <= k; ++i) regs.push_back({"A" + std::to_string(i), d});
  RegisterLayout layout(regs);  // capacity-checked

  // blocks() lists j = k down to 2.
  const auto& blocks = enc.blocks();
  auto block_of = [&](int j) -> const std::vector<std::string>& {
    return blocks[static_cast<size_t>(k - j)];
  };

  std::vector<Gate> gates;
  for (int j = 2; j <= k; ++j) {
    Operator aj = a_j_unitary(j);
    Vector col = aj.matrix().col(0);
    gates.push_back(PrepareGate{block_of(j), col});
  }
  Matrix sw = gates::swap_registers(d);
  for (int j = 2; j <= k; ++j) {
    for (int i = 1; i <= j - 1; ++i) {
      // Qubit i-1 (from the left) of block j controls transposition (i j).
      gates.push_back(ControlledUnitaryGate{
          {block_of(j)[static_cast<size_t>(i - 1)]},
          BasisPredicate{{1}},
          {"A" + std::to_string(i), "A" + std::to_string(j)},
          sw});
    }
  }
  if (anti) {
    for (int j = 2; j <= k; ++j) {
      for (const auto& q : block_of(j)) {
        gates.push_back(UnitaryGate{{q}, gates::pauli_z()});
      }
    }
  }
  for (int j = 2; j <= k; ++j) {
    Operator aj = a_j_unitary(j);
    gates.push_back(UnitaryGate{block_of(j), aj.matrix().adjoint()});
  }
  std::vector<std::string> all_controls = control_names(enc, "");
  gates.push_back(MeasureGate{all_controls, "control"});
  return Circuit(std::move(layout), std::move(gates));
}

}  // namespace

Circuit build_sk_sym_test(int k, int d) {
  return build_barenco_test(k, d, /*anti=*/false);
}

Circuit build_antisym_test(int k, int d) {
  return build_barenco_test(k, d, /*anti=*/true);
}

Circuit build_projector_uncompute(const UnitaryRep& rep,
                                  const ControlEncoding& enc, bool anti) {
  check_same_group(rep, enc);
  if (anti && !enc.parity_valid()) {
    throw GroupError("antisymmetric projection requires a parity-valid encoding");
  }
  std::vector<Register> regs{{"Cp", 2}};
  for (const auto& r : enc.control_layout().registers()) regs.push_back(r);
  for (const auto& r : rep.data_layout().registers()) regs.push_back(r);
  RegisterLayout layout(regs);

  std::vector<std::string> controls = control_names(enc, "");
  Vector plus = plus_state(enc).amplitudes();
  Vector flag_state = anti ? minus_state(enc).amplitudes() : plus;

  std::vector<Gate> gates;
  gates.push_back(PrepareGate{controls, plus});
  append_controlled_rep(gates, controls, enc, rep, /*dagger=*/false);
  gates.push_back(ControlledOnStateGate{controls, flag_state, "Cp"});
  append_controlled_rep(gates, controls, enc, rep, /*dagger=*/true);
  gates.push_back(MeasureGate{{"Cp"}, "flag"});
  return Circuit(std::move(layout), std::move(gates));
}

Circuit build_concatenation(const UnitaryRep& rep_g, const UnitaryRep& rep_h,
                            bool shared_control) {
  if (rep_g.dim() != rep_h.dim()) {
    throw LayoutError("representations act on different dimensions");
  }
  if (!(rep_g.data_layout() == rep_h.data_layout())) {
    throw LayoutError("representations use different data layouts");
  }
  if (shared_control) {
    bool same = rep_g.group() == rep_h.group();
    if (same) {
      for (long e = 0; e < rep_g.group().order() && same; ++e) {
        same = (rep_g.matrix(e) - rep_h.matrix(e)).cwiseAbs().maxCoeff() <=
               kTolUnitary;
      }
    }
    if (!same) {
      throw GroupError("shared control requires identical representations");
    }
  }

  ControlEncoding enc_g = ControlEncoding::for_group(rep_g.group());
  std::vector<Register> regs{{"Cp1", 2}, {"Cp2", 2}};
  std::vector<std::string> controls_g = control_names(enc_g, "g");
  for (size_t i = 0; i < controls_g.size(); ++i) {
    regs.push_back({controls_g[i], 2});
  }
  std::vector<std::string> controls_h;
  ControlEncoding enc_h = ControlEncoding::for_group(rep_h.group());
  if (!shared_control) {
    controls_h = control_names(enc_h, "h");
    for (size_t i = 0; i < controls_h.size(); ++i) {
      regs.push_back({controls_h[i], 2});
    }
  }
  for (const auto& r : rep_g.data_layout().registers()) regs.push_back(r);
  RegisterLayout layout(regs);

  Vector plus_g = plus_state(enc_g).amplitudes();
  std::vector<Gate> gates;
  gates.push_back(PrepareGate{controls_g, plus_g});
  append_controlled_rep(gates, controls_g, enc_g, rep_g, /*dagger=*/false);
  gates.push_back(ControlledOnStateGate{controls_g, plus_g, "Cp1"});
  if (shared_control) {
    gates.push_back(ControlledOnStateGate{controls_g, plus_g, "Cp2"});
    append_controlled_rep(gates, controls_g, enc_g, rep_g, /*dagger=*/true);
  } else {
    append_controlled_rep(gates, controls_g, enc_g, rep_g, /*dagger=*/true);
    Vector plus_h = plus_state(enc_h).amplitudes();
    gates.push_back(PrepareGate{controls_h, plus_h});
    append_controlled_rep(gates, controls_h, enc_h, rep_h, /*dagger=*/false);
    gates.push_back(ControlledOnStateGate{controls_h, plus_h, "Cp2"});
    append_controlled_rep(gates, controls_h, enc_h, rep_h, /*dagger=*/true);
  }
  gates.push_back(MeasureGate{{"Cp1", "Cp2"}, "flags"});
  return Circuit(std::move(layout), std::move(gates));
}

Circuit build_sym_anti_concat(const UnitaryRep& rep,
                              const ControlEncoding& enc) {
  check_same_group(rep, enc);
  std::vector<Register> regs{{"Cp", 2}, {"Cpp", 2}};
  for (const auto& r : enc.control_layout().registers()) regs.push_back(r);
  for (const auto& r : rep.data_layout().registers()) regs.push_back(r);
  RegisterLayout layout(regs);

  std::vector<std::string> controls = control_names(enc, "");
  Vector plus = plus_state(enc).amplitudes();
  Vector minus = minus_state(enc).amplitudes();

  std::vector<Gate> gates;
  gates.push_back(PrepareGate{controls, plus});
  append_controlled_rep(gates, controls, enc, rep, /*dagger=*/false);
  gates.push_back(ControlledOnStateGate{controls, plus, "Cp"});
  gates.push_back(ControlledOnStateGate{controls, minus, "Cpp"});
  append_controlled_rep(gates, controls, enc, rep, /*dagger=*/true);
  gates.push_back(MeasureGate{{"Cp", "Cpp"}, "flags"});
  return Circuit(std::move(layout), std::move(gates));
}

namespace {

struct TwoCopyFrame {
  RegisterLayout layout;
  std::vector<std::string> s1, s2;  // data registers per copy
};

TwoCopyFrame two_copy_frame(const Operator& u, long ref_dim,
                            std::vector<Register> head) {
  if (ref_dim < 1) throw ParameterError("ref_dim must be >= 1");
  TwoCopyFrame frame;
  std::vector<Register> regs = std::move(head);
  for (int copy = 1; copy <= 2; ++copy) {
    auto& names = copy == 1 ? frame.s1 : frame.s2;
    for (const auto& r : u.layout().registers()) {
      std::string name = r.name + "#" + std::to_string(copy);
      names.push_back(name);
      regs.push_back({name, r.dim});
    }
    if (ref_dim >= 2) {
      regs.push_back({"R#" + std::to_string(copy), ref_dim});
    }
  }
  frame.layout = RegisterLayout(regs);
  return frame;
}

void append_copy_swap(std::vector<Gate>& gates, const TwoCopyFrame& frame,
                      const Operator& u, const std::string& control) {
  for (size_t i = 0; i < frame.s1.size(); ++i) {
    long d = u.layout().reg(static_cast<long>(i)).dim;
    gates.push_back(ControlledUnitaryGate{{control},
                                          BasisPredicate{{1}},
                                          {frame.s1[i], frame.s2[i]},
                                          gates::swap_registers(d)});
  }
}

}  // namespace

Circuit build_diff_proj(const Operator& u, long ref_dim) {
  if (!u.is_unitary()) {
    throw InvalidUnitaryError("U must be unitary");
  }
  Matrix u2 = u.matrix() * u.matrix();
  if ((u2 - Matrix::Identity(u.dim(), u.dim())).cwiseAbs().maxCoeff() >
      kTolUnitary) {
    throw InvalidUnitaryError(
        "U^2 != I: U is not a difference of complementary projectors");
  }

  TwoCopyFrame frame =
      two_copy_frame(u, ref_dim, {{"C3", 2}, {"C2", 2}, {"C1", 2}});
  Matrix h = gates::hadamard();
  Matrix z = gates::pauli_z();

  std::vector<Gate> gates;
  gates.push_back(UnitaryGate{{"C3"}, h});
  gates.push_back(UnitaryGate{{"C2"}, h});
  gates.push_back(UnitaryGate{{"C1"}, h});
  gates.push_back(ControlledUnitaryGate{
      {"C2"}, BasisPredicate{{1}}, frame.s1, u.matrix()});
  gates.push_back(ControlledUnitaryGate{
      {"C1"}, BasisPredicate{{1}}, frame.s2, u.matrix()});
  gates.push_back(UnitaryGate{{"C2"}, z});
  gates.push_back(UnitaryGate{{"C1"}, z});
  gates.push_back(UnitaryGate{{"C2"}, h});
  gates.push_back(UnitaryGate{{"C1"}, h});
  append_copy_swap(gates, frame, u, "C3");
  gates.push_back(ControlledUnitaryGate{
      {"C3"}, BasisPredicate{{1}}, {"C2", "C1"}, gates::swap_registers(2)});
  gates.push_back(UnitaryGate{{"C3"}, h});
  gates.push_back(MeasureGate{{"C3", "C2", "C1"}, "controls"});
  return Circuit(frame.layout, std::move(gates));
}

Circuit build_res_identity(const Operator& u, int r, long ref_dim) {
  if (r < 2) throw ParameterError("resolution order must be >= 2");
  if (!u.is_unitary()) {
    throw InvalidUnitaryError("U must be unitary");
  }
  {
    Eigen::ComplexEigenSolver<Matrix> es(u.matrix(), false);
    for (long i = 0; i < u.dim(); ++i) {
      Complex lam = es.eigenvalues()(i);
      double best = 2.0;
      for (int j = 0; j < r; ++j) {
        double phase = 2.0 * std::numbers::pi * j / r;
        best = std::min(
            best, std::abs(lam - Complex(std::cos(phase), std::sin(phase))));
      }
      if (best > 1e-8) {
        throw InvalidUnitaryError(
            "spectrum is not contained in the r-th roots of unity");
      }
    }
  }

  TwoCopyFrame frame = two_copy_frame(
      u, ref_dim, {{"C3", 2}, {"C2", static_cast<long>(r)},
                   {"C1", static_cast<long>(r)}});

  std::vector<Gate> gates;
  gates.push_back(UnitaryGate{{"C3"}, gates::hadamard()});
  gates.push_back(UnitaryGate{{"C2"}, gates::qft(r)});
  gates.push_back(UnitaryGate{{"C1"}, gates::qft(r)});
  Matrix upow = Matrix::Identity(u.dim(), u.dim());
  for (int a = 1; a < r; ++a) {
    upow = upow * u.matrix();
    gates.push_back(ControlledUnitaryGate{
        {"C2"}, BasisPredicate{{a}}, frame.s1, upow});
    gates.push_back(ControlledUnitaryGate{
        {"C1"}, BasisPredicate{{a}}, frame.s2, upow});
  }
  gates.push_back(UnitaryGate{{"C2"}, gates::ztilde(r)});
  gates.push_back(UnitaryGate{{"C1"}, gates::ztilde(r)});
  gates.push_back(UnitaryGate{{"C2"}, gates::iqft(r)});
  gates.push_back(UnitaryGate{{"C1"}, gates::iqft(r)});
  append_copy_swap(gates, frame, u, "C3");
  gates.push_back(ControlledUnitaryGate{
      {"C3"}, BasisPredicate{{1}}, {"C2", "C1"}, gates::swap_registers(r)});
  gates.push_back(UnitaryGate{{"C3"}, gates::hadamard()});
  gates.push_back(MeasureGate{{"C3", "C2", "C1"}, "controls"});
  return Circuit(frame.layout, std::move(gates));
}

std::pair<Circuit, ResourceCount> build_schmidt_test(int n_r, int n_s, int r) {
  if (n_r < 1 || n_s < 1) throw ParameterError("need qubits on both sides");
  if (r < 1) throw ParameterError("need r >= 1");
  const int copies = r + 1;
  ControlEncoding enc = ControlEncoding::barenco(copies);

  std::vector<Register> regs;
  std::vector<std::string> controls_r = control_names(enc, "R");
  std::vector<std::string> controls_s = control_names(enc, "S");
  for (const auto& n : controls_r) regs.push_back({n, 2});
  for (const auto& n : controls_s) regs.push_back({n, 2});
  for (int c = 1; c <= copies; ++c) {
    for (int q = 1; q <= n_r; ++q) {
      regs.push_back({"R" + std::to_string(q) + "#" + std::to_string(c), 2});
    }
    for (int q = 1; q <= n_s; ++q) {
      regs.push_back({"S" + std::to_string(q) + "#" + std::to_string(c), 2});
    }
  }
  RegisterLayout layout(regs);  // capacity-checked

  const auto& blocks = enc.blocks();
  auto block_of = [&](const std::string& prefix, int j) {
    std::vector<std::string> names;
    for (const auto& q : blocks[static_cast<size_t>(copies - j)]) {
      names.push_back(prefix + q);
    }
    return names;
  };

  std::vector<Gate> gates;
  for (const std::string& side : {std::string("R"), std::string("S")}) {
    for (int j = 2; j <= copies; ++j) {
      gates.push_back(
          PrepareGate{block_of(side, j), a_j_unitary(j).matrix().col(0)});
    }
  }
  Matrix sw = gates::swap_registers(2);
  for (const std::string& side : {std::string("R"), std::string("S")}) {
    int nq = side == "R" ? n_r : n_s;
    for (int j = 2; j <= copies; ++j) {
      for (int i = 1; i <= j - 1; ++i) {
        const std::string control =
            block_of(side, j)[static_cast<size_t>(i - 1)];
        for (int q = 1; q <= nq; ++q) {
          gates.push_back(ControlledUnitaryGate{
              {control},
              BasisPredicate{{1}},
              {side + std::to_string(q) + "#" + std::to_string(i),
               side + std::to_string(q) + "#" + std::to_string(j)},
              sw});
        }
      }
    }
  }
  for (const auto& q : controls_r) {
    gates.push_back(UnitaryGate{{q}, gates::pauli_z()});
  }
  for (const auto& q : controls_s) {
    gates.push_back(UnitaryGate{{q}, gates::pauli_z()});
  }
  for (const std::string& side : {std::string("R"), std::string("S")}) {
    for (int j = 2; j <= copies; ++j) {
      gates.push_back(
          UnitaryGate{block_of(side, j), a_j_unitary(j).matrix().adjoint()});
    }
  }
  std::vector<std::string> measured = controls_r;
  measured.insert(measured.end(), controls_s.begin(), controls_s.end());
  gates.push_back(MeasureGate{measured, "controls"});
  return {Circuit(std::move(layout), std::move(gates)),
          schmidt_resource_count(n_r + n_s, r)};
}

ComplexTensorState schmidt_input(const ComplexTensorState& psi, int n_r,
                                 int n_s, int r) {
  if (psi.layout().size() != n_r + n_s) {
    throw LayoutError("state register count does not match cut");
  }
  for (long i = 0; i < psi.layout().size(); ++i) {
    if (psi.layout().reg(i).dim != 2) {
      throw LayoutError("Schmidt test expects qubit registers");
    }
  }
  const int copies = r + 1;
  std::vector<ComplexTensorState> renamed_copies;
  for (int c = 1; c <= copies; ++c) {
    std::map<std::string, std::string> names;
    for (int q = 1; q <= n_r; ++q) {
      names[psi.layout().reg(q - 1).name] =
          "R" + std::to_string(q) + "#" + std::to_string(c);
    }
    for (int q = 1; q <= n_s; ++q) {
      names[psi.layout().reg(n_r + q - 1).name] =
          "S" + std::to_string(q) + "#" + std::to_string(c);
    }
    renamed_copies.push_back(renamed(psi, names));
  }
  ComplexTensorState out = renamed_copies[0];
  for (int c = 1; c < copies; ++c) out = tensor(out, renamed_copies[c]);
  return out;
}

Circuit build_werner_test(long half_dim, long ref_dim) {
  if (half_dim < 2) throw ParameterError("half dimension must be >= 2");
  RegisterLayout halves({{"A", half_dim}, {"B", half_dim}});
  Operator u(halves, gates::swap_registers(half_dim));
  return build_diff_proj(u, ref_dim);
}

namespace {

Circuit build_switch(const Operator& first_branch, const Operator& second_branch,
                     std::vector<Register> extra) {
  std::vector<Register> regs{{"C", 2}};
  for (const auto& r : first_branch.layout().registers()) regs.push_back(r);
  for (auto& r : extra) regs.push_back(std::move(r));
  RegisterLayout layout(regs);

  std::vector<std::string> data;
  for (const auto& r : first_branch.layout().registers()) {
    data.push_back(r.name);
  }
  std::vector<Gate> gates;
  gates.push_back(UnitaryGate{{"C"}, gates::hadamard()});
  gates.push_back(UnitaryGate{{"C"}, gates::pauli_z()});
  gates.push_back(ControlledUnitaryGate{
      {"C"}, BasisPredicate{{0}}, data, first_branch.matrix()});
  gates.push_back(ControlledUnitaryGate{
      {"C"}, BasisPredicate{{1}}, data, second_branch.matrix()});
  gates.push_back(UnitaryGate{{"C"}, gates::hadamard()});
  gates.push_back(MeasureGate{{"C"}, "switch"});
  return Circuit(std::move(layout), std::move(gates));
}

}  // namespace

Circuit build_commutator(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim() || !(a.layout() == b.layout())) {
    throw LayoutError("A and B must act on the same layout");
  }
  if (!a.is_unitary() || !b.is_unitary()) {
    throw InvalidUnitaryError("plain commutator circuit requires unitaries");
  }
  Operator ab(a.layout(), a.matrix() * b.matrix());
  Operator ba(a.layout(), b.matrix() * a.matrix());
  return build_switch(ab, ba, {});
}

Circuit build_commutator_bch(const Operator& a_generator, const Operator& b) {
  if (a_generator.dim() != b.dim() ||
      !(a_generator.layout() == b.layout())) {
    throw LayoutError("A and B must act on the same layout");
  }
  if (!a_generator.is_hermitian()) {
    throw InvalidGeneratorError("BCH generator must be Hermitian");
  }
  if (!b.is_unitary()) {
    throw InvalidUnitaryError("B must be unitary");
  }
  Matrix e = gates::exp_i_hermitian(a_generator.matrix());
  Operator conjugated(b.layout(), e * b.matrix() * e.adjoint());
  return build_switch(conjugated, b, {});
}

std::pair<double, double> commutator_norm_summaries(const Operator& a,
                                                    const Operator& b) {
  if (a.dim() != b.dim() || !(a.layout() == b.layout())) {
    throw LayoutError("A and B must act on the same layout");
  }
  if (!a.is_unitary() || !b.is_unitary()) {
    throw InvalidUnitaryError("commutator summaries require unitaries");
  }
  const long d = a.dim();
  Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();

  // Maximally mixed input via a maximally entangled ancilla.
  Operator ab(a.layout(), a.matrix() * b.matrix());
  Operator ba(a.layout(), b.matrix() * a.matrix());
  Circuit circuit = build_switch(ab, ba, {{"anc", d}});
  std::vector<Register> in_regs;
  for (const auto& r : a.layout().registers()) in_regs.push_back(r);
  in_regs.push_back({"anc", d});
  RegisterLayout in_layout(in_regs);
  Vector phi = Vector::Zero(d * d);
  for (long i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
  ComplexTensorState mixed_input(in_layout, std::move(phi));
  double frob_circuit =
      measure_distribution(circuit, mixed_input).prob({0});
  double frob_direct = comm.squaredNorm() / (4.0 * d);
  if (std::abs(frob_circuit - frob_direct) > kTolSpectral) {
    throw std::logic_error("Frobenius commutator routes disagree");
  }

  // Maximization over inputs: top right-singular vector of [A,B].
  Eigen::JacobiSVD<Matrix> svd(comm, Eigen::ComputeThinV);
  Vector top = svd.matrixV().col(0);
  Circuit plain = build_commutator(a, b);
  ComplexTensorState peak_input(a.layout(), top);
  double spec_circuit = measure_distribution(plain, peak_input).prob({0});
  double s0 = svd.singularValues()(0);
  double spec_direct = s0 * s0 / 4.0;
  if (std::abs(spec_circuit - spec_direct) > kTolSpectral) {
    throw std::logic_error("spectral commutator routes disagree");
  }
  return {frob_circuit, spec_circuit};
}

double all_zeros_probability(const Circuit& c, const ComplexTensorState& in) {
  OutcomeDistribution dist = measure_distribution(c, in);
  std::vector<long> zeros(dist.registers().size(), 0);
  return dist.prob(zeros);
}

long purification_ref_dim(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                           Eigen::EigenvaluesOnly);
  long rank = 0;
  for (long i = 0; i < rho.dim(); ++i) {
    if (es.eigenvalues()(i) > kTolAlgebra) ++rank;
  }
  return std::max<long>(2, rank);
}

namespace {

ComplexTensorState copy_with_suffix(const ComplexTensorState& psi_sr,
                                    int copy) {
  std::map<std::string, std::string> names;
  for (const auto& r : psi_sr.layout().registers()) {
    names[r.name] = r.name + "#" + std::to_string(copy);
  }
  return renamed(psi_sr, names);
}

}  // namespace

ComplexTensorState two_copy_input(const DensityOperator& rho) {
  ComplexTensorState pure = purify(rho, "R");
  // purify returns (R, system); the circuits expect (system..., R).
  std::vector<std::string> order;
  for (const auto& r : pure.layout().registers()) order.push_back(r.name);
  std::rotate(order.begin(), order.begin() + 1, order.end());
  // Rebuild with registers reordered: gather amplitudes accordingly.
  const RegisterLayout& src = pure.layout();
  std::vector<Register> regs;
  for (const auto& n : order) regs.push_back(src.reg(src.position(n)));
  RegisterLayout dst(regs);
  Vector out = Vector::Zero(dst.total_dim());
  std::vector<long> src_digits(src.size());
  std::vector<long> dst_digits(dst.size());
  std::vector<long> map_pos;  // dst position of each src register
  for (long i = 0; i < src.size(); ++i) {
    map_pos.push_back(dst.position(src.reg(i).name));
  }
  const Vector& amps = pure.amplitudes();
  for (long i = 0; i < src.total_dim(); ++i) {
    if (amps(i) == Complex(0, 0)) continue;
    long rem = i;
    for (long p = src.size() - 1; p >= 0; --p) {
      src_digits[p] = rem % src.reg(p).dim;
      rem /= src.reg(p).dim;
    }
    for (long p = 0; p < src.size(); ++p) dst_digits[map_pos[p]] = src_digits[p];
    out(dst.index_of(dst_digits)) = amps(i);
  }
  ComplexTensorState reordered(dst, std::move(out));
  return tensor(copy_with_suffix(reordered, 1), copy_with_suffix(reordered, 2));
}

ComplexTensorState two_copy_input(const ComplexTensorState& psi) {
  return tensor(copy_with_suffix(psi, 1), copy_with_suffix(psi, 2));
}

}  // namespace projlab::constructions
