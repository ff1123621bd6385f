#include "projlab/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "projlab/gates.hpp"

namespace projlab {

namespace {

struct GateWires {
  std::vector<std::string> used;      // all registers the gate touches
  std::vector<std::string> measured;  // registers measured by this gate
};

GateWires wires_of(const Gate& gate) {
  GateWires w;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PrepareGate>) {
          w.used = g.registers;
        } else if constexpr (std::is_same_v<T, UnitaryGate>) {
          w.used = g.targets;
        } else if constexpr (std::is_same_v<T, ControlledUnitaryGate>) {
          w.used = g.controls;
          w.used.insert(w.used.end(), g.targets.begin(), g.targets.end());
        } else if constexpr (std::is_same_v<T, ControlledOnStateGate>) {
          w.used = g.controls;
          w.used.push_back(g.target);
        } else if constexpr (std::is_same_v<T, MeasureGate>) {
          w.used = g.registers;
          w.measured = g.registers;
        }
      },
      gate);
  return w;
}

long product_dim(const RegisterLayout& layout,
                 const std::vector<std::string>& names) {
  long d = 1;
  for (const auto& n : names) d *= layout.dim_of(n);
  return d;
}

}  // namespace

Circuit::Circuit(RegisterLayout layout, std::vector<Gate> gates)
    : layout_(std::move(layout)), gates_(std::move(gates)) {
  std::set<std::string> measured_regs;
  for (const auto& gate : gates_) {
    GateWires w = wires_of(gate);
    std::set<std::string> seen;
    for (const auto& name : w.used) {
      layout_.position(name);  // throws LayoutError if unknown
      if (!seen.insert(name).second) {
        throw LayoutError("gate touches register '" + name + "' twice");
      }
      if (measured_regs.count(name)) {
        throw LayoutError("register '" + name +
                          "' used after being measured");
      }
    }
    if (const auto* cu = std::get_if<ControlledUnitaryGate>(&gate)) {
      long cd = product_dim(layout_, cu->controls);
      long td = product_dim(layout_, cu->targets);
      if (cu->op.rows() != td || cu->op.cols() != td) {
        throw LayoutError("controlled operator dimension mismatch");
      }
      if (const auto* bp = std::get_if<BasisPredicate>(&cu->predicate)) {
        for (long v : bp->values) {
          if (v < 0 || v >= cd) {
            throw LayoutError("control predicate value out of range");
          }
        }
      } else {
        const auto& sp = std::get<StatePredicate>(cu->predicate);
        if (sp.state.size() != cd) {
          throw LayoutError("control predicate state dimension mismatch");
        }
      }
    } else if (const auto* cos = std::get_if<ControlledOnStateGate>(&gate)) {
      if (cos->state.size() != product_dim(layout_, cos->controls)) {
        throw LayoutError("control state dimension mismatch");
      }
      if (layout_.dim_of(cos->target) != 2) {
        throw LayoutError("controlled-on-state target must be a qubit");
      }
    } else if (const auto* pg = std::get_if<PrepareGate>(&gate)) {
      if (pg->state.size() != product_dim(layout_, pg->registers)) {
        throw LayoutError("prepare state dimension mismatch");
      }
    } else if (const auto* ug = std::get_if<UnitaryGate>(&gate)) {
      long td = product_dim(layout_, ug->targets);
      if (ug->op.rows() != td || ug->op.cols() != td) {
        throw LayoutError("unitary dimension mismatch");
      }
    }
    for (const auto& name : w.measured) {
      if (!measured_regs.insert(name).second) {
        throw LayoutError("register '" + name + "' measured twice");
      }
      measured_.push_back(name);
    }
  }
}

OutcomeDistribution::OutcomeDistribution(
    std::vector<std::string> registers, std::vector<long> dims,
    std::map<std::vector<long>, double> entries)
    : registers_(std::move(registers)),
      dims_(std::move(dims)),
      entries_(std::move(entries)) {
  double total = 0;
  for (const auto& [outcome, p] : entries_) {
    if (p < -kTolAlgebra) {
      throw InvalidStateError("negative outcome probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kTolUnitary) {
    throw InvalidStateError("outcome probabilities do not sum to 1");
  }
}

double OutcomeDistribution::prob(const std::vector<long>& outcome) const {
  auto it = entries_.find(outcome);
  return it == entries_.end() ? 0.0 : it->second;
}

std::string OutcomeDistribution::key(const std::vector<long>& outcome) const {
  bool wide = std::any_of(dims_.begin(), dims_.end(),
                          [](long d) { return d > 10; });
  std::ostringstream out;
  for (size_t i = 0; i < outcome.size(); ++i) {
    if (wide && i > 0) out << ',';
    out << outcome[i];
  }
  return out.str();
}

void OutcomeDistribution::set_post_state(const std::vector<long>& outcome,
                                         ComplexTensorState s) {
  post_states_.emplace(outcome, std::move(s));
}

const ComplexTensorState* OutcomeDistribution::post_state(
    const std::vector<long>& outcome) const {
  auto it = post_states_.find(outcome);
  return it == post_states_.end() ? nullptr : &it->second;
}

namespace {

// |chi><chi| (x) (U - I) applied and added back: out = in + chi (chi^* . in)
// with U on targets of the chi component.
ComplexTensorState apply_state_predicated(const ComplexTensorState& state,
                                          const std::vector<std::string>& controls,
                                          const Vector& chi,
                                          const std::vector<std::string>& targets,
                                          const Matrix& op) {
  const RegisterLayout& layout = state.layout();
  std::vector<long> cpos = layout.positions(controls);
  const long cdim = chi.size();

  // Offsets of control basis values in the flat index.
  std::vector<long> coffsets(cdim, 0);
  for (long c = 0; c < cdim; ++c) {
    long rem = c, off = 0;
    for (long i = static_cast<long>(cpos.size()) - 1; i >= 0; --i) {
      long d = layout.reg(cpos[i]).dim;
      off += (rem % d) * layout.stride(cpos[i]);
      rem /= d;
    }
    coffsets[c] = off;
  }

  const long n = layout.total_dim();
  std::vector<bool> is_control(layout.size(), false);
  for (long p : cpos) is_control[p] = true;

  // Project out the chi component: w(rest) = sum_c conj(chi_c) in(c, rest).
  const Vector& in = state.amplitudes();
  Vector w = Vector::Zero(n);  // stored on full index with control digits 0
  for (long base = 0; base < n; ++base) {
    bool zero_controls = true;
    long rem = base;
    for (long i = layout.size() - 1; i >= 0; --i) {
      long d = layout.reg(i).dim;
      if (is_control[i] && rem % d != 0) {
        zero_controls = false;
        break;
      }
      rem /= d;
    }
    if (!zero_controls) continue;
    Complex acc = 0;
    for (long c = 0; c < cdim; ++c) {
      acc += std::conj(chi(c)) * in(base + coffsets[c]);
    }
    w(base) = acc;
  }

  // Apply (U - I) on targets of w.
  ComplexTensorState wstate(layout, w, /*normalized=*/false);
  Matrix diff = op - Matrix::Identity(op.rows(), op.cols());
  ComplexTensorState wdiff =
      apply(Operator(layout.subset(targets), diff), targets, wstate);

  // out = in + chi (x) wdiff.
  Vector out = in;
  const Vector& wd = wdiff.amplitudes();
  for (long base = 0; base < n; ++base) {
    if (wd(base) == Complex(0, 0)) continue;
    // wd only populated where control digits are zero
    for (long c = 0; c < cdim; ++c) {
      out(base + coffsets[c]) += chi(c) * wd(base);
    }
  }
  return ComplexTensorState(layout, std::move(out), state.normalized());
}

ComplexTensorState apply_basis_predicated(const ComplexTensorState& state,
                                          const std::vector<std::string>& controls,
                                          const std::vector<long>& values,
                                          const std::vector<std::string>& targets,
                                          const Matrix& op) {
  const RegisterLayout& layout = state.layout();
  std::vector<long> cpos = layout.positions(controls);
  std::vector<long> tpos = layout.positions(targets);
  const long tdim = op.rows();

  std::vector<long> toffsets(tdim, 0);
  for (long t = 0; t < tdim; ++t) {
    long rem = t, off = 0;
    for (long i = static_cast<long>(tpos.size()) - 1; i >= 0; --i) {
      long d = layout.reg(tpos[i]).dim;
      off += (rem % d) * layout.stride(tpos[i]);
      rem /= d;
    }
    toffsets[t] = off;
  }
  std::set<long> value_set(values.begin(), values.end());

  const long n = layout.total_dim();
  std::vector<bool> skip(layout.size(), false);
  for (long p : tpos) skip[p] = true;

  Vector out = state.amplitudes();
  Vector scratch(tdim);
  std::vector<long> digits(layout.size());
  for (long base = 0; base < n; ++base) {
    long rem = base;
    bool zero_targets = true;
    for (long i = layout.size() - 1; i >= 0; --i) {
      long d = layout.reg(i).dim;
      digits[i] = rem % d;
      if (skip[i] && digits[i] != 0) zero_targets = false;
      rem /= d;
    }
    if (!zero_targets) continue;
    long cvalue = 0;
    for (long p : cpos) cvalue = cvalue * layout.reg(p).dim + digits[p];
    if (!value_set.count(cvalue)) continue;
    for (long t = 0; t < tdim; ++t) scratch(t) = out(base + toffsets[t]);
    Vector res = op * scratch;
    for (long t = 0; t < tdim; ++t) out(base + toffsets[t]) = res(t);
  }
  return ComplexTensorState(layout, std::move(out), state.normalized());
}

}  // namespace

ComplexTensorState simulate(const Circuit& c, const ComplexTensorState& input) {
  ComplexTensorState state = embed(c.layout(), input);
  for (const auto& gate : c.gates()) {
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, PrepareGate>) {
            Vector chi = g.state;
            double nrm = chi.norm();
            if (std::abs(nrm - 1.0) > kTolUnitary) {
              throw InvalidStateError("prepare state must be normalized");
            }
            Matrix p = gates::prepare_unitary(chi);
            state = apply(Operator(c.layout().subset(g.registers), p),
                          g.registers, state);
          } else if constexpr (std::is_same_v<T, UnitaryGate>) {
            state = apply(Operator(c.layout().subset(g.targets), g.op),
                          g.targets, state);
          } else if constexpr (std::is_same_v<T, ControlledUnitaryGate>) {
            if (const auto* bp = std::get_if<BasisPredicate>(&g.predicate)) {
              state = apply_basis_predicated(state, g.controls, bp->values,
                                             g.targets, g.op);
            } else {
              const auto& sp = std::get<StatePredicate>(g.predicate);
              state = apply_state_predicated(state, g.controls, sp.state,
                                             g.targets, g.op);
            }
          } else if constexpr (std::is_same_v<T, ControlledOnStateGate>) {
            state = apply_state_predicated(state, g.controls, g.state,
                                           {g.target}, gates::pauli_x());
          } else if constexpr (std::is_same_v<T, MeasureGate>) {
            // Terminal; handled by measure_distribution.
          }
        },
        gate);
  }
  return state;
}

OutcomeDistribution measure_distribution(const Circuit& c,
                                         const ComplexTensorState& input,
                                         bool want_post_states) {
  if (c.measured().empty()) {
    throw LayoutError("circuit declares no measured registers");
  }
  ComplexTensorState final_state = simulate(c, input);
  const RegisterLayout& layout = c.layout();
  std::vector<long> mpos = layout.positions(c.measured());
  std::vector<long> mdims;
  for (long p : mpos) mdims.push_back(layout.reg(p).dim);

  std::map<std::vector<long>, double> entries;
  const Vector& amps = final_state.amplitudes();
  std::vector<long> digits(layout.size());
  for (long i = 0; i < layout.total_dim(); ++i) {
    double w = std::norm(amps(i));
    if (w == 0.0) continue;
    long rem = i;
    for (long p = layout.size() - 1; p >= 0; --p) {
      digits[p] = rem % layout.reg(p).dim;
      rem /= layout.reg(p).dim;
    }
    std::vector<long> outcome;
    outcome.reserve(mpos.size());
    for (long p : mpos) outcome.push_back(digits[p]);
    entries[outcome] += w;
  }
  OutcomeDistribution dist(c.measured(), mdims, std::move(entries));

  if (want_post_states) {
    for (const auto& [outcome, p] : dist.entries()) {
      if (p <= kTolAlgebra) continue;
      Vector post = Vector::Zero(layout.total_dim());
      for (long i = 0; i < layout.total_dim(); ++i) {
        if (amps(i) == Complex(0, 0)) continue;
        long rem = i;
        bool match = true;
        for (long p2 = layout.size() - 1; p2 >= 0; --p2) {
          digits[p2] = rem % layout.reg(p2).dim;
          rem /= layout.reg(p2).dim;
        }
        for (size_t k = 0; k < mpos.size(); ++k) {
          if (digits[mpos[k]] != outcome[k]) {
            match = false;
            break;
          }
        }
        if (match) post(i) = amps(i);
      }
      post /= post.norm();
      dist.set_post_state(outcome,
                          ComplexTensorState(layout, std::move(post)));
    }
  }
  return dist;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t mixed = splitmix64(splitmix64(seed) ^ splitmix64(counter));
  return static_cast<double>(mixed >> 11) * 0x1.0p-53;
}

ShotTally sample(const OutcomeDistribution& dist, long shots,
                 std::uint64_t seed) {
  if (shots < 1) throw ParameterError("shots must be >= 1");
  std::vector<std::vector<long>> outcomes;
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& [outcome, p] : dist.entries()) {
    acc += std::max(0.0, p);
    outcomes.push_back(outcome);
    cdf.push_back(acc);
  }
  if (!cdf.empty()) cdf.back() = std::max(cdf.back(), 1.0);

  ShotTally tally;
  tally.shots = shots;
  tally.seed = seed;
  for (long t = 0; t < shots; ++t) {
    double u = counter_uniform(seed, static_cast<std::uint64_t>(t));
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    size_t idx = std::min<size_t>(static_cast<size_t>(it - cdf.begin()),
                                  outcomes.size() - 1);
    ++tally.counts[outcomes[idx]];
  }
  return tally;
}

Circuit lower_controlled_on_state(const Circuit& c) {
  std::vector<Gate> gates;
  for (const auto& gate : c.gates()) {
    if (const auto* cos = std::get_if<ControlledOnStateGate>(&gate)) {
      Matrix p = gates::prepare_unitary(cos->state);
      gates.push_back(UnitaryGate{cos->controls, p.adjoint()});
      gates.push_back(ControlledUnitaryGate{cos->controls,
                                            BasisPredicate{{0}},
                                            {cos->target},
                                            gates::pauli_x()});
      gates.push_back(UnitaryGate{cos->controls, p});
    } else {
      gates.push_back(gate);
    }
  }
  return Circuit(c.layout(), std::move(gates));
}

Matrix circuit_unitary(const Circuit& c) {
  const long n = c.layout().total_dim();
  Matrix u(n, n);
  for (long col = 0; col < n; ++col) {
    Vector e = Vector::Zero(n);
    e(col) = 1.0;
    ComplexTensorState in(c.layout(), std::move(e));
    u.col(col) = simulate(c, in).amplitudes();
  }
  return u;
}

}  // namespace projlab
