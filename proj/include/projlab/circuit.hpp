#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "projlab/tensor.hpp"

namespace projlab {

// Applies the unitary completion of `state` (first column = state) to the
// named registers; intended for registers still in |0...0>.
struct PrepareGate {
  std::vector<std::string> registers;
  Vector state;
};

struct UnitaryGate {
  std::vector<std::string> targets;
  Matrix op;
};

// Fires when the control registers' joint basis value lies in `values`.
struct BasisPredicate {
  std::vector<long> values;
};

// Projector-valued control |chi><chi| on the control registers.
struct StatePredicate {
  Vector state;
};

using ControlPredicate = std::variant<BasisPredicate, StatePredicate>;

struct ControlledUnitaryGate {
  std::vector<std::string> controls;
  ControlPredicate predicate;
  std::vector<std::string> targets;
  Matrix op;
};

// The "plus or minus controlled gate": X on the target qubit predicated on
// the control registers being in |chi>.
struct ControlledOnStateGate {
  std::vector<std::string> controls;
  Vector state;
  std::string target;
};

struct MeasureGate {
  std::vector<std::string> registers;
  std::string label;
};

using Gate = std::variant<PrepareGate, UnitaryGate, ControlledUnitaryGate,
                          ControlledOnStateGate, MeasureGate>;

// Ordered gate list over a register layout. Measure gates must be terminal
// (no unitary gate may follow on any register) and at most one Measure may
// name a given register.
class Circuit {
 public:
  Circuit(RegisterLayout layout, std::vector<Gate> gates);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::string>& measured() const { return measured_; }

 private:
  RegisterLayout layout_;
  std::vector<Gate> gates_;
  std::vector<std::string> measured_;
};

// Exact probabilities over measured register values. Outcomes are digit
// tuples in the measure-declaration order.
class OutcomeDistribution {
 public:
  OutcomeDistribution(std::vector<std::string> registers,
                      std::vector<long> dims,
                      std::map<std::vector<long>, double> entries);

  const std::vector<std::string>& registers() const { return registers_; }
  const std::vector<long>& dims() const { return dims_; }
  const std::map<std::vector<long>, double>& entries() const {
    return entries_;
  }
  double prob(const std::vector<long>& outcome) const;
  // Digit string for an outcome, e.g. "010"; digits joined with ',' if any
  // register dimension exceeds 10.
  std::string key(const std::vector<long>& outcome) const;

  void set_post_state(const std::vector<long>& outcome, ComplexTensorState s);
  const ComplexTensorState* post_state(const std::vector<long>& outcome) const;

 private:
  std::vector<std::string> registers_;
  std::vector<long> dims_;
  std::map<std::vector<long>, double> entries_;
  std::map<std::vector<long>, ComplexTensorState> post_states_;
};

struct ShotTally {
  long shots = 0;
  std::uint64_t seed = 0;
  std::map<std::vector<long>, long> counts;
};

// Deterministic final state. The input may cover a subset of the layout's
// registers; the rest start in |0>.
ComplexTensorState simulate(const Circuit& c, const ComplexTensorState& input);

OutcomeDistribution measure_distribution(const Circuit& c,
                                         const ComplexTensorState& input,
                                         bool want_post_states = false);

// Multinomial draw with a counter-based generator; reproducible per seed and
// independent of how shots might be blocked.
ShotTally sample(const OutcomeDistribution& dist, long shots,
                 std::uint64_t seed);

// Replace every ControlledOnState gate by its compiled form
// P^dagger -> controlled-on-all-zeros X -> P.
Circuit lower_controlled_on_state(const Circuit& c);

// Full unitary of the circuit (Measure gates excluded), for equivalence
// checks on small layouts.
Matrix circuit_unitary(const Circuit& c);

// Counter-based uniform stream: value in [0,1) for (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

}  // namespace projlab
