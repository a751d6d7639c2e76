#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsys/coupling.hpp"
#include "gsys/system.hpp"

namespace gsys {

// Finite agent-environment loop: external states with a motor-driven
// transition and a sensor map, internal states with a sensor-driven
// transition and a policy. All four sets are index ranges 0..count-1 and
// all maps are total lookup tables.
class ClassicalModel {
 public:
  // transition: external_count x motor_count entries, row-major by external
  // state; sensor: one sensor reading per external state; internal
  // transition: internal_count x sensor_count entries, row-major by internal
  // state; policy: one motor command per internal state.
  static ClassicalModel make(int external_count, int motor_count,
                             int sensor_count, int internal_count,
                             std::vector<int> transition, std::vector<int> sensor,
                             std::vector<int> internal_transition,
                             std::vector<int> policy);

  int external_count() const { return nx_; }
  int motor_count() const { return nu_; }
  int sensor_count() const { return ny_; }
  int internal_count() const { return ni_; }

  int transition(int x, int u) const { return f_[static_cast<std::size_t>(x) * nu_ + u]; }
  int sensor(int x) const { return h_[static_cast<std::size_t>(x)]; }
  int internal_transition(int i, int y) const {
    return phi_[static_cast<std::size_t>(i) * ny_ + y];
  }
  int policy(int i) const { return pi_[static_cast<std::size_t>(i)]; }

 private:
  ClassicalModel() = default;
  int nx_ = 0, nu_ = 0, ny_ = 0, ni_ = 0;
  std::vector<int> f_, h_, phi_, pi_;
};

// One tick of the loop state: the internal and external states plus the
// latched sensor reading and motor command they will consume next.
struct CoupledState {
  int internal = 0;
  int external = 0;
  int sensor = 0;
  int motor = 0;

  friend bool operator==(const CoupledState& a, const CoupledState& b) {
    return a.internal == b.internal && a.external == b.external &&
           a.sensor == b.sensor && a.motor == b.motor;
  }
  friend bool operator!=(const CoupledState& a, const CoupledState& b) {
    return !(a == b);
  }
};

// Latches primed from the bare pair: sensor = sensor(external), motor =
// policy(internal).
CoupledState initial_coupled_state(const ClassicalModel& m, int internal,
                                   int external);

// Every (internal, external) pair, latches primed, internal index outermost.
std::vector<CoupledState> all_initial_states(const ClassicalModel& m);

// Synchronous update: both sides consume their latches and re-latch.
//   external' = transition(external, motor)
//   internal' = internal_transition(internal, sensor)
//   sensor'   = sensor(external')
//   motor'    = policy(internal')
// The internal side thus reads the sensor value of the previous external
// state; this staggering is exactly what the one-hot embedding below
// produces, making the trace correspondence exact.
CoupledState classical_step(const ClassicalModel& m, const CoupledState& st);

// [st, step(st), ..., step^k(st)]: k+1 entries.
std::vector<CoupledState> classical_trace(const ClassicalModel& m,
                                          const CoupledState& st, int k);

inline constexpr int kDefaultClassicalElementCap = 8;

// The indicator embedding into coupled systems over Z/2Z: each of the four
// sets becomes a block of one-hot variables ("x0","x1",... , "y...", "u...",
// "i..."). The environment factor acts on the x|y|u blocks with the y and u
// blocks allowed to be all-zero on the agent's and environment's off-sides
// respectively; the agent factor acts on i|y|u. Coupling them restricts to
// the star set, where every block is one-hot.
struct Embedding {
  GSystem environment;  // over x|y|u, domain: x,y one-hot, u one-hot or zero
  GSystem agent;        // over i|y|u, domain: i,u one-hot, y one-hot or zero
  GSystem coupled;      // couple(environment, agent), domain: all one-hot
  std::vector<std::string> x_vars, y_vars, u_vars, i_vars;
};

// EncodingTooLarge when any of the four sets exceeds `element_cap`.
Embedding embed(const ClassicalModel& m,
                int element_cap = kDefaultClassicalElementCap);

// One-hot encoding of a loop state over the coupled system's variables.
Config encode_state(const Embedding& e, const CoupledState& st);

// Inverse of encode_state; BadParameter unless every block is one-hot.
CoupledState decode_state(const Embedding& e, const Config& g);

struct EquivalenceResult {
  bool equal = false;
  // First divergence: which initial state (index into `inits`) and at which
  // step the decoded embedded state stopped matching the classical trace.
  std::optional<std::size_t> init_index;
  std::optional<int> step;
};

// Steps the embedded coupled system and the classical loop side by side for
// k steps from every given initial state, comparing decoded states exactly.
// An empty `inits` means every initial state of the model.
EquivalenceResult equivalence_check(const ClassicalModel& m, int k,
                                    const std::vector<CoupledState>& inits = {});

}  // namespace gsys
