#include "gsys/classical.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gsys/errors.hpp"
#include "gsys/magma.hpp"

namespace gsys {

namespace {

void check_table(const std::vector<int>& table, std::size_t expected, int range,
                 const char* what) {
  if (table.size() != expected)
    throw Error(ErrorKind::BadParameter,
                std::string(what) + " table needs " + std::to_string(expected) +
                    " entries, got " + std::to_string(table.size()));
  for (int v : table)
    if (v < 0 || v >= range)
      throw Error(ErrorKind::BadParameter,
                  std::string(what) + " table entry " + std::to_string(v) +
                      " is out of range");
}

std::vector<std::string> block_names(const char* prefix, int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// Indicator values for one block; index -1 encodes the adjoined all-zero
// config.
void append_onehot(std::vector<int>& out, int n, int index) {
  for (int i = 0; i < n; ++i) out.push_back(i == index ? 1 : 0);
}

// The single set bit of a block, or nullopt when the block is not one-hot.
std::optional<int> onehot_index(const Config& g, std::size_t offset, int n) {
  int found = -1;
  for (int i = 0; i < n; ++i) {
    if (g.value_at(offset + static_cast<std::size_t>(i)) == 0) continue;
    if (found >= 0) return std::nullopt;
    found = i;
  }
  if (found < 0) return std::nullopt;
  return found;
}

}  // namespace

ClassicalModel ClassicalModel::make(int external_count, int motor_count,
                                    int sensor_count, int internal_count,
                                    std::vector<int> transition,
                                    std::vector<int> sensor,
                                    std::vector<int> internal_transition,
                                    std::vector<int> policy) {
  if (external_count < 1 || motor_count < 1 || sensor_count < 1 ||
      internal_count < 1)
    throw Error(ErrorKind::BadParameter,
                "every classical component needs at least one element");
  check_table(transition,
              static_cast<std::size_t>(external_count) * motor_count,
              external_count, "transition");
  check_table(sensor, static_cast<std::size_t>(external_count), sensor_count,
              "sensor");
  check_table(internal_transition,
              static_cast<std::size_t>(internal_count) * sensor_count,
              internal_count, "internal transition");
  check_table(policy, static_cast<std::size_t>(internal_count), motor_count,
              "policy");
  ClassicalModel m;
  m.nx_ = external_count;
  m.nu_ = motor_count;
  m.ny_ = sensor_count;
  m.ni_ = internal_count;
  m.f_ = std::move(transition);
  m.h_ = std::move(sensor);
  m.phi_ = std::move(internal_transition);
  m.pi_ = std::move(policy);
  return m;
}

CoupledState initial_coupled_state(const ClassicalModel& m, int internal,
                                   int external) {
  if (internal < 0 || internal >= m.internal_count() || external < 0 ||
      external >= m.external_count())
    throw Error(ErrorKind::BadParameter, "initial state out of range");
  return CoupledState{internal, external, m.sensor(external),
                      m.policy(internal)};
}

std::vector<CoupledState> all_initial_states(const ClassicalModel& m) {
  std::vector<CoupledState> inits;
  inits.reserve(static_cast<std::size_t>(m.internal_count()) *
                m.external_count());
  for (int i = 0; i < m.internal_count(); ++i)
    for (int x = 0; x < m.external_count(); ++x)
      inits.push_back(initial_coupled_state(m, i, x));
  return inits;
}

CoupledState classical_step(const ClassicalModel& m, const CoupledState& st) {
  const int xp = m.transition(st.external, st.motor);
  const int ip = m.internal_transition(st.internal, st.sensor);
  return CoupledState{ip, xp, m.sensor(xp), m.policy(ip)};
}

std::vector<CoupledState> classical_trace(const ClassicalModel& m,
                                          const CoupledState& st, int k) {
  if (k < 0)
    throw Error(ErrorKind::BadParameter, "trace length must be nonnegative");
  std::vector<CoupledState> trace;
  trace.reserve(static_cast<std::size_t>(k) + 1);
  trace.push_back(st);
  for (int i = 0; i < k; ++i) trace.push_back(classical_step(m, trace.back()));
  return trace;
}

Embedding embed(const ClassicalModel& m, int element_cap) {
  const int nx = m.external_count(), nu = m.motor_count(),
            ny = m.sensor_count(), ni = m.internal_count();
  if (nx > element_cap || nu > element_cap || ny > element_cap ||
      ni > element_cap)
    throw Error(ErrorKind::EncodingTooLarge,
                "indicator embedding caps each component at " +
                    std::to_string(element_cap) + " elements");

  const Magma g2 = cyclic_group(2);
  std::vector<std::string> x_vars = block_names("x", nx);
  std::vector<std::string> y_vars = block_names("y", ny);
  std::vector<std::string> u_vars = block_names("u", nu);
  std::vector<std::string> i_vars = block_names("i", ni);

  auto concat = [](std::initializer_list<const std::vector<std::string>*> blocks) {
    std::vector<std::string> names;
    for (const auto* b : blocks) names.insert(names.end(), b->begin(), b->end());
    return VarSet::of(std::move(names));
  };
  const VarSet a_vars = concat({&x_vars, &y_vars, &u_vars});
  const VarSet b_vars = concat({&i_vars, &y_vars, &u_vars});

  // Environment factor: sensor and motor blocks ride along one-hot, with the
  // motor block also admitting the adjoined all-zero config. A zero motor
  // latch holds the external state; the emitted motor block is always zero
  // (the agent supplies it across the overlap).
  std::vector<std::pair<Config, Config>> arows;
  std::vector<Config> h0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int u = -1; u < nu; ++u) {
        std::vector<int> in;
        append_onehot(in, nx, x);
        append_onehot(in, ny, y);
        append_onehot(in, nu, u);
        const int xp = u < 0 ? x : m.transition(x, u);
        std::vector<int> out;
        append_onehot(out, nx, xp);
        append_onehot(out, ny, m.sensor(xp));
        append_onehot(out, nu, -1);
        h0.push_back(Config::make(a_vars, std::move(in)));
        arows.emplace_back(h0.back(), Config::make(a_vars, std::move(out)));
      }

  // Agent factor, mirrored: a zero sensor latch holds the internal state,
  // and the emitted sensor block is always zero.
  std::vector<std::pair<Config, Config>> brows;
  std::vector<Config> h1;
  for (int i = 0; i < ni; ++i)
    for (int y = -1; y < ny; ++y)
      for (int u = 0; u < nu; ++u) {
        std::vector<int> in;
        append_onehot(in, ni, i);
        append_onehot(in, ny, y);
        append_onehot(in, nu, u);
        const int ip = y < 0 ? i : m.internal_transition(i, y);
        std::vector<int> out;
        append_onehot(out, ni, ip);
        append_onehot(out, ny, -1);
        append_onehot(out, nu, m.policy(ip));
        h1.push_back(Config::make(b_vars, std::move(in)));
        brows.emplace_back(h1.back(), Config::make(b_vars, std::move(out)));
      }

  GSystem environment = GSystem::from_table(
      g2, a_vars, std::move(arows), ConfigSet::of(a_vars, std::move(h0)));
  GSystem agent = GSystem::from_table(g2, b_vars, std::move(brows),
                                      ConfigSet::of(b_vars, std::move(h1)));
  GSystem coupled = couple(environment, agent);
  return Embedding{std::move(environment), std::move(agent),
                   std::move(coupled),    std::move(x_vars),
                   std::move(y_vars),     std::move(u_vars),
                   std::move(i_vars)};
}

Config encode_state(const Embedding& e, const CoupledState& st) {
  const int nx = static_cast<int>(e.x_vars.size());
  const int ny = static_cast<int>(e.y_vars.size());
  const int nu = static_cast<int>(e.u_vars.size());
  const int ni = static_cast<int>(e.i_vars.size());
  if (st.external < 0 || st.external >= nx || st.sensor < 0 ||
      st.sensor >= ny || st.motor < 0 || st.motor >= nu || st.internal < 0 ||
      st.internal >= ni)
    throw Error(ErrorKind::BadParameter, "state out of the embedding's range");
  // The coupled variable order is the environment's blocks followed by the
  // agent-only block: x, y, u, i.
  std::vector<int> vals;
  append_onehot(vals, nx, st.external);
  append_onehot(vals, ny, st.sensor);
  append_onehot(vals, nu, st.motor);
  append_onehot(vals, ni, st.internal);
  return Config::make(e.coupled.vars(), std::move(vals));
}

CoupledState decode_state(const Embedding& e, const Config& g) {
  if (!g.vars().same_names(e.coupled.vars()))
    throw Error(ErrorKind::VarSetMismatch,
                "config does not cover the embedding's variables");
  const Config r = reorder(g, e.coupled.vars());
  const std::size_t nx = e.x_vars.size(), ny = e.y_vars.size(),
                    nu = e.u_vars.size();
  const auto x = onehot_index(r, 0, static_cast<int>(nx));
  const auto y = onehot_index(r, nx, static_cast<int>(ny));
  const auto u = onehot_index(r, nx + ny, static_cast<int>(nu));
  const auto i = onehot_index(r, nx + ny + nu, static_cast<int>(e.i_vars.size()));
  if (!x || !y || !u || !i)
    throw Error(ErrorKind::BadParameter,
                "config has a block that is not one-hot");
  return CoupledState{*i, *x, *y, *u};
}

EquivalenceResult equivalence_check(const ClassicalModel& m, int k,
                                    const std::vector<CoupledState>& inits) {
  if (k < 0)
    throw Error(ErrorKind::BadParameter, "step count must be nonnegative");
  const std::vector<CoupledState> pool = inits.empty() ? all_initial_states(m) : inits;
  const Embedding e = embed(m);
  for (std::size_t idx = 0; idx < pool.size(); ++idx) {
    CoupledState cs = pool[idx];
    Config g = encode_state(e, cs);
    for (int step = 0; step <= k; ++step) {
      if (decode_state(e, g) != cs)
        return EquivalenceResult{false, idx, step};
      if (step < k) {
        g = e.coupled.step(g);
        cs = classical_step(m, cs);
      }
    }
  }
  return EquivalenceResult{true, std::nullopt, std::nullopt};
}

}  // namespace gsys
