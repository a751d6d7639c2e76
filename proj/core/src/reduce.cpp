#include "gsys/reduce.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gsys/atoms.hpp"
#include "gsys/coupling.hpp"
#include "gsys/errors.hpp"

namespace gsys {

namespace {

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = mul_sat(r, base);
  return r;
}

void require_ambient_match(const GSystem& s, const Cover& c) {
  if (!s.vars().same_names(c.ambient()))
    throw Error(ErrorKind::VarSetMismatch,
                "cover ambient variables do not match the system's");
}

void require_full_domain(const GSystem& s, const char* op) {
  if (s.has_restricted_domain())
    throw Error(ErrorKind::BadParameter,
                std::string(op) + " needs a system with a full domain");
}

// Positions of `names` inside `vars`'s order; callers guarantee membership.
std::vector<std::size_t> positions_in(const VarSet& vars, const VarSet& names) {
  std::vector<std::size_t> pos;
  pos.reserve(names.size());
  const auto& order = vars.names();
  for (const auto& n : names.names())
    pos.push_back(static_cast<std::size_t>(
        std::find(order.begin(), order.end(), n) - order.begin()));
  return pos;
}

// One pass over G^Z organized by the cover's three blocks: the next value of
// every overlap coordinate at every (a, m, b), plus each side coordinate's
// next value with the opposite side held at its least reference config.
struct Sweep {
  ConfigRange range_a;  // over X only
  ConfigRange range_m;  // over the overlap
  ConfigRange range_b;  // over Y only
  std::uint64_t ta = 0, tm = 0, tb = 0;
  // overlap_next[zi][(ia*tm+im)*tb+ib]
  std::vector<std::vector<int>> overlap_next;
  // side_x_next[xi][ia*tm+im], taken at b = least Y-only config
  std::vector<std::vector<int>> side_x_next;
  // side_y_next[yi][im*tb+ib], taken at a = least X-only config
  std::vector<std::vector<int>> side_y_next;
};

Sweep run_sweep(const GSystem& s, const Cover& c, std::uint64_t cap) {
  const Magma& m = s.magma();
  // Enforces |G|^|Z| <= cap before the block ranges are even built.
  ConfigRange guard(m, s.vars(), cap);
  (void)guard;
  Sweep w{ConfigRange(m, c.x_only(), cap), ConfigRange(m, c.overlap(), cap),
          ConfigRange(m, c.y_only(), cap)};
  w.ta = w.range_a.total();
  w.tm = w.range_m.total();
  w.tb = w.range_b.total();

  const auto zpos = positions_in(s.vars(), c.overlap());
  const auto xpos = positions_in(s.vars(), c.x_only());
  const auto ypos = positions_in(s.vars(), c.y_only());
  w.overlap_next.assign(zpos.size(), std::vector<int>(w.ta * w.tm * w.tb));
  w.side_x_next.assign(xpos.size(), std::vector<int>(w.ta * w.tm));
  w.side_y_next.assign(ypos.size(), std::vector<int>(w.tm * w.tb));

  for (std::uint64_t ia = 0; ia < w.ta; ++ia) {
    const Config a = w.range_a.at(ia);
    for (std::uint64_t im = 0; im < w.tm; ++im) {
      const Config am = merge(a, w.range_m.at(im));
      for (std::uint64_t ib = 0; ib < w.tb; ++ib) {
        const Config g = reorder(merge(am, w.range_b.at(ib)), s.vars());
        const Config out = s.step(g);
        stats::add_enumerated(1);
        const std::uint64_t idx = (ia * w.tm + im) * w.tb + ib;
        for (std::size_t zi = 0; zi < zpos.size(); ++zi)
          w.overlap_next[zi][idx] = out.value_at(zpos[zi]);
        if (ib == 0)
          for (std::size_t xi = 0; xi < xpos.size(); ++xi)
            w.side_x_next[xi][ia * w.tm + im] = out.value_at(xpos[xi]);
        if (ia == 0)
          for (std::size_t yi = 0; yi < ypos.size(); ++yi)
            w.side_y_next[yi][im * w.tb + ib] = out.value_at(ypos[yi]);
      }
    }
  }
  return w;
}

// First (a, m, b) violating the rectangle identity for overlap coordinate
// zi, in (a outer, m middle, b inner) order; references are index 0.
std::optional<std::array<std::uint64_t, 3>> rectangle_violation(const Sweep& w,
                                                                const Magma& m,
                                                                std::size_t zi) {
  const auto& F = w.overlap_next[zi];
  auto f = [&](std::uint64_t ia, std::uint64_t im, std::uint64_t ib) {
    return F[(ia * w.tm + im) * w.tb + ib];
  };
  for (std::uint64_t ia = 0; ia < w.ta; ++ia)
    for (std::uint64_t im = 0; im < w.tm; ++im)
      for (std::uint64_t ib = 0; ib < w.tb; ++ib)
        if (m.op(f(ia, im, ib), f(0, im, 0)) != m.op(f(ia, im, 0), f(0, im, ib)))
          return std::array<std::uint64_t, 3>{ia, im, ib};
  return std::nullopt;
}

// Bounded exhaustive search for tables u (over (a, m) cells) and v (over
// (m, b) cells) with u . v = F pointwise. Candidate u tables are visited in
// lexicographic order and v is derived cell by cell (each (m, b) cell is
// constrained independently), so the first hit is canonical and the search
// is complete. SearchInfeasible when the candidate space exceeds the cap.
std::optional<std::pair<std::vector<int>, std::vector<int>>> search_factors(
    const std::vector<int>& F, std::uint64_t ta, std::uint64_t tm,
    std::uint64_t tb, const Magma& m, std::uint64_t search_cap,
    const std::string& coordinate) {
  const int n = m.size();
  const std::uint64_t cells_u = ta * tm;
  const std::uint64_t cells_v = tm * tb;
  const std::uint64_t cand_u = pow_sat(static_cast<std::uint64_t>(n), cells_u);
  const std::uint64_t cand_v = pow_sat(static_cast<std::uint64_t>(n), cells_v);
  if (mul_sat(cand_u, cand_v) > search_cap)
    throw Error(ErrorKind::SearchInfeasible,
                "factor search space for coordinate '" + coordinate +
                    "' exceeds the cap");

  std::vector<int> u(cells_u, 0);
  for (;;) {
    std::vector<int> v(cells_v, 0);
    bool ok = true;
    for (std::uint64_t im = 0; im < tm && ok; ++im) {
      for (std::uint64_t ib = 0; ib < tb && ok; ++ib) {
        int found = -1;
        for (int val = 0; val < n && found < 0; ++val) {
          bool fits = true;
          for (std::uint64_t ia = 0; ia < ta && fits; ++ia)
            fits = m.op(u[ia * tm + im], val) == F[(ia * tm + im) * tb + ib];
          if (fits) found = val;
        }
        if (found < 0)
          ok = false;
        else
          v[im * tb + ib] = found;
      }
    }
    if (ok) return std::make_pair(std::move(u), std::move(v));

    // Advance to the next candidate table, last cell fastest.
    std::size_t j = u.size();
    bool carried_out = true;
    while (j > 0) {
      --j;
      if (++u[j] < n) {
        carried_out = false;
        break;
      }
      u[j] = 0;
    }
    if (carried_out) return std::nullopt;
  }
}

// Builds the factor systems from the sweep and the per-coordinate overlap
// factor tables: X-only coordinates take their sweep values, overlap
// coordinates take u (in sx) and v (in sy).
Decomposition assemble_decomposition(const GSystem& s, const Cover& c,
                                     const Sweep& w,
                                     const std::vector<std::vector<int>>& u_tabs,
                                     const std::vector<std::vector<int>>& v_tabs,
                                     std::uint64_t cap) {
  // For each output coordinate of a factor: is it an overlap coordinate,
  // and what is its index within its block?
  auto plan_for = [&](const VarSet& side, const VarSet& side_only) {
    std::vector<std::pair<bool, std::size_t>> plan;
    plan.reserve(side.size());
    const auto& overlap_names = c.overlap().names();
    const auto& only_names = side_only.names();
    for (const auto& name : side.names()) {
      auto it = std::find(overlap_names.begin(), overlap_names.end(), name);
      if (it != overlap_names.end())
        plan.emplace_back(true, static_cast<std::size_t>(it - overlap_names.begin()));
      else
        plan.emplace_back(false,
                          static_cast<std::size_t>(
                              std::find(only_names.begin(), only_names.end(), name) -
                              only_names.begin()));
    }
    return plan;
  };

  const auto xplan = plan_for(c.x(), c.x_only());
  std::vector<std::pair<Config, Config>> xrows;
  xrows.reserve(w.ta * w.tm);
  for (std::uint64_t ia = 0; ia < w.ta; ++ia)
    for (std::uint64_t im = 0; im < w.tm; ++im) {
      const Config in = reorder(merge(w.range_a.at(ia), w.range_m.at(im)), c.x());
      std::vector<int> vals(xplan.size());
      for (std::size_t k = 0; k < xplan.size(); ++k)
        vals[k] = xplan[k].first ? u_tabs[xplan[k].second][ia * w.tm + im]
                                 : w.side_x_next[xplan[k].second][ia * w.tm + im];
      xrows.emplace_back(in, Config::make(c.x(), std::move(vals)));
    }

  const auto yplan = plan_for(c.y(), c.y_only());
  std::vector<std::pair<Config, Config>> yrows;
  yrows.reserve(w.tm * w.tb);
  for (std::uint64_t im = 0; im < w.tm; ++im)
    for (std::uint64_t ib = 0; ib < w.tb; ++ib) {
      const Config in = reorder(merge(w.range_m.at(im), w.range_b.at(ib)), c.y());
      std::vector<int> vals(yplan.size());
      for (std::size_t k = 0; k < yplan.size(); ++k)
        vals[k] = yplan[k].first ? v_tabs[yplan[k].second][im * w.tb + ib]
                                 : w.side_y_next[yplan[k].second][im * w.tb + ib];
      yrows.emplace_back(in, Config::make(c.y(), std::move(vals)));
    }

  return Decomposition{
      GSystem::from_table(s.magma(), c.x(), std::move(xrows), std::nullopt, cap),
      GSystem::from_table(s.magma(), c.y(), std::move(yrows), std::nullopt, cap)};
}

}  // namespace

Cover Cover::make(VarSet x, VarSet y, VarSet ambient) {
  if (!VarSet::union_of(x, y).same_names(ambient))
    throw Error(ErrorKind::VarSetMismatch,
                "cover sets must union to the ambient variable set");
  Cover c;
  c.x_only_ = VarSet::difference(x, y);
  c.y_only_ = VarSet::difference(y, x);
  c.overlap_ = VarSet::intersection(x, y);
  c.x_ = std::move(x);
  c.y_ = std::move(y);
  c.ambient_ = std::move(ambient);
  return c;
}

ReduceResult decide_reducible(const GSystem& s, const Cover& c, ReducePath path,
                              std::uint64_t cap, std::uint64_t search_cap) {
  require_ambient_match(s, c);
  require_full_domain(s, "decide_reducible");
  const Magma& m = s.magma();
  if (path == ReducePath::Rectangle && !m.is_abelian_group())
    throw Error(ErrorKind::BadParameter,
                "the rectangle path needs an abelian group");
  const bool rectangle =
      path == ReducePath::Rectangle ||
      (path == ReducePath::Auto && m.is_abelian_group());

  // Side coordinates first: their next values may not reach across the
  // cover. The witness pair is the canonical dependence counterexample.
  for (const auto& z : c.x_only().names()) {
    DepResult r = dep_holds(s, c.x(), VarSet::of({z}), std::nullopt,
                            DepScan::Bucketed, cap);
    if (!r.holds)
      return {std::nullopt,
              DepCounterexample{z, r.witness->first, r.witness->second}};
  }
  for (const auto& z : c.y_only().names()) {
    DepResult r = dep_holds(s, c.y(), VarSet::of({z}), std::nullopt,
                            DepScan::Bucketed, cap);
    if (!r.holds)
      return {std::nullopt,
              DepCounterexample{z, r.witness->first, r.witness->second}};
  }

  const Sweep w = run_sweep(s, c, cap);
  const auto& overlap_names = c.overlap().names();
  std::vector<std::vector<int>> u_tabs(overlap_names.size());
  std::vector<std::vector<int>> v_tabs(overlap_names.size());
  for (std::size_t zi = 0; zi < overlap_names.size(); ++zi) {
    if (rectangle) {
      if (auto bad = rectangle_violation(w, m, zi))
        return {std::nullopt,
                RectangleCounterexample{overlap_names[zi], w.range_a.at((*bad)[0]),
                                        w.range_m.at((*bad)[1]),
                                        w.range_b.at((*bad)[2])}};
      // Canonical factors off the references: u(a,m) = F(a,m,b*) and
      // v(m,b) = F(a*,m,b) minus F(a*,m,b*).
      const auto& F = w.overlap_next[zi];
      u_tabs[zi].resize(w.ta * w.tm);
      v_tabs[zi].resize(w.tm * w.tb);
      for (std::uint64_t ia = 0; ia < w.ta; ++ia)
        for (std::uint64_t im = 0; im < w.tm; ++im)
          u_tabs[zi][ia * w.tm + im] = F[(ia * w.tm + im) * w.tb];
      for (std::uint64_t im = 0; im < w.tm; ++im)
        for (std::uint64_t ib = 0; ib < w.tb; ++ib)
          v_tabs[zi][im * w.tb + ib] =
              m.op(F[im * w.tb + ib], *m.inverse_of(F[im * w.tb]));
    } else {
      auto found = search_factors(w.overlap_next[zi], w.ta, w.tm, w.tb, m,
                                  search_cap, overlap_names[zi]);
      if (!found) return {std::nullopt, SearchExhausted{overlap_names[zi]}};
      u_tabs[zi] = std::move(found->first);
      v_tabs[zi] = std::move(found->second);
    }
  }

  Decomposition d = assemble_decomposition(s, c, w, u_tabs, v_tabs, cap);
  EqualityResult eq = verify_decomposition(s, d, cap);
  if (!eq.equal)
    throw Error(ErrorKind::BadParameter,
                "internal: derived decomposition failed verification");
  return {std::move(d), std::nullopt};
}

bool recheck_certificate(const GSystem& s, const Cover& c,
                         const IrreducibilityCertificate& cert,
                         std::uint64_t cap, std::uint64_t search_cap) {
  require_ambient_match(s, c);
  require_full_domain(s, "recheck_certificate");
  const Magma& m = s.magma();

  if (const auto* dep = std::get_if<DepCounterexample>(&cert)) {
    const VarSet* side = nullptr;
    if (c.x_only().contains(dep->coordinate))
      side = &c.x();
    else if (c.y_only().contains(dep->coordinate))
      side = &c.y();
    else
      return false;
    if (!dep->first.vars().same_names(s.vars()) ||
        !dep->second.vars().same_names(s.vars()))
      return false;
    const Config f = reorder(dep->first, s.vars());
    const Config g = reorder(dep->second, s.vars());
    if (restrict_to(f, *side).values() != restrict_to(g, *side).values())
      return false;
    return s.step(f).value_of(dep->coordinate) !=
           s.step(g).value_of(dep->coordinate);
  }

  if (const auto* r = std::get_if<RectangleCounterexample>(&cert)) {
    if (!c.overlap().contains(r->coordinate)) return false;
    if (!r->side_x.vars().same_names(c.x_only()) ||
        !r->overlap.vars().same_names(c.overlap()) ||
        !r->side_y.vars().same_names(c.y_only()))
      return false;
    const Config astar = ConfigRange(m, c.x_only(), cap).at(0);
    const Config bstar = ConfigRange(m, c.y_only(), cap).at(0);
    auto next_at = [&](const Config& a, const Config& mm, const Config& b) {
      return s.step(reorder(merge(merge(a, mm), b), s.vars()))
          .value_of(r->coordinate);
    };
    const int lhs = m.op(next_at(r->side_x, r->overlap, r->side_y),
                         next_at(astar, r->overlap, bstar));
    const int rhs = m.op(next_at(r->side_x, r->overlap, bstar),
                         next_at(astar, r->overlap, r->side_y));
    return lhs != rhs;
  }

  const auto& se = std::get<SearchExhausted>(cert);
  if (!c.overlap().contains(se.coordinate)) return false;
  const Sweep w = run_sweep(s, c, cap);
  const auto& overlap_names = c.overlap().names();
  const std::size_t zi = static_cast<std::size_t>(
      std::find(overlap_names.begin(), overlap_names.end(), se.coordinate) -
      overlap_names.begin());
  return !search_factors(w.overlap_next[zi], w.ta, w.tm, w.tb, m, search_cap,
                         se.coordinate)
              .has_value();
}

EqualityResult verify_decomposition(const GSystem& s, const Decomposition& d,
                                    std::uint64_t cap) {
  return systems_equal(couple(d.sx, d.sy, cap), s, cap);
}

namespace {

// Shared quadruple enumeration for the two transfer conditions: g0 ranges
// over G^Z, g1 varies g0 on the Y-only block, g0p varies g0 on the X-only
// block, and g1p is the unique config agreeing with g0p on X and g1 on Y.
// `violated` sees the four configs plus a step-output lookup.
template <typename Violated>
ConditionResult scan_quadruples(const GSystem& s, const Cover& c,
                                std::uint64_t cap, Violated&& violated) {
  require_ambient_match(s, c);
  require_full_domain(s, "the transfer-condition scan");
  const Magma& m = s.magma();
  ConfigRange range(m, s.vars(), cap);
  ConfigRange range_a(m, c.x_only(), cap);
  ConfigRange range_b(m, c.y_only(), cap);
  const std::uint64_t quads =
      mul_sat(range.total(), mul_sat(range_a.total(), range_b.total()));
  if (quads > cap)
    throw Error(ErrorKind::EnumerationCapExceeded,
                "transfer-condition scan needs " + std::to_string(quads) +
                    " quadruples, cap is " + std::to_string(cap));

  std::vector<std::vector<int>> outs(range.total());
  for (std::uint64_t i = 0; i < range.total(); ++i) {
    outs[i] = s.step(range.at(i)).values();
    stats::add_enumerated(1);
  }
  auto out_of = [&](const Config& g) -> const std::vector<int>& {
    return outs[config_index(g, m)];
  };

  for (std::uint64_t i0 = 0; i0 < range.total(); ++i0) {
    const Config g0 = range.at(i0);
    for (std::uint64_t jb = 0; jb < range_b.total(); ++jb) {
      const Config g1 = substitute(g0, range_b.at(jb));
      for (std::uint64_t ja = 0; ja < range_a.total(); ++ja) {
        const Config g0p = substitute(g0, range_a.at(ja));
        const Config g1p = substitute(g0p, range_b.at(jb));
        stats::add_enumerated(1);
        if (violated(g0, g1, g0p, g1p, out_of))
          return {false, Quadruple{g0, g1, g0p, g1p}};
      }
    }
  }
  return {true, std::nullopt};
}

bool agree_at(const std::vector<int>& a, const std::vector<int>& b,
              const std::vector<std::size_t>& pos) {
  for (auto p : pos)
    if (a[p] != b[p]) return false;
  return true;
}

}  // namespace

ConditionResult theorem_condition2(const GSystem& s, const Cover& c,
                                   std::uint64_t cap) {
  return scan_quadruples(
      s, c, cap,
      [](const Config& g0, const Config& g1, const Config& g0p,
         const Config& g1p, auto&& out_of) {
        const auto& o0 = out_of(g0);
        const auto& o1 = out_of(g1);
        const auto& o0p = out_of(g0p);
        const auto& o1p = out_of(g1p);
        const bool imp1 = o0 != o1 || o0p == o1p;
        const bool imp2 = o0 != o0p || o1 == o1p;
        return !(imp1 && imp2);
      });
}

ConditionResult theorem_condition3(const GSystem& s, const Cover& c,
                                   std::uint64_t cap) {
  const auto zpos = positions_in(s.vars(), c.overlap());
  const auto xpos = positions_in(s.vars(), c.x());
  const auto ypos = positions_in(s.vars(), c.y());
  return scan_quadruples(
      s, c, cap,
      [&](const Config& g0, const Config& g1, const Config& g0p,
          const Config& g1p, auto&& out_of) {
        // dep(A; overlap) over the two-element team {u, v}: if u and v agree
        // on A, their step outputs must agree on the overlap.
        auto dep2 = [&](const Config& u, const Config& v,
                        const std::vector<std::size_t>& apos) {
          if (!agree_at(u.values(), v.values(), apos)) return true;
          return agree_at(out_of(u), out_of(v), zpos);
        };
        const bool imp1 = !dep2(g0, g1, xpos) || dep2(g0p, g1p, xpos);
        const bool imp2 = !dep2(g0, g0p, ypos) || dep2(g1, g1p, ypos);
        return !(imp1 && imp2);
      });
}

EmergenceResult verify_emergence(const GSystem& s,
                                 const std::vector<GSystem>& factors,
                                 const Cover& c, ReducePath path,
                                 std::uint64_t cap, std::uint64_t search_cap) {
  if (factors.empty())
    throw Error(ErrorKind::BadParameter,
                "verify_emergence needs at least one factor");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    ReduceResult r = decide_reducible(factors[i], c, path, cap, search_cap);
    if (!r.reducible()) {
      EmergenceResult e;
      e.failing_factor = i;
      e.certificate = std::move(r.certificate);
      return e;
    }
  }
  GSystem composed = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;)
    composed = compose(factors[i], composed, cap);
  EqualityResult eq = systems_equal(composed, s, cap);
  if (!eq.equal) {
    EmergenceResult e;
    e.composition_witness = std::move(eq.witness);
    return e;
  }
  EmergenceResult e;
  e.holds = true;
  return e;
}

}  // namespace gsys
