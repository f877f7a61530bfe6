#include "gq/execution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gq/errors.hpp"
#include "gq/maxflow.hpp"

namespace gq {

Scenario Scenario::uniform(AttributeSchema schema, int belief, std::vector<ProcessId> faults) {
  const auto ks = schema.cardinalities();
  Scenario s{std::move(schema), {}, std::move(faults)};
  s.beliefs.assign(static_cast<std::size_t>(universe_size(ks)), belief);
  return s;
}

void Scenario::validate() const {
  const auto ks = schema.cardinalities();
  const std::int64_t n = universe_size(ks);
  if (static_cast<std::int64_t>(beliefs.size()) != n) {
    throw std::invalid_argument("scenario needs exactly one belief per process");
  }
  for (int b : beliefs) {
    if (b < 0 || b >= schema.d()) throw std::invalid_argument("belief attribute out of range");
  }
  for (ProcessId p : faults) {
    if (p < 0 || p >= n) throw std::invalid_argument("faulty process id out of range");
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Faulty:
      return "FAULTY";
    case Status::Wise:
      return "WISE";
    case Status::Naive:
      return "NAIVE";
  }
  return "?";
}

namespace {

struct Context {
  Universe u;
  ProcessSet faults;
  std::map<int, GridParams> params;
  std::map<int, std::optional<FailproneDescriptor>> cover;  // per belief

  explicit Context(const Scenario& s) : u(s.schema), faults(u.empty_set()) {
    s.validate();
    for (ProcessId p : s.faults) faults.insert(p);
    for (int b : s.beliefs) {
      if (params.count(b) == 0) {
        params.emplace(b, grid_params(s.schema, b));
        cover.emplace(b, covering_failprone(u, params.at(b), faults));
      }
    }
  }
};

}  // namespace

std::vector<ProcessVerdict> classify(const Scenario& s) {
  const Context ctx(s);
  std::vector<ProcessVerdict> out;
  for (ProcessId p = 0; p < ctx.u.n(); ++p) {
    ProcessVerdict v;
    v.process = p;
    v.belief = s.beliefs[p];
    if (ctx.faults.contains(p)) {
      v.status = Status::Faulty;
    } else {
      v.status = ctx.cover.at(v.belief) ? Status::Wise : Status::Naive;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ProcessVerdict> check_availability(const Scenario& s) {
  const Context ctx(s);
  auto out = classify(s);
  for (auto& v : out) {
    if (v.status == Status::Faulty) continue;
    // a canonical quorum P \ F' avoids F exactly when F is contained in F'
    const auto& c = ctx.cover.at(v.belief);
    v.availability_ok = c.has_value();
    if (c) {
      v.covering = *c;
      v.quorum = canonical_quorum(ctx.u, ctx.params.at(v.belief), *c);
    }
  }
  return out;
}

SafetyReport check_pairwise_safety(const Scenario& s, int i, int j, std::int64_t budget) {
  if (i == j) throw std::invalid_argument("pairwise safety needs two distinct beliefs");
  s.validate();
  const Universe u(s.schema);
  ProcessSet faults = u.empty_set();
  for (ProcessId p : s.faults) faults.insert(p);
  const GridParams gi = grid_params(s.schema, i);
  const GridParams gj = grid_params(s.schema, j);
  SafetyReport rep;
  rep.i = i;
  rep.j = j;
  rep.joint_fault = is_joint_fault(u, gi, gj, faults);
  const BigInt combos = binomial(gi.k, gi.f) * binomial(gj.k, gj.f);
  if (combos > budget) throw BudgetExceeded(combos, budget);
  const int ki = static_cast<int>(gi.k);
  const int kj = static_cast<int>(gj.k);
  const auto cells = u.cells(i, j);
  // correct processes per cell
  std::vector<std::int64_t> correct(cells.size(), 0);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (ProcessId p : cells[c]) correct[c] += faults.contains(p) ? 0 : 1;
  }
  for_each_combination(ki, static_cast<int>(gi.f), [&](const std::vector<int>& rows) {
    return for_each_combination(kj, static_cast<int>(gj.f), [&](const std::vector<int>& cols) {
      ++rep.full_choices_examined;
      std::vector<char> in_s(static_cast<std::size_t>(ki), 0);
      std::vector<char> in_t(static_cast<std::size_t>(kj), 0);
      for (int a : rows) in_s[a] = 1;
      for (int b : cols) in_t[b] = 1;
      // every correct process outside the full values needs a row or column partial slot
      const int src = 0;
      const int snk = 1;
      MaxFlow net(2 + ki + kj + ki * kj);
      std::int64_t demand = 0;
      std::vector<std::pair<int, int>> via(static_cast<std::size_t>(ki * kj), {-1, -1});
      for (int a = 0; a < ki; ++a) {
        if (!in_s[a]) net.add_edge(src, 2 + a, gi.alpha);
      }
      for (int b = 0; b < kj; ++b) {
        if (!in_t[b]) net.add_edge(src, 2 + ki + b, gj.alpha);
      }
      for (int a = 0; a < ki; ++a) {
        for (int b = 0; b < kj; ++b) {
          const std::size_t c = static_cast<std::size_t>(a) * kj + b;
          if (in_s[a] || in_t[b] || correct[c] == 0) continue;
          const int node = 2 + ki + kj + static_cast<int>(c);
          via[c] = {net.add_edge(2 + a, node, correct[c]), net.add_edge(2 + ki + b, node, correct[c])};
          net.add_edge(node, snk, correct[c]);
          demand += correct[c];
        }
      }
      if (net.run(src, snk) != demand) return true;
      rep.violation_found = true;
      FailproneDescriptor di{i, rows, {}};
      FailproneDescriptor dj{j, cols, {}};
      std::vector<std::vector<ProcessId>> row_pick(static_cast<std::size_t>(ki));
      std::vector<std::vector<ProcessId>> col_pick(static_cast<std::size_t>(kj));
      for (int a = 0; a < ki; ++a) {
        for (int b = 0; b < kj; ++b) {
          const std::size_t c = static_cast<std::size_t>(a) * kj + b;
          if (via[c].first < 0) continue;
          std::int64_t to_row = net.flow(via[c].first);
          for (ProcessId p : cells[c]) {
            if (faults.contains(p)) continue;
            if (to_row > 0) {
              row_pick[a].push_back(p);
              --to_row;
            } else {
              col_pick[b].push_back(p);
            }
          }
        }
      }
      // pad partial choices to exactly alpha with any remaining processes of the value
      for (int a = 0; a < ki; ++a) {
        if (in_s[a]) continue;
        auto& xs = row_pick[a];
        for (int b = 0; b < kj && static_cast<std::int64_t>(xs.size()) < gi.alpha; ++b) {
          for (ProcessId p : cells[static_cast<std::size_t>(a) * kj + b]) {
            if (static_cast<std::int64_t>(xs.size()) >= gi.alpha) break;
            if (std::find(xs.begin(), xs.end(), p) == xs.end()) xs.push_back(p);
          }
        }
        std::sort(xs.begin(), xs.end());
        di.partial.emplace(a, xs);
      }
      for (int b = 0; b < kj; ++b) {
        if (in_t[b]) continue;
        auto& ys = col_pick[b];
        for (int a = 0; a < ki && static_cast<std::int64_t>(ys.size()) < gj.alpha; ++a) {
          for (ProcessId p : cells[static_cast<std::size_t>(a) * kj + b]) {
            if (static_cast<std::int64_t>(ys.size()) >= gj.alpha) break;
            if (std::find(ys.begin(), ys.end(), p) == ys.end()) ys.push_back(p);
          }
        }
        std::sort(ys.begin(), ys.end());
        dj.partial.emplace(b, ys);
      }
      rep.qi = canonical_quorum(u, gi, di);
      rep.qj = canonical_quorum(u, gj, dj);
      if (!(*rep.qi & *rep.qj).is_subset_of(faults)) {
        throw std::logic_error("safety witness quorums meet outside the fault set");
      }
      rep.fi = std::move(di);
      rep.fj = std::move(dj);
      return false;
    });
  });
  return rep;
}

}  // namespace gq
