#include "losnet/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <optional>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "losnet/kernels.hpp"

namespace losnet {

std::size_t VisGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < nodes; ++j) d += adjacency[i * nodes + j];
  return d;
}

std::size_t VisGraph::edge_count() const {
  std::size_t twice = 0;
  for (std::uint8_t a : adjacency) twice += a;
  return twice / 2;
}

std::vector<std::size_t> VisGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < nodes; ++j) {
    if (edge(i, j)) out.push_back(j);
  }
  return out;
}

VisGraph VisGraph::induced(const std::vector<std::size_t>& keep) const {
  const auto kept_vehicles = static_cast<std::size_t>(
      std::count_if(keep.begin(), keep.end(), [&](std::size_t id) { return id < vehicles; }));
  VisGraph g(kept_vehicles, keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      if (edge(keep[a], keep[b])) g.connect(a, b);
    }
  }
  return g;
}

std::vector<std::vector<std::size_t>> VisGraph::components() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(nodes, false);
  for (std::size_t s = 0; s < nodes; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      comp.push_back(u);
      for (std::size_t v = 0; v < nodes; ++v) {
        if (edge(u, v) && !seen[v]) {
          seen[v] = true;
          q.push(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Laplacian laplacian(const VisGraph& g) {
  Laplacian l{g.nodes, std::vector<int>(g.nodes * g.nodes, 0)};
  for (std::size_t i = 0; i < g.nodes; ++i) {
    for (std::size_t j = 0; j < g.nodes; ++j) {
      if (i != j && g.edge(i, j)) {
        l.entries[i * g.nodes + j] = -1;
        ++l.entries[i * g.nodes + i];
      }
    }
  }
  return l;
}

std::vector<double> eigenvalues(const Laplacian& l) {
  const std::size_t n = l.size;
  std::vector<double> a(l.entries.begin(), l.entries.end());
  const auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  const auto off_max = [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(at(i, j)));
    return m;
  };
  for (int sweep = 0; sweep < 100 && off_max() >= 1e-12; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

double algebraic_connectivity(const Laplacian& l) {
  if (l.size < 2) return std::numeric_limits<double>::infinity();
  return eigenvalues(l)[1];
}

VisGraph build_relay_graph(const SystemState& state, const Environment& env) {
  const std::vector<Point2> q = state.vehicle_positions();
  const std::size_t n = q.size();
  const std::vector<std::uint8_t> los = kernels::los_matrix(env, q, q);
  VisGraph g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (los[i * n + j]) g.connect(i, j);
    }
  }
  return g;
}

VisGraph build_unit_graph(const SystemState& state, const Environment& env) {
  const std::vector<Point2> q = state.vehicle_positions();
  const std::size_t n = q.size();
  const std::size_t m = state.units.size();
  const std::vector<std::uint8_t> los = kernels::los_matrix(env, q, state.units);
  VisGraph g(n, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (los[i * m + j]) g.connect(i, n + j);
    }
  }
  return g;
}

VisGraph union_graph(const VisGraph& relay, const VisGraph& units) {
  VisGraph g = units;
  for (std::size_t i = 0; i < relay.nodes; ++i) {
    for (std::size_t j = i + 1; j < relay.nodes; ++j) {
      if (relay.edge(i, j)) g.connect(i, j);
    }
  }
  return g;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kValid:
      return "valid";
    case Verdict::kInvalidRelay:
      return "invalid_relay";
    case Verdict::kInvalidUnion:
      return "invalid_union";
  }
  return "unknown";
}

CheckResult communication_check(const VisGraph& relay, const VisGraph& units) {
  CheckResult r;
  r.relay = relay;
  r.units = units;
  r.combined = union_graph(relay, units);
  r.lambda2_relay = algebraic_connectivity(laplacian(relay));
  r.lambda2_union = algebraic_connectivity(laplacian(r.combined));
  if (!is_connected(r.lambda2_relay)) {
    r.verdict = Verdict::kInvalidRelay;
  } else if (!is_connected(r.lambda2_union)) {
    r.verdict = Verdict::kInvalidUnion;
  } else {
    r.verdict = Verdict::kValid;
  }
  return r;
}

CheckResult communication_check(const SystemState& state, const Environment& env) {
  return communication_check(build_relay_graph(state, env), build_unit_graph(state, env));
}

std::string MessageTrace::to_jsonl() const {
  std::string out;
  for (const Message& m : messages) {
    const nlohmann::ordered_json line = {
        {"round", m.round},
        {"sender", m.sender},
        {"receiver", m.receiver},
        {"kind", m.kind == Message::Kind::kQuery ? "query" : "response"},
        {"alpha", m.alpha.size()},
    };
    out += line.dump();
    out += '\n';
  }
  return out;
}

namespace {

// Per-vehicle echo state: the first query fixes the parent; every other
// relay neighbour answers either with a response or with its own query
// (a repeat query is not answered and stands in for the reply).
struct Agent {
  bool engaged = false;
  bool done = false;
  std::size_t parent = 0;
  bool has_parent = false;
  std::set<std::size_t> pending;
  std::set<std::size_t> alpha;
};

}  // namespace

DistributedResult distributed_check(const VisGraph& relay, const VisGraph& units,
                                    std::size_t initiator, std::size_t max_rounds) {
  const std::size_t n = relay.nodes;
  if (initiator >= n) throw std::invalid_argument("initiator is not a vehicle");
  if (max_rounds == 0) max_rounds = 2 * n + 4;

  // Local coverage h_i: self, visible vehicles and visible units.
  std::vector<std::set<std::size_t>> local(n);
  for (std::size_t i = 0; i < n; ++i) {
    local[i].insert(i);
    for (std::size_t j = 0; j < units.nodes; ++j) {
      if (units.edge(i, j)) local[i].insert(j);
    }
    for (std::size_t j : relay.neighbors(i)) local[i].insert(j);
  }

  DistributedResult result;
  std::vector<Agent> agents(n);
  std::vector<Message> outbox;
  std::size_t round = 0;

  const auto send = [&](std::size_t from, std::size_t to, Message::Kind kind) {
    Message msg{round, from, to, kind, {}};
    if (kind == Message::Kind::kResponse) {
      msg.alpha.assign(agents[from].alpha.begin(), agents[from].alpha.end());
    }
    outbox.push_back(msg);
  };
  const auto finish_if_ready = [&](std::size_t u) {
    Agent& a = agents[u];
    if (a.done || !a.pending.empty()) return;
    a.done = true;
    if (a.has_parent) send(u, a.parent, Message::Kind::kResponse);
  };
  const auto engage = [&](std::size_t u, std::optional<std::size_t> parent) {
    Agent& a = agents[u];
    a.engaged = true;
    a.has_parent = parent.has_value();
    a.parent = parent.value_or(0);
    a.alpha = local[u];
    for (std::size_t v : relay.neighbors(u)) {
      if (parent && v == *parent) continue;
      a.pending.insert(v);
      send(u, v, Message::Kind::kQuery);
    }
    finish_if_ready(u);
  };

  engage(initiator, std::nullopt);
  while (!agents[initiator].done) {
    if (outbox.empty() || round >= max_rounds) {
      result.timed_out = true;
      break;
    }
    ++round;
    std::vector<Message> inbox = std::move(outbox);
    outbox.clear();
    result.trace.messages.insert(result.trace.messages.end(), inbox.begin(), inbox.end());
    std::stable_sort(inbox.begin(), inbox.end(), [](const Message& x, const Message& y) {
      return x.receiver != y.receiver ? x.receiver < y.receiver : x.sender < y.sender;
    });
    for (const Message& msg : inbox) {
      Agent& a = agents[msg.receiver];
      if (msg.kind == Message::Kind::kQuery && !a.engaged) {
        engage(msg.receiver, msg.sender);
        continue;
      }
      if (msg.kind == Message::Kind::kResponse) a.alpha.insert(msg.alpha.begin(), msg.alpha.end());
      a.pending.erase(msg.sender);
      finish_if_ready(msg.receiver);
    }
  }
  result.trace.rounds = round;
  result.coverage.assign(agents[initiator].alpha.begin(), agents[initiator].alpha.end());
  result.valid = !result.timed_out && result.coverage.size() == units.nodes;
  return result;
}

DistributedResult distributed_check(const SystemState& state, const Environment& env,
                                    std::size_t initiator, std::size_t max_rounds) {
  return distributed_check(build_relay_graph(state, env), build_unit_graph(state, env), initiator,
                           max_rounds);
}

}  // namespace losnet
