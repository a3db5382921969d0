// Visibility graphs, Laplacian spectra and the communication-validity checks.
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "losnet/geometry.hpp"
#include "losnet/state.hpp"

namespace losnet {

/// λ2 above this value counts as connected.
inline constexpr double kConnectedThreshold = 1e-9;

/// Undirected simple graph over agents. Node ids: vehicles 0..n-1, then
/// units n..n+m-1. Relay graphs carry only the vehicle nodes.
struct VisGraph {
  std::size_t vehicles = 0;
  std::size_t nodes = 0;
  std::vector<std::uint8_t> adjacency;  // row-major nodes x nodes

  VisGraph() = default;
  VisGraph(std::size_t vehicle_count, std::size_t node_count)
      : vehicles(vehicle_count), nodes(node_count), adjacency(node_count * node_count, 0) {}

  bool edge(std::size_t i, std::size_t j) const { return adjacency[i * nodes + j] != 0; }
  void connect(std::size_t i, std::size_t j) {
    if (i == j) return;
    adjacency[i * nodes + j] = 1;
    adjacency[j * nodes + i] = 1;
  }
  std::size_t degree(std::size_t i) const;
  std::size_t edge_count() const;
  std::vector<std::size_t> neighbors(std::size_t i) const;
  /// Subgraph induced by `keep` (ids renumbered in the given order).
  VisGraph induced(const std::vector<std::size_t>& keep) const;
  /// Connected components, each sorted, ordered by smallest member.
  std::vector<std::vector<std::size_t>> components() const;

  friend bool operator==(const VisGraph&, const VisGraph&) = default;
};

/// L = DEG - ADJ with integer entries (rows sum to exactly zero).
struct Laplacian {
  std::size_t size = 0;
  std::vector<int> entries;  // row-major

  int at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

Laplacian laplacian(const VisGraph& g);

/// Full spectrum, ascending, by cyclic Jacobi rotations.
std::vector<double> eigenvalues(const Laplacian& l);

/// Second-smallest eigenvalue; +infinity for graphs with fewer than two nodes.
double algebraic_connectivity(const Laplacian& l);

inline bool is_connected(double lambda2) { return lambda2 > kConnectedThreshold; }

/// Vehicle-only graph: edge (i, j) iff q_i and q_j see each other.
VisGraph build_relay_graph(const SystemState& state, const Environment& env);
/// Vehicle-unit graph over all n + m agents: edge iff the unit sees the vehicle.
VisGraph build_unit_graph(const SystemState& state, const Environment& env);
/// G = G_A ∪ G_B over all n + m agents.
VisGraph union_graph(const VisGraph& relay, const VisGraph& units);

enum class Verdict { kValid, kInvalidRelay, kInvalidUnion };

std::string to_string(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::kValid;
  VisGraph relay;
  VisGraph units;
  VisGraph combined;
  double lambda2_relay = 0.0;
  double lambda2_union = 0.0;
};

/// Centralized check: relay connectivity first, then the union graph.
CheckResult communication_check(const SystemState& state, const Environment& env);
/// Same check on graphs that are already built.
CheckResult communication_check(const VisGraph& relay, const VisGraph& units);

/// One simulated message of the distributed check.
struct Message {
  enum class Kind { kQuery, kResponse };
  std::size_t round = 0;
  std::size_t sender = 0;
  std::size_t receiver = 0;
  Kind kind = Kind::kQuery;
  std::vector<std::size_t> alpha;  // coverage set carried (sorted node ids)
};

struct MessageTrace {
  std::vector<Message> messages;
  std::size_t rounds = 0;

  /// One JSON object per line: round, sender, receiver, kind, alpha (= |α|).
  std::string to_jsonl() const;
};

struct DistributedResult {
  bool valid = false;
  bool timed_out = false;
  std::vector<std::size_t> coverage;  // α at the initiator
  MessageTrace trace;
};

/// Simulated message-passing check started by vehicle `initiator`, in
/// synchronous rounds; inboxes are processed in agent-id order. `max_rounds`
/// bounds the run (exceeding it is the timeout and yields false).
DistributedResult distributed_check(const SystemState& state, const Environment& env,
                                    std::size_t initiator, std::size_t max_rounds = 0);
DistributedResult distributed_check(const VisGraph& relay, const VisGraph& units,
                                    std::size_t initiator, std::size_t max_rounds = 0);

}  // namespace losnet
