// Scenario files, the simulation loop (move, validate, recover, replace),
// metrics and SVG rendering.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "losnet/placement.hpp"
#include "losnet/recovery.hpp"

namespace losnet {

using Json = nlohmann::ordered_json;

inline constexpr int kScenarioVersion = 1;

/// Malformed scenario or plan text; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Well-formed scenario whose geometry or agents violate an invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  Polygon world;
  std::vector<Polygon> obstacles;
  SystemState initial;
  MobilityConfig mobility;
  ScoreParams score;
  Planner planner = Planner::kVisibilityGraph;
  DubinsParams dubins;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  double dt = 1.0;

  Environment environment() const { return Environment(world, obstacles); }
};

/// Parses and validates; throws ParseError or ValidationError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& scenario);
void save_scenario(const std::string& path, const Scenario& scenario);

Json region_to_json(const Region& r);
Json path_to_json(const Path& p);
Json recovery_to_json(const RecoveryResult& result);
Json placement_to_json(const CoverResult& cover, const DeploymentPlan& plan);
/// Indented JSON text with numeric arrays kept on one line; numbers keep
/// full round-trip precision.
std::string to_text(const Json& doc);
/// Writes a plan document.
void save_plan(const std::string& path, const Json& plan);
Json load_json(const std::string& path);

// ---- Simulation -------------------------------------------------------------

enum class Action { kNone, kRelocation, kReplacement, kFailure };
const char* to_string(Action a);

struct StepRecord {
  std::size_t step = 0;
  SystemState observed;        // after mobility, before any action
  Verdict verdict = Verdict::kValid;
  double lambda2_relay = 0.0;
  double lambda2_union = 0.0;
  std::size_t disconnections = 0;  // units seen by no vehicle
  bool distributed_valid = false;  // independent message-passing verdict
  std::size_t messages = 0;
  Action action = Action::kNone;
  double cost = 0.0;    // travel spent by this step's action
  double travel = 0.0;  // cumulative vehicle travel
  Verdict verdict_after = Verdict::kValid;
  std::vector<Path> paths;  // vehicle paths driven this step
};

struct SimSummary {
  std::size_t steps = 0;
  std::size_t invalid_steps = 0;
  std::size_t relocations = 0;
  std::size_t replacements = 0;
  std::size_t failures = 0;
  std::optional<double> success_rate;   // relocations / invalid steps
  std::optional<double> mean_recovery_cost;
  std::size_t messages = 0;
  double travel = 0.0;
};

struct SimReport {
  std::vector<StepRecord> records;
  SimSummary summary;
  SystemState final_state;
};

/// Runs scenario.steps steps from the initial state. Deterministic in the
/// scenario (including its seed).
SimReport simulate(const Scenario& scenario);
/// One step's decision on an already observed state.
StepRecord simulate_step(const Environment& env, const Roadmap& roadmap, const Scenario& scenario,
                         const SystemState& observed, std::size_t step, double travel_before, SystemState& next);

Json report_to_json(const SimReport& report);

struct MetricsReport {
  std::string table;
  Json summary;
};
MetricsReport metrics_report(const SimReport& report);

// ---- Rendering --------------------------------------------------------------

struct Overlays {
  std::vector<Region> visibility;
  bool relay_graph = false;
  bool unit_graph = false;
  std::vector<Region> faces;
  std::vector<Region> gamma;
  std::vector<Path> paths;
  std::optional<Path> tour;
};

/// SVG 1.1 document in world coordinates (y up), coordinates with six decimals.
std::string render_svg(const Environment& env, const SystemState& state, const Overlays& overlays = {});

}  // namespace losnet
