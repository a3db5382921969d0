// Command-line front end: validate, recover, place, patrol, simulate, render.
// Exit codes: 0 valid/success, 2 invalid or failed outcome, 1 usage or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "losnet/harness.hpp"

using namespace losnet;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;

struct Options {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> vehicles;
  std::string planner;
  bool distributed = false;
  std::size_t initiator = 0;
  std::string trace;
  std::string svg;
  std::string out;
  std::string plan;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Scenario load(const Options& o) {
  Scenario sc = load_scenario(o.scenario);
  if (o.seed) sc.seed = *o.seed;
  if (o.steps) sc.steps = *o.steps;
  if (o.planner == "rrtstar") sc.planner = Planner::kRrtStar;
  if (o.planner == "visgraph") sc.planner = Planner::kVisibilityGraph;
  return sc;
}

Overlays vehicle_overlays(const Environment& env, const SystemState& s) {
  Overlays ov;
  for (const VehiclePose& v : s.vehicles) ov.visibility.push_back(visibility_region(env, v.position()));
  ov.relay_graph = true;
  ov.unit_graph = true;
  return ov;
}

int run_validate(const Options& o) {
  const Scenario sc = load(o);
  const Environment env = sc.environment();
  const CheckResult c = communication_check(sc.initial, env);
  std::printf("verdict: %s\n", to_string(c.verdict).c_str());
  std::printf("lambda2_relay: %.12g\n", c.lambda2_relay);
  std::printf("lambda2_union: %.12g\n", c.lambda2_union);
  bool valid = c.verdict == Verdict::kValid;
  if (o.distributed) {
    if (o.initiator >= sc.initial.vehicles.size()) throw CLI::ValidationError("--initiator", "no such vehicle");
    const DistributedResult d = distributed_check(sc.initial, env, o.initiator);
    std::printf("distributed: %s (%zu messages, %zu rounds%s)\n", d.valid ? "valid" : "invalid",
                d.trace.messages.size(), d.trace.rounds, d.timed_out ? ", timed out" : "");
    if (!o.trace.empty()) write_text(o.trace, d.trace.to_jsonl());
    valid = d.valid;
  }
  if (!o.svg.empty()) write_text(o.svg, render_svg(env, sc.initial, vehicle_overlays(env, sc.initial)));
  return valid ? kOk : kNegative;
}

int run_recover(const Options& o) {
  const Scenario sc = load(o);
  const Environment env = sc.environment();
  RecoveryResult r;
  try {
    r = single_move_recover(env, sc.initial, {sc.planner, sc.dubins, sc.seed});
  } catch (const RelayBroken& e) {
    std::printf("status: relay_broken\n");
    return kNegative;
  }
  const Json plan = recovery_to_json(r);
  std::printf("status: %s\n", plan["status"].get<std::string>().c_str());
  for (const RelocationPlan& m : r.moves) {
    std::printf("move vehicle %zu for unit %zu: cost %.6f, standing (%.6f, %.6f)\n", m.vehicle, m.unit, m.cost,
                m.standing.x, m.standing.y);
  }
  if (r.status == RecoveryResult::Status::kFailure) std::printf("unrecoverable unit: %zu\n", r.failed_unit);
  if (!o.out.empty()) save_plan(o.out, plan);
  if (!o.svg.empty()) {
    Overlays ov = vehicle_overlays(env, r.final_state);
    for (const RelocationPlan& m : r.moves) ov.paths.push_back(m.path);
    write_text(o.svg, render_svg(env, r.final_state, ov));
  }
  return r.status == RecoveryResult::Status::kFailure ? kNegative : kOk;
}

int run_place(const Options& o) {
  const Scenario sc = load(o);
  const Environment env = sc.environment();
  const std::size_t n = o.vehicles.value_or(sc.initial.vehicles.size());
  if (sc.initial.units.empty()) throw CLI::ValidationError("--scenario", "placement needs at least one unit");
  const std::vector<LabeledFace> faces = labeled_faces(env, sc.initial.units, sc.score);
  const CoverResult cover = greedy_cover(faces, sc.initial.units.size());
  const DeploymentPlan plan = deploy(env, cover, n);
  std::printf("faces: %zu, selected: %zu\n", faces.size(), cover.gamma.size());
  for (std::size_t k = 0; k < cover.gamma.size(); ++k) {
    std::printf("  face %zu: units", cover.selected[k]);
    for (std::size_t u : cover.gamma[k].label) std::printf(" %zu", u);
    std::printf(", score %.6f\n", cover.gamma[k].score);
  }
  for (const StaticAssignment& a : plan.statics) {
    std::printf("vehicle %zu static at (%.6f, %.6f)\n", a.vehicle, a.standing.x, a.standing.y);
  }
  if (plan.patroller) {
    std::printf("vehicle %zu patrols %zu regions, tour length %.6f\n", *plan.patroller, plan.tour_vertices.size(),
                plan.tour ? plan.tour->path.length : 0.0);
  }
  if (!o.out.empty()) save_plan(o.out, placement_to_json(cover, plan));
  if (!o.svg.empty()) {
    SystemState s = sc.initial;
    s.vehicles.resize(n, s.vehicles.empty() ? VehiclePose{} : s.vehicles.back());
    s = plan.apply(s);
    Overlays ov;
    for (const LabeledFace& f : cover.gamma) ov.gamma.push_back(f.polygon);
    ov.relay_graph = true;
    if (plan.tour) ov.tour = plan.tour->path;
    write_text(o.svg, render_svg(env, s, ov));
  }
  return kOk;
}

Region region_from_json(const Json& j, const std::string& field) {
  Region r;
  if (!j.is_array()) throw ParseError(field, "expected a list of parts");
  for (const Json& part : j) {
    PolygonWithHoles p;
    for (const Json& v : part.at("outer")) p.outer.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    for (const Json& h : part.at("holes")) {
      Polygon hole;
      for (const Json& v : h) hole.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      p.holes.push_back(std::move(hole));
    }
    r.parts.push_back(std::move(p));
  }
  return r;
}

int run_patrol(const Options& o) {
  const Scenario sc = load(o);
  const Environment env = sc.environment();
  std::vector<Region> vertices;
  if (!o.plan.empty()) {
    const Json plan = load_json(o.plan);
    if (!plan.contains("tour_vertices")) throw ParseError("tour_vertices", "plan has no patrol regions");
    const Json& tv = plan["tour_vertices"];
    for (std::size_t i = 0; i < tv.size(); ++i) {
      vertices.push_back(region_from_json(tv[i], "tour_vertices[" + std::to_string(i) + "]"));
    }
  } else {
    const CoverResult cover = greedy_cover(labeled_faces(env, sc.initial.units, sc.score), sc.initial.units.size());
    vertices = deploy(env, cover, o.vehicles.value_or(sc.initial.vehicles.size())).tour_vertices;
  }
  if (vertices.size() < 2) {
    std::printf("no patrol needed (%zu regions)\n", vertices.size());
    return kOk;
  }
  const std::vector<double> w = component_graph(env, vertices);
  const std::vector<std::size_t> order = tour_sequence(w, vertices.size());
  std::vector<Region> ordered;
  for (std::size_t v : order) ordered.push_back(vertices[v]);
  const Tour tour = patrol_tour(env, ordered);
  std::printf("order:");
  for (std::size_t v : order) std::printf(" %zu", v);
  std::printf("\nlength: %.6f\nduration: %.6f\n", tour.path.length, tour.duration(sc.dubins.speed));
  if (!o.out.empty()) {
    Json doc = path_to_json(tour.path);
    doc["order"] = order;
    doc["marks"] = tour.marks;
    doc["duration"] = tour.duration(sc.dubins.speed);
    save_plan(o.out, doc);
  }
  if (!o.svg.empty()) {
    Overlays ov;
    ov.faces = vertices;
    ov.tour = tour.path;
    write_text(o.svg, render_svg(env, sc.initial, ov));
  }
  return kOk;
}

int run_simulate(const Options& o) {
  const Scenario sc = load(o);
  const SimReport report = simulate(sc);
  const MetricsReport m = metrics_report(report);
  std::fputs(m.table.c_str(), stdout);
  std::printf("%s\n", m.summary.dump(2).c_str());
  if (!o.out.empty()) save_plan(o.out, report_to_json(report));
  if (!o.svg.empty()) {
    const Environment env = sc.environment();
    Overlays ov = vehicle_overlays(env, report.final_state);
    for (const StepRecord& r : report.records) ov.paths.insert(ov.paths.end(), r.paths.begin(), r.paths.end());
    write_text(o.svg, render_svg(env, report.final_state, ov));
  }
  return report.summary.failures > 0 ? kNegative : kOk;
}

int run_render(const Options& o) {
  const Scenario sc = load(o);
  const Environment env = sc.environment();
  const std::string svg = render_svg(env, sc.initial, vehicle_overlays(env, sc.initial));
  if (o.svg.empty()) {
    std::fputs(svg.c_str(), stdout);
  } else {
    write_text(o.svg, svg);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line-of-sight relay network validation, recovery, placement and simulation"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Override the scenario seed");
    cmd->add_option("--svg", o.svg, "Write an SVG picture");
  };
  CLI::App* validate = app.add_subcommand("validate", "Communication validity of the initial state");
  common(validate);
  validate->add_flag("--distributed", o.distributed, "Also run the message-passing check");
  validate->add_option("--initiator", o.initiator, "Initiating vehicle for --distributed");
  validate->add_option("--trace", o.trace, "Write the message trace (JSONL)")->needs("--distributed");

  CLI::App* recover = app.add_subcommand("recover", "Single-vehicle recovery plan");
  common(recover);
  recover->add_option("--planner", o.planner, "Motion planner")->check(CLI::IsMember({"visgraph", "rrtstar"}));
  recover->add_option("--out", o.out, "Write the plan (JSON)");

  CLI::App* place = app.add_subcommand("place", "Greedy cover and vehicle deployment");
  common(place);
  place->add_option("--vehicles", o.vehicles, "Number of vehicles (default: scenario)")->check(CLI::PositiveNumber);
  place->add_option("--out", o.out, "Write the plan (JSON)");

  CLI::App* patrol = app.add_subcommand("patrol", "Patrol tour for a placement plan");
  common(patrol);
  patrol->add_option("--plan", o.plan, "Placement plan written by 'place'")->check(CLI::ExistingFile);
  patrol->add_option("--vehicles", o.vehicles, "Number of vehicles when no plan is given")->check(CLI::PositiveNumber);
  patrol->add_option("--out", o.out, "Write the tour (JSON)");

  CLI::App* sim = app.add_subcommand("simulate", "Move, validate, recover and replace over time");
  common(sim);
  sim->add_option("--steps", o.steps, "Override the step count");
  sim->add_option("--planner", o.planner, "Motion planner")->check(CLI::IsMember({"visgraph", "rrtstar"}));
  sim->add_option("--out", o.out, "Write the report (JSON)");

  CLI::App* render = app.add_subcommand("render", "Draw the scenario with visibility and graphs");
  common(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return run_validate(o);
    if (*recover) return run_recover(o);
    if (*place) return run_place(o);
    if (*patrol) return run_patrol(o);
    if (*sim) return run_simulate(o);
    if (*render) return run_render(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kUsage;
}
