#include "losnet/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace losnet {
namespace {

// ---- Parsing helpers ----------------------------------------------------------

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string child(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

double number_or(const Json& obj, const char* key, const std::string& path, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, child(path, key));
}

std::size_t count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ParseError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Point2 point(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected [x, y]");
  return {number(j[0], child(path, std::size_t{0})), number(j[1], child(path, std::size_t{1}))};
}

Polygon polygon(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of [x, y] vertices");
  if (j.size() < 3) throw ParseError(path, "polygon needs at least 3 vertices, got " + std::to_string(j.size()));
  Polygon p;
  for (std::size_t i = 0; i < j.size(); ++i) p.vertices.push_back(point(j[i], child(path, i)));
  return p;
}

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

Json polygon_json(const Polygon& p) {
  Json out = Json::array();
  for (Point2 v : p.vertices) out.push_back(point_json(v));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

const char* model_name(MobilityConfig::Model m) {
  return m == MobilityConfig::Model::kNomadic ? "nomadic" : "random_waypoint";
}

const char* planner_name(Planner p) { return p == Planner::kRrtStar ? "rrtstar" : "visgraph"; }

Json state_json(const SystemState& s) {
  Json vehicles = Json::array();
  for (const VehiclePose& v : s.vehicles) vehicles.push_back(Json::array({v.x, v.y, v.theta}));
  Json units = Json::array();
  for (Point2 u : s.units) units.push_back(point_json(u));
  return Json{{"vehicles", vehicles}, {"units", units}};
}

bool numeric_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
}

void write_json(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      write_json(out, value, indent + 2);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << std::string(static_cast<std::size_t>(indent), ' ') << '}';
  } else if (j.is_array() && !j.empty() && !numeric_array(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_json(out, j[i], indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << std::string(static_cast<std::size_t>(indent), ' ') << ']';
  } else {
    out << j.dump();
  }
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

// ---- Scenario I/O ---------------------------------------------------------------

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  const Json& version = require(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kScenarioVersion) {
    throw ParseError("version", "unsupported version (expected " + std::to_string(kScenarioVersion) + ")");
  }

  Scenario sc;
  sc.seed = static_cast<std::uint64_t>(count(require(doc, "seed", ""), "seed"));
  if (doc.contains("steps")) sc.steps = count(doc["steps"], "steps");
  sc.dt = number_or(doc, "dt", "", 1.0);
  if (!(sc.dt >= 0.0)) throw ParseError("dt", "must be non-negative");

  const Json& env = require(doc, "environment", "");
  sc.world = polygon(require(env, "world", "environment"), "environment.world");
  if (env.contains("obstacles")) {
    const Json& obs = env["obstacles"];
    if (!obs.is_array()) throw ParseError("environment.obstacles", "expected an array of polygons");
    for (std::size_t i = 0; i < obs.size(); ++i) sc.obstacles.push_back(polygon(obs[i], child("environment.obstacles", i)));
  }

  const Json& vehicles = require(doc, "vehicles", "");
  if (!vehicles.is_array()) throw ParseError("vehicles", "expected an array of [x, y, theta]");
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    const std::string path = child("vehicles", i);
    const Json& v = vehicles[i];
    if (!v.is_array() || (v.size() != 2 && v.size() != 3)) throw ParseError(path, "expected [x, y] or [x, y, theta]");
    const double theta = v.size() == 3 ? number(v[2], child(path, std::size_t{2})) : 0.0;
    sc.initial.vehicles.push_back({number(v[0], child(path, std::size_t{0})), number(v[1], child(path, std::size_t{1})),
                                   normalize_angle(theta)});
  }
  const Json& units = require(doc, "units", "");
  if (!units.is_array()) throw ParseError("units", "expected an array of [x, y]");
  for (std::size_t i = 0; i < units.size(); ++i) sc.initial.units.push_back(point(units[i], child("units", i)));

  if (doc.contains("mobility")) {
    const Json& m = doc["mobility"];
    if (!m.is_object()) throw ParseError("mobility", "expected an object");
    if (m.contains("model")) {
      const Json& name = m["model"];
      if (name == "random_waypoint") {
        sc.mobility.model = MobilityConfig::Model::kRandomWaypoint;
      } else if (name == "nomadic") {
        sc.mobility.model = MobilityConfig::Model::kNomadic;
      } else {
        throw ParseError("mobility.model", "expected \"random_waypoint\" or \"nomadic\"");
      }
    }
    sc.mobility.speed_min = number_or(m, "speed_min", "mobility", sc.mobility.speed_min);
    sc.mobility.speed_max = number_or(m, "speed_max", "mobility", sc.mobility.speed_max);
    sc.mobility.group_radius = number_or(m, "group_radius", "mobility", sc.mobility.group_radius);
    if (sc.mobility.speed_min < 0.0 || sc.mobility.speed_max < sc.mobility.speed_min) {
      throw ParseError("mobility.speed_max", "need 0 <= speed_min <= speed_max");
    }
    if (m.contains("groups")) {
      const Json& g = m["groups"];
      if (!g.is_array()) throw ParseError("mobility.groups", "expected an array of group ids");
      for (std::size_t i = 0; i < g.size(); ++i) sc.mobility.groups.push_back(count(g[i], child("mobility.groups", i)));
      if (!sc.mobility.groups.empty() && sc.mobility.groups.size() != sc.initial.units.size()) {
        throw ParseError("mobility.groups", "needs one group id per unit");
      }
    }
  }

  if (doc.contains("score")) {
    const Json& s = doc["score"];
    sc.score.alpha = number_or(s, "alpha", "score", sc.score.alpha);
    sc.score.beta = number_or(s, "beta", "score", sc.score.beta);
    sc.score.gamma = number_or(s, "gamma", "score", sc.score.gamma);
  }

  if (doc.contains("planner")) {
    const Json& p = doc["planner"];
    if (p.contains("kind")) {
      const Json& kind = p["kind"];
      if (kind == "visgraph") {
        sc.planner = Planner::kVisibilityGraph;
      } else if (kind == "rrtstar") {
        sc.planner = Planner::kRrtStar;
      } else {
        throw ParseError("planner.kind", "expected \"visgraph\" or \"rrtstar\"");
      }
    }
    sc.dubins.wheelbase = number_or(p, "wheelbase", "planner", sc.dubins.wheelbase);
    sc.dubins.max_steering = number_or(p, "max_steering", "planner", sc.dubins.max_steering);
    sc.dubins.speed = number_or(p, "speed", "planner", sc.dubins.speed);
  }

  try {
    const Environment env = sc.environment();
    validate_state(env, sc.initial);
    sc.score.validate();
    sc.dubins.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

Json scenario_to_json(const Scenario& sc) {
  Json obstacles = Json::array();
  for (const Polygon& o : sc.obstacles) obstacles.push_back(polygon_json(o));
  const Json state = state_json(sc.initial);
  Json mobility{{"model", model_name(sc.mobility.model)},
                {"speed_min", sc.mobility.speed_min},
                {"speed_max", sc.mobility.speed_max},
                {"group_radius", sc.mobility.group_radius}};
  if (!sc.mobility.groups.empty()) mobility["groups"] = sc.mobility.groups;
  return Json{{"version", kScenarioVersion},
              {"seed", sc.seed},
              {"steps", sc.steps},
              {"dt", sc.dt},
              {"environment", {{"world", polygon_json(sc.world)}, {"obstacles", obstacles}}},
              {"vehicles", state["vehicles"]},
              {"units", state["units"]},
              {"mobility", mobility},
              {"score", {{"alpha", sc.score.alpha}, {"beta", sc.score.beta}, {"gamma", sc.score.gamma}}},
              {"planner",
               {{"kind", planner_name(sc.planner)},
                {"wheelbase", sc.dubins.wheelbase},
                {"max_steering", sc.dubins.max_steering},
                {"speed", sc.dubins.speed}}}};
}

void save_scenario(const std::string& path, const Scenario& sc) { write_file(path, to_text(scenario_to_json(sc))); }

// ---- Plans ----------------------------------------------------------------------

Json region_to_json(const Region& r) {
  Json parts = Json::array();
  for (const auto& part : r.parts) {
    Json holes = Json::array();
    for (const Polygon& h : part.holes) holes.push_back(polygon_json(h));
    parts.push_back(Json{{"outer", polygon_json(part.outer)}, {"holes", holes}});
  }
  return parts;
}

Json path_to_json(const Path& p) {
  Json waypoints = Json::array();
  for (Point2 w : p.waypoints) waypoints.push_back(point_json(w));
  Json out{{"length", p.length}, {"waypoints", waypoints}};
  if (!p.poses.empty()) {
    Json poses = Json::array();
    for (const VehiclePose& q : p.poses) poses.push_back(Json::array({q.x, q.y, q.theta}));
    out["poses"] = poses;
  }
  return out;
}

Json recovery_to_json(const RecoveryResult& r) {
  const char* status = r.status == RecoveryResult::Status::kRecovered ? "recovered"
                       : r.status == RecoveryResult::Status::kFailure ? "failure"
                                                                      : "noop";
  Json moves = Json::array();
  for (const RelocationPlan& m : r.moves) {
    moves.push_back(Json{{"vehicle", m.vehicle},
                         {"unit", m.unit},
                         {"cost", m.cost},
                         {"standing", point_json(m.standing)},
                         {"goal_region", region_to_json(m.goal_region)},
                         {"path", path_to_json(m.path)}});
  }
  Json out{{"kind", "relocation"}, {"status", status}, {"total_cost", r.total_cost()}, {"moves", moves}};
  if (r.status == RecoveryResult::Status::kFailure) out["failed_unit"] = r.failed_unit;
  out["final_state"] = state_json(r.final_state);
  return out;
}

Json placement_to_json(const CoverResult& cover, const DeploymentPlan& plan) {
  Json gamma = Json::array();
  for (std::size_t k = 0; k < cover.gamma.size(); ++k) {
    const LabeledFace& f = cover.gamma[k];
    gamma.push_back(Json{{"face", cover.selected[k]},
                         {"label", f.label},
                         {"score", f.score},
                         {"area", area(f.polygon)},
                         {"polygon", region_to_json(f.polygon)}});
  }
  Json statics = Json::array();
  for (const StaticAssignment& a : plan.statics) {
    statics.push_back(Json{{"vehicle", a.vehicle}, {"face", a.face}, {"standing", point_json(a.standing)}});
  }
  Json components = Json::array();
  for (std::size_t c = 0; c < plan.components.polygons.size(); ++c) {
    components.push_back(Json{{"members", plan.components.members[c]}, {"polygon", region_to_json(plan.components.polygons[c])}});
  }
  Json vertices = Json::array();
  for (const Region& v : plan.tour_vertices) vertices.push_back(region_to_json(v));
  Json out{{"kind", "placement"},
           {"gamma", gamma},
           {"covered", cover.covered},
           {"static_assignment", statics},
           {"patroller", plan.patroller ? Json(*plan.patroller) : Json(nullptr)},
           {"components", components},
           {"uncovered", plan.uncovered},
           {"tour_vertices", vertices},
           {"tour_order", plan.tour_order}};
  if (plan.tour) {
    out["tour"] = path_to_json(plan.tour->path);
    out["tour"]["marks"] = plan.tour->marks;
  } else {
    out["tour"] = nullptr;
  }
  return out;
}

void save_plan(const std::string& path, const Json& plan) { write_file(path, to_text(plan)); }

std::string to_text(const Json& doc) {
  std::ostringstream out;
  write_json(out, doc, 0);
  out << '\n';
  return out.str();
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

// ---- Simulation -------------------------------------------------------------------

const char* to_string(Action a) {
  switch (a) {
    case Action::kNone:
      return "none";
    case Action::kRelocation:
      return "relocation";
    case Action::kReplacement:
      return "replacement";
    case Action::kFailure:
      return "failure";
  }
  return "none";
}

StepRecord simulate_step(const Environment& env, const Roadmap& roadmap, const Scenario& sc,
                         const SystemState& observed, std::size_t step, double travel_before, SystemState& next) {
  StepRecord rec;
  rec.step = step;
  rec.observed = observed;
  const CheckResult check = communication_check(observed, env);
  rec.verdict = check.verdict;
  rec.lambda2_relay = check.lambda2_relay;
  rec.lambda2_union = check.lambda2_union;
  rec.disconnections = disconnected_units(check.units).size();
  const DistributedResult dist = distributed_check(observed, env, 0);
  rec.distributed_valid = dist.valid;
  rec.messages = dist.trace.messages.size();
  next = observed;

  if (check.verdict != Verdict::kValid) {
    bool replace = check.verdict == Verdict::kInvalidRelay;
    if (!replace) {
      RecoveryOptions options{sc.planner, sc.dubins, sc.seed + 7919 * static_cast<std::uint64_t>(step)};
      try {
        const RecoveryResult r = single_move_recover(env, observed, options);
        if (r.status == RecoveryResult::Status::kRecovered) {
          rec.action = Action::kRelocation;
          for (const RelocationPlan& m : r.moves) {
            rec.cost += m.path.length;
            rec.paths.push_back(m.path);
          }
          next = r.final_state;
        } else {
          replace = true;
        }
      } catch (const RelayBroken&) {
        replace = true;
      } catch (const BudgetExhausted&) {
        replace = true;
      }
    }
    if (replace) {
      // Fresh placement for the current units; vehicles drive to their new posts.
      try {
        if (observed.units.empty()) throw NoPath();
        const CoverResult cover = greedy_cover(labeled_faces(env, observed.units, sc.score), observed.units.size());
        const DeploymentPlan plan = deploy(env, cover, observed.vehicles.size());
        next = plan.apply(observed);
        for (std::size_t v = 0; v < next.vehicles.size(); ++v) {
          const Point2 from = observed.vehicles[v].position();
          const Point2 to = next.vehicles[v].position();
          if (from == to) continue;
          Path p = roadmap.to_point(from, to);
          const Point2 a = p.waypoints[p.waypoints.size() - 2];
          next.vehicles[v].theta = normalize_angle(std::atan2(to.y - a.y, to.x - a.x));
          rec.cost += p.length;
          rec.paths.push_back(std::move(p));
        }
        rec.action = Action::kReplacement;
      } catch (const std::exception&) {
        rec.action = Action::kFailure;
        rec.cost = 0.0;
        rec.paths.clear();
        next = observed;
      }
    }
  }
  rec.travel = travel_before + rec.cost;
  rec.verdict_after = rec.action == Action::kNone ? rec.verdict : communication_check(next, env).verdict;
  return rec;
}

SimReport simulate(const Scenario& sc) {
  const Environment env = sc.environment();
  const Roadmap roadmap(env);
  SeedStream root(sc.seed);
  Mobility mobility(env, sc.mobility, sc.initial.units, root.fork());
  SimReport report;
  SystemState state = sc.initial;
  double travel = 0.0;
  double recovery_cost = 0.0;
  for (std::size_t step = 0; step < sc.steps; ++step) {
    const SystemState observed = mobility.step(state, sc.dt);
    SystemState next;
    StepRecord rec = simulate_step(env, roadmap, sc, observed, step, travel, next);
    travel = rec.travel;
    SimSummary& s = report.summary;
    s.invalid_steps += rec.verdict != Verdict::kValid ? 1 : 0;
    s.messages += rec.messages;
    switch (rec.action) {
      case Action::kRelocation:
        ++s.relocations;
        recovery_cost += rec.cost;
        break;
      case Action::kReplacement:
        ++s.replacements;
        break;
      case Action::kFailure:
        ++s.failures;
        break;
      case Action::kNone:
        break;
    }
    report.records.push_back(std::move(rec));
    state = next;
  }
  SimSummary& s = report.summary;
  s.steps = sc.steps;
  s.travel = travel;
  if (s.invalid_steps > 0) s.success_rate = static_cast<double>(s.relocations) / static_cast<double>(s.invalid_steps);
  if (s.relocations > 0) s.mean_recovery_cost = recovery_cost / static_cast<double>(s.relocations);
  report.final_state = state;
  return report;
}

namespace {

Json summary_json(const SimSummary& s) {
  return Json{{"steps", s.steps},
              {"invalid_steps", s.invalid_steps},
              {"relocations", s.relocations},
              {"replacements", s.replacements},
              {"failures", s.failures},
              {"success_rate", s.success_rate ? Json(*s.success_rate) : Json(nullptr)},
              {"mean_recovery_cost", s.mean_recovery_cost ? Json(*s.mean_recovery_cost) : Json(nullptr)},
              {"messages", s.messages},
              {"travel", s.travel}};
}

}  // namespace

Json report_to_json(const SimReport& report) {
  Json records = Json::array();
  for (const StepRecord& r : report.records) {
    Json paths = Json::array();
    for (const Path& p : r.paths) paths.push_back(path_to_json(p));
    records.push_back(Json{{"step", r.step},
                           {"verdict", to_string(r.verdict)},
                           {"lambda2_relay", r.lambda2_relay},
                           {"lambda2_union", r.lambda2_union},
                           {"disconnections", r.disconnections},
                           {"distributed_valid", r.distributed_valid},
                           {"messages", r.messages},
                           {"action", to_string(r.action)},
                           {"cost", r.cost},
                           {"travel", r.travel},
                           {"verdict_after", to_string(r.verdict_after)},
                           {"state", state_json(r.observed)},
                           {"paths", paths}});
  }
  return Json{{"records", records}, {"summary", summary_json(report.summary)}, {"final_state", state_json(report.final_state)}};
}

MetricsReport metrics_report(const SimReport& report) {
  std::ostringstream table;
  char line[256];
  std::snprintf(line, sizeof line, "%6s  %-13s  %14s  %14s  %-11s  %12s\n", "step", "verdict", "lambda2_relay",
                "lambda2_union", "action", "cost");
  table << line;
  for (const StepRecord& r : report.records) {
    std::snprintf(line, sizeof line, "%6zu  %-13s  %14.6f  %14.6f  %-11s  %12.6f\n", r.step, to_string(r.verdict).c_str(),
                  r.lambda2_relay, r.lambda2_union, to_string(r.action), r.cost);
    table << line;
  }
  return {table.str(), summary_json(report.summary)};
}

// ---- Rendering --------------------------------------------------------------------

namespace {

void ring_data(std::ostringstream& d, const Polygon& ring) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    d << (i == 0 ? "M" : " L") << fmt6(ring[i].x) << ',' << fmt6(ring[i].y);
  }
  d << " Z";
}

std::string region_data(const Region& r) {
  std::ostringstream d;
  for (const auto& part : r.parts) {
    if (d.tellp() > 0) d << ' ';
    ring_data(d, part.outer);
    for (const Polygon& h : part.holes) {
      d << ' ';
      ring_data(d, h);
    }
  }
  return d.str();
}

std::string polygon_data(const Polygon& p) {
  std::ostringstream d;
  ring_data(d, p);
  return d.str();
}

std::string polyline_points(const Path& p) {
  std::ostringstream d;
  for (std::size_t i = 0; i < p.waypoints.size(); ++i) {
    if (i > 0) d << ' ';
    d << fmt6(p.waypoints[i].x) << ',' << fmt6(p.waypoints[i].y);
  }
  return d.str();
}

const char* const kFacePalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

}  // namespace

std::string render_svg(const Environment& env, const SystemState& state, const Overlays& ov) {
  const Point2 lo = env.min_corner();
  const Point2 hi = env.max_corner();
  const double w = hi.x - lo.x;
  const double h = hi.y - lo.y;
  const double margin = 0.02 * std::max(w, h);
  const double stroke = 0.004 * std::max(w, h);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\""
      << fmt6(800.0 * (h + 2 * margin) / (w + 2 * margin)) << "\" viewBox=\"" << fmt6(lo.x - margin) << ' '
      << fmt6(-hi.y - margin) << ' ' << fmt6(w + 2 * margin) << ' ' << fmt6(h + 2 * margin) << "\">\n"
      << "<g transform=\"scale(1,-1)\" stroke-width=\"" << fmt6(stroke) << "\" fill-rule=\"evenodd\">\n";
  svg << "<path id=\"world\" d=\"" << polygon_data(env.world()) << "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
  for (const Polygon& o : env.obstacles()) {
    svg << "<path class=\"obstacle\" d=\"" << polygon_data(o) << "\" fill=\"#7f7f7f\" stroke=\"#000000\"/>\n";
  }
  for (std::size_t i = 0; i < ov.faces.size(); ++i) {
    svg << "<path class=\"face\" d=\"" << region_data(ov.faces[i]) << "\" fill=\""
        << kFacePalette[i % std::size(kFacePalette)] << "\" fill-opacity=\"0.5\" stroke=\"#555555\"/>\n";
  }
  for (const Region& v : ov.visibility) {
    svg << "<path class=\"visibility\" d=\"" << region_data(v)
        << "\" fill=\"#ffd700\" fill-opacity=\"0.25\" stroke=\"#c9a800\"/>\n";
  }
  for (const Region& g : ov.gamma) {
    svg << "<path class=\"gamma\" d=\"" << region_data(g) << "\" fill=\"#2ca02c\" fill-opacity=\"0.35\" stroke=\"#1b5e20\" stroke-width=\""
        << fmt6(2 * stroke) << "\"/>\n";
  }
  const std::vector<Point2> q = state.vehicle_positions();
  if (ov.unit_graph) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (Point2 u : state.units) {
        if (!los_visible(env, q[i], u)) continue;
        svg << "<line class=\"unit-edge\" x1=\"" << fmt6(q[i].x) << "\" y1=\"" << fmt6(q[i].y) << "\" x2=\"" << fmt6(u.x)
            << "\" y2=\"" << fmt6(u.y) << "\" stroke=\"#2ca02c\" stroke-dasharray=\"" << fmt6(3 * stroke) << "\"/>\n";
      }
    }
  }
  if (ov.relay_graph) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = i + 1; j < q.size(); ++j) {
        if (!los_visible(env, q[i], q[j])) continue;
        svg << "<line class=\"relay-edge\" x1=\"" << fmt6(q[i].x) << "\" y1=\"" << fmt6(q[i].y) << "\" x2=\""
            << fmt6(q[j].x) << "\" y2=\"" << fmt6(q[j].y) << "\" stroke=\"#1f77b4\"/>\n";
      }
    }
  }
  for (const Path& p : ov.paths) {
    svg << "<polyline class=\"path\" points=\"" << polyline_points(p) << "\" fill=\"none\" stroke=\"#d62728\"/>\n";
  }
  if (ov.tour) {
    svg << "<polyline class=\"tour\" points=\"" << polyline_points(*ov.tour)
        << "\" fill=\"none\" stroke=\"#9467bd\" stroke-dasharray=\"" << fmt6(4 * stroke) << "\"/>\n";
  }
  const double r = 2.5 * stroke;
  for (std::size_t i = 0; i < state.vehicles.size(); ++i) {
    const VehiclePose& v = state.vehicles[i];
    const Point2 tip{v.x + 2 * r * std::cos(v.theta), v.y + 2 * r * std::sin(v.theta)};
    svg << "<circle class=\"vehicle\" cx=\"" << fmt6(v.x) << "\" cy=\"" << fmt6(v.y) << "\" r=\"" << fmt6(r)
        << "\" fill=\"#1f77b4\"/>\n"
        << "<line class=\"heading\" x1=\"" << fmt6(v.x) << "\" y1=\"" << fmt6(v.y) << "\" x2=\"" << fmt6(tip.x)
        << "\" y2=\"" << fmt6(tip.y) << "\" stroke=\"#1f77b4\"/>\n";
  }
  for (Point2 u : state.units) {
    svg << "<rect class=\"unit\" x=\"" << fmt6(u.x - r) << "\" y=\"" << fmt6(u.y - r) << "\" width=\"" << fmt6(2 * r)
        << "\" height=\"" << fmt6(2 * r) << "\" fill=\"#ff7f0e\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace losnet
