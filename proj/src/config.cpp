#include "dgp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dgp {

using nlohmann::json;

Mode mode_from_string(const std::string& s) {
  if (s == "no_gp") return Mode::kNoGp;
  if (s == "local_gp") return Mode::kLocalGp;
  if (s == "distributed_gp") return Mode::kDistributedGp;
  throw ConfigError("unknown mode: " + s);
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::kNoGp: return "no_gp";
    case Mode::kLocalGp: return "local_gp";
    case Mode::kDistributedGp: return "distributed_gp";
  }
  return "?";
}

namespace {

Vec3 vec3_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Vec4 vec4_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("expected 4-vector");
  return Vec4(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
              j[3].get<double>());
}

Pose pose_from(const json& j) {
  return Pose(vec3_from(j.at("p")), j.at("theta").get<double>());
}

}  // namespace

std::string pose_to_json(const Pose& g) {
  json j;
  j["p"] = {g.p().x(), g.p().y(), g.p().z()};
  j["theta"] = g.theta();
  return j.dump();
}

void ScenarioConfig::validate() const {
  try {
    graph.validate();
    gains.validate();
    features.validate();
    regions.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (regions.count() != graph.n) {
    throw ConfigError("regions: sector count must equal drone count");
  }
  if (!(camera.lambda > 0.0 && camera.z_min > 0.0 && camera.u_max > 0.0 &&
        camera.v_max > 0.0)) {
    throw ConfigError("camera: lambda, z_min and bounds must be > 0");
  }
  if (!(dt > 0.0 && duration > 0.0 && dataset_dt > 0.0 &&
        dataset_duration > 0.0)) {
    throw ConfigError("durations and steps must be > 0");
  }
  if (!(bound_delta > 0.0 && bound_delta < 1.0)) {
    throw ConfigError("gp.delta must be in (0, 1)");
  }
  if (beta_formula != "srinivas") {
    throw ConfigError("unknown gp.beta_formula: " + beta_formula);
  }
  if (dataset_noise_var < 0.0) throw ConfigError("gp.noise_var must be >= 0");
  if (opt_budget < 1) throw ConfigError("gp.opt_budget must be >= 1");
  if (static_cast<int>(desired_poses.size()) != graph.n) {
    throw ConfigError("desired_poses: need one pose per drone");
  }
  if (static_cast<int>(initial_errors.size()) != graph.n) {
    throw ConfigError("initial_errors: need one entry per drone");
  }
  if (!(theta_limit > 0.0 && theta_limit <= M_PI)) {
    throw ConfigError("theta_limit must be in (0, pi]");
  }
}

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  static const std::set<std::string> known = {
      "graph", "gains", "camera", "features", "target", "regions", "gp",
      "mode", "duration", "dt", "seed", "dataset", "desired_poses",
      "initial_errors", "theta_limit", "grace_period", "oracle_feedforward",
      "data_dir", "hyperparams_dir"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError("unknown config key: " + it.key());
    }
  }

  ScenarioConfig c;
  try {
    const json& g = j.at("graph");
    c.graph.n = g.at("n").get<int>();
    for (const auto& e : g.at("edges")) {
      c.graph.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    if (g.contains("d")) {
      c.graph.d = g.at("d").get<std::vector<double>>();
    } else {
      c.graph.d.assign(c.graph.n, 1.0);
    }

    if (j.contains("gains")) {
      const json& ga = j.at("gains");
      if (ga.contains("preset")) {
        const std::string p = ga.at("preset").get<std::string>();
        if (p == "sim") {
          c.gains = Gains::sim_preset();
        } else if (p == "experiment") {
          c.gains = Gains::experiment_preset();
        } else {
          throw ConfigError("unknown gains preset: " + p);
        }
      } else {
        c.gains.k_c = vec4_from(ga.at("k_c"));
        c.gains.k_e = vec4_from(ga.at("k_e"));
        c.gains.k_s = ga.at("k_s").get<double>();
      }
    }

    if (j.contains("camera")) {
      const json& cam = j.at("camera");
      c.camera.lambda = cam.value("lambda", 1.0);
      if (cam.contains("image_half_extent")) {
        c.camera.u_max = cam.at("image_half_extent").at(0).get<double>();
        c.camera.v_max = cam.at("image_half_extent").at(1).get<double>();
      }
      c.camera.z_min = cam.value("z_min", 0.05);
      c.camera.pixel_noise_std = cam.value("pixel_noise_std", 0.0);
    }

    if (j.contains("features")) {
      c.features.points.clear();
      for (const auto& pt : j.at("features").at("points")) {
        c.features.points.push_back(vec3_from(pt));
      }
    }

    if (j.contains("target")) {
      const json& t = j.at("target");
      c.target.kind = target_kind_from_string(t.value("kind", "duffing"));
      if (t.contains("duffing")) {
        const json& d = t.at("duffing");
        c.target.duffing.delta = d.value("delta", 0.1);
        c.target.duffing.gamma = d.value("gamma", 0.39);
        c.target.duffing.omega = d.value("omega", 0.4);
        c.target.duffing.alpha = d.value("alpha", -1.0);
        c.target.duffing.beta = d.value("beta", 1.0);
      }
      if (t.contains("square")) {
        const json& s = t.at("square");
        c.target.square.side = s.value("side", 1.0);
        c.target.square.speed = s.value("speed", 0.1);
        c.target.square.track_gain = s.value("track_gain", 0.05);
        c.target.square.z = s.value("z", 0.0);
      }
      if (t.contains("constant_velocity")) {
        c.target.constant =
            BodyVelocity::from_vec4(vec4_from(t.at("constant_velocity")));
      }
      if (t.contains("initial")) c.target.initial = pose_from(t.at("initial"));
    }

    if (j.contains("regions")) {
      const json& r = j.at("regions");
      if (r.contains("boundaries_deg")) {
        c.regions.boundaries_deg =
            r.at("boundaries_deg").get<std::vector<double>>();
      }
      c.regions.samples_per_drone = r.value("samples_per_drone", 10);
    }

    if (j.contains("gp")) {
      const json& gp = j.at("gp");
      c.dataset_noise_var = gp.value("noise_var", 0.01);
      c.opt_budget = gp.value("opt_budget", 500);
      c.bound_delta = gp.value("delta", 0.1);
      c.beta_formula = gp.value("beta_formula", std::string("srinivas"));
      if (gp.contains("eval_grid")) {
        const json& eg = gp.at("eval_grid");
        if (eg.contains("lo")) c.eval_grid.lo = vec4_from(eg.at("lo"));
        if (eg.contains("hi")) c.eval_grid.hi = vec4_from(eg.at("hi"));
        c.eval_grid.points_per_dim =
            eg.value("points_per_dim", c.eval_grid.points_per_dim);
      }
    }

    if (j.contains("mode")) {
      c.mode = mode_from_string(j.at("mode").get<std::string>());
    }
    c.duration = j.value("duration", 100.0);
    c.dt = j.value("dt", 0.002);
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("dataset")) {
      const json& d = j.at("dataset");
      c.dataset_duration = d.value("duration", 100.0);
      c.dataset_dt = d.value("dt", 0.01);
    }
    c.theta_limit = j.value("theta_limit", M_PI / 2.0);
    c.grace_period = j.value("grace_period", 1.0);
    c.oracle_feedforward = j.value("oracle_feedforward", false);
    c.data_dir = j.value("data_dir", std::string());
    c.hyperparams_dir = j.value("hyperparams_dir", std::string());

    if (j.contains("desired_poses")) {
      for (const auto& p : j.at("desired_poses")) {
        c.desired_poses.push_back(pose_from(p));
      }
    } else {
      // drones spread on a small circle, target kept 1.5 m below the camera
      for (int i = 0; i < c.graph.n; ++i) {
        const double a = 2.0 * M_PI * i / c.graph.n;
        c.desired_poses.emplace_back(
            Vec3(0.2 * std::cos(a), 0.2 * std::sin(a), 1.5), 0.0);
      }
    }
    if (j.contains("initial_errors")) {
      for (const auto& e : j.at("initial_errors")) {
        c.initial_errors.push_back(
            ErrorState{pose_from(e.at("g_ci")), pose_from(e.at("g_ei"))});
      }
    } else {
      for (int i = 0; i < c.graph.n; ++i) {
        c.initial_errors.push_back(
            ErrorState{Pose(Vec3(0.1, -0.05, 0.05), 0.1),
                       Pose(Vec3(-0.05, 0.1, 0.05), -0.1)});
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace dgp
