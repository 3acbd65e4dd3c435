#include "dgp/pipeline.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

namespace dgp::pipeline {

using nlohmann::json;

namespace {

// Shortest round-trip decimal form, stable across runs.
std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw GenerationError("cannot open output file: " + path.string());
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

void write_dataset_csv(const Dataset& d, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "px,py,pz,theta,y1,y2,y3,y4\n";
  for (int m = 0; m < d.size(); ++m) {
    for (int c = 0; c < 4; ++c) out << fmt(d.X(m, c)) << ',';
    for (int c = 0; c < 4; ++c) {
      out << fmt(d.Y(m, c)) << (c == 3 ? '\n' : ',');
    }
  }
}

Dataset read_dataset_csv(const fs::path& path, const Vec4& sigma_n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset file: " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::array<double, 8>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw ConfigError("malformed dataset row in " + path.string());
    }
    std::array<double, 8> row;
    for (int c = 0; c < 8; ++c) row[c] = std::stod(fields[c]);
    rows.push_back(row);
  }
  if (rows.empty()) throw ConfigError("empty dataset file: " + path.string());
  Dataset d;
  d.sigma_n = sigma_n;
  d.X.resize(rows.size(), 4);
  d.Y.resize(rows.size(), 4);
  for (size_t m = 0; m < rows.size(); ++m) {
    for (int c = 0; c < 4; ++c) {
      d.X(m, c) = rows[m][c];
      d.Y(m, c) = rows[m][4 + c];
    }
  }
  return d;
}

void write_hyperparams_json(const HyperParams& h, double lml,
                            const fs::path& path) {
  json j;
  j["log_marginal_likelihood"] = lml;
  j["channels"] = json::array();
  for (int c = 0; c < kNumChannels; ++c) {
    json ch;
    ch["sigma_f"] = h[c].sigma_f;
    ch["lengthscales"] = {h[c].lengthscales[0], h[c].lengthscales[1],
                          h[c].lengthscales[2], h[c].lengthscales[3]};
    j["channels"].push_back(ch);
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

HyperParams read_hyperparams_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open hyperparams file: " + path.string());
  json j;
  try {
    in >> j;
    HyperParams h;
    for (int c = 0; c < kNumChannels; ++c) {
      const json& ch = j.at("channels").at(c);
      h[c].sigma_f = ch.at("sigma_f").get<double>();
      for (int d = 0; d < 4; ++d) {
        h[c].lengthscales[d] = ch.at("lengthscales").at(d).get<double>();
      }
    }
    return h;
  } catch (const json::exception& e) {
    throw ConfigError("bad hyperparams file " + path.string() + ": " +
                      e.what());
  }
}

void write_trace_csv(const RunTrace& trace, const fs::path& path,
                     const std::string& mode_label) {
  std::ofstream out = open_out(path);
  if (!mode_label.empty()) out << "mode,";
  out << "t,drone,eci_x,eci_y,eci_z,eci_s,eei_x,eei_y,eei_z,eei_s,"
         "norm_e_sq,S,uci_1,uci_2,uci_3,uci_4,uei_1,uei_2,uei_3,uei_4,"
         "mu_1,mu_2,mu_3,mu_4,var_1,var_2,var_3,var_4,visible,"
         "target_x,target_y,target_z,target_theta\n";
  for (const StepRecord& r : trace.rows) {
    if (!mode_label.empty()) out << mode_label << ',';
    out << fmt(r.t) << ',' << r.drone;
    for (int c = 0; c < 4; ++c) out << ',' << fmt(r.e_ci[c]);
    for (int c = 0; c < 4; ++c) out << ',' << fmt(r.e_ei[c]);
    out << ',' << fmt(r.norm_e_sq) << ',' << fmt(r.storage_total);
    for (int c = 0; c < 4; ++c) out << ',' << fmt(r.u_ci[c]);
    for (int c = 0; c < 4; ++c) out << ',' << fmt(r.u_ei[c]);
    for (int c = 0; c < 4; ++c) out << ',' << fmt(r.mu_poe[c]);
    for (int c = 0; c < 4; ++c) out << ',' << fmt(r.var_poe[c]);
    out << ',' << r.visible;
    out << ',' << fmt(r.target.p().x()) << ',' << fmt(r.target.p().y())
        << ',' << fmt(r.target.p().z()) << ',' << fmt(r.target.theta())
        << '\n';
  }
}

void write_metrics_json(const RunMetrics& m, const fs::path& path) {
  json j;
  j["squared_mean_e"] = m.squared_mean_e;
  j["mean_sq_e"] = m.mean_sq_e;
  j["peak_error"] = m.peak_error;
  j["visibility_loss_events"] = m.visibility_loss_events;
  j["fit_seconds"] = m.fit_seconds;
  j["predict_seconds"] = m.predict_seconds;
  j["status"] = to_string(m.status);
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void gen_data(const ScenarioConfig& config, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const auto traj = rollout_target(config.target, config.dataset_duration,
                                   config.dataset_dt);
  const auto datasets = generate_datasets(traj, config.regions,
                                          config.dataset_noise_var,
                                          config.seed);
  for (size_t i = 0; i < datasets.size(); ++i) {
    write_dataset_csv(datasets[i],
                      out_dir / ("drone_" + std::to_string(i + 1) + ".csv"));
  }
  json manifest;
  manifest["seed"] = config.seed;
  manifest["noise_var"] = config.dataset_noise_var;
  manifest["samples_per_drone"] = config.regions.samples_per_drone;
  manifest["region_boundaries_deg"] = config.regions.boundaries_deg;
  manifest["drones"] = datasets.size();
  std::ofstream out = open_out(out_dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

namespace {

Vec4 dataset_sigma_n(const ScenarioConfig& config) {
  return config.dataset_noise_var > 0.0
             ? Vec4::Constant(std::sqrt(config.dataset_noise_var))
             : Vec4::Constant(0.1);
}

std::vector<Dataset> load_datasets(const ScenarioConfig& config,
                                   const fs::path& data_dir) {
  std::vector<Dataset> out;
  for (int i = 1; i <= config.graph.n; ++i) {
    out.push_back(read_dataset_csv(
        data_dir / ("drone_" + std::to_string(i) + ".csv"),
        dataset_sigma_n(config)));
  }
  return out;
}

// Runs fn(i) for i in [0, n) on up to thread_cap() workers; results are
// merged by index so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futures;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    }));
  }
  for (auto& f : futures) f.get();
}

}  // namespace

void train(const ScenarioConfig& config, const fs::path& data_dir,
           const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const auto datasets = load_datasets(config, data_dir);
  const int n = static_cast<int>(datasets.size());
  std::vector<HyperParams> fitted(n);
  std::vector<double> lmls(n);
  parallel_for(n, [&](int i) {
    fitted[i] = optimize_hyperparams(datasets[i], HyperParams{},
                                     config.opt_budget);
    lmls[i] = log_marginal_likelihood(datasets[i], fitted[i]);
  });
  for (int i = 0; i < n; ++i) {
    write_hyperparams_json(
        fitted[i], lmls[i],
        out_dir / ("hyperparams_drone_" + std::to_string(i + 1) + ".json"));
  }
}

std::vector<GpExpert> load_experts(const ScenarioConfig& config,
                                   const fs::path& data_dir,
                                   const fs::path& hp_dir,
                                   double* fit_seconds) {
  const auto datasets = load_datasets(config, data_dir);
  std::vector<HyperParams> hps;
  for (int i = 1; i <= config.graph.n; ++i) {
    hps.push_back(read_hyperparams_json(
        hp_dir / ("hyperparams_drone_" + std::to_string(i) + ".json")));
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<GpExpert> experts;
  experts.reserve(datasets.size());
  for (size_t i = 0; i < datasets.size(); ++i) {
    experts.push_back(GpExpert::fit(datasets[i], hps[i]));
  }
  if (fit_seconds) {
    *fit_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }
  return experts;
}

RunResult simulate(const ScenarioConfig& config, const fs::path& data_dir,
                   const fs::path& hp_dir, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<GpExpert> experts;
  double fit_seconds = 0.0;
  if (config.mode != Mode::kNoGp && !config.oracle_feedforward) {
    experts = load_experts(config, data_dir, hp_dir, &fit_seconds);
  }
  RunResult result = run_simulation(config, experts);
  result.metrics.fit_seconds = fit_seconds;
  write_trace_csv(result.trace, out_dir / "trace.csv");
  write_metrics_json(result.metrics, out_dir / "metrics.json");
  return result;
}

ComparisonResult compare(const ScenarioConfig& config, const fs::path& data_dir,
                         const fs::path& hp_dir, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  double fit_seconds = 0.0;
  const std::vector<GpExpert> experts =
      load_experts(config, data_dir, hp_dir, &fit_seconds);

  ComparisonResult cmp;
  std::ofstream combined = open_out(out_dir / "combined.csv");
  bool header_written = false;

  const Mode modes[3] = {Mode::kNoGp, Mode::kLocalGp, Mode::kDistributedGp};
  double* slots[3] = {&cmp.squared_mean_no_gp, &cmp.squared_mean_local,
                      &cmp.squared_mean_distributed};
  for (int m = 0; m < 3; ++m) {
    ScenarioConfig c = config;
    c.mode = modes[m];
    const RunResult r = run_simulation(c, experts);
    *slots[m] = r.metrics.squared_mean_e;
    if (static_cast<int>(r.metrics.status) >
        static_cast<int>(cmp.worst_status)) {
      cmp.worst_status = r.metrics.status;
    }
    const fs::path tmp = out_dir / ("trace_" + to_string(modes[m]) + ".csv");
    write_trace_csv(r.trace, tmp, to_string(modes[m]));
    std::ifstream in(tmp);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        if (!header_written) {
          combined << line << '\n';
          header_written = true;
        }
        first = false;
        continue;
      }
      combined << line << '\n';
    }
  }
  cmp.strict_ordering =
      cmp.squared_mean_distributed < cmp.squared_mean_local &&
      cmp.squared_mean_local < cmp.squared_mean_no_gp;

  json j;
  j["squared_mean_e"] = {{"no_gp", cmp.squared_mean_no_gp},
                         {"local_gp", cmp.squared_mean_local},
                         {"distributed_gp", cmp.squared_mean_distributed}};
  j["strict_ordering_distributed_local_no_gp"] = cmp.strict_ordering;
  j["status"] = to_string(cmp.worst_status);
  std::ofstream out = open_out(out_dir / "comparison.json");
  out << j.dump(2) << '\n';
  return cmp;
}

GainConditionReport gain_condition_report(const std::vector<GpExpert>& experts,
                                          double delta,
                                          const RegionGrid& grid) {
  GainConditionReport rep;
  for (const GpExpert& e : experts) {
    rep.per_expert.push_back(bound_report(e, delta, grid));
    rep.l_mu_network = rep.l_mu_network.cwiseMax(rep.per_expert.back().l_mu);
    rep.delta_bar_network =
        rep.delta_bar_network.cwiseMax(rep.per_expert.back().delta_bar);
  }
  std::tie(rep.l_mu, rep.delta_bar) =
      aggregate_norms(rep.l_mu_network, rep.delta_bar_network);
  return rep;
}

GainConditionReport bounds(const ScenarioConfig& config,
                           const fs::path& data_dir, const fs::path& hp_dir,
                           const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const std::vector<GpExpert> experts =
      load_experts(config, data_dir, hp_dir);
  const GainConditionReport rep =
      gain_condition_report(experts, config.bound_delta, config.eval_grid);

  json j;
  j["delta"] = config.bound_delta;
  j["L_mu"] = rep.l_mu;
  j["Delta_bar"] = rep.delta_bar;
  j["per_expert"] = json::array();
  for (const BoundReport& b : rep.per_expert) {
    json e;
    auto vec = [](const Vec4& v) {
      return std::vector<double>{v[0], v[1], v[2], v[3]};
    };
    e["gamma_sq"] = vec(b.gamma_sq);
    e["beta"] = vec(b.beta);
    e["delta_bar"] = vec(b.delta_bar);
    e["l_mu"] = vec(b.l_mu);
    e["l_mu_empirical"] = vec(b.l_mu_empirical);
    j["per_expert"].push_back(e);
  }
  std::ofstream out = open_out(out_dir / "bounds.json");
  out << j.dump(2) << '\n';
  return rep;
}

}  // namespace dgp::pipeline
