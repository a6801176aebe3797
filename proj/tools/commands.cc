// Copyright 2026 The sagfn Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>

#include "sagfn/distribution.h"
#include "sagfn/errors.h"
#include "sagfn/fragments.h"
#include "sagfn/graph_io.h"
#include "sagfn/state_dag.h"
#include "sagfn/symmetry.h"
#include "sagfn/training.h"

namespace sagfn::cli {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  const char* env = std::getenv("SAGFN_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    return seed;
  } catch (const std::exception&) {
    throw ConfigError(std::string("SAGFN_SEED is not an unsigned integer: '") + env + "'");
  }
}

namespace {

struct Loaded {
  std::unique_ptr<Environment> env;
  std::unique_ptr<StateDag> dag;
  std::unique_ptr<PolicyTable> policy;
};

Loaded load(const PolicySource& source) {
  json env_json = source.env;
  json checkpoint;
  if (!source.checkpoint.empty()) {
    checkpoint = read_json_file(source.checkpoint);
    if (!checkpoint.is_object() || !checkpoint.contains("env")) {
      throw ConfigError("'" + source.checkpoint + "' is not a policy checkpoint");
    }
    env_json = checkpoint.at("env");
    for (const auto& [k, v] : source.env.items()) env_json[k] = v;
  }
  Loaded out;
  out.env = make_environment(EnvConfig::from_json(env_json));
  out.dag = std::make_unique<StateDag>(
      StateDag::enumerate(*out.env, EnumerateOptions{source.max_states}));
  out.policy = std::make_unique<PolicyTable>(
      checkpoint.is_null() ? PolicyTable(*out.dag)
                           : PolicyTable::from_json(*out.dag, checkpoint));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::uint64_t labeled_size(int n, std::uint64_t aut) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f / aut;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

}  // namespace

void train(const json& run_config, std::ostream& log) {
  const RunConfig config = RunConfig::from_json(run_config);
  const std::filesystem::path dir = config.output_dir.empty() ? "run" : config.output_dir;
  std::filesystem::create_directories(dir);
  auto env = make_environment(config.env);
  const StateDag dag = StateDag::enumerate(*env, EnumerateOptions{config.max_states});
  write_file(dir / "config.json", config.to_json().dump(2) + "\n");

  std::ofstream metrics(dir / "metrics.csv");
  if (!metrics) throw Error("cannot write '" + (dir / "metrics.csv").string() + "'");
  write_metrics_header(metrics);
  const TrainResult result = sagfn::train(dag, config, [&](const MetricRow& row) {
    write_metrics_row(metrics, row);
    metrics.flush();
  });
  write_file(dir / "checkpoint.json", result.policy.to_json().dump() + "\n");
  const MetricRow& last = result.metrics.back();
  log << "steps=" << last.step << " l1_error=" << last.l1_error
      << " log_Z=" << last.log_z << " output=" << dir.string() << "\n";
}

void eval(const PolicySource& source, std::ostream& out) {
  const Loaded loaded = load(source);
  const StateDag& dag = *loaded.dag;
  const ExactDistribution model = loaded.policy->terminating_distribution();
  const ExactDistribution target = target_distribution(dag);
  out << "hash,aut,labeled_size,reward,p_model,p_target\n" << std::setprecision(12);
  for (std::size_t i = 0; i < model.states.size(); ++i) {
    const DagState& st = dag.state(model.states[i]);
    out << hash_hex(st.hash) << ',' << st.aut << ','
        << labeled_size(st.graph.node_count(), st.aut) << ',' << st.reward << ','
        << model.p[i] << ',' << target.prob_of_state(model.states[i]) << '\n';
  }
}

void likelihood(const PolicySource& source, const std::string& terminals_path,
                const std::vector<int>& samples, std::uint64_t seed,
                double epsilon, std::ostream& out) {
  for (int m : samples) {
    if (m < 1) throw ConfigError("sample counts must be positive");
  }
  if (epsilon < 0 || epsilon > 1) throw ConfigError("epsilon must lie in [0, 1]");
  const auto records = read_graph_records(terminals_path);
  const Loaded loaded = load(source);
  const StateDag& dag = *loaded.dag;
  const PolicyTable& policy = *loaded.policy;
  const ExactDistribution exact = terminating_distribution(
      dag, [&](int s, std::span<double> p) { policy.sampling_probabilities(s, epsilon, p); });
  std::mt19937_64 rng(seed);
  out << "id,m,estimate,exact,abs_error,std_error,error\n" << std::setprecision(12);
  for (const GraphRecord& r : records) {
    const std::string id = csv_field(r.id);
    if (!r.error.empty()) {
      out << id << ",,,,,," << csv_field(r.error) << '\n';
      continue;
    }
    LabeledGraph x = r.graph;
    x.set_terminated(true);
    const int s = dag.find(x);
    if (s < 0 || !dag.state(s).terminal) {
      out << id << ",,,,,,not a terminal state of this environment\n";
      continue;
    }
    const double p = exact.prob_of_state(s);
    for (int m : samples) {
      try {
        const LikelihoodEstimate e = estimate_likelihood(policy, x, m, rng, epsilon);
        out << id << ',' << m << ',' << e.estimate << ',' << p << ','
            << std::abs(e.estimate - p) << ',' << e.std_error << ",\n";
      } catch (const DomainError& err) {
        out << id << ',' << m << ",,,,," << csv_field(err.what()) << '\n';
      }
    }
  }
}

void symcheck(const std::string& graphs_path, std::ostream& out) {
  const auto records = read_graph_records(graphs_path);
  out << "id,n,aut,orbits,micros,error\n";
  for (const GraphRecord& r : records) {
    const std::string id = csv_field(r.id);
    if (!r.error.empty()) {
      out << id << ",,,,," << csv_field(r.error) << '\n';
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const AutomorphismGroup group = automorphism_group(r.graph);
    const auto t1 = std::chrono::steady_clock::now();
    out << id << ',' << r.graph.node_count() << ',' << group.order() << ','
        << group.node_orbit_count() << ','
        << std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() << ",\n";
  }
}

void enumerate(const json& env_json, std::int64_t max_states,
               const std::string& jsonl_path, std::ostream& out) {
  if (max_states < 1) throw ConfigError("max_states must be at least 1");
  auto env = make_environment(EnvConfig::from_json(env_json));
  const auto t0 = std::chrono::steady_clock::now();
  const StateDag dag = StateDag::enumerate(*env, EnumerateOptions{max_states});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!jsonl_path.empty()) {
    std::ofstream file(jsonl_path);
    if (!file) throw Error("cannot write '" + jsonl_path + "'");
    dag.write_jsonl(file);
  }
  out << "env=" << env->name() << " states=" << dag.size()
      << " terminals=" << dag.terminals().size()
      << " forward_classes=" << dag.forward_class_count()
      << " backward_classes=" << dag.backward_class_count() << std::setprecision(3)
      << " seconds=" << seconds << "\n";
}

}  // namespace sagfn::cli
