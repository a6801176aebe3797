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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "json.hpp"
#include "sagfn/errors.h"

namespace {

using nlohmann::json;
using namespace sagfn;

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

template <class T>
void json_flag(CLI::App* app, const std::string& flag, json* target,
               const std::string& key, const std::string& help) {
  app->add_option_function<T>(
      flag, [target, key](const T& v) { (*target)[key] = v; }, help);
}

void add_env_flags(CLI::App* app, json* env) {
  json_flag<std::string>(app, "--env", env, "env", "illustrative, clique, cycle or fragment");
  json_flag<int>(app, "--max-nodes", env, "max_nodes", "Node limit");
  json_flag<double>(app, "--reward-floor", env, "reward_floor", "Constant added to every reward");
  json_flag<int>(app, "--max-edges", env, "max_edges", "Edge limit");
  json_flag<int>(app, "--max-degree", env, "max_degree", "Degree limit");
  json_flag<int>(app, "--node-types", env, "node_types", "Number of node types");
  json_flag<std::string>(app, "--vocabulary", env, "vocabulary", "Fragment vocabulary JSON");
  json_flag<int>(app, "--max-fragments", env, "max_fragments", "Fragment limit");
}

// Writes to the named file, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run(int argc, char** argv) {
  CLI::App app{"Symmetry-aware GFlowNet engine"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train a tabular policy and write metrics");
  std::string config_path;
  json run_flags = json::object();
  json train_env = json::object();
  train->add_option("--config", config_path, "Run configuration JSON");
  add_env_flags(train, &train_env);
  json_flag<std::string>(train, "--objective", &run_flags, "objective", "tb, db or fm");
  json_flag<std::string>(train, "--mode", &run_flags, "mode",
                         "vanilla, transition-correction, pe, reward-scaling, flow-scaling");
  json_flag<std::int64_t>(train, "--steps", &run_flags, "steps", "Number of updates");
  json_flag<int>(train, "--batch-size", &run_flags, "batch_size", "Fresh trajectories per update");
  json_flag<int>(train, "--replay-batch", &run_flags, "replay_batch", "Replayed trajectories per update");
  json_flag<int>(train, "--replay-capacity", &run_flags, "replay_capacity", "Replay buffer size");
  json_flag<double>(train, "--epsilon", &run_flags, "epsilon", "Exploration rate");
  json_flag<double>(train, "--beta", &run_flags, "beta", "Reward exponent");
  json_flag<std::uint64_t>(train, "--seed", &run_flags, "seed", "Seed (falls back to SAGFN_SEED)");
  json_flag<std::int64_t>(train, "--eval-every", &run_flags, "eval_every", "Evaluation period");
  json_flag<double>(train, "--lr-logits", &run_flags, "lr_logits", "Adam step for logits");
  json_flag<double>(train, "--lr-flows", &run_flags, "lr_flows", "Adam step for flows and log Z");
  json_flag<int>(train, "--workers", &run_flags, "workers", "Cap on sampling threads");
  json_flag<std::int64_t>(train, "--max-states", &run_flags, "max_states", "Enumeration cap");
  json_flag<std::string>(train, "--output-dir", &run_flags, "output_dir", "Output directory");

  // eval and likelihood share a policy source
  cli::PolicySource eval_source, lik_source;
  auto add_source = [](CLI::App* sub, cli::PolicySource* src, json* env) {
    sub->add_option("--checkpoint", src->checkpoint, "Policy checkpoint (default: uniform policy)");
    sub->add_option("--max-states", src->max_states, "Enumeration cap");
    add_env_flags(sub, env);
  };
  auto* eval = app.add_subcommand("eval", "Exact terminating distribution of a policy");
  std::string eval_out;
  add_source(eval, &eval_source, &eval_source.env);
  eval->add_option("--output", eval_out, "CSV file (default: stdout)");

  auto* lik = app.add_subcommand("likelihood", "Importance-sampled likelihood estimates");
  std::string terminals_path, lik_out;
  std::vector<int> samples{1, 10, 100, 1000};
  std::optional<std::uint64_t> lik_seed;
  double lik_epsilon = 0;
  add_source(lik, &lik_source, &lik_source.env);
  lik->add_option("--terminals", terminals_path, "Graphs (JSON array or JSON lines)")->required();
  lik->add_option("--samples", samples, "Comma-separated sample counts")->delimiter(',');
  lik->add_option_function<std::uint64_t>(
      "--seed", [&](const std::uint64_t& s) { lik_seed = s; }, "Seed (falls back to SAGFN_SEED)");
  lik->add_option("--epsilon", lik_epsilon, "Exploration rate of the evaluated policy");
  lik->add_option("--output", lik_out, "CSV file (default: stdout)");

  auto* sym = app.add_subcommand("symcheck", "Automorphism group orders and orbit counts");
  std::string graphs_path, sym_out;
  sym->add_option("--graphs", graphs_path, "Graphs (JSON array or JSON lines)")->required();
  sym->add_option("--output", sym_out, "CSV file (default: stdout)");

  auto* en = app.add_subcommand("enumerate", "Enumerate the state space");
  json enum_env = json::object();
  std::int64_t enum_max_states = 10'000'000;
  std::string jsonl_path;
  add_env_flags(en, &enum_env);
  en->add_option("--max-states", enum_max_states, "Enumeration cap");
  en->add_option("--output", jsonl_path, "JSON lines file, one state per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (train->parsed()) {
    json config = config_path.empty() ? json::object() : cli::read_json_file(config_path);
    if (!config.is_object()) throw ConfigError("run configuration must be a JSON object");
    for (const auto& [k, v] : run_flags.items()) config[k] = v;
    if (!train_env.empty()) {
      json env = config.value("env", json::object());
      if (!env.is_object()) throw ConfigError("env must be an object");
      for (const auto& [k, v] : train_env.items()) env[k] = v;
      config["env"] = env;
    }
    if (!config.contains("seed")) config["seed"] = cli::resolve_seed(std::nullopt);
    cli::train(config, std::cout);
  } else if (eval->parsed()) {
    Output out(eval_out);
    cli::eval(eval_source, out.stream());
  } else if (lik->parsed()) {
    Output out(lik_out);
    cli::likelihood(lik_source, terminals_path, samples, cli::resolve_seed(lik_seed),
                    lik_epsilon, out.stream());
  } else if (sym->parsed()) {
    Output out(sym_out);
    cli::symcheck(graphs_path, out.stream());
  } else if (en->parsed()) {
    cli::enumerate(enum_env, enum_max_states, jsonl_path, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sagfn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const sagfn::UnsupportedModeError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
