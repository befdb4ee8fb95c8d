// Copyright 2026 The Maya Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "maya/agent/agent_model.hpp"
#include "maya/errors.hpp"
#include "maya/harness/dataset.hpp"
#include "maya/harness/evaluation.hpp"
#include "maya/harness/provider_registry.hpp"
#include "maya/harness/report.hpp"
#include "maya/search/config.hpp"
#include "maya/training/behavior_cloning.hpp"
#include "maya/victims/http_victim.hpp"
#include "maya/victims/linear_classifier.hpp"

namespace fs = std::filesystem;
using namespace maya;

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop.store(true); }

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_provider_options(CLI::App* cmd, ProviderSettings& p) {
  cmd->add_option("--parser", p.parser, "lexicon | http:URL")->capture_default_str();
  cmd->add_option("--paraphrasers", p.paraphrasers, "synonym | http:URL, repeatable")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--masked-lm", p.masked_lm, "frequency | http:URL")->capture_default_str();
  cmd->add_option("--encoder", p.encoder, "bag | http:URL")->capture_default_str();
  cmd->add_option("--grammar", p.grammar, "rules | http:URL")->capture_default_str();
  cmd->add_option("--antonyms", p.antonyms, "dictionary | none")->capture_default_str();
}

struct AttackArgs {
  std::string dataset, victim, mode = "score", attacker = "maya", agent_ckpt, allow_tags, out;
  std::string profile;
  int k = kDefaultSubstituteCount;
  std::optional<int> round_cap;
  std::size_t budget = kDefaultQueryBudget;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  ProviderSettings providers;
};

int run_attack(const AttackArgs& a) {
  const auto data = load_dataset(a.dataset);
  if (data.empty()) throw InvalidArgument("dataset is empty");
  const auto mode = parse_victim_mode(a.mode);
  const int label_count = infer_label_count(data);
  auto victim = open_victim(a.victim, mode, label_count);
  auto suite = build_provider_suite(a.providers, data);

  AttackConfig config = a.profile.empty() ? AttackConfig{}
                                          : AttackConfig::for_profile(parse_dataset_profile(a.profile));
  config.k = a.k;
  if (a.round_cap) config.round_cap = *a.round_cap;
  config.query_budget = a.budget;
  if (const auto tags = split_csv(a.allow_tags); !tags.empty()) {
    config.constituent_allowlist = std::set<std::string>(tags.begin(), tags.end());
  }
  config.validate();

  std::unique_ptr<Attacker> attacker;
  if (a.attacker == "maya") {
    if (mode != VictimMode::kScoreBased) throw InvalidArgument("maya attacker needs --mode score");
    attacker = std::make_unique<MayaAttacker>();
  } else if (a.attacker == "agent") {
    if (a.agent_ckpt.empty()) throw InvalidArgument("--agent-ckpt is required for the agent");
    auto encoder = std::make_shared<BagPairEncoder>(suite.encoder);
    auto agent = std::make_shared<AgentModel>(AgentModel::load(a.agent_ckpt, encoder));
    attacker = std::make_unique<AgentAttacker>(agent, mode);
  } else {
    throw InvalidArgument("--attacker must be maya or agent");
  }
  spdlog::info("attacking {} samples with {} (seed {})", data.size(), attacker->name(), a.seed);
  EvaluationOptions options;
  options.workers = a.workers;
  const auto report = evaluate(*attacker, victim, data, suite, config, options);
  emit_report(report, a.out);
  std::cout << report_header_json(report).dump(2) << '\n';
  return 0;
}

struct TrainArgs {
  std::string dataset, arch = "bow", out, expert = "maya";
  int rounds = 5;
  double lr = kDefaultLearningRate;
  std::size_t batch_size = kDefaultBatchSize;
  std::uint64_t seed = 0;
  int k = kDefaultSubstituteCount;
  int round_cap = 8;
  ProviderSettings providers;
};

int run_train_agent(const TrainArgs& a) {
  const auto data = load_dataset(a.dataset);
  auto suite = build_provider_suite(a.providers, data);
  auto arch = ArchitectureSpec::parse(a.arch);
  arch.seed = a.seed;
  TrainingConfig config;
  config.learning_rate = a.lr;
  config.batch_size = a.batch_size;
  config.rounds = a.rounds;
  config.seed = a.seed;
  config.attack.k = a.k;
  config.attack.round_cap = a.round_cap;

  fs::create_directories(a.out);
  BehaviorCloningOptions options;
  options.trajectory_log = fs::path(a.out) / "trajectories.jsonl";
  if (a.expert == "min-similarity") {
    auto encoder = suite.encoder;
    options.make_expert = [encoder](VictimPtr) {
      return std::make_unique<MinSimilarityExpert>(encoder);
    };
  } else if (a.expert != "maya") {
    throw InvalidArgument("--expert must be maya or min-similarity");
  }
  auto result = behavior_cloning_loop(data, arch, suite, config, options);
  result.agent.save(fs::path(a.out) / "agent");
  std::static_pointer_cast<LinearBowClassifier>(result.local_victim)
      ->save(fs::path(a.out) / "local_victim.json");

  nlohmann::json metrics = nlohmann::json::array();
  for (const auto& m : result.rounds) {
    metrics.push_back({{"round", m.round},
                       {"trajectories", m.trajectories},
                       {"divergences", m.divergences},
                       {"optimizer_steps", m.optimizer_steps},
                       {"mean_loss", m.mean_loss},
                       {"held_out_accuracy", m.held_out_accuracy}});
  }
  std::ofstream(fs::path(a.out) / "metrics.json") << metrics.dump(2) << '\n';
  std::cout << metrics.dump(2) << '\n';
  return 0;
}

int run_train_victim(const std::string& dataset, const std::string& arch_spec,
                     const std::string& out) {
  const auto data = load_dataset(dataset);
  auto model = train_local_victim(data, ArchitectureSpec::parse(arch_spec));
  if (const auto parent = fs::path(out).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  model->save(out);
  std::size_t correct = 0;
  for (const auto& s : data) correct += model->predict_one(s.text, s.context).label() == s.gold_label;
  std::cout << "train accuracy " << static_cast<double>(correct) / data.size() << '\n';
  return 0;
}

int run_evaluate(const std::string& results, const std::string& budgets_csv,
                 const std::string& transfer_csv, const std::string& out) {
  const auto report = load_report(results);
  std::vector<std::size_t> budgets;
  for (const auto& b : split_csv(budgets_csv)) budgets.push_back(std::stoull(b));
  std::vector<AttackOutcome> outcomes;
  for (const auto& r : report.per_sample) outcomes.push_back(r.outcome);
  const auto curve = asr_under_budget(outcomes, budgets);

  std::vector<std::pair<std::string, VictimPtr>> victims;
  for (const auto& spec : split_csv(transfer_csv)) {
    victims.emplace_back(spec, open_victim(spec, VictimMode::kDecisionBased, report.label_count));
  }
  const auto transfers = transferability(report.per_sample, victims);
  emit_evaluation(out, report, curve, transfers);
  std::ifstream in(fs::path(out) / kEvaluationFile);
  std::cout << in.rdbuf();
  return 0;
}

int run_serve(const std::string& ckpt, const std::string& mode_name, int port,
              const std::string& host) {
  const auto mode = parse_victim_mode(mode_name);
  VictimPtr victim = LinearBowClassifier::load(ckpt);
  VictimServer server(victim, mode);
  const int bound = server.bind(host, port);
  std::cout << "serving " << ckpt << " (" << to_string(mode) << ") on " << host << ":" << bound
            << std::endl;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&server] {
    while (!g_stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  server.serve();
  g_stop.store(true);
  watcher.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-granularity black-box text attacks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file overriding option defaults");
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace | debug | info | warn | error | off");

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand("attack", "Attack every sample of a dataset");
  attack_cmd->add_option("--dataset", attack.dataset, "JSONL dataset")->required();
  attack_cmd->add_option("--victim", attack.victim, "local:CKPT | http:URL")->required();
  attack_cmd->add_option("--mode", attack.mode, "score | decision")->capture_default_str();
  attack_cmd->add_option("--attacker", attack.attacker, "maya | agent")->capture_default_str();
  attack_cmd->add_option("--agent-ckpt", attack.agent_ckpt, "agent checkpoint directory");
  attack_cmd->add_option("--k", attack.k, "substitutes per mask")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  attack_cmd->add_option("--round-cap", attack.round_cap, "maximum rounds (8, or the profile's)");
  attack_cmd->add_option("--budget", attack.budget, "query budget per sample, 0 = unlimited")
      ->capture_default_str();
  attack_cmd->add_option("--allow-tags", attack.allow_tags, "constituent tags to rewrite");
  attack_cmd->add_option("--seed", attack.seed, "random seed")->capture_default_str();
  attack_cmd->add_option("--out", attack.out, "output directory")->required();
  attack_cmd->add_option("--profile", attack.profile, "sst2 | mnli | agnews defaults");
  attack_cmd->add_option("--workers", attack.workers, "parallel samples")->capture_default_str();
  add_provider_options(attack_cmd, attack.providers);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train-agent", "Behavior-clone the agent");
  train_cmd->add_option("--dataset", train.dataset, "JSONL training data")->required();
  train_cmd->add_option("--arch", train.arch, "local victim spec, e.g. bow:epochs=60")
      ->capture_default_str();
  train_cmd->add_option("--rounds", train.rounds, "imitation rounds")->capture_default_str();
  train_cmd->add_option("--lr", train.lr, "learning rate")->capture_default_str();
  train_cmd->add_option("--batch-size", train.batch_size, "trajectories per step")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "random seed")->capture_default_str();
  train_cmd->add_option("--out", train.out, "output directory")->required();
  train_cmd->add_option("--expert", train.expert, "maya | min-similarity")->capture_default_str();
  train_cmd->add_option("--k", train.k, "substitutes per mask")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--round-cap", train.round_cap, "rollout round cap")
      ->capture_default_str();
  add_provider_options(train_cmd, train.providers);

  std::string victim_dataset, victim_arch = "bow", victim_out;
  auto* victim_cmd = app.add_subcommand("train-victim", "Train a reference classifier");
  victim_cmd->add_option("--dataset", victim_dataset, "JSONL training data")->required();
  victim_cmd->add_option("--arch", victim_arch, "classifier spec")->capture_default_str();
  victim_cmd->add_option("--out", victim_out, "checkpoint path")->required();

  std::string results, budgets = "5,10,20,50,100,200,500,1000", transfer, eval_out;
  auto* eval_cmd = app.add_subcommand("evaluate", "Budget curves and transferability");
  eval_cmd->add_option("--results", results, "directory written by attack")->required();
  eval_cmd->add_option("--budgets", budgets, "comma separated budgets")->capture_default_str();
  eval_cmd->add_option("--transfer-victims", transfer, "comma separated victim specs");
  eval_cmd->add_option("--out", eval_out, "output directory")->required();

  std::string ckpt, serve_mode = "score", host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve-victim", "Serve a classifier over HTTP");
  serve_cmd->add_option("--ckpt", ckpt, "classifier checkpoint")->required();
  serve_cmd->add_option("--mode", serve_mode, "score | decision")->capture_default_str();
  serve_cmd->add_option("--port", port, "port, 0 picks a free one")->capture_default_str();
  serve_cmd->add_option("--host", host, "bind address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*attack_cmd) return run_attack(attack);
    if (*train_cmd) return run_train_agent(train);
    if (*victim_cmd) return run_train_victim(victim_dataset, victim_arch, victim_out);
    if (*eval_cmd) return run_evaluate(results, budgets, transfer, eval_out);
    if (*serve_cmd) return run_serve(ckpt, serve_mode, port, host);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
