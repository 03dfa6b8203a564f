// Command-line driver.  Builds a JSON config from an optional --config file
// plus explicit flag overrides, then calls the shared library's C entry
// points; their status codes become the process exit code (0 ok, 1 runtime
// failure, 2 config error).
#include "ants/ants.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Command {
  CLI::App* cmd = nullptr;
  int (*entry)(const char*, const char*) = nullptr;
  std::string config_file;
  std::string out_dir;
  json overrides = json::object();
  std::vector<std::function<void()>> setters;

  // Registers a flag that overrides `key` only when actually supplied.
  template <typename T>
  void opt(const std::string& flag_name, const char* key, const std::string& desc) {
    auto value = std::make_shared<T>();
    CLI::Option* option = cmd->add_option(flag_name, *value, desc);
    setters.push_back([this, option, value, key] {
      if (option->count() > 0) overrides[key] = *value;
    });
  }

  void flag(const std::string& flag_name, const char* key, const std::string& desc) {
    auto value = std::make_shared<bool>(false);
    CLI::Option* option = cmd->add_flag(flag_name, *value, desc);
    setters.push_back([this, option, value, key] {
      if (option->count() > 0) overrides[key] = *value;
    });
  }

  void common_io() {
    cmd->add_option("--config", config_file, "JSON config file; flags override its keys");
    cmd->add_option("--out", out_dir, "output directory for CSV files")->required();
  }

  int run() {
    json cfg = json::object();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) {
        std::fprintf(stderr, "error: cannot open config file %s\n", config_file.c_str());
        return ANTS_ERR_CONFIG;
      }
      std::ostringstream text;
      text << in.rdbuf();
      cfg = json::parse(text.str(), nullptr, false);
      if (cfg.is_discarded() || !cfg.is_object()) {
        std::fprintf(stderr, "error: config file %s is not a JSON object\n", config_file.c_str());
        return ANTS_ERR_CONFIG;
      }
    }
    for (auto& set : setters) set();
    cfg.update(overrides);
    int rc = entry(cfg.dump().c_str(), out_dir.c_str());
    if (rc != ANTS_OK) std::fprintf(stderr, "error: %s\n", ants_last_error());
    return rc;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-entropy tree-search experiment driver"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;

  auto add = [&](const char* name, const char* desc, int (*entry)(const char*, const char*)) {
    auto command = std::make_unique<Command>();
    command->cmd = app.add_subcommand(name, desc);
    command->entry = entry;
    commands.push_back(std::move(command));
    return commands.back().get();
  };

  Command* plan = add("plan", "Run planning episodes and log per-episode returns", ants_run_plan);
  plan->opt<std::string>("--algo", "algo", "ants_s | ants_t | ments | tents | puct");
  plan->opt<std::string>("--env", "env", "environment fixture");
  plan->opt<int>("--seeds", "seeds", "number of independent seeds");
  plan->opt<int>("--episodes", "episodes", "episodes per seed");
  plan->opt<int>("--max-steps", "max_steps", "episode step cap");
  plan->opt<int>("--passes", "n_passes", "planning passes per action");
  plan->opt<int>("--depth", "depth_limit", "search depth cap");
  plan->opt<double>("--gamma", "gamma", "discount factor");
  plan->opt<std::uint64_t>("--seed", "base_seed", "base RNG seed");
  plan->flag("--trace-temperature", "trace_temperature", "also write a per-step temperature trace");
  plan->common_io();

  Command* loop =
      add("loop", "Run the planning-learning loop and log the learning curve", ants_run_loop);
  loop->opt<std::string>("--algo", "algo", "ants_s | ants_t | ments | tents | puct");
  loop->opt<std::string>("--env", "env", "environment fixture");
  loop->opt<int>("--epochs", "epochs", "training epochs after the pre-fill epoch");
  loop->opt<int>("--episodes-per-epoch", "episodes_per_epoch", "collection episodes per epoch");
  loop->opt<int>("--updates-per-epoch", "updates_per_epoch", "gradient steps per epoch");
  loop->opt<int>("--batch-size", "batch_size", "minibatch size");
  loop->opt<int>("--eval-episodes", "eval_episodes", "greedy evaluation episodes per epoch");
  loop->opt<int>("--max-steps", "max_steps", "episode step cap");
  loop->opt<std::uint64_t>("--buffer-capacity", "buffer_capacity", "replay buffer capacity");
  loop->opt<double>("--learning-rate", "learning_rate", "estimator learning rate");
  loop->opt<int>("--passes", "n_passes", "planning passes per action");
  loop->opt<int>("--depth", "depth_limit", "search depth cap");
  loop->opt<double>("--gamma", "gamma", "discount factor");
  loop->opt<std::uint64_t>("--seed", "seed", "RNG seed");
  loop->common_io();

  Command* bandit = add("bandit", "Run softmax-bandit trials over seeds", ants_run_bandit);
  bandit->opt<std::vector<double>>("--means", "means", "true arm means");
  bandit->opt<double>("--sigma", "sigma", "reward noise standard deviation");
  bandit->opt<double>("--tau", "tau", "softmax temperature");
  bandit->opt<std::string>("--schedule", "schedule", "constant | log_decay");
  bandit->opt<double>("--decay-c", "decay_c", "log-decay coefficient");
  bandit->opt<long long>("--horizon", "horizon", "pulls per trial");
  bandit->opt<int>("--seeds", "seeds", "number of trials");
  bandit->opt<std::uint64_t>("--seed", "base_seed", "base RNG seed");
  bandit->common_io();

  Command* sweep = add("sweep", "Run a hyperparameter-robustness sweep", ants_run_sweep);
  sweep->opt<std::string>("--algo", "algo", "ants_s | ants_t | ments | tents");
  sweep->opt<std::string>("--param", "param", "entropy_target | temperature");
  sweep->opt<std::vector<std::string>>("--fixtures", "fixtures", "environment fixtures");
  sweep->opt<std::vector<double>>("--grid", "grid", "explicit grid values");
  sweep->opt<std::string>("--grid-kind", "grid_kind", "linear | log");
  sweep->opt<double>("--grid-lo", "grid_lo", "grid lower endpoint");
  sweep->opt<double>("--grid-hi", "grid_hi", "grid upper endpoint");
  sweep->opt<int>("--grid-points", "grid_points", "grid size");
  sweep->opt<int>("--seeds", "seeds", "seeds per cell");
  sweep->opt<int>("--episodes", "episodes", "episodes per seed");
  sweep->opt<int>("--max-steps", "max_steps", "episode step cap");
  sweep->opt<int>("--passes", "n_passes", "planning passes per action");
  sweep->opt<int>("--depth", "depth_limit", "search depth cap");
  sweep->opt<double>("--gamma", "gamma", "discount factor");
  sweep->opt<std::uint64_t>("--seed", "base_seed", "base RNG seed");
  sweep->opt<int>("--threads", "threads", "worker threads");
  sweep->common_io();

  Command* report = add("report", "Aggregate episode CSVs into summary rows", ants_run_report);
  report->opt<std::vector<std::string>>("files", "files", "episode CSV files to aggregate");
  report->common_io();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ANTS_ERR_CONFIG;
  }

  for (auto& command : commands)
    if (command->cmd->parsed()) return command->run();
  return ANTS_ERR_CONFIG;
}
