#include "core/bandit.hpp"

#include "core/entropy.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ants {

namespace {
constexpr double kScheduleFloor = 1e-3;
}

double tau_schedule(ScheduleKind kind, double tau, double decay_c, double t) {
  if (!(t >= 1.0)) throw std::invalid_argument("tau_schedule: t must be >= 1");
  if (!(tau >= kScheduleFloor))
    throw std::invalid_argument("tau_schedule: limit temperature below the 1e-3 floor");
  if (!(decay_c >= 0.0))
    throw std::invalid_argument("tau_schedule: decay constant must be >= 0");
  if (kind == ScheduleKind::constant) return tau;
  return tau + decay_c / std::log(t + 1.0);
}

double e2w_lambda(std::size_t arms, long long t) {
  if (arms == 0) throw std::invalid_argument("e2w_lambda: no arms");
  if (t < 1) throw std::invalid_argument("e2w_lambda: t must be >= 1");
  double ln = std::log(double(t) + 1.0);
  return std::min(1.0, double(arms) / ln);
}

void validate(const BanditTrial& trial) {
  if (trial.means.empty()) throw std::invalid_argument("bandit trial: no arms");
  if (!(trial.sigma >= 0.0)) throw std::invalid_argument("bandit trial: sigma must be >= 0");
  if (trial.horizon < 1) throw std::invalid_argument("bandit trial: horizon must be >= 1");
  // Also enforces the temperature floor and decay sign.
  (void)tau_schedule(trial.schedule, trial.tau, trial.decay_c, 1.0);
}

std::vector<double> e2w_probs(const BanditTrial& trial, long long t) {
  const std::size_t k = trial.means.size();
  double tau_t = tau_schedule(trial.schedule, trial.tau, trial.decay_c, double(t));
  double lam = e2w_lambda(k, t);
  std::vector<double> probs = soft_policy(trial.emp_means, EntropyKind::shannon, tau_t);
  for (double& p : probs) p = (1.0 - lam) * p + lam / double(k);
  return probs;
}

int e2w_step(BanditTrial& trial, long long t, std::mt19937_64& gen) {
  std::vector<double> probs = e2w_probs(trial, t);
  std::size_t arm = sample_categorical(probs, uniform01(gen));
  double reward = normal(gen, trial.means[arm], trial.sigma);
  trial.counts[arm] += 1;
  trial.emp_means[arm] += (reward - trial.emp_means[arm]) / double(trial.counts[arm]);
  return int(arm);
}

const std::vector<long long>& bandit_checkpoints() {
  static const std::vector<long long> kCheckpoints{100, 1000, 10000, 100000};
  return kCheckpoints;
}

TrialLog run_trial(BanditTrial trial) {
  validate(trial);
  const std::size_t k = trial.means.size();
  trial.counts.assign(k, 0);
  trial.emp_means.assign(k, 0.0);
  std::mt19937_64 gen(trial.seed);

  std::vector<double> limit = soft_policy(trial.means, EntropyKind::shannon, trial.tau);
  std::size_t best_true = std::size_t(
      std::max_element(trial.means.begin(), trial.means.end()) - trial.means.begin());

  TrialLog log;
  for (long long t = 1; t <= trial.horizon; ++t) {
    e2w_step(trial, t, gen);
    if (std::find(bandit_checkpoints().begin(), bandit_checkpoints().end(), t) ==
        bandit_checkpoints().end())
      continue;
    double gap = 0.0;
    for (std::size_t a = 0; a < k; ++a)
      gap = std::max(gap, std::abs(double(trial.counts[a]) - double(t) * limit[a]));
    std::vector<double> greedy = soft_policy(trial.emp_means, EntropyKind::shannon, trial.tau);
    std::size_t best_emp =
        std::size_t(std::max_element(greedy.begin(), greedy.end()) - greedy.begin());
    CheckpointRow row;
    row.seed = trial.seed;
    row.t = t;
    row.gap = gap;
    row.greedy_correct = best_emp == best_true;
    row.tau_t = tau_schedule(trial.schedule, trial.tau, trial.decay_c, double(t));
    log.rows.push_back(row);
  }
  return log;
}

}  // namespace ants
