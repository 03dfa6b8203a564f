// Exercises the shared-library C interface end to end: the scalar surface,
// the planner handle, and every experiment driver, including the exit-code
// contract and file outputs.  Deliberately includes only the public header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ants/ants.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& leaf) {
  fs::path dir = fs::temp_directory_path() / ("ants_capi_" + leaf);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("scalar surface") {
  SUBCASE("soft value and policy, shannon closed forms") {
    const double q[2] = {1.0, 0.0};
    double v = 0.0;
    REQUIRE(ants_soft_value(q, 2, 1.0, "shannon", &v) == ANTS_OK);
    CHECK(std::abs(v - std::log(std::exp(1.0) + 1.0)) < 1e-12);
    CHECK(std::string(ants_last_error()).empty());

    double p[2] = {0.0, 0.0};
    REQUIRE(ants_soft_policy(q, 2, 1.0, "shannon", p) == ANTS_OK);
    double z = std::exp(1.0) + 1.0;
    CHECK(std::abs(p[0] - std::exp(1.0) / z) < 1e-15);
    CHECK(std::abs(p[1] - 1.0 / z) < 1e-15);
    CHECK(std::abs(p[0] + p[1] - 1.0) < 1e-15);
  }

  SUBCASE("tsallis surface") {
    const double q[3] = {0.4, 0.1, -2.0};
    double v = 0.0;
    REQUIRE(ants_soft_value(q, 3, 0.5, "tsallis2", &v) == ANTS_OK);
    CHECK(std::isfinite(v));
    double p[3];
    REQUIRE(ants_soft_policy(q, 3, 0.5, "tsallis2", p) == ANTS_OK);
    double sum = p[0] + p[1] + p[2];
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }

  SUBCASE("entropy and its maximum") {
    const double uniform[2] = {0.5, 0.5};
    double h = 0.0;
    REQUIRE(ants_entropy(uniform, 2, "shannon", &h) == ANTS_OK);
    CHECK(std::abs(h - std::log(2.0)) < 1e-15);
    double hmax = 0.0;
    REQUIRE(ants_max_entropy(4, "shannon", &hmax) == ANTS_OK);
    CHECK(std::abs(hmax - std::log(4.0)) < 1e-15);
    REQUIRE(ants_max_entropy(4, "tsallis2", &hmax) == ANTS_OK);
    CHECK(std::abs(hmax - (1.0 - 0.25) / 2.0) < 1e-15);
  }

  SUBCASE("error paths set the config code and a message") {
    const double q[2] = {1.0, 0.0};
    double v = 0.0;
    CHECK(ants_soft_value(nullptr, 2, 1.0, "shannon", &v) == ANTS_ERR_CONFIG);
    CHECK(!std::string(ants_last_error()).empty());
    CHECK(ants_soft_value(q, 0, 1.0, "shannon", &v) == ANTS_ERR_CONFIG);
    CHECK(ants_soft_value(q, 2, 1.0, "renyi", &v) == ANTS_ERR_CONFIG);
    CHECK(ants_soft_value(q, 2, 0.0, "shannon", &v) == ANTS_ERR_CONFIG);
    CHECK(ants_soft_value(q, 2, 1.0, nullptr, &v) == ANTS_ERR_CONFIG);
    CHECK(ants_max_entropy(0, "shannon", &v) == ANTS_ERR_CONFIG);
    // A success clears the message again.
    REQUIRE(ants_soft_value(q, 2, 1.0, "shannon", &v) == ANTS_OK);
    CHECK(std::string(ants_last_error()).empty());
  }
}

TEST_CASE("planner handle") {
  const char* cfg = R"({"algo":"ants_s","env":"chain8","n_passes":30,"depth_limit":6,"seed":3})";

  SUBCASE("plan, tau, reset round-trip") {
    ants_planner* p = ants_planner_create(cfg);
    REQUIRE(p != nullptr);
    int action = -1;
    REQUIRE(ants_planner_plan(p, 0, &action) == ANTS_OK);
    CHECK(action >= 0);
    CHECK(action <= 1);
    double tau = 0.0;
    REQUIRE(ants_planner_tau(p, &tau) == ANTS_OK);
    CHECK(tau > 0.0);
    REQUIRE(ants_planner_reset(p) == ANTS_OK);
    REQUIRE(ants_planner_plan(p, 1, &action) == ANTS_OK);
    ants_planner_destroy(p);
  }

  SUBCASE("identical configs plan identically") {
    ants_planner* a = ants_planner_create(cfg);
    ants_planner* b = ants_planner_create(cfg);
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    for (int state = 0; state < 4; ++state) {
      int action_a = -1, action_b = -2;
      REQUIRE(ants_planner_plan(a, state, &action_a) == ANTS_OK);
      REQUIRE(ants_planner_plan(b, state, &action_b) == ANTS_OK);
      CHECK(action_a == action_b);
    }
    ants_planner_destroy(a);
    ants_planner_destroy(b);
  }

  SUBCASE("construction failures return null with a message") {
    CHECK(ants_planner_create("{") == nullptr);
    CHECK(!std::string(ants_last_error()).empty());
    CHECK(ants_planner_create(R"({"algo":"alphazero"})") == nullptr);
    CHECK(ants_planner_create(R"({"bogus":1})") == nullptr);
    CHECK(ants_planner_create(R"({"env":"atari"})") == nullptr);
    CHECK(ants_planner_create(nullptr) == nullptr);
  }

  SUBCASE("null-handle calls are config errors; null destroy is safe") {
    int action = 0;
    double tau = 0.0;
    CHECK(ants_planner_plan(nullptr, 0, &action) == ANTS_ERR_CONFIG);
    CHECK(ants_planner_tau(nullptr, &tau) == ANTS_ERR_CONFIG);
    CHECK(ants_planner_reset(nullptr) == ANTS_ERR_CONFIG);
    ants_planner_destroy(nullptr);
  }
}

TEST_CASE("plan driver") {
  const char* cfg =
      R"({"algo":"ants_s","env":"chain4","seeds":2,"episodes":3,"max_steps":8,)"
      R"("n_passes":20,"depth_limit":6})";

  SUBCASE("writes the episode CSV with the documented header") {
    fs::path dir = fresh_dir("plan");
    REQUIRE(ants_run_plan(cfg, dir.string().c_str()) == ANTS_OK);
    std::string csv = slurp(dir / "episodes.csv");
    CHECK(csv.rfind("seed,episode,return,steps,mean_tau\n", 0) == 0);
    CHECK(count_lines(csv) == 7);  // header + 2 seeds x 3 episodes
    CHECK(!fs::exists(dir / "temperature_trace.csv"));
  }

  SUBCASE("reruns are byte-identical") {
    fs::path a = fresh_dir("plan_a");
    fs::path b = fresh_dir("plan_b");
    REQUIRE(ants_run_plan(cfg, a.string().c_str()) == ANTS_OK);
    REQUIRE(ants_run_plan(cfg, b.string().c_str()) == ANTS_OK);
    CHECK(slurp(a / "episodes.csv") == slurp(b / "episodes.csv"));
  }

  SUBCASE("temperature trace file on request") {
    fs::path dir = fresh_dir("plan_trace");
    std::string traced(cfg);
    traced.insert(traced.size() - 1, R"(,"trace_temperature":true)");
    REQUIRE(ants_run_plan(traced.c_str(), dir.string().c_str()) == ANTS_OK);
    std::string csv = slurp(dir / "temperature_trace.csv");
    CHECK(csv.rfind("seed,episode,step,tau\n", 0) == 0);
    CHECK(count_lines(csv) >= 7);  // one row per executed step
  }

  SUBCASE("config defects exit with code 2") {
    fs::path dir = fresh_dir("plan_bad");
    CHECK(ants_run_plan(R"({"algo":"nope"})", dir.string().c_str()) == ANTS_ERR_CONFIG);
    CHECK(ants_run_plan(R"({"bogus_key":1})", dir.string().c_str()) == ANTS_ERR_CONFIG);
    CHECK(ants_run_plan("not json", dir.string().c_str()) == ANTS_ERR_CONFIG);
    CHECK(ants_run_plan(nullptr, dir.string().c_str()) == ANTS_ERR_CONFIG);
    CHECK(ants_run_plan(R"({"seeds":0})", dir.string().c_str()) == ANTS_ERR_CONFIG);
    CHECK(ants_run_plan(cfg, nullptr) == ANTS_ERR_CONFIG);
  }

  SUBCASE("unwritable output directory exits with code 1") {
    fs::path dir = fresh_dir("plan_clash");
    fs::create_directories(dir);
    std::ofstream(dir / "blocker") << "x";
    fs::path bad = dir / "blocker" / "sub";
    CHECK(ants_run_plan(cfg, bad.string().c_str()) == ANTS_ERR_RUNTIME);
    CHECK(!std::string(ants_last_error()).empty());
  }
}

TEST_CASE("loop driver") {
  fs::path dir = fresh_dir("loop");
  const char* cfg =
      R"({"algo":"ants_s","env":"chain4","epochs":2,"episodes_per_epoch":2,)"
      R"("updates_per_epoch":5,"batch_size":2,"eval_episodes":1,"max_steps":6,)"
      R"("buffer_capacity":64,"learning_rate":0.05,"n_passes":15,"depth_limit":5})";
  REQUIRE(ants_run_loop(cfg, dir.string().c_str()) == ANTS_OK);
  std::string csv = slurp(dir / "learning_curve.csv");
  CHECK(csv.rfind("epoch,episodes_collected,mean_return,mean_loss,mean_tau\n", 0) == 0);
  CHECK(count_lines(csv) == 4);  // header + prefill epoch 0 + 2 training epochs
  CHECK(ants_run_loop(R"({"epochs":-1})", dir.string().c_str()) == ANTS_ERR_CONFIG);
}

TEST_CASE("bandit driver") {
  fs::path dir = fresh_dir("bandit");
  const char* cfg = R"({"means":[0.0,1.0],"sigma":0.1,"tau":0.2,"horizon":1000,"seeds":3})";
  REQUIRE(ants_run_bandit(cfg, dir.string().c_str()) == ANTS_OK);
  std::string csv = slurp(dir / "bandit.csv");
  CHECK(csv.rfind("seed,t,gap,greedy_correct,tau_t\n", 0) == 0);
  CHECK(count_lines(csv) == 7);  // header + 3 seeds x checkpoints {100, 1000}
  CHECK(ants_run_bandit(R"({"means":[]})", dir.string().c_str()) == ANTS_ERR_CONFIG);
  CHECK(ants_run_bandit(R"({"schedule":"warp"})", dir.string().c_str()) == ANTS_ERR_CONFIG);
}

TEST_CASE("sweep driver") {
  SUBCASE("explicit grid") {
    fs::path dir = fresh_dir("sweep");
    const char* cfg =
        R"({"algo":"ants_s","param":"entropy_target","fixtures":["chain4"],)"
        R"("grid":[0.1,0.3],"seeds":1,"episodes":1,"max_steps":6,"n_passes":10,)"
        R"("depth_limit":5,"threads":2})";
    REQUIRE(ants_run_sweep(cfg, dir.string().c_str()) == ANTS_OK);
    std::string csv = slurp(dir / "sweep.csv");
    CHECK(csv.rfind(
              "env,param,value,raw_return,normalized_score,reference_random,reference_oracle\n",
              0) == 0);
    CHECK(count_lines(csv) == 3);
  }

  SUBCASE("generated grid") {
    fs::path dir = fresh_dir("sweep_gen");
    const char* cfg =
        R"({"algo":"ants_s","param":"temperature","fixtures":["chain4"],)"
        R"("grid_kind":"log","grid_lo":0.001,"grid_hi":10.0,"grid_points":9,)"
        R"("seeds":1,"episodes":1,"max_steps":6,"n_passes":10,"depth_limit":5,"threads":4})";
    REQUIRE(ants_run_sweep(cfg, dir.string().c_str()) == ANTS_OK);
    CHECK(count_lines(slurp(dir / "sweep.csv")) == 10);
  }

  SUBCASE("defects") {
    fs::path dir = fresh_dir("sweep_bad");
    CHECK(ants_run_sweep(R"({"fixtures":[]})", dir.string().c_str()) == ANTS_ERR_CONFIG);
    CHECK(ants_run_sweep(R"({"grid":[0.1],"grid_kind":"log"})", dir.string().c_str()) ==
          ANTS_ERR_CONFIG);
    CHECK(ants_run_sweep(R"({"algo":"puct","fixtures":["chain4"],"grid":[0.1]})",
                         dir.string().c_str()) == ANTS_ERR_CONFIG);
  }
}

TEST_CASE("report driver") {
  fs::path dir = fresh_dir("report");
  const char* plan_cfg =
      R"({"algo":"ments","env":"chain4","seeds":1,"episodes":2,"max_steps":6,)"
      R"("n_passes":10,"depth_limit":5})";
  REQUIRE(ants_run_plan(plan_cfg, dir.string().c_str()) == ANTS_OK);
  fs::path episodes = dir / "episodes.csv";

  std::string cfg = std::string(R"({"files":[")") + episodes.string() + R"("]})";
  REQUIRE(ants_run_report(cfg.c_str(), dir.string().c_str()) == ANTS_OK);
  std::string csv = slurp(dir / "report.csv");
  CHECK(csv.rfind("file,rows,mean_return,std_return,mean_steps,mean_tau\n", 0) == 0);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.find(",2,") != std::string::npos);  // two episode rows aggregated

  CHECK(ants_run_report(R"({"files":["/nonexistent/episodes.csv"]})", dir.string().c_str()) ==
        ANTS_ERR_RUNTIME);
  CHECK(ants_run_report(R"({"files":[]})", dir.string().c_str()) == ANTS_ERR_CONFIG);
}
