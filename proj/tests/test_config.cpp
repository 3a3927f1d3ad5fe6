#include <doctest.h>

#include <string>
#include <vector>

#include "morlax/config.hpp"
#include "morlax/errors.hpp"
#include "morlax/trainer.hpp"

using morlax::ConfigError;
using morlax::RunConfig;

namespace {

bool same_config(const RunConfig& a, const RunConfig& b) {
    return a.env_name == b.env_name && a.trainer.N == b.trainer.N &&
           a.trainer.K == b.trainer.K && a.trainer.kappa == b.trainer.kappa &&
           a.trainer.T == b.trainer.T && a.trainer.gamma == b.trainer.gamma &&
           a.trainer.gae_lambda == b.trainer.gae_lambda &&
           a.trainer.clip_eps == b.trainer.clip_eps &&
           a.trainer.epochs == b.trainer.epochs &&
           a.trainer.minibatch_count == b.trainer.minibatch_count &&
           a.trainer.actor_lr == b.trainer.actor_lr &&
           a.trainer.critic_lr == b.trainer.critic_lr &&
           a.trainer.entropy_coef == b.trainer.entropy_coef &&
           a.trainer.iterations == b.trainer.iterations &&
           a.trainer.seed == b.trainer.seed &&
           a.hypernet.F == b.hypernet.F &&
           a.hypernet.feature_hidden == b.hypernet.feature_hidden &&
           a.hypernet.actor_hidden == b.hypernet.actor_hidden &&
           a.hypernet.critic_hidden == b.hypernet.critic_hidden &&
           a.eval.grid_resolution == b.eval.grid_resolution &&
           a.eval.episodes_per_point == b.eval.episodes_per_point &&
           a.eval.log_interval == b.eval.log_interval &&
           a.pareto_reference == b.pareto_reference;
}

}  // namespace

TEST_CASE("empty document yields the documented defaults") {
    const RunConfig parsed = morlax::parse_run_config("{}");
    const RunConfig defaults;
    CHECK(same_config(parsed, defaults));
    CHECK_NOTHROW(parsed.validate());
}

TEST_CASE("partial documents override only the named keys") {
    const RunConfig cfg = morlax::parse_run_config(R"({
        "env": {"name": "mo-pointmass"},
        "trainer": {"N": 32, "gamma": 0.95, "seed": 17},
        "eval": {"grid_resolution": 20}
    })");
    CHECK(cfg.env_name == "mo-pointmass");
    CHECK(cfg.trainer.N == 32);
    CHECK(cfg.trainer.gamma == 0.95);
    CHECK(cfg.trainer.seed == 17);
    CHECK(cfg.eval.grid_resolution == 20);

    const RunConfig defaults;
    CHECK(cfg.trainer.K == defaults.trainer.K);
    CHECK(cfg.trainer.T == defaults.trainer.T);
    CHECK(cfg.trainer.actor_lr == defaults.trainer.actor_lr);
    CHECK(cfg.hypernet.F == defaults.hypernet.F);
    CHECK(cfg.eval.episodes_per_point == defaults.eval.episodes_per_point);
}

TEST_CASE("every section round-trips through the resolved snapshot") {
    RunConfig cfg;
    cfg.env_name = "mo-dst-continuous";
    cfg.trainer.N = 12;
    cfg.trainer.K = 3;
    cfg.trainer.kappa = 1;
    cfg.trainer.T = 77;
    cfg.trainer.gamma = 0.925;
    cfg.trainer.gae_lambda = 0.875;
    cfg.trainer.clip_eps = 0.3;
    cfg.trainer.epochs = 6;
    cfg.trainer.minibatch_count = 3;
    cfg.trainer.actor_lr = 1.25e-4;
    cfg.trainer.critic_lr = 5e-4;
    cfg.trainer.entropy_coef = 0.0625;
    cfg.trainer.iterations = 123;
    cfg.trainer.seed = 987654321;
    cfg.hypernet.F = 9;
    cfg.hypernet.feature_hidden = {9, 9};
    cfg.hypernet.actor_hidden = {10, 5};
    cfg.hypernet.critic_hidden = {11};
    cfg.eval.grid_resolution = 6;
    cfg.eval.episodes_per_point = 3;
    cfg.eval.log_interval = 4;
    cfg.pareto_reference = {-2.0, -60.0};

    const std::string text = morlax::run_config_to_json(cfg);
    const RunConfig back = morlax::parse_run_config(text);
    CHECK(same_config(cfg, back));

    // The snapshot is stable: dumping again reproduces the same bytes.
    CHECK(morlax::run_config_to_json(back) == text);
}

TEST_CASE("defaults snapshot round-trips") {
    const RunConfig defaults;
    const RunConfig back =
        morlax::parse_run_config(morlax::run_config_to_json(defaults));
    CHECK(same_config(defaults, back));
}

TEST_CASE("unknown keys are rejected with their full path") {
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"trainer": {"foo": 1}})"),
                         "unknown key: trainer.foo", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(R"({"foo": {}})"),
                         "unknown key: foo", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"hypernet": {"depth": 3}})"),
                         "unknown key: hypernet.depth", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"eval": {"episodes": 2}})"),
                         "unknown key: eval.episodes", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"pareto": {"ref": []}})"),
                         "unknown key: pareto.ref", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"env": {"id": "mo-lqr1d"}})"),
                         "unknown key: env.id", ConfigError);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS((void)morlax::parse_run_config("not json"), ConfigError);
    CHECK_THROWS_AS((void)morlax::parse_run_config("[1,2,3]"), ConfigError);
    CHECK_THROWS_AS((void)morlax::parse_run_config(R"("mo-lqr1d")"),
                    ConfigError);
    CHECK_THROWS_AS((void)morlax::parse_run_config(R"({"trainer": 3})"),
                    ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"trainer": {"N": "many"}})"),
                         "bad value for trainer.N", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"trainer": {"gamma": [0.9]}})"),
                         "bad value for trainer.gamma", ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"hypernet": {"feature_hidden": 64}})"),
                         "bad value for hypernet.feature_hidden",
                         ConfigError);
    CHECK_THROWS_WITH_AS((void)morlax::parse_run_config(
                             R"({"pareto": {"reference": "origin"}})"),
                         "bad value for pareto.reference", ConfigError);
}

TEST_CASE("file loading reports unreadable paths") {
    CHECK_THROWS_WITH_AS((void)morlax::load_run_config("/no/such/file.json"),
                         doctest::Contains("cannot read config file"),
                         ConfigError);
}

TEST_CASE("validation messages name the offending key") {
    auto check_msg = [](const char* patch_json, const char* expected) {
        RunConfig cfg = morlax::parse_run_config(patch_json);
        CHECK_THROWS_WITH_AS(cfg.validate(), expected, ConfigError);
    };
    check_msg(R"({"trainer": {"N": 0}})", "trainer.N must be >= 1");
    check_msg(R"({"trainer": {"T": 0}})", "trainer.T must be >= 1");
    check_msg(R"({"trainer": {"gamma": 1.0}})",
              "trainer.gamma must lie in [0, 1)");
    check_msg(R"({"trainer": {"gae_lambda": 1.5}})",
              "trainer.gae_lambda must lie in [0, 1]");
    check_msg(R"({"trainer": {"clip_eps": 0.0}})",
              "trainer.clip_eps must be > 0");
    check_msg(R"({"trainer": {"epochs": 0}})", "trainer.epochs must be >= 1");
    check_msg(R"({"trainer": {"minibatch_count": 0}})",
              "trainer.minibatch_count must be >= 1");
    check_msg(R"({"trainer": {"actor_lr": 0}})",
              "trainer.actor_lr must be > 0");
    check_msg(R"({"trainer": {"critic_lr": -1}})",
              "trainer.critic_lr must be > 0");
    check_msg(R"({"trainer": {"entropy_coef": -0.5}})",
              "trainer.entropy_coef must be >= 0");
    check_msg(R"({"trainer": {"iterations": -1}})",
              "trainer.iterations must be >= 0");
    check_msg(R"({"hypernet": {"F": 0}})", "hypernet.F must be >= 1");
    check_msg(R"({"eval": {"grid_resolution": 0}})",
              "eval.grid_resolution must be >= 1");
    check_msg(R"({"eval": {"episodes_per_point": 0}})",
              "eval.episodes_per_point must be >= 1");
    check_msg(R"({"eval": {"log_interval": 0}})",
              "eval.log_interval must be >= 1");

    // Scalar environment: the trade-off axis degenerates and K must match N.
    check_msg(R"({"env": {"name": "mo-lqr1d-m1"}})",
              "trainer.K must equal trainer.N when the environment has one "
              "objective");
    RunConfig ok = morlax::parse_run_config(
        R"({"env": {"name": "mo-lqr1d-m1"},
            "trainer": {"K": 64},
            "pareto": {"reference": [-50.0]}})");
    CHECK_NOTHROW(ok.validate());

    RunConfig bad_env = morlax::parse_run_config(
        R"({"env": {"name": "mo-cartpole"}})");
    CHECK_THROWS_AS(bad_env.validate(), ConfigError);

    RunConfig bad_ref = morlax::parse_run_config(
        R"({"pareto": {"reference": [-50.0, -20.0, -1.0]}})");
    CHECK_THROWS_AS(bad_ref.validate(), ConfigError);
}

TEST_CASE("the default reference point tracks the environment") {
    // An empty pareto.reference defers to the environment's own reference.
    const RunConfig cfg = morlax::parse_run_config("{}");
    CHECK(cfg.pareto_reference.empty());
    CHECK_NOTHROW(cfg.validate());
}
