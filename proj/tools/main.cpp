#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace morlax::cli;

    CLI::App app{"morlax - multi-objective RL with trade-off-conditioned "
                 "hypernetworks"};
    app.require_subcommand(1);

    TrainArgs train;
    CLI::App* t = app.add_subcommand("train", "Train policy/value hypernets");
    t->add_option("--config", train.config_path, "JSON run config")
        ->required()
        ->check(CLI::ExistingFile);
    t->add_option("--out", train.out_dir, "Output directory")->required();
    CLI::Option* seed_opt =
        t->add_option("--seed", train.seed, "Override the config seed");
    t->add_flag("--deterministic", train.deterministic,
                "Single-threaded, bit-reproducible run");
    t->add_option("--threads", train.threads, "Rollout thread cap")
        ->check(CLI::PositiveNumber);

    EvalArgs eval;
    CLI::App* e = app.add_subcommand(
        "eval", "Evaluate a checkpoint over a trade-off grid");
    e->add_option("--checkpoint", eval.checkpoint_path, "Checkpoint file")
        ->required()
        ->check(CLI::ExistingFile);
    e->add_option("--out", eval.out_csv, "Front CSV to write")->required();
    e->add_option("--env", eval.env,
                  "Environment name (must match the checkpoint)");
    e->add_option("--grid", eval.grid, "Simplex grid resolution");
    e->add_option("--episodes", eval.episodes, "Episodes per grid point");
    e->add_option("--seed", eval.seed, "Evaluation seed");
    e->add_flag("--deterministic", eval.deterministic,
                "Single-threaded evaluation");
    e->add_option("--threads", eval.threads, "Evaluation thread cap")
        ->check(CLI::PositiveNumber);

    MetricsArgs metrics;
    CLI::App* m = app.add_subcommand(
        "metrics", "Pareto statistics of a front CSV");
    m->add_option("--front", metrics.front_csv, "Front CSV")
        ->required()
        ->check(CLI::ExistingFile);
    m->add_option("--ref", metrics.ref, "Reference point \"r1,r2,...\"")
        ->required();

    OracleArgs oracle;
    CLI::App* o = app.add_subcommand(
        "oracle", "Analytic/brute-force optimum for an environment");
    o->add_option("--env", oracle.env, "Environment name")->required();
    o->add_option("--w", oracle.w, "Trade-off \"w1,w2\" (value oracle)");
    o->add_option("--horizon", oracle.horizon, "Episode length override");
    o->add_option("--grid", oracle.grid, "Action lattice size (front oracle)");
    o->add_option("--out", oracle.out_csv, "Write the front CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;  // usage errors follow the exit contract
    }

    train.seed_set = seed_opt->count() > 0;
    if (t->parsed()) return cmd_train(train);
    if (e->parsed()) return cmd_eval(eval);
    if (m->parsed()) return cmd_metrics(metrics);
    if (o->parsed()) return cmd_oracle(oracle);
    return 2;
}
