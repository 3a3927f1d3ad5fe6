#include <iostream>

#include "commands.hpp"
#include "morlax/csv.hpp"
#include "morlax/trainer.hpp"

namespace morlax::cli {

int cmd_eval(const EvalArgs& args) {
    return guarded([&] {
        const Checkpoint ckpt = load_checkpoint(args.checkpoint_path);
        const int grid =
            args.grid > 0 ? args.grid : ckpt.config.eval.grid_resolution;
        const int episodes = args.episodes > 0
                                 ? args.episodes
                                 : ckpt.config.eval.episodes_per_point;
        const int threads = args.deterministic ? 1 : args.threads;

        const EvalTable table = evaluate(ckpt, args.env, grid, episodes,
                                         Rng(args.seed), threads);
        write_front_csv(args.out_csv, table);
        std::cout << table.rows.size() << " rows written to " << args.out_csv
                  << '\n';
        return 0;
    });
}

}  // namespace morlax::cli
