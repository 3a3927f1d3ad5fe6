#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "morlax/config.hpp"
#include "morlax/trainer.hpp"

namespace morlax::cli {

int cmd_train(const TrainArgs& args) {
    return guarded([&] {
        RunConfig cfg = load_run_config(args.config_path);
        if (args.seed_set) cfg.trainer.seed = args.seed;
        cfg.validate();

        const std::filesystem::path out_dir(args.out_dir);
        std::filesystem::create_directories(out_dir);

        // Resolved snapshot first, so an aborted run is still reproducible.
        const std::string resolved = run_config_to_json(cfg);
        {
            const auto path = out_dir / "config_resolved.json";
            std::ofstream out(path, std::ios::trunc);
            if (!out)
                throw ConfigError("cannot write " + path.string());
            out << resolved;
        }
        std::cout << "resolved config:\n" << resolved;

        TrainOptions opts;
        opts.out_dir = args.out_dir;
        opts.threads = args.threads;
        opts.deterministic = args.deterministic;

        const Checkpoint final = train(cfg, opts);
        std::cout << "trained " << final.iteration << " iterations on "
                  << cfg.env_name << "; checkpoint and metrics written to "
                  << out_dir.string() << '\n';
        return 0;
    });
}

}  // namespace morlax::cli
