#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "morlax/csv.hpp"
#include "morlax/pareto.hpp"

namespace morlax::cli {

namespace {

std::vector<double> parse_reference(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string cell =
            text.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || *end != '\0')
            throw ConfigError("bad --ref component '" + cell + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError("--ref must list reference components");
    return out;
}

}  // namespace

int cmd_metrics(const MetricsArgs& args) {
    return guarded([&] {
        const FrontCsv front = read_front_csv(args.front_csv);
        const std::vector<double> ref = parse_reference(args.ref);
        if (static_cast<int>(ref.size()) != front.m)
            throw ConfigError("--ref has " + std::to_string(ref.size()) +
                              " components but the front has " +
                              std::to_string(front.m) + " objectives");

        std::cout << "points: " << front.points.size() << '\n';
        if (front.points.empty()) {
            std::cout << "nondominated: 0\nconvex_front: 0\n"
                      << "hypervolume: 0\n";
            std::cerr << "warning: empty front\n";
            return 0;
        }

        const std::vector<ObjectiveVector> nd =
            nondominated_filter(front.points);
        const std::vector<ObjectiveVector> convex =
            linear_dominance_filter(front.points);
        std::cout << "nondominated: " << nd.size() << '\n';
        std::cout << "convex_front: " << convex.size() << '\n';

        const HypervolumeResult hv =
            hypervolume_detailed(ParetoFront{nd, ref});
        std::cout << "hypervolume: " << format_g17(hv.value);
        if (hv.exact)
            std::cout << " (exact)\n";
        else
            std::cout << " +- " << format_g17(hv.stderr_est) << " (mc)\n";
        if (hv.clipped > 0)
            std::cerr << "warning: " << hv.clipped
                      << " points below the reference were clipped\n";

        if (nd.size() >= 2)
            std::cout << "sparsity: "
                      << format_g17(sparsity(ParetoFront{nd, ref})) << '\n';
        else
            std::cout << "sparsity: n/a (fewer than 2 points)\n";
        return 0;
    });
}

}  // namespace morlax::cli
