#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "morlax/csv.hpp"
#include "morlax/envs.hpp"
#include "morlax/oracles.hpp"

namespace morlax::cli {

namespace {

TradeoffVector parse_weights(const std::string& text) {
    std::vector<double> w;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string cell =
            text.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || *end != '\0')
            throw ConfigError("bad --w component '" + cell + "'");
        w.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return TradeoffVector::checked(std::move(w));
}

void print_front(const ParetoFront& front, const std::string& out_csv) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_csv.empty()) {
        file.open(out_csv, std::ios::trunc);
        if (!file) throw ConfigError("cannot write front CSV: " + out_csv);
        out = &file;
    }
    const std::size_t m = front.points.empty() ? 2 : front.points[0].size();
    for (std::size_t k = 1; k <= m; ++k)
        *out << "J_" << k << (k == m ? "" : ",");
    *out << '\n';
    for (const ObjectiveVector& p : front.points) {
        for (std::size_t k = 0; k < p.size(); ++k)
            *out << format_g17(p[k]) << (k + 1 == p.size() ? "" : ",");
        *out << '\n';
    }
}

}  // namespace

int cmd_oracle(const OracleArgs& args) {
    return guarded([&] {
        if (!is_known_env(args.env))
            throw ConfigError("unknown environment: " + args.env);
        if (!has_oracle(args.env))
            throw ConfigError("no oracle registered for '" + args.env + "'");

        if (args.env == "mo-lqr1d") {
            if (args.w.empty())
                throw ConfigError("mo-lqr1d oracle needs --w \"w1,w2\"");
            const TradeoffVector w = parse_weights(args.w);
            const int horizon = args.horizon > 0 ? args.horizon : kLqrHorizon;
            const double value = lqr_oracle(w, horizon);
            if (w.weights.size() == 2 && w.weights[0] == 0.0)
                std::cerr << "note: w_1 = 0 puts no weight on the state; the "
                             "zero-control policy is optimal and the value "
                             "is exactly 0\n";
            std::cout << format_g17(value) << '\n';
            return 0;
        }

        // mo-pointmass: brute-force constant-action front.
        if (args.grid < 2 )
            throw ConfigError("--grid must be >= 2");
        print_front(pointmass_front_oracle(args.grid), args.out_csv);
        return 0;
    });
}

}  // namespace morlax::cli
