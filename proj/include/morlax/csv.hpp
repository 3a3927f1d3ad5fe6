#pragma once

#include <string>
#include <vector>

#include "morlax/pareto.hpp"
#include "morlax/simplex.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

// Shortest decimal text that round-trips the double (%.17g).
std::string format_g17(double x);

// Front CSV: header `w_1,..,w_m,J_1,..,J_m`, one row per trade-off, every
// number at 17 significant digits.
void write_front_csv(const std::string& path, const EvalTable& table);

struct FrontCsv {
    int m = 0;
    std::vector<TradeoffVector> weights;       // empty if the file has no w_*
    std::vector<ObjectiveVector> points;
};

// Parses a front CSV. The w_1..w_k prefix columns are optional (oracle
// fronts carry only J columns). Malformed headers or rows raise ConfigError
// naming the 1-based line number.
FrontCsv read_front_csv(const std::string& path);

}  // namespace morlax
