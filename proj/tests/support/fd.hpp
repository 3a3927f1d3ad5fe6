#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace morlax::testing {

// Central-difference gradient of f at x.
inline std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-5) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + h;
        const double fp = f(x);
        x[i] = orig - h;
        const double fm = f(x);
        x[i] = orig;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// Worst relative disagreement, with an absolute floor so that components
// whose true value is ~0 compare absolutely.
inline double max_rel_error(const std::vector<double>& a,
                            const std::vector<double>& b,
                            double floor_scale = 1e-6) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale =
            std::max({std::abs(a[i]), std::abs(b[i]), floor_scale});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

}  // namespace morlax::testing
