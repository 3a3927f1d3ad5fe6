#include <cmath>

#include "morlax/errors.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

void adam_apply(AdamState& state, std::span<double> params,
                std::span<const double> grad, double lr) {
    if (state.m1.size() != params.size() || state.m2.size() != params.size())
        throw ShapeError("adam_apply: state size does not match parameters");
    if (grad.size() != params.size())
        throw ShapeError("adam_apply: gradient size does not match parameters");

    state.step += 1;
    const double bc1 = 1.0 - std::pow(kAdamBeta1, double(state.step));
    const double bc2 = 1.0 - std::pow(kAdamBeta2, double(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grad[i];
        state.m1[i] = kAdamBeta1 * state.m1[i] + (1.0 - kAdamBeta1) * g;
        state.m2[i] = kAdamBeta2 * state.m2[i] + (1.0 - kAdamBeta2) * g * g;
        const double mhat = state.m1[i] / bc1;
        const double vhat = state.m2[i] / bc2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + kAdamEps);
    }
}

}  // namespace morlax
