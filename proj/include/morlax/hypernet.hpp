#pragma once

#include <span>
#include <vector>

#include "morlax/nn.hpp"
#include "morlax/rng.hpp"
#include "morlax/simplex.hpp"

namespace morlax {

// Conditioning network that maps a trade-off vector w to the full flat
// parameter vector of a target network:
//
//   theta(w) = M * f(w) + b
//
// where f is a small tanh MLP (the feature map), M is |theta| x F, and b is
// a bias the size of the target's parameter vector. The affine form keeps
// the generated family low-rank: rank(span{theta(w) - b}) <= F.
struct HypernetSpec {
    int m = 2;                          // trade-off dimension (objectives)
    int F = 64;                         // feature dimension
    std::vector<int> feature_hidden{};  // hidden widths of the feature map
    MlpSpec target_spec;                // network whose params are generated
    bool target_has_log_std = false;    // policy targets append log-stds

    MlpSpec feature_spec() const;       // [m, hidden..., F], tanh output
    std::size_t target_param_count() const;
    void validate() const;
};

struct HypernetParams {
    std::vector<double> feature_params;  // flat params of the feature map
    std::vector<double> M;               // row-major, |theta| x F
    std::vector<double> b;               // |theta|
};

// Gradient accumulator with the same shape as HypernetParams.
struct HypernetGrad {
    std::vector<double> feature_params;
    std::vector<double> M;
    std::vector<double> b;

    void resize_like(const HypernetSpec& spec);
    void clear();
    double* data_feature() { return feature_params.data(); }
};

std::size_t hypernet_param_count(const HypernetSpec& spec);

// theta(w) = M f(w) + b. Validates w is on the simplex and output is finite.
std::vector<double> hypernet_forward(const HypernetSpec& spec,
                                     const HypernetParams& hp,
                                     const TradeoffVector& w);

// Accumulates d(loss)/d(hypernet params) into `grad` given grad_theta =
// d(loss)/d(theta):  dM = grad_theta f(w)^T, db = grad_theta,
// dfeature = backprop of M^T grad_theta through f.
void hypernet_backward(const HypernetSpec& spec, const HypernetParams& hp,
                       const TradeoffVector& w,
                       std::span<const double> grad_theta, HypernetGrad& grad);

// Near-identity start: b is a standard fan-in init of the flattened target
// (policy log-std slots start at kLogStdInit), M entries are
// N(0, (kInitScale/sqrt(F))^2) so theta(w) deviates from b with
// per-component std kInitScale * |f(w)| / sqrt(F).
inline constexpr double kHypernetInitScale = 0.01;
inline constexpr double kLogStdInit = -1.0;
HypernetParams init_hypernet(const HypernetSpec& spec, Rng& rng);

// Flat serialization order: feature_params, M, b.
std::vector<double> flatten_hypernet(const HypernetParams& hp);
HypernetParams unflatten_hypernet(const HypernetSpec& spec,
                                  std::span<const double> flat);
std::vector<double> flatten_hypernet_grad(const HypernetGrad& g);

}  // namespace morlax
