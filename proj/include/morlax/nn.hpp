#pragma once

#include <functional>
#include <span>
#include <vector>

#include "morlax/rng.hpp"

namespace morlax {

enum class Activation { kIdentity, kTanh };

// Fully connected stack: layer_sizes = [in, h1, ..., out], tanh between
// hidden layers, `output_activation` on the last layer.
struct MlpSpec {
    std::vector<int> layer_sizes;
    Activation output_activation = Activation::kIdentity;

    int input_dim() const { return layer_sizes.front(); }
    int output_dim() const { return layer_sizes.back(); }
    int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
    void validate() const;
};

// Flat parameter vector. Per layer: weights row-major (out x in), then
// biases (out). A policy network appends one log-std entry per action
// dimension after the last layer's parameters.
std::size_t mlp_param_count(const MlpSpec& spec);
std::size_t policy_param_count(const MlpSpec& spec);  // + act_dim log-stds

// Offset of layer `l`'s weights/biases inside the flat vector.
std::size_t layer_weight_offset(const MlpSpec& spec, int layer);
std::size_t layer_bias_offset(const MlpSpec& spec, int layer);

// Scratch space for a cached forward pass: activations[l] holds the
// post-activation output of layer l (activations[0] is the input copy).
// preact holds the last layer's pre-activation output.
struct MlpWork {
    std::vector<std::vector<double>> activations;
    std::vector<double> preact;
};

// Plain forward pass (validates shapes and parameter finiteness).
std::vector<double> mlp_forward(const MlpSpec& spec,
                                std::span<const double> params,
                                std::span<const double> input);

// Forward pass that records activations for a later backward pass. No
// validation beyond debug asserts; intended for inner loops.
void mlp_forward_cached(const MlpSpec& spec, std::span<const double> params,
                        std::span<const double> input, MlpWork& work);

// Reverse pass for the cached forward. `grad_out` is dL/d(output) when
// `grad_at_preactivation` is false, dL/d(pre-activation of the last layer)
// when true (used by the policy loss, which consumes the pre-squash mean).
// Parameter gradients are accumulated into `grad_params` (same layout as
// params); if `grad_input` is non-null the input gradient is written there.
void mlp_backward(const MlpSpec& spec, std::span<const double> params,
                  const MlpWork& work, std::span<const double> grad_out,
                  bool grad_at_preactivation, std::span<double> grad_params,
                  std::vector<double>* grad_input = nullptr);

// Diagonal Gaussian in pre-squash space, reported action = tanh(z).
// log_std entries are clamped copies of the trailing policy parameters.
struct GaussianAction {
    std::vector<double> mean;          // tanh(pre_tanh_mean), inside (-1, 1)
    std::vector<double> pre_tanh_mean; // Gaussian mean
    std::vector<double> log_std;       // clamped to [kLogStdMin, kLogStdMax]
};

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 1.0;
inline constexpr double kTanhEps = 1e-6;  // guard inside log(1 - a^2 + eps)

// Policy head: MLP with tanh output over obs, plus trailing log-stds.
GaussianAction policy_forward(const MlpSpec& spec,
                              std::span<const double> params,
                              std::span<const double> obs);

struct ActionSample {
    std::vector<double> action;    // tanh(z), sent to the environment
    std::vector<double> pre_tanh;  // z, kept for exact density queries
    double logprob = 0.0;
};

// Draw z ~ N(pre_tanh_mean, std), squash, and return the sample's density
// under the squashed distribution. The returned logprob equals
// action_logprob(dist, sample.pre_tanh) exactly.
ActionSample sample_and_logprob(Rng& rng, const GaussianAction& dist);

// Log-density of action = tanh(z) under the squashed Gaussian:
// sum_d [ log N(z_d; mu_d, sigma_d) - log(1 - tanh(z_d)^2 + kTanhEps) ].
double action_logprob(const GaussianAction& dist,
                      std::span<const double> pre_tanh);

// Entropy of the underlying (pre-squash) Gaussian; used as the exploration
// bonus surrogate since the squashed density has no closed form.
double gaussian_entropy(const GaussianAction& dist);

// Value head: plain MLP with identity output, one value per objective.
std::vector<double> critic_forward(const MlpSpec& spec,
                                   std::span<const double> params,
                                   std::span<const double> obs);

// Batch loss hook for grad_wrt_params: given the network outputs for every
// input, return the scalar loss and dL/d(output) per input.
struct BatchLoss {
    double value = 0.0;
    std::vector<std::vector<double>> grad_outputs;
};
using BatchLossFn =
    std::function<BatchLoss(const std::vector<std::vector<double>>&)>;

// Exact reverse-mode gradient of loss_fn(outputs(params)) with respect to
// the flat parameters. Inputs are processed left to right with a fixed
// reduction order so results are bit-reproducible.
std::vector<double> grad_wrt_params(const MlpSpec& spec,
                                    std::span<const double> params,
                                    const BatchLossFn& loss_fn,
                                    const std::vector<std::vector<double>>& inputs);

// Fan-in scaled uniform init, U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for both
// weights and biases; the conventional default for tanh stacks.
std::vector<double> init_mlp_params(const MlpSpec& spec, Rng& rng);

}  // namespace morlax
