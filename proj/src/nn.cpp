#include "morlax/nn.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "morlax/errors.hpp"

namespace morlax {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log(sqrt(2*pi))

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NumericError(std::string("non-finite value in ") + what);
}

}  // namespace

void MlpSpec::validate() const {
    if (layer_sizes.size() < 2)
        throw ShapeError("MlpSpec needs at least input and output sizes");
    for (int s : layer_sizes)
        if (s < 1) throw ShapeError("MlpSpec layer sizes must be >= 1");
}

std::size_t mlp_param_count(const MlpSpec& spec) {
    std::size_t n = 0;
    for (int l = 0; l + 1 < static_cast<int>(spec.layer_sizes.size()); ++l) {
        n += static_cast<std::size_t>(spec.layer_sizes[l] + 1) *
             static_cast<std::size_t>(spec.layer_sizes[l + 1]);
    }
    return n;
}

std::size_t policy_param_count(const MlpSpec& spec) {
    return mlp_param_count(spec) +
           static_cast<std::size_t>(spec.output_dim());
}

std::size_t layer_weight_offset(const MlpSpec& spec, int layer) {
    std::size_t off = 0;
    for (int l = 0; l < layer; ++l) {
        off += static_cast<std::size_t>(spec.layer_sizes[l] + 1) *
               static_cast<std::size_t>(spec.layer_sizes[l + 1]);
    }
    return off;
}

std::size_t layer_bias_offset(const MlpSpec& spec, int layer) {
    return layer_weight_offset(spec, layer) +
           static_cast<std::size_t>(spec.layer_sizes[layer]) *
               static_cast<std::size_t>(spec.layer_sizes[layer + 1]);
}

void mlp_forward_cached(const MlpSpec& spec, std::span<const double> params,
                        std::span<const double> input, MlpWork& work) {
    const int L = spec.num_layers();
    work.activations.resize(static_cast<std::size_t>(L) + 1);
    work.activations[0].assign(input.begin(), input.end());

    std::size_t off = 0;
    for (int l = 0; l < L; ++l) {
        const int in = spec.layer_sizes[l];
        const int out = spec.layer_sizes[l + 1];
        const double* W = params.data() + off;
        const double* b = W + static_cast<std::size_t>(in) * out;
        const std::vector<double>& a = work.activations[static_cast<std::size_t>(l)];
        std::vector<double>& next = work.activations[static_cast<std::size_t>(l) + 1];
        next.resize(static_cast<std::size_t>(out));

        const bool last = (l == L - 1);
        if (last) work.preact.resize(static_cast<std::size_t>(out));
        for (int j = 0; j < out; ++j) {
            double z = b[j];
            const double* wrow = W + static_cast<std::size_t>(j) * in;
            for (int i = 0; i < in; ++i) z += wrow[i] * a[static_cast<std::size_t>(i)];
            if (last) {
                work.preact[static_cast<std::size_t>(j)] = z;
                next[static_cast<std::size_t>(j)] =
                    spec.output_activation == Activation::kTanh ? std::tanh(z) : z;
            } else {
                next[static_cast<std::size_t>(j)] = std::tanh(z);
            }
        }
        off += static_cast<std::size_t>(in + 1) * out;
    }
}

std::vector<double> mlp_forward(const MlpSpec& spec,
                                std::span<const double> params,
                                std::span<const double> input) {
    spec.validate();
    if (params.size() < mlp_param_count(spec))
        throw ShapeError("mlp_forward: parameter vector too short (" +
                         std::to_string(params.size()) + " < " +
                         std::to_string(mlp_param_count(spec)) + ")");
    if (static_cast<int>(input.size()) != spec.input_dim())
        throw ShapeError("mlp_forward: input length mismatch");
    check_finite(params.subspan(0, mlp_param_count(spec)), "mlp params");
    check_finite(input, "mlp input");
    MlpWork work;
    mlp_forward_cached(spec, params, input, work);
    return work.activations.back();
}

void mlp_backward(const MlpSpec& spec, std::span<const double> params,
                  const MlpWork& work, std::span<const double> grad_out,
                  bool grad_at_preactivation, std::span<double> grad_params,
                  std::vector<double>* grad_input) {
    const int L = spec.num_layers();
    assert(static_cast<int>(grad_out.size()) == spec.output_dim());
    assert(grad_params.size() >= mlp_param_count(spec));

    std::vector<double> g(grad_out.begin(), grad_out.end());
    if (!grad_at_preactivation && spec.output_activation == Activation::kTanh) {
        const std::vector<double>& aL = work.activations.back();
        for (std::size_t j = 0; j < g.size(); ++j)
            g[j] *= 1.0 - aL[j] * aL[j];
    }

    std::vector<double> g_prev;
    for (int l = L - 1; l >= 0; --l) {
        const int in = spec.layer_sizes[l];
        const int out = spec.layer_sizes[l + 1];
        const std::size_t off = layer_weight_offset(spec, l);
        const double* W = params.data() + off;
        double* gW = grad_params.data() + off;
        double* gb = gW + static_cast<std::size_t>(in) * out;
        const std::vector<double>& a = work.activations[static_cast<std::size_t>(l)];

        for (int j = 0; j < out; ++j) {
            const double gj = g[static_cast<std::size_t>(j)];
            double* gwrow = gW + static_cast<std::size_t>(j) * in;
            for (int i = 0; i < in; ++i) gwrow[i] += gj * a[static_cast<std::size_t>(i)];
            gb[j] += gj;
        }

        if (l == 0 && grad_input == nullptr) break;
        g_prev.assign(static_cast<std::size_t>(in), 0.0);
        for (int j = 0; j < out; ++j) {
            const double gj = g[static_cast<std::size_t>(j)];
            const double* wrow = W + static_cast<std::size_t>(j) * in;
            for (int i = 0; i < in; ++i) g_prev[static_cast<std::size_t>(i)] += gj * wrow[i];
        }
        if (l > 0) {
            // chain through the hidden tanh of layer l-1's output
            for (int i = 0; i < in; ++i) {
                const double ai = a[static_cast<std::size_t>(i)];
                g_prev[static_cast<std::size_t>(i)] *= 1.0 - ai * ai;
            }
        }
        g = g_prev;
    }
    if (grad_input != nullptr) *grad_input = g;
}

GaussianAction policy_forward(const MlpSpec& spec,
                              std::span<const double> params,
                              std::span<const double> obs) {
    spec.validate();
    if (spec.output_activation != Activation::kTanh)
        throw ShapeError("policy_forward requires a tanh output head");
    const std::size_t need = policy_param_count(spec);
    if (params.size() != need)
        throw ShapeError("policy_forward: expected " + std::to_string(need) +
                         " params, got " + std::to_string(params.size()));
    if (static_cast<int>(obs.size()) != spec.input_dim())
        throw ShapeError("policy_forward: obs length mismatch");
    check_finite(params, "policy params");
    check_finite(obs, "policy obs");

    MlpWork work;
    mlp_forward_cached(spec, params, obs, work);

    GaussianAction dist;
    dist.pre_tanh_mean = work.preact;
    dist.mean = work.activations.back();
    const int act_dim = spec.output_dim();
    dist.log_std.resize(static_cast<std::size_t>(act_dim));
    const double* tail = params.data() + mlp_param_count(spec);
    for (int d = 0; d < act_dim; ++d)
        dist.log_std[static_cast<std::size_t>(d)] =
            std::clamp(tail[d], kLogStdMin, kLogStdMax);
    return dist;
}

ActionSample sample_and_logprob(Rng& rng, const GaussianAction& dist) {
    const std::size_t d = dist.pre_tanh_mean.size();
    ActionSample s;
    s.pre_tanh.resize(d);
    s.action.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double sigma = std::exp(dist.log_std[i]);
        s.pre_tanh[i] = dist.pre_tanh_mean[i] + sigma * rng.next_gaussian();
        s.action[i] = std::tanh(s.pre_tanh[i]);
    }
    s.logprob = action_logprob(dist, s.pre_tanh);
    return s;
}

double action_logprob(const GaussianAction& dist,
                      std::span<const double> pre_tanh) {
    if (pre_tanh.size() != dist.pre_tanh_mean.size())
        throw ShapeError("action_logprob: dimension mismatch");
    double lp = 0.0;
    for (std::size_t i = 0; i < pre_tanh.size(); ++i) {
        const double sigma = std::exp(dist.log_std[i]);
        const double zn = (pre_tanh[i] - dist.pre_tanh_mean[i]) / sigma;
        const double a = std::tanh(pre_tanh[i]);
        lp += -0.5 * zn * zn - dist.log_std[i] - kLogSqrt2Pi;
        lp -= std::log(1.0 - a * a + kTanhEps);  // tanh change of variables
    }
    return lp;
}

double gaussian_entropy(const GaussianAction& dist) {
    double h = 0.0;
    for (double ls : dist.log_std)
        h += ls + 0.5 * (1.0 + std::log(2.0 * std::numbers::pi));
    return h;
}

std::vector<double> critic_forward(const MlpSpec& spec,
                                   std::span<const double> params,
                                   std::span<const double> obs) {
    if (spec.output_activation != Activation::kIdentity)
        throw ShapeError("critic_forward requires an identity output head");
    return mlp_forward(spec, params, obs);
}

std::vector<double> grad_wrt_params(const MlpSpec& spec,
                                    std::span<const double> params,
                                    const BatchLossFn& loss_fn,
                                    const std::vector<std::vector<double>>& inputs) {
    spec.validate();
    std::vector<std::vector<double>> outputs;
    std::vector<MlpWork> works(inputs.size());
    outputs.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        mlp_forward_cached(spec, params, inputs[i], works[i]);
        outputs.push_back(works[i].activations.back());
    }
    BatchLoss loss = loss_fn(outputs);
    if (loss.grad_outputs.size() != inputs.size())
        throw ShapeError("grad_wrt_params: loss_fn must return one output "
                         "gradient per input");
    std::vector<double> grad(params.size(), 0.0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        mlp_backward(spec, params, works[i], loss.grad_outputs[i],
                     /*grad_at_preactivation=*/false, grad);
    }
    return grad;
}

std::vector<double> init_mlp_params(const MlpSpec& spec, Rng& rng) {
    spec.validate();
    std::vector<double> params(mlp_param_count(spec));
    std::size_t off = 0;
    for (int l = 0; l < spec.num_layers(); ++l) {
        const int in = spec.layer_sizes[l];
        const int out = spec.layer_sizes[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(in));
        const std::size_t n = static_cast<std::size_t>(in + 1) * out;
        for (std::size_t k = 0; k < n; ++k)
            params[off + k] = rng.uniform(-bound, bound);
        off += n;
    }
    return params;
}

}  // namespace morlax
