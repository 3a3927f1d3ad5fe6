#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "morlax/errors.hpp"
#include "morlax/nn.hpp"
#include "morlax/rng.hpp"
#include "support/fd.hpp"

using namespace morlax;

namespace {

std::vector<double> random_params(const MlpSpec& spec, Rng& rng, bool with_log_std) {
    const std::size_t n =
        with_log_std ? policy_param_count(spec) : mlp_param_count(spec);
    std::vector<double> p(n);
    for (double& x : p) x = rng.uniform(-0.8, 0.8);
    return p;
}

}  // namespace

TEST_CASE("mlp_forward: zero params give zero output") {
    MlpSpec spec{{3, 4, 2}, Activation::kIdentity};
    std::vector<double> params(mlp_param_count(spec), 0.0);
    const auto out = mlp_forward(spec, params, std::vector<double>{1.0, -2.0, 0.5});
    REQUIRE(out.size() == 2);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.0);
}

TEST_CASE("mlp_forward: single affine layer") {
    MlpSpec spec{{1, 1}, Activation::kIdentity};
    // weight=2, bias=1, input=3 -> 7
    const std::vector<double> params{2.0, 1.0};
    const auto out = mlp_forward(spec, params, std::vector<double>{3.0});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == doctest::Approx(7.0));
}

TEST_CASE("mlp_forward: tanh output at zero input") {
    MlpSpec spec{{1, 1}, Activation::kTanh};
    const std::vector<double> params{1.0, 0.0};
    const auto out = mlp_forward(spec, params, std::vector<double>{0.0});
    CHECK(out[0] == 0.0);
}

TEST_CASE("mlp_forward rejects dimension mismatch and non-finite params") {
    MlpSpec spec{{2, 2}, Activation::kIdentity};
    std::vector<double> params(mlp_param_count(spec), 0.1);
    CHECK_THROWS_AS(mlp_forward(spec, params, std::vector<double>{1.0}), ShapeError);
    std::vector<double> short_params(3, 0.1);
    CHECK_THROWS_AS(
        mlp_forward(spec, short_params, std::vector<double>{1.0, 2.0}), ShapeError);
    params[0] = std::nan("");
    CHECK_THROWS_AS(
        mlp_forward(spec, params, std::vector<double>{1.0, 2.0}), NumericError);
}

TEST_CASE("flat layout offsets are consistent with the parameter count") {
    MlpSpec spec{{3, 5, 4, 2}, Activation::kIdentity};
    // Layer l holds out x in weights then out biases, packed in order.
    std::size_t expect = 0;
    for (int l = 0; l < spec.num_layers(); ++l) {
        const auto in = static_cast<std::size_t>(spec.layer_sizes[static_cast<std::size_t>(l)]);
        const auto out = static_cast<std::size_t>(spec.layer_sizes[static_cast<std::size_t>(l) + 1]);
        CHECK(layer_weight_offset(spec, l) == expect);
        expect += in * out;
        CHECK(layer_bias_offset(spec, l) == expect);
        expect += out;
    }
    CHECK(mlp_param_count(spec) == expect);
    CHECK(policy_param_count(spec) == expect + 2);  // + act_dim log-stds
}

TEST_CASE("policy_forward: zero params give zero mean and clamped log_std") {
    MlpSpec spec{{2, 3, 2}, Activation::kTanh};
    std::vector<double> params(policy_param_count(spec), 0.0);
    const auto dist = policy_forward(spec, params, std::vector<double>{0.3, -0.7});
    REQUIRE(dist.mean.size() == 2);
    CHECK(dist.mean[0] == 0.0);
    CHECK(dist.mean[1] == 0.0);
    CHECK(dist.log_std[0] == 0.0);  // clamp(0) into [-5, 1] is 0
    CHECK(dist.log_std[1] == 0.0);
}

TEST_CASE("policy_forward: saturated pre-activation squashes to ~1") {
    MlpSpec spec{{1, 1}, Activation::kTanh};
    // weight=0, bias=+10 -> pre-activation 10 regardless of input.
    std::vector<double> params{0.0, 10.0, 0.0};  // w, b, log_std
    const auto dist = policy_forward(spec, params, std::vector<double>{0.0});
    CHECK(dist.pre_tanh_mean[0] == doctest::Approx(10.0));
    CHECK(dist.mean[0] == doctest::Approx(0.99999997).epsilon(1e-7));
    CHECK(dist.mean[0] < 1.0);  // strictly inside (-1, 1)
}

TEST_CASE("policy_forward clamps the log-std parameters") {
    MlpSpec spec{{1, 1}, Activation::kTanh};
    std::vector<double> params{0.0, 0.0, -20.0};
    const auto dist = policy_forward(spec, params, std::vector<double>{0.0});
    CHECK(dist.log_std[0] == kLogStdMin);
    params[2] = 4.5;
    const auto hi = policy_forward(spec, params, std::vector<double>{0.0});
    CHECK(hi.log_std[0] == kLogStdMax);
}

TEST_CASE("policy mean stays inside the actuator box for random finite params") {
    MlpSpec spec{{3, 8, 2}, Activation::kTanh};
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> params(policy_param_count(spec));
        // Pre-activations below tanh's double-precision saturation point
        // (|z| < 19) keep the mean strictly inside the box; beyond it the
        // squash rounds to exactly +-1, which the density guard absorbs.
        for (double& x : params) x = rng.uniform(-2.0, 2.0);
        std::vector<double> obs{rng.uniform(-1, 1), rng.uniform(-1, 1),
                                rng.uniform(-1, 1)};
        const auto dist = policy_forward(spec, params, obs);
        for (double mu : dist.mean) {
            CHECK(mu > -1.0);
            CHECK(mu < 1.0);
        }
    }
    // Saturated regime: still never outside [-1, 1].
    std::vector<double> params(policy_param_count(spec), 25.0);
    const auto sat = policy_forward(spec, params, std::vector<double>{5, 5, 5});
    for (double mu : sat.mean) {
        CHECK(mu >= -1.0);
        CHECK(mu <= 1.0);
    }
}

TEST_CASE("sample_and_logprob: returned logprob equals recomputed density") {
    MlpSpec spec{{2, 4, 2}, Activation::kTanh};
    Rng prng(3);
    auto params = random_params(spec, prng, true);
    const auto dist = policy_forward(spec, params, std::vector<double>{0.2, -0.4});
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto s = sample_and_logprob(rng, dist);
        CHECK(s.logprob == action_logprob(dist, s.pre_tanh));  // bit-exact
        for (double a : s.action) {
            CHECK(a >= -1.0);
            CHECK(a <= 1.0);
        }
        for (std::size_t d = 0; d < s.action.size(); ++d) {
            CHECK(s.action[d] == std::tanh(s.pre_tanh[d]));
        }
    }
}

TEST_CASE("sample_and_logprob: sigma at the floor is a near-deterministic draw") {
    GaussianAction dist;
    dist.pre_tanh_mean = {0.37};
    dist.mean = {std::tanh(0.37)};
    dist.log_std = {kLogStdMin};  // sigma = e^-5 ~ 0.0067
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto s = sample_and_logprob(rng, dist);
        CHECK(std::abs(s.action[0] - dist.mean[0]) < 0.05);
    }
}

TEST_CASE("sample_and_logprob: symmetric distribution has near-zero mean action") {
    GaussianAction dist;
    dist.pre_tanh_mean = {0.0};
    dist.mean = {0.0};
    dist.log_std = {0.0};  // sigma = 1
    Rng rng(21);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += sample_and_logprob(rng, dist).action[0];
    CHECK(std::abs(sum / n) < 0.01);
}

TEST_CASE("squashed density integrates to 1 over action space (1-D quadrature)") {
    GaussianAction dist;
    dist.pre_tanh_mean = {0.3};
    dist.mean = {std::tanh(0.3)};
    dist.log_std = {-0.5};
    // Integrate exp(logprob(a)) da over a in (-1,1) by substituting a=tanh(z):
    // da = (1 - tanh(z)^2) dz, z over a wide interval. Simpson's rule.
    const double z_lo = -12.0, z_hi = 12.0;
    const int steps = 20000;  // even
    const double h = (z_hi - z_lo) / steps;
    auto integrand = [&](double z) {
        const double a = std::tanh(z);
        const double lp = action_logprob(dist, std::vector<double>{z});
        return std::exp(lp) * (1.0 - a * a);
    };
    double acc = integrand(z_lo) + integrand(z_hi);
    for (int i = 1; i < steps; ++i) {
        acc += integrand(z_lo + h * i) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    const double integral = acc * h / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-4);
}

TEST_CASE("squashed logprob = Gaussian logprob minus the tanh volume term") {
    GaussianAction dist;
    dist.pre_tanh_mean = {0.1, -0.6};
    dist.mean = {std::tanh(0.1), std::tanh(-0.6)};
    dist.log_std = {-0.3, 0.2};
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double gaussian = 0.0, volume = 0.0;
        for (int d = 0; d < 2; ++d) {
            const double sigma = std::exp(dist.log_std[static_cast<std::size_t>(d)]);
            const double zn = (z[static_cast<std::size_t>(d)] -
                               dist.pre_tanh_mean[static_cast<std::size_t>(d)]) / sigma;
            gaussian += -0.5 * zn * zn - dist.log_std[static_cast<std::size_t>(d)] -
                        0.5 * std::log(2.0 * std::numbers::pi);
            const double a = std::tanh(z[static_cast<std::size_t>(d)]);
            volume += std::log(1.0 - a * a + kTanhEps);
        }
        const double lp = action_logprob(dist, z);
        CHECK(lp == doctest::Approx(gaussian - volume).epsilon(1e-12));
        CHECK(lp <= gaussian - volume + 1e-12);
    }
}

TEST_CASE("gaussian_entropy matches the closed form") {
    GaussianAction dist;
    dist.pre_tanh_mean = {0.0, 0.0};
    dist.mean = {0.0, 0.0};
    dist.log_std = {-0.5, 0.25};
    const double expect =
        2 * 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e) + (-0.5 + 0.25);
    CHECK(gaussian_entropy(dist) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("critic_forward: zero params give zero vector; outputs finite") {
    MlpSpec spec{{2, 4, 3}, Activation::kIdentity};
    std::vector<double> zero(mlp_param_count(spec), 0.0);
    const auto v = critic_forward(spec, zero, std::vector<double>{0.4, 0.6});
    REQUIRE(v.size() == 3);
    for (double x : v) CHECK(x == 0.0);

    Rng rng(8);
    auto params = random_params(spec, rng, false);
    const auto r = critic_forward(spec, params, std::vector<double>{1.5, -2.5});
    for (double x : r) CHECK(std::isfinite(x));

    // m=1 specialization: plain scalar critic.
    MlpSpec scalar{{2, 4, 1}, Activation::kIdentity};
    auto sp = random_params(scalar, rng, false);
    CHECK(critic_forward(scalar, sp, std::vector<double>{0.1, 0.2}).size() == 1);
}

TEST_CASE("grad_wrt_params: zero params, squared-norm loss has zero gradient") {
    MlpSpec spec{{2, 3, 2}, Activation::kIdentity};
    std::vector<double> params(mlp_param_count(spec), 0.0);
    BatchLossFn loss = [](const std::vector<std::vector<double>>& outs) {
        BatchLoss bl;
        bl.grad_outputs.resize(outs.size());
        for (std::size_t i = 0; i < outs.size(); ++i) {
            for (double y : outs[i]) bl.value += 0.5 * y * y;
            bl.grad_outputs[i] = outs[i];  // d(0.5 y^2)/dy = y
        }
        return bl;
    };
    const std::vector<std::vector<double>> inputs{{0.5, -1.0}, {2.0, 0.1}};
    const auto g = grad_wrt_params(spec, params, loss, inputs);
    REQUIRE(g.size() == params.size());
    for (double x : g) CHECK(x == 0.0);
}

TEST_CASE("grad_wrt_params matches central finite differences") {
    Rng rng(31);
    const MlpSpec specs[] = {
        MlpSpec{{2, 4, 3}, Activation::kIdentity},
        MlpSpec{{3, 5, 5, 2}, Activation::kTanh},
        MlpSpec{{1, 3, 1}, Activation::kTanh},
    };
    for (const auto& spec : specs) {
        auto params = random_params(spec, rng, false);
        std::vector<std::vector<double>> inputs;
        for (int i = 0; i < 4; ++i) {
            std::vector<double> in(static_cast<std::size_t>(spec.input_dim()));
            for (double& x : in) x = rng.uniform(-1.5, 1.5);
            inputs.push_back(in);
        }
        std::vector<double> targets(static_cast<std::size_t>(spec.output_dim()));
        for (double& t : targets) t = rng.uniform(-1, 1);
        BatchLossFn loss = [&](const std::vector<std::vector<double>>& outs) {
            BatchLoss bl;
            bl.grad_outputs.resize(outs.size());
            for (std::size_t i = 0; i < outs.size(); ++i) {
                bl.grad_outputs[i].resize(outs[i].size());
                for (std::size_t d = 0; d < outs[i].size(); ++d) {
                    const double e = outs[i][d] - targets[d];
                    bl.value += 0.5 * e * e;
                    bl.grad_outputs[i][d] = e;
                }
            }
            return bl;
        };
        const auto analytic = grad_wrt_params(spec, params, loss, inputs);
        auto scalar_loss = [&](std::span<const double> p) {
            double total = 0.0;
            for (const auto& in : inputs) {
                const auto out = mlp_forward(spec, p, in);
                for (std::size_t d = 0; d < out.size(); ++d) {
                    const double e = out[d] - targets[d];
                    total += 0.5 * e * e;
                }
            }
            return total;
        };
        const auto numeric = morlax::testing::fd_gradient(scalar_loss, params);
        CHECK(morlax::testing::max_rel_error(analytic, numeric) < 1e-4);
    }
}

TEST_CASE("grad_wrt_params is linear in the loss") {
    MlpSpec spec{{2, 4, 2}, Activation::kTanh};
    Rng rng(13);
    auto params = random_params(spec, rng, false);
    const std::vector<std::vector<double>> inputs{{0.3, -0.2}, {-1.0, 0.8}};

    auto make_linear_loss = [](std::vector<double> coeff) {
        return BatchLossFn([coeff](const std::vector<std::vector<double>>& outs) {
            BatchLoss bl;
            bl.grad_outputs.resize(outs.size());
            for (std::size_t i = 0; i < outs.size(); ++i) {
                bl.grad_outputs[i].resize(outs[i].size());
                for (std::size_t d = 0; d < outs[i].size(); ++d) {
                    bl.value += coeff[d] * outs[i][d];
                    bl.grad_outputs[i][d] = coeff[d];
                }
            }
            return bl;
        });
    };
    const auto g1 = grad_wrt_params(spec, params, make_linear_loss({1.0, 0.0}), inputs);
    const auto g2 = grad_wrt_params(spec, params, make_linear_loss({0.0, 1.0}), inputs);
    const auto g12 =
        grad_wrt_params(spec, params, make_linear_loss({2.0, -3.0}), inputs);
    for (std::size_t i = 0; i < g12.size(); ++i) {
        CHECK(g12[i] == doctest::Approx(2.0 * g1[i] - 3.0 * g2[i]).epsilon(1e-12));
    }
}

TEST_CASE("mlp_backward input gradient matches finite differences") {
    MlpSpec spec{{3, 4, 2}, Activation::kTanh};
    Rng rng(19);
    auto params = random_params(spec, rng, false);
    std::vector<double> input{0.4, -0.9, 0.2};
    const std::vector<double> grad_out{0.7, -1.3};

    MlpWork work;
    mlp_forward_cached(spec, params, input, work);
    std::vector<double> grad_params(params.size(), 0.0);
    std::vector<double> grad_input;
    mlp_backward(spec, params, work, grad_out, false, grad_params, &grad_input);

    auto loss_of_input = [&](std::span<const double> in) {
        const auto out = mlp_forward(spec, params, in);
        double s = 0.0;
        for (std::size_t d = 0; d < out.size(); ++d) s += grad_out[d] * out[d];
        return s;
    };
    const auto numeric = morlax::testing::fd_gradient(loss_of_input, input);
    CHECK(morlax::testing::max_rel_error(grad_input, numeric) < 1e-4);
}

TEST_CASE("unflatten-flatten round trip: forward depends only on the flat vector") {
    // The flat layout IS the representation; a copied vector must reproduce
    // outputs bit-for-bit (round-trip identity).
    MlpSpec spec{{2, 6, 3}, Activation::kTanh};
    Rng rng(23);
    auto params = random_params(spec, rng, false);
    std::vector<double> copy(params.begin(), params.end());
    const std::vector<double> obs{0.55, -0.15};
    const auto a = mlp_forward(spec, params, obs);
    const auto b = mlp_forward(spec, copy, obs);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("init_mlp_params stays within the fan-in bound and is seed-stable") {
    MlpSpec spec{{4, 8, 2}, Activation::kIdentity};
    Rng r1(9), r2(9);
    const auto p1 = init_mlp_params(spec, r1);
    const auto p2 = init_mlp_params(spec, r2);
    REQUIRE(p1.size() == mlp_param_count(spec));
    CHECK(p1 == p2);
    // Layer 0 entries bounded by 1/sqrt(4), layer 1 by 1/sqrt(8).
    const double b0 = 1.0 / std::sqrt(4.0), b1 = 1.0 / std::sqrt(8.0);
    for (std::size_t i = 0; i < layer_weight_offset(spec, 1); ++i) {
        CHECK(std::abs(p1[i]) <= b0);
    }
    for (std::size_t i = layer_weight_offset(spec, 1); i < p1.size(); ++i) {
        CHECK(std::abs(p1[i]) <= b1);
    }
}

TEST_CASE("MlpSpec validation rejects degenerate stacks") {
    MlpSpec too_short{{4}, Activation::kIdentity};
    CHECK_THROWS_AS(too_short.validate(), ShapeError);
    MlpSpec zero_width{{4, 0, 2}, Activation::kIdentity};
    CHECK_THROWS_AS(zero_width.validate(), ShapeError);
    MlpSpec ok{{4, 1, 2}, Activation::kIdentity};
    CHECK_NOTHROW(ok.validate());
}
