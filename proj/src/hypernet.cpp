#include "morlax/hypernet.hpp"

#include <cmath>
#include <string>

#include "morlax/errors.hpp"

namespace morlax {

MlpSpec HypernetSpec::feature_spec() const {
    MlpSpec fs;
    fs.layer_sizes.push_back(m);
    for (int h : feature_hidden) fs.layer_sizes.push_back(h);
    fs.layer_sizes.push_back(F);
    fs.output_activation = Activation::kTanh;  // bounded features
    return fs;
}

std::size_t HypernetSpec::target_param_count() const {
    return target_has_log_std ? policy_param_count(target_spec)
                              : mlp_param_count(target_spec);
}

void HypernetSpec::validate() const {
    if (m < 1) throw ShapeError("HypernetSpec: m must be >= 1");
    if (F < 1) throw ShapeError("HypernetSpec: F must be >= 1");
    target_spec.validate();
    feature_spec().validate();
    if (target_has_log_std && target_spec.output_activation != Activation::kTanh)
        throw ShapeError("HypernetSpec: log-std targets must be tanh policies");
}

void HypernetGrad::resize_like(const HypernetSpec& spec) {
    feature_params.assign(mlp_param_count(spec.feature_spec()), 0.0);
    M.assign(spec.target_param_count() * static_cast<std::size_t>(spec.F), 0.0);
    b.assign(spec.target_param_count(), 0.0);
}

void HypernetGrad::clear() {
    std::fill(feature_params.begin(), feature_params.end(), 0.0);
    std::fill(M.begin(), M.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
}

std::size_t hypernet_param_count(const HypernetSpec& spec) {
    return mlp_param_count(spec.feature_spec()) +
           spec.target_param_count() * static_cast<std::size_t>(spec.F) +
           spec.target_param_count();
}

namespace {

void check_shapes(const HypernetSpec& spec, const HypernetParams& hp,
                  const TradeoffVector& w) {
    if (w.m() != spec.m)
        throw ShapeError("hypernet: trade-off length " + std::to_string(w.m()) +
                         " != m " + std::to_string(spec.m));
    TradeoffVector::checked(w.weights);  // simplex membership
    if (hp.feature_params.size() != mlp_param_count(spec.feature_spec()))
        throw ShapeError("hypernet: feature parameter count mismatch");
    const std::size_t P = spec.target_param_count();
    if (hp.M.size() != P * static_cast<std::size_t>(spec.F) ||
        hp.b.size() != P)
        throw ShapeError("hypernet: M/b shape mismatch");
}

}  // namespace

std::vector<double> hypernet_forward(const HypernetSpec& spec,
                                     const HypernetParams& hp,
                                     const TradeoffVector& w) {
    check_shapes(spec, hp, w);
    MlpWork work;
    mlp_forward_cached(spec.feature_spec(), hp.feature_params, w.weights, work);
    const std::vector<double>& f = work.activations.back();

    const std::size_t P = spec.target_param_count();
    const std::size_t F = static_cast<std::size_t>(spec.F);
    std::vector<double> theta(P);
    for (std::size_t j = 0; j < P; ++j) {
        double z = hp.b[j];
        const double* row = hp.M.data() + j * F;
        for (std::size_t k = 0; k < F; ++k) z += row[k] * f[k];
        theta[j] = z;
        if (!std::isfinite(z))
            throw NumericError("hypernet_forward produced a non-finite "
                               "parameter at index " + std::to_string(j));
    }
    return theta;
}

void hypernet_backward(const HypernetSpec& spec, const HypernetParams& hp,
                       const TradeoffVector& w,
                       std::span<const double> grad_theta,
                       HypernetGrad& grad) {
    check_shapes(spec, hp, w);
    const std::size_t P = spec.target_param_count();
    const std::size_t F = static_cast<std::size_t>(spec.F);
    if (grad_theta.size() != P)
        throw ShapeError("hypernet_backward: grad_theta length mismatch");
    if (grad.b.size() != P) grad.resize_like(spec);

    MlpWork work;
    const MlpSpec fspec = spec.feature_spec();
    mlp_forward_cached(fspec, hp.feature_params, w.weights, work);
    const std::vector<double>& f = work.activations.back();

    // dL/dM = g f^T, dL/db = g, dL/df = M^T g
    std::vector<double> gf(F, 0.0);
    for (std::size_t j = 0; j < P; ++j) {
        const double gj = grad_theta[j];
        grad.b[j] += gj;
        const double* Mrow = hp.M.data() + j * F;
        double* gMrow = grad.M.data() + j * F;
        for (std::size_t k = 0; k < F; ++k) {
            gMrow[k] += gj * f[k];
            gf[k] += gj * Mrow[k];
        }
    }
    mlp_backward(fspec, hp.feature_params, work, gf,
                 /*grad_at_preactivation=*/false, grad.feature_params);
}

HypernetParams init_hypernet(const HypernetSpec& spec, Rng& rng) {
    spec.validate();
    HypernetParams hp;
    Rng feature_rng = rng.split(0);
    Rng m_rng = rng.split(1);
    Rng b_rng = rng.split(2);

    hp.feature_params = init_mlp_params(spec.feature_spec(), feature_rng);

    const std::size_t P = spec.target_param_count();
    const std::size_t F = static_cast<std::size_t>(spec.F);
    const double m_std = kHypernetInitScale / std::sqrt(static_cast<double>(F));
    hp.M.resize(P * F);
    for (double& x : hp.M) x = m_std * m_rng.next_gaussian();

    hp.b = init_mlp_params(spec.target_spec, b_rng);
    if (spec.target_has_log_std) {
        hp.b.resize(P, kLogStdInit);  // trailing log-std slots
    }
    if (hp.b.size() != P) throw ShapeError("init_hypernet: bias size bug");
    return hp;
}

std::vector<double> flatten_hypernet(const HypernetParams& hp) {
    std::vector<double> flat;
    flat.reserve(hp.feature_params.size() + hp.M.size() + hp.b.size());
    flat.insert(flat.end(), hp.feature_params.begin(), hp.feature_params.end());
    flat.insert(flat.end(), hp.M.begin(), hp.M.end());
    flat.insert(flat.end(), hp.b.begin(), hp.b.end());
    return flat;
}

HypernetParams unflatten_hypernet(const HypernetSpec& spec,
                                  std::span<const double> flat) {
    if (flat.size() != hypernet_param_count(spec))
        throw ShapeError("unflatten_hypernet: length mismatch");
    HypernetParams hp;
    const std::size_t nf = mlp_param_count(spec.feature_spec());
    const std::size_t nM = spec.target_param_count() * static_cast<std::size_t>(spec.F);
    hp.feature_params.assign(flat.begin(), flat.begin() + static_cast<long>(nf));
    hp.M.assign(flat.begin() + static_cast<long>(nf),
                flat.begin() + static_cast<long>(nf + nM));
    hp.b.assign(flat.begin() + static_cast<long>(nf + nM), flat.end());
    return hp;
}

std::vector<double> flatten_hypernet_grad(const HypernetGrad& g) {
    std::vector<double> flat;
    flat.reserve(g.feature_params.size() + g.M.size() + g.b.size());
    flat.insert(flat.end(), g.feature_params.begin(), g.feature_params.end());
    flat.insert(flat.end(), g.M.begin(), g.M.end());
    flat.insert(flat.end(), g.b.begin(), g.b.end());
    return flat;
}

}  // namespace morlax
