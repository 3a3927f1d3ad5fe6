#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "morlax/errors.hpp"
#include "morlax/trainer.hpp"

namespace morlax {

namespace {

struct ClusterGroup {
    const TradeoffVector* w = nullptr;
    std::vector<int> rows;
};

// Groups minibatch rows by the trade-off cluster of their instance. Ordered
// by cluster id (rows keep their minibatch order inside a group) so the
// accumulation order is reproducible.
std::map<int, ClusterGroup> group_by_cluster(const Minibatch& mb) {
    const RolloutBatch& b = *mb.batch;
    std::map<int, ClusterGroup> groups;
    for (int r : mb.rows) {
        if (r < 0 || r >= b.rows())
            throw ShapeError("minibatch row index out of range");
        const int i = r / b.T;
        ClusterGroup& g = groups[b.cluster[static_cast<std::size_t>(i)]];
        if (g.w == nullptr) g.w = &b.tradeoffs[static_cast<std::size_t>(i)];
        g.rows.push_back(r);
    }
    return groups;
}

void check_minibatch(const Minibatch& mb) {
    if (mb.batch == nullptr) throw ShapeError("minibatch has no batch");
    if (mb.rows.empty()) throw ShapeError("minibatch has no rows");
    const RolloutBatch& b = *mb.batch;
    if (b.tradeoffs.size() != static_cast<std::size_t>(b.N) ||
        b.cluster.size() != static_cast<std::size_t>(b.N))
        throw ShapeError("batch is missing per-instance trade-offs");
}

}  // namespace

LossResult actor_loss(const HypernetSpec& spec, const HypernetParams& params,
                      const Minibatch& mb, double clip_eps,
                      double entropy_coef) {
    check_minibatch(mb);
    const RolloutBatch& b = *mb.batch;
    if (!spec.target_has_log_std)
        throw ShapeError("actor_loss: hypernet target must be a policy");
    const MlpSpec& net = spec.target_spec;
    if (net.input_dim() != b.obs_dim || net.output_dim() != b.act_dim ||
        spec.m != b.m)
        throw ShapeError("actor_loss: hypernet does not match batch dims");
    if (mb.scalar_advantage == nullptr ||
        mb.scalar_advantage->size() != static_cast<std::size_t>(b.rows()))
        throw ShapeError("actor_loss: scalar advantages missing or mis-sized");
    if (!(clip_eps > 0.0))
        throw DomainError("actor_loss: clip_eps must be positive");

    const std::size_t mlp_n = mlp_param_count(net);
    const std::size_t pol_n = policy_param_count(net);
    const int act_dim = b.act_dim;
    const double inv_B = 1.0 / static_cast<double>(mb.rows.size());

    LossResult out;
    out.grad.resize_like(spec);
    out.grad.clear();

    std::vector<double> grad_theta(pol_n);
    std::vector<double> g_mu(static_cast<std::size_t>(act_dim));
    GaussianAction dist;
    MlpWork work;

    for (const auto& [cid, group] : group_by_cluster(mb)) {
        const TradeoffVector& w = *group.w;
        const std::vector<double> theta = hypernet_forward(spec, params, w);
        std::fill(grad_theta.begin(), grad_theta.end(), 0.0);

        dist.log_std.resize(static_cast<std::size_t>(act_dim));
        for (int d = 0; d < act_dim; ++d)
            dist.log_std[static_cast<std::size_t>(d)] = std::clamp(
                theta[mlp_n + static_cast<std::size_t>(d)], kLogStdMin, kLogStdMax);

        for (int r : group.rows) {
            const double* obs =
                b.obs.data() + static_cast<std::size_t>(r) * b.obs_dim;
            mlp_forward_cached(net, {theta.data(), mlp_n},
                               {obs, static_cast<std::size_t>(b.obs_dim)}, work);
            // The Gaussian mean is the output layer's pre-activation; the
            // tanh head only shapes the reported deterministic action.
            dist.pre_tanh_mean = work.preact;
            dist.mean = work.activations.back();

            const double* z =
                b.action_pre.data() + static_cast<std::size_t>(r) * act_dim;
            const double lp_new =
                action_logprob(dist, {z, static_cast<std::size_t>(act_dim)});
            const double ratio =
                std::exp(lp_new - b.logprob_old[static_cast<std::size_t>(r)]);
            if (!std::isfinite(ratio))
                throw NumericError("actor_loss: non-finite ratio at row " +
                                   std::to_string(r));
            const double adv =
                (*mb.scalar_advantage)[static_cast<std::size_t>(r)];
            const double unclipped = ratio * adv;
            const double clipped =
                std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps) * adv;
            out.loss += -std::min(unclipped, clipped) * inv_B;
            out.loss -= entropy_coef * gaussian_entropy(dist) * inv_B;

            // The surrogate's gradient flows only while the unclipped branch
            // is active: d(-min)/d(logprob) = -ratio * adv there, else 0.
            const double glp = unclipped <= clipped ? -ratio * adv * inv_B : 0.0;
            for (int d = 0; d < act_dim; ++d) {
                const std::size_t sd = static_cast<std::size_t>(d);
                const double sigma = std::exp(dist.log_std[sd]);
                const double zn = (z[d] - dist.pre_tanh_mean[sd]) / sigma;
                g_mu[sd] = glp * zn / sigma;
                // log-std entries are generated params; outside the clamp
                // range the true derivative is zero.
                const double raw = theta[mlp_n + sd];
                if (raw >= kLogStdMin && raw <= kLogStdMax) {
                    grad_theta[mlp_n + sd] += glp * (zn * zn - 1.0);
                    grad_theta[mlp_n + sd] -= entropy_coef * inv_B;
                }
            }
            mlp_backward(net, {theta.data(), mlp_n}, work, g_mu,
                         /*grad_at_preactivation=*/true,
                         {grad_theta.data(), mlp_n});
        }
        hypernet_backward(spec, params, w, grad_theta, out.grad);
    }
    return out;
}

LossResult critic_loss(const HypernetSpec& spec, const HypernetParams& params,
                       const Minibatch& mb) {
    check_minibatch(mb);
    const RolloutBatch& b = *mb.batch;
    if (spec.target_has_log_std)
        throw ShapeError("critic_loss: hypernet target must be a value net");
    const MlpSpec& net = spec.target_spec;
    if (net.input_dim() != b.obs_dim || net.output_dim() != b.m ||
        spec.m != b.m)
        throw ShapeError("critic_loss: hypernet does not match batch dims");
    if (mb.value_targets == nullptr ||
        mb.value_targets->size() !=
            static_cast<std::size_t>(b.rows()) * static_cast<std::size_t>(b.m))
        throw ShapeError("critic_loss: value targets missing or mis-sized");

    const std::size_t mlp_n = mlp_param_count(net);
    const double inv_B = 1.0 / static_cast<double>(mb.rows.size());

    LossResult out;
    out.grad.resize_like(spec);
    out.grad.clear();

    std::vector<double> grad_phi(mlp_n);
    std::vector<double> g_out(static_cast<std::size_t>(b.m));
    MlpWork work;

    for (const auto& [cid, group] : group_by_cluster(mb)) {
        const TradeoffVector& w = *group.w;
        const std::vector<double> phi = hypernet_forward(spec, params, w);
        std::fill(grad_phi.begin(), grad_phi.end(), 0.0);

        for (int r : group.rows) {
            const double* obs =
                b.obs.data() + static_cast<std::size_t>(r) * b.obs_dim;
            mlp_forward_cached(net, phi,
                               {obs, static_cast<std::size_t>(b.obs_dim)}, work);
            const std::vector<double>& v = work.activations.back();
            const double* tgt = mb.value_targets->data() +
                                static_cast<std::size_t>(r) * b.m;
            for (int k = 0; k < b.m; ++k) {
                const double e = v[static_cast<std::size_t>(k)] - tgt[k];
                out.loss += e * e * inv_B;
                g_out[static_cast<std::size_t>(k)] = 2.0 * e * inv_B;
            }
            mlp_backward(net, phi, work, g_out,
                         /*grad_at_preactivation=*/false, grad_phi);
        }
        hypernet_backward(spec, params, w, grad_phi, out.grad);
    }
    return out;
}

}  // namespace morlax
