#include "morlax/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "morlax/envs.hpp"
#include "morlax/errors.hpp"

namespace morlax {

// --- validation --------------------------------------------------------

void TrainerConfig::validate(int m) const {
    if (N < 1) throw ConfigError("trainer.N must be >= 1");
    if (T < 1) throw ConfigError("trainer.T must be >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw ConfigError("trainer.gamma must lie in [0, 1)");
    if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0))
        throw ConfigError("trainer.gae_lambda must lie in [0, 1]");
    if (!(clip_eps > 0.0)) throw ConfigError("trainer.clip_eps must be > 0");
    if (epochs < 1) throw ConfigError("trainer.epochs must be >= 1");
    if (minibatch_count < 1)
        throw ConfigError("trainer.minibatch_count must be >= 1");
    if (!(actor_lr > 0.0)) throw ConfigError("trainer.actor_lr must be > 0");
    if (!(critic_lr > 0.0)) throw ConfigError("trainer.critic_lr must be > 0");
    if (entropy_coef < 0.0)
        throw ConfigError("trainer.entropy_coef must be >= 0");
    if (iterations < 0) throw ConfigError("trainer.iterations must be >= 0");
    if (m == 1) {
        // Single objective: sampling is bypassed, every instance trains the
        // same weight [1], so clusters must be singletons.
        if (K != N)
            throw ConfigError("trainer.K must equal trainer.N when the "
                              "environment has one objective");
        return;
    }
    SamplingConfig sc;
    sc.m = m;
    sc.K = K;
    sc.kappa = kappa;
    sc.N = N;
    sc.validate();
}

void HypernetArch::validate() const {
    if (F < 1) throw ConfigError("hypernet.F must be >= 1");
    for (int h : feature_hidden)
        if (h < 1) throw ConfigError("hypernet.feature_hidden sizes must be >= 1");
    for (int h : actor_hidden)
        if (h < 1) throw ConfigError("hypernet.actor_hidden sizes must be >= 1");
    for (int h : critic_hidden)
        if (h < 1) throw ConfigError("hypernet.critic_hidden sizes must be >= 1");
}

HypernetSpec HypernetArch::actor_spec(const EnvSpec& env) const {
    HypernetSpec s;
    s.m = env.m;
    s.F = F;
    s.feature_hidden = feature_hidden;
    s.target_spec.layer_sizes.push_back(env.obs_dim);
    for (int h : actor_hidden) s.target_spec.layer_sizes.push_back(h);
    s.target_spec.layer_sizes.push_back(env.act_dim);
    s.target_spec.output_activation = Activation::kTanh;
    s.target_has_log_std = true;
    return s;
}

HypernetSpec HypernetArch::critic_spec(const EnvSpec& env) const {
    HypernetSpec s;
    s.m = env.m;
    s.F = F;
    s.feature_hidden = feature_hidden;
    s.target_spec.layer_sizes.push_back(env.obs_dim);
    for (int h : critic_hidden) s.target_spec.layer_sizes.push_back(h);
    s.target_spec.layer_sizes.push_back(env.m);
    s.target_spec.output_activation = Activation::kIdentity;
    s.target_has_log_std = false;
    return s;
}

void EvalConfig::validate() const {
    if (grid_resolution < 1)
        throw ConfigError("eval.grid_resolution must be >= 1");
    if (episodes_per_point < 1)
        throw ConfigError("eval.episodes_per_point must be >= 1");
    if (log_interval < 1) throw ConfigError("eval.log_interval must be >= 1");
}

void RunConfig::validate() const {
    const EnvSpec es = env_spec(env_name);  // throws on unknown env
    trainer.validate(es.m);
    hypernet.validate();
    eval.validate();
    if (!pareto_reference.empty() &&
        pareto_reference.size() != static_cast<std::size_t>(es.m))
        throw ConfigError("pareto.reference needs " + std::to_string(es.m) +
                          " entries for " + env_name);
}

// --- JSON document ------------------------------------------------------

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& prefix,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("unknown key: " + prefix + it.key());
    }
}

const json* section(const json& doc, const char* name) {
    if (!doc.contains(name)) return nullptr;
    const json& s = doc.at(name);
    if (!s.is_object())
        throw ConfigError("config section '" + std::string(name) +
                          "' must be an object");
    return &s;
}

template <typename T>
void fetch(const json& obj, const std::string& prefix, const char* key,
           T& out) {
    if (!obj.contains(key)) return;
    try {
        obj.at(key).get_to(out);
    } catch (const json::exception&) {
        throw ConfigError("bad value for " + prefix + key);
    }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(doc, "", {"env", "trainer", "hypernet", "eval", "pareto"});

    RunConfig cfg;
    if (const json* env = section(doc, "env")) {
        reject_unknown(*env, "env.", {"name"});
        fetch(*env, "env.", "name", cfg.env_name);
    }
    if (const json* tr = section(doc, "trainer")) {
        reject_unknown(*tr, "trainer.",
                       {"N", "K", "kappa", "T", "gamma", "gae_lambda",
                        "clip_eps", "epochs", "minibatch_count", "actor_lr",
                        "critic_lr", "entropy_coef", "iterations", "seed"});
        TrainerConfig& t = cfg.trainer;
        fetch(*tr, "trainer.", "N", t.N);
        fetch(*tr, "trainer.", "K", t.K);
        fetch(*tr, "trainer.", "kappa", t.kappa);
        fetch(*tr, "trainer.", "T", t.T);
        fetch(*tr, "trainer.", "gamma", t.gamma);
        fetch(*tr, "trainer.", "gae_lambda", t.gae_lambda);
        fetch(*tr, "trainer.", "clip_eps", t.clip_eps);
        fetch(*tr, "trainer.", "epochs", t.epochs);
        fetch(*tr, "trainer.", "minibatch_count", t.minibatch_count);
        fetch(*tr, "trainer.", "actor_lr", t.actor_lr);
        fetch(*tr, "trainer.", "critic_lr", t.critic_lr);
        fetch(*tr, "trainer.", "entropy_coef", t.entropy_coef);
        fetch(*tr, "trainer.", "iterations", t.iterations);
        fetch(*tr, "trainer.", "seed", t.seed);
    }
    if (const json* hn = section(doc, "hypernet")) {
        reject_unknown(*hn, "hypernet.",
                       {"F", "feature_hidden", "actor_hidden", "critic_hidden"});
        HypernetArch& h = cfg.hypernet;
        fetch(*hn, "hypernet.", "F", h.F);
        fetch(*hn, "hypernet.", "feature_hidden", h.feature_hidden);
        fetch(*hn, "hypernet.", "actor_hidden", h.actor_hidden);
        fetch(*hn, "hypernet.", "critic_hidden", h.critic_hidden);
    }
    if (const json* ev = section(doc, "eval")) {
        reject_unknown(*ev, "eval.",
                       {"grid_resolution", "episodes_per_point", "log_interval"});
        EvalConfig& e = cfg.eval;
        fetch(*ev, "eval.", "grid_resolution", e.grid_resolution);
        fetch(*ev, "eval.", "episodes_per_point", e.episodes_per_point);
        fetch(*ev, "eval.", "log_interval", e.log_interval);
    }
    if (const json* pa = section(doc, "pareto")) {
        reject_unknown(*pa, "pareto.", {"reference"});
        fetch(*pa, "pareto.", "reference", cfg.pareto_reference);
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

std::string run_config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["env"]["name"] = cfg.env_name;
    const TrainerConfig& t = cfg.trainer;
    j["trainer"] = {{"N", t.N},
                    {"K", t.K},
                    {"kappa", t.kappa},
                    {"T", t.T},
                    {"gamma", t.gamma},
                    {"gae_lambda", t.gae_lambda},
                    {"clip_eps", t.clip_eps},
                    {"epochs", t.epochs},
                    {"minibatch_count", t.minibatch_count},
                    {"actor_lr", t.actor_lr},
                    {"critic_lr", t.critic_lr},
                    {"entropy_coef", t.entropy_coef},
                    {"iterations", t.iterations},
                    {"seed", t.seed}};
    const HypernetArch& h = cfg.hypernet;
    j["hypernet"] = {{"F", h.F},
                     {"feature_hidden", h.feature_hidden},
                     {"actor_hidden", h.actor_hidden},
                     {"critic_hidden", h.critic_hidden}};
    const EvalConfig& e = cfg.eval;
    j["eval"] = {{"grid_resolution", e.grid_resolution},
                 {"episodes_per_point", e.episodes_per_point},
                 {"log_interval", e.log_interval}};
    j["pareto"] = {{"reference", cfg.pareto_reference}};
    return j.dump(2) + "\n";
}

}  // namespace morlax
