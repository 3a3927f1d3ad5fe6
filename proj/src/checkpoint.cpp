#include <cstring>
#include <fstream>
#include <string>

#include "morlax/errors.hpp"
#include "morlax/trainer.hpp"

// Versioned binary container. Native little-endian layout; every field is
// written with fixed width so identical states produce identical bytes.

namespace morlax {

namespace {

constexpr char kMagic[8] = {'M', 'R', 'L', 'X', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    explicit Writer(const std::string& path)
        : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
        if (!out_)
            throw ConfigError("cannot open checkpoint for writing: " + path);
    }

    void raw(const void* p, std::size_t n) {
        out_.write(static_cast<const char*>(p),
                   static_cast<std::streamsize>(n));
    }
    void u8(std::uint8_t v) { raw(&v, 1); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void u64(std::uint64_t v) { raw(&v, 8); }
    void i32(std::int32_t v) { raw(&v, 4); }
    void i64(std::int64_t v) { raw(&v, 8); }
    void f64(double v) { raw(&v, 8); }
    void str(const std::string& s) {
        u64(s.size());
        raw(s.data(), s.size());
    }
    void vec_f64(const std::vector<double>& v) {
        u64(v.size());
        raw(v.data(), v.size() * sizeof(double));
    }
    void vec_i32(const std::vector<int>& v) {
        u64(v.size());
        for (int x : v) i32(x);
    }

    void close() {
        out_.close();
        if (!out_) throw ConfigError("failed writing checkpoint: " + path_);
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    explicit Reader(const std::string& path)
        : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw ConfigError("cannot open checkpoint: " + path);
    }

    void raw(void* p, std::size_t n) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n))
            throw ConfigError("checkpoint truncated: " + path_);
    }
    std::uint8_t u8() { std::uint8_t v; raw(&v, 1); return v; }
    std::uint32_t u32() { std::uint32_t v; raw(&v, 4); return v; }
    std::uint64_t u64() { std::uint64_t v; raw(&v, 8); return v; }
    std::int32_t i32() { std::int32_t v; raw(&v, 4); return v; }
    std::int64_t i64() { std::int64_t v; raw(&v, 8); return v; }
    double f64() { double v; raw(&v, 8); return v; }

    std::string str() {
        const std::uint64_t n = len(1u << 20);
        std::string s(n, '\0');
        raw(s.data(), n);
        return s;
    }
    std::vector<double> vec_f64() {
        const std::uint64_t n = len(1u << 28);
        std::vector<double> v(n);
        raw(v.data(), n * sizeof(double));
        return v;
    }
    std::vector<int> vec_i32() {
        const std::uint64_t n = len(1u << 20);
        std::vector<int> v(n);
        for (std::uint64_t i = 0; i < n; ++i) v[i] = i32();
        return v;
    }

private:
    std::uint64_t len(std::uint64_t cap) {
        const std::uint64_t n = u64();
        if (n > cap) throw ConfigError("checkpoint corrupt (oversized field): " + path_);
        return n;
    }

    std::ifstream in_;
    std::string path_;
};

void write_mlp_spec(Writer& w, const MlpSpec& s) {
    w.vec_i32(s.layer_sizes);
    w.u8(s.output_activation == Activation::kTanh ? 1 : 0);
}

MlpSpec read_mlp_spec(Reader& r) {
    MlpSpec s;
    s.layer_sizes = r.vec_i32();
    s.output_activation = r.u8() ? Activation::kTanh : Activation::kIdentity;
    return s;
}

void write_hypernet_spec(Writer& w, const HypernetSpec& s) {
    w.i32(s.m);
    w.i32(s.F);
    w.vec_i32(s.feature_hidden);
    write_mlp_spec(w, s.target_spec);
    w.u8(s.target_has_log_std ? 1 : 0);
}

HypernetSpec read_hypernet_spec(Reader& r) {
    HypernetSpec s;
    s.m = r.i32();
    s.F = r.i32();
    s.feature_hidden = r.vec_i32();
    s.target_spec = read_mlp_spec(r);
    s.target_has_log_std = r.u8() != 0;
    return s;
}

void write_run_config(Writer& w, const RunConfig& c) {
    w.str(c.env_name);
    const TrainerConfig& t = c.trainer;
    w.i32(t.N);
    w.i32(t.K);
    w.i32(t.kappa);
    w.i32(t.T);
    w.f64(t.gamma);
    w.f64(t.gae_lambda);
    w.f64(t.clip_eps);
    w.i32(t.epochs);
    w.i32(t.minibatch_count);
    w.f64(t.actor_lr);
    w.f64(t.critic_lr);
    w.f64(t.entropy_coef);
    w.i32(t.iterations);
    w.u64(t.seed);
    const HypernetArch& h = c.hypernet;
    w.i32(h.F);
    w.vec_i32(h.feature_hidden);
    w.vec_i32(h.actor_hidden);
    w.vec_i32(h.critic_hidden);
    const EvalConfig& e = c.eval;
    w.i32(e.grid_resolution);
    w.i32(e.episodes_per_point);
    w.i32(e.log_interval);
    w.vec_f64(c.pareto_reference);
}

RunConfig read_run_config(Reader& r) {
    RunConfig c;
    c.env_name = r.str();
    TrainerConfig& t = c.trainer;
    t.N = r.i32();
    t.K = r.i32();
    t.kappa = r.i32();
    t.T = r.i32();
    t.gamma = r.f64();
    t.gae_lambda = r.f64();
    t.clip_eps = r.f64();
    t.epochs = r.i32();
    t.minibatch_count = r.i32();
    t.actor_lr = r.f64();
    t.critic_lr = r.f64();
    t.entropy_coef = r.f64();
    t.iterations = r.i32();
    t.seed = r.u64();
    HypernetArch& h = c.hypernet;
    h.F = r.i32();
    h.feature_hidden = r.vec_i32();
    h.actor_hidden = r.vec_i32();
    h.critic_hidden = r.vec_i32();
    EvalConfig& e = c.eval;
    e.grid_resolution = r.i32();
    e.episodes_per_point = r.i32();
    e.log_interval = r.i32();
    c.pareto_reference = r.vec_f64();
    return c;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    Writer w(path);
    w.raw(kMagic, sizeof(kMagic));
    w.u32(kVersion);
    write_run_config(w, ckpt.config);
    write_hypernet_spec(w, ckpt.actor_spec);
    write_hypernet_spec(w, ckpt.critic_spec);
    w.vec_f64(ckpt.actor_params);
    w.vec_f64(ckpt.critic_params);
    w.i64(ckpt.iteration);
    w.u64(ckpt.rng_key);
    w.u64(ckpt.rng_counter);
    w.close();
}

Checkpoint load_checkpoint(const std::string& path) {
    Reader r(path);
    char magic[8];
    r.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("not a checkpoint file: " + path);
    Checkpoint c;
    c.version = r.u32();
    if (c.version != kVersion)
        throw ConfigError("unsupported checkpoint version " +
                          std::to_string(c.version) + ": " + path);
    c.config = read_run_config(r);
    c.actor_spec = read_hypernet_spec(r);
    c.critic_spec = read_hypernet_spec(r);
    c.actor_params = r.vec_f64();
    c.critic_params = r.vec_f64();
    c.iteration = r.i64();
    c.rng_key = r.u64();
    c.rng_counter = r.u64();

    c.actor_spec.validate();
    c.critic_spec.validate();
    if (c.actor_params.size() != hypernet_param_count(c.actor_spec) ||
        c.critic_params.size() != hypernet_param_count(c.critic_spec))
        throw ConfigError("checkpoint parameter count mismatch: " + path);
    return c;
}

}  // namespace morlax
