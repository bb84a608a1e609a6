#include "swanson/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    const char* begin = value.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw parse_error("invalid number for '" + key + "': " + value, line);
    return v;
}

int parse_int(const std::string& key, const std::string& value, int line) {
    const char* begin = value.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw parse_error("invalid integer for '" + key + "': " + value, line);
    if (v < -1000000000L || v > 1000000000L)
        throw parse_error("integer out of range for '" + key + "'", line);
    return static_cast<int>(v);
}

} // namespace

model_params config::params() const {
    if (!omega) throw config_error("key 'model.omega' is required");
    if (!alpha) throw config_error("key 'model.alpha' is required");
    if (!beta) throw config_error("key 'model.beta' is required");
    model_params mp{*omega, *alpha, *beta};
    mp.validate();
    return mp;
}

config parse_config_text(const std::string& text) {
    config cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;

        size_t eq = s.find('=');
        if (eq == std::string::npos) throw parse_error("expected key = value", line);
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw parse_error("missing key before '='", line);
        if (value.empty()) throw parse_error("empty value for '" + key + "'", line);
        for (char c : key)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_')
                throw parse_error("bad character in key '" + key + "'", line);
        if (!seen.insert(key).second) throw parse_error("duplicate key '" + key + "'", line);

        if (key == "job") cfg.job = value;
        else if (key == "profile.family") cfg.family = value;
        else if (key == "model.omega") cfg.omega = parse_double(key, value, line);
        else if (key == "model.alpha") cfg.alpha = parse_double(key, value, line);
        else if (key == "model.beta") cfg.beta = parse_double(key, value, line);
        else if (key == "profile.q") cfg.q = parse_double(key, value, line);
        else if (key == "profile.kappa") cfg.kappa = parse_double(key, value, line);
        else if (key == "profile.p") cfg.p = parse_double(key, value, line);
        else if (key == "profile.mu") cfg.mu = parse_double(key, value, line);
        else if (key == "profile.expr_a") cfg.expr_a = value;
        else if (key == "profile.expr_b") cfg.expr_b = value;
        else if (key == "grid.x_min") cfg.x_min = parse_double(key, value, line);
        else if (key == "grid.x_max") cfg.x_max = parse_double(key, value, line);
        else if (key == "grid.n") cfg.n = parse_int(key, value, line);
        else if (key == "k") cfg.k = parse_int(key, value, line);
        else if (key == "sweep.parameter") cfg.sweep_parameter = value;
        else if (key == "sweep.start") cfg.sweep_start = parse_double(key, value, line);
        else if (key == "sweep.stop") cfg.sweep_stop = parse_double(key, value, line);
        else if (key == "sweep.steps") cfg.sweep_steps = parse_int(key, value, line);
        else if (key == "sweep.threads") cfg.sweep_threads = parse_int(key, value, line);
        else throw parse_error("unknown key '" + key + "'", line);
    }
    return cfg;
}

config load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

void reject_key(bool present, const std::string& key, const std::string& family) {
    if (present)
        throw config_error("key '" + key + "' does not apply to family '" + family + "'");
}

void require_key(bool present, const std::string& key, const std::string& family) {
    if (!present)
        throw config_error("family '" + family + "' requires key '" + key + "'");
}

} // namespace

profile build_profile(const config& cfg) {
    const std::string& f = cfg.family;
    if (f.empty()) throw config_error("key 'profile.family' is required");

    if (f == "harmonic") {
        reject_key(cfg.q.has_value(), "profile.q", f);
        reject_key(cfg.kappa.has_value(), "profile.kappa", f);
        reject_key(cfg.p.has_value(), "profile.p", f);
        reject_key(cfg.mu.has_value(), "profile.mu", f);
        reject_key(cfg.expr_a.has_value(), "profile.expr_a", f);
        reject_key(cfg.expr_b.has_value(), "profile.expr_b", f);
        return make_harmonic();
    }
    if (f == "solitonic") {
        require_key(cfg.q.has_value(), "profile.q", f);
        require_key(cfg.kappa.has_value(), "profile.kappa", f);
        reject_key(cfg.p.has_value(), "profile.p", f);
        reject_key(cfg.mu.has_value(), "profile.mu", f);
        reject_key(cfg.expr_a.has_value(), "profile.expr_a", f);
        reject_key(cfg.expr_b.has_value(), "profile.expr_b", f);
        if (!(*cfg.kappa > 0.5))
            throw config_error("family 'solitonic' requires profile.kappa > 0.5");
        return make_solitonic(*cfg.q, *cfg.kappa);
    }
    if (f == "morse") {
        require_key(cfg.p.has_value(), "profile.p", f);
        reject_key(cfg.q.has_value(), "profile.q", f);
        reject_key(cfg.kappa.has_value(), "profile.kappa", f);
        reject_key(cfg.expr_a.has_value(), "profile.expr_a", f);
        reject_key(cfg.expr_b.has_value(), "profile.expr_b", f);
        return make_morse(*cfg.p, cfg.mu.value_or(0.0));
    }
    if (f == "canonical") {
        reject_key(cfg.kappa.has_value(), "profile.kappa", f);
        reject_key(cfg.expr_a.has_value(), "profile.expr_a", f);
        reject_key(cfg.expr_b.has_value(), "profile.expr_b", f);
        if (cfg.q.has_value() == cfg.p.has_value())
            throw config_error(
                "family 'canonical' requires exactly one generator key: profile.q "
                "(arctan-exponential generator) or profile.p (exponential generator)");
        double mu = cfg.mu.value_or(0.0);
        if (cfg.q) {
            if (!(*cfg.q > 0.0)) throw config_error("profile.q must be positive");
            profile pr = canonical_b_from_g(solitonic_generator(*cfg.q), mu);
            pr.q = *cfg.q;
            pr.mu = mu;
            return pr;
        }
        if (*cfg.p == 0.0) throw config_error("profile.p must be nonzero");
        profile pr = canonical_b_from_g(exponential_generator(*cfg.p), mu);
        pr.p = *cfg.p;
        pr.mu = mu;
        return pr;
    }
    if (f == "custom") {
        require_key(cfg.expr_a.has_value(), "profile.expr_a", f);
        require_key(cfg.expr_b.has_value(), "profile.expr_b", f);
        reject_key(cfg.q.has_value(), "profile.q", f);
        reject_key(cfg.kappa.has_value(), "profile.kappa", f);
        reject_key(cfg.p.has_value(), "profile.p", f);
        reject_key(cfg.mu.has_value(), "profile.mu", f);
        return make_custom(*cfg.expr_a, *cfg.expr_b);
    }
    throw config_error("unknown family '" + f +
                       "' (expected harmonic, solitonic, morse, canonical or custom)");
}

grid build_grid(const config& cfg, const profile& pr) {
    if (!cfg.n) throw config_error("key 'grid.n' is required");
    if (cfg.x_min.has_value() != cfg.x_max.has_value())
        throw config_error("grid.x_min and grid.x_max must be given together");
    grid g;
    if (cfg.x_min) {
        g = grid{*cfg.x_min, *cfg.x_max, *cfg.n};
    } else {
        double scale = pr.q > 0.0 ? pr.q : (pr.p != 0.0 ? std::abs(pr.p) : 1.0);
        g = grid{-12.0 / scale, 12.0 / scale, *cfg.n};
    }
    g.validate();
    return g;
}

config with_parameter(const config& cfg, const std::string& name, double value) {
    config out = cfg;
    if (name == "model.omega") out.omega = value;
    else if (name == "model.alpha") out.alpha = value;
    else if (name == "model.beta") out.beta = value;
    else if (name == "profile.q") out.q = value;
    else if (name == "profile.kappa") out.kappa = value;
    else if (name == "profile.p") out.p = value;
    else if (name == "profile.mu") out.mu = value;
    else
        throw config_error("unknown sweep parameter '" + name +
                           "' (expected model.omega, model.alpha, model.beta, "
                           "profile.q, profile.kappa, profile.p or profile.mu)");
    return out;
}

sweep_plan build_sweep(const config& cfg) {
    if (!cfg.sweep_parameter) throw config_error("key 'sweep.parameter' is required");
    if (!cfg.sweep_start) throw config_error("key 'sweep.start' is required");
    if (!cfg.sweep_stop) throw config_error("key 'sweep.stop' is required");
    if (!cfg.sweep_steps) throw config_error("key 'sweep.steps' is required");
    int count = *cfg.sweep_steps;
    if (count < 2 || count > 100000)
        throw config_error("sweep.steps must be in [2, 100000]");

    sweep_plan plan;
    plan.parameter = *cfg.sweep_parameter;
    plan.values.resize(count);
    for (int i = 0; i < count; ++i)
        plan.values[i] =
            *cfg.sweep_start + (*cfg.sweep_stop - *cfg.sweep_start) * i / (count - 1);

    // every point of the sweep must itself be a valid configuration
    for (int i = 0; i < count; ++i) {
        try {
            config point = with_parameter(cfg, plan.parameter, plan.values[i]);
            profile pr = build_profile(point);
            point.params();
            build_grid(point, pr);
        } catch (const error& e) {
            throw config_error("sweep point " + std::to_string(i) + " (" + plan.parameter +
                               " = " + std::to_string(plan.values[i]) +
                               ") is invalid: " + e.what());
        }
    }

    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int threads = cfg.sweep_threads > 0 ? cfg.sweep_threads : std::min(hw, 8);
    plan.threads = std::max(1, std::min({threads, count, 32}));
    return plan;
}

} // namespace swanson
