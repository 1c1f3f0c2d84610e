#pragma once

// JSON problem/run configuration: schema validation, round-trippable
// serialization, and assembly of a ProblemSpec (expressions parsed once,
// delta_t^j g(., a) auto-derived from g by Taylor jets unless overridden).

#include <fstream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "expr.hpp"
#include "subdiffusion.hpp"
#include "taylor_jet.hpp"

namespace hcq {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // problem
    double alpha = 0.5;
    double beta = 0.0;
    double a = 1.0;
    double T = 2.0;
    double L = std::numbers::pi;
    std::string v = "0";
    std::string v_prime = "0";
    std::string f_at_a = "0";
    std::string g;                         // empty: g == 0
    std::vector<std::string> delta_g_at_a; // optional override
    std::string u_exact;                   // empty: absent
    // discretization
    int p = 1;
    int M = 2;
    int k = 1;
    std::vector<int> N_list;
    bool single_N = false; // config wrote "N" rather than "N_list"
    bool corrected = true;
    // output
    std::string out_path; // empty or "-": stdout
    std::string format = "csv";
};

namespace config_detail {

inline double need_number(const nlohmann::json& j, const char* section, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(std::string("config: ") + section + "." + key +
                          " must be present and numeric");
    return j.at(key).get<double>();
}

inline std::string need_string(const nlohmann::json& j, const char* section, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw ConfigError(std::string("config: ") + section + "." + key +
                          " must be present and a string");
    return j.at(key).get<std::string>();
}

inline Expression parse_field(const std::string& src, const std::string& field) {
    try {
        return parse(src);
    } catch (const ParseError& e) {
        throw ConfigError("config: expression field '" + field + "': " + e.what());
    }
}

} // namespace config_detail

inline RunConfig config_from_json(const nlohmann::json& j) {
    using config_detail::need_number;
    using config_detail::need_string;
    if (!j.is_object() || !j.contains("problem") || !j.contains("discretization"))
        throw ConfigError("config: top-level 'problem' and 'discretization' objects are required");
    const nlohmann::json& pr = j.at("problem");
    const nlohmann::json& di = j.at("discretization");
    RunConfig c;
    c.alpha = need_number(pr, "problem", "alpha");
    c.beta = need_number(pr, "problem", "beta");
    c.a = need_number(pr, "problem", "a");
    c.T = need_number(pr, "problem", "T");
    c.L = pr.contains("L") ? need_number(pr, "problem", "L") : std::numbers::pi;
    c.v = need_string(pr, "problem", "v");
    c.v_prime = need_string(pr, "problem", "v_prime");
    c.f_at_a = need_string(pr, "problem", "f_at_a");
    if (pr.contains("g")) c.g = need_string(pr, "problem", "g");
    if (pr.contains("u_exact")) c.u_exact = need_string(pr, "problem", "u_exact");
    if (pr.contains("delta_g_at_a")) {
        if (!pr.at("delta_g_at_a").is_array())
            throw ConfigError("config: problem.delta_g_at_a must be an array of strings");
        for (const auto& e : pr.at("delta_g_at_a")) {
            if (!e.is_string())
                throw ConfigError("config: problem.delta_g_at_a must be an array of strings");
            c.delta_g_at_a.push_back(e.get<std::string>());
        }
    }
    c.p = static_cast<int>(need_number(di, "discretization", "p"));
    c.M = static_cast<int>(need_number(di, "discretization", "M"));
    c.k = static_cast<int>(need_number(di, "discretization", "k"));
    if (di.contains("N_list")) {
        if (!di.at("N_list").is_array() || di.at("N_list").empty())
            throw ConfigError("config: discretization.N_list must be a nonempty array");
        for (const auto& e : di.at("N_list")) {
            if (!e.is_number_integer())
                throw ConfigError("config: discretization.N_list entries must be integers");
            c.N_list.push_back(e.get<int>());
        }
    } else if (di.contains("N")) {
        c.N_list.push_back(static_cast<int>(need_number(di, "discretization", "N")));
        c.single_N = true;
    } else {
        throw ConfigError("config: discretization needs N or N_list");
    }
    if (di.contains("corrected")) {
        if (!di.at("corrected").is_boolean())
            throw ConfigError("config: discretization.corrected must be boolean");
        c.corrected = di.at("corrected").get<bool>();
    }
    if (j.contains("output")) {
        const nlohmann::json& o = j.at("output");
        if (o.contains("path")) c.out_path = need_string(o, "output", "path");
        if (o.contains("format")) c.format = need_string(o, "output", "format");
    }

    // validation
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("config: alpha must lie in (0,1)");
    if (!(c.beta >= 0.0 && c.beta < 1.0)) throw ConfigError("config: beta must lie in [0,1)");
    if (!(c.a > 0.0)) throw ConfigError("config: a must be positive");
    if (!(c.T > c.a)) throw ConfigError("config: T must exceed a");
    if (!(c.L > 0.0)) throw ConfigError("config: L must be positive");
    if (c.p < 1 || c.p > 6) throw ConfigError("config: p must lie in [1,6]");
    if (c.k < 1 || c.k > 5) throw ConfigError("config: k must lie in [1,5]");
    if (c.M < 2) throw ConfigError("config: M must be at least 2");
    for (std::size_t i = 0; i < c.N_list.size(); ++i) {
        if (c.N_list[i] < c.p) throw ConfigError("config: every N must be at least p");
        if (i > 0 && c.N_list[i] <= c.N_list[i - 1])
            throw ConfigError("config: N_list must be strictly increasing");
    }
    if (c.format != "csv" && c.format != "pretty")
        throw ConfigError("config: output.format must be 'csv' or 'pretty'");

    // expressions must parse at load time
    config_detail::parse_field(c.v, "v");
    config_detail::parse_field(c.v_prime, "v_prime");
    config_detail::parse_field(c.f_at_a, "f_at_a");
    if (!c.g.empty()) config_detail::parse_field(c.g, "g");
    if (!c.u_exact.empty()) config_detail::parse_field(c.u_exact, "u_exact");
    for (std::size_t i = 0; i < c.delta_g_at_a.size(); ++i)
        config_detail::parse_field(c.delta_g_at_a[i], "delta_g_at_a[" + std::to_string(i) + "]");
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: JSON parse failure in '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

inline nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json pr;
    pr["alpha"] = c.alpha;
    pr["beta"] = c.beta;
    pr["a"] = c.a;
    pr["T"] = c.T;
    pr["L"] = c.L;
    pr["v"] = c.v;
    pr["v_prime"] = c.v_prime;
    pr["f_at_a"] = c.f_at_a;
    if (!c.g.empty()) pr["g"] = c.g;
    if (!c.u_exact.empty()) pr["u_exact"] = c.u_exact;
    if (!c.delta_g_at_a.empty()) pr["delta_g_at_a"] = c.delta_g_at_a;
    nlohmann::json di;
    di["p"] = c.p;
    di["M"] = c.M;
    di["k"] = c.k;
    if (c.single_N) di["N"] = c.N_list.front();
    else di["N_list"] = c.N_list;
    di["corrected"] = c.corrected;
    nlohmann::json o;
    o["path"] = c.out_path.empty() ? "-" : c.out_path;
    o["format"] = c.format;
    nlohmann::json j;
    j["problem"] = pr;
    j["discretization"] = di;
    j["output"] = o;
    return j;
}

// Expression-backed ProblemSpec; delta_t^j g(., a) = j! * (jet coeff j of g).
inline ProblemSpec build_problem(const RunConfig& c) {
    ProblemSpec s;
    s.alpha = c.alpha;
    s.beta = c.beta;
    s.a = c.a;
    s.T = c.T;
    Expression ev = parse(c.v);
    Expression evp = parse(c.v_prime);
    Expression efa = parse(c.f_at_a);
    s.v = [ev](double x) { return eval(ev, x, 0.0); };
    s.v_prime = [evp](double x) { return eval(evp, x, 0.0); };
    s.f_at_a = [efa](double x) { return eval(efa, x, 0.0); };
    if (!c.g.empty()) {
        Expression eg = parse(c.g);
        s.g = [eg](double x, double lt) { return eval(eg, x, lt); };
        if (c.delta_g_at_a.empty()) {
            for (int j = 0; j <= c.p - 2; ++j) {
                double jfact = 1.0;
                for (int i = 2; i <= j; ++i) jfact *= static_cast<double>(i);
                s.delta_g_at_a.push_back([eg, j, jfact](double x) {
                    TaylorJet jet = taylor_in_lt(eg, x, j);
                    return jfact * jet.coeffs[static_cast<std::size_t>(j)];
                });
            }
        }
    }
    if (!c.delta_g_at_a.empty()) {
        for (const std::string& src : c.delta_g_at_a) {
            Expression ej = parse(src);
            s.delta_g_at_a.push_back([ej](double x) { return eval(ej, x, 0.0); });
        }
    }
    if (c.g.empty() && c.delta_g_at_a.empty()) {
        for (int j = 0; j <= c.p - 2; ++j)
            s.delta_g_at_a.push_back([](double) { return 0.0; });
    }
    if (!c.u_exact.empty()) {
        Expression eu = parse(c.u_exact);
        s.u_exact = [eu](double x, double lt) { return eval(eu, x, lt); };
    }
    return s;
}

} // namespace hcq
