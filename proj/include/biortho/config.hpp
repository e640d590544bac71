#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "biortho/errors.hpp"

namespace biortho {

// Every tolerance and grid resolution used by the checks. Defaults live here and nowhere else.
struct Settings {
    double tol_identity = 1e-10;
    double tol_theta_derivative = 1e-11;
    double tol_fd = 1e-7;
    double tol_saddle = 1e-10;
    double tol_modulus = 1e-11;
    double tol_quadratic = 1e-9;
    double tol_claim = 1e-9;
    double tol_lambda = 1e-12;
    double tol_delta = 1e-10;
    double tol_biortho = 1e-7;
    double tol_biortho_quad = 1e-10;
    double tol_reduction = 1e-9;
    double tol_contour = 1e-12;
    double envelope_threshold = 0.3;
    double counterexample_floor = 1e-6;
    int grid_monotone = 2000;
    int grid_saddle = 2000;
    int grid_modulus = 100;
    int grid_claim = 2000;
    int grid_structure = 1000;
    int samples_identity = 1000;
    int samples_quadratic = 500;
    int reduction_n_max = 30;
    int biortho_n_max = 8;
};

namespace detail {

struct SettingKey {
    const char* name;
    double Settings::*real = nullptr;
    int Settings::*integer = nullptr;
};

inline const std::vector<SettingKey>& setting_keys() {
    static const std::vector<SettingKey> keys = {
        {"tol.identity", &Settings::tol_identity},
        {"tol.theta_derivative", &Settings::tol_theta_derivative},
        {"tol.fd", &Settings::tol_fd},
        {"tol.saddle", &Settings::tol_saddle},
        {"tol.modulus", &Settings::tol_modulus},
        {"tol.quadratic", &Settings::tol_quadratic},
        {"tol.claim", &Settings::tol_claim},
        {"tol.lambda", &Settings::tol_lambda},
        {"tol.delta", &Settings::tol_delta},
        {"tol.biortho", &Settings::tol_biortho},
        {"tol.biortho_quad", &Settings::tol_biortho_quad},
        {"tol.reduction", &Settings::tol_reduction},
        {"tol.contour", &Settings::tol_contour},
        {"envelope.threshold", &Settings::envelope_threshold},
        {"counterexample.floor", &Settings::counterexample_floor},
        {"grid.monotone", nullptr, &Settings::grid_monotone},
        {"grid.saddle", nullptr, &Settings::grid_saddle},
        {"grid.modulus", nullptr, &Settings::grid_modulus},
        {"grid.claim", nullptr, &Settings::grid_claim},
        {"grid.structure", nullptr, &Settings::grid_structure},
        {"samples.identity", nullptr, &Settings::samples_identity},
        {"samples.quadratic", nullptr, &Settings::samples_quadratic},
        {"reduction.n_max", nullptr, &Settings::reduction_n_max},
        {"biortho.n_max", nullptr, &Settings::biortho_n_max},
    };
    return keys;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::vector<std::string> setting_names() {
    std::vector<std::string> out;
    for (const auto& k : detail::setting_keys()) out.emplace_back(k.name);
    return out;
}

inline void apply_setting(Settings& s, const std::string& key, const std::string& value) {
    for (const auto& k : detail::setting_keys()) {
        if (key != k.name) continue;
        std::istringstream in(value);
        in.imbue(std::locale::classic());
        if (k.real != nullptr) {
            double v = 0.0;
            if (!(in >> v) || !(in >> std::ws).eof() || !std::isfinite(v) || v <= 0.0)
                throw ConfigError("setting '" + key + "' needs a positive number, got '" + value + "'");
            s.*(k.real) = v;
        } else {
            long long v = 0;
            if (!(in >> v) || !(in >> std::ws).eof() || v < 1 || v > 1000000)
                throw ConfigError("setting '" + key + "' needs a positive integer, got '" + value + "'");
            s.*(k.integer) = static_cast<int>(v);
        }
        return;
    }
    throw ConfigError("unknown setting '" + key + "'");
}

inline std::string setting_value(const Settings& s, const std::string& key) {
    for (const auto& k : detail::setting_keys()) {
        if (key != k.name) continue;
        std::ostringstream out;
        out.imbue(std::locale::classic());
        if (k.real != nullptr)
            out << s.*(k.real);
        else
            out << s.*(k.integer);
        return out.str();
    }
    throw ConfigError("unknown setting '" + key + "'");
}

// key = value lines; '#' starts a comment.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        out[key] = value;
    }
    return out;
}

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace biortho
