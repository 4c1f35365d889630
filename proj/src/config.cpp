// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "blowup/config.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace blowup {

using nlohmann::ordered_json;

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::eos_check: return "eos-check";
        case Mode::fluid_certify: return "fluid-certify";
        case Mode::fluid_simulate: return "fluid-simulate";
        case Mode::plasma_certify: return "plasma-certify";
        case Mode::plasma_simulate: return "plasma-simulate";
        case Mode::scan_nbar: return "scan-nbar";
        case Mode::scan_lambda: return "scan-lambda";
    }
    return "unknown";
}

Mode mode_from_string(const std::string& name) {
    if (name == "eos-check") return Mode::eos_check;
    if (name == "fluid-certify") return Mode::fluid_certify;
    if (name == "fluid-simulate") return Mode::fluid_simulate;
    if (name == "plasma-certify") return Mode::plasma_certify;
    if (name == "plasma-simulate") return Mode::plasma_simulate;
    if (name == "scan-nbar") return Mode::scan_nbar;
    if (name == "scan-lambda") return Mode::scan_lambda;
    throw std::invalid_argument("config field 'mode': unknown value '" + name + "'");
}

namespace {

void reject_unknown(const ordered_json& obj, const std::string& where,
                    std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (auto* k : keys) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("config field '" + where + it.key() +
                                        "': unknown key");
        }
    }
}

double get_number(const ordered_json& obj, const std::string& where, const char* key,
                  double fallback, bool positive = false, bool nonneg = false) {
    if (!obj.contains(key)) return fallback;
    auto& v = obj.at(key);
    if (!v.is_number()) {
        throw std::invalid_argument("config field '" + where + key +
                                    "': expected a number");
    }
    double x = v.get<double>();
    if (positive && !(x > 0.0)) {
        throw std::invalid_argument("config field '" + where + key +
                                    "': must be positive");
    }
    if (nonneg && x < 0.0) {
        throw std::invalid_argument("config field '" + where + key +
                                    "': must be nonnegative");
    }
    return x;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const std::exception& err) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") +
                                    err.what());
    }
    if (!root.is_object()) {
        throw std::invalid_argument("config: top level must be an object");
    }
    reject_unknown(root, "",
                   {"mode", "eos", "background", "plasma", "shapes", "grid", "output"});
    if (!root.contains("mode")) {
        throw std::invalid_argument("config field 'mode': required");
    }

    ExperimentConfig cfg;
    cfg.mode = mode_from_string(root.at("mode").get<std::string>());

    if (root.contains("eos")) {
        auto& e = root.at("eos");
        reject_unknown(e, "eos.", {"gamma", "a0"});
        cfg.eos.gamma = get_number(e, "eos.", "gamma", cfg.eos.gamma);
        cfg.eos.a0 = get_number(e, "eos.", "a0", cfg.eos.a0, true);
        if (!(cfg.eos.gamma > 1.0)) {
            throw std::invalid_argument("config field 'eos.gamma': must exceed 1");
        }
    }
    if (root.contains("background")) {
        auto& b = root.at("background");
        reject_unknown(b, "background.", {"nbar", "sbar"});
        cfg.background.nbar = get_number(b, "background.", "nbar",
                                         cfg.background.nbar, true);
        cfg.background.sbar = get_number(b, "background.", "sbar",
                                         cfg.background.sbar, false, true);
    }
    if (root.contains("plasma")) {
        auto& p = root.at("plasma");
        reject_unknown(p, "plasma.", {"nbar", "sbar", "e", "m", "c"});
        cfg.plasma.nbar = get_number(p, "plasma.", "nbar", cfg.plasma.nbar, true);
        cfg.plasma.sbar = get_number(p, "plasma.", "sbar", cfg.plasma.sbar, false, true);
        cfg.plasma.e = get_number(p, "plasma.", "e", cfg.plasma.e, true);
        cfg.plasma.m = get_number(p, "plasma.", "m", cfg.plasma.m, true);
        cfg.plasma.c = get_number(p, "plasma.", "c", cfg.plasma.c, true);
    }
    if (root.contains("shapes")) {
        auto& s = root.at("shapes");
        reject_unknown(s, "shapes.", {"kappa", "mu", "delta", "sigma", "lambda"});
        cfg.shapes.kappa = get_number(s, "shapes.", "kappa", cfg.shapes.kappa, true);
        cfg.shapes.mu = get_number(s, "shapes.", "mu", cfg.shapes.mu, false, true);
        cfg.shapes.delta = get_number(s, "shapes.", "delta", cfg.shapes.delta);
        cfg.shapes.sigma = get_number(s, "shapes.", "sigma", cfg.shapes.sigma, false,
                                      true);
        cfg.shapes.lambda = get_number(s, "shapes.", "lambda", cfg.shapes.lambda,
                                       false, true);
    }
    if (root.contains("grid")) {
        auto& g = root.at("grid");
        reject_unknown(g, "grid.", {"n", "r_max", "cfl", "t_end", "sample_every"});
        if (g.contains("n")) {
            if (!g.at("n").is_number_unsigned()) {
                throw std::invalid_argument(
                    "config field 'grid.n': expected a positive integer");
            }
            cfg.grid.n = g.at("n").get<std::size_t>();
            if (cfg.grid.n < 8) {
                throw std::invalid_argument("config field 'grid.n': must be >= 8");
            }
        }
        cfg.grid.r_max = get_number(g, "grid.", "r_max", cfg.grid.r_max, true);
        cfg.grid.cfl = get_number(g, "grid.", "cfl", cfg.grid.cfl, true);
        if (cfg.grid.cfl > 1.0) {
            throw std::invalid_argument("config field 'grid.cfl': must be in (0, 1]");
        }
        cfg.grid.t_end = get_number(g, "grid.", "t_end", cfg.grid.t_end, true);
        if (g.contains("sample_every")) {
            if (!g.at("sample_every").is_number_unsigned() ||
                g.at("sample_every").get<std::size_t>() == 0) {
                throw std::invalid_argument(
                    "config field 'grid.sample_every': expected a positive integer");
            }
            cfg.grid.sample_every = g.at("sample_every").get<std::size_t>();
        }
    }
    if (root.contains("output")) {
        auto& o = root.at("output");
        reject_unknown(o, "output.", {"report", "series", "snapshot_times"});
        if (o.contains("report")) cfg.output.report = o.at("report").get<std::string>();
        if (o.contains("series")) cfg.output.series = o.at("series").get<std::string>();
        if (o.contains("snapshot_times")) {
            cfg.output.snapshot_times =
                o.at("snapshot_times").get<std::vector<double>>();
        }
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument("config: cannot open '" + path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return parse_config_text(text);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    ordered_json root;
    root["mode"] = to_string(cfg.mode);
    root["eos"] = {{"gamma", cfg.eos.gamma}, {"a0", cfg.eos.a0}};
    root["background"] = {{"nbar", cfg.background.nbar}, {"sbar", cfg.background.sbar}};
    root["plasma"] = {{"nbar", cfg.plasma.nbar},
                      {"sbar", cfg.plasma.sbar},
                      {"e", cfg.plasma.e},
                      {"m", cfg.plasma.m},
                      {"c", cfg.plasma.c}};
    root["shapes"] = {{"kappa", cfg.shapes.kappa},
                      {"mu", cfg.shapes.mu},
                      {"delta", cfg.shapes.delta},
                      {"sigma", cfg.shapes.sigma},
                      {"lambda", cfg.shapes.lambda}};
    root["grid"] = {{"n", cfg.grid.n},
                    {"r_max", cfg.grid.r_max},
                    {"cfl", cfg.grid.cfl},
                    {"t_end", cfg.grid.t_end},
                    {"sample_every", cfg.grid.sample_every}};
    root["output"] = {{"report", cfg.output.report},
                      {"series", cfg.output.series},
                      {"snapshot_times", cfg.output.snapshot_times}};
    return root.dump(2) + "\n";
}

}  // namespace blowup
