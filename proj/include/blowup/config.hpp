// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace blowup {

enum class Mode {
    eos_check,
    fluid_certify,
    fluid_simulate,
    plasma_certify,
    plasma_simulate,
    scan_nbar,
    scan_lambda,
};

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Parsed experiment description.  Unknown keys are rejected; every field
/// has a default so an empty object plus a mode is a valid config.
struct ExperimentConfig {
    Mode mode = Mode::eos_check;

    struct Eos {
        double gamma = 5.0 / 3.0;
        double a0 = 1.0;
    } eos;

    struct Background {  // fluid modes
        double nbar = 1e-3;
        double sbar = 0.0;
    } background;

    struct Plasma {  // plasma modes
        double nbar = 0.01;
        double sbar = 0.0;
        double e = 1.0;
        double m = 1.0;
        double c = 1.0;  // accepted for dimensional input; cancels in the
                         // radial reduction
    } plasma;

    struct Shapes {
        double kappa = 1.0;    // fluid velocity/entropy amplitude
        double mu = 1.0;       // fluid density-shape amplitude
        double delta = 0.0025; // plasma charge amplitude
        double sigma = 0.1;    // plasma entropy amplitude
        double lambda = 0.05;  // plasma velocity amplitude
    } shapes;

    struct Grid {
        std::size_t n = 2048;
        double r_max = 2.0;
        double cfl = 0.4;
        double t_end = 1.0;
        std::size_t sample_every = 1;
    } grid;

    struct Output {
        std::string report = "report.json";
        std::string series = "series.csv";
        std::vector<double> snapshot_times;
    } output;
};

/// Parse a config from a JSON file ("-" reads stdin).  Throws
/// std::invalid_argument naming the offending field.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace blowup
