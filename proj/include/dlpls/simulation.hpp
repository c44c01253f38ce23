#pragma once

#include "dlpls/linalg.hpp"

#include <cstdint>
#include <string>

namespace dlpls {

/// Synthetic scenarios used by the experiments and tests.
///
///  ReluIndex / TanhIndex:  y = g(beta . x) + eps, beta seeded standard normal
///  LogAbs:                 y = log|1 + B x| + eps, B = (1, 2, 0, 0), p = 4
///  TwoOutput:              y1 = B1 x + eps1, y2 = log|1 + B2 x| + eps2,
///                          B1 = (0, 0, 2, 2), B2 = (1, 2, 0, 0), p = 4
enum class Scenario { ReluIndex, TanhIndex, LogAbs, TwoOutput };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct SimSpec {
    Scenario scenario = Scenario::LogAbs;
    Index n = 1000;
    Index p = 4;               // fixed to 4 for LogAbs/TwoOutput
    double noise_sd = 0.1;     // index scenarios
    double noise_scale = 1.0;  // multiplies the scenario noise; 0 disables it
    std::uint64_t seed = 0;
};

struct SimData {
    Matrix x;           // n x p, iid standard normal
    Matrix y;           // n x q
    Matrix true_b;      // q x p rows of true coefficients
    Matrix noise_cov;   // q x q covariance actually used
    bool cov_projected = false;  // nearest-PSD projection was applied
};

SimData generate(const SimSpec& spec);

/// Noiseless response surface of a scenario at given inputs. Index scenarios
/// need the realized direction, so they take the coefficient row explicitly.
Matrix scenario_mean(Scenario s, const Matrix& x, const Matrix& true_b);

} // namespace dlpls
