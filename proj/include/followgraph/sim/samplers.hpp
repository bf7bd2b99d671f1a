#pragma once

#include <cmath>

#include "followgraph/glm/special.hpp"
#include "followgraph/sim/rng.hpp"

namespace followgraph::sim {

// Marsaglia-Tsang gamma sampler (shape-scale parameterization). Shapes
// below 1 go through the boost Gamma(a) = Gamma(a+1) U^(1/a).
inline double gamma_sample(Rng& rng, double shape, double scale) {
    if (shape < 1.0) {
        const double u = rng.uniform_pos();
        return gamma_sample(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

// Poisson sampler: Knuth multiplication for small means, Hormann's PTRS
// transformed rejection for large.
inline std::int64_t poisson_sample(Rng& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 30.0) {
        const double limit = std::exp(-lambda);
        std::int64_t k = 0;
        double product = rng.uniform_pos();
        while (product > limit) {
            ++k;
            product *= rng.uniform_pos();
        }
        return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    while (true) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform_pos();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * log_lambda - lambda - glm::log_gamma(kf + 1.0))
            return static_cast<std::int64_t>(kf);
    }
}

}  // namespace followgraph::sim
