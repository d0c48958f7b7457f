#pragma once

// Random data generators shared by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "h1pick/classical_pick.hpp"
#include "h1pick/param.hpp"

namespace h1pick::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Complex random_disk(Rng& rng, double rmin, double rmax) {
    return std::polar(uniform(rng, rmin, rmax), uniform(rng, 0.0, kTwoPi));
}

/// Distinct random nodes with |z| in [rmin, rmax], pairwise at least `sep` apart.
inline std::vector<DiskPoint> random_nodes(Rng& rng, std::size_t n, double rmin, double rmax, double sep = 0.1) {
    std::vector<DiskPoint> out;
    while (out.size() < n) {
        const Complex z = random_disk(rng, rmin, rmax);
        bool ok = true;
        for (const auto& p : out) ok = ok && std::abs(p.value() - z) >= sep;
        if (ok) out.emplace_back(z);
    }
    return out;
}

/// f(z) = c phi_{-a}(z^2 B(z)) with B a finite Blaschke product: bounded by |c|
/// on the disk, unimodular boundary values times |c|, and f'(0) = 0.
struct InnerH1 {
    Complex c{1.0, 0.0};
    Complex a{0.0, 0.0};
    BlaschkeProduct b;

    Complex operator()(Complex z) const {
        const Complex g = z * z * blaschke_eval(b, z);
        return c * (g + a) / (1.0 + std::conj(a) * g);
    }
};

inline InnerH1 random_inner_h1(Rng& rng, double norm, int max_degree = 2) {
    InnerH1 f;
    f.c = std::polar(norm, uniform(rng, 0.0, kTwoPi));
    f.a = random_disk(rng, 0.0, 0.8);
    const int deg = std::uniform_int_distribution<int>(0, max_degree)(rng);
    for (int i = 0; i < deg; ++i) f.b.zeros.emplace_back(random_disk(rng, 0.0, 0.9));
    f.b.unimodular_factor = std::polar(1.0, uniform(rng, 0.0, kTwoPi));
    return f;
}

}  // namespace h1pick::testing
