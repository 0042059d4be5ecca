// Hebbian training and neuron geometry. Training accumulates zero-diagonal
// outer products; geometry lays neurons out on a line, a near-square
// lattice, or seeded uniform samples of the unit square/cube, and the
// resulting distance matrix drives every update order.

#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <string>

#include "bmatrix/core.hpp"
#include "bmatrix/rng.hpp"

namespace bmx {

enum class Geometry { line, grid2d, uniform2d, uniform3d };

struct GeometryKind {
    Geometry variant = Geometry::uniform2d;
    std::uint64_t seed = 0;  // used by the uniform variants only
};

[[nodiscard]] inline std::string geometry_name(Geometry g) {
    switch (g) {
        case Geometry::line: return "line";
        case Geometry::grid2d: return "grid2d";
        case Geometry::uniform2d: return "uniform2d";
        case Geometry::uniform3d: return "uniform3d";
    }
    throw std::invalid_argument("unknown geometry");
}

[[nodiscard]] inline Geometry geometry_from_name(const std::string& name) {
    if (name == "line") return Geometry::line;
    if (name == "grid2d") return Geometry::grid2d;
    if (name == "uniform2d") return Geometry::uniform2d;
    if (name == "uniform3d") return Geometry::uniform3d;
    throw std::invalid_argument("unknown geometry '" + name + "'");
}

/// t[i][j] = sum over memories x of x[i]*x[j], zero diagonal. Integer
/// arithmetic throughout; |t[i][j]| <= m.
[[nodiscard]] inline WeightMatrix train_hebbian(const MemorySet& memories) {
    const std::size_t n = memories.width();
    WeightMatrix t(n);
    for (const auto& x : memories.memories()) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const int prod = static_cast<int>(x[i]) * static_cast<int>(x[j]);
                t.at(i, j) += prod;
                t.at(j, i) += prod;
            }
        }
    }
    return t;
}

// grid2d picks rows as the largest divisor of n not above sqrt(n), which
// minimizes |rows-cols|; primes therefore fall back to a 1 x n lattice.
[[nodiscard]] inline std::pair<std::size_t, std::size_t> grid_shape(std::size_t n) {
    std::size_t rows = 1;
    for (std::size_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) rows = d;
    }
    return {rows, n / rows};
}

[[nodiscard]] inline ProximityModel build_proximity(std::size_t n, const GeometryKind& geometry) {
    if (n < 2) {
        throw std::invalid_argument("build_proximity: need at least 2 neurons");
    }
    std::vector<std::array<double, 3>> pos(n, {0.0, 0.0, 0.0});
    int dims = 2;
    switch (geometry.variant) {
        case Geometry::line:
            for (std::size_t i = 0; i < n; ++i) pos[i] = {static_cast<double>(i), 0.0, 0.0};
            break;
        case Geometry::grid2d: {
            const auto [rows, cols] = grid_shape(n);
            (void)rows;
            for (std::size_t i = 0; i < n; ++i) {
                pos[i] = {static_cast<double>(i % cols), static_cast<double>(i / cols), 0.0};
            }
            break;
        }
        case Geometry::uniform2d: {
            SeededRng rng(geometry.seed);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = rng.unit();
                const double y = rng.unit();
                pos[i] = {x, y, 0.0};
            }
            break;
        }
        case Geometry::uniform3d: {
            SeededRng rng(geometry.seed);
            dims = 3;
            for (std::size_t i = 0; i < n; ++i) {
                const double x = rng.unit();
                const double y = rng.unit();
                const double z = rng.unit();
                pos[i] = {x, y, z};
            }
            break;
        }
    }
    return ProximityModel(std::move(pos), dims);
}

/// Update order for a single stimulated neuron: the site first, then the
/// rest by increasing distance from it, ties to the lower index.
[[nodiscard]] inline UpdateOrder single_site_order(const ProximityModel& prox, std::size_t site) {
    const std::size_t n = prox.size();
    if (site >= n) {
        throw std::out_of_range("single_site_order: site index out of range");
    }
    std::vector<std::size_t> rest;
    rest.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != site) rest.push_back(i);
    }
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
        const double da = prox.dist2(site, a);
        const double db = prox.dist2(site, b);
        if (da != db) return da < db;
        return a < b;
    });
    UpdateOrder uo;
    uo.order.reserve(n);
    uo.order.push_back(site);
    uo.order.insert(uo.order.end(), rest.begin(), rest.end());
    uo.clamp_count = 1;
    return uo;
}

}  // namespace bmx
