#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "nilprog/errors.hpp"
#include "nilprog/torus.hpp"

namespace nilprog {

// Fraction of grid cells visited by a finite orbit segment: the numerical
// surrogate for the dimension of an orbit closure.
struct OccupancyReport {
    std::string system;
    int grid = 0;
    long samples = 0;
    long occupied_cells = 0;
    long total_cells = 0;
    double fraction = 0.0;
    std::array<double, kNumParams> params{};
    std::vector<double> start;
};

inline OccupancyReport occupancy(const TorusSystem& sys, std::vector<double> x0,
                                 const std::array<double, kNumParams>& params, long samples,
                                 int grid) {
    if (samples < 1) throw std::invalid_argument("occupancy: need at least one sample");
    if (grid < 2) throw std::invalid_argument("occupancy: grid must be >= 2");
    if (sys.dim < 1 || sys.dim > 3) throw std::invalid_argument("occupancy: dimension must be 1..3");
    if (static_cast<int>(x0.size()) != sys.dim)
        throw std::invalid_argument("occupancy: starting point has wrong dimension");
    if (!sys.step_double) throw Error("occupancy: system has no double-precision stepper");

    long total = 1;
    for (int d = 0; d < sys.dim; ++d) total *= grid;
    std::vector<bool> visited(static_cast<std::size_t>(total), false);

    for (auto& c : x0) c -= std::floor(c);
    long occupied = 0;
    std::vector<double> p = x0;
    for (long i = 0; i < samples; ++i) {
        long cell = 0;
        for (int d = 0; d < sys.dim; ++d) {
            double c = p[static_cast<std::size_t>(d)];
            long bucket = static_cast<long>(c * grid);
            if (bucket < 0) bucket = 0;
            if (bucket >= grid) bucket = grid - 1;
            cell = cell * grid + bucket;
        }
        if (!visited[static_cast<std::size_t>(cell)]) {
            visited[static_cast<std::size_t>(cell)] = true;
            ++occupied;
        }
        if (i + 1 < samples) sys.step_double(p, params);
    }

    OccupancyReport rep;
    rep.system = sys.name;
    rep.grid = grid;
    rep.samples = samples;
    rep.occupied_cells = occupied;
    rep.total_cells = total;
    rep.fraction = static_cast<double>(occupied) / static_cast<double>(total);
    rep.params = params;
    rep.start = x0;
    return rep;
}

// Orbit samples (n, coordinates) for CSV export.
inline std::vector<std::vector<double>> orbit_samples(const TorusSystem& sys, std::vector<double> x0,
                                                      const std::array<double, kNumParams>& params,
                                                      long count) {
    if (!sys.step_double) throw Error("orbit_samples: system has no double-precision stepper");
    for (auto& c : x0) c -= std::floor(c);
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<double> p = x0;
    for (long i = 0; i < count; ++i) {
        out.push_back(p);
        sys.step_double(p, params);
    }
    return out;
}

}  // namespace nilprog
