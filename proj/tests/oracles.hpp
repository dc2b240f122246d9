#pragma once

// Test-only oracles, independent of the residual/solver path they check:
// attractor seeding by long-time integration + least-squares Fourier
// projection, and a single/multiple shooting root finder for periodic
// solutions of forced systems.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "rhb/integrate.hpp"
#include "rhb/spectral.hpp"
#include "rhb/systems.hpp"

namespace rhb::testing {

// Fourier coefficients of one period of a trajectory starting at x0, after
// settling transient periods. Projection uses the explicit E+ on an
// oversampled grid.
inline FourierCoeffs project_orbit(const SystemDef& sys, const Vec& x0,
                                   const HarmonicBasis& basis,
                                   int settle_periods, int sample_nodes = 0,
                                   double tol = 1e-12) {
    const double T = basis.period();
    if (sample_nodes <= 0) sample_nodes = 16 * basis.size();
    Trajectory settle = propagate(sys, x0, 0.0, settle_periods * T, tol);
    Trajectory period = propagate(sys, settle.final_state(), 0.0, T, tol);

    const auto grid = build_grid(basis, sample_nodes);
    const auto ops = build_operators(basis, grid, 1);
    Mat samples(sample_nodes, sys.dim);
    for (int i = 0; i < sample_nodes; ++i)
        samples.row(i) = period.eval(grid.nodes[i]).transpose();
    return FourierCoeffs(Mat((ops.E_plus * samples).transpose()));
}

// Newton shooting on g(x0) = flow_T(x0) - x0 for a forced (non-autonomous)
// system. Returns true on convergence and leaves the fixed point in x.
inline bool shoot_periodic(const SystemDef& sys, Vec& x, double period,
                           double tol = 1e-10, int max_iter = 40) {
    const int n = static_cast<int>(x.size());
    const double bound = 100.0 * std::max(1.0, x.norm());
    for (int it = 0; it < max_iter; ++it) {
        // a wandering iterate makes the integration arbitrarily stiff
        if (x.norm() > bound) return false;
        Vec gx;
        try {
            gx = propagate(sys, x, 0.0, period, 1e-12).final_state() - x;
        } catch (const std::exception&) {
            return false;
        }
        if (gx.norm() < tol) return true;
        Mat J(n, n);
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            try {
                J.col(j) =
                    (propagate(sys, xp, 0.0, period, 1e-12).final_state() -
                     propagate(sys, xm, 0.0, period, 1e-12).final_state()) /
                    (2.0 * h);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
        }
        if (!ok) return false;
        J -= Mat::Identity(n, n);
        Eigen::FullPivLU<Mat> lu(J);
        if (!lu.isInvertible()) return false;
        const Vec dx = lu.solve(-gx);
        if (!dx.allFinite()) return false;
        x += dx;
        if (dx.norm() < tol * std::max(1.0, x.norm())) {
            Vec g2;
            try {
                g2 = propagate(sys, x, 0.0, period, 1e-12).final_state() - x;
            } catch (const std::exception&) {
                return false;
            }
            return g2.norm() < 10.0 * tol;
        }
    }
    return false;
}

// Distinct periodic states of a forced system found by shooting from a grid
// of initial conditions.
inline std::vector<Vec> shooting_census(const SystemDef& sys, double period,
                                        double lo, double hi, int grid_n) {
    std::vector<Vec> roots;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            Vec x(2);
            x << lo + (hi - lo) * (i + 0.5) / grid_n,
                lo + (hi - lo) * (j + 0.5) / grid_n;
            if (!shoot_periodic(sys, x, period)) continue;
            bool dup = false;
            for (const auto& r : roots)
                if ((r - x).norm() < 1e-6 * std::max(1.0, r.norm())) {
                    dup = true;
                    break;
                }
            if (!dup) roots.push_back(x);
        }
    }
    return roots;
}

}  // namespace rhb::testing
