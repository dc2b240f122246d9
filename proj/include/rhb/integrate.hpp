#pragma once

// Reference adaptive Runge-Kutta integrator (Dormand-Prince 5(4), PI step
// control, continuous output) used as the ground-truth oracle, plus the
// periodicity / orbit-keeping verification built on it.

#include <optional>
#include <vector>

#include "rhb/spectral.hpp"
#include "rhb/systems.hpp"

namespace rhb {

// Dense trajectory: continuous extension over every accepted step.
class Trajectory {
  public:
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    Vec eval(double t) const;
    const Vec& final_state() const;
    int steps() const { return static_cast<int>(step_t_.size()) - 1; }

  private:
    friend Trajectory propagate(const SystemDef&, const Vec&, double, double,
                                double);
    double t0_ = 0.0, t1_ = 0.0;
    std::vector<double> step_t_;          // accepted step boundaries
    std::vector<Eigen::MatrixXd> dense_;  // per step: dim x 5 interpolation coeffs
    std::vector<Vec> states_;             // states at step boundaries
};

// Adaptive embedded RK 5(4). Local error per step is held below tol
// (absolute and relative). Throws on step underflow (< 1e-15 * span).
Trajectory propagate(const SystemDef& sys, const Vec& x0, double t0, double t1,
                     double tol);

struct PeriodicityMetrics {
    double period_return_error = 0.0;  // ||x(T) - x(0)|| / max(1, ||x(0)||)
    double defect_rms = 0.0;           // RMS of xdot_series - f over 1024 samples
    double field_scale = 1.0;          // max(1, RMS of f), for relative checks
    std::optional<double> max_state_error_vs_reference;
};

PeriodicityMetrics verify_periodicity(const SystemDef& sys,
                                      const FourierCoeffs& coeffs,
                                      const HarmonicBasis& basis,
                                      double tol = 1e-12);

struct OrbitKeepingReport {
    double periods_maintained = 0.0;
    int section_crossings = 0;
    std::vector<double> drift_per_period;
};

// Propagates the Fourier solution's initial state and reports how long it
// stays near the nominal orbit, counting passes through a small y = 0
// section near the nominal crossing point.
OrbitKeepingReport orbit_keeping(const SystemDef& sys,
                                 const FourierCoeffs& coeffs,
                                 const HarmonicBasis& basis, int max_periods,
                                 double drift_threshold = 0.05,
                                 double section_radius = 0.05);

// 2U - v^2 for a six-dimensional rotating-frame state.
double jacobi_constant(const Vec& state, double mu);

}  // namespace rhb
