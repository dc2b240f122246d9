#include "rhb/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhb {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous-extension weights
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

}  // namespace

Vec Trajectory::eval(double t) const {
    if (step_t_.empty()) throw std::runtime_error("Trajectory: empty");
    t = std::clamp(t, t0_, t1_);
    const auto it = std::upper_bound(step_t_.begin(), step_t_.end(), t);
    int idx = static_cast<int>(it - step_t_.begin()) - 1;
    idx = std::clamp(idx, 0, static_cast<int>(dense_.size()) - 1);
    const double h = step_t_[idx + 1] - step_t_[idx];
    const double theta = h > 0 ? (t - step_t_[idx]) / h : 0.0;
    const double theta1 = 1.0 - theta;
    const auto& r = dense_[idx];
    return r.col(0) +
           theta * (r.col(1) +
                    theta1 * (r.col(2) + theta * (r.col(3) + theta1 * r.col(4))));
}

const Vec& Trajectory::final_state() const {
    if (states_.empty()) throw std::runtime_error("Trajectory: empty");
    return states_.back();
}

Trajectory propagate(const SystemDef& sys, const Vec& x0, double t0, double t1,
                     double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-3))
        throw std::invalid_argument("propagate: tol must be in [1e-14, 1e-3]");
    if (!(t1 > t0)) throw std::invalid_argument("propagate: need t1 > t0");
    const double span = t1 - t0;
    const double omega = sys.params.count("omega") ? sys.params.at("omega") : 1.0;

    Trajectory traj;
    traj.t0_ = t0;
    traj.t1_ = t1;
    traj.step_t_.push_back(t0);
    traj.states_.push_back(x0);

    auto f = [&](double t, const Vec& y) { return sys.field(y, t, omega); };

    double t = t0;
    Vec y = x0;
    Vec k1 = f(t, y);
    double h = std::min(span / 100.0, 0.1 * std::pow(tol, 0.2) + 1e-4);
    double facold = 1e-4;
    constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;

    while (t1 - t > 1e-14 * span) {
        h = std::min(h, t1 - t);
        if (h < 1e-15 * span)
            throw std::runtime_error("propagate: step underflow (stiffness)");

        const Vec k2 = f(t + c2 * h, y + h * (a21 * k1));
        const Vec k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const Vec k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec k5 = f(t + c5 * h,
                         y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec k6 =
            f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                              a65 * k5));
        const Vec ynew =
            y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec k7 = f(t + h, ynew);
        const Vec errv =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (int i = 0; i < y.size(); ++i) {
            const double sc =
                tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (errv[i] / sc) * (errv[i] / sc);
        }
        err = std::sqrt(err / y.size());

        const double errc = std::max(err, 1e-10);
        const double fac11 = std::pow(errc, expo1);
        if (err <= 1.0) {
            // accept; store the continuous extension
            const Vec ydiff = ynew - y;
            const Vec bspl = h * k1 - ydiff;
            Eigen::MatrixXd r(y.size(), 5);
            r.col(0) = y;
            r.col(1) = ydiff;
            r.col(2) = bspl;
            r.col(3) = ydiff - h * k7 - bspl;
            r.col(4) = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 +
                            d7 * k7);
            traj.dense_.push_back(std::move(r));
            t += h;
            traj.step_t_.push_back(t);
            traj.states_.push_back(ynew);
            y = ynew;
            k1 = k7;  // FSAL
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(0.1, std::min(5.0, fac / safe));
            h = h / fac;
            facold = errc;
        } else {
            h = h / std::min(5.0, fac11 / safe);
        }
    }
    return traj;
}

PeriodicityMetrics verify_periodicity(const SystemDef& sys,
                                      const FourierCoeffs& coeffs,
                                      const HarmonicBasis& basis, double tol) {
    PeriodicityMetrics m;
    const double T = basis.period();
    constexpr int samples = 1024;
    double defect_sq = 0.0, field_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = T * i / samples;
        const Vec x = eval_series(coeffs, basis, t);
        const Vec xd = eval_series_derivative(coeffs, basis, t);
        const Vec fx = sys.field(x, t, basis.omega);
        defect_sq += (xd - fx).squaredNorm();
        field_sq += fx.squaredNorm();
    }
    m.defect_rms = std::sqrt(defect_sq / (samples * coeffs.dim()));
    m.field_scale = std::max(1.0, std::sqrt(field_sq / (samples * coeffs.dim())));

    const Vec x0 = eval_series(coeffs, basis, 0.0);
    try {
        Trajectory traj = propagate(sys, x0, 0.0, T, tol);
        m.period_return_error =
            (traj.final_state() - x0).norm() / std::max(1.0, x0.norm());
    } catch (const std::exception&) {
        m.period_return_error = std::numeric_limits<double>::infinity();
        m.defect_rms = std::numeric_limits<double>::infinity();
    }
    return m;
}

OrbitKeepingReport orbit_keeping(const SystemDef& sys,
                                 const FourierCoeffs& coeffs,
                                 const HarmonicBasis& basis, int max_periods,
                                 double drift_threshold,
                                 double section_radius) {
    OrbitKeepingReport rep;
    const double T = basis.period();
    const int pos_dim = coeffs.dim() >= 6 ? 3 : coeffs.dim();

    // nominal orbit as a position curve
    constexpr int curve_samples = 1024;
    std::vector<Vec> curve(curve_samples);
    for (int i = 0; i < curve_samples; ++i)
        curve[i] = eval_series(coeffs, basis, T * i / curve_samples)
                       .head(pos_dim)
                       .eval();
    auto dist_to_curve = [&](const Vec& p) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : curve) best = std::min(best, (p - q).norm());
        return best;
    };

    // nominal first y = 0 crossing (for the section) if the orbit has one
    bool have_section = false;
    int cross_dir = 0;
    Vec section_pos;
    if (pos_dim >= 2) {
        for (int i = 0; i < curve_samples; ++i) {
            const double y0 = curve[i][1];
            const double y1 = curve[(i + 1) % curve_samples][1];
            if (y0 == 0.0 && y1 == 0.0) continue;
            if (y0 <= 0.0 && y1 > 0.0) {
                have_section = true;
                cross_dir = +1;
                section_pos = curve[i];
                break;
            }
            if (y0 >= 0.0 && y1 < 0.0) {
                have_section = true;
                cross_dir = -1;
                section_pos = curve[i];
                break;
            }
        }
    }

    const Vec x0 = eval_series(coeffs, basis, 0.0);
    Trajectory traj;
    try {
        traj = propagate(sys, x0, 0.0, max_periods * T, 1e-12);
    } catch (const std::exception&) {
        rep.periods_maintained = 0.0;
        return rep;
    }
    const double t_reached = traj.t_end();

    constexpr int per_period = 128;
    const int total = max_periods * per_period;
    rep.periods_maintained = t_reached / T;
    bool drifted = false;
    double period_max = 0.0;
    double prev_y = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= total; ++i) {
        const double t = max_periods * T * static_cast<double>(i) / total;
        if (t > t_reached) break;
        const Vec s = traj.eval(t);
        const Vec p = s.head(pos_dim).eval();
        const double d = dist_to_curve(p);
        period_max = std::max(period_max, d);
        if (i > 0 && i % per_period == 0) {
            rep.drift_per_period.push_back(period_max);
            period_max = 0.0;
        }
        if (!drifted && d > drift_threshold) {
            rep.periods_maintained = t / T;
            drifted = true;
        }
        if (have_section && pos_dim >= 2 && !drifted) {
            const double ynow = s[1];
            if (have_prev && ((cross_dir > 0 && prev_y <= 0.0 && ynow > 0.0) ||
                              (cross_dir < 0 && prev_y >= 0.0 && ynow < 0.0)) &&
                (p - section_pos).norm() < section_radius)
                ++rep.section_crossings;
            prev_y = ynow;
            have_prev = true;
        }
    }
    if (!drifted) rep.periods_maintained = std::min(
        rep.periods_maintained, static_cast<double>(max_periods));
    return rep;
}

double jacobi_constant(const Vec& state, double mu) {
    if (state.size() < 6)
        throw std::invalid_argument("jacobi_constant: need a 6-dimensional state");
    const double x = state[0], y = state[1], z = state[2];
    const double r1 = std::sqrt((x + mu) * (x + mu) + y * y + z * z);
    const double r2 = std::sqrt((x - 1 + mu) * (x - 1 + mu) + y * y + z * z);
    if (r1 == 0.0 || r2 == 0.0)
        throw std::domain_error("jacobi_constant: state at a primary");
    const double U = 0.5 * (x * x + y * y) + (1.0 - mu) / r1 + mu / r2;
    const double v2 = state.segment(3, 3).squaredNorm();
    return 2.0 * U - v2;
}

}  // namespace rhb
