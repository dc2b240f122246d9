#include "rhb/crtbp_seeds.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "rhb/integrate.hpp"

#include "rhb/assembly.hpp"
#include "rhb/spectral.hpp"

namespace rhb {

namespace {

// (x, y, z) position and velocity as closed-form functions of time, turned
// into the recast 8-state by appending u1 = 1/r1, u2 = 1/r2 pointwise and
// projecting onto the Fourier basis with E+.
using Curve = std::function<void(double t, Eigen::Vector3d& pos,
                                 Eigen::Vector3d& vel)>;

FourierCoeffs project_curve(const Curve& curve, double mu,
                            const HarmonicBasis& basis) {
    const int M = 4 * basis.size();
    const auto grid = build_grid(basis, M);
    const auto ops = build_operators(basis, grid, 1);
    Mat samples(M, 8);
    Eigen::Vector3d pos, vel;
    for (int i = 0; i < M; ++i) {
        curve(grid.nodes[i], pos, vel);
        const double r1 = std::sqrt((pos[0] + mu) * (pos[0] + mu) +
                                    pos[1] * pos[1] + pos[2] * pos[2]);
        const double r2 = std::sqrt((pos[0] - 1 + mu) * (pos[0] - 1 + mu) +
                                    pos[1] * pos[1] + pos[2] * pos[2]);
        samples.row(i) << pos[0], pos[1], pos[2], vel[0], vel[1], vel[2],
            1.0 / r1, 1.0 / r2;
    }
    return FourierCoeffs(Mat((ops.E_plus * samples).transpose()));
}

}  // namespace

LibrationModes libration_modes(const CRTBPParams& p) {
    LibrationModes m;
    m.x_L = libration_point_x(p.mu, p.point);
    const double d1 = std::abs(m.x_L + p.mu);
    const double d2 = std::abs(m.x_L - 1 + p.mu);
    m.c2 = (1.0 - p.mu) / (d1 * d1 * d1) + p.mu / (d2 * d2 * d2);
    // in-plane characteristic equation s^2 + (c2 - 2) s + (1 + 2 c2)(1 - c2) = 0
    const double b = m.c2 - 2.0;
    const double q = (1.0 + 2.0 * m.c2) * (1.0 - m.c2);
    const double s = (-b + std::sqrt(b * b - 4.0 * q)) / 2.0;
    m.omega_planar = std::sqrt(s);
    m.omega_vertical = std::sqrt(m.c2);
    m.planar_ratio = (s + 1.0 + 2.0 * m.c2) / (2.0 * m.omega_planar);
    return m;
}

PhaseAnchor family_anchor(CRTBPFamily fam) {
    return {fam == CRTBPFamily::VerticalLyapunov ? 2 : 1};
}

FourierCoeffs approximate_family_coeffs(CRTBPFamily fam, const CRTBPParams& p,
                                        int order_N, double omega,
                                        double amplitude, double z_amplitude) {
    const auto m = libration_modes(p);
    Curve curve;
    switch (fam) {
        case CRTBPFamily::PlanarLyapunov:
        case CRTBPFamily::Halo: {
            // planar mode with phase chosen so y ~ cos: x = xL + A sin(wt),
            // y = k A cos(wt); the halo adds z = Az cos(wt)
            const double k = m.planar_ratio;
            const double Az = fam == CRTBPFamily::Halo ? z_amplitude : 0.0;
            curve = [=, xL = m.x_L](double t, Eigen::Vector3d& pos,
                                    Eigen::Vector3d& vel) {
                const double s = std::sin(omega * t), c = std::cos(omega * t);
                pos << xL + amplitude * s, k * amplitude * c, Az * c;
                vel << amplitude * omega * c, -k * amplitude * omega * s,
                    -Az * omega * s;
            };
            break;
        }
        case CRTBPFamily::VerticalLyapunov:
            curve = [=, xL = m.x_L](double t, Eigen::Vector3d& pos,
                                    Eigen::Vector3d& vel) {
                pos << xL, 0.0, amplitude * std::cos(omega * t);
                vel << 0.0, 0.0, -amplitude * omega * std::sin(omega * t);
            };
            break;
        case CRTBPFamily::DRO:
            // moon-centered retrograde circle; rotating-frame rate omega
            // corresponds to a Kepler circle of radius (mu / (omega-1)^2)^(1/3)
            curve = [=, mu = p.mu](double t, Eigen::Vector3d& pos,
                                   Eigen::Vector3d& vel) {
                const double s = std::sin(omega * t), c = std::cos(omega * t);
                pos << 1.0 - mu + amplitude * s, amplitude * c, 0.0;
                vel << amplitude * omega * c, -amplitude * omega * s, 0.0;
            };
            break;
    }
    return project_curve(curve, p.mu, HarmonicBasis(order_N, omega));
}

FreeOmegaResult solve_free_omega(const SystemDef& sys, int order_N,
                                 double omega0, const FourierCoeffs& x0,
                                 const PhaseAnchor& anchor, int pin_coord,
                                 double pin_value, const NewtonOptions& opt) {
    FreeOmegaResult out;
    const int cols = 2 * order_N + 1;
    const int pin_flat = pin_coord * cols + 1;
    const int anchor_flat = anchor.coord * cols + 2;

    // With omega free every balance row must stay: the anchored row is what
    // ties the time derivative of the anchor coordinate to omega, and
    // dropping it (as the fixed-omega anchored system does) opens a spurious
    // one-parameter family of roots. The anchor and the amplitude pin are
    // appended as explicit rows instead.
    auto build = [&](double omega) {
        auto cfg = make_method_config(Mode::RHB, order_N, omega,
                                      sys.degree_phi);
        return build_time_domain_residual(sys, cfg);
    };

    auto res = build(omega0);
    Vec u = res.pack(x0);
    double w = omega0;
    const int n = res.unknown_count();
    const int m = res.residual_count();

    auto extended = [&](const ResidualSystem& r, const Vec& uu) {
        Vec re(m + 2);
        re.head(m) = r.residual(uu);
        re[m] = uu[anchor_flat];
        re[m + 1] = uu[pin_flat] - pin_value;
        return re;
    };

    Vec re = extended(res, u);
    double rnorm = re.lpNorm<Eigen::Infinity>();
    for (int it = 0; it < opt.max_iter && rnorm > opt.tol_residual; ++it) {
        Mat J(m + 2, n + 1);
        try {
            J.topLeftCorner(m, n) = jacobian(res, u);
        } catch (const std::exception&) {
            break;
        }
        // d residual / d omega: only the w A x^ term depends on omega
        const FourierCoeffs x = res.unpack(u);
        const Mat dA = (res.ops().A * x.c.transpose()).transpose();
        Vec dw_col(m);
        for (int d = 0; d < sys.dim; ++d)
            dw_col.segment(d * cols, cols) = dA.row(d).transpose();
        dw_col.tail(m - sys.dim * cols).setZero();  // constraint rows
        J.col(n).head(m) = dw_col;
        J.bottomRows(2).setZero();
        J(m, anchor_flat) = 1.0;
        J(m + 1, pin_flat) = 1.0;

        Eigen::CompleteOrthogonalDecomposition<Mat> cod;
        cod.setThreshold(1e-10);
        cod.compute(J);
        if (cod.rank() == 0) break;
        const Vec step = cod.solve(-re);
        if (!step.allFinite()) break;

        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
            const Vec u_try = u + lambda * step.head(n);
            const double w_try = w + lambda * step[n];
            if (w_try > 0.0) {
                auto res_try = build(w_try);
                const Vec re_try = extended(res_try, u_try);
                const double n_try =
                    re_try.allFinite()
                        ? re_try.lpNorm<Eigen::Infinity>()
                        : std::numeric_limits<double>::infinity();
                if (n_try < rnorm) {
                    u = u_try;
                    w = w_try;
                    res = std::move(res_try);
                    re = re_try;
                    rnorm = n_try;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    out.converged = rnorm <= opt.tol_residual;
    out.omega = w;
    out.coeffs = res.unpack(u);
    out.residual = rnorm;
    return out;
}

namespace {

// ---- differential correction of symmetric orbits on the unrecast field ----
//
// Planar-symmetric orbits (planar Lyapunov, halo, DRO) cross the x-z plane
// perpendicularly: s0 = (x0, 0, z0, 0, vy0, 0). Correcting (x0, vy0) so that
// vx = vz = 0 at the next crossing yields a periodic orbit of period twice
// the crossing time. The linear-mode guesses alone are not accurate enough
// to start Newton on the collocation system: the recast algebraic problem
// has clusters of spurious roots within O(amplitude^2) of the true one.

struct CrossInfo {
    bool found = false;
    double t = 0.0;   // crossing time
    double vx = 0.0;
    double vz = 0.0;
    double z = 0.0;
};

// next y = 0 crossing after a quarter of the period guess
CrossInfo section_cross(const SystemDef& sys6, const Vec& s0, double Tg) {
    CrossInfo out;
    Trajectory traj;
    try {
        traj = propagate(sys6, s0, 0.0, 0.9 * Tg, 1e-12);
    } catch (const std::exception&) {
        return out;
    }
    double prev_t = 0.2 * Tg;
    double prev_y = traj.eval(prev_t)[1];
    for (int i = 1; i <= 900; ++i) {
        const double t = 0.2 * Tg + 0.7 * Tg * i / 900.0;
        const double y = traj.eval(t)[1];
        if (prev_y * y < 0.0) {
            double lo = prev_t, hi = t;
            for (int k = 0; k < 70; ++k) {
                const double mid = 0.5 * (lo + hi);
                const double ym = traj.eval(mid)[1];
                if (ym == 0.0) {
                    lo = hi = mid;
                    break;
                }
                (ym * prev_y > 0.0 ? lo : hi) = mid;
            }
            out.found = true;
            out.t = 0.5 * (lo + hi);
            const Vec s = traj.eval(out.t);
            out.vx = s[3];
            out.vz = s[5];
            out.z = s[2];
            return out;
        }
        prev_t = t;
        prev_y = y;
    }
    return out;
}

struct SymOrbit {
    Vec s0;  // corrected perpendicular-crossing state
    double period;
};

// Adjusts vy0 (as a multiplier on its guess) until vx vanishes at the
// crossing. The unstable manifold makes the crossing disappear when |vy0| is
// too small, and vx is monotone in vy0 near the orbit, so a bracket scan
// with "no crossing" counted as positive vx, followed by bisection, is
// reliable where a plain Newton is not.
std::optional<CrossInfo> solve_vy(const SystemDef& sys6, Vec& s0, double Tg) {
    const double vy_g = s0[4];
    auto sgn = [&](double f, CrossInfo& info) {
        Vec s = s0;
        s[4] = vy_g * f;
        info = section_cross(sys6, s, Tg);
        return info.found ? (info.vx > 0.0 ? 1.0 : -1.0) : 1.0;
    };
    double lo = 0.0, hi = 0.0;
    CrossInfo ci;
    double prev_f = 0.7;
    double prev_s = sgn(prev_f, ci);
    for (int i = 1; i <= 18 && hi == 0.0; ++i) {
        const double f = 0.7 + 0.05 * i;
        const double s = sgn(f, ci);
        if (s != prev_s) {
            lo = prev_f;
            hi = f;
        }
        prev_f = f;
        prev_s = s;
    }
    if (hi == 0.0) return std::nullopt;
    const double s_lo = sgn(lo, ci);
    for (int k = 0; k < 52; ++k) {
        const double mid = 0.5 * (lo + hi);
        (sgn(mid, ci) == s_lo ? lo : hi) = mid;
    }
    CrossInfo best;
    const double f = 0.5 * (lo + hi);
    if (sgn(f, best) != 0.0 && !best.found) return std::nullopt;
    s0[4] = vy_g * f;
    return best;
}

// planar-symmetric orbit with z0 = 0 fixed (planar Lyapunov, DRO)
std::optional<SymOrbit> correct_planar(const SystemDef& sys6, Vec s0,
                                       double Tg) {
    auto ci = solve_vy(sys6, s0, Tg);
    if (!ci || std::abs(ci->vx) > 1e-8) return std::nullopt;
    return SymOrbit{s0, 2.0 * ci->t};
}

// FD Newton on (vy0, x0) against (vx, vz) at the crossing; needs a guess
// close enough that the section crossing survives every iterate
std::optional<SymOrbit> newton_sym2(const SystemDef& sys6, Vec s0, double Tg) {
    for (int it = 0; it < 30; ++it) {
        auto ci = section_cross(sys6, s0, Tg);
        if (!ci.found) return std::nullopt;
        if (std::abs(ci.vx) < 1e-11 && std::abs(ci.vz) < 1e-11)
            return SymOrbit{s0, 2.0 * ci.t};
        Mat J(2, 2);
        const int vars[2] = {4, 0};  // vy0 first, then x0
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(s0[vars[j]]));
            Vec sp = s0, sm = s0;
            sp[vars[j]] += h;
            sm[vars[j]] -= h;
            const auto cp = section_cross(sys6, sp, Tg);
            const auto cm = section_cross(sys6, sm, Tg);
            if (!cp.found || !cm.found) return std::nullopt;
            J(0, j) = (cp.vx - cm.vx) / (2.0 * h);
            J(1, j) = (cp.vz - cm.vz) / (2.0 * h);
        }
        Eigen::Vector2d rhs(-ci.vx, -ci.vz);
        Eigen::FullPivLU<Mat> lu(J);
        if (!lu.isInvertible()) return std::nullopt;
        const Vec dq = lu.solve(rhs);
        s0[4] += dq[0];
        s0[0] += dq[1];
        Tg = 2.0 * ci.t;
    }
    return std::nullopt;
}

// Doubly symmetric correction with a free endpoint time: from the
// perpendicular start (x0, 0, z0, 0, vy0, 0) the quarter-period point must
// land on the x-axis with vx = 0. Unknowns (x0, vy0, tq) against
// (y, vx, z)(tq); no section crossing is needed, which matters here because
// the in-plane unstable mode destroys the y = 0 crossing for inexact
// guesses.
std::optional<SymOrbit> newton_vertical(const SystemDef& sys6, Vec s0,
                                        double tq) {
    auto endpoint = [&](const Vec& s, double t) {
        const auto traj = propagate(sys6, s, 0.0, 1.05 * t, 1e-12);
        const Vec st = traj.eval(t);
        Eigen::Vector3d r(st[1], st[3], st[2]);
        return std::pair{r, st};
    };
    for (int it = 0; it < 30; ++it) {
        auto [r, st] = endpoint(s0, tq);
        if (r.lpNorm<Eigen::Infinity>() < 1e-11) return SymOrbit{s0, 4.0 * tq};
        Mat J(3, 3);
        const int vars[2] = {0, 4};  // x0, vy0
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(s0[vars[j]]));
            Vec sp = s0, sm = s0;
            sp[vars[j]] += h;
            sm[vars[j]] -= h;
            J.col(j) = (endpoint(sp, tq).first - endpoint(sm, tq).first) /
                       (2.0 * h);
        }
        const Vec f = sys6.field(st, tq, 0.0);
        J.col(2) << f[1], f[3], f[2];
        Eigen::FullPivLU<Mat> lu(J);
        if (!lu.isInvertible()) return std::nullopt;
        const Vec dq = lu.solve(-r);
        // keep the endpoint time positive and the step sane
        if (!dq.allFinite() || std::abs(dq[2]) > 0.5 * tq) return std::nullopt;
        s0[0] += dq[0];
        s0[4] += dq[1];
        tq += dq[2];
    }
    return std::nullopt;
}

// three-dimensional branch by continuation in the fixed z0 away from a
// converged planar orbit; the step shrinks when Newton loses the crossing
std::optional<SymOrbit> correct_halo(const SystemDef& sys6,
                                     const SymOrbit& planar, double z_target) {
    double z = 0.0;
    Vec s0 = planar.s0;
    double T = planar.period;
    double dz = z_target / 8.0;
    while (z < z_target - 1e-12) {
        const double zn = std::min(z + dz, z_target);
        Vec s_try = s0;
        s_try[2] = zn;
        auto orb = newton_sym2(sys6, s_try, T);
        if (!orb) {
            dz *= 0.5;
            if (dz < z_target / 512.0) return std::nullopt;
            continue;
        }
        z = zn;
        s0 = orb->s0;
        T = orb->period;
    }
    return SymOrbit{s0, T};
}

// Fourier projection of the corrected orbit in the recast state. The time
// origin is shifted so the anchored coordinate is cos-like: a quarter period
// past the plane crossing, y reaches its extremum.
FourierCoeffs project_orbit_seed(const SystemDef& sys6, const SymOrbit& orb,
                                 double mu, int order_N, double offset_frac) {
    const double T = orb.period;
    auto traj = propagate(sys6, orb.s0, 0.0, T, 1e-12);
    HarmonicBasis basis(order_N, 2.0 * std::numbers::pi / T);
    const int M = 4 * basis.size();
    const auto grid = build_grid(basis, M);
    const auto ops = build_operators(basis, grid, 1);
    Mat samples(M, 8);
    for (int i = 0; i < M; ++i) {
        double t = offset_frac * T + grid.nodes[i];
        t -= T * std::floor(t / T);
        const Vec s = traj.eval(t);
        const double r1 = std::sqrt((s[0] + mu) * (s[0] + mu) + s[1] * s[1] +
                                    s[2] * s[2]);
        const double r2 = std::sqrt((s[0] - 1 + mu) * (s[0] - 1 + mu) +
                                    s[1] * s[1] + s[2] * s[2]);
        samples.row(i) << s[0], s[1], s[2], s[3], s[4], s[5], 1.0 / r1,
            1.0 / r2;
    }
    return FourierCoeffs(Mat((ops.E_plus * samples).transpose()));
}

// quality gate for a candidate family member: it must be a genuine orbit of
// the recast flow and stay on the consistency manifold
bool seed_ok(const SystemDef& sys, const FreeOmegaResult& r, int order_N,
             double mu) {
    if (!r.converged || r.omega < 0.5 || r.omega > 6.0) return false;
    HarmonicBasis basis(order_N, r.omega);
    auto met = verify_periodicity(sys, r.coeffs, basis);
    if (!(met.defect_rms < 1e-3 * met.field_scale)) return false;
    if (!(met.period_return_error < 2e-2)) return false;
    const double T = basis.period();
    for (int i = 0; i < 64; ++i) {
        const Vec s = eval_series(r.coeffs, basis, T * i / 64);
        const double r1sq = (s[0] + mu) * (s[0] + mu) + s[1] * s[1] +
                            s[2] * s[2];
        if (std::abs(s[6] * s[6] * r1sq - 1.0) > 1e-3) return false;
    }
    return true;
}

}  // namespace

std::optional<SweepSeed> family_seed(CRTBPFamily fam, const CRTBPParams& p,
                                     int order_N, const NewtonOptions& opt) {
    const auto m = libration_modes(p);
    auto sys = crtbp_recast(p);
    const PhaseAnchor anchor = family_anchor(fam);

    auto make = [&](const FreeOmegaResult& r, const char* label) {
        SweepSeed s;
        s.label = label;
        s.omega = r.omega;
        s.coeffs = r.coeffs;
        s.anchor = anchor;
        return s;
    };

    auto sys6 = crtbp_system(p);

    // run the pinned free-frequency Newton from an orbit projection and gate
    // the result
    auto refine = [&](const SymOrbit& orb, double offset_frac,
                      const char* label) -> std::optional<SweepSeed> {
        auto seed = project_orbit_seed(sys6, orb, p.mu, order_N, offset_frac);
        const double omega0 = 2.0 * std::numbers::pi / orb.period;
        const int pin_coord = anchor.coord;
        auto r = solve_free_omega(sys, order_N, omega0, seed, anchor,
                                  pin_coord, seed.c(pin_coord, 1), opt);
        if (!seed_ok(sys, r, order_N, p.mu)) return std::nullopt;
        return make(r, label);
    };

    switch (fam) {
        case CRTBPFamily::PlanarLyapunov: {
            const double Tg = 2.0 * std::numbers::pi / m.omega_planar;
            for (double ax : {0.02, 0.04, 0.06}) {
                Vec s0 = Vec::Zero(6);
                s0[0] = m.x_L + ax;
                s0[4] = -m.planar_ratio * ax * m.omega_planar;
                auto orb = correct_planar(sys6, s0, Tg);
                if (!orb) continue;
                if (auto s = refine(*orb, 0.25, "planar_lyapunov")) return s;
            }
            return std::nullopt;
        }
        case CRTBPFamily::VerticalLyapunov: {
            // start at the z extremum of the linear out-of-plane mode; the
            // in-plane response appears only at second order, so vy0 = 0 is
            // close enough for the doubly symmetric correction
            const double Tg = 2.0 * std::numbers::pi / m.omega_vertical;
            for (double az : {0.05, 0.1, 0.02}) {
                Vec s0 = Vec::Zero(6);
                s0[0] = m.x_L;
                s0[2] = az;
                auto orb = newton_vertical(sys6, s0, 0.25 * Tg);
                if (!orb) continue;
                if (auto s = refine(*orb, 0.0, "vertical_lyapunov")) return s;
            }
            return std::nullopt;
        }
        case CRTBPFamily::DRO: {
            for (double omega : {3.0, 2.5, 3.5}) {
                const double a =
                    std::cbrt(p.mu / ((omega - 1.0) * (omega - 1.0)));
                Vec s0 = Vec::Zero(6);
                s0[0] = 1.0 - p.mu + a;
                s0[4] = -a * omega;
                auto orb =
                    correct_planar(sys6, s0, 2.0 * std::numbers::pi / omega);
                if (!orb) continue;
                if (auto s = refine(*orb, 0.25, "dro")) return s;
            }
            return std::nullopt;
        }
        case CRTBPFamily::Halo: {
            // planar correction near the 1:1 bifurcation amplitude supplies
            // the in-plane guess; the fixed z0 then forces the 3D branch
            const double Tg = 2.0 * std::numbers::pi / m.omega_planar;
            for (double ax : {0.065, 0.08, 0.05}) {
                Vec sp = Vec::Zero(6);
                sp[0] = m.x_L + ax;
                sp[4] = -m.planar_ratio * ax * m.omega_planar;
                auto planar = correct_planar(sys6, sp, Tg);
                if (!planar) continue;
                for (double z0 : {0.1, 0.15, 0.06}) {
                    auto orb = correct_halo(sys6, *planar, z0);
                    if (!orb) continue;
                    if (std::abs(orb->s0[2]) < 1e-4) continue;
                    if (auto s = refine(*orb, 0.25, "halo")) return s;
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::vector<SweepSeed> crtbp_family_seeds(const CRTBPParams& p, int order_N,
                                          const NewtonOptions& opt) {
    std::vector<SweepSeed> seeds;
    for (auto fam : {CRTBPFamily::DRO, CRTBPFamily::VerticalLyapunov,
                     CRTBPFamily::PlanarLyapunov, CRTBPFamily::Halo}) {
        auto s = family_seed(fam, p, order_N, opt);
        if (s) seeds.push_back(std::move(*s));
    }
    return seeds;
}

}  // namespace rhb
