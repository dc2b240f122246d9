#include "rhb/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhb {

namespace {

double splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return (z >> 11) * 0x1.0p-53;
}

bool same_cluster(const Vec& a, const Vec& b, double tol) {
    const double scale = std::max(
        1.0, std::max(a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()));
    return (a - b).lpNorm<Eigen::Infinity>() < tol * scale;
}

bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t index, double lo, double hi) {
    std::uint64_t s = seed * 0x9e3779b97f4a7c15ULL + trial * 0xd1342543de82ef95ULL +
                      index * 0x2545f4914f6cdd1dULL;
    const double u = splitmix64(s);
    return lo + (hi - lo) * u;
}

SolveReport newton_solve(const ResidualSystem& res, const FourierCoeffs& x0,
                         const NewtonOptions& opt) {
    SolveReport rep;
    Vec u = res.pack(x0);
    Vec r = res.residual(u);
    if (!r.allFinite())
        throw std::invalid_argument("newton_solve: residual not finite at x0");
    double rnorm = r.lpNorm<Eigen::Infinity>();
    rep.residual_history.push_back(rnorm);

    for (int it = 0; it < opt.max_iter; ++it) {
        if (rnorm <= opt.tol_residual) {
            rep.converged = true;
            break;
        }
        Mat J;
        try {
            J = jacobian(res, u);
        } catch (const std::exception&) {
            break;
        }
        // minimum-norm least-squares step: recast systems have exactly-zero
        // Floquet exponents along their consistency constraints, so the
        // Jacobian is rank-deficient at every solution and a plain LU step
        // would blow up along the null directions
        Eigen::CompleteOrthogonalDecomposition<Mat> cod;
        cod.setThreshold(1e-10);
        cod.compute(J);
        if (cod.rank() == 0) break;
        const Vec du = cod.solve(-r);
        if (!du.allFinite()) break;

        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
            const Vec u_try = u + lambda * du;
            const Vec r_try = res.residual(u_try);
            const double n_try =
                r_try.allFinite() ? r_try.lpNorm<Eigen::Infinity>()
                                  : std::numeric_limits<double>::infinity();
            if (n_try < rnorm) {
                u = u_try;
                r = r_try;
                rnorm = n_try;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;  // damping exhausted
        rep.iterations = it + 1;
        rep.residual_history.push_back(rnorm);
    }
    if (rnorm <= opt.tol_residual) rep.converged = true;
    rep.coeffs = res.unpack(u);
    return rep;
}

void classify(SolveReport& report, const SystemDef& sys,
              const HarmonicBasis& basis, const PhysicalityThresholds& thr) {
    auto m = verify_periodicity(sys, report.coeffs, basis);
    const bool physical = m.period_return_error < thr.return_tol &&
                          m.defect_rms < thr.defect_tol * m.field_scale;
    report.verification = m;
    report.classification =
        physical ? Classification::Physical : Classification::NonPhysical;
}

MultistartResult multistart(const ResidualSystem& res, double lo, double hi,
                            int trials, std::uint64_t seed,
                            const NewtonOptions& opt,
                            const PhysicalityThresholds& thr,
                            double cluster_tol) {
    if (trials < 1) throw std::invalid_argument("multistart: trials must be >= 1");
    MultistartResult out;
    const int n = res.unknown_count();

    for (int trial = 0; trial < trials; ++trial) {
        Vec u0(n);
        for (int j = 0; j < n; ++j)
            u0[j] = counter_uniform(seed, trial, j, lo, hi);
        SolveReport rep = newton_solve(res, res.unpack(u0), opt);
        if (!rep.converged) {
            ++out.non_converged;
            continue;
        }
        const Vec key = res.pack(rep.coeffs);
        bool merged = false;
        for (auto& cl : out.clusters) {
            if (same_cluster(key, res.pack(cl.representative.coeffs),
                             cluster_tol)) {
                ++cl.hits;
                // keep the deterministically smallest residual as representative
                if (rep.residual_history.back() <
                    cl.representative.residual_history.back())
                    cl.representative = rep;
                merged = true;
                break;
            }
        }
        if (!merged) out.clusters.push_back({rep, 1});
    }

    for (auto& cl : out.clusters)
        classify(cl.representative, res.system(), res.basis(), thr);
    std::sort(out.clusters.begin(), out.clusters.end(),
              [&](const auto& a, const auto& b) {
                  return lex_less(res.pack(a.representative.coeffs),
                                  res.pack(b.representative.coeffs));
              });
    return out;
}

Vec peak_amplitudes(const FourierCoeffs& coeffs, const HarmonicBasis& basis,
                    int samples) {
    Vec amp = Vec::Zero(coeffs.dim());
    const double T = basis.period();
    for (int i = 0; i < samples; ++i) {
        const Vec x = eval_series(coeffs, basis, T * i / samples);
        amp = amp.cwiseMax(x.cwiseAbs());
    }
    return amp;
}

namespace {

std::optional<BranchPoint> solve_point(const SystemDef& sys, Mode mode,
                                       int order_N, int custom_nodes,
                                       double omega,
                                       const FourierCoeffs& predictor,
                                       const std::optional<PhaseAnchor>& anchor,
                                       const NewtonOptions& opt) {
    auto cfg = make_method_config(mode, order_N, omega, sys.degree_phi,
                                  custom_nodes);
    auto res = build_time_domain_residual(sys, cfg, anchor);
    SolveReport rep;
    try {
        rep = newton_solve(res, predictor, opt);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!rep.converged) return std::nullopt;
    BranchPoint pt;
    pt.omega = omega;
    pt.coeffs = rep.coeffs;
    pt.amplitude = peak_amplitudes(rep.coeffs, res.basis());
    return pt;
}

// true if candidate branch duplicates an already collected one
bool duplicates(const Branch& cand, const std::vector<Branch>& kept) {
    if (cand.points.empty()) return false;
    for (const auto& other : kept) {
        int shared = 0, matched = 0;
        for (const auto& p : cand.points) {
            for (const auto& q : other.points) {
                if (std::abs(p.omega - q.omega) < 1e-9) {
                    ++shared;
                    if (same_cluster(
                            Vec(p.coeffs.c.reshaped()),
                            Vec(q.coeffs.c.reshaped()), 1e-4))
                        ++matched;
                    break;
                }
            }
        }
        if (shared > 0 && matched * 5 >= shared * 4) return true;
    }
    return false;
}

}  // namespace

std::vector<Branch> frequency_sweep(const SystemDef& sys, Mode mode, int order_N,
                                    int custom_nodes, double omega_lo,
                                    double omega_hi, double step,
                                    const std::vector<SweepSeed>& seeds,
                                    const NewtonOptions& opt) {
    if (!(omega_lo < omega_hi) || !(step > 0.0))
        throw std::invalid_argument("frequency_sweep: bad range or step");

    std::vector<Branch> branches;
    for (const auto& seed : seeds) {
        Branch br;
        br.label = seed.label;

        auto first = solve_point(sys, mode, order_N, custom_nodes, seed.omega,
                                 seed.coeffs, seed.anchor, opt);
        if (!first) {
            branches.push_back(std::move(br));  // empty branch: seed failed
            continue;
        }

        std::vector<BranchPoint> down, up;
        for (int dir = 0; dir < 2; ++dir) {
            const double sgn = dir == 0 ? 1.0 : -1.0;
            auto& side = dir == 0 ? up : down;
            FourierCoeffs pred = first->coeffs;
            double omega = first->omega;
            double h = step;
            int halvings = 0;
            while (true) {
                double next = omega + sgn * h;
                if (next > omega_hi + 1e-12 || next < omega_lo - 1e-12) break;
                auto pt = solve_point(sys, mode, order_N, custom_nodes, next,
                                      pred, seed.anchor, opt);
                if (!pt) {
                    if (++halvings > 4) break;  // fold indication
                    h *= 0.5;
                    continue;
                }
                omega = next;
                pred = pt->coeffs;
                side.push_back(std::move(*pt));
                h = step;
                halvings = 0;
            }
        }
        std::reverse(down.begin(), down.end());
        br.points = std::move(down);
        br.points.push_back(std::move(*first));
        br.points.insert(br.points.end(), up.begin(), up.end());

        if (!duplicates(br, branches)) branches.push_back(std::move(br));
    }
    return branches;
}

}  // namespace rhb
