#pragma once

// Root-finding and exploration drivers: damped Newton, Monte-Carlo multistart
// with clustering and physicality classification, natural-parameter frequency
// sweeping.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rhb/assembly.hpp"
#include "rhb/integrate.hpp"

namespace rhb {

struct NewtonOptions {
    double tol_residual = 1e-12;  // infinity norm
    int max_iter = 100;
    int max_backtracks = 20;  // halvings, accepting any residual decrease
};

enum class Classification { Physical, NonPhysical, Unverified };

struct SolveReport {
    bool converged = false;
    FourierCoeffs coeffs;
    std::vector<double> residual_history;  // infinity norm per iteration
    int iterations = 0;
    std::optional<PeriodicityMetrics> verification;
    Classification classification = Classification::Unverified;
};

SolveReport newton_solve(const ResidualSystem& res, const FourierCoeffs& x0,
                         const NewtonOptions& opt = {});

struct PhysicalityThresholds {
    double return_tol = 1e-3;  // relative period-return error
    double defect_tol = 1e-2;  // defect RMS relative to field scale
};

// Runs the integration check and fills verification + classification.
void classify(SolveReport& report, const SystemDef& sys,
              const HarmonicBasis& basis,
              const PhysicalityThresholds& thr = {});

struct MultistartResult {
    struct Cluster {
        SolveReport representative;
        int hits = 0;
    };
    std::vector<Cluster> clusters;  // sorted by representative coefficients
    int non_converged = 0;
};

// trials uniform random initial coefficient vectors from [lo, hi], one
// counter-based RNG stream per trial (deterministic for a fixed seed).
MultistartResult multistart(const ResidualSystem& res, double lo, double hi,
                            int trials, std::uint64_t seed,
                            const NewtonOptions& opt = {},
                            const PhysicalityThresholds& thr = {},
                            double cluster_tol = 1e-6);

struct BranchPoint {
    double omega = 0.0;
    FourierCoeffs coeffs;
    Vec amplitude;  // peak |x_k(t)| per coordinate, 1024 dense samples
};

struct Branch {
    std::string label;
    std::vector<BranchPoint> points;  // sorted by omega
};

struct SweepSeed {
    std::string label;
    double omega = 0.0;
    FourierCoeffs coeffs;
    std::optional<PhaseAnchor> anchor;
};

// Natural-parameter continuation in omega, upward and downward from each
// seed, previous solution as predictor; a direction ends when Newton fails
// after 4 step-halvings. Near-duplicate branches are dropped.
std::vector<Branch> frequency_sweep(const SystemDef& sys, Mode mode, int order_N,
                                    int custom_nodes, double omega_lo,
                                    double omega_hi, double step,
                                    const std::vector<SweepSeed>& seeds,
                                    const NewtonOptions& opt = {});

Vec peak_amplitudes(const FourierCoeffs& coeffs, const HarmonicBasis& basis,
                    int samples = 1024);

// Deterministic counter-based uniform double in [lo, hi).
double counter_uniform(std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t index, double lo, double hi);

}  // namespace rhb
