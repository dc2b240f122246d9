#pragma once

// Seed construction for the periodic-orbit families near a collinear
// libration point: linearized Lyapunov modes, a retrograde Kepler circle for
// distant retrograde orbits, and a continuation-based halo starter. All seeds
// are expressed in the recast eight-dimensional polynomial state.

#include <optional>
#include <vector>

#include "rhb/solvers.hpp"
#include "rhb/systems.hpp"

namespace rhb {

// Linearization data at the libration point.
struct LibrationModes {
    double x_L;            // equilibrium x-coordinate
    double c2;             // second-order potential coefficient
    double omega_planar;   // in-plane center frequency
    double omega_vertical; // out-of-plane frequency, sqrt(c2)
    double planar_ratio;   // y/x amplitude ratio of the planar mode
};

LibrationModes libration_modes(const CRTBPParams& p);

enum class CRTBPFamily { PlanarLyapunov, VerticalLyapunov, Halo, DRO };

// Which coordinate's first-harmonic sin component is pinned for the family:
// z for the vertical Lyapunov family, y otherwise.
PhaseAnchor family_anchor(CRTBPFamily fam);

// Fourier coefficients (recast state, order N) of the closed-form
// approximation used to start Newton: the linearized mode for the Lyapunov
// families, a moon-centered retrograde circle for the DRO, and the planar
// mode with a z-component bolted on for the halo. Phases are chosen so the
// family's anchored sin coefficient is already zero.
FourierCoeffs approximate_family_coeffs(CRTBPFamily fam, const CRTBPParams& p,
                                        int order_N, double omega,
                                        double amplitude,
                                        double z_amplitude = 0.0);

// Free-frequency Newton for autonomous families: the first-harmonic cos
// component of pin_coord is held at pin_value, omega becomes an unknown.
// Fixed-omega solves are ill-conditioned near the linear limit of a family
// (the amplitude direction has a singular value ~ amplitude^2); pinning the
// amplitude instead keeps the system well-posed at every amplitude.
struct FreeOmegaResult {
    bool converged = false;
    double omega = 0.0;
    FourierCoeffs coeffs;
    double residual = 0.0;
};

FreeOmegaResult solve_free_omega(const SystemDef& sys, int order_N,
                                 double omega0, const FourierCoeffs& x0,
                                 const PhaseAnchor& anchor, int pin_coord,
                                 double pin_value,
                                 const NewtonOptions& opt = {});

// A converged member of one family at order N (RHB node count), found by
// ramping the seed amplitude and, for the halo, continuing the planar branch
// before switching on the out-of-plane component. Empty when no ladder entry
// converges to a non-trivial orbit.
std::optional<SweepSeed> family_seed(CRTBPFamily fam, const CRTBPParams& p,
                                     int order_N,
                                     const NewtonOptions& opt = {});

// Seeds for all four families (the ones that could be established).
std::vector<SweepSeed> crtbp_family_seeds(const CRTBPParams& p, int order_N,
                                          const NewtonOptions& opt = {});

}  // namespace rhb
