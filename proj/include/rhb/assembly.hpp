#pragma once

// Nonlinear algebraic residual systems: collocation form (RHB / HDHB / AFT /
// custom node count) and the exact frequency-domain HB form, with a shared
// finite-difference Jacobian.
//
// Unknowns are always the Fourier coefficients (dim x (2N+1), flattened per
// state dimension). Node values are substituted as x~ = E x^, which keeps the
// system square for every M. For autonomous systems one designated
// coefficient (the sin component of the first harmonic of an anchor
// coordinate) is pinned to zero and its balance row dropped, removing the
// phase-shift null direction.

#include <optional>

#include "rhb/spectral.hpp"
#include "rhb/systems.hpp"

namespace rhb {

enum class Mode { RHB, HDHB, AFT, CustomM };

struct MethodConfig {
    Mode mode = Mode::RHB;
    int order = 1;       // N
    int nodes = 0;       // M, resolved
    double omega = 1.0;
};

// Resolves M from the mode: RHB (phi+1)N+1, HDHB 2N+1, AFT 2 phi N + 1.
// custom_nodes is consulted only for Mode::CustomM.
MethodConfig make_method_config(Mode mode, int order_N, double omega,
                                int degree_phi, int custom_nodes = 0);

struct PhaseAnchor {
    int coord = 0;  // state dimension whose first-harmonic sin is pinned
};

class ResidualSystem {
  public:
    enum class Form { TimeDomain, Frequency };

    Form form() const { return form_; }
    const SystemDef& system() const { return sys_; }
    const HarmonicBasis& basis() const { return basis_; }
    const CollocationGrid& grid() const { return grid_; }
    const SpectralOperators& ops() const { return ops_; }
    const std::optional<PhaseAnchor>& anchor() const { return anchor_; }
    double omega() const { return basis_.omega; }
    int node_count() const { return grid_.count; }

    // number of unknowns: dim*(2N+1), minus one when anchored
    int unknown_count() const;

    // residual length: unknown_count() plus one row per system constraint
    // (consistency invariants of recast systems, enforced at t = 0). The
    // extended system is rectangular and solved in the least-squares sense.
    int residual_count() const;

    Vec residual(const Vec& unknowns) const;

    // packing between the reduced unknown vector and full coefficients
    // (the anchored coefficient is fixed at zero)
    FourierCoeffs unpack(const Vec& unknowns) const;
    Vec pack(const FourierCoeffs& coeffs) const;

    friend ResidualSystem build_time_domain_residual(
        const SystemDef&, const MethodConfig&, std::optional<PhaseAnchor>);
    friend ResidualSystem build_hb_residual(const SystemDef&,
                                            const HarmonicBasis&,
                                            std::optional<PhaseAnchor>);

  private:
    ResidualSystem() = default;

    int pinned_index() const;  // flat index of the anchored coefficient

    Form form_ = Form::TimeDomain;
    SystemDef sys_;
    HarmonicBasis basis_{1, 1.0};
    CollocationGrid grid_;
    SpectralOperators ops_;
    std::optional<PhaseAnchor> anchor_;
};

ResidualSystem build_time_domain_residual(
    const SystemDef& sys, const MethodConfig& cfg,
    std::optional<PhaseAnchor> anchor = std::nullopt);

ResidualSystem build_hb_residual(const SystemDef& sys,
                                 const HarmonicBasis& basis,
                                 std::optional<PhaseAnchor> anchor = std::nullopt);

// Central finite differences, step 1e-6 * max(1, |x_j|) per component.
// residual_count() x unknown_count(); square unless the system carries
// consistency constraints.
Mat jacobian(const ResidualSystem& res, const Vec& x);

}  // namespace rhb
