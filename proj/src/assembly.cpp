#include "rhb/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace rhb {

MethodConfig make_method_config(Mode mode, int order_N, double omega,
                                int degree_phi, int custom_nodes) {
    if (order_N < 1) throw std::invalid_argument("make_method_config: N must be >= 1");
    MethodConfig cfg;
    cfg.mode = mode;
    cfg.order = order_N;
    cfg.omega = omega;
    switch (mode) {
        case Mode::HDHB:
            cfg.nodes = 2 * order_N + 1;
            break;
        case Mode::RHB:
            if (degree_phi < 1)
                throw std::invalid_argument(
                    "make_method_config: RHB needs a finite polynomial degree; "
                    "recast the system or use CustomM");
            cfg.nodes = (degree_phi + 1) * order_N + 1;
            break;
        case Mode::AFT:
            if (degree_phi < 1)
                throw std::invalid_argument(
                    "make_method_config: AFT needs a finite polynomial degree; "
                    "recast the system or use CustomM");
            cfg.nodes = 2 * degree_phi * order_N + 1;
            break;
        case Mode::CustomM:
            if (custom_nodes < 2 * order_N + 1)
                throw std::invalid_argument(
                    "make_method_config: CustomM requires M >= 2N+1");
            cfg.nodes = custom_nodes;
            break;
    }
    return cfg;
}

int ResidualSystem::unknown_count() const {
    return sys_.dim * basis_.size() - (anchor_ ? 1 : 0);
}

int ResidualSystem::residual_count() const {
    return unknown_count() + static_cast<int>(sys_.constraints.size());
}

int ResidualSystem::pinned_index() const {
    // sin component of the first harmonic of the anchor coordinate
    return anchor_->coord * basis_.size() + 2;
}

FourierCoeffs ResidualSystem::unpack(const Vec& unknowns) const {
    if (static_cast<int>(unknowns.size()) != unknown_count())
        throw std::invalid_argument("ResidualSystem::unpack: size mismatch");
    FourierCoeffs out(sys_.dim, basis_.order);
    const int cols = basis_.size();
    if (!anchor_) {
        for (int d = 0; d < sys_.dim; ++d)
            out.c.row(d) = unknowns.segment(d * cols, cols).transpose();
        return out;
    }
    const int pin = pinned_index();
    int src = 0;
    for (int d = 0; d < sys_.dim; ++d)
        for (int j = 0; j < cols; ++j) {
            const int flat = d * cols + j;
            out.c(d, j) = flat == pin ? 0.0 : unknowns[src++];
        }
    return out;
}

Vec ResidualSystem::pack(const FourierCoeffs& coeffs) const {
    if (coeffs.dim() != sys_.dim || coeffs.order() != basis_.order)
        throw std::invalid_argument("ResidualSystem::pack: shape mismatch");
    const int cols = basis_.size();
    Vec out(unknown_count());
    if (!anchor_) {
        for (int d = 0; d < sys_.dim; ++d)
            out.segment(d * cols, cols) = coeffs.c.row(d).transpose();
        return out;
    }
    const int pin = pinned_index();
    int dst = 0;
    for (int d = 0; d < sys_.dim; ++d)
        for (int j = 0; j < cols; ++j) {
            const int flat = d * cols + j;
            if (flat != pin) out[dst++] = coeffs.c(d, j);
        }
    return out;
}

Vec ResidualSystem::residual(const Vec& unknowns) const {
    const FourierCoeffs x = unpack(unknowns);
    const int cols = basis_.size();
    Mat balance(sys_.dim, cols);  // per-dimension  w A x^ - projected rhs

    if (form_ == Form::TimeDomain) {
        // states at the nodes: M x dim
        const Mat nodes_states = ops_.E * x.c.transpose();
        Mat f_nodes(grid_.count, sys_.dim);
        for (int i = 0; i < grid_.count; ++i)
            f_nodes.row(i) =
                sys_.field(nodes_states.row(i).transpose(), grid_.nodes[i],
                           basis_.omega)
                    .transpose();
        const Mat projected = ops_.E_plus * f_nodes;  // (2N+1) x dim
        for (int d = 0; d < sys_.dim; ++d)
            balance.row(d) = (basis_.omega * ops_.A * x.c.row(d).transpose() -
                              projected.col(d))
                                 .transpose();
    } else {
        for (int d = 0; d < sys_.dim; ++d) {
            const auto h =
                exact_poly_harmonics(x, sys_.poly[d], basis_, sys_.degree_phi);
            balance.row(d) =
                (basis_.omega * ops_.A * x.c.row(d).transpose() - h.low)
                    .transpose();
        }
    }

    Vec out(residual_count());
    int dst = 0;
    if (!anchor_) {
        for (int d = 0; d < sys_.dim; ++d)
            out.segment(d * cols, cols) = balance.row(d).transpose();
        dst = sys_.dim * cols;
    } else {
        const int pin = pinned_index();
        for (int d = 0; d < sys_.dim; ++d)
            for (int j = 0; j < cols; ++j)
                if (d * cols + j != pin) out[dst++] = balance(d, j);
    }
    if (!sys_.constraints.empty()) {
        const Vec x0 = eval_series(x, basis_, 0.0);
        for (const auto& g : sys_.constraints)
            out[dst++] = g.eval(x0, 0.0, basis_.omega);
    }
    return out;
}

ResidualSystem build_time_domain_residual(const SystemDef& sys,
                                          const MethodConfig& cfg,
                                          std::optional<PhaseAnchor> anchor) {
    if (!sys.is_polynomial() && (cfg.mode == Mode::RHB || cfg.mode == Mode::AFT))
        throw std::invalid_argument(
            "build_time_domain_residual: non-polynomial system has no degree "
            "phi; recast it or use CustomM");
    if (anchor && (anchor->coord < 0 || anchor->coord >= sys.dim))
        throw std::invalid_argument("build_time_domain_residual: bad anchor");
    ResidualSystem res;
    res.form_ = ResidualSystem::Form::TimeDomain;
    res.sys_ = sys;
    res.basis_ = HarmonicBasis(cfg.order, cfg.omega);
    res.grid_ = build_grid(res.basis_, cfg.nodes);
    res.ops_ = build_operators(res.basis_, res.grid_,
                               std::max(sys.degree_phi, 1));
    res.anchor_ = anchor;
    return res;
}

ResidualSystem build_hb_residual(const SystemDef& sys,
                                 const HarmonicBasis& basis,
                                 std::optional<PhaseAnchor> anchor) {
    if (!sys.is_polynomial())
        throw std::invalid_argument(
            "build_hb_residual: exact HB needs a polynomial system");
    if (anchor && (anchor->coord < 0 || anchor->coord >= sys.dim))
        throw std::invalid_argument("build_hb_residual: bad anchor");
    ResidualSystem res;
    res.form_ = ResidualSystem::Form::Frequency;
    res.sys_ = sys;
    res.basis_ = basis;
    res.grid_ = build_grid(basis, (sys.degree_phi + 1) * basis.order + 1);
    res.ops_ = build_operators(basis, res.grid_, sys.degree_phi);
    res.anchor_ = anchor;
    return res;
}

Mat jacobian(const ResidualSystem& res, const Vec& x) {
    const int n = static_cast<int>(x.size());
    Mat J(res.residual_count(), n);
    Vec xp = x;
    for (int j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        const Vec rp = res.residual(xp);
        xp[j] = x[j] - h;
        const Vec rm = res.residual(xp);
        xp[j] = x[j];
        if (!rp.allFinite() || !rm.allFinite())
            throw std::runtime_error("jacobian: residual not finite at perturbed point");
        J.col(j) = (rp - rm) / (2.0 * h);
    }
    return J;
}

}  // namespace rhb
