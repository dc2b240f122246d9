#pragma once

// Dynamical-system descriptors: Duffing, recast Rayleigh-Plesset, and the
// circular restricted three-body problem (plain and recast-polynomial forms).

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rhb/polynomial.hpp"

namespace rhb {

struct SystemDef {
    std::string name;
    int dim = 0;
    // (state, time, omega) -> state derivative
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double, double)> field;
    // one polynomial per state equation; empty for non-polynomial systems
    std::vector<Polynomial> poly;
    // polynomial invariants that select the consistency manifold of a recast
    // system (zero there, conserved by the flow). The assembly enforces them
    // at t = 0; without that, recast collocation solutions are non-isolated
    // because the constraints carry zero Floquet exponents.
    std::vector<Polynomial> constraints;
    int degree_phi = 0;  // 0 means non-polynomial
    bool autonomous = false;
    std::map<std::string, double> params;

    bool is_polynomial() const { return degree_phi > 0; }
};

struct DuffingParams {
    double c = 0.1;
    double k = 1.0;
    double F = 1.0;
    double omega = 2.0;
    // nonlinear monomials alpha_i * x^phi_i; effective phi = max phi_i
    std::vector<std::pair<double, int>> nonlinear = {{1.0, 3}};
};

// x1' = x2,  x2' = -c x2 - k x1 - sum alpha_i x1^phi_i + F sin(w t)
SystemDef duffing_system(const DuffingParams& p);

struct RayleighPlessetParams {
    // R Rdd = -3 Rd^2/2 - A Rd/R - B/R + C/R^3 + D - E cos(w t)
    // radius in micrometers, time in microseconds
    // defaults give a confining effective potential (D = 0, so the outward
    // static term vanishes and the well has no finite escape barrier) driven
    // hard enough that the response carries harmonics well past N = 40
    double A = 0.3;
    double B = 1.0;
    double C = 1.0;
    double D = 0.0;
    double E = 1.0;
    double omega = 2.0;
};

// Recast state (R, Rdot, u = 1/R); polynomial of degree 4.
SystemDef rayleigh_plesset_recast(const RayleighPlessetParams& p);

// Original non-polynomial form, used as the recast oracle in tests.
SystemDef rayleigh_plesset_system(const RayleighPlessetParams& p);

enum class LibrationPoint { L1, L2 };

struct CRTBPParams {
    double mu = 0.012150585609624;  // Earth-Moon default
    LibrationPoint point = LibrationPoint::L2;
};

// Rotating-frame x-coordinate of the collinear libration point, by bisection
// on the effective-potential gradient.
double libration_point_x(double mu, LibrationPoint which);

// Plain six-dimensional rotating-frame CRTBP (non-polynomial).
SystemDef crtbp_system(const CRTBPParams& p);

// Recast eight-dimensional polynomial form with u1 = 1/r1, u2 = 1/r2;
// degree 5.
SystemDef crtbp_recast(const CRTBPParams& p);

}  // namespace rhb
