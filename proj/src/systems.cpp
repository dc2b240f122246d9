#include "rhb/systems.hpp"

#include <cmath>
#include <stdexcept>

namespace rhb {

namespace {

// field closure over a polynomial vector field
std::function<Eigen::VectorXd(const Eigen::VectorXd&, double, double)>
poly_field(std::vector<Polynomial> polys) {
    return [polys = std::move(polys)](const Eigen::VectorXd& x, double t,
                                      double omega) {
        Eigen::VectorXd dx(polys.size());
        for (size_t i = 0; i < polys.size(); ++i) dx[i] = polys[i].eval(x, t, omega);
        return dx;
    };
}

}  // namespace

SystemDef duffing_system(const DuffingParams& p) {
    SystemDef sys;
    sys.name = "duffing";
    sys.dim = 2;
    sys.autonomous = false;
    sys.params = {{"c", p.c}, {"k", p.k}, {"F", p.F}, {"omega", p.omega}};

    int phi = 1;
    Polynomial eq1(2), eq2(2);
    eq1.add(1.0, {0, 1});
    eq2.add(-p.c, {0, 1});
    eq2.add(-p.k, {1, 0});
    for (size_t i = 0; i < p.nonlinear.size(); ++i) {
        const auto& [alpha, deg] = p.nonlinear[i];
        if (deg < 2) throw std::invalid_argument("duffing_system: phi_i must be >= 2");
        eq2.add(-alpha, {deg, 0});
        phi = std::max(phi, deg);
        sys.params["alpha" + std::to_string(i)] = alpha;
        sys.params["phi" + std::to_string(i)] = deg;
    }
    if (p.F != 0.0) eq2.add(p.F, {0, 0}, 0, 1);

    sys.poly = {std::move(eq1), std::move(eq2)};
    sys.degree_phi = phi;
    sys.field = poly_field(sys.poly);
    return sys;
}

SystemDef rayleigh_plesset_recast(const RayleighPlessetParams& p) {
    SystemDef sys;
    sys.name = "rayleigh_plesset_recast";
    sys.dim = 3;  // (R, Rdot, u = 1/R)
    sys.autonomous = false;
    sys.params = {{"A", p.A}, {"B", p.B}, {"C", p.C},
                  {"D", p.D}, {"E", p.E}, {"omega", p.omega}};

    Polynomial eq1(3), eq2(3), eq3(3);
    eq1.add(1.0, {0, 1, 0});
    // Rdd = u (-3 Rd^2/2 - A Rd u - B u + C u^3 + D - E cos(w t))
    eq2.add(-1.5, {0, 2, 1});
    eq2.add(-p.A, {0, 1, 2});
    eq2.add(-p.B, {0, 0, 2});
    eq2.add(p.C, {0, 0, 4});
    eq2.add(p.D, {0, 0, 1});
    eq2.add(-p.E, {0, 0, 1}, 1, 0);
    // u' = -Rd u^2
    eq3.add(-1.0, {0, 1, 2});

    sys.poly = {std::move(eq1), std::move(eq2), std::move(eq3)};
    sys.degree_phi = 4;
    sys.field = poly_field(sys.poly);

    Polynomial g(3);  // R u - 1 = 0 on the consistency manifold
    g.add(1.0, {1, 0, 1});
    g.add(-1.0, {0, 0, 0});
    sys.constraints = {std::move(g)};
    return sys;
}

SystemDef rayleigh_plesset_system(const RayleighPlessetParams& p) {
    SystemDef sys;
    sys.name = "rayleigh_plesset";
    sys.dim = 2;
    sys.autonomous = false;
    sys.params = {{"A", p.A}, {"B", p.B}, {"C", p.C},
                  {"D", p.D}, {"E", p.E}, {"omega", p.omega}};
    sys.field = [p](const Eigen::VectorXd& x, double t, double omega) {
        const double R = x[0], Rd = x[1];
        Eigen::VectorXd dx(2);
        dx[0] = Rd;
        dx[1] = (-1.5 * Rd * Rd - p.A * Rd / R - p.B / R + p.C / (R * R * R) +
                 p.D - p.E * std::cos(omega * t)) /
                R;
        return dx;
    };
    return sys;
}

double libration_point_x(double mu, LibrationPoint which) {
    if (!(mu > 0.0) || !(mu < 0.5))
        throw std::invalid_argument("libration_point_x: mu must be in (0, 1/2)");
    // gradient of the effective potential along the x-axis (y = z = 0)
    auto g = [mu](double x) {
        const double d1 = x + mu;        // to primary at -mu
        const double d2 = x - 1.0 + mu;  // to secondary at 1-mu
        return x - (1.0 - mu) * d1 / std::pow(std::abs(d1), 3) -
               mu * d2 / std::pow(std::abs(d2), 3);
    };
    double lo, hi;
    if (which == LibrationPoint::L2) {
        lo = 1.0 - mu + 1e-9;
        hi = 2.5;
    } else {
        lo = -mu + 1e-9;
        hi = 1.0 - mu - 1e-9;
    }
    double glo = g(lo), ghi = g(hi);
    if (glo * ghi > 0.0)
        throw std::runtime_error("libration_point_x: no root bracketed");
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (glo * gm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    return 0.5 * (lo + hi);
}

SystemDef crtbp_system(const CRTBPParams& p) {
    SystemDef sys;
    sys.name = "crtbp";
    sys.dim = 6;
    sys.autonomous = true;
    sys.params = {{"mu", p.mu}};
    const double mu = p.mu;
    sys.field = [mu](const Eigen::VectorXd& s, double, double) {
        const double x = s[0], y = s[1], z = s[2];
        const double vx = s[3], vy = s[4], vz = s[5];
        const double r1 = std::sqrt((x + mu) * (x + mu) + y * y + z * z);
        const double r2 =
            std::sqrt((x - 1 + mu) * (x - 1 + mu) + y * y + z * z);
        const double c1 = (1.0 - mu) / (r1 * r1 * r1);
        const double c2 = mu / (r2 * r2 * r2);
        Eigen::VectorXd dx(6);
        dx[0] = vx;
        dx[1] = vy;
        dx[2] = vz;
        dx[3] = 2.0 * vy + x - c1 * (x + mu) - c2 * (x - 1 + mu);
        dx[4] = -2.0 * vx + y - c1 * y - c2 * y;
        dx[5] = -c1 * z - c2 * z;
        return dx;
    };
    return sys;
}

SystemDef crtbp_recast(const CRTBPParams& p) {
    SystemDef sys;
    sys.name = "crtbp_recast";
    sys.dim = 8;  // (x, y, z, vx, vy, vz, u1 = 1/r1, u2 = 1/r2)
    sys.autonomous = true;
    sys.params = {{"mu", p.mu}};
    const double mu = p.mu;
    const double m1 = 1.0 - mu;

    // index helper for readability of exponent vectors
    auto mono = [](int x = 0, int y = 0, int z = 0, int vx = 0, int vy = 0,
                   int vz = 0, int u1 = 0, int u2 = 0) {
        return std::vector<int>{x, y, z, vx, vy, vz, u1, u2};
    };

    Polynomial ex(8), ey(8), ez(8), evx(8), evy(8), evz(8), eu1(8), eu2(8);
    ex.add(1.0, mono(0, 0, 0, 1));
    ey.add(1.0, mono(0, 0, 0, 0, 1));
    ez.add(1.0, mono(0, 0, 0, 0, 0, 1));

    // vx' = 2 vy + x - (1-mu)(x+mu) u1^3 - mu (x-1+mu) u2^3
    evx.add(2.0, mono(0, 0, 0, 0, 1));
    evx.add(1.0, mono(1));
    evx.add(-m1, mono(1, 0, 0, 0, 0, 0, 3));
    evx.add(-m1 * mu, mono(0, 0, 0, 0, 0, 0, 3));
    evx.add(-mu, mono(1, 0, 0, 0, 0, 0, 0, 3));
    evx.add(-mu * (mu - 1.0), mono(0, 0, 0, 0, 0, 0, 0, 3));
    // vy' = -2 vx + y - (1-mu) y u1^3 - mu y u2^3
    evy.add(-2.0, mono(0, 0, 0, 1));
    evy.add(1.0, mono(0, 1));
    evy.add(-m1, mono(0, 1, 0, 0, 0, 0, 3));
    evy.add(-mu, mono(0, 1, 0, 0, 0, 0, 0, 3));
    // vz' = -(1-mu) z u1^3 - mu z u2^3
    evz.add(-m1, mono(0, 0, 1, 0, 0, 0, 3));
    evz.add(-mu, mono(0, 0, 1, 0, 0, 0, 0, 3));
    // u1' = -u1^3 ((x+mu) vx + y vy + z vz)
    eu1.add(-1.0, mono(1, 0, 0, 1, 0, 0, 3));
    eu1.add(-mu, mono(0, 0, 0, 1, 0, 0, 3));
    eu1.add(-1.0, mono(0, 1, 0, 0, 1, 0, 3));
    eu1.add(-1.0, mono(0, 0, 1, 0, 0, 1, 3));
    // u2' = -u2^3 ((x-1+mu) vx + y vy + z vz)
    eu2.add(-1.0, mono(1, 0, 0, 1, 0, 0, 0, 3));
    eu2.add(-(mu - 1.0), mono(0, 0, 0, 1, 0, 0, 0, 3));
    eu2.add(-1.0, mono(0, 1, 0, 0, 1, 0, 0, 3));
    eu2.add(-1.0, mono(0, 0, 1, 0, 0, 1, 0, 3));

    sys.poly = {std::move(ex),  std::move(ey),  std::move(ez),  std::move(evx),
                std::move(evy), std::move(evz), std::move(eu1), std::move(eu2)};
    sys.degree_phi = 5;
    sys.field = poly_field(sys.poly);

    // consistency manifold: u_i^2 r_i^2 - 1 = 0
    Polynomial g1(8), g2(8);
    g1.add(1.0, mono(2, 0, 0, 0, 0, 0, 2));
    g1.add(2.0 * mu, mono(1, 0, 0, 0, 0, 0, 2));
    g1.add(mu * mu, mono(0, 0, 0, 0, 0, 0, 2));
    g1.add(1.0, mono(0, 2, 0, 0, 0, 0, 2));
    g1.add(1.0, mono(0, 0, 2, 0, 0, 0, 2));
    g1.add(-1.0, mono());
    g2.add(1.0, mono(2, 0, 0, 0, 0, 0, 0, 2));
    g2.add(2.0 * (mu - 1.0), mono(1, 0, 0, 0, 0, 0, 0, 2));
    g2.add((mu - 1.0) * (mu - 1.0), mono(0, 0, 0, 0, 0, 0, 0, 2));
    g2.add(1.0, mono(0, 2, 0, 0, 0, 0, 0, 2));
    g2.add(1.0, mono(0, 0, 2, 0, 0, 0, 0, 2));
    g2.add(-1.0, mono());
    sys.constraints = {std::move(g1), std::move(g2)};
    return sys;
}

}  // namespace rhb
