#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "rhb/crtbp_seeds.hpp"
#include "rhb/integrate.hpp"
#include "rhb/systems.hpp"

using namespace rhb;

TEST_CASE("libration modes: Earth-Moon L2") {
    CRTBPParams p;
    const auto m = libration_modes(p);

    // equilibrium: the unrecast field vanishes there
    auto sys6 = crtbp_system(p);
    Vec eq = Vec::Zero(6);
    eq[0] = m.x_L;
    CHECK(sys6.field(eq, 0.0, 0.0).lpNorm<Eigen::Infinity>() < 1e-11);

    CHECK(m.x_L == doctest::Approx(1.155682165445).epsilon(1e-9));
    CHECK(m.c2 == doctest::Approx(3.190425213434).epsilon(1e-9));
    CHECK(m.omega_planar == doctest::Approx(1.862645862176).epsilon(1e-9));
    CHECK(m.omega_vertical == doctest::Approx(std::sqrt(m.c2)).epsilon(1e-14));
    CHECK(m.planar_ratio == doctest::Approx(2.912604122738).epsilon(1e-9));
}

TEST_CASE("family anchor coordinates") {
    CHECK(family_anchor(CRTBPFamily::PlanarLyapunov).coord == 1);
    CHECK(family_anchor(CRTBPFamily::Halo).coord == 1);
    CHECK(family_anchor(CRTBPFamily::DRO).coord == 1);
    CHECK(family_anchor(CRTBPFamily::VerticalLyapunov).coord == 2);
}

TEST_CASE("approximate family coefficients: structure and anchoring") {
    CRTBPParams p;
    const auto m = libration_modes(p);
    const int N = 6;

    SUBCASE("vertical mode") {
        auto c = approximate_family_coeffs(CRTBPFamily::VerticalLyapunov, p, N,
                                           m.omega_vertical, 0.05);
        CHECK(c.dim() == 8);
        CHECK(c.c(2, 1) == doctest::Approx(0.05).epsilon(1e-10));
        CHECK(std::abs(c.c(2, 2)) < 1e-12);  // anchored sin component
        CHECK(c.c(0, 0) == doctest::Approx(m.x_L).epsilon(1e-6));
        CHECK(c.c(1, 0) == doctest::Approx(0.0).epsilon(1e-10));
    }

    SUBCASE("planar mode is anchored in y") {
        auto c = approximate_family_coeffs(CRTBPFamily::PlanarLyapunov, p, N,
                                           m.omega_planar, 0.02);
        CHECK(std::abs(c.c(1, 2)) < 1e-12);
        CHECK(c.c(1, 1) ==
              doctest::Approx(m.planar_ratio * 0.02).epsilon(1e-8));
        CHECK(c.c(0, 2) == doctest::Approx(0.02).epsilon(1e-8));
        CHECK(c.c.row(2).lpNorm<Eigen::Infinity>() < 1e-12);
    }

    SUBCASE("dro circle is centered on the secondary") {
        auto c = approximate_family_coeffs(CRTBPFamily::DRO, p, N, 3.0, 0.1);
        CHECK(c.c(0, 0) == doctest::Approx(1.0 - p.mu).epsilon(1e-6));
        CHECK(c.c(1, 1) == doctest::Approx(0.1).epsilon(1e-8));
        // u2 = 1/r2 is constant on the circle
        CHECK(c.c(7, 0) == doctest::Approx(10.0).epsilon(1e-6));
        CHECK(c.c.row(7).tail(2 * N).lpNorm<Eigen::Infinity>() < 1e-6);
    }
}

namespace {

// x'' = -k x as an autonomous first-order system; every amplitude is
// periodic with the same frequency sqrt(k), so the pinned free-frequency
// solve has an exact reference
SystemDef oscillator_system(double k) {
    SystemDef sys;
    sys.name = "oscillator";
    sys.dim = 2;
    sys.autonomous = true;
    Polynomial e1(2), e2(2);
    e1.add(1.0, {0, 1});
    e2.add(-k, {1, 0});
    sys.poly = {e1, e2};
    sys.degree_phi = 1;
    sys.field = [k](const Vec& x, double, double) {
        Vec dx(2);
        dx << x[1], -k * x[0];
        return dx;
    };
    return sys;
}

}  // namespace

TEST_CASE("solve_free_omega recovers the oscillator frequency") {
    const double k = 2.3;
    auto sys = oscillator_system(k);
    const int N = 4;
    const double a = 0.7;

    // deliberately wrong frequency in the starting guess
    FourierCoeffs x0(2, N);
    x0.c(0, 1) = a;
    x0.c(1, 2) = -a * 1.4;

    auto r = solve_free_omega(sys, N, 1.4, x0, PhaseAnchor{0}, 0, a);
    REQUIRE(r.converged);
    CHECK(r.omega == doctest::Approx(std::sqrt(k)).epsilon(1e-10));
    CHECK(r.coeffs.c(0, 1) == doctest::Approx(a).epsilon(1e-12));
    // nothing but the first harmonic survives
    FourierCoeffs pure(2, N);
    pure.c(0, 1) = a;
    pure.c(1, 2) = -a * std::sqrt(k);
    CHECK((r.coeffs.c - pure.c).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("family seeds converge to genuine orbits" * doctest::timeout(300)) {
    CRTBPParams p;
    auto sys = crtbp_recast(p);
    const int N = 12;

    // frequencies frozen from the differential-correction oracle
    struct Expect {
        CRTBPFamily fam;
        const char* label;
        double omega;
    };
    const Expect table[] = {
        {CRTBPFamily::DRO, "dro", 2.6900795302},
        {CRTBPFamily::VerticalLyapunov, "vertical_lyapunov", 1.7802015642},
        {CRTBPFamily::PlanarLyapunov, "planar_lyapunov", 1.8499398247},
        {CRTBPFamily::Halo, "halo", 1.8882797606},
    };

    for (const auto& e : table) {
        CAPTURE(e.label);
        auto s = family_seed(e.fam, p, N);
        REQUIRE(s.has_value());
        CHECK(s->label == e.label);
        CHECK(s->omega == doctest::Approx(e.omega).epsilon(1e-6));
        REQUIRE(s->anchor.has_value());
        CHECK(std::abs(s->coeffs.c(s->anchor->coord, 2)) < 1e-12);

        HarmonicBasis basis(N, s->omega);
        auto met = verify_periodicity(sys, s->coeffs, basis);
        CHECK(met.defect_rms < 1e-3 * met.field_scale);
        CHECK(met.period_return_error < 2e-2);

        // the recast coordinates stay on the consistency manifold
        for (int i = 0; i < 32; ++i) {
            const Vec st = eval_series(s->coeffs, basis, basis.period() * i / 32);
            const double r1sq = (st[0] + p.mu) * (st[0] + p.mu) +
                                st[1] * st[1] + st[2] * st[2];
            const double r2sq = (st[0] - 1 + p.mu) * (st[0] - 1 + p.mu) +
                                st[1] * st[1] + st[2] * st[2];
            CHECK(std::abs(st[6] * st[6] * r1sq - 1.0) < 1e-3);
            CHECK(std::abs(st[7] * st[7] * r2sq - 1.0) < 1e-3);
        }
    }

    // the halo is genuinely three-dimensional
    auto halo = family_seed(CRTBPFamily::Halo, p, N);
    REQUIRE(halo.has_value());
    CHECK(halo->coeffs.c.row(2).tail(2 * N).lpNorm<Eigen::Infinity>() > 0.05);
}

TEST_CASE("crtbp_family_seeds returns all four families" *
          doctest::timeout(300)) {
    CRTBPParams p;
    auto seeds = crtbp_family_seeds(p, 12);
    REQUIRE(seeds.size() == 4);
    std::set<std::string> labels;
    for (const auto& s : seeds) labels.insert(s.label);
    CHECK(labels == std::set<std::string>{"dro", "halo", "planar_lyapunov",
                                          "vertical_lyapunov"});
}
