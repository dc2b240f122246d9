#include "rhb/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rhb/polynomial.hpp"

namespace rhb {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

HarmonicBasis::HarmonicBasis(int order_N, double omega_)
    : order(order_N), omega(omega_) {
    if (order < 1) throw std::invalid_argument("HarmonicBasis: order must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("HarmonicBasis: omega must be > 0");
}

double HarmonicBasis::period() const { return kTwoPi / omega; }

CollocationGrid build_grid(const HarmonicBasis& basis, int node_count) {
    if (node_count < basis.size())
        throw std::invalid_argument(
            "build_grid: M < 2N+1 makes E rank-deficient (E+E = I would fail)");
    CollocationGrid grid;
    grid.count = node_count;
    grid.nodes.resize(node_count);
    const double T = basis.period();
    for (int i = 0; i < node_count; ++i) grid.nodes[i] = T * i / node_count;
    return grid;
}

SpectralOperators build_operators(const HarmonicBasis& basis,
                                  const CollocationGrid& grid, int degree_phi) {
    const int N = basis.order;
    const int M = grid.count;
    if (M < basis.size())
        throw std::invalid_argument("build_operators: grid inconsistent with basis (M < 2N+1)");
    if (degree_phi < 1)
        throw std::invalid_argument("build_operators: degree_phi must be >= 1");

    SpectralOperators ops;
    ops.E.resize(M, 2 * N + 1);
    ops.E_plus.resize(2 * N + 1, M);
    for (int i = 0; i < M; ++i) {
        const double wt = basis.omega * grid.nodes[i];
        ops.E(i, 0) = 1.0;
        ops.E_plus(0, i) = 1.0 / M;
        for (int n = 1; n <= N; ++n) {
            const double cn = std::cos(n * wt);
            const double sn = std::sin(n * wt);
            ops.E(i, 2 * n - 1) = cn;
            ops.E(i, 2 * n) = sn;
            ops.E_plus(2 * n - 1, i) = 2.0 * cn / M;
            ops.E_plus(2 * n, i) = 2.0 * sn / M;
        }
    }

    ops.A = Mat::Zero(2 * N + 1, 2 * N + 1);
    for (int n = 1; n <= N; ++n) {
        ops.A(2 * n - 1, 2 * n) = n;
        ops.A(2 * n, 2 * n - 1) = -n;
    }

    const int extra = 2 * N * (degree_phi - 1);
    ops.E1.resize(M, extra);
    for (int i = 0; i < M; ++i) {
        const double wt = basis.omega * grid.nodes[i];
        for (int n = N + 1; n <= degree_phi * N; ++n) {
            const int col = 2 * (n - N - 1);
            ops.E1(i, col) = std::cos(n * wt);
            ops.E1(i, col + 1) = std::sin(n * wt);
        }
    }
    ops.E_alias = extra > 0 ? Mat(ops.E_plus * ops.E1) : Mat(2 * N + 1, 0);
    return ops;
}

Mat predict_alias_entries(int order_N, int degree_phi, int node_count) {
    const int N = order_N;
    const int M = node_count;
    if (M < 2 * N + 1)
        throw std::invalid_argument("predict_alias_entries: M must be >= 2N+1");
    if (degree_phi < 2)
        throw std::invalid_argument("predict_alias_entries: degree_phi must be >= 2");

    // On the equispaced grid t_n = 2 pi (n-1) / (M w):
    //   sum_n cos(p w t_n) = M when p = 0 mod M, else 0; sum_n sin(p w t_n) = 0.
    // Every E_A entry is a (2/M)-scaled product-to-sum combination of such
    // sums, so each entry is an integer in {-1, 0, 1}.
    const int cols = 2 * N * (degree_phi - 1);
    Mat out = Mat::Zero(2 * N + 1, cols);
    auto hit = [M](int p) { return p % M == 0 ? 1.0 : 0.0; };

    for (int n = N + 1; n <= degree_phi * N; ++n) {
        const int cos_col = 2 * (n - N - 1);
        const int sin_col = cos_col + 1;
        // constant row picks up only the cosine column
        out(0, cos_col) = hit(n);
        for (int a = 1; a <= N; ++a) {
            out(2 * a - 1, cos_col) = hit(n - a) + hit(n + a);  // cos a . cos n
            out(2 * a, sin_col) = hit(n - a) - hit(n + a);      // sin a . sin n
            // cos a . sin n and sin a . cos n reduce to pure sine sums: zero
        }
    }
    return out;
}

int fold_wavenumber(int n, int node_count) {
    if (node_count < 2)
        throw std::invalid_argument("fold_wavenumber: M must be >= 2");
    int r = n % node_count;
    if (2 * r > node_count) r -= node_count;
    if (2 * r < -node_count) r += node_count;
    if (2 * r == -node_count) r = node_count / 2;  // tie: positive representative
    return r;
}

Vec eval_series(const FourierCoeffs& coeffs, const HarmonicBasis& basis,
                double t) {
    const int N = basis.order;
    if (coeffs.order() != N)
        throw std::invalid_argument("eval_series: coefficient/basis order mismatch");
    Vec basis_vals(2 * N + 1);
    basis_vals[0] = 1.0;
    const double wt = basis.omega * t;
    for (int n = 1; n <= N; ++n) {
        basis_vals[2 * n - 1] = std::cos(n * wt);
        basis_vals[2 * n] = std::sin(n * wt);
    }
    return coeffs.c * basis_vals;
}

Vec eval_series_derivative(const FourierCoeffs& coeffs,
                           const HarmonicBasis& basis, double t) {
    const int N = basis.order;
    if (coeffs.order() != N)
        throw std::invalid_argument("eval_series_derivative: coefficient/basis order mismatch");
    Vec basis_vals(2 * N + 1);
    basis_vals[0] = 0.0;
    const double wt = basis.omega * t;
    for (int n = 1; n <= N; ++n) {
        basis_vals[2 * n - 1] = -n * basis.omega * std::sin(n * wt);
        basis_vals[2 * n] = n * basis.omega * std::cos(n * wt);
    }
    return coeffs.c * basis_vals;
}

// ---------------------------------------------------------------------------
// TrigSeries

TrigSeries::TrigSeries(int max_order)
    : max_order_(max_order), c_(2 * max_order + 1, {0.0, 0.0}) {}

TrigSeries TrigSeries::constant(double value) {
    TrigSeries s(0);
    s.c_[0] = value;
    return s;
}

TrigSeries TrigSeries::harmonic_cos(int n, double amplitude) {
    if (n == 0) return constant(amplitude);
    TrigSeries s(n);
    s.c_[s.max_order_ + n] = 0.5 * amplitude;
    s.c_[s.max_order_ - n] = 0.5 * amplitude;
    return s;
}

TrigSeries TrigSeries::harmonic_sin(int n, double amplitude) {
    if (n == 0) return constant(0.0);
    TrigSeries s(n);
    s.c_[s.max_order_ + n] = {0.0, -0.5 * amplitude};
    s.c_[s.max_order_ - n] = {0.0, 0.5 * amplitude};
    return s;
}

TrigSeries TrigSeries::from_coeff_row(const Eigen::Ref<const Vec>& row) {
    const int N = (static_cast<int>(row.size()) - 1) / 2;
    TrigSeries s(N);
    s.c_[N] = row[0];
    for (int n = 1; n <= N; ++n) {
        const std::complex<double> c(0.5 * row[2 * n - 1], -0.5 * row[2 * n]);
        s.c_[N + n] = c;
        s.c_[N - n] = std::conj(c);
    }
    return s;
}

double TrigSeries::cos_coeff(int n) const {
    if (n > max_order_) return 0.0;
    if (n == 0) return c_[max_order_].real();
    return 2.0 * at(n).real();
}

double TrigSeries::sin_coeff(int n) const {
    if (n < 1 || n > max_order_) return 0.0;
    return -2.0 * at(n).imag();
}

double TrigSeries::eval(double omega, double t) const {
    double v = cos_coeff(0);
    for (int n = 1; n <= max_order_; ++n)
        v += cos_coeff(n) * std::cos(n * omega * t) +
             sin_coeff(n) * std::sin(n * omega * t);
    return v;
}

TrigSeries TrigSeries::operator*(const TrigSeries& rhs) const {
    TrigSeries out(max_order_ + rhs.max_order_);
    for (int a = -max_order_; a <= max_order_; ++a) {
        const std::complex<double> ca = at(a);
        if (ca == std::complex<double>{}) continue;
        for (int b = -rhs.max_order_; b <= rhs.max_order_; ++b)
            out.c_[a + b + out.max_order_] += ca * rhs.at(b);
    }
    return out;
}

TrigSeries& TrigSeries::operator+=(const TrigSeries& rhs) {
    if (rhs.max_order_ > max_order_) {
        std::vector<std::complex<double>> grown(2 * rhs.max_order_ + 1);
        for (int n = -max_order_; n <= max_order_; ++n)
            grown[n + rhs.max_order_] = at(n);
        c_ = std::move(grown);
        max_order_ = rhs.max_order_;
    }
    for (int n = -rhs.max_order_; n <= rhs.max_order_; ++n)
        c_[n + max_order_] += rhs.at(n);
    return *this;
}

TrigSeries& TrigSeries::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

// ---------------------------------------------------------------------------

PolyHarmonics exact_poly_harmonics(const FourierCoeffs& coeffs,
                                   const Polynomial& poly,
                                   const HarmonicBasis& basis, int degree_phi) {
    if (poly.state_dim() != coeffs.dim())
        throw std::invalid_argument("exact_poly_harmonics: dimension mismatch");
    if (poly.total_degree() > degree_phi)
        throw std::invalid_argument(
            "exact_poly_harmonics: polynomial degree exceeds declared phi");

    const int N = basis.order;
    std::vector<TrigSeries> state;
    state.reserve(coeffs.dim());
    for (int k = 0; k < coeffs.dim(); ++k)
        state.push_back(TrigSeries::from_coeff_row(coeffs.c.row(k)));

    TrigSeries total(0);
    for (const Monomial& m : poly.terms()) {
        TrigSeries prod = TrigSeries::constant(m.coeff);
        for (int k = 0; k < coeffs.dim(); ++k)
            for (int rep = 0; rep < m.powers[k]; ++rep) prod = prod * state[k];
        if (m.cos_forcing) prod = prod * TrigSeries::harmonic_cos(1, 1.0);
        if (m.sin_forcing) prod = prod * TrigSeries::harmonic_sin(1, 1.0);
        total += prod;
    }

    PolyHarmonics out;
    out.low = Vec::Zero(2 * N + 1);
    out.high = Vec::Zero(2 * N * (degree_phi - 1));
    out.low[0] = total.cos_coeff(0);
    for (int n = 1; n <= N; ++n) {
        out.low[2 * n - 1] = total.cos_coeff(n);
        out.low[2 * n] = total.sin_coeff(n);
    }
    for (int n = N + 1; n <= degree_phi * N; ++n) {
        out.high[2 * (n - N - 1)] = total.cos_coeff(n);
        out.high[2 * (n - N - 1) + 1] = total.sin_coeff(n);
    }
    return out;
}

IdentityGap conditional_identity_gap(const FourierCoeffs& coeffs,
                                     const Polynomial& poly,
                                     const HarmonicBasis& basis,
                                     int degree_phi, int node_count) {
    const auto grid = build_grid(basis, node_count);
    const auto ops = build_operators(basis, grid, degree_phi);

    Vec sampled(node_count);
    for (int i = 0; i < node_count; ++i) {
        const Vec x = eval_series(coeffs, basis, grid.nodes[i]);
        sampled[i] = poly.eval(x, grid.nodes[i], basis.omega);
    }
    const Vec projected = ops.E_plus * sampled;
    const auto exact = exact_poly_harmonics(coeffs, poly, basis, degree_phi);

    IdentityGap g;
    g.gap = (projected - exact.low).lpNorm<Eigen::Infinity>();
    Vec reconstructed = exact.low;
    if (ops.E_alias.cols() > 0) reconstructed += ops.E_alias * exact.high;
    g.decomposition_gap = (projected - reconstructed).lpNorm<Eigen::Infinity>();
    return g;
}

}  // namespace rhb
