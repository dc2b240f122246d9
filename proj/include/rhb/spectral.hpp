#pragma once

// Collocation-based harmonic balance: Fourier representation, collocation
// matrices, aliasing analysis.

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace rhb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Truncated Fourier basis: constant plus cos/sin pairs for harmonics 1..N.
// Basis size is 2N+1. Coefficient ordering everywhere in this library is
// [c0, cos1, sin1, cos2, sin2, ..., cosN, sinN].
struct HarmonicBasis {
    int order;     // truncation order N >= 1
    double omega;  // fundamental angular frequency, > 0

    HarmonicBasis(int order_N, double omega_);
    int size() const { return 2 * order + 1; }
    double period() const;
};

// Fourier coefficients, one row per state dimension, 2N+1 columns.
struct FourierCoeffs {
    Mat c;

    FourierCoeffs() = default;
    FourierCoeffs(int dim, int order_N) : c(Mat::Zero(dim, 2 * order_N + 1)) {}
    explicit FourierCoeffs(Mat coeffs) : c(std::move(coeffs)) {}

    int dim() const { return static_cast<int>(c.rows()); }
    int order() const { return (static_cast<int>(c.cols()) - 1) / 2; }
};

// Coefficients of a nonlinearity's harmonics above the truncation order,
// orders N+1 .. phi*N, laid out [cos(N+1), sin(N+1), ..., cos(phiN), sin(phiN)].
struct HigherHarmonicCoeffs {
    Mat c;  // dim x 2N(phi-1)

    int dim() const { return static_cast<int>(c.rows()); }
};

// M equispaced time nodes t_i = (i-1) T / M covering [0, T).
struct CollocationGrid {
    int count;  // M
    Vec nodes;
};

// All matrices of the framework for a given (N, M, phi):
//   E       M x (2N+1)      coefficient -> node values
//   E_plus  (2N+1) x M      explicit Moore-Penrose inverse of E
//   A       (2N+1)x(2N+1)   block-diagonal differentiation, J_n = n[[0,1],[-1,0]]
//   E1      M x 2N(phi-1)   harmonics N+1 .. phi*N at the nodes
//   E_alias (2N+1) x 2N(phi-1)  aliasing matrix E+ E1 (empty for phi = 1)
struct SpectralOperators {
    Mat E;
    Mat E_plus;
    Mat A;
    Mat E1;
    Mat E_alias;
};

CollocationGrid build_grid(const HarmonicBasis& basis, int node_count);

SpectralOperators build_operators(const HarmonicBasis& basis,
                                  const CollocationGrid& grid, int degree_phi);

// Closed-form prediction of every aliasing-matrix entry ({-1, 0, +1}) from
// the modular structure of the equispaced trigonometric sums. Validated in
// tests against the numeric product E+ E1.
Mat predict_alias_entries(int order_N, int degree_phi, int node_count);

// Wavenumber an order-n harmonic is aliased to on an M-node equispaced grid:
// the representative of n modulo M in [-M/2, M/2] (smallest magnitude,
// positive on ties).
int fold_wavenumber(int n, int node_count);

Vec eval_series(const FourierCoeffs& coeffs, const HarmonicBasis& basis,
                double t);
Vec eval_series_derivative(const FourierCoeffs& coeffs,
                           const HarmonicBasis& basis, double t);

// Real trigonometric polynomial sum_{n<=H} a_n cos(n w t) + b_n sin(n w t),
// stored as complex coefficients over signed harmonics so that products are
// plain convolutions. Used for exact frequency-domain convolution of
// polynomial nonlinearities.
class TrigSeries {
  public:
    explicit TrigSeries(int max_order);
    static TrigSeries constant(double value);
    static TrigSeries harmonic_cos(int n, double amplitude);
    static TrigSeries harmonic_sin(int n, double amplitude);
    // row is [c0, a1, b1, ..., aN, bN]
    static TrigSeries from_coeff_row(const Eigen::Ref<const Vec>& row);

    int max_order() const { return max_order_; }
    double cos_coeff(int n) const;  // n = 0 gives the constant term
    double sin_coeff(int n) const;
    double eval(double omega, double t) const;

    TrigSeries operator*(const TrigSeries& rhs) const;
    TrigSeries& operator+=(const TrigSeries& rhs);
    TrigSeries& operator*=(double s);

  private:
    int max_order_;
    std::vector<std::complex<double>> c_;  // index n + max_order_

    std::complex<double> at(int n) const { return c_[n + max_order_]; }
};

class Polynomial;

struct PolyHarmonics {
    Vec low;   // orders 0..N, length 2N+1
    Vec high;  // orders N+1..phi*N, length 2N(phi-1)
};

// Exact Fourier coefficients of poly applied to the truncated series, by
// repeated product-to-sum convolution. No sampling, hence no aliasing; this
// is the aliasing-free reference for the HB right-hand side.
// coeffs must have poly.state_dim() rows. Throws if the polynomial's total
// degree exceeds degree_phi.
PolyHarmonics exact_poly_harmonics(const FourierCoeffs& coeffs,
                                   const Polynomial& poly,
                                   const HarmonicBasis& basis, int degree_phi);

struct IdentityGap {
    double gap;                // || E+ f~  -  h^ ||_inf
    double decomposition_gap;  // || E+ f~ - (h^ + E_A h^') ||_inf
};

// Compares the collocation projection E+ f~(E x^) against the exact
// convolution coefficients, and checks the decomposition
// E+ f~ = h^ + E_A h^' which holds for every M >= 2N+1.
IdentityGap conditional_identity_gap(const FourierCoeffs& coeffs,
                                     const Polynomial& poly,
                                     const HarmonicBasis& basis,
                                     int degree_phi, int node_count);

}  // namespace rhb
