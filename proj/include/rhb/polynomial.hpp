#pragma once

// Multivariate polynomial vector-field components. Forcing may enter a
// monomial only through a single cos(w t) or sin(w t) factor, which counts
// as one degree in the total-degree audit.

#include <Eigen/Dense>
#include <vector>

namespace rhb {

struct Monomial {
    double coeff = 0.0;
    std::vector<int> powers;  // one exponent per state component
    int cos_forcing = 0;      // 0 or 1
    int sin_forcing = 0;      // 0 or 1

    int state_degree() const;
    int total_degree() const;  // state degree + 1 if forced
};

class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(int state_dim) : state_dim_(state_dim) {}

    Polynomial& add(double coeff, std::vector<int> powers, int cos_forcing = 0,
                    int sin_forcing = 0);

    int state_dim() const { return state_dim_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    int total_degree() const;

    double eval(const Eigen::Ref<const Eigen::VectorXd>& x, double t,
                double omega) const;

  private:
    int state_dim_ = 0;
    std::vector<Monomial> terms_;
};

}  // namespace rhb
