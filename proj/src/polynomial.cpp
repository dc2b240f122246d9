#include "rhb/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace rhb {

int Monomial::state_degree() const {
    int d = 0;
    for (int p : powers) d += p;
    return d;
}

int Monomial::total_degree() const {
    return state_degree() + ((cos_forcing || sin_forcing) ? 1 : 0);
}

Polynomial& Polynomial::add(double coeff, std::vector<int> powers,
                            int cos_forcing, int sin_forcing) {
    if (static_cast<int>(powers.size()) != state_dim_)
        throw std::invalid_argument("Polynomial::add: exponent count != state dim");
    for (int p : powers)
        if (p < 0) throw std::invalid_argument("Polynomial::add: negative exponent");
    if (cos_forcing < 0 || cos_forcing > 1 || sin_forcing < 0 || sin_forcing > 1 ||
        (cos_forcing && sin_forcing))
        throw std::invalid_argument(
            "Polynomial::add: forcing must be a single cos or sin factor");
    terms_.push_back({coeff, std::move(powers), cos_forcing, sin_forcing});
    return *this;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.total_degree());
    return d;
}

double Polynomial::eval(const Eigen::Ref<const Eigen::VectorXd>& x, double t,
                        double omega) const {
    if (static_cast<int>(x.size()) != state_dim_)
        throw std::invalid_argument("Polynomial::eval: state dimension mismatch");
    double v = 0.0;
    for (const auto& m : terms_) {
        double term = m.coeff;
        for (int k = 0; k < state_dim_; ++k)
            for (int rep = 0; rep < m.powers[k]; ++rep) term *= x[k];
        if (m.cos_forcing) term *= std::cos(omega * t);
        if (m.sin_forcing) term *= std::sin(omega * t);
        v += term;
    }
    return v;
}

}  // namespace rhb
