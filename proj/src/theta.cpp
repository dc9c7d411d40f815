#include "lgell/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lgell {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0, 1);

} // namespace

int theta_terms(cplx nu, cplx tau, const ThetaParams& params)
{
    if (params.terms > 0)
        return params.terms;
    double need = (std::abs(nu.imag()) + 17.0 * std::log(10.0) / (2 * pi)) / tau.imag();
    return std::max(1, static_cast<int>(std::ceil(need)) + 1);
}

cplx theta_value(cplx nu, cplx tau, const ThetaParams& params)
{
    if (!(tau.imag() > 0))
        throw std::domain_error("theta_value needs Im tau > 0");
    const int terms = theta_terms(nu, tau, params);
    const cplx q = std::exp(2 * pi * I * tau);
    const cplx x = std::exp(2 * pi * I * nu);
    const cplx xinv = 1.0 / x;
    cplx prod = I * std::exp(2 * pi * I * tau / 8.0) * std::exp(-pi * I * nu) * (1.0 - x);
    cplx qn = 1;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        prod *= (1.0 - qn) * (1.0 - qn * x) * (1.0 - qn * xinv);
    }
    return prod;
}

std::vector<ThetaSample> theta_samples(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    std::vector<ThetaSample> out;
    for (std::size_t i = 0; i < count; ++i) {
        double tr = draw(-0.4, 0.4), ti = draw(0.9, 1.4);
        double nr = draw(-0.5, 0.5), ni = draw(-0.3, 0.3);
        out.push_back({cplx(nr, ni), cplx(tr, ti)});
    }
    return out;
}

ThetaIdentityReport check_theta_identities(const std::vector<ThetaSample>& samples, const ThetaParams& params)
{
    ThetaIdentityReport rep;
    for (const auto& s : samples) {
        const cplx nu = s.nu, tau = s.tau;
        const cplx base = theta_value(nu, tau, params);
        std::array<std::pair<cplx, cplx>, 4> sides{
            std::pair{theta_value(nu, tau + 1.0, params), std::exp(pi * I / 4.0) * base},
            std::pair{theta_value(nu + 1.0, tau, params), -base},
            std::pair{theta_value(nu + tau, tau, params), -std::exp(-2 * pi * I * nu - pi * I * tau) * base},
            std::pair{theta_value(nu / tau, -1.0 / tau, params),
                      -I * std::sqrt(tau / I) * std::exp(pi * I * nu * nu / tau) * base},
        };
        for (std::size_t k = 0; k < 4; ++k) {
            auto [l, r] = sides[k];
            double scale = std::max(std::abs(l), std::abs(r));
            if (std::abs(base) < params.zero_tol || scale < params.zero_tol) {
                ++rep.skipped[k];
                continue;
            }
            rep.max_residual[k] = std::max(rep.max_residual[k], std::abs(l - r) / scale);
            ++rep.checked[k];
        }
    }
    return rep;
}

} // namespace lgell
