#pragma once

// Jacobi theta function in product form,
//   Theta(nu, tau) = i q^{1/8} e^{-i pi nu} (1 - e^{2 pi i nu})
//                    prod_{n>=1} (1 - q^n)(1 - q^n e^{2 pi i nu})(1 - q^n e^{-2 pi i nu}).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lgell {

using cplx = std::complex<double>;

struct ThetaParams {
    /// Product truncation; 0 picks the smallest P with |q|^P e^{2 pi |Im nu|} < 1e-17.
    int terms = 0;
    /// Samples whose reference value is smaller than this are skipped.
    double zero_tol = 1e-10;
};

/// Truncation used for (nu, tau) under params.
int theta_terms(cplx nu, cplx tau, const ThetaParams& params = {});

/// Throws std::domain_error when Im tau <= 0.
cplx theta_value(cplx nu, cplx tau, const ThetaParams& params = {});

struct ThetaSample {
    cplx nu;
    cplx tau;
};

/// Seeded draws with Re tau in [-0.4, 0.4], Im tau in [0.9, 1.4],
/// Re nu in [-0.5, 0.5], Im nu in [-0.3, 0.3].
std::vector<ThetaSample> theta_samples(std::size_t count, std::uint64_t seed);

struct ThetaIdentityReport {
    static constexpr std::array<const char*, 4> names{"tau+1", "nu+1", "nu+tau", "modular"};
    std::array<double, 4> max_residual{};
    std::array<std::size_t, 4> checked{};
    std::array<std::size_t, 4> skipped{};
};

/// Relative residuals |L - R| / max(|L|, |R|) of the four identities
///   Theta(nu, tau+1)  = e^{i pi/4} Theta(nu, tau)   (the phase comes from q^{1/8}
///                       and cancels in every ratio of thetas)
///   Theta(nu+1, tau)  = -Theta(nu, tau)
///   Theta(nu+tau,tau) = -e^{-2 pi i nu - i pi tau} Theta(nu, tau)
///   Theta(nu/tau, -1/tau) = -i sqrt(tau/i) e^{i pi nu^2/tau} Theta(nu, tau)
ThetaIdentityReport check_theta_identities(const std::vector<ThetaSample>& samples, const ThetaParams& params = {});

} // namespace lgell
