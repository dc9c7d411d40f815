#pragma once

// Executable checks of holomorphy, modularity and mirror symmetry.

#include "lgell/genus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lgell {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);

struct Verdict {
    std::string check;
    CheckStatus status = CheckStatus::pass;
    /// Absent for exact comparisons.
    std::optional<double> max_residual;
    std::vector<std::string> details;
};

/// Zero set {a z + alpha tau + beta in Z tau + Z}.
struct LineFamily {
    Rat a, alpha, beta;
};

std::string to_string(const LineFamily& f);

/// One round of the chain reduction, cancelling the pole lines of
/// 1/Theta(k/(ml) z + a3 tau + b3) * Theta(k/m z + a1 tau + b1) / Theta(z/m + a2 tau + b2).
struct ReductionStep {
    long m, k, l;
    Rat alpha2, beta2, alpha3, beta3;
    long p, q; ///< the smallest non-negative (p', q') left uneliminated
    bool disjoint = false; ///< the two line families never meet; nothing survives
    long m_new = 0, k_new = 0;
    Rat alpha2_new, beta2_new;
};

struct CertificateTrace {
    AtomKind kind;
    std::vector<std::size_t> variables;
    PhaseVector n, n1; ///< restricted to the atom's variables
    std::vector<ReductionStep> steps;
    bool ok = true;
    std::string failure; ///< names the uncancelled line family
};

/// Certificate for one atom at one sector pair.
CertificateTrace atom_certificate(const Potential& p, const Atom& atom, const PhaseVector& n, const PhaseVector& n1);

struct HolomorphyReport {
    std::size_t sector_pairs = 0;  ///< |G|^2
    std::size_t certificates = 0;  ///< distinct (atom, restricted n, restricted n1) triples checked
    std::size_t max_chain_steps = 0;
    std::vector<CertificateTrace> failures;
    std::vector<CertificateTrace> samples; ///< first certificate of each atom
    bool ok() const { return failures.empty(); }
};

/// Checks every sector pair; triples repeating on an atom's coordinates are checked once.
HolomorphyReport holomorphy_certificate(const GenusModel& m);
Verdict holomorphy_verdict(const GenusModel& m);

/// Default tolerance: 1e-6 for |G| <= 100, 1e-5 above.
double default_tolerance(const GenusModel& m);

/// |L - R| / max(1, |L|, |R|).
double relative_residual(cplx l, cplx r);

struct SamplePoint {
    cplx z, tau;
};

/// Seeded points with Im tau near 1 so that tau and -1/tau both stay in the fundamental strip.
std::vector<SamplePoint> sample_points(std::size_t count, std::uint64_t seed);

/// The four laws under tau+1, z+1, z+tau and the S-transformation.
std::vector<Verdict> check_jacobi_transformations(const GenusModel& m, std::size_t samples, std::uint64_t seed,
                                                  std::optional<double> tol = {});

enum class MirrorMode { series, numeric };

struct MirrorOptions {
    Rat qmax = 1;
    std::size_t samples = 5;
    std::uint64_t seed = 0;
    std::optional<double> tol;
};

/// Ell(W/G) against (-1)^cbar Ell(W^T/G^T).
Verdict check_mirror(const GenusModel& m, MirrorMode mode, const MirrorOptions& options = {});

/// Ell(W^T/G^T, z, tau) = y^{-cbar} q^{cbar/2} Ell(W/G, tau - z, tau).
Verdict check_star_substitution(const GenusModel& m, std::size_t samples, std::uint64_t seed,
                                std::optional<double> tol = {});

/// Ell(tau - z, tau) = (-1)^cbar e^{-i pi cbar (tau - 2z)} Ell(z, tau).
Verdict check_spectral_flow(const GenusModel& m, std::size_t samples, std::uint64_t seed,
                            std::optional<double> tol = {});

struct LadderPoint {
    cplx tau;
    std::vector<cplx> values; ///< Ell(eps_i, tau)
    cplx limit;               ///< Richardson extrapolation to eps = 0 in eps^2
};

struct ConstancyReport {
    std::vector<double> epsilons;
    std::vector<LadderPoint> points;
    double spread = 0; ///< max pairwise |limit difference|
    cplx limit;        ///< mean of the limits
};

/// Approaches z = 0 along the real axis; Ell is even in z so the leading error is eps^2.
ConstancyReport z0_constancy(const GenusModel& m, const std::vector<double>& epsilons, const std::vector<cplx>& taus);

} // namespace lgell
