#pragma once

// Orbifold elliptic genus of W/G: exact q-series and theta-function values.

#include "lgell/potential.hpp"
#include "lgell/qseries.hpp"
#include "lgell/symmetry.hpp"
#include "lgell/theta.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgell {

class AdmissibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A validated pair (W, G) with <J> in G in SL.
struct GenusModel {
    Potential potential;
    SymmetryGroup group;
    Charges charges;
    std::int64_t phase_modulus; ///< every theta_j(n) lies in (1/phase_modulus) Z
    std::int64_t denominator;   ///< every exponent of a sector series lies in (1/denominator) Z
    bool has_quadratic_fermat;  ///< a Fermat atom x^2 is present

    static GenusModel make(const Potential& p, const SymmetryGroup& g);
    std::size_t dimension() const { return potential.dimension(); }
    const Rat& cbar() const { return charges.cbar; }
};

/// How the average over n1 in G is evaluated.
enum class SumRoute {
    /// Sum over the annihilator of G of products of phase components; integral arithmetic.
    projection,
    /// Literal sum over n1 with cyclotomic phases; for cross-checks on small groups.
    phase_sum,
};

/// prod_i of the untwisted free-field factors, truncated to the window.
BiSeries cone_supertrace_series(const Charges& q, const Window& window);

/// (y^{-1} q)^{deg n} (1/|G|) sum_{n1} prod_j (twisted factors), with the q^{deg n}
/// absorbed so that every stored q-exponent is non-negative.
BiSeries sector_supertrace_series(const GenusModel& m, const PhaseVector& n, const Window& window,
                                  SumRoute route = SumRoute::projection);

/// y^{-cbar/2} times the single (n, n1) term of the sector sum, without 1/|G|.
BiSeries sector_pair_series(const GenusModel& m, const PhaseVector& n, const PhaseVector& n1, const Window& window);

struct GenusOptions {
    Rat qmax = 2;
    /// Half-width of the y-window; absent means an automatic start value.
    std::optional<Rat> ywin;
    /// Double the y-window until a boundary band of width 1 is empty.
    bool widen = true;
    SumRoute route = SumRoute::projection;
};

struct GenusSeries {
    BiSeries series;
    Rat cbar;
    std::vector<std::string> group;
    std::string potential;
    Rat ywin;            ///< final half-width
    Rat margin;          ///< ywin minus the largest |y| present
    int widenings = 0;
    bool has_quadratic_fermat = false;
};

/// y^{-cbar/2} sum_{n in G} sector_supertrace_series, on [0, qmax] x [-ywin, ywin].
/// Throws NotRationalError if a coefficient fails to be rational and
/// std::logic_error if a negative q-power survives.
GenusSeries ell_genus_series(const GenusModel& m, const GenusOptions& options = {});

class NearPoleError : public std::runtime_error {
public:
    NearPoleError(const std::string& what, std::size_t variable) : std::runtime_error(what), variable_(variable) {}
    std::size_t variable() const { return variable_; }

private:
    std::size_t variable_;
};

/// prod_j e^{-2 pi i z theta_j(n)} Theta((1-q_j) z - theta_j(n) tau - theta_j(n1)) / Theta(q_j z + theta_j(n) tau + theta_j(n1)).
cplx sector_value_numeric(const GenusModel& m, const PhaseVector& n, const PhaseVector& n1, cplx z, cplx tau,
                          const ThetaParams& params = {});

/// Threshold below which a denominator theta counts as a pole.
inline constexpr double near_pole_tolerance = 1e-9;

/// Ell(W/G, z, tau) = (1/|G|) sum_{n, n1} sector_value_numeric, with theta ratios
/// tabulated per (j, theta_j(n), theta_j(n1)).
class EllipticGenusEvaluator {
public:
    explicit EllipticGenusEvaluator(const GenusModel& m, ThetaParams params = {});
    /// Throws NearPoleError when some denominator theta nearly vanishes.
    cplx operator()(cplx z, cplx tau) const;
    const GenusModel& model() const { return model_; }

private:
    GenusModel model_;
    ThetaParams params_;
};

struct NumericInfo {
    int retries = 0;
    cplx z_used;
};

/// As the evaluator, but retries at z + k * 1e-3 (k = 1..3) near poles.
cplx ell_genus_numeric(const GenusModel& m, cplx z, cplx tau, NumericInfo* info = nullptr,
                       const ThetaParams& params = {});

/// Number of series products the projection route performs for one sector.
std::size_t projection_transitions(const GenusModel& m);

} // namespace lgell
