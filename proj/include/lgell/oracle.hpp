#pragma once

// Brute-force state counting, independent of the series algebra.

#include "lgell/potential.hpp"
#include "lgell/qseries.hpp"
#include "lgell/symmetry.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lgell {

enum class ModeFamily { b, a, phi, psi };

std::string to_string(ModeFamily f);

/// One free-field oscillator with its (J[0], L[0]) eigenvalues.
struct ModeSpec {
    ModeFamily family;
    std::size_t variable;
    long level;
    bool fermionic;
    Rat j_weight;
    long l_weight;
};

/// The weight table: b -> (q_i, k >= 0), a -> (-q_i, k >= 1),
/// phi -> (q_i - 1, k >= 1), psi -> (1 - q_i, k >= 0); all modes with level <= max_level.
std::vector<ModeSpec> mode_table(const Charges& q, long max_level);

inline constexpr std::size_t default_state_cap = 10'000'000;

class StateCapError : public MathError {
public:
    using MathError::MathError;
};

/// Sum of (-1)^{#fermions} y^{J} q^{L} over all Fock states of the free modes that
/// fall inside the window (which must have a finite q-range).
BiSeries free_state_series(const Charges& q, const Window& window, std::size_t cap = default_state_cap);

/// q^0 slice of the untwisted sector: zero-mode states whose lattice vector pairs
/// integrally with every generator of G. ymin is ignored (all weights are >= 0).
BiSeries zero_level_group_average(const Potential& p, const SymmetryGroup& g, const Window& window,
                                  std::size_t cap = default_state_cap);

/// Monomials of the given degree in the Jacobian ring of a Fermat potential,
/// counted directly as monomials outside the ideal of the partials.
long jacobian_ring_count(const Potential& p, long degree);

} // namespace lgell
