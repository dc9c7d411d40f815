#pragma once

// Diagonal phase symmetries of a potential, as rational tuples mod 1.

#include "lgell/exactmath.hpp"
#include "lgell/potential.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lgell {

/// Rational d-tuple with every component reduced into [0,1).
class PhaseVector {
public:
    PhaseVector() = default;
    explicit PhaseVector(std::vector<Rat> p);
    static PhaseVector zero(std::size_t d);

    std::size_t size() const { return p_.size(); }
    const Rat& operator[](std::size_t j) const { return p_[j]; }
    const std::vector<Rat>& components() const { return p_; }
    Rat sum() const;
    bool is_zero() const;

    PhaseVector operator+(const PhaseVector& o) const;
    PhaseVector operator-() const;
    PhaseVector operator*(long k) const;

    friend bool operator==(const PhaseVector& a, const PhaseVector& b) { return a.p_ == b.p_; }
    friend bool operator<(const PhaseVector& a, const PhaseVector& b) { return a.p_ < b.p_; }

private:
    std::vector<Rat> p_;
};

/// "a/b,c/d,..." form.
std::string to_string(const PhaseVector& v);
PhaseVector parse_phase_vector(std::string_view text, std::size_t d);

/// Finite subgroup of (Q/Z)^d with every element materialized.
class SymmetryGroup {
public:
    /// Closure of the given generators under addition mod 1.
    static SymmetryGroup generated_by(std::size_t d, const std::vector<PhaseVector>& generators);

    std::size_t dimension() const { return d_; }
    std::size_t order() const { return elements_.size(); }
    /// A small canonical generating set (greedy over the sorted elements).
    const std::vector<PhaseVector>& generators() const { return generators_; }
    /// Sorted lexicographically; elements()[0] is zero.
    const std::vector<PhaseVector>& elements() const { return elements_; }
    /// d_1 | d_2 | ... with product equal to the order; empty for the trivial group.
    const std::vector<Int>& invariant_factors() const { return factors_; }

    /// Common denominator of all coordinates.
    std::int64_t modulus() const { return modulus_; }
    /// modulus() * element i, coordinates in [0, modulus()).
    const std::int64_t* scaled(std::size_t i) const { return &scaled_[i * d_]; }

    bool contains(const PhaseVector& v) const;
    bool is_subgroup_of(const SymmetryGroup& other) const;

    friend bool operator==(const SymmetryGroup& a, const SymmetryGroup& b) { return a.elements_ == b.elements_; }

private:
    friend struct GroupBuilder;
    std::size_t d_ = 0;
    std::int64_t modulus_ = 1;
    std::vector<PhaseVector> generators_;
    std::vector<PhaseVector> elements_;
    std::vector<std::int64_t> scaled_;
    std::vector<Int> factors_;
};

/// Groups larger than this are refused rather than materialized.
inline constexpr std::size_t max_group_order = 1'000'000;

/// All p with A p integral, generated by the columns of A^{-1}.
SymmetryGroup aut_group(const Potential& p);
/// The element q mod 1.
PhaseVector grading_element(const Potential& p);
SymmetryGroup grading_subgroup(const Potential& p);
SymmetryGroup sl_subgroup(const Potential& p);

bool in_aut(const Potential& p, const PhaseVector& v);
/// True when <J> is contained in g and g in SL.
bool is_admissible(const Potential& p, const SymmetryGroup& g);

/// Every G with <J> in G in SL, sorted by order then elements.
std::vector<SymmetryGroup> admissible_subgroups(const Potential& p);

/// Elements of Aut(W^T) pairing integrally with G under pbar . A . p.
SymmetryGroup dual_group(const Potential& p, const SymmetryGroup& g);

inline const std::vector<Rat>& theta_coords(const PhaseVector& n)
{
    return n.components();
}

/// One representative per element, coordinates in [0,1).
std::vector<PhaseVector> box_representatives(const SymmetryGroup& g);

/// Generator list in "a/b,..." form.
std::vector<std::string> serialize_generators(const SymmetryGroup& g);

} // namespace lgell
