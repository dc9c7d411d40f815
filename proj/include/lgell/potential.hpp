#pragma once

// Invertible polynomial potentials W = sum_i prod_j x_j^{a_ij}.

#include "lgell/exactmath.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgell {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Potential {
public:
    /// Row i of `exponents` holds the exponents of the i-th monomial.
    explicit Potential(IntMat exponents);

    std::size_t dimension() const { return exponents_.rows(); }
    const IntMat& exponents() const { return exponents_; }
    long exponent(std::size_t monomial, std::size_t var) const;
    const std::vector<std::string>& variable_names() const { return names_; }

    /// Canonical text form, e.g. "x1^3*x2+x2^4".
    std::string to_text() const;

    friend bool operator==(const Potential& a, const Potential& b) { return a.exponents_ == b.exponents_; }

private:
    IntMat exponents_;
    std::vector<std::string> names_;
};

/// Accepts "x1^5+x2^5+..." or {"monomials": [[...], ...]}.
Potential parse_potential(std::string_view text);

enum class AtomKind { fermat, loop, chain };

std::string to_string(AtomKind k);

struct Atom {
    AtomKind kind;
    /// Loop: starting at the smallest index, following x_i^{a_i} x_next.
    /// Chain: head to tail. Fermat: single variable.
    std::vector<std::size_t> variables;
    std::vector<long> exponents; ///< a_i along variables
    /// Monomial (row) whose leading power is variables[i].
    std::vector<std::size_t> monomials;
};

struct AtomDecomposition {
    std::vector<Atom> atoms;
};

AtomDecomposition decompose_atoms(const Potential& p);

/// Exponent matrix transposed.
Potential transpose_potential(const Potential& p);

struct Charges {
    std::vector<Rat> q;
    std::optional<long> cy_degree; ///< present iff sum q_j is a positive integer
    Rat cbar;                      ///< d - 2 sum q_j
};

Charges compute_charges(const Potential& p);

} // namespace lgell
