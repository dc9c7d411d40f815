#pragma once

// Exact arithmetic in Q(zeta_N), zeta_N = exp(2 pi i / N).
//
// Elements are polynomials of degree < phi(N) in zeta, reduced modulo the
// N-th cyclotomic polynomial, stored as integer numerators over a single
// positive common denominator. Equality is coefficient equality.

#include "lgell/exactmath.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace lgell {

class NotRationalError : public MathError {
public:
    NotRationalError(const std::string& what, std::vector<Rat> residual)
        : MathError(what), residual_(std::move(residual))
    {
    }
    /// Coefficients of zeta^1 .. zeta^(phi-1) that failed to vanish.
    const std::vector<Rat>& residual() const { return residual_; }

private:
    std::vector<Rat> residual_;
};

/// Integer coefficients of Phi_N, lowest degree first.
std::vector<Int> cyclotomic_polynomial(std::uint32_t n);
std::uint32_t euler_phi(std::uint32_t n);

struct CycField; // per-conductor reduction tables (internal, cached)

class CycNum {
public:
    CycNum(); ///< zero of Q
    CycNum(const Rat& r); // NOLINT: rationals embed implicitly
    CycNum(long v); // NOLINT
    CycNum(const Rat& r, std::uint32_t conductor);

    /// zeta_N^k, exactly.
    static CycNum root_of_unity(std::int64_t k, std::uint32_t n);

    std::uint32_t conductor() const;
    std::uint32_t degree() const; ///< phi(N)

    /// Coefficient of zeta^i in the power basis.
    Rat coeff(std::uint32_t i) const;

    bool is_zero() const;
    bool is_rational() const;
    std::optional<Rat> rational_value() const;

    /// True when every numerator is integral (common denominator 1).
    bool is_integral() const { return den_ == 1; }
    const std::vector<Int>& numerators() const { return num_; }
    const Int& denominator() const { return den_; }

    std::complex<double> to_complex() const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum operator-() const;

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend bool operator==(const CycNum& a, const CycNum& b);

    /// this += a * b with no temporaries when all three are integral.
    void add_product(const CycNum& a, const CycNum& b);

    /// Re-expresses a rational element (conductor 1) over conductor n.
    CycNum lifted_to(std::uint32_t n) const;

    /// Builds an integral element from raw numerators (length phi(N)).
    static CycNum from_numerators(std::uint32_t conductor, std::vector<Int> num, Int den = 1);

private:
    const CycField* field_;
    std::vector<Int> num_;
    Int den_;

    void normalize();
    void unify_with(const CycNum& o);
};

inline CycNum root_of_unity(std::int64_t k, std::uint32_t n)
{
    return CycNum::root_of_unity(k, n);
}

/// Rational value of c; throws NotRationalError carrying the residual
/// components when c is not in Q.
Rat cyc_to_rational(const CycNum& c);

std::string to_string(const CycNum& c);

} // namespace lgell
