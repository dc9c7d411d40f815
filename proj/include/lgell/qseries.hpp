#pragma once

// Truncated double series in y and q with exponents in (1/D) Z.

#include "lgell/cyclotomic.hpp"
#include "lgell/exactmath.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace lgell {

/// Region of kept exponents. A term y^a q^b survives iff
///   b <= qmax,  a >= ymin (when set),  a <= ymax + slope (qmax - b).
/// A positive slope lets low q-orders carry higher y-powers, which keeps
/// products exact on the region when factors mix y^{-c} with q^{>0}.
struct Window {
    Rat qmax = 0;
    std::optional<Rat> ymin;
    Rat ymax = 0;
    Rat slope = 0;

    bool contains(const Rat& eq, const Rat& ey) const;
    friend bool operator==(const Window& a, const Window& b)
    {
        return a.qmax == b.qmax && a.ymin == b.ymin && a.ymax == b.ymax && a.slope == b.slope;
    }
};

Window rectangle(const Rat& qmax, const Rat& ymin, const Rat& ymax);

class BiSeries {
public:
    /// Exponents are stored scaled by D.
    struct Term {
        std::int64_t q;
        std::int64_t y;
        CycNum c;
    };

    BiSeries(std::int64_t denominator, Window window);

    static BiSeries one(std::int64_t denominator, const Window& window);
    /// c y^ey q^eq, or zero when outside the window.
    static BiSeries monomial(std::int64_t denominator, const Window& window, const Rat& eq, const Rat& ey,
                             const CycNum& c);

    std::int64_t denominator() const { return d_; }
    const Window& window() const { return window_; }
    /// Sorted by (q, y); no zero coefficients.
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Integer y-cap at scaled q-level k, i.e. floor(D (ymax + slope (qmax - k/D))).
    std::int64_t ycap(std::int64_t k) const;
    std::int64_t qcap() const { return qcap_; }
    std::optional<std::int64_t> yfloor() const { return yfloor_; }
    bool keeps(std::int64_t q, std::int64_t y) const;

    /// Same series over a finer exponent lattice.
    BiSeries lifted(std::int64_t new_denominator) const;
    /// Drops every term outside w; w replaces the window.
    BiSeries restricted(const Window& w) const;
    /// Multiplies by y^dy q^dq and restricts to w.
    BiSeries shifted(const Rat& dq, const Rat& dy, const Window& w) const;
    /// In-place multiplication by c y^(dy/D) q^(dq/D), keeping the window.
    void multiply_monomial(std::int64_t dq, std::int64_t dy, const CycNum& c);

    BiSeries scaled(const CycNum& c) const;
    BiSeries& operator+=(const BiSeries& o);
    BiSeries& operator-=(const BiSeries& o);
    BiSeries operator-() const;
    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    /// Coefficientwise equality; windows are not compared.
    friend bool operator==(const BiSeries& a, const BiSeries& b);

    bool all_rational() const;
    Rat min_q() const;
    Rat max_abs_y() const;

    /// Sum of c y^a q^b at y = e^{2 pi i z}, q = e^{2 pi i tau}.
    std::complex<double> evaluate(std::complex<double> z, std::complex<double> tau) const;

    /// Builds a series from unsorted scaled terms, merging duplicates and
    /// dropping zeros and out-of-window terms.
    static BiSeries from_terms(std::int64_t denominator, const Window& window, std::vector<Term> terms);

private:
    std::int64_t d_;
    Window window_;
    std::int64_t qcap_;
    std::optional<std::int64_t> yfloor_;
    std::vector<std::int64_t> ycaps_;
    std::vector<Term> terms_;

    void set_window(const Window& w);
    friend BiSeries series_mul(const BiSeries& a, const BiSeries& b);
};

/// Truncated product. Operands are brought to a common D; windows must agree.
BiSeries series_mul(const BiSeries& a, const BiSeries& b);

/// sum_{m >= 0} c^m y^{m ey} q^{m eq} inside the window.
BiSeries geom_expand(const Rat& ey, const Rat& eq, const CycNum& c, std::int64_t denominator, const Window& window);

/// Exact coefficient of y^ey q^eq; throws when the point is outside the window.
CycNum coefficient_at(const BiSeries& s, const Rat& eq, const Rat& ey);

} // namespace lgell
