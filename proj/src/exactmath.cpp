#include "lgell/exactmath.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <utility>

namespace lgell {

Rat make_rat(long num, long den)
{
    if (den == 0)
        throw MathError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den) || (!den.empty() && den.front() == '-'))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    auto strip_plus = [](std::string_view s) { return (!s.empty() && s.front() == '+') ? s.substr(1) : s; };
    Int n(std::string(strip_plus(num)));
    Int d(std::string(strip_plus(den)));
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r)
{
    return r.get_str();
}

std::string to_string(const Int& z)
{
    return z.get_str();
}

Int floor_of(const Rat& r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rat frac_part(const Rat& r)
{
    Rat f = r - Rat(floor_of(r));
    f.canonicalize();
    return f;
}

bool is_integer(const Rat& r)
{
    return r.get_den() == 1;
}

Int lcm_of(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

std::int64_t lcm_of(std::int64_t a, std::int64_t b)
{
    return std::lcm(a, b);
}

std::int64_t to_i64(const Int& z)
{
    if (!z.fits_slong_p())
        throw MathError("integer " + z.get_str() + " exceeds 64-bit range");
    return z.get_si();
}

IntMat int_matrix(const std::vector<std::vector<long>>& rows)
{
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw MathError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

RatMat to_rational(const IntMat& m)
{
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rat(m(i, j));
    return r;
}

Int determinant(const IntMat& a)
{
    if (a.rows() != a.cols())
        throw MathError("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination.
    IntMat m = a;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

RatMat invert_rational_matrix(const IntMat& a)
{
    if (a.rows() != a.cols())
        throw SingularMatrixError("cannot invert a non-square matrix");
    const std::size_t n = a.rows();
    RatMat m = to_rational(a);
    RatMat inv = RatMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0)
            ++pivot;
        if (pivot == n)
            throw SingularMatrixError("matrix is singular (determinant 0)");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        Rat p = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m(i, col) == 0)
                continue;
            Rat f = m(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

// row[dst] += f * row[src]
void add_row(IntMat& m, std::size_t dst, std::size_t src, const Int& f)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(dst, j) += f * m(src, j);
}

void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& f)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, dst) += f * m(i, src);
}

} // namespace

SnfResult smith_normal_form(const IntMat& a)
{
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMat d = a;
    IntMat u = IntMat::identity(rows);
    IntMat v = IntMat::identity(cols);

    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                goto done;
            if (pi != t) {
                swap_rows(d, pi, t);
                swap_rows(u, pi, t);
            }
            if (pj != t) {
                swap_cols(d, pj, t);
                swap_cols(v, pj, t);
            }

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0)
                    continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                add_row(d, i, t, -q);
                add_row(u, i, t, -q);
                if (d(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0)
                    continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                add_col(d, j, t, -q);
                add_col(v, j, t, -q);
                if (d(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // divisibility: fold an offending row into the pivot row and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, 1);
                        add_row(u, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j)
                d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < rows; ++j)
                u(t, j) = -u(t, j);
        }
    }
done:
    SnfResult result;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (d(i, i) != 0)
            result.invariant_factors.push_back(d(i, i));
    result.left = std::move(u);
    result.right = std::move(v);
    result.diagonal = std::move(d);
    return result;
}

} // namespace lgell
