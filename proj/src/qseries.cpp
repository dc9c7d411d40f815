#include "lgell/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace lgell {

namespace {

Int ceil_of(const Rat& r)
{
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return c;
}

std::int64_t scaled_exponent(const Rat& e, std::int64_t d)
{
    Rat s = e * d;
    if (!is_integer(s))
        throw MathError("exponent " + to_string(e) + " is not a multiple of 1/" + std::to_string(d));
    return to_i64(s.get_num());
}

bool term_less(const BiSeries::Term& a, const BiSeries::Term& b)
{
    return a.q != b.q ? a.q < b.q : a.y < b.y;
}

Int from_i128(__int128 v)
{
    if (v >= INT64_MIN && v <= INT64_MAX)
        return Int(static_cast<long>(v));
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Int hi(static_cast<unsigned long>(u >> 64));
    Int lo(static_cast<unsigned long>(u & ~std::uint64_t{0}));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

} // namespace

bool Window::contains(const Rat& eq, const Rat& ey) const
{
    if (eq < 0 || eq > qmax)
        return false;
    if (ymin && ey < *ymin)
        return false;
    return ey <= ymax + slope * (qmax - eq);
}

Window rectangle(const Rat& qmax, const Rat& ymin, const Rat& ymax)
{
    return Window{qmax, ymin, ymax, 0};
}

BiSeries::BiSeries(std::int64_t denominator, Window window) : d_(denominator)
{
    if (d_ <= 0)
        throw MathError("series denominator must be positive");
    set_window(window);
}

void BiSeries::set_window(const Window& w)
{
    if (w.slope < 0)
        throw MathError("window slope must be non-negative");
    window_ = w;
    qcap_ = w.qmax < 0 ? -1 : to_i64(floor_of(w.qmax * d_));
    yfloor_.reset();
    if (w.ymin)
        yfloor_ = to_i64(ceil_of(*w.ymin * d_));
    ycaps_.clear();
    for (std::int64_t k = 0; k <= qcap_; ++k)
        ycaps_.push_back(to_i64(floor_of(w.ymax * d_ + w.slope * (w.qmax * d_ - k))));
}

std::int64_t BiSeries::ycap(std::int64_t k) const
{
    return ycaps_.at(static_cast<std::size_t>(k));
}

bool BiSeries::keeps(std::int64_t q, std::int64_t y) const
{
    if (q < 0 || q > qcap_)
        return false;
    if (yfloor_ && y < *yfloor_)
        return false;
    return y <= ycaps_[static_cast<std::size_t>(q)];
}

BiSeries BiSeries::one(std::int64_t denominator, const Window& window)
{
    BiSeries s(denominator, window);
    if (s.keeps(0, 0))
        s.terms_.push_back({0, 0, CycNum(1)});
    return s;
}

BiSeries BiSeries::monomial(std::int64_t denominator, const Window& window, const Rat& eq, const Rat& ey,
                            const CycNum& c)
{
    BiSeries s(denominator, window);
    std::int64_t q = scaled_exponent(eq, denominator), y = scaled_exponent(ey, denominator);
    if (!c.is_zero() && s.keeps(q, y))
        s.terms_.push_back({q, y, c});
    return s;
}

BiSeries BiSeries::from_terms(std::int64_t denominator, const Window& window, std::vector<Term> terms)
{
    BiSeries s(denominator, window);
    std::sort(terms.begin(), terms.end(), term_less);
    for (auto& t : terms) {
        if (!s.keeps(t.q, t.y))
            continue;
        if (!s.terms_.empty() && s.terms_.back().q == t.q && s.terms_.back().y == t.y)
            s.terms_.back().c += t.c;
        else
            s.terms_.push_back(std::move(t));
    }
    std::erase_if(s.terms_, [](const Term& t) { return t.c.is_zero(); });
    return s;
}

BiSeries BiSeries::lifted(std::int64_t new_denominator) const
{
    if (new_denominator == d_)
        return *this;
    if (new_denominator % d_ != 0)
        throw MathError("cannot lift D=" + std::to_string(d_) + " to " + std::to_string(new_denominator));
    const std::int64_t f = new_denominator / d_;
    BiSeries s(new_denominator, window_);
    s.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        s.terms_.push_back({t.q * f, t.y * f, t.c});
    // the finer lattice can only admit more points, so nothing is dropped
    return s;
}

BiSeries BiSeries::restricted(const Window& w) const
{
    BiSeries s(d_, w);
    for (const auto& t : terms_)
        if (s.keeps(t.q, t.y))
            s.terms_.push_back(t);
    return s;
}

BiSeries BiSeries::shifted(const Rat& dq, const Rat& dy, const Window& w) const
{
    std::int64_t d = lcm_of(lcm_of(d_, to_i64(dq.get_den())), to_i64(dy.get_den()));
    BiSeries base = lifted(d);
    BiSeries s(d, w);
    const std::int64_t sq = scaled_exponent(dq, d), sy = scaled_exponent(dy, d);
    for (const auto& t : base.terms_)
        if (s.keeps(t.q + sq, t.y + sy))
            s.terms_.push_back({t.q + sq, t.y + sy, t.c});
    return s;
}

void BiSeries::multiply_monomial(std::int64_t dq, std::int64_t dy, const CycNum& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!keeps(t.q + dq, t.y + dy))
            continue;
        t.c *= c;
        out.push_back({t.q + dq, t.y + dy, std::move(t.c)});
    }
    terms_ = std::move(out);
}

BiSeries BiSeries::scaled(const CycNum& c) const
{
    BiSeries s(d_, window_);
    if (c.is_zero())
        return s;
    s.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        s.terms_.push_back({t.q, t.y, t.c * c});
    return s;
}

BiSeries& BiSeries::operator+=(const BiSeries& o)
{
    if (o.terms_.empty())
        return *this;
    std::int64_t d = lcm_of(d_, o.d_);
    if (d != d_)
        *this = lifted(d);
    const BiSeries& other = o.d_ == d ? o : o.lifted(d);
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        if (j == other.terms_.size() || (i < terms_.size() && term_less(terms_[i], other.terms_[j]))) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || term_less(other.terms_[j], terms_[i])) {
            const Term& t = other.terms_[j++];
            if (keeps(t.q, t.y))
                out.push_back(t);
        } else {
            Term t = std::move(terms_[i++]);
            t.c += other.terms_[j++].c;
            if (!t.c.is_zero())
                out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
    return *this;
}

BiSeries BiSeries::operator-() const
{
    BiSeries s = *this;
    for (auto& t : s.terms_)
        t.c = -t.c;
    return s;
}

BiSeries& BiSeries::operator-=(const BiSeries& o)
{
    return *this += -o;
}

bool operator==(const BiSeries& a, const BiSeries& b)
{
    std::int64_t d = lcm_of(a.d_, b.d_);
    const BiSeries x = a.lifted(d), y = b.lifted(d);
    if (x.terms_.size() != y.terms_.size())
        return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i)
        if (x.terms_[i].q != y.terms_[i].q || x.terms_[i].y != y.terms_[i].y || !(x.terms_[i].c == y.terms_[i].c))
            return false;
    return true;
}

bool BiSeries::all_rational() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.c.is_rational(); });
}

Rat BiSeries::min_q() const
{
    if (terms_.empty())
        return 0;
    return make_rat(terms_.front().q, d_);
}

Rat BiSeries::max_abs_y() const
{
    std::int64_t m = 0;
    for (const auto& t : terms_)
        m = std::max(m, std::abs(t.y));
    return make_rat(m, d_);
}

std::complex<double> BiSeries::evaluate(std::complex<double> z, std::complex<double> tau) const
{
    const std::complex<double> two_pi_i(0, 2 * std::numbers::pi);
    std::complex<double> acc = 0;
    for (const auto& t : terms_) {
        double eq = static_cast<double>(t.q) / d_, ey = static_cast<double>(t.y) / d_;
        acc += t.c.to_complex() * std::exp(two_pi_i * (z * ey + tau * eq));
    }
    return acc;
}

BiSeries series_mul(const BiSeries& a0, const BiSeries& b0)
{
    if (!(a0.window_ == b0.window_))
        throw MathError("series_mul: window mismatch");
    const std::int64_t d = lcm_of(a0.d_, b0.d_);
    const BiSeries a = a0.lifted(d), b = b0.lifted(d);
    BiSeries out(d, a.window_);
    if (a.terms_.empty() || b.terms_.empty())
        return out;

    // blocks of b with equal q
    struct Block {
        std::int64_t q;
        std::size_t begin, end;
    };
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < b.terms_.size();) {
        std::size_t k = j;
        while (k < b.terms_.size() && b.terms_[k].q == b.terms_[j].q)
            ++k;
        blocks.push_back({b.terms_[j].q, j, k});
        j = k;
    }

    std::int64_t amin = INT64_MAX, amax = INT64_MIN, bmin = INT64_MAX, bmax = INT64_MIN;
    for (const auto& t : a.terms_) {
        amin = std::min(amin, t.y);
        amax = std::max(amax, t.y);
    }
    for (const auto& t : b.terms_) {
        bmin = std::min(bmin, t.y);
        bmax = std::max(bmax, t.y);
    }
    if (out.qcap_ < 0)
        return out;
    std::int64_t base = amin + bmin;
    std::int64_t top = amax + bmax;
    top = std::min(top, *std::max_element(out.ycaps_.begin(), out.ycaps_.end()));
    if (out.yfloor_)
        base = std::max(base, *out.yfloor_);
    if (top < base)
        return out;
    const std::int64_t width = top - base + 1;
    const std::int64_t rows = out.qcap_ + 1;

    // visits every in-window product (i, j, cell)
    auto for_each_pair = [&](auto&& fn) {
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            const auto& ta = a.terms_[i];
            for (const auto& blk : blocks) {
                std::int64_t eq = ta.q + blk.q;
                if (eq > out.qcap_)
                    break;
                std::int64_t cap = out.ycaps_[static_cast<std::size_t>(eq)] - ta.y;
                for (std::size_t j = blk.begin; j < blk.end; ++j) {
                    const auto& tb = b.terms_[j];
                    if (tb.y > cap)
                        break;
                    std::int64_t ey = ta.y + tb.y;
                    if (ey < base)
                        continue;
                    fn(i, j, eq * width + (ey - base));
                }
            }
        }
    };

    bool rational = true;
    for (const auto& t : a.terms_)
        rational &= t.c.conductor() == 1;
    for (const auto& t : b.terms_)
        rational &= t.c.conductor() == 1;

    const bool dense = static_cast<double>(rows) * static_cast<double>(width) <= 4e7;

    if (rational && dense) {
        // integral numerators over one common denominator per operand
        auto integralize = [](const BiSeries& s, Int& common, std::vector<Int>& nums) {
            common = 1;
            for (const auto& t : s.terms_)
                common = lcm_of(common, t.c.denominator());
            nums.clear();
            for (const auto& t : s.terms_)
                nums.push_back(t.c.numerators()[0] * (common / t.c.denominator()));
        };
        Int la, lb;
        std::vector<Int> na, nb;
        integralize(a, la, na);
        integralize(b, lb, nb);
        Int ma = 0, mb = 0;
        for (const auto& v : na)
            ma = std::max(ma, Int(abs(v)));
        for (const auto& v : nb)
            mb = std::max(mb, Int(abs(v)));
        Int bound = ma * mb * Int(static_cast<unsigned long>(std::min(na.size(), nb.size())));
        const Int denom = la * lb;
        auto emit = [&](std::int64_t cell, Int value) {
            std::int64_t eq = cell / width, ey = cell % width + base;
            Rat r(value, denom);
            r.canonicalize();
            out.terms_.push_back({eq, ey, CycNum(r)});
        };
        if (mpz_sizeinbase(bound.get_mpz_t(), 2) < 125) {
            std::vector<std::int64_t> ia(na.size()), ib(nb.size());
            bool small = true;
            for (std::size_t i = 0; i < na.size(); ++i) {
                small &= na[i].fits_slong_p();
                ia[i] = small ? na[i].get_si() : 0;
            }
            for (std::size_t j = 0; j < nb.size(); ++j) {
                small &= nb[j].fits_slong_p();
                ib[j] = small ? nb[j].get_si() : 0;
            }
            if (small) {
                std::vector<__int128> grid(static_cast<std::size_t>(rows * width), 0);
                for_each_pair([&](std::size_t i, std::size_t j, std::int64_t cell) {
                    grid[static_cast<std::size_t>(cell)] += static_cast<__int128>(ia[i]) * ib[j];
                });
                for (std::int64_t cell = 0; cell < rows * width; ++cell)
                    if (grid[static_cast<std::size_t>(cell)] != 0)
                        emit(cell, from_i128(grid[static_cast<std::size_t>(cell)]));
                return out;
            }
        }
        std::vector<Int> grid(static_cast<std::size_t>(rows * width));
        for_each_pair([&](std::size_t i, std::size_t j, std::int64_t cell) {
            mpz_addmul(grid[static_cast<std::size_t>(cell)].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
        });
        for (std::int64_t cell = 0; cell < rows * width; ++cell)
            if (grid[static_cast<std::size_t>(cell)] != 0)
                emit(cell, grid[static_cast<std::size_t>(cell)]);
        return out;
    }

    // general coefficients: sparse accumulation
    std::map<std::int64_t, CycNum> acc;
    for_each_pair([&](std::size_t i, std::size_t j, std::int64_t cell) {
        acc[cell].add_product(a.terms_[i].c, b.terms_[j].c);
    });
    for (auto& [cell, c] : acc)
        if (!c.is_zero())
            out.terms_.push_back({cell / width, cell % width + base, std::move(c)});
    return out;
}

BiSeries geom_expand(const Rat& ey, const Rat& eq, const CycNum& c, std::int64_t denominator, const Window& window)
{
    if (eq < 0 || (eq == 0 && ey <= 0))
        throw MathError("non-expandable factor: y^" + to_string(ey) + " q^" + to_string(eq));
    BiSeries s(denominator, window);
    const std::int64_t sq = scaled_exponent(eq, denominator), sy = scaled_exponent(ey, denominator);
    std::vector<BiSeries::Term> terms;
    CycNum power(1);
    for (std::int64_t q = 0, y = 0;; q += sq, y += sy) {
        if (q > s.qcap())
            break;
        if (sy > 0 && y > s.ycap(q))
            break;
        if (sy < 0 && s.yfloor() && y < *s.yfloor())
            break;
        if (s.keeps(q, y))
            terms.push_back({q, y, power});
        power *= c;
        if (power.is_zero())
            break;
    }
    return BiSeries::from_terms(denominator, window, std::move(terms));
}

CycNum coefficient_at(const BiSeries& s, const Rat& eq, const Rat& ey)
{
    if (!s.window().contains(eq, ey))
        throw MathError("coefficient (q^" + to_string(eq) + ", y^" + to_string(ey) + ") outside the window");
    Rat sq = eq * s.denominator(), sy = ey * s.denominator();
    if (!is_integer(sq) || !is_integer(sy))
        return CycNum(0);
    std::int64_t q = to_i64(sq.get_num()), y = to_i64(sy.get_num());
    const auto& t = s.terms();
    auto it = std::lower_bound(t.begin(), t.end(), std::pair{q, y}, [](const BiSeries::Term& x, const auto& key) {
        return x.q != key.first ? x.q < key.first : x.y < key.second;
    });
    if (it != t.end() && it->q == q && it->y == y)
        return it->c;
    return CycNum(0);
}

} // namespace lgell
