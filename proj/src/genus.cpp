#include "lgell/genus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

namespace lgell {

GenusModel GenusModel::make(const Potential& p, const SymmetryGroup& g)
{
    if (g.dimension() != p.dimension())
        throw AdmissibilityError("group acts on " + std::to_string(g.dimension()) + " coordinates, potential has " +
                                 std::to_string(p.dimension()) + " variables");
    Charges charges = compute_charges(p);
    if (!charges.cy_degree)
        throw AdmissibilityError("J_W not in SL_W: sum of charges is " + to_string(charges.cbar) +
                                 " away from the Calabi-Yau condition");
    for (const auto& e : g.generators()) {
        if (!in_aut(p, e))
            throw AdmissibilityError("element " + to_string(e) + " is not a symmetry of the potential");
        if (!is_integer(e.sum()))
            throw AdmissibilityError("element " + to_string(e) + " is not in SL_W");
    }
    if (!g.contains(grading_element(p)))
        throw AdmissibilityError("group does not contain J_W = " + to_string(grading_element(p)));

    std::int64_t n = g.modulus();
    std::int64_t d = n;
    for (const auto& q : charges.q)
        d = lcm_of(d, to_i64(q.get_den()));
    bool quad = false;
    for (const auto& atom : decompose_atoms(p).atoms)
        quad |= atom.kind == AtomKind::fermat && atom.exponents.front() == 2;
    return GenusModel{p, g, std::move(charges), n, d, quad};
}

namespace {

constexpr double pi = std::numbers::pi;

using Phased = std::vector<BiSeries>; // component r holds the part with phase w^r, w^N = 1

struct ScaledExp {
    std::int64_t q, y;
};

std::int64_t mod(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

// out_r = A_r + sign * m * A_{r - e}
void mul_binomial(Phased& a, ScaledExp m, int sign, std::int64_t e)
{
    const auto n = static_cast<std::int64_t>(a.size());
    Phased out = a;
    for (std::int64_t r = 0; r < n; ++r) {
        BiSeries t = a[static_cast<std::size_t>(mod(r - e, n))];
        if (t.is_zero())
            continue;
        t.multiply_monomial(m.q, m.y, CycNum(sign));
        out[static_cast<std::size_t>(r)] += t;
    }
    a = std::move(out);
}

// multiplies by 1 / (1 - m w^e), expanding geometrically
void div_binomial(Phased& a, ScaledExp m, std::int64_t e)
{
    const auto n = static_cast<std::int64_t>(a.size());
    Phased term = a;
    for (;;) {
        Phased next;
        next.reserve(a.size());
        bool any = false;
        for (std::int64_t r = 0; r < n; ++r) {
            BiSeries t = term[static_cast<std::size_t>(mod(r - e, n))];
            t.multiply_monomial(m.q, m.y, CycNum(1));
            any |= !t.is_zero();
            next.push_back(std::move(t));
        }
        if (!any)
            break;
        for (std::int64_t r = 0; r < n; ++r)
            a[static_cast<std::size_t>(r)] += next[static_cast<std::size_t>(r)];
        term = std::move(next);
    }
}

// The single-variable factor with charge c and twist theta = a / N, split by
// phase: component r collects the terms carrying w^r.
Phased phased_factor(const Rat& c, std::int64_t a, std::int64_t n, std::int64_t d, const Window& w)
{
    const std::int64_t cs = to_i64(Rat(c * d).get_num());
    const std::int64_t th = a * (d / n);
    const std::int64_t one = d;
    Phased f(static_cast<std::size_t>(n), BiSeries(d, w));
    f[0] = BiSeries::one(d, w);
    const std::int64_t qcap = f[0].qcap();

    // (q^theta - y^{1-c} w^{-1})
    {
        Phased out(static_cast<std::size_t>(n), BiSeries(d, w));
        for (std::int64_t r = 0; r < n; ++r) {
            BiSeries t = f[static_cast<std::size_t>(r)];
            t.multiply_monomial(th, 0, CycNum(1));
            out[static_cast<std::size_t>(r)] += t;
            BiSeries u = f[static_cast<std::size_t>(mod(r + 1, n))];
            u.multiply_monomial(0, one - cs, CycNum(-1));
            out[static_cast<std::size_t>(r)] += u;
        }
        f = std::move(out);
    }
    for (std::int64_t k = 1; k * one - th <= qcap; ++k)
        mul_binomial(f, {k * one - th, one - cs}, -1, -1);
    for (std::int64_t k = 1; k * one + th <= qcap; ++k)
        mul_binomial(f, {k * one + th, cs - one}, -1, 1);
    for (std::int64_t k = 0; k * one + th <= qcap; ++k)
        div_binomial(f, {k * one + th, cs}, 1);
    for (std::int64_t k = 1; k * one - th <= qcap; ++k)
        div_binomial(f, {k * one - th, -cs}, -1);
    return f;
}

// Same factor at a fixed phase w = zeta_N^t, assembled from geom_expand and
// series_mul with cyclotomic coefficients.
BiSeries direct_factor(const Rat& c, const Rat& theta, std::int64_t t, std::int64_t n, std::int64_t d, const Window& w)
{
    const auto cond = static_cast<std::uint32_t>(n);
    const CycNum up = root_of_unity(t, cond), down = root_of_unity(-t, cond);
    BiSeries f = BiSeries::one(d, w);
    auto binomial = [&](const Rat& eq0, const CycNum& c0, const Rat& eq1, const Rat& ey1, const CycNum& c1) {
        return BiSeries::monomial(d, w, eq0, 0, c0) + BiSeries::monomial(d, w, eq1, ey1, c1);
    };
    f = series_mul(f, binomial(theta, CycNum(1), 0, 1 - c, -down));
    for (long k = 1; k - theta <= w.qmax; ++k)
        f = series_mul(f, binomial(0, CycNum(1), k - theta, 1 - c, -down));
    for (long k = 1; k + theta <= w.qmax; ++k)
        f = series_mul(f, binomial(0, CycNum(1), k + theta, c - 1, -up));
    for (long k = 0; k + theta <= w.qmax; ++k)
        f = series_mul(f, geom_expand(c, k + theta, up, d, w));
    for (long k = 1; k - theta <= w.qmax; ++k)
        f = series_mul(f, geom_expand(-c, k - theta, down, d, w));
    return f;
}

// Largest y-loss per unit of q over all factors: keeping y <= Y + slope (Q - q)
// in every intermediate product is then exact on y <= Y.
Rat exactness_slope(const GenusModel& m)
{
    Rat slope = 0;
    const std::size_t dim = m.dimension();
    for (std::size_t j = 0; j < dim; ++j) {
        Rat tmax = 0;
        for (const auto& e : m.group.elements())
            tmax = std::max(tmax, e[j]);
        const Rat& c = m.charges.q[j];
        slope = std::max({slope, Rat(1 - c), Rat(c / (1 - tmax))});
    }
    return slope;
}

// Annihilator of G inside (Z/N)^d and the coset-class automaton for summing
// prod_j c_{j, r_j} over it one coordinate at a time.
struct ClassAutomaton {
    struct Transition {
        std::size_t from;
        std::int64_t value;
        std::size_t to;
    };
    std::vector<std::vector<Transition>> levels; // levels[k]: choices of r_{k+1}
    std::vector<std::size_t> class_count;        // per level 0..d
    std::size_t annihilator_order = 0;
};

inline constexpr double annihilator_cap = 1e7;

ClassAutomaton build_automaton(const GenusModel& m)
{
    const std::size_t dim = m.dimension();
    const std::int64_t n = m.phase_modulus;
    if (std::pow(static_cast<double>(n), static_cast<double>(dim)) > annihilator_cap)
        throw MathError("phase space (Z/" + std::to_string(n) + ")^" + std::to_string(dim) + " exceeds the enumeration cap");
    std::int64_t total = 1;
    for (std::size_t j = 0; j < dim; ++j)
        total *= n;

    std::vector<std::vector<std::int64_t>> gens;
    for (const auto& g : m.group.generators()) {
        std::vector<std::int64_t> t(dim);
        for (std::size_t j = 0; j < dim; ++j)
            t[j] = to_i64(Rat(g[j] * n).get_num());
        gens.push_back(std::move(t));
    }
    std::vector<std::vector<std::int64_t>> h;
    std::vector<std::int64_t> r(dim, 0);
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (std::size_t j = dim; j-- > 0;) {
            r[j] = c % n;
            c /= n;
        }
        bool ok = true;
        for (const auto& t : gens) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < dim; ++j)
                s += r[j] * t[j];
            if (s % n != 0) {
                ok = false;
                break;
            }
        }
        if (ok)
            h.push_back(r);
    }

    ClassAutomaton a;
    a.annihilator_order = h.size();
    // class of a suffix at level k: smallest member of its coset modulo the
    // suffixes of elements whose first k coordinates vanish
    auto encode = [n](const std::int64_t* s, std::size_t len) {
        std::int64_t c = 0;
        for (std::size_t i = 0; i < len; ++i)
            c = c * n + s[i];
        return c;
    };
    std::vector<std::map<std::int64_t, std::size_t>> class_of(dim + 1); // suffix code -> class id
    for (std::size_t k = 0; k <= dim; ++k) {
        const std::size_t len = dim - k;
        std::vector<std::vector<std::int64_t>> kernel;
        std::set<std::vector<std::int64_t>> suffixes;
        for (const auto& e : h) {
            suffixes.emplace(e.begin() + static_cast<std::ptrdiff_t>(k), e.end());
            if (std::all_of(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k), [](std::int64_t x) { return x == 0; }))
                kernel.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(k), e.end());
        }
        std::map<std::int64_t, std::size_t> rep_id;
        std::vector<std::int64_t> tmp(len);
        for (const auto& s : suffixes) {
            std::int64_t best = -1;
            for (const auto& t : kernel) {
                for (std::size_t i = 0; i < len; ++i)
                    tmp[i] = (s[i] + t[i]) % n;
                std::int64_t c = encode(tmp.data(), len);
                if (best < 0 || c < best)
                    best = c;
            }
            auto [it, inserted] = rep_id.emplace(best, rep_id.size());
            class_of[k][encode(s.data(), len)] = it->second;
        }
        a.class_count.push_back(rep_id.size());
    }
    a.levels.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::set<std::tuple<std::size_t, std::int64_t, std::size_t>> seen;
        for (const auto& e : h) {
            std::size_t from = class_of[k].at(encode(e.data() + k, dim - k));
            std::size_t to = class_of[k + 1].at(encode(e.data() + k + 1, dim - k - 1));
            seen.emplace(from, e[k], to);
        }
        for (const auto& [from, v, to] : seen)
            a.levels[k].push_back({from, v, to});
    }
    return a;
}

std::int64_t theta_index(const GenusModel& m, const PhaseVector& v, std::size_t j)
{
    return to_i64(Rat(v[j] * m.phase_modulus).get_num());
}

std::int64_t degree_of(const PhaseVector& v)
{
    return to_i64(v.sum().get_num());
}

class SeriesEngine {
public:
    SeriesEngine(const GenusModel& m, Rat qmax, Rat ybase)
        : m_(m), qmax_(std::move(qmax)), ybase_(std::move(ybase)), slope_(exactness_slope(m))
    {
        for (const auto& e : m_.group.elements())
            max_degree_ = std::max(max_degree_, degree_of(e));
    }

    // Window for S(n) when the final y-cap is ybase.
    Window inner_window(std::int64_t degree) const
    {
        return Window{qmax_, std::nullopt, ybase_ + degree, slope_};
    }

    // S(n) = (1/|G|) sum_{n1} prod_j F_j, by projection onto the annihilator.
    BiSeries projected(const PhaseVector& n)
    {
        if (!automaton_)
            automaton_ = build_automaton(m_);
        const std::int64_t degree = degree_of(n);
        const Window w = inner_window(degree);
        const std::size_t dim = m_.dimension();
        std::vector<std::optional<BiSeries>> states(automaton_->class_count[0]);
        states[0] = BiSeries::one(m_.denominator, w);
        for (std::size_t k = 0; k < dim; ++k) {
            const Phased& comps = restricted_factor(k, theta_index(m_, n, k), degree);
            std::vector<std::optional<BiSeries>> next(automaton_->class_count[k + 1]);
            for (const auto& t : automaton_->levels[k]) {
                const auto& from = states[t.from];
                const BiSeries& f = comps[static_cast<std::size_t>(t.value)];
                if (!from || from->is_zero() || f.is_zero())
                    continue;
                BiSeries prod = k == 0 ? f : series_mul(*from, f);
                if (next[t.to])
                    *next[t.to] += prod;
                else
                    next[t.to] = std::move(prod);
            }
            states = std::move(next);
        }
        return states[0] ? *states[0] : BiSeries(m_.denominator, w);
    }

    // S(n) by the literal phase sum over n1 with cyclotomic coefficients.
    BiSeries phase_summed(const PhaseVector& n)
    {
        const std::int64_t degree = degree_of(n);
        const Window w = inner_window(degree);
        BiSeries acc(m_.denominator, w);
        for (const auto& n1 : m_.group.elements())
            acc += pair_product(n, n1, w);
        Rat inv = make_rat(1, static_cast<long>(m_.group.order()));
        return acc.scaled(CycNum(inv));
    }

    BiSeries pair_product(const PhaseVector& n, const PhaseVector& n1, const Window& w)
    {
        BiSeries prod = BiSeries::one(m_.denominator, w);
        for (std::size_t j = 0; j < m_.dimension(); ++j) {
            auto key = std::tuple{j, theta_index(m_, n, j), theta_index(m_, n1, j), w.ymax};
            auto it = direct_.find(key);
            if (it == direct_.end())
                it = direct_
                         .emplace(key, direct_factor(m_.charges.q[j], n[j], theta_index(m_, n1, j), m_.phase_modulus,
                                                     m_.denominator, w))
                         .first;
            prod = series_mul(prod, it->second);
        }
        return prod;
    }

    std::size_t transitions()
    {
        if (!automaton_)
            automaton_ = build_automaton(m_);
        std::size_t count = 0;
        for (std::size_t k = 1; k < automaton_->levels.size(); ++k)
            count += automaton_->levels[k].size();
        return count;
    }

private:
    const GenusModel& m_;
    Rat qmax_, ybase_, slope_;
    std::int64_t max_degree_ = 0;
    std::optional<ClassAutomaton> automaton_;
    std::map<std::pair<std::size_t, std::int64_t>, Phased> phased_;
    std::map<std::tuple<std::size_t, std::int64_t, std::int64_t>, Phased> restricted_;
    std::map<std::tuple<std::size_t, std::int64_t, std::int64_t, Rat>, BiSeries> direct_;

    const Phased& restricted_factor(std::size_t j, std::int64_t a, std::int64_t degree)
    {
        auto key = std::tuple{j, a, degree};
        if (auto it = restricted_.find(key); it != restricted_.end())
            return it->second;
        auto pk = std::pair{j, a};
        auto it = phased_.find(pk);
        if (it == phased_.end())
            it = phased_
                     .emplace(pk, phased_factor(m_.charges.q[j], a, m_.phase_modulus, m_.denominator,
                                                inner_window(max_degree_)))
                     .first;
        Phased r;
        const Window w = inner_window(degree);
        for (const auto& comp : it->second)
            r.push_back(comp.restricted(w));
        return restricted_.emplace(key, std::move(r)).first->second;
    }
};

// Replaces cyclotomic coefficients by rationals, or throws with the location.
BiSeries rationalized(const BiSeries& s)
{
    std::vector<BiSeries::Term> terms;
    for (const auto& t : s.terms()) {
        try {
            terms.push_back({t.q, t.y, CycNum(cyc_to_rational(t.c))});
        } catch (const NotRationalError& e) {
            std::ostringstream os;
            os << "coefficient of q^" << to_string(make_rat(t.q, s.denominator())) << " y^"
               << to_string(make_rat(t.y, s.denominator())) << " is not rational: " << e.what();
            throw NotRationalError(os.str(), e.residual());
        }
    }
    return BiSeries::from_terms(s.denominator(), s.window(), std::move(terms));
}

void assert_cusp(const BiSeries& s)
{
    for (const auto& t : s.terms())
        if (t.q < 0)
            throw std::logic_error("negative power of q in the elliptic genus: q^" +
                                   to_string(make_rat(t.q, s.denominator())));
}

// weak Jacobi forms of index m have |r| <= sqrt(m^2 + 4 m n) at q^n
double support_bound(const Rat& cbar, const Rat& qmax)
{
    double m = cbar.get_d() / 2, n = qmax.get_d();
    return std::sqrt(std::max(0.0, m * m + 4 * m * n));
}

Rat default_ywin(const Rat& cbar, const Rat& qmax)
{
    return Rat(static_cast<long>(std::ceil(support_bound(cbar, qmax) - 1e-12)) + 1);
}

} // namespace

BiSeries cone_supertrace_series(const Charges& q, const Window& window)
{
    std::int64_t d = 1;
    Rat slope = 0;
    for (const auto& c : q.q) {
        d = lcm_of(d, to_i64(c.get_den()));
        slope = std::max({slope, Rat(1 - c), c});
    }
    d = lcm_of(d, to_i64(window.ymax.get_den()));
    Window inner{window.qmax, std::nullopt, window.ymax + window.slope * window.qmax, slope};
    BiSeries acc = BiSeries::one(d, inner);
    for (const auto& c : q.q) {
        Phased f = phased_factor(c, 0, 1, d, inner);
        acc = series_mul(acc, f[0]);
    }
    return acc.restricted(window);
}

BiSeries sector_supertrace_series(const GenusModel& m, const PhaseVector& n, const Window& window, SumRoute route)
{
    if (!m.group.contains(n))
        throw AdmissibilityError("sector " + to_string(n) + " is not a group element");
    SeriesEngine engine(m, window.qmax, window.ymax + window.slope * window.qmax);
    BiSeries s = route == SumRoute::projection ? engine.projected(n) : rationalized(engine.phase_summed(n));
    BiSeries out = s.shifted(0, Rat(-degree_of(n)), window);
    assert_cusp(out);
    return out;
}

BiSeries sector_pair_series(const GenusModel& m, const PhaseVector& n, const PhaseVector& n1, const Window& window)
{
    if (!m.group.contains(n) || !m.group.contains(n1))
        throw AdmissibilityError("sector pair is not in the group");
    Rat half = m.cbar() / 2;
    SeriesEngine engine(m, window.qmax, window.ymax + window.slope * window.qmax + half);
    BiSeries s = engine.pair_product(n, n1, engine.inner_window(degree_of(n)));
    return s.shifted(0, -half - degree_of(n), window);
}

GenusSeries ell_genus_series(const GenusModel& m, const GenusOptions& options)
{
    const Rat half = m.cbar() / 2;
    Rat ywin = options.ywin ? *options.ywin : default_ywin(m.cbar(), options.qmax);
    if (ywin <= 0)
        throw std::invalid_argument("y-window must be positive");
    GenusSeries out{BiSeries(1, Window{}), m.cbar(), serialize_generators(m.group), m.potential.to_text(), 0, 0, 0,
                    m.has_quadratic_fermat};
    for (int round = 0;; ++round) {
        const Window rect = rectangle(options.qmax, -ywin, ywin);
        SeriesEngine engine(m, options.qmax, ywin + half);
        BiSeries total(lcm_of(m.denominator, to_i64(half.get_den())), rect);
        for (const auto& n : m.group.elements()) {
            BiSeries s = options.route == SumRoute::projection ? engine.projected(n)
                                                               : rationalized(engine.phase_summed(n));
            total += s.shifted(0, -half - degree_of(n), rect);
        }
        assert_cusp(total);
        total = rationalized(total);

        const std::int64_t band_lo = to_i64(floor_of((ywin - 1) * total.denominator()));
        // the support may have gaps, so an empty band only closes a window past the Jacobi bound
        bool band_empty = ywin.get_d() > support_bound(m.cbar(), options.qmax) &&
                          std::none_of(total.terms().begin(), total.terms().end(),
                                       [&](const BiSeries::Term& t) { return std::abs(t.y) > band_lo; });
        if (!options.widen || band_empty || round == 6) {
            if (options.widen && !band_empty)
                throw MathError("y-support did not close after widening to " + to_string(ywin));
            out.series = std::move(total);
            out.ywin = ywin;
            out.margin = ywin - out.series.max_abs_y();
            out.widenings = round;
            return out;
        }
        ywin *= 2;
    }
}

cplx sector_value_numeric(const GenusModel& m, const PhaseVector& n, const PhaseVector& n1, cplx z, cplx tau,
                          const ThetaParams& params)
{
    const cplx two_pi_i(0, 2 * pi);
    cplx v = 1;
    for (std::size_t j = 0; j < m.dimension(); ++j) {
        const double c = m.charges.q[j].get_d(), a = n[j].get_d(), b = n1[j].get_d();
        cplx den = theta_value(c * z + a * tau + b, tau, params);
        if (std::abs(den) < near_pole_tolerance)
            throw NearPoleError("near pole: variable " + std::to_string(j + 1) + ", n = (" + to_string(n) +
                                    "), n1 = (" + to_string(n1) + ")",
                                j);
        cplx num = theta_value((1 - c) * z - a * tau - b, tau, params);
        v *= std::exp(-two_pi_i * z * a) * num / den;
    }
    return v;
}

EllipticGenusEvaluator::EllipticGenusEvaluator(const GenusModel& m, ThetaParams params)
    : model_(m), params_(params)
{
}

cplx EllipticGenusEvaluator::operator()(cplx z, cplx tau) const
{
    const cplx two_pi_i(0, 2 * pi);
    const std::size_t dim = model_.dimension();
    const std::int64_t n = model_.phase_modulus;
    const std::size_t order = model_.group.order();
    // ratio[j][a][b] for theta_j(n) = a/N, theta_j(n1) = b/N
    std::vector<cplx> table(dim * static_cast<std::size_t>(n * n), cplx(std::nan(""), 0));
    auto ratio = [&](std::size_t j, std::int64_t a, std::int64_t b, std::size_t ni, std::size_t n1i) {
        cplx& slot = table[(j * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)) * static_cast<std::size_t>(n) +
                           static_cast<std::size_t>(b)];
        if (!std::isnan(slot.real()))
            return slot;
        const double c = model_.charges.q[j].get_d();
        const double ta = static_cast<double>(a) / n, tb = static_cast<double>(b) / n;
        cplx den = theta_value(c * z + ta * tau + tb, tau, params_);
        if (std::abs(den) < near_pole_tolerance)
            throw NearPoleError("near pole: variable " + std::to_string(j + 1) + ", n = (" +
                                    to_string(model_.group.elements()[ni]) + "), n1 = (" +
                                    to_string(model_.group.elements()[n1i]) + ")",
                                j);
        cplx num = theta_value((1 - c) * z - ta * tau - tb, tau, params_);
        slot = std::exp(-two_pi_i * z * ta) * num / den;
        return slot;
    };
    cplx total = 0;
    for (std::size_t ni = 0; ni < order; ++ni) {
        const std::int64_t* tn = model_.group.scaled(ni);
        for (std::size_t n1i = 0; n1i < order; ++n1i) {
            const std::int64_t* t1 = model_.group.scaled(n1i);
            cplx v = 1;
            for (std::size_t j = 0; j < dim; ++j)
                v *= ratio(j, tn[j], t1[j], ni, n1i);
            total += v;
        }
    }
    return total / static_cast<double>(order);
}

cplx ell_genus_numeric(const GenusModel& m, cplx z, cplx tau, NumericInfo* info, const ThetaParams& params)
{
    EllipticGenusEvaluator eval(m, params);
    for (int retry = 0;; ++retry) {
        cplx zz = z + cplx(1e-3 * retry, 0);
        try {
            cplx v = eval(zz, tau);
            if (info) {
                info->retries = retry;
                info->z_used = zz;
            }
            return v;
        } catch (const NearPoleError&) {
            if (retry == 3)
                throw;
        }
    }
}

std::size_t projection_transitions(const GenusModel& m)
{
    SeriesEngine engine(m, 0, 0);
    return engine.transitions();
}

} // namespace lgell
