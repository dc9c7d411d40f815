#include "lgell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace lgell {

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

std::string to_string(const LineFamily& f)
{
    return "(" + to_string(f.a) + ") z + (" + to_string(f.alpha) + ") tau + (" + to_string(f.beta) + ") in Z tau + Z";
}

namespace {

constexpr double pi = std::numbers::pi;

bool integral(const Rat& r)
{
    return is_integer(r);
}

// Zero lines of the denominator family, scaled by an integer factor, lie among
// the zero lines of the numerator family.
bool contained(const LineFamily& den, const LineFamily& num, long factor)
{
    return den.a * factor == num.a && integral(den.alpha * factor - num.alpha) &&
           integral(den.beta * factor - num.beta);
}

LineFamily denominator_family(const Rat& c, const Rat& t, const Rat& t1)
{
    return {c, t, t1};
}

LineFamily numerator_family(const Rat& c, const Rat& t, const Rat& t1)
{
    return {1 - c, -t, -t1};
}

long smallest_solution(long k, long l, const Int& shift)
{
    // smallest p in [0, l) with l | (p k - shift)
    for (long p = 0; p < l; ++p) {
        Int v = Int(p * k) - shift;
        if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(l)))
            return p;
    }
    return -1;
}

std::string sector_label(const PhaseVector& n, const PhaseVector& n1)
{
    return "n = (" + to_string(n) + "), n1 = (" + to_string(n1) + ")";
}

void fail(CertificateTrace& t, const std::string& what, const LineFamily& f)
{
    t.ok = false;
    t.failure = to_string(t.kind) + " atom, " + sector_label(t.n, t.n1) + ": " + what + "; uncancelled " + to_string(f);
}

void pairwise(CertificateTrace& t, const Charges& ch, const Atom& atom, const PhaseVector& n, const PhaseVector& n1,
              std::size_t i, std::size_t next, long factor)
{
    const std::size_t vi = atom.variables[i], vn = atom.variables[next];
    LineFamily den = denominator_family(ch.q[vi], n[vi], n1[vi]);
    LineFamily num = numerator_family(ch.q[vn], n[vn], n1[vn]);
    if (!contained(den, num, factor))
        fail(t, "denominator of x" + std::to_string(vi + 1) + " not cancelled by numerator of x" + std::to_string(vn + 1),
             den);
}

void chain_reduction(CertificateTrace& t, const Charges& ch, const Atom& atom, const PhaseVector& n,
                     const PhaseVector& n1)
{
    const std::size_t len = atom.variables.size();
    const std::size_t last = atom.variables.back();
    long m = atom.exponents.back();
    long k = m - 1;
    Rat a2 = n[last], b2 = n1[last], a1 = -n[last], b1 = -n1[last];
    if (ch.q[last] * m != 1 || !integral(a2 * m) || !integral(b2 * m)) {
        fail(t, "tail of the chain violates a q = 1 and a theta in Z", denominator_family(ch.q[last], a2, b2));
        return;
    }
    for (std::size_t idx = len - 1; idx-- > 0;) {
        const std::size_t v = atom.variables[idx];
        const long l = atom.exponents[idx];
        const Rat a3 = n[v], b3 = n1[v];
        ReductionStep s{m, k, l, a2, b2, a3, b3, 0, 0, false, 0, 0, {}, {}};
        const LineFamily den3 = denominator_family(ch.q[v], a3, b3);
        if (std::gcd(m, k) != 1 || !integral(m * a2) || !integral(m * b2) || !integral(k * a2 - a1) ||
            !integral(k * b2 - b1) || ch.q[v] != make_rat(k, m * l) || !integral(l * a3 - a1) || !integral(l * b3 - b1)) {
            fail(t, "reduction hypotheses fail at x" + std::to_string(v + 1), den3);
            return;
        }
        const long g = std::gcd(k, l);
        const Int da = Rat(k * a2 - l * a3).get_num(), db = Rat(k * b2 - l * b3).get_num();
        if (!mpz_divisible_ui_p(da.get_mpz_t(), static_cast<unsigned long>(g)) ||
            !mpz_divisible_ui_p(db.get_mpz_t(), static_cast<unsigned long>(g))) {
            // the families never meet: every pole of both denominators cancels,
            // and the rest of the chain cancels pairwise as in a loop
            s.disjoint = true;
            t.steps.push_back(s);
            for (std::size_t j = idx; j-- > 0 && t.ok;)
                pairwise(t, ch, atom, n, n1, j, j + 1, atom.exponents[j]);
            return;
        }
        s.p = smallest_solution(k, l, da);
        s.q = smallest_solution(k, l, db);
        if (s.p < 0 || s.q < 0) {
            fail(t, "no (p', q') at x" + std::to_string(v + 1), den3);
            return;
        }
        s.m_new = m * l / g;
        s.alpha2_new = make_rat(g, l) * (a2 - s.p);
        s.beta2_new = make_rat(g, l) * (b2 - s.q);
        s.k_new = s.m_new - k / g;
        t.steps.push_back(s);
        if (std::gcd(s.k_new, s.m_new) != 1 || !integral(s.m_new * s.alpha2_new) || !integral(s.m_new * s.beta2_new) ||
            make_rat(s.k_new, s.m_new) != 1 - ch.q[v] || !integral(s.k_new * s.alpha2_new + a3) ||
            !integral(s.k_new * s.beta2_new + b3)) {
            fail(t, "reduced family inconsistent at x" + std::to_string(v + 1),
                 {make_rat(1, s.m_new), s.alpha2_new, s.beta2_new});
            return;
        }
        m = s.m_new;
        k = s.k_new;
        a2 = s.alpha2_new;
        b2 = s.beta2_new;
        a1 = -a3;
        b1 = -b3;
    }
    // what remains: Theta(k/m z + a1 tau + b1) / Theta(z/m + a2 tau + b2)
    const LineFamily rest{make_rat(1, m), a2, b2};
    if (!contained(rest, {make_rat(k, m), a1, b1}, k))
        fail(t, "final ratio leaves poles", rest);
}

} // namespace

CertificateTrace atom_certificate(const Potential& p, const Atom& atom, const PhaseVector& n, const PhaseVector& n1)
{
    const Charges ch = compute_charges(p);
    std::vector<Rat> rn, rn1;
    for (auto v : atom.variables) {
        rn.push_back(n[v]);
        rn1.push_back(n1[v]);
    }
    CertificateTrace t{atom.kind, atom.variables, PhaseVector(rn), PhaseVector(rn1), {}, true, {}};
    const std::size_t len = atom.variables.size();
    switch (atom.kind) {
    case AtomKind::fermat: {
        const std::size_t v = atom.variables[0];
        const long a = atom.exponents[0];
        if (!integral(a * n[v]) || !integral(a * n1[v]))
            fail(t, "a theta not integral", denominator_family(ch.q[v], n[v], n1[v]));
        else
            pairwise(t, ch, atom, n, n1, 0, 0, a - 1);
        break;
    }
    case AtomKind::loop:
        for (std::size_t i = 0; i < len && t.ok; ++i)
            pairwise(t, ch, atom, n, n1, i, (i + 1) % len, atom.exponents[i]);
        break;
    case AtomKind::chain:
        chain_reduction(t, ch, atom, n, n1);
        break;
    }
    return t;
}

HolomorphyReport holomorphy_certificate(const GenusModel& m)
{
    HolomorphyReport r;
    const auto& elems = m.group.elements();
    r.sector_pairs = elems.size() * elems.size();
    for (const auto& atom : decompose_atoms(m.potential).atoms) {
        // one representative per projection onto the atom's coordinates
        std::map<std::vector<Rat>, std::size_t> reps;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            std::vector<Rat> key;
            for (auto v : atom.variables)
                key.push_back(elems[i][v]);
            reps.emplace(std::move(key), i);
        }
        bool first = true;
        for (const auto& [ka, ia] : reps)
            for (const auto& [kb, ib] : reps) {
                CertificateTrace t = atom_certificate(m.potential, atom, elems[ia], elems[ib]);
                ++r.certificates;
                r.max_chain_steps = std::max(r.max_chain_steps, t.steps.size());
                if (first) {
                    r.samples.push_back(t);
                    first = false;
                }
                if (!t.ok)
                    r.failures.push_back(std::move(t));
            }
    }
    return r;
}

Verdict holomorphy_verdict(const GenusModel& m)
{
    HolomorphyReport r = holomorphy_certificate(m);
    Verdict v{"holo", r.ok() ? CheckStatus::pass : CheckStatus::fail, std::nullopt, {}};
    v.details.push_back(std::to_string(r.sector_pairs) + " sector pairs, " + std::to_string(r.certificates) +
                        " distinct atom certificates, at most " + std::to_string(r.max_chain_steps) +
                        " chain reduction steps");
    for (const auto& f : r.failures) {
        if (v.details.size() > 10)
            break;
        v.details.push_back(f.failure);
    }
    return v;
}

double default_tolerance(const GenusModel& m)
{
    return m.group.order() <= 100 ? 1e-6 : 1e-5;
}

double relative_residual(cplx l, cplx r)
{
    return std::abs(l - r) / std::max({1.0, std::abs(l), std::abs(r)});
}

std::vector<SamplePoint> sample_points(std::size_t count, std::uint64_t seed)
{
    std::vector<SamplePoint> out;
    for (const auto& s : theta_samples(count, seed))
        out.push_back({s.nu, s.tau});
    return out;
}

namespace {

Verdict run_law(const std::string& name, const std::vector<SamplePoint>& pts, double tol,
                const std::function<std::pair<cplx, cplx>(const SamplePoint&)>& sides)
{
    Verdict v{name, CheckStatus::pass, 0.0, {}};
    std::size_t used = 0;
    for (const auto& p : pts) {
        std::ostringstream at;
        at << "z = " << p.z << ", tau = " << p.tau;
        try {
            auto [l, r] = sides(p);
            double res = relative_residual(l, r);
            *v.max_residual = std::max(*v.max_residual, res);
            ++used;
            if (!(res < tol)) {
                v.status = CheckStatus::fail;
                std::ostringstream os;
                os << at.str() << ": residual " << res << " (left " << l << ", right " << r << ")";
                v.details.push_back(os.str());
            }
        } catch (const NearPoleError& e) {
            v.details.push_back("skipped " + at.str() + ": " + e.what());
        }
    }
    if (used == 0) {
        v.status = CheckStatus::skipped;
        v.max_residual.reset();
    }
    v.details.insert(v.details.begin(), std::to_string(used) + " of " + std::to_string(pts.size()) +
                                            " samples evaluated, tolerance " + [&] {
                                                std::ostringstream os;
                                                os << tol;
                                                return os.str();
                                            }());
    return v;
}

cplx sign_of(const Rat& cbar)
{
    return is_integer(cbar) && mpz_odd_p(cbar.get_num_mpz_t()) ? -1.0 : 1.0;
}

GenusModel mirror_model(const GenusModel& m)
{
    return GenusModel::make(transpose_potential(m.potential), dual_group(m.potential, m.group));
}

} // namespace

std::vector<Verdict> check_jacobi_transformations(const GenusModel& m, std::size_t samples, std::uint64_t seed,
                                                  std::optional<double> tol)
{
    const double t = tol.value_or(default_tolerance(m));
    const EllipticGenusEvaluator ell(m);
    const double c = m.cbar().get_d();
    const cplx s = sign_of(m.cbar());
    const cplx i(0, 1);
    const auto pts = sample_points(samples, seed);
    std::vector<Verdict> out;
    out.push_back(run_law("jacobi:tau+1", pts, t, [&](const SamplePoint& p) {
        return std::pair{ell(p.z, p.tau + 1.0), ell(p.z, p.tau)};
    }));
    out.push_back(run_law("jacobi:z+1", pts, t, [&](const SamplePoint& p) {
        return std::pair{ell(p.z + 1.0, p.tau), s * ell(p.z, p.tau)};
    }));
    out.push_back(run_law("jacobi:z+tau", pts, t, [&](const SamplePoint& p) {
        return std::pair{ell(p.z + p.tau, p.tau), s * std::exp(-i * pi * c * (p.tau + 2.0 * p.z)) * ell(p.z, p.tau)};
    }));
    out.push_back(run_law("jacobi:S", pts, t, [&](const SamplePoint& p) {
        return std::pair{ell(p.z / p.tau, -1.0 / p.tau), std::exp(i * pi * c * p.z * p.z / p.tau) * ell(p.z, p.tau)};
    }));
    return out;
}

Verdict check_mirror(const GenusModel& m, MirrorMode mode, const MirrorOptions& options)
{
    const GenusModel dual = mirror_model(m);
    const cplx s = sign_of(m.cbar());
    if (mode == MirrorMode::numeric) {
        const EllipticGenusEvaluator a(m), b(dual);
        return run_law("mirror:numeric", sample_points(options.samples, options.seed),
                       options.tol.value_or(std::max(default_tolerance(m), default_tolerance(dual))),
                       [&](const SamplePoint& p) { return std::pair{a(p.z, p.tau), s * b(p.z, p.tau)}; });
    }
    GenusOptions go;
    go.qmax = options.qmax;
    GenusSeries ea = ell_genus_series(m, go), eb = ell_genus_series(dual, go);
    const Rat y = std::min(ea.ywin, eb.ywin);
    const Window common = rectangle(options.qmax, -y, y);
    BiSeries left = ea.series.restricted(common), right = eb.series.restricted(common).scaled(CycNum(s.real() < 0 ? -1L : 1L));
    Verdict v{"mirror:series", CheckStatus::pass, std::nullopt, {}};
    v.details.push_back("dual potential " + dual.potential.to_text() + ", dual group of order " +
                        std::to_string(dual.group.order()) + ", compared through q^" + to_string(options.qmax) +
                        " on |y| <= " + to_string(y));
    BiSeries diff = left - right;
    for (const auto& t : diff.terms()) {
        v.status = CheckStatus::fail;
        if (v.details.size() > 10)
            continue;
        const Rat eq = make_rat(t.q, diff.denominator()), ey = make_rat(t.y, diff.denominator());
        v.details.push_back("mismatch at q^" + to_string(eq) + " y^" + to_string(ey) + ": " +
                            to_string(coefficient_at(left, eq, ey)) + " vs " + to_string(coefficient_at(right, eq, ey)));
    }
    return v;
}

Verdict check_star_substitution(const GenusModel& m, std::size_t samples, std::uint64_t seed, std::optional<double> tol)
{
    const GenusModel dual = mirror_model(m);
    const EllipticGenusEvaluator a(m), b(dual);
    const double c = m.cbar().get_d();
    const cplx i(0, 1);
    return run_law("star", sample_points(samples, seed),
                   tol.value_or(std::max(default_tolerance(m), default_tolerance(dual))), [&](const SamplePoint& p) {
                       cplx factor = std::exp(-2.0 * pi * i * c * p.z + i * pi * c * p.tau);
                       return std::pair{b(p.z, p.tau), factor * a(p.tau - p.z, p.tau)};
                   });
}

Verdict check_spectral_flow(const GenusModel& m, std::size_t samples, std::uint64_t seed, std::optional<double> tol)
{
    const EllipticGenusEvaluator ell(m);
    const double c = m.cbar().get_d();
    const cplx s = sign_of(m.cbar());
    const cplx i(0, 1);
    return run_law("flow", sample_points(samples, seed), tol.value_or(default_tolerance(m)), [&](const SamplePoint& p) {
        return std::pair{ell(p.tau - p.z, p.tau), s * std::exp(-i * pi * c * (p.tau - 2.0 * p.z)) * ell(p.z, p.tau)};
    });
}

ConstancyReport z0_constancy(const GenusModel& m, const std::vector<double>& epsilons, const std::vector<cplx>& taus)
{
    if (epsilons.empty())
        throw std::invalid_argument("empty epsilon ladder");
    ConstancyReport r;
    r.epsilons = epsilons;
    for (const auto& tau : taus) {
        LadderPoint pt{tau, {}, 0};
        for (double e : epsilons)
            pt.values.push_back(ell_genus_numeric(m, cplx(e, 0), tau));
        // Neville extrapolation to eps = 0 in the variable eps^2
        std::vector<cplx> t = pt.values;
        for (std::size_t k = 1; k < t.size(); ++k)
            for (std::size_t j = t.size() - 1; j >= k; --j) {
                const double hj = epsilons[j] * epsilons[j], hk = epsilons[j - k] * epsilons[j - k];
                t[j] = (hk * t[j] - hj * t[j - 1]) / (hk - hj);
            }
        pt.limit = t.back();
        r.points.push_back(pt);
    }
    cplx sum = 0;
    for (const auto& a : r.points) {
        sum += a.limit;
        for (const auto& b : r.points)
            r.spread = std::max(r.spread, std::abs(a.limit - b.limit));
    }
    r.limit = sum / static_cast<double>(r.points.size());
    return r;
}

} // namespace lgell
