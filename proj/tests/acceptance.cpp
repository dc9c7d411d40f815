// One PASS/FAIL line per acceptance criterion.
// Usage: acceptance [--expect-fail N]...  Exit status is 0 when exactly the
// listed criteria fail (documented deviations) and every other one passes.

#include "lgell/json_io.hpp"
#include "lgell/oracle.hpp"
#include "lgell/verify.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace lgell;

namespace {

const std::vector<const char*> potentials = {"x1^5+x2^5+x3^5+x4^5+x5^5", "x1^3+x2^3+x3^3", "x1^2+x2^2",
                                             "x1^3*x2+x2^4+x3^4+x4^4", "x1^3*x2+x2^3*x1+x3^4+x4^4"};
const char* quintic = "x1^5+x2^5+x3^5+x4^5+x5^5";

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
};

GenusModel model(const char* text, bool sl = false)
{
    Potential p = parse_potential(text);
    return GenusModel::make(p, sl ? sl_subgroup(p) : grading_subgroup(p));
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

Outcome mirror_duality()
{
    Outcome o;
    auto run = [&](const char* text, const Rat& qmax) {
        MirrorOptions opt;
        opt.qmax = qmax;
        Verdict v = check_mirror(model(text), MirrorMode::series, opt);
        o.require(v.status == CheckStatus::pass, std::string(text) + ": " + v.details.back());
        o.notes.push_back(std::string(text) + " exact through q^" + to_string(qmax));
    };
    run(quintic, 1);
    run("x1^3+x2^3+x3^3", 2);
    run("x1^2+x2^2", 2);
    run("x1^3*x2+x2^4+x3^4+x4^4", 2);
    return o;
}

Outcome transformation_laws()
{
    Outcome o;
    for (auto [text, samples, tol] : std::vector<std::tuple<const char*, std::size_t, double>>{
             {"x1^2+x2^2", 5, 1e-6}, {"x1^3+x2^3+x3^3", 5, 1e-6}, {quintic, 3, 1e-5}}) {
        double worst = 0;
        for (const auto& v : check_jacobi_transformations(model(text), samples, 0, tol)) {
            o.require(v.status == CheckStatus::pass, std::string(text) + " " + v.check);
            worst = std::max(worst, v.max_residual.value_or(0));
        }
        o.notes.push_back(std::string(text) + " max residual " + fmt(worst));
    }
    return o;
}

Outcome theta_identities()
{
    Outcome o;
    ThetaIdentityReport r = check_theta_identities(theta_samples(10, 0));
    for (std::size_t k = 0; k < 4; ++k) {
        o.require(r.checked[k] == 10 && r.max_residual[k] < 1e-9, ThetaIdentityReport::names[k]);
        o.notes.push_back(std::string(ThetaIdentityReport::names[k]) + " " + fmt(r.max_residual[k]));
    }
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    for (auto q : std::vector<std::vector<Rat>>{{make_rat(1, 2)}, {make_rat(1, 5)}, {make_rat(1, 4), make_rat(1, 4)}}) {
        Charges c;
        c.q = q;
        Window w = rectangle(2, -3, 3);
        o.require(free_state_series(c, w) == cone_supertrace_series(c, w), "free states, " + std::to_string(q.size()) + " variables");
    }
    for (const char* text : {"x1^2+x2^2", "x1^3+x2^3+x3^3", quintic}) {
        GenusModel m = model(text);
        Window w{0, std::nullopt, 5, 0};
        o.require(zero_level_group_average(m.potential, m.group, w) ==
                      sector_supertrace_series(m, PhaseVector::zero(m.dimension()), w),
                  std::string("zero level ") + text);
    }
    return o;
}

Outcome cusp_and_rationality()
{
    Outcome o;
    std::size_t count = 0;
    for (const char* text : potentials) {
        Potential p = parse_potential(text);
        for (const auto& g : admissible_subgroups(p)) {
            GenusOptions opt;
            opt.qmax = p.dimension() == 5 ? 1 : 2;
            try {
                GenusSeries s = ell_genus_series(GenusModel::make(p, g), opt);
                o.require(s.series.min_q() >= 0 && s.series.all_rational(), text);
                ++count;
            } catch (const std::exception& e) {
                o.require(false, std::string(text) + ": " + e.what());
            }
        }
    }
    o.notes.push_back(std::to_string(count) + " genus series");
    return o;
}

Outcome group_duality()
{
    Outcome o;
    for (const char* text : potentials) {
        Potential p = parse_potential(text), t = transpose_potential(p);
        const Int det = abs(determinant(p.exponents()));
        o.require(dual_group(p, grading_subgroup(p)) == sl_subgroup(t), std::string(text) + " dual of <J>");
        o.require(dual_group(p, sl_subgroup(p)) == grading_subgroup(t), std::string(text) + " dual of SL");
        for (const auto& g : admissible_subgroups(p)) {
            SymmetryGroup d = dual_group(p, g);
            o.require(Int(static_cast<long>(g.order() * d.order())) == det, std::string(text) + " order product");
            o.require(dual_group(t, d) == g, std::string(text) + " double dual");
        }
    }
    return o;
}

Outcome holomorphy()
{
    Outcome o;
    std::size_t pairs = 0, chain_steps = 0;
    for (const char* text : potentials) {
        Potential p = parse_potential(text);
        for (const auto& g : admissible_subgroups(p)) {
            HolomorphyReport r = holomorphy_certificate(GenusModel::make(p, g));
            o.require(r.ok(), r.ok() ? "" : r.failures.front().failure);
            pairs += r.sector_pairs;
            chain_steps = std::max(chain_steps, r.max_chain_steps);
        }
    }
    o.require(chain_steps >= 1, "chain recursion exercised");
    o.notes.push_back(std::to_string(pairs) + " sector pairs, chain steps up to " + std::to_string(chain_steps));
    return o;
}

Outcome weight_zero_constancy()
{
    Outcome o;
    const std::vector<double> ladder{1e-2, 1e-3};
    const std::vector<cplx> taus{cplx(0, 1.2), cplx(0.3, 1.7)};
    for (const char* text : potentials) {
        ConstancyReport r = z0_constancy(model(text), ladder, taus);
        o.require(r.spread < 1e-4, std::string(text) + " spread " + fmt(r.spread));
    }
    const long h21 = jacobian_ring_count(parse_potential(quintic), 5);
    const long chi = 2 * (1 - h21);
    ConstancyReport q = z0_constancy(model(quintic), ladder, taus);
    const double limit = q.limit.real();
    const long nearest = std::lround(limit);
    o.require(std::abs(q.limit - cplx(static_cast<double>(nearest), 0)) < 1e-4, "quintic limit is an integer");
    o.notes.push_back("quintic <J> limit " + fmt(limit) + ", oracle chi = " + std::to_string(chi) + " (h21 = " +
                      std::to_string(h21) + ")");
    o.require(nearest == chi, "quintic limit " + std::to_string(nearest) + " against oracle " + std::to_string(chi));
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> expected_fail;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--expect-fail") == 0)
            expected_fail.insert(std::atoi(argv[++i]));

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"mirror duality, exact series", mirror_duality},
        {"Jacobi transformation laws", transformation_laws},
        {"theta identities", theta_identities},
        {"oracle equivalence", oracle_equivalence},
        {"cusp and rationality", cusp_and_rationality},
        {"group duality", group_duality},
        {"holomorphy certificates", holomorphy},
        {"weight-zero constancy at z = 0", weight_zero_constancy},
    };
    bool as_expected = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first << " ("
                  << fmt(secs) << " s)";
        if (!o.pass && expected_fail.count(id))
            std::cout << " [known deviation]";
        std::cout << "\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";
        as_expected &= o.pass != static_cast<bool>(expected_fail.count(id));
    }
    return as_expected ? 0 : 1;
}
