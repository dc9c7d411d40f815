// Command-line front end: info, groups, dual, genus, check.

#include "lgell/json_io.hpp"
#include "lgell/oracle.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lgell;

namespace {

constexpr int exit_ok = 0, exit_fail = 1, exit_input = 2;

struct Config {
    std::string potential;
    std::string group = "J";
    std::string qmax = "2";
    std::string ywin;
    std::optional<double> tol;
    std::size_t samples = 5;
    std::uint64_t seed = 0;
    std::string out;
    std::vector<std::string> sets;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Potential load_potential(const std::string& source)
{
    if (source.empty())
        throw InputError("--potential is required");
    std::string text = source;
    std::error_code ec;
    if (std::filesystem::is_regular_file(source, ec)) {
        std::ifstream in(source);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return parse_potential(text);
}

// "J", "SL" or generators "a/b,...;c/d,..."
SymmetryGroup load_group(const Potential& p, const std::string& spec)
{
    if (spec == "J")
        return grading_subgroup(p);
    if (spec == "SL")
        return sl_subgroup(p);
    std::vector<PhaseVector> gens;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty())
            gens.push_back(parse_phase_vector(item, p.dimension()));
    for (const auto& g : gens)
        if (!in_aut(p, g))
            throw AdmissibilityError("generator " + to_string(g) + " is not a symmetry of the potential");
    return SymmetryGroup::generated_by(p.dimension(), gens);
}

Rat parse_window(const std::string& s, const char* flag)
{
    try {
        Rat r = parse_rat(s);
        if (r < 0)
            throw InputError(std::string(flag) + " must be non-negative");
        return r;
    } catch (const MathError& e) {
        throw InputError(std::string("bad ") + flag + ": " + e.what());
    }
}

void emit(const Config& c, const json& j)
{
    const std::string text = j.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f)
        throw InputError("cannot open " + c.out);
    f << text;
}

int cmd_info(const Config& c)
{
    emit(c, info_to_json(load_potential(c.potential)));
    return exit_ok;
}

int cmd_groups(const Config& c)
{
    const Potential p = load_potential(c.potential);
    json list = json::array();
    for (const auto& g : admissible_subgroups(p))
        list.push_back(group_to_json(g));
    emit(c, {{"potential", p.to_text()}, {"admissible_groups", list}});
    return exit_ok;
}

int cmd_dual(const Config& c)
{
    const Potential p = load_potential(c.potential);
    const SymmetryGroup g = load_group(p, c.group);
    const Potential pt = transpose_potential(p);
    const SymmetryGroup gd = dual_group(p, g);
    emit(c, {{"potential", p.to_text()},
             {"group", group_to_json(g)},
             {"dual_potential", pt.to_text()},
             {"dual_group", group_to_json(gd)}});
    return exit_ok;
}

GenusModel load_model(const Config& c)
{
    const Potential p = load_potential(c.potential);
    return GenusModel::make(p, load_group(p, c.group));
}

int cmd_genus(const Config& c)
{
    const GenusModel m = load_model(c);
    GenusOptions o;
    o.qmax = parse_window(c.qmax, "--qmax");
    if (!c.ywin.empty())
        o.ywin = parse_window(c.ywin, "--ywin");
    emit(c, genus_to_json(ell_genus_series(m, o)));
    return exit_ok;
}

std::vector<Verdict> oracle_checks(const GenusModel& m, const Rat& qmax, const Rat& ywin)
{
    std::vector<Verdict> out;
    const Window w = rectangle(qmax, -ywin, ywin);
    Verdict free{"oracle:free_states", CheckStatus::pass, std::nullopt, {}};
    BiSeries a = free_state_series(m.charges, w), b = cone_supertrace_series(m.charges, w);
    free.details.push_back(std::to_string(a.size()) + " coefficients through q^" + to_string(qmax) + " on |y| <= " +
                           to_string(ywin));
    if (!(a == b)) {
        free.status = CheckStatus::fail;
        free.details.push_back("state count differs from the product formula");
    }
    out.push_back(free);

    Verdict zero{"oracle:zero_level", CheckStatus::pass, std::nullopt, {}};
    const Window w0{0, std::nullopt, ywin + m.dimension(), 0};
    BiSeries za = zero_level_group_average(m.potential, m.group, w0);
    BiSeries zb = sector_supertrace_series(m, PhaseVector::zero(m.dimension()), w0);
    zero.details.push_back(std::to_string(za.size()) + " invariant zero-mode coefficients");
    if (!(za == zb)) {
        zero.status = CheckStatus::fail;
        zero.details.push_back("lattice enumeration differs from the untwisted sector at q^0");
    }
    out.push_back(zero);
    return out;
}

int cmd_check(const Config& c)
{
    const GenusModel m = load_model(c);
    const Rat qmax = parse_window(c.qmax, "--qmax");
    std::vector<std::string> sets = c.sets;
    if (sets.empty())
        sets = {"holo", "jacobi", "mirror", "star", "flow", "oracle"};
    std::vector<Verdict> verdicts;
    auto guarded = [&](const std::string& name, auto&& run) {
        try {
            run();
        } catch (const std::exception& e) {
            verdicts.push_back({name, CheckStatus::fail, std::nullopt, {e.what()}});
        }
    };
    for (const auto& s : sets) {
        if (s == "holo")
            guarded(s, [&] { verdicts.push_back(holomorphy_verdict(m)); });
        else if (s == "jacobi")
            guarded(s, [&] {
                for (auto& v : check_jacobi_transformations(m, c.samples, c.seed, c.tol))
                    verdicts.push_back(std::move(v));
            });
        else if (s == "mirror")
            guarded(s, [&] {
                MirrorOptions o{qmax, c.samples, c.seed, c.tol};
                verdicts.push_back(check_mirror(m, MirrorMode::series, o));
                verdicts.push_back(check_mirror(m, MirrorMode::numeric, o));
            });
        else if (s == "star")
            guarded(s, [&] { verdicts.push_back(check_star_substitution(m, c.samples, c.seed, c.tol)); });
        else if (s == "flow")
            guarded(s, [&] { verdicts.push_back(check_spectral_flow(m, c.samples, c.seed, c.tol)); });
        else if (s == "oracle")
            guarded(s, [&] {
                const Rat y = c.ywin.empty() ? Rat(2) : parse_window(c.ywin, "--ywin");
                for (auto& v : oracle_checks(m, qmax, y))
                    verdicts.push_back(std::move(v));
            });
        else
            throw InputError("unknown check set '" + s + "'");
    }
    json list = json::array();
    bool ok = true;
    for (const auto& v : verdicts) {
        list.push_back(verdict_to_json(v));
        ok &= v.status != CheckStatus::fail;
    }
    emit(c, {{"potential", m.potential.to_text()},
             {"group", serialize_generators(m.group)},
             {"status", ok ? "pass" : "fail"},
             {"checks", list}});
    return ok ? exit_ok : exit_fail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Elliptic genera of invertible Landau-Ginzburg orbifolds"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* sub, bool with_group) {
        sub->add_option("--potential", c.potential, "potential text, JSON, or a file holding either")->required();
        if (with_group)
            sub->add_option("--group", c.group, "J, SL, or generators \"a/b,...;c/d,...\"");
        sub->add_option("--out", c.out, "write JSON here instead of stdout");
    };
    auto* info = app.add_subcommand("info", "charges, atoms and symmetry data");
    common(info, false);
    auto* groups = app.add_subcommand("groups", "all groups between <J> and SL");
    common(groups, false);
    auto* dual = app.add_subcommand("dual", "transpose potential and dual group");
    common(dual, true);
    auto* genus = app.add_subcommand("genus", "exact q, y expansion of the elliptic genus");
    common(genus, true);
    genus->add_option("--qmax", c.qmax, "highest q power");
    genus->add_option("--ywin", c.ywin, "initial half-width of the y window");
    auto* check = app.add_subcommand("check", "holomorphy, modularity, mirror and oracle checks");
    common(check, true);
    check->add_option("--qmax", c.qmax, "highest q power for series checks");
    check->add_option("--ywin", c.ywin, "y half-width for the oracle check");
    check->add_option("--tol", c.tol, "residual tolerance");
    check->add_option("--samples", c.samples, "sample points per law");
    check->add_option("--seed", c.seed, "sample seed");
    check->add_option("--set", c.sets, "holo, jacobi, mirror, star, flow, oracle")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_input;
    }

    try {
        if (*info)
            return cmd_info(c);
        if (*groups)
            return cmd_groups(c);
        if (*dual)
            return cmd_dual(c);
        if (*genus)
            return cmd_genus(c);
        return cmd_check(c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_input;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_input;
    } catch (const AdmissibilityError& e) {
        std::cerr << "inadmissible group: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_fail;
    }
}
