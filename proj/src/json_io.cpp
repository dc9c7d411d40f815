#include "lgell/json_io.hpp"

namespace lgell {

json series_to_json(const BiSeries& s)
{
    const std::int64_t d = s.denominator();
    const Window& w = s.window();
    json terms = json::array();
    for (const auto& t : s.terms())
        terms.push_back({{"q", to_string(make_rat(t.q, d))},
                         {"y", to_string(make_rat(t.y, d))},
                         {"re", to_string(cyc_to_rational(t.c))}});
    json ywin = json::array({w.ymin ? json(to_string(*w.ymin)) : json(nullptr), to_string(w.ymax)});
    return {{"D", d}, {"qmax", to_string(w.qmax)}, {"ywindow", ywin}, {"terms", terms}};
}

json genus_to_json(const GenusSeries& g)
{
    json j = series_to_json(g.series);
    j["cbar"] = to_string(g.cbar);
    j["group"] = g.group;
    j["potential"] = g.potential;
    j["certificate"] = {{"ywin", to_string(g.ywin)},
                        {"margin", to_string(g.margin)},
                        {"widenings", g.widenings},
                        {"quadratic_fermat", g.has_quadratic_fermat}};
    return j;
}

json group_to_json(const SymmetryGroup& g)
{
    json factors = json::array();
    for (const auto& f : g.invariant_factors())
        factors.push_back(f.get_str());
    return {{"order", g.order()}, {"invariant_factors", factors}, {"generators", serialize_generators(g)}};
}

json info_to_json(const Potential& p)
{
    json a = json::array();
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < p.dimension(); ++j)
            row.push_back(p.exponent(i, j));
        a.push_back(row);
    }
    json atoms = json::array();
    for (const auto& at : decompose_atoms(p).atoms) {
        json vars = json::array();
        for (auto v : at.variables)
            vars.push_back(p.variable_names()[v]);
        atoms.push_back({{"kind", to_string(at.kind)}, {"variables", vars}, {"exponents", at.exponents}});
    }
    const Charges ch = compute_charges(p);
    json q = json::array();
    for (const auto& c : ch.q)
        q.push_back(to_string(c));
    json j = {{"potential", p.to_text()}, {"d", p.dimension()}, {"A", a}, {"atoms", atoms}, {"charges", q}};
    j["k"] = ch.cy_degree ? json(*ch.cy_degree) : json(nullptr);
    j["cbar"] = to_string(ch.cbar);
    const SymmetryGroup aut = aut_group(p);
    j["aut_order"] = aut.order();
    j["aut"] = group_to_json(aut);
    j["J"] = to_string(grading_element(p));
    j["sl_order"] = sl_subgroup(p).order();
    j["calabi_yau"] = ch.cy_degree.has_value();
    if (!ch.cy_degree)
        j["note"] = "not Calabi-Yau: sum of charges is " + to_string(Rat((ch.q.size() - ch.cbar) / 2));
    return j;
}

json verdict_to_json(const Verdict& v)
{
    json j = {{"check", v.check}, {"status", to_string(v.status)}};
    if (v.max_residual)
        j["max_residual"] = *v.max_residual;
    else
        j["max_residual"] = v.status == CheckStatus::skipped ? json(nullptr) : json("exact");
    j["details"] = v.details;
    return j;
}

} // namespace lgell
