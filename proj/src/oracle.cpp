#include "lgell/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace lgell {

std::string to_string(ModeFamily f)
{
    switch (f) {
    case ModeFamily::b: return "b";
    case ModeFamily::a: return "a";
    case ModeFamily::phi: return "phi";
    case ModeFamily::psi: return "psi";
    }
    return "?";
}

std::vector<ModeSpec> mode_table(const Charges& q, long max_level)
{
    std::vector<ModeSpec> modes;
    for (std::size_t i = 0; i < q.q.size(); ++i) {
        const Rat& c = q.q[i];
        for (long k = 0; k <= max_level; ++k) {
            modes.push_back({ModeFamily::b, i, k, false, c, k});
            modes.push_back({ModeFamily::psi, i, k, true, 1 - c, k});
            if (k >= 1) {
                modes.push_back({ModeFamily::a, i, k, false, -c, k});
                modes.push_back({ModeFamily::phi, i, k, true, c - 1, k});
            }
        }
    }
    return modes;
}

namespace {

std::int64_t common_denominator(const std::vector<Rat>& values)
{
    std::int64_t d = 1;
    for (const auto& v : values)
        d = lcm_of(d, to_i64(v.get_den()));
    return d;
}

std::int64_t scaled(const Rat& r, std::int64_t d)
{
    Rat s = r * d;
    if (s.get_den() != 1)
        throw MathError("weight " + to_string(r) + " is off the lattice 1/" + std::to_string(d));
    return to_i64(s.get_num());
}

// Accumulates signed state counts keyed by scaled (L, J).
class StateCounter {
public:
    explicit StateCounter(std::size_t cap) : cap_(cap) {}

    void add(std::int64_t l, std::int64_t j, int sign)
    {
        if (++visited_ > cap_)
            throw StateCapError("state enumeration exceeded the cap of " + std::to_string(cap_) + " states");
        counts_[{l, j}] += sign;
    }

    BiSeries result(std::int64_t d, const Window& w) const
    {
        std::vector<BiSeries::Term> terms;
        for (const auto& [key, c] : counts_)
            if (c != 0)
                terms.push_back({key.first, key.second, CycNum(Rat(c))});
        return BiSeries::from_terms(d, w, std::move(terms));
    }

private:
    std::size_t cap_;
    std::size_t visited_ = 0;
    std::map<std::pair<std::int64_t, std::int64_t>, long> counts_;
};

} // namespace

BiSeries free_state_series(const Charges& q, const Window& window, std::size_t cap)
{
    const long qmax = to_i64(floor_of(window.qmax));
    std::vector<Rat> weights = q.q;
    weights.push_back(window.qmax);
    weights.push_back(window.ymax);
    weights.push_back(window.slope);
    const std::int64_t d = common_denominator(weights);
    const BiSeries probe(d, window); // only used for its y-caps
    const std::int64_t qcap = probe.qcap();

    // Positive-level modes are finite in number and enumerated by recursion;
    // level-0 b-modes are the only unbounded occupation and are filled last.
    std::vector<ModeSpec> excited, ground_b, ground_psi;
    for (const auto& m : mode_table(q, qmax)) {
        if (m.level > 0)
            excited.push_back(m);
        else if (m.fermionic)
            ground_psi.push_back(m);
        else
            ground_b.push_back(m);
    }
    std::vector<std::int64_t> ground_j;
    for (const auto& m : ground_b)
        ground_j.push_back(scaled(m.j_weight, d));

    StateCounter counter(cap);
    auto fill_ground = [&](std::int64_t l, std::int64_t j, int sign) {
        const std::int64_t top = probe.ycap(l);
        auto rec = [&](auto&& self, std::size_t i, std::int64_t jj, int sg) -> void {
            if (jj > top)
                return;
            if (i == ground_j.size()) {
                counter.add(l, jj, sg);
                return;
            }
            for (std::int64_t x = jj; x <= top; x += ground_j[i])
                self(self, i + 1, x, sg);
        };
        for (std::size_t s = 0; s < (std::size_t{1} << ground_psi.size()); ++s) {
            std::int64_t jj = j;
            int sg = sign;
            for (std::size_t t = 0; t < ground_psi.size(); ++t)
                if (s >> t & 1) {
                    jj += scaled(ground_psi[t].j_weight, d);
                    sg = -sg;
                }
            rec(rec, 0, jj, sg);
        }
    };
    auto walk = [&](auto&& self, std::size_t i, std::int64_t l, std::int64_t j, int sign) -> void {
        if (i == excited.size()) {
            fill_ground(l, j, sign);
            return;
        }
        const ModeSpec& m = excited[i];
        const std::int64_t dl = m.l_weight * d, dj = scaled(m.j_weight, d);
        const int max_occ = m.fermionic ? 1 : std::numeric_limits<int>::max();
        std::int64_t ll = l, jj = j;
        int sg = sign;
        for (int occ = 0; occ <= max_occ && ll <= qcap; ++occ) {
            self(self, i + 1, ll, jj, sg);
            ll += dl;
            jj += dj;
            if (m.fermionic)
                sg = -sg;
        }
    };
    walk(walk, 0, 0, 0, 1);
    return counter.result(d, window);
}

BiSeries zero_level_group_average(const Potential& p, const SymmetryGroup& g, const Window& window, std::size_t cap)
{
    const Charges ch = compute_charges(p);
    const std::size_t dim = p.dimension();
    std::vector<Rat> weights = ch.q;
    weights.push_back(window.ymax);
    const std::int64_t d = common_denominator(weights);
    const Window w{0, std::nullopt, window.ymax, 0};
    const std::int64_t top = to_i64(floor_of(window.ymax * d));

    // membership in M: the lattice vector pairs integrally with every generator
    const auto& gens = g.generators();
    StateCounter counter(cap);
    std::vector<long> occ(dim, 0);
    for (std::size_t s = 0; s < (std::size_t{1} << dim); ++s) {
        std::int64_t j0 = 0;
        int sign = 1;
        for (std::size_t i = 0; i < dim; ++i)
            if (s >> i & 1) {
                j0 += scaled(1 - ch.q[i], d);
                sign = -sign;
            }
        auto rec = [&](auto&& self, std::size_t i, std::int64_t j) -> void {
            if (j > top)
                return;
            if (i == dim) {
                for (const auto& gen : gens) {
                    Rat pair = 0;
                    for (std::size_t t = 0; t < dim; ++t)
                        pair += (occ[t] - static_cast<long>(s >> t & 1)) * gen[t];
                    if (!is_integer(pair))
                        return;
                }
                counter.add(0, j, sign);
                return;
            }
            const std::int64_t step = scaled(ch.q[i], d);
            for (occ[i] = 0; j + occ[i] * step <= top; ++occ[i])
                self(self, i + 1, j + occ[i] * step);
            occ[i] = 0;
        };
        rec(rec, 0, j0);
    }
    return counter.result(d, w);
}

long jacobian_ring_count(const Potential& p, long degree)
{
    const std::size_t dim = p.dimension();
    std::vector<long> exps(dim);
    for (const auto& atom : decompose_atoms(p).atoms) {
        if (atom.kind != AtomKind::fermat)
            throw ValidationError("Jacobian ring count is implemented for Fermat potentials only");
        exps[atom.variables.front()] = atom.exponents.front();
    }

    // every monomial of the degree; the partials a_i x_i^{a_i - 1} generate a
    // monomial ideal, so the quotient basis is the monomials outside it
    long count = 0;
    std::vector<long> e(dim, 0);
    auto rec = [&](auto&& self, std::size_t i, long left) -> void {
        if (i + 1 == dim) {
            e[i] = left;
            bool in_ideal = false;
            for (std::size_t t = 0; t < dim; ++t)
                in_ideal |= e[t] >= exps[t] - 1;
            count += in_ideal ? 0 : 1;
            return;
        }
        for (e[i] = 0; e[i] <= left; ++e[i])
            self(self, i + 1, left - e[i]);
    };
    if (dim > 0)
        rec(rec, 0, degree);
    return count;
}

} // namespace lgell
