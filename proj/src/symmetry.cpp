#include "lgell/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_set>

namespace lgell {

PhaseVector::PhaseVector(std::vector<Rat> p) : p_(std::move(p))
{
    for (auto& x : p_)
        x = frac_part(x);
}

PhaseVector PhaseVector::zero(std::size_t d)
{
    return PhaseVector(std::vector<Rat>(d, Rat(0)));
}

Rat PhaseVector::sum() const
{
    Rat s = 0;
    for (const auto& x : p_)
        s += x;
    return s;
}

bool PhaseVector::is_zero() const
{
    return std::all_of(p_.begin(), p_.end(), [](const Rat& x) { return x == 0; });
}

PhaseVector PhaseVector::operator+(const PhaseVector& o) const
{
    if (o.size() != size())
        throw MathError("phase vectors of different length");
    std::vector<Rat> r(size());
    for (std::size_t j = 0; j < size(); ++j)
        r[j] = p_[j] + o.p_[j];
    return PhaseVector(std::move(r));
}

PhaseVector PhaseVector::operator-() const
{
    std::vector<Rat> r(size());
    for (std::size_t j = 0; j < size(); ++j)
        r[j] = -p_[j];
    return PhaseVector(std::move(r));
}

PhaseVector PhaseVector::operator*(long k) const
{
    std::vector<Rat> r(size());
    for (std::size_t j = 0; j < size(); ++j)
        r[j] = p_[j] * k;
    return PhaseVector(std::move(r));
}

std::string to_string(const PhaseVector& v)
{
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j > 0)
            s += ',';
        s += to_string(v[j]);
    }
    return s;
}

PhaseVector parse_phase_vector(std::string_view text, std::size_t d)
{
    std::vector<Rat> p;
    std::size_t start = 0;
    for (;;) {
        auto comma = text.find(',', start);
        p.push_back(parse_rat(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (p.size() != d)
        throw std::invalid_argument("phase vector '" + std::string(text) + "' has " + std::to_string(p.size()) +
                                    " components, expected " + std::to_string(d));
    return PhaseVector(std::move(p));
}

// Elements are handled as integer tuples mod N packed big-endian into one
// 64-bit code, so numeric order of codes is lexicographic order of tuples.
struct GroupBuilder {
    std::size_t d;
    std::int64_t n;

    GroupBuilder(std::size_t dim, std::int64_t modulus) : d(dim), n(modulus)
    {
        long double range = 1;
        for (std::size_t j = 0; j < d; ++j)
            range *= static_cast<long double>(n);
        if (range >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
            throw MathError("group modulus " + std::to_string(n) + " too large for " + std::to_string(d) +
                            " coordinates");
    }

    std::uint64_t encode(const std::int64_t* x) const
    {
        std::uint64_t c = 0;
        for (std::size_t j = 0; j < d; ++j)
            c = c * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(x[j]);
        return c;
    }

    void decode(std::uint64_t c, std::int64_t* x) const
    {
        for (std::size_t j = d; j-- > 0;) {
            x[j] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(n));
            c /= static_cast<std::uint64_t>(n);
        }
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const
    {
        std::uint64_t r = 0, scale = 1;
        for (std::size_t j = 0; j < d; ++j) {
            std::uint64_t x = a % n, y = b % n;
            a /= n;
            b /= n;
            r += ((x + y) % n) * scale;
            scale *= n;
        }
        return r;
    }

    std::uint64_t from_phase(const PhaseVector& v) const
    {
        std::vector<std::int64_t> x(d);
        for (std::size_t j = 0; j < d; ++j) {
            Rat s = v[j] * n;
            if (!is_integer(s))
                throw MathError("phase " + to_string(v) + " not representable with modulus " + std::to_string(n));
            x[j] = s.get_num().get_si();
        }
        return encode(x.data());
    }

    PhaseVector to_phase(std::uint64_t c) const
    {
        std::vector<std::int64_t> x(d);
        decode(c, x.data());
        std::vector<Rat> p(d);
        for (std::size_t j = 0; j < d; ++j)
            p[j] = make_rat(x[j], n);
        return PhaseVector(std::move(p));
    }

    // <H, g> for a closed set H.
    std::vector<std::uint64_t> extend(const std::vector<std::uint64_t>& h,
                                      const std::unordered_set<std::uint64_t>& hset, std::uint64_t g) const
    {
        std::vector<std::uint64_t> out = h;
        std::uint64_t cur = g;
        while (!hset.count(cur)) {
            for (auto e : h)
                out.push_back(add(e, cur));
            if (out.size() > max_group_order)
                throw MathError("group order exceeds " + std::to_string(max_group_order));
            cur = add(cur, g);
        }
        return out;
    }

    std::vector<std::uint64_t> close(const std::vector<std::uint64_t>& gens) const
    {
        std::vector<std::uint64_t> h{0};
        std::unordered_set<std::uint64_t> hset{0};
        for (auto g : gens) {
            if (hset.count(g))
                continue;
            h = extend(h, hset, g);
            hset.insert(h.begin(), h.end());
        }
        std::sort(h.begin(), h.end());
        return h;
    }

    SymmetryGroup finish(std::vector<std::uint64_t> codes) const
    {
        std::sort(codes.begin(), codes.end());
        SymmetryGroup g;
        g.d_ = d;
        std::vector<std::int64_t> raw(codes.size() * d);
        std::int64_t common = n;
        for (std::size_t i = 0; i < codes.size(); ++i) {
            decode(codes[i], &raw[i * d]);
            for (std::size_t j = 0; j < d; ++j)
                common = std::gcd(common, raw[i * d + j]);
        }
        // shrink the modulus to the true common denominator
        g.modulus_ = n / common;
        g.scaled_.resize(raw.size());
        for (std::size_t k = 0; k < raw.size(); ++k)
            g.scaled_[k] = raw[k] / common;
        for (auto c : codes)
            g.elements_.push_back(to_phase(c));

        // greedy canonical generators
        std::vector<std::uint64_t> span{0};
        std::unordered_set<std::uint64_t> span_set{0};
        std::vector<std::uint64_t> gens;
        for (auto c : codes) {
            if (span_set.count(c))
                continue;
            span = extend(span, span_set, c);
            span_set.insert(span.begin(), span.end());
            gens.push_back(c);
        }
        for (auto c : gens)
            g.generators_.push_back(to_phase(c));

        // structure from the column lattice of [generators | N I]
        const std::int64_t m = g.modulus_;
        IntMat x(d, gens.size() + d);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::vector<std::int64_t> v(d);
            decode(gens[k], v.data());
            for (std::size_t j = 0; j < d; ++j)
                x(j, k) = v[j] / common;
        }
        for (std::size_t j = 0; j < d; ++j)
            x(j, gens.size() + j) = m;
        if (d > 0) {
            SnfResult snf = smith_normal_form(x);
            for (const auto& e : snf.invariant_factors) {
                Int f = Int(m) / e;
                if (f > 1)
                    g.factors_.push_back(f);
            }
            std::sort(g.factors_.begin(), g.factors_.end());
        }
        return g;
    }
};

namespace {

std::int64_t modulus_of(const std::vector<PhaseVector>& vs)
{
    std::int64_t n = 1;
    for (const auto& v : vs)
        for (std::size_t j = 0; j < v.size(); ++j)
            n = lcm_of(n, to_i64(v[j].get_den()));
    return n;
}

} // namespace

SymmetryGroup SymmetryGroup::generated_by(std::size_t d, const std::vector<PhaseVector>& generators)
{
    for (const auto& g : generators)
        if (g.size() != d)
            throw MathError("generator " + to_string(g) + " has wrong length");
    GroupBuilder b(d, modulus_of(generators));
    std::vector<std::uint64_t> codes;
    for (const auto& g : generators)
        codes.push_back(b.from_phase(g));
    return b.finish(b.close(codes));
}

bool SymmetryGroup::contains(const PhaseVector& v) const
{
    if (v.size() != d_)
        return false;
    return std::binary_search(elements_.begin(), elements_.end(), v);
}

bool SymmetryGroup::is_subgroup_of(const SymmetryGroup& other) const
{
    return std::all_of(generators_.begin(), generators_.end(), [&](const PhaseVector& g) { return other.contains(g); });
}

namespace {

SymmetryGroup build_aut_group(const Potential& p)
{
    const std::size_t d = p.dimension();
    Int det = abs(determinant(p.exponents()));
    if (det > static_cast<long>(max_group_order))
        throw MathError("|det A| = " + det.get_str() + " exceeds the group size cap");
    RatMat inv = invert_rational_matrix(p.exponents());
    std::vector<PhaseVector> cols;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rat> c(d);
        for (std::size_t i = 0; i < d; ++i)
            c[i] = inv(i, j);
        cols.emplace_back(std::move(c));
    }
    return SymmetryGroup::generated_by(d, cols);
}

} // namespace

SymmetryGroup aut_group(const Potential& p)
{
    // Aut(W) is rebuilt constantly by duality checks; memoize by exponent text
    static std::mutex mutex;
    static std::map<std::string, SymmetryGroup> cache;
    std::string key = p.to_text();
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    SymmetryGroup g = build_aut_group(p);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(g)).first->second;
}

PhaseVector grading_element(const Potential& p)
{
    return PhaseVector(compute_charges(p).q);
}

SymmetryGroup grading_subgroup(const Potential& p)
{
    return SymmetryGroup::generated_by(p.dimension(), {grading_element(p)});
}

SymmetryGroup sl_subgroup(const Potential& p)
{
    SymmetryGroup aut = aut_group(p);
    std::vector<PhaseVector> members;
    for (const auto& e : aut.elements())
        if (is_integer(e.sum()))
            members.push_back(e);
    // members is closed; generating by all of it reproduces it
    return SymmetryGroup::generated_by(p.dimension(), members);
}

bool in_aut(const Potential& p, const PhaseVector& v)
{
    const std::size_t d = p.dimension();
    if (v.size() != d)
        return false;
    for (std::size_t i = 0; i < d; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < d; ++j)
            s += Rat(p.exponents()(i, j)) * v[j];
        if (!is_integer(s))
            return false;
    }
    return true;
}

bool is_admissible(const Potential& p, const SymmetryGroup& g)
{
    if (g.dimension() != p.dimension() || !g.contains(grading_element(p)))
        return false;
    for (const auto& e : g.generators())
        if (!in_aut(p, e) || !is_integer(e.sum()))
            return false;
    return true;
}

std::vector<SymmetryGroup> admissible_subgroups(const Potential& p)
{
    const std::size_t d = p.dimension();
    SymmetryGroup sl = sl_subgroup(p);
    PhaseVector j = grading_element(p);
    if (!sl.contains(j))
        throw ValidationError("J_W not in SL_W: the Calabi-Yau condition fails");

    GroupBuilder b(d, sl.modulus());
    std::vector<std::uint64_t> sl_codes;
    for (const auto& e : sl.elements())
        sl_codes.push_back(b.from_phase(e));

    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::vector<std::uint64_t>> queue{b.close({b.from_phase(j)})};
    seen.insert(queue.front());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto h = queue[qi];
        std::unordered_set<std::uint64_t> hset(h.begin(), h.end());
        std::unordered_set<std::uint64_t> covered = hset;
        for (auto g : sl_codes) {
            if (covered.count(g))
                continue;
            for (auto e : h)
                covered.insert(b.add(e, g));
            auto bigger = b.extend(h, hset, g);
            std::sort(bigger.begin(), bigger.end());
            if (seen.insert(bigger).second)
                queue.push_back(std::move(bigger));
        }
    }

    std::vector<SymmetryGroup> out;
    for (auto& codes : queue)
        out.push_back(b.finish(codes));
    std::sort(out.begin(), out.end(), [](const SymmetryGroup& x, const SymmetryGroup& y) {
        if (x.order() != y.order())
            return x.order() < y.order();
        return x.elements() < y.elements();
    });
    return out;
}

SymmetryGroup dual_group(const Potential& p, const SymmetryGroup& g)
{
    const std::size_t d = p.dimension();
    for (const auto& e : g.generators())
        if (!in_aut(p, e))
            throw ValidationError("group element " + to_string(e) + " is not a symmetry of the potential");
    Potential dual = transpose_potential(p);
    SymmetryGroup aut_dual = aut_group(dual);
    const IntMat& a = p.exponents();
    // integer pairing: pbar = x / M, e = y / m, so pbar.A.e in Z iff M m divides x.A.y
    const std::int64_t big = aut_dual.modulus(), m = g.modulus();
    const __int128 mod = static_cast<__int128>(big) * m;
    std::vector<std::vector<std::int64_t>> ay; // A y for each generator y
    for (const auto& e : g.generators()) {
        std::vector<std::int64_t> v(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                v[i] += a(i, k).get_si() * Rat(e[k] * m).get_num().get_si();
        ay.push_back(std::move(v));
    }
    std::vector<PhaseVector> members;
    for (std::size_t idx = 0; idx < aut_dual.order(); ++idx) {
        const std::int64_t* x = aut_dual.scaled(idx);
        bool ok = true;
        for (const auto& v : ay) {
            __int128 s = 0;
            for (std::size_t i = 0; i < d; ++i)
                s += static_cast<__int128>(x[i]) * v[i];
            if (s % mod != 0) {
                ok = false;
                break;
            }
        }
        if (ok)
            members.push_back(aut_dual.elements()[idx]);
    }
    return SymmetryGroup::generated_by(d, members);
}

std::vector<PhaseVector> box_representatives(const SymmetryGroup& g)
{
    return g.elements();
}

std::vector<std::string> serialize_generators(const SymmetryGroup& g)
{
    std::vector<std::string> out;
    for (const auto& e : g.generators())
        out.push_back(to_string(e));
    return out;
}

} // namespace lgell
