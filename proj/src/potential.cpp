#include "lgell/potential.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace lgell {

Potential::Potential(IntMat exponents) : exponents_(std::move(exponents))
{
    if (exponents_.rows() != exponents_.cols())
        throw ValidationError("non-square system: " + std::to_string(exponents_.rows()) + " monomials in " +
                              std::to_string(exponents_.cols()) + " variables");
    for (std::size_t i = 0; i < exponents_.rows(); ++i)
        for (std::size_t j = 0; j < exponents_.cols(); ++j)
            if (exponents_(i, j) < 0)
                throw ValidationError("negative exponent in monomial " + std::to_string(i + 1));
    if (determinant(exponents_) == 0)
        throw ValidationError("exponent matrix has zero determinant");
    for (std::size_t j = 0; j < exponents_.cols(); ++j)
        names_.push_back("x" + std::to_string(j + 1));
}

long Potential::exponent(std::size_t monomial, std::size_t var) const
{
    return exponents_(monomial, var).get_si();
}

std::string Potential::to_text() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (i > 0)
            os << '+';
        bool first = true;
        for (std::size_t j = 0; j < dimension(); ++j) {
            long e = exponent(i, j);
            if (e == 0)
                continue;
            if (!first)
                os << '*';
            first = false;
            os << names_[j];
            if (e > 1)
                os << '^' << e;
        }
    }
    return os.str();
}

namespace {

class MonomialParser {
public:
    explicit MonomialParser(std::string_view text) : text_(text) {}

    std::vector<std::map<std::size_t, long>> parse()
    {
        std::vector<std::map<std::size_t, long>> monomials;
        monomials.push_back(monomial());
        skip_ws();
        while (pos_ < text_.size()) {
            expect('+');
            monomials.push_back(monomial());
            skip_ws();
        }
        return monomials;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'" + found(), pos_);
        ++pos_;
    }

    std::string found() const
    {
        if (pos_ >= text_.size())
            return ", found end of input";
        return std::string(", found '") + text_[pos_] + "'";
    }

    long positive_integer()
    {
        skip_ws();
        std::size_t start = pos_;
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000)
                throw ParseError("integer too large", start);
            ++pos_;
        }
        if (pos_ == start)
            throw ParseError("expected a positive integer" + found(), pos_);
        if (v == 0)
            throw ParseError("expected a positive integer, found 0", start);
        return v;
    }

    std::map<std::size_t, long> monomial()
    {
        std::map<std::size_t, long> m;
        factor(m);
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            factor(m);
            skip_ws();
        }
        return m;
    }

    void factor(std::map<std::size_t, long>& m)
    {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'x')
            throw ParseError("expected a variable 'x<k>'" + found(), pos_);
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected a variable index" + found(), pos_);
        auto var = static_cast<std::size_t>(positive_integer());
        long e = 1;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            e = positive_integer();
        }
        m[var] += e;
    }
};

Potential from_rows(const std::vector<std::vector<long>>& rows)
{
    for (const auto& r : rows)
        if (r.size() != rows.size())
            throw ValidationError("non-square system: " + std::to_string(rows.size()) + " monomials, row of length " +
                                  std::to_string(r.size()));
    return Potential(int_matrix(rows));
}

} // namespace

Potential parse_potential(std::string_view text)
{
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first])))
        ++first;
    if (first < text.size() && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
        }
        if (!j.contains("monomials") || !j["monomials"].is_array())
            throw ParseError("JSON potential needs a \"monomials\" array", first);
        std::vector<std::vector<long>> rows;
        for (const auto& row : j["monomials"]) {
            if (!row.is_array())
                throw ParseError("each monomial must be an array of exponents", first);
            std::vector<long> r;
            for (const auto& e : row) {
                if (!e.is_number_integer())
                    throw ParseError("exponents must be integers", first);
                r.push_back(e.get<long>());
            }
            rows.push_back(std::move(r));
        }
        if (rows.empty())
            throw ParseError("empty monomial list", first);
        return from_rows(rows);
    }

    auto monomials = MonomialParser(text).parse();
    std::size_t d = monomials.size();
    std::size_t max_var = 0;
    for (const auto& m : monomials)
        for (const auto& [v, e] : m)
            max_var = std::max(max_var, v);
    if (max_var != d)
        throw ValidationError("non-square system: " + std::to_string(d) + " monomials but variables up to x" +
                              std::to_string(max_var));
    std::vector<std::vector<long>> rows(d, std::vector<long>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& [v, e] : monomials[i])
            rows[i][v - 1] = e;
    return from_rows(rows);
}

std::string to_string(AtomKind k)
{
    switch (k) {
    case AtomKind::fermat:
        return "fermat";
    case AtomKind::loop:
        return "loop";
    case AtomKind::chain:
        return "chain";
    }
    return "?";
}

AtomDecomposition decompose_atoms(const Potential& p)
{
    const std::size_t d = p.dimension();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> head_row(d, none); // row in which variable j carries the leading power
    std::vector<std::size_t> next(d, none);
    std::vector<long> power(d, 0);
    auto reject = [](std::size_t row, const std::string& why) {
        throw ValidationError("not an invertible potential: monomial " + std::to_string(row + 1) + " " + why);
    };

    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < d; ++j)
            if (p.exponent(i, j) != 0)
                support.push_back(j);
        std::size_t head = none, pointer = none;
        if (support.size() == 1) {
            head = support[0];
            if (p.exponent(i, head) < 2)
                reject(i, "is linear");
        } else if (support.size() == 2) {
            long e0 = p.exponent(i, support[0]), e1 = p.exponent(i, support[1]);
            if (e0 >= 2 && e1 == 1) {
                head = support[0];
                pointer = support[1];
            } else if (e1 >= 2 && e0 == 1) {
                head = support[1];
                pointer = support[0];
            } else {
                reject(i, "is not of the form x_j^a x_k with a >= 2");
            }
        } else {
            reject(i, "involves " + std::to_string(support.size()) + " variables");
        }
        if (head_row[head] != none)
            throw ValidationError("not an invertible potential: monomials " + std::to_string(head_row[head] + 1) +
                                  " and " + std::to_string(i + 1) + " both lead with x" + std::to_string(head + 1));
        head_row[head] = i;
        next[head] = pointer;
        power[head] = p.exponent(i, head);
    }
    for (std::size_t j = 0; j < d; ++j)
        if (head_row[j] == none)
            throw ValidationError("not an invertible potential: no monomial leads with x" + std::to_string(j + 1));

    std::vector<int> indegree(d, 0);
    for (std::size_t j = 0; j < d; ++j)
        if (next[j] != none && ++indegree[next[j]] > 1)
            throw ValidationError("not an invertible potential: monomial " + std::to_string(head_row[j] + 1) +
                                  " makes x" + std::to_string(next[j] + 1) + " a branch point");

    AtomDecomposition out;
    std::vector<bool> seen(d, false);
    auto make_atom = [&](std::size_t start, AtomKind kind) {
        Atom a{kind, {}, {}, {}};
        std::size_t v = start;
        do {
            seen[v] = true;
            a.variables.push_back(v);
            a.exponents.push_back(power[v]);
            a.monomials.push_back(head_row[v]);
            v = next[v];
        } while (v != none && v != start);
        return a;
    };
    for (std::size_t j = 0; j < d; ++j) {
        if (seen[j] || indegree[j] != 0)
            continue;
        Atom a = make_atom(j, AtomKind::chain);
        if (a.variables.size() == 1)
            a.kind = AtomKind::fermat;
        out.atoms.push_back(std::move(a));
    }
    for (std::size_t j = 0; j < d; ++j)
        if (!seen[j])
            out.atoms.push_back(make_atom(j, AtomKind::loop));

    std::sort(out.atoms.begin(), out.atoms.end(), [](const Atom& x, const Atom& y) {
        return *std::min_element(x.variables.begin(), x.variables.end()) <
               *std::min_element(y.variables.begin(), y.variables.end());
    });
    return out;
}

Potential transpose_potential(const Potential& p)
{
    return Potential(p.exponents().transposed());
}

Charges compute_charges(const Potential& p)
{
    const std::size_t d = p.dimension();
    RatMat inv = invert_rational_matrix(p.exponents());
    Charges c;
    c.q.assign(d, 0);
    Rat sum = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            c.q[i] += inv(i, j);
        if (c.q[i] <= 0 || c.q[i] >= 1)
            throw ValidationError("degenerate charges: q_" + std::to_string(i + 1) + " = " + to_string(c.q[i]));
        sum += c.q[i];
    }
    if (is_integer(sum) && sum > 0)
        c.cy_degree = sum.get_num().get_si();
    c.cbar = Rat(static_cast<long>(d)) - 2 * sum;
    c.cbar.canonicalize();
    return c;
}

} // namespace lgell
