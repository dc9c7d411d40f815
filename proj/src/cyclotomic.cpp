#include "lgell/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace lgell {

namespace {

// Exact quotient of integer polynomials; divisor must be monic.
std::vector<Int> poly_divexact(std::vector<Int> num, const std::vector<Int>& den)
{
    const std::size_t dd = den.size() - 1;
    std::vector<Int> q(num.size() - dd);
    for (std::size_t k = num.size(); k-- > dd;) {
        Int c = num[k];
        q[k - dd] = c;
        if (c == 0)
            continue;
        for (std::size_t i = 0; i <= dd; ++i)
            num[k - dd + i] -= c * den[i];
    }
    for (std::size_t i = 0; i < dd; ++i)
        if (num[i] != 0)
            throw MathError("cyclotomic division left a remainder");
    return q;
}

} // namespace

std::vector<Int> cyclotomic_polynomial(std::uint32_t n)
{
    if (n == 0)
        throw MathError("cyclotomic polynomial of order 0");
    static std::mutex mu;
    static std::map<std::uint32_t, std::vector<Int>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end())
            return it->second;
    }
    std::vector<Int> p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (std::uint32_t d = 1; d < n; ++d)
        if (n % d == 0)
            p = poly_divexact(std::move(p), cyclotomic_polynomial(d));
    std::lock_guard lock(mu);
    cache.emplace(n, p);
    return p;
}

std::uint32_t euler_phi(std::uint32_t n)
{
    std::uint32_t result = n;
    std::uint32_t m = n;
    for (std::uint32_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

struct CycField {
    std::uint32_t n = 1;
    std::uint32_t phi = 1;
    // power[k] = zeta^k in the power basis, for 0 <= k < max(n, 2 phi - 1)
    std::vector<std::vector<Int>> power;
    std::vector<std::complex<double>> zeta_pow; // zeta^i, i < phi
};

namespace {

const CycField* field_for(std::uint32_t n)
{
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<CycField>> fields;
    std::lock_guard lock(mu);
    if (auto it = fields.find(n); it != fields.end())
        return it->second.get();

    auto f = std::make_unique<CycField>();
    f->n = n;
    std::vector<Int> phi_poly = cyclotomic_polynomial(n);
    f->phi = static_cast<std::uint32_t>(phi_poly.size() - 1);
    const std::size_t count = std::max<std::size_t>(n, 2 * f->phi);
    f->power.assign(count, std::vector<Int>(f->phi));
    std::vector<Int> cur(f->phi);
    cur[0] = 1;
    for (std::size_t k = 0; k < count; ++k) {
        f->power[k] = cur;
        // multiply by zeta: shift, then fold the top coefficient with Phi_N (monic)
        Int top = cur[f->phi - 1];
        for (std::size_t i = f->phi - 1; i > 0; --i)
            cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::size_t i = 0; i < f->phi; ++i)
            cur[i] -= top * phi_poly[i];
    }
    for (std::uint32_t i = 0; i < f->phi; ++i)
        f->zeta_pow.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / n));
    const CycField* raw = f.get();
    fields.emplace(n, std::move(f));
    return raw;
}

} // namespace

CycNum::CycNum() : field_(field_for(1)), num_(1), den_(1) {}

CycNum::CycNum(const Rat& r) : field_(field_for(1)), num_{r.get_num()}, den_(r.get_den()) {}

CycNum::CycNum(long v) : field_(field_for(1)), num_{Int(v)}, den_(1) {}

CycNum::CycNum(const Rat& r, std::uint32_t conductor) : field_(field_for(conductor)), num_(field_->phi), den_(r.get_den())
{
    num_[0] = r.get_num();
}

CycNum CycNum::root_of_unity(std::int64_t k, std::uint32_t n)
{
    if (n == 0)
        throw MathError("root of unity of order 0");
    CycNum c;
    c.field_ = field_for(n);
    std::int64_t e = k % static_cast<std::int64_t>(n);
    if (e < 0)
        e += n;
    c.num_ = c.field_->power[static_cast<std::size_t>(e)];
    c.den_ = 1;
    return c;
}

CycNum CycNum::from_numerators(std::uint32_t conductor, std::vector<Int> num, Int den)
{
    CycNum c;
    c.field_ = field_for(conductor);
    if (num.size() != c.field_->phi)
        throw MathError("numerator length does not match phi(N)");
    if (den <= 0)
        throw MathError("denominator must be positive");
    c.num_ = std::move(num);
    c.den_ = std::move(den);
    c.normalize();
    return c;
}

std::uint32_t CycNum::conductor() const { return field_->n; }
std::uint32_t CycNum::degree() const { return field_->phi; }

Rat CycNum::coeff(std::uint32_t i) const
{
    if (i >= num_.size())
        return 0;
    Rat r(num_[i], den_);
    r.canonicalize();
    return r;
}

bool CycNum::is_zero() const
{
    for (const auto& v : num_)
        if (v != 0)
            return false;
    return true;
}

bool CycNum::is_rational() const
{
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0)
            return false;
    return true;
}

std::optional<Rat> CycNum::rational_value() const
{
    if (!is_rational())
        return std::nullopt;
    return coeff(0);
}

std::complex<double> CycNum::to_complex() const
{
    std::complex<double> acc = 0;
    const double den = den_.get_d();
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0)
            acc += (num_[i].get_d() / den) * field_->zeta_pow[i];
    return acc;
}

void CycNum::normalize()
{
    if (den_ == 1)
        return;
    Int g = den_;
    for (const auto& v : num_) {
        if (g == 1)
            break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g != 1) {
        for (auto& v : num_)
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

CycNum CycNum::lifted_to(std::uint32_t n) const
{
    if (field_->n == n)
        return *this;
    if (field_->n != 1)
        throw MathError("cannot re-express a conductor-" + std::to_string(field_->n) + " element over conductor " +
                        std::to_string(n));
    CycNum c = *this;
    c.field_ = field_for(n);
    c.num_.resize(c.field_->phi);
    return c;
}

void CycNum::unify_with(const CycNum& o)
{
    if (field_ == o.field_ || o.field_->n == 1)
        return;
    if (field_->n == 1) {
        *this = lifted_to(o.field_->n);
        return;
    }
    throw MathError("conductor mismatch: " + std::to_string(field_->n) + " vs " + std::to_string(o.field_->n));
}

CycNum& CycNum::operator+=(const CycNum& o)
{
    unify_with(o);
    if (den_ == o.den_) {
        for (std::size_t i = 0; i < o.num_.size(); ++i)
            num_[i] += o.num_[i];
    } else {
        for (auto& v : num_)
            v *= o.den_;
        for (std::size_t i = 0; i < o.num_.size(); ++i)
            num_[i] += o.num_[i] * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

CycNum CycNum::operator-() const
{
    CycNum c = *this;
    for (auto& v : c.num_)
        v = -v;
    return c;
}

CycNum& CycNum::operator-=(const CycNum& o)
{
    return *this += -o;
}

CycNum& CycNum::operator*=(const CycNum& o)
{
    if (o.field_->n == 1) {
        for (auto& v : num_)
            v *= o.num_[0];
        den_ *= o.den_;
        normalize();
        return *this;
    }
    if (field_->n == 1) {
        CycNum c = o;
        for (auto& v : c.num_)
            v *= num_[0];
        c.den_ *= den_;
        c.normalize();
        return *this = std::move(c);
    }
    unify_with(o);
    const std::size_t phi = field_->phi;
    std::vector<Int> out(phi);
    for (std::size_t i = 0; i < phi; ++i) {
        if (num_[i] == 0)
            continue;
        for (std::size_t j = 0; j < phi; ++j) {
            if (o.num_[j] == 0)
                continue;
            Int p = num_[i] * o.num_[j];
            const auto& red = field_->power[i + j];
            for (std::size_t k = 0; k < phi; ++k)
                if (red[k] != 0)
                    out[k] += p * red[k];
        }
    }
    num_ = std::move(out);
    den_ *= o.den_;
    normalize();
    return *this;
}

void CycNum::add_product(const CycNum& a, const CycNum& b)
{
    if (den_ != 1 || a.den_ != 1 || b.den_ != 1) {
        *this += a * b;
        return;
    }
    const CycField* f = a.field_->n == 1 ? b.field_ : a.field_;
    if (f->n != 1 && field_->n == 1)
        *this = lifted_to(f->n);
    if (f->n != 1 && field_ != f)
        throw MathError("conductor mismatch in add_product");
    if (a.field_->n == 1 && b.field_->n == 1) {
        mpz_addmul(num_[0].get_mpz_t(), a.num_[0].get_mpz_t(), b.num_[0].get_mpz_t());
        return;
    }
    if (a.field_->n == 1 || b.field_->n == 1) {
        const CycNum& s = a.field_->n == 1 ? a : b;
        const CycNum& v = a.field_->n == 1 ? b : a;
        for (std::size_t i = 0; i < num_.size(); ++i)
            mpz_addmul(num_[i].get_mpz_t(), v.num_[i].get_mpz_t(), s.num_[0].get_mpz_t());
        return;
    }
    const std::size_t phi = f->phi;
    thread_local std::vector<Int> conv;
    if (conv.size() < 2 * phi)
        conv.resize(2 * phi);
    for (std::size_t k = 0; k + 1 < 2 * phi; ++k)
        conv[k] = 0;
    for (std::size_t i = 0; i < phi; ++i) {
        if (a.num_[i] == 0)
            continue;
        for (std::size_t j = 0; j < phi; ++j)
            if (b.num_[j] != 0)
                mpz_addmul(conv[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
    for (std::size_t k = 0; k < phi; ++k)
        num_[k] += conv[k];
    for (std::size_t k = phi; k + 1 < 2 * phi; ++k) {
        if (conv[k] == 0)
            continue;
        const auto& red = f->power[k];
        for (std::size_t i = 0; i < phi; ++i)
            if (red[i] != 0)
                mpz_addmul(num_[i].get_mpz_t(), conv[k].get_mpz_t(), red[i].get_mpz_t());
    }
}

bool operator==(const CycNum& a, const CycNum& b)
{
    if (a.field_ == b.field_)
        return a.den_ == b.den_ && a.num_ == b.num_;
    // a rational element equals its lift
    if (a.field_->n == 1 && b.is_rational())
        return a.den_ == b.den_ && a.num_[0] == b.num_[0];
    if (b.field_->n == 1 && a.is_rational())
        return a.den_ == b.den_ && a.num_[0] == b.num_[0];
    return a.is_zero() && b.is_zero();
}

Rat cyc_to_rational(const CycNum& c)
{
    if (auto r = c.rational_value())
        return *r;
    std::vector<Rat> residual;
    for (std::uint32_t i = 1; i < c.degree(); ++i)
        residual.push_back(c.coeff(i));
    throw NotRationalError("value is not rational: " + to_string(c), std::move(residual));
}

std::string to_string(const CycNum& c)
{
    if (auto r = c.rational_value())
        return to_string(*r);
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = 0; i < c.degree(); ++i) {
        Rat v = c.coeff(i);
        if (v == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << '(' << v.get_str() << ')';
        if (i > 0)
            os << "*z" << c.conductor() << '^' << i;
    }
    return os.str();
}

} // namespace lgell
