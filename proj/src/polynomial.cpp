#include "orbiclan/polynomial.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace orbiclan {

namespace mp = boost::multiprecision;

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

Polynomial Polynomial::constant(const Rational& c)
{
    return Polynomial(std::vector<Rational>{c});
}

Polynomial Polynomial::x()
{
    return Polynomial(std::vector<Rational>{0, 1});
}

Polynomial Polynomial::linear_root(const Rational& root)
{
    return Polynomial(std::vector<Rational>{-root, 1});
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

const Rational& Polynomial::coeff(int k) const
{
    static const Rational zero = 0;
    if (k < 0 || k > degree())
        return zero;
    return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& Polynomial::leading() const
{
    if (coeffs_.empty())
        throw InputError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& at) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * at + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const
{
    std::vector<Rational> c(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        c[k] += coeffs_[k];
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k)
        c[k] += rhs.coeffs_[k];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const
{
    return *this + rhs.scaled(-1);
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const
{
    if (is_zero() || rhs.is_zero())
        return {};
    std::vector<Rational> c(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Rational& c) const
{
    std::vector<Rational> out = coeffs_;
    for (auto& x : out)
        x *= c;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return {};
    return scaled(1 / leading());
}

Polynomial Polynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        c[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const
{
    if (divisor.is_zero())
        throw InputError("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    if (degree() < dd)
        return {Polynomial{}, *this};
    std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1));
    const Rational lead_inv = 1 / divisor.leading();
    for (int k = degree(); k >= dd; --k) {
        Rational f = rem[static_cast<std::size_t>(k)] * lead_inv;
        quo[static_cast<std::size_t>(k - dd)] = f;
        if (f.is_zero())
            continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k - dd + j)] -= f * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string(const std::string& var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero())
            continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        bool unit = (mag == 1);
        if (!unit || k == 0)
            os << mag.str();
        if (k >= 1)
            os << (unit ? "" : "*") << var;
        if (k >= 2)
            os << "^" << k;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::tuple<Polynomial, Polynomial, Polynomial> extended_gcd(const Polynomial& a, const Polynomial& b)
{
    Polynomial r0 = a, r1 = b;
    Polynomial s0 = Polynomial::constant(1), s1;
    Polynomial t0, t1 = Polynomial::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Polynomial squarefree_part(const Polynomial& p)
{
    if (p.degree() <= 0)
        return p.monic();
    Polynomial g = gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

namespace {

// Integer coefficients of a positive multiple of p, with content removed.
std::vector<Integer> primitive_integer_coeffs(const Polynomial& p)
{
    Integer l = 1;
    for (const auto& c : p.coeffs())
        l = mp::lcm(l, Integer(mp::denominator(c)));
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        Rational scaled = c * Rational(l);
        out.push_back(mp::numerator(scaled));
        g = mp::gcd(g, out.back());
    }
    if (g > 1)
        for (auto& x : out)
            x /= g;
    return out;
}

std::vector<Integer> positive_divisors(Integer n)
{
    if (n < 0)
        n = -n;
    static const Integer limit("1000000000000");
    if (n > limit)
        throw RefusalError("rational root search: coefficient " + n.str() + " too large for divisor enumeration");
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

int sign(const Rational& r)
{
    return r.is_zero() ? 0 : (r > 0 ? 1 : -1);
}

int sign_variations(const std::vector<int>& signs)
{
    int count = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

} // namespace

std::vector<Rational> rational_roots(const Polynomial& p)
{
    if (p.is_zero())
        throw InputError("rational roots of the zero polynomial");
    std::set<Rational> roots;
    auto c = primitive_integer_coeffs(p);
    // Strip the x^k factor.
    std::size_t low = 0;
    while (low < c.size() && c[low] == 0)
        ++low;
    if (low > 0)
        roots.insert(Rational(0));
    std::vector<Integer> q(c.begin() + static_cast<long>(low), c.end());
    if (q.size() >= 2) {
        Polynomial reduced;
        {
            std::vector<Rational> rc;
            for (const auto& x : q)
                rc.emplace_back(x);
            reduced = Polynomial(std::move(rc));
        }
        for (const auto& num : positive_divisors(q.front()))
            for (const auto& den : positive_divisors(q.back()))
                for (int s : {1, -1}) {
                    Rational cand(num * s, den);
                    if (reduced(cand).is_zero())
                        roots.insert(cand);
                }
    }
    return {roots.begin(), roots.end()};
}

int count_real_roots(const Polynomial& p)
{
    if (p.is_zero())
        throw InputError("real roots of the zero polynomial");
    Polynomial sq = squarefree_part(p);
    if (sq.degree() <= 0)
        return 0;
    std::vector<Polynomial> chain{sq, sq.derivative()};
    while (!chain.back().is_zero()) {
        auto r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero())
            break;
        chain.push_back(r.scaled(-1));
    }
    std::vector<int> at_pos, at_neg;
    for (const auto& f : chain) {
        int s = sign(f.leading());
        at_pos.push_back(s);
        at_neg.push_back(f.degree() % 2 == 0 ? s : -s);
    }
    return sign_variations(at_neg) - sign_variations(at_pos);
}

int root_multiplicity(const Polynomial& p, const Rational& root)
{
    int m = 0;
    Polynomial cur = p;
    const Polynomial lin = Polynomial::linear_root(root);
    while (!cur.is_zero() && cur(root).is_zero()) {
        cur = cur.divmod(lin).first;
        ++m;
    }
    return m;
}

} // namespace orbiclan
