#include "arcgeo/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace arcgeo {

Polynomial Polynomial::constant(GaussInt c)
{
    Polynomial p;
    p.add_term({}, c);
    return p;
}

Polynomial Polynomial::variable(int v)
{
    Polynomial p;
    p.add_term({{v, 1}}, 1);
    return p;
}

void Polynomial::add_term(const Monomial& m, GaussInt c)
{
    if (c.is_zero())
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero())
        terms_.erase(it);
}

int Polynomial::degree() const
{
    int d = 0;
    for (auto& [m, c] : terms_) {
        int s = 0;
        for (auto& f : m)
            s += f.second;
        d = std::max(d, s);
    }
    return d;
}

std::vector<int> Polynomial::variables() const
{
    std::set<int> vs;
    for (auto& [m, c] : terms_)
        for (auto& f : m)
            vs.insert(f.first);
    return {vs.begin(), vs.end()};
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    for (auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    for (auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

static Monomial mul_mono(const Monomial& a, const Monomial& b)
{
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            r.add_term(mul_mono(ma, mb), ca * cb);
    return r;
}

cplx Polynomial::eval(const std::vector<cplx>& x) const
{
    cplx s = 0;
    for (auto& [m, c] : terms_) {
        cplx t = c.value();
        for (auto& f : m)
            for (int k = 0; k < f.second; ++k)
                t *= x[f.first];
        s += t;
    }
    return s;
}

cplx Polynomial::eval_grad(const std::vector<cplx>& x, std::vector<std::pair<int, cplx>>& grad) const
{
    grad.clear();
    std::map<int, cplx> g;
    cplx s = 0;
    for (auto& [m, c] : terms_) {
        cplx t = c.value();
        for (auto& f : m)
            t *= std::pow(x[f.first], f.second);
        s += t;
        for (std::size_t i = 0; i < m.size(); ++i) {
            cplx d = c.value() * static_cast<double>(m[i].second);
            for (std::size_t j = 0; j < m.size(); ++j) {
                int e = (i == j) ? m[j].second - 1 : m[j].second;
                for (int k = 0; k < e; ++k)
                    d *= x[m[j].first];
            }
            g[m[i].first] += d;
        }
    }
    grad.assign(g.begin(), g.end());
    return s;
}

Polynomial Polynomial::renamed(const std::vector<int>& map) const
{
    Polynomial r;
    for (auto& [m, c] : terms_) {
        Polynomial t = constant(c);
        for (auto& f : m)
            for (int k = 0; k < f.second; ++k)
                t = t * variable(map[f.first]);
        r += t;
    }
    return r;
}

bool Polynomial::divide_linear(int var, GaussInt c, Polynomial& quotient) const
{
    // group by power of var: p = sum_k p_k var^k
    std::map<int, Polynomial> by_pow;
    for (auto& [m, coef] : terms_) {
        int e = 0;
        Monomial rest;
        for (auto& f : m) {
            if (f.first == var)
                e = f.second;
            else
                rest.push_back(f);
        }
        by_pow[e].add_term(rest, coef);
    }
    quotient = Polynomial();
    if (by_pow.empty())
        return true;
    int top = by_pow.rbegin()->first;
    if (top == 0)
        return false;
    // synthetic division by (var + c)
    std::vector<Polynomial> q(top);
    Polynomial carry = by_pow[top];
    for (int k = top - 1; k >= 0; --k) {
        q[k] = carry;
        carry = by_pow[k] - constant(c) * q[k];
    }
    if (!carry.is_zero())
        return false;
    for (int k = 0; k < top; ++k)
        for (auto& [m, coef] : q[k].terms_)
            quotient.add_term(k ? mul_mono(m, {{var, k}}) : m, coef);
    return true;
}

static std::string coef_string(GaussInt c)
{
    std::ostringstream os;
    if (c.im == 0)
        os << c.re;
    else if (c.re == 0)
        os << c.im << "i";
    else
        os << "(" << c.re << (c.im > 0 ? "+" : "") << c.im << "i)";
    return os.str();
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    // higher degree first, then by variable names
    std::vector<std::pair<std::string, std::pair<Monomial, GaussInt>>> rows;
    for (auto& [m, c] : terms_) {
        std::string key;
        int deg = 0;
        for (auto& f : m)
            deg += f.second;
        key = std::string(1, static_cast<char>('z' - deg));
        std::vector<std::string> parts;
        for (auto& f : m)
            for (int k = 0; k < f.second; ++k)
                parts.push_back(names[f.first]);
        std::sort(parts.begin(), parts.end());
        for (auto& p : parts)
            key += p + "*";
        rows.push_back({key, {m, c}});
    }
    std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::ostringstream os;
    bool first = true;
    for (auto& [key, mc] : rows) {
        const Monomial& m = mc.first;
        GaussInt c = mc.second;
        std::vector<std::string> parts;
        for (auto& f : m)
            for (int k = 0; k < f.second; ++k)
                parts.push_back(names[f.first]);
        std::sort(parts.begin(), parts.end());
        bool neg = c.im == 0 && c.re < 0;
        GaussInt a = neg ? -c : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = a.re == 1 && a.im == 0;
        if (!unit || parts.empty()) {
            os << coef_string(a);
            if (!parts.empty())
                os << "*";
        }
        for (std::size_t i = 0; i < parts.size(); ++i)
            os << (i ? "*" : "") << parts[i];
    }
    return os.str();
}

}  // namespace arcgeo
