#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace arcgeo {

using cplx = std::complex<double>;

struct GaussInt {
    long long re = 0;
    long long im = 0;

    GaussInt() = default;
    GaussInt(long long r, long long i = 0) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    cplx value() const { return {static_cast<double>(re), static_cast<double>(im)}; }

    friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(GaussInt a, GaussInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(GaussInt a, GaussInt b) { return !(a == b); }
};

// sorted (variable, exponent) pairs, exponents > 0
using Monomial = std::vector<std::pair<int, int>>;

class Polynomial {
public:
    Polynomial() = default;
    static Polynomial constant(GaussInt c);
    static Polynomial variable(int v);

    const std::map<Monomial, GaussInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    std::vector<int> variables() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    cplx eval(const std::vector<cplx>& x) const;
    // value and gradient entries (variable index, partial derivative)
    cplx eval_grad(const std::vector<cplx>& x, std::vector<std::pair<int, cplx>>& grad) const;

    // variables renamed through map[old] = new
    Polynomial renamed(const std::vector<int>& map) const;
    // exact division by (x_var + c); false when the remainder is non-zero
    bool divide_linear(int var, GaussInt c, Polynomial& quotient) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void add_term(const Monomial& m, GaussInt c);
    std::map<Monomial, GaussInt> terms_;
};

}  // namespace arcgeo
