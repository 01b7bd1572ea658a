// Dense reference constructions used as independent oracles.
#pragma once

#include "circfac/densepoly.hpp"
#include "circfac/univar.hpp"

#include <random>

namespace oracle {

using namespace circfac;

inline DensePoly one(int n) { return DensePoly::constant(n, Scalar(1)); }

// pseudo-quotient around 0 with total-degree truncation
inline DensePoly pseudo_quotient(const DensePoly& f, const DensePoly& g, int D, int d)
{
    const int n = f.nvars();
    Scalar beta = g.coeff(Exponents(n, 0));
    Scalar binv = beta.inverse();
    const int e = D - d;
    DensePoly gt = one(n) - g.scaled(binv);
    DensePoly T = one(n), pw = one(n);
    for (int i = 1; i <= e; ++i) {
        pw = pw.mul_truncated(gt, e);
        T = T + pw;
    }
    return f.scaled(binv).mul_truncated(T, e);
}

struct DenseResultant {
    DensePoly num, den;
};

inline DensePoly y_truncate(const DensePoly& p, int yvar, int k)
{
    DensePoly out(p.nvars(), p.field());
    for (const auto& [e, c] : p.sorted_terms())
        if (e[yvar] <= k) out.add_term(e, c);
    return out;
}

inline DenseResultant pseudo_resultant(const DensePoly& f, const DensePoly& g, int yvar, int D, int d)
{
    const int n = f.nvars();
    DensePoly df = f.derivative(yvar);
    DensePoly S = df * df;
    const int dq = 2 * (D - 1) - d;
    if (dq < 0) return {S, one(n)};
    DensePoly g0 = g.partial_evaluate(yvar, Scalar(0));
    DensePoly diff = g0 - g;
    DensePoly T(n);
    for (int i = 0; i <= dq; ++i) T = T + g0.pow(dq - i) * diff.pow(i);
    DensePoly Qnum = y_truncate(S * T, yvar, dq);
    DensePoly den = g0.pow(dq + 1);
    return {den * S - Qnum * g, den};
}

inline upoly::Poly univariate_pseudo_resultant(const upoly::Poly& f, const upoly::Poly& g, int D, int d)
{
    upoly::Poly df = derivative(f);
    upoly::Poly S = upoly::mul(df, df);
    const int dq = 2 * (D - 1) - d;
    if (dq < 0) return S;
    Rational beta = g.at(0);
    upoly::Poly gt = g;
    for (auto& c : gt) c = -c / beta;
    gt[0] += 1;
    upoly::Poly T = {1}, pw = {1};
    for (int i = 1; i <= dq; ++i) {
        pw = upoly::mul(pw, gt);
        T.resize(std::max(T.size(), pw.size()));
        for (std::size_t j = 0; j < pw.size(); ++j) T[j] += pw[j];
    }
    upoly::Poly P = upoly::mul(S, T);
    for (auto& c : P) c /= beta;
    if (static_cast<int>(P.size()) > dq + 1) P.resize(dq + 1);
    upoly::trim(P);
    upoly::Poly R = upoly::sub(S, upoly::mul(P, g));
    upoly::trim(R);
    return R;
}

// restriction x -> a of a dense polynomial, as a univariate in yvar
inline upoly::Poly restrict_to_y(const DensePoly& p, const std::vector<Rational>& a, int yvar)
{
    DensePoly q = p;
    int k = 0;
    for (int j = 0; j < p.nvars(); ++j) {
        if (j == yvar) continue;
        q = q.partial_evaluate(j, Scalar(a[k++]));
    }
    upoly::Poly out;
    for (const auto& s : q.univariate_coeffs(yvar)) out.push_back(s.c0());
    upoly::trim(out);
    return out;
}

// random polynomial in x_0..x_{n-2} (y = last variable absent) of total degree <= deg
inline DensePoly random_x_poly(std::mt19937_64& rng, int nvars, int deg, int terms, int range = 4)
{
    DensePoly p(nvars);
    std::uniform_int_distribution<int> c(-range, range);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        int left = std::uniform_int_distribution<int>(0, deg)(rng);
        for (int s = 0; s < left; ++s) e[std::uniform_int_distribution<int>(0, nvars - 2)(rng)]++;
        p.add_term(e, Scalar(c(rng)));
    }
    return p;
}

// monic in y (last variable), total degree d, nonzero y^0 coefficient
inline DensePoly random_monic_y(std::mt19937_64& rng, int nvars, int d, int terms = 2)
{
    const int y = nvars - 1;
    while (true) {
        DensePoly g = DensePoly::variable(nvars, y).pow(d);
        for (int j = 0; j < d; ++j) g = g + random_x_poly(rng, nvars, d - j, terms) * DensePoly::variable(nvars, y).pow(j);
        if (!g.partial_evaluate(y, Scalar(0)).is_zero() && g.total_degree() == d) return g;
    }
}

}  // namespace oracle
