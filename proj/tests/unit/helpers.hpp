// Shared generators for the unit tests.
#pragma once

#include "circfac/circuit.hpp"
#include "circfac/densepoly.hpp"

#include <random>

namespace testutil {

using namespace circfac;

inline Rational small_rational(std::mt19937_64& rng, int range = 9, int den_range = 4)
{
    std::uniform_int_distribution<int> n(-range, range), d(1, den_range);
    return rat_normalize(n(rng), d(rng));
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, int n, int range = 9)
{
    std::vector<Rational> p;
    for (int i = 0; i < n; ++i) p.push_back(small_rational(rng, range));
    return p;
}

inline std::vector<Scalar> as_scalars(const std::vector<Rational>& p) { return {p.begin(), p.end()}; }

// random sparse dense polynomial over Q
inline DensePoly random_dense(std::mt19937_64& rng, int nvars, int degree, int terms, int coeff_range = 5)
{
    DensePoly p(nvars);
    std::uniform_int_distribution<int> c(-coeff_range, coeff_range);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        std::uniform_int_distribution<int> deg(0, degree);
        int left = deg(rng);
        for (int s = 0; s < left; ++s) e[std::uniform_int_distribution<int>(0, nvars - 1)(rng)]++;
        int v = c(rng);
        if (v == 0) v = 1;
        p.add_term(e, Scalar(Rational(v)));
    }
    return p;
}

// random division-free circuit with bounded formal degree
inline Circuit random_circuit(std::mt19937_64& rng, int nvars, int gates, int max_degree = 8,
                              bool divisions = false, FieldPtr field = nullptr)
{
    CircuitBuilder b(field, nvars);
    std::vector<NodeId> pool;
    std::vector<int> deg;
    for (int i = 0; i < nvars; ++i) {
        pool.push_back(b.var(i));
        deg.push_back(1);
    }
    for (int i = 0; i < 2; ++i) {
        Rational q = small_rational(rng);
        pool.push_back(field ? b.constant(Scalar(field, {q, small_rational(rng)})) : b.constant(q));
        deg.push_back(0);
    }
    std::uniform_int_distribution<int> opd(0, divisions ? 3 : 2);
    for (int g = 0; g < gates; ++g) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::size_t x = pick(rng), y = pick(rng);
        int op = opd(rng);
        NodeId id;
        int d;
        if (op == 2 && deg[x] + deg[y] <= max_degree) {
            id = b.mul(pool[x], pool[y]);
            d = deg[x] + deg[y];
        } else if (op == 3) {
            NodeId den = b.add(pool[y], b.constant(Rational(g + 3)));
            id = b.div(pool[x], den);
            d = deg[x];
        } else if (op == 1) {
            id = b.sub(pool[x], pool[y]);
            d = std::max(deg[x], deg[y]);
        } else {
            id = b.add(pool[x], pool[y]);
            d = std::max(deg[x], deg[y]);
        }
        pool.push_back(id);
        deg.push_back(d);
    }
    return b.finish(pool.back());
}

}  // namespace testutil
