// Univariate factorization over Q and number-field construction.
#pragma once

#include "circfac/densepoly.hpp"
#include "circfac/field.hpp"

#include <vector>

namespace circfac {

struct UnivarFactor {
    upoly::Poly poly;  // monic, lowest coefficient first
    int multiplicity = 1;
};

struct UnivarFactorization {
    Rational content;  // leading coefficient of the input
    std::vector<UnivarFactor> factors;
    // content * prod poly^multiplicity
    upoly::Poly product() const;
};

// p = lc(p) * prod part_i^i; parts monic, squarefree, pairwise coprime,
// listed by increasing multiplicity
std::vector<UnivarFactor> squarefree_decompose(const upoly::Poly& p);
// complete factorization into monic irreducibles, sorted by
// (degree, coefficients, multiplicity)
UnivarFactorization factor_rational(const upoly::Poly& p);
// DensePoly front end: p may only involve variable var
UnivarFactorization factor_rational(const DensePoly& p, int var);

FieldPtr make_extension(const upoly::Poly& monic_irreducible);

upoly::Poly derivative(const upoly::Poly& p);
DensePoly to_dense(const upoly::Poly& p, int nvars, int var);
std::string format_factorization(const UnivarFactorization& f, const std::string& var = "y");

// primitive integer polynomial with the same roots (positive leading coefficient)
std::vector<Integer> primitive_integer(const upoly::Poly& p);

}  // namespace circfac
