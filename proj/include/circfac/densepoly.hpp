// Explicit multivariate polynomials: the brute-force oracle representation.
#pragma once

#include "circfac/circuit.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace circfac {

class OracleCapExceeded : public Error {
public:
    using Error::Error;
};

struct OracleCaps {
    int max_vars = 4;
    int max_degree = 12;
};

using Exponents = std::vector<int>;

class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(int nvars, FieldPtr field = nullptr);

    static DensePoly constant(int nvars, const Scalar& c, FieldPtr field = nullptr);
    static DensePoly variable(int nvars, int i, FieldPtr field = nullptr);
    // univariate in one variable from coefficient list (lowest first)
    static DensePoly univariate(const std::vector<Scalar>& coeffs, FieldPtr field = nullptr);

    int nvars() const { return nvars_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Scalar coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const Scalar& c);
    // terms in canonical graded-lex order (higher degree first)
    std::vector<std::pair<Exponents, Scalar>> sorted_terms() const;

    int total_degree() const;  // -1 for zero
    int degree_in(int var) const;
    DensePoly coefficient_in(int var, int power) const;  // keeps nvars
    DensePoly derivative(int var) const;
    DensePoly truncate(int max_total_degree) const;
    DensePoly homogeneous_part(int degree) const;
    Scalar evaluate(const std::vector<Scalar>& point) const;
    // substitute values for some variables (nullopt keeps the variable)
    DensePoly partial_evaluate(int var, const Scalar& value) const;
    // as a univariate list in var, valid when only var occurs
    std::vector<Scalar> univariate_coeffs(int var) const;

    DensePoly operator-() const;
    friend DensePoly operator+(const DensePoly& a, const DensePoly& b);
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b);
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b);
    DensePoly scaled(const Scalar& s) const;
    DensePoly pow(unsigned e) const;
    DensePoly mul_truncated(const DensePoly& b, int max_total_degree) const;
    friend bool operator==(const DensePoly& a, const DensePoly& b);

    // "coeff * x0^e0 x1^e1 ... y^e" terms, graded lex; names default to x0.. (y for yvar)
    std::string to_string(std::optional<int> yvar = std::nullopt) const;

    // packed-key access for fast loops
    using Key = std::uint64_t;
    const std::unordered_map<Key, Scalar>& raw_terms() const { return terms_; }
    Exponents unpack(Key k) const;
    Key pack(const Exponents& e) const;

private:
    Scalar zero_scalar() const { return field_ ? Scalar::zero(field_) : Scalar(Rational(0)); }
    int bits() const { return nvars_ <= 4 ? 16 : 8; }

    int nvars_ = 0;
    FieldPtr field_;
    std::unordered_map<Key, Scalar> terms_;
};

// exact dense form of a division-free circuit (first output unless index given)
DensePoly expand(const Circuit& c, const OracleCaps& caps = {}, std::size_t output = 0);
// gate-wise truncated expansion: every gate reduced mod total degree > k
DensePoly expand_truncated(const Circuit& c, int k, const OracleCaps& caps = {}, std::size_t output = 0);
// build a circuit computing p
Circuit to_circuit(const DensePoly& p, std::optional<int> yvar = std::nullopt);

// long division in var; g's leading var-coefficient must be a nonzero constant
std::pair<DensePoly, DensePoly> divmod_univar(const DensePoly& f, const DensePoly& g, int var);
// monic gcd of univariate polynomials (only var occurs)
DensePoly gcd_univar(const DensePoly& f, const DensePoly& g, int var);

// Sylvester matrix layout: deg_var(g) rows of h coefficients
// above deg_var(h) rows of g coefficients, lowest coefficient leftmost.
std::vector<std::vector<DensePoly>> sylvester_matrix(const DensePoly& g, const DensePoly& h, int var);
DensePoly sylvester_resultant(const DensePoly& g, const DensePoly& h, int var);
// determinants: Bareiss for scalar matrices, subset-memoized cofactor expansion for polynomial entries
Scalar det_bareiss(std::vector<std::vector<Scalar>> m);
DensePoly det_cofactor(const std::vector<std::vector<DensePoly>>& m);

}  // namespace circfac
