// Exact arithmetic over Q and simple extensions Q[u]/(A(u)).
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace circfac {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

Rational rat_normalize(const Integer& n, const Integer& d);
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);
// bits of numerator plus bits of denominator
std::size_t bit_size(const Rational& q);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Dense univariate helpers over Q, lowest coefficient first.  Used by the
// field code itself and by a few callers that need u-polynomials.
namespace upoly {
using Poly = std::vector<Rational>;
void trim(Poly& p);
int degree(const Poly& p);  // -1 for zero
Poly mul(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
// monic gcd; g = s*a + t*b
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t);
std::string format(const Poly& p, const std::string& var);
}  // namespace upoly

class NumberField {
public:
    // modulus given as coefficients of u^0..u^r, must be monic with r >= 1
    static FieldPtr create(std::vector<Rational> modulus);
    // parse "u^2 - 2" style text
    static FieldPtr parse(std::string_view text);

    int degree() const { return degree_; }
    const std::vector<Rational>& modulus() const { return modulus_; }
    const std::string& modulus_string() const { return modulus_text_; }
    // coordinates of u^j mod A, valid for j <= 2r-2
    const std::vector<Rational>& power_mod(int j) const { return powers_[j]; }

    bool same_as(const NumberField& other) const;

private:
    explicit NumberField(std::vector<Rational> modulus);

    int degree_ = 0;
    std::vector<Rational> modulus_;
    std::string modulus_text_;
    std::vector<std::vector<Rational>> powers_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// An element of Q (field() == nullptr, one coordinate) or of a NumberField.
class Scalar {
public:
    Scalar() : c_(1) {}
    Scalar(const Rational& q) : c_{q} {}  // NOLINT implicit on purpose
    Scalar(long v) : c_{Rational(v)} {}   // NOLINT
    Scalar(FieldPtr field, std::vector<Rational> coeffs);

    static Scalar embed(const FieldPtr& field, const Rational& q);
    static Scalar generator(const FieldPtr& field);
    static Scalar zero(const FieldPtr& field) { return embed(field, Rational(0)); }
    static Scalar one(const FieldPtr& field) { return embed(field, Rational(1)); }

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& c0() const { return c_[0]; }
    int degree() const { return static_cast<int>(c_.size()); }

    bool is_zero() const;
    bool is_one() const;
    // all coordinates except c0 vanish
    bool is_base() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar inverse() const;
    Scalar pow(unsigned e) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const;
    std::size_t hash() const;
    std::size_t description_length() const;

private:
    FieldPtr field_;
    std::vector<Rational> c_;
};

using NumberFieldElem = Scalar;

// a, b in K; op in {add, sub, mul}
Scalar nf_arith(const Scalar& a, const Scalar& b, char op);
Scalar nf_inverse(const Scalar& a);

// parse a constant in the given field: "p/q" or "[c0, c1] mod A(u)"
Scalar parse_scalar(std::string_view text, const FieldPtr& field);

std::size_t hash_rational(const Rational& q);

}  // namespace circfac
