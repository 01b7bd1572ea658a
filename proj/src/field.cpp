#include "circfac/field.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace circfac {

Rational rat_normalize(const Integer& n, const Integer& d)
{
    if (d == 0) throw DomainError("division by zero");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

bool parse_integer(std::string_view s, Integer& out)
{
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    text = strip(text);
    auto slash = text.find('/');
    Integer n, d(1);
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, n)) throw DomainError("malformed rational '" + std::string(text) + "'");
    } else {
        auto den = text.substr(slash + 1);
        if (!parse_integer(text.substr(0, slash), n) || !parse_integer(den, d) || den[0] == '-' || den[0] == '+')
            throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    return rat_normalize(n, d);
}

std::size_t bit_size(const Rational& q)
{
    std::size_t b = q.get_num() == 0 ? 1 : mpz_sizeinbase(q.get_num_mpz_t(), 2);
    return b + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::size_t hash_rational(const Rational& q)
{
    auto h = [](const mpz_t z) {
        std::size_t n = mpz_size(z);
        const mp_limb_t* limbs = mpz_limbs_read(z);
        std::size_t acc = 1469598103934665603ULL ^ static_cast<std::size_t>(mpz_sgn(z) + 1);
        for (std::size_t i = 0; i < n; ++i) {
            acc ^= static_cast<std::size_t>(limbs[i]);
            acc *= 1099511628211ULL;
        }
        return acc;
    };
    return h(q.get_num_mpz_t()) * 31 + h(q.get_den_mpz_t());
}

// ---------------------------------------------------------------------------
namespace upoly {

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p)
{
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r)
{
    int db = degree(b);
    if (db < 0) throw DomainError("division by zero polynomial");
    r = a;
    trim(r);
    q.assign(std::max<int>(0, degree(r) - db + 1), Rational(0));
    Rational inv = 1 / b[db];
    for (int dr = degree(r); dr >= db; dr = degree(r)) {
        Rational c = r[dr] * inv;
        q[dr - db] = c;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
        r.resize(dr);
        trim(r);
    }
    trim(q);
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t)
{
    Poly r0 = a, r1 = b, s0{Rational(1)}, s1, t0, t1{Rational(1)};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        Poly q, rem;
        divmod(r0, r1, q, rem);
        Poly s2 = sub(s0, mul(q, s1));
        Poly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s.clear();
        t.clear();
        return r0;
    }
    Rational lc = r0.back();
    for (auto& c : r0) c /= lc;
    for (auto& c : s0) c /= lc;
    for (auto& c : t0) c /= lc;
    s = std::move(s0);
    t = std::move(t0);
    return r0;
}

std::string format(const Poly& p, const std::string& var)
{
    std::ostringstream os;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        const Rational& c = p[i];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << to_string(a);
            continue;
        }
        if (a != 1) os << to_string(a) << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace upoly

// ---------------------------------------------------------------------------

NumberField::NumberField(std::vector<Rational> modulus) : modulus_(std::move(modulus))
{
    upoly::trim(modulus_);
    degree_ = static_cast<int>(modulus_.size()) - 1;
    if (degree_ < 1) throw DomainError("number field modulus must have degree >= 1");
    if (modulus_.back() != 1) throw DomainError("number field modulus must be monic");
    modulus_text_ = upoly::format(modulus_, "u");
    // u^j mod A for j = 0 .. 2r-2
    int r = degree_;
    powers_.resize(std::max(2 * r - 1, r));
    for (int j = 0; j < r; ++j) {
        powers_[j].assign(r, Rational(0));
        powers_[j][j] = 1;
    }
    for (int j = r; j < static_cast<int>(powers_.size()); ++j) {
        // u * u^{j-1}
        const auto& prev = powers_[j - 1];
        std::vector<Rational> next(r);
        Rational top = prev[r - 1];
        for (int i = r - 1; i >= 1; --i) next[i] = prev[i - 1] - top * modulus_[i];
        next[0] = -top * modulus_[0];
        powers_[j] = std::move(next);
    }
}

FieldPtr NumberField::create(std::vector<Rational> modulus)
{
    return FieldPtr(new NumberField(std::move(modulus)));
}

namespace {

// parse "c*u^k" style sums in one variable
upoly::Poly parse_upoly(std::string_view text, char var)
{
    upoly::Poly p;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw DomainError("empty polynomial");
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw DomainError("malformed polynomial '" + std::string(text) + "'");
        Rational coef(1);
        int exp = 0;
        auto at = term.find(var);
        if (at == std::string::npos) {
            coef = parse_rational(term);
        } else {
            std::string cpart = term.substr(0, at);
            if (!cpart.empty()) {
                if (cpart.back() != '*') throw DomainError("malformed term '" + term + "'");
                cpart.pop_back();
                coef = parse_rational(cpart);
            }
            std::string epart = term.substr(at + 1);
            if (epart.empty()) {
                exp = 1;
            } else {
                if (epart[0] != '^' || epart.size() < 2) throw DomainError("malformed term '" + term + "'");
                for (std::size_t i = 1; i < epart.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(epart[i])))
                        throw DomainError("malformed term '" + term + "'");
                exp = std::stoi(epart.substr(1));
            }
        }
        if (static_cast<int>(p.size()) <= exp) p.resize(exp + 1);
        p[exp] += sign * coef;
    }
    upoly::trim(p);
    return p;
}

}  // namespace

FieldPtr NumberField::parse(std::string_view text) { return create(parse_upoly(text, 'u')); }

bool NumberField::same_as(const NumberField& other) const
{
    return this == &other || modulus_ == other.modulus_;
}

bool same_field(const FieldPtr& a, const FieldPtr& b)
{
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same_as(*b);
}

// ---------------------------------------------------------------------------

Scalar::Scalar(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)), c_(std::move(coeffs))
{
    if (!field_) {
        if (c_.size() > 1) {
            for (std::size_t i = 1; i < c_.size(); ++i)
                if (c_[i] != 0) throw DomainError("rational scalar with extension coordinates");
        }
        c_.resize(1);
        return;
    }
    int r = field_->degree();
    if (static_cast<int>(c_.size()) > r) {
        // reduce mod A by long division
        upoly::Poly q, rem;
        upoly::divmod(c_, field_->modulus(), q, rem);
        c_ = std::move(rem);
    }
    c_.resize(r);
}

Scalar Scalar::embed(const FieldPtr& field, const Rational& q)
{
    if (!field) return Scalar(q);
    std::vector<Rational> c(field->degree());
    c[0] = q;
    return Scalar(field, std::move(c));
}

Scalar Scalar::generator(const FieldPtr& field)
{
    if (!field) throw DomainError("Q has no generator");
    std::vector<Rational> c(field->degree());
    if (field->degree() == 1)
        c[0] = -field->modulus()[0];
    else
        c[1] = 1;
    return Scalar(field, std::move(c));
}

bool Scalar::is_zero() const
{
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool Scalar::is_base() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Scalar::is_one() const { return c_[0] == 1 && is_base(); }

namespace {
void check_same(const Scalar& a, const Scalar& b)
{
    if (!same_field(a.field(), b.field())) throw DomainError("field mismatch in scalar arithmetic");
}
}  // namespace

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b)
{
    check_same(a, b);
    Scalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b)
{
    check_same(a, b);
    Scalar r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
}

Scalar operator*(const Scalar& a, const Scalar& b)
{
    check_same(a, b);
    if (!a.field_ || a.field_->degree() == 1) {
        Scalar r = a;
        r.c_[0] *= b.c_[0];
        return r;
    }
    int r = a.field_->degree();
    if (a.is_base() || b.is_base()) {
        const Scalar& base = a.is_base() ? a : b;
        const Scalar& other = a.is_base() ? b : a;
        Scalar out = other;
        for (auto& c : out.c_) c *= base.c_[0];
        return out;
    }
    std::vector<Rational> prod(2 * r - 1);
    for (int i = 0; i < r; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < r; ++j) {
            if (b.c_[j] == 0) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
        }
    }
    Scalar out;
    out.field_ = a.field_;
    out.c_.assign(prod.begin(), prod.begin() + r);
    for (int j = r; j < 2 * r - 1; ++j) {
        if (prod[j] == 0) continue;
        const auto& pm = a.field_->power_mod(j);
        for (int i = 0; i < r; ++i)
            if (pm[i] != 0) out.c_[i] += prod[j] * pm[i];
    }
    return out;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw DomainError("not invertible");
    if (!field_ || is_base()) {
        Scalar r = *this;
        r.c_[0] = 1 / r.c_[0];
        return r;
    }
    upoly::Poly a = c_, s, t;
    upoly::trim(a);
    upoly::Poly g = upoly::xgcd(a, field_->modulus(), s, t);
    if (upoly::degree(g) != 0) throw DomainError("not invertible (modulus not irreducible)");
    return Scalar(field_, std::move(s));
}

Scalar operator/(const Scalar& a, const Scalar& b)
{
    check_same(a, b);
    return a * b.inverse();
}

Scalar Scalar::pow(unsigned e) const
{
    Scalar result = field_ ? Scalar::one(field_) : Scalar(Rational(1));
    Scalar base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    return same_field(a.field_, b.field_) && a.c_ == b.c_;
}

std::string Scalar::to_string() const
{
    if (!field_) return circfac::to_string(c_[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ", ";
        s += circfac::to_string(c_[i]);
    }
    s += "] mod ";
    s += field_->modulus_string();
    return s;
}

std::size_t Scalar::hash() const
{
    std::size_t h = 0;
    for (const auto& c : c_) h = h * 1000003ULL ^ hash_rational(c);
    return h;
}

std::size_t Scalar::description_length() const
{
    std::size_t n = 0;
    for (const auto& c : c_) n += bit_size(c);
    return n;
}

Scalar nf_arith(const Scalar& a, const Scalar& b, char op)
{
    switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    default: throw DomainError(std::string("unknown field operation '") + op + "'");
    }
}

Scalar nf_inverse(const Scalar& a) { return a.inverse(); }

Scalar parse_scalar(std::string_view text, const FieldPtr& field)
{
    text = strip(text);
    if (!text.empty() && text.front() == '[') {
        auto close = text.find(']');
        if (close == std::string_view::npos) throw DomainError("unterminated field element");
        auto rest = strip(text.substr(close + 1));
        if (rest.substr(0, 3) != "mod") throw DomainError("field element lacks 'mod' clause");
        auto mod = parse_upoly(rest.substr(3), 'u');
        if (!field || field->modulus() != mod) throw DomainError("field element modulus does not match field");
        std::vector<Rational> coeffs;
        std::string_view body = text.substr(1, close - 1);
        while (true) {
            auto comma = body.find(',');
            coeffs.push_back(parse_rational(body.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        if (static_cast<int>(coeffs.size()) != field->degree())
            throw DomainError("field element has wrong number of coordinates");
        return Scalar(field, std::move(coeffs));
    }
    Rational q = parse_rational(text);
    return field ? Scalar::embed(field, q) : Scalar(q);
}

}  // namespace circfac
