#include "circfac/densepoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace circfac {

DensePoly::DensePoly(int nvars, FieldPtr field) : nvars_(nvars), field_(std::move(field))
{
    if (nvars < 0 || nvars > 8) throw OracleCapExceeded("dense polynomials support at most 8 variables");
}

DensePoly DensePoly::constant(int nvars, const Scalar& c, FieldPtr field)
{
    DensePoly p(nvars, field ? field : c.field());
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

DensePoly DensePoly::variable(int nvars, int i, FieldPtr field)
{
    DensePoly p(nvars, field);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, field ? Scalar::one(field) : Scalar(Rational(1)));
    return p;
}

DensePoly DensePoly::univariate(const std::vector<Scalar>& coeffs, FieldPtr field)
{
    DensePoly p(1, field);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term({static_cast<int>(i)}, coeffs[i]);
    return p;
}

DensePoly::Key DensePoly::pack(const Exponents& e) const
{
    Key k = 0;
    int b = bits();
    Key limit = (Key(1) << b) - 1;
    for (int i = 0; i < nvars_; ++i) {
        if (e[i] < 0 || static_cast<Key>(e[i]) > limit) throw OracleCapExceeded("exponent too large for dense oracle");
        k |= static_cast<Key>(e[i]) << (b * i);
    }
    return k;
}

Exponents DensePoly::unpack(Key k) const
{
    Exponents e(nvars_);
    int b = bits();
    Key mask = (Key(1) << b) - 1;
    for (int i = 0; i < nvars_; ++i) e[i] = static_cast<int>((k >> (b * i)) & mask);
    return e;
}

namespace {
Scalar coerce_to(const FieldPtr& field, const Scalar& c)
{
    if (same_field(field, c.field())) return c;
    if (field && !c.field()) return Scalar::embed(field, c.c0());
    throw DomainError("dense polynomial field mismatch");
}
}  // namespace

Scalar DensePoly::coeff(const Exponents& e) const
{
    auto it = terms_.find(pack(e));
    return it == terms_.end() ? zero_scalar() : it->second;
}

void DensePoly::add_term(const Exponents& e, const Scalar& c0)
{
    if (static_cast<int>(e.size()) != nvars_) throw Error("exponent vector length mismatch");
    if (c0.is_zero()) return;
    Scalar c = coerce_to(field_, c0);
    Key k = pack(e);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<std::pair<Exponents, Scalar>> DensePoly::sorted_terms() const
{
    std::vector<std::pair<Exponents, Scalar>> out;
    for (const auto& [k, c] : terms_) out.emplace_back(unpack(k), c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int x : a.first) da += x;
        for (int x : b.first) db += x;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    return out;
}

int DensePoly::total_degree() const
{
    int d = -1;
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int DensePoly::degree_in(int var) const
{
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, unpack(k)[var]);
    return d;
}

DensePoly DensePoly::coefficient_in(int var, int power) const
{
    DensePoly r(nvars_, field_);
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        if (e[var] != power) continue;
        e[var] = 0;
        r.add_term(e, c);
    }
    return r;
}

DensePoly DensePoly::derivative(int var) const
{
    DensePoly r(nvars_, field_);
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        if (e[var] == 0) continue;
        Scalar m = c * Scalar::embed(field_, Rational(e[var]));
        e[var] -= 1;
        r.add_term(e, m);
    }
    return r;
}

DensePoly DensePoly::truncate(int max_total_degree) const
{
    DensePoly r(nvars_, field_);
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        int s = 0;
        for (int x : e) s += x;
        if (s <= max_total_degree) r.terms_.emplace(k, c);
    }
    return r;
}

DensePoly DensePoly::homogeneous_part(int degree) const
{
    DensePoly r(nvars_, field_);
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        int s = 0;
        for (int x : e) s += x;
        if (s == degree) r.terms_.emplace(k, c);
    }
    return r;
}

Scalar DensePoly::evaluate(const std::vector<Scalar>& point) const
{
    if (static_cast<int>(point.size()) != nvars_) throw Error("dense evaluate: wrong point length");
    Scalar acc = zero_scalar();
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        Scalar t = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[i]) t = t * coerce_to(field_, point[i]).pow(e[i]);
        acc += t;
    }
    return acc;
}

DensePoly DensePoly::partial_evaluate(int var, const Scalar& value) const
{
    DensePoly r(nvars_, field_);
    Scalar v = coerce_to(field_, value);
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        Scalar t = c * v.pow(e[var]);
        e[var] = 0;
        r.add_term(e, t);
    }
    return r;
}

std::vector<Scalar> DensePoly::univariate_coeffs(int var) const
{
    std::vector<Scalar> out(std::max(0, degree_in(var) + 1), zero_scalar());
    for (const auto& [k, c] : terms_) {
        auto e = unpack(k);
        for (int i = 0; i < nvars_; ++i)
            if (i != var && e[i]) throw Error("univariate_coeffs: other variables present");
        out[e[var]] += c;
    }
    return out;
}

DensePoly DensePoly::operator-() const
{
    DensePoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

namespace {
void check_compatible(const DensePoly& a, const DensePoly& b)
{
    if (a.nvars() != b.nvars()) throw Error("dense polynomial variable count mismatch");
    if (!same_field(a.field(), b.field()) && a.field() && b.field()) throw DomainError("dense polynomial field mismatch");
}
FieldPtr join(const DensePoly& a, const DensePoly& b) { return a.field() ? a.field() : b.field(); }
}  // namespace

DensePoly operator+(const DensePoly& a, const DensePoly& b)
{
    check_compatible(a, b);
    DensePoly r(a.nvars_, join(a, b));
    r.terms_ = a.terms_;
    if (r.field_ && !a.field_)
        for (auto& [k, c] : r.terms_) c = Scalar::embed(r.field_, c.c0());
    for (const auto& [k, c] : b.terms_) {
        auto it = r.terms_.find(k);
        Scalar v = coerce_to(r.field_, c);
        if (it == r.terms_.end())
            r.terms_.emplace(k, std::move(v));
        else {
            it->second += v;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + (-b); }

DensePoly DensePoly::mul_truncated(const DensePoly& b, int max_total_degree) const
{
    check_compatible(*this, b);
    DensePoly r(nvars_, join(*this, b));
    int bb = bits();
    Key mask = (Key(1) << bb) - 1;
    auto degree_of = [&](Key k) {
        int s = 0;
        for (int i = 0; i < nvars_; ++i) s += static_cast<int>((k >> (bb * i)) & mask);
        return s;
    };
    std::vector<std::pair<Key, int>> bk;
    for (const auto& [k, c] : b.terms_) bk.emplace_back(k, degree_of(k));
    for (const auto& [ka, ca] : terms_) {
        int da = degree_of(ka);
        Scalar cva = coerce_to(r.field_, ca);
        for (const auto& [kb, db] : bk) {
            if (max_total_degree >= 0 && da + db > max_total_degree) continue;
            // per-variable overflow check
            for (int i = 0; i < nvars_; ++i)
                if (((ka >> (bb * i)) & mask) + ((kb >> (bb * i)) & mask) > mask)
                    throw OracleCapExceeded("exponent too large for dense oracle");
            Key k = ka + kb;
            Scalar prod = cva * coerce_to(r.field_, b.terms_.at(kb));
            auto it = r.terms_.find(k);
            if (it == r.terms_.end())
                r.terms_.emplace(k, std::move(prod));
            else {
                it->second += prod;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) { return a.mul_truncated(b, -1); }

DensePoly DensePoly::scaled(const Scalar& s) const
{
    DensePoly r(nvars_, field_ ? field_ : s.field());
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, coerce_to(r.field_, c) * coerce_to(r.field_, s));
    return r;
}

DensePoly DensePoly::pow(unsigned e) const
{
    DensePoly r = DensePoly::constant(nvars_, field_ ? Scalar::one(field_) : Scalar(Rational(1)), field_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool operator==(const DensePoly& a, const DensePoly& b)
{
    if (a.nvars_ != b.nvars_) return false;
    return (a - b).is_zero();
}

std::string DensePoly::to_string(std::optional<int> yvar) const
{
    auto terms = sorted_terms();
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        std::string cs = c.to_string();
        bool negative = !c.field() && c.c0() < 0;
        if (first) {
            os << cs;
        } else if (negative) {
            os << " - " << (-c).to_string();
        } else {
            os << " + " << cs;
        }
        first = false;
        bool star = false;
        for (int i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            os << (star ? " " : " * ");
            star = true;
            if (yvar && *yvar == i)
                os << "y";
            else
                os << "x" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

DensePoly expand_impl(const Circuit& c, int trunc, const OracleCaps& caps, std::size_t output)
{
    if (c.nvars() > caps.max_vars) throw OracleCapExceeded("dense oracle: too many variables");
    if (c.nvars() > 8) throw OracleCapExceeded("dense oracle: too many variables");
    const auto& nodes = c.nodes();
    NodeId root = c.outputs().at(output);
    std::vector<DensePoly> val(root + 1);
    std::vector<NodeId> last(root + 1);
    for (NodeId i = 0; i <= root; ++i) {
        last[i] = i;
        const Node& n = nodes[i];
        if (n.op != Op::Var && n.op != Op::Const) last[n.a] = last[n.b] = i;
    }
    int nv = c.nvars();
    for (NodeId i = 0; i <= root; ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
        case Op::Var: val[i] = DensePoly::variable(nv, n.a, c.field()); break;
        case Op::Const: val[i] = DensePoly::constant(nv, c.constants()[n.a], c.field()); break;
        case Op::Add: val[i] = val[n.a] + val[n.b]; break;
        case Op::Sub: val[i] = val[n.a] - val[n.b]; break;
        case Op::Mul: val[i] = val[n.a].mul_truncated(val[n.b], trunc); break;
        case Op::Div: throw Error("dense oracle: circuit has a division gate");
        }
        if (trunc >= 0 && n.op != Op::Mul) val[i] = val[i].truncate(trunc);
        if (val[i].total_degree() > caps.max_degree)
            throw OracleCapExceeded("dense oracle: degree cap exceeded at gate " + std::to_string(i));
        if (n.op != Op::Var && n.op != Op::Const) {
            if (last[n.a] == i && n.a != root) val[n.a] = DensePoly();
            if (last[n.b] == i && n.b != root) val[n.b] = DensePoly();
        }
    }
    return val[root];
}

}  // namespace

DensePoly expand(const Circuit& c, const OracleCaps& caps, std::size_t output)
{
    return expand_impl(c, -1, caps, output);
}

DensePoly expand_truncated(const Circuit& c, int k, const OracleCaps& caps, std::size_t output)
{
    OracleCaps relaxed = caps;
    relaxed.max_degree = std::max(caps.max_degree, k);
    if (k > caps.max_degree) throw OracleCapExceeded("dense oracle: truncation order above degree cap");
    return expand_impl(c, k, relaxed, output);
}

Circuit to_circuit(const DensePoly& p, std::optional<int> yvar)
{
    CircuitBuilder b(p.field(), p.nvars());
    NodeId acc = b.zero();
    for (const auto& [e, c] : p.sorted_terms()) {
        NodeId t = b.constant(c);
        for (int i = 0; i < p.nvars(); ++i)
            if (e[i]) t = b.mul(t, b.pow(b.var(i), e[i]));
        acc = b.add(acc, t);
    }
    return b.finish(acc, yvar);
}

std::pair<DensePoly, DensePoly> divmod_univar(const DensePoly& f, const DensePoly& g, int var)
{
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    int dg = g.degree_in(var);
    DensePoly lc = g.coefficient_in(var, dg);
    if (lc.total_degree() != 0) throw DomainError("divisor leading coefficient is not a constant");
    Scalar lc_inv = lc.sorted_terms()[0].second.inverse();
    FieldPtr field = f.field() ? f.field() : g.field();
    DensePoly q(f.nvars(), field), r = f;
    while (!r.is_zero() && r.degree_in(var) >= dg) {
        int dr = r.degree_in(var);
        DensePoly lead = r.coefficient_in(var, dr).scaled(lc_inv);
        Exponents shift(f.nvars(), 0);
        shift[var] = dr - dg;
        DensePoly mono(f.nvars(), field);
        mono.add_term(shift, field ? Scalar::one(field) : Scalar(Rational(1)));
        DensePoly t = lead * mono;
        q = q + t;
        r = r - t * g;
    }
    return {q, r};
}

DensePoly gcd_univar(const DensePoly& f, const DensePoly& g, int var)
{
    if (f.is_zero() && g.is_zero()) throw DomainError("gcd of two zero polynomials");
    DensePoly a = f, b = g;
    while (!b.is_zero()) {
        auto [q, r] = divmod_univar(a, b, var);
        a = std::move(b);
        b = std::move(r);
    }
    Scalar lc = a.coefficient_in(var, a.degree_in(var)).sorted_terms()[0].second;
    return a.scaled(lc.inverse());
}

std::vector<std::vector<DensePoly>> sylvester_matrix(const DensePoly& g, const DensePoly& h, int var)
{
    if (g.is_zero() || h.is_zero()) throw DomainError("resultant of a zero polynomial");
    int d = g.degree_in(var), D = h.degree_in(var);
    int n = d + D;
    FieldPtr field = g.field() ? g.field() : h.field();
    DensePoly zero(g.nvars(), field);
    std::vector<std::vector<DensePoly>> m(n, std::vector<DensePoly>(n, zero));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= D; ++j) m[i][i + j] = h.coefficient_in(var, j);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j <= d; ++j) m[d + i][i + j] = g.coefficient_in(var, j);
    return m;
}

Scalar det_bareiss(std::vector<std::vector<Scalar>> m)
{
    int n = static_cast<int>(m.size());
    if (n == 0) return Scalar(Rational(1));
    FieldPtr field = m[0][0].field();
    Scalar prev = Scalar::one(field);
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    swap = i;
                    break;
                }
            if (swap < 0) return Scalar::zero(field);
            std::swap(m[k], m[swap]);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = Scalar::zero(field);
        }
        prev = m[k][k];
    }
    Scalar det = m[n - 1][n - 1];
    return negate ? -det : det;
}

DensePoly det_cofactor(const std::vector<std::vector<DensePoly>>& m)
{
    int n = static_cast<int>(m.size());
    if (n == 0) return DensePoly::constant(0, Scalar(Rational(1)));
    if (n > 20) throw OracleCapExceeded("cofactor determinant limited to 20x20");
    int nv = m[0][0].nvars();
    FieldPtr field = m[0][0].field();
    // memo[mask] = det of rows (n - popcount(mask))..n-1 restricted to columns in mask
    std::unordered_map<std::uint32_t, DensePoly> memo;
    std::function<DensePoly(std::uint32_t)> rec = [&](std::uint32_t mask) -> DensePoly {
        int used = n - __builtin_popcount(mask);
        if (mask == 0) return DensePoly::constant(nv, field ? Scalar::one(field) : Scalar(Rational(1)), field);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        DensePoly acc(nv, field);
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask >> j & 1u)) continue;
            if (!m[used][j].is_zero()) {
                DensePoly t = m[used][j] * rec(mask & ~(1u << j));
                acc = (pos % 2 == 0) ? acc + t : acc - t;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec((n == 32 ? 0u : (1u << n)) - 1u);
}

DensePoly sylvester_resultant(const DensePoly& g, const DensePoly& h, int var)
{
    auto m = sylvester_matrix(g, h, var);
    bool scalar = true;
    for (const auto& row : m)
        for (const auto& e : row)
            if (e.total_degree() > 0) scalar = false;
    int nv = g.nvars();
    FieldPtr field = g.field() ? g.field() : h.field();
    if (scalar) {
        std::vector<std::vector<Scalar>> s(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (const auto& e : m[i])
                s[i].push_back(e.is_zero() ? (field ? Scalar::zero(field) : Scalar(Rational(0)))
                                           : e.sorted_terms()[0].second);
        return DensePoly::constant(nv, det_bareiss(std::move(s)), field);
    }
    return det_cofactor(m);
}

}  // namespace circfac
