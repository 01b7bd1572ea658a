#include "circfac/eval.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace circfac {

Rational RationalDomain::from_const(const Scalar& s) const
{
    if (s.field() && !s.is_base()) throw DomainError("rational evaluation of an extension constant");
    return s.c0();
}

// ---------------------------------------------------------------------------

std::uint64_t ModpDomain::reduce(const Rational& q) const
{
    std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (d == 0) throw BadReduction();
    return mul(n, inv(d));
}

std::uint64_t ModpDomain::from_const(const Scalar& s) const
{
    if (s.field() && !s.is_base()) throw DomainError("modular evaluation of an extension constant");
    return reduce(s.c0());
}

std::uint64_t ModpDomain::inv(std::uint64_t a) const
{
    // p prime: a^(p-2)
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

// ---------------------------------------------------------------------------

SeriesDomain::Value SeriesDomain::from_const(const Scalar& s) const
{
    Value v(order + 1, Scalar::zero(field));
    v[0] = field ? (s.field() ? s : Scalar::embed(field, s.c0())) : s;
    return v;
}

SeriesDomain::Value SeriesDomain::add(const Value& a, const Value& b) const
{
    Value r = a;
    for (int i = 0; i <= order; ++i) r[i] += b[i];
    return r;
}

SeriesDomain::Value SeriesDomain::sub(const Value& a, const Value& b) const
{
    Value r = a;
    for (int i = 0; i <= order; ++i) r[i] -= b[i];
    return r;
}

SeriesDomain::Value SeriesDomain::mul(const Value& a, const Value& b) const
{
    Value r(order + 1, Scalar::zero(field));
    for (int i = 0; i <= order; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= order; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

SeriesDomain::Value SeriesDomain::div(const Value& a, const Value& b, NodeId gate) const
{
    if (b[0].is_zero()) throw DivisionByZero(gate);
    Scalar inv0 = b[0].inverse();
    // q = a / b by forward substitution
    Value q(order + 1, Scalar::zero(field));
    for (int i = 0; i <= order; ++i) {
        Scalar acc = a[i];
        for (int j = 1; j <= i; ++j)
            if (!b[j].is_zero()) acc -= b[j] * q[i - j];
        q[i] = acc * inv0;
    }
    return q;
}

bool SeriesDomain::is_zero(const Value& a) const
{
    for (const auto& s : a)
        if (!s.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------

std::vector<NodeId> last_uses(const Circuit& c)
{
    const auto& nodes = c.nodes();
    std::vector<NodeId> last(nodes.size());
    for (NodeId i = 0; i < nodes.size(); ++i) {
        last[i] = i;
        const Node& n = nodes[i];
        if (n.op != Op::Var && n.op != Op::Const) {
            last[n.a] = i;
            last[n.b] = i;
        }
    }
    return last;
}

std::vector<Scalar> evaluate(const Circuit& c, std::span<const Scalar> point)
{
    if (!c.field()) {
        std::vector<Rational> p;
        for (const auto& s : point) {
            if (s.field() && !s.is_base()) throw DomainError("extension point for a rational circuit");
            p.push_back(s.c0());
        }
        auto r = evaluate_with(c, RationalDomain{}, std::span<const Rational>(p));
        return std::vector<Scalar>(r.begin(), r.end());
    }
    std::vector<Scalar> p;
    for (const auto& s : point) p.push_back(s.field() ? s : Scalar::embed(c.field(), s.c0()));
    return evaluate_with(c, ScalarDomain{c.field()}, std::span<const Scalar>(p));
}

std::vector<Rational> evaluate_rational(const Circuit& c, std::span<const Rational> point)
{
    if (c.field()) {
        std::vector<Scalar> p(point.begin(), point.end());
        auto r = evaluate(c, p);
        std::vector<Rational> out;
        for (const auto& s : r) {
            if (!s.is_base()) throw DomainError("value lies outside Q");
            out.push_back(s.c0());
        }
        return out;
    }
    return evaluate_with(c, RationalDomain{}, point);
}

Rational evaluate1(const Circuit& c, std::span<const Rational> point) { return evaluate_rational(c, point).at(0); }

BatchResult evaluate_batch_serial(const Circuit& c, const std::vector<std::vector<Rational>>& points)
{
    BatchResult out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            out[i] = evaluate_rational(c, points[i]);
        } catch (const DivisionByZero&) {
            out[i].reset();
        }
    }
    return out;
}

BatchResult evaluate_batch(const Circuit& c, const std::vector<std::vector<Rational>>& points)
{
    BatchResult out(points.size());
    const long n = static_cast<long>(points.size());
    // exceptions may not cross the parallel region; keep the first and rethrow
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = evaluate_rational(c, points[i]);
        } catch (const DivisionByZero&) {
            out[i].reset();
        } catch (...) {
#pragma omp critical(circfac_batch_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::optional<std::vector<std::uint64_t>> evaluate_modp(const Circuit& c, std::uint64_t p,
                                                        std::span<const std::uint64_t> point)
{
    try {
        return evaluate_with(c, ModpDomain{p}, point);
    } catch (const DivisionByZero&) {
        return std::nullopt;
    } catch (const BadReduction&) {
        return std::nullopt;
    }
}

}  // namespace circfac
