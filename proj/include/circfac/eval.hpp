// Generic circuit evaluation over exact domains.
#pragma once

#include "circfac/circuit.hpp"

#include <optional>
#include <span>
#include <vector>

namespace circfac {

// A domain provides Value, from_const, add, sub, mul, div, is_zero.
// div throws DivisionByZero(gate) when the denominator is zero.

struct RationalDomain {
    using Value = Rational;
    Value from_const(const Scalar& s) const;
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b, NodeId gate) const
    {
        if (b == 0) throw DivisionByZero(gate);
        return a / b;
    }
    bool is_zero(const Value& a) const { return a == 0; }
};

struct ScalarDomain {
    FieldPtr field;
    using Value = Scalar;
    Value from_const(const Scalar& s) const { return s; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b, NodeId gate) const
    {
        if (b.is_zero()) throw DivisionByZero(gate);
        return a / b;
    }
    bool is_zero(const Value& a) const { return a.is_zero(); }
};

// Arithmetic modulo a word-size prime p < 2^62.  Q constants whose
// denominator vanishes mod p raise BadReduction.
class BadReduction : public Error {
public:
    BadReduction() : Error("constant not defined modulo p") {}
};

struct ModpDomain {
    std::uint64_t p;
    using Value = std::uint64_t;
    Value from_const(const Scalar& s) const;
    Value reduce(const Rational& q) const;
    Value add(Value a, Value b) const { Value s = a + b; return s >= p ? s - p : s; }
    Value sub(Value a, Value b) const { return a >= b ? a - b : a + p - b; }
    Value mul(Value a, Value b) const { return static_cast<Value>((unsigned __int128)a * b % p); }
    Value inv(Value a) const;
    Value div(Value a, Value b, NodeId gate) const
    {
        if (b == 0) throw DivisionByZero(gate);
        return mul(a, inv(b));
    }
    bool is_zero(Value a) const { return a == 0; }
};

// Truncated univariate power series over a field: value mod t^(order+1).
// Division requires an invertible constant term.
struct SeriesDomain {
    FieldPtr field;
    int order = 0;
    using Value = std::vector<Scalar>;
    Value from_const(const Scalar& s) const;
    Value add(const Value& a, const Value& b) const;
    Value sub(const Value& a, const Value& b) const;
    Value mul(const Value& a, const Value& b) const;
    Value div(const Value& a, const Value& b, NodeId gate) const;
    bool is_zero(const Value& a) const;
};

// last node id that reads each node (or the node itself when unused)
std::vector<NodeId> last_uses(const Circuit& c);

template <class Dom>
std::vector<typename Dom::Value> evaluate_with(const Circuit& c, const Dom& dom,
                                               std::span<const typename Dom::Value> point)
{
    using V = typename Dom::Value;
    if (static_cast<int>(point.size()) != c.nvars()) throw Error("evaluate: point has wrong length");
    const auto& nodes = c.nodes();
    std::vector<V> val(nodes.size());
    std::vector<NodeId> last = last_uses(c);
    std::vector<char> keep(nodes.size(), 0);
    for (NodeId o : c.outputs()) keep[o] = 1;
    auto release = [&](NodeId child, NodeId at) {
        if (last[child] == at && !keep[child]) {
            V empty{};
            std::swap(val[child], empty);
        }
    };
    for (NodeId i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
        case Op::Var: val[i] = point[n.a]; break;
        case Op::Const: val[i] = dom.from_const(c.constants()[n.a]); break;
        case Op::Add: val[i] = dom.add(val[n.a], val[n.b]); break;
        case Op::Sub: val[i] = dom.sub(val[n.a], val[n.b]); break;
        case Op::Mul: val[i] = dom.mul(val[n.a], val[n.b]); break;
        case Op::Div: val[i] = dom.div(val[n.a], val[n.b], i); break;
        }
        if (n.op != Op::Var && n.op != Op::Const) {
            release(n.a, i);
            release(n.b, i);
        }
    }
    std::vector<V> out;
    out.reserve(c.outputs().size());
    for (NodeId o : c.outputs()) out.push_back(val[o]);
    return out;
}

// exact evaluation; Q circuits use plain rationals internally
std::vector<Scalar> evaluate(const Circuit& c, std::span<const Scalar> point);
std::vector<Rational> evaluate_rational(const Circuit& c, std::span<const Rational> point);
Rational evaluate1(const Circuit& c, std::span<const Rational> point);

// Batch evaluation over many points.  The parallel version splits the point
// list across OpenMP threads; results are in input order.  Each entry is
// empty when a division by zero occurred at that point.
using BatchResult = std::vector<std::optional<std::vector<Rational>>>;
BatchResult evaluate_batch_serial(const Circuit& c, const std::vector<std::vector<Rational>>& points);
BatchResult evaluate_batch(const Circuit& c, const std::vector<std::vector<Rational>>& points);

// modular evaluation; nullopt on an unlucky prime (bad constant or zero divisor)
std::optional<std::vector<std::uint64_t>> evaluate_modp(const Circuit& c, std::uint64_t p,
                                                        std::span<const std::uint64_t> point);

}  // namespace circfac
