#include "circfac/interp.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace circfac {

std::uint64_t all_vars_mask(int nvars) { return nvars >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << nvars) - 1; }

InterpPlan build_plan(int D)
{
    if (D < 0) throw Error("interpolation degree must be non-negative");
    const int n = D + 1;
    InterpPlan plan;
    plan.degree = D;
    for (int i = 0; i < n; ++i) plan.points.push_back(Rational(i));
    // invert the Vandermonde matrix V[i][r] = points[i]^r by Gauss-Jordan
    std::vector<std::vector<Rational>> v(n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
        Rational p = 1;
        for (int r = 0; r < n; ++r) {
            v[i][r] = p;
            p *= plan.points[i];
        }
        v[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (v[piv][col] == 0) ++piv;
        std::swap(v[piv], v[col]);
        Rational inv = 1 / v[col][col];
        for (auto& e : v[col]) e *= inv;
        for (int row = 0; row < n; ++row) {
            if (row == col || v[row][col] == 0) continue;
            Rational f = v[row][col];
            for (int j = 0; j < 2 * n; ++j) v[row][j] -= f * v[col][j];
        }
    }
    plan.weights.assign(n, std::vector<Rational>(n));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i) plan.weights[r][i] = v[r][n + i];
    // applying the plan to x^s must give the unit vector e_s
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r) {
            Rational acc = 0;
            for (int i = 0; i < n; ++i) {
                Rational p = 1;
                for (int t = 0; t < s; ++t) p *= plan.points[i];
                acc += plan.weights[r][i] * p;
            }
            if (acc != (r == s ? 1 : 0)) throw Error("interpolation plan failed its basis check");
        }
    return plan;
}

const InterpPlan& make_plan(int D)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<InterpPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[D];
    if (!slot) slot = std::make_unique<InterpPlan>(build_plan(D));
    return *slot;
}

namespace {

std::vector<NodeId> combine(CircuitBuilder& b, const std::vector<NodeId>& samples, const InterpPlan& plan)
{
    std::vector<NodeId> out;
    for (int r = 0; r <= plan.degree; ++r) {
        std::vector<std::pair<Scalar, NodeId>> terms;
        for (int i = 0; i <= plan.degree; ++i) terms.push_back({Scalar(plan.weights[r][i]), samples[i]});
        out.push_back(b.linear(terms));
    }
    return out;
}

std::vector<NodeId> identity_images(CircuitBuilder& b)
{
    std::vector<NodeId> img;
    for (int j = 0; j < b.nvars(); ++j) img.push_back(b.var(j));
    return img;
}

}  // namespace

std::vector<NodeId> coefficients_of(CircuitBuilder& b, NodeId root, int var, const InterpPlan& plan)
{
    if (var < 0 || var >= b.nvars()) throw Error("coefficient variable out of range");
    std::vector<NodeId> img = identity_images(b), samples;
    for (const auto& p : plan.points) {
        img[var] = b.constant(p);
        samples.push_back(b.rewrite(root, img));
    }
    return combine(b, samples, plan);
}

std::vector<NodeId> hom_components(CircuitBuilder& b, NodeId root, std::uint64_t mask, const InterpPlan& plan)
{
    std::vector<NodeId> samples;
    for (const auto& p : plan.points) {
        std::vector<NodeId> img = identity_images(b);
        NodeId pc = b.constant(p);
        for (int j = 0; j < b.nvars(); ++j)
            if (mask >> j & 1) img[j] = b.mul(pc, img[j]);
        samples.push_back(b.rewrite(root, img));
    }
    return combine(b, samples, plan);
}

std::vector<std::vector<NodeId>> bigraded_components(CircuitBuilder& b, NodeId root, std::uint64_t mask, int yvar,
                                                     const InterpPlan& xplan, const InterpPlan& yplan)
{
    mask &= ~(std::uint64_t(1) << yvar);
    // samples[i][j] = root(points_i * x, points_j)
    std::vector<std::vector<NodeId>> by_y(yplan.degree + 1);
    for (const auto& tau : xplan.points) {
        std::vector<NodeId> img = identity_images(b);
        NodeId tc = b.constant(tau);
        for (int j = 0; j < b.nvars(); ++j)
            if (mask >> j & 1) img[j] = b.mul(tc, img[j]);
        NodeId scaled = b.rewrite(root, img);
        auto ycoeffs = coefficients_of(b, scaled, yvar, yplan);
        for (int j = 0; j <= yplan.degree; ++j) by_y[j].push_back(ycoeffs[j]);
    }
    std::vector<std::vector<NodeId>> table(xplan.degree + 1, std::vector<NodeId>(yplan.degree + 1));
    for (int j = 0; j <= yplan.degree; ++j) {
        auto homs = combine(b, by_y[j], xplan);
        for (int a = 0; a <= xplan.degree; ++a) table[a][j] = homs[a];
    }
    return table;
}

std::vector<NodeId> graded_components(CircuitBuilder& b, NodeId root, std::uint64_t mask, int k)
{
    // collect the subgraph under root in topological (id) order
    std::vector<NodeId> order;
    {
        std::vector<NodeId> stack = {root};
        std::unordered_map<NodeId, char> seen;
        while (!stack.empty()) {
            NodeId id = stack.back();
            stack.pop_back();
            if (!seen.emplace(id, 1).second) continue;
            order.push_back(id);
            const Node& n = b.node(id);
            if (n.op != Op::Var && n.op != Op::Const && (b.var_mask(id) & mask)) {
                stack.push_back(n.a);
                stack.push_back(n.b);
            }
        }
        std::sort(order.begin(), order.end());
    }
    std::unordered_map<NodeId, std::vector<NodeId>> comp;
    NodeId zero = b.zero();
    for (NodeId id : order) {
        Node n = b.node(id);
        std::vector<NodeId> g(k + 1, zero);
        if ((b.var_mask(id) & mask) == 0) {
            g[0] = id;
        } else if (n.op == Op::Var) {
            if (k >= 1) g[1] = id;
        } else if (n.op == Op::Add || n.op == Op::Sub) {
            const auto& ga = comp.at(n.a);
            const auto& gb = comp.at(n.b);
            for (int l = 0; l <= k; ++l) g[l] = n.op == Op::Add ? b.add(ga[l], gb[l]) : b.sub(ga[l], gb[l]);
        } else if (n.op == Op::Mul) {
            const auto& ga = comp.at(n.a);
            const auto& gb = comp.at(n.b);
            for (int l = 0; l <= k; ++l) {
                NodeId acc = zero;
                for (int s = 0; s <= l; ++s) acc = b.add(acc, b.mul(ga[s], gb[l - s]));
                g[l] = acc;
            }
        } else {
            throw Error("graded components need a division-free circuit in the graded variables");
        }
        comp.emplace(id, std::move(g));
    }
    return comp.at(root);
}

// ---------------------------------------------------------------------------

namespace {

struct Loaded {
    CircuitBuilder b;
    NodeId root;
    explicit Loaded(const Circuit& c) : b(c.field(), c.nvars())
    {
        if (c.outputs().size() != 1) throw Error("expected a single-output circuit");
        root = b.import(c)[0];
    }
};

}  // namespace

Circuit coefficient_of(const Circuit& c, int var, int r, const InterpPlan& plan)
{
    if (r < 0 || r > plan.degree) throw Error("coefficient index exceeds the plan degree");
    Loaded l(c);
    return l.b.finish(coefficients_of(l.b, l.root, var, plan)[r], c.yvar());
}

Circuit hom_component(const Circuit& c, int i, const InterpPlan& plan)
{
    if (i < 0 || i > plan.degree) throw Error("homogeneous index exceeds the plan degree");
    Loaded l(c);
    return l.b.finish(hom_components(l.b, l.root, all_vars_mask(c.nvars()), plan)[i], c.yvar());
}

Circuit hom_truncate(const Circuit& c, int k, const InterpPlan& plan)
{
    if (k < 0 || k > plan.degree) throw Error("truncation index exceeds the plan degree");
    Loaded l(c);
    auto h = hom_components(l.b, l.root, all_vars_mask(c.nvars()), plan);
    h.resize(k + 1);
    return l.b.finish(l.b.sum(h), c.yvar());
}

Circuit partial_derivative(const Circuit& c, int var, int r, const InterpPlan& plan)
{
    if (r < 0) throw Error("derivative order must be non-negative");
    Loaded l(c);
    auto& b = l.b;
    if (r > plan.degree) return b.finish(b.zero(), c.yvar());
    auto coeffs = coefficients_of(b, l.root, var, plan);
    NodeId y = b.var(var);
    std::vector<NodeId> terms;
    for (int i = r; i <= plan.degree; ++i) {
        Integer falling = 1;
        for (int t = 0; t < r; ++t) falling *= i - t;
        NodeId term = b.mul(b.constant(Rational(falling)), coeffs[i]);
        terms.push_back(b.mul(term, b.pow(y, i - r)));
    }
    return b.finish(b.sum(terms), c.yvar());
}

Circuit partial_derivative_y(const Circuit& c, int r, const InterpPlan& plan)
{
    if (!c.yvar()) throw Error("circuit has no designated y variable");
    return partial_derivative(c, *c.yvar(), r, plan);
}

}  // namespace circfac
