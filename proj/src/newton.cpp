#include "circfac/newton.hpp"

#include "circfac/eval.hpp"
#include "circfac/interp.hpp"

namespace circfac {

namespace {

FieldPtr common_field(const Circuit& F, const Scalar& u)
{
    if (!u.field()) return F.field();
    if (F.field() && !same_field(F.field(), u.field())) throw DomainError("root and circuit over different fields");
    return u.field();
}

Scalar in_field(const FieldPtr& K, const Scalar& s)
{
    if (same_field(s.field(), K)) return s;
    if (!s.field()) return Scalar::embed(K, s.c0());
    if (!K && s.is_base()) return Scalar(s.c0());
    throw DomainError("scalar from a different field");
}

int yvar_of(const Circuit& F)
{
    if (!F.yvar()) throw Error("F has no distinguished y variable");
    return *F.yvar();
}

}  // namespace

std::pair<Scalar, Scalar> start_values(const Circuit& F, const Scalar& u)
{
    FieldPtr K = common_field(F, u);
    int y = yvar_of(F);
    // F(0, u + t) mod t^2 = F(0, u) + dF/dy(0, u) t
    SeriesDomain dom{K, 1};
    std::vector<SeriesDomain::Value> point(F.nvars(), dom.from_const(Scalar::zero(K)));
    point[y] = dom.from_const(in_field(K, u));
    point[y][1] = Scalar::one(K);
    auto v = evaluate_with(F, dom, std::span<const SeriesDomain::Value>(point)).at(0);
    return {v[0], v[1]};
}

bool check_start(const Circuit& F, const Scalar& u)
{
    auto [value, slope] = start_values(F, u);
    return value.is_zero() && !slope.is_zero();
}

LiftState lift(const Circuit& F, const Scalar& u, int k)
{
    if (k < 0) throw Error("lift: negative iteration count");
    auto [value, slope] = start_values(F, u);
    if (!value.is_zero()) throw DomainError("lift: u is not a root of F(0, y)");
    if (slope.is_zero()) throw DomainError("lift: dF/dy(0, u) = 0");
    FieldPtr K = common_field(F, u);
    LiftState s;
    s.u = in_field(K, u);
    s.inv_slope = slope.inverse();
    CircuitBuilder b(K, F.nvars());
    s.F = b.finish(b.import(F)[0], F.yvar());
    s.phi = b.finish(b.constant(s.u), F.yvar());
    for (int i = 0; i < k; ++i) lift_step(s);
    return s;
}

void lift_step(LiftState& s)
{
    CircuitBuilder b(s.F.field(), s.F.nvars());
    NodeId phi = b.import(s.phi)[0];
    std::vector<NodeId> img;
    for (int j = 0; j < s.F.nvars(); ++j) img.push_back(b.var(j));
    img[yvar_of(s.F)] = phi;
    NodeId fval = b.import(s.F, img)[0];
    NodeId next = b.sub(phi, b.mul(b.constant(s.inv_slope), fval));
    s.phi = b.finish(next, s.F.yvar());
    ++s.k;
}

std::vector<NodeId> lift_graded_table(CircuitBuilder& b, const NodeTable& Fh, const Scalar& u, const Scalar& inv_slope,
                                      int k)
{
    const int xdeg = static_cast<int>(Fh.size()) - 1;
    const int ydeg = static_cast<int>(Fh.at(0).size()) - 1;
    NodeId zero = b.zero();
    NodeId u_node = b.constant(u);
    NodeId minus_inv = b.constant(-inv_slope);

    // P[j][l] = Hom_l(Phi^j), filled degree by degree
    std::vector<std::vector<NodeId>> P(ydeg + 1, std::vector<NodeId>(k + 1, zero));
    std::vector<NodeId> psi(k + 1, zero);
    psi[0] = u_node;
    P[0][0] = b.one();
    for (int j = 1; j <= ydeg; ++j) P[j][0] = b.constant(u.pow(j));
    // j * u^(j-1)
    std::vector<NodeId> dcoef(ydeg + 1, zero);
    for (int j = 1; j <= ydeg; ++j) dcoef[j] = b.constant(Scalar::embed(u.field(), Rational(j)) * u.pow(j - 1));

    for (int l = 1; l <= k; ++l) {
        // partial powers without the psi_l contribution
        std::vector<NodeId> hat(ydeg + 1, zero);
        for (int j = 1; j <= ydeg; ++j) {
            NodeId acc = b.mul(hat[j - 1], u_node);
            for (int t = 1; t <= l - 1; ++t) acc = b.add(acc, b.mul(P[j - 1][l - t], psi[t]));
            hat[j] = acc;
        }
        NodeId r = zero;
        for (int j = 0; j <= ydeg; ++j) {
            for (int a = 1; a <= std::min(l, xdeg); ++a) r = b.add(r, b.mul(Fh[a][j], P[j][l - a]));
            r = b.add(r, b.mul(Fh[0][j], hat[j]));
        }
        psi[l] = b.mul(minus_inv, r);
        P[0][l] = zero;
        for (int j = 1; j <= ydeg; ++j) P[j][l] = b.add(hat[j], b.mul(dcoef[j], psi[l]));
    }
    return psi;
}

std::vector<NodeId> lift_graded_nodes(CircuitBuilder& b, NodeId F_root, int yvar, const Scalar& u,
                                      const Scalar& inv_slope, int k, int xdeg, int ydeg)
{
    std::uint64_t xmask = all_vars_mask(b.nvars()) & ~(std::uint64_t(1) << yvar);
    auto Fh = bigraded_components(b, F_root, xmask, yvar, make_plan(xdeg), make_plan(ydeg));
    return lift_graded_table(b, Fh, u, inv_slope, k);
}

GradedLift lift_graded(const Circuit& F, const Scalar& u, int k, std::optional<int> xdeg, std::optional<int> ydeg)
{
    if (k < 0) throw Error("lift: negative iteration count");
    auto [value, slope] = start_values(F, u);
    if (!value.is_zero()) throw DomainError("lift: u is not a root of F(0, y)");
    if (slope.is_zero()) throw DomainError("lift: dF/dy(0, u) = 0");
    FieldPtr K = common_field(F, u);
    int y = yvar_of(F);
    int dx = xdeg ? *xdeg : formal_degree_in(F, all_vars_mask(F.nvars()) & ~(std::uint64_t(1) << y));
    int dy = ydeg ? *ydeg : formal_degree_in(F, std::uint64_t(1) << y);
    GradedLift g;
    g.u = in_field(K, u);
    g.inv_slope = slope.inverse();
    g.k = k;
    CircuitBuilder b(K, F.nvars());
    NodeId root = b.import(F)[0];
    auto psi = lift_graded_nodes(b, root, y, g.u, g.inv_slope, k, std::max(dx, 0), std::max(dy, 1));
    g.components = b.finish(psi, F.yvar());
    return g;
}

Circuit compose_root(const Circuit& F, const Circuit& phi)
{
    FieldPtr K = F.field() ? F.field() : phi.field();
    if (F.field() && phi.field() && !same_field(F.field(), phi.field()))
        throw DomainError("F and phi over different fields");
    CircuitBuilder b(K, F.nvars());
    NodeId p = b.import(phi)[0];
    std::vector<NodeId> img;
    for (int j = 0; j < F.nvars(); ++j) img.push_back(b.var(j));
    img[yvar_of(F)] = p;
    return b.finish(b.import(F, img)[0]);
}

bool residual_check(const Circuit& F, const Circuit& phi, int k, const OracleCaps& caps)
{
    OracleCaps c = caps;
    c.max_degree = std::max(c.max_degree, k);
    return expand_truncated(compose_root(F, phi), k, c).is_zero();
}

}  // namespace circfac
