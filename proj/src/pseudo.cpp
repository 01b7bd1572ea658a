#include "circfac/pseudo.hpp"

#include "circfac/eval.hpp"
#include "circfac/interp.hpp"

#include <fstream>
#include <sstream>

namespace circfac {

namespace {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::vector<std::uint64_t> reduce_point(const Point& p, const ModpDomain& dom)
{
    std::vector<std::uint64_t> out;
    for (const auto& q : p) out.push_back(dom.reduce(q));
    return out;
}

// value of the first output at p is nonzero (exact)
bool nonzero_at(const Circuit& c, const Point& p)
{
    ModpDomain dom{kPrime};
    try {
        auto r = evaluate_modp(c, kPrime, reduce_point(p, dom));
        if (r && (*r)[0] != 0) return true;
    } catch (const BadReduction&) {
    } catch (const DomainError&) {
    }
    std::vector<Scalar> sp(p.begin(), p.end());
    return !evaluate(c, sp)[0].is_zero();
}

NodeId load(CircuitBuilder& b, const Circuit& c)
{
    if (c.outputs().size() != 1) throw Error("expected a single-output circuit");
    return b.import(c)[0];
}

}  // namespace

bool grid_pit(const Circuit& c, int degree_bound)
{
    if (c.has_division()) throw Error("grid PIT needs a division-free circuit");
    if (degree_bound < 0) degree_bound = 0;
    HittingSetSpec spec{c.nvars(), degree_bound};
    auto st = points(spec);
    while (auto p = st->next())
        if (nonzero_at(c, *p)) return false;
    return true;
}

int exact_total_degree(const Circuit& c)
{
    if (c.has_division()) throw Error("exact degree needs a division-free circuit");
    const int B = formal_degree(c);
    const int n = c.nvars();
    const InterpPlan& plan = make_plan(B);
    // g(t) = c(t a) has degree max{k : Hom_k(c)(a) != 0}; Hom_top is hit on the grid
    int best = -1;
    HittingSetSpec spec{n, B};
    auto st = points(spec);
    std::vector<Scalar> vals(B + 1);
    while (auto a = st->next()) {
        for (int i = 0; i <= B; ++i) {
            std::vector<Scalar> p;
            for (const auto& ai : *a) p.push_back(Scalar(ai * plan.points[i]));
            vals[i] = evaluate(c, p)[0];
        }
        for (int k = B; k > best; --k) {
            Scalar acc = Scalar::zero(c.field());
            for (int i = 0; i <= B; ++i) acc += Scalar::embed(c.field(), plan.weights[k][i]) * vals[i];
            if (!acc.is_zero()) {
                best = k;
                break;
            }
        }
        if (best == B) break;
    }
    return best;
}

int exact_degree_in(const Circuit& c, int var)
{
    int bound = formal_degree_in(c, std::uint64_t(1) << var);
    const InterpPlan& plan = make_plan(bound);
    int total = formal_degree(c);
    CircuitBuilder b(c.field(), c.nvars());
    NodeId root = load(b, c);
    auto coeffs = coefficients_of(b, root, var, plan);
    for (int j = bound; j >= 0; --j)
        if (!grid_pit(b.finish(coeffs[j]), total)) return j;
    return -1;
}

// ---------------------------------------------------------------------------

PseudoQuotient pseudo_quotient(const Circuit& f, const Circuit& g, const Point& alpha, std::optional<int> D,
                               std::optional<int> d)
{
    const int n = f.nvars();
    if (g.nvars() != n || static_cast<int>(alpha.size()) != n) throw Error("pseudo_quotient: variable counts differ");
    std::vector<Scalar> sa(alpha.begin(), alpha.end());
    Scalar beta = evaluate(g, sa)[0];
    if (beta.is_zero()) throw Error("bad center");
    const int DD = D ? *D : exact_total_degree(f);
    const int dd = d ? *d : exact_total_degree(g);
    if (DD < dd) throw Error("pseudo_quotient: deg f < deg g");
    const int e = DD - dd;

    CircuitBuilder b(f.field(), n);
    std::vector<NodeId> shift, unshift;
    for (int j = 0; j < n; ++j) {
        shift.push_back(b.add(b.var(j), b.constant(alpha[j])));
        unshift.push_back(b.sub(b.var(j), b.constant(alpha[j])));
    }
    NodeId F = b.import(f, shift)[0];
    NodeId G = b.import(g, shift)[0];
    NodeId binv = b.constant(beta.inverse());
    NodeId gt = b.sub(b.one(), b.mul(G, binv));
    NodeId T = b.one();
    for (int i = 0; i < e; ++i) T = b.add(b.one(), b.mul(gt, T));
    NodeId P = b.mul(b.mul(F, binv), T);
    const InterpPlan& plan = make_plan(DD + dd * e);
    auto homs = hom_components(b, P, all_vars_mask(n), plan);
    homs.resize(e + 1);
    NodeId Qt = b.sum(homs);
    NodeId Q = b.rewrite(Qt, unshift);
    return PseudoQuotient{b.finish(Q, f.yvar()), DD, dd, beta, alpha};
}

Point find_center(const Circuit& g)
{
    int dg = std::max(0, formal_degree(g));
    HittingSetSpec spec{g.nvars(), dg};
    auto st = points(spec);
    while (auto p = st->next()) {
        std::vector<Scalar> sp(p->begin(), p->end());
        if (!evaluate(g, sp)[0].is_zero()) return *p;
    }
    throw Error("no valid center found in the hitting set");
}

DivisibilityResult divides_detail(const Circuit& f, const Circuit& g, const PitOracle& pit)
{
    DivisibilityResult r;
    r.center = find_center(g);
    int D = exact_total_degree(f), d = exact_total_degree(g);
    if (D < 0) throw Error("divides: f is zero");
    if (D < d) {
        // only a constant multiple could divide, and g is not constant here
        r.divides = false;
        r.residual = f;
        return r;
    }
    PseudoQuotient q = pseudo_quotient(f, g, r.center, D, d);
    CircuitBuilder b(f.field(), f.nvars());
    NodeId F = load(b, f), G = load(b, g), Q = load(b, q.q);
    r.residual = b.finish(b.sub(F, b.mul(Q, G)), f.yvar());
    r.divides = pit(r.residual, D);
    return r;
}

bool divides(const Circuit& f, const Circuit& g, const PitOracle& pit) { return divides_detail(f, g, pit).divides; }

Circuit s_f(const Circuit& f)
{
    if (!f.yvar()) throw Error("circuit has no designated y variable");
    int dy = formal_degree_in(f, std::uint64_t(1) << *f.yvar());
    Circuit df = partial_derivative_y(f, 1, make_plan(std::max(dy, 0)));
    CircuitBuilder b(f.field(), f.nvars());
    NodeId r = load(b, df);
    return b.finish(b.mul(r, r), f.yvar());
}

std::pair<NodeId, NodeId> pseudo_resultant_nodes(CircuitBuilder& b, NodeId f_root, NodeId g_root, int yvar, int D,
                                                 int d)
{
    const int n = b.nvars();
    // S_f = (d/dy f)^2 from the y-coefficients of f
    auto fc = coefficients_of(b, f_root, yvar, make_plan(D));
    NodeId y = b.var(yvar);
    std::vector<NodeId> dterms;
    for (int i = 1; i <= D; ++i) dterms.push_back(b.mul(b.mul(b.constant(Rational(i)), fc[i]), b.pow(y, i - 1)));
    NodeId df = b.sum(dterms);
    NodeId S = b.mul(df, df);
    const int dq = 2 * (D - 1) - d;

    std::vector<NodeId> img;
    for (int j = 0; j < n; ++j) img.push_back(b.var(j));
    img[yvar] = b.zero();
    NodeId g0 = b.rewrite(g_root, img);
    if (dq < 0) return {S, b.one()};
    NodeId diff = b.sub(g0, g_root);
    // T = sum_{i<=dq} g0^(dq-i) diff^i by Horner
    NodeId T = b.one(), dpow = b.one();
    for (int i = 1; i <= dq; ++i) {
        dpow = b.mul(dpow, diff);
        T = b.add(b.mul(T, g0), dpow);
    }
    NodeId prod = b.mul(S, T);
    const int ydeg = 2 * (D - 1) + dq * d;
    auto pc = coefficients_of(b, prod, yvar, make_plan(ydeg));
    std::vector<NodeId> qterms;
    for (int j = 0; j <= dq; ++j) qterms.push_back(b.mul(pc[j], b.pow(y, j)));
    NodeId Qnum = b.sum(qterms);
    NodeId den = b.pow(g0, dq + 1);
    NodeId num = b.sub(b.mul(den, S), b.mul(Qnum, g_root));
    return {num, den};
}

PseudoResultant pseudo_resultant(const Circuit& f, const Circuit& g, std::optional<int> D, std::optional<int> d,
                                 const PitOracle& pit)
{
    if (!f.yvar() || !g.yvar() || *f.yvar() != *g.yvar()) throw Error("f and g need the same designated y variable");
    if (f.nvars() != g.nvars()) throw Error("f and g have different variable counts");
    const int yv = *f.yvar();
    PseudoResultant r;
    r.D = D ? *D : exact_degree_in(f, yv);
    r.d = d ? *d : exact_degree_in(g, yv);
    r.dq = 2 * (r.D - 1) - r.d;
    Circuit g0 = set_var(g, yv, Scalar(0));
    if (pit(g0, std::max(0, formal_degree(g0)))) throw Error("g has zero constant y-coefficient; shift first");
    CircuitBuilder b(f.field(), f.nvars());
    NodeId F = load(b, f), G = load(b, g);
    auto [num, den] = pseudo_resultant_nodes(b, F, G, yv, r.D, r.d);
    r.num = b.finish(num, yv);
    r.den = b.finish(den, yv);
    return r;
}

void write_pseudo_resultant(const PseudoResultant& r, const std::string& path)
{
    write_circuit_file(r.num, path + ".num");
    write_circuit_file(r.den, path + ".den");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    auto base = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
    out << "pseudoresultant v1\n"
        << "D " << r.D << "\nd " << r.d << "\ndq " << r.dq << "\n"
        << "num " << base << ".num\nden " << base << ".den\n";
}

PseudoResultant read_pseudo_resultant(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::string magic, version, key;
    in >> magic >> version;
    if (magic != "pseudoresultant" || version != "v1") throw Error("not a pseudo-resultant header");
    PseudoResultant r;
    std::string num, den;
    in >> key >> r.D >> key >> r.d >> key >> r.dq >> key >> num >> key >> den;
    if (!in) throw Error("malformed pseudo-resultant header");
    std::string dir = path.find_last_of('/') == std::string::npos ? "" : path.substr(0, path.find_last_of('/') + 1);
    r.num = read_circuit_file(dir + num);
    r.den = read_circuit_file(dir + den);
    return r;
}

}  // namespace circfac
