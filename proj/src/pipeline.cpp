#include "circfac/pipeline.hpp"

#include "circfac/eval.hpp"
#include "circfac/interp.hpp"
#include "circfac/newton.hpp"
#include "circfac/pseudo.hpp"
#include "circfac/univar.hpp"

#include <json.hpp>

#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace circfac {

namespace {

using json = nlohmann::ordered_json;

struct Layout {
    int nvars = 0;
    int y = 0;
    std::vector<int> xs;
};

Layout layout_of(int nvars, int y)
{
    Layout L{nvars, y, {}};
    for (int v = 0; v < nvars; ++v)
        if (v != y) L.xs.push_back(v);
    return L;
}

Rational factorial(int n)
{
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// (j + 1)(j + 2)...(j + i)
Rational rising(int j, int i)
{
    Rational r = 1;
    for (int t = 1; t <= i; ++t) r *= j + t;
    return r;
}

// f(a, y) with the x variables pinned to a
upoly::Poly restrict_to_y(const Circuit& f, const Layout& L, const Point& a, int D)
{
    const InterpPlan& plan = make_plan(D);
    std::vector<Rational> pt(L.nvars);
    for (std::size_t j = 0; j < L.xs.size(); ++j) pt[L.xs[j]] = a[j];
    std::vector<Rational> vals;
    for (const auto& t : plan.points) {
        pt[L.y] = t;
        vals.push_back(evaluate1(f, pt));
    }
    upoly::Poly p(D + 1);
    for (int r = 0; r <= D; ++r)
        for (int t = 0; t <= D; ++t) p[r] += plan.weights[r][t] * vals[t];
    upoly::trim(p);
    return p;
}

upoly::Poly derived_monic(const upoly::Poly& F0, int i)
{
    upoly::Poly p = F0;
    for (int t = 0; t < i; ++t) p = derivative(p);
    if (p.empty()) return p;
    Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

Scalar eval_upoly(const upoly::Poly& p, const Scalar& u)
{
    Scalar acc = Scalar::zero(u.field());
    for (std::size_t j = p.size(); j-- > 0;) acc = acc * u + Scalar::embed(u.field(), p[j]);
    return acc;
}

// Hom_a of the y^j coefficient of f(x + a, y), flattened as a * (D + 1) + j
struct ShiftTable {
    Circuit table;
    upoly::Poly F0;
};

ShiftTable shift_table(const Circuit& f, const Layout& L, const Point& a, int D)
{
    CircuitBuilder b(nullptr, L.nvars);
    std::vector<NodeId> img;
    for (int v = 0; v < L.nvars; ++v) img.push_back(b.var(v));
    for (std::size_t j = 0; j < L.xs.size(); ++j) img[L.xs[j]] = b.add(b.var(L.xs[j]), b.constant(a[j]));
    NodeId root = b.import(f, img).at(0);
    std::uint64_t xmask = all_vars_mask(L.nvars) & ~(std::uint64_t(1) << L.y);
    auto t = bigraded_components(b, root, xmask, L.y, make_plan(D), make_plan(D));
    std::vector<NodeId> flat;
    for (const auto& row : t) flat.insert(flat.end(), row.begin(), row.end());
    return {b.finish(flat, L.y), restrict_to_y(f, L, a, D)};
}

// table of the normalized i-th y-derivative, degrees 0..D-i
NodeTable derived_table(CircuitBuilder& b, const std::vector<NodeId>& flat, int D, int i)
{
    int Di = D - i;
    Rational norm = factorial(D - i) / factorial(D);
    NodeTable T(Di + 1, std::vector<NodeId>(Di + 1));
    for (int a = 0; a <= Di; ++a)
        for (int j = 0; j <= Di; ++j) T[a][j] = b.scale(flat[a * (D + 1) + j + i], Scalar(rising(j, i) * norm));
    return T;
}

struct DegreeParams {
    int k = 0;
    int Dx = 0;
    std::optional<int> total;
};

DegreeParams params_for(int d, int Di, KPolicy policy)
{
    if (policy == KPolicy::Square) return {2 * Di * Di, Di, std::nullopt};
    return {2 * d * d, d, d};
}

// maps G over K (variables of f-tilde) to the final candidate
using Finalizer = std::function<Circuit(const Circuit& g, const Point& a)>;

struct BodyOut {
    std::vector<FactorCandidate> cands;
    std::vector<SkipRecord> skips;
};

// fixed-degree pass at one shift point for one derivative index
BodyOut shift_point_body(const ShiftTable& st, const Layout& L, int D, int i, const Point& a,
                        const std::vector<int>& ds, const PipelineConfig& cfg, const Finalizer& fin,
                        const upoly::Poly* only_root = nullptr)
{
    BodyOut out;
    const int Di = D - i;
    upoly::Poly p = derived_monic(st.F0, i);
    if (upoly::degree(p) != Di) {
        out.skips.push_back({i, a, {}, "F(0, y) has the wrong degree"});
        return out;
    }
    auto fac = factor_rational(p);
    upoly::Poly dp = derivative(p);
    for (const auto& factor : fac.factors) {
        if (factor.multiplicity != 1) continue;
        if (only_root && factor.poly != *only_root) continue;
        const int r = upoly::degree(factor.poly);
        for (int d : ds) {
            if (d < r || d > Di) continue;
            try {
                FieldPtr K;
                Scalar u;
                if (r == 1) {
                    u = Scalar(-factor.poly[0]);
                } else {
                    K = make_extension(factor.poly);
                    u = Scalar::generator(K);
                }
                Scalar slope = eval_upoly(dp, u);
                if (slope.is_zero()) {
                    out.skips.push_back({i, a, factor.poly, "dF/dy(0, u) = 0"});
                    break;
                }
                DegreeParams dpar = params_for(d, Di, cfg.k_policy);
                CircuitBuilder b(K, L.nvars);
                auto flat = b.import(st.table);
                NodeTable T = derived_table(b, flat, D, i);
                auto psi = lift_graded_table(b, T, u, slope.inverse(), dpar.k);
                auto P = powers_from_components(b, psi, d, dpar.k);
                RecoverOptions opt;
                opt.total_degree = dpar.total;
                opt.solver = cfg.solver;
                MinPolyNodes m = recover_nodes(b, P, d, dpar.Dx, dpar.k, opt);
                Circuit g = b.finish(assemble_minpoly(b, m, L.y), L.y);
                FactorCandidate c;
                c.circuit = fin(g, a);
                c.prov.i = i;
                c.prov.a = a;
                c.prov.root = factor.poly;
                c.prov.d = d;
                c.prov.k = dpar.k;
                c.prov.unknowns = m.unknowns;
                c.converted = r > 1;
                out.cands.push_back(std::move(c));
            } catch (const Error& e) {
                out.skips.push_back({i, a, factor.poly, std::string("d = ") + std::to_string(d) + ": " + e.what()});
            }
        }
    }
    return out;
}

Point to_point(const std::vector<int>& v) { return Point(v.begin(), v.end()); }

struct Task {
    int i = 0;
    std::size_t point = 0;  // index into the distinct point list
};

struct Plan {
    std::vector<Point> distinct;
    std::vector<Task> tasks;
    std::vector<PointRecord> records;
};

std::size_t intern(std::vector<Point>& pts, const Point& a)
{
    for (std::size_t t = 0; t < pts.size(); ++t)
        if (pts[t] == a) return t;
    pts.push_back(a);
    return pts.size() - 1;
}

std::unique_ptr<PointStream> shift_point_stream(const PipelineConfig& cfg, int n, int Di)
{
    auto spec = HittingSetSpec::parse_mode(cfg.hitting, n + 1, 5 * Di * Di);
    spec.size_bound = cfg.size_bound;
    if (spec.mode == HittingMode::Grid) return points(project(spec, n));
    return project(points(spec), n);
}

// choose the shift points for every derivative index
Plan plan_points(const Circuit& f, const Layout& L, int D, const std::vector<int>& indices, const PipelineConfig& cfg)
{
    Plan plan;
    const int n = static_cast<int>(L.xs.size());
    if (!cfg.early_stop) {
        for (int i : indices) {
            auto st = shift_point_stream(cfg, n, D - i);
            while (auto a = st->next()) {
                upoly::Poly F0 = restrict_to_y(f, L, *a, D);
                int s = simple_root_degree(derived_monic(F0, i));
                plan.records.push_back({i, *a, s, 1});
                plan.tasks.push_back({i, intern(plan.distinct, *a)});
            }
        }
        return plan;
    }
    // Early stop: the multiplicity-one part of F(0, y) has degree at most the
    // generic value, reached off the zero set of a nonzero polynomial of degree
    // <= Di (Di - 1).  The simplex of that degree therefore contains a point
    // attaining it; the first point attaining the maximum is kept.
    std::vector<Point> scan;
    int B = 0;
    for (int i : indices) B = std::max(B, (D - i) * (D - i - 1));
    auto spec = HittingSetSpec::parse_mode(cfg.hitting, n + 1, B);
    if (spec.mode == HittingMode::Grid) {
        for (const auto& v : simplex_points(n, B)) scan.push_back(to_point(v));
    } else {
        auto st = project(points(spec), n);
        scan = collect(*st);
    }
    struct Best {
        int s = -1;
        Point a;
        std::uint64_t scanned = 0;
        bool done = false;
    };
    std::map<int, Best> best;
    for (int i : indices) best[i];
    std::size_t open = indices.size();
    for (const auto& a : scan) {
        if (open == 0) break;
        Rational sum = 0;
        for (const auto& c : a) sum += c;
        upoly::Poly F0;
        for (int i : indices) {
            Best& bi = best[i];
            const int Di = D - i;
            if (bi.done) continue;
            if (spec.mode == HittingMode::Grid && sum > Di * (Di - 1)) continue;
            if (F0.empty()) F0 = restrict_to_y(f, L, a, D);
            ++bi.scanned;
            int s = simple_root_degree(derived_monic(F0, i));
            if (s > bi.s) {
                bi.s = s;
                bi.a = a;
            }
            if (s == Di) {
                bi.done = true;
                --open;
            }
        }
    }
    for (int i : indices) {
        const Best& bi = best[i];
        if (bi.s < 0) continue;
        plan.records.push_back({i, bi.a, bi.s, bi.scanned});
        plan.tasks.push_back({i, intern(plan.distinct, bi.a)});
    }
    return plan;
}

std::vector<int> degrees_for(int D, int i, bool full_degree)
{
    std::vector<int> ds;
    for (int d = 1; d <= D - 1 && d <= D - i; ++d) ds.push_back(d);
    if (full_degree && i == 0) ds.push_back(D);
    return ds;
}

void run_tasks(const Circuit& ft, const Layout& L, int D, const Plan& plan,
               const std::function<std::vector<int>(int)>& degrees, const PipelineConfig& cfg, const Finalizer& fin,
               RunResult& result)
{
    std::vector<ShiftTable> tables(plan.distinct.size());
    std::vector<BodyOut> outs(plan.tasks.size());
    std::exception_ptr failure;
    const long np = static_cast<long>(plan.distinct.size());
    const long nt = static_cast<long>(plan.tasks.size());
    const int jobs = std::max(1, cfg.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (long t = 0; t < np; ++t) {
        try {
            tables[t] = shift_table(ft, L, plan.distinct[t], D);
        } catch (...) {
#pragma omp critical(circfac_pipeline_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (long t = 0; t < nt; ++t) {
        const Task& task = plan.tasks[t];
        try {
            outs[t] = shift_point_body(tables[task.point], L, D, task.i, plan.distinct[task.point],
                                      degrees(task.i), cfg, fin);
        } catch (...) {
#pragma omp critical(circfac_pipeline_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& o : outs) {
        for (auto& c : o.cands) result.candidates.push_back(std::move(c));
        for (auto& s : o.skips) result.skipped.push_back(std::move(s));
    }
}

Circuit tilde(const Circuit& f, const Point& alpha, const Rational& gamma)
{
    const int n = f.nvars();
    std::vector<AffineForm> images;
    for (int j = 0; j < n; ++j) images.push_back({Scalar(0), {{j, Scalar(1)}, {n, Scalar(alpha[j])}}});
    return scale(substitute_affine(f, images, n + 1, n), Scalar(Rational(1) / gamma));
}

// G(x - a, 0) in the original n variables, over Q
Finalizer original_vars_finalizer(int n)
{
    return [n](const Circuit& g, const Point& a) {
        CircuitBuilder b(g.field(), n);
        std::vector<NodeId> img;
        for (int j = 0; j < n; ++j) img.push_back(b.sub(b.var(j), b.constant(a[j])));
        img.push_back(b.zero());
        return to_base_field(b.finish(b.import(g, img).at(0)));
    };
}

// G(x - a, y), over Q
Finalizer shifted_vars_finalizer(const Layout& L)
{
    return [L](const Circuit& g, const Point& a) {
        CircuitBuilder b(g.field(), L.nvars);
        std::vector<NodeId> img;
        for (int v = 0; v < L.nvars; ++v) img.push_back(b.var(v));
        for (std::size_t j = 0; j < L.xs.size(); ++j) img[L.xs[j]] = b.sub(b.var(L.xs[j]), b.constant(a[j]));
        return to_base_field(b.finish(b.import(g, img).at(0), L.y));
    };
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int simple_root_degree(const upoly::Poly& p)
{
    if (upoly::degree(p) <= 0) return 0;
    int s = 0;
    for (const auto& part : squarefree_decompose(p))
        if (part.multiplicity == 1) s += upoly::degree(part.poly);
    return s;
}

MonicResult monicize(const Circuit& f, const HittingSetSpec& hs, std::optional<int> D)
{
    if (f.has_division()) throw Error("monicize: input has division gates");
    const int n = f.nvars();
    if (hs.nvars != n) throw Error("monicize: hitting set has the wrong number of variables");
    MonicResult r;
    r.D = D ? *D : exact_total_degree(f);
    if (r.D < 0) throw DomainError("monicize: zero polynomial");
    const InterpPlan& plan = make_plan(r.D);
    auto st = points(hs);
    while (auto alpha = st->next()) {
        ++r.tried;
        // Hom_D(f)(alpha) is the t^D coefficient of f(t alpha)
        Rational top = 0;
        for (int t = 0; t <= r.D; ++t) {
            std::vector<Rational> pt;
            for (const auto& c : *alpha) pt.push_back(c * plan.points[t]);
            top += plan.weights[r.D][t] * evaluate1(f, pt);
        }
        if (top == 0) continue;
        r.alpha = *alpha;
        r.gamma = top;
        r.f = tilde(f, r.alpha, r.gamma);
        return r;
    }
    throw DomainError("monicize: no point with Hom_D(f) != 0; degree bound inconsistent");
}

RunResult candidates_all(const Circuit& f, const PipelineConfig& cfg)
{
    auto t0 = std::chrono::steady_clock::now();
    RunResult result;
    if (f.outputs().size() != 1) throw Error("candidates: single-output circuit expected");
    if (f.field()) throw DomainError("candidates: input must be over Q");
    if (f.has_division()) throw Error("candidates: input has division gates");
    const int n = f.nvars();
    result.D = cfg.degree ? *cfg.degree : exact_total_degree(f);
    if (result.D < 1) {
        result.seconds = seconds_since(t0);
        return result;
    }
    const int D = result.D;
    auto hs = HittingSetSpec::parse_mode(cfg.hitting, n, D);
    hs.size_bound = static_cast<std::uint64_t>(stats(f).size) * D * D * D;
    MonicResult mono = monicize(f, hs, D);
    result.alpha = mono.alpha;
    result.gamma = mono.gamma;
    result.monic_tried = mono.tried;

    Layout L = layout_of(n + 1, n);
    std::vector<int> indices;
    for (int i = 0; i < D; ++i)
        if (!degrees_for(D, i, cfg.full_degree).empty()) indices.push_back(i);
    Plan plan = plan_points(mono.f, L, D, indices, cfg);
    result.points = plan.records;
    auto degrees = [&](int i) { return degrees_for(D, i, cfg.full_degree); };
    run_tasks(mono.f, L, D, plan, degrees, cfg, original_vars_finalizer(n), result);
    for (auto& c : result.candidates) {
        c.prov.alpha = mono.alpha;
        c.prov.gamma = mono.gamma;
    }
    result.seconds = seconds_since(t0);
    return result;
}

RunResult candidates_mult_one(const Circuit& f, int d, const PipelineConfig& cfg)
{
    auto t0 = std::chrono::steady_clock::now();
    if (f.field()) throw DomainError("mult-one: input must be over Q");
    if (f.has_division()) throw Error("mult-one: input has division gates");
    if (!f.yvar()) throw DomainError("mult-one: input has no y variable");
    RunResult result;
    const int D = cfg.degree ? *cfg.degree : exact_total_degree(f);
    result.D = D;
    Layout L = layout_of(f.nvars(), *f.yvar());
    // monic: the y^D coefficient is the constant 1
    {
        CircuitBuilder b(nullptr, f.nvars());
        NodeId root = b.import(f).at(0);
        auto cs = coefficients_of(b, root, L.y, make_plan(std::max(D, 0)));
        if (D < 1 || !grid_pit(b.finish(b.sub(cs[D], b.one())), D)) throw DomainError("mult-one: input is not monic in y");
    }
    if (d < 1 || d > D) throw Error("mult-one: degree guess out of range");
    Plan plan = plan_points(f, L, D, {0}, cfg);
    result.points = plan.records;
    auto degrees = [d](int) { return std::vector<int>{d}; };
    run_tasks(f, L, D, plan, degrees, cfg, shifted_vars_finalizer(L), result);
    result.seconds = seconds_since(t0);
    return result;
}

Circuit replay_candidate(const Circuit& f, const Provenance& p, const PipelineConfig& cfg)
{
    const int n = f.nvars();
    Circuit ft = tilde(f, p.alpha, p.gamma);
    Layout L = layout_of(n + 1, n);
    int D = cfg.degree ? *cfg.degree : exact_total_degree(f);
    ShiftTable st = shift_table(ft, L, p.a, D);
    auto out = shift_point_body(st, L, D, p.i, p.a, {p.d}, cfg, original_vars_finalizer(n), &p.root);
    if (out.cands.size() != 1) throw Error("replay: provenance does not name a candidate");
    return out.cands[0].circuit;
}

// ---------------------------------------------------------------------------

Circuit to_base_field(const Circuit& c)
{
    if (!c.field()) return c;
    if (c.outputs().size() != 1) throw Error("to_base_field: single-output circuit expected");
    const FieldPtr& K = c.field();
    const int r = K->degree();
    const int n = c.nvars();
    CircuitBuilder bq(nullptr, n);
    std::vector<NodeId> vars;
    for (int j = 0; j < n; ++j) vars.push_back(bq.var(j));

    bool rational = true;
    for (const auto& s : c.constants()) rational = rational && s.is_base();
    if (rational) return bq.finish(bq.import(c, vars).at(0), c.yvar());

    if (r == 1) {
        // u is the rational root; every constant is its first coordinate
        std::vector<NodeId> id(c.node_count());
        for (NodeId i = 0; i < c.node_count(); ++i) {
            const Node& nd = c.nodes()[i];
            switch (nd.op) {
            case Op::Var: id[i] = vars[nd.a]; break;
            case Op::Const: id[i] = bq.constant(c.constants()[nd.a].c0()); break;
            case Op::Add: id[i] = bq.add(id[nd.a], id[nd.b]); break;
            case Op::Sub: id[i] = bq.sub(id[nd.a], id[nd.b]); break;
            case Op::Mul: id[i] = bq.mul(id[nd.a], id[nd.b]); break;
            case Op::Div: id[i] = bq.div(id[nd.a], id[nd.b]); break;
            }
        }
        return bq.finish(id[c.output()], c.yvar());
    }

    // num / den over K, both division-free
    CircuitBuilder bk(K, n);
    std::vector<NodeId> kv;
    for (int j = 0; j < n; ++j) kv.push_back(bk.var(j));
    auto [num, den] = eliminate_divisions(bk, c, kv, c.output());
    NodeId nd_outs[2] = {num, den};
    Circuit split_src = bk.finish(std::span<const NodeId>(nd_outs, 2));

    auto co = split_coordinates(bq, split_src, vars);
    const auto& N = co[0];
    const auto& Dn = co[1];
    NodeId zero = bq.zero();

    // multiplication-by-den matrix: column t holds the coordinates of den u^t
    const auto& A = K->modulus();
    NodeMatrix M(r, std::vector<NodeId>(r));
    std::vector<NodeId> col = Dn;
    for (int t = 0; t < r; ++t) {
        for (int s = 0; s < r; ++s) M[s][t] = col[s];
        std::vector<NodeId> next(r);
        NodeId top = col[r - 1];
        for (int s = 0; s < r; ++s) {
            NodeId shifted = s == 0 ? zero : col[s - 1];
            next[s] = bq.sub(shifted, bq.mul(bq.constant(A[s]), top));
        }
        col = std::move(next);
    }
    // den^-1 = sum_t (B_t / Delta) u^t by Cramer
    NodeId delta = det_nodes(bq, M);
    std::vector<NodeId> B(r);
    for (int t = 0; t < r; ++t) {
        NodeMatrix Mt = M;
        for (int s = 0; s < r; ++s) Mt[s][t] = s == 0 ? bq.one() : zero;
        B[t] = det_nodes(bq, Mt);
    }
    // u^0 coordinate of num * den^-1
    NodeId acc = zero;
    for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) {
            const Rational& w = K->power_mod(s + t)[0];
            if (w != 0) acc = bq.add(acc, bq.mul(bq.constant(w), bq.mul(N[s], B[t])));
        }
    return bq.finish(bq.div(acc, delta), c.yvar());
}

// ---------------------------------------------------------------------------

std::string format_point(const Point& a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + to_string(a[i]);
    return s + ")";
}

std::string hash_hex(std::uint64_t h)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

namespace {

json point_json(const Point& a)
{
    json j = json::array();
    for (const auto& c : a) j.push_back(to_string(c));
    return j;
}

std::string candidate_file(std::size_t idx)
{
    std::ostringstream os;
    os << "cand_";
    os.width(4);
    os.fill('0');
    os << idx << ".circ";
    return os.str();
}

}  // namespace

std::string manifest_text(const Circuit& input, const RunResult& r, const PipelineConfig& cfg,
                          const std::string& command)
{
    json m;
    m["format"] = "circfac-run v1";
    m["command"] = command;
    m["input"] = {{"file", "input.circ"}, {"hash", hash_hex(fnv1a(serialize(input)))}, {"nvars", input.nvars()}};
    m["parameters"] = {{"size_bound", cfg.size_bound},
                       {"degree", r.D},
                       {"degree_source", cfg.degree ? "given" : "exact"},
                       {"hitting", cfg.hitting},
                       {"early_stop", cfg.early_stop},
                       {"full_degree", cfg.full_degree},
                       {"k_policy", cfg.k_policy == KPolicy::Square ? "square" : "factor"},
                       {"solver", cfg.solver == Solver::Cramer ? "cramer" : "adjugate"}};
    if (!r.alpha.empty())
        m["monic"] = {{"alpha", point_json(r.alpha)}, {"gamma", to_string(r.gamma)}, {"tried", r.monic_tried}};
    json pts = json::array();
    for (const auto& p : r.points)
        pts.push_back({{"i", p.i}, {"a", point_json(p.a)}, {"simple_roots", p.simple_roots}, {"scanned", p.scanned}});
    m["points"] = pts;
    json cands = json::array();
    for (std::size_t t = 0; t < r.candidates.size(); ++t) {
        const auto& c = r.candidates[t];
        auto st = stats(c.circuit);
        cands.push_back({{"file", candidate_file(t)},
                         {"hash", hash_hex(fnv1a(serialize(c.circuit)))},
                         {"i", c.prov.i},
                         {"a", point_json(c.prov.a)},
                         {"root", upoly::format(c.prov.root, "y")},
                         {"d", c.prov.d},
                         {"k", c.prov.k},
                         {"unknowns", c.prov.unknowns},
                         {"converted", c.converted},
                         {"nodes", st.nodes},
                         {"size", st.size},
                         {"divisions", st.divisions}});
    }
    m["candidates"] = cands;
    json skips = json::array();
    for (const auto& s : r.skipped)
        skips.push_back({{"i", s.i}, {"a", point_json(s.a)}, {"root", upoly::format(s.root, "y")}, {"reason", s.reason}});
    m["skipped"] = skips;
    return m.dump(2) + "\n";
}

void write_run(const std::string& dir, const Circuit& input, const RunResult& r, const PipelineConfig& cfg,
               const std::string& command)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path manifest = fs::path(dir) / "manifest.json";
    if (fs::exists(manifest)) throw Error("run directory already holds a manifest: " + manifest.string());
    write_circuit_file(input, (fs::path(dir) / "input.circ").string());
    for (std::size_t t = 0; t < r.candidates.size(); ++t)
        write_circuit_file(r.candidates[t].circuit, (fs::path(dir) / candidate_file(t)).string());
    {
        std::ofstream os(fs::path(dir) / "timings.json");
        json t = {{"seconds", r.seconds}, {"candidates", r.candidates.size()}};
        os << t.dump(2) << "\n";
    }
    std::ofstream os(manifest);
    os << manifest_text(input, r, cfg, command);
    if (!os) throw Error("cannot write " + manifest.string());
}

}  // namespace circfac
