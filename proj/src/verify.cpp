#include "circfac/verify.hpp"

#include "circfac/eval.hpp"
#include "circfac/hitting.hpp"
#include "circfac/pseudo.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <exception>
#include <map>

namespace circfac {

std::uint64_t random_prime(SplitMix64& rng)
{
    mpz_class z = (rng.next() >> 4) | (std::uint64_t(1) << 60);
    mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
    return mpz_get_ui(z.get_mpz_t());
}

std::string to_string(VerifyStatus s)
{
    switch (s) {
    case VerifyStatus::WellDefined: return "well-defined";
    case VerifyStatus::VerifiedFactor: return "verified-factor";
    case VerifyStatus::Verified: return "verified";
    case VerifyStatus::Refuted: return "refuted";
    case VerifyStatus::IllDefinedProbable: return "ill-defined-probable";
    case VerifyStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

struct QOps {
    using V = Rational;
    V zero() const { return 0; }
    V from_int(long v) const { return v; }
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V inv(const V& a) const { return 1 / a; }
    bool is_zero(const V& a) const { return a == 0; }
};

struct POps {
    ModpDomain dom;
    using V = std::uint64_t;
    V zero() const { return 0; }
    V from_int(long v) const { return dom.reduce(Rational(v)); }
    V add(V a, V b) const { return dom.add(a, b); }
    V sub(V a, V b) const { return dom.sub(a, b); }
    V mul(V a, V b) const { return dom.mul(a, b); }
    V inv(V a) const { return dom.inv(a); }
    bool is_zero(V a) const { return a == 0; }
};

template <class F>
void trim_poly(const F& k, std::vector<typename F::V>& p)
{
    while (!p.empty() && k.is_zero(p.back())) p.pop_back();
}

// coefficients (low first) of the polynomial of degree <= m through (t, vals[t]), t = 0..m
template <class F>
std::vector<typename F::V> interpolate_line(const F& k, const std::vector<typename F::V>& vals, int m)
{
    using V = typename F::V;
    std::vector<V> d(vals.begin(), vals.begin() + m + 1);
    for (int s = 1; s <= m; ++s) {
        V is = k.inv(k.from_int(s));
        for (int j = m; j >= s; --j) d[j] = k.mul(k.sub(d[j], d[j - 1]), is);
    }
    std::vector<V> poly = {d[m]};
    for (int j = m - 1; j >= 0; --j) {
        std::vector<V> next(poly.size() + 1, k.zero());
        V jj = k.from_int(j);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = k.add(next[i + 1], poly[i]);
            next[i] = k.sub(next[i], k.mul(jj, poly[i]));
        }
        next[0] = k.add(next[0], d[j]);
        poly = std::move(next);
    }
    trim_poly(k, poly);
    return poly;
}

template <class F>
typename F::V eval_poly(const F& k, const std::vector<typename F::V>& p, long t)
{
    typename F::V acc = k.zero(), tt = k.from_int(t);
    for (std::size_t i = p.size(); i-- > 0;) acc = k.add(k.mul(acc, tt), p[i]);
    return acc;
}

template <class F>
std::vector<typename F::V> remainder(const F& k, std::vector<typename F::V> a, const std::vector<typename F::V>& b)
{
    trim_poly(k, a);
    auto lead = k.inv(b.back());
    while (a.size() >= b.size()) {
        auto c = k.mul(a.back(), lead);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = k.sub(a[shift + i], k.mul(c, b[i]));
        a.pop_back();
        trim_poly(k, a);
    }
    return a;
}

enum class LineVerdict { Pass, Fail, Skip };

// cand restricted to the line must be a polynomial of degree <= D dividing f's restriction
template <class F>
LineVerdict line_test(const F& k, const std::vector<typename F::V>& fv, const std::vector<typename F::V>& cv, int D)
{
    auto q = interpolate_line(k, cv, D);
    for (int t = D + 1; t < static_cast<int>(cv.size()); ++t)
        if (eval_poly(k, q, t) != cv[t]) return LineVerdict::Fail;
    auto fl = interpolate_line(k, fv, D);
    if (q.empty()) return fl.empty() ? LineVerdict::Skip : LineVerdict::Fail;
    return remainder(k, fl, q).empty() ? LineVerdict::Pass : LineVerdict::Fail;
}

std::vector<Rational> random_int_point(SplitMix64& rng, int n, std::int64_t range)
{
    std::vector<Rational> p;
    for (int i = 0; i < n; ++i) p.push_back(Rational(static_cast<long>(rng.below(2 * range + 1)) - range));
    return p;
}

std::vector<std::uint64_t> reduce_point(const ModpDomain& dom, const std::vector<Rational>& p)
{
    std::vector<std::uint64_t> r;
    for (const auto& c : p) r.push_back(dom.reduce(c));
    return r;
}

std::optional<std::uint64_t> modp1(const Circuit& c, const ModpDomain& dom, const std::vector<Rational>& pt)
{
    try {
        auto v = evaluate_modp(c, dom.p, reduce_point(dom, pt));
        if (!v) return std::nullopt;
        return v->at(0);
    } catch (const BadReduction&) {
        return std::nullopt;
    }
}

std::optional<Rational> exact1(const Circuit& c, const std::vector<Rational>& pt)
{
    try {
        return evaluate1(c, pt);
    } catch (const DivisionByZero&) {
        return std::nullopt;
    }
}

bool exact_allowed(const Circuit& c, const VerifyOptions& opt) { return stats(c).size <= opt.exact_size_cap; }

VerifyResult base_result(const VerifyOptions& opt)
{
    VerifyResult r;
    r.seed = opt.seed;
    r.trials = opt.trials;
    return r;
}

std::vector<std::vector<Rational>> line_points(const std::vector<Rational>& P, const std::vector<Rational>& V, int count)
{
    std::vector<std::vector<Rational>> pts;
    for (int t = 0; t < count; ++t) {
        std::vector<Rational> q(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) q[i] = P[i] + t * V[i];
        pts.push_back(std::move(q));
    }
    return pts;
}

Rational binomial_count(int n, int D)
{
    Rational r = 1;
    for (int i = 1; i <= n; ++i) r = r * (D + i) / i;
    return r;
}

}  // namespace

VerifyResult probable_well_defined(const Circuit& c, const VerifyOptions& opt)
{
    VerifyResult res = base_result(opt);
    const auto& nodes = c.nodes();
    std::vector<char> witnessed(nodes.size(), 0);
    std::size_t open = 0;
    for (const auto& nd : nodes)
        if (nd.op == Op::Div) ++open;
    if (open == 0) {
        res.status = VerifyStatus::WellDefined;
        res.note = "no division gates";
        return res;
    }
    SplitMix64 rng(opt.seed);
    std::vector<std::uint64_t> val(nodes.size());
    std::vector<char> ok(nodes.size());
    for (int t = 0; t < opt.trials && open > 0; ++t) {
        ModpDomain dom{random_prime(rng)};
        std::vector<std::uint64_t> pt;
        for (int i = 0; i < c.nvars(); ++i) pt.push_back(rng.below(dom.p));
        ++res.points;
        for (NodeId i = 0; i < nodes.size(); ++i) {
            const Node& nd = nodes[i];
            ok[i] = 1;
            switch (nd.op) {
            case Op::Var: val[i] = pt[nd.a]; break;
            case Op::Const:
                try {
                    val[i] = dom.from_const(c.constants()[nd.a]);
                } catch (const BadReduction&) {
                    ok[i] = 0;
                }
                break;
            default:
                if (!ok[nd.a] || !ok[nd.b]) {
                    ok[i] = 0;
                    break;
                }
                switch (nd.op) {
                case Op::Add: val[i] = dom.add(val[nd.a], val[nd.b]); break;
                case Op::Sub: val[i] = dom.sub(val[nd.a], val[nd.b]); break;
                case Op::Mul: val[i] = dom.mul(val[nd.a], val[nd.b]); break;
                case Op::Div:
                    if (val[nd.b] == 0) {
                        ok[i] = 0;
                    } else {
                        val[i] = dom.mul(val[nd.a], dom.inv(val[nd.b]));
                        if (!witnessed[i]) {
                            witnessed[i] = 1;
                            --open;
                        }
                    }
                    break;
                default: break;
                }
            }
        }
    }
    if (open == 0) {
        res.status = VerifyStatus::WellDefined;
        res.note = "every denominator nonzero at some point";
    } else {
        res.status = VerifyStatus::IllDefinedProbable;
        res.note = std::to_string(open) + " division gate(s) without a nonzero denominator";
    }
    return res;
}

VerifyResult probable_equal(const Circuit& a, const Circuit& b, const VerifyOptions& opt)
{
    VerifyResult res = base_result(opt);
    if (a.nvars() != b.nvars()) throw Error("probable_equal: variable counts differ");
    SplitMix64 rng(opt.seed);
    ModpDomain dom{random_prime(rng)};
    std::vector<std::vector<Rational>> pts;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> mv;
    // a(P_i) b(P_j) = a(P_j) b(P_i) for all pairs, and the ratio is nonzero
    std::optional<std::size_t> ref, bad;
    for (int attempt = 0; attempt < 4 * opt.trials && static_cast<int>(pts.size()) < opt.trials && !bad; ++attempt) {
        auto P = random_int_point(rng, a.nvars(), opt.range);
        auto va = modp1(a, dom, P);
        auto vb = va ? modp1(b, dom, P) : std::nullopt;
        if (!va || !vb) {
            ++res.skipped;
            continue;
        }
        std::size_t i = pts.size();
        pts.push_back(P);
        mv.emplace_back(*va, *vb);
        if ((*va == 0) != (*vb == 0)) {
            bad = i;
        } else if (*vb != 0) {
            if (!ref) ref = i;
            else if (dom.mul(mv[*ref].first, *vb) != dom.mul(*va, mv[*ref].second)) bad = i;
        }
    }
    res.points = static_cast<int>(pts.size());
    if (pts.empty()) {
        res.note = "no point where both circuits are defined";
        return res;
    }
    const bool exact_ok = exact_allowed(a, opt) && exact_allowed(b, opt);
    if (bad && (!exact_ok || !opt.confirm_refutations)) {
        res.note = "modular disagreement, not confirmed exactly";
        return res;
    }
    if (!exact_ok) {
        res.note = "modular agreement only; circuits above the exact size cap";
        return res;
    }
    if (bad && ref && *ref != *bad) pts = {pts[*ref], pts[*bad]};
    else if (bad) pts = {pts[*bad]};

    std::optional<Rational> ratio;
    bool all_zero = true;
    for (const auto& pt : pts) {
        // defined mod p implies defined over Q
        Rational ea = evaluate1(a, pt), eb = evaluate1(b, pt);
        if (ea == 0 && eb == 0) continue;
        all_zero = false;
        if (ea == 0 || eb == 0) {
            res.status = VerifyStatus::Refuted;
            res.note = "one side vanishes alone";
            return res;
        }
        Rational r = ea / eb;
        if (ratio && *ratio != r) {
            res.status = VerifyStatus::Refuted;
            res.note = "ratio differs between points";
            return res;
        }
        ratio = r;
    }
    if (bad) {
        res.note = "modular disagreement not reproduced over Q";
        return res;
    }
    if (all_zero) {
        res.note = "both sides vanish at every point";
        return res;
    }
    res.status = VerifyStatus::Verified;
    res.ratio = ratio;
    res.note = "constant ratio at every point";
    return res;
}

DensePoly interpolate_simplex(int nvars, int D, const std::vector<Rational>& base,
                              const std::function<Rational(const std::vector<Rational>&)>& value)
{
    auto offsets = simplex_points(nvars, D);
    std::map<std::vector<int>, Rational> v;
    for (const auto& a : offsets) {
        std::vector<Rational> pt(nvars);
        for (int i = 0; i < nvars; ++i) pt[i] = base[i] + a[i];
        v[a] = value(pt);
    }
    // forward differences in each variable, unit spacing
    for (int i = 0; i < nvars; ++i)
        for (int s = 1; s <= D; ++s)
            for (auto it = v.rbegin(); it != v.rend(); ++it) {
                const auto& a = it->first;
                if (a[i] < s) continue;
                auto prev = a;
                --prev[i];
                it->second -= v.at(prev);
            }
    DensePoly out(nvars);
    for (const auto& [a, d] : v) {
        if (d == 0) continue;
        DensePoly term = DensePoly::constant(nvars, Scalar(d));
        for (int i = 0; i < nvars; ++i) {
            Rational fact = 1;
            for (int s = 0; s < a[i]; ++s) {
                term = term * (DensePoly::variable(nvars, i) - DensePoly::constant(nvars, Scalar(base[i] + s)));
                fact *= s + 1;
            }
            term = term.scaled(Scalar(1 / fact));
        }
        out = out + term;
    }
    return out;
}

VerifyResult probable_divides(const Circuit& f, const Circuit& cand, const VerifyOptions& opt)
{
    if (f.has_division()) throw Error("probable_divides: f has division gates");
    if (f.nvars() != cand.nvars()) throw Error("probable_divides: variable counts differ");
    VerifyResult res = base_result(opt);
    VerifyResult wd = probable_well_defined(cand, opt);
    if (wd.status == VerifyStatus::IllDefinedProbable) return wd;
    const int n = f.nvars();
    const int D = exact_total_degree(f);
    if (D < 0) throw DomainError("probable_divides: f is zero");
    const bool exact_ok = exact_allowed(cand, opt);
    SplitMix64 rng(opt.seed ^ 0x5bd1e995ULL);
    QOps q;

    for (int attempt = 0; attempt < 4 * opt.trials && res.points < opt.trials; ++attempt) {
        auto P = random_int_point(rng, n, opt.range);
        auto V = random_int_point(rng, n, opt.range);
        auto pts = line_points(P, V, D + 3);
        POps pk{ModpDomain{random_prime(rng)}};
        std::vector<std::uint64_t> fv, cv;
        bool defined = true;
        for (const auto& pt : pts) {
            auto a = modp1(f, pk.dom, pt), b = modp1(cand, pk.dom, pt);
            if (!a || !b) {
                defined = false;
                break;
            }
            fv.push_back(*a);
            cv.push_back(*b);
        }
        if (!defined) {
            ++res.skipped;
            continue;
        }
        LineVerdict mv = line_test(pk, fv, cv, D);
        if (mv == LineVerdict::Skip) {
            ++res.skipped;
            continue;
        }
        ++res.points;
        if (mv == LineVerdict::Pass) continue;
        if (!exact_ok) {
            res.note = "modular line test failed; candidate above the exact size cap";
            return res;
        }
        std::vector<Rational> efv, ecv;
        for (const auto& pt : pts) {
            efv.push_back(evaluate1(f, pt));
            ecv.push_back(evaluate1(cand, pt));
        }
        if (line_test(q, efv, ecv, D) == LineVerdict::Fail) {
            res.status = VerifyStatus::Refuted;
            res.note = "line restriction does not divide";
            return res;
        }
    }
    if (res.points == 0) {
        res.note = "no usable line";
        return res;
    }
    if (!exact_ok || binomial_count(n, D) > Rational(static_cast<long>(opt.dense_points_cap))) {
        res.note = "line tests passed; dense check skipped by caps";
        return res;
    }
    for (int attempt = 0; attempt < 5; ++attempt) {
        auto base = random_int_point(rng, n, opt.range);
        DensePoly dense(n);
        try {
            dense = interpolate_simplex(n, D, base, [&](const std::vector<Rational>& pt) { return evaluate1(cand, pt); });
        } catch (const DivisionByZero&) {
            continue;
        }
        // a factor equals its interpolant; compare at fresh points
        for (int t = 0; t < opt.trials; ++t) {
            auto pt = random_int_point(rng, n, opt.range);
            auto v = exact1(cand, pt);
            if (!v) continue;
            if (*v != dense.evaluate(std::vector<Scalar>(pt.begin(), pt.end())).c0()) {
                res.status = VerifyStatus::Refuted;
                res.note = "candidate is not a polynomial of degree <= deg f";
                return res;
            }
        }
        if (dense.is_zero() || !divides(f, to_circuit(dense))) {
            res.status = VerifyStatus::Refuted;
            res.note = "interpolated candidate does not divide f";
            return res;
        }
        res.status = VerifyStatus::VerifiedFactor;
        res.note = "line tests passed; interpolant divides f exactly";
        return res;
    }
    res.note = "line tests passed; no simplex avoiding denominator zeros";
    return res;
}

std::vector<VerifyResult> verify_candidates(const Circuit& f, const std::vector<Circuit>& cands,
                                            const VerifyOptions& opt, int jobs)
{
    std::vector<VerifyOptions> per(cands.size(), opt);
    SplitMix64 master(opt.seed);
    for (auto& o : per) o.seed = master.split().next();
    std::vector<VerifyResult> out(cands.size());
    std::exception_ptr failure;
    const long nc = static_cast<long>(cands.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
    for (long t = 0; t < nc; ++t) {
        try {
            out[t] = probable_divides(f, cands[t], per[t]);
        } catch (...) {
#pragma omp critical(circfac_verify_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace circfac
