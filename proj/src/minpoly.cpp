#include "circfac/minpoly.hpp"

#include "circfac/interp.hpp"

namespace circfac {

NodeMatrix powers_from_components(CircuitBuilder& b, const std::vector<NodeId>& psi, int d, int k)
{
    if (static_cast<int>(psi.size()) < k + 1) throw Error("powers: fewer components than k + 1");
    NodeId zero = b.zero();
    NodeMatrix P(d + 1, std::vector<NodeId>(k + 1, zero));
    P[0][0] = b.one();
    for (int r = 1; r <= d; ++r)
        for (int l = 0; l <= k; ++l) {
            NodeId acc = zero;
            for (int t = 0; t <= l; ++t) acc = b.add(acc, b.mul(P[r - 1][l - t], psi[t]));
            P[r][l] = acc;
        }
    return P;
}

namespace {

std::uint64_t x_mask(const Circuit& c)
{
    std::uint64_t m = all_vars_mask(c.nvars());
    if (c.yvar()) m &= ~(std::uint64_t(1) << *c.yvar());
    return m;
}

int require_yvar(const Circuit& c)
{
    if (!c.yvar()) throw Error("phi circuit has no y slot (yvar)");
    return *c.yvar();
}

}  // namespace

Circuit powers_hom(const Circuit& phi, int d, int k)
{
    CircuitBuilder b(phi.field(), phi.nvars());
    NodeId root = b.import(phi).at(0);
    auto psi = graded_components(b, root, x_mask(phi), k);
    auto P = powers_from_components(b, psi, d, k);
    std::vector<NodeId> out;
    for (const auto& row : P) out.insert(out.end(), row.begin(), row.end());
    return b.finish(out, phi.yvar());
}

std::vector<NodeId> charpoly_nodes(CircuitBuilder& b, const NodeMatrix& A)
{
    std::size_t c = A.size();
    if (c == 0) return {b.one()};
    for (const auto& row : A)
        if (row.size() != c) throw Error("determinant of a non-square matrix");
    std::vector<NodeId> vect = {b.one(), b.neg(A[0][0])};
    for (std::size_t r = 1; r < c; ++r) {
        // Toeplitz column 1, -a, -R S, -R A S, ..., -R A^(r-1) S
        std::vector<NodeId> col = {b.one(), b.neg(A[r][r])};
        std::vector<NodeId> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
        for (std::size_t t = 0; t < r; ++t) {
            NodeId dot = b.zero();
            for (std::size_t i = 0; i < r; ++i) dot = b.add(dot, b.mul(A[r][i], v[i]));
            col.push_back(b.neg(dot));
            if (t + 1 < r) {
                std::vector<NodeId> nv(r);
                for (std::size_t i = 0; i < r; ++i) {
                    NodeId acc = b.zero();
                    for (std::size_t j = 0; j < r; ++j) acc = b.add(acc, b.mul(A[i][j], v[j]));
                    nv[i] = acc;
                }
                v = std::move(nv);
            }
        }
        std::vector<NodeId> next(r + 2);
        for (std::size_t i = 0; i < r + 2; ++i) {
            NodeId acc = b.zero();
            for (std::size_t t = 0; t <= std::min(i, r); ++t) acc = b.add(acc, b.mul(col[i - t], vect[t]));
            next[i] = acc;
        }
        vect = std::move(next);
    }
    return vect;
}

NodeId det_nodes(CircuitBuilder& b, const NodeMatrix& A)
{
    auto p = charpoly_nodes(b, A);
    NodeId last = p.back();
    return A.size() % 2 ? b.neg(last) : last;
}

Circuit det_circuit(const std::vector<std::vector<Circuit>>& A)
{
    if (A.empty()) throw Error("determinant of an empty matrix");
    const Circuit& first = A[0].at(0);
    CircuitBuilder b(first.field(), first.nvars());
    NodeMatrix M(A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (const auto& e : A[i]) {
            if (e.nvars() != first.nvars() || !same_field(e.field(), first.field()))
                throw DomainError("matrix entries over different variable sets or fields");
            M[i].push_back(b.import(e).at(0));
        }
    return b.finish(det_nodes(b, M));
}

MinPolySystem build_system(CircuitBuilder& b, const NodeMatrix& P, int d, int D, int k,
                           std::optional<int> total_degree)
{
    if (d < 1) throw Error("minpoly: y-degree must be positive");
    if (static_cast<int>(P.size()) < d + 1) throw Error("minpoly: powers table too small");
    MinPolySystem s;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= D; ++j)
            if (!total_degree || i + j <= *total_degree) s.unknowns.emplace_back(i, j);
    NodeId zero = b.zero();
    s.M.assign(k + 1, std::vector<NodeId>(s.unknowns.size(), zero));
    for (int m = 0; m <= k; ++m) {
        for (std::size_t c = 0; c < s.unknowns.size(); ++c) {
            auto [i, j] = s.unknowns[c];
            if (m - j >= 0) s.M[m][c] = P[i][m - j];
        }
        s.b.push_back(b.neg(P[d][m]));
    }
    return s;
}

namespace {

MinPolyNodes solve_system(CircuitBuilder& b, const MinPolySystem& s, int d, const RecoverOptions& opt)
{
    const int rows = static_cast<int>(s.M.size());
    std::size_t c = s.unknowns.size();
    NodeMatrix N(c, std::vector<NodeId>(c));
    std::vector<NodeId> rhs(c);
    for (std::size_t c1 = 0; c1 < c; ++c1) {
        for (std::size_t c2 = c1; c2 < c; ++c2) {
            NodeId acc = b.zero();
            for (int m = 0; m < rows; ++m) acc = b.add(acc, b.mul(s.M[m][c1], s.M[m][c2]));
            N[c1][c2] = N[c2][c1] = acc;
        }
        NodeId acc = b.zero();
        for (int m = 0; m < rows; ++m) acc = b.add(acc, b.mul(s.M[m][c1], s.b[m]));
        rhs[c1] = acc;
    }

    MinPolyNodes out;
    out.unknowns = c;
    std::vector<NodeId> z(c);
    if (opt.solver == Solver::Adjugate) {
        // Cayley-Hamilton: adj(N) rhs = (-1)^(c-1) (N^(c-1) + p_1 N^(c-2) + ... + p_(c-1)) rhs
        auto p = charpoly_nodes(b, N);
        std::vector<NodeId> w = rhs;
        for (std::size_t t = 1; t < c; ++t) {
            std::vector<NodeId> nw(c);
            for (std::size_t i = 0; i < c; ++i) {
                NodeId acc = b.mul(p[t], rhs[i]);
                for (std::size_t j = 0; j < c; ++j) acc = b.add(acc, b.mul(N[i][j], w[j]));
                nw[i] = acc;
            }
            w = std::move(nw);
        }
        // z = adj rhs / det = w / (-p_c)
        z = w;
        out.den = b.neg(p[c]);
    } else {
        out.den = det_nodes(b, N);
        for (std::size_t col = 0; col < c; ++col) {
            NodeMatrix Nj = N;
            for (std::size_t i = 0; i < c; ++i) Nj[i][col] = rhs[i];
            z[col] = det_nodes(b, Nj);
        }
    }

    out.num.assign(d, b.zero());
    for (std::size_t col = 0; col < c; ++col) {
        int i = s.unknowns[col].first;
        out.num[i] = b.add(out.num[i], z[col]);
    }
    if (opt.residuals) {
        for (int m = 0; m < rows; ++m) {
            NodeId acc = b.neg(b.mul(out.den, s.b[m]));
            for (std::size_t col = 0; col < c; ++col) acc = b.add(acc, b.mul(s.M[m][col], z[col]));
            out.residuals.push_back(acc);
        }
    }
    return out;
}

// Over a proper extension the unknowns must stay rational: every row is
// split into its u-coordinates and the stacked system is solved over Q.
MinPolyNodes recover_split(CircuitBuilder& b, const NodeMatrix& P, int d, int D, int k, const RecoverOptions& opt)
{
    const int r = b.field()->degree(), n = b.nvars();
    if (static_cast<int>(P.size()) < d + 1) throw Error("minpoly: powers table too small");
    std::vector<NodeId> flat;
    for (int i = 0; i <= d; ++i)
        for (int l = 0; l <= k; ++l) flat.push_back(P[i].at(l));
    Circuit pc = b.finish(flat);
    if (pc.has_division()) throw Error("minpoly: powers of the approximate root must be division-free");

    CircuitBuilder bq(nullptr, n);
    std::vector<NodeId> qv;
    for (int j = 0; j < n; ++j) qv.push_back(bq.var(j));
    auto co = split_coordinates(bq, pc, qv);
    MinPolySystem s;
    for (int t = 0; t < r; ++t) {
        NodeMatrix Pt(d + 1, std::vector<NodeId>(k + 1));
        for (int i = 0; i <= d; ++i)
            for (int l = 0; l <= k; ++l) Pt[i][l] = co[i * (k + 1) + l][t];
        MinPolySystem st = build_system(bq, Pt, d, D, k, opt.total_degree);
        s.unknowns = st.unknowns;
        for (auto& row : st.M) s.M.push_back(std::move(row));
        for (NodeId v : st.b) s.b.push_back(v);
    }
    MinPolyNodes q = solve_system(bq, s, d, opt);

    std::vector<NodeId> outs = q.num;
    outs.push_back(q.den);
    outs.insert(outs.end(), q.residuals.begin(), q.residuals.end());
    Circuit qc = bq.finish(outs);
    std::vector<NodeId> bv;
    for (int j = 0; j < n; ++j) bv.push_back(b.var(j));
    auto ids = b.import(qc, bv);
    MinPolyNodes out;
    out.unknowns = q.unknowns;
    out.num.assign(ids.begin(), ids.begin() + d);
    out.den = ids[d];
    out.residuals.assign(ids.begin() + d + 1, ids.end());
    return out;
}

}  // namespace

MinPolyNodes recover_nodes(CircuitBuilder& b, const NodeMatrix& P, int d, int D, int k, const RecoverOptions& opt)
{
    if (b.field() && b.field()->degree() > 1) return recover_split(b, P, d, D, k, opt);
    return solve_system(b, build_system(b, P, d, D, k, opt.total_degree), d, opt);
}

NodeId assemble_minpoly(CircuitBuilder& b, const MinPolyNodes& m, int yvar)
{
    NodeId y = b.var(yvar);
    int d = static_cast<int>(m.num.size());
    // Horner in y with the leading coefficient den
    NodeId acc = m.den;
    for (int i = d - 1; i >= 0; --i) acc = b.add(b.mul(acc, y), m.num[i]);
    return b.div(acc, m.den);
}

namespace {

RecoveredMinPoly finish_recovery(CircuitBuilder& b, const NodeMatrix& P, int d, int D, int k, int yvar,
                                 const RecoverOptions& opt)
{
    MinPolyNodes m = recover_nodes(b, P, d, D, k, opt);
    RecoveredMinPoly r;
    r.d = d;
    r.D = D;
    r.k = k;
    r.unknowns = m.unknowns;
    r.g = b.finish(assemble_minpoly(b, m, yvar), yvar);
    std::vector<NodeId> cs;
    for (NodeId n : m.num) cs.push_back(b.div(n, m.den));
    cs.push_back(b.one());
    r.coeffs = b.finish(cs, yvar);
    r.den = b.finish(m.den, yvar);
    if (opt.residuals) r.residuals = b.finish(m.residuals, yvar);
    return r;
}

}  // namespace

RecoveredMinPoly recover(const Circuit& phi, int d, int D, int k, const RecoverOptions& opt)
{
    int y = require_yvar(phi);
    CircuitBuilder b(phi.field(), phi.nvars());
    NodeId root = b.import(phi).at(0);
    auto psi = graded_components(b, root, x_mask(phi), k);
    return finish_recovery(b, powers_from_components(b, psi, d, k), d, D, k, y, opt);
}

RecoveredMinPoly recover_from_components(const Circuit& psi_c, int d, int D, int k, const RecoverOptions& opt)
{
    int y = require_yvar(psi_c);
    CircuitBuilder b(psi_c.field(), psi_c.nvars());
    auto psi = b.import(psi_c);
    return finish_recovery(b, powers_from_components(b, psi, d, k), d, D, k, y, opt);
}

}  // namespace circfac
