#include "circfac/univar.hpp"

#include <algorithm>
#include <numeric>

namespace circfac {

using upoly::Poly;

upoly::Poly UnivarFactorization::product() const
{
    Poly acc = {content};
    for (const auto& f : factors)
        for (int e = 0; e < f.multiplicity; ++e) acc = upoly::mul(acc, f.poly);
    return acc;
}

Poly derivative(const Poly& p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    upoly::trim(d);
    return d;
}

namespace {

Poly monic(Poly p)
{
    upoly::trim(p);
    if (p.empty()) return p;
    Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly s, t;
    return upoly::xgcd(a, b, s, t);
}

Poly exact_div(const Poly& a, const Poly& b)
{
    Poly q, r;
    upoly::divmod(a, b, q, r);
    return q;
}

// ---------------------------------------------------------------------------
// polynomials over F_p, p < 2^31

using MPoly = std::vector<std::uint64_t>;

struct Fp {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    std::uint64_t inv(std::uint64_t a) const
    {
        std::uint64_t r = 1, base = a, e = p - 2;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    void trim(MPoly& a) const
    {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    MPoly mul(const MPoly& a, const MPoly& b) const
    {
        if (a.empty() || b.empty()) return {};
        MPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        trim(r);
        return r;
    }
    MPoly sub(MPoly a, const MPoly& b) const
    {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
        trim(a);
        return a;
    }
    void divmod(const MPoly& a, const MPoly& b, MPoly& q, MPoly& r) const
    {
        r = a;
        trim(r);
        q.clear();
        if (r.size() < b.size()) return;
        q.assign(r.size() - b.size() + 1, 0);
        std::uint64_t ib = inv(b.back());
        for (std::size_t i = r.size(); i-- >= b.size();) {
            std::uint64_t c = mul(r[i], ib);
            q[i - (b.size() - 1)] = c;
            if (c)
                for (std::size_t j = 0; j < b.size(); ++j) {
                    std::size_t k = i - (b.size() - 1) + j;
                    r[k] = sub(r[k], mul(c, b[j]));
                }
            if (i == b.size() - 1) break;
        }
        trim(r);
        trim(q);
    }
    MPoly mod(const MPoly& a, const MPoly& b) const
    {
        MPoly q, r;
        divmod(a, b, q, r);
        return r;
    }
    MPoly monic(MPoly a) const
    {
        trim(a);
        if (a.empty()) return a;
        std::uint64_t il = inv(a.back());
        for (auto& c : a) c = mul(c, il);
        return a;
    }
    MPoly gcd(MPoly a, MPoly b) const
    {
        trim(a);
        trim(b);
        while (!b.empty()) {
            MPoly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // monic gcd g = s a + t b
    MPoly xgcd(MPoly a, MPoly b, MPoly& s, MPoly& t) const
    {
        MPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
        trim(a);
        trim(b);
        while (!b.empty()) {
            MPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
            MPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        std::uint64_t il = inv(a.back());
        for (auto& c : s0) c = mul(c, il);
        for (auto& c : t0) c = mul(c, il);
        s = s0;
        t = t0;
        return monic(a);
    }
    MPoly derivative(const MPoly& a) const
    {
        MPoly d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], i % p));
        trim(d);
        return d;
    }
    MPoly powmod(MPoly base, std::uint64_t e, const MPoly& f) const
    {
        MPoly r = {1};
        base = mod(base, f);
        while (e) {
            if (e & 1) r = mod(mul(r, base), f);
            base = mod(mul(base, base), f);
            e >>= 1;
        }
        return r;
    }
};

MPoly reduce(const std::vector<Integer>& g, std::uint64_t p)
{
    MPoly r;
    for (const auto& c : g) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// left null space basis of (Q - I) over F_p, as row vectors
std::vector<MPoly> berlekamp_basis(const Fp& F, const MPoly& f)
{
    const std::size_t n = f.size() - 1;
    MPoly xp = F.powmod({0, 1}, F.p, f);
    std::vector<MPoly> rows(n);
    rows[0] = {1};
    for (std::size_t i = 1; i < n; ++i) rows[i] = F.mod(F.mul(rows[i - 1], xp), f);
    // m[j][i] = Q[i][j] - delta_ij; solve m v = 0
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t q = j < rows[i].size() ? rows[i][j] : 0;
            m[j][i] = i == j ? F.sub(q, 1) : q;
        }
    std::vector<int> pivot_col_of_row;
    std::vector<int> is_pivot(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[row]);
        std::uint64_t il = F.inv(m[row][col]);
        for (auto& e : m[row]) e = F.mul(e, il);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            std::uint64_t c = m[r][col];
            for (std::size_t j = 0; j < n; ++j) m[r][j] = F.sub(m[r][j], F.mul(c, m[row][j]));
        }
        is_pivot[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<MPoly> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free] >= 0) continue;
        MPoly v(n, 0);
        v[free] = 1;
        for (std::size_t col = 0; col < n; ++col)
            if (is_pivot[col] >= 0) v[col] = F.sub(0, m[is_pivot[col]][free]);
        F.trim(v);
        basis.push_back(v);
    }
    return basis;
}

// monic irreducible factors of a monic squarefree f over F_p
std::vector<MPoly> berlekamp(const Fp& F, const MPoly& f)
{
    auto basis = berlekamp_basis(F, f);
    const std::size_t k = basis.size();
    std::vector<MPoly> factors = {f};
    if (k == 1) return factors;
    for (const auto& v : basis) {
        if (v.size() <= 1) continue;  // constant vector
        std::vector<MPoly> next;
        for (const auto& u : factors) {
            if (u.size() <= 2) {
                next.push_back(u);
                continue;
            }
            MPoly cur = u;
            for (std::uint64_t s = 0; s < F.p && cur.size() > 2; ++s) {
                MPoly vs = v;
                vs[0] = F.sub(vs[0], s);
                F.trim(vs);
                MPoly g = F.gcd(cur, vs);
                if (g.size() > 1 && g.size() < cur.size()) {
                    next.push_back(g);
                    MPoly q, r;
                    F.divmod(cur, g, q, r);
                    cur = F.monic(q);
                }
            }
            next.push_back(cur);
        }
        factors = std::move(next);
        if (factors.size() == k) break;
    }
    return factors;
}

// ---------------------------------------------------------------------------
// integer polynomials modulo m

using ZPoly = std::vector<Integer>;

Integer fmod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void ztrim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmod(ZPoly a, const Integer& m)
{
    for (auto& c : a) c = fmod(c, m);
    ztrim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zmod(std::move(r), m);
}

ZPoly from_m(const MPoly& a) { return ZPoly(a.begin(), a.end()); }

MPoly to_m(const ZPoly& a, std::uint64_t p)
{
    MPoly r;
    for (const auto& c : a) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// lift g = a*b mod p to mod p^K; a monic, lc(b) = lc(g)
void hensel_pair(const ZPoly& g, ZPoly& a, ZPoly& b, const Fp& F, int K)
{
    MPoly s, t;
    F.xgcd(to_m(a, F.p), to_m(b, F.p), s, t);
    MPoly am = to_m(a, F.p), bm = to_m(b, F.p);
    Integer pk = F.p;
    for (int k = 1; k < K; ++k) {
        Integer pk1 = pk * F.p;
        ZPoly ab = zmul(a, b, pk1);
        ZPoly gm = zmod(g, pk1);
        if (gm.size() < ab.size()) gm.resize(ab.size(), 0);
        ZPoly e(gm.size());
        for (std::size_t i = 0; i < gm.size(); ++i) {
            Integer d = fmod(gm[i] - (i < ab.size() ? ab[i] : Integer(0)), pk1);
            e[i] = d / pk;  // exact
        }
        MPoly ep = to_m(e, F.p);
        if (!ep.empty()) {
            MPoly te = F.mul(t, ep), q, tau;
            F.divmod(te, am, q, tau);
            // a*sigma + b*tau = e with sigma = s e + q b
            MPoly sig = F.sub(F.mul(s, ep), F.sub({}, F.mul(q, bm)));
            ZPoly tz = from_m(tau), sz = from_m(sig);
            if (a.size() < tz.size()) a.resize(tz.size(), 0);
            if (b.size() < sz.size()) b.resize(sz.size(), 0);
            for (std::size_t i = 0; i < tz.size(); ++i) a[i] += pk * tz[i];
            for (std::size_t i = 0; i < sz.size(); ++i) b[i] += pk * sz[i];
            a = zmod(a, pk1);
            b = zmod(b, pk1);
        }
        pk = pk1;
    }
}

Integer symmetric(const Integer& c, const Integer& m)
{
    Integer r = fmod(c, m);
    if (2 * r > m) r -= m;
    return r;
}

ZPoly primitive_part(ZPoly a)
{
    Integer g = 0;
    for (const auto& c : a) g = gcd(g, c);
    if (g != 0)
        for (auto& c : a) c /= g;
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

Poly to_q(const ZPoly& a) { return Poly(a.begin(), a.end()); }

bool is_prime_small(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// irreducible factors of a squarefree primitive integer polynomial
std::vector<ZPoly> zassenhaus(const ZPoly& g0)
{
    const int n = static_cast<int>(g0.size()) - 1;
    if (n <= 1) return {g0};
    Integer lc = g0.back();
    // pick among the first few good primes the one with fewest modular factors
    std::uint64_t best_p = 0;
    std::vector<MPoly> best;
    int good = 0;
    for (std::uint64_t p = 3; good < 5 && p < 100000; p += 2) {
        if (!is_prime_small(p) || mpz_fdiv_ui(lc.get_mpz_t(), p) == 0) continue;
        Fp F{p};
        MPoly gm = reduce(g0, p);
        if (static_cast<int>(gm.size()) - 1 != n) continue;
        if (F.gcd(gm, F.derivative(gm)).size() != 1) continue;
        ++good;
        auto fs = berlekamp(F, F.monic(gm));
        if (best_p == 0 || fs.size() < best.size()) {
            best_p = p;
            best = fs;
        }
        if (best.size() == 1) break;
    }
    if (best_p == 0) throw Error("no good prime found for factorization");
    if (best.size() == 1) return {g0};
    Fp F{best_p};
    // coefficient bound for lc * factor: |lc| * 2^n * ||g||_2
    Integer norm2 = 0;
    for (const auto& c : g0) norm2 += c * c;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    Integer bound = abs(lc) * (Integer(1) << n) * (root + 1);
    int K = 1;
    Integer M = best_p;
    while (M <= 2 * bound) {
        M *= best_p;
        ++K;
    }
    std::sort(best.begin(), best.end());
    // multifactor lifting by peeling one factor at a time
    std::vector<ZPoly> lifted;
    ZPoly cur = zmod(g0, M);
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ZPoly a = from_m(best[i]);
        MPoly rest = {mpz_fdiv_ui(lc.get_mpz_t(), best_p)};
        for (std::size_t j = i + 1; j < best.size(); ++j) rest = F.mul(rest, best[j]);
        ZPoly b = from_m(rest);
        b.back() = fmod(lc, M);
        hensel_pair(cur, a, b, F, K);
        lifted.push_back(a);
        cur = b;
    }
    {
        // last factor: cur / lc mod M
        Integer li;
        Integer lcm = fmod(lc, M);
        mpz_invert(li.get_mpz_t(), lcm.get_mpz_t(), M.get_mpz_t());
        for (auto& c : cur) c = fmod(c * li, M);
        lifted.push_back(cur);
    }

    // recombination
    std::vector<ZPoly> result;
    ZPoly g = g0;
    std::vector<ZPoly> pool = lifted;
    int s = 1;
    while (2 * s <= static_cast<int>(pool.size())) {
        bool found = false;
        std::vector<int> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        const int r = static_cast<int>(pool.size());
        while (true) {
            Integer glc = g.back();
            ZPoly h = {fmod(glc, M)};
            for (int i : idx) h = zmul(h, pool[i], M);
            for (auto& c : h) c = symmetric(c, M);
            ztrim(h);
            h = primitive_part(h);
            Poly q, rem;
            upoly::divmod(to_q(g), to_q(h), q, rem);
            if (rem.empty()) {
                result.push_back(h);
                ZPoly gq;
                for (const auto& c : q) gq.push_back(c.get_num());
                g = gq;
                std::vector<ZPoly> next;
                for (int i = 0; i < r; ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
                pool = std::move(next);
                found = true;
                break;
            }
            // next combination
            int pos = s - 1;
            while (pos >= 0 && idx[pos] == r - s + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int j = pos + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (g.size() > 1) result.push_back(primitive_part(g));
    return result;
}

}  // namespace

std::vector<Integer> primitive_integer(const Poly& p0)
{
    Poly p = p0;
    upoly::trim(p);
    Integer l = 1;
    for (const auto& c : p) l = lcm(l, Integer(c.get_den()));
    ZPoly z;
    for (const auto& c : p) z.push_back(Rational(c * l).get_num());
    return primitive_part(z);
}

std::vector<UnivarFactor> squarefree_decompose(const Poly& p0)
{
    Poly f = monic(p0);
    if (f.empty()) throw Error("cannot decompose the zero polynomial");
    std::vector<UnivarFactor> out;
    if (f.size() == 1) return out;
    Poly fd = derivative(f);
    Poly a0 = gcd(f, fd);
    Poly b = exact_div(f, a0), c = exact_div(fd, a0);
    Poly d = upoly::sub(c, derivative(b));
    int i = 1;
    while (b.size() > 1) {
        Poly a = gcd(b, d);
        if (a.size() > 1) out.push_back({a, i});
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = upoly::sub(c, derivative(b));
        ++i;
    }
    return out;
}

UnivarFactorization factor_rational(const Poly& p0)
{
    Poly p = p0;
    upoly::trim(p);
    if (p.empty()) throw Error("cannot factor the zero polynomial");
    UnivarFactorization out;
    out.content = p.back();
    for (const auto& part : squarefree_decompose(p)) {
        for (const auto& z : zassenhaus(primitive_integer(part.poly))) out.factors.push_back({monic(to_q(z)), part.multiplicity});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const UnivarFactor& a, const UnivarFactor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        if (a.poly != b.poly) return std::lexicographical_compare(a.poly.begin(), a.poly.end(), b.poly.begin(), b.poly.end());
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

UnivarFactorization factor_rational(const DensePoly& p, int var)
{
    if (p.field()) throw DomainError("factorization is over Q only");
    Poly q;
    for (const auto& s : p.univariate_coeffs(var)) q.push_back(s.c0());
    return factor_rational(q);
}

FieldPtr make_extension(const Poly& f)
{
    Poly p = f;
    upoly::trim(p);
    if (p.size() < 2 || p.back() != 1) throw Error("extension modulus must be monic of positive degree");
    return NumberField::create(p);
}

DensePoly to_dense(const Poly& p, int nvars, int var)
{
    DensePoly d(nvars);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        Exponents e(nvars, 0);
        e[var] = static_cast<int>(i);
        d.add_term(e, Scalar(p[i]));
    }
    return d;
}

std::string format_factorization(const UnivarFactorization& f, const std::string& var)
{
    std::string s = to_string(f.content);
    for (const auto& fac : f.factors) {
        s += " * (" + upoly::format(fac.poly, var) + ")";
        if (fac.multiplicity > 1) s += "^" + std::to_string(fac.multiplicity);
    }
    return s;
}

}  // namespace circfac
