#include "circfac/hitting.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace circfac {

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound)
{
    // rejection keeps the draw unbiased
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % bound;
}

HittingSetSpec HittingSetSpec::parse_mode(const std::string& text, int nvars, int degree_bound)
{
    HittingSetSpec s;
    s.nvars = nvars;
    s.degree_bound = degree_bound;
    if (text == "grid") return s;
    if (text.rfind("seeded:", 0) == 0) {
        auto rest = text.substr(7);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw Error("hitting mode must be grid or seeded:SEED:COUNT");
        try {
            s.seed = std::stoull(rest.substr(0, colon));
            s.count = std::stoull(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error("hitting mode must be grid or seeded:SEED:COUNT");
        }
        s.mode = HittingMode::Seeded;
        return s;
    }
    throw Error("hitting mode must be grid or seeded:SEED:COUNT");
}

std::string HittingSetSpec::mode_string() const
{
    if (mode == HittingMode::Grid) return "grid";
    return "seeded:" + std::to_string(seed) + ":" + std::to_string(count);
}

std::uint64_t HittingSetSpec::cardinality() const
{
    if (mode == HittingMode::Seeded) return count;
    std::uint64_t n = 1;
    for (int i = 0; i < nvars; ++i) {
        if (n > UINT64_MAX / (degree_bound + 1)) return UINT64_MAX;
        n *= degree_bound + 1;
    }
    return n;
}

namespace {

class GridStream : public PointStream {
public:
    GridStream(int n, int bound) : n_(n), bound_(bound) { reset(); }
    std::optional<Point> next() override
    {
        if (done_) return std::nullopt;
        Point p;
        for (int c : cur_) p.push_back(Rational(c));
        int i = n_ - 1;
        while (i >= 0 && cur_[i] == bound_) cur_[i--] = 0;
        if (i < 0)
            done_ = true;
        else
            ++cur_[i];
        return p;
    }
    void reset() override
    {
        cur_.assign(n_, 0);
        done_ = false;
    }

private:
    int n_, bound_;
    std::vector<int> cur_;
    bool done_ = false;
};

class SeededStream : public PointStream {
public:
    SeededStream(const HittingSetSpec& s) : spec_(s), rng_(s.seed) {}
    std::optional<Point> next() override
    {
        if (emitted_ >= spec_.count) return std::nullopt;
        ++emitted_;
        std::uint64_t range = 64 * (static_cast<std::uint64_t>(spec_.degree_bound) + 1);
        Point p;
        for (int i = 0; i < spec_.nvars; ++i) p.push_back(Rational(static_cast<unsigned long>(rng_.below(range))));
        return p;
    }
    void reset() override
    {
        rng_ = SplitMix64(spec_.seed);
        emitted_ = 0;
    }

private:
    HittingSetSpec spec_;
    SplitMix64 rng_;
    std::uint64_t emitted_ = 0;
};

class ProjectedStream : public PointStream {
public:
    ProjectedStream(std::unique_ptr<PointStream> inner, int n) : inner_(std::move(inner)), n_(n) {}
    std::optional<Point> next() override
    {
        while (auto p = inner_->next()) {
            if (static_cast<int>(p->size()) < n_) throw Error("projection wider than the stream");
            Point q(p->begin(), p->begin() + n_);
            if (seen_.insert(q).second) return q;
        }
        return std::nullopt;
    }
    void reset() override
    {
        inner_->reset();
        seen_.clear();
    }

private:
    std::unique_ptr<PointStream> inner_;
    int n_;
    std::set<Point> seen_;
};

}  // namespace

std::unique_ptr<PointStream> points(const HittingSetSpec& spec)
{
    if (spec.nvars < 0) throw Error("hitting set needs a non-negative variable count");
    if (spec.mode == HittingMode::Seeded) return std::make_unique<SeededStream>(spec);
    if (spec.cardinality() > spec.grid_cap)
        throw Error("grid of " + std::to_string(spec.nvars) + " variables and degree " +
                    std::to_string(spec.degree_bound) + " exceeds the grid cap; use seeded:SEED:COUNT mode");
    return std::make_unique<GridStream>(spec.nvars, spec.degree_bound);
}

std::unique_ptr<PointStream> project(std::unique_ptr<PointStream> stream, int first_n)
{
    return std::make_unique<ProjectedStream>(std::move(stream), first_n);
}

HittingSetSpec project(const HittingSetSpec& spec, int first_n)
{
    if (first_n > spec.nvars) throw Error("projection wider than the stream");
    if (spec.mode != HittingMode::Grid) throw Error("spec-level projection is defined for grids only");
    HittingSetSpec s = spec;
    s.nvars = first_n;
    return s;
}

std::vector<Point> collect(PointStream& s, std::size_t limit)
{
    std::vector<Point> out;
    while (out.size() < limit) {
        auto p = s.next();
        if (!p) break;
        out.push_back(std::move(*p));
    }
    return out;
}

std::vector<std::vector<int>> simplex_points(int n, int bound)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
        cur[i] = 0;
    };
    rec(0, bound);
    return out;
}

}  // namespace circfac
