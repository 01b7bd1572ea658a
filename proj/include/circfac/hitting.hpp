// Deterministic point streams standing in for a black-box hitting set.
#pragma once

#include "circfac/field.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace circfac {

using Point = std::vector<Rational>;

// SplitMix64: small, splittable, fully specified.  split() derives an
// independent stream from the current state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound);
    SplitMix64 split() { return SplitMix64(next() ^ 0x6A09E667F3BCC909ULL); }

private:
    std::uint64_t state_;
};

enum class HittingMode { Grid, Seeded };

struct HittingSetSpec {
    int nvars = 1;
    int degree_bound = 0;
    std::uint64_t size_bound = 0;  // informational
    int depth_bound = 0;           // informational
    HittingMode mode = HittingMode::Grid;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;             // seeded mode: number of points
    std::uint64_t grid_cap = 50000000;   // grid mode: refuse larger grids

    // "grid" or "seeded:SEED:COUNT"
    static HittingSetSpec parse_mode(const std::string& text, int nvars, int degree_bound);
    std::string mode_string() const;
    // number of points the stream yields
    std::uint64_t cardinality() const;
};

// Grid mode yields {0..degree_bound}^nvars in lexicographic order (last
// coordinate fastest).  Seeded mode yields count points with integer
// coordinates drawn from [0, 64 * (degree_bound + 1)).
class PointStream {
public:
    virtual ~PointStream() = default;
    virtual std::optional<Point> next() = 0;
    virtual void reset() = 0;
};

std::unique_ptr<PointStream> points(const HittingSetSpec& spec);
// coordinate-wise truncation to the first first_n coordinates, duplicates
// dropped, first-occurrence order kept
std::unique_ptr<PointStream> project(std::unique_ptr<PointStream> stream, int first_n);
// spec-level projection; grid specs stay grids
HittingSetSpec project(const HittingSetSpec& spec, int first_n);

std::vector<Point> collect(PointStream& s, std::size_t limit = SIZE_MAX);

// all a in N^n with a_1 + ... + a_n <= bound, in lexicographic order
std::vector<std::vector<int>> simplex_points(int n, int bound);

}  // namespace circfac
