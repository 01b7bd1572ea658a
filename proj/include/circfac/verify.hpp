// Opt-in checks on candidate circuits.  Refutations and well-definedness
// witnesses are certain; "ill-defined-probable" and "verified" carry only the
// evidence listed in the result.
#pragma once

#include "circfac/circuit.hpp"
#include "circfac/densepoly.hpp"
#include "circfac/hitting.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace circfac {

// random prime in [2^60, 2^61)
std::uint64_t random_prime(SplitMix64& rng);

enum class VerifyStatus { WellDefined, VerifiedFactor, Verified, Refuted, IllDefinedProbable, Inconclusive };
std::string to_string(VerifyStatus s);

struct VerifyOptions {
    std::uint64_t seed = 1;
    int trials = 8;
    std::int64_t range = 1000;             // integer coordinates in [-range, range]
    std::size_t exact_size_cap = 1000000;  // larger circuits get modular evidence only
    std::size_t dense_points_cap = 2000;   // simplex size for the dense check
    bool confirm_refutations = true;       // off: a modular disagreement ends as inconclusive
};

struct VerifyResult {
    VerifyStatus status = VerifyStatus::Inconclusive;
    std::uint64_t seed = 0;
    int trials = 0;
    int points = 0;   // points (or lines) that entered the decision
    int skipped = 0;  // undefined there, or bad reduction
    std::optional<Rational> ratio;
    std::string note;
};

// every division gate gets a point where its denominator is nonzero mod p
VerifyResult probable_well_defined(const Circuit& c, const VerifyOptions& opt = {});
// random-line restrictions, then a dense divisibility check of the
// interpolated candidate
VerifyResult probable_divides(const Circuit& f, const Circuit& cand, const VerifyOptions& opt = {});
// a = lambda b with lambda a nonzero constant
VerifyResult probable_equal(const Circuit& a, const Circuit& b, const VerifyOptions& opt = {});

// well-definedness then divisibility for each candidate; candidate t uses the
// stream seeded by the t-th split of opt.seed
std::vector<VerifyResult> verify_candidates(const Circuit& f, const std::vector<Circuit>& cands,
                                            const VerifyOptions& opt = {}, int jobs = 1);

// Interpolate a polynomial of total degree <= D from its values on the
// simplex base + {a : |a| <= D}.  value(point) may throw DivisionByZero.
DensePoly interpolate_simplex(int nvars, int D, const std::vector<Rational>& base,
                              const std::function<Rational(const std::vector<Rational>&)>& value);

}  // namespace circfac
