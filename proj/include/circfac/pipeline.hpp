// Candidate factor lists: the fixed-degree pass (multiplicity one, input
// monic in y) and the all-factors pass, plus the conversion of
// extension-field circuits back to Q.
#pragma once

#include "circfac/circuit.hpp"
#include "circfac/hitting.hpp"
#include "circfac/minpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace circfac {

// How k and the unknown set are chosen for each degree guess d.
//   Factor: k = 2 d^2, unknowns G_ij with i + j <= d (a factor of a monic
//           input has total degree equal to its y-degree)
//   Square: k = 2 D^2, unknowns G_ij with j <= D, D the total degree of the
//           polynomial handed to the fixed-degree pass
enum class KPolicy { Factor, Square };

struct PipelineConfig {
    std::uint64_t size_bound = 0;   // m; only recorded in grid mode
    std::optional<int> degree;      // total degree D; exact degree when absent
    std::string hitting = "grid";   // grid | seeded:SEED:COUNT
    bool early_stop = true;
    bool full_degree = false;       // also try d = D at derivative index 0
    KPolicy k_policy = KPolicy::Factor;
    Solver solver = Solver::Adjugate;
    int jobs = 1;
};

struct MonicResult {
    Circuit f;       // f(x + alpha y) / gamma, variables x_0..x_{n-1}, y = x_n
    Point alpha;
    Rational gamma;
    int D = 0;
    std::uint64_t tried = 0;  // points consumed from the stream
};

// first alpha in the stream with Hom_D(f)(alpha) != 0
MonicResult monicize(const Circuit& f, const HittingSetSpec& hs, std::optional<int> D = {});

struct Provenance {
    Point alpha;        // empty for fixed-degree runs
    Rational gamma = 1;
    int i = 0;          // derivative index
    Point a;            // shift point of the fixed-degree pass
    upoly::Poly root;   // monic irreducible factor of F(0, y)
    int d = 0;
    int k = 0;
    std::size_t unknowns = 0;
};

struct FactorCandidate {
    Circuit circuit;  // over Q, divisions allowed
    Provenance prov;
    bool converted = false;  // built over a proper extension
};

struct SkipRecord {
    int i = 0;
    Point a;
    upoly::Poly root;
    std::string reason;
};

// the point chosen (or points used) for one derivative index
struct PointRecord {
    int i = 0;
    Point a;
    int simple_roots = 0;    // degree of the multiplicity-one part of F(0, y)
    std::uint64_t scanned = 0;
};

struct RunResult {
    int D = 0;
    Point alpha;
    Rational gamma = 1;
    std::uint64_t monic_tried = 0;
    std::vector<PointRecord> points;
    std::vector<FactorCandidate> candidates;
    std::vector<SkipRecord> skipped;
    double seconds = 0;
};

// fixed-degree pass on f monic in y (f.yvar()), total degree D = y-degree.  The
// candidates keep y and are converted to Q.
RunResult candidates_mult_one(const Circuit& f, int d, const PipelineConfig& cfg = {});
// all-factors pass: every candidate is a circuit over Q in the original variables
RunResult candidates_all(const Circuit& f, const PipelineConfig& cfg = {});

// rebuild one candidate of candidates_all from its provenance
Circuit replay_candidate(const Circuit& f, const Provenance& p, const PipelineConfig& cfg = {});

// circuit over K computing an element of Q(x) -> circuit over Q
Circuit to_base_field(const Circuit& c);

// number of y-roots of multiplicity one: degree of the multiplicity-one part
int simple_root_degree(const upoly::Poly& p);

// run directory: manifest.json, input.circ, cand_NNNN.circ, timings.json.
// Refuses to overwrite an existing manifest.
void write_run(const std::string& dir, const Circuit& input, const RunResult& r, const PipelineConfig& cfg,
               const std::string& command);
std::string manifest_text(const Circuit& input, const RunResult& r, const PipelineConfig& cfg,
                          const std::string& command);

std::string format_point(const Point& a);
std::string hash_hex(std::uint64_t h);

}  // namespace circfac
