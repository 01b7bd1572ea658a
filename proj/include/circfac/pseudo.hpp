// Pseudo-quotients, divisibility via PIT, S_f and the pseudo-resultant.
#pragma once

#include "circfac/circuit.hpp"
#include "circfac/hitting.hpp"

#include <functional>
#include <optional>

namespace circfac {

// true when c is identically zero; c must be division-free with total degree <= degree_bound
using PitOracle = std::function<bool(const Circuit& c, int degree_bound)>;

// Exact PIT on the grid {0..degree_bound}^n.  A modular evaluation is tried
// first at each point; a nonzero residue proves the value nonzero.
bool grid_pit(const Circuit& c, int degree_bound);

// exact total degree of the first output, found by scanning lines t -> c(t a)
// over a grid; -1 for the zero polynomial.  c must be division-free.
int exact_total_degree(const Circuit& c);
// exact degree in one variable; -1 for zero
int exact_degree_in(const Circuit& c, int var);

struct PseudoQuotient {
    Circuit q;
    int D = 0;
    int d = 0;
    Scalar beta;
    Point alpha;
};

// pseudo-quotient of f and g around alpha; D and d default to the exact degrees
PseudoQuotient pseudo_quotient(const Circuit& f, const Circuit& g, const Point& alpha, std::optional<int> D = {},
                               std::optional<int> d = {});

struct DivisibilityResult {
    bool divides = false;
    Point center;
    Circuit residual;  // f - Q g
};

// first grid point where g is nonzero, searched in {0..deg g}^n
Point find_center(const Circuit& g);
DivisibilityResult divides_detail(const Circuit& f, const Circuit& g, const PitOracle& pit = grid_pit);
bool divides(const Circuit& f, const Circuit& g, const PitOracle& pit = grid_pit);

// (d/dy f)^2 using c.yvar()
Circuit s_f(const Circuit& f);

struct PseudoResultant {
    Circuit num;  // P_num(x, y)
    Circuit den;  // P_den(x) = g0^(dq + 1)
    int D = 0;    // deg_y f
    int d = 0;    // deg_y g
    int dq = 0;   // truncation degree of the quotient, deg_y S_f - d
};

// f, g monic in y (the circuits' yvar); D, d default to the exact y-degrees
PseudoResultant pseudo_resultant(const Circuit& f, const Circuit& g, std::optional<int> D = {},
                                 std::optional<int> d = {}, const PitOracle& pit = grid_pit);

// builder-level construction, shared with the pipeline.  f_root and g_root
// live in b; returns (num, den).
std::pair<NodeId, NodeId> pseudo_resultant_nodes(CircuitBuilder& b, NodeId f_root, NodeId g_root, int yvar, int D,
                                                 int d);

// metadata header plus two circuit files (path + ".num", path + ".den")
void write_pseudo_resultant(const PseudoResultant& r, const std::string& path);
PseudoResultant read_pseudo_resultant(const std::string& path);

}  // namespace circfac
