// Newton iteration for approximate roots Phi_k of F(x, y) over a number field.
#pragma once

#include "circfac/circuit.hpp"
#include "circfac/densepoly.hpp"

#include <optional>
#include <vector>

namespace circfac {

struct LiftState {
    Circuit F;          // over K, monic in y (F.yvar())
    Scalar u;           // F(0, u) = 0
    Scalar inv_slope;   // 1 / dF/dy(0, u)
    int k = 0;
    Circuit phi;        // same variable set as F, y unused
};

// F(0, u) and dF/dy(0, u), exact over the common field of F and u
std::pair<Scalar, Scalar> start_values(const Circuit& F, const Scalar& u);
bool check_start(const Circuit& F, const Scalar& u);

// Phi_{j+1} = Phi_j - F(x, Phi_j) * inv_slope, untruncated, k steps
LiftState lift(const Circuit& F, const Scalar& u, int k);
// one more step on an existing state
void lift_step(LiftState& s);

// Homogeneous parts psi_0..psi_k of Phi_k, built directly from the graded
// form of the recursion.  Hom_l(Phi_k) = psi_l for l <= k.
struct GradedLift {
    Circuit components;  // outputs psi_0..psi_k
    Scalar u;
    Scalar inv_slope;
    int k = 0;
};

// xdeg, ydeg bound the x-degree and y-degree of F (formal bounds by default)
GradedLift lift_graded(const Circuit& F, const Scalar& u, int k, std::optional<int> xdeg = {},
                       std::optional<int> ydeg = {});

// builder-level graded lift.  F_root lives in b (whose field must hold u).
// Returns psi_0..psi_k.
std::vector<NodeId> lift_graded_nodes(CircuitBuilder& b, NodeId F_root, int yvar, const Scalar& u,
                                      const Scalar& inv_slope, int k, int xdeg, int ydeg);

// same from a precomputed table Fh[a][j] = Hom_a of the coefficient of y^j
using NodeTable = std::vector<std::vector<NodeId>>;
std::vector<NodeId> lift_graded_table(CircuitBuilder& b, const NodeTable& Fh, const Scalar& u, const Scalar& inv_slope,
                                      int k);

// F(x, phi) expanded with every gate truncated above degree k; true when the
// truncation vanishes
bool residual_check(const Circuit& F, const Circuit& phi, int k, const OracleCaps& caps = {});

// F(x, phi) as a circuit over the common field
Circuit compose_root(const Circuit& F, const Circuit& phi);

}  // namespace circfac
