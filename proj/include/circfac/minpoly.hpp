// Minimal polynomial of an approximate root, as a circuit with one division.
#pragma once

#include "circfac/circuit.hpp"

#include <optional>
#include <vector>

namespace circfac {

using NodeMatrix = std::vector<std::vector<NodeId>>;

// table[r][l] = Hom_l(Phi^r) for r <= d, l <= k, from psi_l = Hom_l(Phi)
NodeMatrix powers_from_components(CircuitBuilder& b, const std::vector<NodeId>& psi, int d, int k);
// same from a circuit for Phi (its y slot unused), via the structural graded
// decomposition; outputs are row-major in r then l
Circuit powers_hom(const Circuit& phi, int d, int k);

// Berkowitz: coefficients 1, p_1, ..., p_c of det(t I - A), highest power first
std::vector<NodeId> charpoly_nodes(CircuitBuilder& b, const NodeMatrix& A);
NodeId det_nodes(CircuitBuilder& b, const NodeMatrix& A);
// entries must share nvars and field
Circuit det_circuit(const std::vector<std::vector<Circuit>>& A);

enum class Solver { Adjugate, Cramer };

struct RecoverOptions {
    // restrict unknowns G_ij to i + j <= total_degree
    std::optional<int> total_degree;
    Solver solver = Solver::Adjugate;
    // also emit den * (M z - b)_m for every row m
    bool residuals = false;
};

// The linear system in the unknowns G_ij (i < d, j <= D), row-major in (i, j).
struct MinPolySystem {
    std::vector<std::pair<int, int>> unknowns;
    NodeMatrix M;            // (k + 1) x c
    std::vector<NodeId> b;   // -Hom_m(Phi^d)
};

MinPolySystem build_system(CircuitBuilder& b, const NodeMatrix& powers, int d, int D, int k,
                           std::optional<int> total_degree = {});

struct MinPolyNodes {
    std::vector<NodeId> num;  // G_i = num[i] / den for i < d
    NodeId den = 0;
    std::vector<NodeId> residuals;
    std::size_t unknowns = 0;
};

// Over a proper extension K the rows are split into u-coordinates, so the
// solution is rational (r (k + 1) rows, and as many residuals).
MinPolyNodes recover_nodes(CircuitBuilder& b, const NodeMatrix& powers, int d, int D, int k,
                           const RecoverOptions& opt = {});

struct RecoveredMinPoly {
    Circuit g;          // (sum_{i<d} num_i y^i + den y^d) / den
    Circuit coeffs;     // outputs G_0 .. G_d
    Circuit den;
    Circuit residuals;  // empty unless requested
    int d = 0;
    int D = 0;
    int k = 0;
    std::size_t unknowns = 0;
};

// phi: circuit for Phi_k with its y slot given by phi.yvar()
RecoveredMinPoly recover(const Circuit& phi, int d, int D, int k, const RecoverOptions& opt = {});
// psi: outputs psi_0..psi_k (as produced by lift_graded)
RecoveredMinPoly recover_from_components(const Circuit& psi, int d, int D, int k, const RecoverOptions& opt = {});

// builder-level assembly of the single-division G
NodeId assemble_minpoly(CircuitBuilder& b, const MinPolyNodes& m, int yvar);

}  // namespace circfac
