// Interpolation transforms: coefficients in one variable, homogeneous
// components, truncations and y-derivatives.
#pragma once

#include "circfac/circuit.hpp"

#include <vector>

namespace circfac {

// Points 0..D with weights[r][i] such that coeff_r(f) = sum_i weights[r][i] * f(points[i])
// for every univariate f of degree <= D.
struct InterpPlan {
    int degree = 0;
    std::vector<Rational> points;
    std::vector<std::vector<Rational>> weights;
};

// cached per degree; safe for concurrent callers
const InterpPlan& make_plan(int D);
// uncached construction, checked against the monomial basis
InterpPlan build_plan(int D);

// builder-level: all coefficients 0..plan.degree of root in var
std::vector<NodeId> coefficients_of(CircuitBuilder& b, NodeId root, int var, const InterpPlan& plan);
// builder-level: Hom_0..Hom_D of root with respect to the variables in mask
std::vector<NodeId> hom_components(CircuitBuilder& b, NodeId root, std::uint64_t mask, const InterpPlan& plan);
// builder-level: table[a][j] = Hom_a (in the mask variables) of the coefficient of y^j,
// from (Dx+1)(Dy+1) shifted copies of root
std::vector<std::vector<NodeId>> bigraded_components(CircuitBuilder& b, NodeId root, std::uint64_t mask, int yvar,
                                                     const InterpPlan& xplan, const InterpPlan& yplan);
// builder-level structural decomposition: Hom_0..Hom_k (mask variables) of a
// division-free root, propagated gate by gate and truncated at k.  Works for
// circuits whose degree is far above k.
std::vector<NodeId> graded_components(CircuitBuilder& b, NodeId root, std::uint64_t mask, int k);

Circuit coefficient_of(const Circuit& c, int var, int r, const InterpPlan& plan);
Circuit hom_component(const Circuit& c, int i, const InterpPlan& plan);
Circuit hom_truncate(const Circuit& c, int k, const InterpPlan& plan);
// r-th derivative in c.yvar() (or in var when given)
Circuit partial_derivative_y(const Circuit& c, int r, const InterpPlan& plan);
Circuit partial_derivative(const Circuit& c, int var, int r, const InterpPlan& plan);

std::uint64_t all_vars_mask(int nvars);

}  // namespace circfac
