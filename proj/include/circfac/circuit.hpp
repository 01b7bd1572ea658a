// Algebraic circuits: immutable DAGs over Q or a number field.
#pragma once

#include "circfac/field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace circfac {

enum class Op : std::uint8_t { Var, Const, Add, Sub, Mul, Div };

using NodeId = std::uint32_t;

struct Node {
    Op op;
    // Var: a = variable index.  Const: a = slot in the constant table.
    // Binary gates: a, b = children.
    NodeId a = 0;
    NodeId b = 0;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(NodeId gate)
        : Error("division by zero at gate " + std::to_string(gate)), gate_(gate) {}
    NodeId gate() const { return gate_; }

private:
    NodeId gate_;
};

struct DegreePair {
    int num = 0;
    int den = 0;
    bool operator==(const DegreePair&) const = default;
};

struct CircuitStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t constant_length = 0;  // total bits over all constant coordinates
    std::size_t size = 0;             // edges + constant_length
    int depth = 0;
    int formal_degree = 0;  // numerator bound, max over outputs
    std::size_t divisions = 0;
};

class Circuit {
public:
    Circuit() = default;
    // validates topological order and references; throws Error on violation
    Circuit(FieldPtr field, int nvars, std::optional<int> yvar, std::vector<Node> nodes,
            std::vector<Scalar> consts, std::vector<NodeId> outputs);

    const FieldPtr& field() const { return field_; }
    int nvars() const { return nvars_; }
    std::optional<int> yvar() const { return yvar_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Scalar>& constants() const { return consts_; }
    const std::vector<NodeId>& outputs() const { return outputs_; }
    NodeId output(std::size_t i = 0) const { return outputs_.at(i); }
    std::size_t node_count() const { return nodes_.size(); }
    const Scalar& constant_of(NodeId id) const { return consts_[nodes_[id].a]; }

    bool has_division() const;
    Circuit with_yvar(std::optional<int> y) const;

    // structural identity (field modulus, nvars, yvar, nodes, constants, outputs)
    friend bool operator==(const Circuit& a, const Circuit& b);

private:
    FieldPtr field_;
    int nvars_ = 0;
    std::optional<int> yvar_;
    std::vector<Node> nodes_;
    std::vector<Scalar> consts_;
    std::vector<NodeId> outputs_;
};

// Hash-consing construction.  With simplify on, trivial identities involving
// constant 0/1 and constant-constant gates are folded; divisions by anything
// other than the constant 1 are always kept.
class CircuitBuilder {
public:
    CircuitBuilder(FieldPtr field, int nvars, bool simplify = true);

    const FieldPtr& field() const { return field_; }
    int nvars() const { return nvars_; }
    std::size_t node_count() const { return nodes_.size(); }
    const Node& node(NodeId id) const { return nodes_[id]; }
    bool is_const(NodeId id) const { return nodes_[id].op == Op::Const; }
    const Scalar& const_value(NodeId id) const { return consts_[nodes_[id].a]; }
    bool is_zero(NodeId id) const;
    bool is_one(NodeId id) const;
    std::uint64_t var_mask(NodeId id) const { return masks_[id]; }

    NodeId var(int i);
    NodeId constant(const Scalar& s);
    NodeId constant(const Rational& q);
    NodeId zero() { return constant(Rational(0)); }
    NodeId one() { return constant(Rational(1)); }

    NodeId add(NodeId a, NodeId b);
    NodeId sub(NodeId a, NodeId b);
    NodeId mul(NodeId a, NodeId b);
    NodeId div(NodeId a, NodeId b);
    NodeId neg(NodeId a) { return sub(zero(), a); }
    NodeId scale(NodeId a, const Scalar& s) { return mul(constant(s), a); }
    NodeId pow(NodeId a, unsigned e);
    NodeId sum(std::span<const NodeId> terms);
    NodeId product(std::span<const NodeId> terms);
    // sum of s_i * t_i, skipping zero weights
    NodeId linear(std::span<const std::pair<Scalar, NodeId>> terms);

    // copy c into this builder with variable j replaced by var_images[j];
    // returns the ids of c's outputs
    std::vector<NodeId> import(const Circuit& c, std::span<const NodeId> var_images);
    std::vector<NodeId> import(const Circuit& c);
    // rebuild the subgraph under roots with variables replaced; variables whose
    // image is var(j) itself are untouched
    std::vector<NodeId> rewrite(std::span<const NodeId> roots, std::span<const NodeId> var_images);
    NodeId rewrite(NodeId root, std::span<const NodeId> var_images);

    Circuit finish(std::span<const NodeId> outputs, std::optional<int> yvar = std::nullopt) const;
    Circuit finish(NodeId output, std::optional<int> yvar = std::nullopt) const;

private:
    NodeId push(Node n, std::uint64_t mask);
    NodeId binary(Op op, NodeId a, NodeId b);
    Scalar coerce(const Scalar& s) const;

    struct KeyHash {
        std::size_t operator()(std::uint64_t k) const { return k * 0x9E3779B97F4A7C15ULL >> 7; }
    };

    FieldPtr field_;
    int nvars_;
    bool simplify_;
    std::vector<Node> nodes_;
    std::vector<Scalar> consts_;
    std::vector<std::uint64_t> masks_;
    std::unordered_map<std::uint64_t, NodeId, KeyHash> binary_index_;
    std::unordered_map<std::size_t, std::vector<NodeId>> const_index_;
    std::vector<NodeId> var_nodes_;
};

// ---------------------------------------------------------------------------
// transforms

// affine image: constant + sum coeff * var (vars index the target variable set)
struct AffineForm {
    Scalar constant;
    std::vector<std::pair<int, Scalar>> terms;
};

// images[j] is the image of variable j; target_nvars is the variable count of
// the result (at least c.nvars(); larger when a fresh variable is introduced)
Circuit substitute_affine(const Circuit& c, const std::vector<AffineForm>& images, int target_nvars,
                          std::optional<int> yvar = std::nullopt);
Circuit scale(const Circuit& c, const Scalar& gamma);
Circuit set_var(const Circuit& c, int var, const Scalar& value);

std::vector<DegreePair> formal_degree_pairs(const Circuit& c);
// numerator bound of the first output
int formal_degree(const Circuit& c);
// degree bound restricted to the variables in mask (per output numerator bound)
int formal_degree_in(const Circuit& c, std::uint64_t mask);
CircuitStats stats(const Circuit& c);

std::string serialize(const Circuit& c);
Circuit parse_circuit(std::string_view text);
Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const Circuit& c, const std::string& path);

// num/den pair, both division-free
std::pair<Circuit, Circuit> eliminate_divisions(const Circuit& c);
// builder-level version: returns (num, den) node ids
std::pair<NodeId, NodeId> eliminate_divisions(CircuitBuilder& b, const Circuit& c, std::span<const NodeId> var_images,
                                              NodeId root);

// coordinates in the basis 1, u, ..., u^(r-1) of each output of a
// division-free circuit over K = Q(u), built in bq (over Q);
// result[output][t]
std::vector<std::vector<NodeId>> split_coordinates(CircuitBuilder& bq, const Circuit& c,
                                                   std::span<const NodeId> var_images);

std::uint64_t fnv1a(std::string_view data);

}  // namespace circfac
