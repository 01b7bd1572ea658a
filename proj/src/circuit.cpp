#include "circfac/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace circfac {

namespace {

bool is_binary(Op op) { return op != Op::Var && op != Op::Const; }

const char* op_name(Op op)
{
    switch (op) {
    case Op::Var: return "var";
    case Op::Const: return "const";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    }
    return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(FieldPtr field, int nvars, std::optional<int> yvar, std::vector<Node> nodes,
                 std::vector<Scalar> consts, std::vector<NodeId> outputs)
    : field_(std::move(field)), nvars_(nvars), yvar_(yvar), nodes_(std::move(nodes)), consts_(std::move(consts)),
      outputs_(std::move(outputs))
{
    if (nvars_ < 0) throw Error("negative variable count");
    if (yvar_ && (*yvar_ < 0 || *yvar_ >= nvars_)) throw Error("yvar out of range");
    for (NodeId i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.op == Op::Var) {
            if (static_cast<int>(n.a) >= nvars_) throw Error("variable index out of range at node " + std::to_string(i));
        } else if (n.op == Op::Const) {
            if (n.a >= consts_.size()) throw Error("constant slot out of range at node " + std::to_string(i));
            if (!same_field(consts_[n.a].field(), field_)) throw Error("constant outside circuit field");
        } else if (n.a >= i || n.b >= i) {
            throw Error("node " + std::to_string(i) + " references a later node");
        }
    }
    for (NodeId o : outputs_)
        if (o >= nodes_.size()) throw Error("output references missing node");
}

bool Circuit::has_division() const
{
    return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.op == Op::Div; });
}

Circuit Circuit::with_yvar(std::optional<int> y) const
{
    Circuit c = *this;
    if (y && (*y < 0 || *y >= nvars_)) throw Error("yvar out of range");
    c.yvar_ = y;
    return c;
}

bool operator==(const Circuit& a, const Circuit& b)
{
    if (!same_field(a.field_, b.field_) || a.nvars_ != b.nvars_ || a.yvar_ != b.yvar_) return false;
    if (a.nodes_.size() != b.nodes_.size() || a.outputs_ != b.outputs_) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        const Node& x = a.nodes_[i];
        const Node& y = b.nodes_[i];
        if (x.op != y.op) return false;
        if (x.op == Op::Const) {
            if (a.consts_[x.a] != b.consts_[y.a]) return false;
        } else if (x.a != y.a || (is_binary(x.op) && x.b != y.b)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// CircuitBuilder

CircuitBuilder::CircuitBuilder(FieldPtr field, int nvars, bool simplify)
    : field_(std::move(field)), nvars_(nvars), simplify_(simplify), var_nodes_(nvars, NodeId(-1))
{
    if (nvars > 64) throw Error("at most 64 variables are supported");
}

NodeId CircuitBuilder::push(Node n, std::uint64_t mask)
{
    if (nodes_.size() >= (1u << 30)) throw Error("circuit too large");
    nodes_.push_back(n);
    masks_.push_back(mask);
    return static_cast<NodeId>(nodes_.size() - 1);
}

bool CircuitBuilder::is_zero(NodeId id) const { return is_const(id) && const_value(id).is_zero(); }
bool CircuitBuilder::is_one(NodeId id) const { return is_const(id) && const_value(id).is_one(); }

NodeId CircuitBuilder::var(int i)
{
    if (i < 0 || i >= nvars_) throw Error("variable index out of range");
    if (!simplify_) return push(Node{Op::Var, static_cast<NodeId>(i), 0}, std::uint64_t(1) << i);
    if (var_nodes_[i] == NodeId(-1)) var_nodes_[i] = push(Node{Op::Var, static_cast<NodeId>(i), 0}, std::uint64_t(1) << i);
    return var_nodes_[i];
}

Scalar CircuitBuilder::coerce(const Scalar& s) const
{
    if (same_field(s.field(), field_)) return s;
    if (!s.field() && field_) return Scalar::embed(field_, s.c0());
    if (s.field() && !field_ && s.is_base()) return Scalar(s.c0());
    throw DomainError("constant from a different field");
}

NodeId CircuitBuilder::constant(const Rational& q) { return constant(Scalar(q)); }

NodeId CircuitBuilder::constant(const Scalar& s0)
{
    Scalar s = coerce(s0);
    if (!simplify_) {
        consts_.push_back(std::move(s));
        return push(Node{Op::Const, static_cast<NodeId>(consts_.size() - 1), 0}, 0);
    }
    std::size_t h = s.hash();
    auto& bucket = const_index_[h];
    for (NodeId id : bucket)
        if (consts_[nodes_[id].a] == s) return id;
    consts_.push_back(std::move(s));
    NodeId id = push(Node{Op::Const, static_cast<NodeId>(consts_.size() - 1), 0}, 0);
    bucket.push_back(id);
    return id;
}

NodeId CircuitBuilder::binary(Op op, NodeId a, NodeId b)
{
    if (simplify_) {
        bool ca = is_const(a), cb = is_const(b);
        if (ca && cb) {
            const Scalar& x = const_value(a);
            const Scalar& y = const_value(b);
            switch (op) {
            case Op::Add: return constant(x + y);
            case Op::Sub: return constant(x - y);
            case Op::Mul: return constant(x * y);
            case Op::Div:
                if (!y.is_zero()) return constant(x / y);
                break;
            default: break;
            }
        }
        switch (op) {
        case Op::Add:
            if (is_zero(a)) return b;
            if (is_zero(b)) return a;
            break;
        case Op::Sub:
            if (is_zero(b)) return a;
            if (a == b) return zero();
            break;
        case Op::Mul:
            if (is_zero(a) || is_zero(b)) return zero();
            if (is_one(a)) return b;
            if (is_one(b)) return a;
            break;
        case Op::Div:
            if (is_one(b)) return a;
            break;
        default: break;
        }
        std::uint64_t key = (std::uint64_t(op) << 60) | (std::uint64_t(a) << 30) | std::uint64_t(b);
        auto it = binary_index_.find(key);
        if (it != binary_index_.end()) return it->second;
        NodeId id = push(Node{op, a, b}, masks_[a] | masks_[b]);
        binary_index_.emplace(key, id);
        return id;
    }
    return push(Node{op, a, b}, masks_[a] | masks_[b]);
}

NodeId CircuitBuilder::add(NodeId a, NodeId b) { return binary(Op::Add, a, b); }
NodeId CircuitBuilder::sub(NodeId a, NodeId b) { return binary(Op::Sub, a, b); }
NodeId CircuitBuilder::mul(NodeId a, NodeId b) { return binary(Op::Mul, a, b); }
NodeId CircuitBuilder::div(NodeId a, NodeId b) { return binary(Op::Div, a, b); }

NodeId CircuitBuilder::pow(NodeId a, unsigned e)
{
    if (e == 0) return one();
    NodeId result = NodeId(-1);
    NodeId base = a;
    while (true) {
        if (e & 1u) result = result == NodeId(-1) ? base : mul(result, base);
        e >>= 1u;
        if (!e) break;
        base = mul(base, base);
    }
    return result;
}

NodeId CircuitBuilder::sum(std::span<const NodeId> terms)
{
    NodeId acc = zero();
    for (NodeId t : terms) acc = add(acc, t);
    return acc;
}

NodeId CircuitBuilder::product(std::span<const NodeId> terms)
{
    NodeId acc = one();
    for (NodeId t : terms) acc = mul(acc, t);
    return acc;
}

NodeId CircuitBuilder::linear(std::span<const std::pair<Scalar, NodeId>> terms)
{
    NodeId acc = zero();
    for (const auto& [s, t] : terms) {
        if (s.is_zero()) continue;
        acc = add(acc, mul(constant(s), t));
    }
    return acc;
}

std::vector<NodeId> CircuitBuilder::import(const Circuit& c, std::span<const NodeId> var_images)
{
    if (static_cast<int>(var_images.size()) != c.nvars()) throw Error("import: wrong number of variable images");
    const auto& nodes = c.nodes();
    std::vector<NodeId> map(nodes.size());
    for (NodeId i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
        case Op::Var: map[i] = var_images[n.a]; break;
        case Op::Const: map[i] = constant(c.constants()[n.a]); break;
        default: map[i] = binary(n.op, map[n.a], map[n.b]); break;
        }
    }
    std::vector<NodeId> out;
    for (NodeId o : c.outputs()) out.push_back(map[o]);
    return out;
}

std::vector<NodeId> CircuitBuilder::import(const Circuit& c)
{
    std::vector<NodeId> vars;
    for (int j = 0; j < c.nvars(); ++j) vars.push_back(var(j));
    return import(c, vars);
}

std::vector<NodeId> CircuitBuilder::rewrite(std::span<const NodeId> roots, std::span<const NodeId> var_images)
{
    if (static_cast<int>(var_images.size()) != nvars_) throw Error("rewrite: wrong number of variable images");
    std::uint64_t changed = 0;
    for (int j = 0; j < nvars_; ++j)
        if (var_nodes_[j] != NodeId(-1) && var_images[j] != var_nodes_[j]) changed |= std::uint64_t(1) << j;
    std::vector<NodeId> out(roots.begin(), roots.end());
    if (!changed) return out;
    // collect affected nodes
    std::unordered_map<NodeId, NodeId> memo;
    std::vector<NodeId> stack, order;
    std::unordered_map<NodeId, char> seen;
    for (NodeId r : roots)
        if (masks_[r] & changed) stack.push_back(r);
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (!seen.emplace(id, 1).second) continue;
        order.push_back(id);
        const Node& n = nodes_[id];
        if (is_binary(n.op)) {
            if (masks_[n.a] & changed) stack.push_back(n.a);
            if (masks_[n.b] & changed) stack.push_back(n.b);
        }
    }
    std::sort(order.begin(), order.end());
    memo.reserve(order.size());
    auto mapped = [&](NodeId id) {
        auto it = memo.find(id);
        return it == memo.end() ? id : it->second;
    };
    for (NodeId id : order) {
        Node n = nodes_[id];
        NodeId r;
        if (n.op == Op::Var)
            r = var_images[n.a];
        else
            r = binary(n.op, mapped(n.a), mapped(n.b));
        memo[id] = r;
    }
    for (auto& r : out) r = mapped(r);
    return out;
}

NodeId CircuitBuilder::rewrite(NodeId root, std::span<const NodeId> var_images)
{
    NodeId roots[1] = {root};
    return rewrite(std::span<const NodeId>(roots, 1), var_images)[0];
}

Circuit CircuitBuilder::finish(std::span<const NodeId> outputs, std::optional<int> yvar) const
{
    std::vector<char> mark(nodes_.size(), 0);
    for (NodeId o : outputs) mark.at(o) = 1;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        if (!mark[i]) continue;
        const Node& n = nodes_[i];
        if (is_binary(n.op)) mark[n.a] = mark[n.b] = 1;
    }
    std::vector<NodeId> remap(nodes_.size(), NodeId(-1));
    std::vector<Node> nodes;
    std::vector<Scalar> consts;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!mark[i]) continue;
        Node n = nodes_[i];
        if (n.op == Op::Const) {
            consts.push_back(consts_[n.a]);
            n.a = static_cast<NodeId>(consts.size() - 1);
        } else if (is_binary(n.op)) {
            n.a = remap[n.a];
            n.b = remap[n.b];
        }
        remap[i] = static_cast<NodeId>(nodes.size());
        nodes.push_back(n);
    }
    std::vector<NodeId> outs;
    for (NodeId o : outputs) outs.push_back(remap[o]);
    return Circuit(field_, nvars_, yvar, std::move(nodes), std::move(consts), std::move(outs));
}

Circuit CircuitBuilder::finish(NodeId output, std::optional<int> yvar) const
{
    NodeId outs[1] = {output};
    return finish(std::span<const NodeId>(outs, 1), yvar);
}

// ---------------------------------------------------------------------------
// transforms

std::vector<std::vector<NodeId>> split_coordinates(CircuitBuilder& bq, const Circuit& c,
                                                   std::span<const NodeId> var_images)
{
    if (bq.field()) throw Error("split_coordinates: target builder must be over Q");
    if (static_cast<int>(var_images.size()) != c.nvars()) throw Error("split_coordinates: wrong number of variable images");
    const FieldPtr& K = c.field();
    const int r = K ? K->degree() : 1;
    const auto& nodes = c.nodes();
    std::vector<std::vector<NodeId>> co(nodes.size());
    NodeId zero = bq.zero();
    for (NodeId i = 0; i < nodes.size(); ++i) {
        const Node& nd = nodes[i];
        std::vector<NodeId> v(r, zero);
        switch (nd.op) {
        case Op::Var: v[0] = var_images[nd.a]; break;
        case Op::Const: {
            const Scalar& s = c.constants()[nd.a];
            for (int t = 0; t < r && t < s.degree(); ++t) v[t] = bq.constant(s.coeffs()[t]);
            break;
        }
        case Op::Add:
        case Op::Sub:
            for (int t = 0; t < r; ++t)
                v[t] = nd.op == Op::Add ? bq.add(co[nd.a][t], co[nd.b][t]) : bq.sub(co[nd.a][t], co[nd.b][t]);
            break;
        case Op::Mul: {
            std::vector<NodeId> conv(2 * r - 1, zero);
            for (int s = 0; s < r; ++s)
                for (int t = 0; t < r; ++t) conv[s + t] = bq.add(conv[s + t], bq.mul(co[nd.a][s], co[nd.b][t]));
            for (int t = 0; t < r; ++t) v[t] = conv[t];
            // u^j for j >= r reduced through the modulus
            for (int j = r; j <= 2 * r - 2; ++j) {
                const auto& pm = K->power_mod(j);
                for (int t = 0; t < r; ++t)
                    if (pm[t] != 0) v[t] = bq.add(v[t], bq.mul(bq.constant(pm[t]), conv[j]));
            }
            break;
        }
        case Op::Div: throw Error("split_coordinates: circuit has a division");
        }
        co[i] = std::move(v);
    }
    std::vector<std::vector<NodeId>> out;
    for (NodeId o : c.outputs()) out.push_back(co[o]);
    return out;
}

Circuit substitute_affine(const Circuit& c, const std::vector<AffineForm>& images, int target_nvars,
                          std::optional<int> yvar)
{
    if (static_cast<int>(images.size()) != c.nvars()) throw Error("substitute_affine: one image per variable required");
    CircuitBuilder b(c.field(), target_nvars);
    std::vector<NodeId> img;
    for (const auto& form : images) {
        NodeId acc = b.constant(form.constant);
        for (const auto& [v, coeff] : form.terms) acc = b.add(acc, b.mul(b.constant(coeff), b.var(v)));
        img.push_back(acc);
    }
    auto outs = b.import(c, img);
    return b.finish(outs, yvar);
}

Circuit scale(const Circuit& c, const Scalar& gamma)
{
    if (gamma.is_zero()) throw DomainError("scale by zero");
    CircuitBuilder b(c.field(), c.nvars());
    auto outs = b.import(c);
    NodeId g = b.constant(gamma);
    for (auto& o : outs) o = b.mul(g, o);
    return b.finish(outs, c.yvar());
}

Circuit set_var(const Circuit& c, int var, const Scalar& value)
{
    if (var < 0 || var >= c.nvars()) throw Error("set_var: variable out of range");
    CircuitBuilder b(c.field(), c.nvars());
    std::vector<NodeId> img;
    for (int j = 0; j < c.nvars(); ++j) img.push_back(j == var ? b.constant(value) : b.var(j));
    auto outs = b.import(c, img);
    return b.finish(outs, c.yvar());
}

namespace {

constexpr int kDegCap = 1 << 29;
int sat(long long v) { return static_cast<int>(std::min<long long>(v, kDegCap)); }

std::vector<DegreePair> degree_table(const Circuit& c, std::uint64_t mask)
{
    const auto& nodes = c.nodes();
    std::vector<DegreePair> d(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
        case Op::Var: d[i] = {(mask >> n.a) & 1u ? 1 : 0, 0}; break;
        case Op::Const: d[i] = {0, 0}; break;
        case Op::Add:
        case Op::Sub: {
            const auto &x = d[n.a], &y = d[n.b];
            if (x.den == 0 && y.den == 0)
                d[i] = {std::max(x.num, y.num), 0};
            else if (n.a == n.b ||
                     (nodes[n.a].op == Op::Div && nodes[n.b].op == Op::Div && nodes[n.a].b == nodes[n.b].b &&
                      d[nodes[n.a].a].den == 0 && d[nodes[n.b].a].den == 0))
                d[i] = {std::max(x.num, y.num), std::max(x.den, y.den)};
            else
                d[i] = {sat(std::max<long long>((long long)x.num + y.den, (long long)y.num + x.den)),
                        sat((long long)x.den + y.den)};
            break;
        }
        case Op::Mul:
            d[i] = {sat((long long)d[n.a].num + d[n.b].num), sat((long long)d[n.a].den + d[n.b].den)};
            break;
        case Op::Div:
            d[i] = {sat((long long)d[n.a].num + d[n.b].den), sat((long long)d[n.a].den + d[n.b].num)};
            break;
        }
    }
    return d;
}

}  // namespace

std::vector<DegreePair> formal_degree_pairs(const Circuit& c)
{
    auto d = degree_table(c, ~std::uint64_t(0));
    std::vector<DegreePair> out;
    for (NodeId o : c.outputs()) out.push_back(d[o]);
    return out;
}

int formal_degree(const Circuit& c)
{
    auto p = formal_degree_pairs(c);
    return p.empty() ? 0 : p[0].num;
}

int formal_degree_in(const Circuit& c, std::uint64_t mask)
{
    auto d = degree_table(c, mask);
    int best = 0;
    for (NodeId o : c.outputs()) best = std::max(best, d[o].num);
    return best;
}

CircuitStats stats(const Circuit& c)
{
    CircuitStats s;
    const auto& nodes = c.nodes();
    s.nodes = nodes.size();
    std::vector<int> depth(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        if (is_binary(n.op)) {
            s.edges += 2;
            depth[i] = 1 + std::max(depth[n.a], depth[n.b]);
            if (n.op == Op::Div) ++s.divisions;
        } else if (n.op == Op::Const) {
            s.constant_length += c.constants()[n.a].description_length();
        }
    }
    for (NodeId o : c.outputs()) s.depth = std::max(s.depth, depth[o]);
    s.size = s.edges + s.constant_length;
    auto pairs = formal_degree_pairs(c);
    for (const auto& p : pairs) s.formal_degree = std::max(s.formal_degree, p.num);
    return s;
}

// ---------------------------------------------------------------------------
// serialization

std::string serialize(const Circuit& c)
{
    std::string out;
    out.reserve(32 * c.node_count() + 64);
    out += "circuit v1\n";
    out += "field ";
    out += c.field() ? "Q[u] mod " + c.field()->modulus_string() : std::string("Q");
    out += "\nnvars ";
    out += std::to_string(c.nvars());
    if (c.yvar()) {
        out += " yvar ";
        out += std::to_string(*c.yvar());
    }
    out += "\n";
    const auto& nodes = c.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        out += "node ";
        out += std::to_string(i);
        out += ' ';
        out += op_name(n.op);
        out += ' ';
        if (n.op == Op::Var) {
            out += std::to_string(n.a);
        } else if (n.op == Op::Const) {
            out += c.constants()[n.a].to_string();
        } else {
            out += std::to_string(n.a);
            out += ' ';
            out += std::to_string(n.b);
        }
        out += '\n';
    }
    out += "output";
    for (NodeId o : c.outputs()) {
        out += ' ';
        out += std::to_string(o);
    }
    out += '\n';
    return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) parts.push_back(line.substr(i, j - i));
        i = j;
    }
    return parts;
}

long parse_index(std::string_view s, std::size_t line)
{
    if (s.empty() || s.size() > 10) throw ParseError(line, "bad integer '" + std::string(s) + "'");
    long v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw ParseError(line, "bad integer '" + std::string(s) + "'");
        v = v * 10 + (ch - '0');
    }
    return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text)
{
    std::vector<std::string_view> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto nl = text.find('\n', start);
            if (nl == std::string_view::npos) {
                if (start < text.size()) lines.push_back(text.substr(start));
                break;
            }
            lines.push_back(text.substr(start, nl - start));
            start = nl + 1;
        }
    }
    std::size_t ln = 0;
    auto next = [&]() -> std::string_view {
        while (ln < lines.size()) {
            auto l = lines[ln++];
            if (!split_ws(l).empty()) return l;
        }
        throw ParseError(ln, "unexpected end of input");
    };
    if (split_ws(next()) != std::vector<std::string_view>{"circuit", "v1"}) throw ParseError(ln, "expected 'circuit v1'");

    FieldPtr field;
    {
        auto l = next();
        auto parts = split_ws(l);
        if (parts.empty() || parts[0] != "field") throw ParseError(ln, "expected field line");
        if (parts.size() == 2 && parts[1] == "Q") {
        } else {
            auto pos = l.find("Q[u]");
            if (pos == std::string_view::npos) throw ParseError(ln, "unknown field");
            auto rest = l.substr(pos + 4);
            auto mpos = rest.find("mod");
            if (mpos == std::string_view::npos) throw ParseError(ln, "field line lacks modulus");
            try {
                field = NumberField::parse(rest.substr(mpos + 3));
            } catch (const DomainError& e) {
                throw ParseError(ln, e.what());
            }
        }
    }
    int nvars = 0;
    std::optional<int> yvar;
    {
        auto parts = split_ws(next());
        if (parts.size() < 2 || parts[0] != "nvars") throw ParseError(ln, "expected nvars line");
        nvars = static_cast<int>(parse_index(parts[1], ln));
        if (parts.size() == 4 && parts[2] == "yvar")
            yvar = static_cast<int>(parse_index(parts[3], ln));
        else if (parts.size() != 2)
            throw ParseError(ln, "malformed nvars line");
        if (nvars > 64) throw ParseError(ln, "too many variables");
        if (yvar && *yvar >= nvars) throw ParseError(ln, "yvar out of range");
    }
    std::vector<Node> nodes;
    std::vector<Scalar> consts;
    std::vector<NodeId> outputs;
    bool have_output = false;
    while (ln < lines.size()) {
        auto l = lines[ln++];
        auto parts = split_ws(l);
        if (parts.empty()) continue;
        if (have_output) throw ParseError(ln, "content after output line");
        if (parts[0] == "output") {
            for (std::size_t i = 1; i < parts.size(); ++i) {
                long id = parse_index(parts[i], ln);
                if (id >= static_cast<long>(nodes.size())) throw ParseError(ln, "output references missing node");
                outputs.push_back(static_cast<NodeId>(id));
            }
            have_output = true;
            continue;
        }
        if (parts[0] != "node" || parts.size() < 4) throw ParseError(ln, "expected node line");
        long id = parse_index(parts[1], ln);
        if (id != static_cast<long>(nodes.size())) throw ParseError(ln, "node ids must be dense and increasing");
        std::string_view op = parts[2];
        if (op == "var") {
            if (parts.size() != 4) throw ParseError(ln, "malformed var node");
            long v = parse_index(parts[3], ln);
            if (v >= nvars) throw ParseError(ln, "variable index out of range");
            nodes.push_back(Node{Op::Var, static_cast<NodeId>(v), 0});
        } else if (op == "const") {
            auto pos = l.find("const");
            try {
                consts.push_back(parse_scalar(l.substr(pos + 5), field));
            } catch (const DomainError& e) {
                throw ParseError(ln, e.what());
            }
            nodes.push_back(Node{Op::Const, static_cast<NodeId>(consts.size() - 1), 0});
        } else {
            Op o;
            if (op == "add")
                o = Op::Add;
            else if (op == "sub")
                o = Op::Sub;
            else if (op == "mul")
                o = Op::Mul;
            else if (op == "div")
                o = Op::Div;
            else
                throw ParseError(ln, "unknown opcode '" + std::string(op) + "'");
            if (parts.size() != 5) throw ParseError(ln, "binary node needs two operands");
            long a = parse_index(parts[3], ln), b = parse_index(parts[4], ln);
            if (a >= id || b >= id) throw ParseError(ln, "forward reference");
            nodes.push_back(Node{o, static_cast<NodeId>(a), static_cast<NodeId>(b)});
        }
    }
    if (!have_output) throw ParseError(ln, "missing output line");
    return Circuit(field, nvars, yvar, std::move(nodes), std::move(consts), std::move(outputs));
}

Circuit read_circuit_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

void write_circuit_file(const Circuit& c, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << serialize(c);
}

// ---------------------------------------------------------------------------
// division elimination

std::pair<NodeId, NodeId> eliminate_divisions(CircuitBuilder& b, const Circuit& c, std::span<const NodeId> var_images,
                                              NodeId root)
{
    const auto& nodes = c.nodes();
    std::vector<NodeId> num(root + 1), den(root + 1);
    NodeId one = b.one();
    for (NodeId i = 0; i <= root; ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
        case Op::Var:
            num[i] = var_images[n.a];
            den[i] = one;
            break;
        case Op::Const:
            num[i] = b.constant(c.constants()[n.a]);
            den[i] = one;
            break;
        case Op::Add:
        case Op::Sub: {
            NodeId na = num[n.a], nb = num[n.b], da = den[n.a], db = den[n.b];
            if (da == db) {
                num[i] = n.op == Op::Add ? b.add(na, nb) : b.sub(na, nb);
                den[i] = da;
            } else {
                NodeId l = b.mul(na, db), r = b.mul(nb, da);
                num[i] = n.op == Op::Add ? b.add(l, r) : b.sub(l, r);
                den[i] = b.mul(da, db);
            }
            break;
        }
        case Op::Mul:
            num[i] = b.mul(num[n.a], num[n.b]);
            den[i] = b.mul(den[n.a], den[n.b]);
            break;
        case Op::Div:
            num[i] = b.mul(num[n.a], den[n.b]);
            den[i] = b.mul(den[n.a], num[n.b]);
            break;
        }
    }
    return {num[root], den[root]};
}

std::pair<Circuit, Circuit> eliminate_divisions(const Circuit& c)
{
    if (c.outputs().size() != 1) throw Error("eliminate_divisions expects a single-output circuit");
    CircuitBuilder b(c.field(), c.nvars());
    std::vector<NodeId> vars;
    for (int j = 0; j < c.nvars(); ++j) vars.push_back(b.var(j));
    auto [n, d] = eliminate_divisions(b, c, vars, c.output());
    return {b.finish(n, c.yvar()), b.finish(d, c.yvar())};
}

std::uint64_t fnv1a(std::string_view data)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace circfac
