#include "splice/calculus.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace splice {

namespace {

// vertices of the component of d minus edge `skip` containing `start`
std::set<std::string> side_vertices(const SpliceDiagram& d, const std::string& start,
                                    std::size_t skip) {
    std::set<std::string> seen;
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (auto i : d.incident(v)) {
            if (i == skip) continue;
            stack.push_back(d.edges()[i].other(v));
        }
    }
    return seen;
}

void require_inner_edge(const SpliceDiagram& d, std::size_t e) {
    if (e >= d.edges().size()) throw std::runtime_error("bad edge index");
    const Edge& ed = d.edges()[e];
    if (d.kind(ed.a) != VertexKind::Inner || d.kind(ed.b) != VertexKind::Inner)
        throw std::runtime_error("not an inner edge");
}

}  // namespace

Int induced_multiplicity(const SpliceDiagram& d, std::size_t e, const std::string& side) {
    require_inner_edge(d, e);
    const Edge& ed = d.edges()[e];
    if (side != ed.a && side != ed.b) throw std::runtime_error("side not an endpoint");
    const std::string& far = ed.other(side);
    auto far_side = side_vertices(d, far, e);
    Leaf core = Leaf::edge_end(far, e);
    Int sum = 0;
    for (const auto& w : d.arrows()) {
        if (!far_side.count(w)) continue;
        sum += d.multiplicity(w) * linking_number(d, core, Leaf::terminal(w));
    }
    return sum;
}

namespace {

// copy the component of d containing `keep` after removing edge `cut_edge`,
// attaching a new terminal at the stub with the given multiplicity
SpliceDiagram copy_side(const SpliceDiagram& d, const std::string& keep,
                        std::size_t cut_edge, Int stub_mult, std::string& stub_id) {
    auto verts = side_vertices(d, keep, cut_edge);
    SpliceDiagram out;
    for (const auto& v : verts)
        if (d.kind(v) == VertexKind::Inner) out.add_node(v);
    for (std::size_t i = 0; i < d.edges().size(); ++i) {
        if (i == cut_edge) continue;
        const Edge& ed = d.edges()[i];
        if (!verts.count(ed.a)) continue;
        bool ia = d.kind(ed.a) == VertexKind::Inner;
        bool ib = d.kind(ed.b) == VertexKind::Inner;
        if (ia && ib) {
            out.add_inner_edge(ed.a, ed.wa, ed.b, ed.wb);
        } else {
            const std::string& node = ia ? ed.a : ed.b;
            const std::string& leaf = ia ? ed.b : ed.a;
            VertexKind k = d.kind(leaf);
            Int m = k == VertexKind::Arrow ? d.multiplicity(leaf) : 0;
            out.add_terminal_with_id(leaf, k, node, ed.weight_at(node), m);
        }
    }
    stub_id = keep + ".cut";
    const Edge& ed = d.edges()[cut_edge];
    out.add_terminal_with_id(stub_id,
                             stub_mult == 0 ? VertexKind::Boundary : VertexKind::Arrow,
                             keep, ed.weight_at(keep), stub_mult);
    return out;
}

}  // namespace

CutResult cut(const SpliceDiagram& d, std::size_t e) {
    require_inner_edge(d, e);
    const Edge& ed = d.edges()[e];
    CutResult res;
    res.left_mult = induced_multiplicity(d, e, ed.a);
    res.right_mult = induced_multiplicity(d, e, ed.b);
    res.left = copy_side(d, ed.a, e, res.left_mult, res.left_new);
    res.right = copy_side(d, ed.b, e, res.right_mult, res.right_new);
    return res;
}

SpliceDiagram splice(const SpliceDiagram& d1, const std::string& x1,
                     const SpliceDiagram& d2, const std::string& x2) {
    if (d1.is_link_pair() || d2.is_link_pair() || d1.is_lone_arrow() || d2.is_lone_arrow())
        throw std::runtime_error("cannot splice at a diagram without a root weight");
    auto arrow_edge = [](const SpliceDiagram& d, const std::string& x) {
        if (!d.has_vertex(x) || d.kind(x) != VertexKind::Arrow)
            throw std::runtime_error("not an arrowhead: " + x);
        return d.incident(x)[0];
    };
    std::size_t e1 = arrow_edge(d1, x1);
    std::size_t e2 = arrow_edge(d2, x2);
    const std::string n1 = d1.edges()[e1].other(x1);
    const std::string n2base = d2.edges()[e2].other(x2);
    Int w1 = d1.edges()[e1].weight_at(n1);
    Int w2 = d2.edges()[e2].weight_at(n2base);

    // rename d2 vertices on id collision
    auto rename = [&](const std::string& id) {
        std::string r = id;
        while (d1.has_vertex(r)) r += "'";
        return r;
    };

    SpliceDiagram out;
    for (const auto& v : d1.vertices())
        if (v.kind == VertexKind::Inner) out.add_node(v.id);
    for (const auto& v : d2.vertices())
        if (v.kind == VertexKind::Inner) out.add_node(rename(v.id));

    auto copy_edges = [&](const SpliceDiagram& d, std::size_t skip, bool second) {
        for (std::size_t i = 0; i < d.edges().size(); ++i) {
            if (i == skip) continue;
            const Edge& ed = d.edges()[i];
            bool ia = d.kind(ed.a) == VertexKind::Inner;
            bool ib = d.kind(ed.b) == VertexKind::Inner;
            auto nm = [&](const std::string& id) { return second ? rename(id) : id; };
            if (ia && ib) {
                out.add_inner_edge(nm(ed.a), ed.wa, nm(ed.b), ed.wb);
            } else {
                const std::string& node = ia ? ed.a : ed.b;
                const std::string& leaf = ia ? ed.b : ed.a;
                VertexKind k = d.kind(leaf);
                Int m = k == VertexKind::Arrow ? d.multiplicity(leaf) : 0;
                out.add_terminal_with_id(nm(leaf), k, nm(node), ed.weight_at(node), m);
            }
        }
    };
    copy_edges(d1, e1, false);
    copy_edges(d2, e2, true);
    out.add_inner_edge(n1, w1, rename(n2base), w2);

    auto rep = validate(out);
    if (!rep.ok) throw std::runtime_error("splice result invalid: " + rep.violations[0].message);
    return out;
}

HatDecoration hat_gamma(const SpliceDiagram& d) {
    if (d.is_link_pair() || d.is_lone_arrow())
        throw std::runtime_error("hat decoration undefined for degenerate diagrams");
    auto fib = is_fibered(d);
    if (!fib.fibered) throw std::runtime_error("diagram is not fibered");

    HatDecoration hat;
    for (const auto& [v, l] : fib.l_values) hat.vertex_sign[v] = l > 0 ? 1 : -1;
    for (const auto& v : d.inner_vertices()) {
        for (auto i : d.incident(v)) {
            const Edge& ed = d.edges()[i];
            const std::string& o = ed.other(v);
            int s = 1;
            switch (d.kind(o)) {
                case VertexKind::Arrow:
                    s = d.multiplicity(o) >= 0 ? 1 : -1;
                    break;
                case VertexKind::Boundary:
                    s = 1;
                    break;
                case VertexKind::Inner:
                    s = induced_multiplicity(d, i, v) >= 0 ? 1 : -1;
                    break;
            }
            hat.root_sign[{v, i}] = s;
        }
    }
    return hat;
}

std::string hat_dot(const SpliceDiagram& d, const HatDecoration& hat) {
    std::ostringstream os;
    os << "graph hat {\n";
    for (const auto& v : d.vertices()) {
        os << "  \"" << v.id << "\" [";
        switch (v.kind) {
            case VertexKind::Inner:
                os << "shape=circle,label=\""
                   << (hat.vertex_sign.at(v.id) > 0 ? "\xE2\x8A\x95" : "\xE2\x8A\x96")
                   << "\"";
                break;
            case VertexKind::Boundary:
                os << "shape=point";
                break;
            case VertexKind::Arrow:
                os << "shape=rarrow,label=\"m=" << d.multiplicity(v.id) << "\"";
                break;
        }
        os << "];\n";
    }
    for (std::size_t i = 0; i < d.edges().size(); ++i) {
        const Edge& e = d.edges()[i];
        std::string lbl;
        for (const std::string* end : {&e.a, &e.b}) {
            auto it = hat.root_sign.find({*end, i});
            if (it == hat.root_sign.end()) continue;
            if (!lbl.empty()) lbl += " ";
            lbl += *end + ":" + (it->second > 0 ? "+" : "-");
        }
        os << "  \"" << e.a << "\" -- \"" << e.b << "\"";
        if (!lbl.empty()) os << " [label=\"" << lbl << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace splice
