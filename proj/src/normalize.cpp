#include "splice/normalize.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace splice {

namespace {

// copy of d without the given vertices and edges (edges touching a dropped
// vertex are dropped too); terminal ids and multiplicities preserved
SpliceDiagram rebuild(const SpliceDiagram& d, const std::set<std::string>& drop_v,
                      const std::set<std::size_t>& drop_e) {
    SpliceDiagram out;
    for (const auto& v : d.vertices())
        if (v.kind == VertexKind::Inner && !drop_v.count(v.id)) out.add_node(v.id);
    for (std::size_t i = 0; i < d.edges().size(); ++i) {
        if (drop_e.count(i)) continue;
        const Edge& ed = d.edges()[i];
        if (drop_v.count(ed.a) || drop_v.count(ed.b)) continue;
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
    return out;
}

}  // namespace

SpliceDiagram apply_move3(const SpliceDiagram& d, std::size_t e) {
    if (e >= d.edges().size()) throw std::runtime_error("bad edge index");
    const Edge& ed = d.edges()[e];
    bool ia = d.has_vertex(ed.a) && d.kind(ed.a) == VertexKind::Inner;
    bool ib = d.has_vertex(ed.b) && d.kind(ed.b) == VertexKind::Inner;
    if (ia == ib) throw std::runtime_error("not a terminal edge");
    const std::string& v = ia ? ed.a : ed.b;
    const std::string& leaf = ia ? ed.b : ed.a;
    if (d.kind(leaf) != VertexKind::Boundary)
        throw std::runtime_error("leaf is not a boundary vertex");
    if (ed.weight_at(v) != 1) throw std::runtime_error("root weight is not 1");

    std::vector<std::size_t> rem;
    for (auto i : d.incident(v))
        if (i != e) rem.push_back(i);

    if (rem.empty()) throw std::runtime_error("move would empty the diagram");

    if (rem.size() == 1) {
        const Edge& r = d.edges()[rem[0]];
        const std::string& far = r.other(v);
        if (d.kind(far) == VertexKind::Arrow) {
            SpliceDiagram out;
            out.make_lone_arrow(far, d.multiplicity(far));
            return out;
        }
        // keep the vertex; only the boundary edge goes
        return rebuild(d, {leaf}, {e});
    }

    if (rem.size() == 2) {
        const Edge& r1 = d.edges()[rem[0]];
        const Edge& r2 = d.edges()[rem[1]];
        const std::string f1 = r1.other(v);
        const std::string f2 = r2.other(v);
        VertexKind k1 = d.kind(f1), k2 = d.kind(f2);
        if (k1 == VertexKind::Inner && k2 == VertexKind::Inner) {
            auto out = rebuild(d, {v, leaf}, {e, rem[0], rem[1]});
            out.add_inner_edge(f1, r1.weight_at(f1), f2, r2.weight_at(f2));
            return out;
        }
        if (k1 == VertexKind::Arrow && k2 == VertexKind::Arrow) {
            SpliceDiagram out;
            out.make_link_pair(f1, d.multiplicity(f1), f2, d.multiplicity(f2));
            return out;
        }
        if (k1 == VertexKind::Inner || k2 == VertexKind::Inner) {
            const std::string& node = k1 == VertexKind::Inner ? f1 : f2;
            const Edge& rn = k1 == VertexKind::Inner ? r1 : r2;
            const std::string& term = k1 == VertexKind::Inner ? f2 : f1;
            VertexKind kt = k1 == VertexKind::Inner ? k2 : k1;
            if (kt == VertexKind::Boundary) {
                // fusing would leave an unweighted boundary edge; keep the vertex
                return rebuild(d, {leaf}, {e});
            }
            auto out = rebuild(d, {v, leaf, term}, {e, rem[0], rem[1]});
            out.add_terminal_with_id(term, kt, node, rn.weight_at(node),
                                     d.multiplicity(term));
            return out;
        }
        // two terminals, at least one a boundary vertex: keep the vertex
        return rebuild(d, {leaf}, {e});
    }

    return rebuild(d, {leaf}, {e});
}

SpliceDiagram apply_move6(const SpliceDiagram& d, std::size_t e) {
    if (e >= d.edges().size()) throw std::runtime_error("bad edge index");
    const Edge& ed = d.edges()[e];
    if (d.kind(ed.a) != VertexKind::Inner || d.kind(ed.b) != VertexKind::Inner)
        throw std::runtime_error("not an inner edge");
    Int a0 = ed.wa, a0p = ed.wb;
    Int prod = 1;
    for (const std::string* v : {&ed.a, &ed.b})
        for (auto i : d.incident(*v)) {
            if (i == e) continue;
            prod *= d.edges()[i].weight_at(*v);
        }
    if (a0 * a0p != prod) throw std::runtime_error("weight product condition fails");

    auto out = rebuild(d, {ed.b}, {e});
    for (auto i : d.incident(ed.b)) {
        if (i == e) continue;
        const Edge& r = d.edges()[i];
        const std::string& far = r.other(ed.b);
        if (d.kind(far) == VertexKind::Inner) {
            out.add_inner_edge(ed.a, r.weight_at(ed.b), far, r.weight_at(far));
        } else {
            Int m = d.kind(far) == VertexKind::Arrow ? d.multiplicity(far) : 0;
            out.add_terminal_with_id(far, d.kind(far), ed.a, r.weight_at(ed.b), m);
        }
    }
    auto rep = validate(out);
    if (!rep.ok)
        throw std::runtime_error("merged vertex invalid: " + rep.violations[0].message);
    return out;
}

std::string diagram_hash(const SpliceDiagram& d) {
    // FNV-1a over the canonical form
    std::string s = canonical_form(d);
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

std::string edge_desc(const SpliceDiagram& d, std::size_t e) {
    const Edge& ed = d.edges()[e];
    return ed.a + "--" + ed.b;
}

bool collapsible_to_link_pair(const SpliceDiagram& d) {
    auto inner = d.inner_vertices();
    if (inner.size() != 1 || d.edges().size() != 2) return false;
    for (const auto& e : d.edges()) {
        const std::string& leaf = e.other(inner[0]);
        if (d.kind(leaf) != VertexKind::Arrow) return false;
        if (e.weight_at(inner[0]) != 1) return false;
    }
    return true;
}

}  // namespace

std::pair<SpliceDiagram, MoveTrace> minimize(const SpliceDiagram& d) {
    SpliceDiagram cur = d;
    MoveTrace trace;
    bool progress = true;
    while (progress) {
        progress = false;
        if (cur.is_link_pair() || cur.is_lone_arrow()) break;

        for (std::size_t e = 0; e < cur.edges().size() && !progress; ++e) {
            const Edge& ed = cur.edges()[e];
            bool ia = cur.kind(ed.a) == VertexKind::Inner;
            bool ib = cur.kind(ed.b) == VertexKind::Inner;
            if (ia == ib) continue;
            const std::string& v = ia ? ed.a : ed.b;
            const std::string& leaf = ia ? ed.b : ed.a;
            if (cur.kind(leaf) != VertexKind::Boundary || ed.weight_at(v) != 1) continue;
            try {
                SpliceDiagram next = apply_move3(cur, e);
                trace.push_back({"3", edge_desc(cur, e), diagram_hash(cur), diagram_hash(next)});
                cur = std::move(next);
                progress = true;
            } catch (const std::runtime_error&) {
            }
        }
        if (progress) continue;

        for (std::size_t e = 0; e < cur.edges().size() && !progress; ++e) {
            const Edge& ed = cur.edges()[e];
            if (cur.kind(ed.a) != VertexKind::Inner || cur.kind(ed.b) != VertexKind::Inner)
                continue;
            try {
                SpliceDiagram next = apply_move6(cur, e);
                trace.push_back({"6", edge_desc(cur, e), diagram_hash(cur), diagram_hash(next)});
                cur = std::move(next);
                progress = true;
            } catch (const std::runtime_error&) {
            }
        }
        if (progress) continue;

        if (collapsible_to_link_pair(cur)) {
            auto as = cur.arrows();
            SpliceDiagram next;
            next.make_link_pair(as[0], cur.multiplicity(as[0]), as[1],
                                cur.multiplicity(as[1]));
            trace.push_back({"collapse", cur.inner_vertices()[0], diagram_hash(cur),
                             diagram_hash(next)});
            cur = std::move(next);
            progress = true;
        }
    }
    return {cur, trace};
}

SpliceDiagram invert(const SpliceDiagram& d) {
    SpliceDiagram out = d;
    for (const auto& [id, m] : d.multiplicities()) out.set_multiplicity(id, -m);
    return out;
}

bool is_type_arrow_arrow(const SpliceDiagram& d) { return d.is_link_pair(); }

S3Answer check_s3_cabling(const SpliceDiagram& d) {
    if (d.is_link_pair() || d.is_lone_arrow()) return S3Answer::Yes;
    std::set<std::string> alive;
    for (const auto& v : d.inner_vertices()) alive.insert(v);
    bool progress = true;
    while (!alive.empty() && progress) {
        progress = false;
        for (const auto& v : alive) {
            int inner_deg = 0;
            int big = 0;
            for (auto i : d.incident(v)) {
                const Edge& e = d.edges()[i];
                const std::string& o = e.other(v);
                bool o_inner = d.kind(o) == VertexKind::Inner;
                if (o_inner && !alive.count(o)) continue;  // edge already consumed
                if (o_inner) ++inner_deg;
                if (e.weight_at(v) > 1) ++big;
            }
            if (inner_deg <= 1 && big <= 2) {
                alive.erase(v);
                progress = true;
                break;
            }
        }
    }
    return alive.empty() ? S3Answer::Yes : S3Answer::Unknown;
}

}  // namespace splice
