#include "splice/tightness.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "splice/calculus.hpp"
#include "splice/linking.hpp"
#include "splice/normalize.hpp"

namespace splice {

TightnessVerdict decide_tight(const SpliceDiagram& d, bool assume_s3) {
    auto rep = validate(d);
    if (!rep.ok) throw std::runtime_error("invalid diagram: " + rep.violations[0].message);
    auto fib = is_fibered(d);
    if (!fib.fibered) throw std::runtime_error("not fibered");
    if (!assume_s3 && check_s3_cabling(d) != S3Answer::Yes)
        throw std::runtime_error("ambient sphere not established");

    bool has_pos = false, has_neg = false;
    for (const auto& [id, m] : d.multiplicities()) (m > 0 ? has_pos : has_neg) = true;
    if (d.multiplicities().empty())
        throw std::runtime_error("no components");

    TightnessVerdict v;
    if (!(has_pos && has_neg)) {
        v.tight = true;
        v.sign = has_pos ? "+" : "-";
        return v;
    }
    v.tight = false;

    // orient so the first piece is positive, then point at a negative component
    SpliceDiagram w = d;
    if (!d.is_link_pair()) {
        std::string v0 = d.inner_vertices().front();
        if (fiber_degree(d, v0) < 0) {
            w = invert(d);
            v.inverted_for_witness = true;
        }
    } else if (d.multiplicity(d.vertices()[0].id) < 0) {
        w = invert(d);
        v.inverted_for_witness = true;
    }
    for (const auto& [id, m] : w.multiplicities()) {
        if (m < 0) {
            v.witness_component = id;
            v.witness_reason = "negative-arrow";
            return v;
        }
    }
    for (std::size_t e = 0; e < w.edges().size(); ++e) {
        const Edge& ed = w.edges()[e];
        if (w.kind(ed.a) != VertexKind::Inner || w.kind(ed.b) != VertexKind::Inner)
            continue;
        for (const std::string* side : {&ed.a, &ed.b}) {
            if (induced_multiplicity(w, e, *side) < 0) {
                v.witness_component = ed.a + "--" + ed.b;
                v.witness_reason = "negative-cut-edge";
                return v;
            }
        }
    }
    v.witness_component = "?";
    v.witness_reason = "negative-arrow";
    return v;
}

PieceReport per_piece(const SpliceDiagram& d) {
    PieceReport rep;
    if (d.is_link_pair() || d.is_lone_arrow()) {
        bool has_pos = false, has_neg = false;
        for (const auto& [id, m] : d.multiplicities()) (m > 0 ? has_pos : has_neg) = true;
        rep.all_uniform = !(has_pos && has_neg);
        return rep;
    }
    for (const auto& v : d.inner_vertices()) {
        bool has_pos = false, has_neg = false;
        for (auto i : d.incident(v)) {
            const Edge& e = d.edges()[i];
            const std::string& o = e.other(v);
            Int m = 0;
            switch (d.kind(o)) {
                case VertexKind::Arrow: m = d.multiplicity(o); break;
                case VertexKind::Boundary: m = 0; break;
                case VertexKind::Inner: m = induced_multiplicity(d, i, v); break;
            }
            if (m > 0) has_pos = true;
            if (m < 0) has_neg = true;
        }
        bool uniform = !(has_pos && has_neg);
        rep.uniform[v] = uniform;
        if (!uniform) rep.all_uniform = false;
    }
    return rep;
}

bool hat_characterization(const SpliceDiagram& d) {
    auto all_plus = [](const HatDecoration& h) {
        for (const auto& [v, s] : h.vertex_sign)
            if (s < 0) return false;
        for (const auto& [k, s] : h.root_sign)
            if (s < 0) return false;
        return true;
    };
    if (all_plus(hat_gamma(d))) return true;
    return all_plus(hat_gamma(invert(d)));
}

TightnessVerdict milnor_fg(const SpliceDiagram& d,
                           const std::vector<std::string>& g_components) {
    for (const auto& [id, m] : d.multiplicities())
        if (m <= 0) throw std::runtime_error("multiplicities must all be positive");
    SpliceDiagram w = d;
    std::set<std::string> g(g_components.begin(), g_components.end());
    for (const auto& id : g_components) {
        if (!w.has_vertex(id) || w.kind(id) != VertexKind::Arrow)
            throw std::runtime_error("not an arrowhead: " + id);
        w.set_multiplicity(id, -w.multiplicity(id));
    }
    return decide_tight(w, true);
}

}  // namespace splice
