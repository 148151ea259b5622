#include "splice/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace splice {

Int gcd_int(Int a, Int b) { return std::gcd(a, b); }

void SpliceDiagram::require_new(const std::string& id) {
    if (has_vertex(id)) throw std::runtime_error("duplicate vertex id: " + id);
}

void SpliceDiagram::require_node(const std::string& id) const {
    if (!has_vertex(id) || kind(id) != VertexKind::Inner)
        throw std::runtime_error("not an inner vertex: " + id);
}

void SpliceDiagram::add_node(const std::string& id) {
    require_new(id);
    vertices_.push_back({id, VertexKind::Inner});
}

std::string SpliceDiagram::add_bound(const std::string& at, Int w) {
    require_node(at);
    std::string id = at + ".b" + std::to_string(++gen_counter_[at + "/b"]);
    vertices_.push_back({id, VertexKind::Boundary});
    edges_.push_back({at, id, w, 0});
    return id;
}

std::string SpliceDiagram::add_arrow(const std::string& at, Int w, Int m) {
    require_node(at);
    if (m == 0) throw std::runtime_error("zero multiplicity at " + at);
    std::string id = at + ".a" + std::to_string(++gen_counter_[at + "/a"]);
    vertices_.push_back({id, VertexKind::Arrow});
    edges_.push_back({at, id, w, 0});
    mult_[id] = m;
    return id;
}

void SpliceDiagram::add_inner_edge(const std::string& a, Int wa,
                                   const std::string& b, Int wb) {
    require_node(a);
    require_node(b);
    edges_.push_back({a, b, wa, wb});
}

void SpliceDiagram::make_link_pair(const std::string& a1, Int m1,
                                   const std::string& a2, Int m2) {
    if (!vertices_.empty()) throw std::runtime_error("link must be the only statement");
    if (m1 == 0 || m2 == 0) throw std::runtime_error("zero multiplicity");
    vertices_.push_back({a1, VertexKind::Arrow});
    vertices_.push_back({a2, VertexKind::Arrow});
    edges_.push_back({a1, a2, 0, 0});
    mult_[a1] = m1;
    mult_[a2] = m2;
}

void SpliceDiagram::make_lone_arrow(const std::string& id, Int m) {
    if (!vertices_.empty()) throw std::runtime_error("unknot must be the only statement");
    if (m == 0) throw std::runtime_error("zero multiplicity");
    vertices_.push_back({id, VertexKind::Arrow});
    mult_[id] = m;
}

void SpliceDiagram::add_terminal_with_id(const std::string& id, VertexKind k,
                                         const std::string& at, Int w, Int m) {
    require_new(id);
    require_node(at);
    if (k == VertexKind::Inner) throw std::runtime_error("terminal kind expected");
    vertices_.push_back({id, k});
    edges_.push_back({at, id, w, 0});
    if (k == VertexKind::Arrow) {
        if (m == 0) throw std::runtime_error("zero multiplicity");
        mult_[id] = m;
    }
}

bool SpliceDiagram::has_vertex(const std::string& id) const {
    return std::any_of(vertices_.begin(), vertices_.end(),
                       [&](const Vertex& v) { return v.id == id; });
}

VertexKind SpliceDiagram::kind(const std::string& id) const {
    for (const auto& v : vertices_)
        if (v.id == id) return v.kind;
    throw std::runtime_error("unknown vertex: " + id);
}

Int SpliceDiagram::multiplicity(const std::string& arrow_id) const {
    auto it = mult_.find(arrow_id);
    if (it == mult_.end()) throw std::runtime_error("not an arrowhead: " + arrow_id);
    return it->second;
}

void SpliceDiagram::set_multiplicity(const std::string& arrow_id, Int m) {
    if (m == 0) throw std::runtime_error("zero multiplicity");
    if (!mult_.count(arrow_id)) throw std::runtime_error("not an arrowhead: " + arrow_id);
    mult_[arrow_id] = m;
}

std::vector<std::size_t> SpliceDiagram::incident(const std::string& id) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].a == id || edges_[i].b == id) out.push_back(i);
    return out;
}

std::size_t SpliceDiagram::degree(const std::string& id) const {
    return incident(id).size();
}

std::vector<std::string> SpliceDiagram::inner_vertices() const {
    std::vector<std::string> out;
    for (const auto& v : vertices_)
        if (v.kind == VertexKind::Inner) out.push_back(v.id);
    return out;
}

std::vector<std::string> SpliceDiagram::arrows() const {
    std::vector<std::string> out;
    for (const auto& v : vertices_)
        if (v.kind == VertexKind::Arrow) out.push_back(v.id);
    return out;
}

bool SpliceDiagram::is_link_pair() const {
    return vertices_.size() == 2 && edges_.size() == 1 &&
           vertices_[0].kind == VertexKind::Arrow &&
           vertices_[1].kind == VertexKind::Arrow;
}

bool SpliceDiagram::is_lone_arrow() const {
    return vertices_.size() == 1 && edges_.empty() &&
           vertices_[0].kind == VertexKind::Arrow;
}

std::vector<Int> SpliceDiagram::weights_at(const std::string& v) const {
    std::vector<Int> w;
    for (auto i : incident(v)) w.push_back(edges_[i].weight_at(v));
    return w;
}

// ---------------------------------------------------------------------------
// DSL parser

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') { ++line; col = 1; }
            else ++col;
            ++pos;
        }
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool eof() const { return pos >= text.size(); }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line, col);
    }

    std::string ident() {
        skip_ws();
        std::string s;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                          peek() == '_' || peek() == '.' || peek() == '\'')) {
            s += peek();
            advance();
        }
        if (s.empty()) fail("expected identifier");
        return s;
    }

    Int integer(bool allow_sign) {
        skip_ws();
        std::string s;
        if (allow_sign && (peek() == '-' || peek() == '+')) { s += peek(); advance(); }
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            s += peek();
            advance();
        }
        if (s.empty() || s == "-" || s == "+") fail("expected integer");
        return std::stoll(s);
    }

    void expect(const std::string& tok) {
        skip_ws();
        for (char c : tok) {
            if (peek() != c) fail("expected '" + tok + "'");
            advance();
        }
    }

    bool try_expect(const std::string& tok) {
        skip_ws();
        std::size_t save = pos;
        int sl = line, sc = col;
        for (char c : tok) {
            if (peek() != c) {
                pos = save; line = sl; col = sc;
                return false;
            }
            advance();
        }
        return true;
    }
};

}  // namespace

SpliceDiagram parse_diagram(const std::string& text) {
    SpliceDiagram d;
    Cursor cur{text};
    bool saw_link = false;
    while (true) {
        cur.skip_ws();
        if (cur.eof()) break;
        if (saw_link) cur.fail("link must be the only statement");
        int sl = cur.line, sc = cur.col;
        std::string kw = cur.ident();
        try {
            if (kw == "node") {
                d.add_node(cur.ident());
            } else if (kw == "bound") {
                std::string v = cur.ident();
                cur.expect(":");
                Int w = cur.integer(false);
                d.add_bound(v, w);
            } else if (kw == "arrow") {
                std::string v = cur.ident();
                cur.expect(":");
                Int w = cur.integer(false);
                cur.expect("m=");
                Int m = cur.integer(true);
                if (m == 0) throw ParseError("zero multiplicity", sl, sc);
                d.add_arrow(v, w, m);
            } else if (kw == "edge") {
                std::string a = cur.ident();
                cur.expect(":");
                Int wa = cur.integer(false);
                cur.expect("--");
                std::string b = cur.ident();
                cur.expect(":");
                Int wb = cur.integer(false);
                d.add_inner_edge(a, wa, b, wb);
            } else if (kw == "link") {
                if (!d.empty()) cur.fail("link must be the only statement");
                std::string a1 = cur.ident();
                cur.expect("<->");
                std::string a2 = cur.ident();
                cur.expect("m=(");
                Int m1 = cur.integer(true);
                cur.expect(",");
                Int m2 = cur.integer(true);
                cur.expect(")");
                d.make_link_pair(a1, m1, a2, m2);
                saw_link = true;
            } else if (kw == "unknot") {
                if (!d.empty()) cur.fail("unknot must be the only statement");
                std::string id = cur.ident();
                cur.expect("m=");
                Int m = cur.integer(true);
                d.make_lone_arrow(id, m);
            } else {
                throw ParseError("unknown statement '" + kw + "'", sl, sc);
            }
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const ParseError*>(&e)) throw;
            throw ParseError(e.what(), sl, sc);
        }
        cur.expect(";");
    }
    return d;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string dsl_of(const SpliceDiagram& d) {
    std::ostringstream os;
    if (d.is_link_pair()) {
        const auto& e = d.edges()[0];
        os << "link " << e.a << " <-> " << e.b << " m=(" << d.multiplicity(e.a)
           << "," << d.multiplicity(e.b) << ");\n";
        return os.str();
    }
    if (d.is_lone_arrow()) {
        const auto& v = d.vertices()[0];
        os << "unknot " << v.id << " m=" << d.multiplicity(v.id) << ";\n";
        return os.str();
    }
    for (const auto& v : d.vertices())
        if (v.kind == VertexKind::Inner) os << "node " << v.id << ";\n";
    for (const auto& e : d.edges()) {
        VertexKind ka = d.kind(e.a), kb = d.kind(e.b);
        if (ka == VertexKind::Inner && kb == VertexKind::Inner) {
            os << "edge " << e.a << ":" << e.wa << " -- " << e.b << ":" << e.wb << ";\n";
        } else {
            // exactly one inner endpoint
            const std::string& node = ka == VertexKind::Inner ? e.a : e.b;
            const std::string& leaf = ka == VertexKind::Inner ? e.b : e.a;
            Int w = e.weight_at(node);
            if (d.kind(leaf) == VertexKind::Boundary)
                os << "bound " << node << ":" << w << ";\n";
            else
                os << "arrow " << node << ":" << w << " m=" << d.multiplicity(leaf) << ";\n";
        }
    }
    return os.str();
}

std::string json_of(const SpliceDiagram& d) {
    // minimal hand-rolled writer; schema:
    // {"vertices":[{"id","kind"}],"edges":[{"a","b","wa","wb"}],"arrows":[{"at","w","m"}]}
    auto kind_str = [](VertexKind k) {
        switch (k) {
            case VertexKind::Inner: return "inner";
            case VertexKind::Boundary: return "boundary";
            default: return "arrow";
        }
    };
    std::ostringstream os;
    os << "{\"vertices\":[";
    bool first = true;
    for (const auto& v : d.vertices()) {
        if (!first) os << ",";
        first = false;
        os << "{\"id\":\"" << v.id << "\",\"kind\":\"" << kind_str(v.kind) << "\"}";
    }
    os << "],\"edges\":[";
    first = true;
    for (const auto& e : d.edges()) {
        if (d.kind(e.a) != VertexKind::Inner && d.kind(e.b) != VertexKind::Inner) {
            // type <-> edge
            if (!first) os << ",";
            first = false;
            os << "{\"a\":\"" << e.a << "\",\"b\":\"" << e.b << "\"}";
            continue;
        }
        if (d.kind(e.b) == VertexKind::Arrow || d.kind(e.a) == VertexKind::Arrow) continue;
        if (!first) os << ",";
        first = false;
        os << "{\"a\":\"" << e.a << "\",\"b\":\"" << e.b << "\"";
        if (e.wa) os << ",\"wa\":" << e.wa;
        if (e.wb) os << ",\"wb\":" << e.wb;
        os << "}";
    }
    os << "],\"arrows\":[";
    first = true;
    for (const auto& v : d.vertices()) {
        if (v.kind != VertexKind::Arrow) continue;
        if (!first) os << ",";
        first = false;
        os << "{\"at\":\"" << v.id << "\"";
        auto inc = d.incident(v.id);
        if (!inc.empty()) {
            const auto& e = d.edges()[inc[0]];
            const std::string& node = e.other(v.id);
            if (d.has_vertex(node) && d.kind(node) == VertexKind::Inner)
                os << ",\"w\":" << e.weight_at(node);
        }
        os << ",\"m\":" << d.multiplicity(v.id) << "}";
    }
    os << "]}";
    return os.str();
}

std::string dot_of(const SpliceDiagram& d) {
    std::ostringstream os;
    os << "graph splice {\n";
    for (const auto& v : d.vertices()) {
        os << "  \"" << v.id << "\" [";
        switch (v.kind) {
            case VertexKind::Inner:
                os << "shape=circle,label=\"" << v.id << "\"";
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
    for (const auto& e : d.edges()) {
        os << "  \"" << e.a << "\" -- \"" << e.b << "\"";
        std::string lbl;
        if (e.wa) lbl += e.a + ":" + std::to_string(e.wa);
        if (e.wb) lbl += (lbl.empty() ? "" : " ") + e.b + ":" + std::to_string(e.wb);
        if (!lbl.empty()) os << " [label=\"" << lbl << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace

std::string serialize_diagram(const SpliceDiagram& d, Format fmt) {
    switch (fmt) {
        case Format::Dsl: return dsl_of(d);
        case Format::Json: return json_of(d);
        case Format::Dot: return dot_of(d);
    }
    throw std::runtime_error("unknown format");
}

// ---------------------------------------------------------------------------
// validation

ValidationReport validate(const SpliceDiagram& d) {
    ValidationReport rep;
    if (d.empty()) {
        rep.add("nonempty", "-", "diagram has no vertices");
        return rep;
    }
    if (d.is_lone_arrow()) return rep;
    if (d.is_link_pair()) {
        for (const auto& [id, m] : d.multiplicities())
            if (m == 0) rep.add("mult-nonzero", id, "zero multiplicity");
        return rep;
    }

    // tree check: connected and |E| = |V| - 1
    if (d.edges().size() + 1 != d.vertices().size())
        rep.add("tree", "-", "edge count does not match a tree");
    std::set<std::string> seen;
    std::vector<std::string> stack{d.vertices()[0].id};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (auto i : d.incident(v)) stack.push_back(d.edges()[i].other(v));
    }
    if (seen.size() != d.vertices().size())
        rep.add("tree", "-", "diagram is not connected");

    for (const auto& v : d.vertices()) {
        std::size_t deg = d.degree(v.id);
        if (v.kind == VertexKind::Inner) {
            if (deg == 0) rep.add("tree", v.id, "isolated inner vertex");
        } else if (deg != 1) {
            rep.add("terminal", v.id, "terminal vertex with degree != 1");
        }
    }

    for (const auto& e : d.edges()) {
        for (const std::string* end : {&e.a, &e.b}) {
            bool inner = d.has_vertex(*end) && d.kind(*end) == VertexKind::Inner;
            Int w = e.weight_at(*end);
            if (inner && w < 1)
                rep.add("weight-positive", *end, "non-positive weight " + std::to_string(w));
            if (!inner && w != 0)
                rep.add("weight-placement", *end, "weight on a terminal endpoint");
        }
    }

    for (const auto& v : d.inner_vertices()) {
        auto w = d.weights_at(v);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (w[i] >= 1 && w[j] >= 1 && gcd_int(w[i], w[j]) != 1) {
                    rep.add("coprime", v,
                            "weights not pairwise coprime: " + std::to_string(w[i]) +
                                "," + std::to_string(w[j]));
                    i = w.size();  // one report per vertex
                    break;
                }
    }

    for (const auto& [id, m] : d.multiplicities())
        if (m == 0) rep.add("mult-nonzero", id, "zero multiplicity");

    return rep;
}

// ---------------------------------------------------------------------------
// canonical form / isomorphism
//
// AHU-style rooted canonical string; the diagram is canonized from its tree
// center (or both endpoints of the central edge) and the lexicographically
// smallest string wins. Child entries sort by (root weight toward child,
// subtree string, multiplicity).

namespace {

std::string canon_rooted(const SpliceDiagram& d, const std::string& v,
                         std::size_t from_edge) {
    std::string label;
    switch (d.kind(v)) {
        case VertexKind::Inner: label = "N"; break;
        case VertexKind::Boundary: label = "B"; break;
        case VertexKind::Arrow:
            label = "A" + std::to_string(d.multiplicity(v));
            break;
    }
    std::vector<std::string> kids;
    for (auto i : d.incident(v)) {
        if (i == from_edge) continue;
        const Edge& e = d.edges()[i];
        std::string child = e.other(v);
        std::string entry = "w" + std::to_string(e.weight_at(v)) + "[" +
                            canon_rooted(d, child, i) + "]";
        kids.push_back(entry);
    }
    std::sort(kids.begin(), kids.end());
    for (auto& k : kids) label += k;
    return label;
}

}  // namespace

std::string canonical_form(const SpliceDiagram& d) {
    if (d.empty()) return "";
    if (d.is_lone_arrow())
        return "A" + std::to_string(d.multiplicity(d.vertices()[0].id));
    // find tree center by peeling leaves
    std::map<std::string, int> deg;
    for (const auto& v : d.vertices()) deg[v.id] = (int)d.degree(v.id);
    std::set<std::string> alive;
    for (const auto& v : d.vertices()) alive.insert(v.id);
    while (alive.size() > 2) {
        std::vector<std::string> peel;
        for (const auto& v : alive)
            if (deg[v] <= 1) peel.push_back(v);
        for (const auto& v : peel) {
            alive.erase(v);
            for (auto i : d.incident(v)) {
                const std::string& o = d.edges()[i].other(v);
                if (alive.count(o)) --deg[o];
            }
        }
        if (peel.empty()) break;  // cyclic input; canonical form still deterministic
    }
    std::string best;
    constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);
    for (const auto& c : alive) {
        std::string s = canon_rooted(d, c, kNoEdge);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

bool isomorphic(const SpliceDiagram& d1, const SpliceDiagram& d2) {
    return canonical_form(d1) == canonical_form(d2);
}

}  // namespace splice
