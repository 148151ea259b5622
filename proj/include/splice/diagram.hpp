#ifndef SPLICE_DIAGRAM_HPP
#define SPLICE_DIAGRAM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace splice {

using Int = long long;

enum class VertexKind { Inner, Boundary, Arrow };

struct Vertex {
    std::string id;
    VertexKind kind;
};

// An edge of the tree. Root weights are stored only at inner endpoints;
// a weight of 0 means "no weight" (the endpoint is terminal).
struct Edge {
    std::string a;
    std::string b;
    Int wa = 0;
    Int wb = 0;

    const std::string& other(const std::string& v) const {
        return v == a ? b : a;
    }
    Int weight_at(const std::string& v) const { return v == a ? wa : wb; }
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int ln, int col)
        : std::runtime_error(msg), line(ln), column(col) {}
};

struct Violation {
    std::string rule;      // e.g. "tree", "weight-positive", "coprime"
    std::string location;  // vertex or edge id
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    void add(std::string rule, std::string loc, std::string msg) {
        ok = false;
        violations.push_back({std::move(rule), std::move(loc), std::move(msg)});
    }
};

// Decorated finite tree: inner vertices with edge-root weights, boundary
// vertices, arrowheads with non-zero multiplicities. Two degenerate forms
// are representable: the type-<-> diagram (one edge, two arrowheads, no
// inner vertex) and the lone-arrow diagram (one arrowhead, no edges).
class SpliceDiagram {
  public:
    SpliceDiagram() = default;

    // construction
    void add_node(const std::string& id);
    // attaches a fresh boundary vertex to node `at` with root weight w;
    // returns the generated boundary id ("<at>.b<n>")
    std::string add_bound(const std::string& at, Int w);
    // attaches a fresh arrowhead to node `at` with root weight w and
    // multiplicity m; returns the generated arrow id ("<at>.a<n>")
    std::string add_arrow(const std::string& at, Int w, Int m);
    void add_inner_edge(const std::string& a, Int wa, const std::string& b, Int wb);
    // the type-<-> diagram; must be the only content
    void make_link_pair(const std::string& a1, Int m1, const std::string& a2, Int m2);
    // the degenerate single-arrow (unknot) diagram
    void make_lone_arrow(const std::string& id, Int m);
    // attaches a terminal vertex with a caller-chosen id (used when copying
    // subtrees, where generated ids must be preserved); m ignored unless Arrow
    void add_terminal_with_id(const std::string& id, VertexKind k,
                              const std::string& at, Int w, Int m = 0);

    // access
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::map<std::string, Int>& multiplicities() const { return mult_; }

    bool has_vertex(const std::string& id) const;
    VertexKind kind(const std::string& id) const;
    Int multiplicity(const std::string& arrow_id) const;
    void set_multiplicity(const std::string& arrow_id, Int m);
    std::vector<std::size_t> incident(const std::string& id) const;
    std::size_t degree(const std::string& id) const;
    std::vector<std::string> inner_vertices() const;
    std::vector<std::string> arrows() const;

    bool is_link_pair() const;   // type <->
    bool is_lone_arrow() const;  // single arrowhead, no edges
    bool empty() const { return vertices_.empty(); }

    // weights at inner vertex v, one per incident edge (edge order)
    std::vector<Int> weights_at(const std::string& v) const;

  private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, Int> mult_;
    std::map<std::string, int> gen_counter_;

    void require_new(const std::string& id);
    void require_node(const std::string& id) const;
    friend SpliceDiagram parse_diagram(const std::string&);
};

enum class Format { Dsl, Json, Dot };

SpliceDiagram parse_diagram(const std::string& text);
std::string serialize_diagram(const SpliceDiagram& d, Format fmt);
ValidationReport validate(const SpliceDiagram& d);

// decoration-preserving tree isomorphism, decided via canonical form
std::string canonical_form(const SpliceDiagram& d);
bool isomorphic(const SpliceDiagram& d1, const SpliceDiagram& d2);

Int gcd_int(Int a, Int b);

}  // namespace splice

#endif
