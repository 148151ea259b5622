#include "splice/linking.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <gmpxx.h>

#include "splice/seifert.hpp"

namespace splice {

namespace {

const std::string& anchor(const Leaf& l) { return l.id; }

// vertex path between two anchors (inclusive), by DFS on the tree
std::vector<std::string> tree_path(const SpliceDiagram& d, const std::string& from,
                                   const std::string& to) {
    std::map<std::string, std::string> parent;
    std::vector<std::string> stack{from};
    parent[from] = from;
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (v == to) break;
        for (auto i : d.incident(v)) {
            const std::string& o = d.edges()[i].other(v);
            if (!parent.count(o)) {
                parent[o] = v;
                stack.push_back(o);
            }
        }
    }
    if (!parent.count(to)) throw std::runtime_error("leaves not connected");
    std::vector<std::string> path;
    for (std::string v = to;; v = parent[v]) {
        path.push_back(v);
        if (v == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::size_t edge_between(const SpliceDiagram& d, const std::string& u,
                         const std::string& v) {
    for (auto i : d.incident(u))
        if (d.edges()[i].other(u) == v) return i;
    throw std::runtime_error("no edge between " + u + " and " + v);
}

void check_leaf(const SpliceDiagram& d, const Leaf& l) {
    if (!d.has_vertex(l.id)) throw std::runtime_error("unknown vertex: " + l.id);
    bool inner = d.kind(l.id) == VertexKind::Inner;
    if (l.kind == Leaf::Kind::Terminal && inner)
        throw std::runtime_error("terminal leaf names an inner vertex: " + l.id);
    if (l.kind != Leaf::Kind::Terminal && !inner)
        throw std::runtime_error("virtual leaf must sit at an inner vertex: " + l.id);
    if (l.kind == Leaf::Kind::EdgeEnd) {
        if (l.edge >= d.edges().size()) throw std::runtime_error("bad edge index");
        const Edge& e = d.edges()[l.edge];
        if (e.a != l.id && e.b != l.id)
            throw std::runtime_error("edge not incident to " + l.id);
    }
}

}  // namespace

Int linking_number(const SpliceDiagram& d, const Leaf& x, const Leaf& y) {
    if (x == y) throw std::runtime_error("linking number of a leaf with itself");
    check_leaf(d, x);
    check_leaf(d, y);
    if (d.is_link_pair()) return 1;

    auto path = tree_path(d, anchor(x), anchor(y));
    std::set<std::pair<std::string, std::size_t>> off;  // (vertex, edge) pairs to skip
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        std::size_t e = edge_between(d, path[i], path[i + 1]);
        off.insert({path[i], e});
        off.insert({path[i + 1], e});
    }
    if (x.kind == Leaf::Kind::EdgeEnd) off.insert({x.id, x.edge});
    if (y.kind == Leaf::Kind::EdgeEnd) off.insert({y.id, y.edge});

    mpz_class prod = 1;
    for (const auto& v : path) {
        if (d.kind(v) != VertexKind::Inner) continue;
        for (auto i : d.incident(v)) {
            if (off.count({v, i})) continue;
            prod *= static_cast<long>(d.edges()[i].weight_at(v));
        }
    }
    if (!prod.fits_slong_p()) throw std::runtime_error("linking number overflow");
    return prod.get_si();
}

// ---------------------------------------------------------------------------
// Homological oracle.
//
// Generators of the chain model: for each inner vertex v a fiber class H_v and
// one section class Q_{v,e} per incident edge. Relations: the section classes
// at a vertex sum to zero; every filled boundary torus kills its meridian
// a Q + b H; a spliced edge identifies meridian with longitude across the
// edge. The leaf x stays unfilled, so H_1 of its complement is Z generated by
// the meridian of x; the coefficient of [y] on that meridian is the linking
// number. Solved exactly over the rationals.

namespace {

struct Model {
    const SpliceDiagram& d;
    std::map<std::string, std::size_t> h_index;
    std::map<std::pair<std::string, std::size_t>, std::size_t> q_index;
    std::map<std::string, SeifertNodeData> nd;
    std::size_t ngens = 0;

    explicit Model(const SpliceDiagram& dd) : d(dd) {
        for (const auto& v : d.inner_vertices()) {
            h_index[v] = ngens++;
            for (auto e : d.incident(v)) q_index[{v, e}] = ngens++;
            std::vector<long long> a;
            for (auto w : d.weights_at(v)) a.push_back(w);
            nd.emplace(v, node_data(a));
        }
    }

    // local index of edge e among the incident edges of v
    std::size_t local(const std::string& v, std::size_t e) const {
        auto inc = d.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            if (inc[i] == e) return i;
        throw std::runtime_error("edge not incident");
    }

    std::vector<mpq_class> zero() const { return std::vector<mpq_class>(ngens); }

    // meridian class a Q + b H of the boundary torus at (v, e)
    std::vector<mpq_class> meridian(const std::string& v, std::size_t e) const {
        const auto& n = nd.at(v);
        std::size_t i = local(v, e);
        auto row = zero();
        row[q_index.at({v, e})] = mpq_class(n.a[i]);
        row[h_index.at(v)] = mpq_class(n.b[i]);
        return row;
    }

    // longitude class -sigma Q + delta H at (v, e)
    std::vector<mpq_class> longitude(const std::string& v, std::size_t e) const {
        const auto& n = nd.at(v);
        std::size_t i = local(v, e);
        auto row = zero();
        row[q_index.at({v, e})] = mpq_class(-n.sigma[i]);
        row[h_index.at(v)] = mpq_class(n.delta[i]);
        return row;
    }
};

std::vector<mpq_class> sub(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace

Int linking_oracle(const SpliceDiagram& d, const Leaf& x, const Leaf& y) {
    if (x == y) throw std::runtime_error("linking number of a leaf with itself");
    if (x.kind == Leaf::Kind::EdgeEnd || y.kind == Leaf::Kind::EdgeEnd)
        throw std::runtime_error("oracle handles terminal and phantom leaves only");
    check_leaf(d, x);
    check_leaf(d, y);
    if (d.is_link_pair()) return 1;

    // realize phantoms as weight-1 boundary leaves
    SpliceDiagram dd = d;
    Leaf xx = x, yy = y;
    if (x.kind == Leaf::Kind::Phantom) xx = Leaf::terminal(dd.add_bound(x.id, 1));
    if (y.kind == Leaf::Kind::Phantom) yy = Leaf::terminal(dd.add_bound(y.id, 1));

    Model m(dd);
    std::vector<std::vector<mpq_class>> rels;

    for (const auto& v : dd.inner_vertices()) {
        auto row = m.zero();
        for (auto e : dd.incident(v)) row[m.q_index.at({v, e})] = 1;
        rels.push_back(std::move(row));
    }
    std::vector<mpq_class> mer_x;
    for (std::size_t e = 0; e < dd.edges().size(); ++e) {
        const Edge& ed = dd.edges()[e];
        bool ia = dd.kind(ed.a) == VertexKind::Inner;
        bool ib = dd.kind(ed.b) == VertexKind::Inner;
        if (ia && ib) {
            rels.push_back(sub(m.meridian(ed.a, e), m.longitude(ed.b, e)));
            rels.push_back(sub(m.longitude(ed.a, e), m.meridian(ed.b, e)));
        } else {
            const std::string& node = ia ? ed.a : ed.b;
            const std::string& leaf = ia ? ed.b : ed.a;
            if (leaf == xx.id)
                mer_x = m.meridian(node, e);
            else
                rels.push_back(m.meridian(node, e));
        }
    }
    if (mer_x.empty()) throw std::runtime_error("leaf x not found");

    std::vector<mpq_class> cy;
    {
        auto inc = dd.incident(yy.id);
        const Edge& ed = dd.edges()[inc[0]];
        cy = m.longitude(ed.other(yy.id), inc[0]);
    }

    // solve  t * mer_x + sum_r c_r * rel_r = cy  over Q; t is the first column
    std::size_t ncols = 1 + rels.size();
    std::vector<std::vector<mpq_class>> M(m.ngens, std::vector<mpq_class>(ncols + 1));
    for (std::size_t g = 0; g < m.ngens; ++g) {
        M[g][0] = mer_x[g];
        for (std::size_t r = 0; r < rels.size(); ++r) M[g][1 + r] = rels[r][g];
        M[g][ncols] = cy[g];
    }

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.ngens; ++col) {
        std::size_t p = row;
        while (p < m.ngens && M[p][col] == 0) ++p;
        if (p == m.ngens) continue;
        std::swap(M[p], M[row]);
        mpq_class inv = 1 / M[row][col];
        for (auto& v : M[row]) v *= inv;
        for (std::size_t r2 = 0; r2 < m.ngens; ++r2) {
            if (r2 == row || M[r2][col] == 0) continue;
            mpq_class f = M[r2][col];
            for (std::size_t c2 = col; c2 <= ncols; ++c2) M[r2][c2] -= f * M[row][c2];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r2 = row; r2 < m.ngens; ++r2)
        if (M[r2][ncols] != 0) throw std::runtime_error("oracle: inconsistent system");

    mpq_class t = 0;
    bool found = false;
    for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2)
        if (pivot_col[r2] == 0) {
            t = M[r2][ncols];
            found = true;
        }
    if (!found) throw std::runtime_error("oracle: meridian class degenerate");
    if (t.get_den() != 1) throw std::runtime_error("oracle: non-integral linking number");
    if (!t.get_num().fits_slong_p()) throw std::runtime_error("oracle: overflow");
    return t.get_num().get_si();
}

Int fiber_degree(const SpliceDiagram& d, const std::string& v) {
    if (d.kind(v) != VertexKind::Inner) throw std::runtime_error("not an inner vertex: " + v);
    Int sum = 0;
    Leaf f = Leaf::phantom(v);
    for (const auto& w : d.arrows())
        sum += d.multiplicity(w) * linking_number(d, f, Leaf::terminal(w));
    return sum;
}

FiberednessReport is_fibered(const SpliceDiagram& d) {
    FiberednessReport rep;
    rep.fibered = true;
    if (d.is_link_pair() || d.is_lone_arrow()) return rep;
    for (const auto& v : d.inner_vertices()) {
        Int l = fiber_degree(d, v);
        rep.l_values[v] = l;
        if (l == 0) rep.fibered = false;
    }
    return rep;
}

}  // namespace splice
