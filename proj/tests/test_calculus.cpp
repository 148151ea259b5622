#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "splice/calculus.hpp"
#include "splice/linking.hpp"

using namespace splice;

static std::size_t find_edge(const SpliceDiagram& d, const std::string& a,
                             const std::string& b) {
    for (std::size_t i = 0; i < d.edges().size(); ++i) {
        const Edge& e = d.edges()[i];
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return i;
    }
    throw std::runtime_error("no such edge");
}

TEST_CASE("induced multiplicity sums far-side linking") {
    auto d = corpus::cable2();
    std::size_t e = find_edge(d, "u", "w");
    // u's side sees the arrow at w through weight 2 at w
    CHECK(induced_multiplicity(d, e, "u") == 2);
    // w's side sees no arrows beyond u
    CHECK(induced_multiplicity(d, e, "w") == 0);
}

TEST_CASE("induced multiplicity weights by m") {
    auto d = parse_diagram(
        "node u; node w;\n"
        "edge u:1 -- w:5;\n"
        "arrow u:2 m=1; bound u:3;\n"
        "arrow w:2 m=-3; arrow w:3 m=2;\n");
    std::size_t e = find_edge(d, "u", "w");
    // from u: -3 * 3 + 2 * 2
    CHECK(induced_multiplicity(d, e, "u") == -5);
    // from w: 1 * 3
    CHECK(induced_multiplicity(d, e, "w") == 3);
}

TEST_CASE("cut produces two decorated halves") {
    auto d = corpus::cable2();
    auto res = cut(d, find_edge(d, "u", "w"));
    CHECK(res.left_mult == 2);
    CHECK(res.right_mult == 0);
    CHECK(validate(res.left).ok);
    CHECK(validate(res.right).ok);
    // nonzero induced multiplicity becomes an arrowhead, zero a boundary vertex
    CHECK(res.left.kind(res.left_new) == VertexKind::Arrow);
    CHECK(res.left.multiplicity(res.left_new) == 2);
    CHECK(res.right.kind(res.right_new) == VertexKind::Boundary);
    CHECK(isomorphic(res.left, parse_diagram("node u; bound u:2; bound u:3; arrow u:1 m=2;")));
    CHECK(isomorphic(res.right, parse_diagram("node w; bound w:7; bound w:2; arrow w:1 m=1;")));
}

TEST_CASE("splice fuses arrow edges keeping root weights") {
    auto d1 = parse_diagram("node u; bound u:2; bound u:3; arrow u:1 m=1;");
    auto d2 = parse_diagram("node w; bound w:2; arrow w:1 m=1; arrow w:7 m=1;");
    auto s = splice::splice(d1, d1.arrows()[0], d2, "w.a2");
    CHECK(validate(s).ok);
    CHECK(isomorphic(s, corpus::cable2()));
    CHECK_THROWS(splice::splice(d1, "u.b1", d2, "w.a2"));  // not an arrowhead
}

TEST_CASE("splice renames colliding ids") {
    auto d1 = parse_diagram("node v; bound v:2; bound v:3; arrow v:1 m=1;");
    auto s = splice::splice(d1, d1.arrows()[0], d1, d1.arrows()[0]);
    CHECK(validate(s).ok);
    CHECK(s.inner_vertices().size() == 2);
}

TEST_CASE("cut then splice is the identity up to isomorphism") {
    for (const auto& d : corpus::all()) {
        if (d.is_link_pair() || d.is_lone_arrow()) continue;
        for (std::size_t e = 0; e < d.edges().size(); ++e) {
            const Edge& ed = d.edges()[e];
            if (d.kind(ed.a) != VertexKind::Inner || d.kind(ed.b) != VertexKind::Inner)
                continue;
            auto res = cut(d, e);
            if (res.left_mult == 0 || res.right_mult == 0) continue;  // boundary stubs
            auto back = splice::splice(res.left, res.left_new, res.right, res.right_new);
            CHECK(isomorphic(back, d));
        }
    }
}

TEST_CASE("cut preserves linking numbers between surviving leaves") {
    auto d = corpus::cable2();
    std::size_t e = find_edge(d, "u", "w");
    auto res = cut(d, e);
    // w-side: arrow vs its own boundary leaf survives the cut
    auto arrow = d.arrows()[0];
    Int before = linking_number(d, Leaf::terminal(arrow), Leaf::terminal("w.b1"));
    Int after = linking_number(res.right, Leaf::terminal(arrow), Leaf::terminal("w.b1"));
    CHECK(before == after);
}

TEST_CASE("hat decoration of the trefoil is all plus") {
    auto d = corpus::trefoil();
    auto h = hat_gamma(d);
    CHECK(h.vertex_sign.at("v") == 1);
    for (const auto& [ve, s] : h.root_sign) CHECK(s == 1);
}

TEST_CASE("hat decoration reflects multiplicity and fiber signs") {
    auto d = parse_diagram("node v; arrow v:2 m=1; arrow v:3 m=-1; bound v:1;");
    auto h = hat_gamma(d);  // l = 3 - 2 = 1 > 0
    CHECK(h.vertex_sign.at("v") == 1);
    std::map<std::string, int> by_leaf;
    for (const auto& [ve, s] : h.root_sign)
        by_leaf[d.edges()[ve.second].other("v")] = s;
    CHECK(by_leaf.at("v.a1") == 1);
    CHECK(by_leaf.at("v.a2") == -1);
    CHECK(by_leaf.at("v.b1") == 1);  // boundary roots count as positive

    // all-negative: vertex flips
    auto n = parse_diagram("node v; arrow v:2 m=-1; arrow v:3 m=-1; bound v:1;");
    CHECK(hat_gamma(n).vertex_sign.at("v") == -1);
}

TEST_CASE("hat inner-edge roots use induced multiplicities") {
    auto d = corpus::cable2();
    auto h = hat_gamma(d);
    std::size_t e = find_edge(d, "u", "w");
    CHECK(h.root_sign.at({"u", e}) == 1);
    CHECK(h.root_sign.at({"w", e}) == 1);  // induced 0 counts as positive
}

TEST_CASE("hat requires a fibered non-degenerate diagram") {
    CHECK_THROWS(hat_gamma(corpus::hopf(1, 1)));
    auto z = parse_diagram("node v; arrow v:2 m=2; arrow v:3 m=-3; bound v:1;");
    CHECK_THROWS(hat_gamma(z));
}

TEST_CASE("hat dot output carries sign labels") {
    auto d = parse_diagram("node v; arrow v:2 m=1; arrow v:3 m=-1; bound v:1;");
    auto t = hat_dot(d, hat_gamma(d));
    CHECK(t.find("\xE2\x8A\x95") != std::string::npos);
    CHECK(t.find("-") != std::string::npos);
}
