#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "splice/diagram.hpp"

using namespace splice;

TEST_CASE("parse a node with terminals") {
    auto d = parse_diagram("node v;\nbound v:2;\nbound v:3;\narrow v:1 m=1;\n");
    CHECK(d.inner_vertices() == std::vector<std::string>{"v"});
    CHECK(d.degree("v") == 3);
    CHECK(d.arrows().size() == 1);
    CHECK(d.multiplicity(d.arrows()[0]) == 1);
    CHECK(d.weights_at("v") == std::vector<Int>{2, 3, 1});
    CHECK(validate(d).ok);
}

TEST_CASE("parse inner edges and comments") {
    auto d = parse_diagram(
        "# two pieces\n"
        "node u; node w;\n"
        "edge u:1 -- w:7;  # splice torus\n"
        "bound u:2; bound u:3; arrow w:2 m=-2;\n");
    CHECK(d.inner_vertices().size() == 2);
    CHECK(d.edges().size() == 4);
    CHECK(validate(d).ok);
}

TEST_CASE("degenerate forms") {
    auto lp = parse_diagram("link A <-> B m=(1,-1);");
    CHECK(lp.is_link_pair());
    CHECK(lp.multiplicity("A") == 1);
    CHECK(lp.multiplicity("B") == -1);
    CHECK(validate(lp).ok);

    auto la = parse_diagram("unknot K m=3;");
    CHECK(la.is_lone_arrow());
    CHECK(la.multiplicity("K") == 3);
    CHECK(validate(la).ok);
}

TEST_CASE("parse errors carry position") {
    try {
        parse_diagram("node v;\narrow v:1 m=0;\n");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_diagram("node v; node v;"), ParseError);
    CHECK_THROWS_AS(parse_diagram("bound v:2;"), ParseError);
    CHECK_THROWS_AS(parse_diagram("node v; bound v:x;"), ParseError);
    CHECK_THROWS_AS(parse_diagram("link A <-> B m=(1,1); node v;"), ParseError);
}

TEST_CASE("validation catches bad decorations") {
    SpliceDiagram d;
    d.add_node("v");
    d.add_bound("v", 2);
    d.add_bound("v", 4);  // not coprime
    auto rep = validate(d);
    CHECK(!rep.ok);
    bool coprime_hit = false;
    for (const auto& viol : rep.violations)
        if (viol.rule == "coprime") coprime_hit = true;
    CHECK(coprime_hit);

    SpliceDiagram iso;
    iso.add_node("v");
    CHECK(!validate(iso).ok);  // isolated inner vertex

    SpliceDiagram w0;
    w0.add_node("v");
    w0.add_bound("v", 0);
    CHECK(!validate(w0).ok);

    SpliceDiagram e;
    CHECK(!validate(e).ok);
}

TEST_CASE("dsl round trip is isomorphic on the corpus") {
    for (const auto& d : corpus::all()) {
        auto text = serialize_diagram(d, Format::Dsl);
        auto back = parse_diagram(text);
        CHECK(isomorphic(d, back));
        CHECK(validate(back).ok);
    }
}

TEST_CASE("json serialization matches the schema") {
    auto j = serialize_diagram(corpus::trefoil(), Format::Json);
    CHECK(j.find("\"vertices\"") != std::string::npos);
    CHECK(j.find("\"edges\"") != std::string::npos);
    CHECK(j.find("\"arrows\"") != std::string::npos);
    CHECK(j.find("\"wb\"") == std::string::npos);  // terminal ends carry no weight
}

TEST_CASE("dot serialization of a link pair") {
    auto t = serialize_diagram(corpus::hopf(1, -1), Format::Dot);
    CHECK(t.find("rarrow") != std::string::npos);
    CHECK(t.find("m=-1") != std::string::npos);
}

TEST_CASE("isomorphism ignores vertex names and statement order") {
    auto d1 = parse_diagram("node v; bound v:2; bound v:3; arrow v:1 m=1;");
    auto d2 = parse_diagram("node x; arrow x:1 m=1; bound x:3; bound x:2;");
    CHECK(isomorphic(d1, d2));
    auto d3 = parse_diagram("node x; arrow x:1 m=2; bound x:3; bound x:2;");
    CHECK(!isomorphic(d1, d3));
    auto d4 = parse_diagram("node x; arrow x:2 m=1; bound x:3; bound x:1;");
    CHECK(!isomorphic(d1, d4));
}

TEST_CASE("isomorphism is an equivalence relation on the corpus") {
    const auto& cs = corpus::all();
    for (std::size_t i = 0; i < cs.size(); i += 7) {
        CHECK(isomorphic(cs[i], cs[i]));
        for (std::size_t j = 0; j < cs.size(); j += 11) {
            bool ij = isomorphic(cs[i], cs[j]);
            CHECK(ij == isomorphic(cs[j], cs[i]));
            if (!ij) continue;
            for (std::size_t k = 0; k < cs.size(); k += 13)
                if (isomorphic(cs[j], cs[k])) CHECK(isomorphic(cs[i], cs[k]));
        }
    }
}
