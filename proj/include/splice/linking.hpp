#ifndef SPLICE_LINKING_HPP
#define SPLICE_LINKING_HPP

#include <map>
#include <string>

#include "splice/diagram.hpp"

namespace splice {

// A leaf for linking-number queries.
//  Terminal: an arrowhead or boundary vertex, identified by id.
//  Phantom:  a virtual Seifert fiber at inner vertex `id`, attached by a
//            weight-1 edge (the typical fiber H of the piece).
//  EdgeEnd:  a virtual component replacing edge `edge` at inner vertex `id`,
//            as produced by cutting the edge on the far side. The edge itself
//            counts as lying on any path out of `id`.
struct Leaf {
    enum class Kind { Terminal, Phantom, EdgeEnd };
    Kind kind;
    std::string id;
    std::size_t edge = static_cast<std::size_t>(-1);

    static Leaf terminal(std::string v) { return {Kind::Terminal, std::move(v), static_cast<std::size_t>(-1)}; }
    static Leaf phantom(std::string v) { return {Kind::Phantom, std::move(v), static_cast<std::size_t>(-1)}; }
    static Leaf edge_end(std::string v, std::size_t e) { return {Kind::EdgeEnd, std::move(v), e}; }

    bool operator==(const Leaf& o) const {
        return kind == o.kind && id == o.id && edge == o.edge;
    }
};

// Path-product rule: product over vertices on the tree path of the weights on
// incident edges off the path.
Int linking_number(const SpliceDiagram& d, const Leaf& x, const Leaf& y);

// Independent homological computation: the class of y in the first homology
// of the complement of x, expressed in meridians of x. Terminal and Phantom
// leaves only.
Int linking_oracle(const SpliceDiagram& d, const Leaf& x, const Leaf& y);

// l_v: degree of the Seifert fiber at v against the fiber surfaces,
// sum over arrowheads w of m_w * lk(fiber at v, w).
Int fiber_degree(const SpliceDiagram& d, const std::string& v);

struct FiberednessReport {
    bool fibered = false;
    std::map<std::string, Int> l_values;  // per inner vertex
};

FiberednessReport is_fibered(const SpliceDiagram& d);

}  // namespace splice

#endif
