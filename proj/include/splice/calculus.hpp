#ifndef SPLICE_CALCULUS_HPP
#define SPLICE_CALCULUS_HPP

#include <map>
#include <string>

#include "splice/diagram.hpp"
#include "splice/linking.hpp"

namespace splice {

// Multiplicity of the virtual component created on the `side` endpoint's
// piece when cutting inner edge e: the side keeps its half of the tree and
// gains an arrowhead whose multiplicity is the total linking of the far
// side's components with the cut torus core.
Int induced_multiplicity(const SpliceDiagram& d, std::size_t e, const std::string& side);

struct CutResult {
    SpliceDiagram left;         // piece containing edge endpoint a
    SpliceDiagram right;        // piece containing edge endpoint b
    std::string left_new;       // id of the new terminal vertex in left
    std::string right_new;
    Int left_mult = 0;          // induced multiplicities; 0 = empty component,
    Int right_mult = 0;         // recorded here since arrowheads need m != 0
};

CutResult cut(const SpliceDiagram& d, std::size_t e);

// Fuse the arrow edges of x1 in d1 and x2 in d2 into one inner edge,
// exchanging meridian and longitude; the arrow multiplicities are discarded.
SpliceDiagram splice(const SpliceDiagram& d1, const std::string& x1,
                     const SpliceDiagram& d2, const std::string& x2);

struct HatDecoration {
    std::map<std::string, int> vertex_sign;                    // +1 / -1
    std::map<std::pair<std::string, std::size_t>, int> root_sign;  // (vertex, edge)
};

// Requires a fibered diagram that is not of type <->.
HatDecoration hat_gamma(const SpliceDiagram& d);

// DOT rendering of the diagram with hat signs on vertices and edge roots.
std::string hat_dot(const SpliceDiagram& d, const HatDecoration& hat);

}  // namespace splice

#endif
