#ifndef SPLICE_NORMALIZE_HPP
#define SPLICE_NORMALIZE_HPP

#include <string>
#include <vector>

#include "splice/diagram.hpp"

namespace splice {

struct MoveRecord {
    std::string move;      // "3", "6", "invert", "collapse"
    std::string location;  // human-readable edge/vertex description
    std::string before;    // hash of canonical form
    std::string after;
};

using MoveTrace = std::vector<MoveRecord>;

// removes a weight-1 edge to a boundary vertex; may delete the inner vertex
// and fuse its remaining pair of edges
SpliceDiagram apply_move3(const SpliceDiagram& d, std::size_t e);

// merges the endpoints of an inner edge when a0 * a0' equals the product of
// all the other weights at the two endpoints
SpliceDiagram apply_move6(const SpliceDiagram& d, std::size_t e);

// greedy deterministic reduction by moves 3 and 6 (plus the collapse of a
// weight-(1,1) two-arrow node to the two-arrowhead degenerate form)
std::pair<SpliceDiagram, MoveTrace> minimize(const SpliceDiagram& d);

SpliceDiagram invert(const SpliceDiagram& d);

bool is_type_arrow_arrow(const SpliceDiagram& d);

enum class S3Answer { Yes, Unknown };

// sufficient recognizer: peels vertices that look like cabling/summing stages
// (at most one inner edge, at most two weights > 1); never answers "No"
S3Answer check_s3_cabling(const SpliceDiagram& d);

std::string diagram_hash(const SpliceDiagram& d);

}  // namespace splice

#endif
