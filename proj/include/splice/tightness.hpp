#ifndef SPLICE_TIGHTNESS_HPP
#define SPLICE_TIGHTNESS_HPP

#include <map>
#include <string>
#include <vector>

#include "splice/diagram.hpp"

namespace splice {

struct TightnessVerdict {
    bool tight = false;
    std::string sign;               // "+" or "-" when tight
    std::string witness_component;  // overtwisted witness
    std::string witness_reason;     // "negative-arrow" or "negative-cut-edge"
    bool inverted_for_witness = false;  // witness named after flipping all signs
};

// Preconditions: validated, fibered, ambient sphere established (assume_s3 or
// the cabling recognizer answers Yes). Throws std::runtime_error otherwise.
TightnessVerdict decide_tight(const SpliceDiagram& d, bool assume_s3);

// Per-piece diagnostic: sign uniformity of each Seifert piece's own
// multiplicities together with the induced multiplicities on its inner edges.
struct PieceReport {
    std::map<std::string, bool> uniform;  // per inner vertex
    bool all_uniform = true;
};
PieceReport per_piece(const SpliceDiagram& d);

// True iff the hat decoration of d or of its inversion is all-plus.
bool hat_characterization(const SpliceDiagram& d);

// Decision for the binding of arg(f g-bar): take an all-positive diagram,
// reverse the orientations of the g-components, decide tightness in S^3.
TightnessVerdict milnor_fg(const SpliceDiagram& d,
                           const std::vector<std::string>& g_components);

}  // namespace splice

#endif
