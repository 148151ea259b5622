#ifndef SPLICE_CONTACT_HPP
#define SPLICE_CONTACT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "splice/diagram.hpp"
#include "splice/seifert.hpp"

namespace splice {

// Characteristic curve r -> (-h1(r), h2(r)) of a contact form on a solid
// torus or splice collar, stored in polar Hermite form: theta(r) strictly
// decreasing (clockwise rotation is the contact condition) and log-radius
// interpolated alongside. Knots carry value and derivative.
struct TorusCurve {
    std::string label;
    std::string kind;  // "torus", "collar", "model"
    int m_sign = 1;    // start convention at the core: (-c, r^2) vs (c, -r^2)
    bool degenerate = false;  // zero-length (constant) curve
    std::vector<double> rk;       // knot parameters, increasing
    std::vector<double> theta, dtheta;
    std::vector<double> lrho, dlrho;

    std::pair<double, double> eval(double r) const;   // (x, y)
    std::pair<double, double> deriv(double r) const;  // (x', y')
    double theta_at(double r) const;
    double r_begin() const { return rk.front(); }
    double r_end() const { return rk.back(); }
};

struct ResidueSelection {
    std::vector<mpq_class> R;
    mpq_class eps_prime;
};

// Deterministic residues: R1 = -b1/a1 + 1/A - eps'; for i >= 2 the choice is
// -bi/ai + 1 when bi/ai <= 0 and the midpoint -bi/(2 ai) when bi/ai > 0.
ResidueSelection residues(const SeifertNodeData& nd, const mpq_class& eps_prime);

struct BoundaryTorusData {
    mpq_class h1, h2;  // one-form values at r = 1; the curve point is (-h1, h2)
    mpq_class U, V;    // fiber-surface normal (TW variant; 0/1 placeholder else)
    mpq_class c;       // TW constant
};

struct BoundaryOneFormData {
    std::vector<BoundaryTorusData> torus;
    mpq_class R;    // TW scale
    mpq_class eps;  // h11/h12 on torus 1 (Seifert variant)
};

BoundaryOneFormData seifert_boundary_data(const SeifertNodeData& nd,
                                          const ResidueSelection& rs);

// Lemma-style Thurston-Winkelnkemper boundary data for one piece with weights
// a and per-torus multiplicities m (index 0 = torus 1).
BoundaryOneFormData tw_boundary_data(const std::vector<Int>& a,
                                     const std::vector<Int>& m,
                                     const std::vector<mpq_class>& c,
                                     const mpq_class& R);

// Curve from the model start at the core out to the boundary point.
TorusCurve extend_into_torus(std::pair<double, double> boundary_point, int m_sign,
                             const std::string& label = "torus");

// Clockwise monotone collar between two boundary points. Throws when pB is
// ahead of pA in angle; equal angles give a constant (degenerate) curve after
// radial rescale.
TorusCurve glue_boundary_curves(std::pair<double, double> pA,
                                std::pair<double, double> pB,
                                std::pair<double, double> fiber_normal = {0, 0},
                                const std::string& label = "collar");

struct ContactCheck {
    double min_contact = 0;     // min of h1 h2' - h2 h1' over the grid
    bool monotone = true;       // tangent rotates one way
    double arg_min = 0, arg_max = 0;
    bool degenerate = false;
};

ContactCheck verify_contact(const TorusCurve& tc, int grid = 1000);

// Smallest r with h2 = 0 and -h1 away from zero: a half Lutz twist marker.
std::optional<double> detect_lutz(const TorusCurve& tc, int grid = 1000);

enum class ChainStyle { Lemma33, Tw };

struct LutzHit {
    std::string curve;
    double r = 0;
};

struct ConstructionReport {
    std::vector<TorusCurve> curves;
    std::vector<ContactCheck> checks;  // parallel to curves
    std::vector<LutzHit> lutz;
    double min_contact = 0;            // over non-degenerate curves
    bool collars_in_window = true;     // collar arguments within (0, pi]
    bool ok = true;
    std::string message;
};

ConstructionReport assemble_construction(const SpliceDiagram& d, ChainStyle style,
                                         int grid = 1000);

}  // namespace splice

#endif
