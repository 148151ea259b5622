#include "splice/contact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "splice/calculus.hpp"
#include "splice/linking.hpp"
#include "splice/normalize.hpp"

namespace splice {

namespace {

constexpr double kPi = 3.14159265358979323846;

double hermite(double v0, double d0, double v1, double d1, double h, double t) {
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * v1 + (t3 - t2) * h * d1;
}

double hermite_d(double v0, double d0, double v1, double d1, double h, double t) {
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * v0 + (3 * t2 - 4 * t + 1) * h * d0 +
            (-6 * t2 + 6 * t) * v1 + (3 * t2 - 2 * t) * h * d1) /
           h;
}

struct Polar {
    double th, dth, lr, dlr;
};

Polar eval_polar(const TorusCurve& c, double r) {
    std::size_t n = c.rk.size();
    if (n == 1) return {c.theta[0], 0, c.lrho[0], 0};
    std::size_t i = 0;
    while (i + 2 < n && r > c.rk[i + 1]) ++i;
    double h = c.rk[i + 1] - c.rk[i];
    double t = (r - c.rk[i]) / h;
    t = std::clamp(t, 0.0, 1.0);
    Polar p;
    p.th = hermite(c.theta[i], c.dtheta[i], c.theta[i + 1], c.dtheta[i + 1], h, t);
    p.dth = hermite_d(c.theta[i], c.dtheta[i], c.theta[i + 1], c.dtheta[i + 1], h, t);
    p.lr = hermite(c.lrho[i], c.dlrho[i], c.lrho[i + 1], c.dlrho[i + 1], h, t);
    p.dlr = hermite_d(c.lrho[i], c.dlrho[i], c.lrho[i + 1], c.dlrho[i + 1], h, t);
    return p;
}

TorusCurve make_polar(std::string label, std::string kind, int m_sign,
                      const std::vector<std::array<double, 3>>& knots) {
    TorusCurve c;
    c.label = std::move(label);
    c.kind = std::move(kind);
    c.m_sign = m_sign;
    std::size_t n = knots.size();
    for (const auto& k : knots) {
        c.rk.push_back(k[0]);
        c.theta.push_back(k[1]);
        c.lrho.push_back(std::log(k[2]));
    }
    c.dtheta.resize(n, 0);
    c.dlrho.resize(n, 0);
    if (n >= 2) {
        auto slope = [&](const std::vector<double>& v, std::size_t i) {
            return (v[i + 1] - v[i]) / (c.rk[i + 1] - c.rk[i]);
        };
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0) {
                c.dtheta[i] = slope(c.theta, 0);
                c.dlrho[i] = slope(c.lrho, 0);
            } else if (i + 1 == n) {
                c.dtheta[i] = slope(c.theta, n - 2);
                c.dlrho[i] = slope(c.lrho, n - 2);
            } else {
                c.dtheta[i] = 0.5 * (slope(c.theta, i - 1) + slope(c.theta, i));
                c.dlrho[i] = 0.5 * (slope(c.lrho, i - 1) + slope(c.lrho, i));
            }
        }
    }
    c.degenerate = n < 2 || (std::abs(c.theta.front() - c.theta.back()) < 1e-15 &&
                             std::abs(c.lrho.front() - c.lrho.back()) < 1e-15);
    return c;
}

}  // namespace

std::pair<double, double> TorusCurve::eval(double r) const {
    Polar p = eval_polar(*this, r);
    double rho = std::exp(p.lr);
    return {rho * std::cos(p.th), rho * std::sin(p.th)};
}

std::pair<double, double> TorusCurve::deriv(double r) const {
    Polar p = eval_polar(*this, r);
    double rho = std::exp(p.lr);
    double dx = rho * (p.dlr * std::cos(p.th) - p.dth * std::sin(p.th));
    double dy = rho * (p.dlr * std::sin(p.th) + p.dth * std::cos(p.th));
    return {dx, dy};
}

double TorusCurve::theta_at(double r) const { return eval_polar(*this, r).th; }

// ---------------------------------------------------------------------------

ResidueSelection residues(const SeifertNodeData& nd, const mpq_class& eps_prime) {
    const std::size_t k = nd.a.size();
    if (k < 2) throw std::runtime_error("residues need at least two tori");
    if (eps_prime <= 0 || eps_prime >= mpq_class(1, 1) / mpq_class(nd.A))
        throw std::runtime_error("eps' out of range");
    ResidueSelection rs;
    rs.eps_prime = eps_prime;
    rs.eps_prime.canonicalize();
    rs.R.resize(k);
    rs.R[0] = mpq_class(-nd.b[0], nd.a[0]) + mpq_class(1, 1) / mpq_class(nd.A) - eps_prime;
    rs.R[0].canonicalize();
    for (std::size_t i = 1; i < k; ++i) {
        mpq_class ratio(nd.b[i], nd.a[i]);
        ratio.canonicalize();
        if (ratio <= 0)
            rs.R[i] = -ratio + 1;  // any value above -b/a works; +1 is the pick
        else
            rs.R[i] = -ratio / 2;  // midpoint of (-b/a, 0)
        rs.R[i].canonicalize();
    }
    return rs;
}

BoundaryOneFormData seifert_boundary_data(const SeifertNodeData& nd,
                                          const ResidueSelection& rs) {
    BoundaryOneFormData bd;
    const std::size_t k = nd.a.size();
    bd.torus.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        mpq_class h2 = mpq_class(nd.b[i]) + mpq_class(nd.a[i]) * rs.R[i];
        h2.canonicalize();
        if (h2 <= 0) throw std::runtime_error("boundary value h2 not positive");
        mpq_class h1 = (1 - mpq_class(nd.sigma[i]) * h2) / mpq_class(nd.a[i]);
        h1.canonicalize();
        bd.torus[i].h1 = h1;
        bd.torus[i].h2 = h2;
        bd.torus[i].U = 0;
        bd.torus[i].V = 1;
        bd.torus[i].c = 0;
    }
    bd.R = 0;
    bd.eps = bd.torus[0].h1 / bd.torus[0].h2;
    bd.eps.canonicalize();
    return bd;
}

BoundaryOneFormData tw_boundary_data(const std::vector<Int>& a,
                                     const std::vector<Int>& m,
                                     const std::vector<mpq_class>& c,
                                     const mpq_class& R) {
    const std::size_t n = a.size();
    if (n < 2) throw std::runtime_error("piece needs at least two tori");
    if (m.size() != n || c.size() != n) throw std::runtime_error("size mismatch");
    mpq_class csum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] <= 0) throw std::runtime_error("constants must be positive");
        csum += (i == 0 ? -c[i] : c[i]);
    }
    if (csum <= 0) throw std::runtime_error("constant inequality -c1 + sum ci > 0 fails");
    if (R <= 0) throw std::runtime_error("scale must be positive");

    mpz_class A = 1;
    for (auto ai : a) A *= static_cast<long>(ai);
    BoundaryOneFormData bd;
    bd.torus.resize(n);
    bd.R = R;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class kappa = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            kappa += mpz_class(static_cast<long>(m[j])) *
                     (A / (mpz_class(static_cast<long>(a[i])) * static_cast<long>(a[j])));
        }
        mpq_class U, V;
        if (m[i] > 0) {
            U = static_cast<long>(m[i]);
            V = mpq_class(-kappa);
        } else if (m[i] < 0) {
            U = static_cast<long>(-m[i]);
            V = mpq_class(kappa);
        } else {
            U = 0;
            V = kappa == 0 ? mpq_class(1) : mpq_class(-kappa);
        }
        bd.torus[i].U = U;
        bd.torus[i].V = V;
        bd.torus[i].c = c[i];
        // h1 is the d-lambda value at r=1, h2 the d-mu value
        bd.torus[i].h2 = R * U;
        bd.torus[i].h1 = (i == 0 ? mpq_class(-c[0] + R * V) : mpq_class(c[i] + R * V));
        bd.torus[i].h1.canonicalize();
        bd.torus[i].h2.canonicalize();
    }
    return bd;
}

// ---------------------------------------------------------------------------

TorusCurve extend_into_torus(std::pair<double, double> p, int m_sign,
                             const std::string& label) {
    double x = p.first, y = p.second;
    double rho = std::hypot(x, y);
    if (rho <= 0) throw std::runtime_error("boundary point at origin");
    double thp = std::atan2(y, x);
    const double r0 = 0.01;
    if (m_sign >= 0) {
        if (thp < -1e-12 || thp > kPi - 1e-12)
            throw std::runtime_error("boundary point incompatible with positive model");
        double ths = thp + 0.75 * (kPi - thp);
        return make_polar(label, "torus", m_sign >= 0 ? (m_sign > 0 ? 1 : 0) : -1,
                          {{r0, ths, rho}, {0.5, 0.5 * (ths + thp), rho}, {1.0, thp, rho}});
    }
    if (y <= 1e-12)
        throw std::runtime_error("boundary point incompatible with negative model");
    double the = thp - 2 * kPi;
    double ths = -0.01;
    return make_polar(label, "torus", -1,
                      {{r0, ths, rho},
                       {0.4, ths + 0.4 * (the - ths), rho},
                       {0.7, ths + 0.7 * (the - ths), rho},
                       {1.0, the, rho}});
}

TorusCurve glue_boundary_curves(std::pair<double, double> pA,
                                std::pair<double, double> pB,
                                std::pair<double, double> fiber_normal,
                                const std::string& label) {
    double thA = std::atan2(pA.second, pA.first);
    double thB = std::atan2(pB.second, pB.first);
    double rA = std::hypot(pA.first, pA.second);
    double rB = std::hypot(pB.first, pB.second);
    if (rA <= 0 || rB <= 0) throw std::runtime_error("collar endpoint at origin");
    TorusCurve c;
    if (std::abs(thA - thB) <= 1e-12) {
        // colinear endpoints: rescale pB onto pA, zero-length collar
        c = make_polar(label, "collar", 1, {{0.0, thA, rA}, {1.0, thA, rA}});
        c.degenerate = true;
        return c;
    }
    if (thB > thA)
        throw std::runtime_error("no monotone clockwise connection; rescale first");
    c = make_polar(label, "collar", 1, {{0.0, thA, rA}, {1.0, thB, rB}});
    if (fiber_normal.first != 0 || fiber_normal.second != 0) {
        for (int i = 0; i <= 16; ++i) {
            double r = i / 16.0;
            auto t = c.deriv(r);
            if (t.first * fiber_normal.first + t.second * fiber_normal.second < -1e-9)
                throw std::runtime_error("collar tangent against the fiber normal");
        }
    }
    return c;
}

ContactCheck verify_contact(const TorusCurve& tc, int grid) {
    ContactCheck ck;
    ck.degenerate = tc.degenerate;
    double a = tc.r_begin(), b = tc.r_end();
    ck.arg_min = std::min(tc.theta_at(a), tc.theta_at(b));
    ck.arg_max = std::max(tc.theta_at(a), tc.theta_at(b));
    if (tc.degenerate) {
        ck.min_contact = 0;
        return ck;
    }
    double minv = 0;
    bool first = true;
    double prev_cross = 0;
    std::pair<double, double> prev_t{0, 0};
    for (int i = 0; i <= grid; ++i) {
        double r = a + (b - a) * i / grid;
        auto g = tc.eval(r);
        auto t = tc.deriv(r);
        double contact = -(g.first * t.second - g.second * t.first);
        if (first || contact < minv) minv = contact;
        if (!first) {
            double cr = prev_t.first * t.second - prev_t.second * t.first;
            if (cr * prev_cross < -1e-18) ck.monotone = false;
            if (cr != 0) prev_cross = cr;
        }
        prev_t = t;
        first = false;
    }
    ck.min_contact = minv;
    return ck;
}

std::optional<double> detect_lutz(const TorusCurve& tc, int grid) {
    if (tc.degenerate) return std::nullopt;
    double a = tc.r_begin(), b = tc.r_end();
    // prev_y is the last nonzero sample; an exact zero at a grid point is a
    // crossing only when the signs on both sides differ (endpoint touches of
    // the axis are not half twists)
    double prev_r = a, prev_y = tc.eval(a).second;
    double zero_r = -1;
    for (int i = 1; i <= grid; ++i) {
        double r = a + (b - a) * i / grid;
        double y = tc.eval(r).second;
        if (y == 0) {
            if (zero_r < 0) zero_r = r;
            continue;
        }
        if (zero_r >= 0) {
            if (prev_y * y < 0 && std::abs(tc.eval(zero_r).first) > 1e-9) return zero_r;
            zero_r = -1;
            prev_r = r;
            prev_y = y;
            continue;
        }
        if (prev_y * y < 0) {
            double lo = prev_r, hi = r;
            for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
                double mid = 0.5 * (lo + hi);
                double ym = tc.eval(mid).second;
                if (ym == 0) { lo = hi = mid; break; }
                if (ym * prev_y < 0)
                    hi = mid;
                else
                    lo = mid;
            }
            double rr = 0.5 * (lo + hi);
            if (std::abs(tc.eval(rr).first) > 1e-9) return rr;
        }
        prev_r = r;
        prev_y = y;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// whole-diagram assembly

namespace {

struct Rooted {
    std::vector<std::string> order;                 // inner vertices, parents first
    std::map<std::string, std::size_t> parent_edge; // edge index toward the root
    std::map<std::string, int> depth;
    std::map<std::string, std::vector<std::size_t>> edge_order;  // parent edge first
};

Rooted root_tree(const SpliceDiagram& d) {
    Rooted rt;
    std::string root = d.inner_vertices().front();
    std::vector<std::string> queue{root};
    rt.depth[root] = 0;
    std::set<std::string> seen{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::string v = queue[qi];
        rt.order.push_back(v);
        auto inc = d.incident(v);
        std::vector<std::size_t> ord;
        if (rt.parent_edge.count(v)) ord.push_back(rt.parent_edge[v]);
        for (auto e : inc)
            if (!rt.parent_edge.count(v) || e != rt.parent_edge[v]) ord.push_back(e);
        rt.edge_order[v] = ord;
        for (auto e : inc) {
            const std::string& o = d.edges()[e].other(v);
            if (d.kind(o) != VertexKind::Inner || seen.count(o)) continue;
            seen.insert(o);
            rt.parent_edge[o] = e;
            rt.depth[o] = rt.depth[v] + 1;
            queue.push_back(o);
        }
    }
    return rt;
}

double angle(std::pair<double, double> p) { return std::atan2(p.second, p.first); }

// transformed child point in the parent frame under (r,mu,la) = (2-r', s la', s mu')
std::pair<double, double> splice_transform(std::pair<double, double> p, int s) {
    return {-s * p.second, -s * p.first};
}

// pick a gluing sign whose transformed point lies in the upper half-plane,
// preferring `s_pref`; the collar is later oriented from the higher-angle
// endpoint down to the lower one, so no ordering constraint is needed here
int pick_sign(std::pair<double, double> child, double /*parent_angle*/, int s_pref,
              std::pair<double, double>* out) {
    for (int s : {s_pref, -s_pref}) {
        auto t = splice_transform(child, s);
        if (t.second < -1e-15) continue;
        *out = t;
        return s;
    }
    return 0;
}

void finish_report(ConstructionReport& rep, int grid) {
    bool first = true;
    for (const auto& c : rep.curves) {
        auto ck = verify_contact(c, grid);
        rep.checks.push_back(ck);
        if (!ck.degenerate) {
            if (first || ck.min_contact < rep.min_contact) rep.min_contact = ck.min_contact;
            first = false;
        }
        if (c.kind == "collar" &&
            (ck.arg_min < -1e-9 || ck.arg_max > kPi + 1e-9))
            rep.collars_in_window = false;
        auto lz = detect_lutz(c, grid);
        if (lz) rep.lutz.push_back({c.label, *lz});
    }
    if (first) rep.min_contact = 0;
    rep.ok = rep.min_contact > 1e-12 || first;
}

int sgn(Int x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

ConstructionReport assemble_construction(const SpliceDiagram& d, ChainStyle style,
                                         int grid) {
    auto vr = validate(d);
    if (!vr.ok) throw std::runtime_error("invalid diagram: " + vr.violations[0].message);
    ConstructionReport rep;

    if (d.is_lone_arrow()) {
        const std::string& id = d.vertices()[0].id;
        rep.curves.push_back(extend_into_torus({-1.0, 1.0}, sgn(d.multiplicity(id)),
                                               "torus " + id));
        finish_report(rep, grid);
        return rep;
    }
    if (d.is_link_pair()) {
        const std::string a1 = d.edges()[0].a, a2 = d.edges()[0].b;
        int s1 = sgn(d.multiplicity(a1)), s2 = sgn(d.multiplicity(a2));
        std::pair<double, double> pA{-1.0, 1.0}, pB{-1.0, 1.0};
        rep.curves.push_back(extend_into_torus(pA, s1, "torus " + a1));
        rep.curves.push_back(extend_into_torus(pB, s2, "torus " + a2));
        int s = s1 * s2;
        rep.curves.push_back(glue_boundary_curves(pA, splice_transform(pB, s), {0, 0},
                                                  "collar " + a1 + "--" + a2));
        finish_report(rep, grid);
        return rep;
    }

    auto fib = is_fibered(d);
    if (!fib.fibered) throw std::runtime_error("not fibered");

    Rooted rt = root_tree(d);

    // per (vertex, edge): the multiplicity the piece sees on that torus
    std::map<std::pair<std::string, std::size_t>, Int> tmult;
    for (const auto& v : rt.order) {
        for (auto e : rt.edge_order[v]) {
            const std::string& o = d.edges()[e].other(v);
            Int m = 0;
            switch (d.kind(o)) {
                case VertexKind::Arrow: m = d.multiplicity(o); break;
                case VertexKind::Boundary: m = 0; break;
                case VertexKind::Inner: m = induced_multiplicity(d, e, v); break;
            }
            tmult[{v, e}] = m;
        }
    }

    std::map<std::string, std::vector<std::pair<double, double>>> points;
    std::map<std::string, std::pair<double, double>> child_t;  // transformed torus-1 point

    if (style == ChainStyle::Lemma33) {
        auto hat = hat_gamma(d);
        for (const auto& [v, s] : hat.vertex_sign)
            if (s < 0) throw std::runtime_error("hypothesis: vertex " + v + " not positive");
        for (const auto& [ve, s] : hat.root_sign) {
            const Edge& ed = d.edges()[ve.second];
            bool inner_edge = d.kind(ed.a) == VertexKind::Inner &&
                              d.kind(ed.b) == VertexKind::Inner;
            if (inner_edge && s < 0)
                throw std::runtime_error("hypothesis: inner edge sign not positive");
        }

        for (const auto& v : rt.order) {
            const auto& ord = rt.edge_order[v];
            bool is_root = !rt.parent_edge.count(v);
            double parent_ang = 0;
            if (!is_root) {
                const std::string& u = d.edges()[rt.parent_edge[v]].other(v);
                std::size_t slot = 0;
                const auto& uord = rt.edge_order[u];
                for (std::size_t i = 0; i < uord.size(); ++i)
                    if (uord[i] == rt.parent_edge[v]) slot = i;
                parent_ang = angle(points[u][slot]);
            }
            Int m1 = tmult[{v, ord[0]}];
            Int mpar = is_root ? 1 : tmult[{d.edges()[rt.parent_edge[v]].other(v),
                                            rt.parent_edge[v]}];
            int s_pref = (sgn(m1) == 0 ? 1 : sgn(m1)) * (sgn(mpar) == 0 ? 1 : sgn(mpar));

            if (ord.size() == 1) {
                // solid-torus piece: model curve ending near the negative y axis side
                double delta = 0.05;
                for (int tries = 0; tries < 200; ++tries) {
                    std::pair<double, double> p{-delta, 1.0};
                    std::pair<double, double> t;
                    if (is_root || pick_sign(p, parent_ang, s_pref, &t)) {
                        points[v] = {p};
                        if (!is_root) child_t[v] = t;
                        break;
                    }
                    delta /= 2;
                    if (tries == 199) throw std::runtime_error("collar ordering failed at " + v);
                }
                continue;
            }

            std::vector<long long> a;
            for (auto e : ord) a.push_back(d.edges()[e].weight_at(v));
            auto nd = node_data(a);
            mpq_class epsp = mpq_class(1) / (10 * nd.A);
            epsp.canonicalize();
            bool placed = false;
            for (int tries = 0; tries < 200 && !placed; ++tries) {
                auto rs = residues(nd, epsp);
                auto bd = seifert_boundary_data(nd, rs);
                std::vector<std::pair<double, double>> pts;
                for (const auto& t : bd.torus)
                    pts.push_back({-t.h1.get_d(), t.h2.get_d()});
                if (is_root) {
                    points[v] = pts;
                    placed = true;
                    break;
                }
                std::pair<double, double> t;
                if (pick_sign(pts[0], parent_ang, s_pref, &t)) {
                    points[v] = pts;
                    child_t[v] = t;
                    placed = true;
                    break;
                }
                epsp /= 2;
            }
            if (!placed) throw std::runtime_error("collar ordering failed at " + v);
        }
    } else {
        // Thurston-Winkelnkemper chain with a retry on the depth scale factor
        int maxdepth = 0;
        for (const auto& [v, dep] : rt.depth) maxdepth = std::max(maxdepth, dep);
        bool done = false;
        for (double F = 64; F <= 1e13 && !done; F *= 8) {
            points.clear();
            child_t.clear();
            bool okall = true;
            for (const auto& v : rt.order) {
                const auto& ord = rt.edge_order[v];
                bool is_root = !rt.parent_edge.count(v);
                double parent_ang = 0;
                if (!is_root) {
                    const std::string& u = d.edges()[rt.parent_edge[v]].other(v);
                    std::size_t slot = 0;
                    const auto& uord = rt.edge_order[u];
                    for (std::size_t i = 0; i < uord.size(); ++i)
                        if (uord[i] == rt.parent_edge[v]) slot = i;
                    parent_ang = angle(points[u][slot]);
                }
                Int m1 = tmult[{v, ord[0]}];
                Int mpar = is_root ? 1 : tmult[{d.edges()[rt.parent_edge[v]].other(v),
                                                rt.parent_edge[v]}];
                int s_pref = -(sgn(m1) == 0 ? 1 : sgn(m1)) * (sgn(mpar) == 0 ? 1 : sgn(mpar));

                if (ord.size() == 1) {
                    double eps = 1.0 / F;
                    bool placed = false;
                    for (int tries = 0; tries < 200; ++tries) {
                        std::pair<double, double> p{1.0, eps};
                        std::pair<double, double> t;
                        if (is_root || pick_sign(p, parent_ang, s_pref, &t)) {
                            points[v] = {p};
                            if (!is_root) child_t[v] = t;
                            placed = true;
                            break;
                        }
                        eps /= 2;
                    }
                    if (!placed) { okall = false; break; }
                    continue;
                }

                std::vector<Int> a, m;
                for (auto e : ord) {
                    a.push_back(d.edges()[e].weight_at(v));
                    m.push_back(tmult[{v, e}]);
                }
                std::vector<mpq_class> c(ord.size(), 1);
                c[0] = mpq_class(static_cast<long>(ord.size()) - 1, 2);
                double rbase = 16;
                // scale so every V != 0 torus point has positive x part
                {
                    auto probe = tw_boundary_data(a, m, c, 1);
                    for (std::size_t i = 0; i < probe.torus.size(); ++i) {
                        if (probe.torus[i].V == 0) continue;
                        double need = std::abs(c[i].get_d() / probe.torus[i].V.get_d());
                        rbase = std::max(rbase, 16 * need);
                    }
                }
                double rscale = rbase * std::pow(F, maxdepth - rt.depth[v]);
                auto bd = tw_boundary_data(a, m, c, mpq_class(rscale));
                std::vector<std::pair<double, double>> pts;
                for (const auto& t : bd.torus)
                    pts.push_back({-t.h1.get_d(), t.h2.get_d()});
                if (is_root) {
                    points[v] = pts;
                    continue;
                }
                std::pair<double, double> t;
                if (!pick_sign(pts[0], parent_ang, s_pref, &t)) { okall = false; break; }
                points[v] = pts;
                child_t[v] = t;
            }
            done = okall;
        }
        if (!done) throw std::runtime_error("collar ordering failed");
    }

    // emit curves
    for (const auto& v : rt.order) {
        const auto& ord = rt.edge_order[v];
        if (ord.size() == 1 && rt.edge_order.size() > 0 &&
            d.kind(d.edges()[ord[0]].other(v)) == VertexKind::Inner) {
            rep.curves.push_back(extend_into_torus(points[v][0], 1, "piece " + v));
            continue;
        }
        for (std::size_t i = 0; i < ord.size(); ++i) {
            std::size_t e = ord[i];
            const std::string& o = d.edges()[e].other(v);
            if (d.kind(o) == VertexKind::Inner) continue;  // handled as a collar or leaf
            rep.curves.push_back(
                extend_into_torus(points[v][i], sgn(tmult[{v, e}]), "torus " + o));
        }
    }
    for (const auto& [v, t] : child_t) {
        std::size_t e = rt.parent_edge[v];
        const std::string& u = d.edges()[e].other(v);
        std::size_t slot = 0;
        const auto& uord = rt.edge_order.at(u);
        for (std::size_t i = 0; i < uord.size(); ++i)
            if (uord[i] == e) slot = i;
        auto pu = points[u][slot];
        auto hi = angle(t) >= angle(pu) ? t : pu;
        auto lo = angle(t) >= angle(pu) ? pu : t;
        rep.curves.push_back(
            glue_boundary_curves(hi, lo, {0, 0}, "collar " + u + "--" + v));
    }

    finish_report(rep, grid);
    return rep;
}

}  // namespace splice
