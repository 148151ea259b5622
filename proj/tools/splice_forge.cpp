#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "splice/calculus.hpp"
#include "splice/contact.hpp"
#include "splice/diagram.hpp"
#include "splice/linking.hpp"
#include "splice/normalize.hpp"
#include "splice/seifert.hpp"
#include "splice/tightness.hpp"

using json = nlohmann::ordered_json;
using namespace splice;

namespace {

// exit codes: 0 ok, 1 usage, 2 invalid diagram, 3 precondition failure
struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw DiagramError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

SpliceDiagram load(const std::string& path, bool must_validate = true) {
    SpliceDiagram d = parse_diagram(read_input(path));
    if (must_validate) {
        auto rep = validate(d);
        if (!rep.ok)
            throw DiagramError("invalid diagram: " + rep.violations[0].rule + " at " +
                               rep.violations[0].location + ": " +
                               rep.violations[0].message);
    }
    return d;
}

json mpz_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

json mpq_json(const mpq_class& q) {
    json j;
    j["num"] = mpz_json(q.get_num());
    j["den"] = mpz_json(q.get_den());
    return j;
}

Leaf parse_leaf(const SpliceDiagram& d, const std::string& spec) {
    if (spec.rfind("fiber:", 0) == 0) return Leaf::phantom(spec.substr(6));
    if (!d.has_vertex(spec)) throw DiagramError("unknown leaf: " + spec);
    return Leaf::terminal(spec);
}

std::size_t parse_edge(const SpliceDiagram& d, const std::string& spec) {
    auto pos = spec.find("--");
    if (pos != std::string::npos) {
        std::string a = spec.substr(0, pos), b = spec.substr(pos + 2);
        for (std::size_t i = 0; i < d.edges().size(); ++i) {
            const Edge& e = d.edges()[i];
            if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return i;
        }
        throw DiagramError("no edge " + spec);
    }
    std::size_t i = std::stoul(spec);
    if (i >= d.edges().size()) throw DiagramError("edge index out of range");
    return i;
}

json hat_json(const SpliceDiagram& d, const HatDecoration& hat) {
    json j;
    json vs = json::object();
    for (const auto& [v, s] : hat.vertex_sign) vs[v] = s > 0 ? "+" : "-";
    j["vertex_sign"] = vs;
    json rs = json::array();
    for (const auto& [ve, s] : hat.root_sign) {
        const Edge& e = d.edges()[ve.second];
        rs.push_back({{"vertex", ve.first},
                      {"edge", e.a + "--" + e.b},
                      {"sign", s > 0 ? "+" : "-"}});
    }
    j["root_sign"] = rs;
    return j;
}

std::string hat_text(const SpliceDiagram& d, const HatDecoration& hat) {
    std::string out;
    for (const auto& [v, s] : hat.vertex_sign) {
        out += v;
        out += s > 0 ? " (+)\n" : " (-)\n";
        for (const auto& [ve, rs] : hat.root_sign) {
            if (ve.first != v) continue;
            const Edge& e = d.edges()[ve.second];
            out += "  ";
            out += rs > 0 ? '+' : '-';
            out += " " + e.a + "--" + e.b + " [" + std::to_string((long long)e.weight_at(v)) + "]\n";
        }
    }
    return out;
}

void write_svg(const std::string& path, const ConstructionReport& rep) {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    std::vector<std::vector<std::pair<double, double>>> polys;
    for (const auto& c : rep.curves) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= 200; ++i) {
            double r = c.r_begin() + (c.r_end() - c.r_begin()) * i / 200.0;
            auto p = c.eval(r);
            xmin = std::min(xmin, p.first);
            xmax = std::max(xmax, p.first);
            ymin = std::min(ymin, p.second);
            ymax = std::max(ymax, p.second);
            pts.push_back(p);
        }
        polys.push_back(std::move(pts));
    }
    double w = xmax - xmin, h = ymax - ymin;
    std::ofstream f(path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin - 0.05 * w
      << " " << -(ymax + 0.05 * h) << " " << 1.1 * w << " " << 1.1 * h << "\">\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t k = 0; k < polys.size(); ++k) {
        f << "<polyline fill=\"none\" stroke=\"" << colors[k % 5]
          << "\" stroke-width=\"" << 0.004 * std::max(w, h) << "\" points=\"";
        for (const auto& p : polys[k]) f << p.first << "," << -p.second << " ";
        f << "\"/>\n";
    }
    f << "</svg>\n";
}

void write_csv(const std::string& path, const ConstructionReport& rep) {
    std::ofstream f(path);
    f << "curve,r,x,y\n";
    for (const auto& c : rep.curves) {
        for (int i = 0; i <= 200; ++i) {
            double r = c.r_begin() + (c.r_end() - c.r_begin()) * i / 200.0;
            auto p = c.eval(r);
            f << c.label << "," << r << "," << p.first << "," << p.second << "\n";
        }
    }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"splice-forge: a calculus for splice diagrams of graph multilinks"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string node_id, leaf_x, leaf_y, edge_spec, at1, at2, with_path;
    std::string format = "json", style = "tw", g_list, svg_path, csv_path;
    bool assume_s3 = false, per_piece_flag = false;
    int grid = 1000;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", input, "diagram file (DSL), or - for stdin");
    };

    auto* c_validate = app.add_subcommand("validate", "structural validation report");
    add_input(c_validate);
    auto* c_nodedata = app.add_subcommand("node-data", "Seifert data of one node");
    add_input(c_nodedata);
    c_nodedata->add_option("--node", node_id, "inner vertex id (default: first)");
    auto* c_normalize = app.add_subcommand("normalize", "reduce by the minimality moves");
    add_input(c_normalize);
    auto* c_invert = app.add_subcommand("invert", "negate all multiplicities");
    add_input(c_invert);
    auto* c_checks3 = app.add_subcommand("check-s3", "sufficient ambient-sphere recognizer");
    add_input(c_checks3);
    auto* c_link = app.add_subcommand("link", "linking number of two leaves");
    add_input(c_link);
    c_link->add_option("--x", leaf_x, "leaf id, or fiber:<vertex>")->required();
    c_link->add_option("--y", leaf_y, "leaf id, or fiber:<vertex>")->required();
    auto* c_fiber = app.add_subcommand("fiber-check", "fiber degrees and fiberedness");
    add_input(c_fiber);
    auto* c_hat = app.add_subcommand("hat", "derived sign decoration");
    add_input(c_hat);
    c_hat->add_option("--format", format, "json, dot or text");
    auto* c_cut = app.add_subcommand("cut", "split along an inner edge");
    add_input(c_cut);
    c_cut->add_option("--edge", edge_spec, "edge as a--b or index")->required();
    auto* c_splice = app.add_subcommand("splice", "fuse two diagrams at arrowheads");
    add_input(c_splice);
    c_splice->add_option("--at", at1, "arrowhead in the first diagram")->required();
    c_splice->add_option("--with", with_path, "second diagram file")->required();
    c_splice->add_option("--at2", at2, "arrowhead in the second diagram")->required();
    auto* c_tight = app.add_subcommand("tight", "tightness of the compatible contact structure");
    add_input(c_tight);
    c_tight->add_flag("--assume-s3", assume_s3, "skip the ambient-sphere check");
    c_tight->add_flag("--per-piece", per_piece_flag, "per-piece sign diagnostic");
    auto* c_milnor = app.add_subcommand("milnor-fg", "verdict after reversing the g-components");
    add_input(c_milnor);
    c_milnor->add_option("--g", g_list, "comma-separated arrowhead ids")->required();
    auto* c_contact = app.add_subcommand("contact-verify", "build and verify the contact-form curves");
    add_input(c_contact);
    c_contact->add_option("--style", style, "lemma33 or tw");
    c_contact->add_option("--grid", grid, "verification grid size");
    c_contact->add_option("--svg", svg_path, "write curves as SVG");
    c_contact->add_option("--csv", csv_path, "write curve samples as CSV");
    auto* c_export = app.add_subcommand("export", "serialize the diagram");
    add_input(c_export);
    c_export->add_option("--format", format, "dsl, json or dot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (c_validate->parsed()) {
            SpliceDiagram d = load(input, false);
            auto rep = validate(d);
            json j;
            j["ok"] = rep.ok;
            json vs = json::array();
            for (const auto& v : rep.violations)
                vs.push_back({{"rule", v.rule}, {"location", v.location}, {"message", v.message}});
            j["violations"] = vs;
            emit(j);
        } else if (c_nodedata->parsed()) {
            SpliceDiagram d = load(input);
            if (node_id.empty()) {
                auto inner = d.inner_vertices();
                if (inner.empty()) throw DiagramError("no inner vertex");
                node_id = inner.front();
            }
            if (!d.has_vertex(node_id) || d.kind(node_id) != VertexKind::Inner)
                throw DiagramError("not an inner vertex: " + node_id);
            std::vector<long long> a;
            for (auto w : d.weights_at(node_id)) a.push_back(w);
            auto nd = node_data(a);
            json j;
            auto arr = [&](const std::vector<mpz_class>& v) {
                json x = json::array();
                for (const auto& z : v) x.push_back(mpz_json(z));
                return x;
            };
            j["node"] = node_id;
            j["a"] = arr(nd.a);
            j["b"] = arr(nd.b);
            j["sigma"] = arr(nd.sigma);
            j["delta"] = arr(nd.delta);
            j["A"] = mpz_json(nd.A);
            emit(j);
        } else if (c_normalize->parsed()) {
            SpliceDiagram d = load(input);
            auto [min, trace] = minimize(d);
            json j;
            j["dsl"] = serialize_diagram(min, Format::Dsl);
            json tr = json::array();
            for (const auto& t : trace)
                tr.push_back({{"move", t.move},
                              {"location", t.location},
                              {"before", t.before},
                              {"after", t.after}});
            j["trace"] = tr;
            j["type_arrow_arrow"] = is_type_arrow_arrow(min);
            emit(j);
        } else if (c_invert->parsed()) {
            SpliceDiagram d = load(input);
            std::cout << serialize_diagram(invert(d), Format::Dsl);
        } else if (c_checks3->parsed()) {
            SpliceDiagram d = load(input);
            json j;
            j["answer"] = check_s3_cabling(d) == S3Answer::Yes ? "Yes" : "Unknown";
            emit(j);
        } else if (c_link->parsed()) {
            SpliceDiagram d = load(input);
            Leaf x = parse_leaf(d, leaf_x), y = parse_leaf(d, leaf_y);
            json j;
            j["lk"] = (long long)linking_number(d, x, y);
            j["oracle"] = (long long)linking_oracle(d, x, y);
            emit(j);
        } else if (c_fiber->parsed()) {
            SpliceDiagram d = load(input);
            auto rep = is_fibered(d);
            json j;
            j["fibered"] = rep.fibered;
            json lv = json::object();
            for (const auto& [v, l] : rep.l_values) lv[v] = (long long)l;
            j["l_values"] = lv;
            emit(j);
        } else if (c_hat->parsed()) {
            SpliceDiagram d = load(input);
            auto hat = hat_gamma(d);
            if (format == "dot")
                std::cout << hat_dot(d, hat);
            else if (format == "text")
                std::cout << hat_text(d, hat);
            else
                emit(hat_json(d, hat));
        } else if (c_cut->parsed()) {
            SpliceDiagram d = load(input);
            auto fib = is_fibered(d);
            if (!fib.fibered) throw std::runtime_error("not fibered");
            auto res = cut(d, parse_edge(d, edge_spec));
            json j;
            j["left"] = {{"dsl", serialize_diagram(res.left, Format::Dsl)},
                         {"new", res.left_new},
                         {"mult", (long long)res.left_mult}};
            j["right"] = {{"dsl", serialize_diagram(res.right, Format::Dsl)},
                          {"new", res.right_new},
                          {"mult", (long long)res.right_mult}};
            emit(j);
        } else if (c_splice->parsed()) {
            SpliceDiagram d1 = load(input);
            SpliceDiagram d2 = load(with_path);
            std::cout << serialize_diagram(splice::splice(d1, at1, d2, at2), Format::Dsl);
        } else if (c_tight->parsed()) {
            SpliceDiagram d = load(input);
            auto fib = is_fibered(d);
            if (!fib.fibered) {
                json j;
                j["error"] = "not fibered";
                json lv = json::object();
                for (const auto& [v, l] : fib.l_values) lv[v] = (long long)l;
                j["l_values"] = lv;
                emit(j);
                return 3;
            }
            auto verdict = decide_tight(d, assume_s3);
            json j;
            j["verdict"] = verdict.tight ? "Tight" : "Overtwisted";
            if (verdict.tight) {
                j["sign"] = verdict.sign;
            } else {
                j["witness"] = {{"component", verdict.witness_component},
                                {"reason", verdict.witness_reason},
                                {"inverted", verdict.inverted_for_witness}};
            }
            if (!d.is_link_pair() && !d.is_lone_arrow())
                j["hat"] = hat_json(d, hat_gamma(d));
            if (per_piece_flag) {
                auto pp = per_piece(d);
                json u = json::object();
                for (const auto& [v, ok] : pp.uniform) u[v] = ok;
                j["per_piece"] = {{"uniform", u}, {"all_uniform", pp.all_uniform}};
            }
            emit(j);
        } else if (c_milnor->parsed()) {
            SpliceDiagram d = load(input);
            std::vector<std::string> g;
            std::stringstream ss(g_list);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) g.push_back(item);
            auto verdict = milnor_fg(d, g);
            json j;
            j["verdict"] = verdict.tight ? "Tight" : "Overtwisted";
            if (verdict.tight)
                j["sign"] = verdict.sign;
            else
                j["witness"] = {{"component", verdict.witness_component},
                                {"reason", verdict.witness_reason},
                                {"inverted", verdict.inverted_for_witness}};
            emit(j);
        } else if (c_contact->parsed()) {
            SpliceDiagram d = load(input);
            ChainStyle cs;
            if (style == "lemma33")
                cs = ChainStyle::Lemma33;
            else if (style == "tw")
                cs = ChainStyle::Tw;
            else
                throw CLI::ValidationError("--style", "must be lemma33 or tw");
            auto rep = assemble_construction(d, cs, grid);
            json j;
            j["style"] = style;
            json cur = json::array();
            for (std::size_t i = 0; i < rep.curves.size(); ++i) {
                const auto& c = rep.curves[i];
                const auto& ck = rep.checks[i];
                json cj;
                cj["label"] = c.label;
                cj["kind"] = c.kind;
                cj["degenerate"] = ck.degenerate;
                cj["min_contact"] = ck.min_contact;
                cj["monotone"] = ck.monotone;
                cj["arg_min"] = ck.arg_min;
                cj["arg_max"] = ck.arg_max;
                cur.push_back(cj);
            }
            j["curves"] = cur;
            json lz = json::array();
            for (const auto& h : rep.lutz) lz.push_back({{"curve", h.curve}, {"r", h.r}});
            j["lutz"] = lz;
            j["min_contact"] = rep.min_contact;
            j["collars_in_window"] = rep.collars_in_window;
            j["ok"] = rep.ok;
            emit(j);
            if (!svg_path.empty()) write_svg(svg_path, rep);
            if (!csv_path.empty()) write_csv(csv_path, rep);
        } else if (c_export->parsed()) {
            SpliceDiagram d = load(input);
            Format f;
            if (format == "dsl")
                f = Format::Dsl;
            else if (format == "json")
                f = Format::Json;
            else if (format == "dot")
                f = Format::Dot;
            else
                throw CLI::ValidationError("--format", "must be dsl, json or dot");
            std::cout << serialize_diagram(d, f);
            if (f == Format::Json) std::cout << "\n";
        }
    } catch (const ParseError& e) {
        json j;
        j["error"] = e.what();
        j["line"] = e.line;
        j["column"] = e.column;
        emit(j);
        return 2;
    } catch (const DiagramError& e) {
        json j;
        j["error"] = e.what();
        emit(j);
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = e.what();
        emit(j);
        return 3;
    }
    return 0;
}
