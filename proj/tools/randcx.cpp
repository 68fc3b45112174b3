#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "randcx/randcx.hpp"

using namespace randcx;
using nlohmann::json;

namespace {

json faces_json(const std::vector<Face>& faces)
{
    json out = json::array();
    for (const auto& f : faces) {
        out.push_back({f.a, f.b, f.c});
    }
    return out;
}

json edges_json(const std::vector<Edge>& edges)
{
    json out = json::array();
    for (const auto& e : edges) {
        out.push_back({e.a, e.b});
    }
    return out;
}

json density_json(const DensityReport& d)
{
    return {{"value", to_string(d.value)},
            {"mode", d.mode == DensityReport::Mode::anchored ? "anchored" : "unrestricted"},
            {"anchor", d.anchor},
            {"witness", faces_json(d.witness)}};
}

json verdict_json(const SparsityVerdict& v)
{
    json out{{"verdict", v.sparse ? "sparse" : "dense"}, {"eps", to_string(v.eps)}, {"m", v.m}, {"anchored", v.anchored}};
    if (!v.sparse) {
        out["witness"] = faces_json(v.witness);
    }
    return out;
}

json h1_json(const IntegralH1& h)
{
    return {{"coeff", "z"}, {"rank", h.rank}, {"torsion", h.torsion}, {"invariant_factors", h.invariant_factors}};
}

std::string read_text(const std::string& path)
{
    if (path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::parse_error, "cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Complex2 load(const std::string& path) { return read_sc2(read_text(path)); }

void emit(const json& j) { std::cout << j.dump() << '\n'; }

std::vector<Edge> read_edge_list(const std::string& path)
{
    std::istringstream in(read_text(path));
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        Vertex a = 0;
        Vertex b = 0;
        if (!(fields >> a)) {
            continue;
        }
        std::string extra;
        if (!(fields >> b) || (fields >> extra)) {
            fail(ErrorKind::parse_error, "edge list line " + std::to_string(line_no) + ": expected two vertices");
        }
        edges.push_back(make_edge(a, b));
    }
    return edges;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Random 2-complex workbench"};
    app.require_subcommand(1);

    int n = 0;
    std::string p_text;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "Sample Y(n,p) and write it in sc2 format");
    gen->add_option("--n", n, "Vertex count")->required();
    gen->add_option("--p", p_text, "Face probability as a decimal or fraction")->required();
    gen->add_option("--seed", seed, "Experiment seed");
    gen->add_option("--trial", trial, "Trial index");
    gen->add_option("--out", out_path, "Output file (default stdout)");

    std::string file;
    std::string coeff = "gf2";
    auto* homology = app.add_subcommand("homology", "Betti numbers or integral H1");
    homology->add_option("file", file)->required();
    homology->add_option("--coeff", coeff, "gf2, gfq:<q>, q or z");

    int anchor = 0;
    auto* density = app.add_subcommand("density", "e(X) or e_w(X) with a minimizer");
    density->add_option("file", file)->required();
    density->add_option("--anchor", anchor, "Anchor size w (0 or 3)");

    std::string eps_text;
    std::size_t m = 0;
    auto* sparse = app.add_subcommand("sparse", "(eps, m) or (eps, m, 3) sparsity");
    sparse->add_option("file", file)->required();
    sparse->add_option("--eps", eps_text)->required();
    sparse->add_option("--m", m)->required();
    sparse->add_option("--anchor", anchor, "0 or 3");

    auto* certify = app.add_subcommand("certify-sc", "Link-intersection certificate for simple connectivity");
    certify->add_option("file", file)->required();

    bool show_presentation = false;
    auto* pi1 = app.add_subcommand("pi1", "Fundamental group presentations per component");
    pi1->add_option("file", file)->required();
    pi1->add_flag("--presentation", show_presentation, "Print generators and relators");

    std::optional<std::size_t> area_budget;
    auto* id3 = app.add_subcommand("id3", "Noncontractibility of the loop 1 2 3");
    id3->add_option("file", file)->required();
    id3->add_option("--area-budget", area_budget, "Also run the bounded filling search");

    auto* evidence = app.add_subcommand("evidence", "Sparsity evidence for a nontrivial pi1");
    evidence->add_option("file", file)->required();
    evidence->add_option("--eps", eps_text)->required();
    evidence->add_option("--m", m)->required();

    auto* classify = app.add_subcommand("classify", "Homotopy type of an admissible complex");
    classify->add_option("file", file)->required();

    std::string anchor_edges_path;
    auto* collapse = app.add_subcommand("collapse", "Collapse free edges and write the core");
    collapse->add_option("file", file)->required();
    collapse->add_option("--anchor-edges", anchor_edges_path, "File with one edge 'a b' per line");

    int w = 0;
    auto* bound = app.add_subcommand("bound", "Face-count bound for admissible complexes");
    bound->add_option("file", file)->required();
    bound->add_option("--w", w)->required();

    std::string config_path;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep driven by a config file");
    sweep->add_option("--config", config_path)->required();

    std::string csv_path;
    PlotSpec plot_spec;
    auto* plot = app.add_subcommand("plot", "SVG of success frequency against p");
    plot->add_option("csv", csv_path)->required();
    plot->add_option("--check", plot_spec.check, "Check name (default: first in the file)");
    plot->add_option("--title", plot_spec.title);
    plot->add_option("--out", out_path, "Output file (default stdout)");

    std::size_t trials = 1000;
    auto* link_stats = app.add_subcommand("link-stats", "Frequency of {3,4} in the link intersection of 1 and 2");
    link_stats->add_option("--n", n)->required();
    link_stats->add_option("--p", p_text)->required();
    link_stats->add_option("--trials", trials);
    link_stats->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            auto p = Probability::parse(p_text);
            auto x = gen_Y(n, p, make_rng_spec(seed, "Y", n, p, trial));
            if (out_path.empty()) {
                std::cout << write_sc2(x);
            } else {
                save_sc2(x, out_path);
            }
        } else if (homology->parsed()) {
            auto x = load(file);
            if (coeff == "z") {
                emit(h1_json(h1_integral(x)));
            } else {
                auto b = betti(x, Coefficients::parse(coeff));
                emit({{"coeff", b.coefficients.name()}, {"b0", b.b0}, {"b1", b.b1}, {"b2", b.b2}});
            }
        } else if (density->parsed()) {
            auto x = load(file);
            emit(density_json(anchor == 0 ? density_e(x) : density_e_w(x, anchor)));
        } else if (sparse->parsed()) {
            auto x = load(file);
            auto eps = parse_rational(eps_text);
            if (anchor == 0) {
                emit(verdict_json(check_sparse(x, eps, m)));
            } else if (anchor == 3) {
                emit(verdict_json(check_sparse3(x, eps, m)));
            } else {
                fail(ErrorKind::out_of_range, "--anchor must be 0 or 3");
            }
        } else if (certify->parsed()) {
            auto cert = certify_simply_connected(load(file));
            json j{{"verdict", cert.certified ? "certified" : "inconclusive"},
                   {"full_skeleton", cert.full_skeleton},
                   {"failing_pairs", edges_json(cert.failing_pairs)}};
            if (cert.certified) {
                json supports = json::array();
                for (const auto& [e, f] : cert.supports) {
                    supports.push_back({{"pair", {e.a, e.b}}, {"face", {f.a, f.b, f.c}}});
                }
                j["supports"] = supports;
            }
            emit(j);
        } else if (pi1->parsed()) {
            auto x = load(file);
            auto components = vertex_components(x);
            for (std::size_t c = 0; c < components.size(); ++c) {
                auto g = presentation(x, c);
                auto ab = abelianization(g);
                json j{{"component", c},
                       {"vertices", g.component.size()},
                       {"generators", g.generators.size()},
                       {"relators", g.relators.size()},
                       {"abelianization", h1_json(ab)}};
                if (show_presentation) {
                    j["generator_edges"] = edges_json(g.generators);
                    json rels = json::array();
                    for (const auto& r : g.relators) {
                        json word = json::array();
                        for (const auto& letter : r) {
                            word.push_back({letter.generator, letter.exponent});
                        }
                        rels.push_back(word);
                    }
                    j["relator_words"] = rels;
                }
                emit(j);
            }
        } else if (id3->parsed()) {
            auto x = load(file);
            auto cert = certify_id3_noncontractible(x);
            json j{{"noncontractible", cert.noncontractible}};
            if (cert.density) {
                j["density"] = density_json(*cert.density);
            }
            if (area_budget) {
                auto res = area_search(x, id3_loop(x), *area_budget);
                j["area"] = {{"budget", res.budget},
                             {"result", res.upper_bound ? "upper_bound" : "inconclusive"},
                             {"states", res.states_explored},
                             {"state_limit_hit", res.state_limit_hit}};
                if (res.upper_bound) {
                    j["area"]["upper_bound"] = *res.upper_bound;
                    json trace = json::array();
                    for (const auto& mv : res.trace) {
                        const char* kind = mv.kind == AreaMove::Kind::push ? "push"
                                           : mv.kind == AreaMove::Kind::pop ? "pop"
                                                                            : "collapse";
                        json step{{"move", kind}, {"before", mv.before}, {"after", mv.after}};
                        if (mv.kind != AreaMove::Kind::collapse) {
                            step["face"] = {mv.face.a, mv.face.b, mv.face.c};
                        }
                        trace.push_back(step);
                    }
                    j["area"]["trace"] = trace;
                }
            }
            emit(j);
        } else if (evidence->parsed()) {
            auto ev = evidence_pi1_nontrivial(load(file), parse_rational(eps_text), m);
            auto j = verdict_json(ev.verdict);
            j["kind"] = Pi1Evidence::kind;
            emit(j);
        } else if (classify->parsed()) {
            auto h = homotopy_type(load(file));
            for (const auto& c : h.components) {
                emit({{"vertices", c.vertices},
                      {"circles", c.counts.circles},
                      {"spheres", c.counts.spheres},
                      {"projective_planes", c.counts.projective_planes},
                      {"euler", c.euler}});
            }
        } else if (collapse->parsed()) {
            auto x = load(file);
            std::vector<Edge> anchors;
            if (!anchor_edges_path.empty()) {
                anchors = read_edge_list(anchor_edges_path);
            }
            std::cout << write_sc2(collapse_core(x, anchors));
        } else if (bound->parsed()) {
            auto b = popped_bound_check(load(file), w);
            emit({{"w", b.w},
                  {"f2", b.f2},
                  {"density", to_string(b.density)},
                  {"bound", to_string(b.bound)},
                  {"holds", b.holds}});
        } else if (sweep->parsed()) {
            auto cfg = load_sweep_config(config_path);
            auto res = run_sweep_to_files(cfg);
            if (cfg.csv_path.empty()) {
                std::cout << res.csv();
            }
            if (cfg.summary_path.empty()) {
                std::cerr << res.summary_jsonl();
            }
        } else if (plot->parsed()) {
            auto svg = plot_svg(read_text(csv_path), plot_spec);
            if (out_path.empty()) {
                std::cout << svg;
            } else {
                std::ofstream(out_path, std::ios::binary) << svg;
            }
        } else if (link_stats->parsed()) {
            auto s = link_pair_statistics(n, Probability::parse(p_text), trials, seed);
            emit({{"n", n},
                  {"p", p_text},
                  {"trials", s.trials},
                  {"hits", s.hits},
                  {"frequency", s.frequency},
                  {"expected", s.expected},
                  {"sigma", s.sigma},
                  {"wilson_low", s.wilson.low},
                  {"wilson_high", s.wilson.high}});
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    return 0;
}
