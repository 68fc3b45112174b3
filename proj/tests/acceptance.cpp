// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "randcx/randcx.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace randcx;

namespace {

constexpr std::uint64_t acceptance_seed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Every Betti computation made here is also checked against chi.
std::size_t euler_checked = 0;
std::vector<std::string> euler_violations;

BettiProfile checked_betti(const Complex2& x, const Coefficients& c)
{
    auto b = betti(x, c);
    ++euler_checked;
    if (b.euler() != euler_characteristic(x)) {
        euler_violations.push_back("n=" + std::to_string(x.n()) + " f2=" + std::to_string(x.f2()) + " " + c.name());
    }
    return b;
}

Complex2 sample(int n, const Probability& p, std::uint64_t trial)
{
    return gen_Y(n, p, make_rng_spec(acceptance_seed, "Y", n, p, trial));
}

class Checklist {
public:
    void expect(bool ok, const std::string& what)
    {
        ++total_;
        if (!ok) {
            failed_.push_back(what);
        }
    }

    template <class F>
    void expect_throw(ErrorKind kind, F&& fn, const std::string& what)
    {
        bool ok = false;
        try {
            fn();
        } catch (const Error& e) {
            ok = e.kind() == kind;
        }
        expect(ok, what);
    }

    Outcome outcome() const
    {
        std::ostringstream s;
        s << (total_ - failed_.size()) << "/" << total_ << " exact checks";
        for (const auto& f : failed_) {
            s << "; failed: " << f;
        }
        return {failed_.empty(), s.str()};
    }

private:
    std::size_t total_ = 0;
    std::vector<std::string> failed_;
};

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

Triple profile(const Complex2& x, const Coefficients& c)
{
    auto b = checked_betti(x, c);
    return {b.b0, b.b1, b.b2};
}

Outcome criterion_fixtures()
{
    const auto t1 = fixtures::t1();
    const auto tet = fixtures::tet();
    const auto rp6 = fixtures::rp6();
    const auto k4 = fixtures::k4();
    const auto x5 = fixtures::x5();
    const auto gf2 = Coefficients::gf2();
    const auto q = Coefficients::rationals();
    Checklist c;

    c.expect(t1.f0() == 3 && t1.f1() == 3 && t1.f2() == 1, "T1 face vector");
    c.expect(tet.f0() == 4 && tet.f1() == 6 && tet.f2() == 4, "TET face vector");
    c.expect(euler_characteristic(t1) == 1, "chi(T1)");
    c.expect(euler_characteristic(tet) == 2, "chi(TET)");
    c.expect(euler_characteristic(rp6) == 1, "chi(RP6)");
    c.expect(length_L(t1) == 3, "L(T1)");
    c.expect(length_L(tet) == 0, "L(TET)");
    c.expect(length_L(k4) == 12, "L(K4)");
    c.expect(face_degree(tet, {1, 2}) == 2, "deg_TET(12)");
    c.expect(face_degree(t1, {1, 2}) == 1, "deg_T1(12)");
    c.expect(face_degree(k4, {1, 2}) == 0, "deg_K4(12)");

    c.expect(link(tet, 1).edges() == std::vector<Edge>{{2, 3}, {2, 4}, {3, 4}}, "link(TET,1)");
    c.expect(link(t1, 1).edges() == std::vector<Edge>{{2, 3}}, "link(T1,1)");
    c.expect(link(k4, 1).edges().empty() && link(k4, 1).vertices().size() == 3, "link(K4,1)");
    c.expect(link_intersection_graph(tet, 1, 2).edges() == std::vector<Edge>{{3, 4}}, "link_int(TET,1,2)");
    auto li_t1 = link_intersection_graph(t1, 1, 2);
    c.expect(li_t1.vertices() == std::vector<Vertex>{3} && li_t1.edges().empty(), "link_int(T1,1,2)");
    auto li_k4 = link_intersection_graph(k4, 1, 2);
    c.expect(li_k4.vertices() == std::vector<Vertex>{3, 4} && li_k4.edges().empty(), "link_int(K4,1,2)");
    auto sub = induced_subcomplex(rp6, {{1, 2, 3}, {1, 2, 4}});
    c.expect(sub.f0() == 4 && sub.f1() == 5 && sub.f2() == 2, "induced(RP6,{123,124})");

    c.expect(profile(tet, gf2) == Triple{1, 0, 1}, "betti(TET,GF2)");
    c.expect(profile(tet, q) == Triple{1, 0, 1}, "betti(TET,Q)");
    c.expect(profile(rp6, gf2) == Triple{1, 1, 1}, "betti(RP6,GF2)");
    c.expect(profile(rp6, q) == Triple{1, 0, 0}, "betti(RP6,Q)");
    c.expect(profile(k4, gf2) == Triple{1, 3, 0}, "betti(K4,GF2)");
    c.expect(profile(t1, gf2) == Triple{1, 0, 0}, "betti(T1,GF2)");
    c.expect(profile(x5, q) == Triple{1, 5, 0}, "betti(X5,Q)");

    auto h_rp = h1_integral(rp6);
    c.expect(h_rp.rank == 0 && h_rp.torsion == std::vector<std::int64_t>{2}, "H1(RP6;Z)");
    auto h_tet = h1_integral(tet);
    c.expect(h_tet.rank == 0 && h_tet.torsion.empty(), "H1(TET;Z)");
    auto h_k4 = h1_integral(k4);
    c.expect(h_k4.rank == 3 && h_k4.torsion.empty(), "H1(K4;Z)");
    auto d2_rp = boundary_matrices(rp6).d2.to_dense();
    c.expect(rank_gf2(d2_rp) == 9 && rank_rational(d2_rp) == 10, "rank d2(RP6)");

    auto e_t1 = density_e(t1);
    c.expect(e_t1.value == 3 && e_t1.witness == t1.faces(), "e(T1)");
    auto e_tet = density_e(tet);
    c.expect(e_tet.value == 1 && e_tet.witness == tet.faces(), "e(TET)");
    auto e_rp = density_e(rp6);
    c.expect(e_rp.value == Rational(3, 5) && e_rp.witness == rp6.faces(), "e(RP6)");
    const std::vector<Face> f123{{1, 2, 3}};
    auto e3_t1 = density_e_w(t1, 3);
    c.expect(e3_t1.value == 0 && e3_t1.witness == f123, "e3(T1)");
    auto e3_tet = density_e_w(tet, 3);
    c.expect(e3_tet.value == 0 && e3_tet.witness == f123, "e3(TET)");
    auto e3_x5 = density_e_w(x5, 3);
    c.expect(e3_x5.value == 2 && e3_x5.witness == x5.faces(), "e3(X5)");
    c.expect_throw(ErrorKind::no_faces, [&] { density_e(k4); }, "e(K4) raises NoFaces");

    const auto r = [](const char* s) { return parse_rational(s); };
    c.expect(is_admissible(tet, r("0.4")) && !is_admissible(tet, r("0.6")), "admissibility of TET");
    c.expect(is_admissible(k4, r("7")), "admissibility of K4");
    c.expect(check_sparse(tet, r("0.4"), 4).sparse, "sparse(TET,0.4,4)");
    auto dense_tet = check_sparse(tet, r("0.6"), 4);
    c.expect(!dense_tet.sparse && dense_tet.witness == tet.faces(), "sparse(TET,0.6,4)");
    c.expect(check_sparse(t1, r("0.1"), 1).sparse, "sparse(T1,0.1,1)");
    auto s3_t1 = check_sparse3(t1, r("0.1"), 1);
    c.expect(!s3_t1.sparse && s3_t1.witness == f123, "sparse3(T1,0.1,1)");
    c.expect(check_sparse3(x5, r("0.1"), 1).sparse, "sparse3(X5,0.1,1)");
    auto s3_tet = check_sparse3(tet, r("0.1"), 1);
    c.expect(!s3_tet.sparse && s3_tet.witness == f123, "sparse3(TET,0.1,1)");
    c.expect(evidence_pi1_nontrivial(k4, r("0.3"), 3).sparse, "evidence(K4)");
    c.expect(enumerate_dense_prototypes(r("0.4"), 1).empty(), "prototypes(0.4,1)");
    c.expect(enumerate_dense_prototypes(r("0.1"), 2).empty(), "prototypes(0.1,2)");
    auto protos = enumerate_dense_prototypes(r("0.6"), 4);
    c.expect(std::any_of(protos.begin(), protos.end(), [&](const Complex2& z) { return z == tet; }),
             "prototypes(0.6,4) contains TET");

    c.expect(certify_simply_connected(tet).certified, "certify(TET)");
    c.expect(certify_simply_connected(t1).certified, "certify(T1)");
    auto cert_k4 = certify_simply_connected(k4);
    c.expect(!cert_k4.certified && cert_k4.failing_pairs.size() == 6, "certify(K4)");
    auto g_k4 = presentation(k4, 0);
    c.expect(g_k4.generators.size() == 3 && g_k4.relators.empty(), "presentation(K4)");
    auto g_t1 = presentation(t1, 0);
    c.expect(g_t1.generators.size() == 1 && g_t1.relators.size() == 1, "presentation(T1)");
    auto g_tet = presentation(tet, 0);
    auto ab_tet = abelianization(g_tet);
    c.expect(g_tet.generators.size() == 3 && g_tet.relators.size() == 4 && ab_tet.rank == 0 && ab_tet.torsion.empty(),
             "presentation(TET)");
    c.expect(certify_id3_noncontractible(x5).noncontractible, "id3(X5)");
    c.expect(!certify_id3_noncontractible(tet).noncontractible, "id3(TET)");
    c.expect(!certify_id3_noncontractible(t1).noncontractible, "id3(T1)");
    c.expect(area_search(t1, id3_loop(t1), 1).upper_bound == 1, "area(T1,1)");
    c.expect(area_search(tet, id3_loop(tet), 1).upper_bound == 1, "area(TET,1)");
    c.expect(!area_search(k4, id3_loop(k4), 10).upper_bound, "area(K4,10)");

    auto core_t1 = collapse_core(t1);
    c.expect(core_t1.f0() == 3 && core_t1.f1() == 0 && core_t1.f2() == 0, "collapse(T1)");
    c.expect(collapse_core(tet) == tet, "collapse(TET)");
    auto ext_faces = tet.faces();
    ext_faces.push_back({1, 2, 5});
    auto ext_edges = tet.edges();
    ext_edges.push_back({1, 5});
    ext_edges.push_back({2, 5});
    auto core_ext = collapse_core(build_complex(5, ext_edges, ext_faces));
    c.expect(core_ext.f0() == 5 && core_ext.faces() == tet.faces() && core_ext.edges() == tet.edges(),
             "collapse(TET + 125)");
    auto h_tet_type = homotopy_type(tet);
    c.expect(h_tet_type.components.size() == 1 && h_tet_type.components[0].counts == WedgeCounts{0, 1, 0},
             "homotopy(TET)");
    auto h_rp_type = homotopy_type(rp6);
    c.expect(h_rp_type.components.size() == 1 && h_rp_type.components[0].counts == WedgeCounts{0, 0, 1},
             "homotopy(RP6)");
    auto h_k4_type = homotopy_type(k4);
    c.expect(h_k4_type.components.size() == 1 && h_k4_type.components[0].counts == WedgeCounts{3, 0, 0},
             "homotopy(K4)");

    auto b_t1 = popped_bound_check(t1, 0);
    c.expect(b_t1.bound == 1 && b_t1.f2 == 1 && b_t1.holds, "popped(T1,0)");
    auto b_tet = popped_bound_check(tet, 0);
    c.expect(b_tet.bound == 4 && b_tet.f2 == 4 && b_tet.holds, "popped(TET,0)");
    auto b_rp = popped_bound_check(rp6, 0);
    c.expect(b_rp.bound == 10 && b_rp.f2 == 10 && b_rp.holds, "popped(RP6,0)");
    return c.outcome();
}

Outcome criterion_h1_threshold()
{
    const int n = 100;
    const auto low = Probability::parse("0.03");
    const auto high = Probability::parse("0.2");
    std::size_t nonvanishing_low = 0;
    std::size_t vanishing_high = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        nonvanishing_low += checked_betti(sample(n, low, t), Coefficients::gf2()).b1 != 0;
        vanishing_high += checked_betti(sample(n, high, t), Coefficients::gf2()).b1 == 0;
    }
    std::ostringstream s;
    s << "p=0.03: b1!=0 in " << nonvanishing_low << "/100 (need >=90); p=0.2: b1=0 in " << vanishing_high
      << "/100 (need >=90)";
    return {nonvanishing_low >= 90 && vanishing_high >= 90, s.str()};
}

Outcome criterion_sc_certificate()
{
    const int n = 75;
    const auto high = Probability::parse("0.55");
    const auto low = Probability::parse("0.3");
    std::size_t certified = 0;
    std::size_t inconclusive = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        certified += certify_simply_connected(sample(n, high, t)).certified;
        inconclusive += !certify_simply_connected(sample(n, low, t)).certified;
    }
    std::ostringstream s;
    s << "p=0.55: certified " << certified << "/50 (need >=45); p=0.3: inconclusive " << inconclusive
      << "/50 (need >=45)";
    return {certified >= 45 && inconclusive >= 45, s.str()};
}

Outcome criterion_sparsity()
{
    const int n = 100;
    const auto p = Probability::from_double(std::pow(100.0, -0.7));
    const auto eps = parse_rational("0.15");
    const std::size_t m = 6;
    std::size_t sparse = 0;
    std::size_t witnesses = 0;
    std::size_t bad_witnesses = 0;
    std::size_t witness_sizes[7] = {};
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto x = sample(n, p, t);
        auto v = check_sparse3(x, eps, m);
        if (v.sparse) {
            ++sparse;
            continue;
        }
        ++witnesses;
        // Direct count: |V(T) u [3]| - 3 < 0.65 |T|, with T a set of faces of X.
        auto vs = face_vertices(v.witness);
        std::size_t outside = 0;
        for (auto u : vs) {
            outside += u > 3;
        }
        bool in_x = std::all_of(v.witness.begin(), v.witness.end(), [&](const Face& f) { return x.has_face(f); });
        bool ok = in_x && !v.witness.empty() && v.witness.size() <= m &&
                  Rational(static_cast<std::int64_t>(outside)) <
                      Rational(65, 100) * static_cast<std::int64_t>(v.witness.size());
        bad_witnesses += !ok;
        ++witness_sizes[std::min<std::size_t>(v.witness.size(), 6)];
    }
    std::ostringstream s;
    s << "p=" << p.text() << ": sparse " << sparse << "/50 (need >=45); witnesses " << witnesses
      << " all re-verified=" << (bad_witnesses == 0 ? "yes" : "no") << "; witness sizes";
    for (std::size_t k = 1; k <= 6; ++k) {
        s << " " << k << ":" << witness_sizes[k];
    }
    return {sparse >= 45 && bad_witnesses == 0, s.str()};
}

Outcome criterion_link_law()
{
    auto stats = link_pair_statistics(30, Probability::parse("0.3"), 2000, acceptance_seed);
    double z = (stats.frequency - 0.09) / stats.sigma;
    std::ostringstream s;
    s << "frequency " << stats.frequency << " vs 0.09, sigma " << stats.sigma << ", z=" << z << " (need |z|<=4)";
    return {std::abs(z) <= 4.0, s.str()};
}

Outcome criterion_oracles()
{
    std::size_t density_ok = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto x = sample(12, Probability::parse("0.25"), t);
        auto oracle = oracles::vertex_subset_density(x);
        auto flow = density_flow(x);
        density_ok += oracle && flow.value == *oracle;
    }

    const std::vector<const char*> eps_grid{"0.1", "0.3", "0.6", "1"};
    std::vector<std::vector<std::vector<Complex2>>> protos(eps_grid.size());
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        for (std::size_t m = 1; m <= 4; ++m) {
            protos[i].push_back(enumerate_dense_prototypes(parse_rational(eps_grid[i]), m));
        }
    }
    std::size_t sparse_ok = 0;
    std::size_t sparse_total = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto x = sample(9, Probability::parse("0.3"), t);
        for (std::size_t i = 0; i < eps_grid.size(); ++i) {
            for (std::size_t m = 1; m <= 4; ++m) {
                const auto& list = protos[i][m - 1];
                bool embedded =
                    std::any_of(list.begin(), list.end(), [&](const Complex2& z) { return oracles::embeds(z, x); });
                ++sparse_total;
                sparse_ok += check_sparse(x, parse_rational(eps_grid[i]), m).sparse == !embedded;
            }
        }
    }

    std::vector<Complex2> xs{fixtures::t1(), fixtures::tet(), fixtures::rp6(), fixtures::k4(), fixtures::x5()};
    for (std::uint64_t t = 0; t < 20; ++t) {
        xs.push_back(sample(10, Probability::parse(t % 2 ? "0.1" : "0.3"), t));
    }
    std::size_t ab_ok = 0;
    std::size_t ab_total = 0;
    for (const auto& x : xs) {
        auto h = h1_integral(x);
        // H1 of a complex is the direct sum over its components.
        std::size_t rank = 0;
        std::vector<std::int64_t> torsion;
        for (std::size_t c = 0; c < vertex_components(x).size(); ++c) {
            auto ab = abelianization(presentation(x, c));
            rank += ab.rank;
            torsion.insert(torsion.end(), ab.torsion.begin(), ab.torsion.end());
        }
        std::sort(torsion.begin(), torsion.end());
        ++ab_total;
        ab_ok += rank == h.rank && torsion == h.torsion;
    }

    std::ostringstream s;
    s << "flow=brute force " << density_ok << "/50; check_sparse=embedding " << sparse_ok << "/" << sparse_total
      << "; abelianization=H1 " << ab_ok << "/" << ab_total;
    return {density_ok == 50 && sparse_ok == sparse_total && ab_ok == ab_total, s.str()};
}

Outcome criterion_invariants()
{
    std::vector<std::string> problems;

    for (std::uint64_t t = 0; t < 30; ++t) {
        auto x = sample(12, Probability::parse(t % 3 == 0 ? "0.4" : "0.15"), t);
        for (auto c : {Coefficients::gf2(), Coefficients::gfq(3), Coefficients::rationals()}) {
            checked_betti(x, c);
        }
    }

    std::size_t collapse_cases = 0;
    for (std::uint64_t t = 0; t < 10; ++t) {
        auto x = sample(11, Probability::parse("0.25"), t);
        std::vector<Edge> anchors;
        for (std::size_t i = 0; i < x.edges().size(); i += 9) {
            anchors.push_back(x.edges()[i]);
        }
        auto reference = collapse_core(x, anchors);
        for (std::uint64_t order = 0; order < 20; ++order) {
            ++collapse_cases;
            if (!(collapse_core(x, anchors, order) == reference)) {
                problems.push_back("collapse order " + std::to_string(order) + " trial " + std::to_string(t));
            }
        }
    }

    std::size_t typed = 0;
    for (std::uint64_t t = 0; t < 200 && typed < 40; ++t) {
        auto x = sample(12, Probability::parse(t % 2 ? "0.04" : "0.08"), t);
        if (!is_strictly_admissible(x)) {
            continue;
        }
        ++typed;
        try {
            auto h = homotopy_type(x);
            std::size_t p_total = 0;
            for (const auto& c : h.components) {
                p_total += c.counts.projective_planes;
                if (c.euler != 1 - static_cast<long long>(c.counts.circles) + static_cast<long long>(c.counts.spheres)) {
                    problems.push_back("chi != 1 - c + s");
                }
            }
            auto two = checked_betti(x, Coefficients::gf2());
            auto q = checked_betti(x, Coefficients::rationals());
            auto h1 = h1_integral(x);
            auto even = static_cast<std::size_t>(std::count_if(
                h1.invariant_factors.begin(), h1.invariant_factors.end(), [](std::int64_t d) { return d % 2 == 0; }));
            if (two.b1 - q.b1 != p_total || two.b2 - q.b2 != p_total || even != p_total) {
                problems.push_back("projective plane counts disagree");
            }
        } catch (const Error& e) {
            problems.push_back(std::string("homotopy_type: ") + e.what());
        }
    }

    std::size_t area_cases = 0;
    AreaSearchOptions opts;
    opts.budget_cap = 6;
    opts.max_states = 20'000;
    for (std::uint64_t t = 0; t < 60; ++t) {
        auto x = sample(8, Probability::parse(t % 2 ? "0.2" : "0.3"), t);
        if (!certify_id3_noncontractible(x).noncontractible) {
            continue;
        }
        for (std::size_t b = 0; b <= opts.budget_cap; ++b) {
            ++area_cases;
            if (area_search(x, id3_loop(x), b, opts).upper_bound) {
                problems.push_back("area bound on certified loop, trial " + std::to_string(t));
            }
        }
    }

    SweepConfig cfg;
    cfg.n = {15, 20};
    cfg.p = {Probability::parse("0.1"), Probability::parse("0.3")};
    cfg.trials = 5;
    cfg.seed = acceptance_seed;
    cfg.checks = {CheckSpec::parse("h1_gf2"), CheckSpec::parse("sc_certify"), CheckSpec::parse("sparse3(0.15,4)"),
                  CheckSpec::parse("link_stats")};
    cfg.threads = 1;
    auto first = run_sweep(cfg).csv();
    cfg.threads = 4;
    auto second = run_sweep(cfg).csv();
    if (first != second) {
        problems.push_back("sweep CSV differs between reruns");
    }

    for (const auto& v : euler_violations) {
        problems.push_back("euler-poincare " + v);
    }
    std::ostringstream s;
    s << "euler-poincare on " << euler_checked << " betti computations; collapse orders " << collapse_cases
      << "; homotopy types " << typed << "; area searches on certified loops " << area_cases
      << "; csv reruns identical=" << (first == second ? "yes" : "no");
    for (std::size_t i = 0; i < problems.size() && i < 5; ++i) {
        s << "; " << problems[i];
    }
    return {problems.empty() && typed > 0 && area_cases > 0, s.str()};
}

Outcome criterion_gap()
{
    const int n = 100;
    const auto p = Probability::parse("0.2");
    std::size_t gap = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto x = sample(n, p, t);
        bool vanishes = checked_betti(x, Coefficients::gf2()).b1 == 0;
        bool inconclusive = !certify_simply_connected(x).certified;
        gap += vanishes && inconclusive;
    }
    std::ostringstream s;
    s << "b1=0 and certificate inconclusive in " << gap << "/50 (need >=40)";
    return {gap >= 40, s.str()};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"fixture exactness", criterion_fixtures},
        {"H1(GF(2)) threshold", criterion_h1_threshold},
        {"simple-connectivity certificate", criterion_sc_certificate},
        {"sparse-regime sparsity", criterion_sparsity},
        {"link law", criterion_link_law},
        {"oracle equivalences", criterion_oracles},
        {"structural invariants", criterion_invariants},
        {"gap-regime cross-tabulation", criterion_gap},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
