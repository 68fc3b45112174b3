#include <catch2/catch_amalgamated.hpp>

#include "randcx/complex.hpp"
#include "randcx/random.hpp"
#include "support/fixtures.hpp"

using namespace randcx;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

Complex2 random_y(int n, const char* p, std::uint64_t trial)
{
    auto prob = Probability::parse(p);
    return gen_Y(n, prob, make_rng_spec(11, "Y", n, prob, trial));
}

} // namespace

TEST_CASE("build_complex face vectors", "[complex]")
{
    auto t1 = fixtures::t1();
    CHECK(t1.f0() == 3);
    CHECK(t1.f1() == 3);
    CHECK(t1.f2() == 1);

    auto tet = fixtures::tet();
    CHECK(tet.f0() == 4);
    CHECK(tet.f1() == 6);
    CHECK(tet.f2() == 4);
}

TEST_CASE("build_complex validation", "[complex][errors]")
{
    CHECK(throws_kind(ErrorKind::missing_boundary_edge, [] { build_complex(3, {{1, 2}}, {{1, 2, 3}}); }));
    CHECK(throws_kind(ErrorKind::degenerate_simplex, [] { build_complex(3, full_skeleton, {{1, 1, 2}}); }));
    CHECK(throws_kind(ErrorKind::degenerate_simplex, [] { build_complex(3, {{2, 2}}, {}); }));
    CHECK(throws_kind(ErrorKind::out_of_range, [] { build_complex(3, full_skeleton, {{1, 2, 4}}); }));
    CHECK(throws_kind(ErrorKind::out_of_range, [] { build_complex(3, {{0, 1}}, {}); }));
    CHECK(throws_kind(ErrorKind::out_of_range, [] { build_complex(-1, full_skeleton, {}); }));
}

TEST_CASE("duplicate and unsorted input is canonicalized", "[complex]")
{
    auto x = build_complex(4, full_skeleton, {{3, 2, 1}, {1, 2, 3}, {4, 1, 2}});
    REQUIRE(x.f2() == 2);
    CHECK(x.faces()[0] == Face{1, 2, 3});
    CHECK(x.faces()[1] == Face{1, 2, 4});

    auto listed = build_complex(3, {{2, 1}, {1, 2}, {3, 2}, {1, 3}}, {{1, 2, 3}});
    CHECK(listed.f1() == 3);
    CHECK(listed == fixtures::t1());
}

TEST_CASE("full and listed skeletons agree on lookups", "[complex]")
{
    auto full = random_y(9, "0.3", 0);
    auto listed = build_complex(9, full.edges(), full.faces());
    REQUIRE(listed.f1() == 36);
    for (const auto& e : full.edges()) {
        CHECK(full.edge_index(e) == listed.edge_index(e));
        CHECK(face_degree(full, e) == face_degree(listed, e));
    }
    CHECK(full == listed);
}

TEST_CASE("link examples", "[complex][link]")
{
    auto l = link(fixtures::tet(), 1);
    CHECK(l.vertices() == std::vector<Vertex>{2, 3, 4});
    CHECK(l.edges() == std::vector<Edge>{{2, 3}, {2, 4}, {3, 4}});

    auto l1 = link(fixtures::t1(), 1);
    CHECK(l1.edges() == std::vector<Edge>{{2, 3}});

    auto lk = link(fixtures::k4(), 1);
    CHECK(lk.vertices() == std::vector<Vertex>{2, 3, 4});
    CHECK(lk.edges().empty());

    CHECK(throws_kind(ErrorKind::out_of_range, [] { link(fixtures::k4(), 5); }));
}

TEST_CASE("link in a listed skeleton only uses neighbours", "[complex][link]")
{
    auto x = build_complex(5, {{1, 2}, {1, 3}, {2, 3}, {4, 5}}, {{1, 2, 3}});
    auto l = link(x, 1);
    CHECK(l.vertices() == std::vector<Vertex>{2, 3});
    CHECK(l.edges() == std::vector<Edge>{{2, 3}});
    CHECK(link(x, 4).vertices() == std::vector<Vertex>{5});
}

TEST_CASE("link intersection examples", "[complex][link]")
{
    auto g = link_intersection_graph(fixtures::tet(), 1, 2);
    CHECK(g.vertices() == std::vector<Vertex>{3, 4});
    CHECK(g.edges() == std::vector<Edge>{{3, 4}});

    auto g1 = link_intersection_graph(fixtures::t1(), 1, 2);
    CHECK(g1.vertices() == std::vector<Vertex>{3});
    CHECK(g1.edges().empty());

    auto gk = link_intersection_graph(fixtures::k4(), 1, 2);
    CHECK(gk.vertices() == std::vector<Vertex>{3, 4});
    CHECK(gk.edges().empty());
    CHECK(connected_components(gk) == std::vector<std::vector<Vertex>>{{3}, {4}});

    CHECK(throws_kind(ErrorKind::equal_vertices, [] { link_intersection_graph(fixtures::tet(), 2, 2); }));
    CHECK(throws_kind(ErrorKind::out_of_range, [] { link_intersection_graph(fixtures::tet(), 1, 9); }));
}

TEST_CASE("link intersection equals intersection of links", "[complex][link][property]")
{
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto x = random_y(10, "0.4", trial);
        for (Vertex a = 1; a <= 4; ++a) {
            for (Vertex b = a + 1; b <= 5; ++b) {
                auto la = link(x, a).edges();
                auto lb = link(x, b).edges();
                std::vector<Edge> both;
                std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(both));
                std::erase_if(both, [&](const Edge& e) { return e.a == a || e.a == b || e.b == a || e.b == b; });
                CHECK(link_intersection_graph(x, a, b).edges() == both);
            }
        }
    }
}

TEST_CASE("euler characteristic and L", "[complex]")
{
    CHECK(euler_characteristic(fixtures::t1()) == 1);
    CHECK(euler_characteristic(fixtures::tet()) == 2);
    CHECK(euler_characteristic(fixtures::rp6()) == 1);

    CHECK(length_L(fixtures::t1()) == 3);
    CHECK(length_L(fixtures::tet()) == 0);
    CHECK(length_L(fixtures::k4()) == 12);
}

TEST_CASE("face degree examples", "[complex]")
{
    CHECK(face_degree(fixtures::tet(), {1, 2}) == 2);
    CHECK(face_degree(fixtures::t1(), {1, 2}) == 1);
    CHECK(face_degree(fixtures::k4(), {1, 2}) == 0);
    CHECK(face_degree(fixtures::tet(), {2, 1}) == 2);

    auto listed = build_complex(4, {{1, 2}}, {});
    CHECK(throws_kind(ErrorKind::missing_edge, [&] { face_degree(listed, {3, 4}); }));
}

TEST_CASE("face degrees sum to 3 f2 and L agrees with its degree form", "[complex][property]")
{
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        auto x = random_y(12, "0.2", trial);
        long long total = 0;
        for (const auto& e : x.edges()) {
            total += face_degree(x, e);
        }
        CHECK(total == 3 * static_cast<long long>(x.f2()));
        CHECK(length_L(x) == length_L_by_degrees(x));
    }
}

TEST_CASE("induced subcomplex", "[complex]")
{
    auto sub = induced_subcomplex(fixtures::tet(), {{1, 2, 3}});
    CHECK(sub == fixtures::t1());

    auto all = induced_subcomplex(fixtures::tet(), fixtures::tet().faces());
    CHECK(all.f0() == 4);
    CHECK(all.f1() == 6);
    CHECK(all.f2() == 4);

    auto two = induced_subcomplex(fixtures::rp6(), {{1, 2, 3}, {1, 2, 4}});
    CHECK(two.f0() == 4);
    CHECK(two.f1() == 5);
    CHECK(two.f2() == 2);

    CHECK(throws_kind(ErrorKind::unknown_face, [] { induced_subcomplex(fixtures::t1(), {{1, 2, 4}}); }));
}

TEST_CASE("induced subcomplex relabels in vertex order", "[complex]")
{
    auto sub = induced_subcomplex(fixtures::x5(), {{1, 4, 5}});
    CHECK(sub.n() == 3);
    CHECK(sub.faces() == std::vector<Face>{{1, 2, 3}});
}

TEST_CASE("induced subcomplex is idempotent", "[complex][property]")
{
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto x = random_y(10, "0.15", trial);
        std::vector<Face> half;
        for (std::size_t i = 0; i < x.f2(); i += 2) {
            half.push_back(x.faces()[i]);
        }
        if (half.empty()) {
            continue;
        }
        auto once = induced_subcomplex(x, half);
        auto twice = induced_subcomplex(once, once.faces());
        CHECK(once == twice);
    }
}

TEST_CASE("chi and L are additive over disjoint unions", "[complex][property]")
{
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto x = random_y(7, "0.3", trial);
        auto y = random_y(6, "0.5", trial + 100);
        auto u = disjoint_union(x, y);
        CHECK(euler_characteristic(u) == euler_characteristic(x) + euler_characteristic(y));
        CHECK(length_L(u) == length_L(x) + length_L(y));
    }
}

TEST_CASE("connected components and spanning trees", "[complex][graph]")
{
    Graph triangle({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    CHECK(connected_components(triangle) == std::vector<std::vector<Vertex>>{{1, 2, 3}});

    auto tree = spanning_tree(skeleton_graph(fixtures::k4()));
    CHECK(tree.size() == 3);

    Graph split({1, 2, 3, 4}, {{1, 2}, {3, 4}});
    CHECK(connected_components(split) == std::vector<std::vector<Vertex>>{{1, 2}, {3, 4}});
    CHECK(throws_kind(ErrorKind::disconnected, [&] { spanning_tree(split); }));

    CHECK(throws_kind(ErrorKind::out_of_range, [] { Graph({1, 2}, {{1, 3}}); }));
}

TEST_CASE("spanning tree spans and is acyclic", "[complex][graph][property]")
{
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto g = skeleton_graph(random_y(9, "0.2", trial));
        auto tree = spanning_tree(g);
        REQUIRE(tree.size() == g.vertices().size() - 1);
        Graph t(g.vertices(), tree);
        CHECK(connected_components(t).size() == 1);
    }
}

TEST_CASE("loops", "[complex][loop]")
{
    auto x = fixtures::tet();
    CHECK(id3_loop(x).cycle == std::vector<Vertex>{1, 2, 3});
    CHECK(throws_kind(ErrorKind::invalid_loop, [&] { make_loop(x, {1, 2}); }));
    CHECK(throws_kind(ErrorKind::invalid_loop, [&] { make_loop(x, {1, 2, 2}); }));

    auto sparse = build_complex(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, {});
    CHECK(make_loop(sparse, {1, 2, 3, 4}).length() == 4);
    CHECK(throws_kind(ErrorKind::invalid_loop, [&] { make_loop(sparse, {1, 2, 3}); }));
}

TEST_CASE("restrict to vertices keeps induced simplices", "[complex]")
{
    auto r = restrict_to_vertices(fixtures::tet(), {1, 2, 4});
    CHECK(r.n() == 3);
    CHECK(r.f1() == 3);
    CHECK(r.faces() == std::vector<Face>{{1, 2, 3}});
}

TEST_CASE("star lists incident faces", "[complex]")
{
    auto x = fixtures::rp6();
    for (Vertex v = 1; v <= 6; ++v) {
        auto s = x.star(v);
        CHECK(s.size() == 5);
        for (auto i : s) {
            CHECK(x.faces()[i].contains(v));
        }
    }
}
