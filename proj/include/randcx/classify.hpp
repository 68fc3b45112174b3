#ifndef RANDCX_CLASSIFY_HPP
#define RANDCX_CLASSIFY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/density.hpp"
#include "randcx/homology.hpp"
#include "randcx/rng.hpp"

namespace randcx {

/// K_A(X): the largest subcomplex in which every edge lies in at least two
/// faces, or in at least one face when it belongs to `anchor_edges`. Deletes
/// offending edges together with their faces until none is left. Vertices are
/// kept. `order_seed` shuffles the initial worklist; the result does not
/// depend on it.
inline Complex2 collapse_core(const Complex2& x, const std::vector<Edge>& anchor_edges = {},
                              std::optional<std::uint64_t> order_seed = std::nullopt)
{
    const auto edges = x.edges();
    const std::size_t f1 = edges.size();
    std::vector<char> anchored(f1, 0);
    for (auto e : anchor_edges) {
        e = make_edge(e.a, e.b);
        auto idx = x.edge_index(e);
        if (!idx) {
            fail(ErrorKind::missing_edge, "anchor edge " + to_string(e) + " is not in the complex");
        }
        anchored[*idx] = 1;
    }

    std::vector<int> degree(f1, 0);
    std::vector<std::vector<std::uint32_t>> incident(f1);
    for (std::size_t k = 0; k < x.f2(); ++k) {
        for (const auto& e : x.faces()[k].boundary()) {
            auto idx = *x.edge_index(e);
            ++degree[idx];
            incident[idx].push_back(static_cast<std::uint32_t>(k));
        }
    }
    auto violates = [&](std::size_t i) { return degree[i] == 0 || (degree[i] == 1 && !anchored[i]); };

    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < f1; ++i) {
        if (violates(i)) {
            work.push_back(i);
        }
    }
    if (order_seed) {
        CounterRng rng(*order_seed);
        for (std::size_t i = work.size(); i > 1; --i) {
            std::swap(work[i - 1], work[rng.next_below(i)]);
        }
    }
    if (work.empty()) {
        return x;
    }

    std::vector<char> edge_alive(f1, 1);
    std::vector<char> face_alive(x.f2(), 1);
    while (!work.empty()) {
        auto i = work.back();
        work.pop_back();
        if (!edge_alive[i] || !violates(i)) {
            continue;
        }
        edge_alive[i] = 0;
        for (auto k : incident[i]) {
            if (!face_alive[k]) {
                continue;
            }
            face_alive[k] = 0;
            for (const auto& e : x.faces()[k].boundary()) {
                auto j = *x.edge_index(e);
                --degree[j];
                if (edge_alive[j] && violates(j)) {
                    work.push_back(j);
                }
            }
        }
    }

    std::vector<Edge> kept_edges;
    for (std::size_t i = 0; i < f1; ++i) {
        if (edge_alive[i]) {
            kept_edges.push_back(edges[i]);
        }
    }
    std::vector<Face> kept_faces;
    for (std::size_t k = 0; k < x.f2(); ++k) {
        if (face_alive[k]) {
            kept_faces.push_back(x.faces()[k]);
        }
    }
    return build_complex(x.n(), std::move(kept_edges), std::move(kept_faces));
}

/// Wedge of c circles, s spheres and p projective planes.
struct WedgeCounts {
    std::size_t circles = 0;
    std::size_t spheres = 0;
    std::size_t projective_planes = 0;

    friend bool operator==(const WedgeCounts&, const WedgeCounts&) = default;
};

struct ComponentType {
    std::vector<Vertex> vertices;
    WedgeCounts counts;
    long long euler = 0;
};

struct HomotopyType {
    std::vector<ComponentType> components; // ordered by least vertex
};

/// Reads (c, s, p) per component off the Betti numbers over Q and GF(2):
/// c = b1(Q), s = b2(Q), p = b1(GF2) - b1(Q). Requires e(X) > 1/2
/// (NotAdmissible). The second reading p = b2(GF2) - b2(Q) and the relation
/// chi = 1 - c + s are checked (InternalInconsistency).
inline HomotopyType homotopy_type(const Complex2& x)
{
    if (!is_strictly_admissible(x)) {
        fail(ErrorKind::not_admissible, "homotopy type needs e(X) > 1/2");
    }
    HomotopyType out;
    for (auto& comp : vertex_components(x)) {
        auto sub = restrict_to_vertices(x, comp);
        auto q = betti(sub, Coefficients::rationals());
        auto two = betti(sub, Coefficients::gf2());
        if (two.b1 < q.b1 || two.b2 < q.b2 || two.b1 - q.b1 != two.b2 - q.b2) {
            fail(ErrorKind::internal_inconsistency,
                 "projective plane counts disagree on component starting at " + std::to_string(comp.front()));
        }
        ComponentType ct;
        ct.counts = {q.b1, q.b2, two.b1 - q.b1};
        ct.euler = euler_characteristic(sub);
        if (ct.euler != 1 - static_cast<long long>(q.b1) + static_cast<long long>(q.b2)) {
            fail(ErrorKind::internal_inconsistency,
                 "euler characteristic mismatch on component starting at " + std::to_string(comp.front()));
        }
        ct.vertices = std::move(comp);
        out.components.push_back(std::move(ct));
    }
    return out;
}

struct PoppedBound {
    int w = 0;
    std::size_t f2 = 0;
    Rational density;
    Rational bound;
    bool holds = false;
};

/// Checks f2 <= (2 chi - 2w + L) / (2 e_w - 1) in exact arithmetic.
inline PoppedBound popped_bound_check(const Complex2& x, int w)
{
    if (w != 0 && w != 3) {
        fail(ErrorKind::out_of_range, "w must be 0 or 3");
    }
    if (x.f2() == 0) {
        fail(ErrorKind::no_faces, "the bound needs at least one face");
    }
    PoppedBound out;
    out.w = w;
    out.f2 = x.f2();
    out.density = density_e_w(x, w).value;
    Rational denominator = 2 * out.density - 1;
    if (denominator <= 0) {
        fail(ErrorKind::denominator_nonpositive, "2 e_w - 1 = " + to_string(denominator) + " is not positive");
    }
    Rational numerator(2 * euler_characteristic(x) - 2 * w + length_L(x));
    out.bound = numerator / denominator;
    out.holds = Rational(static_cast<std::int64_t>(out.f2)) <= out.bound;
    return out;
}

} // namespace randcx

#endif
