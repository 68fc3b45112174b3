#ifndef RANDCX_DENSITY_HPP
#define RANDCX_DENSITY_HPP

// Densest subcomplexes and small-subcomplex sparsity.
//
// For a face set T write V(T) for its vertices. The density of X is
//   e(X)   = min over nonempty T of |V(T)| / |T|
//   e_w(X) = min over nonempty T of |V(T) \ [w]| / |T|
// Minimizers never carry isolated vertices, so only face sets are searched.
// All comparisons use exact rationals.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/maxflow.hpp"
#include "randcx/rational.hpp"

namespace randcx {

struct DensityReport {
    enum class Mode { unrestricted, anchored };

    Rational value;
    std::vector<Face> witness;
    Mode mode = Mode::unrestricted;
    int anchor = 0;
};

inline constexpr std::size_t brute_force_face_limit = 20;

namespace detail {

inline void check_density_args(const Complex2& x, int anchor)
{
    if (anchor != 0 && anchor != 3) {
        fail(ErrorKind::anchor_missing, "only anchors w = 0 and w = 3 are supported");
    }
    if (anchor > x.n()) {
        fail(ErrorKind::anchor_missing, "vertices [" + std::to_string(anchor) + "] not all present");
    }
    if (x.f2() == 0) {
        fail(ErrorKind::no_faces, "density is undefined without faces");
    }
}

inline std::size_t free_vertex_count(std::span<const Face> faces, int anchor)
{
    auto vs = face_vertices(faces);
    return static_cast<std::size_t>(
        std::count_if(vs.begin(), vs.end(), [anchor](Vertex v) { return v > anchor; }));
}

} // namespace detail

/// Exhaustive search over all nonempty face subsets (f2 <= 20, TooLarge
/// otherwise). Ties keep the first minimizer in subset-mask order.
inline DensityReport density_bruteforce(const Complex2& x, int anchor = 0)
{
    detail::check_density_args(x, anchor);
    const std::size_t f = x.f2();
    if (f > brute_force_face_limit) {
        fail(ErrorKind::too_large, "brute force density is limited to 20 faces");
    }
    auto vs = face_vertices(x.faces());
    std::vector<std::uint64_t> face_mask(f, 0);
    for (std::size_t i = 0; i < f; ++i) {
        const Face& face = x.faces()[i];
        for (Vertex v : {face.a, face.b, face.c}) {
            if (v > anchor) {
                auto bit = std::lower_bound(vs.begin(), vs.end(), v) - vs.begin();
                face_mask[i] |= std::uint64_t{1} << bit;
            }
        }
    }
    const std::uint32_t subsets = 1U << f;
    std::vector<std::uint64_t> vmask(subsets, 0);
    std::uint64_t best_v = 0;
    std::uint64_t best_t = 0;
    std::uint32_t best_mask = 0;
    for (std::uint32_t s = 1; s < subsets; ++s) {
        auto low = static_cast<std::size_t>(std::countr_zero(s));
        vmask[s] = vmask[s & (s - 1)] | face_mask[low];
        auto v = static_cast<std::uint64_t>(std::popcount(vmask[s]));
        auto t = static_cast<std::uint64_t>(std::popcount(s));
        if (best_t == 0 || v * best_t < best_v * t) {
            best_v = v;
            best_t = t;
            best_mask = s;
        }
    }
    DensityReport out;
    out.value = Rational(static_cast<std::int64_t>(best_v), static_cast<std::int64_t>(best_t));
    out.mode = anchor ? DensityReport::Mode::anchored : DensityReport::Mode::unrestricted;
    out.anchor = anchor;
    for (std::size_t i = 0; i < f; ++i) {
        if (best_mask >> i & 1U) {
            out.witness.push_back(x.faces()[i]);
        }
    }
    return out;
}

/// Exact minimum density by Dinkelbach iteration on a closure network:
/// source -> face (capacity a), face -> each free vertex (infinite),
/// free vertex -> sink (capacity b). A face set with |T| a - |V(T)| b > 0
/// exists iff some ratio is below a/b, and the minimal source side of the
/// minimum cut is such a set. Iterate until no improvement.
inline DensityReport density_flow(const Complex2& x, int anchor = 0)
{
    detail::check_density_args(x, anchor);
    auto vs = face_vertices(x.faces());
    std::vector<Vertex> free_vs;
    for (auto v : vs) {
        if (v > anchor) {
            free_vs.push_back(v);
        }
    }
    auto vertex_node = [&](Vertex v) -> std::ptrdiff_t {
        auto it = std::lower_bound(free_vs.begin(), free_vs.end(), v);
        return it != free_vs.end() && *it == v ? it - free_vs.begin() : -1;
    };

    std::vector<Face> current = x.faces();
    auto numerator = static_cast<std::int64_t>(detail::free_vertex_count(current, anchor));
    auto denominator = static_cast<std::int64_t>(current.size());
    const std::size_t faces = x.f2();
    const std::size_t source = 0;
    const std::size_t sink = 1;
    while (numerator > 0) {
        Rational ratio(numerator, denominator);
        const std::int64_t a = ratio.numerator();
        const std::int64_t b = ratio.denominator();
        FlowNetwork net(2 + faces + free_vs.size());
        for (std::size_t i = 0; i < faces; ++i) {
            const Face& face = x.faces()[i];
            net.add_edge(source, 2 + i, a);
            for (Vertex v : {face.a, face.b, face.c}) {
                if (auto node = vertex_node(v); node >= 0) {
                    net.add_edge(2 + i, 2 + faces + static_cast<std::size_t>(node), FlowNetwork::infinite);
                }
            }
        }
        for (std::size_t j = 0; j < free_vs.size(); ++j) {
            net.add_edge(2 + faces + j, sink, b);
        }
        auto cut = net.max_flow(source, sink);
        if (cut >= a * static_cast<std::int64_t>(faces)) {
            break;
        }
        auto side = net.source_side(source);
        std::vector<Face> better;
        for (std::size_t i = 0; i < faces; ++i) {
            if (side[2 + i]) {
                better.push_back(x.faces()[i]);
            }
        }
        current = std::move(better);
        numerator = static_cast<std::int64_t>(detail::free_vertex_count(current, anchor));
        denominator = static_cast<std::int64_t>(current.size());
    }
    DensityReport out;
    out.value = Rational(numerator, denominator);
    out.witness = std::move(current);
    out.mode = anchor ? DensityReport::Mode::anchored : DensityReport::Mode::unrestricted;
    out.anchor = anchor;
    return out;
}

/// e(X): brute force up to 20 faces, max-flow beyond. NoFaces if f2 = 0.
inline DensityReport density_e(const Complex2& x)
{
    return x.f2() <= brute_force_face_limit ? density_bruteforce(x, 0) : density_flow(x, 0);
}

/// e_w(X) for w in {0, 3}. NoFaces if f2 = 0; AnchorMissing if [w] is not
/// contained in the vertex set or w is unsupported.
inline DensityReport density_e_w(const Complex2& x, int w)
{
    return x.f2() <= brute_force_face_limit ? density_bruteforce(x, w) : density_flow(x, w);
}

/// e(X) >= 1/2 + eps. Complexes without faces are admissible.
inline bool is_admissible(const Complex2& x, const Rational& eps)
{
    if (x.f2() == 0) {
        return true;
    }
    return density_e(x).value >= Rational(1, 2) + eps;
}

/// e_w(X) >= 1/2 + eps with w = 3 by default. No faces: admissible.
inline bool is_admissible_anchored(const Complex2& x, const Rational& eps, int w = 3)
{
    if (x.f2() == 0) {
        return true;
    }
    return density_e_w(x, w).value >= Rational(1, 2) + eps;
}

/// e(X) > 1/2, i.e. admissible for some positive eps.
inline bool is_strictly_admissible(const Complex2& x)
{
    return x.f2() == 0 || density_e(x).value > Rational(1, 2);
}

struct SparsityVerdict {
    bool sparse = true;
    std::vector<Face> witness; // empty when sparse
    Rational eps;
    std::size_t m = 0;
    bool anchored = false;
};

namespace detail {

/// Searches for a face set T with |T| <= m and
///   |V(T) \ [anchor]| < (1/2 + eps) |T|.
///
/// Any violating T sits inside some vertex set U = [anchor] + S with
/// |S| < (1/2 + eps) m, and taking the first min(m, F(U)) faces of U is as
/// good as any T inside U. Splitting U into parts with no face across them
/// leaves a violating part, so it is enough to visit sets S that are
/// connected in the graph "u ~ v iff some face contains both" (anchors
/// removed). These are enumerated once each with the ESU scheme. The
/// lexicographically least witness over all visited sets is reported.
inline SparsityVerdict sparsity_search(const Complex2& x, const Rational& eps, std::size_t m, int anchor)
{
    if (m < 1) {
        fail(ErrorKind::out_of_range, "sparsity needs m >= 1");
    }
    if (anchor > x.n()) {
        fail(ErrorKind::anchor_missing, "vertices [" + std::to_string(anchor) + "] not all present");
    }
    SparsityVerdict verdict;
    verdict.eps = eps;
    verdict.m = m;
    verdict.anchored = anchor > 0;

    const Rational r = Rational(1, 2) + eps;
    if (r <= 0 || x.f2() == 0) {
        return verdict;
    }
    const std::int64_t rn = r.numerator();
    const std::int64_t rd = r.denominator();
    const auto mm = static_cast<std::int64_t>(m);
    // Largest |S| with |S| < r m.
    const std::int64_t max_free = (rn * mm - 1) / rd;

    const int n = x.n();
    std::vector<char> in_u(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 1; v <= anchor; ++v) {
        in_u[v] = 1;
    }
    std::vector<Face> best;
    auto violates = [&](std::int64_t free, std::int64_t face_count) {
        return free * rd < rn * std::min(face_count, mm);
    };
    std::unordered_set<std::uint64_t> face_keys;
    face_keys.reserve(x.f2() * 2);
    auto face_key = [](const Face& f) {
        return (static_cast<std::uint64_t>(f.a) << 42) | (static_cast<std::uint64_t>(f.b) << 21) |
               static_cast<std::uint64_t>(f.c);
    };
    for (const auto& f : x.faces()) {
        face_keys.insert(face_key(f));
    }
    auto has_face = [&](const Face& f) { return face_keys.count(face_key(f)) > 0; };

    // U is small, so faces inside it are found by direct lookup; visiting
    // triples in lexicographic order yields the faces already sorted.
    auto record = [&](const std::vector<Vertex>& s) {
        std::vector<Vertex> u;
        for (int v = 1; v <= anchor; ++v) {
            u.push_back(v);
        }
        u.insert(u.end(), s.begin(), s.end());
        std::sort(u.begin(), u.end());
        std::vector<Face> faces;
        for (std::size_t i = 0; i < u.size() && faces.size() < m; ++i) {
            for (std::size_t j = i + 1; j < u.size() && faces.size() < m; ++j) {
                for (std::size_t k = j + 1; k < u.size() && faces.size() < m; ++k) {
                    Face f{u[i], u[j], u[k]};
                    if (has_face(f)) {
                        faces.push_back(f);
                    }
                }
            }
        }
        if (best.empty() || faces < best) {
            best = std::move(faces);
        }
    };

    // Faces on the anchor alone.
    std::int64_t anchor_faces = 0;
    if (anchor >= 3 && x.has_face({1, 2, 3})) {
        anchor_faces = 1;
    }
    if (anchor_faces > 0 && violates(0, anchor_faces)) {
        record({});
    }
    if (max_free < 1) {
        verdict.sparse = best.empty();
        verdict.witness = best;
        return verdict;
    }

    // Co-face graph on free vertices.
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& f : x.faces()) {
        std::array<Vertex, 3> vs{f.a, f.b, f.c};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i != j && vs[i] > anchor && vs[j] > anchor) {
                    adj[vs[i]].push_back(vs[j]);
                }
            }
        }
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    std::vector<int> s_neighbours(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Vertex> members;
    std::int64_t face_count = anchor_faces;

    std::vector<Vertex> u_list;
    for (int v = 1; v <= anchor; ++v) {
        u_list.push_back(v);
    }
    auto add = [&](Vertex w) {
        std::int64_t gained = 0;
        const std::size_t k = u_list.size();
        if (k * (k - 1) / 2 < x.star(w).size()) {
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = i + 1; j < k; ++j) {
                    gained += has_face(make_face(w, u_list[i], u_list[j]));
                }
            }
        } else {
            for (auto id : x.star(w)) {
                const Face& f = x.faces()[id];
                Vertex o1 = f.a == w ? f.b : f.a;
                Vertex o2 = f.c == w ? f.b : f.c;
                if (in_u[o1] && in_u[o2]) {
                    ++gained;
                }
            }
        }
        u_list.push_back(w);
        in_u[w] = 1;
        members.push_back(w);
        for (auto u : adj[w]) {
            ++s_neighbours[u];
        }
        face_count += gained;
        return gained;
    };
    auto remove = [&](Vertex w, std::int64_t gained) {
        in_u[w] = 0;
        members.pop_back();
        u_list.pop_back();
        for (auto u : adj[w]) {
            --s_neighbours[u];
        }
        face_count -= gained;
    };

    std::function<void(std::vector<Vertex>, Vertex)> extend = [&](std::vector<Vertex> ext, Vertex root) {
        if (violates(static_cast<std::int64_t>(members.size()), face_count)) {
            record(members);
        }
        if (static_cast<std::int64_t>(members.size()) >= max_free) {
            return;
        }
        while (!ext.empty()) {
            Vertex w = ext.back();
            ext.pop_back();
            std::vector<Vertex> next = ext;
            for (auto u : adj[w]) {
                if (u > root && !in_u[u] && s_neighbours[u] == 0) {
                    next.push_back(u);
                }
            }
            auto gained = add(w);
            extend(std::move(next), root);
            remove(w, gained);
        }
    };

    for (Vertex v = anchor + 1; v <= n; ++v) {
        if (adj[v].empty() && x.star(v).empty()) {
            continue;
        }
        std::vector<Vertex> ext;
        for (auto u : adj[v]) {
            if (u > v) {
                ext.push_back(u);
            }
        }
        auto gained = add(v);
        extend(std::move(ext), v);
        remove(v, gained);
    }

    verdict.sparse = best.empty();
    verdict.witness = std::move(best);
    return verdict;
}

} // namespace detail

/// (eps, m)-sparsity: Sparse iff no nonempty T with |T| <= m has
/// |V(T)| < (1/2 + eps)|T|. Otherwise returns the violating T.
inline SparsityVerdict check_sparse(const Complex2& x, const Rational& eps, std::size_t m)
{
    return detail::sparsity_search(x, eps, m, 0);
}

/// (eps, m, 3)-sparsity: as check_sparse with vertices 1, 2, 3 free of charge.
inline SparsityVerdict check_sparse3(const Complex2& x, const Rational& eps, std::size_t m)
{
    if (x.n() < 3) {
        fail(ErrorKind::too_small, "anchored sparsity needs n >= 3");
    }
    return detail::sparsity_search(x, eps, m, 3);
}

/// Isomorphism classes of pure 2-complexes with at most m faces and
/// f0 < (1/2 + eps) f2, each returned on vertices 1..f0. Exhaustive over
/// face sets on at most six vertices; TooLarge beyond m = 4 or when the
/// vertex bound exceeds six.
inline std::vector<Complex2> enumerate_dense_prototypes(const Rational& eps, std::size_t m)
{
    if (m > 4) {
        fail(ErrorKind::too_large, "prototype enumeration is limited to m <= 4");
    }
    const Rational r = Rational(1, 2) + eps;
    std::vector<Complex2> out;
    for (std::size_t k = 1; k <= m; ++k) {
        for (int v = 3; v <= static_cast<int>(3 * k); ++v) {
            if (!(Rational(v) < r * static_cast<std::int64_t>(k))) {
                break;
            }
            if (v > 6) {
                fail(ErrorKind::too_large, "prototype enumeration is limited to six vertices");
            }
            std::vector<Face> triples;
            for (Vertex a = 1; a <= v; ++a) {
                for (Vertex b = a + 1; b <= v; ++b) {
                    for (Vertex c = b + 1; c <= v; ++c) {
                        triples.push_back({a, b, c});
                    }
                }
            }
            if (triples.size() < k) {
                continue;
            }
            std::vector<int> perm(static_cast<std::size_t>(v));
            std::vector<std::vector<Face>> seen;
            auto canonical = [&](const std::vector<Face>& faces) {
                std::vector<Face> best;
                std::iota(perm.begin(), perm.end(), 1);
                do {
                    std::vector<Face> image;
                    image.reserve(faces.size());
                    for (const auto& f : faces) {
                        image.push_back(make_face(perm[f.a - 1], perm[f.b - 1], perm[f.c - 1]));
                    }
                    std::sort(image.begin(), image.end());
                    if (best.empty() || image < best) {
                        best = std::move(image);
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
                return best;
            };
            // Walk k-subsets of the triples.
            std::vector<std::size_t> pick(k);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                std::vector<Face> faces;
                for (auto i : pick) {
                    faces.push_back(triples[i]);
                }
                if (face_vertices(faces).size() == static_cast<std::size_t>(v)) {
                    seen.push_back(canonical(faces));
                }
                std::size_t i = k;
                while (i > 0 && pick[i - 1] == triples.size() - k + (i - 1)) {
                    --i;
                }
                if (i == 0) {
                    break;
                }
                ++pick[i - 1];
                for (std::size_t j = i; j < k; ++j) {
                    pick[j] = pick[j - 1] + 1;
                }
            }
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
            for (auto& faces : seen) {
                auto edges = boundary_edges(faces);
                out.push_back(build_complex(v, std::move(edges), std::move(faces)));
            }
        }
    }
    return out;
}

} // namespace randcx

#endif
