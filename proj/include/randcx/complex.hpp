#ifndef RANDCX_COMPLEX_HPP
#define RANDCX_COMPLEX_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randcx/error.hpp"

namespace randcx {

/// Vertices are 1-based, matching the vertex set [n] = {1, ..., n}.
using Vertex = int;

/// Largest supported vertex count; keys pack three vertices into 63 bits.
inline constexpr int max_vertex_count = (1 << 21) - 1;

struct Edge {
    Vertex a = 0;
    Vertex b = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Face {
    Vertex a = 0;
    Vertex b = 0;
    Vertex c = 0;

    std::array<Edge, 3> boundary() const { return {Edge{b, c}, Edge{a, c}, Edge{a, b}}; }
    bool contains(Vertex v) const { return v == a || v == b || v == c; }

    friend auto operator<=>(const Face&, const Face&) = default;
};

inline std::string to_string(const Edge& e)
{
    return "{" + std::to_string(e.a) + "," + std::to_string(e.b) + "}";
}

inline std::string to_string(const Face& f)
{
    return "{" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + "}";
}

/// Canonical (sorted) edge. Throws DegenerateSimplex on a repeated vertex.
inline Edge make_edge(Vertex u, Vertex v)
{
    if (u == v) {
        fail(ErrorKind::degenerate_simplex, "edge with repeated vertex " + std::to_string(u));
    }
    return u < v ? Edge{u, v} : Edge{v, u};
}

/// Canonical (sorted) face. Throws DegenerateSimplex on a repeated vertex.
inline Face make_face(Vertex u, Vertex v, Vertex w)
{
    std::array<Vertex, 3> s{u, v, w};
    std::sort(s.begin(), s.end());
    if (s[0] == s[1] || s[1] == s[2]) {
        fail(ErrorKind::degenerate_simplex,
             "face with repeated vertex {" + std::to_string(u) + "," + std::to_string(v) + "," +
                 std::to_string(w) + "}");
    }
    return Face{s[0], s[1], s[2]};
}

namespace detail {

inline std::uint64_t edge_key(const Edge& e)
{
    return (static_cast<std::uint64_t>(e.a) << 21) | static_cast<std::uint64_t>(e.b);
}

inline void check_vertex(Vertex v, int n)
{
    if (v < 1 || v > n) {
        fail(ErrorKind::out_of_range,
             "vertex " + std::to_string(v) + " outside [1," + std::to_string(n) + "]");
    }
}

template <typename T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace detail

/// A simple undirected graph on integer-labelled vertices.
class Graph {
public:
    Graph() = default;

    /// Vertices and edges are deduplicated. Throws OutOfRange for an edge whose
    /// endpoint is not a vertex and DegenerateSimplex for loops.
    Graph(std::vector<Vertex> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges))
    {
        detail::sort_unique(vertices_);
        for (auto& e : edges_) {
            e = make_edge(e.a, e.b);
            if (!has_vertex(e.a) || !has_vertex(e.b)) {
                fail(ErrorKind::out_of_range, "graph edge " + to_string(e) + " references a missing vertex");
            }
        }
        detail::sort_unique(edges_);
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_vertex(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }
    bool has_edge(Edge e) const
    {
        if (e.a > e.b) {
            std::swap(e.a, e.b);
        }
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Position of v in vertices(), or -1.
    std::ptrdiff_t index_of(Vertex v) const
    {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
        return it != vertices_.end() && *it == v ? it - vertices_.begin() : -1;
    }

    /// Neighbour lists indexed by vertex position, each sorted ascending.
    std::vector<std::vector<Vertex>> adjacency() const
    {
        std::vector<std::vector<Vertex>> adj(vertices_.size());
        for (const auto& e : edges_) {
            adj[index_of(e.a)].push_back(e.b);
            adj[index_of(e.b)].push_back(e.a);
        }
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
        }
        return adj;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
};

enum class SkeletonMode { full, listed };

struct FullSkeleton {};
inline constexpr FullSkeleton full_skeleton{};

/// Immutable 2-dimensional simplicial complex on the vertex set [n].
///
/// In full mode the 1-skeleton is the complete graph and is never stored;
/// edge queries are answered arithmetically. Derived indices (per-edge face
/// degrees, vertex stars) are built on first use and shared between copies.
class Complex2 {
public:
    Complex2() : cache_(std::make_shared<Cache>()) {}

    int n() const { return n_; }
    SkeletonMode skeleton_mode() const { return mode_; }
    bool full() const { return mode_ == SkeletonMode::full; }

    std::size_t f0() const { return static_cast<std::size_t>(n_); }
    std::size_t f1() const
    {
        return full() ? static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ - 1) / 2 : edges_.size();
    }
    std::size_t f2() const { return faces_.size(); }

    /// Faces in lexicographic order.
    const std::vector<Face>& faces() const { return faces_; }

    /// Materialized edge list in lexicographic order.
    std::vector<Edge> edges() const
    {
        if (!full()) {
            return edges_;
        }
        std::vector<Edge> out;
        out.reserve(f1());
        for (Vertex a = 1; a <= n_; ++a) {
            for (Vertex b = a + 1; b <= n_; ++b) {
                out.push_back({a, b});
            }
        }
        return out;
    }

    bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }

    bool has_edge(Edge e) const
    {
        if (e.a > e.b) {
            std::swap(e.a, e.b);
        }
        if (e.a < 1 || e.b > n_ || e.a == e.b) {
            return false;
        }
        return full() || std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Lexicographic index of an edge, if present.
    std::optional<std::size_t> edge_index(Edge e) const
    {
        if (e.a > e.b) {
            std::swap(e.a, e.b);
        }
        if (!has_edge(e)) {
            return std::nullopt;
        }
        if (full()) {
            auto a = static_cast<std::size_t>(e.a);
            auto b = static_cast<std::size_t>(e.b);
            auto n = static_cast<std::size_t>(n_);
            return (a - 1) * (2 * n - a) / 2 + (b - a - 1);
        }
        return static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), e) - edges_.begin());
    }

    std::optional<std::size_t> face_index(const Face& f) const
    {
        auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
        if (it == faces_.end() || *it != f) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - faces_.begin());
    }

    bool has_face(const Face& f) const { return face_index(f).has_value(); }

    /// Number of faces containing e. Throws MissingEdge if e is not an edge.
    int face_degree(Edge e) const
    {
        if (e.a > e.b) {
            std::swap(e.a, e.b);
        }
        if (!has_edge(e)) {
            fail(ErrorKind::missing_edge, to_string(e) + " is not an edge");
        }
        const auto& degrees = degree_index();
        std::uint64_t key = detail::edge_key(e);
        auto it = std::lower_bound(degrees.begin(), degrees.end(), std::pair<std::uint64_t, int>{key, 0});
        return it != degrees.end() && it->first == key ? it->second : 0;
    }

    /// Sorted (edge key, degree) pairs for edges with positive face degree.
    const std::vector<std::pair<std::uint64_t, int>>& degree_index() const
    {
        std::call_once(cache_->degree_once, [this] {
            std::vector<std::uint64_t> keys;
            keys.reserve(3 * faces_.size());
            for (const auto& f : faces_) {
                for (const auto& e : f.boundary()) {
                    keys.push_back(detail::edge_key(e));
                }
            }
            std::sort(keys.begin(), keys.end());
            auto& out = cache_->degrees;
            for (std::size_t i = 0; i < keys.size();) {
                std::size_t j = i;
                while (j < keys.size() && keys[j] == keys[i]) {
                    ++j;
                }
                out.emplace_back(keys[i], static_cast<int>(j - i));
                i = j;
            }
        });
        return cache_->degrees;
    }

    /// Indices (into faces()) of the faces containing v, ascending.
    std::span<const std::uint32_t> star(Vertex v) const
    {
        detail::check_vertex(v, n_);
        std::call_once(cache_->star_once, [this] {
            auto& offsets = cache_->star_offsets;
            auto& items = cache_->star_items;
            offsets.assign(static_cast<std::size_t>(n_) + 2, 0);
            for (const auto& f : faces_) {
                ++offsets[f.a + 1];
                ++offsets[f.b + 1];
                ++offsets[f.c + 1];
            }
            std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
            items.resize(3 * faces_.size());
            std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
            for (std::uint32_t i = 0; i < faces_.size(); ++i) {
                const auto& f = faces_[i];
                items[fill[f.a]++] = i;
                items[fill[f.b]++] = i;
                items[fill[f.c]++] = i;
            }
        });
        const auto& offsets = cache_->star_offsets;
        return std::span<const std::uint32_t>(cache_->star_items)
            .subspan(offsets[v], offsets[v + 1] - offsets[v]);
    }

    /// Set equality of vertices, edges and faces (the skeleton mode is not compared).
    friend bool operator==(const Complex2& x, const Complex2& y)
    {
        if (x.n_ != y.n_ || x.faces_ != y.faces_ || x.f1() != y.f1()) {
            return false;
        }
        if (x.full() && y.full()) {
            return true;
        }
        return x.edges() == y.edges();
    }

    friend Complex2 build_complex(int n, FullSkeleton, std::vector<Face> faces);
    friend Complex2 build_complex(int n, std::vector<Edge> edges, std::vector<Face> faces);

private:
    struct Cache {
        std::once_flag degree_once;
        std::vector<std::pair<std::uint64_t, int>> degrees;
        std::once_flag star_once;
        std::vector<std::uint32_t> star_offsets;
        std::vector<std::uint32_t> star_items;
    };

    int n_ = 0;
    SkeletonMode mode_ = SkeletonMode::listed;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

inline void check_count(int n)
{
    if (n < 0 || n > max_vertex_count) {
        fail(ErrorKind::out_of_range, "vertex count " + std::to_string(n) + " unsupported");
    }
}

inline std::vector<Face> canonical_faces(std::vector<Face> faces, int n)
{
    for (auto& f : faces) {
        f = make_face(f.a, f.b, f.c);
        check_vertex(f.a, n);
        check_vertex(f.c, n);
    }
    sort_unique(faces);
    return faces;
}

} // namespace detail

/// Complex with the complete graph as 1-skeleton.
inline Complex2 build_complex(int n, FullSkeleton, std::vector<Face> faces)
{
    detail::check_count(n);
    Complex2 x;
    x.n_ = n;
    x.mode_ = SkeletonMode::full;
    x.faces_ = detail::canonical_faces(std::move(faces), n);
    return x;
}

/// Complex with an explicit edge list. Every boundary edge of every face must
/// be listed (MissingBoundaryEdge otherwise).
inline Complex2 build_complex(int n, std::vector<Edge> edges, std::vector<Face> faces)
{
    detail::check_count(n);
    for (auto& e : edges) {
        e = make_edge(e.a, e.b);
        detail::check_vertex(e.a, n);
        detail::check_vertex(e.b, n);
    }
    detail::sort_unique(edges);
    Complex2 x;
    x.n_ = n;
    x.mode_ = SkeletonMode::listed;
    x.edges_ = std::move(edges);
    x.faces_ = detail::canonical_faces(std::move(faces), n);
    for (const auto& f : x.faces_) {
        for (const auto& e : f.boundary()) {
            if (!std::binary_search(x.edges_.begin(), x.edges_.end(), e)) {
                fail(ErrorKind::missing_boundary_edge, "face " + to_string(f) + " lacks edge " + to_string(e));
            }
        }
    }
    return x;
}

/// Edges of every face, deduplicated; the closure of a face list.
inline std::vector<Edge> boundary_edges(std::span<const Face> faces)
{
    std::vector<Edge> edges;
    edges.reserve(3 * faces.size());
    for (const auto& f : faces) {
        for (const auto& e : f.boundary()) {
            edges.push_back(e);
        }
    }
    detail::sort_unique(edges);
    return edges;
}

/// Link of v: vertices joined to v by an edge, edges {p,q} with {v,p,q} a face.
inline Graph link(const Complex2& x, Vertex v)
{
    detail::check_vertex(v, x.n());
    std::vector<Vertex> vertices;
    if (x.full()) {
        vertices.reserve(static_cast<std::size_t>(x.n()) - 1);
        for (Vertex p = 1; p <= x.n(); ++p) {
            if (p != v) {
                vertices.push_back(p);
            }
        }
    } else {
        for (const auto& e : x.edges()) {
            if (e.a == v) {
                vertices.push_back(e.b);
            } else if (e.b == v) {
                vertices.push_back(e.a);
            }
        }
    }
    std::vector<Edge> edges;
    for (auto i : x.star(v)) {
        const Face& f = x.faces()[i];
        if (f.a == v) {
            edges.push_back({f.b, f.c});
        } else if (f.b == v) {
            edges.push_back({f.a, f.c});
        } else {
            edges.push_back({f.a, f.b});
        }
    }
    return Graph(std::move(vertices), std::move(edges));
}

/// Graph on the common link vertices of a and b, with u~v iff both {a,u,v}
/// and {b,u,v} are faces.
inline Graph link_intersection_graph(const Complex2& x, Vertex a, Vertex b)
{
    detail::check_vertex(a, x.n());
    detail::check_vertex(b, x.n());
    if (a == b) {
        fail(ErrorKind::equal_vertices, "link intersection needs two distinct vertices");
    }
    std::vector<Vertex> vertices;
    for (Vertex p = 1; p <= x.n(); ++p) {
        if (p != a && p != b && x.has_edge({a, p}) && x.has_edge({b, p})) {
            vertices.push_back(p);
        }
    }
    std::vector<Edge> edges;
    for (auto i : x.star(a)) {
        const Face& f = x.faces()[i];
        if (f.contains(b)) {
            continue;
        }
        Edge opposite = f.a == a ? Edge{f.b, f.c} : (f.b == a ? Edge{f.a, f.c} : Edge{f.a, f.b});
        if (x.has_face(make_face(b, opposite.a, opposite.b))) {
            edges.push_back(opposite);
        }
    }
    return Graph(std::move(vertices), std::move(edges));
}

inline long long euler_characteristic(const Complex2& x)
{
    return static_cast<long long>(x.f0()) - static_cast<long long>(x.f1()) + static_cast<long long>(x.f2());
}

/// L(X) = 2 f1 - 3 f2.
inline long long length_L(const Complex2& x)
{
    return 2 * static_cast<long long>(x.f1()) - 3 * static_cast<long long>(x.f2());
}

/// L(X) summed edge by edge as the sum of (2 - face degree).
inline long long length_L_by_degrees(const Complex2& x)
{
    long long total = 2 * static_cast<long long>(x.f1());
    for (const auto& [key, degree] : x.degree_index()) {
        total -= degree;
    }
    return total;
}

inline int face_degree(const Complex2& x, Edge e)
{
    return x.face_degree(e);
}

/// Vertices used by a face list, ascending.
inline std::vector<Vertex> face_vertices(std::span<const Face> faces)
{
    std::vector<Vertex> vs;
    vs.reserve(3 * faces.size());
    for (const auto& f : faces) {
        vs.insert(vs.end(), {f.a, f.b, f.c});
    }
    detail::sort_unique(vs);
    return vs;
}

/// Subcomplex spanned by a set of faces of x. Vertices of the faces are
/// relabelled 1..k preserving order; edges are exactly the face boundaries.
/// Throws UnknownFace if some face is not in x.
inline Complex2 induced_subcomplex(const Complex2& x, std::vector<Face> selected)
{
    for (auto& f : selected) {
        f = make_face(f.a, f.b, f.c);
        if (!x.has_face(f)) {
            fail(ErrorKind::unknown_face, to_string(f) + " is not a face");
        }
    }
    detail::sort_unique(selected);
    auto labels = face_vertices(selected);
    auto relabel = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin()) + 1;
    };
    for (auto& f : selected) {
        f = Face{relabel(f.a), relabel(f.b), relabel(f.c)};
    }
    auto edges = boundary_edges(selected);
    return build_complex(static_cast<int>(labels.size()), std::move(edges), std::move(selected));
}

/// Full subcomplex on a vertex subset: every edge and face of x whose
/// vertices all lie in the subset, relabelled 1..k preserving order.
inline Complex2 restrict_to_vertices(const Complex2& x, std::vector<Vertex> keep)
{
    detail::sort_unique(keep);
    for (auto v : keep) {
        detail::check_vertex(v, x.n());
    }
    std::vector<int> label(static_cast<std::size_t>(x.n()) + 1, 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        label[keep[i]] = static_cast<int>(i) + 1;
    }
    std::vector<Edge> edges;
    if (x.full()) {
        for (std::size_t i = 0; i < keep.size(); ++i) {
            for (std::size_t j = i + 1; j < keep.size(); ++j) {
                edges.push_back({label[keep[i]], label[keep[j]]});
            }
        }
    } else {
        for (const auto& e : x.edges()) {
            if (label[e.a] && label[e.b]) {
                edges.push_back({label[e.a], label[e.b]});
            }
        }
    }
    std::vector<Face> faces;
    for (const auto& f : x.faces()) {
        if (label[f.a] && label[f.b] && label[f.c]) {
            faces.push_back({label[f.a], label[f.b], label[f.c]});
        }
    }
    return build_complex(static_cast<int>(keep.size()), std::move(edges), std::move(faces));
}

/// Disjoint union; the vertices of y are shifted by x.n().
inline Complex2 disjoint_union(const Complex2& x, const Complex2& y)
{
    auto shift = x.n();
    auto edges = x.edges();
    for (const auto& e : y.edges()) {
        edges.push_back({e.a + shift, e.b + shift});
    }
    std::vector<Face> faces = x.faces();
    for (const auto& f : y.faces()) {
        faces.push_back({f.a + shift, f.b + shift, f.c + shift});
    }
    return build_complex(x.n() + y.n(), std::move(edges), std::move(faces));
}

/// 1-skeleton as a graph (materializes the edges).
inline Graph skeleton_graph(const Complex2& x)
{
    std::vector<Vertex> vertices(static_cast<std::size_t>(x.n()));
    std::iota(vertices.begin(), vertices.end(), 1);
    return Graph(std::move(vertices), x.edges());
}

/// Connected components, each sorted, ordered by least vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g)
{
    const auto& vs = g.vertices();
    std::vector<std::size_t> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (const auto& e : g.edges()) {
        auto ra = find(static_cast<std::size_t>(g.index_of(e.a)));
        auto rb = find(static_cast<std::size_t>(g.index_of(e.b)));
        if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }
    std::vector<std::vector<Vertex>> comps;
    std::vector<std::ptrdiff_t> slot(vs.size(), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(slot[r])].push_back(vs[i]);
    }
    return comps;
}

/// Components of the 1-skeleton, ordered by least vertex.
inline std::vector<std::vector<Vertex>> vertex_components(const Complex2& x)
{
    if (x.full()) {
        std::vector<Vertex> all(static_cast<std::size_t>(x.n()));
        std::iota(all.begin(), all.end(), 1);
        return x.n() > 0 ? std::vector<std::vector<Vertex>>{all} : std::vector<std::vector<Vertex>>{};
    }
    return connected_components(skeleton_graph(x));
}

/// Breadth-first spanning tree from the least vertex. Throws Disconnected.
inline std::vector<Edge> spanning_tree(const Graph& g)
{
    const auto& vs = g.vertices();
    std::vector<Edge> tree;
    if (vs.empty()) {
        return tree;
    }
    auto adj = g.adjacency();
    std::vector<char> seen(vs.size(), 0);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = 1;
    while (!frontier.empty()) {
        auto i = frontier.front();
        frontier.pop();
        for (auto w : adj[i]) {
            auto j = static_cast<std::size_t>(g.index_of(w));
            if (!seen[j]) {
                seen[j] = 1;
                tree.push_back(make_edge(vs[i], w));
                frontier.push(j);
            }
        }
    }
    if (tree.size() + 1 != vs.size()) {
        fail(ErrorKind::disconnected, "graph has more than one component");
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

/// A closed edge path v1 -> v2 -> ... -> vr -> v1 in a complex.
struct LoopWord {
    std::vector<Vertex> cycle;

    std::size_t length() const { return cycle.size(); }
    friend bool operator==(const LoopWord&, const LoopWord&) = default;
};

/// Validated loop: r >= 3 and cyclically consecutive vertices span an edge.
inline LoopWord make_loop(const Complex2& x, std::vector<Vertex> cycle)
{
    if (cycle.size() < 3) {
        fail(ErrorKind::invalid_loop, "loops need at least three vertices");
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        Vertex u = cycle[i];
        Vertex v = cycle[(i + 1) % cycle.size()];
        if (u == v || !x.has_edge({u, v})) {
            fail(ErrorKind::invalid_loop,
                 "step " + std::to_string(u) + "->" + std::to_string(v) + " is not an edge");
        }
    }
    return LoopWord{std::move(cycle)};
}

/// The loop 1 -> 2 -> 3 -> 1.
inline LoopWord id3_loop(const Complex2& x)
{
    return make_loop(x, {1, 2, 3});
}

} // namespace randcx

#endif
