#ifndef RANDCX_RANDOM_HPP
#define RANDCX_RANDOM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/rng.hpp"
#include "randcx/stats.hpp"

namespace randcx {

/// Stream spec for trial `trial` of a (purpose, n, p) cell.
inline RngSpec make_rng_spec(std::uint64_t seed, std::string purpose, int n, const Probability& p,
                             std::uint64_t trial)
{
    return RngSpec{seed, std::move(purpose), n, p.text(), trial};
}

/// G(n, p): every pair {a, b} independently with probability p.
inline Graph gen_graph(int n, const Probability& p, const RngSpec& spec)
{
    if (n < 0 || n > max_vertex_count) {
        fail(ErrorKind::out_of_range, "vertex count " + std::to_string(n) + " unsupported");
    }
    CounterRng rng(spec);
    std::vector<Vertex> vertices(static_cast<std::size_t>(n));
    std::iota(vertices.begin(), vertices.end(), 1);
    std::vector<Edge> edges;
    for (Vertex a = 1; a <= n; ++a) {
        for (Vertex b = a + 1; b <= n; ++b) {
            if (p.accepts(rng.next_u53())) {
                edges.push_back({a, b});
            }
        }
    }
    return Graph(std::move(vertices), std::move(edges));
}

inline std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }
inline std::uint64_t choose3(std::uint64_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

/// Walks colexicographic triple ranks in increasing order, decoding each
/// rank into a face with amortized constant work.
class ColexTripleCursor {
public:
    Face decode(std::uint64_t rank)
    {
        while (choose3(z_ + 1) <= rank) {
            ++z_;
            y_ = 1;
        }
        std::uint64_t rest = rank - choose3(z_);
        while (choose2(y_ + 1) <= rest) {
            ++y_;
        }
        std::uint64_t x = rest - choose2(y_);
        return Face{static_cast<Vertex>(x + 1), static_cast<Vertex>(y_ + 1), static_cast<Vertex>(z_ + 1)};
    }

private:
    std::uint64_t z_ = 2;
    std::uint64_t y_ = 1;
};

/// Y(n, p): complete 1-skeleton, each of the C(n,3) triangles independently
/// with probability p. Work is proportional to the number of faces drawn:
/// gaps between selected colex ranks are Geometric(p).
inline Complex2 gen_Y(int n, const Probability& p, const RngSpec& spec)
{
    if (n < 3) {
        fail(ErrorKind::too_small, "Y(n,p) needs n >= 3");
    }
    if (n > max_vertex_count) {
        fail(ErrorKind::out_of_range, "vertex count " + std::to_string(n) + " unsupported");
    }
    const std::uint64_t total = choose3(static_cast<std::uint64_t>(n));
    std::vector<Face> faces;
    if (p.is_one()) {
        faces.reserve(total);
        for (Vertex a = 1; a <= n; ++a) {
            for (Vertex b = a + 1; b <= n; ++b) {
                for (Vertex c = b + 1; c <= n; ++c) {
                    faces.push_back({a, b, c});
                }
            }
        }
        return build_complex(n, full_skeleton, std::move(faces));
    }
    if (!p.is_zero()) {
        CounterRng rng(spec);
        ColexTripleCursor cursor;
        const double log_q = std::log1p(-p.as_double());
        faces.reserve(static_cast<std::size_t>(static_cast<double>(total) * p.as_double() * 1.1) + 16);
        std::uint64_t rank = 0;
        bool first = true;
        while (true) {
            double gap = std::floor(std::log(rng.next_open01()) / log_q);
            if (gap >= static_cast<double>(total)) {
                break;
            }
            std::uint64_t next = (first ? 0 : rank + 1) + static_cast<std::uint64_t>(gap);
            first = false;
            if (next >= total) {
                break;
            }
            rank = next;
            faces.push_back(cursor.decode(rank));
        }
    }
    return build_complex(n, full_skeleton, std::move(faces));
}

/// Per-triangle uniforms shared across all p for a given (seed, n, trial):
/// triangle with colex rank r gets draw r of a p-independent stream.
inline RngSpec coupled_stream(std::uint64_t seed, int n, std::uint64_t trial)
{
    return RngSpec{seed, "Y-coupled", n, "*", trial};
}

/// Y(n, p) built from the shared uniforms, so that p1 <= p2 implies the face
/// set at p1 is contained in the face set at p2. Costs C(n,3) draws.
inline Complex2 gen_Y_coupled(int n, const Probability& p, std::uint64_t seed, std::uint64_t trial)
{
    if (n < 3) {
        fail(ErrorKind::too_small, "Y(n,p) needs n >= 3");
    }
    CounterRng rng(coupled_stream(seed, n, trial));
    std::vector<Face> faces;
    std::uint64_t rank = 0;
    for (Vertex c = 3; c <= n; ++c) {
        for (Vertex b = 2; b < c; ++b) {
            for (Vertex a = 1; a < b; ++a) {
                if (p.accepts(rng.at(rank++) >> 11)) {
                    faces.push_back({a, b, c});
                }
            }
        }
    }
    return build_complex(n, full_skeleton, std::move(faces));
}

/// Faces of the complete 2-complex in the order they arrive in the coupled
/// process (ascending shared uniform); the first k faces form Y at the
/// corresponding p. Each entry carries its 53-bit uniform.
inline std::vector<std::pair<std::uint64_t, Face>> arrival_order(int n, std::uint64_t seed, std::uint64_t trial)
{
    if (n < 3) {
        fail(ErrorKind::too_small, "Y(n,p) needs n >= 3");
    }
    CounterRng rng(coupled_stream(seed, n, trial));
    std::vector<std::pair<std::uint64_t, Face>> order;
    order.reserve(choose3(static_cast<std::uint64_t>(n)));
    std::uint64_t rank = 0;
    for (Vertex c = 3; c <= n; ++c) {
        for (Vertex b = 2; b < c; ++b) {
            for (Vertex a = 1; a < b; ++a) {
                order.emplace_back(rng.at(rank++) >> 11, Face{a, b, c});
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

struct LinkPairStats {
    std::size_t trials = 0;
    std::size_t hits = 0;
    double frequency = 0.0;
    double expected = 0.0; // p^2
    double sigma = 0.0;    // binomial standard deviation of the frequency
    Interval wilson;
};

/// Frequency with which {3,4} is an edge of the link-intersection graph of
/// vertices 1 and 2 over independent Y(n, p) samples.
inline LinkPairStats link_pair_statistics(int n, const Probability& p, std::size_t trials, std::uint64_t seed)
{
    if (trials < 1) {
        fail(ErrorKind::config_error, "link statistics need at least one trial");
    }
    if (n < 4) {
        fail(ErrorKind::too_small, "link statistics need n >= 4");
    }
    LinkPairStats stats;
    stats.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        auto y = gen_Y(n, p, make_rng_spec(seed, "Y", n, p, t));
        if (y.has_face({1, 3, 4}) && y.has_face({2, 3, 4})) {
            ++stats.hits;
        }
    }
    double q = p.as_double() * p.as_double();
    stats.frequency = static_cast<double>(stats.hits) / static_cast<double>(trials);
    stats.expected = q;
    stats.sigma = binomial_sigma(q, trials);
    stats.wilson = wilson_interval(stats.hits, trials);
    return stats;
}

} // namespace randcx

#endif
