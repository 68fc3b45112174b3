#ifndef RANDCX_PI1_HPP
#define RANDCX_PI1_HPP

#include <algorithm>
#include <bit>
#include <numeric>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/density.hpp"
#include "randcx/homology.hpp"
#include "randcx/linalg.hpp"

namespace randcx {

// ---------------------------------------------------------------------------
// Simple connectivity via link intersections
// ---------------------------------------------------------------------------

/// Outcome of certify_simply_connected. `certified` is sound: it implies
/// pi_1(X) = 0. The converse does not hold.
struct ScCertificate {
    bool certified = false;
    bool full_skeleton = true;
    /// Pairs {a,b} whose link intersection is disconnected, misses a vertex,
    /// or whose edge lies in no face. Sorted.
    std::vector<Edge> failing_pairs;
    /// For a certified complex: for every pair, one face containing it.
    std::vector<std::pair<Edge, Face>> supports;
};

/// Per-vertex link adjacency as bitsets: bit w of row (a, u) is set iff
/// {a, u, w} is a face.
class LinkBitsets {
public:
    explicit LinkBitsets(const Complex2& x)
        : n_(x.n()), words_((static_cast<std::size_t>(x.n()) + 1 + 63) / 64),
          bits_(static_cast<std::size_t>(x.n() + 1) * static_cast<std::size_t>(x.n() + 1) * words_, 0)
    {
        for (const auto& f : x.faces()) {
            set(f.a, f.b, f.c);
            set(f.a, f.c, f.b);
            set(f.b, f.a, f.c);
            set(f.b, f.c, f.a);
            set(f.c, f.a, f.b);
            set(f.c, f.b, f.a);
        }
    }

    std::size_t words() const { return words_; }

    const std::uint64_t* row(Vertex a, Vertex u) const
    {
        return bits_.data() + (static_cast<std::size_t>(a) * static_cast<std::size_t>(n_ + 1) +
                               static_cast<std::size_t>(u)) *
                                  words_;
    }

private:
    void set(Vertex a, Vertex u, Vertex w)
    {
        auto* r = bits_.data() +
                  (static_cast<std::size_t>(a) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(u)) *
                      words_;
        r[static_cast<std::size_t>(w) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(w) % 64);
    }

    int n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Certifies pi_1 = 0 for a complex with complete 1-skeleton: every 3-cycle
/// abc bounds a disk when lk(a) and lk(b) intersect in a connected graph on
/// all other vertices and ab lies in a face; with a complete 1-skeleton,
/// 3-cycles generate pi_1. Listed-skeleton complexes are never certified.
inline ScCertificate certify_simply_connected(const Complex2& x)
{
    ScCertificate cert;
    if (!x.full()) {
        cert.full_skeleton = false;
        return cert;
    }
    const int n = x.n();
    LinkBitsets links(x);
    const std::size_t words = links.words();
    std::vector<std::uint64_t> visited(words);
    std::vector<Vertex> stack;
    std::vector<Face> support_face;

    for (Vertex a = 1; a <= n; ++a) {
        for (Vertex b = a + 1; b <= n; ++b) {
            // A face on ab: any w with {a, b, w} a face.
            const std::uint64_t* ab = links.row(a, b);
            std::optional<Vertex> third;
            for (std::size_t k = 0; k < words && !third; ++k) {
                if (ab[k]) {
                    third = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(ab[k])));
                }
            }
            bool ok = third.has_value();
            if (ok && n > 2) {
                Vertex start = 1;
                while (start == a || start == b) {
                    ++start;
                }
                std::fill(visited.begin(), visited.end(), 0);
                visited[static_cast<std::size_t>(start) / 64] |= std::uint64_t{1} << (start % 64);
                std::size_t reached = 1;
                stack.assign(1, start);
                while (!stack.empty()) {
                    Vertex u = stack.back();
                    stack.pop_back();
                    const std::uint64_t* la = links.row(a, u);
                    const std::uint64_t* lb = links.row(b, u);
                    for (std::size_t k = 0; k < words; ++k) {
                        std::uint64_t fresh = la[k] & lb[k] & ~visited[k];
                        visited[k] |= fresh;
                        while (fresh) {
                            auto bit = static_cast<std::size_t>(std::countr_zero(fresh));
                            fresh &= fresh - 1;
                            stack.push_back(static_cast<Vertex>(k * 64 + bit));
                            ++reached;
                        }
                    }
                }
                ok = reached == static_cast<std::size_t>(n - 2);
            }
            if (ok) {
                cert.supports.emplace_back(Edge{a, b}, make_face(a, b, *third));
            } else {
                cert.failing_pairs.push_back({a, b});
            }
        }
    }
    cert.certified = cert.failing_pairs.empty();
    if (!cert.certified) {
        cert.supports.clear();
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Presentation complex
// ---------------------------------------------------------------------------

/// A letter of a relator: generator index and exponent +1 or -1.
struct Letter {
    std::size_t generator = 0;
    int exponent = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// pi_1 of one component: generators are the edges outside a spanning tree
/// (oriented from smaller to larger vertex), one relator per face read
/// around a -> b -> c -> a with tree edges deleted.
struct GroupPresentation {
    std::vector<Vertex> component;
    std::vector<Edge> tree;
    std::vector<Edge> generators;
    std::vector<std::vector<Letter>> relators;
};

/// Presentation of the fundamental group of component `component` (0-based,
/// ordered by least vertex). Throws OutOfRange for a missing component.
inline GroupPresentation presentation(const Complex2& x, std::size_t component)
{
    auto comps = vertex_components(x);
    if (component >= comps.size()) {
        fail(ErrorKind::out_of_range, "component " + std::to_string(component) + " does not exist");
    }
    GroupPresentation out;
    out.component = comps[component];
    std::vector<char> member(static_cast<std::size_t>(x.n()) + 1, 0);
    for (auto v : out.component) {
        member[v] = 1;
    }
    std::vector<Edge> edges;
    if (x.full()) {
        edges = x.edges();
    } else {
        for (const auto& e : x.edges()) {
            if (member[e.a]) {
                edges.push_back(e);
            }
        }
    }
    out.tree = spanning_tree(Graph(out.component, edges));
    for (const auto& e : edges) {
        if (!std::binary_search(out.tree.begin(), out.tree.end(), e)) {
            out.generators.push_back(e);
        }
    }
    auto generator_of = [&](Vertex from, Vertex to) -> std::optional<Letter> {
        Edge e = make_edge(from, to);
        auto it = std::lower_bound(out.generators.begin(), out.generators.end(), e);
        if (it == out.generators.end() || *it != e) {
            return std::nullopt;
        }
        return Letter{static_cast<std::size_t>(it - out.generators.begin()), from < to ? 1 : -1};
    };
    for (const auto& f : x.faces()) {
        if (!member[f.a]) {
            continue;
        }
        std::vector<Letter> word;
        for (auto [from, to] : {std::pair{f.a, f.b}, std::pair{f.b, f.c}, std::pair{f.c, f.a}}) {
            if (auto letter = generator_of(from, to)) {
                word.push_back(*letter);
            }
        }
        if (!word.empty()) {
            out.relators.push_back(std::move(word));
        }
    }
    return out;
}

/// Abelianization Z^rank + torsion from the relator exponent-sum matrix.
inline IntegralH1 abelianization(const GroupPresentation& g)
{
    SparseIntMatrix m(g.generators.size(), g.relators.size());
    for (std::size_t j = 0; j < g.relators.size(); ++j) {
        std::vector<std::int64_t> sums(g.generators.size(), 0);
        std::vector<std::size_t> used;
        for (const auto& letter : g.relators[j]) {
            if (sums[letter.generator] == 0) {
                used.push_back(letter.generator);
            }
            sums[letter.generator] += letter.exponent;
        }
        std::sort(used.begin(), used.end());
        for (auto gen : used) {
            if (sums[gen] != 0) {
                m.columns[j].emplace_back(static_cast<std::uint32_t>(gen), sums[gen]);
            }
        }
    }
    auto snf = smith_normal_form(std::move(m));
    IntegralH1 out;
    out.rank = g.generators.size() - snf.rank();
    out.invariant_factors = snf.torsion();
    for (auto d : out.invariant_factors) {
        auto parts = prime_power_factors(d);
        out.torsion.insert(out.torsion.end(), parts.begin(), parts.end());
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

// ---------------------------------------------------------------------------
// Noncontractibility of the loop 1 -> 2 -> 3
// ---------------------------------------------------------------------------

struct Id3Certificate {
    /// True certifies that 1 -> 2 -> 3 -> 1 is not null-homotopic. False is
    /// inconclusive.
    bool noncontractible = false;
    /// e_3(X) with its minimizer; absent when X has no faces.
    std::optional<DensityReport> density;
};

/// Id_[3] is not contractible whenever e_3(X) > 1/2. A minimal filling would
/// map onto a subcomplex Z with chi(Z) <= 1 and L(Z) <= 3, and the popped
/// bound then gives f_2(Z) <= (2 - 6 + 3) / (2 e_3 - 1) < 0. The weaker
/// condition e_3 > 0 is not enough: the cone on the triangle 1 2 3 (faces
/// 124, 234, 134) has e_3 = 1/3 and fills Id_[3]. Without faces the complex
/// is a graph and the triangle is a nontrivial cycle.
inline Id3Certificate certify_id3_noncontractible(const Complex2& x)
{
    if (x.n() < 3 || !x.has_edge({1, 2}) || !x.has_edge({2, 3}) || !x.has_edge({1, 3})) {
        fail(ErrorKind::missing_anchor_edges, "edges {1,2}, {2,3}, {1,3} are required");
    }
    Id3Certificate out;
    if (x.f2() == 0) {
        out.noncontractible = true;
        return out;
    }
    out.density = density_e_w(x, 3);
    out.noncontractible = out.density->value > Rational(1, 2);
    return out;
}

/// Sparsity evidence for pi_1 != 0. Sparse at (eps, m) is what the
/// noncontractibility argument needs for a suitable m(eps), but that m is not
/// explicit, so this is reported as evidence only.
struct Pi1Evidence {
    bool sparse = true;
    SparsityVerdict verdict;
    static constexpr const char* kind = "evidence";
};

inline Pi1Evidence evidence_pi1_nontrivial(const Complex2& x, const Rational& eps, std::size_t m)
{
    Pi1Evidence out;
    out.verdict = check_sparse3(x, eps, m);
    out.sparse = out.verdict.sparse;
    return out;
}

// ---------------------------------------------------------------------------
// Bounded filling search
// ---------------------------------------------------------------------------

struct AreaMove {
    enum class Kind { push, pop, collapse };
    Kind kind = Kind::pop;
    Face face{};                 // triangle used by push/pop
    std::vector<Vertex> before;  // word the move applies to
    std::vector<Vertex> after;   // word produced by the move
};

struct AreaBound {
    LoopWord loop;
    std::size_t budget = 0;
    /// Least number of triangle moves found, at most `budget`; absent means
    /// inconclusive at this budget.
    std::optional<std::size_t> upper_bound;
    std::vector<AreaMove> trace;
    bool state_limit_hit = false;
    std::size_t states_explored = 0;
};

struct AreaSearchOptions {
    std::size_t budget_cap = 16;
    std::size_t max_states = 200'000;
};

namespace detail {

using Word = std::vector<Vertex>;

/// Least rotation of the word or of its reverse.
inline Word canonical_word(const Word& w)
{
    const std::size_t len = w.size();
    if (len == 0) {
        return w;
    }
    Word best;
    Word candidate(len);
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t s = 0; s < len; ++s) {
            for (std::size_t i = 0; i < len; ++i) {
                std::size_t idx = dir == 0 ? (s + i) % len : (s + len - i) % len;
                candidate[i] = w[idx];
            }
            if (best.empty() || candidate < best) {
                best = candidate;
            }
        }
    }
    return best;
}

/// Removes backtracks x -> y -> x until none remain. A closed word of
/// length two or less is a backtrack onto a point and reduces to empty.
inline Word reduce_word(Word w, std::vector<AreaMove>* log)
{
    while (true) {
        const std::size_t len = w.size();
        if (len == 0) {
            return w;
        }
        if (len <= 2) {
            if (log) {
                log->push_back({AreaMove::Kind::collapse, {}, w, {}});
            }
            return {};
        }
        bool changed = false;
        for (std::size_t i = 0; i < len; ++i) {
            if (w[(i + len - 1) % len] == w[(i + 1) % len]) {
                Word next;
                next.reserve(len - 2);
                for (std::size_t k = 0; k < len; ++k) {
                    if (k != i && k != (i + 1) % len) {
                        next.push_back(w[k]);
                    }
                }
                if (log) {
                    log->push_back({AreaMove::Kind::collapse, {}, w, next});
                }
                w = std::move(next);
                changed = true;
                break;
            }
        }
        if (!changed) {
            return w;
        }
    }
}

inline std::string word_key(const Word& w)
{
    return std::string(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(Vertex));
}

} // namespace detail

/// Searches for a sequence of triangle moves contracting `loop`:
///   pop  a c b -> a b   when {a, b, c} is a face (cost 1)
///   push a b -> a c b   when {a, b, c} is a face (cost 1)
///   backtracks x y x -> x are removed for free after every move.
/// Breadth-first by cost, so the first success is the least cost found.
/// Words are compared up to rotation and reversal and never exceed
/// |loop| + budget_cap letters, so exploration does not depend on `budget`
/// and a success at cost k is found for every budget >= k. Each recorded
/// trace assembles into a filling with that many triangles, so the result
/// bounds the filling area from above.
inline AreaBound area_search(const Complex2& x, const LoopWord& loop, std::size_t budget,
                             const AreaSearchOptions& options = {})
{
    if (budget > options.budget_cap) {
        fail(ErrorKind::budget_cap_exceeded,
             "budget " + std::to_string(budget) + " exceeds cap " + std::to_string(options.budget_cap));
    }
    make_loop(x, loop.cycle); // validates

    AreaBound out;
    out.loop = loop;
    out.budget = budget;
    const std::size_t max_len = loop.length() + options.budget_cap;

    struct Node {
        detail::Word word;
        std::ptrdiff_t parent;
        std::vector<AreaMove> steps; // from parent's word to this word
        std::size_t cost;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, std::size_t> index;

    auto finish = [&](std::size_t node) {
        std::vector<const Node*> chain;
        for (auto i = static_cast<std::ptrdiff_t>(node); i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
            chain.push_back(&nodes[static_cast<std::size_t>(i)]);
        }
        std::reverse(chain.begin(), chain.end());
        for (const Node* n : chain) {
            out.trace.insert(out.trace.end(), n->steps.begin(), n->steps.end());
        }
        out.upper_bound = nodes[node].cost;
    };

    {
        std::vector<AreaMove> steps;
        auto start = detail::reduce_word(loop.cycle, &steps);
        nodes.push_back({detail::canonical_word(start), -1, std::move(steps), 0});
        index.emplace(detail::word_key(nodes[0].word), 0);
    }
    if (nodes[0].word.empty()) {
        finish(0);
        out.states_explored = 1;
        return out;
    }

    std::vector<std::size_t> level{0};
    for (std::size_t cost = 1; cost <= budget && !level.empty(); ++cost) {
        std::vector<std::size_t> next_level;
        for (auto id : level) {
            const detail::Word word = nodes[id].word;
            const std::size_t len = word.size();
            auto visit = [&](detail::Word raw, AreaMove move) -> bool {
                std::vector<AreaMove> steps{std::move(move)};
                auto reduced = detail::reduce_word(std::move(raw), &steps);
                auto canon = detail::canonical_word(reduced);
                auto key = detail::word_key(canon);
                if (index.count(key)) {
                    return false;
                }
                if (nodes.size() >= options.max_states) {
                    out.state_limit_hit = true;
                    return false;
                }
                index.emplace(std::move(key), nodes.size());
                nodes.push_back({std::move(canon), static_cast<std::ptrdiff_t>(id), std::move(steps), cost});
                next_level.push_back(nodes.size() - 1);
                return nodes.back().word.empty();
            };
            // Pops.
            for (std::size_t i = 0; i < len; ++i) {
                Vertex a = word[(i + len - 1) % len];
                Vertex c = word[i];
                Vertex b = word[(i + 1) % len];
                if (a == b || !x.has_face(make_face(a, b, c))) {
                    continue;
                }
                detail::Word raw;
                raw.reserve(len - 1);
                for (std::size_t k = 0; k < len; ++k) {
                    if (k != i) {
                        raw.push_back(word[k]);
                    }
                }
                if (visit(raw, {AreaMove::Kind::pop, make_face(a, b, c), word, raw})) {
                    finish(nodes.size() - 1);
                    out.states_explored = nodes.size();
                    return out;
                }
            }
            // Pushes.
            if (len + 1 <= max_len) {
                for (std::size_t i = 0; i < len; ++i) {
                    Vertex a = word[i];
                    Vertex b = word[(i + 1) % len];
                    Edge e = make_edge(a, b);
                    for (auto fid : x.star(e.a)) {
                        const Face& f = x.faces()[fid];
                        if (!f.contains(e.b)) {
                            continue;
                        }
                        Vertex c = f.a != e.a && f.a != e.b ? f.a : (f.b != e.a && f.b != e.b ? f.b : f.c);
                        detail::Word raw(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                        raw.push_back(c);
                        raw.insert(raw.end(), word.begin() + static_cast<std::ptrdiff_t>(i) + 1, word.end());
                        if (visit(raw, {AreaMove::Kind::push, f, word, raw})) {
                            finish(nodes.size() - 1);
                            out.states_explored = nodes.size();
                            return out;
                        }
                    }
                }
            }
        }
        level = std::move(next_level);
    }
    out.states_explored = nodes.size();
    return out;
}

} // namespace randcx

#endif
