#ifndef RANDCX_HOMOLOGY_HPP
#define RANDCX_HOMOLOGY_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/linalg.hpp"

namespace randcx {

/// Boundary maps. Simplices are ordered lexicographically by sorted vertices.
/// d1 sends edge ab to b - a; d2 sends face abc to bc - ac + ab. Over GF(2)
/// the signs are irrelevant.
struct BoundaryPair {
    SparseIntMatrix d1; // f0 x f1
    SparseIntMatrix d2; // f1 x f2
};

inline BoundaryPair boundary_matrices(const Complex2& x)
{
    BoundaryPair out{SparseIntMatrix(x.f0(), x.f1()), SparseIntMatrix(x.f1(), x.f2())};
    std::size_t j = 0;
    for (const auto& e : x.edges()) {
        out.d1.columns[j++] = {{static_cast<std::uint32_t>(e.a - 1), -1}, {static_cast<std::uint32_t>(e.b - 1), 1}};
    }
    for (std::size_t k = 0; k < x.f2(); ++k) {
        const Face& f = x.faces()[k];
        auto bc = static_cast<std::uint32_t>(*x.edge_index({f.b, f.c}));
        auto ac = static_cast<std::uint32_t>(*x.edge_index({f.a, f.c}));
        auto ab = static_cast<std::uint32_t>(*x.edge_index({f.a, f.b}));
        auto& col = out.d2.columns[k];
        col = {{bc, 1}, {ac, -1}, {ab, 1}};
        std::sort(col.begin(), col.end());
    }
    return out;
}

struct Coefficients {
    enum class Kind { gf2, gfq, rational };
    Kind kind = Kind::gf2;
    std::int64_t q = 2;

    static Coefficients gf2() { return {Kind::gf2, 2}; }
    static Coefficients rationals() { return {Kind::rational, 0}; }
    static Coefficients gfq(std::int64_t q)
    {
        if (!is_prime(q)) {
            fail(ErrorKind::bad_field, "GF(q) needs a prime q, got " + std::to_string(q));
        }
        return q == 2 ? gf2() : Coefficients{Kind::gfq, q};
    }

    /// "gf2", "gfq:<q>" or "q".
    static Coefficients parse(std::string_view text)
    {
        if (text == "gf2") {
            return gf2();
        }
        if (text == "q") {
            return rationals();
        }
        if (text.substr(0, 4) == "gfq:") {
            std::int64_t q = 0;
            for (char c : text.substr(4)) {
                if (c < '0' || c > '9' || q > (1LL << 40)) {
                    fail(ErrorKind::bad_field, "bad field '" + std::string(text) + "'");
                }
                q = q * 10 + (c - '0');
            }
            return gfq(q);
        }
        fail(ErrorKind::bad_field, "unknown coefficients '" + std::string(text) + "'");
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::gf2: return "gf2";
        case Kind::gfq: return "gfq:" + std::to_string(q);
        case Kind::rational: return "q";
        }
        return "?";
    }

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

struct BettiProfile {
    Coefficients coefficients;
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    std::size_t b2 = 0;

    long long euler() const
    {
        return static_cast<long long>(b0) - static_cast<long long>(b1) + static_cast<long long>(b2);
    }
};

/// Number of connected components of the 1-skeleton.
inline std::size_t skeleton_component_count(const Complex2& x)
{
    if (x.full()) {
        return x.n() > 0 ? 1 : 0;
    }
    std::vector<int> parent(static_cast<std::size_t>(x.n()) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    std::size_t components = static_cast<std::size_t>(x.n());
    for (const auto& e : x.edges()) {
        int ra = find(e.a);
        int rb = find(e.b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return components;
}

/// Largest dense f2 x f1 matrix the rational path will form.
inline constexpr std::size_t rational_dense_cap = 50'000'000;

/// Rank of d2 over the given field. Uses the bound rank d2 <= f1 - rank d1 to
/// stop as soon as the cycle space is filled.
inline std::size_t boundary2_rank(const Complex2& x, const Coefficients& coeff)
{
    const std::size_t f1 = x.f1();
    const std::size_t limit = f1 - (x.f0() - skeleton_component_count(x));
    switch (coeff.kind) {
    case Coefficients::Kind::gf2: {
        Gf2Basis basis(f1);
        std::vector<std::uint64_t> row(basis.words());
        for (const auto& f : x.faces()) {
            if (basis.rank() >= limit) {
                break;
            }
            std::fill(row.begin(), row.end(), 0);
            for (const auto& e : f.boundary()) {
                auto idx = *x.edge_index(e);
                row[idx / 64] |= std::uint64_t{1} << (idx % 64);
            }
            basis.insert(row);
        }
        return basis.rank();
    }
    case Coefficients::Kind::gfq: {
        auto q = static_cast<std::uint32_t>(coeff.q);
        GfqBasis basis(f1, q);
        std::vector<std::uint32_t> row(f1);
        for (const auto& f : x.faces()) {
            if (basis.rank() >= limit) {
                break;
            }
            std::fill(row.begin(), row.end(), 0);
            row[*x.edge_index({f.b, f.c})] = 1;
            row[*x.edge_index({f.a, f.c})] = q - 1;
            row[*x.edge_index({f.a, f.b})] = 1;
            basis.insert(row);
        }
        return basis.rank();
    }
    case Coefficients::Kind::rational: {
        if (x.f2() * f1 > rational_dense_cap) {
            fail(ErrorKind::size_cap_exceeded, "complex too large for rational elimination");
        }
        IntMatrix m(x.f2(), f1);
        for (std::size_t k = 0; k < x.f2(); ++k) {
            const Face& f = x.faces()[k];
            m(k, *x.edge_index({f.b, f.c})) = 1;
            m(k, *x.edge_index({f.a, f.c})) = -1;
            m(k, *x.edge_index({f.a, f.b})) = 1;
        }
        return rank_rational(std::move(m));
    }
    }
    return 0;
}

/// Betti numbers; rank d1 = f0 - (number of components) over every field.
inline BettiProfile betti(const Complex2& x, const Coefficients& coeff)
{
    const std::size_t rank_d1 = x.f0() - skeleton_component_count(x);
    const std::size_t rank_d2 = boundary2_rank(x, coeff);
    return BettiProfile{coeff, x.f0() - rank_d1, x.f1() - rank_d1 - rank_d2, x.f2() - rank_d2};
}

struct IntegralH1 {
    std::size_t rank = 0;
    std::vector<std::int64_t> torsion;           // prime powers, ascending
    std::vector<std::int64_t> invariant_factors; // nontrivial invariant factors of d2
};

inline constexpr std::size_t default_snf_edge_cap = 2000;

/// H1(X; Z) = Z^rank + torsion. The torsion is read off the Smith form of d2,
/// since the cokernel of d1 is free. SizeCapExceeded when f1 > edge_cap.
inline IntegralH1 h1_integral(const Complex2& x, std::size_t edge_cap = default_snf_edge_cap)
{
    if (x.f1() > edge_cap) {
        fail(ErrorKind::size_cap_exceeded,
             "f1 = " + std::to_string(x.f1()) + " exceeds the Smith form cap " + std::to_string(edge_cap));
    }
    auto snf = smith_normal_form(boundary_matrices(x).d2);
    const std::size_t rank_d1 = x.f0() - skeleton_component_count(x);
    IntegralH1 out;
    out.rank = x.f1() - rank_d1 - snf.rank();
    out.invariant_factors = snf.torsion();
    for (auto d : out.invariant_factors) {
        auto parts = prime_power_factors(d);
        out.torsion.insert(out.torsion.end(), parts.begin(), parts.end());
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

} // namespace randcx

#endif
