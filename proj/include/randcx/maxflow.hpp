#ifndef RANDCX_MAXFLOW_HPP
#define RANDCX_MAXFLOW_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace randcx {

/// Dinic's maximum flow on an integer-capacity network.
class FlowNetwork {
public:
    using Capacity = std::int64_t;
    static constexpr Capacity infinite = std::numeric_limits<Capacity>::max() / 4;

    explicit FlowNetwork(std::size_t nodes) : adjacency_(nodes), level_(nodes), cursor_(nodes) {}

    std::size_t node_count() const { return adjacency_.size(); }

    void add_edge(std::size_t from, std::size_t to, Capacity capacity)
    {
        adjacency_[from].push_back(arcs_.size());
        arcs_.push_back({to, capacity});
        adjacency_[to].push_back(arcs_.size());
        arcs_.push_back({from, 0});
    }

    Capacity max_flow(std::size_t source, std::size_t sink)
    {
        Capacity total = 0;
        while (build_levels(source, sink)) {
            std::fill(cursor_.begin(), cursor_.end(), 0);
            while (Capacity pushed = augment(source, sink, infinite)) {
                total += pushed;
            }
        }
        return total;
    }

    /// Nodes reachable from `source` in the residual network after max_flow;
    /// this is the source side of the minimal minimum cut.
    std::vector<char> source_side(std::size_t source) const
    {
        std::vector<char> seen(adjacency_.size(), 0);
        std::vector<std::size_t> stack{source};
        seen[source] = 1;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto id : adjacency_[u]) {
                const auto& arc = arcs_[id];
                if (arc.residual > 0 && !seen[arc.to]) {
                    seen[arc.to] = 1;
                    stack.push_back(arc.to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        Capacity residual;
    };

    bool build_levels(std::size_t source, std::size_t sink)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> frontier;
        level_[source] = 0;
        frontier.push(source);
        while (!frontier.empty()) {
            auto u = frontier.front();
            frontier.pop();
            for (auto id : adjacency_[u]) {
                const auto& arc = arcs_[id];
                if (arc.residual > 0 && level_[arc.to] < 0) {
                    level_[arc.to] = level_[u] + 1;
                    frontier.push(arc.to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    Capacity augment(std::size_t u, std::size_t sink, Capacity limit)
    {
        if (u == sink) {
            return limit;
        }
        for (auto& i = cursor_[u]; i < adjacency_[u].size(); ++i) {
            auto id = adjacency_[u][i];
            auto& arc = arcs_[id];
            if (arc.residual > 0 && level_[arc.to] == level_[u] + 1) {
                if (Capacity pushed = augment(arc.to, sink, std::min(limit, arc.residual))) {
                    arc.residual -= pushed;
                    arcs_[id ^ 1U].residual += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<std::size_t> cursor_;
};

} // namespace randcx

#endif
