#include "ecoscope/depgraph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <ostream>

namespace ecoscope {

UnknownPackageError::UnknownPackageError(const std::string& name)
    : Error("unknown package: " + name), name(name) {}

EmptyGraphError::EmptyGraphError() : Error("graph has no nodes") {}

DependencyGraph::DependencyGraph(std::vector<std::string> nodes,
                                 std::vector<std::vector<NodeId>> adjacency,
                                 std::vector<std::pair<std::string, std::string>> unresolved,
                                 std::size_t disconnected_removed)
    : nodes_(std::move(nodes)),
      adj_(std::move(adjacency)),
      unresolved_(std::move(unresolved)),
      disconnected_removed_(disconnected_removed) {
    id_.reserve(nodes_.size());
    for (NodeId i = 0; i < nodes_.size(); ++i) id_.emplace(nodes_[i], i);
    build_condensation();
}

DependencyGraph::NodeId DependencyGraph::id_of(const std::string& name) const {
    auto it = id_.find(name);
    if (it == id_.end()) throw UnknownPackageError(name);
    return it->second;
}

void DependencyGraph::build_condensation() {
    const std::size_t n = nodes_.size();
    scc_of_.assign(n, 0);

    // Iterative Tarjan; SCCs come out in reverse topological order, so a
    // single pass in emission order sees every successor SCC first.
    std::vector<std::uint32_t> index(n, 0), lowlink(n, 0);
    std::vector<bool> on_stack(n, false), visited(n, false);
    std::vector<NodeId> stack;
    std::uint32_t next_index = 1;
    std::uint32_t scc_count = 0;
    std::vector<std::uint32_t> scc_sizes;

    struct Frame {
        NodeId node;
        std::size_t edge = 0;
    };
    std::vector<Frame> call_stack;

    for (NodeId root = 0; root < n; ++root) {
        if (visited[root]) continue;
        call_stack.push_back({root});
        while (!call_stack.empty()) {
            Frame& frame = call_stack.back();
            NodeId u = frame.node;
            if (frame.edge == 0) {
                visited[u] = true;
                index[u] = lowlink[u] = next_index++;
                stack.push_back(u);
                on_stack[u] = true;
            }
            bool descended = false;
            while (frame.edge < adj_[u].size()) {
                NodeId v = adj_[u][frame.edge++];
                if (!visited[v]) {
                    call_stack.push_back({v});
                    descended = true;
                    break;
                }
                if (on_stack[v]) lowlink[u] = std::min(lowlink[u], index[v]);
            }
            if (descended) continue;
            if (lowlink[u] == index[u]) {
                std::uint32_t size = 0;
                while (true) {
                    NodeId w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    scc_of_[w] = scc_count;
                    ++size;
                    if (w == u) break;
                }
                scc_sizes.push_back(size);
                ++scc_count;
            }
            call_stack.pop_back();
            if (!call_stack.empty()) {
                NodeId parent = call_stack.back().node;
                lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
            }
        }
    }

    scc_size_ = std::move(scc_sizes);
    const std::size_t sccs = scc_size_.size();

    // condensation adjacency (deduped per source SCC)
    std::vector<std::vector<std::uint32_t>> scc_adj(sccs);
    {
        std::vector<std::uint32_t> seen(sccs, UINT32_MAX);
        for (NodeId u = 0; u < n; ++u) {
            std::uint32_t cu = scc_of_[u];
            for (NodeId v : adj_[u]) {
                std::uint32_t cv = scc_of_[v];
                if (cv != cu && seen[cv] != cu) {
                    seen[cv] = cu;
                    scc_adj[cu].push_back(cv);
                }
            }
        }
    }

    // reachability bitsets in emission order (successors first)
    const std::size_t words = (sccs + 63) / 64;
    std::vector<std::uint64_t> reach(sccs * words, 0);
    scc_closure_.assign(sccs, 0);
    scc_depth_.assign(sccs, 0);
    for (std::uint32_t c = 0; c < sccs; ++c) {
        std::uint64_t* row = reach.data() + static_cast<std::size_t>(c) * words;
        row[c / 64] |= 1ull << (c % 64);
        std::size_t depth = scc_size_[c] - 1;
        for (std::uint32_t succ : scc_adj[c]) {
            const std::uint64_t* srow = reach.data() + static_cast<std::size_t>(succ) * words;
            for (std::size_t w = 0; w < words; ++w) row[w] |= srow[w];
            depth = std::max(depth, scc_size_[c] - 1 + 1 + scc_depth_[succ]);
        }
        std::size_t total = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                total += scc_size_[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
                bits &= bits - 1;
            }
        }
        scc_closure_[c] = total;
        scc_depth_[c] = depth;
    }
}

std::size_t DependencyGraph::closure_size(NodeId id) const {
    return scc_closure_[scc_of_[id]] - 1; // all reachable nodes minus the node itself
}

std::size_t DependencyGraph::closure_size(const std::string& pkg) const {
    return closure_size(id_of(pkg));
}

std::size_t DependencyGraph::chain_depth(NodeId id) const {
    return scc_depth_[scc_of_[id]];
}

std::size_t DependencyGraph::chain_depth(const std::string& pkg) const {
    return chain_depth(id_of(pkg));
}

DependencyGraph build_graph(const Snapshot& snapshot) {
    std::vector<std::string> nodes;
    nodes.reserve(snapshot.records.size());
    for (const auto& rec : snapshot.records) nodes.push_back(rec.name);

    std::vector<std::vector<DependencyGraph::NodeId>> adj(nodes.size());
    std::vector<std::pair<std::string, std::string>> unresolved;
    for (std::size_t i = 0; i < snapshot.records.size(); ++i) {
        for (const auto& dep : snapshot.records[i].dependencies) {
            auto it = snapshot.by_name.find(dep);
            if (it == snapshot.by_name.end())
                unresolved.emplace_back(nodes[i], dep);
            else
                adj[i].push_back(static_cast<DependencyGraph::NodeId>(it->second));
        }
    }
    return DependencyGraph(std::move(nodes), std::move(adj), std::move(unresolved));
}

std::pair<DependencyGraph, std::size_t> prune_disconnected(const DependencyGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<std::size_t> indegree(n, 0);
    for (DependencyGraph::NodeId u = 0; u < n; ++u)
        for (auto v : graph.dependencies_of(u)) ++indegree[v];

    std::vector<bool> keep(n, false);
    std::size_t removed = 0;
    for (DependencyGraph::NodeId u = 0; u < n; ++u) {
        keep[u] = indegree[u] > 0 || !graph.dependencies_of(u).empty();
        if (!keep[u]) ++removed;
    }

    std::vector<DependencyGraph::NodeId> new_id(n, 0);
    std::vector<std::string> nodes;
    nodes.reserve(n - removed);
    for (DependencyGraph::NodeId u = 0; u < n; ++u) {
        if (keep[u]) {
            new_id[u] = static_cast<DependencyGraph::NodeId>(nodes.size());
            nodes.push_back(graph.nodes()[u]);
        }
    }
    std::vector<std::vector<DependencyGraph::NodeId>> adj(nodes.size());
    for (DependencyGraph::NodeId u = 0; u < n; ++u) {
        if (!keep[u]) continue;
        for (auto v : graph.dependencies_of(u)) adj[new_id[u]].push_back(new_id[v]);
    }
    std::vector<std::pair<std::string, std::string>> unresolved;
    for (const auto& [depender, dependee] : graph.unresolved())
        if (graph.contains(depender) && keep[graph.id_of(depender)])
            unresolved.emplace_back(depender, dependee);

    return {DependencyGraph(std::move(nodes), std::move(adj), std::move(unresolved),
                            graph.disconnected_removed() + removed),
            removed};
}

GraphStats graph_summary(const DependencyGraph& graph) {
    const std::size_t n = graph.node_count();
    if (n == 0) throw EmptyGraphError();
    GraphStats stats;
    stats.node_count = n;
    stats.disconnected_removed = graph.disconnected_removed();
    std::size_t edges = 0, closure = 0, depth = 0;
    for (DependencyGraph::NodeId u = 0; u < n; ++u) {
        edges += graph.dependencies_of(u).size();
        closure += graph.closure_size(u);
        depth += graph.chain_depth(u);
    }
    stats.avg_outdegree = static_cast<double>(edges) / static_cast<double>(n);
    stats.avg_tree_size = static_cast<double>(closure) / static_cast<double>(n);
    stats.avg_tree_depth = static_cast<double>(depth) / static_cast<double>(n);
    return stats;
}

std::vector<std::pair<std::size_t, double>> closure_size_distribution(
    const DependencyGraph& graph) {
    const std::size_t n = graph.node_count();
    if (n == 0) throw EmptyGraphError();
    std::vector<std::size_t> sizes(n);
    for (DependencyGraph::NodeId u = 0; u < n; ++u) sizes[u] = graph.closure_size(u);
    std::sort(sizes.begin(), sizes.end());
    std::vector<std::pair<std::size_t, double>> points;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 == n || sizes[i + 1] != sizes[i])
            points.emplace_back(sizes[i], static_cast<double>(i + 1) / static_cast<double>(n));
    }
    return points;
}

void write_edge_list(const DependencyGraph& graph, std::ostream& output) {
    for (DependencyGraph::NodeId u = 0; u < graph.node_count(); ++u)
        for (auto v : graph.dependencies_of(u))
            output << graph.nodes()[u] << ' ' << graph.nodes()[v] << '\n';
}

} // namespace ecoscope
