#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ecoscope/snapshot.hpp"

namespace ecoscope {

struct UnknownPackageError : Error {
    explicit UnknownPackageError(const std::string& name);
    std::string name;
};

struct EmptyGraphError : Error {
    EmptyGraphError();
};

struct GraphStats {
    std::size_t node_count = 0;
    double avg_outdegree = 0.0;
    double avg_tree_size = 0.0;
    double avg_tree_depth = 0.0;
    std::size_t disconnected_removed = 0;
};

/// Directed dependency graph; an edge p1 -> p2 means p1 depends on p2.
/// Immutable after construction. Closure and depth queries run against a
/// reachability table over the SCC condensation, built in a sequential
/// pre-pass at construction time.
class DependencyGraph {
public:
    using NodeId = std::uint32_t;

    DependencyGraph(std::vector<std::string> nodes,
                    std::vector<std::vector<NodeId>> adjacency,
                    std::vector<std::pair<std::string, std::string>> unresolved,
                    std::size_t disconnected_removed = 0);

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<NodeId>& dependencies_of(NodeId id) const { return adj_[id]; }
    const std::vector<std::pair<std::string, std::string>>& unresolved() const {
        return unresolved_;
    }
    std::size_t disconnected_removed() const { return disconnected_removed_; }

    bool contains(const std::string& name) const { return id_.count(name) != 0; }
    NodeId id_of(const std::string& name) const; // throws UnknownPackage

    /// Distinct nodes reachable from pkg, excluding pkg itself.
    std::size_t closure_size(const std::string& pkg) const;
    std::size_t closure_size(NodeId id) const;

    /// Longest dependency chain, on the SCC condensation: inter-SCC edges
    /// on the path plus (size - 1) for every SCC on the path. Equals the
    /// longest-path edge count on acyclic graphs.
    std::size_t chain_depth(const std::string& pkg) const;
    std::size_t chain_depth(NodeId id) const;

private:
    std::vector<std::string> nodes_;
    std::unordered_map<std::string, NodeId> id_;
    std::vector<std::vector<NodeId>> adj_;
    std::vector<std::pair<std::string, std::string>> unresolved_;
    std::size_t disconnected_removed_ = 0;

    // condensation
    std::vector<std::uint32_t> scc_of_;      // node -> SCC index
    std::vector<std::uint32_t> scc_size_;
    std::vector<std::size_t> scc_closure_;   // nodes reachable from the SCC (incl. itself)
    std::vector<std::size_t> scc_depth_;

    void build_condensation();
};

/// One node per record; dependencies naming packages absent from the
/// snapshot go to unresolved and are excluded from nodes and metrics.
DependencyGraph build_graph(const Snapshot& snapshot);

/// Drops nodes with indegree 0 and outdegree 0.
std::pair<DependencyGraph, std::size_t> prune_disconnected(const DependencyGraph& graph);

GraphStats graph_summary(const DependencyGraph& graph);

/// CDF of closure sizes: (size, cumulative fraction of nodes), nondecreasing,
/// ending at 1.0.
std::vector<std::pair<std::size_t, double>> closure_size_distribution(
    const DependencyGraph& graph);

/// `depender dependee` per line.
void write_edge_list(const DependencyGraph& graph, std::ostream& output);

} // namespace ecoscope
