#pragma once
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fractalac/mat3.hpp"

namespace fractalac {

// Undirected multigraph with complex branch impedances.  Node IDs are stable
// hierarchical strings ("021/q1"); parallel edges are kept as-is and the
// solver sums their admittances.
class CircuitGraph {
public:
    struct Edge {
        int a, b;
        cplx z;
    };

    // Adds the node if new, returns its index either way.
    int add_node(const std::string& id);
    bool has_node(const std::string& id) const { return index_.count(id) != 0; }
    int index_of(const std::string& id) const;

    // Endpoints are created implicitly.  Zero impedance and self-loops are
    // rejected: contract the nodes instead.
    void add_edge(const std::string& a, const std::string& b, cplx z);

    void set_terminals(const std::vector<std::string>& ids);

    int node_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& nodes() const { return names_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& terminals() const { return terminals_; }
    const std::string& name(int i) const { return names_.at(i); }

    bool connected() const;

    nlohmann::json to_json() const;
    static CircuitGraph from_json(const nlohmann::json& j);

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::vector<int> terminals_;
};

} // namespace fractalac
