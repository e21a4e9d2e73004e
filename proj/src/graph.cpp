#include "fractalac/graph.hpp"

#include <cmath>

namespace fractalac {

int CircuitGraph::add_node(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    int ix = static_cast<int>(names_.size());
    names_.push_back(id);
    index_.emplace(id, ix);
    return ix;
}

int CircuitGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ParamError("unknown node id: " + id);
    return it->second;
}

void CircuitGraph::add_edge(const std::string& a, const std::string& b, cplx z) {
    if (a == b) throw ParamError("self-loop edge at node " + a);
    if (std::abs(z) == 0.0)
        throw ParamError("zero-impedance edge " + a + " - " + b +
                         " (contract the nodes instead)");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ParamError("non-finite impedance on edge " + a + " - " + b);
    int ia = add_node(a);
    int ib = add_node(b);
    edges_.push_back({ia, ib, z});
}

void CircuitGraph::set_terminals(const std::vector<std::string>& ids) {
    terminals_.clear();
    for (const auto& id : ids) terminals_.push_back(index_of(id));
}

bool CircuitGraph::connected() const {
    int n = node_count();
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges_) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == n;
}

nlohmann::json CircuitGraph::to_json() const {
    nlohmann::json j;
    j["nodes"] = names_;
    std::vector<std::string> terms;
    for (int t : terminals_) terms.push_back(names_[t]);
    j["terminals"] = terms;
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : edges_) {
        es.push_back({{"a", names_[e.a]},
                      {"b", names_[e.b]},
                      {"re", e.z.real()},
                      {"im", e.z.imag()}});
    }
    j["edges"] = es;
    return j;
}

CircuitGraph CircuitGraph::from_json(const nlohmann::json& j) {
    CircuitGraph g;
    for (const auto& n : j.at("nodes")) g.add_node(n.get<std::string>());
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                   cplx(e.at("re").get<double>(), e.at("im").get<double>()));
    std::vector<std::string> terms;
    for (const auto& t : j.at("terminals")) terms.push_back(t.get<std::string>());
    g.set_terminals(terms);
    return g;
}

} // namespace fractalac
