#pragma once
#include <map>
#include <string>
#include <vector>

#include "fractalac/graph.hpp"

namespace fractalac {

// Equilibrium of the complex weighted-Laplacian system under Dirichlet data.
struct DirichletSolution {
    std::map<std::string, cplx> potentials;
    // aligned with graph.edges(); current flows a -> b, I = (V(a)-V(b))/z
    std::vector<cplx> edge_currents;
    // net current injected into the network at each boundary node
    std::map<std::string, cplx> boundary_currents;
};

// Dense Gaussian elimination with partial pivoting on the interior block.
// boundary maps node id -> held potential; every other node is interior.
DirichletSolution solve_dirichlet(const CircuitGraph& g,
                                  const std::map<std::string, cplx>& boundary);

// V/I for a unit potential drop between a and b.
cplx effective_impedance(const CircuitGraph& g, const std::string& a,
                         const std::string& b);

struct PowerReport {
    double edge_dissipation;  // sum over edges of Re(Z_e) |I_e|^2
    double boundary_input;    // Re of sum over boundary of V conj(I)
    cplx boundary_apparent;   // the complex power the boundary supplies
};

PowerReport power_report(const CircuitGraph& g, const DirichletSolution& sol);

// Edge-summed dissipation; enforces the energy balance against the boundary
// input power before returning.
double power_dissipation(const CircuitGraph& g, const DirichletSolution& sol);

enum class YDelta { toY, toDelta };

// Star-triangle duality.  Delta impedances are indexed by the opposite node:
// z[i] joins the two nodes other than i; Y arm w[i] runs from center to i.
std::array<cplx, 3> y_delta(YDelta mode, const std::array<cplx, 3>& z);

} // namespace fractalac
