#include "fractalac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fractalac {

namespace {

std::string fmt_mag(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

} // namespace

DirichletSolution solve_dirichlet(const CircuitGraph& g,
                                  const std::map<std::string, cplx>& boundary) {
    if (boundary.empty()) throw ParamError("empty boundary assignment");
    if (!g.connected()) throw TopologyError("graph is not connected");

    int n = g.node_count();
    std::vector<int> interior_index(n, -1);  // node -> row, or -1 if boundary
    std::vector<cplx> fixed(n);
    std::vector<char> is_boundary(n, 0);
    for (const auto& [id, val] : boundary) {
        int ix = g.index_of(id);
        is_boundary[ix] = 1;
        fixed[ix] = val;
    }
    std::vector<int> rows;  // row -> node
    for (int i = 0; i < n; ++i)
        if (!is_boundary[i]) {
            interior_index[i] = static_cast<int>(rows.size());
            rows.push_back(i);
        }
    int m = static_cast<int>(rows.size());

    // assemble the interior block of the weighted Laplacian
    std::vector<std::vector<cplx>> A(m, std::vector<cplx>(m, cplx(0.0)));
    std::vector<cplx> rhs(m, cplx(0.0));
    for (const auto& e : g.edges()) {
        cplx y = 1.0 / e.z;
        for (auto [u, v] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            int ru = interior_index[u];
            if (ru < 0) continue;
            A[ru][ru] += y;
            int rv = interior_index[v];
            if (rv >= 0)
                A[ru][rv] -= y;
            else
                rhs[ru] += y * fixed[v];
        }
    }

    // Gaussian elimination with partial pivoting
    double row_scale = 0.0;
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += std::abs(A[i][j]);
        row_scale = std::max(row_scale, s);
    }
    double pivot_floor = 1e-12 * row_scale;

    std::vector<cplx> x(m);
    for (int col = 0; col < m; ++col) {
        int piv = col;
        double best = std::abs(A[col][col]);
        for (int i = col + 1; i < m; ++i) {
            double v = std::abs(A[i][col]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < pivot_floor || best == 0.0)
            throw SingularSystem("singular interior system: pivot magnitude " +
                                 fmt_mag(best));
        if (piv != col) {
            std::swap(A[piv], A[col]);
            std::swap(rhs[piv], rhs[col]);
        }
        cplx d = A[col][col];
        for (int i = col + 1; i < m; ++i) {
            cplx f = A[i][col] / d;
            if (f == cplx(0.0)) continue;
            A[i][col] = 0.0;
            for (int j = col + 1; j < m; ++j) A[i][j] -= f * A[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    for (int i = m - 1; i >= 0; --i) {
        cplx s = rhs[i];
        for (int j = i + 1; j < m; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }

    DirichletSolution sol;
    std::vector<cplx> pot(n);
    for (int i = 0; i < n; ++i)
        pot[i] = is_boundary[i] ? fixed[i] : x[interior_index[i]];
    for (int i = 0; i < n; ++i) sol.potentials[g.name(i)] = pot[i];

    sol.edge_currents.reserve(g.edges().size());
    std::vector<cplx> net(n, cplx(0.0));      // net current out of each node
    std::vector<double> flow(n, 0.0);         // sum of |I| incident, for scale
    for (const auto& e : g.edges()) {
        cplx I = (pot[e.a] - pot[e.b]) / e.z;
        sol.edge_currents.push_back(I);
        net[e.a] += I;
        net[e.b] -= I;
        flow[e.a] += std::abs(I);
        flow[e.b] += std::abs(I);
    }

    // Kirchhoff residual at interior nodes, relative to the local current flow
    double max_flow = 0.0;
    for (int i = 0; i < n; ++i) max_flow = std::max(max_flow, flow[i]);
    for (int i = 0; i < n; ++i) {
        if (is_boundary[i]) continue;
        double resid = std::abs(net[i]);
        if (resid > 1e-11 * std::max(max_flow, 1e-300))
            throw SingularSystem(
                "current balance residual " + fmt_mag(resid) + " at node " +
                g.name(i) + " exceeds tolerance (ill-conditioned system)");
    }

    for (const auto& [id, val] : boundary) {
        int ix = g.index_of(id);
        (void)val;
        sol.boundary_currents[id] = net[ix];
    }
    return sol;
}

cplx effective_impedance(const CircuitGraph& g, const std::string& a,
                         const std::string& b) {
    if (a == b) throw ParamError("effective impedance needs two distinct nodes");
    DirichletSolution sol = solve_dirichlet(g, {{a, cplx(1.0)}, {b, cplx(0.0)}});
    cplx I = sol.boundary_currents.at(a);

    double scale = 0.0;
    int ia = g.index_of(a);
    for (size_t k = 0; k < g.edges().size(); ++k) {
        const auto& e = g.edges()[k];
        if (e.a == ia || e.b == ia)
            scale = std::max(scale, std::abs(sol.edge_currents[k]));
    }
    // the net injection is a sum of edge currents; if it cancels below
    // rounding, the two-point impedance is numerically infinite
    if (std::abs(I) <= 1e-13 * scale || std::abs(I) == 0.0)
        throw InfiniteImpedance("no net current between " + a + " and " + b);
    return 1.0 / I;
}

PowerReport power_report(const CircuitGraph& g, const DirichletSolution& sol) {
    if (sol.edge_currents.size() != g.edges().size())
        throw ParamError("solution does not belong to this graph");
    PowerReport rep{0.0, 0.0, cplx(0.0)};
    for (size_t k = 0; k < g.edges().size(); ++k) {
        const auto& e = g.edges()[k];
        double I2 = std::norm(sol.edge_currents[k]);
        rep.edge_dissipation += e.z.real() * I2;
    }
    for (const auto& [id, I] : sol.boundary_currents)
        rep.boundary_apparent += sol.potentials.at(id) * std::conj(I);
    rep.boundary_input = rep.boundary_apparent.real();
    return rep;
}

double power_dissipation(const CircuitGraph& g, const DirichletSolution& sol) {
    PowerReport rep = power_report(g, sol);
    double mismatch = std::abs(rep.edge_dissipation - rep.boundary_input);
    double scale = std::max(1.0, std::abs(rep.boundary_apparent));
    if (mismatch > 1e-10 * scale)
        throw NumericalError("energy balance violated: edge dissipation " +
                             fmt_mag(rep.edge_dissipation) +
                             " vs boundary input " + fmt_mag(rep.boundary_input));
    return rep.edge_dissipation;
}

std::array<cplx, 3> y_delta(YDelta mode, const std::array<cplx, 3>& z) {
    for (const auto& v : z)
        if (std::abs(v) == 0.0)
            throw DegenerateTransform("zero impedance input to y_delta");

    if (mode == YDelta::toY) {
        cplx sum = z[0] + z[1] + z[2];
        double scale = std::abs(z[0]) + std::abs(z[1]) + std::abs(z[2]);
        if (std::abs(sum) <= 1e-14 * scale)
            throw DegenerateTransform("delta impedances sum to zero");
        return {z[1] * z[2] / sum, z[0] * z[2] / sum, z[0] * z[1] / sum};
    }
    cplx p = z[0] * z[1] + z[1] * z[2] + z[2] * z[0];
    return {p / z[0], p / z[1], p / z[2]};
}

} // namespace fractalac
