#include "fractalac/fsl.hpp"

namespace fractalac {

namespace {

std::string join(const std::string& addr, const std::string& label) {
    return addr.empty() ? label : addr + "/" + label;
}

// Corner names of the three sub-cells: copy k keeps the inner junction qk as
// its k-th corner and shares glue nodes s01/s02/s12 with its siblings.
std::array<std::array<std::string, 3>, 3>
sub_corners(const std::string& addr) {
    std::array<std::string, 3> q = {join(addr, "q0"), join(addr, "q1"),
                                    join(addr, "q2")};
    auto glue = [&](int i, int j) {
        return join(addr, "s" + std::to_string(std::min(i, j)) +
                              std::to_string(std::max(i, j)));
    };
    std::array<std::array<std::string, 3>, 3> out;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            out[k][j] = (j == k) ? q[k] : glue(j, k);
    return out;
}

void build_cell(CircuitGraph& g, const CircuitParams& p, cplx z_leaf,
                const std::string& addr,
                const std::array<std::string, 3>& corners, int depth) {
    if (depth == 0) {
        g.add_edge(corners[0], corners[1], z_leaf);
        g.add_edge(corners[0], corners[2], z_leaf);
        g.add_edge(corners[1], corners[2], z_leaf);
        return;
    }
    auto sub = sub_corners(addr);
    for (int k = 0; k < 3; ++k)
        build_cell(g, p, z_leaf, addr + std::to_string(k), sub[k], depth - 1);
    for (int k = 0; k < 3; ++k)
        g.add_edge(corners[k], join(addr, "q" + std::to_string(k)), p.Z_C());
    g.add_edge(corners[0], corners[1], p.Z_L());
    g.add_edge(corners[0], corners[2], p.Z_L());
    g.add_edge(corners[1], corners[2], p.Z_L());
}

CircuitGraph build(const CircuitParams& p, cplx z_leaf, int depth) {
    if (depth < 0 || depth > 8)
        throw SizeError("level must be between 0 and 8");
    CircuitGraph g;
    std::array<std::string, 3> roots = {"p0", "p1", "p2"};
    for (const auto& id : roots) g.add_node(id);
    build_cell(g, p, z_leaf, "", roots, depth);
    g.set_terminals({roots[0], roots[1], roots[2]});
    return g;
}

} // namespace

CircuitGraph fsl_build_level_graph(const CircuitParams& p, int N) {
    p.validate();
    return build(p, p.Z_L(), N);
}

CircuitGraph fsl_build_reduced_graph(const CircuitParams& p, int depth) {
    p.validate();
    cplx Z = fsl_characteristic_impedance(p).Z;
    return build(p, Z, depth);
}

std::array<std::string, 3> fsl_cell_corners(const std::string& address) {
    std::array<std::string, 3> corners = {"p0", "p1", "p2"};
    std::string addr;
    for (char ch : address) {
        if (ch < '0' || ch > '2')
            throw AddressError(std::string("address symbol '") + ch +
                               "' outside {0,1,2}");
        corners = sub_corners(addr)[ch - '0'];
        addr += ch;
    }
    return corners;
}

InterpolationSet fsl_harmonic_matrices(const CircuitParams& p) {
    p.validate();
    if (p.epsilon != 0.0)
        throw ParamError("interpolation matrices are defined for epsilon = 0");
    FSLImpedance chi = fsl_characteristic_impedance(p);
    if (chi.regime != FSLRegime::Filter)
        throw RegimeError(std::string("harmonic interpolation needs the filter "
                                      "regime, got ") +
                          to_string(chi.regime));

    cplx Z = chi.Z;
    cplx zc = p.Z_C();
    cplx den = 9.0 * zc + 5.0 * Z;  // Re = 5 Re(Z) > 0 in the filter band

    InterpolationSet set;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            set.pq(i, j) = (i == j ? 3.0 * zc + 5.0 * Z : 3.0 * zc) / den;

    // copy matrices are the constant harmonic extension rules of the gasket
    const double mats[3][3][3] = {
        {{1.0, 0.0, 0.0}, {0.4, 0.4, 0.2}, {0.4, 0.2, 0.4}},
        {{0.4, 0.4, 0.2}, {0.0, 1.0, 0.0}, {0.2, 0.4, 0.4}},
        {{0.4, 0.2, 0.4}, {0.2, 0.4, 0.4}, {0.0, 0.0, 1.0}},
    };
    Mat3* dst[3] = {&set.M0, &set.M1, &set.M2};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) (*dst[k])(i, j) = mats[k][i][j];
    return set;
}

HarmonicTriple fsl_harmonic_evaluate(const CircuitParams& p, const Vec3& v,
                                     const std::string& address) {
    InterpolationSet set = fsl_harmonic_matrices(p);
    HarmonicTriple out;
    out.values = v;
    for (char ch : address) {
        if (ch < '0' || ch > '2')
            throw AddressError(std::string("address symbol '") + ch +
                               "' outside {0,1,2}");
        Mat3 A = set.copy_matrix(ch - '0') * set.pq;
        out.kappa *= A.norm_inf();
        out.values = A * out.values;
    }
    return out;
}

} // namespace fractalac
