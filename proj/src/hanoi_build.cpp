#include "fractalac/hanoi.hpp"

namespace fractalac {

namespace {

std::string join(const std::string& addr, const std::string& label) {
    return addr.empty() ? label : addr + "/" + label;
}

int digit_of(char ch) {
    if (ch < '0' || ch > '2')
        throw AddressError(std::string("address symbol '") + ch +
                           "' outside {0,1,2}");
    return ch - '0';
}

// Tip names of the three copies one level below a cell.  In variant I each
// copy keeps the parent tip on its own side and gets fresh nodes elsewhere;
// in variant II all nine tips are fresh (the parent tips attach through
// component edges instead).
std::array<std::array<std::string, 3>, 3>
copy_tips(HanoiVariant v, const std::string& addr,
          const std::array<std::string, 3>& tips) {
    std::array<std::array<std::string, 3>, 3> ct;
    for (int k = 0; k < 3; ++k) {
        std::string ak = join(addr, std::string(1, char('0' + k)));
        for (int j = 0; j < 3; ++j) {
            if (v == HanoiVariant::I && j == k)
                ct[k][j] = tips[k];
            else
                ct[k][j] = join(ak, "p" + std::to_string(j));
        }
    }
    return ct;
}

void build_cell(CircuitGraph& g, const HanoiParams& p,
                const CharacteristicPair& pair, int level,
                const std::string& addr, const std::array<std::string, 3>& tips,
                double scale) {
    if (level == 0) {
        std::string center = join(addr, "q");
        g.add_edge(tips[0], center, scale * pair.Z1);
        g.add_edge(center, tips[1], scale * pair.Z2);
        g.add_edge(center, tips[2], scale * pair.Z2);
        return;
    }
    auto ct = copy_tips(p.variant, addr, tips);
    for (int k = 0; k < 3; ++k)
        build_cell(g, p, pair, level - 1,
                   join(addr, std::string(1, char('0' + k))), ct[k],
                   scale * p.r);
    g.add_edge(ct[0][1], ct[1][0], scale * p.Z_C());
    g.add_edge(ct[0][2], ct[2][0], scale * p.Z_C());
    g.add_edge(ct[1][2], ct[2][1], scale * p.Z_L());
    if (p.variant == HanoiVariant::II) {
        g.add_edge(tips[0], ct[0][0], scale * p.Z_L());
        g.add_edge(tips[1], ct[1][1], scale * p.Z_C());
        g.add_edge(tips[2], ct[2][2], scale * p.Z_C());
    }
}

} // namespace

CircuitGraph hanoi_build_level_graph(const HanoiParams& p,
                                     const CharacteristicPair& pair, int N) {
    p.validate();
    if (N < 0 || N > 8) throw SizeError("level must be between 0 and 8");
    CircuitGraph g;
    std::array<std::string, 3> roots = {"p0", "p1", "p2"};
    for (const auto& id : roots) g.add_node(id);
    build_cell(g, p, pair, N, "", roots, 1.0);
    g.set_terminals({roots[0], roots[1], roots[2]});
    return g;
}

std::array<std::string, 3> hanoi_cell_tips(HanoiVariant v,
                                           const std::string& address) {
    std::array<std::string, 3> tips = {"p0", "p1", "p2"};
    std::string addr;
    for (char ch : address) {
        int k = digit_of(ch);
        tips = copy_tips(v, addr, tips)[k];
        addr = join(addr, std::string(1, ch));
    }
    return tips;
}

std::string hanoi_cell_center(const std::string& address) {
    std::string addr;
    for (char ch : address) {
        digit_of(ch);
        addr = join(addr, std::string(1, ch));
    }
    return join(addr, "q");
}

HarmonicTriple hanoi_harmonic_evaluate(const HanoiParams& p,
                                       const CharacteristicPair& pair,
                                       const Vec3& v,
                                       const std::string& address) {
    InterpolationSet set = hanoi_interp_matrices(p, pair);
    HarmonicTriple out;
    out.values = v;
    for (char ch : address) {
        const Mat3& A = set.copy_matrix(digit_of(ch));
        out.kappa *= A.norm_inf();
        out.values = A * out.values;
    }
    return out;
}

} // namespace fractalac
