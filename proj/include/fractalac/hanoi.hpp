#pragma once
#include <string>
#include <vector>

#include "fractalac/graph.hpp"
#include "fractalac/params.hpp"

namespace fractalac {

// Hanoi circuits: a Y-element substitution scheme where impedances rescale
// by a real factor r per level.  Variant II adds component edges between the
// outer terminals and the copy tips.

enum class HanoiVariant { I = 1, II = 2 };

struct HanoiParams {
    HanoiVariant variant = HanoiVariant::I;
    double r = 0.5;
    double omega = 1.0;
    double L = 1.0;
    double C = 1.0;

    double Omega() const { return omega * omega * L * C; }
    cplx Z_C() const { return cplx(0.0, -1.0 / (omega * C)); }
    cplx Z_L() const { return cplx(0.0, omega * L); }

    void validate() const {
        if (!(r > 0.0) || !std::isfinite(r))
            throw ParamError("r must be positive and finite");
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw ParamError("omega must be positive and finite");
        if (!(L > 0.0) || !std::isfinite(L))
            throw ParamError("L must be positive and finite");
        if (!(C > 0.0) || !std::isfinite(C))
            throw ParamError("C must be positive and finite");
    }
};

// Self-consistent impedances of the two arm types.  The circuit measures
// Z1+Z2 across the top terminal pair and 2*Z2 across the base.
struct CharacteristicPair {
    cplx Z1, Z2;
    bool is_filter_root;  // Re(Z1+Z2) > 0 and Re(2 Z2) > 0, strictly
    double residual;      // relative residual against the defining system

    cplx top_pair() const { return Z1 + Z2; }
    cplx base() const { return 2.0 * Z2; }
};

// All self-consistent roots, filter roots first.  Degenerate r values
// (1/2, 3/5, 2/3 for variant I; 3/5, 2/3, 1 for variant II) dispatch to
// dedicated closed forms inside a 1e-12 relative window.
std::vector<CharacteristicPair> hanoi_characteristic_pair(const HanoiParams& p);

// Parameter region where a filter root exists.  Variant I endpoints are
// stored in the half-Omega normalization (the circuit filters iff Omega/2
// lies in (lo, hi)); variant II endpoints are directly in Omega.
struct FilterRegion {
    HanoiVariant variant;
    double r;
    bool empty;
    double lo, hi;
    double gamma;  // variant I only (NaN otherwise, and at r = 1/2)

    bool contains(double Omega) const;
};

FilterRegion hanoi_filter_region(HanoiVariant v, double r, double L, double C);

// Boundary-triple -> junction-triple map, reconstructed from its eigenbasis
// P diag(lambda) P^{-1}.
Mat3 hanoi_pq_map(const HanoiParams& p, const CharacteristicPair& pair);

// The copy matrices M0..M2 (boundary triple -> copy-j boundary triple) and
// the pq map, plus the auxiliary scalars they are written in.
InterpolationSet hanoi_interp_matrices(const HanoiParams& p,
                                       const CharacteristicPair& pair);

// Finite approximation: level 0 is a Y-element (arm Z1 to p0, arms Z2 to
// p1/p2); level k+1 wires three level-k copies (impedances scaled by r)
// through capacitor and inductor connectors.  N <= 8.
CircuitGraph hanoi_build_level_graph(const HanoiParams& p,
                                     const CharacteristicPair& pair, int N);

// Tip node names of the copy at the given address word, and the junction
// node of a leaf cell.
std::array<std::string, 3> hanoi_cell_tips(HanoiVariant v,
                                           const std::string& address);
std::string hanoi_cell_center(const std::string& address);

// Boundary values of the copy addressed by a word over {0,1,2}:
// M_{w_n} ... M_{w_1} v.  The matrices are scale-invariant, so the same set
// applies at every depth.
HarmonicTriple hanoi_harmonic_evaluate(const HanoiParams& p,
                                       const CharacteristicPair& pair,
                                       const Vec3& v,
                                       const std::string& address);

} // namespace fractalac
