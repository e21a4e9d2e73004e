#pragma once
#include <string>
#include <vector>

#include "fractalac/graph.hpp"
#include "fractalac/params.hpp"

namespace fractalac {

// Ladder circuit: a triangle substitution scheme driven by omega^2 LC.

enum class FSLRegime { Filter, BelowBand, AboveBand, BandEdge };

const char* to_string(FSLRegime r);

// Filter band edges in the variable 2*Omega: 9*(4 -+ sqrt(15)).
double fsl_band_edge_lo();
double fsl_band_edge_hi();

struct FSLImpedance {
    cplx Z;
    FSLRegime regime;
    cplx terminal_impedance() const { return (2.0 / 3.0) * Z; }
};

// Closed-form characteristic impedance of the ideal (epsilon = 0) circuit.
// Inside the band Re(Z) > 0 (the circuit is a filter); outside, Z is purely
// imaginary by construction.
FSLImpedance fsl_characteristic_impedance(const CircuitParams& p);

// The fractional linear map one substitution step applies to the terminal
// approximation impedance, z -> (az + b)/(cz + d).
struct FLTMap {
    cplx a, b, c, d;
    cplx z_plus;   // physical fixed point (attracting; Re > 0 on a tie)
    cplx z_minus;  // the other fixed point

    cplx operator()(cplx z) const;
    cplx multiplier_at(cplx z) const;
};

FLTMap fsl_flt(const CircuitParams& p);

// Orbit [Z0, F(Z0), ..., F^N(Z0)] of the (possibly epsilon-perturbed) map.
std::vector<cplx> fsl_iterate(const CircuitParams& p, cplx Z0, long N);

struct RegularizedPoint {
    double epsilon;
    cplx Z;
    double multiplier_mag;  // |F'_eps(Z_eps)|, strictly below 1 for eps > 0
};

// Fixed points of the perturbed maps along a strictly decreasing positive
// epsilon schedule.
std::vector<RegularizedPoint>
fsl_regularized_limit(const CircuitParams& p, const std::vector<double>& epsilons);

// Finite approximation graphs.  Level 0 is a triangle of inductors on the
// terminals {p0,p1,p2}; level N+1 glues three level-N elements into the
// gasket triple, adds a capacitor from each corner to the opposite inner
// junction qj, and an inductor between each corner pair.  Node IDs are
// address-prefixed.
CircuitGraph fsl_build_level_graph(const CircuitParams& p, int N);

// Same construction but the leaf cells are triangles carrying the
// characteristic impedance: the graph the interpolation matrices live on.
CircuitGraph fsl_build_reduced_graph(const CircuitParams& p, int depth);

// Corner node names of the cell at the given address word (terminals for the
// empty word).
std::array<std::string, 3> fsl_cell_corners(const std::string& address);

// M (junction map) and the three constant copy matrices.  Only defined in
// the filter regime.
InterpolationSet fsl_harmonic_matrices(const CircuitParams& p);

// Boundary values of the cell addressed by a word over {0,1,2}:
// (M_{w_n} M) ... (M_{w_1} M) v.  kappa bounds the growth.
HarmonicTriple fsl_harmonic_evaluate(const CircuitParams& p, const Vec3& v,
                                     const std::string& address);

} // namespace fractalac
