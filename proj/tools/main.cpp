#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fractalac/fsl.hpp"
#include "fractalac/hanoi.hpp"
#include "fractalac/sg.hpp"
#include "fractalac/solver.hpp"

using namespace fractalac;
using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// shortest round-trip decimal form, so reruns are byte-identical
std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParamError("bad number '" + s + "'");
    return v;
}

// complex literals: "2", "-1.5i", "3+4i", "1e-3-2e-4i", "i"
cplx parse_cplx(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ParamError("empty complex literal");
    if (s.back() != 'i') return cplx(parse_double(s), 0.0);
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double(t);
    };
    if (split == std::string::npos) return cplx(0.0, imag_of(s));
    return cplx(parse_double(s.substr(0, split)), imag_of(s.substr(split)));
}

Vec3 parse_boundary(const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        parts.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3)
        throw ParamError("boundary needs exactly three comma-separated values");
    return {parse_cplx(parts[0]), parse_cplx(parts[1]), parse_cplx(parts[2])};
}

// sweep specification lo:hi:steps, sampled at cell midpoints
struct Range {
    double lo = 0.0, hi = 0.0;
    long steps = 0;

    double at(long i) const { return lo + (i + 0.5) * (hi - lo) / steps; }
};

Range parse_range(const std::string& s) {
    size_t c1 = s.find(':');
    size_t c2 = (c1 == std::string::npos) ? std::string::npos : s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParamError("range must be lo:hi:steps, got '" + s + "'");
    Range r;
    r.lo = parse_double(s.substr(0, c1));
    r.hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1));
    std::string st = s.substr(c2 + 1);
    auto res = std::from_chars(st.data(), st.data() + st.size(), r.steps);
    if (res.ec != std::errc() || res.ptr != st.data() + st.size())
        throw ParamError("bad step count '" + st + "'");
    if (r.steps < 2) throw ParamError("a sweep needs at least 2 steps");
    if (!(r.hi > r.lo)) throw ParamError("range upper bound must exceed lower");
    return r;
}

void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    fn(f);
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

HanoiVariant variant_of(const std::string& circuit) {
    return circuit == "hanoi1" ? HanoiVariant::I : HanoiVariant::II;
}

// ---- subcommand bodies ----

struct CommonOpts {
    std::string circuit = "fsl";
    double omega = 1.0, L = 1.0, C = 1.0, epsilon = 0.0, r = 0.4, s = 1.0;
    std::string output;
};

int run_impedance(const CommonOpts& o) {
    json out;
    if (o.circuit == "fsl") {
        CircuitParams p{o.omega, o.L, o.C, o.epsilon};
        FSLImpedance res = fsl_characteristic_impedance(p);
        out = json{{"Z", cplx_json(res.Z)}, {"regime", to_string(res.regime)}};
    } else if (o.circuit == "sg") {
        SGConductance g = sg_symmetric_conductance(o.s);
        out = json{{"g", cplx_json(g.value)},
                   {"second_branch", cplx_json(g.second_branch)},
                   {"complex_radicand", g.complex_radicand}};
    } else {
        HanoiParams p{variant_of(o.circuit), o.r, o.omega, o.L, o.C};
        json roots = json::array();
        for (const CharacteristicPair& cp : hanoi_characteristic_pair(p))
            roots.push_back(json{{"Z1", cplx_json(cp.Z1)},
                                 {"Z2", cplx_json(cp.Z2)},
                                 {"is_filter_root", cp.is_filter_root},
                                 {"residual", cp.residual}});
        out = json{{"roots", roots}};
    }
    with_output(o.output, [&](std::ostream& os) { os << out.dump(2) << "\n"; });
    return 0;
}

int run_region(const CommonOpts& o, const std::string& rspec,
               const std::string& omspec, const std::string& sspec) {
    with_output(o.output, [&](std::ostream& os) {
        os << "circuit,r,omega2lc,is_filter\n";
        if (o.circuit == "fsl") {
            Range om = parse_range(omspec);
            for (long i = 0; i < om.steps; ++i) {
                double Om = om.at(i);
                CircuitParams p{1.0, Om, 1.0, 0.0};
                bool f = fsl_characteristic_impedance(p).regime ==
                         FSLRegime::Filter;
                os << "fsl,," << fmt(Om) << "," << (f ? 1 : 0) << "\n";
            }
        } else if (o.circuit == "sg") {
            Range sr = parse_range(sspec);
            for (long i = 0; i < sr.steps; ++i) {
                double s = sr.at(i);
                sg_symmetric_conductance(s);
                os << "sg," << fmt(s) << ",,0\n";
            }
        } else {
            Range rr = parse_range(rspec);
            Range om = parse_range(omspec);
            for (long i = 0; i < rr.steps; ++i) {
                double r = rr.at(i);
                FilterRegion reg =
                    hanoi_filter_region(variant_of(o.circuit), r, o.L, o.C);
                for (long j = 0; j < om.steps; ++j) {
                    double Om = om.at(j);
                    os << o.circuit << "," << fmt(r) << "," << fmt(Om) << ","
                       << (reg.contains(Om) ? 1 : 0) << "\n";
                }
            }
        }
    });
    return 0;
}

int run_converge(const CommonOpts& o, long steps, const std::string& z0lit) {
    if (steps < 0) throw ParamError("steps must be nonnegative");
    with_output(o.output, [&](std::ostream& os) {
        if (o.circuit == "fsl") {
            CircuitParams p{o.omega, o.L, o.C, o.epsilon};
            FLTMap F = fsl_flt(p);
            cplx z0 = z0lit.empty() ? p.Z_L() : parse_cplx(z0lit);
            std::vector<cplx> orbit = fsl_iterate(p, z0, steps);
            os << "n,epsilon,re_z,im_z,dist\n";
            for (size_t n = 0; n < orbit.size(); ++n)
                os << n << "," << fmt(o.epsilon) << ","
                   << fmt(orbit[n].real()) << "," << fmt(orbit[n].imag())
                   << "," << fmt(std::abs(orbit[n] - F.z_plus)) << "\n";
            return;
        }
        if (o.circuit == "sg")
            throw ParamError("converge applies to fsl, hanoi1 and hanoi2");

        // Exploratory scheme: iterate the two defining network equations of
        // the Hanoi pair as a fixed-point map on (top, base) readings, with
        // every component shifted by epsilon, and track the base root.
        HanoiParams p{variant_of(o.circuit), o.r, o.omega, o.L, o.C};
        cplx target = hanoi_characteristic_pair(p).front().Z2;
        cplx zc = p.Z_C() + o.epsilon;
        cplx zl = p.Z_L() + o.epsilon;
        double r = p.r;
        cplx start = z0lit.empty() ? p.Z_L() : parse_cplx(z0lit);
        cplx top = start, base = start;
        os << "n,epsilon,re_z,im_z,dist,exploratory\n";
        for (long n = 0; n <= steps; ++n) {
            cplx z2 = base / 2.0;
            cplx z1 = top - base / 4.0;
            os << n << "," << fmt(o.epsilon) << "," << fmt(z2.real()) << ","
               << fmt(z2.imag()) << "," << fmt(std::abs(z2 - target))
               << ",1\n";
            cplx ntop, nbase;
            if (p.variant == HanoiVariant::I) {
                ntop = r * z1 + (r * z1 + 2.0 * r * z2 + zc) / 2.0;
                nbase = 2.0 * r * z2 +
                        1.0 / (1.0 / (2.0 * r * z2 + zl) +
                               0.5 / (r * z1 + r * z2 + zc));
            } else {
                ntop = zl + r * z1 + (r * z1 + 2.0 * r * z2 + 2.0 * zc) / 2.0;
                nbase = 2.0 * r * z2 + 2.0 * zc +
                        1.0 / (1.0 / (2.0 * r * z2 + zl) +
                               1.0 / (2.0 * r * (z1 + z2) + 2.0 * zc));
            }
            if (!std::isfinite(ntop.real()) || !std::isfinite(ntop.imag()) ||
                !std::isfinite(nbase.real()) || !std::isfinite(nbase.imag()))
                throw NumericalError("exploratory iteration left the finite "
                                     "plane at step " + std::to_string(n));
            top = ntop;
            base = nbase;
        }
    });
    return 0;
}

int run_harmonic(const CommonOpts& o, const std::string& boundary,
                 const std::string& address) {
    Vec3 v = parse_boundary(boundary);
    HarmonicTriple t;
    if (o.circuit == "fsl") {
        CircuitParams p{o.omega, o.L, o.C, o.epsilon};
        t = fsl_harmonic_evaluate(p, v, address);
    } else if (o.circuit == "sg") {
        throw ParamError("harmonic applies to fsl, hanoi1 and hanoi2");
    } else {
        HanoiParams p{variant_of(o.circuit), o.r, o.omega, o.L, o.C};
        CharacteristicPair pair = hanoi_characteristic_pair(p).front();
        t = hanoi_harmonic_evaluate(p, pair, v, address);
    }
    json out{{"values", json::array({cplx_json(t.values[0]),
                                     cplx_json(t.values[1]),
                                     cplx_json(t.values[2])})},
             {"kappa", t.kappa}};
    with_output(o.output, [&](std::ostream& os) { os << out.dump(2) << "\n"; });
    return 0;
}

int run_oracle(const CommonOpts& o, int level, long trials, unsigned long seed) {
    if (o.circuit == "sg")
        throw ParamError("oracle applies to fsl, hanoi1 and hanoi2");
    if (level < 0 || level > 3)
        throw SizeError("oracle level must be between 0 and 3");
    if (trials < 0) throw ParamError("trials must be nonnegative");

    std::mt19937_64 gen(seed);
    auto unit = [&] { return ((gen() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
    auto rand_cplx = [&] {
        double re = unit();
        double im = unit();
        return cplx(re, im);
    };
    auto rand_addr = [&](int len) {
        std::string s;
        for (int k = 0; k < len; ++k)
            s += static_cast<char>('0' + gen() % 3);
        return s;
    };

    json checks = json::array();
    bool all = true;
    auto add_check = [&](const std::string& name, double dev, double tol) {
        bool pass = dev <= tol;
        checks.push_back(json{{"name", name},
                              {"max_rel_dev", dev},
                              {"tol", tol},
                              {"pass", pass}});
        all = all && pass;
    };
    const double tol = 1e-8;

    if (trials > 0 && o.circuit == "fsl") {
        CircuitParams pe{o.omega, o.L, o.C, o.epsilon};
        CircuitGraph g = fsl_build_level_graph(pe, level);
        cplx eff = effective_impedance(g, "p0", "p1");
        cplx pred = (2.0 / 3.0) * fsl_iterate(pe, pe.Z_L(), level).back();
        add_check("impedance", std::abs(eff - pred) / std::abs(pred), tol);

        CircuitParams p0{o.omega, o.L, o.C, 0.0};
        CircuitGraph red = fsl_build_reduced_graph(p0, level);
        double hdev = 0.0, bal = 0.0;
        for (long t = 0; t < trials; ++t) {
            Vec3 v = {rand_cplx(), rand_cplx(), rand_cplx()};
            std::string addr = rand_addr(level);
            DirichletSolution sol = solve_dirichlet(
                red, {{"p0", v[0]}, {"p1", v[1]}, {"p2", v[2]}});
            Vec3 pred3 = fsl_harmonic_evaluate(p0, v, addr).values;
            auto corners = fsl_cell_corners(addr);
            double vs = std::max({std::abs(v[0]), std::abs(v[1]),
                                  std::abs(v[2]), 1e-30});
            for (int j = 0; j < 3; ++j)
                hdev = std::max(hdev, std::abs(sol.potentials.at(corners[j]) -
                                               pred3[j]) / vs);
            PowerReport rep = power_report(red, sol);
            bal = std::max(bal,
                           std::abs(rep.edge_dissipation - rep.boundary_input) /
                               std::max(1.0, std::abs(rep.boundary_apparent)));
        }
        add_check("harmonic", hdev, tol);
        add_check("energy", bal, tol);
    } else if (trials > 0) {
        HanoiParams p{variant_of(o.circuit), o.r, o.omega, o.L, o.C};
        CharacteristicPair pair = hanoi_characteristic_pair(p).front();
        CircuitGraph g = hanoi_build_level_graph(p, pair, level);
        cplx top = pair.Z1 + pair.Z2, bas = 2.0 * pair.Z2;
        double idev = std::abs(effective_impedance(g, "p0", "p1") - top) /
                      std::abs(top);
        idev = std::max(idev, std::abs(effective_impedance(g, "p1", "p2") -
                                       bas) / std::abs(bas));
        add_check("impedance", idev, tol);

        double hdev = 0.0, bal = 0.0;
        for (long t = 0; t < trials; ++t) {
            Vec3 v = {rand_cplx(), rand_cplx(), rand_cplx()};
            std::string addr = rand_addr(level);
            DirichletSolution sol = solve_dirichlet(
                g, {{"p0", v[0]}, {"p1", v[1]}, {"p2", v[2]}});
            Vec3 pred3 = hanoi_harmonic_evaluate(p, pair, v, addr).values;
            auto tips = hanoi_cell_tips(p.variant, addr);
            double vs = std::max({std::abs(v[0]), std::abs(v[1]),
                                  std::abs(v[2]), 1e-30});
            for (int j = 0; j < 3; ++j)
                hdev = std::max(hdev, std::abs(sol.potentials.at(tips[j]) -
                                               pred3[j]) / vs);
            PowerReport rep = power_report(g, sol);
            bal = std::max(bal,
                           std::abs(rep.edge_dissipation - rep.boundary_input) /
                               std::max(1.0, std::abs(rep.boundary_apparent)));
        }
        add_check("harmonic", hdev, tol);
        add_check("energy", bal, tol);
    }

    json out{{"checks", checks}, {"pass", all}};
    with_output(o.output, [&](std::ostream& os) { os << out.dump(2) << "\n"; });
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"characteristic impedances, filter regions and harmonic "
                 "interpolation for three fractal AC circuits"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string rspec, omspec = "0:4:200", sspec = "0:1.4:50";
    long steps = 100, trials = 20;
    int level = 2;
    unsigned long seed = 1;
    std::string z0lit, boundary = "1,0,0", address;

    auto circuits = CLI::IsMember({"fsl", "hanoi1", "hanoi2", "sg"});

    auto add_common = [&](CLI::App* sub, bool with_eps) {
        sub->add_option("--circuit", o.circuit, "fsl, hanoi1, hanoi2 or sg")
            ->check(circuits);
        sub->add_option("--omega", o.omega, "drive frequency");
        sub->add_option("--L", o.L, "inductance");
        sub->add_option("--C", o.C, "capacitance");
        sub->add_option("--r", o.r, "hanoi scaling ratio");
        sub->add_option("--s", o.s, "sg impedance ratio");
        if (with_eps)
            sub->add_option("--epsilon", o.epsilon, "series loss resistance");
        sub->add_option("-o,--output", o.output, "write to file instead of "
                                                 "stdout");
    };

    CLI::App* imp = app.add_subcommand("impedance",
                                       "characteristic impedance / root pairs");
    add_common(imp, true);

    CLI::App* reg = app.add_subcommand("region", "filter-regime sweep as CSV");
    add_common(reg, false);
    reg->add_option("--r-range", rspec, "r sweep lo:hi:steps");
    reg->add_option("--omega2lc", omspec, "omega^2 L C sweep lo:hi:steps");
    reg->add_option("--s-range", sspec, "s sweep lo:hi:steps");

    CLI::App* con = app.add_subcommand("converge",
                                       "iteration trace toward the fixed "
                                       "point as CSV");
    add_common(con, true);
    con->add_option("--steps", steps, "number of iterations");
    con->add_option("--z0", z0lit, "start value (complex literal)");

    CLI::App* har = app.add_subcommand("harmonic",
                                       "equilibrium values on an addressed "
                                       "cell");
    add_common(har, true);
    har->add_option("--boundary", boundary, "three complex values a,b,c");
    har->add_option("--address", address, "cell address word over {0,1,2}");

    CLI::App* ora = app.add_subcommand("oracle",
                                       "cross-check closed forms against a "
                                       "direct network solve");
    add_common(ora, true);
    ora->add_option("--level", level, "construction depth (0..3)");
    ora->add_option("--trials", trials, "number of random boundary triples");
    ora->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(imp)) return run_impedance(o);
        if (app.got_subcommand(reg)) {
            if ((o.circuit == "hanoi1" || o.circuit == "hanoi2") &&
                rspec.empty())
                throw ParamError("hanoi sweeps need --r-range");
            return run_region(o, rspec, omspec, sspec);
        }
        if (app.got_subcommand(con)) return run_converge(o, steps, z0lit);
        if (app.got_subcommand(har)) return run_harmonic(o, boundary, address);
        if (app.got_subcommand(ora)) {
            if (ora->count("--epsilon") == 0) o.epsilon = 0.01;
            return run_oracle(o, level, trials, seed);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
