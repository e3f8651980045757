// Command-line surface: spectra, thermodynamics, sweeps, verification suites.
#include "nclandau/coherent.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/fock.hpp"
#include "nclandau/io.hpp"
#include "nclandau/params.hpp"
#include "nclandau/thermo.hpp"
#include "nclandau/vcs.hpp"
#include "nclandau/wavefunctions.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
using namespace nclandau;

int thread_count() {
    if (const char* env = std::getenv("NCLANDAU_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
}

PhysParams load_params(const std::string& path) {
    if (path.empty()) {
        // built-in working point: confined electron in a moderate field
        PhysParams p;
        p.omega_c = 0.5;
        return p;
    }
    return params_from_json_file(path);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw ValidationError("bad numeric list entry: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError("empty value list");
    return out;
}

struct ThermoRow {
    double gamma_lower, gamma_exact, gamma_upper;
    double gamma0, gammaL, gammaOsc;
    double m_closed, m_numeric, chi;
};

ThermoRow thermo_row(const ThermoInput& t, SpectrumBasis basis, double h_b) {
    const GammaBreakdown b = poisson_decomposition(t);
    ThermoRow row{};
    row.gamma_lower = b.gamma_lower;
    row.gamma_upper = b.gamma_upper;
    row.gamma_exact =
        basis == SpectrumBasis::helicity ? b.gamma_exact_helicity : b.gamma_exact_polar;
    row.gamma0 = b.gamma0;
    row.gammaL = b.gammaL;
    row.gammaOsc = b.gammaOsc;
    row.m_closed = magnetic_moment_closed(t);
    row.m_numeric = magnetic_moment_numeric(t, h_b);
    row.chi = susceptibility_closed(t);
    return row;
}

const char* kThermoHeader =
    "beta,mu,theta,gamma_lower,gamma_exact,gamma_upper,gamma0,gammaL,gammaOsc,"
    "M_closed,M_numeric,chi";

std::string thermo_csv_fields(const ThermoInput& t, const ThermoRow& r) {
    return csv_line({format_number(t.beta), format_number(t.mu), format_number(t.p.theta),
                     format_number(r.gamma_lower), format_number(r.gamma_exact),
                     format_number(r.gamma_upper), format_number(r.gamma0),
                     format_number(r.gammaL), format_number(r.gammaOsc),
                     format_number(r.m_closed), format_number(r.m_numeric),
                     format_number(r.chi)});
}

int cmd_spectrum(const std::string& basis, int n_max, int rho_max, const PhysParams& p,
                 const std::string& out_path) {
    std::string out;
    if (n_max < 0) throw ValidationError("spectrum: n-max must be >= 0");
    if (basis == "helicity") {
        const FockRep rep = build_fock(p, std::max(2, n_max + 1));
        const Eigen::MatrixXd dimless = dimensionless_spectrum(rep);
        out += "n_plus,n_minus,energy,energy_dimensionless\n";
        for (int np = 0; np <= n_max; ++np)
            for (int nm = 0; nm <= n_max; ++nm)
                out += csv_line({std::to_string(np), std::to_string(nm),
                                 format_number(rep.e_levels(np, nm)),
                                 format_number(dimless(np, nm))});
    } else if (basis == "polar") {
        out += "n,rho,energy\n";
        for (int n = 0; n <= n_max; ++n)
            for (int rho = -rho_max; rho <= rho_max; ++rho)
                out += csv_line({std::to_string(n), std::to_string(rho),
                                 format_number(energy_polar({n, rho}, p))});
    } else if (basis == "compare") {
        // side-by-side polar vs mapped-helicity energies; no equality implied
        out += "n,rho,energy_polar,energy_helicity,ratio_shifted\n";
        for (const auto& row : spectrum_comparison(p, n_max, rho_max))
            out += csv_line({std::to_string(row.n), std::to_string(row.rho),
                             format_number(row.energy_polar),
                             format_number(row.energy_helicity),
                             format_number(row.ratio_shifted)});
    } else {
        throw ValidationError("spectrum: basis must be 'helicity', 'polar' or 'compare'");
    }
    write_output(out_path, out);
    return 0;
}

int cmd_thermo(double beta, double mu, const PhysParams& p, const std::string& basis,
               double h_b, const std::string& format, const std::string& out_path) {
    const ThermoInput t{beta, mu, p};
    const SpectrumBasis sb =
        basis == "polar" ? SpectrumBasis::polar : SpectrumBasis::helicity;
    const ThermoRow row = thermo_row(t, sb, h_b);
    if (row.gamma_lower > row.gamma_exact || row.gamma_exact > row.gamma_upper) {
        if (sb == SpectrumBasis::helicity) {
            std::cerr << "sandwich violated\n";
            return 2;
        }
    }
    if (format == "json") {
        json j{{"beta", beta},
               {"mu", mu},
               {"theta", p.theta},
               {"gamma_lower", row.gamma_lower},
               {"gamma_exact", row.gamma_exact},
               {"gamma_upper", row.gamma_upper},
               {"gamma0", row.gamma0},
               {"gammaL", row.gammaL},
               {"gammaOsc", row.gammaOsc},
               {"M_closed", row.m_closed},
               {"M_numeric", row.m_numeric},
               {"chi", row.chi}};
        write_output(out_path, j.dump(2) + "\n");
    } else {
        write_output(out_path, std::string(kThermoHeader) + "\n" +
                                   thermo_csv_fields(t, row));
    }
    return 0;
}

int cmd_bounds(double beta, double mu, const PhysParams& p, const std::string& out_path) {
    const ThermoInput t{beta, mu, p};
    const auto [lo, hi] = berezin_lieb_bounds(t);
    const GammaResult g = gamma_exact(t, 1e-10, SpectrumBasis::helicity);
    json j{{"beta", beta},
           {"mu", mu},
           {"gamma_lower", lo},
           {"gamma_exact", g.value},
           {"gamma_upper", hi},
           {"tail_bound", g.tail_bound},
           {"slack_lower", g.value - lo},
           {"slack_upper", hi - g.value},
           {"sandwich_ok", lo <= g.value && g.value <= hi}};
    write_output(out_path, j.dump(2) + "\n");
    return j["sandwich_ok"].get<bool>() ? 0 : 2;
}

int cmd_sweep(const std::string& betas, const std::string& mus, const std::string& thetas,
              const std::string& omegacs, const PhysParams& base,
              const std::string& basis, double h_b, const std::string& out_path) {
    const std::vector<double> vb = parse_list(betas);
    const std::vector<double> vm = parse_list(mus);
    const std::vector<double> vt = parse_list(thetas);
    const std::vector<double> vw = parse_list(omegacs);
    const SpectrumBasis sb =
        basis == "polar" ? SpectrumBasis::polar : SpectrumBasis::helicity;

    struct Point {
        double beta, mu, theta, omega_c;
    };
    std::vector<Point> grid;
    for (double b : vb)
        for (double m : vm)
            for (double th : vt)
                for (double w : vw) grid.push_back({b, m, th, w});

    std::vector<std::string> rows(grid.size());
    std::atomic<size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            PhysParams p = base;
            p.theta = grid[i].theta;
            p.omega_c = grid[i].omega_c;
            const ThermoInput t{grid[i].beta, grid[i].mu, p};
            try {
                const ThermoRow r = thermo_row(t, sb, h_b);
                std::string line = thermo_csv_fields(t, r);
                line.pop_back();  // swap the newline for the empty error column
                rows[i] = line + ",\n";
            } catch (const std::exception& e) {
                std::string msg = e.what();
                for (char& c : msg)
                    if (c == ',' || c == '\n') c = ';';
                rows[i] = csv_line({format_number(t.beta), format_number(t.mu),
                                    format_number(p.theta), "nan", "nan", "nan", "nan",
                                    "nan", "nan", "nan", "nan", "nan", msg});
            }
        }
    };
    const int n_threads = std::min<int>(thread_count(), static_cast<int>(grid.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::string out = std::string(kThermoHeader) + ",error\n";
    for (const auto& r : rows) out += r;
    write_output(out_path, out);
    return 0;
}

int cmd_cs_verify(const PhysParams& p, int n_trunc, int n_max, const std::string& out_path) {
    const FockRep rep = build_fock(p, n_trunc);

    double symbol_dev = 0.0;
    const CSLabel labels[] = {{{0.3, 0.1}, {0.5, -0.2}, 0.0},
                              {{1.0, 0.0}, {0.0, 1.0}, 0.4},
                              {{0.7, -0.7}, {0.2, 0.6}, 1.3}};
    for (const CSLabel& label : labels)
        symbol_dev = std::max(symbol_dev, std::abs(lower_symbol_H_numeric(label, rep) -
                                                   lower_symbol_H(label, p)));

    const double resolution_dev = resolution_deviation(n_max);

    // temporal stability: evolving the state equals advancing tau
    bool stability_ok = true;
    for (const CSLabel& label : labels) {
        const double t_step = 0.8;
        CSLabel advanced = label;
        advanced.tau += t_step;
        const Eigen::VectorXcd direct = cs_vector(advanced, rep);
        Eigen::VectorXcd evolved = cs_vector(label, rep);
        for (int np = 0; np < rep.n_trunc; ++np)
            for (int nm = 0; nm < rep.n_trunc; ++nm)
                evolved[rep.index(np, nm)] *=
                    std::polar(1.0, -t_step * rep.energy(np, nm));
        if ((direct - evolved).norm() > 1e-12) stability_ok = false;
    }

    json j{{"resolution_deviation", resolution_dev},
           {"symbol_deviation", symbol_dev},
           {"stability_ok", stability_ok}};
    write_output(out_path, j.dump(2) + "\n");
    const bool ok = stability_ok && resolution_dev < 1e-8 && symbol_dev < 1e-9;
    return ok ? 0 : 2;
}

int cmd_qvcs(const QuaternionLabel& label, double theta_nc, double hbar, int j,
             int n_trunc, int family_cut, const std::string& out_path) {
    const auto rows = qvcs_compare(label, j, theta_nc, hbar, n_trunc, family_cut);
    json stats = json::array();
    for (const auto& r : rows)
        stats.push_back({{"name", r.name},
                         {"closed_form", r.closed},
                         {"oracle", r.oracle},
                         {"discrepancy", r.discrepancy}});
    const QvcsStatistics o = qvcs_statistics(label, j, theta_nc, hbar, n_trunc, family_cut);
    json j_out{{"label",
                {{"r", label.r},
                 {"vartheta", label.vartheta},
                 {"phi", label.phi},
                 {"eta", label.eta},
                 {"rho", label.rho},
                 {"gamma", label.gamma},
                 {"varphi", label.varphi},
                 {"varrho", label.varrho}}},
               {"theta", theta_nc},
               {"j", j},
               {"family_norm", o.family_norm},
               {"statistics", stats}};
    write_output(out_path, j_out.dump(2) + "\n");
    return 0;
}

int cmd_gmatrix(const PhysParams& p, const std::string& out_path) {
    const Eigen::Vector4d ev = g_matrix_eigenvalues(p);
    const LambdaVariantReport rep = lambda_variant_report(p);
    const double scale = std::abs(rep.lambda_plus);
    const double dev = std::max(
        {std::abs(ev[0] - rep.lambda_plus), std::abs(ev[1] - rep.lambda_minus),
         std::abs(ev[2] + rep.lambda_minus), std::abs(ev[3] + rep.lambda_plus)});
    json j{{"eigenvalues", {ev[0], ev[1], ev[2], ev[3]}},
           {"lambda_plus", rep.lambda_plus},
           {"lambda_minus", rep.lambda_minus},
           {"eigenvalue_deviation", dev},
           {"lambda_variant_plus", rep.lambda_variant_plus},
           {"lambda_variant_minus", rep.lambda_variant_minus},
           {"variant_rel_gap_plus", rep.rel_gap_plus},
           {"variant_rel_gap_minus", rep.rel_gap_minus}};
    write_output(out_path, j.dump(2) + "\n");
    return dev <= 1e-9 * scale ? 0 : 2;
}

int cmd_verify_all(const PhysParams& p, const std::string& out_path) {
    json report = json::object();
    bool ok = true;
    const auto record = [&](const char* name, bool pass, double value) {
        report[name] = {{"pass", pass}, {"value", value}};
        ok = ok && pass;
    };

    // theta = 0 reductions
    double worst_reduction = 0.0;
    for (const auto& e : theta_zero_report(p))
        worst_reduction = std::max(worst_reduction, std::abs(e.value - e.expected) /
                                                        std::max(1.0, std::abs(e.expected)));
    record("theta_zero_reduction", worst_reduction < 1e-15, worst_reduction);

    // commutator-matrix eigenvalues
    double gdev = 0.0;
    {
        const Eigen::Vector4d ev = g_matrix_eigenvalues(p);
        const DeformedQuantities d = derive(p);
        gdev = std::max({std::abs(ev[0] - d.lambda_plus), std::abs(ev[1] - d.lambda_minus),
                         std::abs(ev[2] + d.lambda_minus), std::abs(ev[3] + d.lambda_plus)}) /
               std::abs(d.lambda_plus);
        record("g_matrix_eigenvalues", gdev < 1e-9, gdev);
    }

    // ladder truncation defects
    {
        const FockRep rep = build_fock(p, 8);
        const CommutatorDefect defect = commutator_defect(rep);
        record("commutator_low_levels", defect.low_level_max < 1e-14, defect.low_level_max);
        record("commutator_cross_mode", defect.cross_mode_max < 1e-14, defect.cross_mode_max);
        const double rep_gap =
            (hamiltonian_from_ladders(rep) - rep.h_q).cwiseAbs().maxCoeff();
        record("hamiltonian_representation", rep_gap < 1e-10, rep_gap);
    }

    // orthonormality grid
    {
        double worst = 0.0;
        for (int n1 = 0; n1 <= 3; ++n1)
            for (int n2 = 0; n2 <= 3; ++n2)
                for (int r1 = -2; r1 <= 2; ++r1)
                    for (int r2 = -2; r2 <= 2; ++r2)
                        worst = std::max(
                            worst, orthonormality_deviation({n1, r1}, {n2, r2}, p));
        record("polar_orthonormality", worst < 1e-9, worst);
    }

    // coherent-state checks
    {
        const FockRep rep = build_fock(p, 40);
        const CSLabel label{{0.8, 0.2}, {-0.4, 0.5}, 0.7};
        const double dev =
            std::abs(lower_symbol_H_numeric(label, rep) - lower_symbol_H(label, p));
        record("cs_lower_symbol", dev < 1e-9, dev);
        record("cs_resolution", resolution_deviation(12) < 1e-8, resolution_deviation(12));
    }

    // sandwich on a small grid
    {
        double worst_violation = 0.0;
        for (double beta : {0.5, 1.0, 2.0})
            for (double mu : {2.0, 5.0}) {
                const ThermoInput t{beta, mu, p};
                const auto [lo, hi] = berezin_lieb_bounds(t);
                const double g = gamma_exact(t, 1e-10).value;
                worst_violation = std::max({worst_violation, lo - g, g - hi});
            }
        record("berezin_lieb_sandwich", worst_violation <= 0.0, worst_violation);
    }

    // closed form vs quadrature for the bound integral
    {
        double worst = 0.0;
        const ThermoInput t{1.0, 0.0, p};
        for (double kp : {0.1, 1.0, 3.0, 10.0})
            worst = std::max(worst, std::abs(phi_closed(kp, t) - phi_quadrature(kp, t)) /
                                        std::abs(phi_closed(kp, t)));
        record("phi_closed_vs_quadrature", worst < 1e-8, worst);
    }

    // quaternionic moment problems and family norm
    {
        double worst = 0.0;
        for (int n = 0; n <= 10; ++n) worst = std::max(worst, moment_weight_check(n));
        record("vcs_moment_problem", worst < 1e-9, worst);
        QuaternionLabel q{0.6, 0.9, 0.7, 0.3, 0.4, 1.1, 0.5, 0.2};
        const double norm = qvcs_family_norm(q, p, 24, 24);
        record("qvcs_family_norm", std::abs(norm - 1.0) < 1e-10, std::abs(norm - 1.0));
    }

    report["all_pass"] = ok;
    write_output(out_path, report.dump(2) + "\n");
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed Landau levels: spectra, coherent states, thermodynamics"};
    app.require_subcommand(1);

    std::string params_path, out_path, basis = "helicity", format = "csv";
    int n_max = 5, rho_max = 5, n_trunc = 48, family_cut = 32, j_index = 0;
    double beta = 1.0, mu = 5.0, h_b = 0.005;
    std::string betas = "1", mus = "5", thetas = "0", omegacs = "0.5";
    QuaternionLabel qlabel;
    double theta_nc = 0.5, hbar_q = 1.0;

    auto* spectrum = app.add_subcommand("spectrum", "Energy level table as CSV");
    spectrum->add_option("--basis", basis, "helicity or polar");
    spectrum->add_option("--n-max", n_max, "largest principal index");
    spectrum->add_option("--rho-max", rho_max, "largest |rho| (polar)");
    spectrum->add_option("--params", params_path, "JSON parameter file");
    spectrum->add_option("--out", out_path, "output path (default stdout)");

    auto* thermo = app.add_subcommand("thermo", "Grand-canonical row at one point");
    thermo->add_option("--beta", beta, "inverse temperature")->required();
    thermo->add_option("--mu", mu, "chemical potential")->required();
    thermo->add_option("--params", params_path, "JSON parameter file");
    thermo->add_option("--basis", basis, "spectrum basis for gamma_exact");
    thermo->add_option("--h-b", h_b, "field step of the numerical moment");
    thermo->add_option("--format", format, "csv or json");
    thermo->add_option("--out", out_path, "output path");

    auto* bounds = app.add_subcommand("bounds", "Sandwich bounds and slack");
    bounds->add_option("--beta", beta)->required();
    bounds->add_option("--mu", mu)->required();
    bounds->add_option("--params", params_path);
    bounds->add_option("--out", out_path);

    auto* sweep = app.add_subcommand("sweep", "Cartesian thermodynamic sweep");
    sweep->add_option("--beta", betas, "comma-separated list");
    sweep->add_option("--mu", mus, "comma-separated list");
    sweep->add_option("--theta", thetas, "comma-separated list");
    sweep->add_option("--omega-c", omegacs, "comma-separated list");
    sweep->add_option("--params", params_path);
    sweep->add_option("--basis", basis);
    sweep->add_option("--h-b", h_b);
    sweep->add_option("--out", out_path);

    auto* cs_verify = app.add_subcommand("cs-verify", "Coherent-state verification report");
    cs_verify->add_option("--params", params_path);
    cs_verify->add_option("--n-trunc", n_trunc);
    cs_verify->add_option("--n-max", n_max, "largest projected basis index");
    cs_verify->add_option("--out", out_path);

    auto* qvcs = app.add_subcommand("qvcs", "Quaternionic statistics report");
    qvcs->add_option("--r", qlabel.r)->required();
    qvcs->add_option("--vartheta", qlabel.vartheta);
    qvcs->add_option("--phi", qlabel.phi);
    qvcs->add_option("--eta", qlabel.eta);
    qvcs->add_option("--rho", qlabel.rho);
    qvcs->add_option("--gamma", qlabel.gamma);
    qvcs->add_option("--varphi", qlabel.varphi);
    qvcs->add_option("--varrho", qlabel.varrho);
    qvcs->add_option("--theta", theta_nc, "noncommutativity parameter")->required();
    qvcs->add_option("--hbar", hbar_q);
    qvcs->add_option("--j", j_index, "vector index 0..3");
    qvcs->add_option("--n-trunc", n_trunc);
    qvcs->add_option("--family-cut", family_cut);
    qvcs->add_option("--out", out_path);

    auto* gmat = app.add_subcommand("gmatrix", "Commutator-matrix eigenvalue check");
    gmat->add_option("--params", params_path);
    gmat->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify-all", "Run every invariant suite");
    verify->add_option("--params", params_path);
    verify->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const PhysParams p = load_params(params_path);
        if (spectrum->parsed()) return cmd_spectrum(basis, n_max, rho_max, p, out_path);
        if (thermo->parsed()) return cmd_thermo(beta, mu, p, basis, h_b, format, out_path);
        if (bounds->parsed()) return cmd_bounds(beta, mu, p, out_path);
        if (sweep->parsed())
            return cmd_sweep(betas, mus, thetas, omegacs, p, basis, h_b, out_path);
        if (cs_verify->parsed()) return cmd_cs_verify(p, n_trunc, n_max, out_path);
        if (qvcs->parsed())
            return cmd_qvcs(qlabel, theta_nc, hbar_q, j_index, n_trunc, family_cut, out_path);
        if (gmat->parsed()) return cmd_gmatrix(p, out_path);
        if (verify->parsed()) return cmd_verify_all(p, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
