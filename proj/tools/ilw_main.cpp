#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ilw/acceptance.hpp"
#include "ilw/evolve.hpp"
#include "ilw/fourier.hpp"
#include "ilw/krein.hpp"
#include "ilw/linop.hpp"
#include "ilw/report.hpp"
#include "ilw/wave.hpp"

namespace fs = std::filesystem;
using namespace ilw;
using ilw::report::Report;

namespace {

constexpr double pi = std::numbers::pi;

struct Options {
    double L = pi;
    double delta = 1.0;
    double k = 0.5;
    std::string k_range = "0.1:0.9:9";
    int N = 256;
    double dt = 1e-3;
    double t_end = 1.0;
    double eps = 0.0;
    int record_every = 1000;
    std::string out = ".";
    std::string config;
    bool json = false;
};

class Timer {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// Config files are flat key=value lines; command-line flags win.
void apply_config_file(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    const std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"L", [&](const std::string& v) { o.L = std::stod(v); }},
        {"delta", [&](const std::string& v) { o.delta = std::stod(v); }},
        {"k", [&](const std::string& v) { o.k = std::stod(v); }},
        {"k-range", [&](const std::string& v) { o.k_range = v; }},
        {"N", [&](const std::string& v) { o.N = std::stoi(v); }},
        {"dt", [&](const std::string& v) { o.dt = std::stod(v); }},
        {"t-end", [&](const std::string& v) { o.t_end = std::stod(v); }},
        {"eps", [&](const std::string& v) { o.eps = std::stod(v); }},
        {"record-every", [&](const std::string& v) { o.record_every = std::stoi(v); }},
        {"out", [&](const std::string& v) { o.out = v; }},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t start = line.find_first_not_of(" \t\r\n");
        if (start == std::string::npos || line[start] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        }
        auto trim = [](std::string s) {
            const size_t a = s.find_first_not_of(" \t\r\n");
            const size_t b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
        try {
            it->second(val);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad value for '" + key + "'");
        }
    }
}

fs::path prepare_out(const Options& o) {
    fs::path dir(o.out);
    if (!dir.empty()) fs::create_directories(dir);
    return dir;
}

void emit(const Report& rep, const Options& o) {
    if (o.json) {
        std::cout << rep.to_json().dump(2) << "\n";
        return;
    }
    for (const auto& a : rep.assertions) {
        std::cout << (a.pass ? "PASS " : "FAIL ") << a.name
                  << "  value=" << ilw::report::fmt17(a.value)
                  << " tol=" << ilw::report::fmt17(a.tolerance) << "\n";
    }
}

void write_json_file(const fs::path& path, const Report& rep) {
    std::ofstream out(path);
    out << rep.to_json().dump(2) << "\n";
}

int finish(Report& rep, const Timer& timer, const Options& o) {
    rep.wall_ms = timer.ms();
    emit(rep, o);
    return rep.all_pass() ? 0 : 1;
}

int cmd_wave(const Options& o) {
    Timer timer;
    const auto p = wave::make_params(o.L, o.delta, o.k);
    const ilw::fourier::Grid g(o.L, o.N);
    const auto se = wave::profile_samples(p, g);
    const auto sf = wave::profile_fourier_samples(p, g);
    const double k1 = wave::admissible_kmax(o.L, o.delta);

    double max_diff = 0.0, asym = 0.0;
    int argmin = 0;
    for (int j = 0; j < o.N; ++j) {
        const size_t i = static_cast<size_t>(j);
        max_diff = std::max(max_diff, std::abs(se[i] - sf[i]));
        asym = std::max(asym, std::abs(se[i] - se[static_cast<size_t>((o.N - j) % o.N)]));
        if (se[i] < se[static_cast<size_t>(argmin)]) argmin = j;
    }

    const fs::path dir = prepare_out(o);
    const fs::path csv_path = dir / "wave.csv";
    const fs::path svg_path = dir / "wave.svg";
    {
        std::ofstream out(csv_path);
        ilw::report::CsvWriter csv(out);
        csv.comment("c", p.c);
        csv.comment("A", p.A);
        csv.comment("a", p.a);
        csv.comment("sigma", p.sigma);
        csv.comment("k1", k1);
        csv.header({"x", "phi_elliptic", "phi_fourier", "abs_diff"});
        for (int j = 0; j < o.N; ++j) {
            const size_t i = static_cast<size_t>(j);
            csv.row({g.node(j), se[i], sf[i], std::abs(se[i] - sf[i])});
        }
    }
    {
        ilw::report::Series s;
        s.label = "phi";
        for (int j = 0; j < o.N; ++j) {
            s.x.push_back(g.node(j));
            s.y.push_back(se[static_cast<size_t>(j)]);
        }
        std::ofstream out(svg_path);
        ilw::report::write_svg(out, "traveling wave profile", "x", "phi", {s});
    }

    Report rep;
    rep.command = "wave";
    rep.inputs = {{"L", o.L}, {"delta", o.delta}, {"k", o.k}, {"N", o.N}};
    rep.outputs = {{"c", p.c},
                   {"A", p.A},
                   {"a", p.a},
                   {"sigma", p.sigma},
                   {"k1", k1},
                   {"max_abs_diff", max_diff},
                   {"csv", csv_path.string()},
                   {"svg", svg_path.string()}};
    rep.check("profile_routes_agree", max_diff < 1e-9, max_diff, 1e-9);
    rep.check("profile_even", asym < 1e-9, asym, 1e-9);
    rep.check("trough_at_center", argmin == o.N / 2,
              static_cast<double>(argmin), static_cast<double>(o.N / 2));
    return finish(rep, timer, o);
}

std::vector<double> parse_k_range(const std::string& spec) {
    double a = 0.0, b = 0.0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || !in.eof()) {
        throw std::invalid_argument("k-range must be a:b:n, got '" + spec + "'");
    }
    if (n < 1 || b < a) throw std::invalid_argument("k-range must have b >= a and n >= 1");
    std::vector<double> ks;
    for (int i = 0; i < n; ++i) {
        ks.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    }
    return ks;
}

int cmd_speed_scan(const Options& o) {
    Timer timer;
    const auto ks = parse_k_range(o.k_range);
    const double k0 = wave::speed_root_k0(o.L, o.delta);
    const double k1 = wave::admissible_kmax(o.L, o.delta);

    struct Row {
        double k, c, cp, nsq, nsqp, a, mph;
    };
    std::vector<Row> rows;
    for (double k : ks) {
        const auto p = wave::make_params(o.L, o.delta, k);
        Row r;
        r.k = k;
        r.c = p.c;
        r.cp = wave::dc_dk(o.L, o.delta, k);
        r.nsq = p.norm_squared;
        r.nsqp = wave::dN_dk(o.L, o.delta, k);
        r.a = p.a;
        r.mph = -wave::profile_elliptic(p, o.L / 2.0);
        rows.push_back(r);
    }

    const fs::path dir = prepare_out(o);
    const fs::path csv_path = dir / "speed_scan.csv";
    const fs::path svg_path = dir / "speed_scan.svg";
    {
        std::ofstream out(csv_path);
        ilw::report::CsvWriter csv(out);
        csv.comment("k0", k0);
        csv.comment("k1", k1);
        csv.header({"k", "c", "c_prime", "norm_squared", "norm_squared_prime", "a",
                    "minus_phi_half"});
        for (const Row& r : rows) csv.row({r.k, r.c, r.cp, r.nsq, r.nsqp, r.a, r.mph});
    }
    {
        ilw::report::Series sc{"c(k)", {}, {}}, scp{"c'(k)", {}, {}}, sa{"a(k)", {}, {}},
            sm{"-phi(L/2)", {}, {}};
        for (const Row& r : rows) {
            sc.x.push_back(r.k);
            sc.y.push_back(r.c);
            scp.x.push_back(r.k);
            scp.y.push_back(r.cp);
            sa.x.push_back(r.k);
            sa.y.push_back(r.a);
            sm.x.push_back(r.k);
            sm.y.push_back(r.mph);
        }
        std::ofstream out(svg_path);
        ilw::report::write_svg(out, "speed and shift scan", "k", "value",
                               {sc, scp, sa, sm});
    }

    double min_cp = rows.empty() ? 0.0 : rows.front().cp;
    double min_margin = rows.empty() ? 0.0 : rows.front().a - rows.front().mph;
    for (const Row& r : rows) {
        min_cp = std::min(min_cp, r.cp);
        min_margin = std::min(min_margin, r.a - r.mph);
    }

    Report rep;
    rep.command = "speed-scan";
    rep.inputs = {{"L", o.L}, {"delta", o.delta}, {"k_range", o.k_range}, {"N", o.N}};
    rep.outputs = {{"k0", k0},
                   {"k1", k1},
                   {"points", static_cast<int>(rows.size())},
                   {"csv", csv_path.string()},
                   {"svg", svg_path.string()}};
    rep.check("speed_strictly_increasing", min_cp > 0.0, min_cp, 0.0);
    rep.check("shift_dominates_trough", min_margin > 0.0, min_margin, 0.0);
    return finish(rep, timer, o);
}

int cmd_stability(const Options& o) {
    Timer timer;
    const auto p = wave::make_params(o.L, o.delta, o.k);
    const auto kr = krein::krein_report(p, o.N);
    const auto spec = linop::spectrum_report(p, o.N);
    const auto alpha = linop::shifted_coefficients(p, 40);
    const auto pf2 = linop::pf2_check(alpha, 40);
    const auto gal = linop::galilean_shift(p, o.N);

    Report rep;
    rep.command = "stability";
    rep.inputs = {{"L", o.L}, {"delta", o.delta}, {"k", o.k}, {"N", o.N}};
    rep.outputs = {{"c", kr.c},
                   {"n_L", kr.n_L},
                   {"n_zero", kr.n_zero},
                   {"kernel_residual", spec.kernel_residual},
                   {"I_direct", kr.I_direct},
                   {"I_closed", kr.I_closed},
                   {"detD_direct", kr.D.det_direct},
                   {"detD_closed", kr.D.det_closed},
                   {"p3_direct", kr.p3.direct},
                   {"p3_closed", kr.p3.closed},
                   {"n_I", kr.n_I},
                   {"n_D", kr.n_D},
                   {"K_Ham", kr.K_Ham},
                   {"closed_form_regime", kr.closed_form_regime},
                   {"verdict", krein::verdict_name(kr.verdict)},
                   {"reason", kr.reason},
                   {"pf2_alpha_min", pf2.alpha_min},
                   {"pf2_min_minor", pf2.min_minor},
                   {"pf2_pass", pf2.pass},
                   {"galilean_a", gal.a},
                   {"galilean_sigma", gal.sigma},
                   {"galilean_residual", gal.residual}};

    rep.check("kernel_is_simple", kr.n_zero == 1, static_cast<double>(kr.n_zero), 1.0);
    rep.check("kernel_residual", spec.kernel_residual < 1e-6, spec.kernel_residual, 1e-6);
    rep.check("pf2_minors", pf2.pass, pf2.min_minor, 0.0);
    rep.check("galilean_preconditions", gal.precond_center && gal.precond_speed,
              gal.a - std::max(gal.minus_phi_half, gal.threshold_speed), 0.0);
    if (kr.closed_form_regime) {
        const double gi = std::abs(kr.I_direct - kr.I_closed) / std::abs(kr.I_direct);
        const double gd =
            std::abs(kr.D.det_direct - kr.D.det_closed) / std::abs(kr.D.det_direct);
        rep.check("I_routes_agree", gi < 1e-5, gi, 1e-5);
        rep.check("detD_routes_agree", gd < 1e-4, gd, 1e-4);
    }

    const fs::path dir = prepare_out(o);
    rep.wall_ms = timer.ms();
    write_json_file(dir / "stability.json", rep);
    if (!o.json) {
        std::cout << "verdict: " << krein::verdict_name(kr.verdict)
                  << (kr.reason.empty() ? "" : " (" + kr.reason + ")")
                  << "  K_Ham=" << kr.K_Ham << "  n_L=" << kr.n_L << "\n";
    }
    return finish(rep, timer, o);
}

int cmd_evolve(const Options& o) {
    Timer timer;
    const auto p = wave::make_params(o.L, o.delta, o.k);
    const ilw::fourier::Grid g(o.L, o.N);
    const auto wp = wave::make_profile(p, g);

    std::vector<double> pert(static_cast<size_t>(o.N));
    for (int j = 0; j < o.N; ++j) {
        pert[static_cast<size_t>(j)] = o.eps * std::cos(4.0 * pi * g.node(j) / o.L);
    }
    ilw::evolve::SimConfig cfg;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    cfg.record_every = o.record_every;

    const fs::path dir = prepare_out(o);
    ilw::evolve::StabilityReport sr;
    try {
        sr = ilw::evolve::stability_experiment(wp, pert, cfg);
    } catch (const ilw::evolve::BlowupError& e) {
        const fs::path dump = dir / "evolve_last_state.csv";
        std::ofstream out(dump);
        ilw::report::CsvWriter csv(out);
        csv.comment("t_blowup", e.t_blowup);
        csv.header({"x", "u"});
        for (int j = 0; j < o.N && j < static_cast<int>(e.last_samples.size()); ++j) {
            csv.row({g.node(j), e.last_samples[static_cast<size_t>(j)]});
        }
        std::cerr << "blow-up at t=" << e.t_blowup << "; last state written to " << dump
                  << "\n";
        return 1;
    }

    const fs::path csv_path = dir / "evolve.csv";
    const fs::path svg_path = dir / "evolve.svg";
    {
        std::ofstream out(csv_path);
        ilw::report::CsvWriter csv(out);
        csv.comment("k", o.k);
        csv.comment("c", p.c);
        csv.comment("eps", o.eps);
        csv.comment("dt", o.dt);
        csv.header({"t", "rho_W", "E_minus1", "E_0", "E_1", "M_k"});
        for (const auto& r : sr.records) {
            csv.row({r.t, r.rho, r.E_minus1, r.E_0, r.E_1, r.Mk});
        }
    }
    {
        ilw::report::Series s{"rho_W(t)", {}, {}};
        for (const auto& r : sr.records) {
            s.x.push_back(r.t);
            s.y.push_back(r.rho);
        }
        std::ofstream out(svg_path);
        ilw::report::write_svg(out, "orbit distance history", "t", "rho_W", {s});
    }

    Report rep;
    rep.command = "evolve";
    rep.inputs = {{"L", o.L},       {"delta", o.delta},
                  {"k", o.k},       {"N", o.N},
                  {"dt", o.dt},     {"t_end", o.t_end},
                  {"eps", o.eps},   {"record_every", o.record_every}};
    rep.outputs = {{"sup_rho", sr.sup_rho},
                   {"E0_drift", sr.E0_drift},
                   {"E1_drift", sr.E1_drift},
                   {"Em1_drift", sr.Em1_drift},
                   {"Mk_drift", sr.Mk_drift},
                   {"perturbation_wnorm", sr.perturbation_wnorm},
                   {"records", static_cast<int>(sr.records.size())},
                   {"csv", csv_path.string()},
                   {"svg", svg_path.string()}};
    const double rho_bound = o.eps == 0.0 ? 1e-6 : 10.0 * o.eps;
    rep.check("orbit_distance_bounded", sr.sup_rho <= rho_bound, sr.sup_rho, rho_bound);
    rep.check("mass_conserved", sr.Em1_drift < 1e-12, sr.Em1_drift, 1e-12);
    rep.check("energy_drift", sr.E0_drift < 1e-8, sr.E0_drift, 1e-8);
    rep.check("hamiltonian_drift", sr.E1_drift < 1e-8, sr.E1_drift, 1e-8);
    rep.check("manifold_drift", sr.Mk_drift < 1e-8, sr.Mk_drift, 1e-8);
    return finish(rep, timer, o);
}

int cmd_verify_all(const Options& o) {
    Timer timer;
    std::ostream* progress = o.json ? &std::cerr : &std::cout;
    const auto results = ilw::acceptance::run_all(progress);

    Report rep;
    rep.command = "verify-all";
    rep.inputs = ilw::report::json::object();
    ilw::report::json criteria = ilw::report::json::array();
    for (const auto& r : results) {
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"detail", r.detail},
                            {"wall_ms", r.wall_ms}});
        char label[48];
        std::snprintf(label, sizeof label, "%02d %s", r.id, r.name.c_str());
        rep.check(label, r.pass, 0.0, 0.0);
    }
    rep.outputs = {{"criteria", std::move(criteria)}};
    rep.wall_ms = timer.ms();
    if (o.json) std::cout << rep.to_json().dump(2) << "\n";
    const bool ok = ilw::acceptance::all_pass(results);
    if (!o.json) std::cout << (ok ? "all criteria passed" : "criteria FAILED") << "\n";
    return ok ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--L", o.L, "domain period")->capture_default_str();
    cmd->add_option("--delta", o.delta, "depth parameter")->capture_default_str();
    cmd->add_option("--N", o.N, "grid size (even, >= 64)")->capture_default_str();
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--config", o.config, "flat key=value config file");
    cmd->add_flag("--json", o.json, "emit the full JSON report on stdout");
}

} // namespace

int main(int argc, char** argv) {
    Options o;

    // The config file seeds defaults; explicit flags then override them.
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) {
            path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = arg.substr(9);
        } else {
            continue;
        }
        try {
            apply_config_file(path, o);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"periodic traveling waves of a nonlocal dispersive wave equation:"
                 " profiles, stability indices, and time evolution"};
    app.require_subcommand(1);

    auto* wave_cmd = app.add_subcommand("wave", "tabulate and plot one wave profile");
    add_common(wave_cmd, o);
    wave_cmd->add_option("--k", o.k, "elliptic modulus")->capture_default_str();

    auto* scan_cmd =
        app.add_subcommand("speed-scan", "scan speed, norm, and shift across moduli");
    add_common(scan_cmd, o);
    scan_cmd->add_option("--k-range", o.k_range, "modulus range a:b:n")
        ->capture_default_str();

    auto* stab_cmd =
        app.add_subcommand("stability", "run the spectral stability pipeline");
    add_common(stab_cmd, o);
    stab_cmd->add_option("--k", o.k, "elliptic modulus")->capture_default_str();

    auto* evol_cmd =
        app.add_subcommand("evolve", "integrate a perturbed wave and track drift");
    add_common(evol_cmd, o);
    evol_cmd->add_option("--k", o.k, "elliptic modulus")->capture_default_str();
    evol_cmd->add_option("--dt", o.dt, "time step")->capture_default_str();
    evol_cmd->add_option("--t-end", o.t_end, "final time")->capture_default_str();
    evol_cmd->add_option("--eps", o.eps, "perturbation amplitude")->capture_default_str();
    evol_cmd->add_option("--record-every", o.record_every, "steps between records")
        ->capture_default_str();

    auto* verify_cmd =
        app.add_subcommand("verify-all", "run the full release criteria suite");
    verify_cmd->add_flag("--json", o.json, "emit the full JSON report on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (wave_cmd->parsed()) return cmd_wave(o);
        if (scan_cmd->parsed()) return cmd_speed_scan(o);
        if (stab_cmd->parsed()) return cmd_stability(o);
        if (evol_cmd->parsed()) return cmd_evolve(o);
        if (verify_cmd->parsed()) return cmd_verify_all(o);
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
