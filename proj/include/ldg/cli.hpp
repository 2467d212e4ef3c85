#pragma once
// Command-line front end: subcommands minimize | sweep | scales | defects |
// report. Header-only so the logic is testable without spawning processes;
// tools/ldglab.cpp wraps run_cli() in main().
//
// Exit codes: 0 success, 1 error (bad arguments, config, or I/O),
// 2 solver finished without reaching the residual tolerance.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <ldg/boundary.hpp>
#include <ldg/config.hpp>
#include <ldg/defects.hpp>
#include <ldg/experiments.hpp>
#include <ldg/qf1.hpp>
#include <ldg/scales.hpp>
#include <ldg/solver.hpp>
#include <ldg/vtk.hpp>

namespace ldg {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kQf1Version = 1;
inline constexpr int kRecordsFormatVersion = 1;

namespace cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalFlags {
    std::string calibration_path = "calibration.cfg";
    int threads = 1;
    std::string out_dir;  // overrides the config's out_dir when nonempty
    std::string out_file; // minimize: QF1 destination override
    std::string vtk_file; // minimize: optional VTK export
};

// Splits "--flag value" pairs off the positional arguments.
inline GlobalFlags take_flags(std::vector<std::string>& args) {
    GlobalFlags g;
    std::vector<std::string> pos;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto need_value = [&](const char* name) -> const std::string& {
            if (i + 1 >= args.size())
                throw UsageError(std::string(name) + " requires a value");
            return args[++i];
        };
        if (a == "--calibration") g.calibration_path = need_value("--calibration");
        else if (a == "--threads") g.threads = int(std::stol(need_value("--threads")));
        else if (a == "--out-dir") g.out_dir = need_value("--out-dir");
        else if (a == "--out") g.out_file = need_value("--out");
        else if (a == "--vtk") g.vtk_file = need_value("--vtk");
        else if (a.rfind("--", 0) == 0) throw UsageError("unknown flag '" + a + "'");
        else pos.push_back(a);
    }
    if (g.threads < 1) throw UsageError("--threads must be >= 1");
    args = std::move(pos);
    return g;
}

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// The manifest carries the only timestamp in any output; everything else is
// byte-identical across reruns with identical inputs.
inline void write_manifest(const std::string& dir, const std::string& command,
                           const std::string& config_text,
                           const ConfigFile& calibration,
                           const std::string& calibration_text,
                           const GlobalFlags& flags) {
    std::ofstream os(dir + "/manifest.json");
    if (!os) throw std::runtime_error("cannot write " + dir + "/manifest.json");
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    os << "{\n"
       << "  \"command\": \"" << command << "\",\n"
       << "  \"config_hash\": \"" << fnv1a_hex(config_text) << "\",\n"
       << "  \"calibration_hash\": \"" << fnv1a_hex(calibration_text) << "\",\n"
       << "  \"calibration_version\": " << calibration.get_int("version") << ",\n"
       << "  \"qf1_version\": " << kQf1Version << ",\n"
       << "  \"records_format\": " << kRecordsFormatVersion << ",\n"
       << "  \"tool_version\": \"" << kToolVersion << "\",\n"
       << "  \"threads\": " << flags.threads << ",\n"
       << "  \"timestamp\": \"" << stamp << "\"\n"
       << "}\n";
}

inline ConfigFile load_calibration(const std::string& path) {
    ConfigFile cal = ConfigFile::parse_file(path);
    cal.require_known({"version", "lambda", "eta_clear", "c_clear", "eta_core",
                       "sigma", "theta", "beta", "bulk_band", "bulk_floor",
                       "lp_band", "cover_band", "point_band"});
    if (cal.get_int("version") < 1)
        throw ConfigError(path + ": version must be >= 1");
    return cal;
}

// ---------------------------------------------------------------------------
// minimize

struct MinimizeConfig {
    BcFamily bc = BcFamily::constant;
    double winding = 0.5;
    int nx = 0, ny = 0, nz = 0;
    double h = 0.0;
    double eps = 0.0;
    std::uint64_t seed = 0;
    double residual_tol = 1e-5;
    int max_iters = 50000;
    bool random_quench = false;
    std::string out_dir;

    GridSpec grid() const {
        GridSpec g;
        g.nx = nx;
        g.ny = ny;
        g.nz = nz;
        g.h = h;
        g.origin = {-0.5 * h * (nx - 1), -0.5 * h * (ny - 1),
                    nz > 1 ? -0.5 * h * (nz - 1) : 0.0};
        return g;
    }
};

inline MinimizeConfig minimize_config_from(const ConfigFile& cf) {
    cf.require_known({"bc", "winding", "grid", "h", "eps", "seed", "tol",
                      "max_iters", "init", "out_dir"});
    MinimizeConfig c;
    c.bc = bc_family_of(cf.get_string("bc"));
    c.winding = cf.get_real_or("winding", 0.5);
    auto dims = parse_real_list(cf.get_string("grid"), "grid");
    if (dims.size() != 3) throw std::invalid_argument("grid: need nx,ny,nz");
    c.nx = int(dims[0]);
    c.ny = int(dims[1]);
    c.nz = int(dims[2]);
    c.h = cf.get_real("h");
    c.eps = cf.get_real("eps");
    c.seed = std::uint64_t(cf.get_int_or("seed", 0));
    c.residual_tol = cf.get_real_or("tol", 1e-5);
    c.max_iters = int(cf.get_int_or("max_iters", 50000));
    const std::string init = cf.get_string_or("init", "warm");
    if (init != "warm" && init != "random")
        throw std::invalid_argument("init must be warm|random");
    c.random_quench = init == "random";
    c.out_dir = cf.get_string("out_dir");
    c.grid().validate();
    if (!(c.eps >= 2.0 * c.h))
        throw std::invalid_argument("eps must be >= 2h for a resolved core");
    if (c.bc != BcFamily::constant &&
        (c.nx % 2 || c.ny % 2 || (c.nz > 1 && c.nz % 2)))
        throw std::invalid_argument(
            "defect families need even node counts so the defect anchor "
            "falls between nodes");
    if (!(c.winding * 2 == std::round(c.winding * 2)) || c.winding == 0)
        throw std::invalid_argument("winding must be a nonzero half-integer");
    return c;
}

inline void apply_family(FieldQ& f, BcFamily bc, double winding) {
    switch (bc) {
        case BcFamily::constant: constant_init(f, {0, 0, 1}); break;
        case BcFamily::hedgehog: hedgehog_init(f, {0, 0, 0}); break;
        case BcFamily::disclination:
            disclination_init(f, DisclinationAxis::make({0, 0, 0}, {0, 0, 1}),
                              winding);
            break;
    }
}

inline int cmd_minimize(const std::string& config_path, const GlobalFlags& flags,
                        const ConfigFile& cal, const std::string& cal_text,
                        std::ostream& out) {
    const std::string text = read_file(config_path);
    MinimizeConfig c = minimize_config_from(ConfigFile::parse_string(text, config_path));
    if (!flags.out_dir.empty()) c.out_dir = flags.out_dir;
    std::filesystem::create_directories(c.out_dir);

    FieldQ f = FieldQ::make(c.grid(), MaterialParams::make(1, 1, 1), c.eps);
    apply_family(f, c.bc, c.winding);
    if (c.random_quench) detail::random_fill(f, c.seed);
    SolveOptions opts;
    opts.residual_tol = c.residual_tol;
    opts.max_iters = c.max_iters;
    opts.seed = c.seed;
    auto [solved, report] = minimize(f, opts);

    const std::string qf1_path =
        flags.out_file.empty() ? c.out_dir + "/field.qf1" : flags.out_file;
    write_qf1(qf1_path, solved);
    {
        std::ofstream os(c.out_dir + "/convergence.csv");
        if (!os) throw std::runtime_error("cannot write convergence.csv");
        write_convergence_csv(os, report);
    }
    if (!flags.vtk_file.empty()) {
        std::ofstream os(flags.vtk_file);
        if (!os) throw std::runtime_error("cannot write " + flags.vtk_file);
        write_vtk(os, solved, "ldglab minimize");
    }
    write_manifest(c.out_dir, "minimize", text, cal, cal_text, flags);
    out << "minimize: " << (report.converged ? "converged" : "NOT converged")
        << " after " << report.iterations << " iterations, energy "
        << report.final_energy << ", residual " << report.final_residual << "\n";
    return report.converged ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep

inline int cmd_sweep(const std::string& config_path, const GlobalFlags& flags,
                     const ConfigFile& cal, const std::string& cal_text,
                     std::ostream& out) {
    const std::string text = read_file(config_path);
    SweepConfig c = sweep_config_from(ConfigFile::parse_string(text, config_path));
    if (!flags.out_dir.empty()) c.out_dir = flags.out_dir;
    std::filesystem::create_directories(c.out_dir);

    auto records = run_sweep(c);
    std::vector<Verdict> verdicts;
    if (records.size() >= 4) {
        verdicts.push_back(verdict_bulk_uniformity(records));
        for (auto& v : verdict_lp_compactness(records)) verdicts.push_back(v);
        verdicts.push_back(verdict_covering(records, c.scale.sigma));
    } else {
        out << "verdicts skipped: need >= 4 records, got " << records.size()
            << "\n";
    }
    emit_report(c.out_dir, records, verdicts);
    write_manifest(c.out_dir, "sweep", text, cal, cal_text, flags);

    bool all_converged = true;
    for (const auto& r : records) all_converged = all_converged && r.converged;
    for (const auto& v : verdicts)
        out << "verdict " << v.name << ": " << v.status << "\n";
    return all_converged ? 0 : 2;
}

// ---------------------------------------------------------------------------
// scales

inline int cmd_scales(const std::string& field_path, const std::string& config_path,
                      const GlobalFlags& flags, const ConfigFile& cal,
                      const std::string& cal_text, std::ostream& out) {
    const std::string text = read_file(config_path);
    ConfigFile cf = ConfigFile::parse_string(text, config_path);
    cf.require_known({"lambda", "eta_clear", "sigma", "theta", "beta", "points",
                      "radii", "out_dir"});
    ScaleParams params;
    params.Lambda = cf.get_real_or("lambda", cal.get_real("lambda"));
    params.eta_clear = cf.get_real_or("eta_clear", cal.get_real("eta_clear"));
    params.sigma = cf.get_real_or("sigma", cal.get_real("sigma"));
    params.theta = cf.get_real_or("theta", cal.get_real("theta"));
    params.beta = cf.get_real_or("beta", cal.get_real("beta"));
    std::string out_dir = flags.out_dir.empty() ? cf.get_string("out_dir")
                                                : flags.out_dir;
    std::filesystem::create_directories(out_dir);

    FieldQ f = read_qf1(field_path);
    const GridSpec& g = f.grid;
    std::vector<std::size_t> nodes;
    if (cf.has("points")) {
        auto pts = parse_real_list(cf.get_string("points"), "points");
        if (pts.size() % 3 != 0)
            throw std::invalid_argument("points: need x,y,z triples");
        for (std::size_t a = 0; a + 2 < pts.size(); a += 3) {
            const int i = int(std::lround((pts[a] - g.origin.x) / g.h));
            const int j = int(std::lround((pts[a + 1] - g.origin.y) / g.h));
            const int k = g.nz > 1
                              ? int(std::lround((pts[a + 2] - g.origin.z) / g.h))
                              : 0;
            if (i < 0 || i >= g.nx || j < 0 || j >= g.ny || k < 0 || k >= g.nz)
                throw std::invalid_argument("points: outside the grid");
            nodes.push_back(g.index(i, j, k));
        }
    }
    std::vector<double> radii =
        cf.has("radii") ? parse_real_list(cf.get_string("radii"), "radii")
                        : std::vector<double>{};
    ScaleReport rep = build_scale_report(f, nodes, radii, params);
    {
        std::ofstream os(out_dir + "/scales.csv");
        if (!os) throw std::runtime_error("cannot write scales.csv");
        write_scale_csv(os, f, rep, params.sigma);
    }
    write_manifest(out_dir, "scales", text, cal, cal_text, flags);
    for (const auto& [r, cover] : rep.covers)
        out << "bad set at r=" << r << ": " << cover.count << " cover balls\n";
    return 0;
}

// ---------------------------------------------------------------------------
// defects

inline int cmd_defects(const std::string& field_path, const std::string& config_path,
                       const GlobalFlags& flags, const ConfigFile& cal,
                       const std::string& cal_text, std::ostream& out) {
    const std::string text = read_file(config_path);
    ConfigFile cf = ConfigFile::parse_string(text, config_path);
    cf.require_known({"circle", "segments", "eta_core", "cylinder", "out_dir"});
    std::string out_dir = flags.out_dir.empty() ? cf.get_string("out_dir")
                                                : flags.out_dir;
    std::filesystem::create_directories(out_dir);

    FieldQ f = read_qf1(field_path);
    const double eta_core = cf.get_real_or("eta_core", cal.get_real("eta_core"));

    std::ofstream rep(out_dir + "/defects.txt");
    if (!rep) throw std::runtime_error("cannot write defects.txt");
    rep << std::setprecision(17);

    if (cf.has("circle")) {
        auto c = parse_real_list(cf.get_string("circle"), "circle");
        if (c.size() != 4)
            throw std::invalid_argument("circle: need cx,cy,cz,radius");
        const double r = c[3];
        const int nseg = std::max<long>(
            cf.get_int_or("segments",
                          std::max(16L, std::lround(2.0 * M_PI * r / f.grid.h))),
            4L);
        LoopSpec loop;
        for (int s = 0; s <= nseg; ++s) {
            const double a = 2.0 * M_PI * s / nseg;
            loop.points.push_back(
                {c[0] + r * std::cos(a), c[1] + r * std::sin(a), c[2]});
        }
        loop.samples_per_segment = 2;
        LoopVerdict v = loop_class(f, loop, eta_core);
        const char* cls = v.cls == LoopClass::nontrivial ? "nontrivial" : "trivial";
        rep << "loop_class " << cls << " min_gap=" << v.min_gap
            << " max_f=" << v.max_f << "\n";
        out << "loop_class " << cls << "\n";
    }

    if (cf.has("cylinder")) {
        auto c = parse_real_list(cf.get_string("cylinder"), "cylinder");
        if (c.size() != 9)
            throw std::invalid_argument(
                "cylinder: need px,py,pz,dx,dy,dz,radius,t0,t1");
        DisclinationAxis ax = DisclinationAxis::make({c[0], c[1], c[2]},
                                                     {c[3], c[4], c[5]});
        CylinderSpec cyl{ax, c[6], c[7], c[8]};
        cyl.validate();
        auto slabs = cross_section_scan(f, ax, cyl.radius, cyl.t0, cyl.t1, eta_core);
        std::ofstream os(out_dir + "/cross_sections.csv");
        if (!os) throw std::runtime_error("cannot write cross_sections.csv");
        os << "t,found,y_x,y_y,y_z,max_f\n" << std::setprecision(17);
        std::size_t hits = 0;
        for (const auto& s : slabs) {
            os << s.t << ',' << (s.found ? 1 : 0) << ',' << s.y.x << ',' << s.y.y
               << ',' << s.y.z << ',' << s.max_f << "\n";
            hits += s.found ? 1 : 0;
        }
        const double sharp = sharpness_lower_bound(f, cyl);
        rep << "cross_sections " << hits << "/" << slabs.size()
            << " slabs above eta_core\n";
        rep << "sharpness_lower_bound " << sharp << "\n";
        out << "cross_sections: " << hits << "/" << slabs.size()
            << " slabs above eta_core; sharpness lower bound " << sharp << "\n";
    }
    write_manifest(out_dir, "defects", text, cal, cal_text, flags);
    return 0;
}

// ---------------------------------------------------------------------------
// report: re-read a records CSV and emit the log-fit alongside the data.

inline std::vector<SweepRecord> read_records_csv(std::istream& is) {
    std::vector<SweepRecord> rs;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("log_inv_eps,", 0) != 0)
                throw std::runtime_error("records CSV: unexpected header");
            header_seen = true;
            continue;
        }
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
        if (cols.size() != 19)
            throw std::runtime_error("records CSV: expected 19 columns");
        SweepRecord r;
        r.epsilon = cols[1];
        r.e_total = cols[2];
        r.e_dirichlet = cols[3];
        r.e_bulk = cols[4];
        r.k_total = cols[5];
        r.k_dirichlet = cols[6];
        r.k_bulk = cols[7];
        r.bulk_over_eps2 = cols[8];
        for (int a = 0; a < 4; ++a) r.lp[a] = cols[9 + a];
        r.mono_worst = cols[13];
        r.sup_q = cols[14];
        r.converged = cols[15] != 0;
        r.iterations = long(cols[16]);
        r.residual = cols[17];
        r.envelope_ok = cols[18] != 0;
        rs.push_back(r);
    }
    if (!header_seen) throw std::runtime_error("records CSV: missing header");
    return rs;
}

inline int cmd_report(const std::string& records_path, const GlobalFlags& flags,
                      const ConfigFile& cal, const std::string& cal_text,
                      std::ostream& out) {
    const std::string text = read_file(records_path);
    std::istringstream is(text);
    auto rs = read_records_csv(is);
    if (rs.size() < 2)
        throw std::runtime_error("report: need >= 2 records for a fit");
    double r2 = 0;
    const double slope = energy_log_slope(rs, &r2);
    const std::string out_dir = flags.out_dir.empty() ? "." : flags.out_dir;
    std::filesystem::create_directories(out_dir);
    std::ofstream os(out_dir + "/report.csv");
    if (!os) throw std::runtime_error("cannot write report.csv");
    os << std::setprecision(17);
    os << "# energy vs log(1/eps): slope=" << slope << " r_squared=" << r2 << "\n";
    os << "log_inv_eps,epsilon,e_total,fitted,residual\n";
    double sx = 0, sy = 0;
    for (const auto& r : rs) {
        sx += std::log(1.0 / r.epsilon);
        sy += r.e_total;
    }
    const double intercept = (sy - slope * sx) / double(rs.size());
    for (const auto& r : rs) {
        const double x = std::log(1.0 / r.epsilon);
        const double fit = intercept + slope * x;
        os << x << ',' << r.epsilon << ',' << r.e_total << ',' << fit << ','
           << (r.e_total - fit) << "\n";
    }
    write_manifest(out_dir, "report", text, cal, cal_text, flags);
    out << "report: slope " << slope << ", r_squared " << r2 << "\n";
    return 0;
}

}  // namespace cli

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
    using namespace cli;
    try {
        GlobalFlags flags = take_flags(args);
        if (args.empty())
            throw UsageError(
                "usage: ldglab <minimize|sweep|scales|defects|report> ... "
                "[--out-dir DIR] [--out FILE] [--vtk FILE] "
                "[--calibration FILE] [--threads N]");
        const std::string cmd = args[0];
        const std::string cal_text = read_file(flags.calibration_path);
        const ConfigFile cal =
            load_calibration(flags.calibration_path);
        if (cmd == "minimize") {
            if (args.size() != 2) throw UsageError("minimize <config>");
            return cmd_minimize(args[1], flags, cal, cal_text, out);
        }
        if (cmd == "sweep") {
            if (args.size() != 2) throw UsageError("sweep <config>");
            return cmd_sweep(args[1], flags, cal, cal_text, out);
        }
        if (cmd == "scales") {
            if (args.size() != 3) throw UsageError("scales <field.qf1> <config>");
            return cmd_scales(args[1], args[2], flags, cal, cal_text, out);
        }
        if (cmd == "defects") {
            if (args.size() != 3) throw UsageError("defects <field.qf1> <config>");
            return cmd_defects(args[1], args[2], flags, cal, cal_text, out);
        }
        if (cmd == "report") {
            if (args.size() != 2) throw UsageError("report <records.csv>");
            return cmd_report(args[1], flags, cal, cal_text, out);
        }
        throw UsageError("unknown command '" + cmd + "'");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ldg
