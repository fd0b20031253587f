// lvsurgery-cli: simulate / analyze / scan / render / rerun front end over the
// lvsurgery C API. Artifacts: trajectory CSV, scan CSV, JSON reports, JSON run
// manifests (with content hashes), SVG projections.

#include "lvsurgery.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct runtime_failure {
    std::string message;
};

[[noreturn]] void fail(const std::string& msg) { throw runtime_failure{msg}; }

void check(lvs_status st, const std::string& what) {
    if (st != LVS_OK) fail(what + ": " + lvs_last_error());
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// FNV-1a 64-bit over the file's bytes; hex string.
std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot hash missing output: " + path);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot open output file: " + path);
    out << text;
    if (!out) fail("write failed: " + path);
}

// Values from a JSON config file fill in options the command line left at
// their defaults; precedence is flags > file > built-in defaults.
void apply_config_file(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("config file " + path + ": " + e.what());
    }
    for (auto& [key, value] : j.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (!opt)
            throw CLI::ValidationError("config file key does not match any option: " + key);
        if (opt->count() > 0) continue;
        if (value.is_array())
            for (const auto& item : value) opt->add_result(item.dump());
        else
            opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
        opt->run_callback();
    }
}

std::string trajectory_csv(const lvs_trajectory* tr) {
    const size_t n = lvs_trajectory_size(tr);
    const double* t = lvs_trajectory_times(tr);
    const double* s = lvs_trajectory_states(tr);
    std::string out = "t,X,Y,Z\n";
    for (size_t i = 0; i < n; ++i) {
        out += fmt17(t[i]);
        for (int k = 0; k < 3; ++k) {
            out += ',';
            out += fmt17(s[3 * i + k]);
        }
        out += '\n';
    }
    return out;
}

ordered_json integrator_json(const lvs_integrator_config& c, const std::string& backend,
                             double h_fixed, uint64_t n_steps) {
    ordered_json j;
    j["backend"] = backend;
    if (backend == "fixed") {
        j["h"] = h_fixed;
        j["n_steps"] = n_steps;
    } else {
        j["rtol"] = c.rtol;
        j["atol"] = c.atol;
        j["h_init"] = c.h_init;
        j["h_min"] = c.h_min;
        j["h_max"] = c.h_max;
        j["max_steps"] = c.max_steps;
        j["safety"] = c.safety;
        j["divergence_cap"] = c.divergence_cap;
    }
    return j;
}

void load_integrator_json(const ordered_json& j, lvs_integrator_config& c, std::string& backend,
                          double& h_fixed, uint64_t& n_steps) {
    backend = j.at("backend").get<std::string>();
    if (backend == "fixed") {
        h_fixed = j.at("h").get<double>();
        n_steps = j.at("n_steps").get<uint64_t>();
    } else {
        c.rtol = j.at("rtol").get<double>();
        c.atol = j.at("atol").get<double>();
        c.h_init = j.at("h_init").get<double>();
        c.h_min = j.at("h_min").get<double>();
        c.h_max = j.at("h_max").get<double>();
        c.max_steps = j.at("max_steps").get<uint64_t>();
        c.safety = j.at("safety").get<double>();
        c.divergence_cap = j.at("divergence_cap").get<double>();
    }
}

void add_output(ordered_json& manifest, const std::string& path) {
    ordered_json entry;
    entry["path"] = path;
    entry["fnv1a64"] = file_hash(path);
    manifest["outputs"].push_back(entry);
}

int resolve_jobs(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("LV_SURGERY_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    lvs_params p{};
    double s0[3] = {0.5, 1.0, 2.0};
    double t_end = 1000.0;
    std::string backend = "adaptive";
    double h_fixed = 1e-3;
    lvs_integrator_config integ{};
    double transient_cut = 0.0;
    std::string out = "run";
};

void run_simulate(const SimulateArgs& a, const std::string& manifest_path_override = "") {
    lvs_trajectory* tr = nullptr;
    uint64_t n_steps = 0;
    if (a.backend == "fixed") {
        n_steps = static_cast<uint64_t>(std::llround(a.t_end / a.h_fixed));
        check(lvs_integrate_fixed(a.p, a.s0, a.h_fixed, n_steps, &tr), "integration failed");
    } else {
        check(lvs_integrate(a.p, a.s0, a.t_end, &a.integ, &tr), "integration failed");
    }

    lvs_trajectory* kept = tr;
    if (a.transient_cut > 0.0) {
        lvs_trajectory* tail = nullptr;
        const lvs_status st = lvs_trajectory_discard_transient(tr, a.transient_cut, &tail);
        if (st != LVS_OK) {
            lvs_trajectory_free(tr);
            fail(std::string("transient cut failed: ") + lvs_last_error());
        }
        lvs_trajectory_free(tr);
        kept = tail;
    }

    const std::string csv_path = a.out + ".csv";
    write_text(csv_path, trajectory_csv(kept));
    lvs_trajectory_free(kept);

    ordered_json m;
    m["tool"] = "lvsurgery-cli";
    m["version"] = lvs_version();
    m["timestamp"] = timestamp_utc();
    m["command"] = "simulate";
    m["params"] = {{"A", a.p.a}, {"B", a.p.b}, {"C", a.p.c}};
    m["initial_state"] = {a.s0[0], a.s0[1], a.s0[2]};
    m["t_end"] = a.t_end;
    m["integrator"] = integrator_json(a.integ, a.backend, a.h_fixed, n_steps);
    m["transient_cut"] = a.transient_cut;
    m["out_prefix"] = a.out;
    m["outputs"] = ordered_json::array();
    add_output(m, csv_path);
    const std::string mpath =
        manifest_path_override.empty() ? a.out + ".manifest.json" : manifest_path_override;
    write_text(mpath, m.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// analyze

const char* kLabelNames[5] = {"Ss1", "Ss2", "Ss3", "Ss4", "Ss5"};

ordered_json spectrum_json(const lvs_spectrum& sp) {
    ordered_json j;
    j["eigenvalues"] = ordered_json::array();
    for (int i = 0; i < 3; ++i)
        j["eigenvalues"].push_back({{"re", sp.eig_re[i]}, {"im", sp.eig_im[i]}});
    j["eigenvectors"] = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
        if (!sp.vec_defined[i]) {
            j["eigenvectors"].push_back(nullptr);
            continue;
        }
        ordered_json v = ordered_json::array();
        for (int k = 0; k < 3; ++k)
            v.push_back({{"re", sp.vec_re[i][k]}, {"im", sp.vec_im[i][k]}});
        j["eigenvectors"].push_back(v);
    }
    lvs_point_character ch{};
    check(lvs_classify_spectrum(&sp, &ch), "classification failed");
    j["character"] = lvs_point_kind_name(ch.kind);
    j["complex_pair"] = ch.complex_pair != 0;
    j["signs"] = {ch.signs[0], ch.signs[1], ch.signs[2]};
    return j;
}

struct AnalyzeArgs {
    lvs_params p{};
    bool lyapunov = false;
    double s0[3] = {0.5, 1.0, 2.0};
    lvs_lyapunov_config lyap{};
    std::string out;  // empty: stdout
};

void run_analyze(const AnalyzeArgs& a) {
    ordered_json rep;
    rep["tool"] = "lvsurgery-cli";
    rep["version"] = lvs_version();
    rep["params"] = {{"A", a.p.a}, {"B", a.p.b}, {"C", a.p.c}};

    lvs_steady_state ss[5];
    check(lvs_steady_states(a.p, ss), "steady states failed");
    rep["steady_states"] = ordered_json::array();
    for (int i = 0; i < 5; ++i) {
        ordered_json e;
        e["label"] = kLabelNames[i];
        e["defined"] = ss[i].defined != 0;
        e["admissible"] = ss[i].admissible != 0;
        if (ss[i].defined) e["point"] = {ss[i].point[0], ss[i].point[1], ss[i].point[2]};
        rep["steady_states"].push_back(e);
    }

    rep["spectra"] = ordered_json::object();
    for (int label = LVS_SS1; label <= LVS_SS3; ++label) {
        if (!ss[label].defined) continue;
        lvs_spectrum sp{};
        check(lvs_spectrum_closed_form(a.p, label, &sp), "spectrum failed");
        rep["spectra"][kLabelNames[label]] = spectrum_json(sp);
    }

    ordered_json region;
    lvs_region_report rr{};
    if (a.p.a > 0.0 && lvs_region_report_compute(a.p, &rr) == LVS_OK) {
        region["verdict"] = rr.chaotic_candidate ? "chaotic_candidate"
                            : rr.stable_side     ? "stable_side"
                                                 : "mixed";
        region["ratio"] = rr.ratio;
        region["chaotic_candidate"] = rr.chaotic_candidate != 0;
        region["stable_side"] = rr.stable_side != 0;
        region["ss2_kind"] = lvs_point_kind_name(rr.ss2.kind);
        region["ss3_kind"] = lvs_point_kind_name(rr.ss3.kind);
    } else {
        region["verdict"] = "undefined ratio";
    }
    rep["region"] = region;

    if (a.lyapunov) {
        double value = 0.0, se = 0.0;
        check(lvs_lyapunov_max(a.p, a.s0, &a.lyap, &value, &se), "lyapunov failed");
        rep["lyapunov"] = {{"value", value}, {"std_error", se}, {"t_total", a.lyap.t_total}};
    }

    const std::string text = rep.dump(2) + "\n";
    if (a.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text(a.out, text);
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    double b = 0.0, c = 0.0;
    std::vector<double> a_list;
    double a_from = 0.0, a_to = 0.0;
    int a_steps = -1;
    lvs_scan_config cfg{};
    int jobs_flag = 0;
    std::string out = "scan";
};

std::vector<double> resolve_a_values(const ScanArgs& a) {
    if (!a.a_list.empty()) return a.a_list;
    std::vector<double> vals;
    if (a.a_steps == 1) {
        vals.push_back(a.a_from);
        return vals;
    }
    for (int i = 0; i < a.a_steps; ++i)
        vals.push_back(a.a_from + (a.a_to - a.a_from) * i / (a.a_steps - 1));
    return vals;
}

void run_scan(const ScanArgs& a, const std::string& manifest_path_override = "") {
    const std::vector<double> a_values = resolve_a_values(a);
    lvs_scan_config cfg = a.cfg;
    cfg.jobs = resolve_jobs(a.jobs_flag);

    lvs_scan_result* res = nullptr;
    check(lvs_surgery_scan(a.b, a.c, a_values.data(), a_values.size(), &cfg, &res),
          "scan failed");

    std::string csv = "A,min_distance,angular_coverage,verdict\n";
    std::vector<std::string> traj_files;
    for (size_t i = 0; i < lvs_scan_size(res); ++i) {
        double av = 0.0, eps = 0.0;
        int ok = 0, verdict = 0;
        lvs_hole_metrics m{};
        lvs_scan_entry(res, i, &av, &ok, &m, &verdict, &eps);
        csv += fmt17(av);
        if (ok) {
            csv += ',';
            csv += fmt17(m.min_distance);
            csv += ',';
            csv += fmt17(m.angular_coverage);
            csv += ',';
            csv += lvs_shape_verdict_name(verdict);
        } else {
            csv += ",nan,nan,error";
        }
        csv += '\n';
        if (cfg.keep_trajectories && ok) {
            const lvs_trajectory* tr = lvs_scan_entry_trajectory(res, i);
            if (tr) {
                const std::string path = a.out + "_A" + fmt17(av) + ".csv";
                write_text(path, trajectory_csv(tr));
                traj_files.push_back(path);
            }
        }
    }
    lvs_scan_result_free(res);

    const std::string csv_path = a.out + ".csv";
    write_text(csv_path, csv);

    ordered_json m;
    m["tool"] = "lvsurgery-cli";
    m["version"] = lvs_version();
    m["timestamp"] = timestamp_utc();
    m["command"] = "scan";
    m["B"] = a.b;
    m["C"] = a.c;
    m["A_values"] = a_values;
    m["initial_state"] = {cfg.s0[0], cfg.s0[1], cfg.s0[2]};
    m["t_end"] = cfg.t_end;
    m["transient_fraction"] = cfg.transient_fraction;
    m["integrator"] = integrator_json(cfg.integ, "adaptive", 0.0, 0);
    ordered_json band;
    band["axial_auto"] = cfg.band.axial_auto != 0;
    if (!cfg.band.axial_auto) {
        band["axial_lo"] = cfg.band.axial_lo;
        band["axial_hi"] = cfg.band.axial_hi;
    }
    band["shell_auto"] = cfg.band.shell_auto != 0;
    if (!cfg.band.shell_auto) band["shell_radius"] = cfg.band.shell_radius;
    band["n_bins"] = cfg.band.n_bins;
    band["axial_inset"] = cfg.band.axial_inset;
    m["band"] = band;
    ordered_json thr;
    thr["eps_hole_auto"] = cfg.eps_hole_auto != 0;
    if (!cfg.eps_hole_auto) thr["eps_hole"] = cfg.eps_hole;
    thr["c_min"] = cfg.c_min;
    m["thresholds"] = thr;
    m["jobs"] = cfg.jobs;
    m["keep_trajectories"] = cfg.keep_trajectories != 0;
    m["out_prefix"] = a.out;
    m["outputs"] = ordered_json::array();
    add_output(m, csv_path);
    for (const auto& path : traj_files) add_output(m, path);
    const std::string mpath =
        manifest_path_override.empty() ? a.out + ".manifest.json" : manifest_path_override;
    write_text(mpath, m.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// rerun

void run_rerun(const std::string& manifest_path, bool verify) {
    std::ifstream in(manifest_path);
    if (!in) fail("cannot read manifest: " + manifest_path);
    ordered_json m;
    try {
        in >> m;
    } catch (const std::exception& e) {
        fail("manifest parse error: " + std::string(e.what()));
    }

    const std::string command = m.at("command").get<std::string>();
    if (command == "simulate") {
        SimulateArgs a;
        a.p = {m.at("params").at("A").get<double>(), m.at("params").at("B").get<double>(),
               m.at("params").at("C").get<double>()};
        for (int i = 0; i < 3; ++i) a.s0[i] = m.at("initial_state").at(i).get<double>();
        a.t_end = m.at("t_end").get<double>();
        lvs_integrator_config_default(&a.integ);
        uint64_t n_steps = 0;
        load_integrator_json(m.at("integrator"), a.integ, a.backend, a.h_fixed, n_steps);
        a.transient_cut = m.at("transient_cut").get<double>();
        a.out = m.at("out_prefix").get<std::string>();
        run_simulate(a, manifest_path == a.out + ".manifest.json"
                            ? std::string()
                            : a.out + ".rerun.manifest.json");
    } else if (command == "scan") {
        ScanArgs a;
        a.b = m.at("B").get<double>();
        a.c = m.at("C").get<double>();
        a.a_list = m.at("A_values").get<std::vector<double>>();
        lvs_scan_config_default(&a.cfg);
        for (int i = 0; i < 3; ++i) a.cfg.s0[i] = m.at("initial_state").at(i).get<double>();
        a.cfg.t_end = m.at("t_end").get<double>();
        a.cfg.transient_fraction = m.at("transient_fraction").get<double>();
        std::string backend;
        double h_fixed = 0.0;
        uint64_t n_steps = 0;
        load_integrator_json(m.at("integrator"), a.cfg.integ, backend, h_fixed, n_steps);
        const auto& band = m.at("band");
        a.cfg.band.axial_auto = band.at("axial_auto").get<bool>() ? 1 : 0;
        if (!a.cfg.band.axial_auto) {
            a.cfg.band.axial_lo = band.at("axial_lo").get<double>();
            a.cfg.band.axial_hi = band.at("axial_hi").get<double>();
        }
        a.cfg.band.shell_auto = band.at("shell_auto").get<bool>() ? 1 : 0;
        if (!a.cfg.band.shell_auto)
            a.cfg.band.shell_radius = band.at("shell_radius").get<double>();
        a.cfg.band.n_bins = band.at("n_bins").get<int>();
        a.cfg.band.axial_inset = band.at("axial_inset").get<double>();
        const auto& thr = m.at("thresholds");
        a.cfg.eps_hole_auto = thr.at("eps_hole_auto").get<bool>() ? 1 : 0;
        if (!a.cfg.eps_hole_auto) a.cfg.eps_hole = thr.at("eps_hole").get<double>();
        a.cfg.c_min = thr.at("c_min").get<double>();
        a.jobs_flag = m.at("jobs").get<int>();
        a.cfg.keep_trajectories = m.at("keep_trajectories").get<bool>() ? 1 : 0;
        a.out = m.at("out_prefix").get<std::string>();
        run_scan(a, manifest_path == a.out + ".manifest.json"
                        ? std::string()
                        : a.out + ".rerun.manifest.json");
    } else {
        fail("manifest has unknown command: " + command);
    }

    if (verify) {
        for (const auto& entry : m.at("outputs")) {
            const std::string path = entry.at("path").get<std::string>();
            const std::string expect = entry.at("fnv1a64").get<std::string>();
            const std::string got = file_hash(path);
            if (got != expect)
                fail("rerun produced different bytes for " + path + " (recorded " + expect +
                     ", got " + got + ")");
        }
    }
}

// ---------------------------------------------------------------------------
// render

struct RenderArgs {
    std::string in;
    std::string plane = "xy";
    std::string out = "plot.svg";
    int width = 800, height = 600;
    bool mark_l = false;
    lvs_params p{};
    bool have_params = false;
};

void run_render(const RenderArgs& a) {
    std::ifstream in(a.in);
    if (!in) fail("cannot read input trajectory: " + a.in);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::array<double, 3>> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 4> row{};
        std::istringstream ls(line);
        std::string cell;
        bool bad = false;
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(ls, cell, ',')) {
                bad = true;
                break;
            }
            row[k] = std::strtod(cell.c_str(), nullptr);
        }
        if (bad) fail("malformed CSV row in " + a.in + ": " + line);
        pts.push_back({row[1], row[2], row[3]});
    }
    if (pts.empty()) fail("no samples in " + a.in);

    int iu = 0, iv = 1;
    if (a.plane == "xy") {
        iu = 0;
        iv = 1;
    } else if (a.plane == "xz") {
        iu = 0;
        iv = 2;
    } else {
        iu = 1;
        iv = 2;
    }

    double umin = pts[0][iu], umax = umin, vmin = pts[0][iv], vmax = vmin;
    for (const auto& s : pts) {
        umin = std::min(umin, s[iu]);
        umax = std::max(umax, s[iu]);
        vmin = std::min(vmin, s[iv]);
        vmax = std::max(vmax, s[iv]);
    }

    // The L overlay participates in the bounding box so it is always visible.
    double lbase[3] = {0, 0, 0}, ldir[3] = {0, 0, 0};
    double l0[3] = {0, 0, 0}, l1[3] = {0, 0, 0};
    lvs_steady_state ss[5];
    if (a.mark_l) {
        check(lvs_slow_manifold(a.p, lbase, ldir), "slow manifold failed");
        check(lvs_steady_states(a.p, ss), "steady states failed");
        double ax_lo = 0.0, ax_hi = 0.0;
        bool first = true;
        for (const auto& s : pts) {
            double ax = 0.0;
            const double st[3] = {s[0], s[1], s[2]};
            check(lvs_slow_manifold_axial(a.p, st, &ax), "axial projection failed");
            if (first) {
                ax_lo = ax_hi = ax;
                first = false;
            } else {
                ax_lo = std::min(ax_lo, ax);
                ax_hi = std::max(ax_hi, ax);
            }
        }
        const double pad = 0.1 * std::max(ax_hi - ax_lo, 1.0);
        for (int k = 0; k < 3; ++k) {
            l0[k] = lbase[k] + (ax_lo - pad) * ldir[k];
            l1[k] = lbase[k] + (ax_hi + pad) * ldir[k];
        }
        for (const double* q : {l0, l1}) {
            umin = std::min(umin, q[iu]);
            umax = std::max(umax, q[iu]);
            vmin = std::min(vmin, q[iv]);
            vmax = std::max(vmax, q[iv]);
        }
    }

    const double mx = 0.05 * a.width, my = 0.05 * a.height;
    const double du = umax - umin, dv = vmax - vmin;
    auto px = [&](double u) {
        return du > 0.0 ? mx + (u - umin) / du * (a.width - 2.0 * mx) : a.width / 2.0;
    };
    auto py = [&](double v) {
        return dv > 0.0 ? a.height - my - (v - vmin) / dv * (a.height - 2.0 * my)
                        : a.height / 2.0;
    };
    auto fmt_px = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(a.width) +
           "\" height=\"" + std::to_string(a.height) + "\" viewBox=\"0 0 " +
           std::to_string(a.width) + " " + std::to_string(a.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"0.6\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) svg += ' ';
        svg += fmt_px(px(pts[i][iu])) + ',' + fmt_px(py(pts[i][iv]));
    }
    svg += "\"/>\n";

    if (a.mark_l) {
        svg += "<line stroke=\"#333333\" stroke-width=\"1\" stroke-dasharray=\"6 4\" x1=\"" +
               fmt_px(px(l0[iu])) + "\" y1=\"" + fmt_px(py(l0[iv])) + "\" x2=\"" +
               fmt_px(px(l1[iu])) + "\" y2=\"" + fmt_px(py(l1[iv])) + "\"/>\n";
        for (int label : {LVS_SS2, LVS_SS3}) {
            if (!ss[label].defined) continue;
            const double cx = px(ss[label].point[iu]);
            const double cy = py(ss[label].point[iv]);
            svg += "<circle cx=\"" + fmt_px(cx) + "\" cy=\"" + fmt_px(cy) +
                   "\" r=\"4\" fill=\"none\" stroke=\"#b03030\" stroke-width=\"1.5\"/>\n";
            svg += "<text x=\"" + fmt_px(cx + 6) + "\" y=\"" + fmt_px(cy - 6) +
                   "\" font-size=\"12\" fill=\"#b03030\">" + kLabelNames[label] + "</text>\n";
        }
    }
    svg += "</svg>\n";
    write_text(a.out, svg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for a generalized three-species Lotka-Volterra system"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lvs_version());

    auto add_param_opts = [](CLI::App* cmd, lvs_params& p) {
        cmd->add_option("--A", p.a, "prey self-interaction / predator-Z coupling")
            ->required()
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--B", p.b, "predator-Z death rate")
            ->required()
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--C", p.c, "prey self-enhancement")
            ->required()
            ->check(CLI::NonNegativeNumber);
    };
    auto add_config_opt = [](CLI::App* cmd, std::string& path) {
        cmd->add_option("--config", path, "JSON config file (flags take precedence)");
    };

    // simulate
    SimulateArgs sim;
    lvs_integrator_config_default(&sim.integ);
    std::string sim_config;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate one trajectory to CSV");
    add_param_opts(simulate, sim.p);
    simulate->add_option("--x0", sim.s0[0], "initial X");
    simulate->add_option("--y0", sim.s0[1], "initial Y");
    simulate->add_option("--z0", sim.s0[2], "initial Z");
    simulate->add_option("--t-end", sim.t_end, "integration horizon")->check(CLI::PositiveNumber);
    simulate->add_option("--rtol", sim.integ.rtol, "relative tolerance");
    simulate->add_option("--atol", sim.integ.atol, "absolute tolerance");
    simulate->add_option("--h-max", sim.integ.h_max, "max step size");
    simulate->add_option("--max-steps", sim.integ.max_steps, "step budget");
    simulate->add_option("--backend", sim.backend, "adaptive | fixed")
        ->check(CLI::IsMember({"adaptive", "fixed"}));
    simulate->add_option("--h-fixed", sim.h_fixed, "fixed-step size")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--transient-cut", sim.transient_cut, "drop samples with t <= cut");
    simulate->add_option("--out", sim.out, "output prefix (<out>.csv, <out>.manifest.json)");
    add_config_opt(simulate, sim_config);
    simulate->callback([&] {
        if (!sim_config.empty()) apply_config_file(simulate, sim_config);
        run_simulate(sim);
    });

    // analyze
    AnalyzeArgs ana;
    lvs_lyapunov_config_default(&ana.lyap);
    std::string ana_config;
    CLI::App* analyze = app.add_subcommand("analyze", "steady states, spectra, region report");
    add_param_opts(analyze, ana.p);
    analyze->add_flag("--lyapunov", ana.lyapunov, "estimate the largest Lyapunov exponent");
    analyze->add_option("--x0", ana.s0[0], "Lyapunov start X");
    analyze->add_option("--y0", ana.s0[1], "Lyapunov start Y");
    analyze->add_option("--z0", ana.s0[2], "Lyapunov start Z");
    analyze->add_option("--lyap-t-total", ana.lyap.t_total, "Lyapunov integration horizon");
    analyze->add_option("--out", ana.out, "report file (default: stdout)");
    add_config_opt(analyze, ana_config);
    analyze->callback([&] {
        if (!ana_config.empty()) apply_config_file(analyze, ana_config);
        run_analyze(ana);
    });

    // scan
    ScanArgs sc;
    lvs_scan_config_default(&sc.cfg);
    std::string sc_config;
    bool keep_traj = false;
    CLI::App* scan = app.add_subcommand("scan", "surgery scan over a range of A values");
    scan->add_option("--B", sc.b, "predator-Z death rate")
        ->required()
        ->check(CLI::NonNegativeNumber);
    scan->add_option("--C", sc.c, "prey self-enhancement")
        ->required()
        ->check(CLI::NonNegativeNumber);
    CLI::Option* alist = scan->add_option("--A-list", sc.a_list, "comma-separated A values")
                             ->delimiter(',');
    CLI::Option* afrom = scan->add_option("--A-from", sc.a_from, "sweep start");
    CLI::Option* ato = scan->add_option("--A-to", sc.a_to, "sweep end");
    CLI::Option* asteps =
        scan->add_option("--A-steps", sc.a_steps, "number of sweep values (>= 1)");
    alist->excludes(afrom)->excludes(ato)->excludes(asteps);
    scan->add_option("--x0", sc.cfg.s0[0], "initial X");
    scan->add_option("--y0", sc.cfg.s0[1], "initial Y");
    scan->add_option("--z0", sc.cfg.s0[2], "initial Z");
    scan->add_option("--t-end", sc.cfg.t_end, "per-A integration horizon")
        ->check(CLI::PositiveNumber);
    scan->add_option("--transient-fraction", sc.cfg.transient_fraction,
                     "fraction of t_end discarded as transient")
        ->check(CLI::Range(0.0, 1.0));
    scan->add_option("--rtol", sc.cfg.integ.rtol, "relative tolerance");
    scan->add_option("--atol", sc.cfg.integ.atol, "absolute tolerance");
    CLI::Option* axlo = scan->add_option("--axial-lo", sc.cfg.band.axial_lo, "band window start");
    CLI::Option* axhi = scan->add_option("--axial-hi", sc.cfg.band.axial_hi, "band window end");
    axlo->needs(axhi);
    axhi->needs(axlo);
    scan->add_option("--shell-radius", sc.cfg.band.shell_radius, "band shell radius");
    scan->add_option("--n-bins", sc.cfg.band.n_bins, "angle bins")->check(CLI::PositiveNumber);
    scan->add_option("--axial-inset", sc.cfg.band.axial_inset, "auto-window inset fraction");
    scan->add_option("--eps-hole", sc.cfg.eps_hole, "hole radius threshold");
    scan->add_option("--c-min", sc.cfg.c_min, "coverage threshold");
    scan->add_option("--jobs", sc.jobs_flag,
                     "worker count (default: LV_SURGERY_JOBS, then hardware)");
    scan->add_flag("--keep-trajectories", keep_traj, "write per-A trajectory CSVs");
    scan->add_option("--out", sc.out, "output prefix (<out>.csv, <out>.manifest.json)");
    add_config_opt(scan, sc_config);
    scan->callback([&] {
        if (!sc_config.empty()) apply_config_file(scan, sc_config);
        if (sc.a_list.empty()) {
            if (afrom->count() == 0 || ato->count() == 0 || asteps->count() == 0)
                throw CLI::RequiredError("--A-list or --A-from/--A-to/--A-steps");
            if (sc.a_steps < 1) throw CLI::ValidationError("--A-steps must be >= 1");
        }
        // Explicit window/shell/threshold flags switch off the auto derivation.
        if (scan->count("--axial-lo")) sc.cfg.band.axial_auto = 0;
        if (scan->count("--shell-radius")) sc.cfg.band.shell_auto = 0;
        if (scan->count("--eps-hole")) sc.cfg.eps_hole_auto = 0;
        sc.cfg.keep_trajectories = keep_traj ? 1 : 0;
        run_scan(sc);
    });

    // rerun
    std::string rerun_manifest;
    bool rerun_no_verify = false;
    CLI::App* rerun = app.add_subcommand("rerun", "re-execute a job from its manifest");
    rerun->add_option("--manifest", rerun_manifest, "manifest JSON path")->required();
    rerun->add_flag("--no-verify", rerun_no_verify, "skip comparing output hashes");
    rerun->callback([&] { run_rerun(rerun_manifest, !rerun_no_verify); });

    // render
    RenderArgs rn;
    CLI::App* render = app.add_subcommand("render", "project a trajectory CSV to SVG");
    render->add_option("--in", rn.in, "trajectory CSV")->required();
    render->add_option("--plane", rn.plane, "projection plane: xy | xz | yz")
        ->required()
        ->check(CLI::IsMember({"xy", "xz", "yz"}));
    render->add_option("--out", rn.out, "output SVG path")->required();
    render->add_option("--width", rn.width, "SVG width")->check(CLI::PositiveNumber);
    render->add_option("--height", rn.height, "SVG height")->check(CLI::PositiveNumber);
    render->add_flag("--mark-L", rn.mark_l, "overlay the slow manifold and Ss2/Ss3 markers");
    render->add_option("--A", rn.p.a, "model parameter A (for --mark-L)")
        ->check(CLI::NonNegativeNumber);
    render->add_option("--B", rn.p.b, "model parameter B (for --mark-L)")
        ->check(CLI::NonNegativeNumber);
    render->add_option("--C", rn.p.c, "model parameter C (for --mark-L)")
        ->check(CLI::NonNegativeNumber);
    render->callback([&] {
        if (rn.mark_l && !(render->count("--A") && render->count("--B") && render->count("--C")))
            throw CLI::RequiredError("--mark-L requires --A, --B and --C");
        run_render(rn);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage hint
        return kExitUsage;
    } catch (const runtime_failure& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return kExitRuntime;
    }
    return kExitOk;
}
