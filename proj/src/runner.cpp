#include "skdv/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skdv/constants_store.hpp"
#include "skdv/csv.hpp"
#include "skdv/estimates.hpp"
#include "skdv/initial_data.hpp"
#include "skdv/parallel.hpp"
#include "skdv/snapshot.hpp"

namespace fs = std::filesystem;

namespace skdv {
namespace {

std::vector<double> linspace(double T, int n) {
    std::vector<double> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<size_t>(i)] = T * i / (n - 1);
    return t;
}

std::string beta_tag(double b) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", b);
    return buf;
}

IndexOptions fit_options(const ExperimentConfig& c) {
    IndexOptions o;
    o.band_hi = c.fit_band_hi;
    o.n_bands = c.fit_bands;
    return o;
}

double index_or_inf(const Field& f, const IndexOptions& o) {
    const RegularityEstimate r = sobolev_index(f, o);
    return r.smooth ? kInf : r.sobolev_index;
}

double kdv_rate(const ExperimentConfig& c, bool coupled) {
    if (c.data_alpha_kdv > 0.0) return c.data_alpha_kdv;
    return coupled ? 1.0 / (4.0 * c.data_alpha) : c.data_alpha;
}

Field make_u0(const ExperimentConfig& c, const GridPtr& g) {
    SchrodingerDatumParams p;
    p.alpha = c.data_alpha;
    p.x0 = c.x0;
    return schrodinger_datum(p, g);
}

KdvDatumParams kdv_params(const ExperimentConfig& c, bool coupled) {
    KdvDatumParams p;
    p.alpha = kdv_rate(c, coupled);
    p.c = c.c;
    p.j_max = c.j_max;
    return p;
}

std::string snapshot_name(const char* what, size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%04zu.skdv", what, i);
    return buf;
}

/// Per-snapshot measurements shared by the linear and nonlinear series.
struct Row {
    std::vector<double> cells;
};

std::vector<double> holder_cells(const Field& u, const ExperimentConfig& c) {
    std::vector<double> out;
    for (double b : c.betas) out.push_back(holder_quotient(u, b, c.holder_window).quotient_max);
    return out;
}

void write_manifest(const ExperimentConfig& cfg, const std::vector<std::string>& artifacts,
                    double wall, const nlohmann::json& extra) {
    nlohmann::json m;
    m["library_version"] = kLibraryVersion;
    m["experiment"] = to_string(cfg.experiment);
    nlohmann::json conf = nlohmann::json::object();
    std::istringstream in(to_text(cfg));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) conf[line.substr(0, eq)] = line.substr(eq + 3);
    }
    m["config"] = conf;
    m["artifacts"] = artifacts;
    m["wall_time_seconds"] = wall;
    m["worker_count"] = worker_count();
    if (!extra.is_null()) m["results"] = extra;
    std::ofstream out(fs::path(cfg.output_dir) / "manifest.json", std::ios::trunc);
    out << m.dump(2) << '\n';
}

nlohmann::json run_linear_schrodinger(const ExperimentConfig& c, const GridPtr& g,
                                      std::vector<std::string>& artifacts) {
    const Field u0 = make_u0(c, g);
    const auto times = linspace(c.T, c.snapshots);
    std::vector<std::string> cols{"time", "mass_u", "max_abs_u", "max_du"};
    for (double b : c.betas) cols.push_back("holder_quotient_beta_" + beta_tag(b));
    cols.push_back("sobolev_index_u");
    const IndexOptions fo = fit_options(c);
    std::vector<Row> rows(times.size());
    std::vector<Field> fields(times.size());
    parallel_for(times.size(), [&](size_t i) {
        const Field u = evolve(u0, times[i], GroupKind::schrodinger);
        Row r;
        r.cells = {times[i], mass(u), u.max_abs(), derivative(u, 1).max_abs()};
        for (double q : holder_cells(u, c)) r.cells.push_back(q);
        r.cells.push_back(index_or_inf(u, fo));
        rows[i] = std::move(r);
        if (c.write_snapshots) fields[i] = u;
    });
    CsvWriter csv((fs::path(c.output_dir) / "series.csv").string(), cols);
    for (const auto& r : rows) csv.row(r.cells);
    artifacts.push_back("series.csv");
    if (c.write_snapshots)
        for (size_t i = 0; i < times.size(); ++i) {
            write_snapshot((fs::path(c.output_dir) / snapshot_name("u", i)).string(), fields[i], times[i]);
            artifacts.push_back(snapshot_name("u", i));
        }
    size_t best = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].cells[4] > rows[best].cells[4]) best = i;
    return {{"focus_time_predicted", 1.0 / (4.0 * c.data_alpha)},
            {"holder_max_time", times[best]}};
}

nlohmann::json run_linear_kdv(const ExperimentConfig& c, const GridPtr& g,
                              std::vector<std::string>& artifacts) {
    const Field v0 = kdv_datum(kdv_params(c, false), g);
    const auto times = linspace(c.T, c.snapshots);
    const IndexOptions fo = fit_options(c);
    std::vector<Row> rows(times.size());
    std::vector<Field> fields(times.size());
    parallel_for(times.size(), [&](size_t i) {
        Field v = evolve(v0, times[i], GroupKind::airy);
        v.make_real();
        rows[i].cells = {times[i], integral(v), v.max_abs(), derivative(v, 1).max_abs(),
                         index_or_inf(v, fo)};
        if (c.write_snapshots) fields[i] = v;
    });
    CsvWriter csv((fs::path(c.output_dir) / "series.csv").string(),
                  {"time", "mean_v", "max_abs_v", "max_dv", "sobolev_index_v"});
    for (const auto& r : rows) csv.row(r.cells);
    artifacts.push_back("series.csv");
    if (c.write_snapshots)
        for (size_t i = 0; i < times.size(); ++i) {
            write_snapshot((fs::path(c.output_dir) / snapshot_name("v", i)).string(), fields[i], times[i]);
            artifacts.push_back(snapshot_name("v", i));
        }
    size_t best = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].cells[3] > rows[best].cells[3]) best = i;
    return {{"max_dv_time", times[best]}};
}

nlohmann::json run_nonlinear(const ExperimentConfig& c, const GridPtr& g,
                             std::vector<std::string>& artifacts, std::ostream& log) {
    const Field u0 = make_u0(c, g);
    const Field v0 = kdv_datum(kdv_params(c, true), g);
    const auto times = linspace(c.T, c.snapshots);
    SolverOptions so;
    so.c_cfl = c.c_cfl;
    so.fixed_dt = c.fixed_dt;
    const SKdVParams params{c.coupling_alpha, c.coupling_gamma};
    const Trajectory traj = evolve_trajectory(u0, v0, c.T, params, times, so);
    log << "steps taken: " << traj.steps_taken << '\n';

    std::vector<std::string> cols{"time", "mass_u", "mean_v", "max_abs_u", "max_abs_v", "max_du",
                                  "max_dv"};
    for (double b : c.betas) cols.push_back("holder_quotient_beta_" + beta_tag(b));
    for (const char* k : {"sobolev_index_u", "sobolev_index_v", "gap_I", "gap_II"}) cols.push_back(k);
    const IndexOptions fo = fit_options(c);
    std::vector<Row> rows(times.size());
    parallel_for(times.size(), [&](size_t i) {
        const SKdVState& s = traj.states[i];
        Row r;
        r.cells = {s.time,
                   traj.conserved_log[i].mass_u,
                   traj.conserved_log[i].mean_v,
                   s.u.max_abs(),
                   s.v.max_abs(),
                   derivative(s.u, 1).max_abs(),
                   derivative(s.v, 1).max_abs()};
        for (double q : holder_cells(s.u, c)) r.cells.push_back(q);
        r.cells.push_back(index_or_inf(s.u, fo));
        r.cells.push_back(index_or_inf(s.v, fo));
        double gi = std::nan(""), gii = std::nan("");
        try {
            const auto [a, b] = smoothing_gap(traj, s.time, fo);
            gi = a.gap;
            gii = b.gap;
        } catch (const NotApplicable&) {
        }
        r.cells.push_back(gi);
        r.cells.push_back(gii);
        rows[i] = std::move(r);
    });
    CsvWriter csv((fs::path(c.output_dir) / "series.csv").string(), cols);
    for (const auto& r : rows) csv.row(r.cells);
    artifacts.push_back("series.csv");
    if (c.write_snapshots)
        for (size_t i = 0; i < times.size(); ++i) {
            write_snapshot((fs::path(c.output_dir) / snapshot_name("u", i)).string(), traj.states[i].u,
                           times[i]);
            write_snapshot((fs::path(c.output_dir) / snapshot_name("v", i)).string(), traj.states[i].v,
                           times[i]);
            artifacts.push_back(snapshot_name("u", i));
            artifacts.push_back(snapshot_name("v", i));
        }
    const auto& cl = traj.conserved_log;
    return {{"steps_taken", traj.steps_taken},
            {"mass_drift", std::abs(cl.back().mass_u - cl.front().mass_u) / cl.front().mass_u},
            {"mean_drift", std::abs(cl.back().mean_v - cl.front().mean_v)}};
}

nlohmann::json run_picard(const ExperimentConfig& c, const GridPtr& g,
                          std::vector<std::string>& artifacts, std::ostream& log) {
    const Field u0 = c.picard_scale * make_u0(c, g);
    Field v0 = c.picard_scale * kdv_datum(kdv_params(c, true), g);
    v0.make_real();
    const SKdVParams params{c.coupling_alpha, c.coupling_gamma};
    PicardOptions po;
    po.degree = c.picard_degree;
    const PicardResult pr = picard_solve(u0, v0, c.picard_T, params, c.picard_iter, po);
    const auto times = pr.trajectory.times();
    SolverOptions so;
    so.c_cfl = c.c_cfl;
    so.fixed_dt = c.fixed_dt;
    const Trajectory tr = evolve_trajectory(u0, v0, c.picard_T, params, times, so);
    CsvWriter csv((fs::path(c.output_dir) / "series.csv").string(),
                  {"time", "l2_distance_u", "l2_distance_v", "mass_u_picard", "mass_u_stepper"});
    double worst = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        const double du = norm(pr.trajectory.states[i].u - tr.states[i].u, NormSpec::sobolev(0.0));
        const double dv = norm(pr.trajectory.states[i].v - tr.states[i].v, NormSpec::sobolev(0.0));
        worst = std::max({worst, du, dv});
        csv.row({times[i], du, dv, pr.trajectory.conserved_log[i].mass_u, tr.conserved_log[i].mass_u});
    }
    artifacts.push_back("series.csv");
    log << "picard iterations: " << pr.differences.size() << (pr.converged ? " (converged)" : "")
        << "\ncontraction factors:";
    for (double f : pr.contraction_factors) log << ' ' << csv_number(f);
    log << "\nmax L2 distance: " << csv_number(worst) << '\n';
    return {{"max_l2_distance", worst},
            {"iterations", pr.differences.size()},
            {"converged", pr.converged},
            {"contraction_factors", pr.contraction_factors}};
}

nlohmann::json run_diagnose(const ExperimentConfig& c, std::vector<std::string>& artifacts) {
    const std::string text = diagnose_snapshot(c.snapshot_path, c.betas, c.holder_window, fit_options(c));
    std::ofstream out(fs::path(c.output_dir) / "diagnose.csv", std::ios::trunc);
    out << text;
    artifacts.push_back("diagnose.csv");
    return nullptr;
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg.output_dir);
    log << "# resolved configuration\n" << to_text(cfg);
    std::vector<std::string> artifacts;
    nlohmann::json results;
    if (cfg.experiment == Experiment::estimates) {
        const int failures = run_estimates(cfg, log, cfg.record);
        artifacts = {"estimates_trials.csv", "estimates_summary.csv"};
        results = {{"entries_over_budget", failures}};
        write_manifest(cfg, artifacts,
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                       results);
        if (failures > 0)
            throw Error(std::to_string(failures) + " estimate(s) exceed the recorded constant budget");
        return;
    }
    const GridPtr g = cfg.experiment == Experiment::diagnose_field
                          ? nullptr
                          : make_grid(cfg.n_points, cfg.length);
    switch (cfg.experiment) {
        case Experiment::linear_schrodinger: results = run_linear_schrodinger(cfg, g, artifacts); break;
        case Experiment::linear_kdv: results = run_linear_kdv(cfg, g, artifacts); break;
        case Experiment::nonlinear_skdv: results = run_nonlinear(cfg, g, artifacts, log); break;
        case Experiment::picard_crosscheck: results = run_picard(cfg, g, artifacts, log); break;
        case Experiment::diagnose_field: results = run_diagnose(cfg, artifacts); break;
        case Experiment::estimates: break;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(cfg, artifacts, wall, results);
    log << "wrote " << artifacts.size() << " artifact(s) to " << cfg.output_dir << '\n';
}

int run_estimates(const ExperimentConfig& cfg, std::ostream& log, bool record) {
    validate(cfg);
    fs::create_directories(cfg.output_dir);
    const bool all = std::find(cfg.estimate_ids.begin(), cfg.estimate_ids.end(), "all") !=
                     cfg.estimate_ids.end();
    auto wanted = [&](EstimateId id) {
        return all || std::find(cfg.estimate_ids.begin(), cfg.estimate_ids.end(), to_string(id)) !=
                          cfg.estimate_ids.end();
    };
    for (const auto& name : cfg.estimate_ids)
        if (name != "all") estimate_from_string(name);

    std::vector<CampaignEntry> entries;
    for (const auto& e : default_campaign(cfg.ensemble_size, cfg.seed))
        if (wanted(e.id)) entries.push_back(e);
    if (wanted(EstimateId::KATO_KDV)) entries.push_back(kato_kdv_oracle_entry(cfg.ensemble_size));
    if (wanted(EstimateId::KATO_SCH)) entries.push_back(kato_sch_oracle_entry(cfg.ensemble_size));

    ConstantStore store;
    if (fs::exists(cfg.constants_file)) store = ConstantStore::load(cfg.constants_file);
    else if (!record) log << "constant store " << cfg.constants_file << " not found\n";

    CsvWriter trials((fs::path(cfg.output_dir) / "estimates_trials.csv").string(),
                     {"estimate", "ensemble", "member", "lhs", "rhs_core", "ratio", "skipped"});
    CsvWriter summary((fs::path(cfg.output_dir) / "estimates_summary.csv").string(),
                      {"estimate", "ensemble", "worst_ratio", "recorded", "status"});
    int failures = 0;
    for (const auto& e : entries) {
        const TrialSummary s = run_trials(e.id, e.ensemble, e.params);
        const std::string label = estimate_label(e.id, e.params);
        const std::string version = e.ensemble.version();
        for (size_t i = 0; i < s.all.size(); ++i) {
            const auto& r = s.all[i];
            trials.row_text({label, version, std::to_string(i), csv_number(r.lhs),
                             csv_number(r.rhs_core), csv_number(r.ratio), r.skipped ? "1" : "0"});
        }
        std::string status;
        const auto recorded = store.lookup(label, version);
        if (record) {
            store.set(label, version, s.worst.ratio);
            status = "recorded";
        } else if (!recorded) {
            status = "unrecorded";
        } else {
            status = s.worst.ratio <= *recorded * kConstantDrift ? "pass" : "fail";
        }
        if (status == "fail") ++failures;
        summary.row_text({label, version, csv_number(s.worst.ratio),
                          recorded ? csv_number(*recorded) : "nan", status});
        log << label << ' ' << version << " worst " << csv_number(s.worst.ratio) << ' ' << status
            << '\n';
    }
    if (record) {
        store.save(cfg.constants_file);
        log << "recorded " << entries.size() << " constant(s) in " << cfg.constants_file << '\n';
    }
    return failures;
}

std::string diagnose_snapshot(const std::string& path, const std::vector<double>& betas,
                              double window, const IndexOptions& fit) {
    const Snapshot s = read_snapshot(path);
    const RegularityEstimate r = sobolev_index(s.field, fit);
    const double w = std::max(window, 4.0 * s.field.grid->dx());
    std::vector<std::string> cols{"time", "sobolev_index", "smooth", "band_lo", "band_hi",
                                  "fit_residual"};
    std::vector<double> vals{s.time, r.smooth ? kInf : r.sobolev_index, r.smooth ? 1.0 : 0.0,
                             r.band_lo, r.band_hi, r.fit_residual};
    for (double b : betas) {
        const HolderReport h = holder_modulus(s.field, b, w);
        const std::string t = beta_tag(b);
        cols.insert(cols.end(), {"holder_quotient_beta_" + t, "holder_location_beta_" + t,
                                 "growth_ratio_beta_" + t});
        vals.insert(vals.end(), {h.quotient_max, h.location, h.growth_ratio});
    }
    std::string out;
    for (size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    for (size_t i = 0; i < vals.size(); ++i) out += (i ? "," : "") + csv_number(vals[i]);
    out += '\n';
    return out;
}

std::string grid_check(const ExperimentConfig& cfg) {
    validate(cfg);
    const GridPtr g = make_grid(cfg.n_points, cfg.length);
    std::ostringstream o;
    o << "grid n_points " << g->n_points() << " length " << csv_number(g->length()) << " dx "
      << csv_number(g->dx()) << " kmax " << csv_number(g->kmax()) << '\n';
    SchrodingerDatumParams sp;
    sp.alpha = cfg.data_alpha;
    sp.x0 = cfg.x0;
    sp.contamination_max = kInf;
    const Field u0 = schrodinger_datum(sp, g);
    o << "schrodinger datum: focus time " << csv_number(schrodinger_focus_time(sp))
      << " contamination " << csv_number(boundary_contamination(u0, 0.05)) << " (limit "
      << csv_number(SchrodingerDatumParams{}.contamination_max) << ")\n";
    const bool coupled = cfg.experiment != Experiment::linear_kdv;
    const KdvDatumParams kp = kdv_params(cfg, coupled);
    const int required = kdv_required_j_max(kp);
    const int used = kp.j_max == 0 ? required : kp.j_max;
    o << "kdv datum: alpha " << csv_number(kp.alpha) << " c " << csv_number(kp.c)
      << " required j_max " << required << " used " << used << " tail "
      << csv_number(kdv_tail(kp, used)) << " (bound " << csv_number(kKdvTailBound) << ")\n";
    try {
        const auto cont = kdv_term_contamination(kp, g);
        double worst = 0.0;
        size_t at = 0;
        for (size_t j = 0; j < cont.size(); ++j)
            if (cont[j] > worst) {
                worst = cont[j];
                at = j + 1;
            }
        o << "kdv datum: worst term contamination " << csv_number(worst) << " at j = " << at
          << " (limit " << csv_number(kp.contamination_max) << ")\n";
    } catch (const TruncationError& e) {
        o << "kdv datum: " << e.what() << '\n';
    }
    const Field vphi = evolve(phi(g), 1.0, GroupKind::airy);
    o << "V(1) phi contamination " << csv_number(boundary_contamination(vphi, 0.05)) << '\n';
    return o.str();
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 1;
    }
}

}  // namespace skdv
