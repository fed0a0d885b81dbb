#include "blowup/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blowup/certifier.hpp"
#include "blowup/serialize.hpp"
#include "blowup/simulator.hpp"

namespace blowup {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string prepare_output(const RunConfig& cfg) {
    fs::create_directories(cfg.output_dir);
    if (!fs::is_directory(cfg.output_dir)) throw std::runtime_error("output_dir is not a directory: " + cfg.output_dir);
    return cfg.output_dir;
}

std::string path_in(const RunConfig& cfg, const char* name) { return (fs::path(cfg.output_dir) / name).string(); }

std::string describe(const ReactionSpec& r) {
    if (r.kind == ReactionKind::Power) return "z^" + format_double(r.p);
    return r.name;
}

void require_valid_reaction(const ReactionSpec& spec) {
    const ReactionReport rep = validate_reaction(spec);
    if (rep.pass()) return;
    std::string msg = "reaction " + describe(spec) + " fails the structural hypotheses:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw std::invalid_argument(msg);
}

json run_header(const RunConfig& cfg) {
    return {{"command", to_string(cfg.command)},
            {"operator", to_json(cfg.op)},
            {"datum", cfg.datum.describe()},
            {"reaction", describe(cfg.reaction)},
            {"seed", cfg.seed}};
}

// Certificate at the configured ε, or the best one from a search. With no
// certified grid point, the point of largest relative margin is returned.
struct CertifyOutcome {
    KaplanCertificate cert;
    std::optional<SearchResult> search;
};

CertifyOutcome certify_or_search(const RunConfig& cfg, const KaplanBounds& bounds) {
    CertifyOutcome out;
    const double beta = cfg.beta_or_default();
    if (cfg.epsilon) {
        out.cert = certify(cfg.datum, cfg.reaction, KaplanParams{beta, *cfg.epsilon, cfg.op}, bounds);
        return out;
    }
    out.search = epsilon_search(cfg.datum, cfg.reaction, bounds, cfg.op, {cfg.refine, 1e-10});
    if (out.search->best) {
        out.cert = *out.search->best;
    } else {
        const SearchPoint* top = &out.search->curve.front();
        for (const SearchPoint& p : out.search->curve)
            if (p.relative_margin >= top->relative_margin) top = &p;
        out.cert = certify(cfg.datum, cfg.reaction, KaplanParams{beta, top->epsilon, cfg.op}, bounds);
    }
    return out;
}

}  // namespace

int cmd_certify(const RunConfig& cfg, std::ostream& log) {
    prepare_output(cfg);
    require_valid_reaction(cfg.reaction);
    const double beta = cfg.beta_or_default();
    log << "computing Kaplan bounds (beta = " << format_double(beta) << ")\n";
    const KaplanBounds bounds = compute_bounds(KaplanParams{beta, 1.0, cfg.op});
    const CertifyOutcome res = certify_or_search(cfg, bounds);

    json doc = run_header(cfg);
    doc["certificate"] = to_json(res.cert);
    if (res.search) doc["search"] = to_json(*res.search);
    write_json_file(path_in(cfg, "certificate.json"), doc);
    write_text_file(path_in(cfg, "summary.txt"), certificate_summary(res.cert, cfg.datum.describe(), describe(cfg.reaction)));
    log << (res.cert.certified ? "certified" : "not certified") << ", margin " << format_double(res.cert.margin) << "\n";
    return res.cert.certified ? kExitOk : kExitNotCertified;
}

int cmd_kaplan_verify(const RunConfig& cfg, std::ostream& log) {
    prepare_output(cfg);
    const double beta = cfg.beta_or_default();
    const KaplanBounds bounds = compute_bounds(KaplanParams{beta, 1.0, cfg.op});
    json rows = json::array();
    bool all_pass = true;
    for (double eps : {1.0, 0.1, 0.01}) {
        const KaplanParams kp{beta, eps, cfg.op};
        const double lambda = cfg.lambda ? *cfg.lambda : std::pow(eps, cfg.op.s) * bounds.lambda0;
        const std::vector<double> radii = verification_radii(eps);
        const SubsolutionReport rep = verify_subsolution(kp, lambda, radii, bounds);
        all_pass = all_pass && rep.pass;
        json row = to_json(rep);
        row["epsilon"] = eps;
        row["lambda"] = lambda;
        row["samples"] = radii.size();
        rows.push_back(row);
        log << "eps " << format_double(eps) << ": " << (rep.pass ? "pass" : "FAIL") << ", min relative margin "
            << format_double(rep.min_relative_margin) << "\n";
    }
    json doc = run_header(cfg);
    doc.erase("datum");
    doc.erase("reaction");
    doc["bounds"] = to_json(bounds);
    doc["eta_ratio"] = bounds.eta2 / bounds.eta1;
    doc["lambda_override"] = cfg.lambda ? json(*cfg.lambda) : json(nullptr);
    doc["checks"] = rows;
    doc["all_pass"] = all_pass;
    write_json_file(path_in(cfg, "kaplan_audit.json"), doc);
    return all_pass ? kExitOk : kExitNegative;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    prepare_output(cfg);
    SimConfig sc;
    sc.op = cfg.op;
    sc.reaction = cfg.reaction;
    sc.linear = cfg.sim.linear;
    sc.u0 = cfg.datum;
    sc.L = cfg.sim.L;
    sc.M = cfg.sim.M;
    sc.dt_init = cfg.sim.dt_init;
    sc.dt_max = cfg.sim.dt_max;
    sc.t_max = cfg.sim.t_max;
    sc.blowup_threshold = cfg.sim.blowup_threshold;
    const double beta = cfg.beta_or_default();

    std::optional<KaplanCertificate> cert;
    if (cfg.sim.certificate) {
        if (cfg.sim.linear) throw std::invalid_argument("sim.certificate needs a reaction (linear mode is set)");
        require_valid_reaction(cfg.reaction);
        const KaplanBounds bounds = compute_bounds(KaplanParams{beta, 1.0, cfg.op});
        cert = certify_or_search(cfg, bounds).cert;
        sc.kaplan = KaplanParams{beta, cert->epsilon, cfg.op};
        sc.lambda = cert->lambda;
    } else if (cfg.sim.track_phi) {
        sc.kaplan = KaplanParams{beta, cfg.epsilon ? *cfg.epsilon : 1.0, cfg.op};
    }
    sc.validate();

    const Trajectory tr = run(sc);
    std::ostringstream csv;
    write_trajectory_csv(csv, tr);
    write_text_file(path_in(cfg, "trajectory.csv"), csv.str());
    json meta = run_header(cfg);
    meta["run"] = trajectory_metadata(tr);
    write_json_file(path_in(cfg, "trajectory_meta.json"), meta);
    log << to_string(tr.termination) << " at t = " << format_double(tr.times.back()) << "\n";

    if (cert) {
        json cmp = {{"certificate", to_json(*cert)}, {"termination", to_string(tr.termination)}};
        if (tr.termination == SimTermination::BlowupDetected) {
            cmp["t_b"] = tr.blowup_time;
            if (cert->blowup_time_bound) cmp["t_b_over_T_star"] = tr.blowup_time / *cert->blowup_time_bound;
        } else {
            cmp["t_b"] = nullptr;
        }
        write_json_file(path_in(cfg, "comparison.json"), cmp);
    }
    return kExitOk;
}

int cmd_fujita_scan(const RunConfig& cfg, std::ostream& log) {
    prepare_output(cfg);
    const double beta = cfg.beta_or_default();
    FujitaTable table;
    int code = kExitOk;
    try {
        table = fujita_scan(cfg.op, cfg.datum, beta, cfg.p_grid);
    } catch (const ScanIncompleteError& e) {
        table = e.table();
        code = kExitNegative;
        log << e.what() << "\n";
    }
    std::ostringstream csv;
    write_scan_csv(csv, table);
    write_text_file(path_in(cfg, "fujita_scan.csv"), csv.str());
    log << "p_F = " << format_double(table.p_fujita) << ", " << table.rows.size() << " rows\n";
    return code;
}

int run_command(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::Certify: return cmd_certify(cfg, log);
            case Command::KaplanVerify: return cmd_kaplan_verify(cfg, log);
            case Command::Simulate: return cmd_simulate(cfg, log);
            case Command::FujitaScan: return cmd_fujita_scan(cfg, log);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitError;
}

}  // namespace blowup
