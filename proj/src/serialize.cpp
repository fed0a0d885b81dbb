#include "blowup/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const OperatorParams& op) { return {{"a", op.a}, {"b", op.b}, {"s", op.s}, {"N", op.N}}; }

json to_json(const KaplanBounds& b) {
    return {{"beta", number(b.beta)},       {"epsilon", number(b.eps)},   {"c_beta", number(b.c_beta)},
            {"A", number(b.A)},             {"B", number(b.B)},           {"R0", number(b.R0)},
            {"eta1", number(b.eta1)},       {"eta2", number(b.eta2)},     {"lambda1", number(b.lambda1)},
            {"lambda2", number(b.lambda2)}, {"lambda0", number(b.lambda0)}, {"theta", number(b.theta)}};
}

json to_json(const KaplanCertificate& c) {
    return {{"beta", number(c.beta)},
            {"epsilon", number(c.epsilon)},
            {"lambda", number(c.lambda)},
            {"integral_I", number(c.integral_I)},
            {"threshold", number(c.threshold)},
            {"margin", number(c.margin)},
            {"verdict", c.certified ? "certified" : "not_certified"},
            {"blowup_time_bound", optional_number(c.blowup_time_bound)},
            {"operator", to_json(c.op)},
            {"bounds_audit", to_json(c.bounds_audit)},
            {"assumption", kSolutionAssumption},
            {"lambda_scaling", kExponentNote}};
}

json to_json(const SubsolutionReport& r) {
    return {{"min_margin", number(r.min_margin)},
            {"min_relative_margin", number(r.min_relative_margin)},
            {"worst_radius", number(r.worst_radius)},
            {"pass", r.pass}};
}

json to_json(const SearchResult& r) {
    json curve = json::array();
    for (const SearchPoint& p : r.curve)
        curve.push_back({{"epsilon", number(p.epsilon)},
                         {"margin", number(p.margin)},
                         {"relative_margin", number(p.relative_margin)},
                         {"certified", p.certified}});
    json j = {{"refined", r.refined}, {"margin_curve", curve}, {"bounds", to_json(r.bounds)}};
    j["best"] = r.best ? to_json(*r.best) : json(nullptr);
    j["scaling_exponent"] = optional_number(r.scaling_exponent);
    return j;
}

json trajectory_metadata(const Trajectory& tr) {
    json j = {{"termination", to_string(tr.termination)},
              {"final_time", tr.times.empty() ? 0.0 : tr.times.back()},
              {"snapshots", tr.times.size()},
              {"accepted_steps", tr.accepted_steps},
              {"rejected_steps", tr.rejected_steps},
              {"clamp_events", tr.clamp_events},
              {"tail_indicator", number(tr.tail_indicator)},
              {"max_imag_residue", number(tr.max_imag_residue)}};
    j["blowup_time"] =
        tr.termination == SimTermination::BlowupDetected ? number(tr.blowup_time) : json(nullptr);
    j["early_crossing_time"] = optional_number(tr.early_crossing_time);
    j["threshold_sensitivity"] = number(tr.threshold_sensitivity());
    if (!tr.phi.empty()) {
        j["lambda"] = number(tr.lambda);
        j["spatial_defect"] = number(tr.spatial_defect);
        j["comparison_pass_fraction"] = number(tr.comparison_pass_fraction());
        j["min_jensen_residual"] = number(tr.min_jensen_margin());
    }
    return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,sup_norm,phi,jensen_residual,comparison_residual\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double phi = tr.phi.empty() ? std::nan("") : tr.phi[i];
        os << format_double(tr.times[i]) << ',' << format_double(tr.sup_norm[i]) << ',' << format_double(phi) << ','
           << format_double(tr.jensen_residual[i]) << ',' << format_double(tr.comparison_residual[i]) << '\n';
    }
}

void write_scan_csv(std::ostream& os, const FujitaTable& table) {
    os << "p,certified,epsilon,margin,time_bound\n";
    for (const FujitaRow& r : table.rows) {
        os << format_double(r.p) << ',' << (r.certified ? "true" : (r.trivial_datum ? "trivial_datum" : "false"))
           << ',' << format_double(r.epsilon) << ',' << format_double(r.margin) << ','
           << (r.time_bound ? format_double(*r.time_bound) : std::string()) << '\n';
    }
}

std::string certificate_summary(const KaplanCertificate& c, const std::string& datum, const std::string& reaction) {
    std::ostringstream os;
    os << "datum      " << datum << "\n";
    os << "reaction   " << reaction << "\n";
    os << "operator   a=" << format_double(c.op.a) << " b=" << format_double(c.op.b) << " s=" << format_double(c.op.s)
       << " N=" << c.op.N << "\n";
    os << "beta       " << format_double(c.beta) << "\n";
    os << "epsilon    " << format_double(c.epsilon) << "\n";
    os << "lambda     " << format_double(c.lambda) << "\n";
    os << "I          " << format_double(c.integral_I) << "\n";
    os << "s_f(lambda) " << format_double(c.threshold) << "\n";
    os << "margin     " << format_double(c.margin) << "\n";
    os << "verdict    " << (c.certified ? "certified: no global classical solution" : "not certified") << "\n";
    if (c.blowup_time_bound) os << "T* bound   " << format_double(*c.blowup_time_bound) << "\n";
    os << "assumption " << kSolutionAssumption << "\n";
    return os.str();
}

void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace blowup
