#pragma once

#include <ostream>
#include <string>

#include "blowup/certifier.hpp"
#include "blowup/kaplan.hpp"
#include "blowup/simulator.hpp"
#include "json.hpp"

namespace blowup {

/// "%.17g"; non-finite values print as nan, inf, -inf.
std::string format_double(double x);

nlohmann::json to_json(const OperatorParams& op);
nlohmann::json to_json(const KaplanBounds& b);
nlohmann::json to_json(const KaplanCertificate& c);
nlohmann::json to_json(const SubsolutionReport& r);
nlohmann::json to_json(const SearchResult& r);
/// Termination metadata of a run (the CSV sidecar).
nlohmann::json trajectory_metadata(const Trajectory& tr);

/// Header t,sup_norm,phi,jensen_residual,comparison_residual.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
/// Header p,certified,epsilon,margin,time_bound.
void write_scan_csv(std::ostream& os, const FujitaTable& table);

std::string certificate_summary(const KaplanCertificate& c, const std::string& datum, const std::string& reaction);

void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace blowup
