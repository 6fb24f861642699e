#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "solitonlab/conical.hpp"
#include "solitonlab/invariants.hpp"
#include "solitonlab/oracle.hpp"

namespace soliton {

// deterministic shortest round-trip formatting
std::string format_double(double v);

void write_profile_csv(const std::filesystem::path& path, const RadialPotential& u);
void write_trace_csv(const std::filesystem::path& path, const ContinuityTrace& trace);
void write_conical_csv(const std::filesystem::path& path, const ConicalSolution& sol);

nlohmann::json energy_report_json(const EnergyReport& r);
nlohmann::json soliton_json(const FootballSoliton& s);
nlohmann::json phi_json(const Grid& g, const Vec& phi);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace soliton
