#include "solitonlab/io.hpp"

#include <charconv>
#include <fstream>

namespace soliton {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    return out;
}

}  // namespace

void write_profile_csv(const std::filesystem::path& path, const RadialPotential& u) {
    auto out = open_out(path);
    out << "s,u,du,d2u\n";
    for (std::size_t i = 0; i < u.grid->n(); ++i)
        out << format_double(u.grid->s[i]) << ',' << format_double(u.u[i]) << ','
            << format_double(u.du[i]) << ',' << format_double(u.d2u[i]) << '\n';
}

void write_trace_csv(const std::filesystem::path& path, const ContinuityTrace& trace) {
    auto out = open_out(path);
    out << "t,residual_sup,I_tilde,J_tilde,mu_tilde,F_tilde,F_hat,lambda1,osc_phi,x_phi_sup\n";
    for (const auto& st : trace.steps) {
        out << format_double(st.t) << ',' << format_double(st.residual_sup) << ','
            << format_double(st.energies.I_tilde) << ',' << format_double(st.energies.J_tilde)
            << ',' << format_double(st.energies.mu_tilde) << ','
            << format_double(st.energies.F_tilde) << ',' << format_double(st.energies.F_hat) << ','
            << format_double(st.lambda1) << ',' << format_double(st.osc_phi) << ','
            << format_double(st.x_phi_sup) << '\n';
    }
}

void write_conical_csv(const std::filesystem::path& path, const ConicalSolution& sol) {
    auto out = open_out(path);
    out << "epsilon,residual_sup,diameter,mu_log,F_log,cone_slope_est\n";
    for (const auto& st : sol.trace) {
        out << format_double(st.epsilon) << ',' << format_double(st.residual_sup) << ','
            << format_double(st.diameter) << ',' << format_double(st.mu_log) << ','
            << format_double(st.F_log) << ',' << format_double(st.cone_slope_est) << '\n';
    }
}

nlohmann::json energy_report_json(const EnergyReport& r) {
    nlohmann::json j;
    j["I"] = r.I;
    j["J"] = r.J;
    j["I_tilde"] = r.I_tilde;
    j["J_tilde"] = r.J_tilde;
    j["mu_tilde"] = r.mu_tilde;
    j["F_tilde"] = r.F_tilde;
    j["F_hat"] = r.F_hat;
    if (r.mu_log) j["mu_log"] = *r.mu_log;
    if (r.F_log) j["F_log"] = *r.F_log;
    return j;
}

nlohmann::json soliton_json(const FootballSoliton& s) {
    nlohmann::json j;
    j["c"] = s.c;
    j["alpha0"] = s.alpha0;
    j["alpha_inf"] = s.alpha_inf;
    j["beta"] = s.beta;
    j["A"] = s.A;
    j["B"] = s.B;
    return j;
}

nlohmann::json phi_json(const Grid& g, const Vec& phi) {
    nlohmann::json j;
    j["s"] = g.s;
    j["phi"] = phi;
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace soliton
