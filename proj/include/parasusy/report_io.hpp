#ifndef PARASUSY_REPORT_IO_HPP
#define PARASUSY_REPORT_IO_HPP

// Serialization of verification artifacts. Field names are stable; rationals
// are written as "num/den" strings, floats as shortest round-trip decimals.

#include "parasusy/config.hpp"
#include "parasusy/verifier.hpp"

#include "json.hpp"

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

namespace parasusy {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string describe_expectation(Expectation e)
{
    switch (e) {
    case Expectation::Equal: return "equal";
    case Expectation::ExactlyEqual: return "exactly_equal";
    case Expectation::NonZero: return "nonzero";
    }
    return "?";
}

inline Json config_to_json(const RunConfig& rc)
{
    const auto& cfg = rc.variant;
    Json j;
    j["variant"] = to_string(cfg.variant);
    j["p"] = cfg.p;
    j["lambda"] = cfg.p + 1;
    if (cfg.F.is_clambda()) {
        Json alpha = Json::array();
        for (const auto& a : cfg.F.clambda_params()->alpha) alpha.push_back(to_fraction_string(a));
        j["alpha"] = alpha;
        Json beta = Json::array();
        for (const auto& b : cfg.F.beta()) beta.push_back(to_fraction_string(b));
        j["beta"] = beta;
    } else {
        j["F_expr"] = cfg.F.user_structure()->expr.to_string();
    }
    switch (cfg.variant) {
    case Variant::RSK: {
        Json f = Json::array();
        for (const auto& e : cfg.f) f.push_back(e.to_string());
        j["f"] = f;
        break;
    }
    case Variant::BD:
        if (cfg.g) j["g"] = cfg.g->to_string();
        j["bd_constant_f"] = cfg.bd_constant_f;
        break;
    case Variant::OSSQM:
        j["f_p"] = cfg.f_top->to_string();
        break;
    }
    if (!cfg.eps.empty()) {
        Json eps = Json::array();
        for (const auto& e : cfg.eps) eps.push_back(e.to_string());
        j["eps"] = eps;
    }
    j["D"] = cfg.dim;
    j["tol"] = rc.tol;
    j["tol_exact"] = rc.tol_exact;
    j["mode"] = rc.mode == ArithmeticMode::Exact ? "exact" : "float";
    return j;
}

inline Json residual_to_json(const ResidualRecord& r)
{
    return Json{{"name", r.name},
                {"w", r.weight},
                {"window", Json::array({r.window.first, r.window.last})},
                {"expect", describe_expectation(r.expectation)},
                {"residual", r.residual},
                {"abs_residual", r.abs_residual},
                {"pass", r.pass}};
}

inline Json groups_to_json(const std::vector<DegeneracyGroup>& groups)
{
    Json out = Json::array();
    for (const auto& g : groups)
        out.push_back(Json{{"energy", to_fraction_string(g.energy)},
                           {"multiplicity", g.multiplicity},
                           {"levels", g.levels},
                           {"possibly_incomplete", g.possibly_incomplete}});
    return out;
}

inline Json verdict_to_json(const BreakingVerdict& v)
{
    Json residuals;
    for (const auto& [name, value] : v.charge_residuals) residuals[name] = value;
    return Json{{"mu", v.mu},
                {"verdict", to_string(v.verdict)},
                {"ground_energy", to_fraction_string(v.ground_energy)},
                {"ground_degeneracy", v.ground_degeneracy},
                {"ground_levels", v.ground_levels},
                {"charge_residuals", residuals}};
}

inline Json report_to_json(const VerificationReport& rep, const RunConfig& rc)
{
    Json j;
    j["config"] = config_to_json(rc);
    j["residual_scale"] =
        "relation residual = max over safe-window basis vectors x of |(LHS-RHS)x| / max(1, sum over monomials "
        "|m x|); operator entries grow like D * max F * max f^2";

    Json rels = Json::array();
    for (const auto& r : rep.relations) rels.push_back(residual_to_json(r));
    j["relations"] = rels;
    j["hermiticity"] = Json{{"H_symmetric", rep.hamiltonian_hermitian}, {"Qdag_is_transpose", rep.charges_adjoint}};

    Json ops = Json::array();
    for (const auto& c : rep.reduction.operators)
        ops.push_back(Json{{"op", c.op}, {"w", c.weight}, {"off_block", c.off_block}, {"vs_sector", c.vs_sector}});
    j["reduction"] = Json{{"unitarity", rep.reduction.unitarity},
                          {"permutation", rep.reduction.permutation},
                          {"hamiltonian_exact", rep.reduction.hamiltonian_exact},
                          {"operators", ops},
                          {"pass", rep.reduction.pass}};

    Json sectors = Json::array(), spectra = Json::array(), classification = Json::array();
    for (const auto& s : rep.sectors) {
        Json srels = Json::array();
        bool ok = true;
        for (const auto& r : s.relations) {
            srels.push_back(residual_to_json(r));
            ok = ok && r.pass;
        }
        sectors.push_back(Json{{"mu", s.mu}, {"relations", srels}, {"pass", ok}});
        spectra.push_back(Json{{"mu", s.mu},
                               {"levels_checked", rep.config.dim - rep.config.p - 1},
                               {"closed_form_exact", s.closed_form_exact},
                               {"first_mismatch", s.first_mismatch},
                               {"hamiltonian_diagonal", s.hamiltonian_diagonal},
                               {"diagonal_residual", s.diagonal_residual},
                               {"degeneracy", groups_to_json(s.groups)}});
        Json v = verdict_to_json(s.verdict);
        v["consistent"] = s.verdict_consistent;
        classification.push_back(v);
    }
    j["sectors"] = sectors;
    j["spectra"] = spectra;
    j["classification"] = classification;
    j["pass"] = rep.pass;
    return j;
}

/// One row per (mu, n): variant,mu,n,k,nu,grade,energy_num,energy_den,group_id
inline void write_spectrum_csv(std::ostream& out, const Realization& r, const std::vector<SectorOps>& sectors)
{
    out << "variant,mu,n,k,nu,grade,energy_num,energy_den,group_id\n";
    const int p = r.p();
    for (const auto& s : sectors) {
        const auto groups = degeneracy_table(s);
        std::vector<int> group_of(s.energies.size(), -1);
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (int n : groups[g].levels) group_of[n] = static_cast<int>(g);
        for (int n = 0; n < s.dim; ++n) {
            out << to_string(r.config.variant) << ',' << s.mu << ',' << n << ',' << n / (p + 1) << ',' << n % (p + 1)
                << ',' << r.rep.grade(n) << ',' << numerator_of(s.energies[n]).str() << ','
                << denominator_of(s.energies[n]).str() << ',' << group_of[n] << '\n';
        }
    }
}

/// variant,mu,group_id,energy_num,energy_den,multiplicity,levels,possibly_incomplete
inline void write_degeneracy_csv(std::ostream& out, const Realization& r, const std::vector<SectorOps>& sectors)
{
    out << "variant,mu,group_id,energy_num,energy_den,multiplicity,levels,possibly_incomplete\n";
    for (const auto& s : sectors) {
        const auto groups = degeneracy_table(s);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            out << to_string(r.config.variant) << ',' << s.mu << ',' << g << ','
                << numerator_of(groups[g].energy).str() << ',' << denominator_of(groups[g].energy).str() << ','
                << groups[g].multiplicity << ',';
            for (std::size_t k = 0; k < groups[g].levels.size(); ++k) out << (k ? " " : "") << groups[g].levels[k];
            out << ',' << (groups[g].possibly_incomplete ? "true" : "false") << '\n';
        }
    }
}

/// Nonzero entries in row-major order: row,col,re,im
template <class Derived>
void write_matrix_csv(std::ostream& out, const Eigen::MatrixBase<Derived>& m)
{
    out << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const std::complex<double> z(m(r, c));
            if (z == std::complex<double>(0.0, 0.0)) continue;
            out << r << ',' << c << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
        }
}

} // namespace parasusy

#endif // PARASUSY_REPORT_IO_HPP
