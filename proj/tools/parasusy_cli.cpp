// parasusy: build a (para/ortho)supersymmetric realization from a config
// file and verify it.
//
//   parasusy validate  --config run.cfg
//   parasusy verify    --config run.cfg [--tol X] [--out DIR]
//   parasusy spectrum  --config run.cfg [--out DIR]
//   parasusy classify  --config run.cfg [--tol X] [--out DIR]
//   parasusy dump-ops  --config run.cfg [--out DIR]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad configuration or
// parameters.

#include "parasusy/config.hpp"
#include "parasusy/report_io.hpp"
#include "parasusy/verifier.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace parasusy;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_config = 2;

struct Options {
    std::string config;
    std::optional<double> tol;
    std::string out = ".";
};

std::ofstream open_output(const fs::path& path)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void write_json(const fs::path& path, const Json& j)
{
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

RunConfig load(const Options& opt)
{
    RunConfig rc = load_run_config_file(opt.config);
    if (opt.tol) {
        if (!(*opt.tol > 0)) throw ConfigError("--tol", "must be positive");
        rc.tol = *opt.tol;
    }
    return rc;
}

std::vector<SectorOps> all_sectors(const Realization& r)
{
    std::vector<SectorOps> out;
    for (int mu = 0; mu <= r.p(); ++mu) out.push_back(sector_operators(r, mu));
    return out;
}

int cmd_validate(const Options& opt)
{
    const RunConfig rc = load(opt);
    // Building also derives BD/OSSQM coefficients, which can still fail.
    const Realization r = build_realization(rc.variant);
    std::cout << "ok: " << to_string(rc.variant.variant) << " p=" << rc.variant.p << " D=" << rc.variant.dim << " F "
              << rc.variant.F.describe() << '\n';
    (void)r;
    return exit_pass;
}

int cmd_verify(const Options& opt)
{
    const RunConfig rc = load(opt);
    const Realization r = build_realization(rc.variant);
    const VerificationReport rep = verify_variant(r, rc.tol, rc.tol_exact, rc.mode == ArithmeticMode::Exact);
    const fs::path path = fs::path(opt.out) / "report.json";
    write_json(path, report_to_json(rep, rc));
    std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << path.string() << '\n';
    return rep.pass ? exit_pass : exit_fail;
}

int cmd_spectrum(const Options& opt)
{
    const RunConfig rc = load(opt);
    const Realization r = build_realization(rc.variant);
    const auto sectors = all_sectors(r);
    const fs::path dir(opt.out);
    {
        auto out = open_output(dir / "spectrum.csv");
        write_spectrum_csv(out, r, sectors);
    }
    {
        auto out = open_output(dir / "degeneracy.csv");
        write_degeneracy_csv(out, r, sectors);
    }
    bool ok = true;
    const std::int64_t last = r.dim() - r.p() - 2;
    for (const auto& s : sectors)
        for (std::int64_t n = 0; n <= last; ++n)
            if (closed_form_energy(r, s.mu, n) != s.energies[n]) {
                std::cerr << "closed form mismatch at mu=" << s.mu << " n=" << n << '\n';
                ok = false;
                break;
            }
    std::cout << (ok ? "PASS" : "FAIL") << ": " << (dir / "spectrum.csv").string() << ", "
              << (dir / "degeneracy.csv").string() << '\n';
    return ok ? exit_pass : exit_fail;
}

int cmd_classify(const Options& opt)
{
    const RunConfig rc = load(opt);
    const Realization r = build_realization(rc.variant);
    Json out = Json::array();
    bool ok = true;
    for (const auto& s : all_sectors(r)) {
        const BreakingVerdict v = classify_breaking(s, rc.tol);
        Json j = verdict_to_json(v);
        if (r.config.variant != Variant::RSK) {
            const bool consistent = (v.verdict == Breaking::Unbroken) == (v.ground_energy == 0);
            j["consistent"] = consistent;
            ok = ok && consistent;
        }
        out.push_back(j);
        std::cout << "mu=" << v.mu << ' ' << to_string(v.verdict) << " E0=" << to_fraction_string(v.ground_energy)
                  << " deg=" << v.ground_degeneracy << '\n';
    }
    const fs::path path = fs::path(opt.out) / "classification.json";
    write_json(path, Json{{"variant", to_string(r.config.variant)}, {"p", r.p()}, {"sectors", out}});
    return ok ? exit_pass : exit_fail;
}

int cmd_dump_ops(const Options& opt)
{
    const RunConfig rc = load(opt);
    const Realization r = build_realization(rc.variant);
    const fs::path dir = fs::path(opt.out) / "ops";
    auto dump = [&](const std::string& name, const auto& m) {
        auto out = open_output(dir / (name + ".csv"));
        write_matrix_csv(out, m);
    };
    dump("N", r.rep.number);
    dump("a", r.rep.annihilation);
    dump("adag", r.rep.creation);
    dump("T", r.rep.grading);
    for (int mu = 0; mu < r.rep.lambda; ++mu) dump("P" + std::to_string(mu), r.rep.projectors[mu]);
    const bool ortho = r.config.variant == Variant::OSSQM;
    for (std::size_t c = 0; c < r.Q.size(); ++c) {
        const std::string base = ortho ? relations::charge_name(static_cast<int>(c) + 1) : std::string("Q");
        dump(base, r.Q[c].matrix());
        dump(base + "dag", r.Qdag[c].matrix());
    }
    dump("H", r.H.matrix());
    dump("U", reduction_unitary(r.config.variant, r.p(), r.rep).matrix());
    for (const auto& s : all_sectors(r)) {
        const std::string prefix = "sector" + std::to_string(s.mu) + "_";
        for (std::size_t c = 0; c < s.charges.size(); ++c) {
            dump(prefix + s.charge_names[c], s.charges[c]);
            dump(prefix + s.charge_names[c] + "dag", s.charges_dag[c]);
        }
        dump(prefix + "H", s.hamiltonian);
    }
    std::cout << "wrote " << dir.string() << '\n';
    return exit_pass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parasupersymmetric and orthosupersymmetric QM verifier"};
    app.require_subcommand(1);
    Options opt;

    auto add = [&](const std::string& name, const std::string& help, bool with_tol) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "Run configuration file")->required();
        if (with_tol) sub->add_option("--tol", opt.tol, "Relation tolerance (overrides the config)");
        sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
        return sub;
    };
    CLI::App* validate = add("validate", "Check parameters only", false);
    CLI::App* verify = add("verify", "Run all checks and write report.json", true);
    CLI::App* spectrum = add("spectrum", "Write spectrum.csv and degeneracy.csv", false);
    CLI::App* classify = add("classify", "Write classification.json", true);
    CLI::App* dump = add("dump-ops", "Write operator matrices as CSV under ops/", false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (spectrum->parsed()) return cmd_spectrum(opt);
        if (classify->parsed()) return cmd_classify(opt);
        if (dump->parsed()) return cmd_dump_ops(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const NotUnitary& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return exit_fail;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return exit_config;
    } catch (const NegativeSquare& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return exit_config;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << '\n';
        return exit_config;
    } catch (const EvaluationError& e) {
        std::cerr << "expression error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return exit_config;
}
