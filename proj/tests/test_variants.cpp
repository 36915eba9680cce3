#include "parasusy/variants.hpp"
#include "parasusy/verifier.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace parasusy;

namespace {

StructureSpec deformed3()
{
    return StructureSpec::clambda(validate_clambda(3, {Rational(1), Rational(-1, 2), Rational(-1, 2)}));
}

VariantConfig rsk(int p, StructureSpec F, std::vector<std::string> f, int dim = 30)
{
    VariantConfig cfg;
    cfg.variant = Variant::RSK;
    cfg.p = p;
    cfg.F = std::move(F);
    cfg.dim = dim;
    for (const auto& text : f) cfg.f.push_back(parse_expression(text));
    return cfg;
}

VariantConfig bd(int p, StructureSpec F, const std::string& g, int dim = 30)
{
    VariantConfig cfg;
    cfg.variant = Variant::BD;
    cfg.p = p;
    cfg.F = std::move(F);
    cfg.dim = dim;
    cfg.g = parse_expression(g);
    return cfg;
}

VariantConfig ossqm(int p, StructureSpec F, const std::string& fp, int dim = 30)
{
    VariantConfig cfg;
    cfg.variant = Variant::OSSQM;
    cfg.p = p;
    cfg.F = std::move(F);
    cfg.dim = dim;
    cfg.f_top = parse_expression(fp);
    return cfg;
}

std::vector<Rational> first_energies(const Realization& r, int mu, int count)
{
    const auto all = sector_energies(r, mu);
    return {all.begin(), all.begin() + count};
}

} // namespace

TEST_CASE("RSK Hamiltonian components", "[variants][rsk]")
{
    const auto osc = rsk_build(rsk(2, StructureSpec::standard(3), {"1", "1"}));
    for (int i = 1; i <= 3; ++i)
        for (int n = 0; n < 20; ++n) CHECK(osc.Hi_diag[i - 1][n] == n + i - Rational(3, 2));

    const auto deformed = rsk(2, deformed3(), {"1", "1"});
    CHECK(rsk_hamiltonian_value(deformed, 1, 0) == Rational(-1, 4));
    CHECK(hamiltonian_value(deformed, 1, 0) == Rational(-1, 4));

    const auto r = rsk_build(rsk(2, deformed3(), {"n + 1", "2"}));
    const BlockOperator Q3 = r.Q[0] * r.Q[0] * r.Q[0];
    CHECK(Q3.matrix().isZero(0.0));
    CHECK_FALSE((r.Q[0] * r.Q[0]).matrix().isZero(0.0));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j + 1) CHECK(r.Q[0].block(i, j).isZero(0.0));
}

TEST_CASE("BD derived coefficients", "[variants][bd]")
{
    const auto cfg = bd(2, StructureSpec::standard(3), "1");
    for (int n = 1; n < 20; ++n) {
        CHECK(bd_f_square(cfg, 1, n) == n - 1);
        CHECK(bd_f_square(cfg, 2, n) == n + 1);
        CHECK(bd_condition_holds(cfg, 2, n));
    }
    const auto cfg3 = bd(3, StructureSpec::standard(4), "1");
    for (int n = 1; n < 20; ++n) {
        CHECK(bd_f_square(cfg3, 2, n) == (n + 1) * (n - 1));
        CHECK(bd_f_square(cfg3, 2, n) * n == bd_f_square(cfg3, 1, n + 1) * (n + 1));
    }

    const auto derived = bd_derive_f(bd(2, deformed3(), "n + 1"));
    REQUIRE(derived.size() == 2);
    for (const auto& fn : derived) CHECK(fn.first_arg == 1);

    const auto cfg_deformed = bd(2, deformed3(), "n + 1");
    for (int i = 1; i <= 2; ++i)
        for (int n = 1; n < 20; ++n) CHECK(bd_condition_holds(cfg_deformed, i, n));
}

TEST_CASE("BD Hamiltonian components", "[variants][bd]")
{
    const auto standard = bd(2, StructureSpec::standard(3), "1");
    for (int n = 0; n < 20; ++n) CHECK(bd_hamiltonian_value(standard, 1, n) == n * (n - 1));
    CHECK(bd_hamiltonian_value(standard, 1, 0) == 0);
    CHECK(bd_hamiltonian_value(standard, 1, 1) == 0);

    const auto deformed = bd(2, deformed3(), "1");
    CHECK(bd_hamiltonian_value(deformed, 1, 0) == 0);
    CHECK(bd_hamiltonian_value(deformed, 3, 1) == Rational(15, 2));
}

TEST_CASE("BD constant coefficients are refused", "[variants][bd]")
{
    CHECK_FALSE(check_constant_f_compatibility(2, StructureSpec::standard(3), 10).compatible);
    CHECK_FALSE(check_constant_f_compatibility(2, deformed3(), 10).compatible);
    // A constant F passes the check itself but has no Fock vacuum.
    const auto flat = StructureSpec::user(parse_expression("1 + 0*n"), 3);
    CHECK(check_constant_f_compatibility(2, flat, 10).compatible);
    CHECK_THROWS_AS(check_fock_conditions(flat, 10), ParameterError);

    VariantConfig cfg = bd(2, StructureSpec::standard(3), "1");
    cfg.bd_constant_f = true;
    CHECK_THROWS_AS(bd_build(cfg), IncompatibleConstantF);
}

TEST_CASE("OSSQM derived coefficients and Hamiltonian", "[variants][ossqm]")
{
    const auto two = ossqm(2, deformed3(), "1");
    const auto f2 = ossqm_derive_f(two);
    REQUIRE(f2.size() == 2);
    for (int n = 1; n < 20; ++n) CHECK(f2[0].square_at(n) == two.F.value(n + 1));
    for (int n = 2; n < 20; ++n) CHECK(f2[1].square_at(n) == 1);

    const auto three = ossqm(3, StructureSpec::standard(4), "1");
    const auto f3 = ossqm_derive_f(three);
    for (int n = 1; n < 20; ++n) CHECK(f3[0].square_at(n) == (n + 1) * (n + 2));

    CHECK(ossqm_hamiltonian_value(two, 1, 0) == 5);
    const auto standard = ossqm(2, StructureSpec::standard(3), "1");
    for (int n = 0; n < 20; ++n) CHECK(ossqm_hamiltonian_value(standard, 3, n) == (n - 1) * n);

    const auto r = ossqm_build(two);
    for (std::size_t i = 0; i < r.Q.size(); ++i)
        for (std::size_t j = 0; j < r.Q.size(); ++j) CHECK((r.Q[i] * r.Q[j]).matrix().isZero(0.0));
}

TEST_CASE("reduction unitaries", "[variants][reduction]")
{
    const auto rep = build_fock(StructureSpec::standard(3), 6, 3);
    const auto U2 = reduction_unitary(Variant::OSSQM, 2, rep);
    CHECK(U2.block(1, 1) == rep.projectors[1]);
    CHECK(U2.block(1, 2) == rep.projectors[2]);
    CHECK(U2.block(1, 3) == rep.projectors[0]);

    for (int p = 2; p <= 4; ++p) {
        const auto r = build_fock(StructureSpec::standard(p + 1), 9, p + 1);
        for (Variant v : {Variant::RSK, Variant::OSSQM}) {
            const auto U = reduction_unitary(v, p, r);
            const RealMatrix prod = U.matrix() * U.matrix().transpose();
            CHECK(prod == RealMatrix::Identity(prod.rows(), prod.cols()));
        }
    }

    const auto two = build_fock(StructureSpec::standard(2), 4, 2);
    const auto U1 = reduction_unitary(Variant::RSK, 1, two);
    CHECK(U1.block(1, 1) == two.projectors[0]);
    CHECK(U1.block(1, 2) == two.projectors[1]);
    CHECK(U1.block(2, 1) == two.projectors[1]);
    CHECK(U1.block(2, 2) == two.projectors[0]);
}

TEST_CASE("sector energies", "[variants][spectrum]")
{
    const auto osc = rsk_build(rsk(2, StructureSpec::standard(3), {"1", "1"}));
    CHECK(first_energies(osc, 0, 4) == std::vector<Rational>{Rational(-1, 2), Rational(5, 2), Rational(5, 2), Rational(5, 2)});
    CHECK(closed_form_energy(osc, 0, 0) == Rational(-1, 2));

    const auto b = bd_build(bd(2, StructureSpec::standard(3), "1"));
    CHECK(first_energies(b, 0, 5) == std::vector<Rational>{0, 6, 6, 6, 30});
    CHECK(ground_energy(b, 0) == 0);

    const auto o = ossqm_build(ossqm(2, deformed3(), "1"));
    CHECK(first_energies(o, 2, 3) == std::vector<Rational>{5, 5, 5});
    CHECK(ground_energy(o, 2) == 5);
    CHECK(ground_energy(o, 0) == 0);
    CHECK(ground_energy(o, 1) == 0);

    const auto d = rsk_build(rsk(2, deformed3(), {"1", "1"}));
    CHECK(ground_energy(d, 0) == Rational(-1, 4));
    CHECK(ground_energy(d, 1) == 1);
    CHECK(ground_energy(d, 2) == Rational(9, 4));

    const auto bdd = bd_build(bd(2, deformed3(), "1"));
    CHECK(ground_energy(bdd, 2) == 5);

    for (const auto* r : {&osc, &b, &o, &d, &bdd})
        for (int mu = 0; mu <= r->p(); ++mu) {
            const auto exact = sector_energies(*r, mu);
            for (int n = 0; n <= r->dim() - r->p() - 2; ++n) CHECK(closed_form_energy(*r, mu, n) == exact[n]);
        }
}

TEST_CASE("breaking classification", "[variants][classify]")
{
    const auto r = rsk_build(rsk(2, deformed3(), {"n + 1", "2"}));
    CHECK(classify_breaking(sector_operators(r, 0), 1e-9).verdict == Breaking::Unbroken);
    const auto v1 = classify_breaking(sector_operators(r, 1), 1e-9);
    CHECK(v1.verdict == Breaking::Broken);
    CHECK(v1.ground_degeneracy == 2);

    const auto o = ossqm_build(ossqm(2, StructureSpec::standard(3), "1"));
    const auto top = classify_breaking(sector_operators(o, 2), 1e-9);
    CHECK(top.verdict == Breaking::Broken);
    CHECK(top.ground_energy == 2);
    CHECK(top.ground_degeneracy == 3);
    for (int mu = 0; mu < 2; ++mu) {
        const auto v = classify_breaking(sector_operators(o, mu), 1e-9);
        CHECK(v.verdict == Breaking::Unbroken);
        CHECK(v.ground_energy == 0);
        CHECK(v.ground_degeneracy == mu + 1);
    }
    CHECK_THROWS_AS(classify_breaking(sector_operators(o, 0), 0.0), std::invalid_argument);
}

TEST_CASE("degeneracy tables", "[variants][classify]")
{
    const auto osc = rsk_build(rsk(2, StructureSpec::standard(3), {"1", "1"}, 20));
    const auto groups = degeneracy_table(sector_operators(osc, 0));
    REQUIRE(groups.size() >= 3);
    CHECK(groups[0].energy == Rational(-1, 2));
    CHECK(groups[0].multiplicity == 1);
    CHECK(groups[1].energy == Rational(5, 2));
    CHECK(groups[1].multiplicity == 3);
    CHECK(groups[2].energy == Rational(11, 2));
    CHECK(groups[2].multiplicity == 3);
    CHECK_FALSE(groups[1].possibly_incomplete);
    CHECK(groups.back().possibly_incomplete);

    const auto b = bd_build(bd(2, StructureSpec::standard(3), "1"));
    const auto g1 = degeneracy_table(sector_operators(b, 1));
    CHECK(g1[0].energy == 0);
    CHECK(g1[0].multiplicity == 2);

    const auto flat = rsk_build(rsk(2, StructureSpec::standard(3), {"0", "0"}, 12));
    const auto one = degeneracy_table(sector_operators(flat, 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].multiplicity == 12);
}

TEST_CASE("full verification passes for the worked configurations", "[variants][verifier]")
{
    const std::vector<VariantConfig> configs = {
        rsk(2, StructureSpec::standard(3), {"1", "1"}, 24),
        rsk(2, deformed3(), {"n + 1", "2"}, 30),
        bd(2, deformed3(), "1", 24),
        ossqm(2, StructureSpec::standard(3), "1", 24),
        ossqm(2, deformed3(), "1", 24),
    };
    for (const auto& cfg : configs) {
        INFO(to_string(cfg.variant) << " F " << cfg.F.describe());
        const auto rep = verify_variant(build_realization(cfg));
        CHECK(rep.pass);
        for (const auto& rel : rep.relations) {
            INFO(rel.name);
            CHECK(rel.pass);
        }
        CHECK(rep.reduction.hamiltonian_exact);
        for (const auto& s : rep.sectors) CHECK(s.closed_form_exact);
    }
}

TEST_CASE("configuration checks", "[variants]")
{
    auto cfg = rsk(2, StructureSpec::standard(3), {"1"});
    CHECK_THROWS_AS(validate_config(cfg), ParameterError);
    cfg = rsk(2, StructureSpec::standard(4), {"1", "1"});
    CHECK_THROWS_AS(validate_config(cfg), ParameterError);
    cfg = rsk(2, StructureSpec::standard(3), {"1", "1"}, 3);
    CHECK_THROWS_AS(validate_config(cfg), ParameterError);

    auto b = bd(2, StructureSpec::standard(3), "1");
    b.eps = {parse_expression("2")};
    CHECK_THROWS_AS(validate_config(b), ParameterError);
    b.eps = {parse_expression("-1")};
    CHECK_NOTHROW(validate_config(b));
    CHECK_NOTHROW(verify_variant(bd_build(b)));

    CHECK(parse_variant("OSSQM") == Variant::OSSQM);
    CHECK_THROWS_AS(parse_variant("SUSY"), ParameterError);
}

TEST_CASE("the widest OSSQM relation needs D > 2p", "[variants][verifier]")
{
    CHECK_THROWS_AS(verify_variant(ossqm_build(ossqm(3, StructureSpec::standard(4), "1", 6))), WindowEmpty);
    const auto rep = verify_variant(ossqm_build(ossqm(3, StructureSpec::standard(4), "1", 7)));
    int widest = 0;
    for (const auto& rel : rep.relations)
        if (rel.weight == 6) {
            CHECK(rel.window.first == 0);
            CHECK(rel.window.last == 0);
            ++widest;
        }
    CHECK(widest > 0);
}
