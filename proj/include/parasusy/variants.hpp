#ifndef PARASUSY_VARIANTS_HPP
#define PARASUSY_VARIANTS_HPP

#include "parasusy/exprlang.hpp"
#include "parasusy/fockrep.hpp"
#include "parasusy/rational.hpp"
#include "parasusy/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parasusy {

enum class Variant { RSK, BD, OSSQM };

inline std::string to_string(Variant v)
{
    switch (v) {
    case Variant::RSK: return "RSK";
    case Variant::BD: return "BD";
    case Variant::OSSQM: return "OSSQM";
    }
    return "?";
}

inline Variant parse_variant(const std::string& name)
{
    if (name == "RSK") return Variant::RSK;
    if (name == "BD") return Variant::BD;
    if (name == "OSSQM") return Variant::OSSQM;
    throw ParameterError("unknown variant '" + name + "' (expected RSK, BD or OSSQM)");
}

class NegativeSquare : public std::runtime_error {
public:
    NegativeSquare(std::int64_t n, int i, const Rational& value)
        : std::runtime_error("NegativeSquare: f_" + std::to_string(i) + "^2(" + std::to_string(n)
                             + ") = " + to_display_string(value) + " < 0")
        , n_(n)
        , i_(i)
    {
    }
    std::int64_t n() const noexcept { return n_; }
    int index() const noexcept { return i_; }

private:
    std::int64_t n_;
    int i_;
};

class IncompatibleConstantF : public ParameterError {
public:
    using ParameterError::ParameterError;
};

struct VariantConfig {
    Variant variant = Variant::RSK;
    int p = 2;
    StructureSpec F = StructureSpec::standard(3);
    int dim = 40;
    std::vector<Expression> f;        // RSK: f_1..f_p
    std::optional<Expression> g;      // BD
    std::optional<Expression> f_top;  // OSSQM: f_p
    std::vector<Expression> eps;      // BD: eps_2..eps_p, OSSQM: eps_1..eps_{p-1}; empty = all +1
    bool bd_constant_f = false;       // BD with f_i = 1 (normally refused)
};

/// Exact values of one coefficient function on a contiguous argument range,
/// carried as a square plus a sign.
struct CoefficientFunction {
    int index = 0;
    std::int64_t first_arg = 0;
    std::vector<Rational> square;
    std::vector<int> sign;

    bool covers(std::int64_t n) const
    {
        return n >= first_arg && n < first_arg + static_cast<std::int64_t>(square.size());
    }
    const Rational& square_at(std::int64_t n) const { return square.at(n - first_arg); }
    double value_at(std::int64_t n) const
    {
        return sign.at(n - first_arg) * std::sqrt(to_double(square_at(n)));
    }
    /// Diagonal of f(N + shift) over 0..dim-1, zero where the table has no entry.
    RealVector shifted_diagonal(int shift, int dim) const
    {
        RealVector d = RealVector::Zero(dim);
        for (int m = 0; m < dim; ++m)
            if (covers(m + shift)) d(m) = value_at(m + shift);
        return d;
    }
};

struct Realization {
    VariantConfig config;
    FockRep rep;
    std::vector<BlockOperator> Q;     // one entry for RSK/BD, p entries for OSSQM
    std::vector<BlockOperator> Qdag;
    BlockOperator H;
    std::vector<std::vector<Rational>> Hi_diag;  // H_1..H_{p+1} on n = 0..D-1
    std::vector<CoefficientFunction> coeffs;     // f_1..f_p
    std::vector<double> charge_scale;            // sqrt(2) or sqrt(i(p-i+1))

    int p() const { return config.p; }
    int dim() const { return config.dim; }
};

struct SectorOps {
    int mu = 0;
    int p = 0;
    int dim = 0;
    std::vector<std::string> charge_names;
    std::vector<RealMatrix> charges;
    std::vector<RealMatrix> charges_dag;
    RealMatrix hamiltonian;
    std::vector<Rational> energies;  // n = 0..D-1
};

enum class Breaking { Unbroken, Broken };

inline std::string to_string(Breaking b) { return b == Breaking::Unbroken ? "Unbroken" : "Broken"; }

struct BreakingVerdict {
    int mu = 0;
    Breaking verdict = Breaking::Unbroken;
    Rational ground_energy;
    int ground_degeneracy = 0;
    std::vector<int> ground_levels;
    std::vector<std::pair<std::string, double>> charge_residuals;
};

struct DegeneracyGroup {
    Rational energy;
    int multiplicity = 0;
    std::vector<int> levels;
    bool possibly_incomplete = false;
};

struct CompatibilityVerdict {
    bool compatible = true;
    std::int64_t n = 0;
    int i = 0;
    Rational lhs;
    Rational rhs;
};

namespace detail {

inline Rational eval_square(const Expression& e, std::int64_t n)
{
    const Rational v = e.evaluate(n);
    return v * v;
}

inline int sign_or_plus(const Rational& v) { return v.sign() < 0 ? -1 : 1; }

/// f^2(m) F(m); f is not consulted when F(m) = 0.
inline Rational weighted_square(const VariantConfig& cfg, const Expression& f, std::int64_t m)
{
    const Rational Fm = cfg.F.value(m);
    if (Fm == 0) return Rational(0);
    return eval_square(f, m) * Fm;
}

inline Rational product_F(const StructureSpec& F, std::int64_t first, std::int64_t last)
{
    Rational prod = 1;
    for (std::int64_t m = first; m <= last && prod != 0; ++m) prod *= F.value(m);
    return prod;
}

inline int epsilon_at(const VariantConfig& cfg, int i, std::int64_t n)
{
    // BD stores eps_2..eps_p, OSSQM stores eps_1..eps_{p-1}.
    const int offset = cfg.variant == Variant::BD ? 2 : 1;
    const int slot = i - offset;
    if (slot < 0 || slot >= static_cast<int>(cfg.eps.size())) return 1;
    const Rational v = cfg.eps[slot].evaluate(n);
    if (v == 1) return 1;
    if (v == -1) return -1;
    throw ParameterError("epsilon_" + std::to_string(i) + "(" + std::to_string(n) + ") = " + to_display_string(v)
                         + ", must be +1 or -1");
}

inline RealMatrix diagonal_of(const std::vector<Rational>& values)
{
    RealVector d(static_cast<Eigen::Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) d(static_cast<Eigen::Index>(k)) = to_double(values[k]);
    return d.asDiagonal();
}

inline RealMatrix matrix_power(const RealMatrix& m, int k)
{
    RealMatrix result = RealMatrix::Identity(m.rows(), m.cols());
    for (int s = 0; s < k; ++s) result = result * m;
    return result;
}

/// H_i index acting on grade-nu states of sector mu.
inline int hamiltonian_index(Variant v, int p, int mu, int nu)
{
    if (v == Variant::OSSQM) return static_cast<int>(mod_floor(nu - mu - 1, p + 1)) + 1;
    return static_cast<int>(mod_floor(mu - nu, p + 1)) + 1;
}

} // namespace detail

/// Eagerly checks parameters shared by every variant.
inline void validate_config(const VariantConfig& cfg)
{
    if (cfg.p < 2) throw ParameterError("p must be >= 2, got " + std::to_string(cfg.p));
    if (cfg.F.lambda() != cfg.p + 1)
        throw ParameterError("lambda must equal p+1 = " + std::to_string(cfg.p + 1) + ", got "
                             + std::to_string(cfg.F.lambda()));
    if (cfg.dim < cfg.p + 2) throw ParameterError("D must be at least p+2 = " + std::to_string(cfg.p + 2));
    switch (cfg.variant) {
    case Variant::RSK:
        if (static_cast<int>(cfg.f.size()) != cfg.p)
            throw ParameterError("RSK needs p = " + std::to_string(cfg.p) + " coefficient functions f, got "
                                 + std::to_string(cfg.f.size()));
        break;
    case Variant::BD:
        if (!cfg.g && !cfg.bd_constant_f) throw ParameterError("BD needs the coefficient function g");
        if (!cfg.eps.empty() && static_cast<int>(cfg.eps.size()) != cfg.p - 1)
            throw ParameterError("BD takes p-1 sign functions eps_2..eps_p");
        for (int i = 2; i <= cfg.p; ++i)
            for (int n = 1; n <= cfg.dim; ++n) (void)detail::epsilon_at(cfg, i, n);
        break;
    case Variant::OSSQM:
        if (!cfg.f_top) throw ParameterError("OSSQM needs the coefficient function f_p");
        if (!cfg.eps.empty() && static_cast<int>(cfg.eps.size()) != cfg.p - 1)
            throw ParameterError("OSSQM takes p-1 sign functions eps_1..eps_{p-1}");
        for (int i = 1; i < cfg.p; ++i)
            for (int n = i; n <= cfg.dim; ++n) (void)detail::epsilon_at(cfg, i, n);
        break;
    }
    check_fock_conditions(cfg.F, cfg.dim);
}

// ---------------------------------------------------------------------------
// Exact Hamiltonian components H_i(n)

inline Rational rsk_hamiltonian_value(const VariantConfig& cfg, int i, std::int64_t n)
{
    Rational sum = 0;
    for (int j = 1; j <= cfg.p; ++j) sum += detail::weighted_square(cfg, cfg.f[j - 1], n + i - j);
    return sum / cfg.p;
}

inline Rational bd_hamiltonian_value(const VariantConfig& cfg, int i, std::int64_t n)
{
    if (cfg.bd_constant_f) return cfg.F.value(n + i - 1);
    const Rational prod = detail::product_F(cfg.F, n + i - cfg.p, n + i - 1);
    if (prod == 0) return prod;
    return detail::eval_square(*cfg.g, n + i - 1) * prod;
}

inline Rational ossqm_hamiltonian_value(const VariantConfig& cfg, int i, std::int64_t n)
{
    const Rational prod = detail::product_F(cfg.F, n + 2 - i, n + cfg.p + 1 - i);
    if (prod == 0) return prod;
    return detail::eval_square(*cfg.f_top, n + cfg.p + 1 - i) * prod;
}

inline Rational hamiltonian_value(const VariantConfig& cfg, int i, std::int64_t n)
{
    switch (cfg.variant) {
    case Variant::RSK: return rsk_hamiltonian_value(cfg, i, n);
    case Variant::BD: return bd_hamiltonian_value(cfg, i, n);
    case Variant::OSSQM: return ossqm_hamiltonian_value(cfg, i, n);
    }
    throw std::logic_error("unreachable variant");
}

// ---------------------------------------------------------------------------
// Coefficient functions

/// f_i^2(n) = g^2(n+i-1) prod_{j != i} F(n+i-j) for the BD construction.
inline Rational bd_f_square(const VariantConfig& cfg, int i, std::int64_t n)
{
    if (cfg.bd_constant_f) return Rational(1);
    Rational prod = 1;
    for (int j = 1; j <= cfg.p && prod != 0; ++j)
        if (j != i) prod *= cfg.F.value(n + i - j);
    if (prod == 0) return prod;
    return detail::eval_square(*cfg.g, n + i - 1) * prod;
}

inline int bd_f_sign(const VariantConfig& cfg, int i, std::int64_t n)
{
    if (cfg.bd_constant_f) return 1;
    const int eps = i == 1 ? 1 : detail::epsilon_at(cfg, i, n);
    return eps * detail::sign_or_plus(cfg.g->evaluate(n + i - 1));
}

/// Square-level form of f_i(n) sqrt F(n) = eps_i(n) f_1(n+i-1) sqrt F(n+i-1),
/// plus the sign bookkeeping when both sides are nonzero.
inline bool bd_condition_holds(const VariantConfig& cfg, int i, std::int64_t n)
{
    const Rational lhs = bd_f_square(cfg, i, n) * cfg.F.value(n);
    const Rational rhs = bd_f_square(cfg, 1, n + i - 1) * cfg.F.value(n + i - 1);
    if (lhs != rhs) return false;
    if (lhs == 0) return true;
    const int eps = i == 1 ? 1 : detail::epsilon_at(cfg, i, n);
    return bd_f_sign(cfg, i, n) == eps * bd_f_sign(cfg, 1, n + i - 1);
}

inline CompatibilityVerdict check_constant_f_compatibility(int p, const StructureSpec& F, std::int64_t window)
{
    for (std::int64_t n = 1; n <= window; ++n) {
        for (int i = 2; i <= p; ++i) {
            Rational lhs = F.value(n);
            Rational rhs = F.value(n + i - 1);
            if (lhs != rhs) return CompatibilityVerdict{false, n, i, std::move(lhs), std::move(rhs)};
        }
    }
    return CompatibilityVerdict{};
}

inline std::vector<CoefficientFunction> bd_derive_f(const VariantConfig& cfg)
{
    if (cfg.variant != Variant::BD) throw ParameterError("bd_derive_f needs a BD configuration");
    std::vector<CoefficientFunction> out;
    for (int i = 1; i <= cfg.p; ++i) {
        CoefficientFunction fn;
        fn.index = i;
        fn.first_arg = 1;
        for (int n = 1; n <= cfg.dim; ++n) {
            Rational sq = bd_f_square(cfg, i, n);
            if (sq < 0) throw NegativeSquare(n, i, sq);
            if (!bd_condition_holds(cfg, i, n))
                throw std::logic_error("derived f_" + std::to_string(i) + " violates the BD condition at n = "
                                       + std::to_string(n));
            fn.sign.push_back(bd_f_sign(cfg, i, n));
            fn.square.push_back(std::move(sq));
        }
        out.push_back(std::move(fn));
    }
    return out;
}

/// f_i^2(n) = f_p^2(n+p-i) prod_{j=1}^{p-i} F(n+j), tabulated on n = i..D.
inline std::vector<CoefficientFunction> ossqm_derive_f(const VariantConfig& cfg)
{
    if (cfg.variant != Variant::OSSQM) throw ParameterError("ossqm_derive_f needs an OSSQM configuration");
    std::vector<CoefficientFunction> out;
    for (int i = 1; i <= cfg.p; ++i) {
        CoefficientFunction fn;
        fn.index = i;
        fn.first_arg = i;
        for (int n = i; n <= cfg.dim; ++n) {
            const Rational top = cfg.f_top->evaluate(n + cfg.p - i);
            fn.square.push_back(top * top * detail::product_F(cfg.F, n + 1, n + cfg.p - i));
            const int eps = i == cfg.p ? 1 : detail::epsilon_at(cfg, i, n);
            fn.sign.push_back(eps * detail::sign_or_plus(top));
        }
        out.push_back(std::move(fn));
    }
    return out;
}

inline std::vector<CoefficientFunction> rsk_coefficients(const VariantConfig& cfg)
{
    std::vector<CoefficientFunction> out;
    for (int i = 1; i <= cfg.p; ++i) {
        CoefficientFunction fn;
        fn.index = i;
        fn.first_arg = 1;
        for (int n = 1; n <= cfg.dim; ++n) {
            const Rational v = cfg.f[i - 1].evaluate(n);
            fn.square.push_back(v * v);
            fn.sign.push_back(detail::sign_or_plus(v));
        }
        out.push_back(std::move(fn));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block realizations

namespace detail {

inline void fill_hamiltonian(Realization& r)
{
    const int p = r.p();
    const int dim = r.dim();
    r.Hi_diag.assign(p + 1, {});
    BlockEntries entries;
    for (int i = 1; i <= p + 1; ++i) {
        auto& values = r.Hi_diag[i - 1];
        values.reserve(dim);
        for (int n = 0; n < dim; ++n) values.push_back(hamiltonian_value(r.config, i, n));
        entries[{i, i}] = diagonal_of(values);
    }
    r.H = block_compose(entries, p, dim);
}

/// Shared shape of the RSK and BD parasupercharges: blocks (i+1, i).
inline void fill_subdiagonal_charges(Realization& r)
{
    const int p = r.p();
    const int dim = r.dim();
    BlockEntries lower, upper;
    for (int i = 1; i <= p; ++i) {
        const auto& fn = r.coeffs[i - 1];
        const double c = r.charge_scale[i - 1];
        lower[{i + 1, i}] = (c * fn.shifted_diagonal(1, dim)).asDiagonal() * r.rep.annihilation;
        upper[{i, i + 1}] = (c * fn.shifted_diagonal(0, dim)).asDiagonal() * r.rep.creation;
    }
    r.Q = {block_compose(lower, p, dim)};
    r.Qdag = {block_compose(upper, p, dim)};
}

} // namespace detail

inline Realization rsk_build(const VariantConfig& cfg)
{
    if (cfg.variant != Variant::RSK) throw ParameterError("rsk_build needs an RSK configuration");
    validate_config(cfg);
    Realization r;
    r.config = cfg;
    r.rep = build_fock(cfg.F, cfg.dim, cfg.p + 1);
    r.coeffs = rsk_coefficients(cfg);
    r.charge_scale.assign(cfg.p, std::sqrt(2.0));
    detail::fill_subdiagonal_charges(r);
    detail::fill_hamiltonian(r);
    return r;
}

inline Realization bd_build(const VariantConfig& cfg)
{
    if (cfg.variant != Variant::BD) throw ParameterError("bd_build needs a BD configuration");
    validate_config(cfg);
    if (cfg.bd_constant_f) {
        const auto verdict = check_constant_f_compatibility(cfg.p, cfg.F, cfg.dim);
        if (!verdict.compatible)
            throw IncompatibleConstantF("f_i = 1 requires F(n) = F(n+i-1); violated at n = " + std::to_string(verdict.n)
                                        + ", i = " + std::to_string(verdict.i) + ": "
                                        + to_display_string(verdict.lhs) + " != " + to_display_string(verdict.rhs));
    }
    Realization r;
    r.config = cfg;
    r.rep = build_fock(cfg.F, cfg.dim, cfg.p + 1);
    r.coeffs = bd_derive_f(cfg);
    for (int i = 1; i <= cfg.p; ++i) r.charge_scale.push_back(std::sqrt(static_cast<double>(i * (cfg.p - i + 1))));
    detail::fill_subdiagonal_charges(r);
    detail::fill_hamiltonian(r);
    return r;
}

inline Realization ossqm_build(const VariantConfig& cfg)
{
    if (cfg.variant != Variant::OSSQM) throw ParameterError("ossqm_build needs an OSSQM configuration");
    validate_config(cfg);
    Realization r;
    r.config = cfg;
    r.rep = build_fock(cfg.F, cfg.dim, cfg.p + 1);
    r.coeffs = ossqm_derive_f(cfg);
    r.charge_scale.assign(cfg.p, std::sqrt(2.0));
    const int p = cfg.p;
    const int dim = cfg.dim;
    for (int i = 1; i <= p; ++i) {
        const auto& fn = r.coeffs[i - 1];
        const double c = r.charge_scale[i - 1];
        const RealMatrix lower_power = detail::matrix_power(r.rep.annihilation, i);
        const RealMatrix raise_power = detail::matrix_power(r.rep.creation, i);
        r.Q.push_back(block_compose({{{1, i + 1}, (c * fn.shifted_diagonal(i, dim)).asDiagonal() * lower_power}}, p, dim));
        r.Qdag.push_back(
            block_compose({{{i + 1, 1}, (c * fn.shifted_diagonal(0, dim)).asDiagonal() * raise_power}}, p, dim));
    }
    detail::fill_hamiltonian(r);
    return r;
}

inline Realization build_realization(const VariantConfig& cfg)
{
    switch (cfg.variant) {
    case Variant::RSK: return rsk_build(cfg);
    case Variant::BD: return bd_build(cfg);
    case Variant::OSSQM: return ossqm_build(cfg);
    }
    throw std::logic_error("unreachable variant");
}

// ---------------------------------------------------------------------------
// Reduction to bosonized sectors

/// U_1 = sum P_{i-j} e_{i,j} for RSK/BD, U_2 = sum P_{i+j-1} e_{i,j} for OSSQM.
inline BlockOperator reduction_unitary(Variant variant, int p, const FockRep& rep)
{
    if (rep.lambda != p + 1)
        throw DimensionError("reduction needs lambda = p+1 = " + std::to_string(p + 1) + ", got "
                             + std::to_string(rep.lambda));
    BlockEntries entries;
    for (int i = 1; i <= p + 1; ++i)
        for (int j = 1; j <= p + 1; ++j)
            entries[{i, j}] = variant == Variant::OSSQM ? rep.projector(i + j - 1) : rep.projector(i - j);
    return block_compose(entries, p, rep.dim);
}

/// Exact energy of sector mu on |n>, read from the H_i tables.
inline std::vector<Rational> sector_energies(const Realization& r, int mu)
{
    std::vector<Rational> energies;
    energies.reserve(r.dim());
    for (int n = 0; n < r.dim(); ++n) {
        const int i = detail::hamiltonian_index(r.config.variant, r.p(), mu, r.rep.grade(n));
        energies.push_back(r.Hi_diag[i - 1][n]);
    }
    return energies;
}

/// Bosonized operators of sector mu, assembled directly from N, a, a^dagger, P_nu.
inline SectorOps sector_operators(const Realization& r, int mu)
{
    const int p = r.p();
    const int dim = r.dim();
    if (mu < 0 || mu > p) throw DimensionError("sector index must lie in 0.." + std::to_string(p));
    const auto& rep = r.rep;

    SectorOps s;
    s.mu = mu;
    s.p = p;
    s.dim = dim;
    s.hamiltonian = RealMatrix::Zero(dim, dim);

    if (r.config.variant == Variant::OSSQM) {
        for (int i = 1; i <= p; ++i) {
            const auto& fn = r.coeffs[i - 1];
            const double c = r.charge_scale[i - 1];
            s.charge_names.push_back("Q" + std::to_string(i));
            s.charges.push_back((c * fn.shifted_diagonal(i, dim)).asDiagonal()
                                * detail::matrix_power(rep.annihilation, i) * rep.projector(mu + i + 1));
            s.charges_dag.push_back((c * fn.shifted_diagonal(0, dim)).asDiagonal()
                                    * detail::matrix_power(rep.creation, i) * rep.projector(mu + 1));
        }
        for (int i = 1; i <= p + 1; ++i)
            s.hamiltonian += detail::diagonal_of(r.Hi_diag[i - 1]) * rep.projector(mu + i);
    } else {
        RealMatrix q = RealMatrix::Zero(dim, dim);
        RealMatrix qdag = RealMatrix::Zero(dim, dim);
        for (int i = 1; i <= p; ++i) {
            const auto& fn = r.coeffs[i - 1];
            const double c = r.charge_scale[i - 1];
            q += (c * fn.shifted_diagonal(1, dim)).asDiagonal() * rep.annihilation * rep.projector(mu + p + 2 - i);
            qdag += (c * fn.shifted_diagonal(0, dim)).asDiagonal() * rep.creation * rep.projector(mu + p + 1 - i);
        }
        s.charge_names.push_back("Q");
        s.charges.push_back(std::move(q));
        s.charges_dag.push_back(std::move(qdag));
        for (int i = 1; i <= p + 1; ++i)
            s.hamiltonian += detail::diagonal_of(r.Hi_diag[i - 1]) * rep.projector(mu + p + 2 - i);
    }
    s.energies = sector_energies(r, mu);
    return s;
}

// ---------------------------------------------------------------------------
// Spectra

/// Two-branch closed form with n = k(p+1) + nu: the k-branch when nu <= mu,
/// the (k+1)-branch otherwise. Evaluated from the coefficient expressions.
inline Rational closed_form_energy(const Realization& r, int mu, std::int64_t n)
{
    const auto& cfg = r.config;
    const int p = cfg.p;
    if (n < 0) throw DimensionError("level index must be nonnegative");
    const std::int64_t k = n / (p + 1);
    const std::int64_t nu = n % (p + 1);
    const std::int64_t m = (nu <= mu ? k : k + 1) * (p + 1) + mu;

    switch (cfg.variant) {
    case Variant::RSK: {
        Rational sum = 0;
        for (int i = 1; i <= p; ++i) sum += detail::weighted_square(cfg, cfg.f[i - 1], m - i + 1);
        return sum / p;
    }
    case Variant::BD: {
        if (cfg.bd_constant_f) return cfg.F.value(m);
        const Rational prod = detail::product_F(cfg.F, m - p + 1, m);
        return prod == 0 ? prod : detail::eval_square(*cfg.g, m) * prod;
    }
    case Variant::OSSQM: {
        const Rational prod = detail::product_F(cfg.F, m - p + 1, m);
        return prod == 0 ? prod : detail::eval_square(*cfg.f_top, m) * prod;
    }
    }
    throw std::logic_error("unreachable variant");
}

inline Rational ground_energy(const Realization& r, int mu) { return closed_form_energy(r, mu, 0); }

/// Levels in the top p+1 states of a sector may have lost partners to truncation.
inline int truncation_tail_start(int p, int dim) { return std::max(0, dim - (p + 1)); }

inline BreakingVerdict classify_breaking(const SectorOps& s, double tol)
{
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    const int limit = std::max(1, truncation_tail_start(s.p, s.dim));

    BreakingVerdict v;
    v.mu = s.mu;
    v.ground_energy = *std::min_element(s.energies.begin(), s.energies.begin() + limit);
    for (int n = 0; n < limit; ++n)
        if (s.energies[n] == v.ground_energy) v.ground_levels.push_back(n);
    v.ground_degeneracy = static_cast<int>(v.ground_levels.size());

    bool annihilated = true;
    auto record = [&](const std::string& name, const RealMatrix& op) {
        double worst = 0.0;
        for (int n : v.ground_levels) worst = std::max(worst, op.col(n).norm());
        v.charge_residuals.emplace_back(name, worst);
        if (worst > tol) annihilated = false;
    };
    for (std::size_t c = 0; c < s.charges.size(); ++c) {
        record(s.charge_names[c], s.charges[c]);
        record(s.charge_names[c] + "dag", s.charges_dag[c]);
    }
    v.verdict = annihilated ? Breaking::Unbroken : Breaking::Broken;
    return v;
}

inline std::vector<DegeneracyGroup> degeneracy_table(const SectorOps& s)
{
    std::vector<int> order(s.energies.size());
    for (std::size_t n = 0; n < order.size(); ++n) order[n] = static_cast<int>(n);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s.energies[a] < s.energies[b]; });

    const int tail = truncation_tail_start(s.p, s.dim);
    std::vector<DegeneracyGroup> groups;
    for (int n : order) {
        if (groups.empty() || groups.back().energy != s.energies[n]) {
            groups.push_back(DegeneracyGroup{s.energies[n], 0, {}, false});
        }
        auto& g = groups.back();
        g.levels.push_back(n);
        ++g.multiplicity;
        if (n >= tail) g.possibly_incomplete = true;
    }
    for (auto& g : groups) std::sort(g.levels.begin(), g.levels.end());
    return groups;
}

} // namespace parasusy

#endif // PARASUSY_VARIANTS_HPP
