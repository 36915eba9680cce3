#ifndef PARASUSY_STRUCTURE_HPP
#define PARASUSY_STRUCTURE_HPP

#include "parasusy/exprlang.hpp"
#include "parasusy/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace parasusy {

class ParameterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The alpha parameters do not add up to zero.
class SumNotZero : public ParameterError {
public:
    explicit SumNotZero(const Rational& sum)
        : ParameterError("SumNotZero: sum of alpha is " + to_display_string(sum) + ", must be 0")
    {
    }
};

/// Partial sum alpha_0 + ... + alpha_mu is not greater than -mu-1.
class PositivityViolated : public ParameterError {
public:
    PositivityViolated(int mu, const Rational& partial_sum)
        : ParameterError("PositivityViolated(" + std::to_string(mu) + "): partial sum "
                         + to_display_string(partial_sum) + " must exceed " + std::to_string(-mu - 1))
        , mu_(mu)
    {
    }
    int mu() const noexcept { return mu_; }

private:
    int mu_;
};

class NonPositiveF : public ParameterError {
public:
    NonPositiveF(std::int64_t n, const Rational& value)
        : ParameterError("NonPositiveF(" + std::to_string(n) + "): F(" + std::to_string(n)
                         + ") = " + to_display_string(value) + " must be > 0")
        , n_(n)
    {
    }
    std::int64_t n() const noexcept { return n_; }

private:
    std::int64_t n_;
};

/// Validated parameters of the C_lambda-extended oscillator.
struct CLambdaParams {
    int lambda = 2;
    std::vector<Rational> alpha;
};

inline CLambdaParams validate_clambda(int lambda, const std::vector<Rational>& alpha)
{
    if (lambda < 2) throw ParameterError("lambda must be >= 2, got " + std::to_string(lambda));
    if (static_cast<int>(alpha.size()) != lambda)
        throw ParameterError("alpha must have exactly lambda = " + std::to_string(lambda)
                             + " entries, got " + std::to_string(alpha.size()));
    Rational partial = 0;
    for (int mu = 0; mu <= lambda - 2; ++mu) {
        partial += alpha[mu];
        if (!(partial > Rational(-mu - 1))) throw PositivityViolated(mu, partial);
    }
    Rational total = partial + alpha[lambda - 1];
    if (total != 0) throw SumNotZero(total);
    return CLambdaParams{lambda, alpha};
}

struct UserStructure {
    Expression expr;
    int lambda = 2;
};

/// Structure function F(N): either the C_lambda family or a user expression.
class StructureSpec {
public:
    static StructureSpec clambda(const CLambdaParams& params)
    {
        StructureSpec spec;
        spec.kind_ = params;
        spec.beta_.assign(params.lambda, Rational(0));
        for (int mu = 1; mu < params.lambda; ++mu)
            spec.beta_[mu] = spec.beta_[mu - 1] + params.alpha[mu - 1];
        return spec;
    }

    /// F(N) = N, graded with the given lambda.
    static StructureSpec standard(int lambda)
    {
        return clambda(validate_clambda(lambda, std::vector<Rational>(lambda, Rational(0))));
    }

    static StructureSpec user(const Expression& expr, int lambda)
    {
        if (lambda < 2) throw ParameterError("lambda must be >= 2, got " + std::to_string(lambda));
        StructureSpec spec;
        spec.kind_ = UserStructure{expr, lambda};
        return spec;
    }

    bool is_clambda() const { return std::holds_alternative<CLambdaParams>(kind_); }

    int lambda() const
    {
        return is_clambda() ? std::get<CLambdaParams>(kind_).lambda : std::get<UserStructure>(kind_).lambda;
    }

    /// beta_0..beta_{lambda-1}; empty for user-defined F.
    const std::vector<Rational>& beta() const { return beta_; }

    const CLambdaParams* clambda_params() const { return std::get_if<CLambdaParams>(&kind_); }
    const UserStructure* user_structure() const { return std::get_if<UserStructure>(&kind_); }

    /// Defined on all integers. The C_lambda family extends periodically in beta.
    Rational value(std::int64_t n) const
    {
        if (const auto* user = std::get_if<UserStructure>(&kind_)) return user->expr.evaluate(n);
        return Rational(n) + beta_[mod_floor(n, lambda())];
    }

    std::string describe() const
    {
        if (const auto* user = std::get_if<UserStructure>(&kind_))
            return "F(n) = " + user->expr.to_string() + ", lambda = " + std::to_string(user->lambda);
        std::string text = "C_" + std::to_string(lambda()) + " alpha = [";
        const auto& alpha = std::get<CLambdaParams>(kind_).alpha;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            text += (i ? ", " : "") + to_display_string(alpha[i]);
        return text + "]";
    }

private:
    std::variant<CLambdaParams, UserStructure> kind_;
    std::vector<Rational> beta_;
};

inline Rational structure_value(const StructureSpec& F, std::int64_t n) { return F.value(n); }

/// G(n) = F(n+1) - F(n).
inline Rational g_value(const StructureSpec& F, std::int64_t n) { return F.value(n + 1) - F.value(n); }

/// Throws unless F(0) = 0 and F(n) > 0 for n = 1..max_n.
inline void check_fock_conditions(const StructureSpec& F, std::int64_t max_n)
{
    const Rational f0 = F.value(0);
    if (f0 != 0) throw ParameterError("F(0) = " + to_display_string(f0) + " must vanish");
    for (std::int64_t n = 1; n <= max_n; ++n) {
        const Rational v = F.value(n);
        if (v <= 0) throw NonPositiveF(n, v);
    }
}

} // namespace parasusy

#endif // PARASUSY_STRUCTURE_HPP
