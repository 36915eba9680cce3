#ifndef PARASUSY_FOCKREP_HPP
#define PARASUSY_FOCKREP_HPP

#include "parasusy/rational.hpp"
#include "parasusy/structure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parasusy {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Truncated graded Fock representation on |0>, ..., |D-1>.
///
/// The truncation sets a^dagger |D-1> = 0; relations that raise past the top
/// state only hold on a window of low states (see verifier.hpp).
struct FockRep {
    int dim = 0;
    int lambda = 0;
    StructureSpec F;
    std::vector<Rational> f_values;  // F(0), ..., F(D-1), exact
    RealMatrix number;
    RealMatrix annihilation;
    RealMatrix creation;
    ComplexMatrix grading;
    std::vector<RealMatrix> projectors;

    /// P_mu with mu taken mod lambda.
    const RealMatrix& projector(long mu) const { return projectors[mod_floor(mu, lambda)]; }

    /// Grade of the basis state |n>.
    int grade(long n) const { return static_cast<int>(mod_floor(n, lambda)); }
};

inline FockRep build_fock(const StructureSpec& F, int dim, int lambda)
{
    if (dim < 2) throw DimensionError("truncation dimension must be >= 2, got " + std::to_string(dim));
    if (lambda < 2) throw DimensionError("lambda must be >= 2, got " + std::to_string(lambda));

    FockRep rep;
    rep.dim = dim;
    rep.lambda = lambda;
    rep.F = F;
    rep.f_values.reserve(dim);
    for (int n = 0; n < dim; ++n) {
        Rational v = F.value(n);
        if (n > 0 && v <= 0) throw NonPositiveF(n, v);
        rep.f_values.push_back(std::move(v));
    }

    rep.number = RealMatrix::Zero(dim, dim);
    rep.annihilation = RealMatrix::Zero(dim, dim);
    rep.grading = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        rep.number(n, n) = n;
        if (n > 0) rep.annihilation(n - 1, n) = std::sqrt(to_double(rep.f_values[n]));
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(n % lambda) / lambda;
        rep.grading(n, n) = std::polar(1.0, phase);
    }
    rep.creation = rep.annihilation.transpose();

    rep.projectors.assign(lambda, RealMatrix::Zero(dim, dim));
    for (int n = 0; n < dim; ++n) rep.projectors[n % lambda](n, n) = 1.0;
    return rep;
}

/// P_mu assembled from powers of the grading operator:
/// (1/lambda) sum_nu exp(-2 pi i mu nu / lambda) T^nu.
inline ComplexMatrix projector_from_T(const FockRep& rep, int mu)
{
    if (mu < 0 || mu >= rep.lambda)
        throw DimensionError("projector index " + std::to_string(mu) + " outside 0.." + std::to_string(rep.lambda - 1));
    ComplexMatrix sum = ComplexMatrix::Zero(rep.dim, rep.dim);
    ComplexMatrix power = ComplexMatrix::Identity(rep.dim, rep.dim);
    for (int nu = 0; nu < rep.lambda; ++nu) {
        const double phase = -2.0 * std::numbers::pi * static_cast<double>((mu * nu) % rep.lambda) / rep.lambda;
        sum += std::polar(1.0, phase) * power;
        power = power * rep.grading;
    }
    return sum / static_cast<double>(rep.lambda);
}

/// (p+1) x (p+1) grid of D x D blocks, stored densely. Block indices are
/// 1-based to match the matrix units e_{i,j}.
class BlockOperator {
public:
    BlockOperator() = default;

    BlockOperator(int blocks, int dim)
        : blocks_(blocks)
        , dim_(dim)
        , matrix_(RealMatrix::Zero(static_cast<Eigen::Index>(blocks) * dim, static_cast<Eigen::Index>(blocks) * dim))
    {
    }

    BlockOperator(int blocks, int dim, RealMatrix full) : blocks_(blocks), dim_(dim), matrix_(std::move(full))
    {
        if (matrix_.rows() != static_cast<Eigen::Index>(blocks) * dim || matrix_.cols() != matrix_.rows())
            throw DimensionError("block operator matrix has the wrong size");
    }

    static BlockOperator identity(int blocks, int dim)
    {
        const Eigen::Index total = static_cast<Eigen::Index>(blocks) * dim;
        return BlockOperator(blocks, dim, RealMatrix::Identity(total, total));
    }

    int blocks() const { return blocks_; }
    int dim() const { return dim_; }
    Eigen::Index total_dim() const { return matrix_.rows(); }

    auto block(int i, int j) { return matrix_.block((i - 1) * dim_, (j - 1) * dim_, dim_, dim_); }
    auto block(int i, int j) const { return matrix_.block((i - 1) * dim_, (j - 1) * dim_, dim_, dim_); }

    const RealMatrix& matrix() const { return matrix_; }

    BlockOperator adjoint() const { return BlockOperator(blocks_, dim_, matrix_.transpose()); }

    friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b)
    {
        check_compatible(a, b);
        return BlockOperator(a.blocks_, a.dim_, a.matrix_ * b.matrix_);
    }
    friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b)
    {
        check_compatible(a, b);
        return BlockOperator(a.blocks_, a.dim_, a.matrix_ + b.matrix_);
    }

private:
    static void check_compatible(const BlockOperator& a, const BlockOperator& b)
    {
        if (a.blocks_ != b.blocks_ || a.dim_ != b.dim_)
            throw DimensionError("block operators have incompatible layouts");
    }

    int blocks_ = 0;
    int dim_ = 0;
    RealMatrix matrix_;
};

using BlockEntries = std::map<std::pair<int, int>, RealMatrix>;

/// Places each entry (i, j) at block row i, column j (1-based); absent blocks are zero.
inline BlockOperator block_compose(const BlockEntries& entries, int p, int dim)
{
    if (p < 1) throw DimensionError("p must be >= 1");
    BlockOperator op(p + 1, dim);
    for (const auto& [index, m] : entries) {
        const auto [i, j] = index;
        if (i < 1 || i > p + 1 || j < 1 || j > p + 1)
            throw DimensionError("block index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside 1.."
                                 + std::to_string(p + 1));
        if (m.rows() != dim || m.cols() != dim)
            throw DimensionError("block (" + std::to_string(i) + ", " + std::to_string(j) + ") is "
                                 + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected "
                                 + std::to_string(dim) + "x" + std::to_string(dim));
        op.block(i, j) = m;
    }
    return op;
}

inline BlockOperator block_compose(const BlockEntries& entries, int p)
{
    if (entries.empty()) throw DimensionError("cannot infer block dimension from an empty entry set");
    return block_compose(entries, p, static_cast<int>(entries.begin()->second.rows()));
}

} // namespace parasusy

#endif // PARASUSY_FOCKREP_HPP
