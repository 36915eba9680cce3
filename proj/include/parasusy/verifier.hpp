#ifndef PARASUSY_VERIFIER_HPP
#define PARASUSY_VERIFIER_HPP

#include "parasusy/fockrep.hpp"
#include "parasusy/variants.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parasusy {

class WindowEmpty : public std::runtime_error {
public:
    WindowEmpty(int weight, int dim)
        : std::runtime_error("WindowEmpty: ladder weight " + std::to_string(weight) + " leaves no safe states at D = "
                             + std::to_string(dim))
    {
    }
};

class BindingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotUnitary : public std::runtime_error {
public:
    explicit NotUnitary(double residual)
        : std::runtime_error("NotUnitary: max |U U^dagger - I| = " + std::to_string(residual))
    {
    }
};

// ---------------------------------------------------------------------------
// Operator expressions

template <class Scalar>
struct Monomial {
    Scalar coeff{1};
    std::vector<std::string> factors;  // leftmost acts last
    int weight = 0;
};

/// Operator-expression tree over named operators. Each symbol carries its
/// ladder weight: the number of a / a^dagger factors it contains.
template <class Scalar>
class OpExpr {
public:
    using Terms = std::vector<Monomial<Scalar>>;

    static OpExpr symbol(const std::string& name, int weight = 0)
    {
        return OpExpr(Terms{Monomial<Scalar>{Scalar(1), {name}, weight}});
    }
    static OpExpr zero() { return OpExpr(Terms{}); }
    static OpExpr scalar(Scalar c, const std::string& identity = "I")
    {
        return OpExpr(Terms{Monomial<Scalar>{c, {identity}, 0}});
    }

    /// Expanded form, one entry per monomial.
    const Terms& monomials() const { return terms_; }

    /// Max ladder count over monomials.
    int ladder_weight() const
    {
        int w = 0;
        for (const auto& m : terms_) w = std::max(w, m.weight);
        return w;
    }

    friend OpExpr operator+(const OpExpr& a, const OpExpr& b)
    {
        Terms t = a.terms_;
        t.insert(t.end(), b.terms_.begin(), b.terms_.end());
        return OpExpr(std::move(t));
    }
    friend OpExpr operator-(const OpExpr& a, const OpExpr& b) { return a + Scalar(-1) * b; }
    friend OpExpr operator*(Scalar c, const OpExpr& a)
    {
        Terms t = a.terms_;
        for (auto& m : t) m.coeff *= c;
        return OpExpr(std::move(t));
    }
    friend OpExpr operator*(const OpExpr& a, const OpExpr& b)
    {
        Terms t;
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                Monomial<Scalar> m{x.coeff * y.coeff, x.factors, x.weight + y.weight};
                m.factors.insert(m.factors.end(), y.factors.begin(), y.factors.end());
                t.push_back(std::move(m));
            }
        return OpExpr(std::move(t));
    }

private:
    explicit OpExpr(Terms t) : terms_(std::move(t)) {}
    Terms terms_;
};

template <class Scalar>
OpExpr<Scalar> commutator(const OpExpr<Scalar>& a, const OpExpr<Scalar>& b)
{
    return a * b - b * a;
}

template <class Scalar>
OpExpr<Scalar> power(const OpExpr<Scalar>& a, int k, const std::string& identity = "I")
{
    OpExpr<Scalar> result = OpExpr<Scalar>::symbol(identity);
    for (int s = 0; s < k; ++s) result = s == 0 ? a : result * a;
    return result;
}

enum class Expectation { Equal, ExactlyEqual, NonZero };

template <class Scalar>
struct RelationDescriptor {
    std::string name;
    OpExpr<Scalar> lhs;
    OpExpr<Scalar> rhs;
    Expectation expectation = Expectation::Equal;

    int ladder_weight() const { return std::max(lhs.ladder_weight(), rhs.ladder_weight()); }
};

template <class Scalar>
using OpMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
struct OperatorBindings {
    int dim = 0;  // Fock truncation; matrices may hold several Fock copies
    std::map<std::string, OpMatrix<Scalar>> ops;

    void bind(const std::string& name, OpMatrix<Scalar> m) { ops[name] = std::move(m); }
};

struct SafeWindow {
    int first = 0;
    int last = 0;  // inclusive, per Fock copy
};

/// Basis states 0..D-1-w: at most w ladder steps from these never reach the truncation edge.
inline SafeWindow safe_window(int weight, int dim)
{
    if (dim <= weight) throw WindowEmpty(weight, dim);
    return SafeWindow{0, dim - 1 - weight};
}

struct ResidualRecord {
    std::string name;
    int weight = 0;
    SafeWindow window;
    double residual = 0.0;      // max over window columns of |(L-R)x| / max(1, sum of monomial norms)
    double abs_residual = 0.0;  // max over window columns of |(L-R)x|
    Expectation expectation = Expectation::Equal;
    bool pass = false;
};

/// Evaluates LHS - RHS column by column on the safe window of every Fock copy.
template <class Scalar>
ResidualRecord check_relation(const RelationDescriptor<Scalar>& rel, const OperatorBindings<Scalar>& bindings, double tol)
{
    if (bindings.ops.empty()) throw BindingError("no operators bound");
    const Eigen::Index total = bindings.ops.begin()->second.rows();
    for (const auto& [name, m] : bindings.ops)
        if (m.rows() != total || m.cols() != total)
            throw DimensionError("operator '" + name + "' is " + std::to_string(m.rows()) + "x"
                                 + std::to_string(m.cols()) + ", expected " + std::to_string(total) + "x"
                                 + std::to_string(total));
    if (bindings.dim <= 0 || total % bindings.dim != 0)
        throw DimensionError("operator size is not a multiple of the Fock dimension");

    ResidualRecord rec;
    rec.name = rel.name;
    rec.weight = rel.ladder_weight();
    rec.expectation = rel.expectation;
    rec.window = safe_window(rec.weight, bindings.dim);

    const Eigen::Index copies = total / bindings.dim;
    const Eigen::Index per_copy = rec.window.last - rec.window.first + 1;
    OpMatrix<Scalar> columns = OpMatrix<Scalar>::Zero(total, copies * per_copy);
    for (Eigen::Index c = 0; c < copies; ++c)
        for (Eigen::Index k = 0; k < per_copy; ++k)
            columns(c * bindings.dim + rec.window.first + k, c * per_copy + k) = Scalar(1);

    OpMatrix<Scalar> value = OpMatrix<Scalar>::Zero(total, columns.cols());
    Eigen::VectorXd magnitude = Eigen::VectorXd::Zero(columns.cols());
    auto accumulate = [&](const Monomial<Scalar>& m, Scalar sign) {
        OpMatrix<Scalar> y = columns;
        for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
            const auto found = bindings.ops.find(*it);
            if (found == bindings.ops.end()) throw BindingError("operator '" + *it + "' is not bound");
            y = found->second * y;
        }
        y *= sign * m.coeff;
        value += y;
        magnitude += y.colwise().norm().transpose();
    };
    for (const auto& m : rel.lhs.monomials()) accumulate(m, Scalar(1));
    for (const auto& m : rel.rhs.monomials()) accumulate(m, Scalar(-1));

    for (Eigen::Index c = 0; c < value.cols(); ++c) {
        const double norm = value.col(c).norm();
        rec.abs_residual = std::max(rec.abs_residual, norm);
        rec.residual = std::max(rec.residual, norm / std::max(1.0, magnitude(c)));
    }
    switch (rel.expectation) {
    case Expectation::Equal: rec.pass = rec.residual <= tol; break;
    case Expectation::ExactlyEqual: rec.pass = rec.abs_residual == 0.0; break;
    case Expectation::NonZero: rec.pass = rec.abs_residual > tol; break;
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Relation sets

namespace relations {

using Real = OpExpr<double>;
using Complex = OpExpr<std::complex<double>>;

inline std::string charge_name(int i) { return "Q" + std::to_string(i); }
inline std::string charge_dag_name(int i) { return "Q" + std::to_string(i) + "dag"; }

inline std::vector<RelationDescriptor<double>> parasusy_common(int p)
{
    const Real Q = Real::symbol("Q", 1), Qd = Real::symbol("Qdag", 1), H = Real::symbol("H");
    return {
        {"Q^" + std::to_string(p + 1) + " = 0", power(Q, p + 1), Real::zero(), Expectation::ExactlyEqual},
        {"Qdag^" + std::to_string(p + 1) + " = 0", power(Qd, p + 1), Real::zero(), Expectation::ExactlyEqual},
        {"Q^" + std::to_string(p) + " != 0", power(Q, p), Real::zero(), Expectation::NonZero},
        {"[H, Q] = 0", commutator(H, Q), Real::zero()},
        {"[H, Qdag] = 0", commutator(H, Qd), Real::zero()},
    };
}

/// Nilpotency, conservation and the multilinear relation sum_k Q^{p-k} Q^dag Q^k = 2p Q^{p-1} H.
inline std::vector<RelationDescriptor<double>> rsk(int p)
{
    auto set = parasusy_common(p);
    const Real Q = Real::symbol("Q", 1), Qd = Real::symbol("Qdag", 1), H = Real::symbol("H");
    Real lhs = Real::zero(), lhs_conj = Real::zero();
    for (int k = 0; k <= p; ++k) {
        Real term = Qd, term_conj = Q;
        if (p - k > 0) {
            term = power(Q, p - k) * term;
            term_conj = power(Qd, p - k) * term_conj;
        }
        if (k > 0) {
            term = term * power(Q, k);
            term_conj = term_conj * power(Qd, k);
        }
        lhs = lhs + term;
        lhs_conj = lhs_conj + term_conj;
    }
    const double c = 2.0 * p;
    set.push_back({"sum_k Q^(p-k) Qdag Q^k = 2p Q^(p-1) H", lhs, c * ((p > 1 ? power(Q, p - 1) * H : H))});
    set.push_back({"sum_k Qdag^(p-k) Q Qdag^k = 2p H Qdag^(p-1)", lhs_conj,
                   c * ((p > 1 ? H * power(Qd, p - 1) : H))});
    return set;
}

/// Nilpotency, conservation and [Q, [Q^dag, Q]] = 2 Q H.
inline std::vector<RelationDescriptor<double>> bd(int p)
{
    auto set = parasusy_common(p);
    const Real Q = Real::symbol("Q", 1), Qd = Real::symbol("Qdag", 1), H = Real::symbol("H");
    set.push_back({"[Q, [Qdag, Q]] = 2 Q H", commutator(Q, commutator(Qd, Q)), 2.0 * (Q * H)});
    set.push_back({"[[Qdag, Q], Qdag] = 2 H Qdag", commutator(commutator(Qd, Q), Qd), 2.0 * (H * Qd)});
    return set;
}

inline std::vector<RelationDescriptor<double>> ossqm(int p)
{
    std::vector<RelationDescriptor<double>> set;
    const Real H = Real::symbol("H");
    auto Qi = [](int i) { return Real::symbol(charge_name(i), i); };
    auto Qdi = [](int i) { return Real::symbol(charge_dag_name(i), i); };
    Real number_like = Real::zero();
    for (int k = 1; k <= p; ++k) number_like = number_like + Qdi(k) * Qi(k);

    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j) {
            set.push_back({"Q" + std::to_string(i) + " Q" + std::to_string(j) + " = 0", Qi(i) * Qi(j), Real::zero(),
                           Expectation::ExactlyEqual});
            set.push_back({"Q" + std::to_string(j) + "dag Q" + std::to_string(i) + "dag = 0", Qdi(j) * Qdi(i),
                           Real::zero(), Expectation::ExactlyEqual});
        }
    for (int i = 1; i <= p; ++i) {
        set.push_back({"[H, Q" + std::to_string(i) + "] = 0", commutator(H, Qi(i)), Real::zero()});
        set.push_back({"[H, Q" + std::to_string(i) + "dag] = 0", commutator(H, Qdi(i)), Real::zero()});
    }
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j) {
            const std::string label = "Q" + std::to_string(i) + " Q" + std::to_string(j) + "dag";
            if (i == j)
                set.push_back({label + " + sum_k Qkdag Qk = 2 H", Qi(i) * Qdi(j) + number_like, 2.0 * H});
            else
                set.push_back({label + " = 0", Qi(i) * Qdi(j), Real::zero()});
        }
    return set;
}

inline std::vector<RelationDescriptor<double>> for_variant(Variant v, int p)
{
    switch (v) {
    case Variant::RSK: return rsk(p);
    case Variant::BD: return bd(p);
    case Variant::OSSQM: return ossqm(p);
    }
    throw std::logic_error("unreachable variant");
}

inline std::string projector_name(int mu) { return "P" + std::to_string(mu); }

/// Oscillator, grading and projector relations of the graded Fock space.
inline std::vector<RelationDescriptor<std::complex<double>>> gdoa(int lambda)
{
    using C = std::complex<double>;
    const Complex N = Complex::symbol("N"), a = Complex::symbol("a", 1), ad = Complex::symbol("adag", 1);
    const Complex T = Complex::symbol("T"), Td = Complex::symbol("Tdag"), I = Complex::symbol("I");
    const Complex G = Complex::symbol("G"), F = Complex::symbol("F");
    const C forward = std::polar(1.0, 2.0 * std::numbers::pi / lambda);
    const C backward = std::conj(forward);

    std::vector<RelationDescriptor<C>> set = {
        {"[N, adag] = adag", commutator(N, ad), ad},
        {"[N, a] = -a", commutator(N, a), C(-1) * a},
        {"[a, adag] = G(N)", commutator(a, ad), G},
        {"adag a = F(N)", ad * a, F},
        {"Tdag T = I", Td * T, I},
        {"T^lambda = I", power(T, lambda), I},
        {"[N, T] = 0", commutator(N, T), Complex::zero()},
        {"adag T = q^-1 T adag", ad * T, backward * (T * ad)},
        {"a T = q T a", a * T, forward * (T * a)},
    };
    Complex sum = Complex::zero();
    for (int mu = 0; mu < lambda; ++mu) {
        const Complex P = Complex::symbol(projector_name(mu));
        const Complex Pd = Complex::symbol(projector_name(mu) + "dag");
        const Complex next = Complex::symbol(projector_name((mu + 1) % lambda));
        const Complex prev = Complex::symbol(projector_name((mu + lambda - 1) % lambda));
        sum = sum + P;
        set.push_back({"P" + std::to_string(mu) + "dag = P" + std::to_string(mu), Pd, P});
        for (int nu = 0; nu < lambda; ++nu) {
            const Complex Q = Complex::symbol(projector_name(nu));
            set.push_back({"P" + std::to_string(mu) + " P" + std::to_string(nu) + " = delta P" + std::to_string(mu),
                           P * Q, mu == nu ? P : Complex::zero()});
        }
        set.push_back({"[N, P" + std::to_string(mu) + "] = 0", commutator(N, P), Complex::zero()});
        set.push_back({"adag P" + std::to_string(mu) + " = P" + std::to_string((mu + 1) % lambda) + " adag", ad * P,
                       next * ad});
        set.push_back({"a P" + std::to_string(mu) + " = P" + std::to_string((mu + lambda - 1) % lambda) + " a", a * P,
                       prev * a});
    }
    set.push_back({"sum_mu P_mu = I", sum, I});
    return set;
}

} // namespace relations

inline OperatorBindings<std::complex<double>> gdoa_bindings(const FockRep& rep)
{
    OperatorBindings<std::complex<double>> b;
    b.dim = rep.dim;
    const auto c = [](const RealMatrix& m) -> ComplexMatrix { return m.cast<std::complex<double>>(); };
    b.bind("N", c(rep.number));
    b.bind("a", c(rep.annihilation));
    b.bind("adag", c(rep.creation));
    b.bind("T", rep.grading);
    b.bind("Tdag", rep.grading.adjoint());
    b.bind("I", ComplexMatrix::Identity(rep.dim, rep.dim));
    RealVector g(rep.dim), f(rep.dim);
    for (int n = 0; n < rep.dim; ++n) {
        g(n) = to_double(g_value(rep.F, n));
        f(n) = to_double(rep.f_values[n]);
    }
    b.bind("G", c(g.asDiagonal()));
    b.bind("F", c(f.asDiagonal()));
    for (int mu = 0; mu < rep.lambda; ++mu) {
        b.bind(relations::projector_name(mu), c(rep.projectors[mu]));
        b.bind(relations::projector_name(mu) + "dag", c(rep.projectors[mu].transpose()));
    }
    return b;
}

inline std::vector<ResidualRecord> verify_gdoa(const FockRep& rep, double tol)
{
    const auto bindings = gdoa_bindings(rep);
    std::vector<ResidualRecord> out;
    for (const auto& rel : relations::gdoa(rep.lambda)) out.push_back(check_relation(rel, bindings, tol));
    return out;
}

/// Largest entrywise gap between P_mu built from T and the indicator projector.
inline double projector_cross_check(const FockRep& rep)
{
    double worst = 0.0;
    for (int mu = 0; mu < rep.lambda; ++mu) {
        const ComplexMatrix diff = projector_from_T(rep, mu) - rep.projectors[mu].cast<std::complex<double>>();
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Variant verification

inline OperatorBindings<double> realization_bindings(const Realization& r)
{
    OperatorBindings<double> b;
    b.dim = r.dim();
    b.bind("H", r.H.matrix());
    b.bind("I", RealMatrix::Identity(r.H.total_dim(), r.H.total_dim()));
    if (r.config.variant == Variant::OSSQM) {
        for (int i = 1; i <= r.p(); ++i) {
            b.bind(relations::charge_name(i), r.Q[i - 1].matrix());
            b.bind(relations::charge_dag_name(i), r.Qdag[i - 1].matrix());
        }
    } else {
        b.bind("Q", r.Q.front().matrix());
        b.bind("Qdag", r.Qdag.front().matrix());
    }
    return b;
}

inline OperatorBindings<double> sector_bindings(const SectorOps& s)
{
    OperatorBindings<double> b;
    b.dim = s.dim;
    b.bind("H", s.hamiltonian);
    b.bind("I", RealMatrix::Identity(s.dim, s.dim));
    for (std::size_t c = 0; c < s.charges.size(); ++c) {
        b.bind(s.charge_names[c], s.charges[c]);
        b.bind(s.charge_names[c] + "dag", s.charges_dag[c]);
    }
    return b;
}

inline BlockOperator conjugate(const BlockOperator& U, const BlockOperator& X) { return U * X * U.adjoint(); }

struct BlockComparison {
    std::string op;
    int weight = 0;
    double off_block = 0.0;        // relative to max(1, max |X|)
    std::vector<double> vs_sector;  // per mu, relative
};

struct ReductionRecord {
    double unitarity = 0.0;
    bool permutation = false;
    bool hamiltonian_exact = false;
    std::vector<BlockComparison> operators;
    bool pass = false;
};

namespace detail {

inline double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Exact bookkeeping when U is a 0/1 permutation: the conjugated Hamiltonian
/// is diagonal with entries permuted from the exact H_i tables.
inline bool exact_hamiltonian_reduction(const Realization& r, const BlockOperator& U, bool& is_permutation)
{
    const RealMatrix& u = U.matrix();
    const Eigen::Index total = u.rows();
    std::vector<Eigen::Index> image(total, -1);
    is_permutation = true;
    for (Eigen::Index row = 0; row < total && is_permutation; ++row)
        for (Eigen::Index col = 0; col < total; ++col) {
            const double x = u(row, col);
            if (x == 0.0) continue;
            if (x != 1.0 || image[row] != -1) {
                is_permutation = false;
                break;
            }
            image[row] = col;
        }
    if (!is_permutation) return false;
    std::vector<int> hits(total, 0);
    for (auto col : image) {
        if (col < 0 || ++hits[col] > 1) {
            is_permutation = false;
            return false;
        }
    }
    const int dim = r.dim();
    for (int mu = 0; mu <= r.p(); ++mu) {
        const auto energies = sector_energies(r, mu);
        for (int n = 0; n < dim; ++n) {
            const Eigen::Index row = static_cast<Eigen::Index>(mu) * dim + n;
            const Eigen::Index src = image[row];
            const int block = static_cast<int>(src / dim);
            const int m = static_cast<int>(src % dim);
            // (U H U^T)(row,row) = H(src,src); off-diagonal entries vanish for a permutation.
            if (m != n || r.Hi_diag[block][m] != energies[n]) return false;
        }
    }
    return true;
}

} // namespace detail

inline ReductionRecord verify_reduction(const Realization& r, const BlockOperator& U, double tol, bool exact = true)
{
    ReductionRecord rec;
    const Eigen::Index total = U.total_dim();
    rec.unitarity = detail::max_abs(U.matrix() * U.matrix().transpose() - RealMatrix::Identity(total, total));
    if (rec.unitarity > tol) throw NotUnitary(rec.unitarity);

    const int p = r.p();
    const int dim = r.dim();
    std::vector<SectorOps> sectors;
    for (int mu = 0; mu <= p; ++mu) sectors.push_back(sector_operators(r, mu));

    auto compare = [&](const std::string& name, const BlockOperator& X, int weight, auto sector_matrix) {
        BlockComparison cmp;
        cmp.op = name;
        cmp.weight = weight;
        const double scale = std::max(1.0, detail::max_abs(X.matrix()));
        const BlockOperator C = conjugate(U, X);
        const SafeWindow w = safe_window(weight, dim);
        const int cols = w.last - w.first + 1;
        for (int k = 1; k <= p + 1; ++k)
            for (int l = 1; l <= p + 1; ++l) {
                const RealMatrix blk = C.block(k, l).middleCols(w.first, cols);
                if (k != l) {
                    cmp.off_block = std::max(cmp.off_block, detail::max_abs(blk) / scale);
                } else {
                    const RealMatrix expected = sector_matrix(sectors[k - 1]).middleCols(w.first, cols);
                    cmp.vs_sector.push_back(detail::max_abs(blk - expected) / scale);
                }
            }
        rec.operators.push_back(std::move(cmp));
    };

    if (r.config.variant == Variant::OSSQM) {
        for (int i = 1; i <= p; ++i) {
            compare(relations::charge_name(i), r.Q[i - 1], i, [&](const SectorOps& s) { return s.charges[i - 1]; });
            compare(relations::charge_dag_name(i), r.Qdag[i - 1], i,
                    [&](const SectorOps& s) { return s.charges_dag[i - 1]; });
        }
    } else {
        compare("Q", r.Q.front(), 1, [](const SectorOps& s) { return s.charges.front(); });
        compare("Qdag", r.Qdag.front(), 1, [](const SectorOps& s) { return s.charges_dag.front(); });
    }
    compare("H", r.H, 0, [](const SectorOps& s) { return s.hamiltonian; });

    rec.hamiltonian_exact = detail::exact_hamiltonian_reduction(r, U, rec.permutation);
    rec.pass = rec.hamiltonian_exact || !exact;
    for (const auto& cmp : rec.operators) {
        if (cmp.off_block > tol) rec.pass = false;
        for (double x : cmp.vs_sector)
            if (x > tol) rec.pass = false;
    }
    return rec;
}

struct SectorReport {
    int mu = 0;
    std::vector<ResidualRecord> relations;
    bool closed_form_exact = false;        // closed form == exact sector diagonal on n <= D-p-2
    std::int64_t first_mismatch = -1;
    double diagonal_residual = 0.0;        // float diagonal of H_mu vs exact energies
    bool hamiltonian_diagonal = false;     // H_mu has no off-diagonal entries
    BreakingVerdict verdict;
    bool verdict_consistent = true;
    std::vector<DegeneracyGroup> groups;
};

struct VerificationReport {
    VariantConfig config;
    double tol = 1e-9;
    double tol_exact = 1e-12;
    bool exact = true;
    std::vector<ResidualRecord> relations;
    bool hamiltonian_hermitian = false;
    bool charges_adjoint = false;
    ReductionRecord reduction;
    std::vector<SectorReport> sectors;
    bool pass = false;
};

inline std::vector<ResidualRecord> check_relation_set(const std::vector<RelationDescriptor<double>>& set,
                                                      const OperatorBindings<double>& bindings, double tol)
{
    std::vector<ResidualRecord> out;
    out.reserve(set.size());
    for (const auto& rel : set) out.push_back(check_relation(rel, bindings, tol));
    return out;
}

/// Full check of one realization. With `exact` set, spectra are compared as
/// rationals and the Hamiltonian reduction is replayed exactly; otherwise the
/// floating-point diagonals are compared at tol_exact.
inline VerificationReport verify_variant(const Realization& r, double tol = 1e-9, double tol_exact = 1e-12,
                                         bool exact = true)
{
    VerificationReport rep;
    rep.config = r.config;
    rep.tol = tol;
    rep.tol_exact = tol_exact;
    rep.exact = exact;
    const int p = r.p();
    const int dim = r.dim();
    const auto set = relations::for_variant(r.config.variant, p);

    rep.relations = check_relation_set(set, realization_bindings(r), tol);

    rep.hamiltonian_hermitian = r.H.matrix() == r.H.matrix().transpose();
    rep.charges_adjoint = true;
    for (std::size_t c = 0; c < r.Q.size(); ++c)
        if (!(r.Qdag[c].matrix() == r.Q[c].matrix().transpose())) rep.charges_adjoint = false;

    rep.reduction = verify_reduction(r, reduction_unitary(r.config.variant, p, r.rep), tol_exact, exact);

    const std::int64_t last_level = dim - p - 2;
    for (int mu = 0; mu <= p; ++mu) {
        SectorReport sr;
        sr.mu = mu;
        const SectorOps s = sector_operators(r, mu);
        sr.relations = check_relation_set(set, sector_bindings(s), tol);

        const RealVector diag = s.hamiltonian.diagonal();
        sr.closed_form_exact = true;
        for (std::int64_t n = 0; n <= last_level; ++n) {
            const Rational cf = closed_form_energy(r, mu, n);
            const bool match = exact ? cf == s.energies[n]
                                     : std::abs(to_double(cf) - diag(n)) <= tol_exact * std::max(1.0, std::abs(diag(n)));
            if (!match) {
                sr.closed_form_exact = false;
                sr.first_mismatch = n;
                break;
            }
        }
        sr.hamiltonian_diagonal = RealMatrix(s.hamiltonian - RealMatrix(diag.asDiagonal())).isZero(0.0);
        for (int n = 0; n < dim; ++n) {
            const double expected = to_double(s.energies[n]);
            sr.diagonal_residual =
                std::max(sr.diagonal_residual, std::abs(diag(n) - expected) / std::max(1.0, std::abs(expected)));
        }

        sr.verdict = classify_breaking(s, tol);
        if (r.config.variant != Variant::RSK)
            sr.verdict_consistent = (sr.verdict.verdict == Breaking::Unbroken) == (sr.verdict.ground_energy == 0);
        sr.groups = degeneracy_table(s);
        rep.sectors.push_back(std::move(sr));
    }

    rep.pass = rep.hamiltonian_hermitian && rep.charges_adjoint && rep.reduction.pass;
    for (const auto& rel : rep.relations) rep.pass = rep.pass && rel.pass;
    for (const auto& sr : rep.sectors) {
        rep.pass = rep.pass && sr.closed_form_exact && sr.hamiltonian_diagonal && sr.diagonal_residual <= tol_exact
                   && sr.verdict_consistent;
        for (const auto& rel : sr.relations) rep.pass = rep.pass && rel.pass;
    }
    return rep;
}

} // namespace parasusy

#endif // PARASUSY_VERIFIER_HPP
