#include "steenrod/chain_complex.hpp"

#include "steenrod/errors.hpp"

#include <algorithm>
#include <string>

namespace steenrod {

ChainComplex::ChainComplex(PrimeField F, std::vector<std::size_t> dims, std::vector<MatrixFp> boundaries)
    : field_(F), dims_(std::move(dims)), boundaries_(std::move(boundaries))
{
    if (dims_.empty())
        throw ContractViolation("chain complex needs at least degree 0");
    boundaries_.resize(dims_.size());
    boundaries_[0] = MatrixFp(0, dims_[0]);
    for (std::size_t k = 1; k < dims_.size(); ++k) {
        const auto& d = boundaries_[k];
        if (d.rows() != dims_[k - 1] || d.cols() != dims_[k])
            throw ContractViolation("boundary d_" + std::to_string(k) + " has the wrong shape");
    }
}

std::size_t ChainComplex::dim(int k) const
{
    if (k < 0)
        return 0;
    if (k > top())
        throw TruncationError("chain degree " + std::to_string(k) + " is above the built degree " +
                              std::to_string(top()) + "; raise cap");
    return dims_[static_cast<std::size_t>(k)];
}

const MatrixFp& ChainComplex::boundary(int k) const
{
    if (k < 0 || k > top())
        throw TruncationError("boundary d_" + std::to_string(k) + " is not built; raise cap");
    return boundaries_[static_cast<std::size_t>(k)];
}

bool ChainComplex::boundary_squares_to_zero() const
{
    for (int k = 2; k <= top(); ++k)
        if (!multiply(field_, boundary(k - 1), boundary(k)).is_zero())
            return false;
    return true;
}

ChainComplex ChainComplex::truncated(int new_top) const
{
    if (new_top > top())
        throw TruncationError("cannot extend a complex by truncation");
    std::vector<std::size_t> dims(dims_.begin(), dims_.begin() + new_top + 1);
    std::vector<MatrixFp> bd(boundaries_.begin(), boundaries_.begin() + new_top + 1);
    return ChainComplex(field_, std::move(dims), std::move(bd));
}

// ---------------------------------------------------------------------------

CpComplex::CpComplex(ChainComplex complex, std::vector<MatrixFp> action)
    : complex_(std::move(complex)), action_(std::move(action))
{
    if (static_cast<int>(action_.size()) != complex_.top() + 1)
        throw ContractViolation("action needs one matrix per degree");
    for (int k = 0; k <= complex_.top(); ++k) {
        const auto n = complex_.dim(k);
        if (action_[k].rows() != n || action_[k].cols() != n)
            throw ContractViolation("action matrix has the wrong shape in degree " + std::to_string(k));
    }
}

CpComplex CpComplex::trivial(ChainComplex complex)
{
    std::vector<MatrixFp> action;
    for (int k = 0; k <= complex.top(); ++k)
        action.push_back(MatrixFp::identity(complex.dim(k)));
    CpComplex out(std::move(complex), std::move(action));
    out.trivial_ = true;
    return out;
}

const MatrixFp& CpComplex::action(int k) const
{
    if (k < 0 || k > top())
        throw TruncationError("action in degree " + std::to_string(k) + " is not built; raise cap");
    return action_[static_cast<std::size_t>(k)];
}

bool CpComplex::action_has_order_p() const
{
    const auto& F = field();
    for (int k = 0; k <= top(); ++k) {
        MatrixFp power = MatrixFp::identity(dim(k));
        for (int i = 0; i < F.p(); ++i)
            power = multiply(F, action(k), power);
        if (!(power == MatrixFp::identity(dim(k))))
            return false;
    }
    return true;
}

bool CpComplex::action_commutes_with_boundary() const
{
    const auto& F = field();
    for (int k = 1; k <= top(); ++k) {
        const auto lhs = multiply(F, action(k - 1), boundary(k));
        const auto rhs = multiply(F, boundary(k), action(k));
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

bool commutes_with_boundary(const ChainMap& f, const ChainComplex& source, const ChainComplex& target)
{
    const auto& F = source.field();
    const int top = std::min({f.top(), source.top(), target.top()});
    for (int k = 1; k <= top; ++k) {
        const auto lhs = multiply(F, target.boundary(k), f[k]);
        const auto rhs = multiply(F, f[k - 1], source.boundary(k));
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

bool commutes_with_action(const ChainMap& f, const CpComplex& source, const CpComplex& target)
{
    const auto& F = source.field();
    const int top = std::min({f.top(), source.top(), target.top()});
    for (int k = 0; k <= top; ++k) {
        const auto lhs = multiply(F, target.action(k), f[k]);
        const auto rhs = multiply(F, f[k], source.action(k));
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

ChainMap compose(const PrimeField& F, const ChainMap& second, const ChainMap& first)
{
    ChainMap out;
    const int top = std::min(second.top(), first.top());
    for (int k = 0; k <= top; ++k)
        out.components.push_back(multiply(F, second[k], first[k]));
    return out;
}

ChainMap linear_combination(const PrimeField& F, const std::vector<std::pair<Coeff, const ChainMap*>>& terms)
{
    if (terms.empty())
        throw ContractViolation("linear_combination of nothing");
    ChainMap out;
    int top = terms.front().second->top();
    for (const auto& t : terms)
        top = std::min(top, t.second->top());
    for (int k = 0; k <= top; ++k) {
        const auto& first = (*terms.front().second)[k];
        MatrixFp acc(first.rows(), first.cols());
        for (const auto& [w, map] : terms)
            acc = add(F, acc, (*map)[k], w);
        out.components.push_back(std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------

Cohomology::Cohomology(const ChainComplex& complex, int n) : field_(complex.field()), degree_(n)
{
    if (n < 0)
        throw ContractViolation("negative cohomological degree");
    cochain_dim_ = complex.dim(n);
    const auto& F = field_;
    // f in Z^n iff f o d_{n+1} = 0, i.e. d_{n+1}^T f = 0.
    SubspaceFp z = kernel(F, complex.boundary(n + 1).transpose());
    SubspaceFp b = n == 0 ? SubspaceFp(cochain_dim_) : image(F, complex.boundary(n).transpose());
    quotient_ = QuotientSpace(F, std::move(z), std::move(b));
}

std::optional<DenseVector> Cohomology::coordinates(std::span<const Coeff> cochain) const
{
    if (cochain.size() != cochain_dim_)
        throw ContractViolation("cochain has the wrong length for H^" + std::to_string(degree_));
    return quotient_.coordinates(field_, SparseVector::from_dense(cochain));
}

DenseVector Cohomology::representative(std::span<const Coeff> coords) const
{
    if (coords.size() != dim())
        throw ContractViolation("class coordinates have the wrong length");
    SparseVector acc;
    for (std::size_t i = 0; i < coords.size(); ++i)
        acc = axpy(field_, coords[i], representatives()[i], acc);
    return acc.to_dense(cochain_dim_);
}

} // namespace steenrod
