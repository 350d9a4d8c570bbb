#include "steenrod/resolution.hpp"

#include "steenrod/errors.hpp"

#include <string>

namespace steenrod {

GroupRingElement::GroupRingElement(const PrimeField& F) : p_(F.p()), coeffs_(static_cast<std::size_t>(F.p()), 0) {}

GroupRingElement::GroupRingElement(const PrimeField& F, std::vector<Coeff> coeffs)
    : p_(F.p()), coeffs_(std::move(coeffs))
{
    if (static_cast<int>(coeffs_.size()) != p_)
        throw ContractViolation("group ring element needs p coefficients");
    for (auto& c : coeffs_)
        c = F.from_int(c);
}

GroupRingElement GroupRingElement::one(const PrimeField& F)
{
    GroupRingElement e(F);
    e.coeffs_[0] = 1;
    return e;
}

GroupRingElement GroupRingElement::generator(const PrimeField& F)
{
    GroupRingElement e(F);
    e.coeffs_[1 % F.p()] = 1;
    return e;
}

GroupRingElement GroupRingElement::norm(const PrimeField& F)
{
    return GroupRingElement(F, std::vector<Coeff>(static_cast<std::size_t>(F.p()), 1));
}

GroupRingElement GroupRingElement::t_minus_one(const PrimeField& F)
{
    GroupRingElement e = generator(F);
    e.coeffs_[0] = F.sub(e.coeffs_[0], 1);
    return e;
}

bool GroupRingElement::is_zero() const noexcept
{
    for (Coeff c : coeffs_)
        if (c)
            return false;
    return true;
}

Coeff GroupRingElement::augmentation() const noexcept
{
    int s = 0;
    for (Coeff c : coeffs_)
        s += c;
    return static_cast<Coeff>(s % p_);
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& other) const
{
    const PrimeField F(p_);
    GroupRingElement out(F);
    for (int k = 0; k < p_; ++k)
        out.coeffs_[k] = F.add(coeffs_[k], other.coeffs_[k]);
    return out;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& other) const
{
    const PrimeField F(p_);
    GroupRingElement out(F);
    for (int a = 0; a < p_; ++a)
        for (int b = 0; b < p_; ++b)
            out.coeffs_[(a + b) % p_] = F.add(out.coeffs_[(a + b) % p_], F.mul(coeffs_[a], other.coeffs_[b]));
    return out;
}

MatrixFp GroupRingElement::regular_matrix() const
{
    const PrimeField F(p_);
    std::vector<Triplet> t;
    for (int col = 0; col < p_; ++col)
        for (int k = 0; k < p_; ++k)
            if (coeffs_[k])
                t.push_back({static_cast<Index>((col + k) % p_), static_cast<Index>(col), coeffs_[k]});
    return MatrixFp::from_triplets(F, static_cast<std::size_t>(p_), static_cast<std::size_t>(p_), std::move(t));
}

Coeff product_rule(int p, int i, int j)
{
    if (i < 0 || j < 0)
        throw ContractViolation("product_rule needs nonnegative degrees");
    if (p == 2)
        return 1;
    return (i % 2 == 1 && j % 2 == 1) ? 0 : 1;
}

PeriodicResolution::PeriodicResolution(const PrimeField& F, int cap) : field_(F), cap_(cap)
{
    if (cap < 0)
        throw ContractViolation("resolution cap must be nonnegative");
}

GroupRingElement PeriodicResolution::boundary_coefficient(int j) const
{
    if (j < 1 || j > cap_)
        throw ContractViolation("boundary coefficient of degree " + std::to_string(j) + " is out of range");
    return j % 2 ? GroupRingElement::t_minus_one(field_) : GroupRingElement::norm(field_);
}

ExactnessReport PeriodicResolution::verify_exactness() const
{
    const auto& F = field_;
    const auto p = static_cast<std::size_t>(F.p());
    ExactnessReport report;
    std::vector<MatrixFp> d(static_cast<std::size_t>(cap_) + 1);
    // d_0 is the augmentation W_0 -> F_p.
    d[0] = MatrixFp::from_dense(F, {std::vector<long long>(p, 1)}, p);
    for (int j = 1; j <= cap_; ++j)
        d[j] = boundary_coefficient(j).regular_matrix();
    for (int j = 1; j <= cap_; ++j)
        if (!multiply(F, d[j - 1], d[j]).is_zero())
            report.squares_to_zero = false;
    for (int j = 0; j < cap_; ++j) {
        const SubspaceFp ker = kernel(F, d[j]);
        const SubspaceFp im = image(F, d[j + 1]);
        if (!(ker == im))
            report.failures.push_back(j);
    }
    return report;
}

std::vector<std::size_t> PeriodicResolution::group_cohomology_dims() const
{
    // Hom_{C_p}(W_j, F_p) = F_p via f -> f(w_j); the coboundary is multiplication
    // by the augmentation of the boundary coefficient.
    std::vector<std::size_t> dims;
    auto coboundary_rank = [&](int j) -> std::size_t {
        if (j < 1 || j > cap_)
            return 0;
        return boundary_coefficient(j).augmentation() ? 1 : 0;
    };
    for (int i = 0; i < cap_; ++i)
        dims.push_back(1 - coboundary_rank(i + 1) - coboundary_rank(i));
    return dims;
}

} // namespace steenrod
