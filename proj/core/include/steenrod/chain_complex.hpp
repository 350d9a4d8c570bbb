#pragma once

#include "steenrod/linalg.hpp"

#include <optional>
#include <vector>

namespace steenrod {

/// A chain complex over F_p built in degrees 0..top.
///
/// boundary(k) is the matrix of d_k : C_k -> C_{k-1} (rows index C_{k-1}).
/// Degrees above top are not known; asking for them is a TruncationError.
class ChainComplex {
public:
    ChainComplex() : field_(2) {}
    /// boundaries[k] is d_k for 1 <= k <= top; boundaries[0] is ignored.
    ChainComplex(PrimeField F, std::vector<std::size_t> dims, std::vector<MatrixFp> boundaries);

    const PrimeField& field() const noexcept { return field_; }
    int top() const noexcept { return static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int k) const;
    const MatrixFp& boundary(int k) const;
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    /// Every d_{k-1} d_k vanishes.
    bool boundary_squares_to_zero() const;

    /// Same complex with everything above `top` dropped.
    ChainComplex truncated(int top) const;

private:
    PrimeField field_;
    std::vector<std::size_t> dims_;
    std::vector<MatrixFp> boundaries_;
};

/// A chain complex with an action of the cyclic group C_p, given by the
/// generator t in each degree (t^p = id, t commutes with d).
class CpComplex {
public:
    CpComplex() = default;
    CpComplex(ChainComplex complex, std::vector<MatrixFp> action);

    /// Trivial action.
    static CpComplex trivial(ChainComplex complex);

    const ChainComplex& complex() const noexcept { return complex_; }
    const PrimeField& field() const noexcept { return complex_.field(); }
    int top() const noexcept { return complex_.top(); }
    std::size_t dim(int k) const { return complex_.dim(k); }
    const MatrixFp& boundary(int k) const { return complex_.boundary(k); }
    const MatrixFp& action(int k) const;
    bool trivial_action() const noexcept { return trivial_; }

    /// t^p = id in every degree.
    bool action_has_order_p() const;
    /// t d = d t in every degree.
    bool action_commutes_with_boundary() const;

private:
    ChainComplex complex_;
    std::vector<MatrixFp> action_;
    bool trivial_ = false;
};

/// Degreewise matrices F_k : A_k -> B_k (rows index B_k).
struct ChainMap {
    std::vector<MatrixFp> components;

    int top() const noexcept { return static_cast<int>(components.size()) - 1; }
    const MatrixFp& operator[](int k) const { return components.at(static_cast<std::size_t>(k)); }
};

/// d_B F_k = F_{k-1} d_A for 1 <= k <= min(tops).
bool commutes_with_boundary(const ChainMap& f, const ChainComplex& source, const ChainComplex& target);
/// t_B F = F t_A in every degree of f.
bool commutes_with_action(const ChainMap& f, const CpComplex& source, const CpComplex& target);

ChainMap compose(const PrimeField& F, const ChainMap& second, const ChainMap& first);
ChainMap linear_combination(const PrimeField& F, const std::vector<std::pair<Coeff, const ChainMap*>>& terms);

/// H^n of a complex, Z^n / B^n with a fixed rref complement basis.
class Cohomology {
public:
    Cohomology() : field_(2) {}
    /// Requires the complex through degree n + 1.
    Cohomology(const ChainComplex& complex, int n);

    int degree() const noexcept { return degree_; }
    std::size_t dim() const noexcept { return quotient_.dim(); }
    std::size_t cochain_dim() const noexcept { return cochain_dim_; }
    const std::vector<SparseVector>& representatives() const noexcept { return quotient_.representatives(); }
    const SubspaceFp& cocycles() const noexcept { return quotient_.whole(); }
    const SubspaceFp& coboundaries() const noexcept { return quotient_.sub(); }

    /// Coordinates of the class of a cocycle; nullopt when it is not a cocycle.
    std::optional<DenseVector> coordinates(std::span<const Coeff> cochain) const;
    /// The cocycle sum_i coords[i] * representative_i.
    DenseVector representative(std::span<const Coeff> coords) const;

private:
    PrimeField field_;
    int degree_ = 0;
    std::size_t cochain_dim_ = 0;
    QuotientSpace quotient_;
};

} // namespace steenrod
