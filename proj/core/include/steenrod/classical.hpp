#pragma once

// The classical construction of the operations through the p-th tensor power
// of the cochains: theta, the shuffle cross product xi, Steenrod numbers and the
// resulting classes Psi, Phi. Also the reduced power construction on h~.

#include "steenrod/equivariant.hpp"
#include "steenrod/simplicial.hpp"

#include <memory>
#include <vector>

namespace steenrod {

/// A^{(x)p} through degree top, with t(a_1 (x) ... (x) a_p) = (-1)^{|a_p|(|a_1|+...+|a_{p-1}|)} a_p (x) a_1 (x) ... .
///
/// A factor is named by its cell id, the position of a basis element in the list
/// of all basis elements of A ordered by degree.
class TensorPower {
public:
    TensorPower(const ChainComplex& A, int p, int top, std::size_t limit = kDefaultProductLimit);

    const ChainComplex& base() const noexcept { return *A_; }
    int p() const noexcept { return p_; }
    int top() const noexcept { return top_; }
    std::size_t size(int m) const { return tuples_.at(m).size() / static_cast<std::size_t>(p_); }
    std::span<const std::uint32_t> tuple(int m, std::size_t idx) const;
    std::optional<std::size_t> find(int m, std::span<const std::uint32_t> cells) const;

    std::uint32_t cell(int degree, std::size_t index) const
    {
        return static_cast<std::uint32_t>(cell_offset_.at(degree) + index);
    }
    int cell_degree(std::uint32_t c) const { return cell_degree_.at(c); }
    std::size_t cell_index(std::uint32_t c) const { return c - cell_offset_[cell_degree_[c]]; }

    ChainComplex chain_complex() const;
    MatrixFp rotation(int m) const;
    CpComplex cp_complex() const;

private:
    const ChainComplex* A_;
    int p_;
    int top_;
    std::vector<std::size_t> cell_offset_;
    std::vector<int> cell_degree_;
    std::vector<std::vector<std::uint32_t>> tuples_; // sorted, p cells per tuple
};

/// The inclusion A -> B of a summand as the first (or later) block gives
/// P(A) -> P(B) on tensor powers. offsets[k] is the position of A_k inside B_k.
ChainMap tensor_power_map(const PrimeField& F, const TensorPower& source, const TensorPower& target,
                          const std::vector<std::size_t>& offsets);

/// theta of a cocycle f of degree n: one component at resolution degree 0,
/// (a_1 (x) ... (x) a_p) -> (-1)^{n p (p-1)/2} prod f(a_i) on tuples of degree-n cells.
EquivariantCochain theta(const PrimeField& F, const TensorPower& P, int n, const DenseVector& f);

/// One term of the multi-shuffle on cells of degrees d_1..d_p: the degeneracy
/// mask applied to each factor and the sign.
struct ShuffleTerm {
    std::vector<std::uint32_t> masks;
    Coeff sign;
};

/// All ordered partitions of {0..k-1} into S_1..S_p with |S_r| = d_r. Factor r gets the
/// degeneracies indexed by the complement of S_r; the sign is that of the permutation S_1 S_2 ... S_p.
std::vector<ShuffleTerm> shuffle_terms(const PrimeField& F, const std::vector<int>& degrees);

/// xi : C(X)^{(x)p} -> C(X^p) through the smaller of the two tops.
/// P must be the tensor power of X.chain_complex().
ChainMap shuffle_cross(const PrimeField& F, const TensorPower& P, const PowerSpace& power);

/// a_p(n): 1 for p = 2, (-1)^{q n (n+1)/2} (q!)^n for p = 2q + 1.
Coeff steenrod_number(const PrimeField& F, int n);

struct ClassicalResult {
    int n = 0;
    /// Psi as an equivariant cocycle on C(X^p), degree pn.
    EquivariantCochain psi;
    /// Phi(u) = sum e_{pn-i} x phi_i(u).
    KunnethVector phi;
};

/// Computes Psi and Phi for a class u in H^n(X) (coordinates in the Cohomology basis).
/// Builds everything through degree pn + 1; throws TruncationError if that exceeds degree_cap.
ClassicalResult classical_phi(const PrimeField& F, std::shared_ptr<const FiniteSimplicialSet> X, int n,
                              const DenseVector& u, int degree_cap, std::size_t limit = kDefaultProductLimit);

/// phi_{n+k}(u); zero when n + k > pn. Asserts phi_i = 0 for i < n and phi_n = u.
DenseVector classical_sigma(const PrimeField& F, std::shared_ptr<const FiniteSimplicialSet> X, int n,
                            const DenseVector& u, int k, int degree_cap, std::size_t limit = kDefaultProductLimit);

/// Property drivers on abstract complexes (cochains in the given degree).

/// theta(f) and theta(f + dg) define the same class in h^{pn}(A^{(x)p}).
bool theta_representative_independent(const PrimeField& F, const ChainComplex& A, int p, int n, const DenseVector& f,
                                      const DenseVector& g);

/// theta~ of a cocycle of degree n, in h~^{pn}(A^{(x)p}) coordinates.
DenseVector reduced_theta(const PrimeField& F, const ChainComplex& A, int p, int n, const DenseVector& f);

/// theta~(f + g) = theta~(f) + theta~(g).
bool reduced_theta_linear(const PrimeField& F, const ChainComplex& A, int p, int n, const DenseVector& f,
                          const DenseVector& g);

/// The map h~^m((A_1 + ... + A_r)^{(x)p}) -> prod_i h~^m(A_i^{(x)p}) induced by the
/// summand inclusions is an isomorphism for every m <= top - 1.
bool reduced_sum_to_product(const PrimeField& F, const std::vector<ChainComplex>& summands, int p, int top);

/// Direct sum of complexes (blocks in order).
ChainComplex direct_sum(const std::vector<ChainComplex>& summands);

} // namespace steenrod
