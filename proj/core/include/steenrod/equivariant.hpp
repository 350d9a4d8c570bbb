#pragma once

// Equivariant cohomology h^m_{C_p}(A) of a C_p-chain complex A, computed from
// the total complex Hom_{C_p}(W (x) A, F_p) over the periodic resolution W.
//
// A cochain of total degree m is a family f_0, ..., f_m with f_j a functional
// on A_{m-j} (f_j(a) = f(w_j (x) a)). The coboundary is
//   (df)_j(a) = T_j(a) + (-1)^j f_j(da),
//   T_j(a) = f_{j-1}(t^{-1} a) - f_{j-1}(a)          (j odd)
//   T_j(a) = sum_k f_{j-1}(t^{-k} a)                  (j even, j > 0)
// and T_0 = 0.

#include "steenrod/chain_complex.hpp"

#include <optional>
#include <vector>

namespace steenrod {

struct EquivariantCochain {
    int degree = 0;
    /// components[j] is a functional on A_{degree - j}.
    std::vector<DenseVector> components;
};

/// Sum of e_{m-i} x v_i; v[i] are coordinates in the Cohomology basis of H^i.
struct KunnethVector {
    int degree = 0;
    std::vector<DenseVector> v;

    friend bool operator==(const KunnethVector&, const KunnethVector&) = default;
};

/// Layout and coboundary of the total complex.
class TotalComplex {
public:
    TotalComplex() = default;
    explicit TotalComplex(const CpComplex& A);

    const CpComplex& base() const noexcept { return *A_; }
    const PrimeField& field() const noexcept { return A_->field(); }

    /// Cochains of total degree m need A through degree m.
    std::size_t dim(int m) const;
    std::size_t offset(int m, int j) const;

    /// delta(e^*) for every basis functional of degree m, as sparse vectors of degree m+1.
    /// Needs A through degree m+1.
    std::vector<SparseVector> coboundary_columns(int m) const;
    /// The same as a dim(m+1) x dim(m) matrix.
    MatrixFp coboundary_matrix(int m) const;

    SparseVector flatten(const EquivariantCochain& c) const;
    EquivariantCochain split(int m, const SparseVector& v) const;
    EquivariantCochain zero(int m) const;

private:
    const CpComplex* A_ = nullptr;
    std::vector<MatrixFp> twist_odd_;  // t^{-1} - 1
    std::vector<MatrixFp> twist_even_; // N
};

/// Basis of h^m_{C_p}(A) with cocycle representatives from the clearing reduction.
class EquivariantCohomology {
public:
    EquivariantCohomology() = default;
    /// Throws TruncationError unless A is built through degree m + 1. Keeps a reference to A.
    EquivariantCohomology(const CpComplex& A, int m);

    int degree() const noexcept { return degree_; }
    std::size_t dim() const noexcept { return basis_.cohomology_dim(); }
    const TotalComplex& total() const noexcept { return total_; }

    EquivariantCochain representative(std::size_t i) const;
    /// sum_i coords[i] representative(i)
    EquivariantCochain combination(std::span<const Coeff> coords) const;
    /// Class coordinates, or nullopt when c is not a cocycle.
    std::optional<DenseVector> coordinates(const EquivariantCochain& c) const;
    bool is_cocycle(const EquivariantCochain& c) const { return coordinates(c).has_value(); }

private:
    int degree_ = 0;
    TotalComplex total_;
    CocycleBasis basis_;
};

/// (f^* phi)_j = phi_j o f_{m-j} for a chain map f : A -> B.
EquivariantCochain pullback(const PrimeField& F, const ChainMap& f, const EquivariantCochain& phi);

/// Matrix (dim hA x dim hB) of h^m(f) : h^m(B) -> h^m(A). With check = true the map
/// must commute with boundaries and the action (ContractViolation otherwise).
MatrixFp induced_map(const ChainMap& f, const CpComplex& A, const CpComplex& B, const EquivariantCohomology& hA,
                     const EquivariantCohomology& hB, bool check = true);

/// e_j x upsilon for a cochain upsilon of degree i on a trivially acted complex.
EquivariantCochain cross_product(const ChainComplex& A, int j, int i, const DenseVector& upsilon);

/// Kunneth coordinates on h^m of a trivially acted complex: H^0 .. H^m of A.
class KunnethLayout {
public:
    KunnethLayout() = default;
    /// Needs A through degree m + 1.
    KunnethLayout(const ChainComplex& A, int m);

    int degree() const noexcept { return degree_; }
    const Cohomology& cohomology(int i) const { return H_.at(static_cast<std::size_t>(i)); }
    /// Offset of block i in flat coordinates; blocks ordered by i.
    std::size_t offset(int i) const { return offsets_.at(static_cast<std::size_t>(i)); }
    std::size_t dim() const noexcept { return offsets_.back(); }

    /// v_i = class of f_{m-i}. Throws InvariantViolation if a component is not a cocycle.
    KunnethVector extract(const EquivariantCochain& c) const;
    EquivariantCochain assemble(const KunnethVector& w) const;
    DenseVector flatten(const KunnethVector& w) const;
    KunnethVector unflatten(std::span<const Coeff> flat) const;
    KunnethVector zero() const;

private:
    const ChainComplex* A_ = nullptr;
    int degree_ = 0;
    std::vector<Cohomology> H_;
    std::vector<std::size_t> offsets_;
};

/// Transfer of a cocycle upsilon of degree m: f_0 = upsilon o N, other components zero.
EquivariantCochain transfer(const PrimeField& F, const CpComplex& A, int m, const DenseVector& upsilon);

/// h~^m = coker(transfer : H^m(A) -> h^m_{C_p}(A)).
class ReducedCohomology {
public:
    ReducedCohomology() = default;
    /// Needs A through degree m + 1. Keeps a reference to A.
    ReducedCohomology(const CpComplex& A, int m);

    const EquivariantCohomology& equivariant() const noexcept { return h_; }
    std::size_t dim() const noexcept { return quotient_.dim(); }
    /// Dimension of the transfer image in h^m.
    std::size_t transfer_rank() const noexcept { return quotient_.sub().dim(); }
    /// h~ coordinates of an h coordinate vector.
    DenseVector project(std::span<const Coeff> h_coords) const;
    /// h coordinates of the i-th complement basis vector.
    DenseVector lift(std::size_t i) const;

private:
    EquivariantCohomology h_;
    QuotientSpace quotient_;
};

/// Map h~^m(B) -> h~^m(A) induced by h^m(f) (given as the induced_map matrix).
MatrixFp reduced_induced_map(const PrimeField& F, const MatrixFp& h_map, const ReducedCohomology& rA,
                             const ReducedCohomology& rB);

/// A (x) F_p[C_p] with t acting on the group factor; basis (a, g) at position a * p + g.
CpComplex free_cp_complex(const ChainComplex& A);

} // namespace steenrod
