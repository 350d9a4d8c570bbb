#pragma once

// Exact sparse linear algebra over F_p.
//
// Vectors are sparse (sorted index/value pairs) or dense byte arrays; matrices
// are row-major lists of sparse rows. Every elimination pivots on the first
// nonzero column in order, so all echelon bases are reproducible.

#include "steenrod/field.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace steenrod {

using Index = std::uint32_t;
using DenseVector = std::vector<Coeff>;

struct Entry {
    Index index;
    Coeff value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

class SparseVector {
public:
    SparseVector() = default;
    /// Entries must be strictly increasing in index with nonzero values.
    explicit SparseVector(std::vector<Entry> entries);

    static SparseVector from_dense(std::span<const Coeff> dense);
    static SparseVector unit(Index i, Coeff value = 1) { return SparseVector({Entry{i, value}}); }

    DenseVector to_dense(std::size_t dim) const;

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    Coeff at(Index i) const noexcept;
    /// Largest index with a nonzero entry. Vector must be nonempty.
    Index last_index() const;
    Index first_index() const;

    void scale(const PrimeField& F, Coeff a);

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<Entry> entries_;
};

/// y + a * x
SparseVector axpy(const PrimeField& F, Coeff a, const SparseVector& x, const SparseVector& y);

struct Triplet {
    Index row;
    Index col;
    long long value;
};

class MatrixFp {
public:
    MatrixFp() = default;
    MatrixFp(std::size_t rows, std::size_t cols);

    static MatrixFp identity(std::size_t n);
    /// Duplicate (row, col) pairs are summed mod p; zero sums are dropped.
    static MatrixFp from_triplets(const PrimeField& F, std::size_t rows, std::size_t cols,
                                  std::vector<Triplet> triplets);
    static MatrixFp from_dense(const PrimeField& F, const std::vector<std::vector<long long>>& rows,
                               std::size_t cols);
    static MatrixFp from_rows(std::size_t cols, std::vector<SparseVector> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const SparseVector& row(std::size_t r) const { return data_[r]; }
    const std::vector<SparseVector>& row_data() const noexcept { return data_; }
    void set_row(std::size_t r, SparseVector v);
    Coeff at(std::size_t r, std::size_t c) const;
    std::size_t nonzeros() const noexcept;
    bool is_zero() const noexcept { return nonzeros() == 0; }

    MatrixFp transpose() const;
    /// M x
    DenseVector apply(const PrimeField& F, std::span<const Coeff> x) const;
    /// M^T y, i.e. the pullback y o M of a functional y on the target.
    DenseVector apply_transpose(const PrimeField& F, std::span<const Coeff> y) const;
    std::vector<std::vector<Coeff>> to_dense() const;

    friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVector> data_;
};

MatrixFp multiply(const PrimeField& F, const MatrixFp& a, const MatrixFp& b);
/// a + scale * b
MatrixFp add(const PrimeField& F, const MatrixFp& a, const MatrixFp& b, Coeff scale = 1);

struct RrefResult {
    MatrixFp reduced;
    std::vector<Index> pivots;
    /// Invertible rows x rows matrix with transform * M = reduced.
    MatrixFp transform;
};

RrefResult rref(const PrimeField& F, const MatrixFp& m);
std::size_t rank(const PrimeField& F, const MatrixFp& m);

/// A linear subspace of F_p^n held as a basis in reduced row-echelon form.
class SubspaceFp {
public:
    SubspaceFp() = default;
    explicit SubspaceFp(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static SubspaceFp span(const PrimeField& F, std::size_t ambient_dim, std::span<const SparseVector> vectors);
    static SubspaceFp full(std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<SparseVector>& basis() const noexcept { return basis_; }
    const std::vector<Index>& pivots() const noexcept { return pivots_; }

    /// Remainder of v after clearing every pivot column.
    SparseVector reduce(const PrimeField& F, const SparseVector& v) const;
    bool contains(const PrimeField& F, const SparseVector& v) const;
    /// Coefficients of v in basis(), or nullopt when v is not in the subspace.
    std::optional<DenseVector> coordinates(const PrimeField& F, const SparseVector& v) const;

    friend bool operator==(const SubspaceFp&, const SubspaceFp&) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<SparseVector> basis_;
    std::vector<Index> pivots_;
};

/// Null space {x : M x = 0} inside F_p^cols.
SubspaceFp kernel(const PrimeField& F, const MatrixFp& m);
/// Column space inside F_p^rows.
SubspaceFp image(const PrimeField& F, const MatrixFp& m);
/// Some x with M x = b (free variables zero after rref), or nullopt.
std::optional<DenseVector> solve(const PrimeField& F, const MatrixFp& m, std::span<const Coeff> b);

SubspaceFp subspace_sum(const PrimeField& F, const SubspaceFp& s, const SubspaceFp& t);
/// True when t is a subspace of s.
bool subspace_contains(const PrimeField& F, const SubspaceFp& s, const SubspaceFp& t);

/// S / T for T inside S, with a fixed complement basis: the rows of S reduced by T, re-echelonized.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(const PrimeField& F, SubspaceFp whole, SubspaceFp sub);

    std::size_t dim() const noexcept { return complement_.dim(); }
    const SubspaceFp& whole() const noexcept { return whole_; }
    const SubspaceFp& sub() const noexcept { return sub_; }
    /// Representatives of the quotient basis.
    const std::vector<SparseVector>& representatives() const noexcept { return complement_.basis(); }
    /// Coordinates of the coset of v, or nullopt when v is not in the whole space.
    std::optional<DenseVector> coordinates(const PrimeField& F, const SparseVector& v) const;

private:
    SubspaceFp whole_;
    SubspaceFp sub_;
    SubspaceFp complement_;
};

/// Cocycles of one degree of a cochain complex, found by column reduction with clearing.
///
/// `lower` lists delta(e_i^*) for the basis of the previous degree; `upper` lists
/// delta(e_i^*) for the basis of this degree. Coboundaries come from the nonzero
/// reduced columns of `lower`; their pivots mark columns of `upper` that are known
/// to reduce to zero and are skipped. The remaining zero columns give one
/// essential cocycle each; these represent a basis of cohomology.
class CocycleBasis {
public:
    CocycleBasis() = default;

    static CocycleBasis compute(const PrimeField& F, std::size_t dim, std::span<const SparseVector> lower,
                                std::span<const SparseVector> upper);

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t cohomology_dim() const noexcept { return essential_.size(); }
    std::size_t coboundary_dim() const noexcept { return boundaries_.size(); }
    const std::vector<SparseVector>& representatives() const noexcept { return essential_; }

    /// Class of a cochain in the representative basis; nullopt if it is not a cocycle.
    std::optional<DenseVector> class_coordinates(const PrimeField& F, const SparseVector& cochain) const;

private:
    std::size_t dim_ = 0;
    std::vector<SparseVector> boundaries_;
    std::vector<SparseVector> essential_;
    // pivot index -> (is_essential, position)
    std::vector<std::int32_t> pivot_owner_;
};

/// Dense helpers.
bool is_zero(std::span<const Coeff> v) noexcept;
DenseVector add(const PrimeField& F, std::span<const Coeff> a, std::span<const Coeff> b, Coeff scale = 1);

} // namespace steenrod
