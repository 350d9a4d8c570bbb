#pragma once

// Finite simplicial sets given by their nondegenerate simplices ("generators")
// and face data, together with normalized chains, p-fold products with the
// cyclic action, the diagonal and maps induced by simplicial morphisms.
//
// A simplex is s_I sigma with sigma a generator and I a canonical degeneracy
// word. Internally the word is a bitmask of the positions x at which the
// corresponding surjection [m] -> [dim sigma] repeats (eta(x) = eta(x+1));
// for the canonical word s_{i_k} ... s_{i_1} these positions are exactly
// the indices i_1 < ... < i_k.

#include "steenrod/chain_complex.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace steenrod {

using GeneratorId = std::uint32_t;

/// s_{i_k} ... s_{i_1} with i_k > ... > i_1; empty means identity.
struct DegeneracyWord {
    std::vector<int> indices;

    static DegeneracyWord from_mask(std::uint32_t mask);
    /// Throws InvalidInput unless strictly decreasing and nonnegative.
    std::uint32_t mask() const;

    friend bool operator==(const DegeneracyWord&, const DegeneracyWord&) = default;
};

struct SimplexRef {
    GeneratorId generator = 0;
    std::uint32_t degeneracies = 0; // bitmask, see file comment
    int dim = 0;

    DegeneracyWord word() const { return DegeneracyWord::from_mask(degeneracies); }
    bool degenerate() const noexcept { return degeneracies != 0; }

    friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
    friend auto operator<=>(const SimplexRef& a, const SimplexRef& b) noexcept
    {
        if (auto c = a.dim <=> b.dim; c != 0)
            return c;
        if (auto c = a.generator <=> b.generator; c != 0)
            return c;
        return a.degeneracies <=> b.degeneracies;
    }
};

/// One operator in a formal composite d_i / s_i.
struct SimplicialOp {
    enum class Kind { Face, Degeneracy } kind;
    int index;
};

class FiniteSimplicialSet {
public:
    static constexpr int kMaxDim = 30;

    struct Generator {
        std::string name;
        int dim = 0;
        /// d_0 .. d_dim, empty for vertices.
        std::vector<SimplexRef> faces;
    };

    FiniteSimplicialSet() = default;
    /// Face references use positions in `generators`. Generators are reordered
    /// stably by dimension; validation checks shapes and the simplicial identities.
    explicit FiniteSimplicialSet(std::vector<Generator> generators);

    /// Largest generator dimension.
    int cap() const noexcept { return cap_; }
    std::size_t generator_count() const noexcept { return generators_.size(); }
    const Generator& generator(GeneratorId id) const { return generators_.at(id); }
    const std::vector<GeneratorId>& generators_in_dim(int dim) const;
    std::size_t count_in_dim(int dim) const { return generators_in_dim(dim).size(); }
    /// Position of a generator among the generators of its dimension.
    std::size_t basis_index(GeneratorId id) const { return basis_index_.at(id); }
    std::optional<GeneratorId> find(const std::string& name) const;

    SimplexRef nondegenerate(GeneratorId id) const;
    SimplexRef face(const SimplexRef& s, int i) const;
    SimplexRef degeneracy(const SimplexRef& s, int i) const;
    /// Evaluates ops (written outermost first, as in d_0 s_0 sigma) on a generator.
    SimplexRef normalize(GeneratorId id, std::span<const SimplicialOp> ops) const;

    /// Normalized chains through degree `top` (degenerate faces dropped).
    ChainComplex chain_complex(const PrimeField& F, int top) const;

    std::string describe(const SimplexRef& s) const;

private:
    void validate() const;

    std::vector<Generator> generators_;
    std::vector<std::vector<GeneratorId>> by_dim_;
    std::vector<std::size_t> basis_index_;
    std::unordered_map<std::string, GeneratorId> names_;
    int cap_ = -1;
};

/// All simplices (degenerate included) of a simplicial set in degrees 0..max_dim,
/// in canonical order (generator, then degeneracy mask), with face tables.
class SimplexTable {
public:
    SimplexTable() = default;
    SimplexTable(const FiniteSimplicialSet& X, int max_dim);

    int max_dim() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
    std::size_t size(int m) const { return simplices_.at(m).size(); }
    const SimplexRef& simplex(int m, std::size_t idx) const { return simplices_.at(m)[idx]; }
    std::size_t index_of(const SimplexRef& s) const;
    /// Index (in degree m-1) of d_i of simplex idx of degree m.
    std::uint32_t face(int m, std::size_t idx, int i) const { return faces_[m][idx * (m + 1) + i]; }

private:
    std::vector<std::vector<SimplexRef>> simplices_;
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> lookup_;
    std::vector<std::vector<std::uint32_t>> faces_;
};

/// Default limit on the number of nondegenerate simplices per degree of X^p.
inline constexpr std::size_t kDefaultProductLimit = 2'000'000;

/// Reads STEENROD_PRODUCT_LIMIT, falling back to the given default.
std::size_t product_limit_from_env(std::size_t fallback = kDefaultProductLimit);

/// X^p through degree max_dim. A simplex is a p-tuple of m-simplices of X; it is
/// nondegenerate iff no s_i divides every coordinate (the masks have empty intersection).
class PowerSpace {
public:
    PowerSpace(std::shared_ptr<const FiniteSimplicialSet> base, int p, int max_dim,
               std::size_t limit = kDefaultProductLimit);

    const FiniteSimplicialSet& base() const noexcept { return *base_; }
    const SimplexTable& base_table() const noexcept { return table_; }
    int p() const noexcept { return p_; }
    int max_dim() const noexcept { return max_dim_; }
    std::size_t size(int m) const { return tuples_.at(m).size() / static_cast<std::size_t>(p_); }
    /// Coordinates (indices into base_table() degree m).
    std::span<const std::uint32_t> tuple(int m, std::size_t idx) const;
    std::optional<std::size_t> find(int m, std::span<const std::uint32_t> coords) const;

    ChainComplex chain_complex(const PrimeField& F) const;
    /// Matrix of t(x_1, ..., x_p) = (x_p, x_1, ..., x_{p-1}) on normalized m-chains.
    MatrixFp rotation_chain(const PrimeField& F, int m) const;
    CpComplex cp_complex(const PrimeField& F) const;

private:
    std::shared_ptr<const FiniteSimplicialSet> base_;
    SimplexTable table_;
    int p_;
    int max_dim_;
    std::vector<std::vector<std::uint32_t>> tuples_; // flat, p entries per simplex, lexicographic
};

/// sigma -> (sigma, ..., sigma) on normalized chains, degrees 0..power.max_dim().
ChainMap diagonal_chain(const PrimeField& F, const PowerSpace& power);

/// A map of simplicial sets, given by the image of every generator.
class SimplicialMorphism {
public:
    SimplicialMorphism(std::shared_ptr<const FiniteSimplicialSet> source,
                       std::shared_ptr<const FiniteSimplicialSet> target, std::vector<SimplexRef> images);

    const FiniteSimplicialSet& source() const noexcept { return *source_; }
    const FiniteSimplicialSet& target() const noexcept { return *target_; }
    const std::shared_ptr<const FiniteSimplicialSet>& source_ptr() const noexcept { return source_; }
    const std::shared_ptr<const FiniteSimplicialSet>& target_ptr() const noexcept { return target_; }

    SimplexRef apply(const SimplexRef& s) const;
    /// this o first
    SimplicialMorphism after(const SimplicialMorphism& first) const;

    ChainMap induced_chain_map(const PrimeField& F, int top) const;
    /// (a^p)_# : C(X^p) -> C(Y^p) through the smaller of the two built degrees.
    ChainMap cartesian_power(const PrimeField& F, const PowerSpace& source_power,
                             const PowerSpace& target_power) const;

private:
    std::shared_ptr<const FiniteSimplicialSet> source_;
    std::shared_ptr<const FiniteSimplicialSet> target_;
    std::vector<SimplexRef> images_;
};

} // namespace steenrod
