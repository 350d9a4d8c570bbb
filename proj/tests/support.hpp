#pragma once

#include "steenrod/chain_complex.hpp"
#include "steenrod/spaces.hpp"

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace steenrod::test {

inline std::shared_ptr<const FiniteSimplicialSet> share(FiniteSimplicialSet X)
{
    return std::make_shared<const FiniteSimplicialSet>(std::move(X));
}

inline std::filesystem::path data_dir()
{
    return std::filesystem::path(STEENROD_TEST_DATA);
}

/// Random complex with d d = 0: dims drawn from [0, max_dim] in degrees
/// 0..support, zero above, built through `top`. Each d_k is a random
/// combination of kernel vectors of d_{k-1}.
ChainComplex random_complex(const PrimeField& F, std::mt19937& rng, int support, int top, std::size_t max_dim = 3);

DenseVector random_vector(const PrimeField& F, std::mt19937& rng, std::size_t dim);

/// A random cocycle of degree n (a combination of cohomology and coboundary pieces).
DenseVector random_cocycle(const PrimeField& F, std::mt19937& rng, const ChainComplex& A, int n);

/// All vectors of F_p^dim, for brute-force checks on tiny spaces.
std::vector<DenseVector> all_vectors(const PrimeField& F, std::size_t dim);

} // namespace steenrod::test
