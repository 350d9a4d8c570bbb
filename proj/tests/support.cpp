#include "support.hpp"

namespace steenrod::test {

DenseVector random_vector(const PrimeField& F, std::mt19937& rng, std::size_t dim)
{
    DenseVector v(dim);
    for (auto& c : v)
        c = static_cast<Coeff>(rng() % static_cast<unsigned>(F.p()));
    return v;
}

ChainComplex random_complex(const PrimeField& F, std::mt19937& rng, int support, int top, std::size_t max_dim)
{
    std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 0);
    for (int k = 0; k <= std::min(support, top); ++k)
        dims[k] = 1 + rng() % max_dim;
    std::vector<MatrixFp> d(static_cast<std::size_t>(top) + 1);
    d[0] = MatrixFp(0, dims[0]);
    for (int k = 1; k <= top; ++k) {
        // columns of d_k must lie in ker d_{k-1}
        const SubspaceFp ker = k == 1 ? SubspaceFp::full(dims[0]) : kernel(F, d[k - 1]);
        std::vector<Triplet> t;
        for (std::size_t c = 0; c < dims[k]; ++c)
            for (const auto& v : ker.basis()) {
                const Coeff a = static_cast<Coeff>(rng() % static_cast<unsigned>(F.p()));
                for (const auto& e : v.entries())
                    t.push_back({e.index, static_cast<Index>(c), static_cast<long long>(F.mul(a, e.value))});
            }
        d[k] = MatrixFp::from_triplets(F, dims[k - 1], dims[k], std::move(t));
    }
    return ChainComplex(F, std::move(dims), std::move(d));
}

DenseVector random_cocycle(const PrimeField& F, std::mt19937& rng, const ChainComplex& A, int n)
{
    const Cohomology H(A, n);
    DenseVector f = H.representative(random_vector(F, rng, H.dim()));
    if (n > 0) {
        const DenseVector g = random_vector(F, rng, A.dim(n - 1));
        f = add(F, f, A.boundary(n).apply_transpose(F, g));
    }
    return f;
}

std::vector<DenseVector> all_vectors(const PrimeField& F, std::size_t dim)
{
    std::vector<DenseVector> out{DenseVector(dim, 0)};
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<DenseVector> next;
        for (const auto& v : out)
            for (int a = 0; a < F.p(); ++a) {
                next.push_back(v);
                next.back()[i] = static_cast<Coeff>(a);
            }
        out = std::move(next);
    }
    return out;
}

} // namespace steenrod::test
