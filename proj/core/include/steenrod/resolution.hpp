#pragma once

// The minimal periodic free resolution W of F_p over F_p[C_p]:
//   d w_{2i+1} = (t - 1) w_{2i},   d w_{2i+2} = N w_{2i+1},   eps(w_0) = 1,
// with N = 1 + t + ... + t^{p-1}. The class e_i in H^i(C_p) is the dual of w_i.

#include "steenrod/linalg.hpp"

#include <vector>

namespace steenrod {

/// sum_k coeffs[k] t^k in F_p[C_p].
class GroupRingElement {
public:
    explicit GroupRingElement(const PrimeField& F);
    GroupRingElement(const PrimeField& F, std::vector<Coeff> coeffs);

    static GroupRingElement one(const PrimeField& F);
    static GroupRingElement generator(const PrimeField& F);
    /// N = 1 + t + ... + t^{p-1}
    static GroupRingElement norm(const PrimeField& F);
    static GroupRingElement t_minus_one(const PrimeField& F);

    const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
    Coeff operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    bool is_zero() const noexcept;
    /// Sum of the coefficients.
    Coeff augmentation() const noexcept;

    GroupRingElement operator+(const GroupRingElement& other) const;
    GroupRingElement operator*(const GroupRingElement& other) const;

    /// Matrix of left multiplication on the regular representation, basis 1, t, ..., t^{p-1}.
    MatrixFp regular_matrix() const;

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) noexcept
    {
        return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
    }

private:
    int p_;
    std::vector<Coeff> coeffs_;
};

/// c_p(i, j) with e_i e_j = c_p(i, j) e_{i+j}: 1 unless p is odd and i, j are both odd.
Coeff product_rule(int p, int i, int j);

struct ExactnessReport {
    bool squares_to_zero = true;
    /// Degrees j in [0, J) where ker d_j != im d_{j+1} (d_0 is the augmentation).
    std::vector<int> failures;

    bool ok() const noexcept { return squares_to_zero && failures.empty(); }
};

class PeriodicResolution {
public:
    PeriodicResolution(const PrimeField& F, int cap);

    const PrimeField& field() const noexcept { return field_; }
    int cap() const noexcept { return cap_; }

    /// (t - 1) for odd j, N for even j > 0. Requires 1 <= j <= cap.
    GroupRingElement boundary_coefficient(int j) const;

    /// Exactness of 0 <- F_p <- W_0 <- ... <- W_cap checked over the regular representation.
    ExactnessReport verify_exactness() const;

    /// Dimensions of H^i(Hom_{C_p}(W, F_p)) for 0 <= i < cap.
    std::vector<std::size_t> group_cohomology_dims() const;

private:
    PrimeField field_;
    int cap_;
};

} // namespace steenrod
