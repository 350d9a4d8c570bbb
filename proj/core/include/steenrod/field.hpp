#pragma once

#include <array>
#include <cstdint>

namespace steenrod {

using Coeff = std::uint8_t;

bool is_prime(int n) noexcept;

/// The prime field F_p, 2 <= p <= 13. Residues are stored in a byte.
class PrimeField {
public:
    static constexpr int kMaxPrime = 13;

    explicit PrimeField(int p);

    int p() const noexcept { return p_; }

    Coeff add(Coeff a, Coeff b) const noexcept
    {
        const int s = a + b;
        return static_cast<Coeff>(s >= p_ ? s - p_ : s);
    }
    Coeff sub(Coeff a, Coeff b) const noexcept
    {
        const int s = a - b;
        return static_cast<Coeff>(s < 0 ? s + p_ : s);
    }
    Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : static_cast<Coeff>(p_ - a); }
    Coeff mul(Coeff a, Coeff b) const noexcept { return static_cast<Coeff>((a * b) % p_); }
    Coeff inv(Coeff a) const;
    Coeff div(Coeff a, Coeff b) const { return mul(a, inv(b)); }

    Coeff from_int(long long v) const noexcept
    {
        const long long r = v % p_;
        return static_cast<Coeff>(r < 0 ? r + p_ : r);
    }

    /// (-1)^e
    Coeff sign(long long e) const noexcept { return (e & 1) ? static_cast<Coeff>(p_ - 1) : Coeff{1}; }

    /// Integer in (-p/2, p/2] for display.
    int centered(Coeff a) const noexcept { return 2 * a > p_ ? a - p_ : a; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

private:
    int p_;
    std::array<Coeff, kMaxPrime> inverse_{};
};

} // namespace steenrod
