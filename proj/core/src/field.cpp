#include "steenrod/field.hpp"

#include "steenrod/errors.hpp"

#include <string>

namespace steenrod {

bool is_prime(int n) noexcept
{
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(int p) : p_(p)
{
    if (!is_prime(p) || p > kMaxPrime)
        throw ContractViolation("unsupported prime " + std::to_string(p) + " (need a prime 2 <= p <= 13)");
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if ((a * b) % p == 1)
                inverse_[a] = static_cast<Coeff>(b);
}

Coeff PrimeField::inv(Coeff a) const
{
    if (a == 0 || a >= p_)
        throw ContractViolation("inverse of zero in F_" + std::to_string(p_));
    return inverse_[a];
}

} // namespace steenrod
