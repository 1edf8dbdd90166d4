#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ternexp {

using BigInt = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    BigInt prime;
    unsigned long exponent = 0;

    bool operator==(PrimePower const&) const = default;
};

// Canonical factorization: primes strictly increasing, exponents >= 1,
// empty iff value == 1.
struct Factorization {
    BigInt value{1};
    std::vector<PrimePower> factors;

    // Product of prime^exponent over factors; equals value for anything
    // returned by factorize().
    BigInt product() const;
};

Factorization factorize(BigInt const& m);

// r(m): product of the distinct primes of m.
BigInt radical(BigInt const& m);
BigInt radical(Factorization const& f);

// R(m): each prime kept with exponent 2 when its multiplicity is even and 1
// when odd, so that m / R(m) is a perfect square.
BigInt square_kernel(BigInt const& m);
BigInt square_kernel(Factorization const& f);

// Membership in S(m) = {±∏ p_i^s_i}: every prime of |candidate| divides m.
bool in_s_set(BigInt const& candidate, BigInt const& m);

std::optional<BigInt> is_perfect_square(BigInt const& m);

// e with base^e == value, by repeated exact division.
std::optional<unsigned long> exact_power_of(BigInt const& value, BigInt const& base);

bool is_prime(BigInt const& m);
BigInt smallest_prime_factor(BigInt const& m);

BigInt pow(BigInt const& base, unsigned long exponent);
Rational pow(Rational const& base, unsigned long exponent);

// Exact ordering of c1·log(m1) against c2·log(m2), c > 0, m >= 2. Decided by
// integer power comparisons m1^Q vs m2^P only (no floating point), walking the
// continued fraction of log(m1)/log(m2) until it separates from c2/c1.
std::strong_ordering cmp_scaled_log(Rational const& c1, BigInt const& m1,
                                    Rational const& c2, BigInt const& m2);

// Same comparison with rational arguments m1, m2 > 1.
std::strong_ordering cmp_scaled_log(Rational const& c1, Rational const& m1,
                                    Rational const& c2, Rational const& m2);

// Rational enclosures for the transcendental constants. Any inequality that
// involves them is evaluated at the end of the interval that makes it hardest.
Rational pi_lower();
Rational pi_upper();
Rational e_lower();
Rational e_upper();

struct LogBounds {
    Rational lower;
    Rational upper;
};

// Certified bounds lower <= log(x) <= upper for rational x > 0, from the
// atanh series truncated after `terms` terms.
LogBounds log_bounds(Rational const& x, unsigned terms);

// Largest rational with denominator 2^bits that does not exceed sqrt(x).
Rational sqrt_lower(BigInt const& x, unsigned bits);

std::string to_string(Rational const& q);

} // namespace ternexp
