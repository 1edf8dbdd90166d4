#include "ternexp/quadforms.hpp"

#include <numeric>

#include "ternexp/errors.hpp"

namespace ternexp {

std::vector<QuadForm> reduced_forms(std::int64_t D)
{
    if (D < 1) throw precondition_error("reduced_forms: D must be positive");
    std::vector<QuadForm> forms;
    // a <= c and b² - 4ac = -4D give 3a² <= 4D.
    for (std::int64_t a = 1; 3 * a * a <= 4 * D; ++a) {
        // b² ≡ -4D (mod 4) forces b even.
        std::int64_t const b_start = -a + 1 + ((-a + 1) % 2 != 0 ? 1 : 0);
        for (std::int64_t b = b_start; b <= a; b += 2) {
            std::int64_t const num = b * b + 4 * D;
            if (num % (4 * a) != 0) continue;
            std::int64_t const c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            forms.push_back({a, b, c});
        }
    }
    return forms;
}

std::int64_t class_number(std::int64_t D)
{
    return static_cast<std::int64_t>(reduced_forms(D).size());
}

ClassBoundCertificate certify_class_bound(std::int64_t D)
{
    ClassBoundCertificate cert;
    cert.D = D;
    cert.class_number = class_number(D);

    // (4/π)·√D·log(2e√D) = (4/π)·√D·(1 + log(4D)/2), since log e = 1.
    BigInt const four_d = BigInt(4) * D;
    for (unsigned terms = 24, bits = 32; terms <= 3072; terms *= 2, bits *= 2) {
        LogBounds const lg = log_bounds(Rational(four_d), terms);
        Rational const root_lo = sqrt_lower(BigInt(D), bits);
        Rational const root_hi = root_lo + Rational(1, BigInt(1) << bits);
        Rational const lower = 4 / pi_upper() * root_lo * (1 + lg.lower / 2);
        Rational const upper = 4 / pi_lower() * root_hi * (1 + lg.upper / 2);
        cert.bound_lower = lower;
        if (cert.class_number < lower) {
            cert.holds = true;
            return cert;
        }
        if (cert.class_number >= upper) {
            cert.holds = false;
            return cert;
        }
    }
    throw std::runtime_error("certify_class_bound: undecided at maximum precision for D = " + std::to_string(D));
}

bool check_class_bound(std::int64_t D) { return certify_class_bound(D).holds; }

} // namespace ternexp
