#include "ternexp/lucas.hpp"

#include <algorithm>
#include <array>

#include "ternexp/errors.hpp"
#include "ternexp/parallel.hpp"

namespace ternexp {

std::variant<LucasParams, std::string> try_make_params(BigInt const& u, BigInt const& v)
{
    BigInt const u2 = u * u;
    BigInt const diff = u2 - v;
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), 4)) return std::string("u^2 - v is not divisible by 4");
    BigInt const w = diff / 4;
    if (u == 0) return std::string("u = 0");
    if (w == 0) return std::string("w = 0");
    if (v == 0) return std::string("v = 0 (alpha = beta)");
    if (gcd(u, w) != 1) return std::string("gcd(u, w) != 1");
    // α/β is a root of unity iff its trace ζ + 1/ζ = u²/w - 2 is an integer in [-2, 2].
    if (mpz_divisible_p(u2.get_mpz_t(), w.get_mpz_t())) {
        BigInt const ratio = u2 / w;
        if (ratio >= 0 && ratio <= 4) return std::string("alpha/beta is a root of unity");
    }
    return LucasParams(u, v, w);
}

LucasParams make_params(BigInt const& u, BigInt const& v)
{
    auto r = try_make_params(u, v);
    if (auto* reason = std::get_if<std::string>(&r))
        throw precondition_error("invalid Lucas parameters (" + u.get_str() + ", " + v.get_str() + "): " + *reason);
    return std::get<LucasParams>(std::move(r));
}

std::vector<BigInt> lucas_sequence(LucasParams const& p, unsigned long count)
{
    std::vector<BigInt> seq;
    seq.reserve(count);
    for (unsigned long i = 0; i < count; ++i) {
        if (i == 0)
            seq.emplace_back(0);
        else if (i == 1)
            seq.emplace_back(1);
        else
            seq.push_back(p.u() * seq[i - 1] - p.w() * seq[i - 2]);
    }
    return seq;
}

BigInt lucas_number(LucasParams const& p, unsigned long n)
{
    return lucas_sequence(p, n + 1).back();
}

namespace {

// The part of |L_n| coprime to v·L_1···L_{n-1}; its primes are exactly the
// primitive divisors. Each earlier factor is stripped separately, so the full
// product is never formed.
BigInt primitive_part(LucasParams const& p, unsigned long n)
{
    if (n < 2) throw precondition_error("primitive divisors need n > 1");
    auto const seq = lucas_sequence(p, n + 1);
    BigInt c = abs(seq[n]);
    auto strip_common = [&c](BigInt const& term) {
        for (BigInt g = gcd(c, term); g != 1 && c != 1; g = gcd(c, term)) c /= g;
    };
    strip_common(p.v());
    for (unsigned long i = 1; i < n && c != 1; ++i) strip_common(seq[i]);
    return c;
}

constexpr std::array<DefectiveEntry, 23> table{{
    {5, 1, 5}, {5, 1, -7}, {5, 2, -40}, {5, 1, -11}, {5, 1, -15}, {5, 12, -76}, {5, 12, -1364},
    {7, 1, -7}, {7, 1, -19},
    {8, 2, -24}, {8, 1, -7},
    {10, 2, -8}, {10, 5, -3}, {10, 5, -47},
    {12, 1, 5}, {12, 1, -7}, {12, 1, -11}, {12, 2, -56}, {12, 1, -15}, {12, 1, -19},
    {13, 1, -7}, {18, 1, -7}, {30, 1, -7},
}};

} // namespace

std::optional<BigInt> primitive_divisor(LucasParams const& p, unsigned long n)
{
    BigInt const c = primitive_part(p, n);
    if (c == 1) return std::nullopt;
    return smallest_prime_factor(c);
}

bool is_defective(LucasParams const& p, unsigned long n)
{
    return primitive_part(p, n) == 1;
}

std::span<DefectiveEntry const> defective_table() { return table; }

std::vector<ParamPair> scan_defective(unsigned n, IntRange u_range, IntRange v_range, unsigned threads)
{
    if (n <= 4 || n == 6) throw precondition_error("scan_defective: n must satisfy n > 4 and n != 6");
    long const u_lo = std::max(1L, u_range.lo);
    if (u_range.hi < u_lo || v_range.hi < v_range.lo) return {};

    auto const rows = parallel_map(static_cast<std::size_t>(u_range.hi - u_lo + 1), threads, [&](std::size_t i) {
        long const u = u_lo + static_cast<long>(i);
        std::vector<ParamPair> row;
        for (long v = v_range.lo; v <= v_range.hi; ++v) {
            auto params = try_make_params(u, v);
            if (auto* lp = std::get_if<LucasParams>(&params); lp && is_defective(*lp, n)) row.push_back({u, v});
        }
        return row;
    });

    std::vector<ParamPair> out;
    for (auto const& row : rows) out.insert(out.end(), row.begin(), row.end());
    return out;
}

} // namespace ternexp
