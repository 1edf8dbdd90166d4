#include "ternexp/descent.hpp"

#include <algorithm>
#include <numeric>

#include "ternexp/errors.hpp"
#include "ternexp/lucas.hpp"
#include "ternexp/parallel.hpp"
#include "ternexp/quadforms.hpp"

namespace ternexp {

NormContext::NormContext(std::int64_t D, std::int64_t k) : D_(D), k_(k), k_factors_(factorize(BigInt(k))) {}

NormContext NormContext::make(std::int64_t D, std::int64_t k)
{
    if (D <= 1 || k <= 1) throw precondition_error("norm equation needs D > 1 and k > 1");
    if (std::gcd(2 * D, k) != 1) throw precondition_error("norm equation needs gcd(2D, k) = 1");
    return NormContext(D, k);
}

QuadRingElem multiply(QuadRingElem const& x, QuadRingElem const& y, std::int64_t D)
{
    return {x.p * y.p - D * (x.q * y.q), x.p * y.q + y.p * x.q};
}

QuadRingElem power(QuadRingElem const& x, unsigned long exponent, std::int64_t D)
{
    QuadRingElem result{1, 0};
    QuadRingElem base = x;
    for (; exponent != 0; exponent >>= 1) {
        if (exponent & 1) result = multiply(result, base, D);
        if (exponent > 1) base = multiply(base, base, D);
    }
    return result;
}

BigInt norm(QuadRingElem const& x, std::int64_t D) { return x.p * x.p + D * (x.q * x.q); }

bool is_norm_solution(NormContext const& ctx, NormSolution const& s)
{
    if (s.Z == 0) return false;
    if (gcd(s.X, s.Y) != 1) return false;
    return s.X * s.X + ctx.D() * (s.Y * s.Y) == pow(BigInt(ctx.k()), s.Z);
}

namespace {

BigInt mod(BigInt const& a, BigInt const& m)
{
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt inverse(BigInt const& a, BigInt const& m)
{
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("inverse: not invertible");
    return r;
}

// Square root of a modulo an odd prime p, or none when a is a non-residue.
std::optional<BigInt> sqrt_mod_prime(BigInt const& a_in, BigInt const& p)
{
    BigInt const a = mod(a_in, p);
    if (a == 0) return BigInt(0);
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;

    // Tonelli–Shanks with p - 1 = q·2^s.
    BigInt q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    BigInt z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

    auto powm = [&p](BigInt const& b, BigInt const& e) {
        BigInt r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    BigInt c = powm(z, q);
    BigInt x = powm(a, (q + 1) / 2);
    BigInt t = powm(a, q);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        for (BigInt tt = t; tt != 1; tt = tt * tt % p) ++i;
        BigInt b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

// Roots of r² ≡ -D (mod k^Z), by Hensel lifting at each prime of k and CRT.
std::vector<BigInt> roots_of_minus_d(NormContext const& ctx, unsigned long Z)
{
    BigInt const minus_d = -BigInt(ctx.D());
    std::vector<BigInt> roots{0};
    BigInt modulus = 1;
    for (auto const& [p, e] : ctx.k_factors().factors) {
        BigInt const pe = pow(p, e * Z);
        auto r0 = sqrt_mod_prime(minus_d, p);
        if (!r0) return {};
        BigInt r = *r0;
        // Newton: r <- r - (r² + D)/(2r); p is odd and coprime to D, so 2r is a unit.
        while (mod(r * r - minus_d, pe) != 0) r = mod(r - (r * r - minus_d) * inverse(2 * r, pe), pe);

        std::vector<BigInt> combined;
        BigInt const new_modulus = modulus * pe;
        BigInt const m_inv = inverse(modulus, pe);
        for (auto const& prev : roots) {
            for (BigInt const& local : {r, BigInt(pe - r)}) {
                // x ≡ prev (mod modulus), x ≡ local (mod pe)
                BigInt const x = prev + modulus * mod((local - prev) * m_inv, pe);
                combined.push_back(mod(x, new_modulus));
            }
        }
        roots = std::move(combined);
        modulus = new_modulus;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace

std::vector<NormSolution> solve_norm_level(NormContext const& ctx, unsigned long Z)
{
    if (Z == 0) throw precondition_error("solve_norm_level: Z must be positive");
    BigInt const N = pow(BigInt(ctx.k()), Z);
    std::vector<NormSolution> found;
    // Every primitive solution has X ≡ r·Y (mod N) for a root r of r² ≡ -D, and
    // Cornacchia's reduction of (N, r) recovers X as the first remainder below √N.
    for (BigInt const& root : roots_of_minus_d(ctx, Z)) {
        BigInt a = N;
        BigInt b = root;
        while (b * b >= N) {
            BigInt const r = a % b;
            a = b;
            b = r;
        }
        BigInt const rest = N - b * b;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(ctx.D()))) continue;
        auto const y = is_perfect_square(rest / ctx.D());
        if (!y || *y == 0 || gcd(b, *y) != 1) continue;
        found.push_back({b, *y, Z});
    }
    std::sort(found.begin(), found.end(), [](auto const& l, auto const& r) { return l.Y < r.Y; });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<NormSolution> solve_norm_equation(NormContext const& ctx, unsigned long z_max, unsigned threads)
{
    if (z_max < 1) throw precondition_error("solve_norm_equation: z_max must be >= 1");
    auto const levels =
        parallel_map(z_max, threads, [&](std::size_t i) { return solve_norm_level(ctx, i + 1); });
    std::vector<NormSolution> out;
    for (auto const& level : levels) out.insert(out.end(), level.begin(), level.end());
    return out;
}

QuadRingElem expand(DescentRep const& rep, std::int64_t D)
{
    QuadRingElem const base{rep.X1, rep.lambda2 * rep.Y1};
    QuadRingElem r = power(base, rep.t, D);
    if (rep.lambda1 < 0) {
        r.p = -r.p;
        r.q = -r.q;
    }
    return r;
}

DescentRep decompose(NormContext const& ctx, NormSolution const& s, std::int64_t class_num)
{
    if (!is_norm_solution(ctx, s)) throw precondition_error("decompose: not a solution of X^2 + D Y^2 = k^Z");
    QuadRingElem const target{s.X, s.Y};
    static constexpr int signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (unsigned long z1 = 1; z1 <= s.Z; ++z1) {
        if (s.Z % z1 != 0 || class_num % static_cast<std::int64_t>(z1) != 0) continue;
        unsigned long const t = s.Z / z1;
        for (auto const& fund : solve_norm_level(ctx, z1)) {
            if (fund.X == 0 || fund.Y == 0) continue;
            for (auto const& [l1, l2] : signs) {
                DescentRep const rep{fund.X, fund.Y, z1, t, l1, l2};
                if (expand(rep, ctx.D()) == target) return rep;
            }
        }
    }
    throw verification_failure("decompose: no representation found for (" + s.X.get_str() + ", " + s.Y.get_str() +
                               ", " + std::to_string(s.Z) + ") with D = " + std::to_string(ctx.D()) +
                               ", k = " + std::to_string(ctx.k()));
}

DescentRep decompose(NormContext const& ctx, NormSolution const& s)
{
    return decompose(ctx, s, class_number(ctx.D()));
}

std::string to_string(LinkStatus s)
{
    switch (s) {
    case LinkStatus::holds: return "holds";
    case LinkStatus::fails: return "fails";
    case LinkStatus::inapplicable: return "inapplicable";
    }
    return "unknown";
}

LinkStatus lucas_link(NormContext const& ctx, DescentRep const& rep, NormSolution const& s)
{
    auto params = try_make_params(2 * rep.X1, -4 * BigInt(ctx.D()) * rep.Y1 * rep.Y1);
    auto const* lp = std::get_if<LucasParams>(&params);
    if (lp == nullptr) return LinkStatus::inapplicable;
    BigInt const lt = abs(lucas_number(*lp, rep.t));
    return abs(s.Y) == rep.Y1 * lt ? LinkStatus::holds : LinkStatus::fails;
}

bool ExponentBoundReport::passed() const
{
    return std::none_of(items.begin(), items.end(), [](auto const& it) { return it.violation; });
}

ExponentBoundReport verify_exponent_bound(NormContext const& ctx, unsigned long z_max, unsigned threads)
{
    if (ctx.D() <= 2) throw precondition_error("verify_exponent_bound: requires D > 2");
    ExponentBoundReport report;
    report.D = ctx.D();
    report.k = ctx.k();
    report.class_num = class_number(ctx.D());
    report.bound = 6 * static_cast<unsigned long>(report.class_num);
    report.z_max = z_max;

    auto const solutions = solve_norm_equation(ctx, z_max, threads);
    report.solutions_scanned = solutions.size();
    BigInt const d_big = ctx.D();

    std::vector<NormSolution> qualifying;
    for (auto const& s : solutions)
        if (s.Y != 0 && in_s_set(s.Y, d_big)) qualifying.push_back(s);

    report.items = parallel_map(qualifying.size(), threads, [&](std::size_t i) {
        ExponentBoundItem item;
        item.solution = qualifying[i];
        auto const& s = item.solution;
        item.within_bound = s.Z <= report.bound;
        try {
            item.rep = decompose(ctx, s, report.class_num);
        } catch (verification_failure const& e) {
            item.failure = e.what();
            item.violation = true;
            return item;
        }
        auto const& rep = *item.rep;
        item.link = lucas_link(ctx, rep, s);
        auto params = try_make_params(2 * rep.X1, -4 * d_big * rep.Y1 * rep.Y1);
        if (auto const* lp = std::get_if<LucasParams>(&params)) {
            item.lucas_t = abs(lucas_number(*lp, rep.t));
            if (rep.t > 1) item.t_defective = is_defective(*lp, rep.t);
        }
        item.exceptional = rep.X1 == 1 && rep.Y1 == 1 && rep.Z1 == 1 &&
                           ((ctx.D() == 6 && ctx.k() == 7 && rep.t == 8) ||
                            (ctx.D() == 14 && ctx.k() == 15 && rep.t == 12));
        bool const t_ok = rep.t <= 6 || item.exceptional;
        item.violation = !item.within_bound || item.link != LinkStatus::holds ||
                         (item.t_defective && !*item.t_defective) || !t_ok;
        return item;
    });
    return report;
}

} // namespace ternexp
