#include "ternexp/arith.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "ternexp/errors.hpp"

namespace ternexp {

namespace {

// Past this bound the remaining cofactor is split by Pollard–Brent instead of
// trial division.
constexpr unsigned long trial_limit = 1UL << 20;

void require_positive(BigInt const& m, char const* what)
{
    if (m < 1) throw precondition_error(std::string(what) + ": argument must be positive");
}

unsigned long strip(BigInt& n, BigInt const& p)
{
    unsigned long e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

BigInt pollard_brent(BigInt const& n)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::mt19937_64 rng(0x5eed);
    for (;;) {
        BigInt const c = BigInt(static_cast<unsigned long>(rng() % 1000 + 1));
        BigInt y = BigInt(static_cast<unsigned long>(rng() % 1000 + 2));
        BigInt x, ys, g = 1, q = 1;
        unsigned long r = 1;
        constexpr unsigned long batch = 128;
        auto step = [&](BigInt& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
                    step(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                step(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(BigInt n, std::vector<PrimePower>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    BigInt const d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<PrimePower> merge_factors(std::vector<PrimePower> raw)
{
    std::sort(raw.begin(), raw.end(), [](auto const& l, auto const& r) { return l.prime < r.prime; });
    std::vector<PrimePower> merged;
    for (auto& pp : raw) {
        if (!merged.empty() && merged.back().prime == pp.prime)
            merged.back().exponent += pp.exponent;
        else
            merged.push_back(std::move(pp));
    }
    return merged;
}

// Continued-fraction term streams. An absent term stands for +infinity, i.e.
// the expansion has ended.
using cf_term = std::optional<BigInt>;

class rational_cf {
public:
    explicit rational_cf(Rational const& r) : num_(r.get_num()), den_(r.get_den()) {}

    cf_term next()
    {
        if (den_ == 0) return std::nullopt;
        BigInt a;
        mpz_fdiv_q(a.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        BigInt const rem = num_ - a * den_;
        num_ = den_;
        den_ = rem;
        return a;
    }

private:
    BigInt num_, den_;
};

// Terms of log(x)/log(y) for rationals x, y > 1, by integer powers only.
class log_ratio_cf {
public:
    log_ratio_cf(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)) {}

    cf_term next()
    {
        if (done_) return std::nullopt;
        check_size(x_);
        check_size(y_);
        // k = max{k : y^k <= x}, found by doubling then greedy descent.
        std::vector<Rational> squares{y_};
        while (squares.back() * squares.back() <= x_) squares.push_back(squares.back() * squares.back());
        Rational acc = 1;
        BigInt k = 0;
        if (squares.front() <= x_) {
            for (std::size_t i = squares.size(); i-- > 0;) {
                if (acc * squares[i] <= x_) {
                    acc *= squares[i];
                    k += BigInt(1) << static_cast<mp_bitcnt_t>(i);
                }
            }
        }
        Rational const rest = x_ / acc;
        if (rest == 1) {
            done_ = true;
        } else {
            x_ = y_;
            y_ = rest;
        }
        return k;
    }

private:
    static void check_size(Rational const& q)
    {
        constexpr std::size_t limit_bits = std::size_t{1} << 24;
        if (mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2) > limit_bits)
            throw std::runtime_error("cmp_scaled_log: operands too close to separate within size limit");
    }

    Rational x_, y_;
    bool done_ = false;
};

// Orders log(x)/log(y) against r > 0.
std::strong_ordering cmp_log_ratio(Rational const& x, Rational const& y, Rational const& r)
{
    log_ratio_cf theta(x, y);
    rational_cf target(r);
    for (std::size_t i = 0;; ++i) {
        cf_term const t = theta.next();
        cf_term const s = target.next();
        if (!t && !s) return std::strong_ordering::equal;
        if (t && s && *t == *s) continue;
        bool const theta_term_larger = !t || (s && *t > *s);
        // The value increases with even-indexed terms and decreases with odd ones.
        bool const theta_greater = theta_term_larger != (i % 2 == 1);
        return theta_greater ? std::strong_ordering::greater : std::strong_ordering::less;
    }
}

Rational series_atanh2(Rational const& z, unsigned terms)
{
    // 2·sum_{j<terms} z^(2j+1)/(2j+1)
    Rational sum = 0;
    Rational power = z;
    Rational const z2 = z * z;
    for (unsigned j = 0; j < terms; ++j) {
        sum += power / (2 * j + 1);
        power *= z2;
    }
    return 2 * sum;
}

Rational series_tail(Rational const& z, unsigned terms)
{
    Rational const z2 = z * z;
    return 2 * pow(z, 2 * terms + 1) / (Rational(2 * terms + 1) * (1 - z2));
}

} // namespace

BigInt Factorization::product() const
{
    BigInt p = 1;
    for (auto const& [prime, exponent] : factors) p *= pow(prime, exponent);
    return p;
}

Factorization factorize(BigInt const& m)
{
    require_positive(m, "factorize");
    Factorization f;
    f.value = m;
    BigInt n = m;
    std::vector<PrimePower> raw;

    auto try_prime = [&](unsigned long p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            BigInt const bp = p;
            raw.push_back({bp, strip(n, bp)});
        }
    };
    try_prime(2);
    try_prime(3);
    try_prime(5);
    // Wheel mod 30 starting at 7.
    static constexpr unsigned long gaps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    unsigned long p = 7;
    for (std::size_t i = 0; p <= trial_limit && BigInt(p) * p <= n; p += gaps[i++ % 8]) try_prime(p);

    if (n > 1) {
        if (BigInt(p) * p > n)
            raw.push_back({n, 1});
        else
            factor_into(n, raw);
    }
    f.factors = merge_factors(std::move(raw));
    return f;
}

BigInt radical(Factorization const& f)
{
    BigInt r = 1;
    for (auto const& pp : f.factors) r *= pp.prime;
    return r;
}

BigInt radical(BigInt const& m) { return radical(factorize(m)); }

BigInt square_kernel(Factorization const& f)
{
    BigInt r = 1;
    for (auto const& pp : f.factors) r *= pp.exponent % 2 == 0 ? pp.prime * pp.prime : pp.prime;
    return r;
}

BigInt square_kernel(BigInt const& m) { return square_kernel(factorize(m)); }

bool in_s_set(BigInt const& candidate, BigInt const& m)
{
    if (candidate == 0) throw precondition_error("in_s_set: candidate must be nonzero");
    require_positive(m, "in_s_set");
    BigInt c = abs(candidate);
    for (;;) {
        BigInt const g = gcd(c, m);
        if (g == 1) break;
        c /= g;
    }
    return c == 1;
}

std::optional<BigInt> is_perfect_square(BigInt const& m)
{
    if (m < 0) return std::nullopt;
    if (!mpz_perfect_square_p(m.get_mpz_t())) return std::nullopt;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::optional<unsigned long> exact_power_of(BigInt const& value, BigInt const& base)
{
    if (value < 1 || base < 2) return std::nullopt;
    BigInt v = value;
    unsigned long const e = strip(v, base);
    if (v != 1) return std::nullopt;
    return e;
}

bool is_prime(BigInt const& m)
{
    if (m < 2) return false;
    // BPSW plus Miller–Rabin rounds; deterministic below 2^64.
    return mpz_probab_prime_p(m.get_mpz_t(), 30) > 0;
}

BigInt smallest_prime_factor(BigInt const& m)
{
    if (m < 2) throw precondition_error("smallest_prime_factor: argument must be >= 2");
    return factorize(m).factors.front().prime;
}

BigInt pow(BigInt const& base, unsigned long exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational pow(Rational const& base, unsigned long exponent)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    r.canonicalize();
    return r;
}

std::strong_ordering cmp_scaled_log(Rational const& c1, Rational const& m1,
                                    Rational const& c2, Rational const& m2)
{
    if (c1 <= 0 || c2 <= 0) throw precondition_error("cmp_scaled_log: coefficients must be positive");
    if (m1 <= 1 || m2 <= 1) throw precondition_error("cmp_scaled_log: arguments must exceed 1");
    // c1·log m1 <=> c2·log m2  iff  log m1 / log m2 <=> c2 / c1
    return cmp_log_ratio(m1, m2, c2 / c1);
}

std::strong_ordering cmp_scaled_log(Rational const& c1, BigInt const& m1,
                                    Rational const& c2, BigInt const& m2)
{
    if (m1 < 2 || m2 < 2) throw precondition_error("cmp_scaled_log: integer arguments must be >= 2");
    return cmp_scaled_log(c1, Rational(m1), c2, Rational(m2));
}

Rational pi_lower() { return Rational(BigInt("314159265358979"), BigInt("100000000000000")); }
Rational pi_upper() { return Rational(BigInt("314159265358980"), BigInt("100000000000000")); }
Rational e_lower() { return Rational(BigInt("271828182845904"), BigInt("100000000000000")); }
Rational e_upper() { return Rational(BigInt("271828182845905"), BigInt("100000000000000")); }

LogBounds log_bounds(Rational const& x, unsigned terms)
{
    if (x <= 0) throw precondition_error("log_bounds: argument must be positive");
    if (x == 1) return {0, 0};
    if (x < 1) {
        auto const inv = log_bounds(1 / x, terms);
        return {-inv.upper, -inv.lower};
    }
    // x = 2^k · y with 1 <= y < 2
    long k = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    Rational y = x;
    auto scale = [&](long shift) {
        if (shift > 0)
            mpz_mul_2exp(y.get_den_mpz_t(), y.get_den_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        else if (shift < 0)
            mpz_mul_2exp(y.get_num_mpz_t(), y.get_num_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        y.canonicalize();
    };
    scale(k);
    while (y >= 2) { scale(1); ++k; }
    while (y < 1) { scale(-1); --k; }

    Rational const z_two(1, 3);
    Rational const z_y = (y - 1) / (y + 1);
    Rational const log2_lo = series_atanh2(z_two, terms);
    Rational const log2_hi = log2_lo + series_tail(z_two, terms);
    Rational const logy_lo = series_atanh2(z_y, terms);
    Rational const logy_hi = logy_lo + series_tail(z_y, terms);
    return {k * log2_lo + logy_lo, k * log2_hi + logy_hi};
}

Rational sqrt_lower(BigInt const& x, unsigned bits)
{
    if (x < 0) throw precondition_error("sqrt_lower: argument must be nonnegative");
    BigInt scaled = x << (2 * bits);
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational q(root, BigInt(1) << bits);
    q.canonicalize();
    return q;
}

std::string to_string(Rational const& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace ternexp
