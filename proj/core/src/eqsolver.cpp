#include "ternexp/eqsolver.hpp"

#include <algorithm>
#include <numeric>

#include "ternexp/errors.hpp"
#include "ternexp/parallel.hpp"

namespace ternexp {

EqInstance EqInstance::make(std::int64_t a, std::int64_t b, std::int64_t n)
{
    if (std::min(a, b) <= 1) throw precondition_error("instance needs min(a, b) > 1");
    if (std::gcd(a, b) != 1) throw precondition_error("instance needs gcd(a, b) = 1");
    if (n <= 1) throw precondition_error("instance needs n > 1");
    return {a, b, n};
}

SquareEqInstance SquareEqInstance::make_any_parity(std::int64_t A, std::int64_t B, std::int64_t n)
{
    if (std::min(A, B) <= 1) throw precondition_error("instance needs min(A, B) > 1");
    if (std::gcd(A, B) != 1) throw precondition_error("instance needs gcd(A, B) = 1");
    if (n <= 1) throw precondition_error("instance needs n > 1");
    if (A > 3037000499 || B > 3037000499) throw precondition_error("instance: A and B must stay below 2^31.5");
    return {A, B, n, (A % 2 == 0) || (B % 2 == 0)};
}

SquareEqInstance SquareEqInstance::make(std::int64_t A, std::int64_t B, std::int64_t n)
{
    auto const inst = make_any_parity(A, B, n);
    if (!inst.ab_even) throw precondition_error("instance needs AB even");
    return inst;
}

EqInstance SquareEqInstance::induced() const { return EqInstance::make(A * A, B * B, n); }

bool satisfies(EqInstance const& inst, SolutionTriple const& s)
{
    if (s.x == 0 || s.y == 0 || s.z == 0) return false;
    BigInt const n = inst.n;
    BigInt const an = inst.a * n, bn = inst.b * n, cn = (inst.a + inst.b) * n;
    return pow(an, s.x) + pow(bn, s.y) == pow(cn, s.z);
}

std::vector<SolutionTriple> search(EqInstance const& inst, SearchBox const& box, unsigned threads)
{
    if (box.x_max < 1 || box.y_max < 1 || box.z_max < 1) throw precondition_error("search: box bounds must be >= 1");
    BigInt const an = BigInt(inst.a) * inst.n;
    BigInt const bn = BigInt(inst.b) * inst.n;
    BigInt const cn = BigInt(inst.a + inst.b) * inst.n;

    auto const per_z = parallel_map(box.z_max, threads, [&](std::size_t i) {
        unsigned long const z = i + 1;
        BigInt const target = pow(cn, z);
        std::vector<SolutionTriple> found;
        BigInt left = an;
        for (unsigned long x = 1; x <= box.x_max && left < target; ++x, left *= an) {
            auto const y = exact_power_of(target - left, bn);
            if (y && *y >= 1 && *y <= box.y_max) found.push_back({x, *y, z});
        }
        return found;
    });

    std::vector<SolutionTriple> out;
    for (auto const& level : per_z) out.insert(out.end(), level.begin(), level.end());
    return out;
}

std::string to_string(SolutionClass c)
{
    switch (c) {
    case SolutionClass::trivial: return "trivial";
    case SolutionClass::x_gt_z_gt_y: return "x>z>y";
    case SolutionClass::y_gt_z_gt_x: return "y>z>x";
    case SolutionClass::inapplicable: return "inapplicable";
    case SolutionClass::violation: return "violation";
    }
    return "unknown";
}

namespace {

// Largest unitary divisor of m supported on the primes of n.
BigInt part_supported_on(BigInt const& m, Factorization const& n_factors)
{
    BigInt part = 1;
    for (auto const& pp : n_factors.factors) {
        BigInt rest = m;
        while (mpz_divisible_p(rest.get_mpz_t(), pp.prime.get_mpz_t())) {
            rest /= pp.prime;
            part *= pp.prime;
        }
    }
    return part;
}

std::optional<SplitWitness> split(BigInt const& m, BigInt const& n, Factorization const& n_factors,
                                  unsigned long small_exp, unsigned long gap)
{
    BigInt const part = part_supported_on(m, n_factors);
    if (part <= 1) return std::nullopt;
    if (pow(part, small_exp) != pow(n, gap)) return std::nullopt;
    BigInt const cofactor = m / part;
    if (gcd(part, cofactor) != 1) return std::nullopt;
    return SplitWitness{part, cofactor};
}

CheckStep step(std::string name, bool ok, std::string detail = {})
{
    return {std::move(name), ok, std::move(detail)};
}

} // namespace

Classification classify(EqInstance const& inst, SolutionTriple const& s)
{
    if (!satisfies(inst, s)) throw precondition_error("classify: triple does not solve the equation");
    if (s == SolutionTriple{1, 1, 1}) return {SolutionClass::trivial, std::nullopt};
    if (std::min(inst.a, inst.b) < 4) return {SolutionClass::inapplicable, std::nullopt};

    BigInt const n = inst.n;
    Factorization const nf = factorize(n);
    if (s.x > s.z && s.z > s.y) {
        if (auto w = split(BigInt(inst.b), n, nf, s.y, s.z - s.y)) return {SolutionClass::x_gt_z_gt_y, w};
    } else if (s.y > s.z && s.z > s.x) {
        if (auto w = split(BigInt(inst.a), n, nf, s.x, s.z - s.x)) return {SolutionClass::y_gt_z_gt_x, w};
    }
    return {SolutionClass::violation, std::nullopt};
}

bool NormReduction::ok() const
{
    return std::all_of(steps.begin(), steps.end(), [](auto const& s) { return s.ok; });
}

bool XzyReduction::ok() const
{
    return norm.ok() && std::all_of(steps.begin(), steps.end(), [](auto const& s) { return s.ok; });
}

NormReduction reduce_to_norm_form(Factorization const& M, BigInt const& X, BigInt const& K, unsigned long Z)
{
    NormReduction r;
    r.D = square_kernel(M);
    r.X = X;
    r.Z = Z;
    BigInt const quotient = M.value / r.D;
    auto const root = is_perfect_square(quotient);
    r.steps.push_back(step("M/R(M) is a square", root.has_value() && quotient * r.D == M.value));
    r.Y = root.value_or(BigInt(0));
    r.steps.push_back(step("X^2 + D*Y^2 = K^Z", X * X + r.D * r.Y * r.Y == pow(K, Z),
                           "D=" + r.D.get_str() + " Y=" + r.Y.get_str()));
    r.steps.push_back(step("gcd(X, Y) = 1", gcd(X, r.Y) == 1));
    r.steps.push_back(step("Y in S(D)", r.Y != 0 && in_s_set(r.Y, r.D)));
    return r;
}

XzyReduction reduce_case_xzy(SquareEqInstance const& inst, SolutionTriple const& s)
{
    EqInstance const eq = inst.induced();
    if (!satisfies(eq, s)) throw precondition_error("reduce_case_xzy: triple does not solve the equation");
    if (!(s.x > s.z && s.z > s.y)) throw precondition_error("reduce_case_xzy: requires x > z > y");
    if (!inst.ab_even) throw precondition_error("reduce_case_xzy: requires AB even");

    XzyReduction r;
    BigInt const A = inst.A, B = inst.B, n = inst.n;
    Factorization const nf = factorize(n);
    r.B1 = part_supported_on(B, nf);
    r.B2 = B / r.B1;
    r.steps.push_back(step("B = B1*B2, B1 > 1, gcd(B1, B2) = 1", r.B1 > 1 && gcd(r.B1, r.B2) == 1,
                           "B1=" + r.B1.get_str() + " B2=" + r.B2.get_str()));
    r.steps.push_back(step("B1^(2y) = n^(z-y)", pow(r.B1, 2 * s.y) == pow(n, s.z - s.y)));

    BigInt const K = A * A + B * B;
    BigInt const a_part = pow(A, 2 * s.x);
    BigInt const n_part = pow(n, s.x - s.z);
    BigInt const X = pow(r.B2, s.y);
    r.steps.push_back(step("A^(2x)*n^(x-z) + B2^(2y) = (A^2+B^2)^z", a_part * n_part + X * X == pow(K, s.z)));

    // Factorization of A^(2x)·n^(x-z) from those of A and n.
    std::vector<PrimePower> merged;
    for (auto const& pp : factorize(A).factors) merged.push_back({pp.prime, pp.exponent * 2 * s.x});
    for (auto const& pp : nf.factors) merged.push_back({pp.prime, pp.exponent * (s.x - s.z)});
    std::sort(merged.begin(), merged.end(), [](auto const& l, auto const& r) { return l.prime < r.prime; });
    Factorization M;
    M.value = a_part * n_part;
    for (auto& pp : merged) {
        if (!M.factors.empty() && M.factors.back().prime == pp.prime)
            M.factors.back().exponent += pp.exponent;
        else
            M.factors.push_back(pp);
    }

    r.norm = reduce_to_norm_form(M, X, K, s.z);
    BigInt const& D = r.norm.D;
    r.steps.push_back(step("D = R(A^(2x))*R(n^(x-z))", D == square_kernel(a_part) * square_kernel(n_part)));
    r.steps.push_back(step("D > 2", D > 2, "D=" + D.get_str()));
    r.steps.push_back(step("gcd(2D, A^2+B^2) = 1", gcd(2 * D, K) == 1));
    r.steps.push_back(step("D <= A^2*B1^2", D <= A * A * r.B1 * r.B1));
    return r;
}

bool ChainReport::passed() const
{
    return !links.empty() && std::all_of(links.begin(), links.end(), [](auto const& l) { return l.ok; });
}

ChainReport inequality_chain(std::int64_t A, std::int64_t B, std::int64_t B1, std::int64_t n)
{
    if (A <= 0 || B <= 0 || B1 <= 0) throw precondition_error("chain: A, B, B1 must be positive");
    BigInt const a = A, b = B, b1 = B1, nn = n;
    BigInt const b_cubed_8 = 8 * b * b * b;
    if (!(a > b_cubed_8)) throw precondition_error("chain: requires A > 8B^3");
    if (B1 > B) throw precondition_error("chain: requires B1 <= B");
    if (n <= 1) throw precondition_error("chain: requires n > 1");

    ChainReport rep{A, B, B1, n, {}};
    auto push = [&rep](std::string name, bool ok, std::string lhs, std::string rhs) {
        rep.links.push_back({std::move(name), ok, std::move(lhs), std::move(rhs)});
    };

    // 24/π is largest at the lower end of the π enclosure; 2e at the upper end of e's.
    Rational const coeff_pi = Rational(24) / pi_lower();
    push("24/pi < 8", coeff_pi < 8, to_string(coeff_pi), "8");
    push("A*B1 <= A*B", a * b1 <= a * b, BigInt(a * b1).get_str(), BigInt(a * b).get_str());
    Rational const two_e_ab1 = 2 * e_upper() * Rational(a * b1);
    Rational const eight_ab3 = Rational(a * b_cubed_8);
    push("2e*A*B1 < 8*A*B^3", two_e_ab1 < eight_ab3, to_string(two_e_ab1), to_string(eight_ab3));
    push("8*A*B^3 < A^2", a * b_cubed_8 < a * a, BigInt(a * b_cubed_8).get_str(), BigInt(a * a).get_str());
    push("A^2 < A^2*n", a * a < a * a * nn, BigInt(a * a).get_str(), BigInt(a * a * nn).get_str());

    Rational const c_left = coeff_pi * Rational(a * b1);
    Rational const c_right = Rational(8 * a * b);
    BigInt const m_right = a * a * nn;
    bool const final_ok = cmp_scaled_log(c_left, two_e_ab1, c_right, Rational(m_right)) < 0;
    push("(24/pi)*A*B1*log(2e*A*B1) < 8*A*B*log(A^2*n)", final_ok,
         to_string(c_left) + "*log(" + to_string(two_e_ab1) + ")",
         to_string(c_right) + "*log(" + m_right.get_str() + ")");
    return rep;
}

BoxReport verify_no_xzy_solutions(SquareEqInstance const& inst, SearchBox const& box, unsigned threads)
{
    if (!(BigInt(inst.A) > 8 * pow(BigInt(inst.B), 3))) throw precondition_error("verify-theorem: requires A > 8B^3");
    BoxReport rep{inst, box, search(inst.induced(), box, threads), {}};
    for (auto const& s : rep.solutions)
        if (s.x > s.z && s.z > s.y) rep.counterexamples.push_back(s);
    return rep;
}

BoxReport verify_only_trivial_solution(SquareEqInstance const& inst, SearchBox const& box, unsigned threads)
{
    if (!(BigInt(inst.A) > 8 * pow(BigInt(inst.B), 3)))
        throw precondition_error("verify-corollary: requires A > 8B^3");
    if (inst.B % 4 != 2) throw precondition_error("verify-corollary: requires B = 2 (mod 4)");
    BoxReport rep{inst, box, search(inst.induced(), box, threads), {}};
    for (auto const& s : rep.solutions)
        if (s != SolutionTriple{1, 1, 1}) rep.counterexamples.push_back(s);
    return rep;
}

} // namespace ternexp
