#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ternexp/arith.hpp"

namespace ternexp {

// D, k > 1 with gcd(2D, k) = 1, for X² + D·Y² = k^Z.
class NormContext {
public:
    static NormContext make(std::int64_t D, std::int64_t k);

    std::int64_t D() const { return D_; }
    std::int64_t k() const { return k_; }
    Factorization const& k_factors() const { return k_factors_; }

private:
    NormContext(std::int64_t D, std::int64_t k);

    std::int64_t D_;
    std::int64_t k_;
    Factorization k_factors_;
};

struct NormSolution {
    BigInt X;
    BigInt Y;
    unsigned long Z = 0;

    bool operator==(NormSolution const&) const = default;
};

// p + q·√-D
struct QuadRingElem {
    BigInt p;
    BigInt q;

    bool operator==(QuadRingElem const&) const = default;
};

QuadRingElem multiply(QuadRingElem const& x, QuadRingElem const& y, std::int64_t D);
QuadRingElem power(QuadRingElem const& x, unsigned long exponent, std::int64_t D);
BigInt norm(QuadRingElem const& x, std::int64_t D);

// X + Y√-D = λ1·(X1 + λ2·Y1·√-D)^t with Z = Z1·t.
struct DescentRep {
    BigInt X1;
    BigInt Y1;
    unsigned long Z1 = 0;
    unsigned long t = 0;
    int lambda1 = 1;
    int lambda2 = 1;

    bool operator==(DescentRep const&) const = default;
};

// True when (X, Y, Z) solves X² + D·Y² = k^Z with gcd(X, Y) = 1 and Z > 0.
bool is_norm_solution(NormContext const& ctx, NormSolution const& s);

// Primitive solutions with X, Y >= 0 at exactly level Z, ascending Y.
std::vector<NormSolution> solve_norm_level(NormContext const& ctx, unsigned long Z);

// All primitive solutions with 1 <= Z <= z_max and X, Y >= 0, ascending (Z, Y).
std::vector<NormSolution> solve_norm_equation(NormContext const& ctx, unsigned long z_max, unsigned threads = 1);

// Canonical representation: smallest Z1, then ascending Y1 among the
// fundamental solutions, then (λ1, λ2) in the order (+,+), (+,-), (-,+), (-,-).
// Throws verification_failure when no representation exists.
DescentRep decompose(NormContext const& ctx, NormSolution const& s);
DescentRep decompose(NormContext const& ctx, NormSolution const& s, std::int64_t class_num);

// Evaluates λ1·(X1 + λ2·Y1·√-D)^t.
QuadRingElem expand(DescentRep const& rep, std::int64_t D);

enum class LinkStatus { holds, fails, inapplicable };

std::string to_string(LinkStatus s);

// |Y| = Y1·|L_t| for the Lucas pair with parameters (2·X1, -4·D·Y1²).
LinkStatus lucas_link(NormContext const& ctx, DescentRep const& rep, NormSolution const& s);

struct ExponentBoundItem {
    NormSolution solution;
    std::optional<DescentRep> rep;
    std::string failure;             // non-empty when decomposition failed
    std::optional<BigInt> lucas_t;   // |L_t| for the pair (2·X1, -4·D·Y1²)
    LinkStatus link = LinkStatus::inapplicable;
    std::optional<bool> t_defective; // set for t > 1; must be true
    bool exceptional = false;        // (D, k, X1, Y1, Z1, t) is (6,7,1,1,1,8) or (14,15,1,1,1,12)
    bool within_bound = false;       // Z <= 6·h(-4D)
    bool violation = false;
};

struct ExponentBoundReport {
    std::int64_t D = 0;
    std::int64_t k = 0;
    std::int64_t class_num = 0;
    unsigned long bound = 0;         // 6·h(-4D)
    unsigned long z_max = 0;
    std::size_t solutions_scanned = 0;
    std::vector<ExponentBoundItem> items;  // solutions with Y in S(D), ascending (Z, Y)

    bool passed() const;
};

// Requires D > 2. Checks every solution with Y in S(D) and Z <= z_max against
// Z <= 6·h(-4D), along with the decomposition, the Lucas link and the t bound.
ExponentBoundReport verify_exponent_bound(NormContext const& ctx, unsigned long z_max, unsigned threads = 1);

} // namespace ternexp
