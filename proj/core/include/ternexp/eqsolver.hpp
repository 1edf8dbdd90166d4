#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ternexp/arith.hpp"

namespace ternexp {

// (an)^x + (bn)^y = ((a+b)n)^z with min(a, b) > 1, gcd(a, b) = 1, n > 1.
struct EqInstance {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t n = 0;

    static EqInstance make(std::int64_t a, std::int64_t b, std::int64_t n);
};

// (A²n)^x + (B²n)^y = ((A²+B²)n)^z with min(A, B) > 1, gcd(A, B) = 1, AB even, n > 1.
struct SquareEqInstance {
    std::int64_t A = 0;
    std::int64_t B = 0;
    std::int64_t n = 0;
    bool ab_even = true;

    static SquareEqInstance make(std::int64_t A, std::int64_t B, std::int64_t n);
    // Same checks without the parity condition; box scans still apply, the descent does not.
    static SquareEqInstance make_any_parity(std::int64_t A, std::int64_t B, std::int64_t n);
    EqInstance induced() const;
};

struct SolutionTriple {
    unsigned long x = 0;
    unsigned long y = 0;
    unsigned long z = 0;

    auto operator<=>(SolutionTriple const&) const = default;
};

struct SearchBox {
    unsigned long x_max = 6;
    unsigned long y_max = 6;
    unsigned long z_max = 6;
};

bool satisfies(EqInstance const& inst, SolutionTriple const& s);

// Every solution in [1..x_max]×[1..y_max]×[1..z_max], sorted by (z, x, y).
std::vector<SolutionTriple> search(EqInstance const& inst, SearchBox const& box, unsigned threads = 1);

// b = b1·b2 with b1 > 1, gcd(b1, b2) = 1 and b1^y = n^(z-y) (or the a-side analogue).
struct SplitWitness {
    BigInt part;       // b1 (or a1)
    BigInt cofactor;   // b2 (or a2)
};

enum class SolutionClass { trivial, x_gt_z_gt_y, y_gt_z_gt_x, inapplicable, violation };

std::string to_string(SolutionClass c);

struct Classification {
    SolutionClass kind = SolutionClass::trivial;
    std::optional<SplitWitness> witness;
};

// Structure of a solution of the form predicted for min(a, b) >= 4. Throws
// precondition_error when s does not solve inst.
Classification classify(EqInstance const& inst, SolutionTriple const& s);

struct CheckStep {
    std::string name;
    bool ok = false;
    std::string detail;
};

// M + X² = K^Z with M given by its factorization, recast as X² + D·Y² = K^Z
// with D = R(M) and Y = √(M / D).
struct NormReduction {
    BigInt D;
    BigInt X;
    BigInt Y;
    unsigned long Z = 0;
    std::vector<CheckStep> steps;

    bool ok() const;
};

NormReduction reduce_to_norm_form(Factorization const& M, BigInt const& X, BigInt const& K, unsigned long Z);

struct XzyReduction {
    BigInt B1;
    BigInt B2;
    NormReduction norm;
    std::vector<CheckStep> steps;  // split, exponent relation, D bounds

    bool ok() const;
};

// Follows a solution with x > z > y from the split B = B1·B2 through the norm
// form X² + D·Y² = (A²+B²)^z and the bound D <= A²·B1². The exponent relation
// is taken as B1^(2y) = n^(z-y). Throws precondition_error unless s solves the
// instance with x > z > y.
XzyReduction reduce_case_xzy(SquareEqInstance const& inst, SolutionTriple const& s);

struct ChainLink {
    std::string name;
    bool ok = false;
    std::string lhs;   // exact rationals / integers as strings
    std::string rhs;
};

struct ChainReport {
    std::int64_t A = 0, B = 0, B1 = 0, n = 0;
    std::vector<ChainLink> links;  // the five refutation links then the final ordering

    bool passed() const;
};

// Requires A > 8B³, 1 <= B1 <= B and n > 1. Proves
// (24/π)·A·B1·log(2e·A·B1) < 8·A·B·log(A²n) with exact arithmetic.
ChainReport inequality_chain(std::int64_t A, std::int64_t B, std::int64_t B1, std::int64_t n);

struct BoxReport {
    SquareEqInstance instance;
    SearchBox box;
    std::vector<SolutionTriple> solutions;
    std::vector<SolutionTriple> counterexamples;

    bool passed() const { return counterexamples.empty(); }
};

// Requires A > 8B³; accepts odd AB as a plain box scan. Counterexamples are solutions with x > z > y.
BoxReport verify_no_xzy_solutions(SquareEqInstance const& inst, SearchBox const& box, unsigned threads = 1);

// Requires A > 8B³ and B ≡ 2 (mod 4). Counterexamples are solutions other than (1,1,1).
BoxReport verify_only_trivial_solution(SquareEqInstance const& inst, SearchBox const& box, unsigned threads = 1);

} // namespace ternexp
