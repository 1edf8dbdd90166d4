#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ternexp/arith.hpp"

namespace ternexp {

// Parameters (u, v) of a Lucas pair α, β = (u ± √v)/2, with w = αβ.
// Only obtainable through make_params, so every instance is a valid,
// non-degenerate pair.
class LucasParams {
public:
    BigInt const& u() const { return u_; }
    BigInt const& v() const { return v_; }
    BigInt const& w() const { return w_; }

    friend std::variant<LucasParams, std::string> try_make_params(BigInt const& u, BigInt const& v);

private:
    LucasParams(BigInt u, BigInt v, BigInt w) : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)) {}

    BigInt u_, v_, w_;
};

// Returns the params or the reason they are rejected.
std::variant<LucasParams, std::string> try_make_params(BigInt const& u, BigInt const& v);

// Throws precondition_error with the rejection reason.
LucasParams make_params(BigInt const& u, BigInt const& v);

// L_0 .. L_count-1 by L_n = u·L_{n-1} - w·L_{n-2}.
std::vector<BigInt> lucas_sequence(LucasParams const& p, unsigned long count);

BigInt lucas_number(LucasParams const& p, unsigned long n);

// Smallest prime p with p | L_n and p ∤ v·L_1···L_{n-1}; n > 1.
std::optional<BigInt> primitive_divisor(LucasParams const& p, unsigned long n);

// L_n has no primitive divisor; n > 1.
bool is_defective(LucasParams const& p, unsigned long n);

struct DefectiveEntry {
    unsigned n;
    long u;
    long v;

    auto operator<=>(DefectiveEntry const&) const = default;
};

// Every n-defective pair with 4 < n <= 30, n != 6, up to equivalence.
std::span<DefectiveEntry const> defective_table();

struct IntRange {
    long lo;
    long hi;
};

struct ParamPair {
    long u;
    long v;

    auto operator<=>(ParamPair const&) const = default;
};

// All valid n-defective (u, v) in the box with u >= 1, in (u, v) order.
// Requires n > 4 and n != 6.
std::vector<ParamPair> scan_defective(unsigned n, IntRange u_range, IntRange v_range, unsigned threads = 1);

} // namespace ternexp
