#pragma once

#include <cstdint>
#include <vector>

#include "ternexp/arith.hpp"

namespace ternexp {

// ax² + bxy + cy²
struct QuadForm {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    auto operator<=>(QuadForm const&) const = default;
};

// Reduced primitive positive definite forms of discriminant -4D, ordered by
// ascending a then ascending b.
std::vector<QuadForm> reduced_forms(std::int64_t D);

// h(-4D)
std::int64_t class_number(std::int64_t D);

struct ClassBoundCertificate {
    std::int64_t D = 0;
    std::int64_t class_number = 0;
    // Proven lower bound for (4/π)·√D·log(2e√D).
    Rational bound_lower;
    bool holds = false;
};

// Decides h(-4D) < (4/π)·√D·log(2e√D). holds is true only when the strict
// inequality is proven by the rational lower bound. Precision is raised until
// the question is settled either way.
ClassBoundCertificate certify_class_bound(std::int64_t D);

bool check_class_bound(std::int64_t D);

} // namespace ternexp
