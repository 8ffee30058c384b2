#pragma once

#include <cstdint>

namespace beckdiff {

/* Resource guards for the symbolic engine. Defaults are tuned for desk-scale
 * inputs; the CLI exposes them as --max-degree, --max-terms and --max-homs. */
struct Limits {
    std::uint32_t max_total_degree = 64;   // abort basis computations beyond this degree
    std::size_t max_terms = 100000;        // term-count guard for intermediate polynomials
    std::uint64_t max_homs = 10000000ULL;  // assignment-space bound for hom enumeration
};

}  // namespace beckdiff
