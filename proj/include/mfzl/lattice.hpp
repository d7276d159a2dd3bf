#pragma once

// Integral LLL reduction and integer-relation search on approximate values.

#include "mfzl/numeric.hpp"
#include "mfzl/qseries.hpp"

#include <optional>
#include <vector>

namespace mfzl {

using IntVector = std::vector<Integer>;

/// LLL-reduces linearly independent integer row vectors with parameter delta = num/den
/// (exact integer arithmetic, no Gram-Schmidt rationals).
std::vector<IntVector> lll_reduce(std::vector<IntVector> basis, long delta_num = 99, long delta_den = 100);

struct Relation {
    /// Coefficients c_i with sum c_i x_i ~ 0.
    IntVector coeffs;
    /// |sum c_i x_i| / sum |c_i x_i|
    Real relative_residual;
    /// log2 max |c_i|
    double log2_height = 0;
};

/// Shortest integer relation found by LLL among the complex numbers xs, using `bits`
/// bits of their values. Imaginary parts are ignored when all are negligible.
std::optional<Relation> integer_relation(const std::vector<Complex>& xs, long bits);

}  // namespace mfzl
