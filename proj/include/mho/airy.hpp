#pragma once

#include <cstddef>
#include <vector>

namespace mho::specfun {

struct AiryValue {
    double ai = 0.0;
    double ai_prime = 0.0;
    bool underflow = false;  ///< true when both values were flushed to zero for large x
};

/// Ai(x) and Ai'(x) for real x.
///
/// On [-10, 9] the pair is continued by a short Taylor step from a table of
/// nodes spaced 1/4 apart (the Airy recurrence gives every Taylor
/// coefficient). Table nodes on [-2, 2] come from the Maclaurin series; the
/// nodes right of 2 are marched leftwards from the exponential asymptotic
/// form at x = 9, which is the stable direction for the decaying solution;
/// nodes left of -2 are marched outward from -2. Beyond the table the
/// Poincare asymptotic expansions are summed to their smallest term.
AiryValue airy(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

/// Zeros a_1 > a_2 > ... of Ai with the values Ai'(a_n).
struct AiryZeroTable {
    std::vector<double> zeros;
    std::vector<double> derivative_values;
};

/// n-th zero of Ai (n >= 1). Seeded from the asymptotic expansion in
/// t = 3 pi (4n - 1) / 8 and refined by bracketed Newton. Results are memoized
/// in a process-wide table that is safe for concurrent readers.
double airy_zero(int n);

/// Copy of the first n zeros and the derivative values at them.
AiryZeroTable airy_zero_table(int n);

}  // namespace mho::specfun
