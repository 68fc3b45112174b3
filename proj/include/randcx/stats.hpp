#ifndef RANDCX_STATS_HPP
#define RANDCX_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace randcx {

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96)
{
    if (trials == 0) {
        return {0.0, 1.0};
    }
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double centre = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // The closed form is exact at the ends; rounding would otherwise leave
    // the interval a hair short of 0 or 1.
    double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {low, high};
}

/// Standard deviation of the sample mean of `trials` Bernoulli(q) draws.
inline double binomial_sigma(double q, std::size_t trials)
{
    return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

} // namespace randcx

#endif
