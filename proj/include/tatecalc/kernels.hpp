#ifndef TATECALC_KERNELS_HPP
#define TATECALC_KERNELS_HPP

#include <cstddef>
#include <map>

#include "tatecalc/series.hpp"

namespace tatecalc::kernels {

// Serial reference Cauchy product: walks the stored terms of both operands
// and accumulates into a map. Kept as the oracle the parallel kernel is
// tested against.
std::map<int, GradedPolynomial> convolve_serial(const LaurentSeries& a,
                                                const LaurentSeries& b,
                                                int out_order);

// OpenMP kernel: each output exponent is an independent convolution, so
// the loop over output exponents is data-parallel. Exact arithmetic makes
// the result identical to the serial kernel regardless of scheduling.
std::map<int, GradedPolynomial> convolve_parallel(const LaurentSeries& a,
                                                  const LaurentSeries& b,
                                                  int out_order);

// Work estimate used to decide when the parallel kernel pays for itself.
std::size_t convolution_cost(const LaurentSeries& a, const LaurentSeries& b);

inline constexpr std::size_t parallel_threshold = 4096;

} // namespace tatecalc::kernels

#endif
