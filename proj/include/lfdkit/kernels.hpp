#pragma once

// Inner loops of the piecewise-linear product-integration (L1) scheme.
//
// For a path g_0..g_M on a uniform grid, the unscaled L1 sum at node N is
//
//   S_N = sum_{j=0}^{N-1} b_j (g_{N-j} - g_{N-j-1}),   b_j = (j+1)^(1-beta) - j^(1-beta),
//
// and D^beta g(t_N) = h^(-beta) / Gamma(2 - beta) * S_N for 0 < beta < 1.
//
// `serial` is the reference implementation. `omp` distributes output nodes
// across threads; every S_N is still accumulated in the same order, so both
// variants return bit-identical results.

#include <cstddef>
#include <span>
#include <vector>

namespace lfdkit::kernels {

/// b_0 .. b_{count-1} for kernel exponent beta in (0, 1).
std::vector<double> l1_weights(double beta, std::size_t count);

namespace serial {

double l1_point(std::span<const double> g, std::span<const double> weights, std::size_t node);

/// out[N] = S_N for N = 0..M (out[0] = 0). `weights` needs at least M entries.
void l1_path(std::span<const double> g, std::span<const double> weights, std::span<double> out);

}  // namespace serial

namespace omp {

void l1_path(std::span<const double> g, std::span<const double> weights, std::span<double> out,
             int threads = 0);

}  // namespace omp

/// Paths at least this long go to the OpenMP kernel when not already inside a
/// parallel region.
inline constexpr std::size_t kParallelPathThreshold = 4096;

/// Picks serial or omp by size and nesting; results do not depend on the choice.
void l1_path(std::span<const double> g, std::span<const double> weights, std::span<double> out);

}  // namespace lfdkit::kernels
