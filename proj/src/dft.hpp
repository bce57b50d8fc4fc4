#pragma once

#include <qconic/series.hpp>

#include <span>
#include <vector>

namespace qconic::detail
{

enum class DftSign : int { forward = -1, backward = +1 };

// In-place unnormalized DFT: out_m = sum_j x_j exp(sign 2 pi i j m / n).
// Plans are built once per (n, sign) and shared; safe to call concurrently.
void dft_inplace(std::span<cplx> data, DftSign sign);

// Values of the polynomial with the given coefficients at r e^{2 pi i j / n},
// j = 0..n-1. Coefficients above n-1 are folded modulo n, which is exact.
std::vector<cplx> eval_on_circle(std::span<const cplx> coeffs, double r, int n);

} // namespace qconic::detail
