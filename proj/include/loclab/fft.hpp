#pragma once

#include <complex>
#include <vector>

namespace loclab::detail {

// In-place complex DFT without normalization. sign = -1 forward, +1 inverse.
// Plans are cached per (size, sign); plan creation is serialized, execution
// is safe from concurrent workers on distinct buffers.
void raw_dft(std::vector<std::complex<double>>& data, int sign);

}  // namespace loclab::detail
