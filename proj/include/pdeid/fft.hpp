#pragma once

#include <complex>
#include <vector>

namespace pdeid::fft {

/// Forward DFT of arbitrary length: radix-2 when n is a power of two,
/// Bluestein's chirp-z otherwise.
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& input);

/// Magnitude spectrum |DFT(x)| of a real signal, all n bins.
std::vector<double> magnitude(const std::vector<double>& input);

} // namespace pdeid::fft
