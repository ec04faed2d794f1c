#pragma once

#include <vector>

namespace pdeid::signal {

/// Savitzky-Golay smoother: least-squares polynomial fit of the given order
/// over a sliding odd window. Edge samples are produced by evaluating the
/// first/last window's fit at the off-center position (no padding).
///
/// Weights are derived from discrete Gram polynomials rather than normal
/// equations; tests cross-check both routes.
class SavitzkyGolay {
public:
    SavitzkyGolay(int window, int order);

    std::vector<double> apply(const std::vector<double>& x) const;

    /// Weights evaluating the window fit at offset `eval` from the window
    /// center, eval in [-half, half]. Center weights are eval = 0.
    std::vector<double> weights_at(int eval) const;

    int window() const { return window_; }
    int order() const { return order_; }

private:
    int window_;
    int order_;
    int half_;
    // weights_[half + eval] holds the window weights for that eval offset
    std::vector<std::vector<double>> weights_;
};

} // namespace pdeid::signal
