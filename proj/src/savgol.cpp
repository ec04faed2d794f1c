#include "pdeid/savgol.hpp"

#include "pdeid/error.hpp"

namespace pdeid::signal {

namespace {

// Discrete Gram polynomials p_0..p_order on offsets {-half..half} via the
// symmetric three-term recurrence p_{k+1}(e) = e p_k(e) - beta_k p_{k-1}(e).
struct GramBasis {
    // poly[k][half + e] = p_k(e); norms[k] = <p_k, p_k>
    std::vector<std::vector<double>> poly;
    std::vector<double> norms;
    // coefficients to evaluate p_k at arbitrary points: p_k(x) built by the
    // same recurrence, tracked as monomial coefficients (order is tiny)
    std::vector<std::vector<double>> coeffs;
};

GramBasis build_basis(int half, int order) {
    const int w = 2 * half + 1;
    GramBasis b;
    b.poly.assign(order + 1, std::vector<double>(w, 0.0));
    b.norms.assign(order + 1, 0.0);
    b.coeffs.assign(order + 1, std::vector<double>(order + 1, 0.0));

    for (int i = 0; i < w; ++i) b.poly[0][i] = 1.0;
    b.coeffs[0][0] = 1.0;
    if (order >= 1) {
        for (int i = 0; i < w; ++i) b.poly[1][i] = static_cast<double>(i - half);
        b.coeffs[1][1] = 1.0;
    }
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& c) {
        double s = 0.0;
        for (int i = 0; i < w; ++i) s += a[i] * c[i];
        return s;
    };
    b.norms[0] = dot(b.poly[0], b.poly[0]);
    if (order >= 1) b.norms[1] = dot(b.poly[1], b.poly[1]);
    for (int k = 1; k < order; ++k) {
        const double beta = b.norms[k] / b.norms[k - 1];
        for (int i = 0; i < w; ++i) {
            const double e = static_cast<double>(i - half);
            b.poly[k + 1][i] = e * b.poly[k][i] - beta * b.poly[k - 1][i];
        }
        b.norms[k + 1] = dot(b.poly[k + 1], b.poly[k + 1]);
        // coeffs_{k+1} = shift(coeffs_k) - beta * coeffs_{k-1}
        for (int j = 0; j <= k; ++j) b.coeffs[k + 1][j + 1] = b.coeffs[k][j];
        for (int j = 0; j <= k - 1; ++j) b.coeffs[k + 1][j] -= beta * b.coeffs[k - 1][j];
    }
    return b;
}

double eval_poly(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (size_t j = coeffs.size(); j-- > 0;) v = v * x + coeffs[j];
    return v;
}

} // namespace

SavitzkyGolay::SavitzkyGolay(int window, int order) : window_(window), order_(order) {
    if (window < 1 || window % 2 == 0) {
        throw Error(ErrorCode::UsageError, "savgol window must be odd and positive");
    }
    if (order < 0 || order >= window) {
        throw Error(ErrorCode::UsageError, "savgol order must be in [0, window)");
    }
    half_ = window / 2;
    const GramBasis basis = build_basis(half_, order_);
    weights_.assign(window, std::vector<double>(window, 0.0));
    for (int eval = -half_; eval <= half_; ++eval) {
        auto& w = weights_[half_ + eval];
        for (int k = 0; k <= order_; ++k) {
            const double pk_at_eval = eval_poly(basis.coeffs[k], static_cast<double>(eval));
            for (int i = 0; i < window; ++i) {
                w[i] += basis.poly[k][i] * pk_at_eval / basis.norms[k];
            }
        }
    }
}

std::vector<double> SavitzkyGolay::weights_at(int eval) const {
    if (eval < -half_ || eval > half_) {
        throw Error(ErrorCode::UsageError, "savgol eval offset outside window");
    }
    return weights_[half_ + eval];
}

std::vector<double> SavitzkyGolay::apply(const std::vector<double>& x) const {
    const int n = static_cast<int>(x.size());
    if (n < window_) throw Error(ErrorCode::TooShort, "signal shorter than savgol window");
    std::vector<double> out(x.size(), 0.0);
    const auto& center = weights_[half_];
    for (int i = half_; i < n - half_; ++i) {
        double s = 0.0;
        for (int j = 0; j < window_; ++j) s += center[j] * x[i - half_ + j];
        out[i] = s;
    }
    // leading edge: fit over the first window, evaluated off-center
    for (int i = 0; i < half_; ++i) {
        const auto& w = weights_[i]; // eval offset i - half_
        double s = 0.0;
        for (int j = 0; j < window_; ++j) s += w[j] * x[j];
        out[i] = s;
    }
    // trailing edge: fit over the last window
    for (int i = n - half_; i < n; ++i) {
        const auto& w = weights_[half_ + (i - (n - 1 - half_))];
        double s = 0.0;
        for (int j = 0; j < window_; ++j) s += w[j] * x[n - window_ + j];
        out[i] = s;
    }
    return out;
}

} // namespace pdeid::signal
