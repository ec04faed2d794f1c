#include "pdeid/signal.hpp"

#include <algorithm>
#include <cmath>

#include "pdeid/fft.hpp"
#include "pdeid/stats.hpp"

namespace pdeid::signal {

namespace {

std::span<const double> window(const std::vector<double>& v, int lo, int hi) {
    if (static_cast<size_t>(hi) > v.size()) {
        throw Error(ErrorCode::WindowOutOfRange, "signal shorter than feature window");
    }
    return {v.data() + lo, static_cast<size_t>(hi - lo)};
}

// Natural cubic spline through strictly increasing integer knots.
class CubicSpline {
public:
    CubicSpline(const std::vector<int>& xs, const std::vector<double>& ys)
        : x_(xs.begin(), xs.end()), y_(ys) {
        const size_t n = x_.size();
        a_.assign(n, 0.0);
        b_.assign(n, 0.0);
        c_.assign(n, 0.0);
        if (n < 2) return;
        if (n == 2) {
            b_[0] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
            return;
        }
        // second-derivative system, natural ends (m_0 = m_{n-1} = 0)
        std::vector<double> h(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) h[i] = static_cast<double>(x_[i + 1] - x_[i]);
        std::vector<double> diag(n, 0.0);
        std::vector<double> rhs(n, 0.0);
        std::vector<double> sub(n, 0.0);
        std::vector<double> sup(n, 0.0);
        diag[0] = 1.0;
        diag[n - 1] = 1.0;
        for (size_t i = 1; i + 1 < n; ++i) {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
        }
        // Thomas algorithm
        std::vector<double> m(n, 0.0);
        for (size_t i = 1; i < n; ++i) {
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for (size_t i = n - 1; i-- > 0;) m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        for (size_t i = 0; i + 1 < n; ++i) {
            a_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
            b_[i] = m[i] / 2.0;
            c_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        }
    }

    double eval(double x) const {
        const size_t n = x_.size();
        if (n == 1) return y_[0];
        size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
        i = i == 0 ? 0 : std::min(i - 1, n - 2);
        const double d = x - x_[i];
        if (n == 2) return y_[i] + b_[i] * d;
        return y_[i] + d * (c_[i] + d * (b_[i] + d * a_[i]));
    }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> a_, b_, c_; // cubic, quadratic, linear terms per segment
};

// Strict local extrema with plateau midpoints; endpoints excluded.
std::vector<int> raw_peaks(const std::vector<double>& v) {
    std::vector<int> peaks;
    const int n = static_cast<int>(v.size());
    int i = 1;
    while (i < n - 1) {
        if (v[i] > v[i - 1]) {
            int j = i;
            while (j + 1 < n && v[j + 1] == v[i]) ++j;
            if (j + 1 < n && v[j + 1] < v[i]) peaks.push_back((i + j) / 2);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return peaks;
}

// Topographic prominence: height above the higher of the two lowest points
// reached before meeting taller terrain (or the signal ends).
double prominence_at(const std::vector<double>& v, int p) {
    const double vp = v[p];
    double left_base = vp;
    for (int i = p - 1; i >= 0; --i) {
        if (v[i] > vp) break;
        left_base = std::min(left_base, v[i]);
    }
    double right_base = vp;
    const int n = static_cast<int>(v.size());
    for (int i = p + 1; i < n; ++i) {
        if (v[i] > vp) break;
        right_base = std::min(right_base, v[i]);
    }
    return vp - std::max(left_base, right_base);
}

std::vector<double> negate(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

// Natural spline through the endpoints and whatever extrema exist; with no
// extrema this degenerates to the chord between the endpoints, which zeroes
// the amplitude of monotone and constant signals.
std::vector<double> envelope_through(const std::vector<double>& v,
                                     const std::vector<int>& knots) {
    const int n = static_cast<int>(v.size());
    std::vector<int> xs;
    xs.push_back(0);
    for (int k : knots) {
        if (k > xs.back() && k < n - 1) xs.push_back(k);
    }
    xs.push_back(n - 1);
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (int x : xs) ys.push_back(v[x]);
    const CubicSpline spline(xs, ys);
    std::vector<double> out(v.size());
    for (int t = 0; t < n; ++t) out[t] = spline.eval(static_cast<double>(t));
    return out;
}

} // namespace

TimeSignal delta_signal(const GridField& field) {
    if (field.nt < 2) throw Error(ErrorCode::TooShort, "delta_signal needs nt >= 2");
    TimeSignal sig;
    sig.values.resize(field.nt - 1);
    const size_t fs = field.frame_size();
    const double inv = 1.0 / static_cast<double>(fs);
    for (int t = 0; t + 1 < field.nt; ++t) {
        const double* a = field.frame(t);
        const double* b = field.frame(t + 1);
        double acc = 0.0;
        for (size_t i = 0; i < fs; ++i) acc += b[i] - a[i];
        sig.values[t] = acc * inv;
    }
    return sig;
}

TimeSignal prepare_signal(const TimeSignal& sig) {
    if (sig.values.size() < static_cast<size_t>(kSmoothWindow)) {
        throw Error(ErrorCode::TooShort, "prepare_signal needs length >= smoothing window");
    }
    TimeSignal out;
    out.t0_index = sig.t0_index;
    const double lo = stats::minimum(sig.values);
    const double hi = stats::maximum(sig.values);
    std::vector<double> scaled(sig.values.size(), 0.0);
    if (hi > lo) {
        const double inv = 1.0 / (hi - lo);
        for (size_t i = 0; i < sig.values.size(); ++i) scaled[i] = (sig.values[i] - lo) * inv;
    }
    static const SavitzkyGolay filter(kSmoothWindow, kSmoothOrder);
    out.values = filter.apply(scaled);
    return out;
}

std::array<double, 7> stats_features(const TimeSignal& sig) {
    const auto& v = sig.values;
    const auto early = window(v, kWinEarlyLo, kWinHi);
    const auto late = window(v, kWinLateLo, kWinHi);
    return {stats::mean(early),  stats::stddev(early), stats::minimum(late),
            stats::maximum(late), stats::mean(late),    stats::stddev(late),
            stats::skewness(early)};
}

ExtremaResult find_extrema(const TimeSignal& sig) {
    ExtremaResult res;
    const auto& v = sig.values;
    if (v.size() < 3) return res;
    const double range = stats::maximum(v) - stats::minimum(v);
    const double thresh = kProminenceFraction * range;
    for (int p : raw_peaks(v)) {
        if (prominence_at(v, p) >= thresh) res.peaks.push_back(p);
    }
    const std::vector<double> neg = negate(v);
    for (int p : raw_peaks(neg)) {
        if (prominence_at(neg, p) >= thresh) res.valleys.push_back(p);
    }
    return res;
}

EnvelopePair envelopes(const TimeSignal& sig) {
    EnvelopePair env;
    const auto& v = sig.values;
    if (v.empty()) return env;
    if (v.size() == 1) {
        env.upper = v;
        env.lower = v;
        env.amplitude = {0.0};
        return env;
    }
    const ExtremaResult ex = find_extrema(sig);
    env.peaks = ex.peaks;
    env.valleys = ex.valleys;
    env.upper = envelope_through(v, ex.peaks);
    env.lower = envelope_through(v, ex.valleys);
    env.amplitude.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        env.amplitude[i] = std::max(env.upper[i] - env.lower[i], 0.0);
    }
    return env;
}

std::array<double, 11> amplitude_features(const EnvelopePair& env) {
    const auto& a = env.amplitude;
    const auto full = window(a, kWinEarlyLo, kWinHi);
    const auto late = window(a, kWinLateLo, kWinHi);
    const auto mid = window(a, kWinMidLo, kWinHi);
    const auto early = window(a, kWinEarlyLo, kWinMidLo);

    const double mx = stats::maximum(full);
    double argmax = 0.0;
    if (mx > stats::minimum(full)) {
        for (size_t i = 0; i < full.size(); ++i) {
            if (full[i] == mx) {
                argmax = static_cast<double>(kWinEarlyLo + i) / static_cast<double>(a.size());
                break;
            }
        }
    }
    const double early_mean = stats::mean(early);
    const double early_max = stats::maximum(early);
    const double mean_ratio = early_mean == 0.0 ? 0.0 : stats::mean(mid) / early_mean;
    const double max_ratio = early_max == 0.0 ? 0.0 : stats::maximum(mid) / early_max;
    return {mx,
            argmax,
            stats::mean(late),
            stats::stddev(late),
            stats::skewness(late),
            stats::mean(mid),
            stats::stddev(mid),
            static_cast<double>(env.peaks.size()),
            static_cast<double>(env.valleys.size()),
            mean_ratio,
            max_ratio};
}

std::array<double, 20> fft_features(const TimeSignal& sig) {
    const auto& v = sig.values;
    std::array<double, 20> out{};
    if (v.empty()) return out;
    const size_t n = v.size();
    const double m = stats::mean(v);
    std::vector<double> centered(n);
    for (size_t i = 0; i < n; ++i) centered[i] = v[i] - m;
    std::vector<double> mag = fft::magnitude(centered);

    const size_t half = n / 2;
    double norm = 0.0;
    for (size_t k = 0; k <= half; ++k) norm = std::max(norm, mag[k]);
    if (norm == 0.0) return out;
    const double inv = 1.0 / norm;

    for (int b = 0; b < 5; ++b) {
        const double flo = 0.02 * b;
        const double fhi = 0.02 * (b + 1);
        std::vector<double> bin;
        for (size_t k = 0; k <= half; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(n);
            if (f >= flo && f < fhi) bin.push_back(mag[k] * inv);
        }
        if (bin.empty()) continue;
        out[4 * b + 0] = stats::mean(bin);
        out[4 * b + 1] = stats::stddev(bin);
        out[4 * b + 2] = stats::minimum(bin);
        out[4 * b + 3] = stats::maximum(bin);
    }
    return out;
}

} // namespace pdeid::signal
