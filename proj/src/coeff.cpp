#include "pdeid/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdeid/savgol.hpp"
#include "pdeid/signal.hpp"
#include "pdeid/spatial.hpp"
#include "pdeid/stats.hpp"

namespace pdeid::coeff {

namespace {

constexpr double kFrontThreshold = 0.5;
constexpr double kAmplitudeFloor = 1e-6;

// fractional index of the first drop below the threshold, walking inward
// from the wall at walk position 0; negative when there is no crossing
double crossing_from(const std::vector<double>& profile, bool from_low_end) {
    const int n = static_cast<int>(profile.size());
    auto value = [&](int i) { return from_low_end ? profile[i] : profile[n - 1 - i]; };
    if (value(0) < kFrontThreshold) return -1.0;
    for (int i = 1; i < n; ++i) {
        const double prev = value(i - 1);
        const double cur = value(i);
        if (cur < kFrontThreshold) {
            const double frac = (prev - kFrontThreshold) / (prev - cur);
            return static_cast<double>(i - 1) + frac;
        }
    }
    return -1.0;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    LineFit f;
    if (denom != 0.0) {
        f.slope = (n * sxy - sx * sy) / denom;
        f.intercept = (sy - f.slope * sx) / n;
    }
    return f;
}

std::vector<double> normalized_v2(const GridField& field, const PdeSpec& spec, int t) {
    const spatial::ProjectedProfiles p = spatial::projected_profiles(field, spec, t);
    const double lo = stats::minimum(p.v2);
    const double hi = stats::maximum(p.v2);
    std::vector<double> out(p.v2.size(), 0.0);
    if (hi > lo) {
        const double inv = 1.0 / (hi - lo);
        for (size_t i = 0; i < out.size(); ++i) out[i] = (p.v2[i] - lo) * inv;
    }
    return out;
}

// Jacobi eigenvalues of a small symmetric matrix (row-major k x k).
std::vector<double> sym_eigenvalues(std::vector<double> m, int k) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) off += std::abs(m[i * k + j]);
        }
        if (off < 1e-15) break;
        for (int p = 0; p < k; ++p) {
            for (int q = p + 1; q < k; ++q) {
                if (m[p * k + q] == 0.0) continue;
                const double theta = (m[q * k + q] - m[p * k + p]) / (2.0 * m[p * k + q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < k; ++i) {
                    const double mip = m[i * k + p];
                    const double miq = m[i * k + q];
                    m[i * k + p] = c * mip - s * miq;
                    m[i * k + q] = s * mip + c * miq;
                }
                for (int i = 0; i < k; ++i) {
                    const double mpi = m[p * k + i];
                    const double mqi = m[q * k + i];
                    m[p * k + i] = c * mpi - s * mqi;
                    m[q * k + i] = s * mpi + c * mqi;
                }
            }
        }
    }
    std::vector<double> eig(k);
    for (int i = 0; i < k; ++i) eig[i] = m[i * k + i];
    return eig;
}

// Gaussian elimination with partial pivoting for a small dense system.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int k) {
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
        }
        if (a[pivot * k + col] == 0.0) {
            throw Error(ErrorCode::IllConditioned, "singular normal equations");
        }
        if (pivot != col) {
            for (int j = 0; j < k; ++j) std::swap(a[col * k + j], a[pivot * k + j]);
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < k; ++r) {
            const double f = a[r * k + col] / a[col * k + col];
            for (int j = col; j < k; ++j) a[r * k + j] -= f * a[col * k + j];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(k, 0.0);
    for (int r = k - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < k; ++j) s -= a[r * k + j] * x[j];
        x[r] = s / a[r * k + r];
    }
    return x;
}

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

} // namespace

std::vector<double> front_positions(const GridField& field, const PdeSpec& spec) {
    // driving side: the wall whose normalized initial profile value is larger
    const std::vector<double> p0 = normalized_v2(field, spec, 0);
    const bool from_low_end = p0.front() >= p0.back();

    std::vector<double> positions;
    bool tracking = false;
    double last = -1.0;
    for (int t = 0; t < field.nt; ++t) {
        const std::vector<double> p = normalized_v2(field, spec, t);
        const double pos = crossing_from(p, from_low_end);
        if (pos < 0.0) {
            if (tracking) break; // crossing lost: traversal over
            continue;
        }
        if (tracking && pos < last) break; // first reversal of edge motion
        positions.push_back(pos);
        last = pos;
        tracking = true;
    }
    return positions;
}

WaveSpeedResult wave_speed_estimate(const GridField& field, const PdeSpec& spec) {
    const std::vector<double> positions = front_positions(field, spec);
    if (positions.size() < 10) {
        throw Error(ErrorCode::NoFrontDetected,
                    "front crossing tracked in fewer than 10 frames");
    }
    std::vector<double> ts(positions.size());
    for (size_t i = 0; i < ts.size(); ++i) ts[i] = static_cast<double>(i);
    const LineFit fit = fit_line(ts, positions);
    WaveSpeedResult res;
    res.slope = fit.slope;
    res.speed = std::abs(fit.slope);
    res.frames_tracked = static_cast<int>(positions.size());
    return res;
}

DampingResult damping_from_amplitude(const std::vector<double>& amplitude) {
    const int lo = signal::kWinEarlyLo;
    const int hi = std::min<int>(signal::kWinHi, static_cast<int>(amplitude.size()));
    std::vector<double> ts;
    std::vector<double> logs;
    for (int t = lo; t < hi; ++t) {
        if (amplitude[t] > kAmplitudeFloor) {
            ts.push_back(static_cast<double>(t));
            logs.push_back(std::log(amplitude[t]));
        }
    }
    if (ts.size() < 20) {
        throw Error(ErrorCode::DegenerateAmplitude,
                    "fewer than 20 usable amplitude points in the fit window");
    }
    const LineFit fit = fit_line(ts, logs);
    DampingResult res;
    res.lambda = -fit.slope;
    res.points_used = static_cast<int>(ts.size());
    return res;
}

DampingResult damping_estimate(const GridField& field) {
    const signal::TimeSignal prepared = signal::prepare_signal(signal::delta_signal(field));
    const signal::EnvelopePair env = signal::envelopes(prepared);
    return damping_from_amplitude(env.amplitude);
}

RegressionResult regress_coefficients(const GridField& field, const TermLabels& term_set,
                                      const PdeSpec& spec) {
    if (field.ny != spec.ny || field.nx != spec.nx || field.nt != spec.nt) {
        throw Error(ErrorCode::DimensionMismatch, "field shape disagrees with spec");
    }
    const double h = spec.domain_len / (spec.nx - 1);
    const double dt = field.dt;
    const int half = signal::kSmoothWindow / 2;
    const int t_lo = half + 1;
    const int t_hi = field.nt - half - 2; // inclusive
    if (t_hi - t_lo < 10) {
        throw Error(ErrorCode::TooShort, "too few interior times for regression");
    }

    // time-smoothed copy of the field
    const signal::SavitzkyGolay smoother(signal::kSmoothWindow, signal::kSmoothOrder);
    GridField sm(field.nt, field.ny, field.nx, field.dt);
    {
        std::vector<double> series(field.nt);
        for (int y = 0; y < field.ny; ++y) {
            for (int x = 0; x < field.nx; ++x) {
                for (int t = 0; t < field.nt; ++t) series[t] = field.at(t, y, x);
                const std::vector<double> s = smoother.apply(series);
                for (int t = 0; t < field.nt; ++t) sm.at(t, y, x) = s[t];
            }
        }
    }

    // candidate columns in equation order: utt, ut, lap, ux, uy
    const bool use[5] = {term_set.has_utt, term_set.has_ut, true, term_set.has_conv,
                         term_set.has_conv};
    std::vector<std::vector<double>> cols(5);
    double u_sq = 0.0;
    size_t u_count = 0;
    for (int t = t_lo; t <= t_hi; ++t) {
        for (int y = 1; y < field.ny - 1; ++y) {
            for (int x = 1; x < field.nx - 1; ++x) {
                const double c0 = sm.at(t, y, x);
                u_sq += c0 * c0;
                ++u_count;
                const double cp = sm.at(t + 1, y, x);
                const double cm = sm.at(t - 1, y, x);
                if (use[0]) cols[0].push_back((cp - 2.0 * c0 + cm) / (dt * dt));
                if (use[1]) cols[1].push_back((cp - cm) / (2.0 * dt));
                cols[2].push_back((sm.at(t, y, x + 1) + sm.at(t, y, x - 1) +
                                   sm.at(t, y + 1, x) + sm.at(t, y - 1, x) - 4.0 * c0) /
                                  (h * h));
                if (use[3]) cols[3].push_back((sm.at(t, y, x + 1) - sm.at(t, y, x - 1)) /
                                              (2.0 * h));
                if (use[4]) cols[4].push_back((sm.at(t, y + 1, x) - sm.at(t, y - 1, x)) /
                                              (2.0 * h));
            }
        }
    }

    // leading term: utt, then ut, then lap; skip leads with vanishing columns
    const double lap_rms = rms(cols[2]);
    int lead = 2;
    const double lead_floor = 1e-9 * std::max(lap_rms, 1e-300);
    if (use[0] && rms(cols[0]) > lead_floor) lead = 0;
    else if (use[1] && rms(cols[1]) > lead_floor) lead = 1;

    RegressionResult res;
    res.normalized_term = lead == 0 ? "utt" : lead == 1 ? "ut" : "lap";

    // regression targets: the remaining active terms, signs arranged so the
    // solved coefficients are the equation's own (e, d, c, bx, by)
    const size_t n_rows = cols[2].size();
    std::vector<double> y(n_rows);
    std::vector<int> active; // indices into the candidate list
    for (int j = 0; j < 5; ++j) {
        if (use[j] && j != lead && !cols[j].empty()) active.push_back(j);
    }
    auto signed_col = [&](int j, size_t r) {
        // equation: e*utt + d*ut - c*lap + bx*ux + by*uy = 0
        const double v = cols[j][r];
        return j == 2 ? -v : v;
    };
    for (size_t r = 0; r < n_rows; ++r) y[r] = -signed_col(lead, r);

    // drop vanishing columns; their coefficients stay 0
    {
        const double y_rms = rms(y);
        std::vector<int> kept;
        for (int j : active) {
            if (rms(cols[j]) > 1e-12 * std::max(y_rms, 1e-300)) kept.push_back(j);
        }
        active = kept;
    }

    const int k = static_cast<int>(active.size());
    std::vector<double> beta(k, 0.0);
    if (k > 0) {
        // unit-RMS column scaling; the condition number is measured on the
        // scaled normal matrix
        std::vector<double> scale(k);
        for (int j = 0; j < k; ++j) scale[j] = rms(cols[active[j]]);
        std::vector<double> ata(static_cast<size_t>(k) * k, 0.0);
        std::vector<double> aty(k, 0.0);
        for (size_t r = 0; r < n_rows; ++r) {
            for (int a = 0; a < k; ++a) {
                const double va = signed_col(active[a], r) / scale[a];
                aty[a] += va * y[r];
                for (int b = a; b < k; ++b) {
                    ata[a * k + b] += va * signed_col(active[b], r) / scale[b];
                }
            }
        }
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < a; ++b) ata[a * k + b] = ata[b * k + a];
        }
        const std::vector<double> eig = sym_eigenvalues(ata, k);
        double emax = eig[0], emin = eig[0];
        for (double e : eig) {
            emax = std::max(emax, e);
            emin = std::min(emin, e);
        }
        res.cond = emin <= 0.0 ? std::numeric_limits<double>::infinity() : emax / emin;
        if (res.cond > 1e10) {
            throw Error(ErrorCode::IllConditioned, "normal-equation condition number > 1e10");
        }
        const std::vector<double> scaled_beta = solve_dense(ata, aty, k);
        for (int j = 0; j < k; ++j) beta[j] = scaled_beta[j] / scale[j];
    }

    // residual relative to the response scale; a near-zero response (steady
    // fields) falls back to the Laplacian's diagonal scale 4*rms(u)/h^2
    {
        double num = 0.0;
        for (size_t r = 0; r < n_rows; ++r) {
            double fit = 0.0;
            for (int j = 0; j < k; ++j) fit += beta[j] * signed_col(active[j], r);
            const double e = fit - y[r];
            num += e * e;
        }
        const double y_rms = rms(y);
        const double u_scale =
            4.0 * std::sqrt(u_sq / static_cast<double>(std::max<size_t>(u_count, 1))) / (h * h);
        const double ref =
            y_rms >= 1e-6 * u_scale ? y_rms : std::max(u_scale, 1e-300);
        res.residual_rel = std::sqrt(num / static_cast<double>(n_rows)) / ref;
    }

    // map back to named coefficients; the lead term's own coefficient is 1
    double est[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    est[lead] = 1.0;
    for (int j = 0; j < k; ++j) est[active[j]] = beta[j];
    res.e = est[0];
    res.d = est[1];
    res.c = est[2];
    res.bx = est[3];
    res.by = est[4];
    return res;
}

} // namespace pdeid::coeff
