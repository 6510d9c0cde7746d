#include "fssm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fftw3.h>

namespace fssm {

namespace {

struct LineFit {
    double slope = 0, intercept = 0, r2 = 0, stderr_ = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y, size_t a, size_t b) {
    const double n = static_cast<double>(b - a);
    double sx = 0, sy = 0;
    for (size_t i = a; i < b; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = a; i < b; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    const double sse = std::max(syy - f.slope * sxy, 0.0);
    f.r2 = syy > 0 ? 1 - sse / syy : 1.0;
    f.stderr_ = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
    return f;
}

}  // namespace

CorrelationDimension correlation_dimension(const Mat& pts, int theiler, int n_eps, size_t max_ref) {
    const Eigen::Index n = pts.cols();
    if (n < 10) throw std::invalid_argument("too few points for a correlation sum");
    const Eigen::Index every = std::max<Eigen::Index>(1, n / static_cast<Eigen::Index>(max_ref));
    // distance range
    double dmin = INFINITY, dmax = 0;
    std::vector<double> logd;
    logd.reserve(static_cast<size_t>(n / every) * static_cast<size_t>(n) / 2);
    for (Eigen::Index i = 0; i < n; i += every)
        for (Eigen::Index j = i + theiler + 1; j < n; ++j) {
            const double d = (pts.col(i) - pts.col(j)).norm();
            if (d <= 0) continue;
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
            logd.push_back(std::log(d));
        }
    if (logd.empty()) throw std::invalid_argument("no admissible pairs");
    std::sort(logd.begin(), logd.end());
    CorrelationDimension cd;
    const double total = static_cast<double>(logd.size());
    const double l0 = std::log(dmin), l1 = std::log(dmax);
    std::vector<double> cnt;
    for (int k = 0; k < n_eps; ++k) {
        const double le = l0 + (l1 - l0) * (k + 1) / n_eps;
        const auto c = static_cast<double>(std::upper_bound(logd.begin(), logd.end(), le) - logd.begin());
        cd.log_eps.push_back(le);
        cd.log_c.push_back(std::log(std::max(c, 1.0) / total));
        cnt.push_back(c);
    }
    // scaling region: contiguous windows spanning >= 1 decade with enough pairs, best R^2
    const double decade = std::log(10.0);
    double best = -INFINITY;
    for (int a = 0; a < n_eps; ++a) {
        if (cnt[a] < 50) continue;
        for (int b = a + 2; b <= n_eps; ++b) {
            if (cd.log_eps[b - 1] - cd.log_eps[a] < decade) continue;
            if (cnt[b - 1] > 0.5 * total) break;  // saturation
            const LineFit f = fit_line(cd.log_eps, cd.log_c, a, b);
            if (f.r2 > best) {
                best = f.r2;
                cd.dimension = f.slope;
                cd.stderr_ = f.stderr_;
                cd.r2 = f.r2;
                cd.eps_lo = std::exp(cd.log_eps[a]);
                cd.eps_hi = std::exp(cd.log_eps[b - 1]);
            }
        }
    }
    cd.reliable = std::isfinite(best) && cd.r2 >= 0.98;
    return cd;
}

Lyapunov lyapunov_model(const MapFn& step, const Vec& x0, long n_steps, double dt, long transient,
                        double rel_perturbation) {
    Vec x = x0;
    for (long k = 0; k < transient; ++k) x = step(x);
    const double delta = rel_perturbation * std::max(1.0, x.norm());
    Vec dir = Vec::Ones(x.size()) / std::sqrt(static_cast<double>(x.size()));
    double sum = 0;
    for (long k = 0; k < n_steps; ++k) {
        const Vec xn = step(x);
        const Vec yn = step(x + delta * dir);
        if (!xn.allFinite() || !yn.allFinite()) throw std::runtime_error("unbounded trajectory");
        const Vec dv = yn - xn;
        const double g = dv.norm() / delta;
        if (!(g > 0)) throw std::runtime_error("perturbation collapsed");
        sum += std::log(g);
        dir = dv / dv.norm();
        x = xn;
    }
    Lyapunov l;
    l.per_sample = sum / static_cast<double>(n_steps);
    l.per_time = l.per_sample / dt;
    return l;
}

Lyapunov lyapunov_data(const Mat& pts, double dt, const RosensteinOptions& opt) {
    const Eigen::Index n = pts.cols();
    const Eigen::Index usable = n - opt.k_max;
    Lyapunov l;
    if (usable < 2 * opt.theiler + 10) {
        l.reliable = false;
        return l;
    }
    const Eigen::Index every = std::max<Eigen::Index>(1, usable / static_cast<Eigen::Index>(opt.max_ref));
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (Eigen::Index i = 0; i < usable; i += every) {
        double best = INFINITY;
        Eigen::Index bj = -1;
        for (Eigen::Index j = 0; j < usable; ++j) {
            if (std::abs(i - j) <= opt.theiler) continue;
            const double d = (pts.col(i) - pts.col(j)).squaredNorm();
            if (d > 0 && d < best) {
                best = d;
                bj = j;
            }
        }
        if (bj >= 0) pairs.emplace_back(i, bj);
    }
    const size_t nref = (static_cast<size_t>(usable) + every - 1) / every;
    if (pairs.size() < std::max<size_t>(10, nref / 2)) l.reliable = false;
    l.divergence.assign(opt.k_max, 0.0);
    for (int k = 0; k < opt.k_max; ++k) {
        double s = 0;
        long c = 0;
        for (auto [i, j] : pairs) {
            const double d = (pts.col(i + k) - pts.col(j + k)).norm();
            if (d > 0) {
                s += std::log(d);
                ++c;
            }
        }
        l.divergence[k] = c ? s / static_cast<double>(c) : 0.0;
    }
    int lo = opt.fit_lo, hi = opt.fit_hi;
    if (lo < 0 || hi < 0) {
        const double L0 = l.divergence[0];
        const double Lm = *std::max_element(l.divergence.begin(), l.divergence.end());
        const double target = L0 + opt.auto_fraction * (Lm - L0);
        lo = 1;
        hi = lo + 2;
        while (hi < opt.k_max && l.divergence[hi] < target) ++hi;
        hi = std::max(hi, lo + 3);
    }
    hi = std::min(hi, opt.k_max);
    std::vector<double> kk(opt.k_max);
    for (int k = 0; k < opt.k_max; ++k) kk[k] = k;
    const LineFit f = fit_line(kk, l.divergence, lo, hi);
    l.fit_lo = lo;
    l.fit_hi = hi;
    l.per_sample = f.slope;
    l.per_time = f.slope / dt;
    return l;
}

Histograms pdf_histograms(const Mat& a, int bins, const Mat* b) {
    if (bins < 10) throw std::invalid_argument("bins must be >= 10");
    Histograms h;
    h.bins = bins;
    for (Eigen::Index q = 0; q < a.rows(); ++q) {
        double r = a.row(q).cwiseAbs().maxCoeff();
        if (b) r = std::max(r, b->row(q).cwiseAbs().maxCoeff());
        if (!(r > 0)) r = 1;
        const double lo = -r, hi = r, w = (hi - lo) / bins;
        std::vector<double> d(bins, 0.0);
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            int k = static_cast<int>((a(q, c) - lo) / w);
            d[std::clamp(k, 0, bins - 1)] += 1;
        }
        for (auto& v : d) v /= static_cast<double>(a.cols()) * w;
        h.density.push_back(d);
        h.lo.push_back(lo);
        h.hi.push_back(hi);
    }
    return h;
}

std::vector<double> ks_statistics(const Mat& a, const Mat& b) {
    std::vector<double> out;
    for (Eigen::Index q = 0; q < a.rows(); ++q) {
        std::vector<double> x(a.cols());
        for (Eigen::Index c = 0; c < a.cols(); ++c) x[c] = a(q, c);
        std::vector<double> y(b.cols());
        for (Eigen::Index c = 0; c < b.cols(); ++c) y[c] = b(q, c);
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        size_t i = 0, j = 0;
        double d = 0;
        const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
        while (i < x.size() && j < y.size()) {
            const double v = std::min(x[i], y[j]);
            while (i < x.size() && x[i] <= v) ++i;
            while (j < y.size() && y[j] <= v) ++j;
            d = std::max(d, std::abs(i / nx - j / ny));
        }
        out.push_back(d);
    }
    return out;
}

Spectrum fft_spectrum(const std::vector<double>& series, double dt) {
    const int n = static_cast<int>(series.size());
    if (n < 256) throw std::invalid_argument("spectrum needs at least 256 samples");
    std::vector<double> in(n);
    double wsum = 0, mean = 0;
    for (double v : series) mean += v;
    mean /= n;
    for (int k = 0; k < n; ++k) {
        const double w = 0.5 - 0.5 * std::cos(2 * M_PI * k / (n - 1));
        in[k] = (series[k] - mean) * w;
        wsum += w;
    }
    const int m = n / 2 + 1;
    fftw_complex* out = fftw_alloc_complex(m);
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
    fftw_execute(plan);
    Spectrum s;
    s.freq.resize(m);
    s.amp.resize(m);
    for (int k = 0; k < m; ++k) {
        s.freq[k] = k / (n * dt);
        s.amp[k] = 2 * std::hypot(out[k][0], out[k][1]) / wsum;
    }
    fftw_destroy_plan(plan);
    fftw_free(out);
    return s;
}

std::vector<Peak> find_peaks(const Spectrum& s, int k, double min_prominence) {
    const auto& a = s.amp;
    const int n = static_cast<int>(a.size());
    const double amax = *std::max_element(a.begin(), a.end());
    std::vector<Peak> peaks;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(a[i] > a[i - 1] && a[i] >= a[i + 1])) continue;
        // lowest point between i and the nearest higher sample on each side
        double lmin = a[i], rmin = a[i];
        int j = i - 1;
        for (; j >= 0 && a[j] <= a[i]; --j) lmin = std::min(lmin, a[j]);
        j = i + 1;
        for (; j < n && a[j] <= a[i]; ++j) rmin = std::min(rmin, a[j]);
        const double prom = a[i] - std::max(lmin, rmin);
        if (prom >= min_prominence * amax) peaks.push_back({s.freq[i], a[i], prom});
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& x, const Peak& y) { return x.amp > y.amp; });
    if (static_cast<int>(peaks.size()) > k) peaks.resize(k);
    return peaks;
}

namespace {

Mat dtw_cost(const Mat& a, const Mat& b) {
    const Eigen::Index n = a.cols(), m = b.cols();
    Mat D = Mat::Constant(n + 1, m + 1, std::numeric_limits<double>::infinity());
    D(0, 0) = 0;
    for (Eigen::Index i = 1; i <= n; ++i)
        for (Eigen::Index j = 1; j <= m; ++j) {
            const double c = (a.col(i - 1) - b.col(j - 1)).norm();
            D(i, j) = c + std::min({D(i - 1, j), D(i, j - 1), D(i - 1, j - 1)});
        }
    return D;
}

}  // namespace

double dtw_distance(const Mat& a, const Mat& b) {
    if (a.cols() == 0 || b.cols() == 0) throw std::invalid_argument("empty sequence");
    return dtw_cost(a, b)(a.cols(), b.cols());
}

DTWResult dtw_nmte(const Mat& ref, const Mat& pred) {
    if (ref.cols() == 0 || pred.cols() == 0) throw std::invalid_argument("empty trajectory");
    if (ref.rows() != pred.rows()) throw std::invalid_argument("channel mismatch");
    DTWResult r;
    const double scale = std::max(ref.colwise().norm().maxCoeff(), 1e-300);
    const Eigen::Index n = std::min(ref.cols(), pred.cols());
    double s = 0;
    for (Eigen::Index j = 0; j < n; ++j) s += (ref.col(j) - pred.col(j)).norm();
    r.nmte_raw = s / static_cast<double>(n) / scale;

    const Mat D = dtw_cost(ref, pred);
    r.distance = D(ref.cols(), pred.cols());
    Eigen::Index i = ref.cols(), j = pred.cols();
    while (i > 0 && j > 0) {
        r.path.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
        if (i == 1 && j == 1) break;
        const double a = D(i - 1, j - 1), b = D(i - 1, j), c = D(i, j - 1);
        if (a <= b && a <= c) {
            --i;
            --j;
        } else if (b <= c) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(r.path.begin(), r.path.end());
    r.nmte_dtw = r.distance / static_cast<double>(r.path.size()) / scale;
    return r;
}

}  // namespace fssm
