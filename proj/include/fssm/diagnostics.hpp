#pragma once

#include <functional>
#include <vector>

#include "fssm/poly.hpp"

namespace fssm {

struct CorrelationDimension {
    double dimension = 0;
    double stderr_ = 0;
    double eps_lo = 0, eps_hi = 0;  // scaling region
    double r2 = 0;
    bool reliable = false;
    std::vector<double> log_eps, log_c;
};

/// Grassberger-Procaccia estimate on points stored as columns. Pairs closer
/// than `theiler` in index are skipped. At most `max_ref` reference points.
CorrelationDimension correlation_dimension(const Mat& pts, int theiler = 0, int n_eps = 40, size_t max_ref = 6000);

struct Lyapunov {
    double per_sample = 0;
    double per_time = 0;
    bool reliable = true;
    std::vector<double> divergence;  // mean log separation vs k (data estimate)
    int fit_lo = 0, fit_hi = 0;
};

using MapFn = std::function<Vec(const Vec&)>;

/// Two-trajectory estimate with renormalization after every step.
Lyapunov lyapunov_model(const MapFn& step, const Vec& x0, long n_steps, double dt, long transient = 0,
                        double rel_perturbation = 1e-8);

struct RosensteinOptions {
    int theiler = 50;
    int k_max = 200;
    int fit_lo = -1;  // negative: automatic window
    int fit_hi = -1;
    double auto_fraction = 0.5;  // automatic window ends where this share of the rise is reached
    size_t max_ref = 20000;
};

/// Nearest-neighbor divergence slope (points as columns, spacing dt).
Lyapunov lyapunov_data(const Mat& pts, double dt, const RosensteinOptions& opt = {});

struct Histograms {
    std::vector<std::vector<double>> density;  // per coordinate
    std::vector<double> lo, hi;
    int bins = 0;
};

/// Normalized histograms over symmetric ranges spanning both sets.
Histograms pdf_histograms(const Mat& a, int bins, const Mat* b = nullptr);
/// Two-sample Kolmogorov-Smirnov statistic per coordinate.
std::vector<double> ks_statistics(const Mat& a, const Mat& b);

struct Spectrum {
    std::vector<double> freq, amp;
};

struct Peak {
    double freq = 0, amp = 0, prominence = 0;
};

/// Hann-windowed one-sided amplitude spectrum.
Spectrum fft_spectrum(const std::vector<double>& series, double dt);
/// Local maxima with topographic prominence >= min_prominence * max amplitude,
/// strongest first, at most k.
std::vector<Peak> find_peaks(const Spectrum& s, int k, double min_prominence = 0.05);

struct DTWResult {
    double nmte_raw = 0;
    double nmte_dtw = 0;
    double distance = 0;  // minimal cumulative cost
    std::vector<std::pair<int, int>> path;
};

/// Sequences as columns (channels x time).
DTWResult dtw_nmte(const Mat& reference, const Mat& prediction);
double dtw_distance(const Mat& a, const Mat& b);

}  // namespace fssm
