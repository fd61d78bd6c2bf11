#include "loclab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loclab/errors.hpp"
#include "loclab/operators.hpp"

namespace loclab {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw data_error("least_squares: degenerate abscissa");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss += r * r;
    }
    fit.rms_residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::CompactSupport: return "compact_support";
        case Regime::Exponential: return "exponential";
        case Regime::Polynomial: return "polynomial";
        case Regime::Undetermined: return "undetermined";
    }
    return "undetermined";
}

FalloffClassification classify_samples(std::span<const double> radii,
                                       std::span<const double> amps, double r_lo, double r_hi,
                                       double floor_abs, int bins) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo))
        throw config_error("classify: window must satisfy 0 < r_lo < r_hi");
    if (bins < 4) throw config_error("classify: need at least 4 bins");

    std::size_t in_window = 0;
    for (double r : radii)
        if (r >= r_lo && r <= r_hi) ++in_window;
    if (in_window < 10) throw config_error("classify: window covers fewer than 10 grid points");

    FalloffClassification out;
    out.fit_window = {r_lo, r_hi};

    // Floor bookkeeping and the compact-support test on raw samples:
    // compact support requires every sample beyond some radius in the
    // window to sit at the numeric floor.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(in_window);
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (radii[i] >= r_lo && radii[i] <= r_hi) pts.emplace_back(radii[i], amps[i]);
    std::sort(pts.begin(), pts.end());
    std::size_t below = 0;
    for (const auto& [r, a] : pts)
        if (a <= floor_abs) ++below;
    out.floor_fraction = static_cast<double>(below) / static_cast<double>(pts.size());
    std::size_t last_above = pts.size();  // index past the last above-floor sample
    for (std::size_t i = pts.size(); i-- > 0;)
        if (pts[i].second > floor_abs) {
            last_above = i + 1;
            break;
        }
    const std::size_t floored_suffix = pts.size() - last_above;
    if (floored_suffix >= std::max<std::size_t>(5, pts.size() / 4) || last_above == 0) {
        out.regime = Regime::CompactSupport;
        return out;
    }

    // Log-spaced RMS envelope bins.
    std::vector<double> bx, by;
    const double lr = std::log(r_lo), dr = (std::log(r_hi) - lr) / bins;
    std::size_t p = 0;
    for (int b = 0; b < bins; ++b) {
        const double hi = (b == bins - 1) ? r_hi * (1.0 + 1e-12) : std::exp(lr + dr * (b + 1));
        double sum2 = 0.0, sum_logr = 0.0;
        std::size_t count = 0;
        while (p < pts.size() && pts[p].first < hi) {
            sum2 += pts[p].second * pts[p].second;
            sum_logr += std::log(pts[p].first);
            ++count;
            ++p;
        }
        if (count == 0) continue;
        const double rms = std::sqrt(sum2 / count);
        if (rms <= floor_abs) continue;
        bx.push_back(std::exp(sum_logr / count));
        by.push_back(std::log(rms));
    }
    if (bx.size() < 5) {
        out.regime = Regime::Undetermined;
        return out;
    }

    // Model comparison: power law vs stretched exponentials of order 1, 2.
    std::vector<double> basis(bx.size());
    struct Candidate {
        Regime regime;
        double order;
        double residual;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < bx.size(); ++i) basis[i] = std::log(bx[i]);
    LineFit fp = least_squares(basis, by);
    cands.push_back({Regime::Polynomial, -fp.slope, fp.rms_residual});
    for (int q : {1, 2}) {
        for (std::size_t i = 0; i < bx.size(); ++i) basis[i] = std::pow(bx[i], q);
        LineFit fe = least_squares(basis, by);
        cands.push_back({Regime::Exponential, static_cast<double>(q), fe.rms_residual});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
    const double rel_gap =
        (cands[1].residual - cands[0].residual) / std::max(cands[1].residual, 1e-300);
    if (rel_gap < 0.10) {
        out.regime = Regime::Undetermined;
        out.fit_residual = cands[0].residual;
        return out;
    }
    out.regime = cands[0].regime;
    out.order = cands[0].order;
    out.fit_residual = cands[0].residual;
    if (out.regime == Regime::Polynomial && out.order <= 0.0) out.regime = Regime::Undetermined;
    return out;
}

FalloffClassification classify_falloff(const WaveFunction& f, double r_lo, double r_hi,
                                       double floor_rel, int bins) {
    const Grid& g = *f.grid;
    if (r_hi > std::min(std::abs(g.x_min), g.x_max))
        throw config_error("classify: window exceeds grid extent");
    std::vector<double> radii(g.n_points), amps(g.n_points);
    double peak = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        radii[i] = std::abs(g.position(i));
        amps[i] = std::abs(f.samples[i]);
        peak = std::max(peak, amps[i]);
    }
    return classify_samples(radii, amps, r_lo, r_hi, floor_rel * peak, bins);
}

GrowthFit fit_growth_exponent(std::span<const std::pair<double, double>> series) {
    if (series.size() < 8) throw data_error("growth fit: need at least 8 samples");
    std::vector<double> xs, ys;
    double t_lo = series.front().first, t_hi = series.front().first;
    for (const auto& [t, v] : series) {
        if (!(v > 0.0)) throw data_error("growth fit: non-positive norm value");
        xs.push_back(std::log1p(t));
        ys.push_back(std::log(v));
        t_lo = std::min(t_lo, t);
        t_hi = std::max(t_hi, t);
    }
    if ((1.0 + t_hi) < 10.0 * (1.0 + t_lo))
        throw data_error("growth fit: samples must span at least one decade in (1 + t)");
    LineFit fit = least_squares(xs, ys);
    GrowthFit out;
    out.exponent = fit.slope;
    out.prefactor = std::exp(fit.intercept);
    out.residual = fit.rms_residual;
    out.t_window = {t_lo, t_hi};
    return out;
}

bool detect_spreading(const WaveFunction& f0, const WaveFunction& ft, double r_support,
                      double margin, double floor) {
    if (tail_mass(f0, r_support) > 1e-30)
        throw config_error("detect_spreading: initial state not compactly supported inside r_support");
    return tail_mass(ft, r_support + margin) > floor;
}

}  // namespace loclab
