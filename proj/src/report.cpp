#include "loclab/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "loclab/errors.hpp"

namespace loclab {

namespace {

using nlohmann::json;

// One plot series: (x, y) points plus a label.
struct Series {
    std::string label;
    std::vector<std::array<double, 2>> points;
};

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#17becf", "#bcbd22",
                          "#aec7e8", "#98df8a"};

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

/// Generic log/linear scatter-line plot. Non-finite or non-positive values
/// on a log axis are dropped point-wise.
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       bool log_x, bool log_y) {
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    auto usable = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        if (log_x && !(x > 0.0)) return false;
        if (log_y && !(y > 0.0)) return false;
        return true;
    };
    for (const Series& s : series)
        for (const auto& [x, y] : s.points)
            if (usable(x, y)) {
                const double px = log_x ? std::log10(x) : x;
                const double py = log_y ? std::log10(y) : y;
                x_lo = std::min(x_lo, px);
                x_hi = std::max(x_hi, px);
                y_lo = std::min(y_lo, py);
                y_hi = std::max(y_hi, py);
            }
    if (x_lo > x_hi) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
    if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
    // On log-y plots keep at most 16 decades so a numeric floor does not
    // crush the interesting range.
    if (log_y && y_hi - y_lo > 16.0) y_lo = y_hi - 16.0;

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double v) { return kLeft + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    auto sy = [&](double v) { return kHeight - kBottom - (v - y_lo) / (y_hi - y_lo) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    // Axes frame and ticks.
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / n_ticks;
        const double fy = y_lo + (y_hi - y_lo) * i / n_ticks;
        const double tx = sx(fx), ty = sy(fy);
        out << "<line x1=\"" << tx << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << tx
            << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << tx << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << (log_x ? "1e" + fmt(fx, 3) : fmt(fx)) << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << ty << "\" x2=\"" << kLeft
            << "\" y2=\"" << ty << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << ty + 3
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << (log_y ? "1e" + fmt(fy, 3) : fmt(fy)) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << kTop + plot_h / 2 << ")\">" << y_label
        << "</text>\n";

    std::size_t color = 0;
    double legend_y = kTop + 12.0;
    for (const Series& s : series) {
        const char* col = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        ++color;
        out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.3\" points=\"";
        bool open = false;
        for (const auto& [x, y] : s.points) {
            if (!usable(x, y)) {
                open = false;
                continue;
            }
            double py = log_y ? std::log10(y) : y;
            py = std::max(py, y_lo);
            out << sx(log_x ? std::log10(x) : x) << "," << sy(py) << " ";
            open = true;
        }
        (void)open;
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << col
            << "\">" << s.label << "</text>\n";
        legend_y += 13.0;
    }
    out << "</svg>\n";
    return out.str();
}

json check_to_json(const Check& c) {
    return {{"name", c.name},
            {"value", c.value},
            {"threshold", c.threshold},
            {"fail_above", c.fail_above},
            {"pass", c.pass}};
}

json fit_to_json(const GrowthFit& g) {
    return {{"exponent", g.exponent},
            {"prefactor", g.prefactor},
            {"residual", g.residual},
            {"t_window", {g.t_window[0], g.t_window[1]}}};
}

json classification_to_json(const FalloffClassification& c) {
    return {{"regime", regime_name(c.regime)},
            {"order", c.order},
            {"fit_window", {c.fit_window[0], c.fit_window[1]}},
            {"fit_residual", c.fit_residual},
            {"floor_fraction", c.floor_fraction}};
}

json run_to_json(const SubRunResult& run) {
    json out;
    out["label"] = run.label;
    out["informational"] = run.informational;
    out["warnings"] = run.warnings;
    out["metrics"] = run.metrics;
    json fits = json::object();
    for (const auto& [name, fit] : run.fits) fits[name] = fit_to_json(fit);
    out["growth_fits"] = fits;
    json cls = json::array();
    for (const auto& [t, c] : run.classifications) {
        json e = classification_to_json(c);
        e["t"] = t;
        cls.push_back(e);
    }
    out["classifications"] = cls;
    json reports = json::array();
    for (const NormReport& r : run.reports) {
        json e = {{"t", r.t}, {"l2", r.l2}, {"s1", r.s1}, {"s2", r.s2}, {"energy", r.energy}};
        for (const auto& [n, v] : r.d_norms) e["d" + std::to_string(n)] = v;
        json tails = json::object();
        for (const auto& [R, v] : r.tail_masses) tails[fmt(R, 17)] = v;
        e["tail_masses"] = tails;
        reports.push_back(e);
    }
    out["reports"] = reports;
    return out;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot write " + path.string());
    out << content;
}

}  // namespace

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string norm_reports_csv(const std::vector<NormReport>& reports) {
    std::ostringstream out;
    out << "t,l2,d1,d2,s1,s2,tail_R1,tail_R2,energy\n";
    for (const NormReport& r : reports) {
        const double d1 = r.d_norms.count(1) ? r.d_norms.at(1) : 0.0;
        const double d2 = r.d_norms.count(2) ? r.d_norms.at(2) : 0.0;
        double tails[2] = {0.0, 0.0};
        std::size_t i = 0;
        for (const auto& [radius, mass] : r.tail_masses) {
            if (i < 2) tails[i] = mass;
            ++i;
        }
        out << format_g17(r.t) << ',' << format_g17(r.l2) << ',' << format_g17(d1) << ','
            << format_g17(d2) << ',' << format_g17(r.s1) << ',' << format_g17(r.s2) << ','
            << format_g17(tails[0]) << ',' << format_g17(tails[1]) << ','
            << format_g17(r.energy) << '\n';
    }
    return out.str();
}

nlohmann::json result_to_json(const ExperimentResult& res, const nlohmann::json& resolved) {
    json out;
    out["id"] = res.id;
    out["verdict"] = verdict_name(res.verdict);
    out["exploratory"] = res.exploratory;
    out["headline"] = res.headline;
    out["wall_seconds"] = res.wall_seconds;
    out["warnings"] = res.warnings;
    json checks = json::array();
    for (const Check& c : res.checks) checks.push_back(check_to_json(c));
    out["checks"] = checks;
    json runs = json::array();
    for (const SubRunResult& r : res.runs) runs.push_back(run_to_json(r));
    out["runs"] = runs;
    out["provenance"] = resolved;
    return out;
}

std::string svg_profiles(const std::string& title, const SubRunResult& run) {
    std::vector<Series> series;
    for (const auto& [t, profile] : run.profiles)
        series.push_back({"t = " + fmt(t), profile});
    return render_svg(title, "x", "|psi|^2", series, false, true);
}

std::string svg_norms(const std::string& title, const SubRunResult& run) {
    std::vector<Series> series;
    auto add = [&](const std::string& label, auto pick) {
        Series s{label, {}};
        for (const NormReport& r : run.reports) s.points.push_back({r.t, pick(r)});
        series.push_back(std::move(s));
    };
    add("l2", [](const NormReport& r) { return r.l2; });
    for (const auto& [n, v] : run.reports.empty() ? std::map<int, double>{}
                                                  : run.reports.front().d_norms) {
        (void)v;
        const int nn = n;
        add("d" + std::to_string(nn),
            [nn](const NormReport& r) { return r.d_norms.at(nn); });
    }
    add("s1", [](const NormReport& r) { return r.s1; });
    add("s2", [](const NormReport& r) { return r.s2; });
    std::size_t idx = 0;
    for (const auto& [radius, v] : run.reports.empty() ? std::map<double, double>{}
                                                       : run.reports.front().tail_masses) {
        (void)v;
        const double rr = radius;
        add("tail_R" + std::to_string(++idx),
            [rr](const NormReport& r) { return r.tail_masses.at(rr); });
    }
    return render_svg(title, "t", "norm", series, true, true);
}

std::vector<std::string> write_experiment_outputs(const std::string& out_dir,
                                                  const ExperimentResult& res,
                                                  const nlohmann::json& resolved) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    const fs::path dir(out_dir);
    for (const SubRunResult& run : res.runs) {
        const std::string base = res.id + "_" + sanitize(run.label);
        if (!run.reports.empty()) {
            write_file(dir / (base + ".csv"), norm_reports_csv(run.reports));
            written.push_back(base + ".csv");
            write_file(dir / (base + "_norms.svg"), svg_norms(res.id + " " + run.label, run));
            written.push_back(base + "_norms.svg");
        }
        if (!run.profiles.empty()) {
            write_file(dir / (base + "_profiles.svg"),
                       svg_profiles(res.id + " " + run.label, run));
            written.push_back(base + "_profiles.svg");
        }
    }
    const std::string result_name = res.id + "_result.json";
    write_file(dir / result_name, result_to_json(res, resolved).dump(2) + "\n");
    written.push_back(result_name);
    return written;
}

}  // namespace loclab
