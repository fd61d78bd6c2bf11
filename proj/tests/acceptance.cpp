// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] = all-experiments config, argv[2] = CLI binary.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "loclab/config.hpp"
#include "loclab/report.hpp"
#include "loclab/runner.hpp"

using namespace loclab;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int index, const std::string& label, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": " << label << " ("
              << detail << ")\n";
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        acc += std::norm(a.samples[i] - b.samples[i]);
    return std::sqrt(acc * a.grid->dx);
}

ExperimentSpec spec_for(const json& entry) {
    return parse_config(json{{"experiments", json::array({entry})}}).experiments[0];
}

bool all_checks_pass(const ExperimentResult& res, std::ostringstream& detail) {
    bool ok = (res.verdict == Verdict::Pass);
    for (const Check& c : res.checks) {
        detail << c.name << "=" << c.value << (c.pass ? " " : " [FAIL] ");
        ok &= c.pass;
    }
    return ok;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    auto g = make_grid(-40.0, 40.0, 2048);
    const WaveFunction f0 = free_gaussian_oracle(g, 0.0, 0.0, 1.0, 1.0, 0.0);
    const WaveFunction ft = evolve_free_exact(f0, 2.0, 1.0);
    const WaveFunction oracle = free_gaussian_oracle(g, 0.0, 0.0, 1.0, 1.0, 2.0);
    double m1 = 0.0, m2 = 0.0, total = 0.0;
    for (std::size_t i = 0; i < ft.samples.size(); ++i) {
        const double w = std::norm(ft.samples[i]);
        const double x = g->position(i);
        m1 += w * x;
        m2 += w * x * x;
        total += w;
    }
    const double variance = m2 / total - (m1 / total) * (m1 / total);
    const double var_err = std::abs(variance - 2.0) / 2.0;
    const double l2_err = l2_distance(ft, oracle);
    const double dt_run = seconds_since(t0);
    std::ostringstream detail;
    detail << "variance rel err " << var_err << ", L2 err " << l2_err << ", " << dt_run << " s";
    report(1, "gaussian oracle width sqrt(2) at t=2",
           var_err < 1e-4 && l2_err < 1e-8 && dt_run < 1.0, detail.str());
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    auto g = make_grid(-30.0, 30.0, 4096);
    const WaveFunction f0 = build_state({BumpState{0.0, 1.0}, true}, g);
    bool ok = true;
    double min_tail = 1.0;
    for (double t : {0.01, 0.1, 1.0}) {
        const double tm = tail_mass(evolve_free_exact(f0, t, 1.0), 2.0);
        min_tail = std::min(min_tail, tm);
        ok &= tm > 1e-12;
    }
    const double dt_run = seconds_since(t0);
    ok &= dt_run < 1.0;
    std::ostringstream detail;
    detail << "min tail mass beyond 2 is " << min_tail << ", " << dt_run << " s";
    report(2, "compact support spreads instantly", ok, detail.str());
}

void criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult res = run_experiment(spec_for({{"id", "E3"}}));
    std::ostringstream detail;
    bool ok = all_checks_pass(res, detail);
    const double dt_run = seconds_since(t0);
    ok &= dt_run < 30.0;
    detail << dt_run << " s";
    report(3, "trap confinement and holes through t=20", ok, detail.str());
}

void criteria_4_and_5() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult e4 = run_experiment(spec_for({{"id", "E4"}}));
    std::ostringstream d4;
    bool ok4 = all_checks_pass(e4, d4);
    const ExperimentResult e5 = run_experiment(spec_for({{"id", "E5"}}));
    std::ostringstream d5;
    bool ok5 = all_checks_pass(e5, d5);
    const double dt_run = seconds_since(t0);
    ok4 &= dt_run < 60.0;
    ok5 &= dt_run < 60.0;
    d4 << dt_run << " s shared";
    d5 << dt_run << " s shared";
    report(4, "weighted-norm growth exponents bounded", ok4, d4.str());
    report(5, "moment-norm growth exponents bounded", ok5, d5.str());
}

void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult res = run_experiment(spec_for({{"id", "E7"}}));
    std::ostringstream detail;
    bool ok = all_checks_pass(res, detail);
    const double dt_run = seconds_since(t0);
    ok &= dt_run < 5.0;
    detail << dt_run << " s";
    report(6, "truncation turns gaussian tails polynomial", ok, detail.str());
}

void criterion_7() {
    auto g = make_grid(-20.0, 20.0, 512);
    const WaveFunction f0 = build_state({GaussianState{0.0, 1.0, 1.0}, true}, g);
    const PotentialSpec smooth = SmoothBounded{SmoothForm::GaussianBump, 1.0, 0.0, 1.0};

    WaveFunction f = f0;
    double so_drift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        f = step_split_operator(f, smooth, 1e-3, 1.0);
        so_drift = std::max(so_drift, std::abs(l2_norm(f) - 1.0));
    }
    f = f0;
    double cn_drift = 0.0;
    const PotentialSpec barrier = RectangularBarrier{3.0, 5.0, 2.0};
    for (int i = 0; i < 10000; ++i) {
        f = step_crank_nicolson(f, barrier, 1e-3, 1.0, Boundary::Dirichlet);
        cn_drift = std::max(cn_drift, std::abs(l2_norm(f) - 1.0));
    }
    const double group_err = l2_distance(
        evolve_free_exact(evolve_free_exact(f0, 0.7, 1.0), 1.3, 1.0),
        evolve_free_exact(f0, 2.0, 1.0));
    PropagatorConfig cfg;
    cfg.scheme = Scheme::SplitOperator;
    cfg.dt = 1e-3;
    const WaveFunction fwd = evolve(f0, smooth, 1.0, cfg, {1.0}).snapshots.back();
    const double reversal_err =
        l2_distance(evolve(fwd, smooth, -1.0, cfg, {-1.0}).snapshots.back(), f0);
    auto run_dt = [&](double dt) {
        WaveFunction h = f0;
        const int steps = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i < steps; ++i) h = step_split_operator(h, smooth, dt, 1.0);
        return h;
    };
    const double e1 = l2_distance(run_dt(4e-3), run_dt(2e-3));
    const double e2 = l2_distance(run_dt(2e-3), run_dt(1e-3));
    const double order = std::log2(e1 / e2);

    const bool ok = cn_drift < 1e-7 && so_drift < 1e-10 && group_err < 1e-12 &&
                    reversal_err < 1e-8 && std::abs(order - 2.0) < 0.2;
    std::ostringstream detail;
    detail << "CN drift " << cn_drift << ", SO drift " << so_drift << ", group " << group_err
           << ", reversal " << reversal_err << ", order " << order;
    report(7, "scheme invariants", ok, detail.str());
}

void criterion_8() {
    auto g = make_grid(-20.0, 20.0, 512);
    std::mt19937 rng(20260823);
    std::normal_distribution<double> dist;
    const std::vector<PotentialSpec> catalog = {
        RectangularBarrier{-1.0, 1.0, 5.0},
        DoubleWallTrap{},
        SmoothBounded{SmoothForm::GaussianBump, 2.0, 0.0, 1.0},
        SmoothBounded{SmoothForm::Sech2, -3.0, 1.0, 0.5},
        Tabulated{{-1.0, 0.0, 1.0}, {0.5, -2.0, 1.5}},
    };
    bool ok = true;
    double worst = -1e300;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        std::vector<cx> samples(g->n_points);
        for (cx& s : samples) s = cx{dist(rng), dist(rng)};
        WaveFunction fr = make_wavefunction(g, std::move(samples));
        const double n = l2_norm(fr);
        for (cx& s : fr.samples) s /= n;
        for (const PotentialSpec& v : catalog) {
            WaveFunction vf = fr;
            for (std::size_t i = 0; i < vf.samples.size(); ++i)
                vf.samples[i] *= eval_potential(v, vf.grid->position(i));
            const double slack = l2_norm(vf) - kato_constants(v).b * l2_norm(fr);
            worst = std::max(worst, slack);
            ok &= slack <= 1e-10;
        }
    }
    std::ostringstream detail;
    detail << "200 states x 5 potentials, worst ||Vf|| - b||f|| = " << worst;
    report(8, "kato bound", ok, detail.str());
}

void criterion_9(const std::string& config_path, const std::string& cli_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string out_dir = "acceptance_out";
    const std::string cmd = "\"" + cli_path + "\" run \"" + config_path + "\" -o " + out_dir +
                            " -j 4 > acceptance_cli.log 2>&1";
    const int rc = std::system(cmd.c_str());
    const double dt_run = seconds_since(t0);
    bool ok = (rc == 0) && dt_run < 180.0;
    std::string e6_verdict = "missing";
    std::ifstream e6(out_dir + "/E6_result.json");
    if (e6) {
        json doc;
        e6 >> doc;
        e6_verdict = doc.value("verdict", "missing");
    }
    ok &= (e6_verdict == "pass" || e6_verdict == "flagged");
    std::ostringstream detail;
    detail << "exit " << rc << ", E6 " << e6_verdict << ", " << dt_run << " s";
    report(9, "full suite via CLI", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <all-experiments.json> <cli-binary>\n";
        return 2;
    }
    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_and_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(argv[1], argv[2]);
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << "\n";
    return g_failures == 0 ? 0 : 1;
}
