#include "loclab/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "loclab/config.hpp"
#include "loclab/errors.hpp"
#include "loclab/report.hpp"

namespace loclab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_manifest(const fs::path& out_dir, const json& manifest) {
    std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot write manifest.json");
    out << manifest.dump(2) << "\n";
}

/// Numerical blowups inside one experiment degrade it to a flagged verdict
/// instead of killing the whole run.
ExperimentResult run_guarded(const ExperimentSpec& spec) {
    try {
        return run_experiment(spec);
    } catch (const numerical_error& e) {
        ExperimentResult res;
        res.id = spec.id;
        res.verdict = Verdict::Flagged;
        res.warnings.push_back(std::string("numerical error: ") + e.what());
        return res;
    }
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir, int jobs) {
    const auto t_start = std::chrono::steady_clock::now();
    RunConfig config;
    try {
        config = load_config(config_path);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    try {
        fs::create_directories(out_dir);

        const std::size_t n = config.experiments.size();
        std::vector<ExperimentResult> results(n);
        std::vector<std::exception_ptr> failures(n);
        std::atomic<std::size_t> next{0};
        const int workers =
            std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(n, 1))));
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    results[i] = run_guarded(config.experiments[i]);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        if (workers <= 1 || n <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
        }
        for (const std::exception_ptr& e : failures)
            if (e) std::rethrow_exception(e);

        json manifest;
        manifest["tool"] = "loclab";
        manifest["version"] = kVersion;
        manifest["config_path"] = config_path;
        manifest["output_directory"] = out_dir;
        manifest["resolved_config"] = config.resolved;
        json entries = json::array();
        bool any_fail = false;
        for (std::size_t i = 0; i < n; ++i) {
            const ExperimentResult& res = results[i];
            const json& resolved = config.resolved["experiments"][i];
            const auto files = write_experiment_outputs(out_dir, res, resolved);
            entries.push_back({{"id", res.id},
                               {"verdict", verdict_name(res.verdict)},
                               {"wall_seconds", res.wall_seconds},
                               {"files", files}});
            any_fail |= (res.verdict == Verdict::Fail);
            std::cout << res.id << ": " << verdict_name(res.verdict);
            if (!res.warnings.empty()) std::cout << " (" << res.warnings.size() << " warning(s))";
            std::cout << "\n";
        }
        manifest["experiments"] = entries;
        manifest["wall_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        write_manifest(out_dir, manifest);
        return any_fail ? kExitVerdictFail : kExitOk;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

int cmd_list(bool as_json) {
    const auto& registry = experiment_registry();
    if (as_json) {
        json out = json::array();
        for (const ExperimentInfo& e : registry)
            out.push_back({{"id", e.id}, {"title", e.title}, {"claim", e.claim}});
        std::cout << out.dump(2) << "\n";
    } else {
        for (const ExperimentInfo& e : registry)
            std::cout << e.id << "  " << e.title << "\n    " << e.claim << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param_path,
              const std::vector<double>& values, const std::string& out_dir) {
    if (values.empty()) {
        std::cerr << "config error: sweep needs at least one value\n";
        return kExitConfigError;
    }
    RunConfig config;
    try {
        config = load_config(config_path);
        if (config.experiments.size() != 1)
            throw config_error("sweep: config must contain exactly one experiment");
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    try {
        fs::create_directories(out_dir);

        std::vector<std::string> path_parts;
        {
            std::stringstream ss(param_path);
            std::string part;
            while (std::getline(ss, part, '.')) path_parts.push_back(part);
        }
        if (path_parts.empty()) {
            std::cerr << "config error: empty parameter path\n";
            return kExitConfigError;
        }

        std::ostringstream csv;
        csv << "param,value,verdict,headline,delta_headline\n";
        json manifest_runs = json::array();
        bool any_fail = false;
        double prev_headline = 0.0;
        bool have_prev = false;
        for (double value : values) {
            json entry = config.resolved["experiments"][0];
            json* node = &entry;
            for (std::size_t i = 0; i + 1 < path_parts.size(); ++i) {
                if (!node->contains(path_parts[i]))
                    throw config_error("sweep: no such parameter: " + param_path);
                node = &(*node)[path_parts[i]];
            }
            if (!node->is_object() || !node->contains(path_parts.back()))
                throw config_error("sweep: no such parameter: " + param_path);
            (*node)[path_parts.back()] = value;

            json doc = {{"experiments", json::array({entry})}};
            RunConfig varied = parse_config(doc);
            const ExperimentResult res = run_guarded(varied.experiments[0]);
            any_fail |= (res.verdict == Verdict::Fail);

            const std::string tag = res.id + "_" + param_path + "=" + format_g17(value);
            std::ofstream rj(fs::path(out_dir) / (tag + ".json"),
                             std::ios::binary | std::ios::trunc);
            rj << result_to_json(res, varied.resolved["experiments"][0]).dump(2) << "\n";

            csv << param_path << ',' << format_g17(value) << ',' << verdict_name(res.verdict)
                << ',' << format_g17(res.headline) << ',';
            if (have_prev) csv << format_g17(std::abs(res.headline - prev_headline));
            csv << '\n';
            prev_headline = res.headline;
            have_prev = true;
            manifest_runs.push_back({{"id", res.id},
                                     {"param", param_path},
                                     {"value", value},
                                     {"verdict", verdict_name(res.verdict)},
                                     {"headline", res.headline}});
            std::cout << tag << ": " << verdict_name(res.verdict) << "\n";
        }
        {
            std::ofstream out(fs::path(out_dir) / "sweep.csv",
                              std::ios::binary | std::ios::trunc);
            if (!out) throw data_error("cannot write sweep.csv");
            out << csv.str();
        }
        json manifest = {{"tool", "loclab"},
                         {"version", kVersion},
                         {"config_path", config_path},
                         {"output_directory", out_dir},
                         {"sweep", {{"param", param_path}, {"runs", manifest_runs}}}};
        write_manifest(out_dir, manifest);
        return any_fail ? kExitVerdictFail : kExitOk;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

}  // namespace loclab
