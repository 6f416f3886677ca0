// pintoc command-line driver.  Talks to libpintoc exclusively through the
// C API in pintoc.h; all numerics live behind that boundary.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pintoc.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    int workers = -1;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "JSON config file ('-' reads stdin)");
    cmd->add_option("--out", args.out_dir, "output directory (default: .)");
    cmd->add_option("--workers", args.workers, "worker threads (overrides config)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides config)");
}

// Flags override file keys; the resolved document goes to the library.
std::string load_config(const CommonArgs& args) {
    json j = json::object();
    if (!args.config_path.empty()) {
        std::string text;
        if (args.config_path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(args.config_path);
            if (!in) throw std::runtime_error("cannot open config: " + args.config_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        j = json::parse(text);
    }
    if (args.workers > 0) j["workers"] = args.workers;
    if (args.seed >= 0) j["seed"] = args.seed;
    return j.dump();
}

void write_file(const fs::path& path, const char* content) {
    if (content == nullptr) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int finish(pintoc_status status, pintoc_run* run, const fs::path& dir,
           const std::string& stem) {
    if (run == nullptr) {
        std::cerr << "error: " << pintoc_last_error() << '\n';
        return 1;
    }
    (void)status;
    fs::create_directories(dir);
    write_file(dir / (stem + "_record.json"), pintoc_run_record(run));
    write_file(dir / (stem + ".csv"), pintoc_run_csv(run));
    write_file(dir / (stem + "_diff.txt"), pintoc_run_diff(run));
    write_file(dir / (stem + "_trajectory.csv"), pintoc_run_trajectory(run));
    std::cout << pintoc_run_record(run) << '\n';
    const bool converged = pintoc_run_converged(run) != 0;
    pintoc_run_free(run);
    if (!converged) {
        std::cerr << "warning: run did not meet its tolerance (record written)\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel-in-time optimal control solver (1D heat/wave)"};
    app.require_subcommand(1);

    CommonArgs solve_args, table_args, bound_args, spectrum_args;
    std::string table_id;
    bool with_trajectory = false;

    CLI::App* solve = app.add_subcommand("solve", "solve one control problem");
    add_common(solve, solve_args);
    solve->add_flag("--trajectory", with_trajectory, "emit the fine-grid trajectory CSV");

    CLI::App* table = app.add_subcommand("table", "reproduce a published table");
    table->add_option("id", table_id, "t1|t2|t3|t4|t5|t10")->required();
    add_common(table, table_args);

    CLI::App* bound = app.add_subcommand("bound", "eigenvalue bound sweep over N");
    add_common(bound, bound_args);

    CLI::App* spectrum = app.add_subcommand("spectrum", "extreme eigenvalues of M");
    add_common(spectrum, spectrum_args);

    CLI11_PARSE(app, argc, argv);

    try {
        pintoc_run* run = nullptr;
        pintoc_status status = PINTOC_OK;
        if (solve->parsed()) {
            json j = json::parse(load_config(solve_args));
            if (with_trajectory) j["trajectory"] = true;
            status = pintoc_solve(j.dump().c_str(), &run);
            return finish(status, run, solve_args.out_dir, "solve");
        }
        if (table->parsed()) {
            const std::string cfg = load_config(table_args);
            status = pintoc_table(table_id.c_str(), cfg.c_str(), &run);
            return finish(status, run, table_args.out_dir, "table_" + table_id);
        }
        if (bound->parsed()) {
            const std::string cfg = load_config(bound_args);
            status = pintoc_bound(cfg.c_str(), &run);
            return finish(status, run, bound_args.out_dir, "bound");
        }
        const std::string cfg = load_config(spectrum_args);
        status = pintoc_spectrum(cfg.c_str(), &run);
        return finish(status, run, spectrum_args.out_dir, "spectrum");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
