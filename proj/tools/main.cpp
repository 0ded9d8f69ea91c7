#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "d2d/config.hpp"
#include "d2d/engine.hpp"
#include "d2d/sweep.hpp"
#include "d2d/textio.hpp"

namespace {

d2d::EpisodeConfig load_base_config(const std::string& config_path, std::uint64_t seed, bool seed_set) {
    d2d::EpisodeConfig cfg;
    if (!config_path.empty()) cfg = d2d::parse_config_file(config_path);
    if (seed_set) cfg.seed = seed;
    cfg.validate();
    return cfg;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

int cmd_run(const std::string& config_path, std::uint64_t seed, bool seed_set,
            const std::string& out_dir) {
    d2d::EpisodeConfig cfg = load_base_config(config_path, seed, seed_set);
    d2d::EpisodeMetrics metrics = d2d::run_episode(cfg);

    if (out_dir.empty()) {
        d2d::write_user_metrics_csv(metrics, std::cout);
        std::cout << '\n';
        d2d::write_summary_csv(metrics, std::cout);
    } else {
        std::filesystem::create_directories(out_dir);
        auto users = open_out(std::filesystem::path(out_dir) / "episode_users.csv");
        d2d::write_user_metrics_csv(metrics, users);
        auto summary = open_out(std::filesystem::path(out_dir) / "episode_summary.csv");
        d2d::write_summary_csv(metrics, summary);
        std::cout << "wrote " << out_dir << "/episode_users.csv and episode_summary.csv\n";
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed, bool seed_set,
              const std::string& out_dir, const std::string& axis_name,
              std::vector<double> values, int replicas, bool plot) {
    d2d::SweepSpec spec;
    spec.base = load_base_config(config_path, seed, seed_set);
    spec.axis = d2d::axis_from_name(axis_name);
    spec.values = std::move(values);
    spec.replicas = replicas;

    d2d::SweepTable table = d2d::run_sweep(spec);

    if (out_dir.empty()) {
        d2d::emit_csv(table, std::cout);
        if (plot) std::cerr << "note: --plot needs --out to know where to put the SVG files\n";
    } else {
        std::filesystem::create_directories(out_dir);
        auto csv = open_out(std::filesystem::path(out_dir) / "sweep.csv");
        d2d::emit_csv(table, csv);
        if (plot) {
            for (const auto& metric : d2d::sweep_metrics()) {
                auto svg = open_out(std::filesystem::path(out_dir) /
                                    ("sweep_" + axis_name + "_" + metric + ".svg"));
                svg << d2d::render_metric_svg(table, metric);
            }
        }
        std::cout << "wrote " << out_dir << "/sweep.csv" << (plot ? " and SVG charts" : "") << '\n';
    }
    return 0;
}

int cmd_fit(const std::string& trace_path, const std::string& positions_path, double x_min_s,
            const std::string& out_path) {
    std::ifstream trace_in(trace_path, std::ios::binary);
    if (!trace_in) throw std::runtime_error("cannot open trace file: " + trace_path);
    auto records = d2d::parse_trace(trace_in);
    auto stats = d2d::contact_stats(records);

    d2d::XMinModel x_min = [x_min_s](const d2d::UserPair&) { return x_min_s; };
    d2d::ClosenessGraph graph;
    if (positions_path.empty()) {
        graph = d2d::build_graph(stats, x_min);
    } else {
        std::ifstream pos_in(positions_path, std::ios::binary);
        if (!pos_in) throw std::runtime_error("cannot open positions file: " + positions_path);
        graph = d2d::build_graph(stats, d2d::parse_positions(pos_in), x_min);
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    *out << "user_a,user_b,w\n";
    for (const auto& [pair, w] : graph.edges)
        *out << pair.a << ',' << pair.b << ',' << d2d::dtos(w) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"d2dsim: a cell-level simulator of social-aware device-to-device traffic offloading"};
    app.require_subcommand(1);
    app.footer(
        "Defaults marked [assumed] are operating assumptions, not measured inputs:\n"
        "  d2d_max_m = 80, w_t = 0.5, content_bits = 1e6, channel.bandwidth_hz = 1e7 [assumed]\n"
        "  channel.path_loss_exp = 3, costs.{c_t = 0.05, c_m = 0.05, c_c = 0.15} as rate fractions [assumed]\n"
        "Run 'd2dsim print-config' for the full key table.");

    std::string config_path, out_dir, axis, trace_path, positions_path, fit_out;
    std::uint64_t seed = 0;
    std::vector<double> values;
    int replicas = 100;
    bool plot = false;
    double x_min_s = 1.0;

    auto* run = app.add_subcommand("run", "Run one episode and emit per-user and summary CSV");
    run->add_option("--config", config_path, "Episode config file (key = value lines)");
    run->add_option("--seed", seed, "Master seed override");
    run->add_option("--out", out_dir, "Output directory (default: stdout)");

    auto* sweep = app.add_subcommand("sweep", "Replicate episodes across one parameter axis");
    sweep->add_option("--config", config_path, "Episode config file (key = value lines)");
    sweep->add_option("--seed", seed, "Master seed override; replica r uses seed + r");
    sweep->add_option("--out", out_dir, "Output directory (default: CSV to stdout)");
    sweep->add_option("--axis", axis, "alpha, d2d_max, cost_fraction or w_t")->required();
    sweep->add_option("--values", values, "Comma separated axis values, increasing")
        ->required()
        ->delimiter(',');
    sweep->add_option("--replicas", replicas, "Episodes per axis value")
        ->check(CLI::PositiveNumber);
    sweep->add_flag("--plot", plot, "Also write one SVG line chart per metric (needs --out)");

    auto* fit = app.add_subcommand("fit", "Fit a closeness graph from a contact trace CSV");
    fit->add_option("--trace", trace_path, "Trace CSV: user_a,user_b,start_s,duration_s")->required();
    fit->add_option("--positions", positions_path, "Optional positions CSV: user_id,x_m,y_m");
    fit->add_option("--x-min", x_min_s, "Minimum contact time in seconds for a transfer")
        ->check(CLI::PositiveNumber);
    fit->add_option("--out", fit_out, "Output file (default: stdout)");

    auto* print_config = app.add_subcommand("print-config", "Print the default config key table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed, run->count("--seed") > 0, out_dir);
        if (sweep->parsed())
            return cmd_sweep(config_path, seed, sweep->count("--seed") > 0, out_dir, axis, values,
                             replicas, plot);
        if (fit->parsed())
            return cmd_fit(trace_path, positions_path, x_min_s, fit_out);
        if (print_config->parsed()) {
            std::cout << d2d::default_config_text();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
