// Command-line runner for the shallow water experiments.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pampa/bench/config.hpp"

namespace fs = std::filesystem;
using namespace pampa;
using namespace pampa::bench;

namespace {

void emit_summary(const RunSummary& s, const OutputOptions& out) {
    const auto j = summary_json(s);
    if (!out.directory.empty()) {
        auto f = open_output(out.directory / (s.name + "_summary.json"));
        f << j.dump(2) << '\n';
    }
    std::cout << j.dump(2) << '\n';
}

void print_report(const ErrorReport& rep) {
    const std::size_t nf = rep.errors.front().points.size();
    std::printf("%s L1 errors%s\n", rep.runs.front().name.c_str(), rep.runge ? " (Runge estimates)" : "");
    for (const bool points : {true, false}) {
        std::printf("  %s\n  %8s", points ? "point values" : "cell averages", "cells");
        for (std::size_t k = 0; k < nf; ++k) std::printf("  %12s %6s", field_name(k), "rate");
        std::printf("\n");
        for (std::size_t m = 0; m < rep.errors.size(); ++m) {
            std::printf("  %8zu", rep.cells[m]);
            for (std::size_t k = 0; k < nf; ++k) {
                const auto& e = (points ? rep.errors[m].points : rep.errors[m].averages)[k];
                const auto r = rep.rates(k, points);
                if (m == 0)
                    std::printf("  %12.3e %6s", e.l1, "-");
                else
                    std::printf("  %12.3e %6.2f", e.l1, r[m - 1]);
            }
            std::printf("\n");
        }
    }
}

std::vector<std::size_t> parse_meshes(const std::string& s) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto comma = s.find(',', pos);
        out.push_back(std::stoul(s.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PAMPA shallow water solver: experiments and convergence studies"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run an experiment described by a JSON config");
    std::string config_path;
    run_cmd->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

    auto* ex_cmd = app.add_subcommand("example", "run one of the built-in examples");
    std::string ex_name, out_dir, quadrature, order;
    std::size_t cells = 0;
    double t_final = -1.0, steady_tol = 0.0;
    bool no_svg = false;
    ex_cmd->add_option("name", ex_name, "example name (see list-examples)")->required();
    ex_cmd->add_option("--cells", cells, "number of cells");
    ex_cmd->add_option("--tfinal", t_final, "final time");
    ex_cmd->add_option("--quadrature", quadrature, "scIII or IIIA")->check(CLI::IsMember({"scIII", "IIIA"}));
    ex_cmd->add_option("--order", order, "high, low or high_unlimited")
        ->check(CLI::IsMember({"high", "low", "high_unlimited"}));
    ex_cmd->add_option("--out", out_dir, "directory for CSV, SVG and summary files");
    ex_cmd->add_option("--steady-tol", steady_tol, "stop once max |du|/dt falls below this");
    ex_cmd->add_flag("--no-svg", no_svg, "skip SVG plots");

    auto* conv_cmd = app.add_subcommand("converge", "mesh refinement study");
    std::string conv_target, meshes_arg;
    conv_cmd->add_option("target", conv_target, "config file or example name")->required();
    conv_cmd->add_option("--meshes", meshes_arg, "comma separated cell counts, each twice the previous");
    conv_cmd->add_option("--out", out_dir, "directory for per-mesh output");

    auto* list_cmd = app.add_subcommand("list-examples", "print the built-in examples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list_cmd) {
            for (const auto& n : example_names()) std::printf("%-26s %s\n", n.c_str(), make_example(n).description.c_str());
            return 0;
        }
        if (*run_cmd) {
            const auto cfg = load_config(config_path);
            emit_summary(run_experiment(cfg.experiment, cfg.output), cfg.output);
            return 0;
        }
        if (*ex_cmd) {
            Experiment e = make_example(ex_name);
            if (cells > 0) e.cells = cells;
            if (t_final >= 0.0) {
                e.controls.t_final = t_final;
                std::erase_if(e.settings.snapshot_times, [&](double t) { return t > t_final; });
            }
            if (!quadrature.empty()) e.controls.quadrature = parse_quadrature(quadrature);
            if (!order.empty()) e.controls.order = parse_order(order);
            if (steady_tol > 0.0) e.settings.steady_tolerance = steady_tol;
            OutputOptions out{out_dir, !no_svg};
            emit_summary(run_experiment(e, out), out);
            return 0;
        }
        if (*conv_cmd) {
            ExperimentConfig cfg;
            if (fs::exists(conv_target))
                cfg = load_config(conv_target);
            else
                cfg.experiment = make_example(conv_target);
            if (!meshes_arg.empty()) cfg.meshes = parse_meshes(meshes_arg);
            if (cfg.meshes.empty()) throw std::invalid_argument("converge: no meshes given (use --meshes)");
            if (!out_dir.empty()) cfg.output.directory = out_dir;
            print_report(convergence_study(cfg.experiment, cfg.meshes, cfg.output));
            return 0;
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
