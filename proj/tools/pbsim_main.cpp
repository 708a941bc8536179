// Batch CLI for the phonon-blockade simulator.
//
//   pbsim steady --preset pointA
//   pbsim sweep --preset fig5a --out fig5a.csv
//   pbsim sweep --config my_run.json --format json
//   pbsim g2tau --preset figA3
//   pbsim device --preset device-ref
//   pbsim validate

#include "pbsim/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

int main(int argc, char** argv) {
    CLI::App app{"Phonon-blockade simulator for a parametrically amplified spin-mechanical system"};
    app.require_subcommand(1);

    std::string config_path, preset, out_path, format = "csv";
    int fock_dim = 0, jobs = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--preset", preset, "named experiment preset");
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--fock-dim", fock_dim, "override mechanical truncation");
        sub->add_option("--jobs", jobs, "sweep worker threads (0 = hardware)");
    };

    const char* names[] = {"device", "steady", "sweep", "g2tau", "validate"};
    const char* descs[] = {
        "derive mechanical and magnetic device parameters",
        "one steady-state blockade report row",
        "blockade report over a 1D/2D parameter grid",
        "delayed-time second-order correlation",
        "numeric-vs-analytic cross checks",
    };
    for (int i = 0; i < 5; ++i) add_common(app.add_subcommand(names[i], descs[i]));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty() && !preset.empty())
            throw std::invalid_argument("use either --config or --preset, not both");
        pbsim::RunConfig cfg;
        if (!config_path.empty()) cfg = pbsim::load_config(config_path);
        else if (!preset.empty()) cfg = pbsim::preset_config(preset);
        else if (app.get_subcommands()[0]->get_name() == "validate") cfg = pbsim::preset_config("validate-fig5");
        else throw std::invalid_argument("a --config file or --preset name is required");

        if (!out_path.empty()) cfg.out_path = out_path;
        if (format == "json") cfg.format = pbsim::OutputFormat::json;
        if (fock_dim > 0) cfg.fock_dim_override = fock_dim;
        if (jobs == 0) jobs = int(std::thread::hardware_concurrency());
        if (jobs > 0) cfg.jobs = jobs;

        const std::string cmd = app.get_subcommands()[0]->get_name();
        const pbsim::Table table = pbsim::run_command(cmd, cfg);
        pbsim::write_table(table, cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "pbsim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
