#include "ibc/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    using ibc::cli::Format;

    CLI::App app{"Detect and rank spurious eigenmodes of constrained spectral discretizations"};
    app.require_subcommand(1);

    ibc::cli::RunConfig config;
    std::string out_path;
    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", config.format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--out", out_path, "Output file (default: stdout)");
    };
    auto system_opts = [&](CLI::App* sub) {
        sub->add_option("--problem", config.problem, "Registered problem name")->required();
        sub->add_option("--n", config.n, "Collocation points per field");
        sub->add_option("--alpha", config.alpha, "Streamwise wavenumber (orr-sommerfeld)");
        sub->add_option("--reynolds", config.reynolds, "Reynolds number (orr-sommerfeld)");
        sub->add_option("--null-tol", config.null_tol, "Relative singular-value cutoff for N(O_k)");
        sub->add_option("--zero-floor", config.zero_floor, "Relative floor for zero modes");
        sub->add_option("--theta-threshold", config.theta_threshold, "Grassmann distance of a good mode");
        common(sub);
    };

    auto* analyze = app.add_subcommand("analyze", "Score every mode of a compressed system");
    system_opts(analyze);
    analyze->add_option("--k", config.k, "Observability depth");

    auto* sweep = app.add_subcommand("sweep-k", "Eigenvalue errors for k = 1..k-max");
    system_opts(sweep);
    sweep->add_option("--k-max", config.k_max, "Largest observability depth");
    sweep->add_flag("--grid", config.grid, "Emit the full k x mode quality grid");

    auto* reduce = app.add_subcommand("reduce", "Quality-ranked modal truncation errors");
    system_opts(reduce);
    reduce->add_option("--k", config.k, "Observability depth");
    reduce->add_option("--ic", config.ic, "Initial condition: bump or sine");
    reduce->add_option("--r-list", config.r_list, "Retained mode counts (default: all)")->delimiter(',');
    reduce->add_option("--t-end", config.t_end, "Final time");

    auto* list = app.add_subcommand("problems", "List registered problems and their parameters");
    common(list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ibc::cli::kExitUsage;
    }

    config.command = app.get_subcommands().front()->get_name();
    if (!out_path.empty()) config.out = out_path;
    return ibc::cli::run(config, std::cout, std::cerr);
}
