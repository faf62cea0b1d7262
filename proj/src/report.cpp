#include "ibc/report.hpp"

#include "ibc/experiments.hpp"
#include "ibc/problems.hpp"
#include "ibc/quality.hpp"
#include "ibc/reduction.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

namespace ibc::cli {

namespace {

using Cell = std::variant<std::monostate, double, long, bool, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json summary = nlohmann::json::object();
};

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "1" : "0";
            else return v;
        },
        c);
}

nlohmann::json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else return v;
        },
        c);
}

nlohmann::json meta_of(const RunConfig& c) {
    return {
        {"command", c.command},   {"problem", c.problem},
        {"n", c.n},               {"k", c.k},
        {"k_max", c.k_max},       {"alpha", c.alpha},
        {"reynolds", c.reynolds}, {"null_tol", c.null_tol},
        {"zero_floor", c.zero_floor}, {"theta_threshold", c.theta_threshold},
        {"ic", c.ic},             {"r_list", c.r_list},
        {"t_end", c.t_end},       {"grid", c.grid},
        {"format", c.format == Format::Csv ? "csv" : "json"},
        {"out", c.out ? nlohmann::json(*c.out) : nlohmann::json(nullptr)},
    };
}

void write_table(const RunConfig& config, const Table& table, std::ostream& out) {
    if (config.format == Format::Csv) {
        for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
        return;
    }
    nlohmann::json doc;
    doc["meta"] = meta_of(config);
    if (!table.summary.empty()) doc["meta"]["summary"] = table.summary;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

QualityOptions quality_options(const RunConfig& c) {
    QualityOptions opts;
    opts.compress.null_tol = c.null_tol;
    opts.zero_floor = c.zero_floor;
    opts.theta_threshold = c.theta_threshold;
    return opts;
}

const problems::BenchmarkProblem& problem_of(const RunConfig& c) {
    const auto* p = problems::find_problem(c.problem);
    if (!p) throw Error(ErrorKind::InvalidArgument, "unknown problem '" + c.problem + "'");
    return *p;
}

ConstrainedSystem build(const RunConfig& c) {
    return problem_of(c).build({c.n, c.alpha, c.reynolds});
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int exit_code_for(ErrorKind kind) noexcept {
    return kind == ErrorKind::InvalidArgument || kind == ErrorKind::DepthTooLarge ? kExitUsage : kExitNumerical;
}

void validate(const RunConfig& c) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive");
    };
    positive(c.n, "--n");
    positive(c.k, "--k");
    positive(c.k_max, "--k-max");
    positive(c.alpha, "--alpha");
    positive(c.reynolds, "--reynolds");
    positive(c.null_tol, "--null-tol");
    positive(c.zero_floor, "--zero-floor");
    positive(c.theta_threshold, "--theta-threshold");
    if (!(c.t_end >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--t-end must be non-negative");
    for (int r : c.r_list) positive(r, "--r-list entries");
    if (c.command == "problems") return;
    const auto& p = problem_of(c);
    if (c.n < p.min_n)
        throw Error(ErrorKind::InvalidArgument,
                    "--n must be at least " + std::to_string(p.min_n) + " for '" + p.name + "'");
    if (!problems::parse_initial_condition(c.ic))
        throw Error(ErrorKind::InvalidArgument, "unknown initial condition '" + c.ic + "' (use bump or sine)");
}

void cmd_analyze(const RunConfig& config, std::ostream& out) {
    const auto sys = build(config);
    const auto report = quality_report(sys, config.k, quality_options(config));

    Table t;
    t.header = {"rank", "re_lambda", "im_lambda", "s_norm", "theta", "zero_mode"};
    long rank = 0;
    for (const auto& m : report.modes) {
        t.rows.push_back({++rank, m.lambda.real(), m.lambda.imag(), optional_cell(m.s_norm), m.theta, m.zero_mode});
    }
    t.summary = {{"state_dimension", report.n}, {"r", report.r},
                 {"multiplicity_warning", report.multiplicity_warning}};
    write_table(config, t, out);
}

void cmd_sweep_k(const RunConfig& config, std::ostream& out) {
    const auto& problem = problem_of(config);
    const auto sys = build(config);
    const auto reference = experiments::reference_covering(problem, spectral_norm(sys.a()));

    Table t;
    if (config.grid) {
        t.header = {"k",         "rank",      "re_lambda", "im_lambda", "re_reference", "im_reference",
                    "abs_error", "rel_error", "s_norm",    "theta",     "zero_mode"};
        for (const auto& c : experiments::k_quality_sweep(sys, reference, config.k_max, quality_options(config))) {
            t.rows.push_back({long{c.k}, long{c.rank}, c.lambda.real(), c.lambda.imag(), c.reference.real(),
                              c.reference.imag(), c.abs_error, c.rel_error, optional_cell(c.s_norm), c.theta,
                              c.zero_mode});
        }
        write_table(config, t, out);
        return;
    }

    const auto sweep = experiments::k_sweep(sys, reference, config.k_max, quality_options(config).compress);
    t.header = {"k", "r", "proxy_real_error", "max_abs_error", "min_abs_error", "max_real_part", "spurious_free"};
    for (const auto& r : sweep.rows) {
        t.rows.push_back({long{r.k}, long{r.r}, r.proxy_real_error, r.max_abs_error, r.min_abs_error,
                          r.max_real_part, r.spurious_free});
    }
    t.summary = {{"a_norm", sweep.a_norm}};
    if (sweep.terminated) t.summary["terminated"] = *sweep.terminated;
    write_table(config, t, out);
}

void cmd_reduce(const RunConfig& config, std::ostream& out) {
    reduction::SweepOptions opts;
    opts.k = config.k;
    opts.quality = quality_options(config);
    const auto ic = *problems::parse_initial_condition(config.ic);
    const auto sweep = reduction::reduction_sweep(config.problem, config.n, ic, config.r_list, config.t_end, opts);

    Table t;
    t.header = {"r", "retained", "error", "theta_r", "restrict_residual"};
    for (const auto& r : sweep.rows)
        t.rows.push_back({long{r.r}, long{r.retained}, r.error, r.theta_r, r.restrict_residual});
    t.summary = {{"full_error", sweep.full_error}};
    write_table(config, t, out);
}

void cmd_problems(const RunConfig& config, std::ostream& out) {
    Table t;
    t.header = {"name", "parameters", "min_n", "reference", "description"};
    for (const auto& p : problems::registry()) {
        std::string params;
        for (const auto& s : p.parameters) params += (params.empty() ? "" : ";") + s;
        t.rows.push_back({p.name, params, long{p.min_n}, static_cast<bool>(p.reference), p.description});
    }
    write_table(config, t, out);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        std::ostringstream buffer;
        if (config.command == "analyze") cmd_analyze(config, buffer);
        else if (config.command == "sweep-k") cmd_sweep_k(config, buffer);
        else if (config.command == "reduce") cmd_reduce(config, buffer);
        else if (config.command == "problems") cmd_problems(config, buffer);
        else throw Error(ErrorKind::InvalidArgument, "unknown command '" + config.command + "'");

        if (config.out) {
            std::ofstream file(*config.out, std::ios::trunc);
            if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open output file " + *config.out);
            file << buffer.str();
        } else {
            out << buffer.str();
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace ibc::cli
