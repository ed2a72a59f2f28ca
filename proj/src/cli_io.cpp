#include "wigner/cli_io.hpp"

#include "wigner/validate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace wigner {

namespace {

const char* const kStateGrammar =
    "State grammar (keys in any order, missing keys default to 0):\n"
    "  fock:n=3\n"
    "  coherent:q0=1,p0=2\n"
    "  sqvac:s=1,phi=0,q0=0,p0=0\n"
    "  sdf:n=3,s=0.5,phi=0.5235987756,q0=0,p0=0\n"
    "  cat:q0=2,p0=4\n";

std::vector<double> split_reals(const std::string& text, char sep, const char* what,
                                std::size_t expected) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(sep, pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != item.size()) {
            throw std::invalid_argument(std::string(what) + ": bad number '" + item + "'");
        }
        out.push_back(v);
        pos = next + 1;
    }
    if (out.size() != expected) {
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(expected) + " numbers, got " +
                                    std::to_string(out.size()));
    }
    return out;
}

SweepAxis parse_vary(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("--vary: expected name=start:stop:step, got '" + text + "'");
    }
    SweepAxis axis;
    axis.name = text.substr(0, eq);
    const auto v = split_reals(text.substr(eq + 1), ':', "--vary", 3);
    axis.start = v[0];
    axis.stop = v[1];
    axis.step = v[2];
    return axis;
}

std::vector<std::pair<std::string, double>> parse_fixed(const std::vector<std::string>& items) {
    std::vector<std::pair<std::string, double>> out;
    for (const std::string& item : items) {
        std::size_t pos = 0;
        while (pos <= item.size()) {
            std::size_t next = item.find(',', pos);
            if (next == std::string::npos) next = item.size();
            const std::string kv = item.substr(pos, next - pos);
            pos = next + 1;
            if (kv.empty()) continue;
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw std::invalid_argument("--fixed: expected name=value, got '" + kv + "'");
            }
            const auto v = split_reals(kv.substr(eq + 1), ',', "--fixed", 1);
            out.emplace_back(kv.substr(0, eq), v[0]);
        }
    }
    return out;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    if (text == "matrix") return OutputFormat::matrix;
    throw std::invalid_argument("--format: unknown format '" + text + "'");
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        default: return "matrix";
    }
}

}  // namespace

std::string format_g9(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ParseResult parse_args(const std::vector<std::string>& args) {
    CLI::App app{std::string("Wigner-function negativity toolkit.\n\n") + kStateGrammar};
    app.name("wigner");
    app.require_subcommand(1);

    std::string state_text;
    QuadratureConfig quad;
    std::string format_text;
    std::string out_path;
    std::string plot_path;
    int nq = 201, np = 201;
    std::string window_text;
    std::string vary_text;
    std::vector<std::string> fixed_texts;
    int n_max = 0;

    const auto add_quad = [&](CLI::App* cmd) {
        cmd->add_option("--tol", quad.tolerance, "absolute convergence target on delta");
        cmd->add_option("--padding", quad.padding, "extra half-width beyond the support estimate");
        cmd->add_option("--base-cells", quad.base_cells_per_unit, "base grid cells per unit length");
        cmd->add_option("--max-refinements", quad.max_refinements, "cell-doubling steps allowed");
    };
    const auto add_output = [&](CLI::App* cmd, const char* formats) {
        cmd->add_option("--format", format_text, std::string("output format: ") + formats);
        cmd->add_option("--out", out_path, "output file (default stdout)");
    };

    CLI::App* eval = app.add_subcommand("eval", "sample W(q,p) on a rectangular grid");
    eval->add_option("--state", state_text, "state to evaluate")->required();
    eval->add_option("--nq", nq, "grid nodes along q");
    eval->add_option("--np", np, "grid nodes along p");
    eval->add_option("--window", window_text, "qmin:qmax:pmin:pmax (default: support rectangle)");
    add_quad(eval);
    add_output(eval, "matrix (default), csv, json");
    eval->add_option("--plot", plot_path, "also write a gnuplot script to this path");

    CLI::App* delta = app.add_subcommand("delta", "negativity indicator delta for one state");
    delta->add_option("--state", state_text, "state to analyze")->required();
    add_quad(delta);
    add_output(delta, "json");

    CLI::App* sweep = app.add_subcommand("sweep", "delta along a one-parameter scan");
    sweep->add_option("--state", state_text, "state family template")->required();
    sweep->add_option("--vary", vary_text, "name=start:stop:step")->required();
    sweep->add_option("--fixed", fixed_texts, "name=value[,name=value...]");
    add_quad(sweep);
    add_output(sweep, "csv (default), json");
    sweep->add_option("--plot", plot_path, "also write a gnuplot script to this path");

    CLI::App* fock = app.add_subcommand("fock-scan", "delta(|n>) ladder up to --nmax");
    fock->add_option("--nmax", n_max, "largest Fock index")->required();
    add_quad(fock);
    add_output(fock, "csv (default), json");
    fock->add_option("--plot", plot_path, "also write a gnuplot script to this path");

    CLI::App* validate = app.add_subcommand("validate", "run the built-in consistency suite");
    add_quad(validate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        ParseResult r;
        r.action = ParseResult::Action::help;
        r.message = subs.empty() ? app.help() : subs.front()->help();
        return r;
    } catch (const CLI::ParseError& e) {
        ParseResult r;
        r.action = ParseResult::Action::usage_error;
        r.message = e.what();
        return r;
    }

    ParseResult result;
    result.action = ParseResult::Action::run;
    RunConfig& cfg = result.config;
    cfg.quad = quad;
    cfg.out_path = out_path;
    if (!plot_path.empty()) cfg.plot_path = plot_path;

    try {
        if (eval->parsed()) {
            cfg.command = Command::eval;
            cfg.format = format_text.empty() ? OutputFormat::matrix : parse_format(format_text);
            cfg.nq = nq;
            cfg.np = np;
            if (!window_text.empty()) {
                const auto v = split_reals(window_text, ':', "--window", 4);
                if (!(v[1] > v[0]) || !(v[3] > v[2])) {
                    throw std::invalid_argument("--window: empty rectangle");
                }
                cfg.window = Rectangle{v[0], v[1], v[2], v[3]};
            }
        } else if (delta->parsed()) {
            cfg.command = Command::delta;
            cfg.format = format_text.empty() ? OutputFormat::json : parse_format(format_text);
            if (cfg.format != OutputFormat::json) {
                throw std::invalid_argument("delta: only json output is supported");
            }
        } else if (sweep->parsed()) {
            cfg.command = Command::sweep;
            cfg.format = format_text.empty() ? OutputFormat::csv : parse_format(format_text);
            if (cfg.format == OutputFormat::matrix) {
                throw std::invalid_argument("sweep: matrix output is not supported");
            }
            cfg.vary = parse_vary(vary_text);
            cfg.fixed = parse_fixed(fixed_texts);
        } else if (fock->parsed()) {
            cfg.command = Command::fock_scan;
            cfg.format = format_text.empty() ? OutputFormat::csv : parse_format(format_text);
            if (cfg.format == OutputFormat::matrix) {
                throw std::invalid_argument("fock-scan: matrix output is not supported");
            }
            if (n_max < 1) throw std::invalid_argument("--nmax: must be >= 1");
            cfg.n_max = n_max;
        } else if (validate->parsed()) {
            cfg.command = Command::validate;
            cfg.format = OutputFormat::json;
        }

        if (eval->parsed() || delta->parsed() || sweep->parsed()) {
            cfg.state_text = state_text;
            cfg.state = parse_state_spec(state_text);
        }
        if (cfg.plot_path && cfg.out_path.empty()) {
            throw std::invalid_argument("--plot requires --out (the script references the data file)");
        }
        if (!(cfg.quad.tolerance > 0.0) || cfg.quad.base_cells_per_unit < 1 ||
            cfg.quad.max_refinements < 1 || !(cfg.quad.padding >= 0.0)) {
            throw std::invalid_argument("quadrature options out of range");
        }
    } catch (const std::invalid_argument& e) {
        result.action = ParseResult::Action::usage_error;
        result.message = e.what();
    }
    return result;
}

std::vector<std::string> to_argv(const RunConfig& cfg) {
    std::vector<std::string> argv;
    const auto push_quad = [&] {
        argv.insert(argv.end(), {"--tol", format_g9(cfg.quad.tolerance)});
        argv.insert(argv.end(), {"--padding", format_g9(cfg.quad.padding)});
        argv.insert(argv.end(), {"--base-cells", std::to_string(cfg.quad.base_cells_per_unit)});
        argv.insert(argv.end(), {"--max-refinements", std::to_string(cfg.quad.max_refinements)});
    };
    const auto push_output = [&] {
        argv.insert(argv.end(), {"--format", format_name(cfg.format)});
        if (!cfg.out_path.empty()) argv.insert(argv.end(), {"--out", cfg.out_path});
        if (cfg.plot_path) argv.insert(argv.end(), {"--plot", *cfg.plot_path});
    };
    switch (cfg.command) {
        case Command::eval: {
            argv.emplace_back("eval");
            argv.insert(argv.end(), {"--state", format_state_spec(cfg.state)});
            argv.insert(argv.end(), {"--nq", std::to_string(cfg.nq)});
            argv.insert(argv.end(), {"--np", std::to_string(cfg.np)});
            if (cfg.window) {
                argv.insert(argv.end(),
                            {"--window", format_g9(cfg.window->q_min) + ":" +
                                             format_g9(cfg.window->q_max) + ":" +
                                             format_g9(cfg.window->p_min) + ":" +
                                             format_g9(cfg.window->p_max)});
            }
            push_quad();
            push_output();
            break;
        }
        case Command::delta:
            argv.emplace_back("delta");
            argv.insert(argv.end(), {"--state", format_state_spec(cfg.state)});
            push_quad();
            push_output();
            break;
        case Command::sweep: {
            argv.emplace_back("sweep");
            argv.insert(argv.end(), {"--state", format_state_spec(cfg.state)});
            argv.insert(argv.end(), {"--vary", cfg.vary.name + "=" + format_g9(cfg.vary.start) +
                                                   ":" + format_g9(cfg.vary.stop) + ":" +
                                                   format_g9(cfg.vary.step)});
            for (const auto& [name, value] : cfg.fixed) {
                argv.insert(argv.end(), {"--fixed", name + "=" + format_g9(value)});
            }
            push_quad();
            push_output();
            break;
        }
        case Command::fock_scan:
            argv.emplace_back("fock-scan");
            argv.insert(argv.end(), {"--nmax", std::to_string(cfg.n_max)});
            push_quad();
            push_output();
            break;
        case Command::validate:
            argv.emplace_back("validate");
            push_quad();
            break;
    }
    return argv;
}

// ---- writers -----------------------------------------------------------------

void write_negativity_json(const NegativityResult& result, std::ostream& out) {
    out << "{\"delta\":" << format_g9(result.delta)
        << ",\"nu\":" << format_g9(result.nu)
        << ",\"i_plus\":" << format_g9(result.i_plus)
        << ",\"i_minus\":" << format_g9(result.i_minus)
        << ",\"error_estimate\":" << format_g9(result.error_estimate)
        << ",\"domain\":{\"q_min\":" << format_g9(result.domain.q_min)
        << ",\"q_max\":" << format_g9(result.domain.q_max)
        << ",\"p_min\":" << format_g9(result.domain.p_min)
        << ",\"p_max\":" << format_g9(result.domain.p_max)
        << "},\"resolution\":{\"nq\":" << result.resolution_q
        << ",\"np\":" << result.resolution_p << "}}\n";
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "param,delta,nu,error_estimate\n";
    for (const SweepRecord& r : result.records) {
        out << format_g9(r.param) << ',' << format_g9(r.delta) << ',' << format_g9(r.nu)
            << ',' << format_g9(r.error_estimate) << '\n';
    }
}

void write_sweep_json(const SweepResult& result, std::ostream& out) {
    out << "{\"records\":[";
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const SweepRecord& r = result.records[i];
        out << (i ? "," : "") << "{\"param\":" << format_g9(r.param)
            << ",\"delta\":" << format_g9(r.delta) << ",\"nu\":" << format_g9(r.nu)
            << ",\"error_estimate\":" << format_g9(r.error_estimate)
            << ",\"converged\":" << (r.converged ? "true" : "false") << "}";
    }
    out << "],\"extrema\":[";
    for (std::size_t i = 0; i < result.extrema.size(); ++i) {
        const Extremum& e = result.extrema[i];
        out << (i ? "," : "") << "{\"location\":" << format_g9(e.location)
            << ",\"value\":" << format_g9(e.value) << ",\"kind\":\""
            << (e.kind == ExtremumKind::maximum ? "max" : "min") << "\"}";
    }
    out << "],\"period_estimate\":";
    if (result.period_estimate) {
        out << format_g9(*result.period_estimate);
    } else {
        out << "null";
    }
    if (result.max_rel_dev_from_half_sqrt_n) {
        out << ",\"monotone_increasing\":" << (result.monotone_increasing ? "true" : "false")
            << ",\"max_rel_dev_from_half_sqrt_n\":"
            << format_g9(*result.max_rel_dev_from_half_sqrt_n);
    }
    out << "}\n";
}

void write_grid_matrix(const PhaseGrid& grid, std::ostream& out) {
    out << "# q: " << format_g9(grid.q_min) << ' ' << format_g9(grid.q_max) << ' ' << grid.nq
        << "\n# p: " << format_g9(grid.p_min) << ' ' << format_g9(grid.p_max) << ' ' << grid.np
        << '\n';
    for (int i = 0; i < grid.nq; ++i) {
        for (int j = 0; j < grid.np; ++j) {
            if (j) out << ' ';
            out << format_g9(grid.value(i, j));
        }
        out << '\n';
    }
}

void write_grid_csv(const PhaseGrid& grid, std::ostream& out) {
    out << "q,p,value\n";
    for (int i = 0; i < grid.nq; ++i) {
        const double q = grid.q_min + i * grid.dq();
        for (int j = 0; j < grid.np; ++j) {
            const double p = grid.p_min + j * grid.dp();
            out << format_g9(q) << ',' << format_g9(p) << ',' << format_g9(grid.value(i, j))
                << '\n';
        }
        if (i + 1 < grid.nq) out << '\n';  // gnuplot block separator
    }
}

void write_grid_json(const PhaseGrid& grid, std::ostream& out) {
    out << "{\"q_min\":" << format_g9(grid.q_min) << ",\"q_max\":" << format_g9(grid.q_max)
        << ",\"p_min\":" << format_g9(grid.p_min) << ",\"p_max\":" << format_g9(grid.p_max)
        << ",\"nq\":" << grid.nq << ",\"np\":" << grid.np << ",\"values\":[";
    for (int i = 0; i < grid.nq; ++i) {
        out << (i ? ",[" : "[");
        for (int j = 0; j < grid.np; ++j) {
            if (j) out << ',';
            out << format_g9(grid.value(i, j));
        }
        out << ']';
    }
    out << "]}\n";
}

void write_sweep_plot_script(const std::string& data_path, const std::string& varied,
                             bool with_half_sqrt_fit, std::ostream& out) {
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel '" << varied << "'\n"
        << "set ylabel 'delta'\n"
        << "set grid\n"
        << "plot '" << data_path << "' using 1:2 with lines lw 2 title 'delta'";
    if (with_half_sqrt_fit) {
        out << ", \\\n     0.5*sqrt(x) with lines dashtype 2 lw 2 title 'sqrt(n)/2'";
    }
    out << "\npause -1 'press enter to close'\n";
}

void write_grid_plot_script(const PhaseGrid& grid, const std::string& data_path,
                            std::ostream& out) {
    out << "set view map\n"
        << "set size ratio -1\n"
        << "set xlabel 'q'\n"
        << "set ylabel 'p'\n"
        << "set palette defined (-1 'blue', 0 'white', 1 'red')\n"
        << "set cbrange [-0.32:0.32]\n"
        << "splot '" << data_path << "' matrix using ("
        << format_g9(grid.q_min) << "+$2*" << format_g9(grid.dq()) << "):("
        << format_g9(grid.p_min) << "+$1*" << format_g9(grid.dp())
        << "):3 with pm3d notitle\n"
        << "pause -1 'press enter to close'\n";
}

// ---- command execution ----------------------------------------------------------

namespace {

class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void maybe_write_plot(const RunConfig& cfg, const SweepResult& result) {
    if (!cfg.plot_path) return;
    std::ofstream script(*cfg.plot_path);
    if (!script) {
        throw std::runtime_error("cannot open plot script '" + *cfg.plot_path + "'");
    }
    const bool fock = cfg.command == Command::fock_scan;
    write_sweep_plot_script(cfg.out_path, fock ? "n" : cfg.vary.name,
                            fock && result.max_rel_dev_from_half_sqrt_n.has_value(), script);
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::eval: {
            const Rectangle rect =
                cfg.window ? *cfg.window : support_rectangle(cfg.state, cfg.quad.padding);
            const PhaseGrid grid = evaluate_grid(cfg.state, rect, cfg.nq, cfg.np);
            OutputSink sink(cfg.out_path, out);
            switch (cfg.format) {
                case OutputFormat::matrix: write_grid_matrix(grid, sink.stream()); break;
                case OutputFormat::csv: write_grid_csv(grid, sink.stream()); break;
                case OutputFormat::json: write_grid_json(grid, sink.stream()); break;
            }
            if (cfg.plot_path) {
                std::ofstream script(*cfg.plot_path);
                if (!script) {
                    throw std::runtime_error("cannot open plot script '" + *cfg.plot_path + "'");
                }
                write_grid_plot_script(grid, cfg.out_path, script);
            }
            return 0;
        }
        case Command::delta: {
            const NegativityResult result = delta_indicator(cfg.state, cfg.quad);
            OutputSink sink(cfg.out_path, out);
            write_negativity_json(result, sink.stream());
            if (!result.converged) {
                err << "warning: quadrature did not converge to tol="
                    << format_g9(cfg.quad.tolerance) << " within "
                    << cfg.quad.max_refinements << " refinements (error estimate "
                    << format_g9(result.error_estimate) << ")\n";
                return 1;
            }
            return 0;
        }
        case Command::sweep: {
            const SweepResult result = run_sweep({cfg.state, cfg.vary, cfg.fixed, cfg.quad});
            OutputSink sink(cfg.out_path, out);
            if (cfg.format == OutputFormat::csv) {
                write_sweep_csv(result, sink.stream());
            } else {
                write_sweep_json(result, sink.stream());
            }
            maybe_write_plot(cfg, result);
            const bool all_converged =
                std::all_of(result.records.begin(), result.records.end(),
                            [](const SweepRecord& r) { return r.converged; });
            if (!all_converged) {
                err << "warning: some scan points did not converge\n";
                return 1;
            }
            return 0;
        }
        case Command::fock_scan: {
            const SweepResult result = fock_scan(cfg.n_max, cfg.quad);
            OutputSink sink(cfg.out_path, out);
            if (cfg.format == OutputFormat::csv) {
                write_sweep_csv(result, sink.stream());
            } else {
                write_sweep_json(result, sink.stream());
            }
            maybe_write_plot(cfg, result);
            return 0;
        }
        case Command::validate: {
            const std::vector<CheckResult> checks = run_validation(cfg.quad);
            return write_validation_report(checks, out) ? 0 : 1;
        }
    }
    return 2;
}

}  // namespace wigner
