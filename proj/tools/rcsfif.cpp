// rcsfif: build, sample, verify and plot constrained rational cubic spline FIFs.
//
// Exit status: 0 ok / constraint verified, 1 violation witnessed, 2 usage or I/O error.

#include "rcsfif/rcsfif.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace rcsfif;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct ConstraintFlags {
    bool positivity = false;
    std::vector<double> rect;
    std::vector<double> above;
    std::vector<double> below;

    void attach(CLI::App* app) {
        auto* pos = app->add_flag("--positivity", positivity, "Keep the curve non-negative");
        auto* r = app->add_option("--rect", rect, "Keep the curve inside [c, d]")->expected(2);
        auto* a = app->add_option("--above-line", above, "Stay above y = m x + k")->expected(2);
        auto* b = app->add_option("--below-line", below, "Stay below y = m x + k")->expected(2);
        pos->excludes(r, a, b);
        r->excludes(a, b);
        a->excludes(b);
    }

    [[nodiscard]] std::optional<Constraint> get() const {
        if (positivity) return Positivity{};
        if (rect.size() == 2) return Rectangle{rect[0], rect[1]};
        if (above.size() == 2) return AboveLine{above[0], above[1]};
        if (below.size() == 2) return BelowLine{below[0], below[1]};
        return std::nullopt;
    }

    [[nodiscard]] Constraint require() const {
        auto c = get();
        if (!c) {
            throw Error(Errc::InvalidArgument,
                        "a constraint flag is required (--positivity, --rect, --above-line, "
                        "--below-line)");
        }
        return *c;
    }
};

std::vector<double> fill(const std::vector<double>& given, std::size_t n, const char* name) {
    if (given.size() == 1) return std::vector<double>(n, given[0]);
    if (given.size() != n) {
        throw Error(Errc::LengthMismatch, std::string("--") + name + " needs 1 or " +
                                              std::to_string(n) + " values, got " +
                                              std::to_string(given.size()));
    }
    return given;
}

DataSet load_data(const std::string& path, bool estimate) {
    DataSet data = io::read_data_file(path);
    return estimate ? with_estimated_derivatives(data) : data;
}

fs::path output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("RCSFIF_OUT_DIR"); env && *env) return env;
    return "rcsfif_out";
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
    } else {
        io::write_file_atomic(out, text);
    }
}

int sample_depth(const FifModel& model, int depth, std::optional<double> tol) {
    if (!tol) return depth;
    const int d = detail::recursion_depth(model.alpha_max(), model.value_gap_bound(), *tol);
    return std::min(d, max_attractor_depth(model.data().size()));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained rational cubic spline fractal interpolation"};
    app.require_subcommand(1);

    ConstraintFlags cflags;
    std::string data_path;
    std::string model_path;
    std::string out;
    std::vector<double> alpha_in;
    std::vector<double> u_in{1.0};
    std::vector<double> v_in;
    double kappa = 0.99;
    std::string auto_rho;
    bool estimate = false;
    int depth = 10;
    std::optional<double> tol;
    std::string title;
    std::string scenario_name;

    auto* bounds = app.add_subcommand("bounds", "Admissible alpha intervals and v thresholds");
    bounds->add_option("data", data_path, "CSV or JSON data file")->required();
    cflags.attach(bounds);
    bounds->add_option("--u", u_in, "u values (one, or one per interval)")->delimiter(',');
    bounds->add_option("--alpha", alpha_in, "Report thresholds at these alphas")->delimiter(',');
    bounds->add_flag("--estimate-derivatives", estimate, "Fill in derivatives by arithmetic means");

    auto* build = app.add_subcommand("build", "Build a model and write it as JSON");
    build->add_option("data", data_path, "CSV or JSON data file")->required();
    cflags.attach(build);
    build->add_option("--alpha", alpha_in)->delimiter(',');
    build->add_option("--u", u_in)->delimiter(',');
    build->add_option("--v", v_in)->delimiter(',');
    build->add_option("--kappa", kappa);
    auto* auto_opt = build->add_option("--auto", auto_rho, "Select parameters; optional rho")
                         ->expected(0, 1);
    build->add_option("--out", out, "Model JSON path (stdout if omitted)");
    build->add_flag("--estimate-derivatives", estimate);

    auto* sample = app.add_subcommand("sample", "Sample the attractor to CSV");
    sample->add_option("model", model_path)->required();
    auto* depth_opt = sample->add_option("--depth", depth, "Refinement depth")->check(CLI::NonNegativeNumber);
    sample->add_option("--tol", tol, "Depth from an error tolerance")->excludes(depth_opt);
    sample->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "Check a model against a constraint");
    verify->add_option("model", model_path)->required();
    cflags.attach(verify);
    verify->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    verify->add_option("--out", out);

    auto* plot = app.add_subcommand("plot", "Render the sampled curve as SVG");
    plot->add_option("model", model_path)->required();
    cflags.attach(plot);
    plot->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    plot->add_option("--title", title);
    plot->add_option("--out", out);

    auto* scenario = app.add_subcommand("scenario", "Reproduce a reference scenario (or 'all')");
    scenario->add_option("name", scenario_name)->required();
    scenario->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    scenario->add_option("--out", out, "Output directory (default $RCSFIF_OUT_DIR)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*bounds) {
            const DataSet data = load_data(data_path, estimate);
            const std::size_t n = data.intervals();
            const BoundsReport report =
                compute_bounds(data, cflags.require(), fill(u_in, n, "u"));
            const auto alphas = alpha_in.empty() ? std::vector<double>(n, 0.0)
                                                 : fill(alpha_in, n, "alpha");
            std::cout << io::bounds_to_json(report, alphas).dump(2) << "\n";
            return kExitOk;
        }
        if (*build) {
            const DataSet data = load_data(data_path, estimate);
            const std::size_t n = data.intervals();
            IfsParams params;
            if (auto_opt->count() > 0) {
                if (!alpha_in.empty() || !v_in.empty()) {
                    throw Error(Errc::InvalidArgument, "--auto cannot be combined with --alpha/--v");
                }
                SelectionPolicy policy;
                if (!auto_rho.empty()) policy.rho = std::stod(auto_rho);
                if (u_in.size() != 1) {
                    throw Error(Errc::InvalidArgument, "--auto takes a single --u value");
                }
                policy.u = u_in[0];
                policy.kappa = kappa;
                params = auto_select(data, cflags.require(), policy);
            } else {
                if (v_in.empty()) throw Error(Errc::InvalidArgument, "--v is required without --auto");
                params.alpha = alpha_in.empty() ? std::vector<double>(n, 0.0)
                                                : fill(alpha_in, n, "alpha");
                params.u = fill(u_in, n, "u");
                params.v = fill(v_in, n, "v");
                params.kappa = kappa;
            }
            const FifModel model = build_model(data, params);
            emit(io::model_to_json(model).dump(2) + "\n", out);
            return kExitOk;
        }
        if (*sample) {
            const FifModel model = io::load_model(model_path);
            const SampleSet s = sample_attractor(model, sample_depth(model, depth, tol));
            emit(io::samples_to_csv(s.points), out);
            return kExitOk;
        }
        if (*verify) {
            const FifModel model = io::load_model(model_path);
            const Constraint c = cflags.require();
            const MarginReport m = empirical_margin(model, c, depth);
            io::json j = io::margin_to_json(m, c);
            j["validation"] = io::validation_to_json(validate(model, c));
            const bool violated = m.margin < -kMarginTolerance;
            j["verdict"] = violated ? "violation" : "verified";
            emit(j.dump(2) + "\n", out);
            return violated ? kExitViolation : kExitOk;
        }
        if (*plot) {
            const FifModel model = io::load_model(model_path);
            io::PlotOptions opt;
            opt.constraint = cflags.get();
            opt.title = title;
            const SampleSet s = sample_attractor(model, depth);
            emit(io::render_svg(model.data(), s.points, opt), out);
            return kExitOk;
        }
        if (*scenario) {
            const fs::path dir = output_dir(out);
            std::vector<std::string> names;
            if (scenario_name == "all") {
                for (const auto& s : scenarios()) names.push_back(s.name);
            } else {
                names.push_back(scenario_name);
            }
            int rc = kExitOk;
            for (const auto& name : names) {
                try {
                    const ScenarioResult r = run_scenario(name, dir, depth);
                    std::cout << name << ": ok, margin " << io::format_double(r.margin.margin)
                              << " -> " << (dir / name).string() << "\n";
                } catch (const Error& e) {
                    if (e.code() != Errc::ExpectationFailed) throw;
                    std::cerr << e.what() << "\n";
                    rc = kExitViolation;
                }
            }
            return rc;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
