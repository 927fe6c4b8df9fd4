#pragma once

// The nine reference configurations (two data sets, nine parameter rows) and a
// runner that builds each model, samples it, checks the expected outcome and
// writes a reproducible artifact bundle.

#include "rcsfif/analysis.hpp"
#include "rcsfif/attractor.hpp"
#include "rcsfif/constraint.hpp"
#include "rcsfif/error.hpp"
#include "rcsfif/io.hpp"
#include "rcsfif/model.hpp"
#include "rcsfif/validate.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rcsfif {

/// Positive data on [0, 1]; slopes are the published arithmetic-mean values.
inline DataSet reference_positive_data() {
    return DataSet::from_columns({0.0, 0.4, 0.75, 1.0}, {0.1, 1.0, 2.0, 5.0},
                                 std::vector<double>{-1.5238, 1.5238, 8.1905, 15.8095});
}

/// Hermite data lying above y = -0.5 x - 1.
inline DataSet reference_line_data() {
    return DataSet::from_columns({1.0, 3.3, 4.6, 7.2}, {-1.2, -1.1, -1.0, 4.5},
                                 std::vector<double>{0.85, -0.15, -0.4583, -0.7861});
}

enum class Expectation { Violates, Satisfies };

struct ScenarioSpec {
    std::string name;
    int dataset = 1;  ///< 1: positive data, 2: data above the line
    IfsParams params;
    Constraint constraint;
    Expectation expect = Expectation::Satisfies;

    [[nodiscard]] DataSet data() const {
        return dataset == 1 ? reference_positive_data() : reference_line_data();
    }
};

inline const std::vector<ScenarioSpec>& scenarios() {
    static const std::vector<ScenarioSpec> table = [] {
        const std::vector<double> u{0.1, 0.1, 0.1};
        const Constraint pos = Positivity{};
        const Constraint rect = Rectangle{0.1, 5.0};
        const Constraint line = AboveLine{-0.5, -1.0};
        return std::vector<ScenarioSpec>{
            // Row (a): negative alpha_1, outside the positivity prescription.
            {"fig1a", 1, {{-0.2, 0.31, 0.23}, u, {0.08, 0.1, 0.1}}, pos, Expectation::Violates},
            // Row (b): positive RCSFIF.
            {"fig1b", 1, {{0.2, 0.31, 0.23}, u, {0.08, 0.1, 0.1}}, pos, Expectation::Satisfies},
            // Row (c): classical rational cubic spline.
            {"fig1c", 1, {{0.0, 0.0, 0.0}, u, {0.08, 0.1, 0.1}}, pos, Expectation::Satisfies},
            // Row (d): RCSFIF inside [0,1] x [0.1,5].
            {"fig1d", 1, {{0.1, 0.3, 0.2}, u, {0.26, 0.1, 0.1}}, rect, Expectation::Satisfies},
            // Row (e): classical spline inside [0,1] x [0.1,5].
            {"fig1e", 1, {{0.0, 0.0, 0.0}, u, {3.8, 0.1, 0.1}}, rect, Expectation::Satisfies},
            // Row (f): negative alphas, crosses y = -0.5x - 1.
            {"fig1f", 2, {{-0.3, -0.2, -0.4}, u, {3.8, 0.1, 0.1}}, line, Expectation::Violates},
            // Row (g): above the line.
            {"fig1g", 2, {{0.17, 0.2, 0.4}, u, {3.8, 0.1, 0.1}}, line, Expectation::Satisfies},
            // Row (h): as (g) with alpha_2 = 0.1.
            {"fig1h", 2, {{0.17, 0.1, 0.4}, u, {3.8, 0.1, 0.1}}, line, Expectation::Satisfies},
            // Row (i): classical spline above the line.
            {"fig1i", 2, {{0.0, 0.0, 0.0}, u, {3.8, 0.1, 0.1}}, line, Expectation::Satisfies},
        };
    }();
    return table;
}

inline const ScenarioSpec& find_scenario(std::string_view name) {
    for (const auto& s : scenarios()) {
        if (s.name == name) return s;
    }
    throw Error(Errc::UnknownScenario, "no scenario named '" + std::string(name) + "'");
}

inline constexpr double kMarginTolerance = 1e-9;

struct ScenarioResult {
    std::string name;
    MarginReport margin;
    ValidationReport validation;
    bool expectation_met = false;
    std::vector<std::filesystem::path> files;
};

inline bool expectation_met(Expectation expect, double margin) {
    return expect == Expectation::Satisfies ? margin >= -kMarginTolerance : margin < 0.0;
}

/// Builds, samples and checks one scenario and writes model.json, samples.csv,
/// curve.svg and report.json under out_dir/<name>. Throws ExpectationFailed after
/// writing when the sampled margin contradicts the expected outcome.
inline ScenarioResult run_scenario(std::string_view name, const std::filesystem::path& out_dir,
                                   int depth = 10) {
    const ScenarioSpec& spec = find_scenario(name);
    const FifModel model = build_model(spec.data(), spec.params);
    const SampleSet samples = sample_attractor(model, depth);

    ScenarioResult res;
    res.name = spec.name;
    res.margin = margin_of(samples, spec.constraint);
    res.validation = validate(model, spec.constraint);
    res.expectation_met = expectation_met(spec.expect, res.margin.margin);

    const auto dir = out_dir / spec.name;
    io::json report;
    report["scenario"] = spec.name;
    report["expected"] = spec.expect == Expectation::Satisfies ? "satisfies" : "violates";
    report["expectation_met"] = res.expectation_met;
    report["margin"] = io::margin_to_json(res.margin, spec.constraint);
    report["validation"] = io::validation_to_json(res.validation);
    report["perturbation_bound"] = perturbation_bound(model);

    io::PlotOptions plot;
    plot.constraint = spec.constraint;
    plot.title = spec.name;

    res.files = {dir / "model.json", dir / "samples.csv", dir / "curve.svg", dir / "report.json"};
    io::write_file_atomic(res.files[0], io::model_to_json(model).dump(2) + "\n");
    io::write_file_atomic(res.files[1], io::samples_to_csv(samples.points));
    io::write_file_atomic(res.files[2], io::render_svg(model.data(), samples.points, plot));
    io::write_file_atomic(res.files[3], report.dump(2) + "\n");

    if (!res.expectation_met) {
        throw Error(Errc::ExpectationFailed,
                    spec.name + ": sampled margin " + io::format_double(res.margin.margin) +
                        " at x = " + io::format_double(res.margin.x) +
                        " contradicts the expected outcome");
    }
    return res;
}

} // namespace rcsfif
