#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dematel/engine.hpp"
#include "dematel/errors.hpp"
#include "dematel/io.hpp"
#include "dematel/model.hpp"
#include "dematel/sensitivity.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dematel::Error("cannot read \"" + path.string() + "\": file not found or unreadable");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw dematel::Error("failed while reading \"" + path.string() + "\"");
  return std::move(buf).str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw dematel::Error("cannot open \"" + path.string() + "\" for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw dematel::Error("failed while writing \"" + path.string() + "\"");
}

struct AnalyzeOptions {
  std::string criteria_path;
  std::string survey_path;
  std::string drm_path;
  std::string output_dir = ".";
  dematel::NormMode norm_mode = dematel::NormMode::RowColMax;
  std::optional<double> alpha_override;
  std::vector<double> strength_bounds;  // empty or (moderate, strong)
};

struct SensitivityOptions {
  std::string criteria_path;
  std::string survey_path;
  std::string output_path = "stability.csv";
  dematel::NormMode norm_mode = dematel::NormMode::RowColMax;
  double flip_probability = 0.0;
  int magnitude = 1;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  unsigned threads = 0;
};

dematel::PipelineOptions pipeline_options(const AnalyzeOptions& opt) {
  dematel::PipelineOptions options;
  options.norm_mode = opt.norm_mode;
  options.alpha_override = opt.alpha_override;
  if (opt.strength_bounds.size() == 2) {
    options.strength_bounds = std::make_pair(opt.strength_bounds[0], opt.strength_bounds[1]);
  }
  return options;
}

void run_validate(const std::string& criteria_path, const std::string& survey_path) {
  dematel::CriteriaSet cs = dematel::io::parse_criteria_manifest(read_file(criteria_path));
  std::vector<dematel::ExpertResponse> responses =
      dematel::io::parse_survey_csv(read_file(survey_path), cs);
  const std::size_t cells = cs.size() * (cs.size() - 1);
  for (const auto& resp : responses) {
    std::printf("expert %s: %zu cells, ok\n", resp.expert_id().c_str(), cells);
  }
  std::printf("%zu experts, %zu criteria, complete\n", responses.size(), cs.size());
}

void print_summary(const dematel::AnalysisResult& result) {
  std::printf("alpha = %.6f\n", result.alpha);
  std::printf("%-6s %10s %10s %10s %10s  %s\n", "code", "D", "R", "D+R", "D-R", "group");
  for (const auto& rec : result.records) {
    std::printf("%-6s %10s %10s %10s %10s  %s\n", rec.criterion.code.c_str(),
                dematel::io::display_4dp(rec.d).c_str(), dematel::io::display_4dp(rec.r).c_str(),
                dematel::io::display_4dp(rec.prominence).c_str(),
                dematel::io::display_4dp(rec.relation).c_str(), dematel::to_string(rec.group));
  }
}

void run_analyze(const AnalyzeOptions& opt) {
  dematel::CriteriaSet cs = dematel::io::parse_criteria_manifest(read_file(opt.criteria_path));

  dematel::AnalysisResult result = [&] {
    if (!opt.survey_path.empty()) {
      std::vector<dematel::ExpertResponse> responses =
          dematel::io::parse_survey_csv(read_file(opt.survey_path), cs);
      return dematel::run_pipeline(std::span<const dematel::ExpertResponse>(responses), cs,
                                   pipeline_options(opt));
    }
    dematel::DirectRelationMatrix drm = dematel::io::parse_drm_csv(read_file(opt.drm_path), cs);
    return dematel::run_pipeline(drm, cs, pipeline_options(opt));
  }();

  fs::create_directories(opt.output_dir);
  const fs::path out(opt.output_dir);
  write_file(out / "report.json", dematel::io::write_report_json(result, cs));
  write_file(out / "digraph.dot", dematel::io::write_dot(result.edges, cs, result.records));
  write_file(out / "scatter.csv", dematel::io::write_scatter_csv(result.records));

  print_summary(result);
}

void run_sensitivity(const SensitivityOptions& opt) {
  dematel::CriteriaSet cs = dematel::io::parse_criteria_manifest(read_file(opt.criteria_path));
  std::vector<dematel::ExpertResponse> responses =
      dematel::io::parse_survey_csv(read_file(opt.survey_path), cs);

  dematel::PerturbationSpec spec;
  spec.flip_probability = opt.flip_probability;
  spec.magnitude = opt.magnitude;
  spec.seed = opt.seed;
  spec.trials = opt.trials;

  dematel::PipelineOptions options;
  options.norm_mode = opt.norm_mode;
  dematel::StabilityReport report =
      dematel::monte_carlo_stability(responses, cs, spec, options, opt.threads);

  write_file(opt.output_path, dematel::io::write_stability_csv(report));
  if (report.degenerate_trials > 0) {
    std::fprintf(stderr, "note: %zu of %zu trials were degenerate and excluded\n",
                 report.degenerate_trials, report.trials_run);
  }
}

void run_reexport(const std::string& report_path, const std::string& output_path, bool dot) {
  dematel::io::ReportDocument doc = dematel::io::parse_report_json(read_file(report_path));
  if (dot) {
    write_file(output_path,
               dematel::io::write_dot(doc.result.edges, doc.criteria, doc.result.records));
  } else {
    write_file(output_path, dematel::io::write_scatter_csv(doc.result.records));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DEMATEL causal analysis: surveys to cause/effect groups, digraph, and scatter data"};
  app.require_subcommand(1);

  const std::map<std::string, dematel::NormMode> norm_modes{
      {"row-max", dematel::NormMode::RowMax},
      {"row-col-max", dematel::NormMode::RowColMax},
  };

  std::string v_criteria, v_survey;
  CLI::App* validate = app.add_subcommand("validate", "Check a survey file against a criteria manifest");
  validate->add_option("--criteria", v_criteria, "criteria manifest CSV (code,name)")->required();
  validate->add_option("--survey", v_survey, "survey CSV (expert_id,from,to,score)")->required();
  validate->callback([&] { run_validate(v_criteria, v_survey); });

  AnalyzeOptions a_opt;
  double a_alpha_override = 0.0;
  CLI::App* analyze = app.add_subcommand("analyze", "Run the full pipeline and write report, digraph, and scatter files");
  analyze->add_option("--criteria", a_opt.criteria_path, "criteria manifest CSV (code,name)")->required();
  CLI::Option* a_survey = analyze->add_option("--survey", a_opt.survey_path, "survey CSV (expert_id,from,to,score)");
  CLI::Option* a_drm = analyze->add_option("--drm", a_opt.drm_path, "pre-aggregated direct-relation matrix CSV");
  a_survey->excludes(a_drm);
  a_drm->excludes(a_survey);
  analyze->add_option("--out", a_opt.output_dir, "output directory for report.json, digraph.dot, scatter.csv")
      ->capture_default_str();
  analyze->add_option("--norm", a_opt.norm_mode, "normalization divisor rule")
      ->transform(CLI::CheckedTransformer(norm_modes, CLI::ignore_case))
      ->default_str("row-col-max");
  CLI::Option* a_alpha = analyze->add_option("--alpha-override", a_alpha_override,
                                             "cut threshold to use instead of the grand mean")
                             ->check(CLI::NonNegativeNumber);
  analyze->add_option("--strength-bounds", a_opt.strength_bounds,
                      "moderate,strong lower bounds for edge classes (default: tertiles)")
      ->delimiter(',')
      ->expected(2);
  analyze->callback([&] {
    if (a_opt.survey_path.empty() == a_opt.drm_path.empty()) {
      throw CLI::RequiredError("exactly one of --survey or --drm");
    }
    if (a_alpha->count() > 0) a_opt.alpha_override = a_alpha_override;
    run_analyze(a_opt);
  });

  SensitivityOptions s_opt;
  CLI::App* sensitivity = app.add_subcommand("sensitivity", "Monte-Carlo stability of the cause/effect grouping");
  sensitivity->add_option("--criteria", s_opt.criteria_path, "criteria manifest CSV (code,name)")->required();
  sensitivity->add_option("--survey", s_opt.survey_path, "survey CSV (perturbation needs integer scores)")->required();
  sensitivity->add_option("--out", s_opt.output_path, "output CSV path")->capture_default_str();
  sensitivity->add_option("--norm", s_opt.norm_mode, "normalization divisor rule")
      ->transform(CLI::CheckedTransformer(norm_modes, CLI::ignore_case))
      ->default_str("row-col-max");
  sensitivity->add_option("--trials", s_opt.trials, "number of perturbed panels to run")
      ->required()
      ->check(CLI::PositiveNumber);
  sensitivity->add_option("--flip-probability", s_opt.flip_probability,
                          "per-cell probability of moving a score")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  sensitivity->add_option("--magnitude", s_opt.magnitude, "score step size")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sensitivity->add_option("--seed", s_opt.seed, "RNG seed")->capture_default_str();
  sensitivity->add_option("--threads", s_opt.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  sensitivity->callback([&] { run_sensitivity(s_opt); });

  std::string d_report, d_out = "digraph.dot";
  CLI::App* digraph = app.add_subcommand("digraph", "Re-export the influence digraph from a saved report");
  digraph->add_option("--report", d_report, "report.json from a previous analyze run")->required();
  digraph->add_option("--out", d_out, "output DOT path")->capture_default_str();
  digraph->callback([&] { run_reexport(d_report, d_out, true); });

  std::string c_report, c_out = "scatter.csv";
  CLI::App* scatter = app.add_subcommand("scatter", "Re-export the prominence-relation scatter data from a saved report");
  scatter->add_option("--report", c_report, "report.json from a previous analyze run")->required();
  scatter->add_option("--out", c_out, "output CSV path")->capture_default_str();
  scatter->callback([&] { run_reexport(c_report, c_out, false); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const dematel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
