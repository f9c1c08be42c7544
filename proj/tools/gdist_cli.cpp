#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gdist/distortion.hpp"
#include "gdist/errors.hpp"
#include "gdist/experiments.hpp"
#include "gdist/zoo.hpp"

namespace {

using namespace gdist;

constexpr int kAsExpected = 0;
constexpr int kContradicted = 1;
constexpr int kFailure = 2;

struct Common {
  std::string group = "free2";
  std::size_t radius = 4;
  std::string out;
  std::string format = "csv";
  std::size_t max_elements = 10'000'000;
  unsigned threads = 1;

  BallOptions ball_options() const { return {.max_elements = max_elements, .threads = threads}; }
};

void add_common(CLI::App* app, Common& c, bool with_group = true) {
  if (with_group) app->add_option("--group", c.group, "zoo name or path to a JSON group config");
  app->add_option("--radius", c.radius, "ball radius");
  app->add_option("--out", c.out, "directory for report.json and CSV tables");
  app->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--max-elements", c.max_elements, "element cap for Cayley balls");
  app->add_option("--threads", c.threads, "worker threads (results do not depend on it)");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

// Writes the report; returns the exit code its verdict implies.
int emit(const std::vector<ExperimentReport>& reports, const Common& c, const std::string& main_table) {
  if (!c.out.empty()) {
    std::filesystem::path dir(c.out);
    std::filesystem::create_directories(dir);
    for (const auto& r : reports) {
      std::string stem = r.name;
      for (char& ch : stem)
        if (ch == ':' || ch == '/') ch = '-';
      write_file(dir / (stem + ".json"), r.to_json());
      for (const auto& [name, csv] : r.tables) write_file(dir / (stem + "." + name + ".csv"), csv);
    }
  }
  if (c.format == "json") {
    if (reports.size() == 1) {
      std::cout << reports[0].to_json() << "\n";
    } else {
      std::cout << "[\n";
      for (std::size_t i = 0; i < reports.size(); ++i) std::cout << reports[i].to_json() << (i + 1 < reports.size() ? ",\n" : "\n");
      std::cout << "]\n";
    }
  } else {
    for (const auto& r : reports) {
      auto it = r.tables.find(main_table);
      if (it == r.tables.end() && !r.tables.empty()) it = r.tables.begin();
      if (it != r.tables.end()) std::cout << it->second;
    }
  }
  bool ok = true;
  for (const auto& r : reports) {
    std::cerr << r.name << ": " << r.verdict << (r.as_expected ? "" : " [unexpected]") << "\n";
    ok = ok && r.as_expected;
  }
  return ok ? kAsExpected : kContradicted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word metrics, subgroup distortion and bicombing constants"};
  app.require_subcommand(1);

  Common common;

  auto* ball_cmd = app.add_subcommand("ball", "enumerate a Cayley ball");
  add_common(ball_cmd, common);

  std::string subgroup = "whole";
  std::string expect_growth;
  std::string expect_undistorted;
  bool suite = false;
  auto* dist_cmd = app.add_subcommand("distortion", "distortion profile of a subgroup");
  add_common(dist_cmd, common);
  dist_cmd->add_option("--subgroup", subgroup, "whole | factor:<i> | cyclic:<word> | generated:<w1>,<w2>,...");
  dist_cmd->add_option("--expect", expect_growth, "expected growth class, e.g. linear or polynomial(2)");
  dist_cmd->add_option("--expect-undistorted", expect_undistorted)->check(CLI::IsMember({"true", "false"}));
  dist_cmd->add_flag("--suite", suite, "run the built-in distortion suite");

  std::vector<std::string> elements;
  std::size_t triples = 1000;
  auto* comb_cmd = app.add_subcommand("combing-check", "shortlex bicombing constants");
  add_common(comb_cmd, common);
  comb_cmd->add_option("--element", elements, "centralizer elements (words)");
  comb_cmd->add_option("--triples", triples, "random triples for the equivariance check");

  std::string element;
  auto* cent_cmd = app.add_subcommand("centralizer", "centralizer quasi-convexity of one element");
  add_common(cent_cmd, common);
  cent_cmd->add_option("--element", element, "the element as a word")->required();

  std::size_t max_complexity = 20;
  auto* cover_cmd = app.add_subcommand("cover-table", "orientation double covers of nonorientable surfaces");
  add_common(cover_cmd, common, false);
  cover_cmd->add_option("--max-complexity", max_complexity, "largest g + b + p");

  auto* klein_cmd = app.add_subcommand("klein-check", "order census of SL(2,Z) and maps from Z2 x Z2");
  add_common(klein_cmd, common, false);

  std::string lift_file;
  auto* hom_cmd = app.add_subcommand("verify-hom", "verify a lift homomorphism given as JSON");
  add_common(hom_cmd, common, false);
  hom_cmd->add_option("--lift", lift_file, "lift data JSON file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kFailure;
  }

  try {
    const BallOptions options = common.ball_options();
    if (*ball_cmd) {
      return emit({run_ball(resolve_group(common.group), common.radius, options)}, common, "ball");
    }
    if (*dist_cmd) {
      std::vector<DistortionRun> runs;
      if (suite) {
        runs = default_distortion_suite();
      } else {
        DistortionRun run{"custom", common.group, subgroup, common.radius, expect_growth, std::nullopt};
        if (!expect_undistorted.empty()) run.expected_undistorted = expect_undistorted == "true";
        runs.push_back(run);
      }
      auto reports = run_distortion_suite(runs, options);
      for (const auto& r : reports)
        if (r.verdict.rfind("error: ", 0) == 0) {
          emit(reports, common, "profile");
          return kFailure;
        }
      return emit(reports, common, "profile");
    }
    if (*comb_cmd) {
      CombingConfig config{common.group, common.radius, elements, triples, 1};
      return emit({run_combing_report(config, options)}, common, "constants");
    }
    if (*cent_cmd) {
      return emit({run_centralizer(resolve_group(common.group), element, common.radius, options)}, common,
                  "centralizers");
    }
    if (*cover_cmd) return emit({run_cover_table(max_complexity)}, common, "covers");
    if (*klein_cmd) {
      std::size_t radius = klein_cmd->count("--radius") ? common.radius : 8;
      return emit({run_klein_check(radius, options)}, common, "orders");
    }
    if (*hom_cmd) {
      LiftData data = parse_lift_data(read_text_file(lift_file));
      return emit({run_iota_verification(data, options)}, common, "injectivity");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
