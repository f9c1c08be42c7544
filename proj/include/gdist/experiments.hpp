#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdist/cayley.hpp"
#include "gdist/config.hpp"
#include "gdist/distortion.hpp"

namespace gdist {

struct ExperimentReport {
  std::string name;
  std::map<std::string, std::string> inputs;
  std::string verdict;
  /// The verdict is the one the experiment predicts.
  bool as_expected = false;
  /// Named CSV payloads; deterministic for a given input.
  std::map<std::string, std::string> tables;
  std::vector<std::string> witnesses;
  double runtime_seconds = 0;

  std::string to_json() const;
};

/// Order census of B(radius) in SL(2,Z) and the homomorphisms Z2 x Z2 -> SL(2,Z)
/// it allows. Orders above order_cap are reported as exceeding it.
ExperimentReport run_klein_check(std::size_t radius, BallOptions options = {}, std::size_t order_cap = 12);

struct DistortionRun {
  std::string name;
  std::string group;
  /// "factor:<i>", "cyclic:<word>", "whole", "generated:<word>,<word>,..."
  std::string subgroup;
  std::size_t n_max = 12;
  std::string expected_growth;
  std::optional<bool> expected_undistorted;
};

std::vector<DistortionRun> default_distortion_suite();

/// Resolves a subgroup spec against g. Enumerated subgroups use radius_cap.
std::unique_ptr<SubgroupModel> make_subgroup(const MarkedGroup& g, const std::string& spec,
                                             std::size_t radius_cap, BallOptions options = {});

ExperimentReport run_distortion(const DistortionRun& run, BallOptions options = {});
/// Failing runs are recorded in their report and the suite continues.
std::vector<ExperimentReport> run_distortion_suite(const std::vector<DistortionRun>& runs, BallOptions options = {});

struct CombingConfig {
  std::string group;
  std::size_t radius = 6;
  /// Elements whose centralizers are examined; empty means the generators
  /// and the product of the first two.
  std::vector<std::string> centralizer_elements;
  std::size_t equivariance_triples = 1000;
  std::uint64_t seed = 1;
};

ExperimentReport run_combing_report(const CombingConfig& config, BallOptions options = {});

/// Centralizer of one element: Z(a) within B(radius), its quasi-convexity
/// constant and the conjugator witnesses.
ExperimentReport run_centralizer(const MarkedGroup& g, const std::string& element, std::size_t radius,
                                 BallOptions options = {});

/// All nonorientable signatures with g + b + p <= max_complexity.
ExperimentReport run_cover_table(std::size_t max_complexity);

ExperimentReport run_iota_verification(const LiftData& data, BallOptions options = {});

/// Ball export wrapped as a report (table "ball").
ExperimentReport run_ball(const MarkedGroup& g, std::size_t radius, BallOptions options = {});

}  // namespace gdist
