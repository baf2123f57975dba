#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace casimir::cli {

struct Common {
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 1;
  bool quiet = false;
};

struct EpsilonArgs {
  std::string material;
  std::string xi_min = "1e14 rad/s";
  std::string xi_max = "1e19 rad/s";
  int points = 101;
};

struct ForceArgs {
  std::string d_min = "10 nm";
  std::string d_max = "300 nm";
  int points = 60;
  bool no_roughness = false;
};

struct SynthArgs {
  std::string delta = "0 nm";
  std::string alpha = "0 N";
  std::optional<int> curves;
  std::optional<std::string> spring_constant;
  std::optional<std::string> jump_in;
  bool no_roughness = false;
};

struct FitArgs {
  std::vector<std::string> files;
  bool no_roughness = false;
};

struct ErrorsArgs {
  std::vector<std::string> files;
  std::string delta = "0 nm";
  bool no_roughness = false;
};

int cmd_epsilon(const Common& common, const EpsilonArgs& args);
int cmd_force(const Common& common, const ForceArgs& args);
int cmd_synth(const Common& common, const SynthArgs& args);
int cmd_fit(const Common& common, const FitArgs& args);
int cmd_errors(const Common& common, const ErrorsArgs& args);
int cmd_jkr(const Common& common);
int cmd_study(const Common& common);

}  // namespace casimir::cli
