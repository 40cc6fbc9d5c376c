#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metawave/fespace.hpp"
#include "metawave/material.hpp"
#include "metawave/mesh.hpp"
#include "metawave/stepper.hpp"

namespace metawave {

/// Parsed run description (see docs/config.md for the schema).  Parsing is
/// strict: unknown keys, missing required keys, and type mismatches are
/// errors.
struct RunConfig {
  Rect domain{0.0, 0.0, 1.0, 1.0};
  int n = 16;
  Pairing pairing = Pairing::RTN1;

  double T = 1.0;
  double dt = 0.1;

  struct Region {
    std::string label;
    Rect box;
    double Omega_rho = 0.0;
    double Omega_kappa = 0.0;
  };
  double rho_a = 1.0, kappa_a = 1.0;
  double omega_rho = 0.0, omega_kappa = 0.0, gamma = 0.0;
  std::vector<Region> regions;

  struct BoundaryPartCfg {
    std::string label;
    std::string where;  // left|right|bottom|top|all
    std::string source_name = "zero";
    std::map<std::string, double> source_params;
    bool essential = false;  // true: v.n = 0 instead of pressure data
  };
  std::vector<BoundaryPartCfg> boundary;

  struct Output {
    std::string directory = ".";
    std::string format = "vtk";  // vtk|csv
    std::vector<double> snapshots;
    bool energy_trace = false;
    bool mesh_dump = false;
    struct PhaseLine {
      double y = 0.0;
      double x0 = 0.0, x1 = 0.0;
      int samples = 256;
      int lag_steps = 1;
    };
    std::optional<PhaseLine> phase_line;
  } output;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Everything needed to march a configured scenario.
struct Scenario {
  std::shared_ptr<Mesh> mesh;
  std::vector<int> cell_region;  // 0 background, 1 + index into regions
  MaterialField material;
  SpaceSet spaces;
  TransientSource source;
  TimeGrid grid;
};

Scenario build_scenario(const RunConfig& cfg);

}  // namespace metawave
