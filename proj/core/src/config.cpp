#include "metawave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "metawave/sources.hpp"

namespace metawave {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
}

double need_num(const json& obj, const std::string& where,
                const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  if (!obj[key].is_number()) fail(where + "." + key, "expected a number");
  return obj[key].get<double>();
}

double opt_num(const json& obj, const std::string& where,
               const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "." + key, "expected a number");
  return obj[key].get<double>();
}

std::string need_str(const json& obj, const std::string& where,
                     const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  if (!obj[key].is_string()) fail(where + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

Rect parse_rect(const json& obj, const std::string& where) {
  if (obj.is_array()) {
    if (obj.size() != 4) fail(where, "expected [x0, y0, x1, y1]");
    for (const auto& v : obj)
      if (!v.is_number()) fail(where, "expected numeric box entries");
    return Rect{obj[0].get<double>(), obj[1].get<double>(),
                obj[2].get<double>(), obj[3].get<double>()};
  }
  expect_keys(obj, where, {"x0", "y0", "x1", "y1"});
  return Rect{need_num(obj, where, "x0"), need_num(obj, where, "y0"),
              need_num(obj, where, "x1"), need_num(obj, where, "y1")};
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                err.what());
  }

  RunConfig cfg;
  expect_keys(root, "top level",
              {"domain", "n", "pairing", "time", "material", "boundary",
               "output"});

  if (root.contains("domain")) cfg.domain = parse_rect(root["domain"], "domain");
  if (cfg.domain.width() <= 0.0 || cfg.domain.height() <= 0.0)
    fail("domain", "empty rectangle");

  if (!root.contains("n")) fail("top level", "missing key 'n'");
  if (!root["n"].is_number_integer()) fail("n", "expected an integer");
  cfg.n = root["n"].get<int>();
  if (cfg.n < 1) fail("n", "must be >= 1");

  cfg.pairing = pairing_from_name(need_str(root, "top level", "pairing"));

  {
    if (!root.contains("time")) fail("top level", "missing key 'time'");
    const json& t = root["time"];
    expect_keys(t, "time", {"T", "dt"});
    cfg.T = need_num(t, "time", "T");
    cfg.dt = need_num(t, "time", "dt");
    if (!(cfg.T > 0.0)) fail("time.T", "must be positive");
    if (!(cfg.dt > 0.0)) fail("time.dt", "must be positive");
    const double steps = cfg.T / cfg.dt;
    if (std::abs(steps - std::lround(steps)) > 1e-9 * steps)
      fail("time", "dt must divide T evenly");
  }

  if (root.contains("material")) {
    const json& m = root["material"];
    expect_keys(m, "material",
                {"rho_a", "kappa_a", "omega_rho", "omega_kappa", "gamma",
                 "regions"});
    cfg.rho_a = opt_num(m, "material", "rho_a", cfg.rho_a);
    cfg.kappa_a = opt_num(m, "material", "kappa_a", cfg.kappa_a);
    cfg.omega_rho = opt_num(m, "material", "omega_rho", cfg.omega_rho);
    cfg.omega_kappa = opt_num(m, "material", "omega_kappa", cfg.omega_kappa);
    cfg.gamma = opt_num(m, "material", "gamma", cfg.gamma);
    if (m.contains("regions")) {
      if (!m["regions"].is_array()) fail("material.regions", "expected an array");
      int idx = 0;
      for (const json& r : m["regions"]) {
        const std::string where = "material.regions[" + std::to_string(idx) + "]";
        expect_keys(r, where, {"label", "box", "Omega_rho", "Omega_kappa"});
        RunConfig::Region region;
        region.label = need_str(r, where, "label");
        if (!r.contains("box")) fail(where, "missing key 'box'");
        region.box = parse_rect(r["box"], where + ".box");
        region.Omega_rho = opt_num(r, where, "Omega_rho", 0.0);
        region.Omega_kappa = opt_num(r, where, "Omega_kappa", 0.0);
        cfg.regions.push_back(region);
        ++idx;
      }
    }
  }

  if (root.contains("boundary")) {
    if (!root["boundary"].is_array()) fail("boundary", "expected an array");
    int idx = 0;
    for (const json& b : root["boundary"]) {
      const std::string where = "boundary[" + std::to_string(idx) + "]";
      expect_keys(b, where, {"label", "where", "source", "essential"});
      RunConfig::BoundaryPartCfg part;
      part.label = need_str(b, where, "label");
      part.where = need_str(b, where, "where");
      static const std::set<std::string> sides = {"left", "right", "bottom",
                                                  "top", "all"};
      if (!sides.count(part.where))
        fail(where + ".where", "expected left|right|bottom|top|all");
      if (b.contains("essential")) {
        if (!b["essential"].is_boolean())
          fail(where + ".essential", "expected a boolean");
        part.essential = b["essential"].get<bool>();
      }
      if (b.contains("source")) {
        const json& s = b["source"];
        if (!s.is_object()) fail(where + ".source", "expected an object");
        part.source_name = need_str(s, where + ".source", "name");
        for (const auto& [key, value] : s.items()) {
          if (key == "name") continue;
          if (!value.is_number())
            fail(where + ".source." + key, "expected a number");
          part.source_params[key] = value.get<double>();
        }
      }
      cfg.boundary.push_back(part);
      ++idx;
    }
  }
  if (cfg.boundary.empty())
    cfg.boundary.push_back({"boundary", "all", "zero", {}, false});
  bool has_all = false;
  for (const auto& part : cfg.boundary) has_all |= part.where == "all";
  if (has_all && cfg.boundary.size() > 1)
    fail("boundary", "'all' cannot be combined with other parts");

  if (root.contains("output")) {
    const json& o = root["output"];
    expect_keys(o, "output",
                {"directory", "format", "snapshots", "energy_trace",
                 "mesh_dump", "phase_line"});
    if (o.contains("directory"))
      cfg.output.directory = need_str(o, "output", "directory");
    if (o.contains("format")) {
      cfg.output.format = need_str(o, "output", "format");
      if (cfg.output.format != "vtk" && cfg.output.format != "csv")
        fail("output.format", "expected vtk|csv");
    }
    if (o.contains("snapshots")) {
      if (!o["snapshots"].is_array()) fail("output.snapshots", "expected an array");
      for (const auto& v : o["snapshots"]) {
        if (!v.is_number()) fail("output.snapshots", "expected numbers");
        cfg.output.snapshots.push_back(v.get<double>());
      }
    }
    if (o.contains("energy_trace")) {
      if (!o["energy_trace"].is_boolean())
        fail("output.energy_trace", "expected a boolean");
      cfg.output.energy_trace = o["energy_trace"].get<bool>();
    }
    if (o.contains("mesh_dump")) {
      if (!o["mesh_dump"].is_boolean())
        fail("output.mesh_dump", "expected a boolean");
      cfg.output.mesh_dump = o["mesh_dump"].get<bool>();
    }
    if (o.contains("phase_line")) {
      const json& ph = o["phase_line"];
      expect_keys(ph, "output.phase_line", {"y", "x0", "x1", "samples", "lag_steps"});
      RunConfig::Output::PhaseLine line;
      line.y = need_num(ph, "output.phase_line", "y");
      line.x0 = need_num(ph, "output.phase_line", "x0");
      line.x1 = need_num(ph, "output.phase_line", "x1");
      line.samples =
          static_cast<int>(opt_num(ph, "output.phase_line", "samples", 256));
      line.lag_steps =
          static_cast<int>(opt_num(ph, "output.phase_line", "lag_steps", 1));
      if (line.samples < 8) fail("output.phase_line.samples", "must be >= 8");
      if (line.lag_steps < 1) fail("output.phase_line.lag_steps", "must be >= 1");
      cfg.output.phase_line = line;
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

Scenario build_scenario(const RunConfig& cfg) {
  Scenario sc;
  sc.mesh = std::make_shared<Mesh>(build_structured(cfg.domain, cfg.n));

  const Rect dom = cfg.domain;
  const double tol = 1e-12 * std::max(dom.width(), dom.height());
  std::vector<BoundaryPart> parts;
  for (const auto& part : cfg.boundary) {
    std::function<bool(const Vec2&)> where;
    if (part.where == "left")
      where = [dom, tol](const Vec2& x) { return std::abs(x.x() - dom.x0) < tol; };
    else if (part.where == "right")
      where = [dom, tol](const Vec2& x) { return std::abs(x.x() - dom.x1) < tol; };
    else if (part.where == "bottom")
      where = [dom, tol](const Vec2& x) { return std::abs(x.y() - dom.y0) < tol; };
    else if (part.where == "top")
      where = [dom, tol](const Vec2& x) { return std::abs(x.y() - dom.y1) < tol; };
    else
      where = [](const Vec2&) { return true; };
    parts.push_back({part.label, where});
  }
  classify_boundary(*sc.mesh, parts);

  auto region_of = [&cfg](const Vec2& x) {
    for (std::size_t i = 0; i < cfg.regions.size(); ++i)
      if (cfg.regions[i].box.contains(x)) return static_cast<int>(i) + 1;
    return 0;
  };
  sc.cell_region = classify_cells(*sc.mesh, region_of);

  sc.material =
      uniform_material(sc.mesh->n_cells(), cfg.rho_a, cfg.kappa_a,
                       cfg.omega_rho, cfg.omega_kappa, cfg.gamma);
  for (std::size_t i = 0; i < cfg.regions.size(); ++i)
    apply_region_contrast(sc.material, sc.cell_region, static_cast<int>(i) + 1,
                          cfg.regions[i].Omega_rho, cfg.regions[i].Omega_kappa);
  const Diagnostics diag = validate(sc.material);
  if (!diag.ok) {
    std::string msg = "config: inadmissible material:";
    for (const auto& issue : diag.issues) msg += " " + issue + ";";
    throw std::invalid_argument(msg);
  }

  sc.spaces = SpaceSet::make(sc.mesh, cfg.pairing);

  for (const auto& part : cfg.boundary) {
    const std::vector<int> edges = sc.mesh->boundary_edges(part.label);
    if (part.essential) {
      sc.source.neumann_edges.insert(sc.source.neumann_edges.end(),
                                     edges.begin(), edges.end());
      continue;
    }
    auto fn = make_boundary_source(part.source_name, part.source_params);
    sc.source.pressure_parts.push_back({edges, fn});
  }

  const int steps = static_cast<int>(std::lround(cfg.T / cfg.dt));
  sc.grid = TimeGrid{0.0, cfg.T, steps};
  return sc;
}

}  // namespace metawave
