#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/ds/encode.hpp"
#include "ucds/grid/network.hpp"

namespace ucds::uc {

/// An uncertain input as written in the scenario file, before levels are applied.
struct InputTemplate {
  std::string id;
  std::string kind;
  int busId = 0;
  ds::InputRole role = ds::InputRole::Load;
  bool followsLoad = true;
  std::map<std::string, double> params;
};

struct ScenarioConfig {
  std::vector<double> loadProfile;             // MW per hour
  std::vector<std::pair<int, double>> busLoads;  // (bus id, MW at the reference total)
  std::vector<InputTemplate> inputs;
  double reserveMargin = 0.05;
  double penalty = 0.1;             // $/MW^2
  double imbalanceTolerance = 0.1;  // MW
  double sigmaBalance = 0.9;
  double sigmaReserve = 1.0;
  double sigmaLine = 1.0;
  int resolution = 100;
  double penetration = 20.0;  // percent
  double deviation = 15.0;    // percent

  int hours() const noexcept { return static_cast<int>(loadProfile.size()); }

  double referenceLoad() const noexcept {
    double s = 0.0;
    for (const auto& [b, mw] : busLoads) s += mw;
    return s;
  }

  /// Ratio of the hour's total demand to the bus-load reference total.
  double loadScale(int t) const { return loadProfile.at(static_cast<std::size_t>(t)) / referenceLoad(); }

  void validate() const {
    if (loadProfile.empty()) throw InvalidInput("scenario has no load profile");
    for (double d : loadProfile)
      if (!(d > 0.0) || !std::isfinite(d)) throw InvalidInput("hourly demand must be positive");
    if (busLoads.empty() || !(referenceLoad() > 0.0)) throw InvalidInput("scenario needs positive bus loads");
    if (!(imbalanceTolerance > 0.0)) throw InvalidInput("imbalance tolerance must be positive");
    for (double s : {sigmaBalance, sigmaReserve, sigmaLine})
      if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("probability thresholds must lie in [0, 1]");
    if (!(penalty >= 0.0) || !(reserveMargin >= 0.0)) throw InvalidInput("penalty and reserve margin must be nonnegative");
    if (resolution < 2) throw InvalidInput("resolution must be at least 2");
  }
};

namespace detail {

inline double param(const InputTemplate& in, const std::string& key) {
  auto it = in.params.find(key);
  if (it == in.params.end()) throw InvalidInput("input " + in.id + " lacks '" + key + "'");
  return it->second;
}

inline double paramOr(const InputTemplate& in, const std::string& key, double fallback) {
  auto it = in.params.find(key);
  return it == in.params.end() ? fallback : it->second;
}

}  // namespace detail

/**
 * Concrete parameters at the scenario's penetration and deviation levels.
 * A wind farm given `rating_per_percent` gets that many MW per percent of
 * penetration; a load given `center` spans center * (1 -/+ deviation).
 */
inline ds::InputParameters resolveParameters(const InputTemplate& in, double penetration, double deviation) {
  using detail::param;
  using detail::paramOr;
  const double dev = deviation / 100.0;
  if (in.kind == "weibull-windfarm") {
    ds::WeibullWindFarm w;
    w.shape = paramOr(in, "shape", w.shape);
    w.scale = paramOr(in, "scale", w.scale);
    w.cutIn = paramOr(in, "cut_in", w.cutIn);
    w.ratedSpeed = paramOr(in, "rated_speed", w.ratedSpeed);
    w.cutOut = paramOr(in, "cut_out", w.cutOut);
    w.turbines = static_cast<int>(paramOr(in, "turbines", 1));
    if (in.params.count("rating_per_percent"))
      w.turbineRating = param(in, "rating_per_percent") * penetration / w.turbines;
    else
      w.turbineRating = param(in, "rating");
    w.validate();
    return w;
  }
  if (in.kind == "interval") {
    if (in.params.count("center")) {
      const double c = param(in, "center");
      return ds::IntervalInput{c * (1.0 - dev), c * (1.0 + dev)};
    }
    return ds::IntervalInput{param(in, "lo"), param(in, "hi")};
  }
  if (in.kind == "triangular-fuzzy") {
    if (in.params.count("center")) {
      const double c = param(in, "center");
      return ds::TriangularInput{c * (1.0 - dev), c, c * (1.0 + dev)};
    }
    return ds::TriangularInput{param(in, "a"), param(in, "m"), param(in, "b")};
  }
  if (in.kind == "point") return ds::PointInput{param(in, "value")};
  throw InvalidInput("unknown input kind '" + in.kind + "'");
}

inline std::vector<ds::UncertainInputSpec> resolveInputs(const ScenarioConfig& sc, const grid::NetworkCase& net) {
  std::vector<ds::UncertainInputSpec> out;
  for (const auto& in : sc.inputs) {
    ds::UncertainInputSpec s;
    s.id = in.id;
    s.params = resolveParameters(in, sc.penetration, sc.deviation);
    s.bus = net.indexOf(in.busId);
    s.role = in.role;
    if (in.followsLoad)
      for (int t = 0; t < sc.hours(); ++t) s.hourScale.push_back(sc.loadScale(t));
    out.push_back(std::move(s));
  }
  return out;
}

/**
 * Sectioned text file:
 *   [load_profile]  hourly totals, whitespace or comma separated
 *   [bus_loads]     rows: <bus id> <MW>
 *   [uncertain]     rows: <id> <kind> bus=<id> [role=load|generation] [hour_scale=load|none] key=value...
 *   [params]        rows: <key> <value>
 */
inline ScenarioConfig parseScenario(std::istream& is, const std::string& path = "<stream>") {
  ScenarioConfig sc;
  std::string section, line;
  int lineNo = 0;
  auto number = [&](const std::string& tok) {
    double v;
    if (!parseNumber(tok, v)) throw ParseError(path, lineNo, "not a number: '" + tok + "'");
    return v;
  };
  while (std::getline(is, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& ch : line)
      if (ch == ',' && section == "load_profile") ch = ' ';
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0].front() == '[') {
      if (tok.size() != 1 || tok[0].back() != ']') throw ParseError(path, lineNo, "malformed section header");
      section = tok[0].substr(1, tok[0].size() - 2);
      if (section != "load_profile" && section != "bus_loads" && section != "uncertain" && section != "params")
        throw ParseError(path, lineNo, "unknown section [" + section + "]");
      continue;
    }
    if (section == "load_profile") {
      for (const auto& t : tok) sc.loadProfile.push_back(number(t));
    } else if (section == "bus_loads") {
      if (tok.size() != 2) throw ParseError(path, lineNo, "bus load row is: <bus> <MW>");
      const double b = number(tok[0]);
      if (b != std::floor(b)) throw ParseError(path, lineNo, "bus id must be an integer");
      sc.busLoads.emplace_back(static_cast<int>(b), number(tok[1]));
    } else if (section == "uncertain") {
      if (tok.size() < 3) throw ParseError(path, lineNo, "uncertain row is: <id> <kind> key=value...");
      InputTemplate in;
      in.id = tok[0];
      in.kind = tok[1];
      bool haveBus = false, haveScale = false;
      for (std::size_t k = 2; k < tok.size(); ++k) {
        const auto eq = tok[k].find('=');
        if (eq == std::string::npos) throw ParseError(path, lineNo, "expected key=value, got '" + tok[k] + "'");
        const std::string key = tok[k].substr(0, eq), val = tok[k].substr(eq + 1);
        if (key == "bus") {
          const double b = number(val);
          in.busId = static_cast<int>(b);
          haveBus = true;
        } else if (key == "role") {
          if (val == "load")
            in.role = ds::InputRole::Load;
          else if (val == "generation")
            in.role = ds::InputRole::Generation;
          else
            throw ParseError(path, lineNo, "role must be load or generation");
        } else if (key == "hour_scale") {
          if (val != "load" && val != "none") throw ParseError(path, lineNo, "hour_scale must be load or none");
          in.followsLoad = val == "load";
          haveScale = true;
        } else {
          in.params[key] = number(val);
        }
      }
      if (!haveBus) throw ParseError(path, lineNo, "uncertain input needs bus=");
      if (!haveScale) in.followsLoad = in.role == ds::InputRole::Load;
      if (in.kind != "weibull-windfarm" && in.kind != "interval" && in.kind != "triangular-fuzzy" && in.kind != "point")
        throw ParseError(path, lineNo, "unknown input kind '" + in.kind + "'");
      try {
        resolveParameters(in, sc.penetration, sc.deviation);
      } catch (const InvalidInput& e) {
        throw ParseError(path, lineNo, e.what());
      }
      sc.inputs.push_back(std::move(in));
    } else if (section == "params") {
      if (tok.size() != 2) throw ParseError(path, lineNo, "parameter row is: <key> <value>");
      const std::string& key = tok[0];
      const double v = number(tok[1]);
      if (key == "reserve_margin") sc.reserveMargin = v;
      else if (key == "penalty") sc.penalty = v;
      else if (key == "imbalance_tolerance") sc.imbalanceTolerance = v;
      else if (key == "sigma_balance") sc.sigmaBalance = v;
      else if (key == "sigma_reserve") sc.sigmaReserve = v;
      else if (key == "sigma_line") sc.sigmaLine = v;
      else if (key == "resolution") sc.resolution = static_cast<int>(v);
      else if (key == "penetration") sc.penetration = v;
      else if (key == "deviation") sc.deviation = v;
      else throw ParseError(path, lineNo, "unknown parameter '" + key + "'");
    } else {
      throw ParseError(path, lineNo, "record outside any section");
    }
  }
  try {
    sc.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(path, 0, e.what());
  }
  return sc;
}

inline ScenarioConfig loadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open scenario file");
  return parseScenario(in, path);
}

}  // namespace ucds::uc
