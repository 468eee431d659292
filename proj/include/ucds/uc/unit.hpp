#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/grid/network.hpp"

namespace ucds::uc {

/// Tolerance used when checking MW bounds and ramp limits.
inline constexpr double kMwTolerance = 1e-6;

struct UnitSpec {
  std::string id;
  int bus = 0;  // 0-based bus index
  double lmin = 0.0;
  double umax = 0.0;
  int minUp = 1;
  int minDown = 1;
  double rampUp = 0.0;
  double rampDown = 0.0;
  double a = 0.0;  // $/MW^2h
  double b = 0.0;  // $/MWh
  double c = 0.0;  // $/h
  double startupCost = 0.0;
  double shutdownCost = 0.0;
  /// Hours on (>0) or off (<0) before the first hour.
  int initialStatus = -1;
  double initialOutput = 0.0;

  bool initiallyOn() const noexcept { return initialStatus > 0; }

  /// Highest output reachable in the hour a unit starts.
  double startupLimit() const noexcept { return std::max(rampUp, lmin); }

  double fuel(double p) const noexcept { return a * p * p + b * p + c; }

  void validate() const {
    if (!allFinite({lmin, umax, rampUp, rampDown, a, b, c, startupCost, shutdownCost, initialOutput}))
      throw InvalidInput("unit " + id + " has a non-finite field");
    if (!(0.0 <= lmin && lmin <= umax) || !(umax > 0.0)) throw InvalidInput("unit " + id + " needs 0 <= Lmin <= Umax, Umax > 0");
    if (minUp < 1 || minDown < 1) throw InvalidInput("unit " + id + " needs MUT, MDT >= 1");
    if (!(rampUp > 0.0) || !(rampDown > 0.0)) throw InvalidInput("unit " + id + " needs positive ramp rates");
    if (a < 0.0) throw InvalidInput("unit " + id + " needs a >= 0");
    if (initialStatus == 0) throw InvalidInput("unit " + id + " initial status must be nonzero");
    if (initiallyOn() && (initialOutput < lmin - kMwTolerance || initialOutput > umax + kMwTolerance))
      throw InvalidInput("unit " + id + " initial output outside [Lmin, Umax]");
    if (!initiallyOn() && initialOutput != 0.0) throw InvalidInput("unit " + id + " is off initially but has output");
  }
};

/// SU on a 0->1 transition, SD on 1->0, otherwise nothing.
inline double transitionCost(const UnitSpec& unit, bool uPrev, bool uNow) noexcept {
  if (!uPrev && uNow) return unit.startupCost;
  if (uPrev && !uNow) return unit.shutdownCost;
  return 0.0;
}

inline double fuelCost(const UnitSpec& unit, bool u, double p) {
  if (!u) return 0.0;
  if (p < unit.lmin - kMwTolerance || p > unit.umax + kMwTolerance)
    throw PreconditionViolation("output of unit " + unit.id + " outside [Lmin, Umax]");
  return unit.fuel(p);
}

/**
 * Units CSV with a header naming the columns
 * id,bus,Lmin,Umax,MUT,MDT,UR,DR,a,b,c,SU,SD,init[,p0]. Bus ids are resolved
 * against the network. A missing p0 means 0.
 */
inline std::vector<UnitSpec> parseUnits(std::istream& is, const grid::NetworkCase& net,
                                        const std::string& path = "<stream>") {
  static const char* required[] = {"id", "bus", "Lmin", "Umax", "MUT", "MDT", "UR",
                                   "DR", "a",   "b",    "c",    "SU",  "SD",  "init"};
  std::string line;
  int lineNo = 0;
  std::map<std::string, std::size_t> col;
  std::vector<UnitSpec> units;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string cell; std::getline(ss, cell, ',');) {
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      out.push_back(cell);
    }
    return out;
  };
  while (std::getline(is, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (col.empty()) {
      for (std::size_t i = 0; i < cells.size(); ++i) col[cells[i]] = i;
      for (const char* r : required)
        if (!col.count(r)) throw ParseError(path, lineNo, std::string("missing column '") + r + "'");
      continue;
    }
    auto cell = [&](const char* name) -> const std::string& {
      const std::size_t i = col.at(name);
      if (i >= cells.size()) throw ParseError(path, lineNo, std::string("missing value for '") + name + "'");
      return cells[i];
    };
    auto num = [&](const char* name) {
      double v;
      if (!parseNumber(cell(name), v)) throw ParseError(path, lineNo, std::string("bad number in '") + name + "'");
      return v;
    };
    auto integer = [&](const char* name) {
      const double v = num(name);
      if (v != std::floor(v)) throw ParseError(path, lineNo, std::string("'") + name + "' must be an integer");
      return static_cast<int>(v);
    };
    UnitSpec u;
    u.id = cell("id");
    try {
      u.bus = net.indexOf(integer("bus"));
    } catch (const InvalidInput& e) {
      throw ParseError(path, lineNo, e.what());
    }
    u.lmin = num("Lmin");
    u.umax = num("Umax");
    u.minUp = integer("MUT");
    u.minDown = integer("MDT");
    u.rampUp = num("UR");
    u.rampDown = num("DR");
    u.a = num("a");
    u.b = num("b");
    u.c = num("c");
    u.startupCost = num("SU");
    u.shutdownCost = num("SD");
    u.initialStatus = integer("init");
    u.initialOutput = col.count("p0") ? num("p0") : 0.0;
    try {
      u.validate();
    } catch (const InvalidInput& e) {
      throw ParseError(path, lineNo, e.what());
    }
    units.push_back(std::move(u));
  }
  if (units.empty()) throw ParseError(path, 0, "no units listed");
  return units;
}

inline std::vector<UnitSpec> loadUnits(const std::string& path, const grid::NetworkCase& net) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open units file");
  return parseUnits(in, net, path);
}

}  // namespace ucds::uc
