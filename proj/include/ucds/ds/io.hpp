#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ucds/common.hpp"
#include "ucds/ds/structure.hpp"

namespace ucds::ds {

/// Columns lo,hi,mass in element order.
inline void writeStructureCsv(std::ostream& os, const DSStructure& x) {
  os << "lo,hi,mass\n";
  for (const auto& e : x.elements())
    os << formatNumber(e.lo) << ',' << formatNumber(e.hi) << ',' << formatNumber(e.mass) << '\n';
}

/// Columns x,lowerCDF,upperCDF at every step location of either bound.
inline void writePBoxCsv(std::ostream& os, const PBox& box) {
  std::vector<double> xs;
  for (const auto& s : box.upperSteps()) xs.push_back(s.x);
  for (const auto& s : box.lowerSteps()) xs.push_back(s.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  os << "x,lowerCDF,upperCDF\n";
  for (double x : xs)
    os << formatNumber(x) << ',' << formatNumber(box.lowerCdf(x)) << ','
       << formatNumber(box.upperCdf(x)) << '\n';
}

inline DSStructure readStructureCsv(std::istream& is, const std::string& path = "<stream>") {
  std::string line;
  int lineNo = 0;
  std::vector<FocalElement> out;
  while (std::getline(is, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (lineNo == 1 && line.rfind("lo,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[3];
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= 3 || !parseNumber(cell, v[k])) throw ParseError(path, lineNo, "expected lo,hi,mass");
      ++k;
    }
    if (k != 3) throw ParseError(path, lineNo, "expected lo,hi,mass");
    out.push_back({v[0], v[1], v[2]});
  }
  try {
    return DSStructure(std::move(out));
  } catch (const InvalidInput& e) {
    throw ParseError(path, 0, e.what());
  }
}

}  // namespace ucds::ds
