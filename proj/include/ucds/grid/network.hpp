#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ucds/common.hpp"

namespace ucds::grid {

/// Series branch with per-unit conductance and susceptance magnitude.
struct Branch {
  int from = 0;  // bus index, 0-based
  int to = 0;
  double conductance = 0.0;
  double susceptance = 0.0;
  double capacity = 0.0;  // MW
};

class NetworkCase {
 public:
  NetworkCase() = default;

  /// `busIds` are the external labels; branches refer to 0-based positions in it.
  NetworkCase(std::vector<int> busIds, std::vector<double> voltages, std::vector<Branch> branches,
              int slackIndex, double baseMva)
      : busIds_(std::move(busIds)),
        voltages_(std::move(voltages)),
        branches_(std::move(branches)),
        slack_(slackIndex),
        baseMva_(baseMva) {
    validate();
  }

  int busCount() const noexcept { return static_cast<int>(busIds_.size()); }
  int slack() const noexcept { return slack_; }
  double baseMva() const noexcept { return baseMva_; }
  const std::vector<int>& busIds() const noexcept { return busIds_; }
  const std::vector<double>& voltages() const noexcept { return voltages_; }
  const std::vector<Branch>& branches() const noexcept { return branches_; }

  int indexOf(int busId) const {
    for (std::size_t i = 0; i < busIds_.size(); ++i)
      if (busIds_[i] == busId) return static_cast<int>(i);
    throw InvalidInput("unknown bus " + std::to_string(busId));
  }

 private:
  void validate() const {
    const int n = busCount();
    if (n < 1) throw InvalidInput("network has no buses");
    if (static_cast<int>(voltages_.size()) != n) throw InvalidInput("one voltage per bus is required");
    if (slack_ < 0 || slack_ >= n) throw InvalidInput("slack bus out of range");
    if (!(baseMva_ > 0.0) || !std::isfinite(baseMva_)) throw InvalidInput("base MVA must be positive");
    for (double v : voltages_)
      if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("voltage magnitudes must be positive");
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto root = [&](int i) {
      while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
      return i;
    };
    for (const auto& b : branches_) {
      if (b.from < 0 || b.from >= n || b.to < 0 || b.to >= n || b.from == b.to)
        throw InvalidInput("branch endpoints must be two distinct known buses");
      if (!(b.capacity > 0.0)) throw InvalidInput("branch capacities must be positive");
      if (!allFinite({b.conductance, b.susceptance}) || b.susceptance < 0.0 || b.conductance < 0.0)
        throw InvalidInput("branch admittances must be finite and nonnegative");
      parent[static_cast<std::size_t>(root(b.from))] = root(b.to);
    }
    for (int i = 0; i < n; ++i)
      if (root(i) != root(0)) throw InvalidInput("network is not connected");
  }

  std::vector<int> busIds_;
  std::vector<double> voltages_;
  std::vector<Branch> branches_;
  int slack_ = 0;
  double baseMva_ = 100.0;
};

/**
 * Text case format, one record per line, '#' starts a comment:
 *   BASE <mva>
 *   SLACK <bus id>
 *   BUS                      then rows: <id> [voltage pu]
 *   BRANCH impedance|admittance   then rows: <from> <to> <r|g> <x|b> <capacity MW>
 */
inline NetworkCase parseCase(std::istream& is, const std::string& path = "<stream>") {
  enum class Section { None, Bus, BranchZ, BranchY } section = Section::None;
  double base = 100.0;
  int slackId = 0;
  bool haveSlack = false;
  std::vector<int> ids;
  std::vector<double> volts;
  struct RawBranch {
    int from, to;
    double g, b, cap;
    int line;
  };
  std::vector<RawBranch> raw;

  std::string line;
  int lineNo = 0;
  auto number = [&](const std::string& tok) {
    double v;
    if (!parseNumber(tok, v)) throw ParseError(path, lineNo, "not a number: '" + tok + "'");
    return v;
  };
  auto integer = [&](const std::string& tok) {
    const double v = number(tok);
    if (v != std::floor(v)) throw ParseError(path, lineNo, "expected an integer: '" + tok + "'");
    return static_cast<int>(v);
  };
  while (std::getline(is, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "BASE") {
      if (tok.size() != 2) throw ParseError(path, lineNo, "BASE takes one value");
      base = number(tok[1]);
      section = Section::None;
    } else if (key == "SLACK") {
      if (tok.size() != 2) throw ParseError(path, lineNo, "SLACK takes one bus id");
      slackId = integer(tok[1]);
      haveSlack = true;
      section = Section::None;
    } else if (key == "BUS") {
      section = Section::Bus;
    } else if (key == "BRANCH") {
      const std::string form = tok.size() > 1 ? tok[1] : "impedance";
      if (form == "impedance")
        section = Section::BranchZ;
      else if (form == "admittance")
        section = Section::BranchY;
      else
        throw ParseError(path, lineNo, "BRANCH form must be impedance or admittance");
    } else if (section == Section::Bus) {
      if (tok.size() < 1 || tok.size() > 2) throw ParseError(path, lineNo, "bus row is: id [voltage]");
      ids.push_back(integer(tok[0]));
      volts.push_back(tok.size() == 2 ? number(tok[1]) : 1.0);
    } else if (section == Section::BranchZ || section == Section::BranchY) {
      if (tok.size() != 5) throw ParseError(path, lineNo, "branch row is: from to v1 v2 capacity");
      double v1 = number(tok[2]), v2 = number(tok[3]);
      if (section == Section::BranchZ) {
        const double d = v1 * v1 + v2 * v2;
        if (!(d > 0.0)) throw ParseError(path, lineNo, "branch impedance is zero");
        const double r = v1, x = v2;
        v1 = r / d;
        v2 = x / d;
      }
      raw.push_back({integer(tok[0]), integer(tok[1]), v1, v2, number(tok[4]), lineNo});
    } else {
      throw ParseError(path, lineNo, "unexpected record '" + key + "'");
    }
  }
  if (ids.empty()) throw ParseError(path, 0, "no BUS section");
  if (!haveSlack) slackId = ids.front();

  std::map<int, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!index.emplace(ids[i], static_cast<int>(i)).second)
      throw ParseError(path, 0, "duplicate bus id " + std::to_string(ids[i]));
  std::vector<Branch> branches;
  for (const auto& r : raw) {
    auto f = index.find(r.from), t = index.find(r.to);
    if (f == index.end() || t == index.end()) throw ParseError(path, r.line, "branch refers to an unknown bus");
    branches.push_back({f->second, t->second, r.g, r.b, r.cap});
  }
  auto s = index.find(slackId);
  if (s == index.end()) throw ParseError(path, 0, "slack bus " + std::to_string(slackId) + " is not listed");
  try {
    return NetworkCase(std::move(ids), std::move(volts), std::move(branches), s->second, base);
  } catch (const InvalidInput& e) {
    throw ParseError(path, 0, e.what());
  }
}

inline NetworkCase loadCase(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open case file");
  return parseCase(in, path);
}

}  // namespace ucds::grid
