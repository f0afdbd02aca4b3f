#include "qweil/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace qweil {

int Report::passed() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.pass) ++n;
  return n;
}

int Report::failed() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

void Report::sort_by_name() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["algebra"] = algebra;
  j["command"] = command;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["paper_anchor"] = c.paper_anchor;
    cj["status"] = c.pass ? "pass" : "fail";
    if (!c.pass) cj["witness"] = c.witness;
    j["checks"].push_back(cj);
  }
  j["summary"] = {{"passed", passed()}, {"failed", failed()}};
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "algebra: " << algebra << "\ncommand: " << command << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  [" << c.paper_anchor << "]  ("
       << c.wall_ms << " ms)\n";
    if (!c.pass && !c.witness.empty()) os << "     witness: " << c.witness << "\n";
  }
  os << "summary: " << passed() << " passed, " << failed() << " failed, " << seconds
     << " s\n";
  return os.str();
}

}  // namespace qweil
