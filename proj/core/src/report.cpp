#include "fcat/report.hpp"

#include <iomanip>
#include <sstream>

namespace fcat {

std::string to_string(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::pass:
      return "pass";
    case CheckResult::Status::fail:
      return "fail";
    default:
      return "unknown";
  }
}

int Report::count(CheckResult::Status s) const {
  int n = 0;
  for (const CheckResult& c : checks)
    if (c.status == s) ++n;
  return n;
}

bool Report::clean(bool allow_unknown) const {
  if (count(CheckResult::Status::fail) > 0) return false;
  if (!allow_unknown && count(CheckResult::Status::unknown) > 0) return false;
  return true;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string Report::machine_text() const {
  std::ostringstream os;
  os << "report {\n";
  os << "  command = " << quoted(command) << "\n";
  os << "  config = " << quoted(config_name) << "\n";
  os << "  seed = " << seed << "\n";
  os << "  samples = " << samples << "\n";
  for (const CheckResult& c : checks) {
    os << "  check " << quoted(c.name) << " { status = " << to_string(c.status);
    if (!c.witness.empty()) os << "  witness = " << quoted(c.witness);
    os << " }\n";
  }
  os << "  summary { pass = " << count(CheckResult::Status::pass)
     << "  fail = " << count(CheckResult::Status::fail)
     << "  unknown = " << count(CheckResult::Status::unknown)
     << "  verdict = " << quoted(verdict) << " }\n";
  os << "}\n";
  return os.str();
}

std::string Report::human_text() const {
  std::ostringstream os;
  os << "== " << command << " on " << config_name << " (seed " << seed
     << ", samples " << samples << ")\n";
  for (const CheckResult& c : checks) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if (!c.witness.empty()) os << "  -- " << c.witness;
    if (c.seconds > 0)
      os << "  (" << std::fixed << std::setprecision(3) << c.seconds << "s)";
    os << "\n";
  }
  os << "summary: " << count(CheckResult::Status::pass) << " pass, "
     << count(CheckResult::Status::fail) << " fail, "
     << count(CheckResult::Status::unknown) << " unknown";
  if (!verdict.empty()) os << "; verdict: " << verdict;
  os << "\n";
  return os.str();
}

}  // namespace fcat
