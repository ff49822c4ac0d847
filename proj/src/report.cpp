#include "berlab/report.hpp"

#include <algorithm>
#include <cmath>

namespace berlab {

std::string_view to_string(CheckMode mode) noexcept {
  return mode == CheckMode::Tight ? "tight" : "certified";
}

CheckReport CheckReport::make(std::string checker, std::string label, double lhs, double rhs,
                              double tol, CheckMode mode) {
  CheckReport r;
  r.checker = std::move(checker);
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tol = tol;
  r.mode = mode;
  r.pass = std::isfinite(lhs) && std::isfinite(rhs) && r.slack >= -tol;
  return r;
}

bool CheckReport::all_pass() const {
  return pass && std::all_of(details.begin(), details.end(),
                             [](const CheckReport& d) { return d.all_pass(); });
}

double CheckReport::worst_slack() const {
  double w = slack;
  for (const CheckReport& d : details) w = std::min(w, d.worst_slack());
  return w;
}

}  // namespace berlab
