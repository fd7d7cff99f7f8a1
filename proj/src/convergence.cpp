#include "dpplab/convergence.hpp"

#include <iomanip>
#include <sstream>

#include "dpplab/errors.hpp"
#include "dpplab/operator_core.hpp"

namespace dpplab {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ConvergenceReport::ConvergenceReport(std::vector<long> ns, std::vector<std::string> window_ids)
    : ns_(std::move(ns)), window_ids_(std::move(window_ids)), values_(ns_.size() * window_ids_.size(), 0.0) {}

void ConvergenceReport::set(std::size_t n_pos, std::size_t window_pos, double d) {
  values_.at(n_pos * window_ids_.size() + window_pos) = d;
}

double ConvergenceReport::distance(std::size_t n_pos, std::size_t window_pos) const {
  return values_.at(n_pos * window_ids_.size() + window_pos);
}

std::vector<ConvergenceRow> ConvergenceReport::rows() const {
  std::vector<ConvergenceRow> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < ns_.size(); ++i) {
    for (std::size_t w = 0; w < window_ids_.size(); ++w) out.push_back({ns_[i], window_ids_[w], distance(i, w)});
  }
  return out;
}

std::vector<WindowVerdict> ConvergenceReport::verdicts() const {
  std::vector<WindowVerdict> out;
  for (std::size_t w = 0; w < window_ids_.size(); ++w) {
    WindowVerdict v;
    v.window_id = window_ids_[w];
    for (std::size_t i = 1; i < ns_.size(); ++i) {
      const double prev = distance(i - 1, w);
      const double cur = distance(i, w);
      if (cur > prev) v.nonincreasing = false;
      if (!(cur < prev)) v.strictly_decreasing = false;
    }
    v.last = ns_.empty() ? 0.0 : distance(ns_.size() - 1, w);
    out.push_back(v);
  }
  return out;
}

bool ConvergenceReport::all_strictly_decreasing() const {
  for (const WindowVerdict& v : verdicts()) {
    if (!v.strictly_decreasing) return false;
  }
  return true;
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os << "n,window_id,distance\n" << std::setprecision(17);
  for (const ConvergenceRow& r : rows()) os << r.n << ',' << csv_field(r.window_id) << ',' << r.distance << '\n';
  return os.str();
}

ConvergenceReport convergence_report(const std::vector<KernelOperator>& sequence, const KernelOperator& target,
                                     const std::vector<Window>& windows, std::vector<long> labels) {
  if (sequence.empty()) throw Error(ErrorKind::kArgument, "convergence_report: empty sequence");
  if (labels.empty()) {
    for (std::size_t i = 0; i < sequence.size(); ++i) labels.push_back(static_cast<long>(i + 1));
  }
  if (labels.size() != sequence.size()) {
    throw Error(ErrorKind::kArgument, "convergence_report: label count differs from sequence length");
  }
  std::vector<std::string> ids;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    ids.push_back(windows[w].description().empty() ? "W" + std::to_string(w) : windows[w].description());
  }
  ConvergenceReport report(std::move(labels), std::move(ids));
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    sequence[i].require_same_space(target);
    const KernelOperator diff = sequence[i] - target;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      report.set(i, w, local_trace_norm(diff, windows[w], windows[w]).value);
    }
  }
  return report;
}

}  // namespace dpplab
