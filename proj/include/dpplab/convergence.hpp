#pragma once

#include <string>
#include <vector>

#include "dpplab/kernel_operator.hpp"

namespace dpplab {

struct ConvergenceRow {
  long n = 0;
  std::string window_id;
  double distance = 0.0;
};

struct WindowVerdict {
  std::string window_id;
  bool nonincreasing = true;
  bool strictly_decreasing = true;
  double last = 0.0;
};

/// Table of windowed distances d(n, W), one row per (n, window) pair, ordered
/// by n then by window.
class ConvergenceReport {
 public:
  ConvergenceReport(std::vector<long> ns, std::vector<std::string> window_ids);

  void set(std::size_t n_pos, std::size_t window_pos, double distance);
  double distance(std::size_t n_pos, std::size_t window_pos) const;

  const std::vector<long>& ns() const noexcept { return ns_; }
  const std::vector<std::string>& window_ids() const noexcept { return window_ids_; }

  std::vector<ConvergenceRow> rows() const;
  /// Monotonicity flags and last value for each window's column.
  std::vector<WindowVerdict> verdicts() const;
  bool all_strictly_decreasing() const;

  /// Header "n,window_id,distance", one line per row.
  std::string to_csv() const;

 private:
  std::vector<long> ns_;
  std::vector<std::string> window_ids_;
  std::vector<double> values_;  // row-major [n][window]
};

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// local_trace_norm(K_n - target, W, W) for every member and window. Labels
/// default to 1..N.
ConvergenceReport convergence_report(const std::vector<KernelOperator>& sequence, const KernelOperator& target,
                                     const std::vector<Window>& windows, std::vector<long> labels = {});

}  // namespace dpplab
