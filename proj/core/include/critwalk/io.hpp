#pragma once

// CSV and JSON emission for summaries, tail curves, fits, walk estimates,
// critical points, stream checkpoints and oracle fixtures.
//
// CSV columns:
//   summaries  trial,cmax,n_components,max_active,steps[,model extras]
//              regular adds halfedge_excursion_max[,simple_flag]
//              intersection adds attributes_discovered_total
//              quantum adds intervals_total
//   tail       direction,A,threshold,trials,hits,phat,ci_lo,ci_hi
//   fit        direction,slope,ci_lo,ci_hi,rows_used
//   estimates  law,params,horizon,j,trials,phat,ci_lo,ci_hi

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "critwalk/harness.hpp"
#include "critwalk/instance.hpp"
#include "critwalk/quantum.hpp"
#include "critwalk/rng.hpp"
#include "critwalk/walk.hpp"

namespace critwalk::io {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

void write_summaries_csv(std::ostream& out, const std::vector<harness::TrialSummary>& summaries);
std::string summaries_json(const std::vector<harness::TrialSummary>& summaries);

void write_tail_csv(std::ostream& out, const std::vector<harness::TailCurve>& curves);
std::string tail_json(const std::vector<harness::TailCurve>& curves);

/// A fit attempt for one direction; `fit` is empty when fitting failed.
struct FitRecord {
  harness::Direction direction = harness::Direction::lower;
  std::optional<harness::ExponentFit> fit;
  std::uint64_t usable_rows = 0;
  std::string error;
};

void write_fit_csv(std::ostream& out, const std::vector<FitRecord>& fits);
std::string fit_json(const std::vector<FitRecord>& fits);

std::string critical_point_json(const quantum::CriticalPoint& point);

void write_estimates_csv(std::ostream& out, const std::vector<walk::Estimate>& estimates);

std::string stream_to_json(const RngStream& stream);
RngStream stream_from_json(const std::string& text);

std::string instance_to_json(const MaterializedInstance& instance);

/// Standalone matplotlib script plotting log(-log phat) against log A from
/// `tail_file` (tail CSV) with each fitted line overlaid.
void write_plot_script(std::ostream& out, const std::string& tail_file, const std::vector<FitRecord>& fits);

}  // namespace critwalk::io
