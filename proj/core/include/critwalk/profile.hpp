#pragma once

#include <cstdint>
#include <vector>

namespace critwalk {

/// One trial's component sizes and excursion statistics.
///
/// For unit-per-step processes (ER, intersection, reduced quantum) sizes[i]
/// equals excursion_bounds[i + 1] - excursion_bounds[i]. The regular model
/// counts sizes in vertices while its bounds count half-edge steps.
struct ComponentProfile {
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> excursion_bounds{0};
  std::uint64_t max_active = 0;
  std::uint64_t steps = 0;

  // regular model: half-edge steps per component, parallel to sizes
  // (0 for vertices isolated without ever being activated)
  std::vector<std::uint64_t> halfedge_lengths;
  // intersection model: |D_n|
  std::uint64_t attributes_discovered = 0;
  // quantum full replay: absorbed active points
  std::uint64_t surplus_edges = 0;

  std::uint64_t cmax() const;
  std::uint64_t total_size() const;
  std::size_t n_components() const { return sizes.size(); }
  /// Component sizes sorted descending.
  std::vector<std::uint64_t> sorted_sizes() const;
};

/// Tracks the active count Y_t of a unit-per-step exploration and records
/// excursion boundaries whenever Y returns to zero.
class ExcursionRecorder {
 public:
  explicit ExcursionRecorder(ComponentProfile& profile) : profile_(profile) {}

  bool idle() const { return active_ == 0; }
  std::uint64_t active() const { return active_; }

  /// Applies one step with `gained` newly active units.
  void step(std::uint64_t gained) {
    ++t_;
    active_ = active_ == 0 ? gained : active_ + gained - 1;
    if (active_ > profile_.max_active) profile_.max_active = active_;
    if (active_ == 0) {
      profile_.sizes.push_back(t_ - profile_.excursion_bounds.back());
      profile_.excursion_bounds.push_back(t_);
    }
    profile_.steps = t_;
  }

  std::uint64_t time() const { return t_; }

 private:
  ComponentProfile& profile_;
  std::uint64_t active_ = 0;
  std::uint64_t t_ = 0;
};

}  // namespace critwalk
