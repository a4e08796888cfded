#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evlab/config.hpp"
#include "evlab/kernel.hpp"
#include "evlab/params.hpp"
#include "evlab/random.hpp"
#include "evlab/rational.hpp"

namespace evlab {

struct Particle {
  std::uint8_t type = 0;      // 0 or 1
  bool coloured = false;
  friend bool operator==(const Particle&, const Particle&) = default;
};

/// The two infinite context blocks around the window.
struct Frame {
  Particle left{1, false};
  Particle right{0, false};
  friend bool operator==(const Frame&, const Frame&) = default;
};

/// A configuration whose particles carry a colour.
///
/// The window is the shortest stretch outside which every particle equals its
/// context particle; in the standard frame (uncoloured ...111 and 000...) it
/// covers the hybrid zone and every coloured particle. Colours move with
/// particles under exclusion; voter moves follow the four-case rule.
class ColouredConfiguration {
 public:
  ColouredConfiguration() = default;
  ColouredConfiguration(std::vector<Particle> window, Frame frame);

  /// Standard frame with every particle uncoloured.
  static ColouredConfiguration uncoloured(const Configuration& s);
  /// ...000111... with every particle coloured; a window-free anti-shock.
  static ColouredConfiguration primed_ground_state();

  const std::vector<Particle>& window() const { return window_; }
  const Frame& frame() const { return frame_; }
  bool standard_frame() const { return frame_ == Frame{}; }

  /// Underlying uncoloured configuration (standard frame only).
  Configuration base() const;
  /// Colour flags over hybrid-zone positions 1..|S| (standard frame only).
  std::vector<bool> mask() const;

  /// Number of coloured particles inside the window (all of them in the standard frame).
  std::int64_t chi() const;
  std::int64_t pair_count() const;

  /// Window rendered with 0/1 for uncoloured and a/b for coloured 0/1.
  std::string key() const;

  friend bool operator==(const ColouredConfiguration&, const ColouredConfiguration&) = default;

 private:
  friend ColouredConfiguration apply_event(const ColouredConfiguration&, const Event&, const Params&);
  friend std::vector<std::pair<ColouredConfiguration, Rational>> coloured_step_law(const ColouredConfiguration&,
                                                                                 const ExactParams&);
  void trim();

  std::vector<Particle> window_;
  Frame frame_;
};

/// Colours the 0's up to position H (end of the K-th 0-block, K from g_rect) and
/// the 1's after it. Throws std::domain_error for the ground state.
ColouredConfiguration initial_colouring(const Configuration& s0);

/// Applies a drawn event exactly as the uncoloured chain would, updating colours.
ColouredConfiguration apply_event(const ColouredConfiguration& x, const Event& e, const Params& params);
ColouredConfiguration coloured_step(const ColouredConfiguration& x, const Params& params, Rng& rng);

/// Exact one-step law, successors merged.
std::vector<std::pair<ColouredConfiguration, Rational>> coloured_step_law(const ColouredConfiguration& x,
                                                                        const ExactParams& params);

/// Overlap segment from the leftmost coloured 1 to the rightmost coloured 0,
/// or the holding state when there is none.
struct OverlapSegment {
  bool holding = true;
  std::string word;
  std::int64_t length() const { return holding ? 0 : static_cast<std::int64_t>(word.size()); }
};
OverlapSegment zeta(const ColouredConfiguration& x);

/// True iff some coloured 0 lies left of some coloured 1, which the ground state cannot have.
bool ground_state_obstruction(const ColouredConfiguration& x);

/// No uncoloured 1 right of a coloured 1, no uncoloured 0 left of a coloured 0.
bool ordering_holds(const ColouredConfiguration& x);

}  // namespace evlab
