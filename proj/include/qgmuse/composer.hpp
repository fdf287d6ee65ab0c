#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qgmuse/errors.hpp"
#include "qgmuse/rng.hpp"

namespace qgmuse {

// White-key pitch, 0 = middle C, one step per staff position.
struct WhitePitch {
  int degree = 0;
};

// Signed white-key steps between consecutive notes. The reported "span"
// counts both end pitches, so a nonzero interval always spans at least
// two white notes: span = 0 for a repeat, sign(steps) * (|steps| + 1)
// otherwise. Never +-1.
struct Interval {
  int steps = 0;

  int span() const { return steps == 0 ? 0 : (steps > 0 ? steps + 1 : steps - 1); }
  bool is_large() const { return std::abs(span()) >= 4; }
};

int span_to_steps(int span);

// 1 iff the interval spans 4 white notes or more (both ends counted).
int actual_LI(const Interval& interval);

// 1 iff both intervals are nonzero and point opposite ways. A zero
// interval has no direction and can never flag a change.
int actual_DC(const Interval& prev, const Interval& cur);

// The three rule flags carried by one measured label. Qubit layout:
// q0 = LI(t), q1 = DC(t), q2 = LI(t-1); the label reads q2 q1 q0.
struct FlagTriple {
  int li_t = 0;
  int dc_t = 0;
  int li_prev = 0;
};

FlagTriple decode_flags(const std::string& label);

// DC(t) = 1 read permissively (free sign) or as a forced flip.
enum class DcMode { Literal, Strict };

// Draw the next interval under the accepted flags. Span magnitude is
// uniform on {0, 2, .., 8} when a large interval is allowed, {0, 2, 3}
// otherwise. prev_direction is the sign of the last nonzero interval
// (0 when none yet); with no direction on record, nonzero draws get a
// uniform sign.
Interval next_interval(const FlagTriple& flags, int prev_direction, DcMode dc_mode, Rng& rng);

// One 3-bit label per call: one rule-solver shot.
using LabelSampler = std::function<std::string()>;

struct ComposerConfig {
  int num_notes = 32;
  std::uint64_t seed = 0;
  int max_retries = 64;
  DcMode dc_mode = DcMode::Literal;
};

struct StepInfo {
  std::string label;   // accepted sample
  FlagTriple flags;
  int retries = 0;     // labels skipped before acceptance
};

struct Melody {
  std::vector<WhitePitch> pitches;
  std::vector<Interval> intervals;  // intervals[i] = pitches[i+1] - pitches[i]
  std::vector<StepInfo> steps;      // one per interval
};

// Starts on middle C. Each step draws labels until the sampled LI(t-1)
// agrees with the interval actually generated last time (0 before any);
// disagreement skips the sample and asks again — there is no
// backtracking. Deterministic for a fixed config and sampler stream.
// Throws ComposeStalledError when one step burns through max_retries.
Melody compose(const ComposerConfig& config, const LabelSampler& sampler);

// Replays labels from a fixed list, cycling at the end. Used for
// deterministic tests and the --sampler-script backend.
LabelSampler make_scripted_sampler(std::vector<std::string> labels);

LabelSampler make_scripted_sampler_from_file(const std::string& path);

struct AdherenceReport {
  std::vector<int> broken;         // 1-based interval indices
  std::vector<int> followed;
  std::vector<int> indeterminate;  // large interval followed by a rest-step or nothing
  double small_fraction = 0.0;     // |span| <= 3, zeros included
};

// Registral-direction check over a 1-based interval list: every large
// interval should be answered by a direction change. A zero successor
// has no direction and decides nothing; neither does a trailing large
// interval.
AdherenceReport analyze(const std::vector<Interval>& intervals);

}  // namespace qgmuse
