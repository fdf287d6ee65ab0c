#include "qgmuse/composer.hpp"

#include <cmath>
#include <fstream>

namespace qgmuse {

int span_to_steps(int span) {
  if (span == 0) return 0;
  if (std::abs(span) == 1) throw Error("span of +-1 is not representable (a nonzero interval spans >= 2)");
  return span > 0 ? span - 1 : span + 1;
}

int actual_LI(const Interval& interval) { return interval.is_large() ? 1 : 0; }

int actual_DC(const Interval& prev, const Interval& cur) {
  if (prev.steps == 0 || cur.steps == 0) return 0;
  return (prev.steps > 0) != (cur.steps > 0) ? 1 : 0;
}

FlagTriple decode_flags(const std::string& label) {
  if (label.size() != 3 || label.find_first_not_of("01") != std::string::npos)
    throw Error("flag label must be 3 chars of 0/1, got '" + label + "'");
  FlagTriple flags;
  flags.li_prev = label[0] - '0';  // q2
  flags.dc_t = label[1] - '0';     // q1
  flags.li_t = label[2] - '0';     // q0
  return flags;
}

Interval next_interval(const FlagTriple& flags, int prev_direction, DcMode dc_mode, Rng& rng) {
  // Span magnitudes {0, 2, .., cap} <=> step magnitudes {0, 1, .., cap-1},
  // one draw over the whole set.
  const int span_cap = flags.li_t ? 8 : 3;
  const int magnitude = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(span_cap)));
  if (magnitude == 0) return Interval{0};

  int sign;
  if (flags.dc_t) {
    if (dc_mode == DcMode::Strict && prev_direction != 0)
      sign = -prev_direction;
    else
      sign = rng.next_bool() ? 1 : -1;
  } else {
    sign = prev_direction != 0 ? prev_direction : (rng.next_bool() ? 1 : -1);
  }
  return Interval{sign * magnitude};
}

Melody compose(const ComposerConfig& config, const LabelSampler& sampler) {
  if (config.num_notes < 2) throw ConfigError("a melody needs at least 2 notes");
  if (config.max_retries < 1) throw ConfigError("max_retries must be >= 1");

  Rng rng(config.seed);
  Melody melody;
  melody.pitches.push_back(WhitePitch{0});  // middle C

  int prev_direction = 0;
  for (int step = 1; step < config.num_notes; ++step) {
    const int actual_prev =
        step == 1 ? 0 : actual_LI(melody.intervals[static_cast<std::size_t>(step - 2)]);

    StepInfo info;
    for (;;) {
      info.label = sampler();
      info.flags = decode_flags(info.label);
      if (info.flags.li_prev == actual_prev) break;
      if (++info.retries >= config.max_retries) throw ComposeStalledError(step, info.retries);
    }

    const Interval interval = next_interval(info.flags, prev_direction, config.dc_mode, rng);
    melody.intervals.push_back(interval);
    melody.pitches.push_back(WhitePitch{melody.pitches.back().degree + interval.steps});
    melody.steps.push_back(std::move(info));
    if (interval.steps != 0) prev_direction = interval.steps > 0 ? 1 : -1;
  }
  return melody;
}

LabelSampler make_scripted_sampler(std::vector<std::string> labels) {
  if (labels.empty()) throw ConfigError("scripted sampler needs at least one label");
  return [labels = std::move(labels), at = std::size_t(0)]() mutable {
    const std::string& label = labels[at];
    at = (at + 1) % labels.size();
    return label;
  };
}

LabelSampler make_scripted_sampler_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open sampler script '" + path + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    labels.push_back(line);
  }
  return make_scripted_sampler(std::move(labels));
}

AdherenceReport analyze(const std::vector<Interval>& intervals) {
  if (intervals.empty()) throw Error("no intervals to analyze");
  AdherenceReport report;
  long small = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const int span = intervals[i].span();
    if (std::abs(span) <= 3) ++small;
    if (std::abs(span) < 4) continue;
    const int index = static_cast<int>(i) + 1;  // 1-based, matching emitted tables
    if (i + 1 == intervals.size()) {
      report.indeterminate.push_back(index);
      continue;
    }
    const int next_span = intervals[i + 1].span();
    if (next_span == 0)
      report.indeterminate.push_back(index);
    else if ((next_span > 0) != (span > 0))
      report.followed.push_back(index);
    else
      report.broken.push_back(index);
  }
  report.small_fraction = static_cast<double>(small) / static_cast<double>(intervals.size());
  return report;
}

}  // namespace qgmuse
