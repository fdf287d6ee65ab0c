#include "qgmuse/notation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qgmuse {

namespace {

constexpr int kTicksPerQuarter = 480;
constexpr int kWhiteOffsets[7] = {0, 2, 4, 5, 7, 9, 11};  // C D E F G A B

}  // namespace

int white_to_midi(int degree) {
  // Floor division/modulo so that degree -1 is the B just under middle C.
  int octave = degree / 7;
  int pos = degree % 7;
  if (pos < 0) {
    pos += 7;
    --octave;
  }
  const int midi = 60 + 12 * octave + kWhiteOffsets[pos];
  if (midi < 0 || midi > 127)
    throw MidiRangeError("white degree " + std::to_string(degree) + " maps to MIDI " +
                         std::to_string(midi) + ", outside 0..127");
  return midi;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

// Variable-length quantity, 7 bits per byte, high bit marks more.
void put_vlq(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t bytes[5];
  int n = 0;
  do {
    bytes[n++] = static_cast<std::uint8_t>(v & 0x7f);
    v >>= 7;
  } while (v != 0);
  while (n > 1) out.push_back(static_cast<std::uint8_t>(bytes[--n] | 0x80));
  out.push_back(bytes[0]);
}

}  // namespace

std::vector<std::uint8_t> write_midi(const Melody& melody, int tempo_bpm, int velocity) {
  if (tempo_bpm < 1) throw ConfigError("tempo must be positive");
  if (velocity < 1 || velocity > 127) throw ConfigError("velocity must be in 1..127");

  std::vector<std::uint8_t> track;
  // Tempo meta event at tick 0: microseconds per quarter note.
  const std::uint32_t us_per_quarter = 60000000u / static_cast<std::uint32_t>(tempo_bpm);
  put_vlq(track, 0);
  track.insert(track.end(), {0xff, 0x51, 0x03});
  track.push_back(static_cast<std::uint8_t>(us_per_quarter >> 16));
  track.push_back(static_cast<std::uint8_t>(us_per_quarter >> 8));
  track.push_back(static_cast<std::uint8_t>(us_per_quarter));

  for (const WhitePitch& pitch : melody.pitches) {
    const std::uint8_t note = static_cast<std::uint8_t>(white_to_midi(pitch.degree));
    put_vlq(track, 0);
    track.insert(track.end(), {0x90, note, static_cast<std::uint8_t>(velocity)});
    put_vlq(track, kTicksPerQuarter);
    track.insert(track.end(), {0x80, note, 0x00});
  }

  put_vlq(track, 0);
  track.insert(track.end(), {0xff, 0x2f, 0x00});  // end of track

  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'M', 'T', 'h', 'd'});
  put_u32(out, 6);
  put_u16(out, 0);  // format 0
  put_u16(out, 1);  // one track
  put_u16(out, kTicksPerQuarter);
  out.insert(out.end(), {'M', 'T', 'r', 'k'});
  put_u32(out, static_cast<std::uint32_t>(track.size()));
  out.insert(out.end(), track.begin(), track.end());
  return out;
}

std::string write_interval_table(const Melody& melody) {
  std::string out = "index,span\n";
  for (std::size_t i = 0; i < melody.intervals.size(); ++i)
    out += std::to_string(i + 1) + "," + std::to_string(melody.intervals[i].span()) + "\n";
  return out;
}

std::vector<Interval> read_interval_table(const std::string& csv_text) {
  std::vector<Interval> intervals;
  std::istringstream in(csv_text);
  std::string line;
  bool first = true;
  int expected_index = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      if (line != "index,span") throw Error("interval table must start with 'index,span'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("malformed interval row '" + line + "'");
    int index = 0, span = 0;
    try {
      index = std::stoi(line.substr(0, comma));
      span = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error("malformed interval row '" + line + "'");
    }
    if (index != expected_index++)
      throw Error("interval rows must be numbered 1..n, got " + std::to_string(index));
    intervals.push_back(Interval{span_to_steps(span)});
  }
  if (intervals.empty()) throw Error("interval table has no rows");
  return intervals;
}

std::string format_frequency(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9f", value);
  std::string s(buf);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.back() == '.') s += '0';
  return s;
}

std::string histogram_csv(const CountsTable& counts) {
  std::string out = "label,count,frequency\n";
  const std::uint64_t dim = std::uint64_t(1) << counts.num_qubits;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::string label = basis_label(i, counts.num_qubits);
    const long c = counts.count_of(label);
    out += label + "," + std::to_string(c) + "," + format_frequency(counts.frequency_of(label)) +
           "\n";
  }
  return out;
}

std::string histogram_summary(const CountsTable& counts, std::uint64_t seed,
                              const std::string& backend) {
  std::string out;
  out += "shots: " + std::to_string(counts.shots) + "\n";
  out += "seed: " + std::to_string(seed) + "\n";
  out += "backend: " + backend + "\n";
  out += "counts:\n";
  const std::uint64_t dim = std::uint64_t(1) << counts.num_qubits;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::string label = basis_label(i, counts.num_qubits);
    out += "  " + label + "  " + std::to_string(counts.count_of(label)) + "  " +
           format_frequency(counts.frequency_of(label)) + "\n";
  }
  return out;
}

}  // namespace qgmuse
