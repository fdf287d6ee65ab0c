#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgmuse/circuit.hpp"
#include "qgmuse/composer.hpp"

namespace qgmuse {

// White-key degree (0 = middle C) to MIDI note number; octave from a
// floor division so negative degrees land below 60. Throws
// MidiRangeError outside 0..127.
int white_to_midi(int degree);

struct MidiNote {
  int midi_number;
  long start_tick;
  long duration_tick;
  int velocity;
};

// Standard MIDI File, format 0, one track, 480 ticks per quarter note.
// Each melody note is one quarter at velocity 80 on channel 0, note-off
// back to back with the next note-on.
std::vector<std::uint8_t> write_midi(const Melody& melody, int tempo_bpm = 120,
                                     int velocity = 80);

// "index,span" CSV, 1-based indices, LF line endings.
std::string write_interval_table(const Melody& melody);

std::vector<Interval> read_interval_table(const std::string& csv_text);

// "label,count,frequency" over every label 00..0 to 11..1 in binary
// order, zero rows included.
std::string histogram_csv(const CountsTable& counts);

// Human-readable block: shots, seed, backend, then one line per label.
std::string histogram_summary(const CountsTable& counts, std::uint64_t seed,
                              const std::string& backend);

// Decimal with trailing zeros trimmed but at least one digit after the
// point: 0 -> "0.0", 25.0/32 -> "0.78125".
std::string format_frequency(double value);

}  // namespace qgmuse
