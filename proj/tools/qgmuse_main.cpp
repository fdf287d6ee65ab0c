// qgmuse: solve Boolean composition rules by brute force or amplitude
// amplification, sample the circuits, turn sampled flag solutions into
// white-note melodies, and analyze interval tables.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "qgmuse/composer.hpp"
#include "qgmuse/grover.hpp"
#include "qgmuse/notation.hpp"
#include "qgmuse/qsim.hpp"
#include "qgmuse/rules.hpp"

namespace {

using namespace qgmuse;

// The shipped three-flag melodic rule; q0 = li, q1 = dc, q2 = li_prev.
constexpr const char* kDefaultRule = "!li & !(dc ^ li_prev) & !li_prev";

// Seed salt so the composer's interval draws and the sampler's shot
// draws come from distinct streams of one user-facing seed.
constexpr std::uint64_t kSamplerSalt = 0x9e3779b97f4a7c15ULL;

struct RuleSource {
  std::string inline_text;
  std::string file_path;

  ExprPtr load(const std::string& fallback = {}) const {
    if (!inline_text.empty() && !file_path.empty())
      throw ConfigError("give either --rule or --rule-file, not both");
    if (!file_path.empty()) return parse_rule_file(file_path);
    if (!inline_text.empty()) return parse_rule(inline_text);
    if (!fallback.empty()) return parse_rule(fallback);
    throw ConfigError("a rule is required (--rule or --rule-file)");
  }
};

// All emitted files go through a temp-and-rename so a failure never
// leaves a partial file behind.
void write_file_atomic(const std::string& path, const void* data, std::size_t size) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw Error("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move '" + tmp + "' to '" + path + "'");
  }
}

void write_file_atomic(const std::string& path, const std::string& text) {
  write_file_atomic(path, text.data(), text.size());
}

int parse_iterations(const std::string& text, const ExprPtr& rule) {
  if (text == "auto")
    return optimal_iterations(static_cast<int>(variables(rule).size()), solution_count(rule));
  try {
    const int k = std::stoi(text);
    if (k >= 1) return k;
  } catch (const std::exception&) {
  }
  throw ConfigError("--iterations takes a positive integer or 'auto'");
}

std::string summary_path_for(const std::string& csv_path) {
  if (csv_path.size() > 4 && csv_path.ends_with(".csv"))
    return csv_path.substr(0, csv_path.size() - 4) + ".txt";
  return csv_path + ".txt";
}

std::string join_indices(const std::vector<int>& v) {
  if (v.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

int cmd_solve(const RuleSource& source) {
  const ExprPtr rule = source.load();
  const TruthTable table = enumerate_solutions(rule);
  for (std::uint64_t x : table.satisfying) std::cout << basis_label(x, table.num_vars) << "\n";
  std::cout << "count: " << table.satisfying.size() << "\n";
  return 0;
}

int cmd_grover(const RuleSource& source, long shots, std::uint64_t seed,
               const std::string& iterations_text, const std::string& backend,
               const NoiseConfig& noise, const std::string& out_csv) {
  const ExprPtr rule = source.load();
  const int iterations = parse_iterations(iterations_text, rule);
  const CountsTable counts = sample_rule(rule, iterations, shots, seed, noise);

  const std::string descriptor =
      backend == "noisy" ? "noisy(f1q=" + std::to_string(noise.fidelity_1q) +
                               ", f2q=" + std::to_string(noise.fidelity_2q) + ")"
                         : "ideal";
  write_file_atomic(out_csv, histogram_csv(counts));
  write_file_atomic(summary_path_for(out_csv), histogram_summary(counts, seed, descriptor));

  std::string top;
  long best = -1;
  for (const auto& [label, count] : counts.counts)
    if (count > best) {
      best = count;
      top = label;
    }
  std::cout << "seed: " << seed << "\n";
  std::cout << "iterations: " << iterations << "\n";
  std::cout << "top: " << top << " " << format_frequency(counts.frequency_of(top)) << "\n";
  return 0;
}

int cmd_compose(const RuleSource& source, const ComposerConfig& config,
                const std::string& iterations_text, const NoiseConfig& noise,
                const std::string& sampler_script, const std::string& out_midi,
                const std::string& out_csv, int tempo) {
  LabelSampler sampler;
  if (!sampler_script.empty()) {
    sampler = make_scripted_sampler_from_file(sampler_script);
  } else {
    const ExprPtr rule = source.load(kDefaultRule);
    if (variables(rule).size() != 3)
      throw ConfigError("the composer needs a 3-variable rule (q0=li, q1=dc, q2=li_prev)");
    const int iterations = parse_iterations(iterations_text, rule);
    sampler = make_rule_sampler(rule, iterations, config.seed ^ kSamplerSalt, noise);
  }

  const Melody melody = compose(config, sampler);
  const auto midi_bytes = write_midi(melody, tempo);
  write_file_atomic(out_midi, midi_bytes.data(), midi_bytes.size());
  write_file_atomic(out_csv, write_interval_table(melody));

  std::cout << "seed: " << config.seed << "\n";
  for (std::size_t i = 0; i < melody.steps.size(); ++i) {
    const StepInfo& step = melody.steps[i];
    std::cout << "step " << (i + 1) << ": label " << step.label << " retries " << step.retries
              << " span " << melody.intervals[i].span() << "\n";
  }
  std::cout << "notes: " << melody.pitches.size() << "\n";
  std::cout << "wrote " << out_midi << " and " << out_csv << "\n";
  return 0;
}

int cmd_analyze(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const AdherenceReport report = analyze(read_interval_table(text));
  std::cout << "broken: " << join_indices(report.broken)
            << " / followed: " << join_indices(report.followed) << "\n";
  std::cout << "indeterminate: " << join_indices(report.indeterminate) << "\n";
  std::cout << "small fraction: " << format_frequency(report.small_fraction) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean rule search and white-note melody generation"};
  app.require_subcommand(1);

  RuleSource source;
  long shots = 4096;
  std::uint64_t seed = 0;
  std::string iterations = "1";
  std::string backend = "ideal";
  double fidelity_1q = 0.997;
  double fidelity_2q = 0.958;
  std::string out_csv = "histogram.csv";
  std::string out_midi = "melody.mid";
  std::string sampler_script;
  std::string analyze_csv;
  int tempo = 120;
  ComposerConfig composer;
  std::string dc_mode = "literal";

  auto add_rule_flags = [&](CLI::App* cmd) {
    cmd->add_option("-r,--rule", source.inline_text, "rule text, e.g. '!a & (b ^ c)'");
    cmd->add_option("--rule-file", source.file_path, "path to a rule file");
  };
  auto add_backend_flags = [&](CLI::App* cmd) {
    cmd->add_option("--backend", backend, "ideal|noisy")->check(CLI::IsMember({"ideal", "noisy"}));
    cmd->add_option("--fidelity-1q", fidelity_1q, "single-qubit gate fidelity (noisy backend)");
    cmd->add_option("--fidelity-2q", fidelity_2q, "two-qubit gate fidelity (noisy backend)");
    cmd->add_option("--iterations", iterations, "amplification rounds, or 'auto'");
    cmd->add_option("--seed", seed, "RNG seed (default 0, printed for replay)");
  };

  CLI::App* solve = app.add_subcommand("solve", "brute-force all satisfying assignments");
  add_rule_flags(solve);

  CLI::App* grover = app.add_subcommand("grover", "sample the rule's search circuit");
  add_rule_flags(grover);
  add_backend_flags(grover);
  grover->add_option("--shots", shots, "measurement count (default 4096)");
  grover->add_option("--out-csv", out_csv, "histogram CSV path (default histogram.csv)");

  CLI::App* compose_cmd = app.add_subcommand("compose", "generate a white-note melody");
  add_rule_flags(compose_cmd);
  add_backend_flags(compose_cmd);
  compose_cmd->add_option("--notes", composer.num_notes, "melody length (default 32)");
  compose_cmd->add_option("--max-retries", composer.max_retries,
                          "sample rejections tolerated per step");
  compose_cmd->add_option("--dc-mode", dc_mode, "literal|strict")
      ->check(CLI::IsMember({"literal", "strict"}));
  compose_cmd->add_option("--sampler-script", sampler_script,
                          "read labels from a file instead of the circuit");
  compose_cmd->add_option("--out-midi", out_midi, "MIDI output path (default melody.mid)");
  compose_cmd->add_option("--out-csv", out_csv, "interval table path");
  compose_cmd->add_option("--tempo", tempo, "beats per minute (default 120)");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "adherence report for an interval table");
  analyze_cmd->add_option("csv", analyze_csv, "interval table in index,span form")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(source);
    NoiseConfig noise{fidelity_1q, fidelity_2q, backend == "noisy"};
    noise.validate();
    if (grover->parsed())
      return cmd_grover(source, shots, seed, iterations, backend, noise, out_csv);
    if (compose_cmd->parsed()) {
      composer.seed = seed;
      composer.dc_mode = dc_mode == "strict" ? DcMode::Strict : DcMode::Literal;
      if (out_csv == "histogram.csv") out_csv = "intervals.csv";
      return cmd_compose(source, composer, iterations, noise, sampler_script, out_midi, out_csv,
                         tempo);
    }
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_csv);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
