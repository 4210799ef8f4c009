#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "htreval/commands.hpp"

int main(int argc, char** argv) {
  using namespace htreval;

  CLI::App app{"Order-aware and order-independent evaluation of page transcripts"};
  app.require_subcommand(1);

  const unsigned hw_jobs = std::max(1u, std::thread::hardware_concurrency());

  // eval
  EvalOptions ev;
  std::string format = "json";
  bool no_timing = false;
  auto* eval = app.add_subcommand("eval", "Score hypothesis pages against reference pages");
  eval->add_option("ref_dir", ev.ref_dir, "Reference page directory")->required();
  eval->add_option("hyp_dir", ev.hyp_dir, "Hypothesis page directory")->required();
  eval->add_option("--gamma", ev.gamma, "Position regularization for hWER/hCER/NSFD")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  eval->add_option("--format", format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "tsv"}));
  eval->add_option("-o,--out", ev.out, "Write the report here instead of stdout");
  eval->add_flag("--per-page", ev.per_page, "Include one entry per page");
  eval->add_flag("--no-timing", no_timing, "Omit per-metric timings from the JSON report");
  eval->add_option("-j,--jobs", ev.jobs, "Parallel pages")->default_val(hw_jobs);

  // simulate
  SimulateOptions sim;
  std::string mode = "swap";
  std::vector<std::size_t> range{1, 1};
  auto* simulate = app.add_subcommand("simulate", "Write a distorted copy of a corpus");
  simulate->add_option("ref_dir", sim.ref_dir, "Reference page directory")->required();
  simulate->add_option("out_dir", sim.out_dir, "Output directory")->required();
  simulate->add_option("--mode", mode, "char-word, char-line, swap or split")
      ->capture_default_str()
      ->check(CLI::IsMember({"char-word", "char-line", "swap", "split"}));
  simulate->add_option("--seed", sim.config.seed, "Random seed")->capture_default_str();
  simulate->add_option("--step", sim.config.tcer_step, "tCER step n (3.25n percent)")
      ->capture_default_str();
  simulate->add_option("--S", sim.config.count, "Swaps or splits per page")->capture_default_str();
  simulate->add_option("--range", range, "Swap distance range R' R")->expected(2);
  simulate->add_option("--sub", sim.config.op_mix.sub, "Share of substitutions")
      ->capture_default_str();
  simulate->add_option("--ins", sim.config.op_mix.ins, "Share of insertions")
      ->capture_default_str();
  simulate->add_option("--del", sim.config.op_mix.del, "Share of deletions")
      ->capture_default_str();
  simulate->add_option("--whitespace-share", sim.config.whitespace_share,
                       "Share of space edits in char-line mode")
      ->capture_default_str();
  simulate->add_option("--in-word-prob", sim.config.char_split_prob,
                       "Probability that a split falls inside a word")
      ->capture_default_str();
  simulate->add_flag("--sweep", sim.sweep,
                     "Iterate the step or S from 0 and write sweep.tsv with predictions");
  simulate->add_option("--gamma", sim.gamma, "Regularization used by --sweep")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("-j,--jobs", sim.jobs, "Parallel pages")->default_val(hw_jobs);

  // synth
  SynthOptions syn;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus of pseudo-word pages");
  synth->add_option("out_dir", syn.out_dir, "Output directory")->required();
  synth->add_option("--pages", syn.pages)->capture_default_str();
  synth->add_option("--lines", syn.lines, "Mean lines per page")->capture_default_str();
  synth->add_option("--words", syn.words, "Mean words per line")->capture_default_str();
  synth->add_option("--seed", syn.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*eval) {
    ev.format = format == "tsv" ? ReportFormat::kTsv : ReportFormat::kJson;
    ev.timings = !no_timing;
    return run_eval(ev, std::cout, std::cerr);
  }
  if (*simulate) {
    sim.config.mode = parse_distortion_mode(mode);
    sim.config.range_min = range.at(0);
    sim.config.range_max = range.at(1);
    return run_simulate(sim, std::cout, std::cerr);
  }
  return run_synth(syn, std::cout, std::cerr);
}
