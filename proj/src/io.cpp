#include "htreval/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace htreval {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<std::string> list_page_files(const fs::path& root) {
  std::vector<std::string> out;
  if (!fs::is_directory(root)) throw EvalError("not a directory: " + root.string());
  auto it = fs::recursive_directory_iterator(root);
  for (; it != fs::recursive_directory_iterator(); ++it) {
    const std::string name = it->path().filename().string();
    if (!name.empty() && name.front() == '.') {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file()) out.push_back(fs::relative(it->path(), root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EvalError("cannot write " + path.string());
  out << contents;
}

PageTranscript read_page(const fs::path& path, std::string page_id) {
  const std::string raw = read_file(path);
  try {
    return tokenize_page(raw, std::move(page_id));
  } catch (const IngestError& e) {
    throw IngestError(e.byte_offset(), path.string() + ": " + e.what());
  }
}

void write_page(const fs::path& path, const PageTranscript& page) {
  write_file(path, serialize_page(page));
}

std::string percent1(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * fraction);
  return buf;
}

ordered_json rate_json(const Ratio& r) {
  return {{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

ordered_json counts_json(const EditCounts& c) {
  return {{"ins", c.ins}, {"sub", c.sub}, {"del", c.del}, {"correct", c.correct}};
}

ordered_json page_report_json(const PageReport& p, bool timings) {
  ordered_json j;
  j["page_id"] = p.page_id;
  j["ref_words"] = p.ref_words;
  j["hyp_words"] = p.hyp_words;
  j["ref_chars"] = p.ref_chars;
  j["wer"] = rate_json(p.wer);
  j["cer"] = rate_json(p.cer);
  j["bwer"] = rate_json(p.bwer);
  j["beta_wer"] = rate_json(p.beta_wer);
  j["hwer"] = rate_json(p.hwer);
  j["hcer"] = rate_json(p.hcer);
  j["nsfd"] = rate_json(p.nsfd);
  j["delta_wer"] = rate_json(p.delta_wer);
  j["delta_wer_h"] = rate_json(p.delta_wer_h);
  j["counts"] = {{"wer", counts_json(p.wer_counts)},
                 {"bwer", counts_json(p.bwer_counts)},
                 {"cer", counts_json(p.cer_counts)},
                 {"hcer", counts_json(p.hcer_counts)}};
  j["bag_distance"] = p.bag_distance;
  j["dummy_pairs"] = p.dummy_pairs;
  j["length_gap"] = p.length_gap;
  if (timings) {
    j["seconds"] = {{"wer", p.seconds.wer},   {"cer", p.seconds.cer},
                    {"bwer", p.seconds.bwer}, {"hwer", p.seconds.hwer},
                    {"hcer", p.seconds.hcer}, {"nsfd", p.seconds.nsfd}};
  }
  return j;
}

ordered_json report_json(const EvalRun& run, const ReportOptions& opts) {
  ordered_json j;
  j["schema"] = "htreval.report";
  j["version"] = kReportSchemaVersion;
  j["gamma"] = opts.gamma;
  if (run.corpus) {
    const CorpusReport& c = *run.corpus;
    ordered_json cj;
    cj["pages"] = c.pages.size();
    cj["ref_words"] = c.ref_words;
    cj["hyp_words"] = c.hyp_words;
    cj["ref_chars"] = c.ref_chars;
    cj["wer"] = rate_json(c.wer);
    cj["cer"] = rate_json(c.cer);
    cj["bwer"] = rate_json(c.bwer);
    cj["beta_wer"] = rate_json(c.beta_wer);
    cj["hwer"] = rate_json(c.hwer);
    cj["hcer"] = rate_json(c.hcer);
    cj["nsfd"] = c.nsfd;
    cj["delta_wer"] = rate_json(c.delta_wer);
    cj["delta_wer_h"] = rate_json(c.delta_wer_h);
    cj["counts"] = {{"wer", counts_json(c.wer_counts)},
                    {"bwer", counts_json(c.bwer_counts)},
                    {"cer", counts_json(c.cer_counts)},
                    {"hcer", counts_json(c.hcer_counts)}};
    j["corpus"] = std::move(cj);
    if (opts.per_page) {
      ordered_json pages = ordered_json::array();
      for (const auto& p : c.pages) pages.push_back(page_report_json(p, opts.timings));
      j["pages"] = std::move(pages);
    }
  } else {
    j["corpus"] = nullptr;
  }
  j["missing_hypotheses"] = run.missing_hypotheses;
  ordered_json errors = ordered_json::array();
  for (const auto& e : run.errors) errors.push_back({{"page_id", e.page_id}, {"error", e.message}});
  j["errors"] = std::move(errors);
  return j;
}

std::string report_tsv(const EvalRun& run, const ReportOptions& opts) {
  std::ostringstream out;
  out << "page_id\tNSFD\tDeltaWER\tWER\tbWER\thWER\tCER\thCER\n";
  if (!run.corpus) return out.str();
  auto row = [&](const std::string& id, double nsfd, const Ratio& dwer, const Ratio& w,
                 const Ratio& bw, const Ratio& hw, const Ratio& c, const Ratio& hc) {
    out << id << '\t' << percent1(nsfd) << '\t' << percent1(dwer.value()) << '\t'
        << percent1(w.value()) << '\t' << percent1(bw.value()) << '\t' << percent1(hw.value())
        << '\t' << percent1(c.value()) << '\t' << percent1(hc.value()) << '\n';
  };
  const CorpusReport& c = *run.corpus;
  if (opts.per_page) {
    for (const auto& p : c.pages) {
      row(p.page_id, p.nsfd.value(), p.delta_wer, p.wer, p.bwer, p.hwer, p.cer, p.hcer);
    }
  }
  row("ALL", c.nsfd, c.delta_wer, c.wer, c.bwer, c.hwer, c.cer, c.hcer);
  return out.str();
}

ordered_json manifest_json(const DistortionConfig& cfg, const std::vector<PageManifest>& pages) {
  ordered_json j;
  j["schema"] = "htreval.manifest";
  j["version"] = kManifestSchemaVersion;
  j["rng"] = std::string(kRngAlgorithm);
  ordered_json c;
  c["seed"] = cfg.seed;
  c["mode"] = std::string(to_string(cfg.mode));
  switch (cfg.mode) {
    case DistortionMode::kCharWordLevel:
    case DistortionMode::kCharLineLevel:
      c["tcer_step"] = cfg.tcer_step;
      c["target_cer"] = cfg.target_cer();
      c["op_mix"] = {{"sub", cfg.op_mix.sub}, {"ins", cfg.op_mix.ins}, {"del", cfg.op_mix.del}};
      c["op_mix_is_placeholder"] = true;
      if (cfg.mode == DistortionMode::kCharLineLevel) c["whitespace_share"] = cfg.whitespace_share;
      break;
    case DistortionMode::kLineSwap:
      c["swaps"] = cfg.count;
      c["range"] = {cfg.range_min, cfg.range_max};
      break;
    case DistortionMode::kLineSplit:
      c["splits"] = cfg.count;
      c["char_split_prob"] = cfg.char_split_prob;
      break;
  }
  j["config"] = std::move(c);

  ordered_json arr = ordered_json::array();
  for (const auto& p : pages) {
    ordered_json pj;
    pj["page_id"] = p.page_id;
    if (!p.char_edits.empty()) {
      ordered_json edits = ordered_json::array();
      for (const auto& e : p.char_edits) {
        edits.push_back({{"line", e.line}, {"offset", e.offset}, {"op", std::string(1, e.op)},
                         {"before", e.before}, {"after", e.after}});
      }
      pj["char_edits"] = std::move(edits);
    }
    if (!p.swaps.empty()) {
      ordered_json swaps = ordered_json::array();
      for (const auto& s : p.swaps) swaps.push_back({s.first, s.second});
      pj["swaps"] = std::move(swaps);
    }
    if (!p.splits.empty()) {
      ordered_json splits = ordered_json::array();
      for (const auto& s : p.splits) {
        splits.push_back({{"line", s.line},
                          {"in_word", s.in_word},
                          {"word", s.word},
                          {"char_offset", s.char_offset},
                          {"relocation", s.relocation},
                          {"at_page_end", s.at_page_end}});
      }
      pj["splits"] = std::move(splits);
      pj["in_word_splits"] = p.in_word_splits();
    }
    arr.push_back(std::move(pj));
  }
  j["pages"] = std::move(arr);
  return j;
}

}  // namespace htreval
