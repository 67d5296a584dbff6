#pragma once

// Batch front end shared by the ctrlseg tool and its tests. run() is pure:
// it reads the inputs and returns the rendered output and exit status;
// writing to stdout or --out is the caller's job.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctrlseg/anaphora/anaphora.hpp"
#include "ctrlseg/control/pipeline.hpp"
#include "ctrlseg/control/render.hpp"
#include "ctrlseg/corpus/json_format.hpp"
#include "ctrlseg/corpus/text_format.hpp"
#include "ctrlseg/corpus/validate.hpp"
#include "ctrlseg/report.hpp"
#include "ctrlseg/stats/metrics.hpp"
#include "ctrlseg/tagger/tagger.hpp"

namespace ctrlseg::cli {

inline constexpr std::string_view kVersion = "0.3.0";

enum class Command { validate, tag, segment, anaphora, stats, report };
enum class OutputFormat { text, csv, structured };

inline std::optional<Command> parse_command(std::string_view s) {
  if (s == "validate") return Command::validate;
  if (s == "tag") return Command::tag;
  if (s == "segment") return Command::segment;
  if (s == "anaphora") return Command::anaphora;
  if (s == "stats") return Command::stats;
  if (s == "report") return Command::report;
  return std::nullopt;
}

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "csv") return OutputFormat::csv;
  if (s == "structured") return OutputFormat::structured;
  return std::nullopt;
}

struct RunConfig {
  Command command = Command::report;
  std::vector<std::string> inputs;
  OutputFormat format = OutputFormat::text;
  double alpha = 0.05;
  std::size_t window = 2;
  bool strict = false;
  bool include_openings = false;
  bool yates = false;
  bool provenance = false;
  std::optional<std::string> config_path;
};

enum ExitCode : int { kSuccess = 0, kFindings = 1, kUsage = 2 };

struct RunResult {
  int exit_code = kSuccess;
  std::string output;
  std::string diagnostics;
};

namespace detail {

struct InputGroup {
  std::string name;
  std::vector<std::string> files;
  std::vector<Dialogue> dialogues;
};

class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool is_transcript_file(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  return ext == ".dlg" || ext == ".json" || ext == ".txt";
}

inline std::vector<Dialogue> load_file(const std::filesystem::path& p) {
  std::string text = read_file(p);
  try {
    // Structured documents are recognised by content so piped `segment`
    // output works whatever the file is called.
    auto first = text.find_first_not_of(" \t\r\n");
    if (p.extension() == ".json" || (first != std::string::npos && (text[first] == '{' || text[first] == '[')))
      return parse_json_corpus(text);
    return parse_corpus(text);
  } catch (const ParseError& e) {
    throw InputError(p.string() + ":" + e.what());
  }
}

inline std::vector<InputGroup> load_inputs(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<InputGroup> groups;
  for (const auto& in : inputs) {
    fs::path p(in);
    InputGroup g;
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && is_transcript_file(e.path())) g.files.push_back(e.path().string());
      std::sort(g.files.begin(), g.files.end());
      if (g.files.empty()) throw InputError("directory '" + in + "' holds no transcript files");
      p = p.lexically_normal();
      g.name = p.has_filename() ? p.filename().string() : p.parent_path().filename().string();
    } else {
      if (!fs::exists(p, ec)) throw InputError("cannot read '" + in + "': no such file");
      g.files.push_back(in);
      g.name = p.stem().string();
    }
    for (const auto& f : g.files) {
      auto ds = load_file(f);
      g.dialogues.insert(g.dialogues.end(), ds.begin(), ds.end());
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

inline std::vector<Analysis> analyze_all(const InputGroup& g, const AnalysisOptions& opts) {
  std::vector<Analysis> out;
  for (const auto& d : g.dialogues) {
    auto rep = validate(d, {!opts.strict});
    if (!rep.ok()) {
      const auto& v = rep.violations.front();
      throw AnalysisError("dialogue " + d.id + " is not analysable: " + v.location + ": " + to_string(v.kind) +
                          ": " + v.message + " (run `validate` for the full list)");
    }
    out.push_back(analyze(d, opts));
  }
  return out;
}

inline std::string provenance_header(const RunConfig& cfg, std::string_view command) {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::string out = "# ctrlseg " + std::string(kVersion) + " " + std::string(command) + " generated " + stamp + "\n";
  for (const auto& in : cfg.inputs) out += "# input " + in + "\n";
  return out;
}

inline Json violation_json(const std::string& file, const std::string& dialogue, const Violation& v) {
  return {{"file", file}, {"dialogue", dialogue}, {"kind", to_string(v.kind)}, {"location", v.location},
          {"message", v.message}};
}

}  // namespace detail

class Runner {
 public:
  explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)) {
    opts_.strict = cfg_.strict;
    if (cfg_.config_path) opts_.tagger = tagger_config_from_json(detail::read_file(*cfg_.config_path));
    copts_.alpha = cfg_.alpha;
    copts_.yates = cfg_.yates;
    copts_.strict = cfg_.strict;
    mopts_.include_openings = cfg_.include_openings;
  }

  RunResult run() {
    RunResult res;
    if (cfg_.inputs.empty()) {
      res.exit_code = kUsage;
      res.diagnostics = "error: at least one input is required\n";
      return res;
    }
    if (!(cfg_.alpha > 0.0 && cfg_.alpha < 1.0)) {
      res.exit_code = kUsage;
      res.diagnostics = "error: --alpha must lie in (0,1)\n";
      return res;
    }
    try {
      groups_ = detail::load_inputs(cfg_.inputs);
      switch (cfg_.command) {
        case Command::validate: res = validate_cmd(); break;
        case Command::tag: res.output = tag_cmd(); break;
        case Command::segment: res.output = segment_cmd(); break;
        case Command::anaphora: res.output = anaphora_cmd(); break;
        case Command::stats: res.output = stats_cmd(); break;
        case Command::report: res.output = report_cmd(); break;
      }
    } catch (const Error& e) {
      res.exit_code = kUsage;
      res.output.clear();
      res.diagnostics = std::string("error: ") + e.what() + "\n";
      return res;
    }
    if (cfg_.provenance && cfg_.format != OutputFormat::structured)
      res.output = detail::provenance_header(cfg_, command_name()) + res.output;
    return res;
  }

 private:
  std::string_view command_name() const {
    switch (cfg_.command) {
      case Command::validate: return "validate";
      case Command::tag: return "tag";
      case Command::segment: return "segment";
      case Command::anaphora: return "anaphora";
      case Command::stats: return "stats";
      case Command::report: return "report";
    }
    return "?";
  }

  const std::vector<Analysis>& analyses(std::size_t group) {
    if (analyses_.size() != groups_.size()) {
      analyses_.clear();
      for (const auto& g : groups_) analyses_.push_back(detail::analyze_all(g, opts_));
    }
    return analyses_[group];
  }

  std::vector<Analysis> all_analyses() {
    std::vector<Analysis> out;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const auto& a = analyses(g);
      out.insert(out.end(), a.begin(), a.end());
    }
    return out;
  }

  RunResult validate_cmd() {
    RunResult res;
    std::size_t findings = 0, dialogues = 0;
    util::TextTable csv;
    csv.header({"file", "dialogue", "kind", "location", "message"});
    Json items = Json::array();
    std::string text;
    auto emit = [&](const std::string& file, const std::string& dlg, const Violation& v) {
      ++findings;
      text += file + ": " + dlg + ": " + v.location + ": " + to_string(v.kind) + ": " + v.message + "\n";
      csv.row({file, dlg, to_string(v.kind), v.location, v.message});
      items.push_back(detail::violation_json(file, dlg, v));
    };
    for (const auto& g : groups_) {
      for (const auto& f : g.files) {
        auto ds = detail::load_file(f);
        if (ds.empty()) emit(f, "-", {ViolationKind::no_turns, "file", "file contains no dialogue"});
        for (const auto& d : ds) {
          ++dialogues;
          for (const auto& v : validate_full(d, opts_).violations) emit(f, d.id, v);
        }
      }
    }
    text += std::to_string(findings) + " violation(s) in " + std::to_string(dialogues) + " dialogue(s)\n";
    switch (cfg_.format) {
      case OutputFormat::text: res.output = text; break;
      case OutputFormat::csv: res.output = csv.csv(); break;
      case OutputFormat::structured:
        res.output = Json{{"dialogues", dialogues}, {"violations", items}}.dump(2) + "\n";
        break;
    }
    res.exit_code = findings ? kFindings : kSuccess;
    return res;
  }

  std::string tag_cmd() {
    std::vector<Dialogue> tagged;
    for (const auto& g : groups_) {
      auto t = tag_corpus(g.dialogues, opts_.tagger, {opts_.strict});
      tagged.insert(tagged.end(), t.begin(), t.end());
    }
    if (cfg_.format == OutputFormat::structured) return serialize_json(tagged);
    if (cfg_.format == OutputFormat::csv) {
      util::TextTable tab;
      tab.header({"dialogue", "utterance", "speaker", "type", "response", "redundant", "text"});
      for (const auto& d : tagged)
        for (const auto& t : d.turns)
          for (const auto& u : t.utterances)
            tab.row({d.id, u.id, t.speaker, std::string(to_string(*u.type)), std::string(to_string(u.response)),
                     std::string(to_string(u.redundant)), u.text});
      return tab.csv();
    }
    return serialize_corpus(tagged);
  }

  std::string segment_cmd() {
    auto all = all_analyses();
    if (cfg_.format == OutputFormat::structured) {
      Json arr = Json::array();
      for (const auto& a : all) arr.push_back({{"dialogue", to_json(a.dialogue)}, {"analysis", tree_to_json(a)}});
      return (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
    }
    if (cfg_.format == OutputFormat::csv) {
      util::TextTable tab;
      tab.header({"dialogue", "utterance", "speaker", "type", "rule", "controller", "segment", "depth", "shift_before"});
      for (const auto& a : all) {
        UtteranceIndex idx(a.dialogue);
        std::size_t next = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          std::string shift;
          if (next < a.tree.shifts.size() && a.tree.shifts[next].position == i)
            shift = std::string(to_string(a.tree.shifts[next++].type));
          const Segment& seg = a.tree.segment_at(i);
          tab.row({a.dialogue.id, idx.id(i), idx.speaker(i), std::string(to_string(*idx.utterance(i).type)),
                   std::string(to_string(a.assignments[i].rule)), a.effective[i], seg.id, std::to_string(seg.depth),
                   shift});
        }
      }
      return tab.csv();
    }
    std::string out;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i) out += "\n";
      out += render_outline(all[i]);
    }
    return out;
  }

  Json anaphora_group_json(std::size_t g) {
    const auto& as = analyses(g);
    auto table = distribution_table(as);
    auto prox = boundary_proximity(as, cfg_.window);
    Json codes = Json::array();
    for (const auto& a : as)
      for (const auto& c : code_anaphora(a))
        codes.push_back({{"dialogue", a.dialogue.id},
                         {"anaphor", c.anaphor},
                         {"code", to_string(c.code)},
                         {"class", to_string(c.aclass)},
                         {"segment", c.segment},
                         {"context_shift", c.context_shift ? Json(to_string(*c.context_shift)) : Json(nullptr)},
                         {"relation", to_string(c.relation)},
                         {"future", c.future_action}});
    return {{"name", groups_[g].name},
            {"distribution", distribution_to_json(table)},
            {"proximity", proximity_to_json(prox)},
            {"codes", codes}};
  }

  std::string anaphora_text() {
    std::string out;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const auto& as = analyses(g);
      if (g) out += "\n";
      out += render_distribution_text(distribution_table(as), "Distribution of anaphora: " + groups_[g].name);
      out += render_proximity_text(boundary_proximity(as, cfg_.window));
    }
    return out;
  }

  std::string anaphora_cmd() {
    if (cfg_.format == OutputFormat::structured) {
      Json arr = Json::array();
      for (std::size_t g = 0; g < groups_.size(); ++g) arr.push_back(anaphora_group_json(g));
      return Json{{"groups", arr}}.dump(2) + "\n";
    }
    if (cfg_.format == OutputFormat::csv) {
      std::string out;
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        std::string csv = render_distribution_csv(distribution_table(analyses(g)));
        std::istringstream lines(csv);
        std::string line;
        bool header = true;
        while (std::getline(lines, line)) {
          if (header) {
            if (g == 0) out += "group," + line + "\n";
            header = false;
          } else {
            out += groups_[g].name + "," + line + "\n";
          }
        }
      }
      return out;
    }
    return anaphora_text();
  }

  struct StatsBundle {
    std::vector<std::pair<std::string, CorpusMetrics>> metrics;
    std::optional<GroupComparison> comparison;
    // Per group: anaphora X/NX by shift type and its test.
    std::vector<std::tuple<std::string, stats::ContingencyTable, std::optional<stats::ChiSquareResult>,
                           std::vector<std::string>>>
        anaphora_tests;
  };

  StatsBundle compute_stats() {
    StatsBundle b;
    for (std::size_t g = 0; g < groups_.size(); ++g)
      b.metrics.emplace_back(groups_[g].name, corpus_metrics(analyses(g), mopts_));
    if (groups_.size() >= 2) {
      std::vector<CorpusGroup> cg;
      for (std::size_t g = 0; g < groups_.size(); ++g) cg.push_back({groups_[g].name, analyses(g)});
      b.comparison = compare_dialogue_types(cg, mopts_, copts_);
    }
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      std::vector<std::string> notes;
      auto table = stats::prune_empty(crossing_by_shift(distribution_table(analyses(g))), &notes);
      std::optional<stats::ChiSquareResult> test;
      if (table.rows() >= 2 && table.cols() >= 2) test = stats::chi_square(table, copts_);
      b.anaphora_tests.emplace_back(groups_[g].name, std::move(table), test, std::move(notes));
    }
    return b;
  }

  std::string stats_text(const StatsBundle& b) {
    std::string out = "Control by dialogue group\n" + metrics_table(b.metrics).text();
    if (b.comparison) {
      out += "\nShift types by group\n" + render_contingency_text(b.comparison->shift_table);
      for (const auto& w : b.comparison->warnings) out += "warning: " + w + "\n";
      if (b.comparison->test) out += render_chi_square_text(*b.comparison->test);
    }
    for (const auto& [name, table, test, notes] : b.anaphora_tests) {
      if (!test) continue;
      out += "\nAnaphora crossing (X/NX) by shift type: " + name + "\n" + render_contingency_text(table);
      for (const auto& w : notes) out += "note: " + w + "\n";
      out += render_chi_square_text(*test);
    }
    return out;
  }

  Json stats_json(const StatsBundle& b) {
    Json j;
    j["groups"] = Json::array();
    for (const auto& [name, m] : b.metrics) j["groups"].push_back({{"name", name}, {"metrics", metrics_to_json(m)}});
    if (b.comparison) {
      Json c;
      c["table"] = table_to_json(b.comparison->shift_table);
      c["test"] = b.comparison->test ? chi_square_to_json(*b.comparison->test) : Json(nullptr);
      c["warnings"] = b.comparison->warnings;
      j["comparison"] = c;
    } else {
      j["comparison"] = nullptr;
    }
    j["anaphora_tests"] = Json::array();
    for (const auto& [name, table, test, notes] : b.anaphora_tests)
      j["anaphora_tests"].push_back({{"name", name},
                                     {"table", table_to_json(table)},
                                     {"test", test ? chi_square_to_json(*test) : Json(nullptr)},
                                     {"notes", notes}});
    return j;
  }

  std::string stats_cmd() {
    auto b = compute_stats();
    if (cfg_.format == OutputFormat::structured) return stats_json(b).dump(2) + "\n";
    if (cfg_.format == OutputFormat::csv) {
      util::TextTable tab = metrics_table(b.metrics);
      return tab.csv();
    }
    return stats_text(b);
  }

  std::string report_cmd() {
    if (cfg_.format == OutputFormat::structured) {
      Json j;
      Json dialogues = Json::array();
      for (const auto& a : all_analyses())
        dialogues.push_back({{"dialogue", to_json(a.dialogue)}, {"analysis", tree_to_json(a)}});
      j["dialogues"] = dialogues;
      Json anaphora = Json::array();
      for (std::size_t g = 0; g < groups_.size(); ++g) anaphora.push_back(anaphora_group_json(g));
      j["anaphora"] = anaphora;
      j["stats"] = stats_json(compute_stats());
      return j.dump(2) + "\n";
    }
    if (cfg_.format == OutputFormat::csv) {
      return stats_cmd();
    }
    std::string out = "== Segmentation ==\n" + segment_cmd();
    out += "\n== Anaphora ==\n" + anaphora_text();
    out += "\n== Initiative ==\n" + stats_text(compute_stats());
    return out;
  }

  RunConfig cfg_;
  AnalysisOptions opts_;
  stats::ChiSquareOptions copts_;
  MetricsOptions mopts_;
  std::vector<detail::InputGroup> groups_;
  std::vector<std::vector<Analysis>> analyses_;
};

inline RunResult run(const RunConfig& cfg) {
  try {
    return Runner(cfg).run();
  } catch (const Error& e) {
    return {kUsage, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace ctrlseg::cli
