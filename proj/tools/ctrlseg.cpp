// ctrlseg: command-line front end for control-based dialogue segmentation.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ctrlseg/cli/run.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return ctrlseg::cli::kSuccess;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return ctrlseg::cli::kUsage;
  }
  return ctrlseg::cli::kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ctrlseg::cli;
  CLI::App app{"Segment dialogues by control, code anaphora crossings and compare initiative."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string format = "text";
  std::string out_path;
  std::string config_path;
  bool dump_config = false;

  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check transcripts against the format's structural rules"},
      {"tag", "fill in utterance types and response/redundancy flags"},
      {"segment", "assign control and print the segment tree"},
      {"anaphora", "code anaphora as crossing (X) or not (NX) and tabulate"},
      {"stats", "control metrics per group and chi-square tests"},
      {"report", "segmentation, anaphora and statistics together"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", cfg.inputs, "transcript files or directories (one group per argument)");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "csv", "structured"}))
        ->capture_default_str();
    sub->add_option("-o,--out", out_path, "write output to this file instead of stdout");
    sub->add_flag("--strict", cfg.strict, "refuse untyped utterances and integer-only statistics");
    sub->add_flag("--provenance", cfg.provenance, "prefix output with tool version, time and inputs");
    sub->add_option("--config", config_path, "tagger configuration (JSON); default from CTRLSEG_CONFIG");
    if (std::string_view(name) == "tag") sub->add_flag("--dump-config", dump_config, "print the tagger configuration");
    if (std::string_view(name) == "anaphora" || std::string_view(name) == "report")
      sub->add_option("--window", cfg.window, "boundary-proximity window in utterances")->capture_default_str();
    if (std::string_view(name) == "stats" || std::string_view(name) == "report") {
      sub->add_option("--alpha", cfg.alpha, "significance level")->capture_default_str();
      sub->add_flag("--yates", cfg.yates, "apply Yates' continuity correction to 2x2 tables");
      sub->add_flag("--include-openings", cfg.include_openings, "count opening and closing phases");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  cfg.command = *parse_command(name);
  cfg.format = *parse_format(format);
  if (config_path.empty())
    if (const char* env = std::getenv("CTRLSEG_CONFIG"); env && *env) config_path = env;
  if (!config_path.empty()) cfg.config_path = config_path;

  if (dump_config) {
    try {
      auto tc = cfg.config_path ? ctrlseg::tagger_config_from_json(ctrlseg::cli::detail::read_file(*cfg.config_path))
                                : ctrlseg::default_tagger_config();
      return write_output(ctrlseg::to_json(tc).dump(2) + "\n", out_path);
    } catch (const ctrlseg::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

  RunResult res = run(cfg);
  std::cerr << res.diagnostics;
  if (res.exit_code == kUsage) return res.exit_code;
  if (int w = write_output(res.output, out_path); w != kSuccess) return w;
  return res.exit_code;
}
