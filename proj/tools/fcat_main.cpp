#include "CLI11.hpp"

#include "fcat/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

fcat::Config load_config(const std::string& spec) {
  if (std::filesystem::exists(spec)) return fcat::parse_config_file(spec);
  if (const std::string* text = fcat::find_builtin_config(spec))
    return fcat::parse_config_text(*text, spec);
  throw fcat::Error("config '" + spec +
                    "' is neither a file nor a shipped config name");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "f-categories over derived categories of quiver representations: "
      "realization functors and their verification suites"};
  app.require_subcommand(1);

  std::string config_spec;
  std::string report_kind = "human";
  std::string out_path;
  bool allow_unknown = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_spec,
                    "config file path or shipped config name")
        ->required();
    cmd->add_option("--seed", seed, "override the config's random seed");
    cmd->add_option("--samples", samples, "override the config's sample count");
    cmd->add_option("--report", report_kind, "report format: human | machine")
        ->check(CLI::IsMember({"human", "machine"}));
    cmd->add_option("--out", out_path, "write the report to a file");
    cmd->add_flag("--allow-unknown", allow_unknown,
                  "exit 0 even when checks report unknown");
  };

  const std::vector<std::string> commands = {
      "check-axioms", "ext-table", "realize", "verify-equivalence",
      "functoriality"};
  for (const std::string& c : commands) add_common(app.add_subcommand(c));

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const fcat::Config cfg = load_config(config_spec);
    fcat::RunOptions opts;
    opts.seed = seed;
    opts.samples = samples;
    const fcat::Report rep = fcat::run_command(command, cfg, opts);
    const std::string text =
        report_kind == "machine" ? rep.machine_text() : rep.human_text();
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw fcat::Error("cannot write to " + out_path);
      out << text;
    }
    return rep.exit_code(allow_unknown);
  } catch (const fcat::ParseError& e) {
    std::cerr << "config error: " << config_spec << ":" << e.what() << "\n";
    return 2;
  } catch (const fcat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
