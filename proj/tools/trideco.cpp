// trideco: batch analyses of a triangular decomposition given by a config.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "trideco/pipeline.hpp"

namespace fs = std::filesystem;
using namespace trideco;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "IoError", "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "IoError", "write failed for " + path.string());
}

void write_character_csv(const fs::path& path, const json& rows) {
  std::string text = "weight,degree,multiplicity\n";
  for (const auto& r : rows)
    text += r.at("weight").get<std::string>() + "," + std::to_string(r.at("degree").get<int>()) + "," +
            std::to_string(r.at("multiplicity").get<long long>()) + "\n";
  write_file(path, text);
}

// One csv per character family, plus the Verma-in-simples decomposition.
void write_csv(const fs::path& dir, const json& bundle) {
  const json& an = bundle.at("analyses");
  if (an.contains("characters") && an["characters"].value("status", "") == "ok")
    for (const char* family : {"verma", "simple"})
      for (const auto& [w, rows] : an["characters"][family].items())
        write_character_csv(dir / (std::string(family) + "_" + w + ".csv"), rows);
  if (an.contains("bgg") && an["bgg"].value("status", "") == "ok") {
    for (const auto& [w, rows] : an["bgg"]["projective"].items()) write_character_csv(dir / ("projective_" + w + ".csv"), rows);
    std::string text = "module,weight,degree,coefficient\n";
    for (const auto& [m, row] : an["bgg"]["verma_in_simples"].items())
      for (const auto& [w, poly] : row.items())
        for (const auto& term : poly)
          text += "M(" + m + ")," + w + "," + std::to_string(term[0].get<int>()) + "," + std::to_string(term[1].get<long long>()) + "\n";
    write_file(dir / "verma_in_simples.csv", text);
  }
}

int run(const std::string& config_path, const std::string& preset, const std::string& out_dir, const std::string& format,
        std::optional<std::size_t> max_degree, const std::string& verify) {
  const JobConfig cfg = preset.empty() ? load_config(config_path) : load_preset(preset);
  RunOptions opt;
  opt.full = verify == "full";
  opt.threads = thread_cap();
  opt.max_degree = max_degree;
  const json bundle = run_job(cfg, opt);
  const std::string text = bundle.dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << text;
  } else {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "IoError", "cannot create " + dir.string());
    write_file(dir / (cfg.name + ".json"), text);
    if (format == "csv") write_csv(dir, bundle);
  }
  for (const auto& [name, rec] : bundle.at("analyses").items())
    if (rec.value("status", "") == "error") std::cerr << "trideco: " << name << ": " << rec.at("message").get<std::string>() << "\n";
  return bundle_exit_code(bundle);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangular decompositions of finite-dimensional Hopf algebras"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run the analyses of a config");
  std::string config_path, preset, out_dir, format = "json", verify = "fast";
  std::optional<std::size_t> max_degree;
  auto* cfg_opt = run_cmd->add_option("--config", config_path, "config file (json)");
  auto* preset_opt = run_cmd->add_option("--preset", preset, "named preset");
  cfg_opt->excludes(preset_opt);
  run_cmd->add_option("--out", out_dir, "output directory (stdout when omitted)");
  run_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_option("--max-degree", max_degree, "override budgets.max_degree");
  run_cmd->add_option("--verify-level", verify, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  auto* presets_cmd = app.add_subcommand("presets", "list the bundled presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (presets_cmd->parsed()) {
      for (const auto& n : preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (config_path.empty() && preset.empty()) throw config_error("ConfigInvalid", "run needs --config or --preset");
    return run(config_path, preset, out_dir, format, max_degree, verify);
  } catch (const Error& e) {
    std::cerr << "trideco: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "trideco: " << e.what() << "\n";
    return 3;
  }
}
