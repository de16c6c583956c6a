#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "symplecta/suites.hpp"

namespace {

using namespace symplecta;

constexpr int kConfigError = 2;

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path.string());
}

bool is_config_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::UnknownKey || code == ErrorCode::InvalidValue ||
         code == ErrorCode::UnsupportedFormat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for dominated symplectic products, their purification and relative continuity"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format;
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "base seed for random instances");
  app.add_option("--out", out_path, "report path; tables are written next to it as <stem>.<table>.csv");
  app.add_option("--format", format, "report format: json or csv");

  std::optional<Suite> chosen;
  for (Suite s : {Suite::Core, Suite::Continuity, Suite::Gallery, Suite::Kg, Suite::Probe, Suite::All}) {
    auto* sub = app.add_subcommand(std::string(to_string(s)), "run the " + std::string(to_string(s)) + " suite");
    sub->callback([&chosen, s] { chosen = s; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  SuiteConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (chosen) config.suite = *chosen;
    if (seed) config.seed = *seed;
    if (!out_path.empty()) config.output_path = out_path;
    if (!format.empty()) config.output_format = parse_format(format);
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const Report report = run_suite(config);
    const std::filesystem::path path(config.output_path);
    write_file(path, emit_report(report, config.output_format));
    for (const auto& table : report.tables) {
      write_file(path.parent_path() / (path.stem().string() + "." + table.name + ".csv"), emit_table(table));
    }
    std::cout << summary_block(report);
    return exit_code(report);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_config_error(e.code()) ? kConfigError : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
