// realize: command-line front end for the realization engine.
//
// Exit codes: 0 success, 1 golden check mismatch, 2 scenario or parse
// error, 64 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "realize/realize.hpp"

#ifndef REALIZE_FIXTURE_DIR
#define REALIZE_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitScenario = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError(p.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A scenario file path, or a built-in scenario name.
realize::Scenario load_scenario(const std::string& arg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) {
    const std::string text = read_file(arg);
    try {
      return realize::parse_scenario(text, fs::path(arg).stem().string());
    } catch (const realize::Error& e) {
      throw InputError(arg + ":" + e.what());
    }
  }
  for (const auto& name : realize::builtin_names()) {
    if (name == arg) return realize::builtin(arg);
  }
  throw InputError(arg + ": no such file or built-in scenario");
}

struct Flags {
  std::string regime = "current";
  std::string rates = "paper";
  std::string window = "per-tick";
  std::string format;
};

realize::OutputFormat resolve_format(const std::string& flag) {
  std::string value = flag;
  if (value.empty()) {
    const char* env = std::getenv("REALIZE_FORMAT");
    value = env != nullptr && *env != '\0' ? env : "table";
  }
  const auto f = realize::parse_format(value);
  if (!f) throw UsageError("unknown output format '" + value + "' (table, csv, json)");
  return *f;
}

realize::NettingWindow resolve_window(const std::string& s) {
  const auto w = realize::parse_window(s);
  if (!w) throw UsageError("unknown netting window '" + s + "' (per-tick, whole-run, every:N)");
  return *w;
}

int cmd_run(const std::vector<std::string>& inputs, const Flags& f) {
  const auto format = resolve_format(f.format);
  const realize::RunOptions opt{*realize::parse_regime(f.regime), *realize::parse_schedule(f.rates),
                                resolve_window(f.window)};
  std::vector<realize::Scenario> scenarios;
  for (const auto& in : inputs) scenarios.push_back(load_scenario(in));
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    try {
      if (i > 0 && format == realize::OutputFormat::Table) std::cout << '\n';
      std::cout << realize::render(realize::run(scenarios[i], opt), format);
    } catch (const realize::Error& e) {
      throw InputError(inputs[i] + ": " + e.what());
    }
  }
  return kExitOk;
}

int cmd_compare(const std::string& input, const Flags& f) {
  const auto format = resolve_format(f.format);
  const auto scenario = load_scenario(input);
  try {
    std::cout << realize::render(
        realize::compare(scenario, *realize::parse_schedule(f.rates), resolve_window(f.window)),
        format);
  } catch (const realize::Error& e) {
    throw InputError(input + ": " + e.what());
  }
  return kExitOk;
}

std::string grid_output(realize::OutputFormat format) {
  using realize::OutputFormat;
  if (format == OutputFormat::Table) return realize::render_offset_grid() + "\n";
  std::ostringstream o;
  if (format == OutputFormat::Csv) {
    o << "present,future,ordinary_amount,ordinary_basis,ordinary_gain,short_amount,short_basis,short_gain\n";
    for (const auto& r : realize::offset_grid()) {
      o << r.present.raw() << ',' << r.future.raw() << ','
        << r.ordinary.amount_realized_per_share.raw() << ',' << r.ordinary.basis_per_share.raw()
        << ',' << r.ordinary.gain_per_share.raw() << ','
        << r.short_cycle.amount_realized_per_share.raw() << ','
        << r.short_cycle.basis_per_share.raw() << ',' << r.short_cycle.gain_per_share.raw()
        << '\n';
    }
    return o.str();
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : realize::offset_grid()) {
    j.push_back({{"present_centavos", r.present.raw()},
                 {"future_centavos", r.future.raw()},
                 {"ordinary_gain_per_share_centavos", r.ordinary.gain_per_share.raw()},
                 {"short_gain_per_share_centavos", r.short_cycle.gain_per_share.raw()}});
  }
  return j.dump(2) + "\n";
}

std::string paper_tables_output() { return realize::render_paper_tables() + "\n"; }

int cmd_check(const std::string& fixture_dir) {
  namespace fs = std::filesystem;
  int failures = 0;
  const auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok    " : "FAIL  ") << what << '\n';
    if (!ok) ++failures;
  };
  const auto golden = [&](const std::string& file, const std::string& actual) {
    const fs::path p = fs::path(fixture_dir) / file;
    std::string expected;
    try {
      expected = read_file(p);
    } catch (const InputError& e) {
      report(false, std::string(e.what()));
      return;
    }
    report(expected == actual, "golden " + file);
  };

  golden("paper_tables.txt", paper_tables_output());
  golden("grid.txt", grid_output(realize::OutputFormat::Table));

  report(paper_tables_output() == paper_tables_output(), "determinism paper-tables");
  for (const auto& name : realize::builtin_names()) {
    const auto s = realize::builtin(name);
    bool same = true;
    for (const auto regime : {realize::Regime::Current, realize::Regime::Proposed}) {
      const auto a = realize::render_json(realize::run(s, {regime}));
      const auto b = realize::render_json(realize::run(s, {regime}));
      same = same && a == b;
    }
    same = same && realize::parse_scenario(realize::format_scenario(s)) == s;
    report(same, "determinism and round-trip " + name);
  }
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
            << '\n';
  return failures == 0 ? kExitOk : kExitMismatch;
}

void add_rate_flags(CLI::App* cmd, Flags& f, bool with_regime) {
  if (with_regime) {
    cmd->add_option("--regime", f.regime, "Realization rules")
        ->check(CLI::IsMember({"current", "proposed"}))
        ->capture_default_str();
  }
  cmd->add_option("--rates", f.rates, "Rate schedule")
      ->check(CLI::IsMember({"paper", "statutory"}))
      ->capture_default_str();
  cmd->add_option("--window", f.window, "Netting window: per-tick, whole-run, every:N")
      ->capture_default_str();
  cmd->add_option("--format", f.format, "table, csv or json (default: $REALIZE_FORMAT or table)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capital gains realization simulator for ordinary and short sales"};
  app.require_subcommand(1);

  Flags flags;
  std::vector<std::string> inputs;
  std::string input;
  std::string fixture_dir = REALIZE_FIXTURE_DIR;
  std::string format;

  auto* run = app.add_subcommand("run", "Run scenario files or built-ins under one regime");
  run->add_option("scenario", inputs, "Scenario file or built-in name")->required();
  add_rate_flags(run, flags, true);

  auto* cmp = app.add_subcommand("compare", "Run a scenario under both regimes side by side");
  cmp->add_option("scenario", input, "Scenario file or built-in name")->required();
  add_rate_flags(cmp, flags, false);

  auto* tables = app.add_subcommand("paper-tables", "Print every worked table");
  auto* grid = app.add_subcommand("grid", "Print the ordinary/short offsetting grid");
  grid->add_option("--format", format, "table, csv or json");

  auto* check = app.add_subcommand("check", "Diff golden tables against fixtures and check determinism");
  check->add_option("--fixtures", fixture_dir, "Fixture directory")->capture_default_str();

  auto* show = app.add_subcommand("show", "Print a scenario in the scenario language");
  show->add_option("scenario", input, "Scenario file or built-in name")->required();

  auto* list = app.add_subcommand("list", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(inputs, flags);
    if (*cmp) return cmd_compare(input, flags);
    if (*tables) {
      std::cout << paper_tables_output();
      return kExitOk;
    }
    if (*grid) {
      std::cout << grid_output(resolve_format(format));
      return kExitOk;
    }
    if (*check) return cmd_check(fixture_dir);
    if (*show) {
      std::cout << realize::format_scenario(load_scenario(input));
      return kExitOk;
    }
    if (*list) {
      for (const auto& n : realize::builtin_names()) std::cout << n << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "realize: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "realize: " << e.what() << '\n';
    return kExitScenario;
  } catch (const realize::Error& e) {
    std::cerr << "realize: " << e.what() << '\n';
    return kExitScenario;
  }
  return kExitUsage;
}
