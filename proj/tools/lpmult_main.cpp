#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/builders.hpp"
#include "cli/commands.hpp"
#include "lpmult/errors.hpp"

using namespace lpmult;
using namespace lpmult::cli;

namespace {

constexpr const char* kOutDirEnv = "LPMULT_OUT_DIR";

std::string csv_field(std::string s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const Json& env, const CommandResult& result, const std::string& format) {
  if (format == "json") return env.dump(2) + "\n";
  std::ostringstream os;
  for (const auto& [name, block] : result.csv) os << "# " << name << "\n" << block << "\n";
  if (!env["error"].is_null())
    os << "# error\nexit_code,type,message\n" << env["exit_code"].get<int>() << ','
       << env["error"]["type"].get<std::string>() << ',' << csv_field(env["error"]["message"].get<std::string>())
       << "\n";
  return os.str();
}

std::string output_path(const std::string& out, const std::string& command, const std::string& format) {
  if (!out.empty()) return out;
  const char* dir = std::getenv(kOutDirEnv);
  const std::filesystem::path base = dir && *dir ? dir : "lpmult-out";
  return (base / (command + "." + format)).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Fourier multipliers on compact Lie groups (SU(2) and tori)"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string out, format = "json";
  int band = -1, range = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "su2 or torus-N")->capture_default_str();
    sub->add_option("--band", band, "symbol band (labels with band <= B)");
    sub->add_option("--range", range, "check range R");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--out", out, std::string("report path ('-' for stdout); default $") + kOutDirEnv +
                                      "/<command>.<format>, with lpmult-out as fallback directory");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "run multiplier checkers on a symbol");
  common(check);
  check->add_option("--symbol", cfg.symbol, "identity | riesz:Dj | laplacian-function:NAME[:P] | vf-inverse:Dj:c | "
                                            "file:PATH | torus expression in k1..kn")
      ->required();
  check->add_option("--checker", cfg.checkers, "mikhlin | refined | torus3 | symbol-class (repeatable)")
      ->delimiter(',');
  check->add_option("--class", cfg.symbol_class, "symbol-class parameters m,rho[,order]");
  check->add_option("--lp-trials", cfg.lp_trials, "random trials for empirical Lp ratios (p = 1.5, 3)");

  auto* invert = app.add_subcommand("invert", "invert sigma_X + c for a vector field on SU(2)");
  common(invert);
  invert->add_option("--field", cfg.field, "D1..D3 or x,y,z frame coefficients")->capture_default_str();
  invert->add_option("--c", cfg.c, "complex constant, e.g. 1, 0.5i, 1+2i")->capture_default_str();
  invert->add_option("--bound", cfg.bound, "radius for the exceptional-set listing")->capture_default_str();
  invert->add_flag("--recursion-check", cfg.recursion_check, "report the difference recursion residuals");

  auto* probe = app.add_subcommand("probe", "mollifier, negative Sobolev and CZ slope ladders on SU(2)");
  common(probe);
  probe->add_option("--ladder", cfg.ladder, "default | 2^a..2^b | comma list")->capture_default_str();
  probe->add_option("--symbol", cfg.symbol, "symbol for the CZ probe (default riesz:D3)");
  probe->add_option("--q", cfg.q, "vanishing factor: one | rho2 | xi12")->capture_default_str();
  probe->add_option("--s", cfg.s, "negative Sobolev order")->capture_default_str();

  auto* selftest = app.add_subcommand("fourier-selftest", "Fourier roundtrip and Plancherel checks");
  common(selftest);
  selftest->get_option("--group")->default_str("all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }
  if (band >= 0) cfg.band = band;
  if (range >= 0) cfg.range = range;

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  if (command == "fourier-selftest" && sub->count("--group") == 0) cfg.group = "all";

  const auto t0 = std::chrono::steady_clock::now();
  CommandResult result;
  Json error = nullptr;
  int code = 0;
  try {
    if (command == "check") result = cmd_check(cfg);
    else if (command == "invert") result = cmd_invert(cfg);
    else if (command == "probe") result = cmd_probe(cfg);
    else result = cmd_fourier_selftest(cfg);
    code = result.pass ? 0 : 1;
  } catch (const ExceptionalParameterError& e) {
    code = 2;
    error = {{"type", "exceptional_parameter"}, {"message", e.what()}};
  } catch (const MathInputError& e) {
    code = 2;
    error = {{"type", "invalid_math_input"}, {"message", e.what()}};
  } catch (const ResolutionError& e) {
    code = 3;
    error = {{"type", "resolution"}, {"message", e.what()}};
  } catch (const ConfigError& e) {
    code = 3;
    error = {{"type", "configuration"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    code = 3;
    error = {{"type", "internal"}, {"message", e.what()}};
  }
  if (code >= 2) result.pass = false;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Json env = envelope(command, cfg.to_json(command), result, code, error, seconds);
  const std::string text = render(env, result, format);

  if (out == "-") {
    std::cout << text;
  } else {
    const std::string path = output_path(out, command, format);
    try {
      write_atomic(path, text);
    } catch (const std::exception& e) {
      std::cerr << "lpmult: " << e.what() << "\n";
      return 3;
    }
    std::cout << command << ": " << (code == 0 ? "PASS" : code == 1 ? "FAIL" : "ERROR") << " (exit " << code
              << ") -> " << path << "\n";
  }
  if (!error.is_null()) std::cerr << "lpmult: " << error["message"].get<std::string>() << "\n";
  return code;
}
