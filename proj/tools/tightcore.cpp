#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tightcore/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run a tightcore session file"};
  std::string path;
  std::string format = "text";
  std::optional<std::uint64_t> seed, qmax;
  std::optional<std::uint32_t> samples, stall_window, degree_cap, precision;
  bool no_timing = false;
  app.add_option("session", path, "Session file (- for stdin)")->required();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Base seed for rings and sampling");
  app.add_option("--qmax", qmax, "Largest Frobenius power tried (0: p^6)");
  app.add_option("--samples", samples, "Sample budget for core intersections");
  app.add_option("--stall-window", stall_window, "Unchanged samples before an intersection counts as stable");
  app.add_option("--degree-cap", degree_cap, "Groebner degree cap");
  app.add_option("--precision", precision, "Extra precision for semigroup ideals");
  app.add_flag("--no-timing", no_timing, "Omit elapsed times so reports are byte-comparable");
  CLI11_PARSE(app, argc, argv);

  std::stringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << '\n';
      return 2;
    }
    text << in.rdbuf();
  }

  tightcore::Session session;
  try {
    session = tightcore::parse_session(text.str());
  } catch (const tightcore::ParseError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return 2;
  }

  // Command-line flags override config lines.
  auto& cfg = session.config;
  if (seed) cfg.seed = *seed;
  if (qmax) cfg.q_max = *qmax;
  if (samples) cfg.samples = *samples;
  if (stall_window) cfg.stall_window = *stall_window;
  if (degree_cap) cfg.degree_cap = *degree_cap;
  if (precision) cfg.precision = *precision;

  const auto result = tightcore::run_session(session, {.timing = !no_timing});
  std::cout << (format == "json" ? result.json : result.text);
  return result.success ? 0 : 1;
}
