#include "spa/mgr/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spa/ir/parser.hpp"
#include "spa/mgr/driver.hpp"

namespace spa::mgr {

namespace {

// "<id>[=key:val[;key:val]*]"
Request parseAnalysisSpec(const std::string& spec) {
  Request request;
  size_t eq = spec.find('=');
  request.id = spec.substr(0, eq);
  if (request.id.empty())
    throw std::invalid_argument("empty analysis id in '-a " + spec + "'");
  if (eq == std::string::npos) return request;
  std::stringstream pairs(spec.substr(eq + 1));
  std::string pair;
  while (std::getline(pairs, pair, ';')) {
    size_t colon = pair.find(':');
    if (colon == std::string::npos || colon == 0)
      throw std::invalid_argument("bad option '" + pair + "' in '-a " + spec +
                                  "'; expected key:value");
    request.overrides[pair.substr(0, colon)] = pair.substr(colon + 1);
  }
  return request;
}

struct LoadedSource {
  std::string text;
  std::vector<std::pair<int, std::string>> fileStarts;  // (first line, file)

  // Maps a line of the concatenated text back to file and local line.
  std::string locate(int line) const {
    for (auto it = fileStarts.rbegin(); it != fileStarts.rend(); ++it) {
      if (line >= it->first)
        return it->second + ":" + std::to_string(line - it->first + 1);
    }
    return "line " + std::to_string(line);
  }
};

LoadedSource loadSources(const std::vector<std::string>& paths) {
  LoadedSource loaded;
  int line = 1;
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read program file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    loaded.fileStarts.emplace_back(line, path);
    line += static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
    loaded.text += text;
    loaded.text += '\n';
  }
  return loaded;
}

}  // namespace

int cliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"static analyzer for the mini three-address IR"};
  std::string configPath;
  std::string outDir = ".";
  std::vector<std::string> analysisSpecs;
  std::vector<std::string> programFiles;
  app.add_option("--config", configPath, "analysis registry file");
  app.add_option("--out", outDir, "output directory for dumps");
  app.add_option("-a,--analysis", analysisSpecs,
                 "analysis to run: <id>[=key:val[;key:val]*]")
      ->required()
      ->allow_extra_args(false);  // one spec per -a; the rest are programs
  app.add_option("programs", programFiles, "program files (.ir)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 1;
  }

  // Registry.
  std::vector<AnalysisConfig> registry;
  try {
    std::string text;
    if (configPath.empty()) {
      text = defaultRegistryText();
    } else {
      std::ifstream in(configPath);
      if (!in) {
        err << "error: cannot read registry '" << configPath << "'\n";
        return 1;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      text = buffer.str();
    }
    registry = parseRegistry(text);
  } catch (const RegistryError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // Requests.
  std::vector<Request> requests;
  try {
    for (const std::string& spec : analysisSpecs)
      requests.push_back(parseAnalysisSpec(spec));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // Program.
  std::unique_ptr<ir::Program> program;
  LoadedSource source;
  try {
    source = loadSources(programFiles);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    program = ir::parseProgram(source.text);
  } catch (const ir::ParseError& e) {
    err << "error: " << source.locate(e.line()) << ":" << e.column() << ": "
        << e.what() << "\n";
    return 1;
  }

  // Plan.
  Plan plan;
  try {
    plan = makePlan(registry, requests);
  } catch (const PlanError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  out << "plan:";
  for (const std::string& id : plan.ids()) out << " " << id;
  out << "\n";

  // Execute.
  ExecuteEnv env{outDir, &out};
  ExecutionReport report = execute(plan, *program, env);
  if (!report.ok) {
    err << "error: analysis '" << report.failedId
        << "' failed: " << report.message << "\n";
    return 3;
  }
  out << "done: " << report.ranIds.size() << " analyses\n";
  return 0;
}

}  // namespace spa::mgr
