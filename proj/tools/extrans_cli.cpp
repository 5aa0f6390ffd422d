#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "extrans/io.hpp"

using namespace extrans;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const RunResult& res, const std::string& out_path) {
  std::cout << res.text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << res.json;
  }
  return res.exit_code;
}

std::map<std::string, long> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, long> params;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::SchemaError, "param '" + kv + "': expected key=value");
    try {
      std::size_t used = 0;
      long v = std::stol(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      params[kv.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::SchemaError, "param '" + kv + "': value is not an integer");
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric blow-up transitions: GIT data, fans, cohomology, conditions"};
  app.require_subcommand(1);

  std::string file, out_path, preset_name;
  bool narrow = false, sectors = false, run_preset = false;
  std::vector<std::string> raw_params;

  auto* validate = app.add_subcommand("validate", "check the GIT data");
  validate->add_option("file", file, "input JSON")->required();
  auto* fan = app.add_subcommand("fan", "build the stacky fan");
  fan->add_option("file", file, "input JSON")->required();
  auto* coh = app.add_subcommand("cohomology", "Chen-Ruan cohomology rings");
  coh->add_option("file", file, "input JSON")->required();
  coh->add_flag("--narrow", narrow, "also report narrow cohomology");
  coh->add_flag("--sectors", sectors, "report every twisted sector");
  auto* trans = app.add_subcommand("transition", "full transition pipeline");
  trans->add_option("file", file, "input JSON")->required();
  trans->add_option("--out", out_path, "write the JSON report here");
  auto* pre = app.add_subcommand("preset", "print a preset as input JSON");
  pre->add_option("name", preset_name, "preset name")->required();
  pre->add_option("--param", raw_params, "key=value, e.g. m=5 k=2 d=5");
  pre->add_flag("--run", run_preset, "run the transition pipeline instead of printing");
  pre->add_option("--out", out_path, "write the JSON report here (with --run)");

  for (auto* sub : {validate, fan, coh, trans}) sub->add_option("--json", out_path, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pre->parsed()) {
      InputDocument doc = preset(preset_name, parse_params(raw_params));
      if (!run_preset) {
        std::cout << serialize_input(doc);
        return 0;
      }
      return emit(run(doc), out_path);
    }
    InputDocument doc = parse_input(slurp(file));
    if (validate->parsed()) doc.request = Request::Validate;
    if (fan->parsed()) doc.request = Request::Fan;
    if (coh->parsed()) {
      doc.request = Request::Cohomology;
      doc.narrow = doc.narrow || narrow;
      doc.sectors = doc.sectors || sectors;
    }
    if (trans->parsed()) doc.request = Request::Transition;
    return emit(run(doc), out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
