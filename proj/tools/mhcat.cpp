#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mhcat/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mhcat::DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::map<std::string, std::string> kDescriptions = {
    {"check", "test one predicate and report a witness when it fails"},
    {"decompose", "Lebesgue decomposition, or the involutive split of a measure"},
    {"build-mh", "assemble the involutive MH kernel"},
    {"verify-mh", "compare reversibility with the balancing condition"},
    {"verify-skew", "the same comparison for the skew construction"},
    {"classical-mh", "textbook MH from a target and a proposal"},
    {"exchange", "exchange algorithm for an unnormalized likelihood"},
    {"gibbs", "deterministic-scan Gibbs kernel for a joint measure"},
    {"sample", "simulate a kernel in floating point"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite kernels and Metropolis-Hastings verification"};
  app.require_subcommand(1);
  mhcat::cli::Options o;
  std::string model_path, out_path;

  for (const auto& name : mhcat::cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--model", model_path, "model file")->required();
    sub->add_option("--out", out_path, "write the emitted model here instead of stdout");
    sub->add_option("--kernel", o.kernel);
    sub->add_option("--measure", o.measure);
    sub->add_option("--name", o.name, "name of the emitted kernel or set");
    if (name == "check") {
      sub->add_option("--predicate", o.predicate)->required()->check(CLI::IsMember(mhcat::cli::predicate_names()));
      sub->add_option("--other", o.other);
      sub->add_option("--shift", o.shift);
    }
    if (name == "decompose") {
      sub->add_option("--other", o.other);
    }
    if (name == "check" || name == "decompose" || name == "build-mh" || name == "verify-mh" || name == "verify-skew") {
      sub->add_option("--involution", o.involution);
      sub->add_option("--acceptance", o.acceptance);
      sub->add_option("--balancing", o.balancing);
    }
    if (name == "verify-skew") sub->add_option("--shift", o.shift);
    if (name == "verify-mh" || name == "verify-skew") {
      sub->add_flag("--random", o.random, "verify seeded random instances instead of the model");
      sub->add_option("--instances", o.instances);
    }
    if (name == "classical-mh" || name == "exchange") sub->add_option("--proposal", o.proposal);
    if (name == "exchange") sub->add_option("--observed", o.observed);
    if (name == "sample") {
      sub->add_option("--init", o.init);
      sub->add_option("--steps", o.steps);
      sub->add_option("--burn", o.burn);
    }
    sub->add_option("--seed", o.seed);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const mhcat::ModelDocument doc = mhcat::parse_model(read_file(model_path));
    mhcat::cli::Report report = mhcat::cli::dispatch(command, o, doc);
    if (report.model && !out_path.empty()) {
      std::ofstream(out_path) << report.model->emit();
      report.add("output", out_path);
      report.model.reset();
    }
    std::cout << report.str();
    return report.exit_code();
  } catch (const mhcat::ParseError& e) {
    std::cerr << model_path << ": error: " << e.what() << '\n';
  } catch (const mhcat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
