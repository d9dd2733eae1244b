// gaq: run the quantization pipeline on a model file and print a report.
// Exit codes: 0 all executed checks pass, 1 a check failed, 2 usage or input error.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gaq/errors.hpp"
#include "gaq/parser.hpp"
#include "gaq/pipeline.hpp"

namespace {

struct Options {
  std::string model;
  std::string builtin;
  std::string format = "text";
  std::string expect;
  std::string output;
  std::vector<std::string> set;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gaq::Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(gaq::Stage stage, const Options& o) {
  std::string text;
  std::string origin;
  if (!o.builtin.empty()) {
    const auto b = gaq::builtin_model(o.builtin);
    if (!b) {
      std::cerr << "gaq: unknown builtin model '" << o.builtin << "'\n";
      return 2;
    }
    text = std::string(*b);
    origin = o.builtin;
  } else {
    text = read_file(o.model);
    origin = o.model;
  }

  gaq::ModelConfig config;
  try {
    config = gaq::parse_model(text);
  } catch (const gaq::Error& e) {
    std::cerr << origin << ":" << e.what() << "\n";
    return 2;
  }
  if (!o.set.empty()) {
    gaq::Point values;
    for (const auto& kv : o.set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "gaq: --set expects name=value, got '" << kv << "'\n";
        return 2;
      }
      const std::string name = kv.substr(0, eq);
      if (std::find(config.parameters.begin(), config.parameters.end(), name) == config.parameters.end()) {
        std::cerr << "gaq: model has no parameter '" << name << "'\n";
        return 2;
      }
      values[name] = gaq::parse_scalar(kv.substr(eq + 1));
    }
    config = config.with_parameters(values);
  }

  const gaq::Report report = gaq::run_pipeline(config, stage);
  const std::string rendered = o.format == "json" ? gaq::render_json(report) : gaq::render_text(report);
  if (o.output.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream(o.output, std::ios::binary) << rendered;
  }

  bool ok = report.passed();
  if (!o.expect.empty()) {
    const auto golden = gaq::report_from_json(read_file(o.expect));
    const auto diffs = gaq::compare_reports(report, golden);
    for (const auto& d : diffs) std::cerr << "golden mismatch: " << d << "\n";
    ok = ok && diffs.empty();
  }
  if (!report.passed())
    for (const auto& sec : report.sections)
      for (const auto& e : sec.entries)
        if (e.status == gaq::Status::Fail) std::cerr << "failed: " << e.id << (e.detail.empty() ? "" : ": " + e.detail) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-approach quantization engine"};
  app.require_subcommand(1);
  Options o;
  const std::pair<gaq::Stage, const char*> commands[] = {
      {gaq::Stage::Check, "check group axioms"},
      {gaq::Stage::Derive, "derive invariant fields, forms, structure constants and Haar measure"},
      {gaq::Stage::Extend, "pseudo-extension, orbit and characteristic subalgebra"},
      {gaq::Stage::Polarize, "polarization search and validation"},
      {gaq::Stage::Represent, "wave function and reduced operators"},
      {gaq::Stage::Pipeline, "everything, including measures and the unitarity verdict"},
  };
  std::vector<std::pair<CLI::App*, gaq::Stage>> subs;
  for (const auto& [stage, help] : commands) {
    CLI::App* sub = app.add_subcommand(gaq::to_string(stage), help);
    auto* model = sub->add_option("--model", o.model, "model file")->check(CLI::ExistingFile);
    auto* builtin = sub->add_option("--builtin", o.builtin, "shipped model")
                        ->check(CLI::IsMember(gaq::builtin_model_names()));
    model->excludes(builtin);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--expect", o.expect, "golden JSON report to compare against")->check(CLI::ExistingFile);
    sub->add_option("--set", o.set, "fix a parameter, name=value");
    sub->add_option("-o,--output", o.output, "write the report here instead of stdout");
    subs.emplace_back(sub, stage);
  }
  app.add_subcommand("models", "list shipped models")->callback([] {
    for (const auto& n : gaq::builtin_model_names()) std::cout << n << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [sub, stage] : subs) {
    if (!sub->parsed()) continue;
    if (o.model.empty() && o.builtin.empty()) {
      std::cerr << "gaq: give --model or --builtin\n";
      return 2;
    }
    try {
      return run(stage, o);
    } catch (const gaq::Error& e) {
      std::cerr << "gaq: " << e.what() << "\n";
      return 2;
    }
  }
  return 0;
}
