#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "atomlab/atomlab.hpp"
#include "atomlab/report.hpp"
#include "atomlab/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace atomlab;

namespace {

enum Exit { kOk = 0, kGeneric = 1, kSpec = 2, kInfeasible = 3, kExhausted = 4, kValidation = 5 };

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ATOMLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw SpecError(std::string("ATOMLAB_THREADS must be a positive integer, got '") + env + "'");
    }
  }
  return n;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

// ---------------------------------------------------------------------------

struct AtomsArgs {
  std::string name, file;
  bool as_json = false;
};

int cmd_atoms(const AtomsArgs& a) {
  std::vector<Atom> atoms;
  if (!a.name.empty()) {
    auto at = catalogue_atom(a.name);
    if (!at) throw SpecError("unknown catalogue atom '" + a.name + "'");
    atoms.push_back(*at);
  } else if (!a.file.empty()) {
    const auto j = io::load_json_file(a.file);
    if (j.is_array())
      for (const auto& x : j) atoms.push_back(io::resolve_atom(x));
    else
      atoms.push_back(io::resolve_atom(j));
  } else {
    for (const auto& n : catalogue_names()) atoms.push_back(*catalogue_atom(n));
  }
  json all = json::array();
  for (const auto& atom : atoms) {
    const auto info = make_atom_info(atom);
    json j;
    j["atom"] = info.name();
    j["order"] = info.order();
    j["directed"] = info.atom.directed;
    j["aut"] = info.aut();
    j["orbits"] = info.symmetry.orbit_sizes();
    j["orbit_members"] = info.symmetry.orbits;
    j["mu"] = mu(info.symmetry);
    j["canonical_key"] = io::hex_encode(info.symmetry.canonical_key);
    all.push_back(j);
    if (a.as_json) continue;
    std::cout << "atom=" << info.name() << "\norder=" << info.order() << "\ndirected=" << info.atom.directed
              << "\naut=" << info.aut() << "\norbits=" << j["orbits"].dump() << "\norbit_members="
              << j["orbit_members"].dump() << "\nmu=" << j["mu"] << "\ncanonical_key=" << j["canonical_key"].get<std::string>()
              << "\n\n";
  }
  if (a.as_json) std::cout << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct EntropyArgs {
  std::string spec;
  std::string method = "auto";
  int l_max = 10;
  bool exact = false, as_json = false, bits = false;
};

int cmd_entropy(const EntropyArgs& a) {
  const auto es = io::load_ensemble(a.spec);
  report::EntropyOptions opt;
  opt.method = report::parse_method(a.method);
  opt.l_max = a.l_max;
  opt.exact = a.exact;
  auto r = report::entropy_report(es, opt);
  r["unit"] = a.bits ? "bits" : "nats";
  if (a.bits) {
    const double k = 1.0 / std::log(2.0);
    for (const char* key : {"entropy", "sparse", "combinatorial", "analytic", "closed_form", "general"})
      if (r.contains(key)) r[key] = r[key].get<double>() * k;
    if (r.contains("components"))
      for (auto& [key, v] : r["components"].items()) v = v.get<double>() * k;
  }
  if (a.as_json) {
    std::cout << r.dump(2) << '\n';
    return kOk;
  }
  std::cout << "entropy=" << fmt(r["entropy"].get<double>()) << ' ' << r["unit"].get<std::string>() << '\n';
  std::cout << "mode=" << es.mode_name << "\nmethod=" << r["method"].get<std::string>() << '\n';
  for (const char* key : {"sparse", "combinatorial", "analytic", "closed_form", "general", "predicted_acceptance"})
    if (r.contains(key)) std::cout << key << '=' << fmt(r[key].get<double>()) << '\n';
  if (r.contains("components"))
    for (const auto& [key, v] : r["components"].items()) std::cout << key << '=' << fmt(v.get<double>()) << '\n';
  if (r.contains("series")) {
    const auto& s = r["series"];
    std::cout << "series_last_term=" << fmt(s["last_term"].get<double>()) << "\nseries_growing=" << s["growing"] << '\n';
    if (s["growing"].get<bool>()) std::cerr << "warning: series terms are growing; the sparse expansion is unreliable\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string spec, out, projection = "simple";
  std::uint64_t seed = 1, max_restarts = 1000000;
  std::size_t samples = 1;
  bool project = false, exact = false;
};

ProjectionMode parse_projection(const std::string& s) {
  if (s == "simple") return ProjectionMode::Simple;
  if (s == "labelled") return ProjectionMode::EdgeLabelled;
  throw SpecError("unknown projection '" + s + "' (expected simple or labelled)");
}

std::string sample_name(std::size_t i, const char* ext) {
  std::ostringstream os;
  os << "sample_" << std::setw(6) << std::setfill('0') << i << ext;
  return os.str();
}

int cmd_sample(const SampleArgs& a) {
  const auto es = io::load_ensemble(a.spec);
  const auto mode = parse_projection(a.projection);
  report::SampleOptions opt;
  opt.seed = a.seed;
  opt.samples = a.samples;
  opt.threads = thread_count();
  opt.exact = a.exact;
  opt.sampler.max_restarts = a.max_restarts;
  const auto run = report::sample_ensemble(es, opt);

  fs::create_directories(a.out);
  std::size_t collapsed = 0;
  json per_sample = json::array();
  for (std::size_t i = 0; i < run.configurations.size(); ++i) {
    const auto& c = run.configurations[i];
    std::ofstream cf(fs::path(a.out) / sample_name(i, ".jsonl"));
    io::write_configuration_jsonl(cf, c);
    json s = {{"index", i}, {"placements", c.size()}, {"restarts", run.restarts[i]}, {"counts", counts_by_atom(c)}};
    if (a.project) {
      const auto pr = project_with_diagnostics(c, mode);
      collapsed += pr.collapsed_duplicates;
      std::ofstream gf(fs::path(a.out) / sample_name(i, ".edges"));
      io::write_edge_list(gf, pr.graph);
      s["edges"] = pr.graph.edge_count();
      s["collapsed_duplicates"] = pr.collapsed_duplicates;
    }
    per_sample.push_back(s);
  }
  std::uint64_t max_r = 0;
  for (auto r : run.restarts) max_r = std::max(max_r, r);
  json meta;
  meta["spec"] = fs::path(a.spec).filename().string();
  meta["spec_hash"] = es.hash();
  meta["mode"] = es.mode_name;
  meta["seed"] = a.seed;
  meta["rng"] = kRngAlgorithm;
  meta["stream_seeding"] = "splitmix64(seed ^ splitmix64(index))";
  meta["samples"] = run.configurations.size();
  meta["restarts"] = {{"total", run.total_restarts()},
                      {"max", max_r},
                      {"mean", run.configurations.empty() ? 0.0
                                                          : static_cast<double>(run.total_restarts()) /
                                                                static_cast<double>(run.configurations.size())}};
  if (run.predicted_acceptance)
    meta["acceptance"] = {{"predicted", *run.predicted_acceptance}, {"observed", run.observed_acceptance()}};
  if (a.project) {
    meta["projection"] = a.projection;
    meta["collapsed_duplicates"] = collapsed;
  }
  meta["per_sample"] = per_sample;
  std::ofstream(fs::path(a.out) / "metadata.json") << meta.dump(2) << '\n';
  std::cout << "wrote " << run.configurations.size() << " samples to " << a.out << '\n';
  if (run.predicted_acceptance)
    std::cout << "acceptance predicted=" << fmt(*run.predicted_acceptance)
              << " observed=" << fmt(run.observed_acceptance()) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct ProjectArgs {
  std::string config, spec, out, projection = "simple";
};

int cmd_project(const ProjectArgs& a) {
  const auto es = io::load_ensemble(a.spec);
  if (!es.atoms) throw SpecError("spec defines no atom set");
  std::ifstream in(a.config);
  if (!in) throw SpecError("cannot open '" + a.config + "'");
  const auto c = io::read_configuration_jsonl(in, es.n_vertices, es.atoms, a.config);
  const auto pr = project_with_diagnostics(c, parse_projection(a.projection));
  if (a.out.empty() || a.out == "-") {
    io::write_edge_list(std::cout, pr.graph);
  } else {
    std::ofstream out(a.out);
    io::write_edge_list(out, pr.graph);
  }
  std::cerr << "edges=" << pr.graph.edge_count() << " collapsed_duplicates=" << pr.collapsed_duplicates << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string graph;
  std::vector<std::string> names;
  std::string atom_file;
};

int cmd_count(const CountArgs& a) {
  std::ifstream in(a.graph);
  if (!in) throw SpecError("cannot open '" + a.graph + "'");
  const auto g = io::read_edge_list(in, a.graph);
  std::vector<Atom> atoms;
  for (const auto& n : a.names) {
    auto at = catalogue_atom(n);
    if (!at) throw SpecError("unknown catalogue atom '" + n + "'");
    atoms.push_back(*at);
  }
  if (!a.atom_file.empty()) atoms.push_back(io::resolve_atom(io::load_json_file(a.atom_file)));
  if (atoms.empty()) throw SpecError("count needs --name or --atom-file");
  for (const auto& at : atoms) std::cout << at.name << '=' << count_motif_in_graph(g, at) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& suite) {
  if (suite != "small" && suite != "full") throw SpecError("unknown suite '" + suite + "' (expected small or full)");
  const auto results =
      validation::run_suite(suite == "small" ? validation::Suite::Small : validation::Suite::Full);
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " [" << r.cases << " cases, "
              << std::fixed << std::setprecision(2) << r.seconds << "s]\n";
    std::cout.unsetf(std::ios::fixed);
  }
  std::cout << (ok ? "all checks passed" : "validation failed") << '\n';
  return ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomlab: maximum-entropy ensembles of subgraph configurations"};
  app.require_subcommand(1);

  AtomsArgs atoms_args;
  auto* atoms = app.add_subcommand("atoms", "Show symmetry data of an atom");
  auto* atoms_name = atoms->add_option("--name", atoms_args.name, "Catalogue atom name");
  atoms->add_option("--file", atoms_args.file, "Atom JSON file")->excludes(atoms_name);
  atoms->add_flag("--json", atoms_args.as_json, "Machine-readable output");

  EntropyArgs entropy_args;
  auto* entropy = app.add_subcommand("entropy", "Entropy of an ensemble spec");
  entropy->add_option("spec", entropy_args.spec, "Ensemble spec JSON")->required();
  entropy->add_option("--mode", entropy_args.method, "auto, combinatorial or analytic");
  entropy->add_option("--l-max", entropy_args.l_max, "Truncation order of the sparse series");
  entropy->add_flag("--exact", entropy_args.exact, "Exact solver (canonical) or enumeration (micro degrees)");
  entropy->add_flag("--json", entropy_args.as_json, "Machine-readable output");
  entropy->add_flag("--bits", entropy_args.bits, "Report bits instead of nats");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Draw configurations from an ensemble");
  sample->add_option("spec", sample_args.spec, "Ensemble spec JSON")->required();
  sample->add_option("--seed", sample_args.seed, "Master seed");
  sample->add_option("--samples", sample_args.samples, "Number of samples");
  sample->add_option("--out", sample_args.out, "Output directory")->required();
  sample->add_flag("--project", sample_args.project, "Also write projected edge lists");
  sample->add_option("--projection", sample_args.projection, "simple or labelled");
  sample->add_option("--max-restarts", sample_args.max_restarts, "Rejections allowed per sample");
  sample->add_flag("--exact", sample_args.exact, "Canonical degrees: sample from the exact solution");

  ProjectArgs project_args;
  auto* project = app.add_subcommand("project", "Project a configuration to a graph");
  project->add_option("config", project_args.config, "Configuration JSONL")->required();
  project->add_option("--spec", project_args.spec, "Ensemble spec defining the atoms")->required();
  project->add_option("--out", project_args.out, "Edge-list file (default stdout)");
  project->add_option("--projection", project_args.projection, "simple or labelled");

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Count atom copies in a graph");
  count->add_option("graph", count_args.graph, "Edge-list file")->required();
  count->add_option("--name", count_args.names, "Catalogue atom name (repeatable)");
  count->add_option("--atom-file", count_args.atom_file, "Atom JSON file");

  std::string suite = "small";
  auto* validate = app.add_subcommand("validate", "Run the oracle-equivalence battery");
  validate->add_option("--suite", suite, "small or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kSpec;
  }

  try {
    if (*atoms) return cmd_atoms(atoms_args);
    if (*entropy) return cmd_entropy(entropy_args);
    if (*sample) return cmd_sample(sample_args);
    if (*project) return cmd_project(project_args);
    if (*count) return cmd_count(count_args);
    if (*validate) return cmd_validate(suite);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSpec;
  } catch (const OracleRefused& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSpec;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const SamplerExhausted& e) {
    std::cerr << "sampler exhausted: " << e.what() << '\n';
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGeneric;
  }
  return kGeneric;
}
