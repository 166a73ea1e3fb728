// petty: corpus generation and Petty-inequality experiments from the shell.
//
//   petty gen-corpus --geometry spherical --count 50 --seed 7 --out corpus.json
//   petty verify --geometry spherical --body corpus.json --out runs/sph
//   petty converge --geometry hyperbolic --body ball.json --iterations 200
//   petty isoperimetric-chain --geometry spherical --body cap.json
//
// Exit status: 0 when every run passes, 1 when some inequality, invariant or
// chain link fails, 2 on usage or kernel errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "petty/core/error.hpp"
#include "petty/experiments/corpus.hpp"
#include "petty/experiments/experiment.hpp"

using namespace petty;

namespace {

struct RunFlags {
  std::string geometry = "spherical";
  std::string body;
  int resolution = 720;
  int iterations = 20;
  std::uint64_t seed = 1;
  std::string out;
  std::optional<double> eps_quad;
  double root_tol = 1e-8;
  double equality_band = 1e-6;
  int distance_every = 1;
  int polar_every = 1;
  std::string directions;  // JSON file with an array of direction arrays
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--geometry", f.geometry, "euclidean | spherical | hyperbolic")
      ->check(CLI::IsMember({"euclidean", "spherical", "hyperbolic"}))
      ->capture_default_str();
  cmd->add_option("--body", f.body, "body spec JSON, or a corpus (JSON array)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--resolution", f.resolution, "grid resolution (n=3: latitude rings)")->capture_default_str();
  cmd->add_option("--iterations", f.iterations, "number of random directions")->capture_default_str();
  cmd->add_option("--seed", f.seed, "seed of the direction schedule")->capture_default_str();
  cmd->add_option("--out", f.out, "output prefix: <out>.csv and <out>.json (corpus: <out>_NNN.*)");
  cmd->add_option("--eps-quad", f.eps_quad, "monotonicity / inequality slack (default: calibrated)");
  cmd->add_option("--root-tol", f.root_tol, "allowed relative drift of the body measure")->capture_default_str();
  cmd->add_option("--equality-band", f.equality_band, "relative band of equality cases")->capture_default_str();
  cmd->add_option("--distance-every", f.distance_every, "distance stride (0: first and last)")->capture_default_str();
  cmd->add_option("--polar-every", f.polar_every, "polar-measure stride (0: first and last)")->capture_default_str();
  cmd->add_option("--directions", f.directions, "JSON file with an explicit direction schedule")
      ->check(CLI::ExistingFile);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_body, path + ": " + e.what());
  }
}

std::vector<BodySpec> read_bodies(const std::string& path) {
  const nlohmann::json j = read_json(path);
  if (j.is_array()) return corpus_from_json(j);
  return {body_spec_from_json(j)};
}

std::vector<ExperimentConfig> make_configs(const RunFlags& f) {
  const std::vector<BodySpec> bodies = read_bodies(f.body);
  std::vector<ExperimentConfig> out;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    ExperimentConfig c;
    c.geometry = parse_geometry(f.geometry);
    c.body = bodies[i];
    c.body_path = f.body;
    c.resolution = f.resolution;
    c.random_directions = f.iterations;
    c.seed = f.seed;
    c.eps_quad = f.eps_quad;
    c.root_tol = f.root_tol;
    c.equality_band = f.equality_band;
    c.distance_every = f.distance_every;
    c.polar_every = f.polar_every;
    if (!f.directions.empty()) {
      nlohmann::json d = nlohmann::json::object();
      d["directions"] = read_json(f.directions);
      c.directions = experiment_config_from_json(d).directions;
    }
    if (!f.out.empty()) {
      const std::string stem = bodies.size() == 1 ? f.out : fmt::format("{}_{:03}", f.out, i);
      c.csv_path = stem + ".csv";
      c.json_path = stem + ".json";
    }
    out.push_back(std::move(c));
  }
  return out;
}

void print_run(std::size_t i, const RunReport& r) {
  if (r.error) {
    fmt::print("[{:03}] ERROR at iterate {}: {}\n", i, r.failed_iterate, *r.error);
    return;
  }
  const PettyReport& p = r.petty;
  fmt::print("[{:03}] {} lhs={:.10g} rhs={:.10g} margin={:.3e}{} violations={} drift={:.1e} dist {:.3e} -> {:.3e}"
             " chain {}/{} {:.2f}s\n",
             i, r.pass ? "PASS" : "FAIL", p.lhs, p.rhs, p.margin, p.equality ? " (equality)" : "", p.violations,
             p.max_measure_drift, p.initial_distance, p.final_distance, p.chain.middle_holds ? "ok" : "broken",
             p.chain.upper_holds ? "ok" : "broken", p.seconds);
}

int run_verify(const RunFlags& f, std::optional<double> target_ratio) {
  int status = 0;
  const std::vector<ExperimentConfig> configs = make_configs(f);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    RunReport r = run_experiment(configs[i]);
    print_run(i, r);
    if (r.error) {
      status = 2;
      continue;
    }
    bool ok = r.pass;
    if (target_ratio) {
      const double ratio = r.petty.final_distance / r.petty.initial_distance;
      const bool converged = r.petty.initial_distance == 0.0 || ratio <= *target_ratio;
      fmt::print("      distance ratio {:.3e} (target {:g}) {}\n", ratio, *target_ratio,
                 converged ? "converged" : "NOT converged");
      ok = ok && converged;
    }
    if (!ok && status == 0) status = 1;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petty projection inequality experiments"};
  app.set_config("--config", "", "TOML/INI file with option values, one [section] per verb");
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "write a deterministic body corpus as a JSON array");
  std::string gen_geometry = "spherical", gen_out;
  std::uint64_t gen_seed = 7;
  int gen_count = 50;
  FamilyParams family;
  gen->add_option("--geometry", gen_geometry)->check(CLI::IsMember({"euclidean", "spherical", "hyperbolic"}))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--count", gen_count)->capture_default_str();
  gen->add_option("--dim", family.dim)->check(CLI::IsMember({2, 3}))->capture_default_str();
  gen->add_option("--family", family.family)->check(CLI::IsMember({"cap", "trig-radial", "ellipsoid"}))
      ->capture_default_str();
  gen->add_option("--max-degree", family.max_degree)->capture_default_str();
  gen->add_option("--radii", family.radii, "cap radii (angular / geodesic / plain)")->delimiter(',');
  gen->add_option("--r-in-floor", family.r_in_floor)->capture_default_str();
  gen->add_option("--anisotropy", family.anisotropy, "trig-radial amplitude budget in (0, 1)")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  RunFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "iterate Steiner symmetrization and check the Petty inequality");
  add_run_flags(verify, verify_flags);

  RunFlags converge_flags;
  converge_flags.iterations = 200;
  converge_flags.distance_every = 10;
  converge_flags.polar_every = 10;
  double target_ratio = 0.05;
  auto* converge = app.add_subcommand("converge", "long symmetrization run; checks distance decay to the rearrangement");
  add_run_flags(converge, converge_flags);
  converge->add_option("--target-ratio", target_ratio, "required final / initial distance")->capture_default_str();

  std::string chain_geometry = "spherical", chain_body;
  int chain_resolution = 720;
  double chain_eps = 1e-8, chain_band = 1e-6;
  auto* chain = app.add_subcommand("isoperimetric-chain", "evaluate c0 P(K*) = F^-1(m(K*)) <= F^-1(m(K)) <= c0 P(K)");
  chain->add_option("--geometry", chain_geometry)->check(CLI::IsMember({"euclidean", "spherical", "hyperbolic"}))
      ->capture_default_str();
  chain->add_option("--body", chain_body, "body spec JSON, or a corpus")->required()->check(CLI::ExistingFile);
  chain->add_option("--resolution", chain_resolution)->capture_default_str();
  chain->add_option("--eps", chain_eps, "slack of the two inequality links")->capture_default_str();
  chain->add_option("--equality-band", chain_band)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto corpus = generate_corpus(gen_seed, gen_count, parse_geometry(gen_geometry), family);
      const std::string text = corpus_to_json(corpus).dump(2) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out);
        if (!out) throw Error(Errc::io, "cannot write '" + gen_out + "'");
        out << text;
      }
      std::cerr << corpus.size() << " bodies\n";
      return 0;
    }
    if (*verify) return run_verify(verify_flags, std::nullopt);
    if (*converge) return run_verify(converge_flags, target_ratio);
    if (*chain) {
      int status = 0;
      auto rows = nlohmann::json::array();
      for (const BodySpec& spec : read_bodies(chain_body)) {
        const ChainReport c =
            isoperimetric_chain(parse_geometry(chain_geometry), spec, chain_resolution, chain_eps, chain_band);
        rows.push_back({{"perimeter_star", c.perimeter_star},
                        {"finv_star", c.finv_star},
                        {"finv_body", c.finv_body},
                        {"perimeter_body", c.perimeter_body},
                        {"endpoint_equal", c.endpoint_equal},
                        {"middle_holds", c.middle_holds},
                        {"upper_holds", c.upper_holds}});
        if (!(c.endpoint_equal && c.middle_holds && c.upper_holds)) status = 1;
      }
      std::cout << (rows.size() == 1 ? rows[0] : rows).dump(2) << '\n';
      return status;
    }
  } catch (const Error& e) {
    std::cerr << "petty: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
