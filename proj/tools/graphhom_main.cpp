// Batch frontend: every computation as a subcommand with machine-readable
// output. Each run writes its result plus a manifest file recording the
// subcommand, parameters, seed and wall time; identical parameters reproduce
// byte-identical outputs, Monte-Carlo estimates included.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "graphhom/free_operad.hpp"
#include "graphhom/json_io.hpp"
#include "graphhom/parallel.hpp"
#include "graphhom/planar_tree.hpp"
#include "graphhom/ribbon_complex.hpp"
#include "graphhom/version.hpp"

using namespace graphhom;

namespace {

struct Output {
  std::string path; // empty: stdout
  json manifest_params = json::object();
  std::optional<long> seed;

  void write(const std::string& subcommand, const std::string& body,
             double wall_seconds) const {
    if (path.empty()) {
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << "\n";
      return;
    }
    atomic_write(path, body);
    json manifest;
    manifest["subcommand"] = subcommand;
    manifest["parameters"] = manifest_params;
    if (seed) manifest["seed"] = *seed;
    manifest["artifact_version"] = kVersion;
    manifest["wall_time_seconds"] = wall_seconds;
    atomic_write(path + ".manifest.json", manifest.dump(2) + "\n");
  }

  static void atomic_write(const std::string& path, const std::string& body) {
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw validation_error("cannot write to " + tmp);
      out << body;
      if (!out) throw validation_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
      throw validation_error("cannot rename " + tmp + " to " + path);
  }
};

std::string csv_census(const RibbonCensus& census) {
  std::ostringstream out;
  out << "g,n,m,generator_count,killed_count\n";
  for (const auto& [m, gens] : census.generators)
    out << census.genus << "," << census.boundaries << "," << m << "," << gens.size() << ","
        << census.killed.at(m).size() << "\n";
  return out.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree and graph homological algebra workbench"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "bound on worker threads (default: cores)");

  // ainf
  auto* ainf_cmd = app.add_subcommand("ainf", "tree complex of one arity: dims and betti");
  int ainf_arity = 2;
  std::string ainf_out;
  ainf_cmd->add_option("--arity", ainf_arity, "number of leaves")->required();
  ainf_cmd->add_option("--out", ainf_out, "output file (default: stdout)");

  // trees
  auto* trees_cmd = app.add_subcommand("trees", "enumerate planar rooted trees");
  int trees_arity = 2, trees_min_children = 2;
  std::string trees_out;
  trees_cmd->add_option("--arity", trees_arity, "number of leaves")->required();
  trees_cmd->add_option("--min-children", trees_min_children, "minimum children per vertex");
  trees_cmd->add_option("--out", trees_out, "output file (default: stdout)");

  // presentation
  auto* pres_cmd = app.add_subcommand("presentation", "dimension of a quotient operad component");
  std::string pres_name, pres_out;
  int pres_arity = 2;
  pres_cmd->add_option("--name", pres_name, "assoc | lie | poisson")->required();
  pres_cmd->add_option("--arity", pres_arity, "component arity")->required();
  pres_cmd->add_option("--out", pres_out, "output file (default: stdout)");

  // ribbon-census
  auto* census_cmd = app.add_subcommand("ribbon-census", "ribbon graph census as CSV");
  int census_g = 0, census_n = 3;
  std::string census_out;
  census_cmd->add_option("--genus", census_g, "genus")->required();
  census_cmd->add_option("--boundaries", census_n, "labeled boundary components")->required();
  census_cmd->add_option("--out", census_out, "output file (default: stdout)");

  // moduli-homology
  auto* moduli_cmd = app.add_subcommand("moduli-homology", "betti table of one (g, n) graph complex");
  int moduli_g = 0, moduli_n = 3;
  std::string moduli_out;
  moduli_cmd->add_option("--genus", moduli_g, "genus")->required();
  moduli_cmd->add_option("--boundaries", moduli_n, "labeled boundary components")->required();
  moduli_cmd->add_option("--out", moduli_out, "output file (default: stdout)");

  // hochschild
  auto* hoch_cmd = app.add_subcommand("hochschild", "hochschild cohomology of an algebra table");
  std::string hoch_algebra, hoch_out;
  int hoch_max_degree = 2;
  hoch_cmd->add_option("--algebra", hoch_algebra, "algebra JSON file")->required();
  hoch_cmd->add_option("--max-degree", hoch_max_degree, "degrees 0..N-1 are reported")->required();
  hoch_cmd->add_option("--out", hoch_out, "output file (default: stdout)");

  // deform-check
  auto* deform_cmd = app.add_subcommand("deform-check", "order-by-order associativity residuals");
  std::string deform_series, deform_out;
  deform_cmd->add_option("--series", deform_series, "deformation series JSON file")->required();
  deform_cmd->add_option("--out", deform_out, "output file (default: stdout)");

  // star / assoc-residual share most options
  auto* star_cmd = app.add_subcommand("star", "graph-expansion star product");
  auto* resid_cmd = app.add_subcommand("assoc-residual", "(f*g)*h - f*(g*h) through t^order");
  struct StarArgs {
    std::string poisson, f, g, h, weights, out;
    int order = 1;
    long mc_samples = 0;
    long seed = 1;
  } sargs, rargs;
  for (auto [cmd, args] : {std::pair{star_cmd, &sargs}, std::pair{resid_cmd, &rargs}}) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--poisson", args->poisson, "poisson JSON file")->required();
    cmd->add_option("--f", args->f, "left factor, e.g. \"x1*x2 + 1/2\"")->required();
    cmd->add_option("--g", args->g, "right factor")->required();
    if (cmd == resid_cmd) cmd->add_option("--h", args->h, "third factor")->required();
    cmd->add_option("--order", args->order, "truncation order in t")->required();
    cmd->add_option("--weights", args->weights, "exact weight table JSON file");
    cmd->add_option("--mc-samples", args->mc_samples, "Monte-Carlo samples per graph");
    cmd->add_option("--seed", args->seed, "master seed for Monte-Carlo weights");
    cmd->add_option("--out", args->out, "output file (default: stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }
  if (workers > 0) worker_count_override() = workers;

  auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  try {
    if (*ainf_cmd) {
      ChainComplex c = ainf_component(ainf_arity);
      json out;
      out["arity"] = ainf_arity;
      // keys are the cohomological tree degree |T| = -(chain degree)
      json dims = json::object();
      std::map<int, int> by_tree_degree;
      for (int k = c.lo(); k <= c.hi(); ++k) by_tree_degree[-k] = c.dim(k);
      for (const auto& [deg, dim] : by_tree_degree) dims[std::to_string(deg)] = dim;
      out["dims"] = dims;
      std::map<int, int> betti;
      for (const auto& [k, b] : c.betti()) betti[-k] = b;
      out["betti"] = betti_to_json(betti, true);
      Output o{ainf_out, {{"arity", ainf_arity}}, std::nullopt};
      o.write("ainf", out.dump(2) + "\n", elapsed());
    } else if (*trees_cmd) {
      auto trees = enumerate_planar_trees(trees_arity, trees_min_children);
      json out;
      out["arity"] = trees_arity;
      out["min_children"] = trees_min_children;
      out["count"] = trees.size();
      json list = json::array();
      for (const auto& t : trees) list.push_back(t.to_text());
      out["trees"] = std::move(list);
      Output o{trees_out, {{"arity", trees_arity}, {"min_children", trees_min_children}}, std::nullopt};
      o.write("trees", out.dump(2) + "\n", elapsed());
    } else if (*pres_cmd) {
      int dim = presentation_dimension(presentation_by_name(pres_name), pres_arity);
      json out;
      out["name"] = pres_name;
      out["arity"] = pres_arity;
      out["dimension"] = dim;
      Output o{pres_out, {{"name", pres_name}, {"arity", pres_arity}}, std::nullopt};
      o.write("presentation", out.dump(2) + "\n", elapsed());
    } else if (*census_cmd) {
      RibbonCensus census = enumerate_ribbon_graphs(census_g, census_n);
      Output o{census_out, {{"genus", census_g}, {"boundaries", census_n}}, std::nullopt};
      o.write("ribbon-census", csv_census(census), elapsed());
    } else if (*moduli_cmd) {
      auto betti = moduli_homology(moduli_g, moduli_n);
      Output o{moduli_out, {{"genus", moduli_g}, {"boundaries", moduli_n}}, std::nullopt};
      o.write("moduli-homology", betti_to_json(betti, true).dump(2) + "\n", elapsed());
    } else if (*hoch_cmd) {
      AlgebraTable a = algebra_from_json(load_json_file(hoch_algebra));
      auto h = hochschild_cohomology(a, hoch_max_degree);
      json out;
      out["dim"] = a.dim;
      out["betti"] = betti_to_json(h, false);
      Output o{hoch_out, {{"algebra", hoch_algebra}, {"max_degree", hoch_max_degree}}, std::nullopt};
      o.write("hochschild", out.dump(2) + "\n", elapsed());
    } else if (*deform_cmd) {
      DeformationSeries s = deformation_from_json(load_json_file(deform_series));
      auto residuals = deformation_residuals(s);
      json out;
      out["order"] = s.order();
      json zero = json::object();
      int first_nonzero = -1;
      for (int k = 0; k < static_cast<int>(residuals.size()); ++k) {
        bool z = residuals[k].is_zero();
        zero[std::to_string(k)] = z;
        if (!z && first_nonzero < 0) first_nonzero = k;
      }
      out["residual_zero"] = zero;
      if (first_nonzero >= 0)
        out["first_nonzero_order"] = first_nonzero;
      else
        out["first_nonzero_order"] = nullptr;
      Output o{deform_out, {{"series", deform_series}}, std::nullopt};
      o.write("deform-check", out.dump(2) + "\n", elapsed());
    } else if (*star_cmd || *resid_cmd) {
      StarArgs& a = *star_cmd ? sargs : rargs;
      PolyPoisson p = poisson_from_json(load_json_file(a.poisson));
      WeightScheme scheme;
      if (!a.weights.empty() && a.mc_samples > 0)
        throw validation_error("choose either --weights or --mc-samples");
      if (!a.weights.empty())
        scheme.table = weight_table_from_json(load_json_file(a.weights));
      else if (a.mc_samples > 0) {
        scheme.mc_samples = a.mc_samples;
        scheme.seed = static_cast<std::uint64_t>(a.seed);
      } else {
        throw validation_error("one of --weights or --mc-samples is required");
      }
      Poly f = parse_poly(a.f, p.d), g = parse_poly(a.g, p.d);
      StarSeries series;
      json params{{"poisson", a.poisson}, {"f", a.f}, {"g", a.g}, {"order", a.order}};
      if (!a.weights.empty()) params["weights"] = a.weights;
      if (a.mc_samples > 0) params["mc_samples"] = a.mc_samples;
      std::optional<long> seed;
      if (a.mc_samples > 0) seed = a.seed;
      if (*star_cmd) {
        series = star_product(p, f, g, a.order, scheme);
      } else {
        params["h"] = a.h;
        series = associativity_residual(p, f, g, parse_poly(a.h, p.d), a.order, scheme);
      }
      Output o{a.out, params, seed};
      o.write(*star_cmd ? "star" : "assoc-residual", star_series_to_json(series).dump(2) + "\n",
              elapsed());
    }
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
