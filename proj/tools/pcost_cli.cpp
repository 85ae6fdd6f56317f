#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcost/bottleneck.hpp"
#include "pcost/cost.hpp"
#include "pcost/errors.hpp"
#include "pcost/io.hpp"

using namespace pcost;
using io::json;

namespace {

struct Globals {
  double tol = 1e-9;
  int max_dim = 1;
  std::string format = "text";
  std::string norm = "l2";
  std::string plot;
  bool json() const { return format == "json"; }
  Norm norm_value() const {
    if (norm == "l1") return Norm::L1;
    if (norm == "linf") return Norm::Linf;
    return Norm::L2;
  }
};

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

json jnum(double v) { return std::isinf(v) ? json("inf") : json(v); }

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int d = std::stoi(tok);
    if (d < 0) throw Error("dimensions must be non-negative");
    out.push_back(d);
  }
  if (out.empty()) throw Error("no dimensions given");
  return out;
}

std::vector<int> dims_or_default(const std::string& s, const Globals& g) {
  if (!s.empty()) return parse_dims(s);
  std::vector<int> out;
  for (int d = 0; d <= g.max_dim; ++d) out.push_back(d);
  return out;
}

void print_diagram_text(const PersistenceDiagram& d) {
  std::cout << "H" << d.dim() << ":";
  if (d.empty()) std::cout << " (empty)";
  std::cout << "\n";
  for (const auto& b : d.bars())
    std::cout << "  [" << num(b.birth) << ", " << num(b.death) << ")" << (b.mult > 1 ? " x" + std::to_string(b.mult) : "")
              << "\n";
}

void maybe_plot(const Globals& g, const std::vector<PersistenceDiagram>& ds, const std::string& title) {
  if (g.plot.empty()) return;
  io::write_text(g.plot, io::barcode_svg(ds, title));
}

MetricMap load_map(const Globals& g, const std::string& xs, const std::string& ys, const std::string& ms) {
  return MetricMap(io::read_space(xs, g.norm_value()), io::read_space(ys, g.norm_value()), io::read_map(ms));
}

json chain_json(const CostReport& r) {
  json dims = json::array();
  for (const auto& e : r.per_dim)
    dims.push_back({{"dim", e.dim},
                    {"bottleneck", jnum(e.bottleneck)},
                    {"kernel_cost", jnum(e.cost.kernel)},
                    {"cokernel_cost", jnum(e.cost.cokernel)},
                    {"cost", jnum(e.cost.cost)},
                    {"lower_ok", e.lower_ok},
                    {"upper_ok", e.upper_ok}});
  return {{"distortion", r.distortion}, {"hausdorff", r.hausdorff}, {"bound", r.bound}, {"dims", dims}, {"ok", r.ok()}};
}

void print_chain_text(const CostReport& r) {
  std::cout << "dist(f) = " << num(r.distortion) << ", d_H(f(X), Y) = " << num(r.hausdorff)
            << ", bound = " << num(r.bound) << "\n";
  for (const auto& e : r.per_dim)
    std::cout << "H" << e.dim << ": bottleneck " << num(e.bottleneck) << " <= cost " << num(e.cost.cost)
              << " <= bound " << num(r.bound) << "  [" << (e.lower_ok ? "ok" : "FAIL") << ", "
              << (e.upper_ok ? "ok" : "FAIL") << "]\n";
}

// Random property sweep; returns the number of failed checks.
int verify(std::uint64_t seed, int count, const Globals& g) {
  int chain_fail = 0, upper_fail = 0, oracle_fail = 0, bneck_fail = 0, match_fail = 0;
  for (int k = 0; k < count; ++k) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    std::mt19937_64 rng(s);
    std::size_t nx = 1 + rng() % 8, ny = 1 + rng() % 8;
    auto inst = random_instance(s, nx, ny, 2);
    auto r = evaluate_chain(inst.f, {0, 1}, g.tol);
    for (const auto& e : r.per_dim) {
      chain_fail += !e.lower_ok;
      upper_fail += !e.upper_ok;
    }
    for (int d : {0, 1}) {
      auto filt = homology_filtration(inst.x, d);
      auto red = persistence_diagram(filt, d);
      auto rank = barcode(module_of_filtration(filt, d, critical_grid(inst.x)), d);
      oracle_fail += !red.same_bars(rank);
      auto dy = persistence_diagram(homology_filtration(inst.y, d), d);
      if (red.count() + dy.count() <= 8) bneck_fail += bottleneck(red, dy) != bottleneck_bruteforce(red, dy);
      auto h = hom_of_map(inst.f, d, 0.0);
      auto [ker, coker] = matching_to_kernel_cokernel(induced_matching(h));
      match_fail += !ker.same_bars(barcode(kernel_module(h))) || !coker.same_bars(barcode(cokernel_module(h)));
    }
  }
  if (g.json()) {
    std::cout << json{{"instances", count},
                      {"chain_lower_violations", chain_fail},
                      {"chain_upper_violations", upper_fail},
                      {"diagram_oracle_mismatches", oracle_fail},
                      {"bottleneck_oracle_mismatches", bneck_fail},
                      {"matching_mismatches", match_fail}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "instances: " << count << "\n"
              << "chain lower (bottleneck <= cost) violations: " << chain_fail << "\n"
              << "chain upper (cost <= bound) violations: " << upper_fail << "\n"
              << "reduction vs rank-invariant mismatches: " << oracle_fail << "\n"
              << "bottleneck vs brute force mismatches: " << bneck_fail << "\n"
              << "matching vs pointwise kernel/cokernel mismatches: " << match_fail << "\n";
  }
  return chain_fail + upper_fail + oracle_fail + bneck_fail + match_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent cost of Lipschitz maps between finite metric spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance for inequality checks")->capture_default_str();
  app.add_option("--max-dim", g.max_dim, "Top homology dimension when none is given")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--norm", g.norm, "Norm for point clouds")->check(CLI::IsMember({"l2", "l1", "linf"}))->capture_default_str();

  int exit_code = 0;

  // diagram
  std::string space, dim_s, filtration_out;
  auto* diagram = app.add_subcommand("diagram", "Persistence diagrams of a space");
  diagram->add_option("space", space, "Space file, or set1/set2")->required();
  diagram->add_option("--dim", dim_s, "Homology dimension(s), comma separated");
  diagram->add_option("--plot", g.plot, "Write an SVG barcode");
  diagram->add_option("--export-filtration", filtration_out, "Write the filtration as JSON");
  diagram->callback([&] {
    auto x = io::read_space(space, g.norm_value());
    auto dims = dims_or_default(dim_s, g);
    std::vector<PersistenceDiagram> ds;
    for (int d : dims) ds.push_back(persistence_diagram(homology_filtration(x, d), d));
    if (!filtration_out.empty())
      io::write_text(filtration_out,
                     io::to_json(homology_filtration(x, *std::max_element(dims.begin(), dims.end()))).dump(1));
    if (g.json()) {
      json out = json::array();
      for (const auto& d : ds) out.push_back(io::to_json(d));
      std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
    } else {
      for (const auto& d : ds) print_diagram_text(d);
    }
    maybe_plot(g, ds, space);
  });

  // cost
  std::string xs, ys, ms, dims_s, module_out;
  auto* cost = app.add_subcommand("cost", "Persistent cost of a 1-Lipschitz map");
  cost->add_option("X", xs)->required();
  cost->add_option("Y", ys)->required();
  cost->add_option("map", ms)->required();
  cost->add_option("--dims", dims_s, "Homology dimensions, comma separated");
  cost->add_option("--plot", g.plot, "Write an SVG of the kernel and cokernel barcodes");
  cost->add_option("--dump-module", module_out, "Write the induced homomorphisms as JSON");
  cost->callback([&] {
    auto f = load_map(g, xs, ys, ms);
    auto dims = dims_or_default(dims_s, g);
    if (quasi_lipschitz_defect(f) > 0.0) throw NotOneLipschitz("map is not 1-Lipschitz");
    json out = json::array(), dump = json::array();
    std::vector<PersistenceDiagram> plots;
    for (int d : dims) {
      auto h = hom_of_map(f, d, 0.0);
      auto ker = barcode(kernel_module(h), d), coker = barcode(cokernel_module(h), d);
      double kc = cost_to_trivial(ker), cc = cost_to_trivial(coker);
      plots.push_back(ker);
      plots.push_back(coker);
      if (!module_out.empty()) dump.push_back({{"dim", d}, {"hom", io::to_json(h)}});
      if (g.json()) {
        out.push_back({{"dim", d},
                       {"kernel_cost", jnum(kc)},
                       {"cokernel_cost", jnum(cc)},
                       {"cost", jnum(std::max(kc, cc))},
                       {"kernel", io::to_json(ker)},
                       {"cokernel", io::to_json(coker)}});
      } else {
        std::cout << "H" << d << ": C = " << num(std::max(kc, cc)) << " (kernel " << num(kc) << ", cokernel "
                  << num(cc) << ")\n";
      }
    }
    if (g.json()) std::cout << json{{"costs", out}, {"metric_bound", metric_bound(f)}}.dump(2) << "\n";
    else std::cout << "metric bound dist(f) + 2 d_H(f(X), Y) = " << num(metric_bound(f)) << "\n";
    if (!module_out.empty()) io::write_text(module_out, dump.dump(1));
    maybe_plot(g, plots, "kernel and cokernel barcodes");
  });

  // check
  auto* check = app.add_subcommand("check", "Check bottleneck <= cost <= metric bound (exit 2 on violation)");
  check->add_option("X", xs)->required();
  check->add_option("Y", ys)->required();
  check->add_option("map", ms)->required();
  check->add_option("--dims", dims_s, "Homology dimensions, comma separated");
  check->callback([&] {
    auto f = load_map(g, xs, ys, ms);
    auto r = evaluate_chain(f, dims_or_default(dims_s, g), g.tol);
    if (g.json())
      std::cout << chain_json(r).dump(2) << "\n";
    else
      print_chain_text(r);
    if (!r.ok()) exit_code = 2;
  });

  // bottleneck
  std::string d1, d2;
  auto* bneck = app.add_subcommand("bottleneck", "Bottleneck distance between two diagram files");
  bneck->add_option("D1", d1)->required();
  bneck->add_option("D2", d2)->required();
  bneck->add_option("--plot", g.plot, "Write an SVG of both barcodes");
  bneck->callback([&] {
    auto a = io::read_diagram(d1), b = io::read_diagram(d2);
    double v = bottleneck(a, b);
    if (g.json())
      std::cout << json{{"bottleneck", jnum(v)}}.dump() << "\n";
    else
      std::cout << num(v) << "\n";
    maybe_plot(g, {a, b}, "bottleneck " + num(v));
  });

  // match
  int match_dim = 0;
  auto* match = app.add_subcommand("match", "Induced matching of a map's homology homomorphism");
  match->add_option("X", xs)->required();
  match->add_option("Y", ys)->required();
  match->add_option("map", ms)->required();
  match->add_option("--dim", match_dim, "Homology dimension")->capture_default_str();
  match->add_option("--plot", g.plot, "Write an SVG of the kernel and cokernel barcodes");
  match->callback([&] {
    auto f = load_map(g, xs, ys, ms);
    auto m = induced_matching(hom_of_map(f, match_dim, quasi_lipschitz_defect(f)));
    auto [ker, coker] = matching_to_kernel_cokernel(m);
    if (g.json()) {
      auto j = io::to_json(m);
      j["kernel"] = io::to_json(ker)["bars"];
      j["cokernel"] = io::to_json(coker)["bars"];
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "pairs:\n";
      for (const auto& p : m.pairs)
        std::cout << "  [" << num(p.source.birth) << ", " << num(p.source.death) << ") -> [" << num(p.target.birth)
                  << ", " << num(p.target.death) << ")\n";
      std::cout << "unmatched source:\n";
      for (const auto& b : m.unmatched_source.bars())
        std::cout << "  [" << num(b.birth) << ", " << num(b.death) << ") x" << b.mult << "\n";
      std::cout << "unmatched target:\n";
      for (const auto& b : m.unmatched_target.bars())
        std::cout << "  [" << num(b.birth) << ", " << num(b.death) << ") x" << b.mult << "\n";
      std::cout << "kernel from matching:\n";
      print_diagram_text(ker);
      std::cout << "cokernel from matching:\n";
      print_diagram_text(coker);
    }
    maybe_plot(g, {ker, coker}, "kernel and cokernel from the induced matching");
  });

  // gh
  auto* gh = app.add_subcommand("gh", "Exact Gromov-Hausdorff distance of small spaces");
  gh->add_option("X", xs)->required();
  gh->add_option("Y", ys)->required();
  gh->callback([&] {
    double v = gh_bruteforce(io::read_space(xs, g.norm_value()), io::read_space(ys, g.norm_value()));
    if (g.json())
      std::cout << json{{"gh", v}}.dump() << "\n";
    else
      std::cout << num(v) << "\n";
  });

  // ghmap
  std::string x1, y1, m1, x2, y2, m2;
  auto* ghmap = app.add_subcommand("ghmap", "Gromov-Hausdorff type distance between two maps");
  ghmap->add_option("X1", x1)->required();
  ghmap->add_option("Y1", y1)->required();
  ghmap->add_option("map1", m1)->required();
  ghmap->add_option("X2", x2)->required();
  ghmap->add_option("Y2", y2)->required();
  ghmap->add_option("map2", m2)->required();
  ghmap->callback([&] {
    double v = gh_map_bruteforce(load_map(g, x1, y1, m1), load_map(g, x2, y2, m2));
    if (g.json())
      std::cout << json{{"gh_map", v}}.dump() << "\n";
    else
      std::cout << num(v) << "\n";
  });

  // search
  std::uint64_t budget = 50'000'000;
  auto* search = app.add_subcommand("search", "Least persistent cost over all 1-Lipschitz maps");
  search->add_option("X", xs)->required();
  search->add_option("Y", ys)->required();
  search->add_option("--dims", dims_s, "Homology dimensions, comma separated");
  search->add_option("--budget", budget, "Node budget")->capture_default_str();
  search->callback([&] {
    auto x = io::read_space(xs, g.norm_value()), y = io::read_space(ys, g.norm_value());
    auto dims = dims_or_default(dims_s, g);
    auto r = min_cost_lipschitz_search(x, y, dims, budget);
    if (g.json()) {
      json per = json::array();
      for (std::size_t k = 0; k < dims.size(); ++k)
        per.push_back({{"dim", dims[k]}, {"cost", jnum(r.per_dim[k].cost)}});
      std::cout << json{{"cost", jnum(r.cost)},
                        {"map", r.assignment},
                        {"per_dim", per},
                        {"nodes", r.nodes},
                        {"evaluated", r.evaluated}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "minimum cost " << num(r.cost) << "\nwitness " << io::map_to_json(r.assignment).dump() << "\n";
      for (std::size_t k = 0; k < dims.size(); ++k)
        std::cout << "H" << dims[k] << ": " << num(r.per_dim[k].cost) << "\n";
      std::cout << "nodes " << r.nodes << ", maps evaluated " << r.evaluated << "\n";
    }
  });

  // example
  std::string which;
  auto* example = app.add_subcommand("example", "Print the coordinates of a built-in example set");
  example->add_option("set", which)->required()->check(CLI::IsMember({"set1", "set2"}));
  example->callback([&] {
    auto pts = which == "set1" ? io::set1_points() : io::set2_points();
    if (g.json()) {
      std::cout << json{{"points", pts}}.dump() << "\n";
    } else {
      for (const auto& p : pts) std::cout << p[0] << "," << p[1] << "\n";
    }
  });

  // verify
  std::uint64_t seed = 1;
  int count = 100;
  auto* ver = app.add_subcommand("verify", "Random property sweep");
  ver->add_option("--seed", seed)->capture_default_str();
  ver->add_option("--count", count)->capture_default_str();
  ver->callback([&] { exit_code = verify(seed, count, g) == 0 ? 0 : 1; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ChainViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
