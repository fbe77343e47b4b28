// mtt: command-line front end for the matrix-tree identity checks.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mtt/harness/campaign.hpp"

using namespace mtt;

namespace {

Json read_document(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed instance document '" + path + "': " + e.what());
  }
}

struct Common {
  std::string format = "text";
  std::size_t threads = 1;
  bool force_large = false;
  std::size_t det_cap = 0;
  std::uint64_t enum_cap = 0;

  CheckOptions options() const {
    CheckOptions opt;
    opt.verify.det.force = force_large;
    if (det_cap) opt.verify.det.size_cap = det_cap;
    if (enum_cap) opt.verify.sum.enumeration_cap = enum_cap;
    opt.verify.sum.threads = threads;
    opt.verify.det.threads = threads;
    return opt;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--force-large", c.force_large, "Ignore the determinant size cap");
  cmd->add_option("--det-cap", c.det_cap, "Determinant size cap (default: MTT_DET_CAP or 10)")->check(CLI::PositiveNumber);
  cmd->add_option("--enum-cap", c.enum_cap, "Forest enumeration cap")->check(CLI::PositiveNumber);
}

struct VerifyArgs {
  std::string theorem;
  std::string instance;
  bool random = false;
  std::uint64_t seed = 1;
  std::size_t n = 3, m = 2, fiber = 1, v = 4, d = 2, well_vertex = 0;
  std::string ring = "rational";
  std::string trace;
  std::string preset;
  std::string weight_mode = "symbolic";
  bool unitary = false;
  bool conj_pairs = false;
  bool random_orientation = false;
  bool simplicial = false;  // set when --v or --d is given
  std::size_t split = 0;
  std::size_t trials = 1;
  bool timings = false;
  bool show = false;
};

int run_verify(const VerifyArgs& a, const Common& c) {
  check_theorem_id(a.theorem, true);
  CheckOptions opt = c.options();
  if (a.split) opt.split = a.split;
  std::vector<VerificationReport> reports;

  if (!a.instance.empty()) {
    require(a.theorem != "all", "--theorem all runs the built-in campaign and takes no --instance");
    const Json doc = read_document(a.instance);
    if (is_simplicial_document(doc)) {
      auto loaded = load_simplicial_instance(doc);
      std::visit(
          [&](const auto& inst) {
            auto r = run_cw_check(a.theorem, inst, opt);
            r.instance = a.instance;
            r.digest = fnv1a_hex(simplicial_to_json(inst, loaded.ring).dump());
            reports.push_back(std::move(r));
          },
          loaded.instance);
    } else {
      auto loaded = load_instance(doc);
      std::visit(
          [&](const auto& inst) {
            auto r = run_graph_check(a.theorem, inst, opt);
            r.instance = a.instance;
            r.digest = instance_digest(inst, loaded.ring);
            reports.push_back(std::move(r));
          },
          loaded.instance);
    }
  } else if (a.random) {
    require(a.theorem != "all", "--random needs a single theorem");
    std::optional<TraceKind> trace;
    if (!a.trace.empty()) trace = parse_trace_kind(a.trace);
    const WeightMode mode = parse_weight_mode(a.weight_mode);
    std::vector<CampaignItem> items;
    for (std::size_t t = 0; t < a.trials; ++t) {
      if (a.theorem == "cw" || a.simplicial) {
        RandomCwSpec spec{.seed = a.seed + t, .v = a.v, .d = a.d, .m = a.m, .well_vertex = a.well_vertex,
                          .ring = a.ring, .trace = trace, .weight_mode = mode,
                          .draw = a.unitary ? HolonomyDraw::unit : HolonomyDraw::general,
                          .random_orientation = a.random_orientation};
        items.push_back({[th = a.theorem, spec, opt] { return check_random_cw(th, spec, opt); }});
      } else {
        RandomSpec spec{.seed = a.seed + t, .n = a.n, .m = a.m, .fiber = a.fiber, .ring = a.ring, .trace = trace,
                        .weight_mode = mode, .draw = a.unitary ? HolonomyDraw::unit : HolonomyDraw::general,
                        .symmetric = a.conj_pairs, .block_split = a.split, .preset = a.preset};
        items.push_back({[th = a.theorem, spec, opt] { return check_random_graph(th, spec, opt); }});
      }
    }
    reports = run_items(items, 1);
  } else {
    // enumeration stays single-threaded inside items so --threads spreads over items
    CheckOptions item_opt = opt;
    item_opt.verify.sum.threads = 1;
    item_opt.verify.det.threads = 1;
    reports = run_items(default_campaign(a.theorem, a.seed, a.trials, item_opt), c.threads);
  }

  RenderOptions ro;
  ro.timings = a.timings;
  ro.polynomials = a.show;
  std::cout << (c.format == "json" ? render_json(reports, ro) : render_text(reports, ro));
  return exit_code_for(reports);
}

int run_det(const std::string& path, std::size_t minor, const Common& c) {
  const Json doc = read_document(path);
  const DetOptions opt = c.options().verify.det;
  std::string text;
  if (is_simplicial_document(doc)) {
    auto loaded = load_simplicial_instance(doc);
    std::visit(
        [&](const auto& inst) {
          const auto lap = build_simplicial_laplacian(inst);
          const std::size_t k = minor ? minor : inst.m;
          require(k <= lap.size(), "minor larger than the matrix");
          text = tau_det(lap.leading(k), inst.trace, opt).to_string(inst.namer());
        },
        loaded.instance);
  } else {
    auto loaded = load_instance(doc);
    std::visit(
        [&](const auto& inst) {
          using Inst = std::decay_t<decltype(inst)>;
          if constexpr (Inst::matrix_holonomy) {
            auto lift = lift_instance(inst);
            const auto lap = build_block_laplacian(lift);
            const std::size_t k = minor ? minor : lift.inner_count();
            require(k <= lap.size(), "minor larger than the matrix");
            text = tau_det(lap.leading(k), inst.trace, opt).to_string(inst.namer());
          } else {
            const std::size_t k = minor ? minor : inst.m;
            text = tau_det(principal_submatrix(build_laplacian(inst), k), inst.trace, opt).to_string(inst.namer());
          }
        },
        loaded.instance);
  }
  if (c.format == "json") std::cout << Json{{"det", text}}.dump() << "\n";
  else std::cout << text << "\n";
  return kExitVerified;
}

int run_expand(const std::string& theorem, const std::string& path, const Common& c) {
  check_theorem_id(theorem, false);
  const Json doc = read_document(path);
  const SumOptions sum = c.options().verify.sum;
  std::string text;
  if (is_simplicial_document(doc)) {
    require(theorem == "cw", "simplicial instances expand with --theorem cw");
    auto loaded = load_simplicial_instance(doc);
    std::visit([&](const auto& inst) { text = rhs_cw(inst, sum).to_string(inst.namer()); }, loaded.instance);
  } else {
    auto loaded = load_instance(doc);
    std::visit(
        [&](const auto& inst) {
          using Inst = std::decay_t<decltype(inst)>;
          if (theorem == "mtkz" || theorem == "sym") {
            if constexpr (Inst::matrix_holonomy) {
              throw InputError("'" + theorem + "' takes scalar holonomies; matrix rings go through mtkzn");
            } else {
              text = (theorem == "mtkz" ? rhs_mtkz(inst, sum) : rhs_sym(inst, SymOptions{sum, false}))
                         .to_string(inst.namer());
            }
          } else if (theorem == "mtkzn") {
            text = rhs_mtkzn(lift_any(inst), sum).to_string(inst.namer());
          } else if (theorem == "mttnall") {
            text = rhs_mttnall(lift_any(inst), sum).to_string(inst.namer());
          } else {
            throw InputError("expand supports mtkz|sym|mtkzn|mttnall|cw");
          }
        },
        loaded.instance);
  }
  if (c.format == "json") std::cout << Json{{"theorem", theorem}, {"rhs", text}}.dump() << "\n";
  else std::cout << text << "\n";
  return kExitVerified;
}

std::string forest_text(std::span<const std::uint32_t> target) {
  std::string out;
  for (std::size_t u = 0; u < target.size(); ++u)
    out += (u ? " " : "") + std::to_string(u + 1) + "->" + std::to_string(target[u] + 1);
  return out;
}

int run_forests(std::size_t n, std::size_t m, bool classes, const Common& c) {
  require(n >= 2 && n <= 9, "forests: n must be between 2 and 9");
  Json list = Json::array();
  std::size_t count = 0;
  if (classes) {
    for (const auto& fc : enumerate_forest_classes(n, m)) {
      ++count;
      if (c.format == "json") list.push_back(Json{{"forest", forest_text(fc.representative.target)}, {"orbit", fc.orbit_size}});
      else std::cout << forest_text(fc.representative.target) << "  (orbit " << fc.orbit_size << ")\n";
    }
  } else {
    for (const auto& f : enumerate_forests(n, m)) {
      ++count;
      if (c.format == "json") list.push_back(forest_text(f.target));
      else std::cout << forest_text(f.target) << "\n";
    }
  }
  if (c.format == "json") std::cout << Json{{"n", n}, {"m", m}, {"count", count}, {"forests", list}}.dump() << "\n";
  else std::cout << "count: " << count << "\n";
  return kExitVerified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of matrix-tree identities with holonomies"};
  app.require_subcommand(1);

  Common common;
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a theorem on an instance, random instances or the built-in grid");
  verify->add_option("--theorem", va.theorem, "mtkz|sym|mtkzn|mttnall|cw|cancellation|positivity|factorization|all")
      ->required();
  auto* inst_opt = verify->add_option("--instance", va.instance, "Instance document (JSON)");
  auto* rnd_opt = verify->add_flag("--random", va.random, "Generate random instances");
  inst_opt->excludes(rnd_opt);
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_option("--n", va.n, "Vertices");
  verify->add_option("--m", va.m, "Inner vertices (or inner cells)");
  verify->add_option("--fiber", va.fiber, "Matrix size N")->check(CLI::PositiveNumber);
  verify->add_option("--ring", va.ring, "rational|gaussian|quaternion|group_ring:k|matrix:N:<ring>");
  verify->add_option("--trace", va.trace, "id|re");
  verify->add_option("--preset", va.preset, "kirchhoff|forman|chaiken:k|zaslavsky|kenyon");
  verify->add_option("--weight-mode", va.weight_mode, "symbolic|symmetric|specialized");
  verify->add_flag("--unitary", va.unitary, "Draw unit holonomies");
  verify->add_flag("--conj-pairs", va.conj_pairs, "Set h_ji to the conjugate of h_ij");
  verify->add_option("--split", va.split, "Block-diagonal holonomies: size of the first block");
  verify->add_option("--v", va.v, "Simplicial: vertices");
  verify->add_option("--d", va.d, "Simplicial: dimension");
  verify->add_option("--well-vertex", va.well_vertex, "Simplicial: the well is the cells containing this vertex");
  verify->add_flag("--random-orientation", va.random_orientation, "Simplicial: random cell orientations");
  verify->add_option("--trials", va.trials, "Instances per grid cell or random run")->check(CLI::PositiveNumber);
  verify->add_flag("--timings", va.timings, "Include wall-clock times");
  verify->add_flag("--show-polynomials", va.show, "Print both sides in full");
  add_common(verify, common);

  std::string det_path;
  std::size_t minor = 0;
  auto* det = app.add_subcommand("det", "Print det_tau of a leading principal minor of the Laplacian");
  det->add_option("--instance", det_path, "Instance document (JSON)")->required();
  det->add_option("--minor", minor, "Minor size (default: the inner set)");
  add_common(det, common);

  std::size_t fn = 3, fm = 2;
  bool classes = false;
  auto* forests = app.add_subcommand("forests", "List cycle-and-well-rooted forests of the complete graph");
  forests->add_option("--n", fn, "Vertices")->required();
  forests->add_option("--m", fm, "Inner vertices")->required();
  forests->add_flag("--classes", classes, "One representative per cycle-reversal class");
  add_common(forests, common);

  std::string expand_theorem, expand_path;
  auto* expand = app.add_subcommand("expand", "Print the forest-sum side of a theorem");
  expand->add_option("--theorem", expand_theorem, "mtkz|sym|mtkzn|mttnall|cw")->required();
  expand->add_option("--instance", expand_path, "Instance document (JSON)")->required();
  add_common(expand, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  va.simplicial = verify->count("--v") + verify->count("--d") > 0;
  try {
    if (*verify) return run_verify(va, common);
    if (*det) return run_det(det_path, minor, common);
    if (*forests) return run_forests(fn, fm, classes, common);
    if (*expand) return run_expand(expand_theorem, expand_path, common);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
