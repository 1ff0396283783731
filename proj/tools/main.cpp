// overlap_ifs: compute, verify and render the harmonic-analysis objects of
// scale-lambda iterated function systems with overlap.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "overlap_ifs/acceptance.hpp"
#include "overlap_ifs/cuntz.hpp"
#include "overlap_ifs/ifs2d.hpp"
#include "overlap_ifs/lambda_spec.hpp"
#include "overlap_ifs/overlap1d.hpp"
#include "overlap_ifs/render.hpp"
#include "overlap_ifs/transfer.hpp"
#include "overlap_ifs/version.hpp"

using json = nlohmann::ordered_json;
using namespace ifs;

namespace {

struct Options {
  std::string lambda = "golden";
  std::string mode = "auto";  // auto | exact | float
  double tolerance = 1e-12;
  int depth = 12;
  int budget = -1;
  unsigned long long seed = 20240601;
  std::string format;  // per-command default
  std::string output;
  std::string config_file;
  int order = 6;           // moments
  double tmax = 50.0;      // charfn
  int points = 1001;       // charfn / rnderiv sampling
  int terms = 40;          // charfn product truncation
  int resolution = 512;    // pgm
  int level = 10;          // opcheck symbolic level
  int samples = 32;        // opcheck sampled checks
  std::string layers = "attractor,overlaps,gaps";
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::domain_error("cannot open output path: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

json provenance(const Options& opt, bool exact) {
  json p;
  p["lambda"] = opt.lambda;
  p["mode"] = exact ? "exact" : "float";
  p["depth"] = opt.depth;
  p["tolerance"] = opt.tolerance;
  p["version"] = kVersion;
  return p;
}

template <class S>
json scalar_json(const S& x);

template <>
json scalar_json<double>(const double& x) {
  return x;
}
template <>
json scalar_json<Quadratic>(const Quadratic& x) {
  // exact values as strings to avoid precision loss
  json j;
  j["a"] = x.a().to_string();
  j["b"] = x.b().to_string();
  j["approx"] = x.to_double();
  return j;
}

template <class S>
IFS1D<S> make_ifs1d(const S& lambda, const Options& opt) {
  IFS1D<S> f(lambda, opt.tolerance);
  if (opt.budget >= 0) f.budget = opt.budget;
  return f;
}

template <class S>
IFS2D<S> make_ifs2d(const S& lambda, const Options& opt) {
  IFS2D<S> f(lambda, opt.tolerance);
  if (opt.budget >= 0) f.budget = opt.budget;
  return f;
}

// ---- subcommand handlers (templated on the scalar mode) ----

template <class S>
int run_nodes(const S& lambda, const Options& opt) {
  auto f = make_ifs1d(lambda, opt);
  auto ns = node_set(f, opt.depth);
  OutputSink sink(opt.output);
  if (opt.format == "csv") {
    sink.stream() << "value,multiplicity\n";
    for (auto& [v, m] : ns.entries)
      sink.stream() << fmt17(ScalarOps<S>::to_double(v)) << ',' << m << "\n";
    return 0;
  }
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  out["distinct"] = ns.entries.size();
  out["total"] = ns.total_count();
  json rows = json::array();
  for (auto& [v, m] : ns.entries) {
    json row;
    row["value"] = scalar_json(v);
    row["multiplicity"] = m;
    rows.push_back(row);
  }
  out["nodes"] = rows;
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_cascade(const S& lambda, const Options& opt) {
  auto f = make_ifs1d(lambda, opt);
  auto F = cascade_cdf(f, opt.depth);
  OutputSink sink(opt.output);
  if (opt.format == "svg") {
    double b = ScalarOps<S>::to_double(f.support_end());
    write_step_svg(sink.stream(), F.to_float(), -0.05 * b, 1.05 * b);
    return 0;
  }
  if (opt.format == "csv") {
    sink.stream() << "breakpoint,value_after\n";
    const auto& bp = F.breakpoints();
    const auto& vals = F.values();
    for (size_t i = 0; i < bp.size(); ++i)
      sink.stream() << fmt17(ScalarOps<S>::to_double(bp[i])) << ','
                    << fmt17(vals[i + 1]) << "\n";
    return 0;
  }
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  out["support_end"] = ScalarOps<S>::to_double(f.support_end());
  json rows = json::array();
  const auto& bp = F.breakpoints();
  const auto& vals = F.values();
  for (size_t i = 0; i < bp.size(); ++i) {
    json row;
    row["breakpoint"] = scalar_json(bp[i]);
    row["value_after"] = vals[i + 1];
    rows.push_back(row);
  }
  out["jumps"] = rows;
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_overlap1d(const S& lambda, const Options& opt) {
  auto f = make_ifs1d(lambda, opt);
  auto r = overlap_report(f, opt.depth);
  OutputSink sink(opt.output);
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  out["lambda_value"] = r.lambda;
  out["overlap_interval"] = {r.overlap_lo, r.overlap_hi};
  out["enclosure"] = {{"lo", r.enclosure.lo}, {"hi", r.enclosure.hi},
                      {"width", r.enclosure.width()}, {"depth", r.enclosure.depth}};
  out["branch_enclosure"] = {{"lo", r.branch_enclosure.lo}, {"hi", r.branch_enclosure.hi}};
  out["cross_check_2mu_minus_1"] = {{"lo", r.cross_check.lo}, {"hi", r.cross_check.hi}};
  out["lower_bound"] = {{"value", r.lower_bound.bound.to_string()},
                        {"m", r.lower_bound.m},
                        {"golden_or_above", r.lower_bound.golden_or_above}};
  out["lebesgue_overlap"] = r.lebesgue;
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_moments(const S& lambda, const Options& opt) {
  auto f = make_ifs1d(lambda, opt);
  auto m = moments(f, opt.order);
  OutputSink sink(opt.output);
  if (opt.format == "csv") {
    sink.stream() << "k,moment\n";
    for (size_t k = 0; k < m.size(); ++k)
      sink.stream() << k << ',' << fmt17(ScalarOps<S>::to_double(m[k])) << "\n";
    return 0;
  }
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  json rows = json::array();
  for (size_t k = 0; k < m.size(); ++k) {
    json row;
    row["k"] = k;
    row["moment"] = scalar_json(m[k]);
    rows.push_back(row);
  }
  out["moments"] = rows;
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_charfn(const S& lambda, const Options& opt) {
  double lam = ScalarOps<S>::to_double(lambda);
  OutputSink sink(opt.output);
  auto sample_at = [&](int i) {
    double t = -opt.tmax + 2.0 * opt.tmax * double(i) / double(opt.points - 1);
    auto v = char_fn(lam, t, opt.terms);
    return std::tuple<double, std::complex<double>, double>(t, v.value,
                                                            v.truncation_bound);
  };
  if (opt.format == "csv") {
    sink.stream() << "t,re,im,abs,truncation_bound\n";
    for (int i = 0; i < opt.points; ++i) {
      auto [t, v, bound] = sample_at(i);
      sink.stream() << fmt17(t) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag())
                    << ',' << fmt17(std::abs(v)) << ',' << fmt17(bound) << "\n";
    }
    return 0;
  }
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  out["terms"] = opt.terms;
  json rows = json::array();
  for (int i = 0; i < opt.points; ++i) {
    auto [t, v, bound] = sample_at(i);
    rows.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()},
                    {"abs", std::abs(v)}, {"truncation_bound", bound}});
  }
  out["samples"] = rows;
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_rnderiv(const S& lambda, const Options& opt) {
  auto f = make_ifs1d(lambda, opt);
  auto rn = make_rn_pair(f, opt.depth);
  double b = rn.b();
  OutputSink sink(opt.output);
  int pts = std::max(2, opt.points);
  auto grid = [&](int i) { return b * double(i) / double(pts - 1); };
  if (opt.format == "svg") {
    // piecewise-linear sketches of phi_0 and phi_1 over [0, b]
    std::ostringstream s;
    const double W = 640, H = 360, pad = 24;
    auto X = [&](double x) { return pad + x / b * (W - 2 * pad); };
    auto Y = [&](double v) { return H - pad - v / 2.2 * (H - 2 * pad); };
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
      << W << ' ' << H << "\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const char* colors[2] = {"#c02020", "#2020c0"};
    for (int which = 0; which < 2; ++which) {
      s << "  <polyline fill=\"none\" stroke=\"" << colors[which]
        << "\" stroke-width=\"1\" points=\"";
      for (int i = 0; i < pts; ++i) {
        double x = grid(i);
        double v = which == 0 ? rn.phi0(x) : rn.phi1(x);
        s << (i ? " " : "") << fmt17(X(x)) << ',' << fmt17(Y(v));
      }
      s << "\"/>\n";
    }
    s << "</svg>\n";
    sink.stream() << s.str();
    return 0;
  }
  if (opt.format == "csv") {
    sink.stream() << "x,phi0,phi1,near_boundary\n";
    for (int i = 0; i < pts; ++i) {
      double x = grid(i);
      auto v0 = rn.phi0.eval(x);
      auto v1 = rn.phi1.eval(x);
      sink.stream() << fmt17(x) << ',' << fmt17(v0.value) << ',' << fmt17(v1.value)
                    << ',' << (v0.near_boundary || v1.near_boundary ? 1 : 0) << "\n";
    }
    return 0;
  }
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  out["support_end"] = b;
  out["overlap_interval"] = {rn.phi0.overlap_lo(), rn.phi0.overlap_hi()};
  json rows = json::array();
  for (int i = 0; i < pts; ++i) {
    double x = grid(i);
    auto v0 = rn.phi0.eval(x);
    auto v1 = rn.phi1.eval(x);
    rows.push_back({{"x", x}, {"phi0", v0.value}, {"phi1", v1.value},
                    {"near_boundary", v0.near_boundary || v1.near_boundary}});
  }
  out["samples"] = rows;
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_opcheck(const S& lambda, const Options& opt) {
  auto f = make_ifs1d(lambda, opt);
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);

  auto rn = make_rn_pair(f, opt.depth);
  auto quad = to_float(node_measure(node_set(f, std::min(opt.depth, 14))));
  json transfer;
  transfer["rn_sum_max_defect"] = rn_sum_check(rn, 1000);
  FnPair dv = overlap_defect_vector(rn);
  double dnorm = std::sqrt(norm2_sq(dv, quad));
  transfer["defect_vector_norm"] = dnorm;
  RangeProjection proj(rn);
  transfer["defect_vector_projection_residual"] =
      dnorm > 0 ? std::sqrt(norm2_sq(proj.apply(dv), quad)) / dnorm : 0.0;
  transfer["projection_idempotency_defect"] =
      projection_identity_check(rn, quad, opt.samples, unsigned(opt.seed));
  out["transfer"] = transfer;

  json cuntz;
  {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool exact_ok = true;
    for (int N : {2, 3}) {
      int n = std::min(opt.level, N == 2 ? 10 : 7);
      CylinderFn psi{N, n, 0, {}};
      psi.v = Eigen::VectorXd::NullaryExpr(long(int_pow(N, n)),
                                           [&](Eigen::Index) { return u(rng); });
      for (int i = 0; i < N && exact_ok; ++i)
        for (int j = 0; j < N && exact_ok; ++j) {
          CylinderFn o = shift_adjoint_apply(i, shift_isometry_apply(j, psi));
          exact_ok = o.half_exp == psi.half_exp &&
                     (i == j ? o.v == psi.v : o.v == Eigen::VectorXd::Zero(psi.v.size()));
        }
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(psi.v.size());
      for (int i = 0; i < N; ++i)
        acc += shift_isometry_apply(i, shift_adjoint_apply(i, psi)).v;
      exact_ok = exact_ok && acc == psi.v;
    }
    cuntz["relations_exact"] = exact_ok;
    std::vector<std::function<double(double)>> fns{
        [](double) { return 1.0; }, [](double x) { return x; },
        [](double x) { return x * x; }};
    cuntz["intertwining_defect"] = intertwining_check(f, fns, std::min(opt.level, 10));
    auto fn = [](double x) { return 1.0 + 0.5 * x; };
    auto [lhs, rhs] = dilation_isometry_pair(f, fn, std::min(opt.level, 12));
    cuntz["dilation_isometry_defect"] = std::abs(lhs - rhs);
    cuntz["minimality_residual"] = minimality_density_check(f, 4);
  }
  out["cuntz"] = cuntz;
  OutputSink sink(opt.output);
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_sierpinski(const S& lambda, const Options& opt) {
  auto f = make_ifs2d(lambda, opt);
  RenderLayers layers{false, false, false};
  {
    std::stringstream ss(opt.layers);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "attractor") layers.attractor = true;
      else if (item == "overlaps") layers.overlaps = true;
      else if (item == "gaps") layers.gaps = true;
      else throw std::domain_error("unknown layer: " + item);
    }
  }
  OutputSink sink(opt.output);
  if (opt.format == "pgm") {
    write_pgm(sink.stream(), build_scene(f, opt.depth, layers), opt.resolution);
    return 0;
  }
  if (opt.format.empty() || opt.format == "svg") {
    write_svg(sink.stream(), build_scene(f, opt.depth, layers));
    return 0;
  }
  // geometry report
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  auto cls = classify_regime(f);
  out["regime"] = cls.in_taxonomy ? to_string(cls.regime) : "gasket-or-fractal";
  out["boundary_ambiguous"] = cls.boundary_ambiguous;
  auto dim = hausdorff_dim(f);
  out["hausdorff_dim"] = {{"value", dim.value}, {"in_range", dim.in_proposition_range}};
  if (auto g = gap_region(f))
    out["gap_side"] = ScalarOps<S>::to_double(g->side());
  else
    out["gap_side"] = 0.0;
  out["triple_overlap_empty"] = triple_overlap_empty(f);
  int n = std::min(opt.depth, 10);
  Fractal2DReport r;
  bool measured_exact = ScalarOps<S>::exact;
  try {
    r = fractal_measures2d(f, n);
  } catch (const std::overflow_error&) {
    // rational-lambda denominators outgrow the exact field at this depth;
    // rerun the enclosure in binary64
    IFS2D<double> fd(ScalarOps<S>::to_double(f.lambda), opt.tolerance);
    fd.budget = f.budget;
    r = fractal_measures2d(fd, n);
    measured_exact = false;
  }
  out["fractal_measures_exact"] = measured_exact;
  out["branch_measure"] = {{"lo", r.branch[1].lo}, {"hi", r.branch[1].hi}, {"depth", n}};
  out["pair_overlap_measure"] = {{"lo", r.pair01.lo}, {"hi", r.pair01.hi}, {"depth", n}};
  json ident;
  ident["lo"] = 3.0 * r.branch[1].lo - 3.0 * r.pair01.hi;
  ident["hi"] = 3.0 * r.branch[1].hi - 3.0 * r.pair01.lo;
  out["identity_3b_minus_3ov"] = ident;
  auto lb = overlap2d_lower_bound(f);
  out["pair_overlap_lower_bound"] = {{"value", lb.bound.to_string()},
                                     {"m", lb.m},
                                     {"exact_golden", lb.exact_golden},
                                     {"monotonicity_caveat", lb.monotonicity_caveat}};
  auto ov1 = overlap_level(f, 1);
  out["overlap_level1"] = {{"count", ov1.size()}, {"interior_disjoint", ov1.interior_disjoint}};
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

template <class S>
int run_classify(const S& lambda, const Options& opt) {
  auto f = make_ifs2d(lambda, opt);
  auto cls = classify_regime(f);
  json out;
  out["provenance"] = provenance(opt, ScalarOps<S>::exact);
  out["regime"] = cls.in_taxonomy ? to_string(cls.regime) : "gasket-or-fractal";
  out["in_taxonomy"] = cls.in_taxonomy;
  out["boundary_ambiguous"] = cls.boundary_ambiguous;
  auto dim = hausdorff_dim(f);
  out["hausdorff_dim"] = {{"value", dim.value}, {"in_range", dim.in_proposition_range}};
  auto chain = regime_from_chain(f, chain_intersection(f, 1));
  out["chain_regime"] = chain.in_taxonomy ? to_string(chain.regime) : "gasket-or-fractal";
  out["agreement"] = chain.regime == cls.regime && chain.in_taxonomy == cls.in_taxonomy;
  OutputSink sink(opt.output);
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

int run_verify(const Options& opt) {
  OutputSink sink(opt.output);
  auto results = acceptance::run_all(sink.stream());
  return acceptance::all_passed(results) ? 0 : 3;
}

// mode dispatch: run the handler in exact or float arithmetic
template <class Fn1, class Fn2>
int dispatch(const Options& opt, Fn1&& exact_fn, Fn2&& float_fn) {
  auto spec = LambdaSpec::parse(opt.lambda);
  Mode req = opt.mode == "exact" ? Mode::Exact
                                 : (opt.mode == "float" ? Mode::Float : Mode::Exact);
  if (opt.mode == "auto" && spec.kind == LambdaSpec::Kind::Decimal) req = Mode::Float;
  ScaleContext ctx = resolve_scale(spec, req);
  if (!ctx.warning.empty()) std::cerr << "warning: " << ctx.warning << "\n";
  if (ctx.exact) return exact_fn(ctx.quad());
  return float_fn(ctx.value);
}

void apply_config_file(Options& opt, const CLI::App& app) {
  if (opt.config_file.empty()) return;
  std::ifstream in(opt.config_file);
  if (!in) throw std::domain_error("cannot read config file: " + opt.config_file);
  json cfg = json::parse(in);
  auto set_if_unset = [&](const char* flag, auto& field) {
    using T = std::decay_t<decltype(field)>;
    if (cfg.contains(flag) && app.count(std::string("--") + flag) == 0)
      field = cfg[flag].get<T>();
  };
  set_if_unset("lambda", opt.lambda);
  set_if_unset("mode", opt.mode);
  set_if_unset("tolerance", opt.tolerance);
  set_if_unset("depth", opt.depth);
  set_if_unset("budget", opt.budget);
  set_if_unset("seed", opt.seed);
  set_if_unset("format", opt.format);
  set_if_unset("output", opt.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic analysis of iterated function systems with overlap"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-l,--lambda", opt.lambda,
                    "scale: decimal, p/q, quad:p,q or 'golden'");
    cmd->add_option("-m,--mode", opt.mode, "exact | float | auto")
        ->check(CLI::IsMember({"exact", "float", "auto"}));
    cmd->add_option("-n,--depth", opt.depth, "enumeration / approximation level");
    cmd->add_option("--tolerance", opt.tolerance, "float-mode coincidence tolerance");
    cmd->add_option("--budget", opt.budget, "enumeration budget (max level)");
    cmd->add_option("--seed", opt.seed, "seed for sampled checks");
    cmd->add_option("-f,--format", opt.format, "output format");
    cmd->add_option("-o,--output", opt.output, "output path (default stdout)");
    cmd->add_option("--config", opt.config_file, "JSON config file (flags override)");
  };

  CLI::App* cascade = app.add_subcommand("cascade", "cascade CDF approximant F_n");
  CLI::App* nodes = app.add_subcommand("nodes", "node set N_n with multiplicities");
  CLI::App* overlap1d_cmd = app.add_subcommand("overlap1d", "1D overlap report");
  CLI::App* moments_cmd = app.add_subcommand("moments", "moment table M_0..M_k");
  moments_cmd->add_option("-k,--order", opt.order, "highest moment order");
  CLI::App* charfn_cmd = app.add_subcommand("charfn", "sampled characteristic function");
  charfn_cmd->add_option("--tmax", opt.tmax, "sample |t| <= tmax");
  charfn_cmd->add_option("--points", opt.points, "sample count");
  charfn_cmd->add_option("--terms", opt.terms, "product truncation");
  CLI::App* rnderiv_cmd = app.add_subcommand("rnderiv", "Radon-Nikodym derivative tables");
  rnderiv_cmd->add_option("--points", opt.points, "grid size");
  CLI::App* opcheck_cmd = app.add_subcommand("opcheck", "operator-identity check report");
  opcheck_cmd->add_option("--level", opt.level, "symbolic level");
  opcheck_cmd->add_option("--samples", opt.samples, "sampled pairs");
  CLI::App* sier = app.add_subcommand("sierpinski", "2D family: render or geometry report");
  sier->add_option("--resolution", opt.resolution, "PGM raster resolution");
  sier->add_option("--layers", opt.layers, "comma list: attractor,overlaps,gaps");
  CLI::App* classify_cmd = app.add_subcommand("classify", "regime classification");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");

  for (CLI::App* cmd : {cascade, nodes, overlap1d_cmd, moments_cmd, charfn_cmd,
                        rnderiv_cmd, opcheck_cmd, sier, classify_cmd, verify_cmd})
    add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage / config error
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config_file(opt, *active);
    if (active == verify_cmd) return run_verify(opt);
    auto call = [&](auto&& handler) {
      return dispatch(
          opt, [&](const Quadratic& lam) { return handler(lam, opt); },
          [&](double lam) { return handler(lam, opt); });
    };
    if (active == nodes)
      return call([](const auto& lam, const Options& o) { return run_nodes(lam, o); });
    if (active == cascade)
      return call([](const auto& lam, const Options& o) { return run_cascade(lam, o); });
    if (active == overlap1d_cmd)
      return call([](const auto& lam, const Options& o) { return run_overlap1d(lam, o); });
    if (active == moments_cmd)
      return call([](const auto& lam, const Options& o) { return run_moments(lam, o); });
    if (active == charfn_cmd)
      return call([](const auto& lam, const Options& o) { return run_charfn(lam, o); });
    if (active == rnderiv_cmd)
      return call([](const auto& lam, const Options& o) { return run_rnderiv(lam, o); });
    if (active == opcheck_cmd)
      return call([](const auto& lam, const Options& o) { return run_opcheck(lam, o); });
    if (active == sier)
      return call([](const auto& lam, const Options& o) { return run_sierpinski(lam, o); });
    if (active == classify_cmd)
      return call([](const auto& lam, const Options& o) { return run_classify(lam, o); });
    std::cerr << "unknown subcommand\n";
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
