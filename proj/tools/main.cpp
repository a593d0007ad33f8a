// polarconv command-line runner: config-driven experiments with deterministic
// text reports. Exit codes: 0 = all assertions passed, 1 = a mathematical
// assertion was falsified or failed (report still written), 2 = configuration
// error (no report).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "polarconv/polarconv.hpp"

namespace pc = polarconv;

namespace {

struct Invocation {
  std::string config_path;
  std::string out_path;
  std::string format; // empty defers to the config, then to "report"
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string name; // examples only
};

struct BuiltSequence {
  pc::SequenceOracle oracle;
  pc::PointRepr candidate;
  std::string description;
};

pc::SpaceDescriptor build_space(const pc::ExperimentConfig& cfg) {
  std::string kind = cfg.get_or("space.kind", "euclidean");
  int dim = cfg.get_int_or("space.dim", 2);
  double p = cfg.get_double_or("space.p", 2.0);
  if (kind == "euclidean") return pc::SpaceDescriptor::euclidean(dim);
  if (kind == "lp-vec") return pc::SpaceDescriptor::lp_vec(dim, p);
  if (kind == "one-norm") return pc::SpaceDescriptor::one_norm_vec(dim);
  if (kind == "sup") return pc::SpaceDescriptor::sup_vec(dim);
  if (kind == "lp-grid") {
    int g = cfg.get_int_or("grid", dim);
    std::vector<double> w(static_cast<std::size_t>(g), 2.0 * M_PI / g);
    return pc::SpaceDescriptor::lp_grid(std::move(w), p);
  }
  throw pc::ConfigError("unknown space.kind: " + kind);
}

pc::TailWindow build_window(const pc::ExperimentConfig& cfg) {
  pc::TailWindow w;
  w.beta = cfg.get_double_or("window.beta", 0.5);
  w.beta_prime = cfg.get_double_or("window.beta-prime", 0.75);
  w.validate();
  return w;
}

// Inline sequence families. Every family fixes its natural candidate point:
//   harmonic:        x_n = a u / (n+1), u_i = 1/(i+1); candidate 0
//   geometric:       x_n = a b^n u, same u; candidate 0
//   two-cluster:     x_n = +/- a e_0; candidate 0
//   basis-escalator: x_n = e_(n mod dim); candidate 0
//   prefix-ones:     x_n = indicator of [0, n]; candidate 0
//   oscillation:     x_n(t) = a + b sin((2n+1) t) on the circle grid;
//                    candidate the constant a (lp-grid spaces only)
BuiltSequence build_sequence(const pc::ExperimentConfig& cfg) {
  pc::SpaceDescriptor space = build_space(cfg);
  std::string kind = cfg.get_or("sequence.kind", "harmonic");
  const int horizon = cfg.get_int_or("horizon", 96);
  const double a = cfg.get_double_or("sequence.a", 1.0);
  const double b = cfg.get_double_or("sequence.b", 0.5);
  if (horizon < 4) throw pc::ConfigError("horizon must be at least 4");

  const int dim = space.dim;
  auto zero = pc::make_vec(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  std::vector<double> u(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) u[static_cast<std::size_t>(i)] = 1.0 / (i + 1.0);

  if (kind == "harmonic") {
    auto oracle = pc::SequenceOracle::from_generator(space, horizon, [&](int n) {
      std::vector<double> c(u);
      for (double& v : c) v *= a / static_cast<double>(n + 1);
      return pc::make_vec(std::move(c));
    });
    return {std::move(oracle), zero, "harmonic"};
  }
  if (kind == "geometric") {
    auto oracle = pc::SequenceOracle::from_generator(space, horizon, [&](int n) {
      std::vector<double> c(u);
      for (double& v : c) v *= a * std::pow(b, n);
      return pc::make_vec(std::move(c));
    });
    return {std::move(oracle), zero, "geometric"};
  }
  if (kind == "two-cluster") {
    auto oracle = pc::SequenceOracle::from_generator(space, horizon, [&](int n) {
      std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
      c[0] = (n % 2 == 0) ? a : -a;
      return pc::make_vec(std::move(c));
    });
    return {std::move(oracle), zero, "two-cluster"};
  }
  if (kind == "basis-escalator") {
    return {pc::SequenceOracle::from_points(space,
                                            pc::fixtures::basis_escalator(dim, horizon)),
            zero, "basis-escalator"};
  }
  if (kind == "prefix-ones") {
    return {pc::SequenceOracle::from_points(space,
                                            pc::fixtures::prefix_ones(dim, horizon)),
            zero, "prefix-ones"};
  }
  if (kind == "oscillation") {
    if (space.kind != pc::SpaceKind::lp_grid)
      throw pc::ConfigError("sequence.kind oscillation needs space.kind lp-grid");
    const int g = space.dim;
    if (2 * (horizon - 1) + 1 >= g)
      throw pc::ConfigError("oscillation: horizon too long for the grid");
    auto oracle = pc::SequenceOracle::from_generator(space, horizon, [&](int n) {
      std::vector<double> v(static_cast<std::size_t>(g));
      double freq = static_cast<double>(2 * n + 1);
      for (int i = 0; i < g; ++i) {
        double t = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / g;
        v[static_cast<std::size_t>(i)] = a + b * std::sin(freq * t);
      }
      return pc::make_vec(std::move(v));
    });
    return {std::move(oracle),
            pc::make_vec(std::vector<double>(static_cast<std::size_t>(g), a)),
            "oscillation"};
  }
  throw pc::ConfigError("unknown sequence.kind: " + kind);
}

std::vector<pc::PointRepr> build_probes(const pc::ExperimentConfig& cfg,
                                        const pc::SpaceDescriptor& space,
                                        const pc::PointRepr& candidate,
                                        std::uint64_t seed, pc::ProbeConfig* echo) {
  pc::ProbeConfig p;
  p.strategy = pc::ProbeStrategy::ball_uniform;
  p.count = cfg.get_int_or("probe.count", 8);
  p.seed = cfg.has("probe.seed")
               ? cfg.get_u64("probe.seed")
               : seed ^ 0x5bf0'3635'0c5a'1d4bULL;
  p.radius_scale = cfg.get_double_or("probe.scale", 1.0);
  if (echo) *echo = p;
  auto probes = pc::sample_probes(space, candidate, p);
  return pc::drop_probes_at(space, probes, candidate);
}

void echo_config(pc::ReportBuilder& rb, const pc::ExperimentConfig& cfg) {
  rb.section("config");
  rb.raw(cfg.echo());
}

void provenance(pc::ReportBuilder& rb, const pc::ExperimentConfig& cfg,
                const Invocation& inv, const pc::TailWindow& window,
                const pc::ProbeConfig* probes) {
  rb.section("provenance");
  rb.kv("seed", cfg.get("seed"));
  rb.kv("seed-overridden", inv.seed_given);
  rb.kv("window.beta", window.beta);
  rb.kv("window.beta-prime", window.beta_prime);
  if (probes) {
    rb.kv("probe.strategy", pc::probe_strategy_name(probes->strategy));
    rb.kv("probe.count", probes->count);
    rb.kv("probe.seed", probes->seed);
    rb.kv("probe.scale", probes->radius_scale);
  }
}

int finish(pc::ReportBuilder& rb, bool math_ok, const Invocation& inv,
           const std::string& default_name, const std::string& csv_payload,
           std::chrono::steady_clock::time_point started,
           const pc::ExperimentConfig& cfg) {
  rb.section("verdict");
  rb.kv("all-assertions-passed", math_ok);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  rb.section("metadata");
  rb.kv("wall-ms", static_cast<std::int64_t>(elapsed));

  std::string out = !inv.out_path.empty() ? inv.out_path
                                          : cfg.get_or("out", default_name);
  std::string format = !inv.format.empty() ? inv.format : cfg.get_or("format", "report");
  if (format == "csv") {
    pc::write_text_file(out, csv_payload.empty() ? "key,value\n" : csv_payload);
  } else if (format == "report") {
    pc::write_text_file(out, rb.str());
  } else {
    throw pc::ConfigError("unknown format: " + format);
  }
  std::printf("%s\n", out.c_str());
  return math_ok ? 0 : 1;
}

void put_verdict(pc::ReportBuilder& rb, const std::string& prefix,
                 const pc::ConvergenceVerdict& v) {
  rb.kv(prefix + ".mode", pc::mode_name(v.mode));
  rb.kv(prefix + ".status", pc::status_name(v.status));
  rb.kv(prefix + ".tolerance", v.tolerance);
  rb.kv(prefix + ".margin", v.margin);
  rb.kv(prefix + ".horizon", v.horizon);
  rb.kv(prefix + ".probes", static_cast<int>(v.table.size()));
  if (v.witness) {
    rb.kv(prefix + ".witness-index", v.witness->index);
    rb.kv(prefix + ".witness-candidate-distance", v.witness->candidate_distance);
    rb.kv(prefix + ".witness-probe-distance", v.witness->probe_distance);
  }
}

// --------------------------------------------------------------------------
// Subcommand handlers. Each receives a parsed config; anything thrown here
// before the [result] work starts is a configuration error.

int run_center(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  BuiltSequence built = build_sequence(cfg);
  pc::CenterConfig cc;
  cc.window = build_window(cfg);
  cc.solver.seed = cfg.require_seed();

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  pc::CenterResult cr = pc::asymptotic_center(built.oracle, cc);
  rb.section("center");
  rb.kv("sequence", built.description);
  rb.kv("space", built.oracle.space().name());
  rb.kv("horizon", built.oracle.horizon());
  rb.kv("center", pc::format_point(cr.center));
  rb.kv("radius", cr.radius);
  rb.kv("optimality-gap", cr.optimality_gap);
  rb.kv("stability-gap", cr.stability_gap);
  rb.kv("solver-iterations", cr.solver_iterations);
  provenance(rb, cfg, inv, cc.window, nullptr);

  std::string csv = "coord,value\n";
  std::vector<double> c = pc::point_coords(cr.center);
  for (std::size_t i = 0; i < c.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, c[i]);
    csv += buf;
  }
  return finish(rb, true, inv, "center-report.txt", csv, started, cfg);
}

int run_classify(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  BuiltSequence built = build_sequence(cfg);
  pc::TailWindow window = build_window(cfg);
  const double tol_delta = cfg.get_double_or("tol.delta", 1e-9);
  const double tol_strong = cfg.get_double_or("tol.strong", 1e-9);
  pc::ProbeConfig probe_echo;
  auto probes = build_probes(cfg, built.oracle.space(), built.candidate,
                             cfg.require_seed(), &probe_echo);
  if (probes.empty()) throw pc::ConfigError("probe family came out empty");

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  auto dv = pc::delta_test(built.oracle, built.candidate, probes, window, tol_delta);
  auto sv = pc::strong_delta_test(built.oracle, built.candidate, probes, window,
                                  tol_strong);
  auto pv = pc::polar_test(built.oracle, built.candidate, probes, window);
  rb.section("classify");
  rb.kv("sequence", built.description);
  rb.kv("space", built.oracle.space().name());
  rb.kv("candidate", pc::format_point(built.candidate));
  put_verdict(rb, "delta", dv);
  put_verdict(rb, "strong-delta", sv);
  put_verdict(rb, "polar", pv);
  provenance(rb, cfg, inv, window, &probe_echo);

  bool ok = dv.status != pc::VerdictStatus::falsified &&
            sv.status != pc::VerdictStatus::falsified &&
            pv.status != pc::VerdictStatus::falsified;
  std::string csv = "mode,status,margin\n";
  for (const auto* v : {&dv, &sv, &pv}) {
    csv += std::string(pc::mode_name(v->mode)) + "," + pc::status_name(v->status) +
           "," + pc::report_number(v->margin) + "\n";
  }
  return finish(rb, ok, inv, "classify-report.txt", csv, started, cfg);
}

int run_extract(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  BuiltSequence built = build_sequence(cfg);
  pc::ExtractionConfig xc;
  xc.center.window = build_window(cfg);
  xc.seed = cfg.require_seed();
  xc.schedule.eps0 = cfg.get_double_or("extract.eps0", 0.05);
  xc.schedule.stages = cfg.get_int_or("extract.stages", 6);
  xc.min_length = cfg.get_int_or("extract.min-length", 16);

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  pc::ExtractionTrace tr = pc::extract_strong_delta(built.oracle, xc);
  rb.section("extract");
  rb.kv("sequence", built.description);
  rb.kv("space", built.oracle.space().name());
  rb.kv("stages", static_cast<int>(tr.stages.size()));
  for (std::size_t i = 0; i < tr.stages.size(); ++i) {
    rb.kv("stage." + std::to_string(i) + ".action", tr.stages[i].action);
    rb.kv("stage." + std::to_string(i) + ".length",
          static_cast<int>(tr.stages[i].indices.size()));
    rb.kv("stage." + std::to_string(i) + ".radius", tr.stages[i].radius);
  }
  rb.kv("final-length", tr.final_indices.size());
  rb.kv("final-radius", tr.final_center.radius);
  rb.kv("final-center", pc::format_point(tr.final_center.center));
  rb.kv("final-tolerance", tr.final_tolerance);
  rb.kv("strong-delta.status", pc::status_name(tr.strong_verdict.status));
  rb.kv("strong-delta.margin", tr.strong_verdict.margin);
  if (tr.polar_verdict)
    rb.kv("polar.status", pc::status_name(tr.polar_verdict->status));
  provenance(rb, cfg, inv, xc.center.window, nullptr);

  bool ok = tr.strong_verdict.status != pc::VerdictStatus::falsified &&
            (!tr.polar_verdict ||
             tr.polar_verdict->status != pc::VerdictStatus::falsified);
  std::string csv = "stage,radius,action\n";
  for (std::size_t i = 0; i < tr.stages.size(); ++i)
    csv += std::to_string(i) + "," + pc::report_number(tr.stages[i].radius) + "," +
           tr.stages[i].action + "\n";
  return finish(rb, ok, inv, "extract-report.txt", csv, started, cfg);
}

int run_sr_modulus(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  pc::SpaceDescriptor space = build_space(cfg);
  const double r = cfg.get_double_or("sr.r", 1.0);
  const double dbar = cfg.get_double_or("sr.dbar", 1.0);
  const int pairs = cfg.get_int_or("sr.pairs", 5);
  const int lens_samples = cfg.get_int_or("sr.lens-samples", 300);
  if (!(r > 0.0) || !(dbar > 0.0))
    throw pc::ConfigError("sr.r and sr.dbar must be positive");

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  pc::SrModulusEstimate est = pc::estimate_sr_modulus(
      space, r, dbar, pc::default_sr_delta_grid(), pairs, lens_samples,
      cfg.require_seed());
  rb.section("sr-modulus");
  rb.kv("space", space.name());
  rb.kv("r", est.r);
  rb.kv("dbar", est.dbar);
  rb.kv("delta-hat", est.delta_hat);
  rb.kv("worst-lens-radius", est.worst_lens_radius);
  rb.kv("lens-samples", est.samples);
  rb.kv("sampling-tol", est.sampling_tol);
  for (const auto& [delta, ok] : est.grid_results)
    rb.kv("grid." + pc::report_number(delta), ok);
  provenance(rb, cfg, inv, pc::TailWindow{}, nullptr);

  std::string csv = "delta,pass\n";
  for (const auto& [delta, ok] : est.grid_results)
    csv += pc::report_number(delta) + "," + (ok ? "1" : "0") + "\n";
  return finish(rb, true, inv, "sr-modulus-report.txt", csv, started, cfg);
}

int run_fixedpoint(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  pc::SpaceDescriptor base = build_space(cfg);
  const double radius = cfg.get_double_or("space.radius", 2.0);
  pc::SpaceDescriptor host = pc::SpaceDescriptor::clamped_ball(base, radius);
  std::string kind = cfg.get_or("map.kind", "averaged-rotation");
  const double angle = cfg.get_double_or("map.angle", 2.0);
  const double lambda = cfg.get_double_or("map.lambda", 0.5);

  pc::MapDescriptor map = [&]() {
    if (kind == "reflection") return pc::make_reflection_map(host);
    if (kind == "rotation") return pc::make_rotation_map(host, angle);
    if (kind == "averaged-rotation") return pc::make_averaged_rotation_map(host, angle);
    if (kind == "affine-average") {
      std::vector<double> t(static_cast<std::size_t>(host.dim), 0.0);
      return pc::make_affine_average_map(host, lambda, pc::make_vec(std::move(t)));
    }
    throw pc::ConfigError("unknown map.kind: " + kind);
  }();

  pc::PointRepr x0 = [&]() -> pc::PointRepr {
    if (cfg.has("map.x0")) {
      std::vector<double> c = cfg.get_doubles("map.x0");
      if (static_cast<int>(c.size()) != host.dim)
        throw pc::ConfigError("map.x0 length must match space.dim");
      return pc::make_vec(std::move(c));
    }
    std::vector<double> c(static_cast<std::size_t>(host.dim), 0.0);
    c[0] = 0.55 * radius;
    if (host.dim > 1) c[1] = -0.35 * radius;
    return pc::make_vec(std::move(c));
  }();

  pc::Polar2FixConfig pcfg;
  pcfg.horizon = cfg.get_int_or("horizon", 240);
  pcfg.residual_floor = cfg.get_double_or("tol.residual", 1e-6);

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  pc::Polar2FixReport rep = pc::polar2fix_pipeline(map, x0, pcfg);
  rb.section("fixedpoint");
  rb.kv("map", rep.map_label);
  rb.kv("host", host.name());
  rb.kv("start", pc::format_point(x0));
  rb.kv("bounded", rep.bounded_ok);
  rb.kv("rotund", rep.rotund_ok);
  rb.kv("nonexpansive", rep.nonexpansive_ok);
  rb.kv("lipschitz-ratio", rep.lipschitz_ratio);
  rb.kv("par", rep.par_ok);
  rb.kv("candidate", pc::format_point(rep.candidate));
  rb.kv("polar", rep.polar ? pc::status_name(rep.polar->status) : "absent");
  rb.kv("residual", rep.residual);
  rb.kv("residual-tolerance", rep.residual_tolerance);
  rb.kv("success", rep.success);
  rb.kv("failed-hypothesis",
        rep.failed_hypothesis.empty() ? "none" : rep.failed_hypothesis);
  provenance(rb, cfg, inv, pcfg.extraction.center.window, nullptr);

  std::string csv = "key,value\n";
  csv += "residual," + pc::report_number(rep.residual) + "\n";
  csv += "lipschitz," + pc::report_number(rep.lipschitz_ratio) + "\n";
  csv += std::string("success,") + (rep.success ? "1" : "0") + "\n";
  return finish(rb, rep.success, inv, "fixedpoint-report.txt", csv, started, cfg);
}

int run_duality(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  const int cases = cfg.get_int_or("duality.cases", 100);
  const double p = cfg.get_double_or("duality.p", 3.0);
  const int g = cfg.get_int_or("grid", 64);
  const double tol = cfg.get_double_or("tol.weak", 1e-9);
  if (cases < 1) throw pc::ConfigError("duality.cases must be positive");
  if (!(p > 1.0)) throw pc::ConfigError("duality.p must exceed 1");

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  pc::Rng rng(cfg.require_seed());
  double worst_norm = 0.0, worst_pairing = 0.0;
  int failures = 0;
  std::string csv = "case,norm_error,pairing_error\n";
  for (int k = 0; k < cases; ++k) {
    std::vector<double> v(static_cast<std::size_t>(g));
    for (double& x : v) x = rng.uniform(-2.0, 2.0);
    pc::GridFunction u = pc::GridFunction::on_circle_grid(std::move(v), p);
    if (!(u.norm() > 0.0)) continue;
    pc::DualityVector star = pc::duality_map(u);
    double ne = std::fabs(star.norm() - 1.0);
    double pe = std::fabs(pc::duality_pairing(star, u) - u.norm());
    worst_norm = std::max(worst_norm, ne);
    worst_pairing = std::max(worst_pairing, pe);
    if (ne > tol || pe > tol) ++failures;
    csv += std::to_string(k) + "," + pc::report_number(ne) + "," +
           pc::report_number(pe) + "\n";
  }
  rb.section("duality");
  rb.kv("cases", cases);
  rb.kv("p", p);
  rb.kv("grid", g);
  rb.kv("tolerance", tol);
  rb.kv("worst-norm-error", worst_norm);
  rb.kv("worst-pairing-error", worst_pairing);
  rb.kv("failures", failures);
  provenance(rb, cfg, inv, pc::TailWindow{}, nullptr);
  return finish(rb, failures == 0, inv, "duality-report.txt", csv, started, cfg);
}

int run_bl_check(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  const double p = cfg.get_double_or("bl.p", 4.0);
  const double level = cfg.get_double_or("bl.u", 1.2);
  const double b = cfg.get_double_or("bl.b", 1.0);
  const int g = cfg.get_int_or("grid", 512);
  const int horizon = cfg.get_int_or("horizon", 64);
  if (!(p > 1.0)) throw pc::ConfigError("bl.p must exceed 1");

  auto [seq, u] = pc::fixtures::bl_oscillation_fixture(p, level, b, g, horizon);
  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  rb.section("bl-check");
  rb.kv("p", p);
  rb.kv("u-level", level);
  rb.kv("b", b);
  rb.kv("grid", g);
  rb.kv("horizon", horizon);

  bool ok = false;
  std::string csv = "n,deficit\n";
  try {
    pc::BlReport rep = pc::brezis_lieb_check(seq, u, build_window(cfg),
                                             cfg.require_seed());
    rb.kv("weak", pc::status_name(rep.weak.status));
    rb.kv("polar", pc::status_name(rep.polar.status));
    rb.kv("assertion-applies", rep.assertion_applies);
    rb.kv("identity-case", rep.identity_case);
    rb.kv("exploratory", rep.exploratory);
    rb.kv("tail-min", rep.tail_min);
    rb.kv("tail-max-abs", rep.tail_max_abs);
    rb.kv("tolerance", rep.tolerance);
    rb.kv("pass", rep.pass);
    ok = rep.pass;
    csv = pc::bl_deficit_csv(rep);
  } catch (const pc::DomainError& e) {
    rb.kv("refused", e.what());
    ok = false;
  }
  provenance(rb, cfg, inv, build_window(cfg), nullptr);
  return finish(rb, ok, inv, "bl-check-report.txt", csv, started, cfg);
}

int run_examples(const pc::ExperimentConfig& cfg, const Invocation& inv) {
  auto started = std::chrono::steady_clock::now();
  std::string name = !inv.name.empty() ? inv.name : cfg.get_or("name", "");
  if (name.empty()) name = cfg.get_or("fixture", "");

  std::vector<std::string> to_run;
  if (name.empty()) {
    to_run = pc::registry_names();
  } else {
    bool known = false;
    for (const auto& n : pc::registry_names()) known = known || n == name;
    if (!known) throw pc::ConfigError("unknown fixture name: " + name);
    to_run.push_back(name);
  }
  const std::uint64_t seed = cfg.require_seed();

  pc::ReportBuilder rb;
  echo_config(rb, cfg);
  bool all_pass = true;
  std::string csv = "fixture,check,outcome\n";
  for (const auto& fixture : to_run) {
    pc::FixtureOutcome out = pc::run_registry_fixture(fixture, seed);
    rb.section("fixture " + out.name);
    for (const auto& [k, v] : out.rows) {
      rb.kv(k, v);
      if (k.rfind("check.", 0) == 0)
        csv += out.name + "," + k.substr(6) + "," + v + "\n";
    }
    rb.kv("pass", out.pass);
    all_pass = all_pass && out.pass;
  }
  provenance(rb, cfg, inv, pc::TailWindow{}, nullptr);
  return finish(rb, all_pass, inv, "examples-report.txt", csv, started, cfg);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarconv: asymptotic centers, convergence detectors, and "
               "fixed-point experiments over metric and normed spaces"};
  app.require_subcommand(1);

  Invocation inv;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"center", "estimate the asymptotic center and radius of a sequence"},
      {"classify", "run the delta / strong-delta / polar detectors"},
      {"extract", "extract a strongly delta-convergent subsequence"},
      {"sr-modulus", "estimate the rotundity modulus of a space"},
      {"fixedpoint", "run the fixed-point pipeline for a nonexpansive map"},
      {"duality", "verify duality-map invariants on random functions"},
      {"bl-check", "evaluate the norm-deficit inequality on an oscillation"},
      {"examples", "run named fixtures from the built-in registry"}};
  for (const auto& [name, blurb] : commands) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--config", inv.config_path, "experiment config file");
    sub->add_option("--out", inv.out_path, "report output path");
    sub->add_option("--format", inv.format, "report or csv")
        ->check(CLI::IsMember({"report", "csv"}));
    sub->add_option("--seed", inv.seed, "seed override")
        ->each([&](const std::string&) { inv.seed_given = true; });
    if (std::string(name) == "examples")
      sub->add_option("--name", inv.name, "registry fixture name");
    subs.emplace_back(std::string(name), sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string chosen;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) chosen = name;

  try {
    pc::ExperimentConfig cfg;
    if (!inv.config_path.empty()) {
      cfg = pc::ExperimentConfig::load(inv.config_path);
    } else if (chosen != "examples") {
      throw pc::ConfigError("--config is required for this subcommand");
    }
    if (inv.seed_given) cfg.override_seed(inv.seed);
    if (!cfg.has("seed")) {
      if (chosen == "examples")
        cfg.override_seed(1); // registry default: fixed, documented
      else
        throw pc::ConfigError("config: 'seed' is mandatory");
    }

    if (chosen == "center") return run_center(cfg, inv);
    if (chosen == "classify") return run_classify(cfg, inv);
    if (chosen == "extract") return run_extract(cfg, inv);
    if (chosen == "sr-modulus") return run_sr_modulus(cfg, inv);
    if (chosen == "fixedpoint") return run_fixedpoint(cfg, inv);
    if (chosen == "duality") return run_duality(cfg, inv);
    if (chosen == "bl-check") return run_bl_check(cfg, inv);
    if (chosen == "examples") return run_examples(cfg, inv);
    std::fprintf(stderr, "error: no subcommand selected\n");
    return 2;
  } catch (const pc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const pc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
