#include "landau/commands.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "landau/config.hpp"
#include "landau/errors.hpp"
#include "landau/projections.hpp"
#include "landau/report_io.hpp"

namespace landau {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::get("landau");
    if (!l) l = spdlog::stderr_color_mt("landau");
    const char* env = std::getenv("LANDAU_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return log;
}

struct Context {
  RunConfig cfg;
  std::filesystem::path out_dir;
  Provenance prov;
  std::vector<int> qs;
};

Context load(const CommandOptions& opt) {
  Context c{load_config(opt.config), {}, {}, {}};
  c.out_dir = opt.out.value_or(c.cfg.output);
  c.qs = opt.q.value_or(c.cfg.q);
  for (int q : c.qs)
    if (q < 0) throw ConfigError("--q must list nonnegative integers");
  c.prov = Provenance{config_hash(c.cfg.source), c.cfg.R, c.cfg.h, c.cfg.channel_cutoff()};
  logger()->info("config {} (hash {}), output {}", opt.config.string(), c.prov.hash, c.out_dir.string());
  return c;
}

std::string render(const std::function<void(std::ostream&)>& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const TrustRegionEmpty& e) {
    err << "TrustRegionEmpty: " << e.what() << '\n';
    return exit_verification_failed;
  } catch (const InconsistentProvenance& e) {
    err << "inconsistent provenance: " << e.what() << '\n';
    return exit_numeric_failure;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric_failure;
  } catch (const nlohmann::json::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  }
}

// Top-quartile positive eigenvalues of `model` against the positive `reference`
// values, rank for rank; returns the worst relative deviation.
double top_quartile_deviation(std::vector<double> model, std::vector<double> reference) {
  std::sort(model.begin(), model.end(), std::greater<>());
  std::sort(reference.begin(), reference.end(), std::greater<>());
  const std::size_t k = std::min(model.size(), reference.size()) / 4;
  if (k == 0) return std::numeric_limits<double>::quiet_NaN();
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    worst = std::max(worst, std::abs(model[i] - reference[i]) / std::abs(reference[i]));
  return worst;
}

std::vector<double> positive(const std::vector<double>& xs) {
  std::vector<double> out;
  for (double x : xs)
    if (x > 0.0) out.push_back(x);
  return out;
}

SpectrumProblem cluster_problem(const RunConfig& cfg, int q, bool with_V) {
  SpectrumProblem p = cfg.spectrum_problem();
  p.kind = OperatorKind::pauli_minus;
  p.m_min = -q - 1;
  p.e_max = landau_level(q, cfg.B0) + cfg.B0;
  if (!with_V) p.V = FieldSpec{};
  return p;
}

}  // namespace

int cmd_spectrum(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ctx = load(opt);
    const auto table = solve_spectrum(ctx.cfg.spectrum_problem(), opt.threads);
    write_file(ctx.out_dir, "spectrum.csv",
               render([&](std::ostream& os) { write_spectrum_report(os, ctx.prov, table); }));
    nlohmann::json clusters = nlohmann::json::array();
    for (int q : ctx.qs) {
      const auto w = make_window(table, q, ctx.cfg.B0, ctx.cfg.gamma);
      const auto shifts = cluster_shifts(table, w);
      double lo = 0.0, hi = 0.0;
      if (!shifts.empty()) {
        lo = *std::min_element(shifts.begin(), shifts.end());
        hi = *std::max_element(shifts.begin(), shifts.end());
      }
      clusters.push_back({{"q", q}, {"level", w.level}, {"multiplicity", shifts.size()},
                          {"min_shift", lo}, {"max_shift", hi}});
      if (!opt.json) {
        out << "q=" << q << "  level=" << w.level << "  multiplicity=" << shifts.size()
            << "  shifts in [" << lo << ", " << hi << "]\n";
      }
    }
    int flagged = 0;
    for (const auto& r : table.rows) flagged += r.boundary ? 1 : 0;
    nlohmann::json summary{{"config_hash", ctx.prov.hash},
                           {"operator", std::string(to_string(table.kind))},
                           {"eigenvalues", table.rows.size()},
                           {"boundary_flagged", flagged},
                           {"clusters", clusters}};
    write_file(ctx.out_dir, "spectrum_summary.json", summary.dump(2) + "\n");
    if (opt.json) {
      out << summary.dump(2) << '\n';
    } else {
      out << table.rows.size() << " eigenvalues (" << flagged << " boundary-flagged) written to "
          << (ctx.out_dir / "spectrum.csv").string() << '\n';
    }
    return int{exit_pass};
  });
}

int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ctx = load(opt);
    const auto& cfg = ctx.cfg;
    nlohmann::json checks = nlohmann::json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, nlohmann::json detail) {
      detail["check"] = name;
      detail["pass"] = pass;
      checks.push_back(detail);
      all_pass = all_pass && pass;
      if (!opt.json) out << (pass ? "PASS " : "FAIL ") << name << "  " << detail.dump() << '\n';
    };

    for (int q : ctx.qs) {
      const auto vc = cfg.verification(q);
      const auto W = effective_weight(cfg.V, cfg.b, q, cfg.B0, false);
      const bool empty_weight = cfg.V.is_zero() && (q == 0 || cfg.b.is_zero());
      const std::string tag = "q=" + std::to_string(q);

      if (empty_weight) {
        // The cluster must stay at the level: nothing to count.
        const auto table = solve_spectrum(cluster_problem(cfg, q, true), opt.threads);
        const auto w = make_window(table, q, cfg.B0, cfg.gamma);
        double worst = 0.0;
        for (double s : cluster_shifts(table, w)) worst = std::max(worst, std::abs(s));
        record("empty_cluster " + tag, worst < 1e-6, {{"max_abs_shift", worst}});
        continue;
      }

      const auto rep = cluster_asymptotics_report(vc, cfg.kind);
      write_file(ctx.out_dir, "counting_q" + std::to_string(q) + ".csv",
                 render([&](std::ostream& os) { write_counting_report(os, ctx.prov, rep); }));
      if (rep.trust_empty) {
        err << "TrustRegionEmpty: q=" << q << ": " << rep.limiting_constraint << '\n';
        record("counting " + tag, false, to_json(rep));
        continue;
      }
      record("counting " + tag, rep.pass, to_json(rep));

      const auto up = upper_estimate_check(rep, cfg.exponent_tol);
      record("exponent " + tag, up.pass,
             {{"fitted", up.fitted_exponent}, {"target", up.target_exponent}, {"tol", cfg.exponent_tol}});

      if (q >= 1) {
        const auto base = solve_spectrum(cluster_problem(cfg, q, false), opt.threads);
        const auto w0 = make_window(base, q, cfg.B0, cfg.gamma);
        const auto gauge = build_gauge(cfg.b, cfg.B0, base.mesh);
        const auto Tq = build_Tq(q, cfg.V, base, w0, gauge);
        write_file(ctx.out_dir, "toeplitz_q" + std::to_string(q) + ".csv",
                   render([&](std::ostream& os) { write_toeplitz_report(os, ctx.prov, Tq); }));
        std::vector<double> shifts;
        if (cfg.V.is_zero()) {
          shifts = cluster_shifts(base, w0);
        } else {
          const auto full = solve_spectrum(cluster_problem(cfg, q, true), opt.threads);
          shifts = cluster_shifts(full, make_window(full, q, cfg.B0, cfg.gamma));
        }
        const double s = sign_value(cfg.sign);
        std::vector<double> model, ref;
        for (double x : Tq.eigenvalues()) model.push_back(s * x);
        for (double x : shifts) ref.push_back(s * x);
        const double dev = top_quartile_deviation(positive(model), positive(ref));
        record("toeplitz " + tag, std::isfinite(dev) && dev <= cfg.toeplitz_tol,
               {{"top_quartile_rel_dev", std::isfinite(dev) ? nlohmann::json(dev) : nlohmann::json()},
                {"tol", cfg.toeplitz_tol}});
      }
      (void)W;
    }

    {
      const auto mesh = RadialMesh::from_radius(cfg.R, cfg.h);
      auto gauge = std::make_shared<const GaugeData>(build_gauge(cfg.b, cfg.B0, mesh));
      const auto basis = make_zero_mode_basis(gauge, cfg.basis_modes - 1);
      const auto res = gram_identity_residual(1, basis, cfg.b, cfg.B0);
      record("gram_identity q=1", res.max_entry() < cfg.gram_tol,
             {{"max_entry", res.max_entry()}, {"frobenius", res.frobenius()}, {"tol", cfg.gram_tol}});
    }

    nlohmann::json summary{{"config_hash", ctx.prov.hash},
                           {"mesh", {{"R", cfg.R}, {"h", cfg.h}, {"M", cfg.channel_cutoff()}}},
                           {"checks", checks},
                           {"pass", all_pass}};
    write_file(ctx.out_dir, "summary.json", summary.dump(2) + "\n");
    if (opt.json) out << summary.dump(2) << '\n';
    return all_pass ? int{exit_pass} : int{exit_verification_failed};
  });
}

int cmd_weights(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ctx = load(opt);
    const auto& cfg = ctx.cfg;
    nlohmann::json reports = nlohmann::json::array();
    bool all_pass = true;
    for (int q : ctx.qs) {
      const auto W = effective_weight(cfg.V, cfg.b, q, cfg.B0, false);
      double peak = 0.0;
      for (double r = 0.0; r <= 50.0; r += 0.01) peak = std::max(peak, std::abs(W(r)));
      const double hi = cfg.lambda_max.value_or(peak > 0.0 ? peak : 1.0);
      const double lo = cfg.lambda_min.value_or(hi * 1e-4);
      const auto grid = log_grid(lo, hi, cfg.per_decade);
      write_file(ctx.out_dir, "weights_q" + std::to_string(q) + ".csv",
                 render([&](std::ostream& os) { write_weight_table(os, ctx.prov, W, grid); }));

      nlohmann::json rj{{"q", q}};
      for (Sign s : {Sign::plus, Sign::minus}) {
        const char* key = s == Sign::plus ? "plus" : "minus";
        if (grid.empty() || counting_measure(W, grid.front(), s) == 0.0) {
          rj[key] = "empty";
          continue;
        }
        // The condition concerns λ → 0: probe the lowest two decades of the grid.
        std::vector<double> usable;
        for (double l : grid)
          if (l <= 100.0 * grid.front() && counting_measure(W, l, s) > 0.0) usable.push_back(l);
        const auto reg = check_regularity(W, usable, 0.05, s);
        rj[key] = to_json(reg);
        all_pass = all_pass && reg.pass;
        if (!opt.json)
          out << "q=" << q << " sign " << (s == Sign::plus ? '+' : '-') << ": regularity "
              << (reg.pass ? "pass" : "FAIL") << " (max ratio " << reg.max_ratio << ", exponent "
              << reg.fitted_exponent << " vs " << reg.target_exponent << ")\n";
      }
      reports.push_back(rj);
    }
    nlohmann::json summary{{"config_hash", ctx.prov.hash}, {"weights", reports}, {"pass", all_pass}};
    write_file(ctx.out_dir, "weights_summary.json", summary.dump(2) + "\n");
    if (opt.json) out << summary.dump(2) << '\n';
    return all_pass ? int{exit_pass} : int{exit_verification_failed};
  });
}

int cmd_toeplitz(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ctx = load(opt);
    const auto& cfg = ctx.cfg;
    nlohmann::json reports = nlohmann::json::array();
    const auto mesh = RadialMesh::from_radius(cfg.R, cfg.h);
    auto gauge = std::make_shared<const GaugeData>(build_gauge(cfg.b, cfg.B0, mesh));
    const auto basis = make_zero_mode_basis(gauge, cfg.channel_cutoff());
    for (int q : ctx.qs) {
      const auto table = solve_spectrum(cluster_problem(cfg, q, false), opt.threads);
      const auto w = make_window(table, q, cfg.B0, cfg.gamma);
      const auto Tq = build_Tq(q, cfg.V, table, w, *gauge);
      const auto T0 = build_T0(q, cfg.V, cfg.b, basis, cfg.calibrate);
      const std::string stem = "toeplitz_q" + std::to_string(q);
      write_file(ctx.out_dir, stem + ".csv",
                 render([&](std::ostream& os) { write_toeplitz_report(os, ctx.prov, Tq); }));
      write_file(ctx.out_dir, stem + "_zero_modes.csv",
                 render([&](std::ostream& os) { write_toeplitz_report(os, ctx.prov, T0); }));
      auto t0 = T0.eigenvalues();
      const double inv_Cq = 1.0 / landau_constant(q, cfg.B0);
      for (double& x : t0) x *= inv_Cq;
      nlohmann::json rj{{"config_hash", ctx.prov.hash},
                        {"q", q},
                        {"cluster_form", Tq.eigenvalues()},
                        {"zero_mode_form_scaled", t0},
                        {"top_quartile_rel_dev", top_quartile_deviation(positive(t0), positive(Tq.eigenvalues()))}};
      write_file(ctx.out_dir, stem + ".json", rj.dump(2) + "\n");
      reports.push_back({{"q", q}, {"dimension", Tq.T.rows()}, {"top_quartile_rel_dev", rj["top_quartile_rel_dev"]}});
      if (!opt.json)
        out << "q=" << q << ": T_q on " << Tq.T.rows() << " cluster states, T_0 on " << T0.T.rows()
            << " zero modes, top-quartile deviation " << rj["top_quartile_rel_dev"].dump() << '\n';
    }
    if (opt.json) out << nlohmann::json{{"config_hash", ctx.prov.hash}, {"toeplitz", reports}}.dump(2) << '\n';
    return int{exit_pass};
  });
}

int cmd_identities(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ctx = load(opt);
    const auto& cfg = ctx.cfg;
    const auto mesh = RadialMesh::from_radius(cfg.R, cfg.h);
    auto gauge = std::make_shared<const GaugeData>(build_gauge(cfg.b, cfg.B0, mesh));
    const auto basis = make_zero_mode_basis(gauge, cfg.basis_modes - 1);
    nlohmann::json rows = nlohmann::json::array();
    bool pass = true;
    for (int q : ctx.qs) {
      if (q < 1) continue;
      const auto g = gram_identity_residual(q, basis, cfg.b, cfg.B0);
      nlohmann::json rj{{"q", q}, {"gram_max_entry", g.max_entry()}, {"gram_frobenius", g.frobenius()}};
      if (!cfg.V.is_zero()) {
        const auto u = weighted_identity_residual(q, basis, cfg.V, cfg.b, cfg.B0);
        rj["weighted_max_entry"] = u.max_entry();
        rj["weighted_frobenius"] = u.frobenius();
      }
      if (q == 1) {
        rj["tol"] = cfg.gram_tol;
        pass = pass && g.max_entry() < cfg.gram_tol;
      }
      rows.push_back(rj);
      if (!opt.json) out << "q=" << q << ": " << rj.dump() << '\n';
    }
    nlohmann::json summary{{"config_hash", ctx.prov.hash}, {"identities", rows}, {"pass", pass}};
    write_file(ctx.out_dir, "identities.json", summary.dump(2) + "\n");
    if (opt.json) out << summary.dump(2) << '\n';
    return pass ? int{exit_pass} : int{exit_verification_failed};
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau-level cluster verification"};
  app.require_subcommand(1);
  CommandOptions opt;
  std::string out_dir;
  std::vector<int> qs;

  using Handler = int (*)(const CommandOptions&, std::ostream&, std::ostream&);
  const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> commands{
      {"spectrum", {"Channel spectra and cluster summary", &cmd_spectrum}},
      {"verify", {"Full verification chain with acceptance bands", &cmd_verify}},
      {"weights", {"Counting measures and regularity, no eigensolve", &cmd_weights}},
      {"toeplitz", {"Toeplitz-type matrices and their eigenvalues", &cmd_toeplitz}},
      {"identities", {"Zero-mode Gram identities", &cmd_identities}},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, info] : commands) {
    auto* sub = app.add_subcommand(name, info.first);
    sub->add_option("--config", opt.config, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides the config)");
    sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    sub->add_flag("--json", opt.json, "Print only the machine-readable summary");
    sub->add_option("--q", qs, "Landau indices (overrides the config)")->delimiter(',');
    subs.emplace_back(sub, info.second);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_pass;
    }
    err << e.what() << '\n' << app.help();
    return exit_config_error;
  }
  if (!out_dir.empty()) opt.out = out_dir;
  if (!qs.empty()) opt.q = qs;
  for (const auto& [sub, handler] : subs)
    if (sub->parsed()) return handler(opt, out, err);
  return exit_config_error;
}

}  // namespace landau
