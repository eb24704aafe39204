#ifndef AIRYGAP_TOOLS_CLI_HPP
#define AIRYGAP_TOOLS_CLI_HPP

// Command-line front end. run() takes the argument list without the program
// name and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 numeric failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "airygap/airygap.hpp"

namespace airygap::cli {

using json = nlohmann::ordered_json;

inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace detail {

class argument_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CfgArgs {
  double a = -1, b = -2, c = -3, s = 1;
};

struct DetArgs {
  int nodes = 80;
  int max_nodes = 640;
  double tol = 1e-10;
  double tail_tol = 1e-14;
  bool no_refine = false;

  DetOptions options() const {
    DetOptions o;
    o.n_initial = nodes;
    o.n_max = max_nodes;
    o.target = tol;
    o.tail_tol = tail_tol;
    o.refine = !no_refine;
    return o;
  }
};

inline void add_cfg(CLI::App* app, CfgArgs& cfg, bool with_s = true) {
  app->add_option("-a", cfg.a, "right gap endpoint a (c < b < a < 0)");
  app->add_option("-b", cfg.b, "gap endpoint b");
  app->add_option("-c", cfg.c, "gap endpoint c");
  if (with_s) app->add_option("-s", cfg.s, "scale s > 0");
}

inline void add_det(CLI::App* app, DetArgs& d) {
  app->add_option("--nodes", d.nodes, "initial nodes per interval")->check(CLI::Range(4, 100000));
  app->add_option("--max-nodes", d.max_nodes, "node cap per interval")->check(CLI::Range(4, 100000));
  app->add_option("--tol", d.tol, "target node-doubling error")->check(CLI::PositiveNumber);
  app->add_option("--tail-tol", d.tail_tol, "tail tolerance for the semi-infinite interval")
      ->check(CLI::PositiveNumber);
  app->add_flag("--no-refine", d.no_refine, "evaluate at --nodes only");
}

inline GapConfig to_config(const CfgArgs& a) {
  GapConfig cfg;
  cfg.a = a.a;
  cfg.b = a.b;
  cfg.c = a.c;
  cfg.s = a.s;
  try {
    validate(cfg);
  } catch (const domain_error& e) {
    throw argument_error(e.what());
  }
  return cfg;
}

inline json cfg_json(const GapConfig& cfg) {
  return json{{"a", num(cfg.a)}, {"b", num(cfg.b)}, {"c", num(cfg.c)}, {"s", num(cfg.s)}};
}

inline json det_options_json(const DetOptions& o) {
  return json{{"nodes", o.n_initial}, {"max_nodes", o.n_max}, {"tol", num(o.target)}, {"tail_tol", num(o.tail_tol)},
              {"refine", o.refine}};
}

inline json logdet_json(const LogDetResult& r) {
  return json{{"log_det", num(r.log_det)},       {"det", num(std::exp(r.log_det))},
              {"n_nodes", r.n_nodes},            {"truncation_point", num(r.truncation_point)},
              {"est_error", num(r.est_error)},   {"converged", r.converged}};
}

inline json history_json(const LogDetResult& r) {
  json h = json::array();
  for (const auto& [n, l] : r.history) h.push_back(json{{"n", n}, {"log_det", num(l)}});
  return h;
}

inline json breakdown_json(const AsymptoticBreakdown& b) {
  return json{{"form", to_string(b.form)},           {"cubic_term", num(b.cubic_term)},
              {"log_term", num(b.log_term)},         {"theta_phase", num(b.theta_phase)},
              {"theta_term", num(b.theta_term)},     {"constant_term", num(b.constant_term)},
              {"total", num(b.total)}};
}

inline json constants_json(const EllipticData& ed, const AsymptoticConstants& k) {
  return json{{"alpha2", num(ed.alpha2)},      {"alpha2_star", num(k.alpha2_star)}, {"omega", num(ed.omega)},
              {"tau_imag", num(ed.tau.imag())}, {"chi", num(k.chi)},                {"chi1", num(k.chi1)},
              {"chi1_star", num(k.chi1_star)}, {"c_sine", num(k.c_sine)},          {"chi_airy", num(k.chi_airy)},
              {"zeta_prime_minus1", num(k.zeta_p)}};
}

inline json report_json(const CheckReport& r) {
  return json{{"name", r.name},
              {"kind", r.kind == CheckKind::exact ? "exact" : "asymptotic"},
              {"residual", num(r.residual)},
              {"tolerance", num(r.tolerance)},
              {"passed", r.passed},
              {"context", r.context}};
}

inline std::optional<AsymForm> parse_form(const std::string& f) {
  if (f == "theorem1") return AsymForm::theorem1;
  if (f == "remark1") return AsymForm::remark1;
  if (f == "remark3") return AsymForm::remark3;
  return std::nullopt;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw argument_error("cannot open output file: " + path);
  f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Wraps a numeric failure with the name of the step that produced it.
template <class F>
auto named(const std::string& step, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const consistency_error& e) {
    throw consistency_error(step + ": " + e.what());
  } catch (const numeric_failure& e) {
    throw numeric_failure(step + ": " + e.what());
  }
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Two-gap Airy-kernel determinants and their large-s expansion", "airygap"};
  app.require_subcommand(1, 1);

  std::string output = "json";
  std::string path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", output, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--out", path, "write to file instead of stdout");
  };

  CfgArgs cargs;
  DetArgs dargs;
  std::string form = "all";

  auto* det = app.add_subcommand("det", "log-determinant by Nystrom quadrature");
  add_cfg(det, cargs);
  add_det(det, dargs);
  common(det);

  auto* asym = app.add_subcommand("asym", "large-s expansion, term by term");
  add_cfg(asym, cargs);
  asym->add_option("--form", form, "theorem1, remark1, remark3 or all")
      ->check(CLI::IsMember({"theorem1", "remark1", "remark3", "all"}));
  common(asym);

  std::string cmp_form = "theorem1";
  auto* compare = app.add_subcommand("compare", "determinant, expansion and their difference");
  add_cfg(compare, cargs);
  add_det(compare, dargs);
  compare->add_option("--form", cmp_form, "expansion form")->check(CLI::IsMember({"theorem1", "remark1", "remark3"}));
  common(compare);

  std::uint64_t seed = 7;
  int n_configs = 50;
  bool skip_gates = false;
  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--seed", seed, "seed for sampled configurations");
  ver->add_option("--configs", n_configs, "number of sampled configurations")->check(CLI::Range(1, 100000));
  ver->add_flag("--skip-gates", skip_gates, "skip the determinant-vs-expansion gates");
  ver->add_option("-o,--out", path, "write to file instead of stdout");

  double s_from = 0.5, s_to = 4.0;
  int steps = 50;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "CSV of determinant and expansion over an s grid");
  add_cfg(sweep, cargs, false);
  add_det(sweep, dargs);
  sweep->add_option("--s-from", s_from, "first s")->check(CLI::PositiveNumber);
  sweep->add_option("--s-to", s_to, "last s")->check(CLI::PositiveNumber);
  sweep->add_option("--steps", steps, "number of intervals in the grid")->check(CLI::Range(1, 1000000));
  sweep->add_option("--threads", threads, "worker threads (0 = hardware)");
  sweep->add_option("--form", cmp_form, "expansion form")->check(CLI::IsMember({"theorem1", "remark1", "remark3"}));
  sweep->add_option("-o,--out", path, "write to file instead of stdout");

  double sep_c = -3, t0 = 2, t1 = 2, sep_gate = 0.02;
  std::vector<double> sep_s{50, 200};
  auto* sep = app.add_subcommand("separation", "splitting of the two-gap determinant");
  sep->add_option("-c", sep_c, "left endpoint c < 0");
  sep->add_option("--t0", t0, "gap parameter t0")->check(CLI::PositiveNumber);
  sep->add_option("--t1", t1, "gap parameter t1")->check(CLI::PositiveNumber);
  sep->add_option("--s", sep_s, "increasing list of s values")->expected(1, -1);
  sep->add_option("--gate", sep_gate, "residual gate at the largest s")->check(CLI::PositiveNumber);
  add_det(sep, dargs);
  common(sep);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (det->parsed()) {
      const GapConfig cfg = to_config(cargs);
      const DetOptions opt = dargs.options();
      const LogDetResult r = named("det_two_gap", [&] { return fredholm::det_two_gap(cfg, opt); });
      if (output == "csv") {
        std::ostringstream os;
        os << "a,b,c,s,log_det,n_nodes,truncation_point,est_error\n"
           << num(cfg.a) << ',' << num(cfg.b) << ',' << num(cfg.c) << ',' << num(cfg.s) << ',' << num(r.log_det) << ','
           << r.n_nodes << ',' << num(r.truncation_point) << ',' << num(r.est_error) << '\n';
        emit(os.str(), path, out);
      } else {
        json j{{"request", json{{"subcommand", "det"}, {"config", cfg_json(cfg)}, {"options", det_options_json(opt)}}},
               {"result", logdet_json(r)},
               {"diagnostics", json{{"kernel", "airy"}, {"history", history_json(r)}}}};
        emit(dump(j), path, out);
      }
      return 0;
    }

    if (asym->parsed()) {
      const GapConfig cfg = to_config(cargs);
      const EllipticData ed = named("elliptic_data", [&] { return geometry::elliptic_data(cfg); });
      const AsymptoticConstants k = named("constants", [&] { return asymptotics::constants(cfg, ed); });
      std::vector<AsymForm> forms;
      if (form == "all") forms = {AsymForm::theorem1, AsymForm::remark1, AsymForm::remark3};
      else forms = {*parse_form(form)};
      std::vector<AsymptoticBreakdown> bs;
      for (AsymForm f : forms) bs.push_back(named("two_gap_asym", [&] { return asymptotics::two_gap_asym(cfg, ed, k, f); }));
      double spread = 0;
      for (const auto& x : bs)
        for (const auto& y : bs) spread = std::max(spread, std::abs(x.total - y.total));
      if (output == "csv") {
        std::ostringstream os;
        os << "form,cubic_term,log_term,theta_phase,theta_term,constant_term,total\n";
        for (const auto& b : bs)
          os << to_string(b.form) << ',' << num(b.cubic_term) << ',' << num(b.log_term) << ',' << num(b.theta_phase)
             << ',' << num(b.theta_term) << ',' << num(b.constant_term) << ',' << num(b.total) << '\n';
        emit(os.str(), path, out);
      } else {
        json fj = json::object();
        for (const auto& b : bs) fj[to_string(b.form)] = breakdown_json(b);
        json j{{"request", json{{"subcommand", "asym"}, {"config", cfg_json(cfg)}, {"form", form}}},
               {"result", json{{"forms", fj}}},
               {"diagnostics", json{{"constants", constants_json(ed, k)}, {"max_form_difference", num(spread)}}}};
        emit(dump(j), path, out);
      }
      return 0;
    }

    if (compare->parsed()) {
      const GapConfig cfg = to_config(cargs);
      const DetOptions opt = dargs.options();
      const AsymForm f = *parse_form(cmp_form);
      const EllipticData ed = named("elliptic_data", [&] { return geometry::elliptic_data(cfg); });
      const auto b = named("two_gap_asym", [&] { return asymptotics::two_gap_asym(cfg, ed, f); });
      const LogDetResult r = named("det_two_gap", [&] { return fredholm::det_two_gap(cfg, opt); });
      const double diff = r.log_det - b.total;
      if (output == "csv") {
        std::ostringstream os;
        os << "s,log_det,asym_total,difference,est_error\n"
           << num(cfg.s) << ',' << num(r.log_det) << ',' << num(b.total) << ',' << num(diff) << ','
           << num(r.est_error) << '\n';
        emit(os.str(), path, out);
      } else {
        json j{{"request", json{{"subcommand", "compare"}, {"config", cfg_json(cfg)}, {"form", cmp_form},
                                {"options", det_options_json(opt)}}},
               {"result", json{{"log_det", num(r.log_det)}, {"asym_total", num(b.total)}, {"difference", num(diff)}}},
               {"diagnostics", json{{"determinant", logdet_json(r)}, {"breakdown", breakdown_json(b)}}}};
        emit(dump(j), path, out);
      }
      return 0;
    }

    if (ver->parsed()) {
      std::vector<CheckReport> reports;
      for (auto& r : named("identity suite", [&] { return verify::run_identity_suite(seed, n_configs); }))
        reports.push_back(std::move(r));
      for (auto& r : named("derivative suite", [&] { return verify::run_derivative_suite(seed); }))
        reports.push_back(std::move(r));
      for (auto& r : named("form suite", [&] { return verify::run_form_suite(seed); })) reports.push_back(std::move(r));
      if (!skip_gates) {
        GapConfig base;
        reports.push_back(named("theorem1 gate", [&] { return verify::check_theorem1(base, {1.5, 2.5, 3.5}).report; }));
        reports.push_back(named("separation gate", [&] { return verify::check_separation({50, 200}, 2, 2, -3).report; }));
      }
      int exact_failed = 0, gate_failed = 0;
      json checks = json::array();
      for (const auto& r : reports) {
        if (!r.passed) (r.kind == CheckKind::exact ? exact_failed : gate_failed)++;
        checks.push_back(report_json(r));
      }
      json j{{"request", json{{"subcommand", "verify"}, {"seed", seed}, {"configs", n_configs},
                              {"gates", !skip_gates}}},
             {"result", json{{"passed", exact_failed == 0}, {"n_checks", reports.size()},
                             {"exact_failed", exact_failed}, {"asymptotic_failed", gate_failed}}},
             {"diagnostics", json{{"checks", checks}}}};
      emit(dump(j), path, out);
      return exact_failed == 0 ? 0 : 1;
    }

    if (sweep->parsed()) {
      cargs.s = s_from;
      GapConfig base = to_config(cargs);
      if (!(s_to > s_from)) throw argument_error("sweep: need --s-to > --s-from");
      const DetOptions opt = dargs.options();
      const AsymForm f = *parse_form(cmp_form);
      const EllipticData ed = named("elliptic_data", [&] { return geometry::elliptic_data(base); });
      const AsymptoticConstants k = named("constants", [&] { return asymptotics::constants(base, ed); });
      const int npts = steps + 1;
      std::vector<std::string> rows(static_cast<std::size_t>(npts));
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(npts));
      std::atomic<int> next{0};
      auto worker = [&] {
        for (int i = next++; i < npts; i = next++) {
          try {
            GapConfig cfg = base;
            cfg.s = s_from + (s_to - s_from) * double(i) / double(steps);
            const auto b = asymptotics::two_gap_asym(cfg, ed, k, f);
            const auto r = fredholm::det_two_gap(cfg, opt);
            std::ostringstream os;
            os << num(cfg.s) << ',' << num(r.log_det) << ',' << num(r.est_error) << ',' << num(b.total) << ','
               << num(b.cubic_term) << ',' << num(b.log_term) << ',' << num(b.theta_phase) << ','
               << num(b.theta_term) << ',' << num(b.constant_term) << ',' << num(r.log_det - b.total) << '\n';
            rows[static_cast<std::size_t>(i)] = os.str();
          } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
          }
        }
      };
      unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
      nt = std::min<unsigned>(nt, static_cast<unsigned>(npts));
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (const auto& e : errors)
        if (e) named("sweep", [&] { std::rethrow_exception(e); return 0; });
      std::string text = "s,log_det,est_error,asym_total,cubic_term,log_term,theta_phase,theta_term,constant_term,difference\n";
      for (const auto& r : rows) text += r;
      emit(text, path, out);
      return 0;
    }

    if (sep->parsed()) {
      if (!(sep_c < 0)) throw argument_error("separation: need c < 0");
      for (std::size_t i = 1; i < sep_s.size(); ++i)
        if (!(sep_s[i] > sep_s[i - 1])) throw argument_error("separation: --s values must increase");
      const DetOptions opt = dargs.options();
      verify::SeparationReport rep;
      try {
        rep = named("check_separation", [&] { return verify::check_separation(sep_s, t0, t1, sep_c, sep_gate, opt); });
      } catch (const domain_error& e) {
        throw argument_error(e.what());
      }
      if (output == "csv") {
        std::ostringstream os;
        os << "s,a,b,log_det_two_gap,log_det_sine,log_det_airy,residual\n";
        for (const auto& p : rep.points)
          os << num(p.s) << ',' << num(p.cfg.a) << ',' << num(p.cfg.b) << ',' << num(p.two_gap.log_det) << ','
             << num(p.sine.log_det) << ',' << num(p.airy.log_det) << ',' << num(p.residual) << '\n';
        emit(os.str(), path, out);
      } else {
        json pts = json::array();
        for (const auto& p : rep.points) {
          const auto dsep = asymptotics::separation_D(sep_c, p.s, t0, t1);
          pts.push_back(json{{"s", num(p.s)},
                             {"config", cfg_json(p.cfg)},
                             {"log_det_two_gap", num(p.two_gap.log_det)},
                             {"log_det_sine", num(p.sine.log_det)},
                             {"log_det_airy", num(p.airy.log_det)},
                             {"residual", num(p.residual)},
                             {"est_error", num(std::max({p.two_gap.est_error, p.sine.est_error, p.airy.est_error}))},
                             {"D_exact", num(dsep.exact)},
                             {"D_expansion", num(dsep.expansion)}});
        }
        json j{{"request", json{{"subcommand", "separation"}, {"c", num(sep_c)}, {"t0", num(t0)}, {"t1", num(t1)},
                                {"gate", num(sep_gate)}}},
               {"result", json{{"passed", rep.report.passed}, {"points", pts}}},
               {"diagnostics", json{{"check", report_json(rep.report)}}}};
        emit(dump(j), path, out);
      }
      return rep.report.passed ? 0 : 1;
    }
  } catch (const argument_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_failure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

} // namespace airygap::cli

#endif
