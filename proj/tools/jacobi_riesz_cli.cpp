// jacobi_riesz command line: eval a single quantity or verify a suite.
// exit codes: 0 pass, 1 assertion failure, 2 usage or domain error

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "jacobi_riesz/jacobi_riesz.hpp"

using namespace jacobi_riesz;

namespace {

// keys accepted as --key VALUE on both subcommands; anything else goes through --set
const std::vector<std::string> kKeys{"n",      "alpha",      "beta",  "x",       "theta",     "varphi",     "t",
                                     "a",      "b",          "J",     "eps",     "grid",      "d",          "l",
                                     "kind",   "manifold",   "p",     "trials",  "seed",      "N",          "tol",
                                     "rows",   "K",          "max_degree",       "radial_cap", "kernel_tol", "threads",
                                     "terms"};

struct Args {
  std::map<std::string, std::string> flags;
  std::vector<std::string> sets;
  std::string config, out;
};

void add_keys(CLI::App* cmd, Args& args) {
  for (const auto& k : kKeys) cmd->add_option("--" + k, args.flags[k], k);
  cmd->add_option("--set", args.sets, "extra key=value pairs")->take_all();
  cmd->add_option("--config", args.config, "key=value file; flags override it");
  cmd->add_option("--out", args.out, "directory for CSV output");
}

RunConfig build_config(CLI::App* cmd, const Args& args) {
  RunConfig cfg;
  if (!args.config.empty()) cfg = RunConfig::from_file(args.config);
  RunConfig flags;
  for (const auto& s : args.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigurationError("--set expects key=value, got " + s);
    flags.set(s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& k : kKeys)
    if (cmd->count("--" + k) > 0) flags.set(k, args.flags.at(k));
  cfg.merge(flags);
  (void)cfg.seed();  // reject a bad seed early
  return cfg;
}

std::vector<std::string> header_comments(const std::string& what, const RunConfig& cfg) {
  std::vector<std::string> c{what, "seed=" + std::to_string(cfg.seed())};
  for (const auto& [k, v] : cfg.kv)
    if (k != "seed") c.push_back(k + "=" + v);
  return c;
}

void save_tables(const std::string& dir, const std::string& prefix, std::vector<std::pair<std::string, CsvTable>>& tables,
                 const std::vector<std::string>& comments) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (auto& [stem, t] : tables) {
    auto all = comments;
    all.insert(all.end(), t.comments.begin(), t.comments.end());
    t.comments = all;
    t.save((std::filesystem::path(dir) / (prefix + "_" + stem + ".csv")).string());
  }
}

ManifoldParams manifold_from(const RunConfig& cfg) {
  const std::string m = cfg.str("manifold", "complex");
  if (m == "sphere") return ManifoldParams::sphere(cfg.integer("d", 2));
  if (m == "real-projective") return ManifoldParams::real_projective(cfg.integer("d", 2));
  if (m == "complex") return ManifoldParams::complex_projective(cfg.integer("l", 2));
  if (m == "quaternionic") return ManifoldParams::quaternionic_projective(cfg.integer("l", 2));
  if (m == "cayley") return ManifoldParams::cayley_plane();
  throw ConfigurationError("unknown manifold " + m);
}

double need(const RunConfig& cfg, const std::string& k) {
  if (!cfg.has(k)) throw ConfigurationError("missing --" + k);
  return cfg.num(k, 0.0);
}

CsvTable eval_subject(const std::string& subject, const RunConfig& cfg) {
  if (subject == "poly" || subject == "trig") {
    const int n = cfg.integer("n", -1);
    if (n < 0) throw ConfigurationError("--n must be a nonnegative integer");
    const JacobiParams p(cfg.num("alpha", 0.0), cfg.num("beta", 0.0));
    if (subject == "poly") {
      CsvTable t{{"n", "alpha", "beta", "x", "value"}};
      const double x = need(cfg, "x");
      t.add(n, p.alpha, p.beta, x, jacobi_poly(n, p, x));
      return t;
    }
    CsvTable t{{"n", "alpha", "beta", "theta", "value", "normalizer", "eigenvalue"}};
    const double th = need(cfg, "theta");
    t.add(n, p.alpha, p.beta, th, trig_poly(n, p, th), normalizer(n, p), eigenvalue(n, p));
    return t;
  }
  const JacobiParams p(cfg.num("alpha", 0.0), cfg.num("beta", 0.0));
  const double th = need(cfg, "theta"), ph = need(cfg, "varphi");
  if (subject == "poisson") {
    const double tt = need(cfg, "t");
    const auto s = poisson_series(tt, th, ph, p, cfg.integer("terms", 200));
    const auto c = poisson_integral_detailed(tt, th, ph, p);
    CsvTable t{{"t", "theta", "varphi", "alpha", "beta", "series", "integral", "abs_diff", "series_tail_bound",
                "integral_rel_change"}};
    t.add(tt, th, ph, p.alpha, p.beta, s.value, c.value, std::abs(s.value - c.value), s.truncation_bound, c.rel_change);
    return t;
  }
  KernelOptions opt;
  opt.rel_tol = cfg.tol("tol", opt.rel_tol);
  const auto b = evaluate_kernel_bundle(p, th, ph, opt);
  if (subject == "riesz-kernel") {
    CsvTable t{{"theta", "varphi", "alpha", "beta", "value", "rel_error"}};
    t.add(th, ph, p.alpha, p.beta, b.riesz, b.rel_error);
    return t;
  }
  if (subject == "t-kernel") {
    const auto mp = manifold_from(cfg);
    CsvTable t{{"theta", "varphi", "alpha", "beta", "manifold", "sqrt_rho", "value", "rel_error"}};
    t.add(th, ph, p.alpha, p.beta, cfg.str("manifold", "complex"), mp.sqrt_rho(th), mp.sqrt_rho(th) * b.time_integrated,
          b.rel_error);
    return t;
  }
  throw ConfigurationError("unknown eval subject " + subject);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi spectral operators, Riesz kernels and weighted estimates"};
  app.require_subcommand(1);

  Args ea, va;
  std::string subject, suite;
  auto* eval = app.add_subcommand("eval", "evaluate one quantity");
  eval->add_option("subject", subject, "poly, trig, poisson, riesz-kernel or t-kernel")
      ->required()
      ->check(CLI::IsMember({"poly", "trig", "poisson", "riesz-kernel", "t-kernel"}));
  add_keys(eval, ea);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites::suite_names()));
  add_keys(verify, va);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) {
      const auto cfg = build_config(eval, ea);
      auto t = eval_subject(subject, cfg);
      t.write(std::cout);
      std::vector<std::pair<std::string, CsvTable>> tabs{{subject, t}};
      save_tables(ea.out, "eval", tabs, header_comments("eval " + subject, cfg));
      return 0;
    }
    const auto cfg = build_config(verify, va);
    auto r = suites::run_suite(suite, cfg);
    for (const auto& n : r.notes) std::cout << n << '\n';
    save_tables(va.out, suite, r.tables, header_comments("verify " + suite, cfg));
    if (!r.passed) {
      std::cout << suite << ": FAIL: " << r.first_failure << '\n';
      return 1;
    }
    std::cout << suite << ": PASS\n";
    return 0;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy failure: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  }
}
