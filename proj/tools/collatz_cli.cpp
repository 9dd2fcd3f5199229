#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "collatz/errors.hpp"
#include "collatz/json_io.hpp"

using namespace collatz;

namespace {

struct GlobalConfig {
  std::string weight = "bergman";
  double budget = 1.0;
  std::uint64_t seed = 12345;
  std::string format = "json";
};

/// Defaults may come from a JSON config file named by COLLATZOP_CONFIG.
GlobalConfig load_config() {
  GlobalConfig cfg;
  const char* path = std::getenv("COLLATZOP_CONFIG");
  if (!path) return cfg;
  std::ifstream in(path);
  if (!in) return cfg;
  try {
    json j = json::parse(in);
    if (j.contains("weight")) cfg.weight = j["weight"].is_string()
                                               ? j["weight"].get<std::string>()
                                               : j["weight"].dump();
    cfg.budget = j.value("budget", cfg.budget);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.format = j.value("format", cfg.format);
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring malformed config " << path << ": " << e.what() << "\n";
  }
  return cfg;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::size_t scaled(double base, double mult) {
  double v = base * mult;
  return v < 1 ? 1 : static_cast<std::size_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  GlobalConfig cfg = load_config();

  CLI::App app{"Transfer operator laboratory for the accelerated Collatz map on "
               "weighted coefficient spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string weight_text = cfg.weight;
  double budget = cfg.budget;
  std::uint64_t seed = cfg.seed;
  std::string format = cfg.format;
  app.add_option("--weight", weight_text,
                 "weight family: 'bergman', inline JSON, or @file.json");
  app.add_option("--budget", budget, "multiplier applied to iteration/node budgets");
  app.add_option("--seed", seed, "seed for randomized subcommands");
  app.add_option("--format", format, "output format: json or csv (where applicable)");

  int rc = 0;
  auto guard = [&rc](auto&& fn) {
    return [&rc, fn]() {
      try {
        fn();
      } catch (const PredicateError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        rc = 2;
      } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what()
                  << " (completed " << e.partial_count << ")\n";
        rc = 3;
      }
    };
  };

  // ---- collatz ---------------------------------------------------------
  auto* collatz_cmd = app.add_subcommand("collatz", "orbits and preimages of the map");

  {
    auto* c = collatz_cmd->add_subcommand("orbit", "iterate until death, repeat, or budget");
    auto k = std::make_shared<std::string>("3");
    c->add_option("--k", *k, "starting degree (>= 3)")->required();
    c->callback(guard([k, &budget]() {
      emit(orbit_report_to_json(orbit(Integer(*k), scaled(10000, budget))));
    }));
  }
  {
    auto* c = collatz_cmd->add_subcommand("preimages", "preimage set, optionally n levels");
    auto k = std::make_shared<std::string>();
    auto n = std::make_shared<unsigned>(1);
    c->add_option("--k", *k, "degree (>= 3)")->required();
    c->add_option("--n", *n, "tree depth");
    c->callback(guard([k, n, &budget]() {
      json out = json::array();
      for (const Integer& j : preimage_tree(Integer(*k), *n, scaled(1000000, budget)))
        out.push_back(degree_to_json(j));
      emit({{"k", *k}, {"n", *n}, {"preimages", out}});
    }));
  }
  {
    auto* c = collatz_cmd->add_subcommand("sequences", "division-chain sequences of k");
    auto k = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("density");
    c->add_option("--k", *k, "degree (>= 3, not a power of two)")->required();
    c->add_option("--mode", *mode, "density or adjoint")->check(CLI::IsMember({"density", "adjoint"}));
    c->callback(guard([k, mode, &budget]() {
      LemmaMode m = *mode == "adjoint" ? LemmaMode::adjoint : LemmaMode::density;
      emit(lemma_sequences_to_json(lemma_sequences(Integer(*k), m, scaled(10000, budget))));
    }));
  }

  // ---- norm ------------------------------------------------------------
  auto* norm_cmd = app.add_subcommand("norm", "iterate norms of the transfer operator");

  {
    auto* c = norm_cmd->add_subcommand("scan", "lower-bound scan over target degrees");
    auto n = std::make_shared<unsigned>(1);
    auto kmax = std::make_shared<std::string>("1000");
    c->add_option("--n", *n, "iterate count")->required();
    c->add_option("--k-max", *kmax, "scan bound");
    c->callback(guard([n, kmax, &weight_text, &budget]() {
      Weight w = weight_from_cli(weight_text);
      ScanOptions opts;
      opts.tree_budget = scaled(1000000, budget);
      emit(norm_report_to_json(iterate_norm_scan(w, *n, Integer(*kmax), opts)));
    }));
  }
  {
    auto* c = norm_cmd->add_subcommand("exact", "exact ||T^n||^2 (Bergman weight)");
    auto n = std::make_shared<unsigned>(1);
    c->add_option("--n", *n, "iterate count")->required();
    c->callback(guard([n, &weight_text]() {
      Weight w = weight_from_cli(weight_text);
      if (w.family() != WeightFamily::classic_bergman)
        throw PredicateError("norm exact: the closed-form recursion covers the Bergman "
                             "weight only; use norm scan for lower bounds");
      if (*n >= 8)
        std::fprintf(stderr, "note: ~%.0f polynomials across %.0f residues\n",
                     estimated_poly_count(*n), std::pow(3.0, *n));
      ExactNormReport rep = exact_iterate_norm_report(*n);
      emit({{"n", rep.n},
            {"norm_sq", format_rational(rep.value)},
            {"best_residue", degree_to_json(rep.best_r)},
            {"total_polys", rep.total_polys},
            {"duplicate_count", rep.duplicate_count}});
    }));
  }
  {
    auto* c = norm_cmd->add_subcommand("table", "spectral-radius bracket table");
    auto nmax = std::make_shared<unsigned>(4);
    c->add_option("--n-max", *nmax, "largest iterate")->required();
    c->callback(guard([nmax, &weight_text, &format]() {
      Weight w = weight_from_cli(weight_text);
      if (w.family() != WeightFamily::classic_bergman)
        throw PredicateError("norm table: exact values cover the Bergman weight only");
      if (*nmax >= 8)
        std::fprintf(stderr, "note: ~%.0f polynomials at the last row\n",
                     estimated_poly_count(*nmax));
      SpectralBoundTable t = spectral_radius_table(*nmax);
      if (format == "csv")
        std::cout << spectral_table_csv(t);
      else
        emit(spectral_table_to_json(t));
    }));
  }
  {
    auto* c = norm_cmd->add_subcommand("bound", "boundedness verdict and ||T||^2");
    auto mmax = std::make_shared<std::string>("10000");
    c->add_option("--m-max", *mmax, "scan bound for the three sequences");
    c->callback(guard([mmax, &weight_text]() {
      Weight w = weight_from_cli(weight_text);
      emit(boundedness_report_to_json(bounded_on(w, Integer(*mmax))));
    }));
  }

  // ---- eig -------------------------------------------------------------
  auto* eig_cmd = app.add_subcommand("eig", "eigenvector fields and spectra");

  {
    auto* c = eig_cmd->add_subcommand("materialize", "truncate a field with tail bound");
    auto m = std::make_shared<unsigned>(0);
    auto mu = std::make_shared<std::string>("1/2");
    auto cap = std::make_shared<std::string>("16384");
    c->add_option("--m", *m, "field index")->required();
    c->add_option("--mu", *mu, "eigenvalue, rational complex")->required();
    c->add_option("--cap", *cap, "degree cap");
    c->callback(guard([m, mu, cap, &weight_text]() {
      Weight w = weight_from_cli(weight_text);
      EigenSpec spec{*m, parse_rational_complex(*mu), Integer(*cap)};
      emit(materialized_to_json(materialize(spec, w)));
    }));
  }
  {
    auto* c = eig_cmd->add_subcommand("verify", "exact eigen-relation residual");
    auto m = std::make_shared<unsigned>(0);
    auto mu = std::make_shared<std::string>("1/2");
    auto cap = std::make_shared<std::string>("16384");
    c->add_option("--m", *m, "field index")->required();
    c->add_option("--mu", *mu, "eigenvalue, rational complex")->required();
    c->add_option("--cap", *cap, "degree cap");
    c->callback(guard([m, mu, cap]() {
      EigenSpec spec{*m, parse_rational_complex(*mu), Integer(*cap)};
      emit(eigen_residual_to_json(verify_eigenrelation(spec)));
    }));
  }
  {
    auto* c = eig_cmd->add_subcommand("periodic", "periodic vector at mu = exp(i pi alpha)");
    auto m = std::make_shared<unsigned>(0);
    auto alpha = std::make_shared<std::string>("1/2");
    auto cap = std::make_shared<std::string>("16384");
    c->add_option("--m", *m, "field index")->required();
    c->add_option("--alpha", *alpha, "rational multiple of pi")->required();
    c->add_option("--cap", *cap, "degree cap");
    c->callback(guard([m, alpha, cap]() {
      emit(periodic_point_to_json(periodic_point(*m, parse_rational(*alpha), Integer(*cap))));
    }));
  }
  {
    auto* c = eig_cmd->add_subcommand("witnesses", "certified eigenvalue grids");
    auto rho = std::make_shared<std::string>("2");
    auto mmax = std::make_shared<unsigned>(3);
    auto cap = std::make_shared<std::string>("16384");
    c->add_option("--rho", *rho, "dyadic growth bound to certify against");
    c->add_option("--m-max", *mmax, "largest field index");
    c->add_option("--cap", *cap, "degree cap stored in the specs");
    c->callback(guard([rho, mmax, cap, &weight_text]() {
      Weight w = weight_from_cli(weight_text);
      emit(witness_report_to_json(
          godefroy_shapiro_witnesses(w, parse_rational(*rho), *mmax, Integer(*cap))));
    }));
  }
  {
    auto* c = eig_cmd->add_subcommand("span", "distance from z^k to a span of fields");
    auto k = std::make_shared<std::string>();
    auto specs = std::make_shared<std::string>();
    c->add_option("--target-degree", *k, "monomial degree k")->required();
    c->add_option("--specs", *specs, "JSON file with an array of field specs")->required();
    c->callback(guard([k, specs, &weight_text]() {
      Weight w = weight_from_cli(weight_text);
      std::vector<EigenSpec> family;
      for (const json& j : load_json_file(*specs)) family.push_back(eigen_spec_from_json(j));
      emit(span_residual_to_json(span_residual(Integer(*k), family, w)));
    }));
  }

  // ---- hc --------------------------------------------------------------
  auto* hc_cmd = app.add_subcommand("hc", "orbit-approximation certificates");

  {
    auto* c = hc_cmd->add_subcommand("build", "build a certificate for target vectors");
    auto targets = std::make_shared<std::string>();
    auto eps = std::make_shared<std::string>("1/1000");
    auto out_path = std::make_shared<std::string>();
    c->add_option("--targets", *targets, "JSON file with an array of vectors")->required();
    c->add_option("--epsilon", *eps, "approximation tolerance (rational)");
    c->add_option("--out", *out_path, "write the certificate to this file");
    c->callback(guard([targets, eps, out_path, &weight_text, &budget]() {
      Weight w = weight_from_cli(weight_text);
      std::vector<RationalVec> tv;
      for (const json& j : load_json_file(*targets)) tv.push_back(rational_vec_from_json(j));
      HcOptions opts;
      opts.max_shift = static_cast<unsigned>(scaled(1000000, budget));
      HypercyclicCertificate cert = build_hypercyclic_vector(tv, parse_rational(*eps), w, opts);
      json j = certificate_to_json(cert);
      if (!out_path->empty()) {
        std::ofstream of(*out_path);
        of << j.dump(2) << "\n";
        std::cerr << "certificate written to " << *out_path << "\n";
      }
      emit(j);
    }));
  }
  {
    auto* c = hc_cmd->add_subcommand("verify", "re-verify a certificate from scratch");
    auto cert_path = std::make_shared<std::string>();
    c->add_option("--cert", *cert_path, "certificate JSON file")->required();
    c->callback(guard([cert_path, &weight_text, &rc]() {
      Weight w = weight_from_cli(weight_text);
      HypercyclicCertificate cert = certificate_from_json(load_json_file(*cert_path));
      HcVerification v = verify_certificate(cert, w);
      emit({{"errors", v.errors}, {"all_within", v.all_within}});
      if (!v.all_within) rc = 1;
    }));
  }

  // ---- ergodic ---------------------------------------------------------
  auto* erg_cmd = app.add_subcommand("ergodic", "invariant mixture sampling");

  {
    auto* c = erg_cmd->add_subcommand("sample", "draw one mixture sample");
    auto mm = std::make_shared<unsigned>(2);
    auto apm = std::make_shared<unsigned>(2);
    auto cap = std::make_shared<std::string>("4096");
    auto mat = std::make_shared<bool>(false);
    c->add_option("--max-m", *mm, "largest field index");
    c->add_option("--atoms-per-m", *apm, "atoms per index");
    c->add_option("--cap", *cap, "materialization cap");
    c->add_flag("--materialize", *mat, "include the materialized vector");
    c->callback(guard([mm, apm, cap, mat, &weight_text, &seed]() {
      Weight w = weight_from_cli(weight_text);
      MixtureShape shape{*mm, *apm, Integer(*cap)};
      GaussianMixtureSample s = sample_invariant(shape, seed, w);
      json j = sample_to_json(s);
      if (*mat) {
        MaterializedSample ms = materialize_sample(s, shape.cap, w);
        j["materialized"] = vec_to_json(ms.vec);
        j["truncation_bound"] = ms.truncation_bound;
      }
      emit(j);
    }));
  }
  {
    auto* c = erg_cmd->add_subcommand("invariance", "KS check of the invariant law");
    auto runs = std::make_shared<std::size_t>(200);
    auto mm = std::make_shared<unsigned>(2);
    auto apm = std::make_shared<unsigned>(2);
    auto cap = std::make_shared<std::string>("4096");
    auto func = std::make_shared<std::string>();
    auto mismatch = std::make_shared<double>(1.0);
    auto experiments = std::make_shared<unsigned>(1);
    c->add_option("--runs", *runs, "samples per batch");
    c->add_option("--max-m", *mm, "largest field index");
    c->add_option("--atoms-per-m", *apm, "atoms per index");
    c->add_option("--cap", *cap, "materialization cap");
    c->add_option("--functional", *func, "JSON file with the test functional (float vector)");
    c->add_option("--mismatch", *mismatch, "scale the second batch (power check)");
    c->add_option("--experiments", *experiments, "repeat count for the CSV report");
    c->callback(guard([runs, mm, apm, cap, func, mismatch, experiments, &weight_text, &seed,
                       &format]() {
      Weight w = weight_from_cli(weight_text);
      MixtureShape shape{*mm, *apm, Integer(*cap)};
      FloatVec f;
      if (func->empty()) {
        f.add_term(3, {1, 0});
        f.add_term(10, {0, 1});
      } else {
        CoeffVecAny any = vec_from_json(load_json_file(*func));
        f = std::holds_alternative<FloatVec>(any) ? std::get<FloatVec>(any)
                                                  : to_float(std::get<RationalVec>(any));
      }
      if (format == "csv" || *experiments > 1) {
        std::cout << "run,statistic,p_value\n";
        for (unsigned e = 0; e < *experiments; ++e) {
          InvarianceReport r =
              invariance_test(shape, f, *runs, derive_seed(seed, e), w, *mismatch);
          std::cout << e << "," << std::max(r.ks_re, r.ks_im) << ","
                    << std::min(r.p_re, r.p_im) << "\n";
        }
      } else {
        emit(invariance_report_to_json(
            invariance_test(shape, f, *runs, seed, w, *mismatch)));
      }
    }));
  }
  {
    auto* c = erg_cmd->add_subcommand("visits", "visit frequency of a transfer orbit");
    auto x_path = std::make_shared<std::string>();
    auto t_path = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(0.01);
    auto horizon = std::make_shared<std::size_t>(100);
    c->add_option("--x", *x_path, "vector or certificate JSON file")->required();
    c->add_option("--target", *t_path, "target vector JSON file")->required();
    c->add_option("--eps", *eps, "distance threshold");
    c->add_option("--horizon", *horizon, "largest iterate");
    c->callback(guard([x_path, t_path, eps, horizon, &weight_text]() {
      Weight w = weight_from_cli(weight_text);
      json jx = load_json_file(*x_path);
      RationalVec x = jx.contains("schedule") ? certificate_from_json(jx).x
                                              : rational_vec_from_json(jx);
      RationalVec target = rational_vec_from_json(load_json_file(*t_path));
      double freq = visit_frequency(x, target, *eps, *horizon, w);
      emit({{"frequency", freq}, {"eps", *eps}, {"horizon", *horizon}});
    }));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const PredicateError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
