#include "infoorder/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "infoorder/corpus.hpp"
#include "infoorder/io.hpp"

namespace infoorder {

namespace {

using Index = Eigen::Index;

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

Json not_ordered(const std::string& relation, const std::string& note) {
  return Json{{"kind", "report"}, {"relation", relation}, {"holds", false}, {"note", note}};
}

Rational parse_option(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError("--" + name + ": " + e.what());
  }
}

/// Tolerances are floats; exponent notation such as 1e-6 is accepted.
double parse_tolerance(const std::string& text, const std::string& name) {
  double x = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size()) {
    x = to_double(parse_option(text, name));
  }
  if (!(x >= 0) || !std::isfinite(x)) throw InputError("--" + name + " must be a nonnegative number");
  return x;
}

/// A prior is a JSON file, "uniform", or an inline comma-separated list.
Prior parse_prior(const std::string& text, Index states) {
  if (std::filesystem::is_regular_file(text)) return prior_from_json(read_json_file(text), text);
  if (text == "uniform") return uniform_prior(states);
  VectorQ weights(0);
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    weights.conservativeResize(weights.size() + 1);
    weights(weights.size() - 1) = parse_option(text.substr(start, comma - start), "prior");
    start = comma + 1;
  }
  Prior prior = make_prior(std::move(weights));
  if (prior.weights.size() != states) throw InputError("--prior has the wrong number of states");
  return prior;
}

Experiment load_experiment(const std::string& file) { return experiment_from_json(read_json_file(file), file); }

Json labelled_policy(const DecisionProblem& problem, const PolicyTable& policy, const Experiment& experiment) {
  Json out = Json::object();
  for (std::size_t s = 0; s < policy.actions.size(); ++s) {
    out[experiment.signals[s]] = problem.actions[static_cast<std::size_t>(policy.actions[s])];
  }
  return out;
}

Json belief_set_to_json(const BeliefSet& set) {
  Json points = Json::array();
  for (const auto& p : set.extreme_points()) points.push_back(to_json(p));
  return points;
}

struct Options {
  std::vector<std::string> files;
  std::string witness = "any";
  std::string beta;
  std::string prior;
  std::string chain;
  std::string tol;
  std::string eps;
  int nmax = 12;
  int max_iter = 200;
  int horizon = 1;
  std::uint64_t seed = 0;
  std::size_t pairs = 500;
};

int check(const std::string& order, const Options& o, std::ostream& out) {
  const Experiment a = load_experiment(o.files.at(0));
  const Experiment b = load_experiment(o.files.at(1));
  if (order == "blackwell") {
    const OrderCheck result = check_blackwell_detailed(a, b);
    if (result.certificate) return emit(out, to_json(*result.certificate)), kHolds;
    Json report = not_ordered("blackwell", "garbling program infeasible");
    report["farkas"] = to_json(result.farkas);
    return emit(out, report), kFails;
  }
  std::optional<GarblingCertificate> cert;
  if (o.witness == "min") {
    if (auto m = min_size(a, b)) cert = m->certificate;
  } else if (o.witness == "max") {
    if (auto interval = size_interval(a, b)) {
      if (!interval->max_witness) throw InputError("sizes are unbounded; no maximal witness");
      cert = interval->max_witness;
    }
  } else {
    cert = check_weighted(a, b);
  }
  if (cert) return emit(out, to_json(*cert)), kHolds;
  return emit(out, not_ordered("weighted_garbling", "weighted garbling program infeasible")), kFails;
}

int size_interval_cmd(const Options& o, std::ostream& out) {
  const auto interval = size_interval(load_experiment(o.files.at(0)), load_experiment(o.files.at(1)));
  if (!interval) return emit(out, not_ordered("size_interval", "not a weighted garbling")), kFails;
  return emit(out, to_json(*interval)), kHolds;
}

int verify_cmd(const Options& o, std::ostream& out) {
  const GarblingCertificate cert = certificate_from_json(read_json_file(o.files.at(0)), o.files.at(0));
  const Verification v = verify_certificate(cert);
  emit(out, Json{{"kind", "report"},
                 {"relation", "certificate"},
                 {"holds", v.ok()},
                 {"size", to_json(cert.size())},
                 {"violations", v.violations}});
  return v.ok() ? kHolds : kFails;
}

int compose_cmd(const Options& o, std::ostream& out) {
  const GarblingCertificate first = certificate_from_json(read_json_file(o.files.at(0)), o.files.at(0));
  const GarblingCertificate second = certificate_from_json(read_json_file(o.files.at(1)), o.files.at(1));
  for (const auto* c : {&first, &second}) {
    if (!verify_certificate(*c)) throw InputError("input certificate does not verify");
  }
  return emit(out, to_json(compose(first, second))), kHolds;
}

int conditional_cmd(const std::string& direction, const Options& o, std::ostream& out) {
  if (direction == "to") {
    const GarblingCertificate cert = certificate_from_json(read_json_file(o.files.at(0)), o.files.at(0));
    return emit(out, to_json(to_conditional(cert))), kHolds;
  }
  if (o.files.size() != 2) throw InputError("conditional from needs CONDITIONAL.json GARBLED.json");
  const ConditionalExperiment ce = conditional_from_json(read_json_file(o.files.at(0)), o.files.at(0));
  const Experiment garbled = load_experiment(o.files.at(1));
  if (const Verification v = verify_conditional(ce); !v) {
    throw InputError("conditional experiment is invalid: " + v.violations.front());
  }
  if (!check_blackwell(garbled, ce.conditioned())) {
    return emit(out, not_ordered("conditional", "conditioned experiment does not dominate")), kFails;
  }
  return emit(out, to_json(from_conditional(ce, garbled))), kHolds;
}

int posteriors_cmd(const Options& o, std::ostream& out) {
  const Experiment e = load_experiment(o.files.at(0));
  return emit(out, to_json(posteriors(e, parse_prior(o.prior, e.state_count())))), kHolds;
}

int hull_cmd(const Options& o, std::ostream& out) {
  const Json doc = read_json_file(o.files.at(0));
  const std::string& path = o.files.at(0);
  if (!doc.is_object() || !doc.contains("point") || !doc.contains("generators")) {
    throw InputError(path + ": expected {\"point\": [...], \"generators\": [[...], ...]}");
  }
  const VectorQ point = vector_from_json(doc.at("point"), path + ".point");
  const MatrixQ rows = matrix_from_json(doc.at("generators"), path + ".generators");
  std::vector<VectorQ> generators;
  for (Index r = 0; r < rows.rows(); ++r) generators.emplace_back(rows.row(r).transpose());
  const HullResult result = hull_check(point, generators);
  if (result.certificate) {
    return emit(out, Json{{"kind", "report"},
                          {"relation", "hull_membership"},
                          {"holds", true},
                          {"coefficients", to_json(result.certificate->coefficients)}}),
           kHolds;
  }
  Json report = not_ordered("hull_membership", "separated by a hyperplane");
  report["normal"] = to_json(result.separation->normal);
  report["offset"] = to_json(result.separation->offset);
  return emit(out, report), kFails;
}

int beliefs_cmd(const Options& o, std::ostream& out) {
  const Experiment a = load_experiment(o.files.at(0));
  const Experiment b = load_experiment(o.files.at(1));
  const auto coupling = check_weighted_beliefs(a, b, parse_prior(o.prior, a.state_count()));
  if (!coupling) return emit(out, not_ordered("weighted_garbling", "a posterior lies outside the hull")), kFails;
  return emit(out, to_json(*coupling)), kHolds;
}

int value_cmd(const Options& o, std::ostream& out) {
  const DecisionProblem d = decision_problem_from_json(read_json_file(o.files.at(0)), o.files.at(0));
  const Experiment e = load_experiment(o.files.at(1));
  const ValueResult v = value(d, e);
  return emit(out, Json{{"kind", "report"},
                        {"relation", "value"},
                        {"value", to_json(v.value)},
                        {"null_value", to_json(value_null(d))},
                        {"policy", labelled_policy(d, v.policy, e)}}),
         kHolds;
}

int bound_verify_cmd(const Options& o, std::ostream& out) {
  const DecisionProblem d = decision_problem_from_json(read_json_file(o.files.at(0)), o.files.at(0));
  const BoundReport r =
      verify_bound(d, load_experiment(o.files.at(1)), load_experiment(o.files.at(2)), parse_option(o.beta, "beta"));
  return emit(out, to_json(r)), r.holds ? kHolds : kFails;
}

int bound_falsify_cmd(const Options& o, std::ostream& out) {
  const Experiment a = load_experiment(o.files.at(0));
  const Experiment b = load_experiment(o.files.at(1));
  const Rational beta = parse_option(o.beta, "beta");
  const auto problem = falsify_bound(a, b, beta);
  if (!problem) {
    const auto cert = check_blackwell(dilute(a, beta), b);
    Json report{{"kind", "report"}, {"relation", "value_bound"}, {"holds", true}, {"beta", to_json(beta)}};
    report["certificate"] = to_json(*cert);
    return emit(out, report), kHolds;
  }
  Json report = to_json(verify_bound(*problem, a, b, beta));
  report["decision_problem"] = to_json(*problem);
  return emit(out, report), kFails;
}

int dilute_cmd(const Options& o, std::ostream& out) {
  return emit(out, to_json(dilute(load_experiment(o.files.at(0)), parse_option(o.beta, "beta")))), kHolds;
}

MarkovChain load_chain(const Options& o) { return chain_from_json(read_json_file(o.chain), o.chain); }

int eta_cmd(const Options& o, std::ostream& out) {
  const EtaResult r = eta_limit(load_chain(o), load_experiment(o.files.at(0)), parse_tolerance(o.tol, "tol"), o.max_iter);
  return emit(out, Json{{"kind", "report"},
                        {"relation", "eta_limit"},
                        {"converged", r.converged},
                        {"iterations", r.iterations},
                        {"gap", r.gap},
                        {"extreme_points", belief_set_to_json(r.set)}}),
         kHolds;
}

int merge_cmd(const Options& o, std::ostream& out) {
  const MergingReport r = merging_horizon(load_chain(o), load_experiment(o.files.at(0)), parse_tolerance(o.eps, "eps"), o.nmax);
  emit(out, Json{{"kind", "report"},
                 {"relation", "merging_horizon"},
                 {"holds", r.horizon.has_value()},
                 {"horizon", r.horizon ? Json(*r.horizon) : Json(nullptr)},
                 {"max_distance", r.max_distance},
                 {"monotone", r.monotone}});
  return r.horizon ? kHolds : kFails;
}

int stopping_cmd(const Options& o, std::ostream& out) {
  const DecisionProblem d = decision_problem_from_json(read_json_file(o.files.at(0)), o.files.at(0));
  const StoppingProblem problem{d, load_chain(o), o.horizon};
  return emit(out, Json{{"kind", "report"},
                        {"relation", "stopping_value"},
                        {"horizon", o.horizon},
                        {"value", to_json(stopping_value(problem, load_experiment(o.files.at(1))))}}),
         kHolds;
}

int counterexample_cmd(const Options& o, std::ostream& out) {
  const Experiment a = load_experiment(o.files.at(0));
  const Experiment b = load_experiment(o.files.at(1));
  const auto found = counterexample(a, b, parse_prior(o.prior, a.state_count()));
  if (!found) {
    Json report{{"kind", "report"}, {"relation", "weighted_garbling"}, {"holds", true}};
    report["certificate"] = to_json(*check_weighted(a, b));
    return emit(out, report), kHolds;
  }
  Json values = Json::array();
  for (int horizon = 1; horizon <= 4; ++horizon) {
    const StoppingProblem sp{found->problem, found->chain, horizon};
    values.push_back(Json{{"horizon", horizon},
                          {"garbled", to_json(stopping_value(sp, a))},
                          {"reference", to_json(stopping_value(sp, b))}});
  }
  Json report = not_ordered("weighted_garbling", "garbled experiment is strictly more valuable when stopping");
  report["decision_problem"] = to_json(found->problem);
  report["chain"] = to_json(found->chain);
  report["stopping_values"] = values;
  return emit(out, report), kFails;
}

int selftest_cmd(const Options& o, std::ostream& out) {
  const SelftestReport r = run_selftest(o.seed, o.pairs);
  emit(out, Json{{"kind", "report"},
                 {"relation", "selftest"},
                 {"holds", r.ok()},
                 {"seed", o.seed},
                 {"pairs", r.pairs},
                 {"weighted_ordered", r.ordered},
                 {"blackwell_ordered", r.blackwell},
                 {"failures", r.failures}});
  return r.ok() ? kHolds : kFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compare statistical experiments under the Blackwell and weighted-garbling orders", "infoorder"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  const auto files = [&](CLI::App* sub, std::size_t n, const std::string& what) {
    sub->add_option("files", o.files, what)->required()->expected(static_cast<int>(n));
  };
  const auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  auto* check_app = app.add_subcommand("check", "decide an order and emit a certificate");
  check_app->require_subcommand(1);
  for (const std::string order : {"blackwell", "weighted"}) {
    auto* sub = check_app->add_subcommand(order, "is A a " + order + " garbling of B");
    files(sub, 2, "A.json B.json");
    if (order == "weighted") {
      sub->add_option("--witness", o.witness, "which certificate to emit")->check(CLI::IsMember({"any", "min", "max"}));
    }
    on(sub, [&, order] { return check(order, o, out); });
  }

  auto* sub = app.add_subcommand("verify", "re-verify a certificate document");
  files(sub, 1, "CERT.json");
  on(sub, [&] { return verify_cmd(o, out); });

  sub = app.add_subcommand("size-interval", "range of weight sizes");
  files(sub, 2, "A.json B.json");
  on(sub, [&] { return size_interval_cmd(o, out); });

  sub = app.add_subcommand("compose", "chain two certificates");
  files(sub, 2, "C1.json C2.json");
  on(sub, [&] { return compose_cmd(o, out); });

  auto* cond = app.add_subcommand("conditional", "convert to or from a conditional experiment");
  cond->require_subcommand(1);
  sub = cond->add_subcommand("to", "certificate to conditional experiment");
  files(sub, 1, "CERT.json");
  on(sub, [&] { return conditional_cmd("to", o, out); });
  sub = cond->add_subcommand("from", "conditional experiment to certificate");
  files(sub, 2, "COND.json GARBLED.json");
  on(sub, [&] { return conditional_cmd("from", o, out); });

  sub = app.add_subcommand("posteriors", "posterior distribution under a prior");
  files(sub, 1, "E.json");
  sub->add_option("--prior", o.prior, "file, \"uniform\" or comma list")->required();
  on(sub, [&] { return posteriors_cmd(o, out); });

  sub = app.add_subcommand("hull-check", "is a point in the convex hull of generators");
  files(sub, 1, "HULL.json");
  on(sub, [&] { return hull_cmd(o, out); });

  sub = app.add_subcommand("beliefs-check", "weighted garbling via posterior hulls");
  files(sub, 2, "A.json B.json");
  sub->add_option("--prior", o.prior, "file, \"uniform\" or comma list")->required();
  on(sub, [&] { return beliefs_cmd(o, out); });

  sub = app.add_subcommand("value", "value of an experiment in a decision problem");
  files(sub, 2, "D.json E.json");
  on(sub, [&] { return value_cmd(o, out); });

  sub = app.add_subcommand("bound-verify", "check V(B) >= V(A)/beta + (1 - 1/beta) V(null)");
  files(sub, 3, "D.json A.json B.json");
  sub->add_option("--beta", o.beta, "size")->required();
  on(sub, [&] { return bound_verify_cmd(o, out); });

  sub = app.add_subcommand("bound-falsify", "find a decision problem violating the value bound");
  files(sub, 2, "A.json B.json");
  sub->add_option("--beta", o.beta, "size")->required();
  on(sub, [&] { return bound_falsify_cmd(o, out); });

  sub = app.add_subcommand("dilute", "reveal the experiment with probability 1/beta");
  files(sub, 1, "E.json");
  sub->add_option("--beta", o.beta, "dilution factor")->required();
  on(sub, [&] { return dilute_cmd(o, out); });

  sub = app.add_subcommand("eta", "limit set of one-step posterior hulls");
  files(sub, 1, "E.json");
  sub->add_option("--chain", o.chain, "chain document")->required();
  sub->add_option("--tol", o.tol, "Hausdorff tolerance")->required();
  sub->add_option("--max-iter", o.max_iter, "iteration cap");
  on(sub, [&] { return eta_cmd(o, out); });

  sub = app.add_subcommand("merge-horizon", "signal-string length after which posteriors merge");
  files(sub, 1, "E.json");
  sub->add_option("--chain", o.chain, "chain document")->required();
  sub->add_option("--eps", o.eps, "L1 tolerance")->required();
  sub->add_option("--nmax", o.nmax, "longest string length")->check(CLI::Range(1, 30));
  on(sub, [&] { return merge_cmd(o, out); });

  sub = app.add_subcommand("stopping", "finite-horizon stopping value");
  files(sub, 2, "D.json E.json");
  sub->add_option("--chain", o.chain, "chain document")->required();
  sub->add_option("--horizon", o.horizon, "number of sampling periods")->required()->check(CLI::NonNegativeNumber);
  on(sub, [&] { return stopping_cmd(o, out); });

  sub = app.add_subcommand("counterexample", "stopping problem where A beats B");
  files(sub, 2, "A.json B.json");
  sub->add_option("--prior", o.prior, "file, \"uniform\" or comma list")->required();
  on(sub, [&] { return counterexample_cmd(o, out); });

  sub = app.add_subcommand("selftest", "cross-module equivalence battery");
  sub->add_option("--seed", o.seed, "corpus seed")->required();
  sub->add_option("--pairs", o.pairs, "number of random pairs");
  on(sub, [&] { return selftest_cmd(o, out); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    return action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace infoorder
