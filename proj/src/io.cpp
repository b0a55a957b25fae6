#include "infoorder/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/sha.h>

namespace infoorder {

namespace {

using Index = Eigen::Index;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw InputError(path + ": " + message);
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, "missing \"" + key + "\"");
  return *it;
}

void expect_kind(const Json& j, const std::string& kind, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find("kind");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != kind)) {
    schema_error(path + ".kind", "expected \"" + kind + "\"");
  }
}

Labels labels_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of labels");
  Labels out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_error(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

Labels optional_labels(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  return labels_from_json(*it, path + "." + key);
}

Json labels_to_json(const Labels& labels) { return Json(labels); }

std::string hex(const unsigned char* bytes, std::size_t n) {
  std::ostringstream out;
  for (std::size_t i = 0; i < n; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(bytes[i]);
  return out.str();
}

Json experiment_body(const Experiment& e) {
  return Json{{"states", labels_to_json(e.states)},
              {"signals", labels_to_json(e.signals)},
              {"matrix", to_json(e.matrix)}};
}

template <class F>
auto rethrow_at(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    schema_error(path, e.what());
  }
}

Json atoms_to_json(const PosteriorDistribution& d) {
  Json atoms = Json::array();
  for (const auto& atom : d.atoms) {
    atoms.push_back(Json{{"signals", atom.signals},
                         {"belief", to_json(atom.belief)},
                         {"probability", to_json(atom.probability)}});
  }
  return atoms;
}

PosteriorDistribution posteriors_from_json(const Json& j, const std::string& path) {
  PosteriorDistribution d;
  d.prior = prior_from_json(member(j, "prior", path), path + ".prior");
  const Json& atoms = member(j, "atoms", path);
  if (!atoms.is_array()) schema_error(path + ".atoms", "expected an array");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string at = path + ".atoms[" + std::to_string(i) + "]";
    PosteriorAtom atom;
    const Json& signals = member(atoms[i], "signals", at);
    if (!signals.is_array()) schema_error(at + ".signals", "expected an array of indices");
    for (const auto& s : signals) {
      if (!s.is_number_integer()) schema_error(at + ".signals", "expected integer indices");
      atom.signals.push_back(s.get<Index>());
    }
    atom.belief = vector_from_json(member(atoms[i], "belief", at), at + ".belief");
    atom.probability = rational_from_json(member(atoms[i], "probability", at), at + ".probability");
    d.atoms.push_back(std::move(atom));
  }
  return d;
}

}  // namespace

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const VectorQ& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Json to_json(const MatrixQ& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(VectorQ(m.row(r).transpose())));
  return out;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return rethrow_at(path, [&] { return parse_rational(j.get<std::string>()); });
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    // Re-read the literal as written; a double would not be exact.
    return rethrow_at(path, [&] { return parse_rational(j.dump()); });
  }
  schema_error(path, "expected a number or rational string");
}

VectorQ vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  VectorQ out(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    out(static_cast<Index>(i)) = rational_from_json(j[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

MatrixQ matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) schema_error(path + "[0]", "expected a non-empty row");
  MatrixQ out(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string at = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) schema_error(at, "rows have different lengths");
    out.row(static_cast<Index>(r)) = vector_from_json(j[r], at).transpose();
  }
  return out;
}

Json to_json(const Experiment& experiment) {
  Json out{{"kind", "experiment"}};
  out.update(experiment_body(experiment));
  return out;
}

Experiment experiment_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "experiment", path);
  MatrixQ rows = matrix_from_json(member(j, "matrix", path), path + ".matrix");
  Labels states = optional_labels(j, "states", path);
  Labels signals = optional_labels(j, "signals", path);
  return rethrow_at(path, [&] { return validate_experiment(std::move(rows), states, signals); });
}

Json to_json(const Prior& prior) { return Json{{"kind", "prior"}, {"prior", to_json(prior.weights)}}; }

Prior prior_from_json(const Json& j, const std::string& path) {
  if (j.is_array()) return rethrow_at(path, [&] { return make_prior(vector_from_json(j, path)); });
  if (j.is_object()) {
    for (const char* key : {"prior", "weights"}) {
      if (j.contains(key)) return prior_from_json(j.at(key), path + "." + key);
    }
  }
  schema_error(path, "expected a prior array or an object with \"prior\"");
}

Json to_json(const DecisionProblem& problem) {
  return Json{{"kind", "decision_problem"},
              {"actions", labels_to_json(problem.actions)},
              {"payoffs", to_json(problem.payoffs)},
              {"prior", to_json(problem.prior.weights)}};
}

DecisionProblem decision_problem_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "decision_problem", path);
  MatrixQ payoffs = matrix_from_json(member(j, "payoffs", path), path + ".payoffs");
  Prior prior = prior_from_json(member(j, "prior", path), path + ".prior");
  Labels actions = optional_labels(j, "actions", path);
  return rethrow_at(path, [&] { return make_decision_problem(std::move(payoffs), std::move(prior), actions); });
}

Json to_json(const MarkovChain& chain) {
  return Json{{"kind", "chain"}, {"states", labels_to_json(chain.states)}, {"transition", to_json(chain.transition)}};
}

MarkovChain chain_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "chain", path);
  MatrixQ transition = matrix_from_json(member(j, "transition", path), path + ".transition");
  Labels states = optional_labels(j, "states", path);
  return rethrow_at(path, [&] { return make_chain(std::move(transition), states); });
}

std::string digest(const Experiment& experiment) {
  const std::string canonical = experiment_body(experiment).dump();
  unsigned char out[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(canonical.data()), canonical.size(), out);
  return "sha256:" + hex(out, SHA256_DIGEST_LENGTH);
}

Json to_json(const GarblingCertificate& certificate) {
  // phi is written one row per reference signal: phi[s'][s] = phi(s|s').
  return Json{{"kind", "certificate"},
              {"garbled", to_json(certificate.garbled())},
              {"reference", to_json(certificate.reference())},
              {"garbled_digest", digest(certificate.garbled())},
              {"reference_digest", digest(certificate.reference())},
              {"psi", to_json(certificate.psi())},
              {"gamma", to_json(certificate.gamma())},
              {"phi", to_json(MatrixQ(certificate.phi().transpose()))},
              {"size", to_json(certificate.size())}};
}

GarblingCertificate certificate_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "certificate", path);
  Experiment garbled = experiment_from_json(member(j, "garbled", path), path + ".garbled");
  Experiment reference = experiment_from_json(member(j, "reference", path), path + ".reference");
  for (const auto& [key, e] : {std::pair{"garbled_digest", &garbled}, std::pair{"reference_digest", &reference}}) {
    auto it = j.find(key);
    if (it != j.end() && (!it->is_string() || it->get<std::string>() != digest(*e))) {
      schema_error(path + "." + key, "digest does not match the embedded experiment");
    }
  }
  MatrixQ psi = matrix_from_json(member(j, "psi", path), path + ".psi");
  GarblingCertificate out = rethrow_at(path, [&] { return GarblingCertificate(garbled, reference, psi); });
  if (j.contains("gamma") && vector_from_json(j.at("gamma"), path + ".gamma") != out.gamma()) {
    schema_error(path + ".gamma", "does not equal the column sums of psi");
  }
  if (j.contains("phi") && matrix_from_json(j.at("phi"), path + ".phi") != MatrixQ(out.phi().transpose())) {
    schema_error(path + ".phi", "does not match psi");
  }
  if (j.contains("size") && rational_from_json(j.at("size"), path + ".size") != out.size()) {
    schema_error(path + ".size", "does not equal max gamma");
  }
  return out;
}

Json to_json(const ConditionalExperiment& conditional) {
  return Json{{"kind", "conditional"},
              {"reference", to_json(conditional.reference)},
              {"event", to_json(conditional.event)},
              {"complement", to_json(conditional.complement)},
              {"alpha", to_json(conditional.alpha)}};
}

ConditionalExperiment conditional_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "conditional", path);
  ConditionalExperiment out;
  out.reference = experiment_from_json(member(j, "reference", path), path + ".reference");
  out.event = matrix_from_json(member(j, "event", path), path + ".event");
  out.complement = matrix_from_json(member(j, "complement", path), path + ".complement");
  out.alpha = rational_from_json(member(j, "alpha", path), path + ".alpha");
  for (const auto* m : {&out.event, &out.complement}) {
    if (m->rows() != out.reference.state_count() || m->cols() != out.reference.signal_count()) {
      schema_error(path, "event tables must match the reference shape");
    }
  }
  return out;
}

Json to_json(const PosteriorDistribution& distribution) {
  return Json{{"kind", "posteriors"}, {"prior", to_json(distribution.prior.weights)}, {"atoms", atoms_to_json(distribution)}};
}

Json to_json(const CouplingCertificate& coupling) {
  return Json{{"kind", "coupling"},
              {"reference", to_json(coupling.reference)},
              {"garbled_posteriors", to_json(coupling.garbled_posteriors)},
              {"reference_posteriors", to_json(coupling.reference_posteriors)},
              {"joint", to_json(coupling.joint)},
              {"size", to_json(coupling.size)}};
}

CouplingCertificate coupling_from_json(const Json& j, const std::string& path) {
  expect_kind(j, "coupling", path);
  CouplingCertificate out;
  out.reference = experiment_from_json(member(j, "reference", path), path + ".reference");
  out.garbled_posteriors = posteriors_from_json(member(j, "garbled_posteriors", path), path + ".garbled_posteriors");
  out.reference_posteriors =
      posteriors_from_json(member(j, "reference_posteriors", path), path + ".reference_posteriors");
  out.joint = matrix_from_json(member(j, "joint", path), path + ".joint");
  out.size = rational_from_json(member(j, "size", path), path + ".size");
  if (out.joint.rows() != static_cast<Index>(out.garbled_posteriors.atoms.size()) ||
      out.joint.cols() != static_cast<Index>(out.reference_posteriors.atoms.size())) {
    schema_error(path + ".joint", "shape does not match the posterior supports");
  }
  return out;
}

Json to_json(const BoundReport& report) {
  return Json{{"kind", "report"},
              {"relation", "value_bound"},
              {"holds", report.holds},
              {"beta", to_json(report.beta)},
              {"reference_value", to_json(report.reference_value)},
              {"garbled_value", to_json(report.garbled_value)},
              {"null_value", to_json(report.null_value)},
              {"slack", to_json(report.slack)}};
}

Json to_json(const SizeInterval& interval) {
  Json out{{"kind", "report"},
           {"relation", "size_interval"},
           {"min", to_json(interval.min)},
           {"max", interval.max ? to_json(*interval.max) : Json("unbounded")},
           {"min_witness", to_json(interval.min_witness)}};
  if (interval.max_witness) out["max_witness"] = to_json(*interval.max_witness);
  return out;
}

Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError(file + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
}

}  // namespace infoorder
