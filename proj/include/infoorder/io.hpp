#ifndef INFOORDER_IO_HPP
#define INFOORDER_IO_HPP

#include <string>

#include <json.hpp>

#include "infoorder/beliefs.hpp"
#include "infoorder/dynamics.hpp"
#include "infoorder/order.hpp"
#include "infoorder/value.hpp"

namespace infoorder {

using Json = nlohmann::ordered_json;

// Documents are JSON objects with a "kind" member. Numbers are written as
// rational strings ("3/5", "0"); decimals and integers are accepted on input.
// Schema errors are InputErrors whose message starts with the JSON path.

Json to_json(const Rational& x);
Json to_json(const VectorQ& v);
Json to_json(const MatrixQ& m);

Rational rational_from_json(const Json& j, const std::string& path);
VectorQ vector_from_json(const Json& j, const std::string& path);
MatrixQ matrix_from_json(const Json& j, const std::string& path);

Json to_json(const Experiment& experiment);
Experiment experiment_from_json(const Json& j, const std::string& path = "$");

Json to_json(const Prior& prior);
/// Accepts a bare array or an object with "prior" or "weights".
Prior prior_from_json(const Json& j, const std::string& path = "$");

Json to_json(const DecisionProblem& problem);
DecisionProblem decision_problem_from_json(const Json& j, const std::string& path = "$");

Json to_json(const MarkovChain& chain);
MarkovChain chain_from_json(const Json& j, const std::string& path = "$");

/// SHA-256 of the canonical serialization of the experiment.
std::string digest(const Experiment& experiment);

Json to_json(const GarblingCertificate& certificate);
/// Rejects documents whose digests, gamma, phi or size do not match the
/// embedded experiments and psi.
GarblingCertificate certificate_from_json(const Json& j, const std::string& path = "$");

Json to_json(const ConditionalExperiment& conditional);
ConditionalExperiment conditional_from_json(const Json& j, const std::string& path = "$");

Json to_json(const PosteriorDistribution& distribution);
Json to_json(const CouplingCertificate& coupling);
CouplingCertificate coupling_from_json(const Json& j, const std::string& path = "$");
Json to_json(const BoundReport& report);
Json to_json(const SizeInterval& interval);

Json read_json_file(const std::string& file);

}  // namespace infoorder

#endif  // INFOORDER_IO_HPP
