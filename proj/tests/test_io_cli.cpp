#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "infoorder/cli.hpp"
#include "infoorder/corpus.hpp"
#include "infoorder/io.hpp"

using namespace infoorder;
using fixtures::q;
using fixtures::vec;

namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(INFOORDER_DATA_DIR) + "/" + name; }

struct Result {
  int code;
  Json doc;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  Json doc;
  if (!out.str().empty() && out.str().front() == '{') doc = Json::parse(out.str());
  return {code, doc, err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("infoorder-test-" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const Json& doc) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump(2);
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("numbers serialize as rational strings") {
  CHECK(to_json(q(3, 5)) == "3/5");
  CHECK(to_json(Rational(0)) == "0");
  CHECK(rational_from_json(Json(0.45), "$") == q(9, 20));
  CHECK(rational_from_json(Json(3), "$") == 3);
  CHECK(rational_from_json(Json("-7/14"), "$") == q(-1, 2));
  CHECK_THROWS_WITH_AS(rational_from_json(Json("1/0"), "$.x"), doctest::Contains("$.x"), InputError);
  CHECK_THROWS_AS(rational_from_json(Json(true), "$"), InputError);
}

TEST_CASE("documents round-trip") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Experiment e = random_experiment(rng, 1 + i % 4, 1 + i % 4, 12);
    const Json j = to_json(e);
    CHECK(experiment_from_json(j) == e);
    CHECK(to_json(experiment_from_json(Json::parse(j.dump()))) == j);
  }

  const DecisionProblem d = random_decision_problem(5, 3, 2, 12);
  const DecisionProblem d2 = decision_problem_from_json(to_json(d));
  CHECK(d2.payoffs == d.payoffs);
  CHECK(d2.prior.weights == d.prior.weights);
  CHECK(d2.actions == d.actions);

  const MarkovChain c = make_chain(fixtures::rows({{q(7, 10), q(3, 10)}, {q(1, 5), q(4, 5)}}));
  CHECK(chain_from_json(to_json(c)).transition == c.transition);

  for (const auto& pair : random_corpus(12, 60)) {
    const auto cert = check_weighted(pair.garbled, pair.reference);
    if (!cert) continue;
    const Json j = to_json(*cert);
    const GarblingCertificate back = certificate_from_json(Json::parse(j.dump()));
    CHECK(back.psi() == cert->psi());
    CHECK(to_json(back) == j);
    CHECK(verify_certificate(back));

    const ConditionalExperiment ce = to_conditional(*cert);
    const ConditionalExperiment ce2 = conditional_from_json(to_json(ce));
    CHECK(ce2.event == ce.event);
    CHECK(ce2.alpha == ce.alpha);

    const Prior prior = uniform_prior(pair.garbled.state_count());
    const auto coupling = check_weighted_beliefs(pair.garbled, pair.reference, prior);
    REQUIRE(coupling);
    const CouplingCertificate f = coupling_from_json(Json::parse(to_json(*coupling).dump()));
    CHECK(verify_coupling(f, pair.garbled, pair.reference, prior).ok());
    CHECK(to_json(f) == to_json(*coupling));
  }
}

TEST_CASE("schema errors name the offending path") {
  const auto parse = [](const char* text) { return experiment_from_json(Json::parse(text)); };
  CHECK_THROWS_WITH_AS(parse(R"({"matrix": [["1/2", "1/3"]]})"), doctest::Contains("sums to 5/6"), InputError);
  CHECK_THROWS_WITH_AS(parse(R"({"matrix": [["1", "x"]]})"), doctest::Contains("$.matrix[0][1]"), InputError);
  CHECK_THROWS_WITH_AS(parse(R"({"signals": ["a"]})"), doctest::Contains("missing \"matrix\""), InputError);
  CHECK_THROWS_WITH_AS(parse(R"({"matrix": [["1", "0"], ["1"]]})"), doctest::Contains("$.matrix[1]"), InputError);
  CHECK_THROWS_WITH_AS(parse(R"({"kind": "chain", "matrix": [["1"]]})"), doctest::Contains("$.kind"), InputError);
  CHECK_THROWS_WITH_AS(parse(R"({"matrix": [["1"]], "states": [1]})"), doctest::Contains("$.states[0]"), InputError);
  CHECK_THROWS_AS(prior_from_json(Json::parse(R"({"prior": ["1/2", "1/3"]})")), InputError);
}

TEST_CASE("certificates are bound to their experiments") {
  const auto cert = check_weighted(fixtures::binary_symmetric(q(4, 5)), fixtures::example_one(q(9, 10)));
  REQUIRE(cert);
  const Json good = to_json(*cert);
  CHECK(digest(cert->garbled()) == good["garbled_digest"]);
  CHECK(digest(cert->garbled()) != digest(cert->reference()));

  Json swapped = good;
  swapped["garbled_digest"] = good["reference_digest"];
  CHECK_THROWS_WITH_AS(certificate_from_json(swapped), doctest::Contains("garbled_digest"), InputError);

  Json edited = good;
  edited["garbled"]["matrix"][0] = {"3/5", "2/5"};
  CHECK_THROWS_AS(certificate_from_json(edited), InputError);

  Json resized = good;
  resized["size"] = "7";
  CHECK_THROWS_WITH_AS(certificate_from_json(resized), doctest::Contains("$.size"), InputError);

  Json regamma = good;
  regamma["gamma"][0] = "0";
  CHECK_THROWS_AS(certificate_from_json(regamma), InputError);
}

TEST_CASE("cli: check") {
  const Result any = cli({"check", "weighted", data("ex1_pi.json"), data("ex1_piprime.json")});
  CHECK(any.code == 0);
  CHECK(any.doc["kind"] == "certificate");

  const Result max = cli({"check", "weighted", data("ex1_pi.json"), data("ex1_piprime.json"), "--witness", "max"});
  CHECK(max.code == 0);
  CHECK(max.doc["size"] == "2");
  CHECK(max.doc["gamma"] == Json({"0", "2", "2"}));

  const Result min = cli({"check", "weighted", data("ex1_pi.json"), data("ex1_piprime.json"), "--witness", "min"});
  CHECK(min.doc["size"] == "1");

  const Result no = cli({"check", "weighted", data("perfect.json"), data("uninformative.json")});
  CHECK(no.code == 1);
  CHECK(no.doc["holds"] == false);

  const Result bw = cli({"check", "blackwell", data("piA.json"), data("piB.json")});
  CHECK(bw.code == 1);
  CHECK(bw.doc.contains("farkas"));
  CHECK(cli({"check", "blackwell", data("ex1_pi.json"), data("ex1_piprime.json")}).code == 0);
}

TEST_CASE("cli: input errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "weighted", data("ex1_pi.json")}).code == 2);
  CHECK(cli({"check", "weighted", data("missing.json"), data("ex1_pi.json")}).code == 2);
  CHECK(cli({"check", "weighted", data("ex1_pi.json"), data("match.json")}).code == 2);
  CHECK(cli({"check", "weighted", data("ex1_pi.json"), data("ex1_pi.json"), "--witness", "mid"}).code == 2);
  CHECK(cli({"dilute", data("ex1_pi.json"), "--beta", "1/2"}).code == 2);
  CHECK(cli({"dilute", data("ex1_pi.json"), "--beta", "x"}).code == 2);
  CHECK(cli({"posteriors", data("ex1_pi.json"), "--prior", "1/2,1/3"}).code == 2);
  CHECK(cli({"value", data("match.json"), data("hull.json")}).code == 2);
  const Result r = cli({"check", "weighted", data("hull.json"), data("ex1_pi.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("matrix") != std::string::npos);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: emitted certificates re-verify") {
  Scratch scratch;
  const Result a = cli({"check", "weighted", data("piA.json"), data("piB.json"), "--witness", "min"});
  REQUIRE(a.code == 0);
  const std::string cert = scratch.write("cert.json", a.doc);
  const Result v = cli({"verify", cert});
  CHECK(v.code == 0);
  CHECK(v.doc["size"] == "3/2");

  Json tampered = a.doc;
  tampered["psi"][0][0] = "1/3";
  tampered.erase("gamma");
  tampered.erase("phi");
  tampered.erase("size");
  CHECK(cli({"verify", scratch.write("bad.json", tampered)}).code == 1);

  // compose: ex1_pi <= piA (Blackwell) then piA <= piB (size 3/2).
  const Result first = cli({"check", "blackwell", data("ex1_pi.json"), data("piA.json")});
  REQUIRE(first.code == 0);
  const Result composed = cli({"compose", scratch.write("c1.json", first.doc), cert});
  CHECK(composed.code == 0);
  CHECK(parse_rational(composed.doc["size"].get<std::string>()) <= q(3, 2));
  CHECK(cli({"verify", scratch.write("c.json", composed.doc)}).code == 0);
  CHECK(cli({"compose", cert, scratch.write("c1.json", first.doc)}).code == 2);

  const Result to = cli({"conditional", "to", scratch.write("max.json", cli({"check", "weighted", data("ex1_pi.json"),
                                                                              data("ex1_piprime.json"), "--witness",
                                                                              "max"})
                                                                              .doc)});
  CHECK(to.code == 0);
  CHECK(to.doc["alpha"] == "1/2");
  const std::string cond = scratch.write("cond.json", to.doc);
  const Result from = cli({"conditional", "from", cond, data("ex1_pi.json")});
  CHECK(from.code == 0);
  CHECK(from.doc["gamma"] == Json({"0", "2", "2"}));
  CHECK(cli({"conditional", "from", cond, data("perfect.json")}).code == 1);
}

TEST_CASE("cli: size-interval, beliefs and hulls") {
  const Result i = cli({"size-interval", data("ex1_pi.json"), data("ex1_piprime.json")});
  CHECK(i.code == 0);
  CHECK(i.doc["min"] == "1");
  CHECK(i.doc["max"] == "2");
  CHECK(cli({"size-interval", data("perfect.json"), data("uninformative.json")}).code == 1);

  const Result p = cli({"posteriors", data("ex1_piprime.json"), "--prior", "uniform"});
  CHECK(p.code == 0);
  CHECK(p.doc["atoms"].size() == 3);
  CHECK(cli({"posteriors", data("ex1_pi.json"), "--prior", "0.5,0.5"}).code == 0);

  const Result h = cli({"hull-check", data("hull.json")});
  CHECK(h.code == 0);
  CHECK(h.doc["coefficients"] == Json({"5/8", "3/8"}));

  const Result b = cli({"beliefs-check", data("piA.json"), data("piB.json"), "--prior", "1/3,2/3"});
  CHECK(b.code == 0);
  CHECK(b.doc["kind"] == "coupling");
  CHECK(cli({"beliefs-check", data("perfect.json"), data("uninformative.json"), "--prior", "uniform"}).code == 1);
}

TEST_CASE("cli: value and bounds") {
  const Result v = cli({"value", data("match.json"), data("piB.json")});
  CHECK(v.code == 0);
  CHECK(v.doc["value"] == "7/10");
  CHECK(v.doc["policy"]["s2'"] == "guess2");

  const Result tight = cli({"bound-verify", data("match.json"), data("piA.json"), data("piB.json"), "--beta", "3/2"});
  CHECK(tight.code == 0);
  CHECK(tight.doc["slack"] == "0");
  CHECK(cli({"bound-verify", data("match.json"), data("perfect.json"), data("uninformative.json"), "--beta", "2"}).code == 1);

  const Result f = cli({"bound-falsify", data("perfect.json"), data("uninformative.json"), "--beta", "4"});
  CHECK(f.code == 1);
  CHECK(f.doc["decision_problem"]["kind"] == "decision_problem");
  CHECK(cli({"bound-falsify", data("piA.json"), data("piB.json"), "--beta", "3/2"}).code == 0);

  const Result d = cli({"dilute", data("ex1_pi.json"), "--beta", "2"});
  CHECK(d.code == 0);
  CHECK(d.doc["matrix"][0] == Json({"3/10", "1/5", "1/2"}));
}

TEST_CASE("cli: dynamics") {
  const Result eta = cli({"eta", data("ex1_pi.json"), "--chain", data("chain_iid.json"), "--tol", "1e-6"});
  CHECK(eta.code == 0);
  CHECK(cli({"eta", data("ex1_pi.json"), "--chain", data("chain_iid.json"), "--tol", "-1e-6"}).code == 2);
  CHECK(cli({"eta", data("ex1_pi.json"), "--chain", data("chain_iid.json"), "--tol", "tiny"}).code == 2);
  const Result eta2 = cli({"eta", data("ex1_pi.json"), "--chain", data("chain_iid.json"), "--tol", "0.000001"});
  CHECK(eta2.code == 0);
  CHECK(eta2.doc["iterations"] == 1);
  CHECK(eta2.doc["extreme_points"].size() == 2);

  const Result m = cli({"merge-horizon", data("uninformative.json"), "--chain", data("chain_sym.json"), "--eps", "0.1",
                        "--nmax", "8"});
  CHECK(m.code == 0);
  CHECK(m.doc["horizon"] == 4);
  CHECK(cli({"merge-horizon", data("uninformative.json"), "--chain", data("chain_sym.json"), "--eps", "1/1000000000",
             "--nmax", "5"})
            .code == 1);

  const Result s = cli({"stopping", data("match.json"), data("ex1_pi.json"), "--chain", data("chain_iid.json"),
                        "--horizon", "2"});
  CHECK(s.code == 0);
  CHECK(s.doc["value"] == "3/5");

  const Result c = cli({"counterexample", data("perfect.json"), data("uninformative.json"), "--prior", "uniform"});
  CHECK(c.code == 1);
  REQUIRE(c.doc["stopping_values"].size() == 4);
  CHECK(c.doc["stopping_values"][1]["garbled"] == "5/32");
  CHECK(cli({"counterexample", data("piA.json"), data("piB.json"), "--prior", "uniform"}).code == 0);
}

TEST_CASE("cli: selftest is deterministic") {
  const Result a = cli({"selftest", "--seed", "3", "--pairs", "40"});
  const Result b = cli({"selftest", "--seed", "3", "--pairs", "40"});
  CHECK(a.code == 0);
  CHECK(a.doc == b.doc);
  CHECK(a.doc["failures"].empty());
  CHECK(cli({"selftest"}).code == 2);
}
