#include "infoorder/corpus.hpp"

#include "infoorder/beliefs.hpp"
#include "infoorder/order.hpp"

namespace infoorder {

namespace {

using Index = Eigen::Index;

Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

}  // namespace

VectorQ random_distribution(Rng& rng, Index size, int max_denominator) {
  const int d = static_cast<int>(uniform_index(rng, 1, max_denominator));
  std::vector<int> counts(static_cast<std::size_t>(size), 0);
  for (int unit = 0; unit < d; ++unit) ++counts[static_cast<std::size_t>(uniform_index(rng, 0, size - 1))];
  VectorQ out(size);
  for (Index i = 0; i < size; ++i) out(i) = Rational(counts[static_cast<std::size_t>(i)], d);
  return out;
}

VectorQ random_full_support(Rng& rng, Index size, int max_denominator) {
  const int d = static_cast<int>(uniform_index(rng, size, std::max<Index>(size, max_denominator)));
  std::vector<int> counts(static_cast<std::size_t>(size), 1);
  for (Index unit = size; unit < d; ++unit) ++counts[static_cast<std::size_t>(uniform_index(rng, 0, size - 1))];
  VectorQ out(size);
  for (Index i = 0; i < size; ++i) out(i) = Rational(counts[static_cast<std::size_t>(i)], d);
  return out;
}

Experiment random_experiment(Rng& rng, Index states, Index signals, int max_denominator) {
  MatrixQ rows(states, signals);
  for (Index theta = 0; theta < states; ++theta) {
    rows.row(theta) = random_distribution(rng, signals, max_denominator).transpose();
  }
  return validate_experiment(std::move(rows));
}

Experiment random_full_support_experiment(Rng& rng, Index states, Index signals, int max_denominator) {
  MatrixQ rows(states, signals);
  for (Index theta = 0; theta < states; ++theta) {
    rows.row(theta) = random_full_support(rng, signals, max_denominator).transpose();
  }
  return validate_experiment(std::move(rows));
}

Experiment random_garbling(Rng& rng, const Experiment& experiment, Index signals) {
  // kernel(s, s'): each reference signal sends mass 1 to one output signal or
  // splits it in halves between two.
  MatrixQ kernel = MatrixQ::Zero(signals, experiment.signal_count());
  for (Index t = 0; t < experiment.signal_count(); ++t) {
    const Index a = uniform_index(rng, 0, signals - 1);
    if (uniform_index(rng, 0, 1) == 0) {
      kernel(a, t) += 1;
    } else {
      kernel(a, t) += Rational(1, 2);
      kernel(uniform_index(rng, 0, signals - 1), t) += Rational(1, 2);
    }
  }
  return validate_experiment(MatrixQ(experiment.matrix * kernel.transpose()));
}

std::vector<ExperimentPair> random_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<ExperimentPair> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Index states = uniform_index(rng, 0, 9) == 0 ? 1 : uniform_index(rng, 2, 4);
    switch (i % 4) {
      case 0: {
        Experiment a = random_experiment(rng, states, uniform_index(rng, 1, 4), 12);
        Experiment b = random_experiment(rng, states, uniform_index(rng, 1, 4), 12);
        corpus.push_back({std::move(a), std::move(b), "independent"});
        break;
      }
      case 1: {
        Experiment reference = random_experiment(rng, states, uniform_index(rng, 1, 4), 6);
        Experiment garbled = random_garbling(rng, reference, uniform_index(rng, 1, 4));
        corpus.push_back({std::move(garbled), std::move(reference), "blackwell"});
        break;
      }
      case 2: {
        Experiment core = random_experiment(rng, states, uniform_index(rng, 1, 3), 6);
        Experiment garbled = random_garbling(rng, core, uniform_index(rng, 1, 4));
        corpus.push_back({std::move(garbled), dilute(core, 2), "diluted"});
        break;
      }
      default: {
        Experiment garbled = random_experiment(rng, states, uniform_index(rng, 1, 4), 6);
        Experiment reference = random_garbling(rng, garbled, uniform_index(rng, 1, 4));
        corpus.push_back({std::move(garbled), std::move(reference), "reversed"});
        break;
      }
    }
  }
  return corpus;
}

SelftestReport run_selftest(std::uint64_t seed, std::size_t pairs) {
  SelftestReport report;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto corpus = random_corpus(seed, pairs);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [garbled, reference, origin] = corpus[i];
    const std::string tag = "pair " + std::to_string(i) + " (" + origin + "): ";
    ++report.pairs;

    const auto weighted = check_weighted(garbled, reference);
    if (weighted) {
      ++report.ordered;
      if (!verify_certificate(*weighted)) report.failures.push_back(tag + "weighted certificate fails");
    }
    for (int k = 0; k < 5; ++k) {
      const Prior prior{random_full_support(rng, garbled.state_count(), 12)};
      const auto coupling = check_weighted_beliefs(garbled, reference, prior);
      if (coupling.has_value() != weighted.has_value()) {
        report.failures.push_back(tag + "belief-hull check disagrees with the LP check");
        break;
      }
      if (coupling && !verify_coupling(*coupling, garbled, reference, prior).ok()) {
        report.failures.push_back(tag + "coupling fails to verify");
      }
    }

    const auto blackwell = check_blackwell(garbled, reference);
    const auto smallest = min_size(garbled, reference);
    if (blackwell) ++report.blackwell;
    if (blackwell.has_value() != (smallest && smallest->size == 1)) {
      report.failures.push_back(tag + "Blackwell check disagrees with minimal size 1");
    }

    if (smallest) {
      const Rational beta = 2;
      const GarblingCertificate outer = dilution_certificate(reference, beta);
      const GarblingCertificate chained = compose(smallest->certificate, outer);
      if (!verify_certificate(chained) || chained.size() > smallest->size * beta) {
        report.failures.push_back(tag + "composition through a dilution fails the size bound");
      }
    }
  }
  return report;
}

}  // namespace infoorder
