#pragma once

/**
 * Two-class latent variable model over items and facts,
 *
 *   P(i,f) = sum_c P(c) P(i|c) P(f|c),
 *
 * fit by expectation-maximization on a joint likelihood matrix. The fitted
 * groupings explain which facts characterize the majority class and which
 * item falls outside it.
 */

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "thinksum/aggregate.hpp"
#include "thinksum/logprob.hpp"

namespace thinksum::sum {

struct LatentClassModel {
  std::vector<std::string> item_labels;
  std::vector<std::string> fact_labels;
  std::vector<double> class_prior;       // size n_classes, sums to 1
  std::vector<double> item_given_class;  // items x classes, each class column sums to 1
  std::vector<double> fact_given_class;  // facts x classes, each class column sums to 1
  std::vector<double> log_likelihood_trace;  // data log-likelihood after each iteration
  // E_Q[log P(i,f,c)] + H(Q) for the iteration's E-step posterior Q: the
  // objective EM coordinate-ascends. Sandwiched by the data log-likelihood
  // (F_t <= LL_t <= F_{t+1}), hence non-decreasing, unlike the bare
  // expectation whose posterior-entropy drift can run either way.
  std::vector<double> expected_complete_ll_trace;
  bool degenerate = false;  // input had no structure; clusters are meaningless

  size_t n_items() const { return item_labels.size(); }
  size_t n_facts() const { return fact_labels.size(); }
  size_t n_classes() const { return class_prior.size(); }

  double p_item(size_t i, size_t c) const { return item_given_class[i * n_classes() + c]; }
  double p_fact(size_t f, size_t c) const { return fact_given_class[f * n_classes() + c]; }

  size_t item_index(const std::string& label) const {
    for (size_t i = 0; i < item_labels.size(); ++i) {
      if (item_labels[i] == label) return i;
    }
    throw std::invalid_argument("LatentClassModel: unknown item '" + label + "'");
  }

  /// Hard class assignment for an item: argmax_c P(i|c).
  size_t item_class(size_t i) const {
    size_t best = 0;
    for (size_t c = 1; c < n_classes(); ++c) {
      if (p_item(i, c) > p_item(i, best)) best = c;
    }
    return best;
  }
};

namespace detail {

// Normalize in place; an all-zero vector becomes uniform.
inline void normalize_or_uniform(std::span<double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  if (sum > 0.0) {
    for (double& x : v) x /= sum;
  } else {
    for (double& x : v) x = 1.0 / static_cast<double>(v.size());
  }
}

// Symmetric Dirichlet(1) sample: normalized Exp(1) draws.
inline std::vector<double> random_simplex(size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(n);
  for (double& x : v) x = exp1(rng);
  normalize_or_uniform(v);
  return v;
}

}  // namespace detail

/**
 * Fit the latent-class model on a joint items-by-facts matrix of
 * log-likelihoods. The matrix is exponentiated and normalized to a joint
 * distribution P(i,f); per-class distributions start from a seeded random
 * simplex sample and the class prior starts uniform. Each iteration applies
 *
 *   Q(c|i,f) ~ P(i|c) P(f|c) P(c)
 *   P(i|c)   ~ sum_f P(i,f) Q(c|i,f)
 *   P(f|c)   ~ sum_i P(i,f) Q(c|i,f)
 *   P(c)     ~ sum_{i,f} P(i,f) Q(c|i,f)
 *
 * An all-equal input is returned with the `degenerate` flag set.
 */
inline LatentClassModel em_fit(const ScoreMatrix& joint, size_t n_classes = 2,
                               size_t iterations = 200, uint64_t seed = 0) {
  if (joint.rows() < 2 || joint.cols() < 2) {
    throw std::invalid_argument("em_fit: need at least a 2x2 joint matrix");
  }
  if (!joint.all_finite()) {
    throw std::invalid_argument("em_fit: joint matrix has non-finite entries");
  }
  if (n_classes < 2) {
    throw std::invalid_argument("em_fit: need at least 2 classes");
  }

  const size_t ni = joint.rows();
  const size_t nf = joint.cols();

  // Normalize exp(log-scores) into a joint distribution, max-shifted.
  std::vector<double> w(ni * nf);
  {
    double m = joint.values[0];
    for (double v : joint.values) m = std::max(m, v);
    double total = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      w[k] = std::exp(joint.values[k] - m);
      total += w[k];
    }
    for (double& x : w) x /= total;
  }

  LatentClassModel model;
  model.item_labels = joint.row_labels;
  model.fact_labels = joint.col_labels;
  model.class_prior.assign(n_classes, 1.0 / static_cast<double>(n_classes));

  bool all_equal = true;
  for (size_t k = 1; k < w.size(); ++k) {
    if (std::abs(w[k] - w[0]) > 1e-15) {
      all_equal = false;
      break;
    }
  }
  model.degenerate = all_equal;

  std::mt19937_64 rng(seed);
  model.item_given_class.resize(ni * n_classes);
  model.fact_given_class.resize(nf * n_classes);
  for (size_t c = 0; c < n_classes; ++c) {
    auto pi = detail::random_simplex(ni, rng);
    auto pf = detail::random_simplex(nf, rng);
    for (size_t i = 0; i < ni; ++i) model.item_given_class[i * n_classes + c] = pi[i];
    for (size_t f = 0; f < nf; ++f) model.fact_given_class[f * n_classes + c] = pf[f];
  }

  std::vector<double> q(n_classes);
  std::vector<double> new_pi(ni * n_classes);
  std::vector<double> new_pf(nf * n_classes);
  std::vector<double> new_pc(n_classes);

  model.log_likelihood_trace.reserve(iterations);
  model.expected_complete_ll_trace.reserve(iterations);
  for (size_t iter = 0; iter < iterations; ++iter) {
    std::fill(new_pi.begin(), new_pi.end(), 0.0);
    std::fill(new_pf.begin(), new_pf.end(), 0.0);
    std::fill(new_pc.begin(), new_pc.end(), 0.0);

    double entropy = 0.0;  // H(Q) of the E-step posterior, weighted by P(i,f)
    for (size_t i = 0; i < ni; ++i) {
      for (size_t f = 0; f < nf; ++f) {
        const double weight = w[i * nf + f];
        for (size_t c = 0; c < n_classes; ++c) {
          q[c] = model.p_item(i, c) * model.p_fact(f, c) * model.class_prior[c];
        }
        detail::normalize_or_uniform(q);
        for (size_t c = 0; c < n_classes; ++c) {
          const double wq = weight * q[c];
          new_pi[i * n_classes + c] += wq;
          new_pf[f * n_classes + c] += wq;
          new_pc[c] += wq;
          if (q[c] > 0.0) entropy -= wq * std::log(q[c]);
        }
      }
    }

    // Class-column normalizations.
    for (size_t c = 0; c < n_classes; ++c) {
      double sum_i = 0.0, sum_f = 0.0;
      for (size_t i = 0; i < ni; ++i) sum_i += new_pi[i * n_classes + c];
      for (size_t f = 0; f < nf; ++f) sum_f += new_pf[f * n_classes + c];
      for (size_t i = 0; i < ni; ++i) {
        model.item_given_class[i * n_classes + c] =
            sum_i > 0.0 ? new_pi[i * n_classes + c] / sum_i : 1.0 / static_cast<double>(ni);
      }
      for (size_t f = 0; f < nf; ++f) {
        model.fact_given_class[f * n_classes + c] =
            sum_f > 0.0 ? new_pf[f * n_classes + c] / sum_f : 1.0 / static_cast<double>(nf);
      }
    }
    model.class_prior = new_pc;
    detail::normalize_or_uniform(model.class_prior);

    // E_Q[log P(i,f,c)] collapses onto the M-step sufficient statistics:
    // the new_* accumulators are exactly the Q-masses each factor sees.
    double ecll = 0.0;
    for (size_t c = 0; c < n_classes; ++c) {
      if (new_pc[c] > 0.0) ecll += new_pc[c] * std::log(model.class_prior[c]);
      for (size_t i = 0; i < ni; ++i) {
        const double mass = new_pi[i * n_classes + c];
        if (mass > 0.0) ecll += mass * std::log(model.p_item(i, c));
      }
      for (size_t f = 0; f < nf; ++f) {
        const double mass = new_pf[f * n_classes + c];
        if (mass > 0.0) ecll += mass * std::log(model.p_fact(f, c));
      }
    }
    model.expected_complete_ll_trace.push_back(ecll + entropy);

    // Data log-likelihood under the refreshed parameters.
    double ll = 0.0;
    for (size_t i = 0; i < ni; ++i) {
      for (size_t f = 0; f < nf; ++f) {
        double p = 0.0;
        for (size_t c = 0; c < n_classes; ++c) {
          p += model.class_prior[c] * model.p_item(i, c) * model.p_fact(f, c);
        }
        ll += w[i * nf + f] * std::log(p);
      }
    }
    model.log_likelihood_trace.push_back(ll);
  }

  return model;
}

/**
 * Odd-item score: the total probability of `item` sitting in one class while
 * every item in `others` sits in the other,
 *
 *   S_i = sum_{c, c' != c} P(i|c) P(c) prod_{m in others} P(m|c') P(c').
 *
 * The odd item is the argmax of S_i over candidate items.
 */
inline double lvm_odd_score(const LatentClassModel& model, const std::string& item,
                            const std::vector<std::string>& others) {
  const size_t i = model.item_index(item);
  std::vector<size_t> other_idx;
  other_idx.reserve(others.size());
  for (const auto& m : others) {
    size_t idx = model.item_index(m);
    if (idx == i) {
      throw std::invalid_argument("lvm_odd_score: '" + item + "' listed in others");
    }
    other_idx.push_back(idx);
  }

  std::vector<double> log_terms;
  for (size_t c = 0; c < model.n_classes(); ++c) {
    for (size_t cp = 0; cp < model.n_classes(); ++cp) {
      if (cp == c) continue;
      double lt = std::log(model.p_item(i, c)) + std::log(model.class_prior[c]);
      for (size_t m : other_idx) {
        lt += std::log(model.p_item(m, cp)) + std::log(model.class_prior[cp]);
      }
      log_terms.push_back(lt);
    }
  }
  const double total = log_sum_exp(log_terms);
  return std::isfinite(total) ? std::exp(total) : 0.0;
}

}  // namespace thinksum::sum
