#pragma once

// Two-particle joint probabilities for bosons and distinguishable particles,
// and the bunching parameter beta = p_B / p_D = 2 / (1 + |I|^2), where I is
// the overlap between the two initial single-particle states.

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "bunchlab/states.hpp"

namespace bunchlab {

// Unordered pair of final basis states {m, p}.
struct PairOutcome {
    std::size_t m = 0;
    std::size_t p = 0;
};

struct PairProbabilities {
    double p_boson = 0.0;
    double p_dist = 0.0;
    std::optional<double> beta;  // defined iff p_dist > 0
};

namespace detail {

inline void require_pair(const PureState& psi1, const PureState& psi2) {
    if (psi1.dim() != psi2.dim())
        throw std::invalid_argument("pair: dimension mismatch");
}

inline void require_outcome(const PureState& s, PairOutcome out) {
    if (out.m >= s.dim() || out.p >= s.dim())
        throw std::out_of_range("pair: outcome index out of range");
}

}  // namespace detail

/// N = 1 + |<psi1|psi2>|^2; lies in [1, 2] for normalized states.
inline double normalization_constant(const PureState& psi1, const PureState& psi2) {
    detail::require_pair(psi1, psi2);
    return 1.0 + std::norm(overlap(psi1, psi2));
}

// Probability of finding the two bosons in states {m, p}:
//   m != p:  |<m|psi1><p|psi2> + <p|psi1><m|psi2>|^2 / N
//   m == p:  2 |<m|psi1><m|psi2>|^2 / N
inline double joint_prob_boson(const PureState& psi1, const PureState& psi2, PairOutcome out) {
    detail::require_pair(psi1, psi2);
    detail::require_outcome(psi1, out);
    const double n = normalization_constant(psi1, psi2);
    const Complex a_m = psi1.amplitude(out.m);
    const Complex b_m = psi2.amplitude(out.m);
    if (out.m == out.p) return 2.0 * std::norm(a_m * b_m) / n;
    const Complex a_p = psi1.amplitude(out.p);
    const Complex b_p = psi2.amplitude(out.p);
    return std::norm(a_m * b_p + a_p * b_m) / n;
}

// Same outcome for distinguishable particles: products of single-particle
// probabilities, both orderings combined when m != p.
inline double joint_prob_distinguishable(const PureState& psi1, const PureState& psi2,
                                         PairOutcome out) {
    detail::require_pair(psi1, psi2);
    detail::require_outcome(psi1, out);
    const Complex a_m = psi1.amplitude(out.m);
    const Complex b_m = psi2.amplitude(out.m);
    if (out.m == out.p) return std::norm(a_m * b_m);
    const Complex a_p = psi1.amplitude(out.p);
    const Complex b_p = psi2.amplitude(out.p);
    return std::norm(a_m * b_p) + std::norm(a_p * b_m);
}

// beta = 2 / (1 + |I|^2). Depends only on the initial overlap, so it is
// invariant under any common unitary evolution of the pair.
inline double bunching_parameter(const PureState& psi1, const PureState& psi2) {
    return 2.0 / normalization_constant(psi1, psi2);
}

/// Closed form of beta for two two-mode states.
inline double beta_two_mode(TwoModeParams p1, TwoModeParams p2) {
    return 2.0 / (1.0 + overlap_sq_two_mode(p1, p2));
}

// Both probabilities at one outcome plus their ratio; the ratio is left
// unset where p_dist vanishes (it only has a meaning as a limit there).
inline PairProbabilities outcome_probabilities(const PureState& psi1, const PureState& psi2,
                                               PairOutcome out) {
    PairProbabilities result;
    result.p_boson = joint_prob_boson(psi1, psi2, out);
    result.p_dist = joint_prob_distinguishable(psi1, psi2, out);
    if (result.p_dist > 0.0) result.beta = result.p_boson / result.p_dist;
    return result;
}

}  // namespace bunchlab
