#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "bunchlab/multi.hpp"
#include "bunchlab/pair.hpp"
#include "support.hpp"

using namespace bunchlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testsupport::literal_normalization_q;
using testsupport::random_state;
using testsupport::random_unitary;

namespace {

std::vector<PureState> orthonormal_states(std::size_t q) {
    std::vector<PureState> states;
    states.reserve(q);
    for (std::size_t k = 0; k < q; ++k) states.push_back(PureState::basis(q, k));
    return states;
}

std::vector<PureState> identical_states(std::size_t q, std::size_t dim) {
    return std::vector<PureState>(q, PureState::basis(dim, 0));
}

SquareMatrix all_ones(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex{1.0, 0.0};
    return m;
}

}  // namespace

TEST_CASE("factorial_exact") {
    REQUIRE(factorial_exact(0) == 1);
    REQUIRE(factorial_exact(1) == 1);
    REQUIRE(factorial_exact(5) == 120);
    REQUIRE(factorial_exact(20) == Uint128{2432902008176640000ULL});
    REQUIRE(uint128_to_string(factorial_exact(25)) == "15511210043330985984000000");
    REQUIRE_THROWS_AS(factorial_exact(34), std::domain_error);
}

TEST_CASE("gram matrix construction") {
    SECTION("orthonormal states give the identity") {
        const GramMatrix g = gram_matrix(orthonormal_states(4));
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                const Complex expected = a == b ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                REQUIRE_THAT(std::abs(g(a, b) - expected), WithinAbs(0.0, 1e-15));
            }
    }
    SECTION("copies of one state give the all-ones matrix") {
        const GramMatrix g = gram_matrix(identical_states(3, 2));
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                REQUIRE_THAT(std::abs(g(a, b) - Complex{1.0, 0.0}), WithinAbs(0.0, 1e-15));
    }
    SECTION("two states record their overlap") {
        RandomStream rng(2);
        const PureState a = random_state(rng, 3);
        const PureState b = random_state(rng, 3);
        const Complex i_ab = overlap(a, b);
        const GramMatrix g = gram_matrix({a, b});
        REQUIRE_THAT(std::abs(g(0, 1) - i_ab), WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(std::abs(g(1, 0) - std::conj(i_ab)), WithinAbs(0.0, 1e-15));
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(gram_matrix({PureState::basis(2, 0)}), std::invalid_argument);
        REQUIRE_THROWS_AS(gram_matrix({PureState::basis(2, 0), PureState::basis(3, 0)}),
                          std::invalid_argument);
    }
    SECTION("non-Gram matrices are rejected") {
        SquareMatrix bad_diag = SquareMatrix::identity(2);
        bad_diag(0, 0) = Complex{0.9, 0.0};
        REQUIRE_THROWS_AS(GramMatrix(bad_diag), std::invalid_argument);

        SquareMatrix not_hermitian = SquareMatrix::identity(2);
        not_hermitian(0, 1) = Complex{0.5, 0.0};
        not_hermitian(1, 0) = Complex{0.1, 0.0};
        REQUIRE_THROWS_AS(GramMatrix(not_hermitian), std::invalid_argument);

        SquareMatrix not_psd = SquareMatrix::identity(2);
        not_psd(0, 1) = Complex{1.5, 0.0};
        not_psd(1, 0) = Complex{1.5, 0.0};
        REQUIRE_THROWS_AS(GramMatrix(not_psd), std::invalid_argument);
    }
}

TEST_CASE("duplicated states are a valid degenerate input") {
    RandomStream rng(6);
    const PureState s = random_state(rng, 3);
    std::vector<PureState> states{s, s, random_state(rng, 3)};
    const EnhancementResult e = beta_q(states);
    REQUIRE(e.n_const >= 1.0);
    REQUIRE(std::isfinite(e.beta));
}

TEST_CASE("permanent of small fixed matrices") {
    REQUIRE_THAT(std::abs(permanent_naive(SquareMatrix::identity(4)) - Complex{1.0, 0.0}),
                 WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(permanent_naive(all_ones(3)) - Complex{6.0, 0.0}),
                 WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(std::abs(permanent_ryser(SquareMatrix::identity(8)) - Complex{1.0, 0.0}),
                 WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(permanent_ryser(all_ones(5)) - Complex{120.0, 0.0}),
                 WithinAbs(0.0, 1e-10));

    SquareMatrix one_by_one(1);
    one_by_one(0, 0) = Complex{0.3, -0.4};
    REQUIRE(permanent_ryser(one_by_one) == Complex{0.3, -0.4});
    REQUIRE(permanent_naive(one_by_one) == Complex{0.3, -0.4});
}

TEST_CASE("two-state gram permanent reproduces 1 + |I|^2") {
    const Complex i_ab{0.4, 0.3};
    SquareMatrix m(2);
    m(0, 0) = m(1, 1) = Complex{1.0, 0.0};
    m(0, 1) = i_ab;
    m(1, 0) = std::conj(i_ab);
    const double expected = 1.0 + std::norm(i_ab);
    REQUIRE_THAT(std::abs(permanent_naive(m) - Complex{expected, 0.0}), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(permanent_ryser(m) - Complex{expected, 0.0}), WithinAbs(0.0, 1e-15));
}

TEST_CASE("cost guards") {
    REQUIRE_THROWS_AS(permanent_naive(SquareMatrix::identity(11)), std::invalid_argument);
    REQUIRE_THROWS_AS(permanent_ryser(SquareMatrix::identity(31)), std::invalid_argument);
}

TEST_CASE("Ryser matches the brute-force oracle on random complex matrices") {
    RandomStream rng(8);
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            SquareMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m(i, j) = testsupport::random_complex_normal(rng);
            const Complex expected = permanent_naive(m);
            REQUIRE_THAT(std::abs(permanent_ryser(m) - expected),
                         WithinAbs(0.0, 1e-10 * std::max(1.0, std::abs(expected))));
        }
    }
}

TEST_CASE("Ryser matches the oracle on random Gram matrices") {
    RandomStream rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PureState> states;
        for (int s = 0; s < 6; ++s) states.push_back(random_state(rng, 8));
        const GramMatrix gram = gram_matrix(states);
        const SquareMatrix& g = gram.entries();
        const Complex expected = permanent_naive(g);
        REQUIRE_THAT(std::abs(permanent_ryser(g) - expected),
                     WithinAbs(0.0, 1e-10 * std::max(1.0, std::abs(expected))));
        REQUIRE_THAT(expected.imag(), WithinAbs(0.0, 1e-10));
        REQUIRE(expected.real() >= 1.0 - 1e-10);
    }
}

TEST_CASE("normalization endpoints") {
    REQUIRE_THAT(normalization_q(orthonormal_states(4)), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(normalization_q(identical_states(4, 2)),
                 WithinAbs(24.0, 1e-10));
    const PureState a = two_mode_state({0.0, 0.0});
    const PureState b = two_mode_state({std::numbers::pi / 4, 0.0});
    REQUIRE_THAT(normalization_q({a, b}), WithinAbs(1.5, 1e-14));
}

TEST_CASE("permanent reduction equals the literal double permutation sum") {
    RandomStream rng(10);
    for (std::size_t q = 2; q <= 5; ++q) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<PureState> states;
            for (std::size_t s = 0; s < q; ++s) states.push_back(random_state(rng, q + 1));
            const Complex literal = literal_normalization_q(states);
            REQUIRE_THAT(std::abs(literal - Complex{normalization_q(states), 0.0}),
                         WithinAbs(0.0, 1e-10));
        }
    }
}

TEST_CASE("enhancement endpoints") {
    SECTION("orthonormal sets reach Q!") {
        const EnhancementResult e = beta_q(orthonormal_states(3));
        REQUIRE(e.q_factorial == 6);
        REQUIRE_THAT(e.beta, WithinAbs(6.0, 1e-12));
    }
    SECTION("identical sets fall to 1") {
        const EnhancementResult e = beta_q(identical_states(4, 2));
        REQUIRE_THAT(e.beta, WithinAbs(1.0, 1e-12));
    }
    SECTION("half overlap at Q = 2 matches the pair value") {
        const PureState a = two_mode_state({0.0, 0.0});
        const PureState b = two_mode_state({std::numbers::pi / 4, 0.0});
        REQUIRE_THAT(beta_q({a, b}).beta, WithinAbs(4.0 / 3.0, 1e-13));
    }
}

TEST_CASE("orthonormal beta is exactly Q! as integers up to Q = 20") {
    for (std::size_t q = 2; q <= 20; ++q) {
        const EnhancementResult e = beta_q(orthonormal_states(q));
        REQUIRE(e.n_const == 1.0);
        REQUIRE(e.q_factorial == Uint128{testsupport::factorial_u64(q)});
    }
}

TEST_CASE("beta_q agrees with the two-particle bunching parameter at Q = 2") {
    RandomStream rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState a = random_state(rng, 4);
        const PureState b = random_state(rng, 4);
        REQUIRE_THAT(beta_q({a, b}).beta, WithinAbs(bunching_parameter(a, b), 1e-12));
    }
}

TEST_CASE("beta_q is invariant under a common unitary") {
    RandomStream rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<PureState> states;
        for (int s = 0; s < 4; ++s) states.push_back(random_state(rng, 5));
        const UnitaryMatrix u = random_unitary(rng, 5);
        std::vector<PureState> evolved;
        for (const PureState& s : states) evolved.push_back(apply_unitary(u, s));
        REQUIRE_THAT(beta_q(evolved).beta, WithinAbs(beta_q(states).beta, 1e-10));
    }
}

TEST_CASE("beta_q lies in [1, Q!] for random sets") {
    RandomStream rng(16);
    for (std::size_t q = 2; q <= 6; ++q) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<PureState> states;
            for (std::size_t s = 0; s < q; ++s) states.push_back(random_state(rng, q + 2));
            const EnhancementResult e = beta_q(states);
            REQUIRE(e.beta >= 1.0 - 1e-10);
            REQUIRE(e.beta <= static_cast<double>(e.q_factorial) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("duplicating one state of an orthonormal set strictly lowers beta") {
    for (std::size_t q = 2; q <= 6; ++q) {
        std::vector<PureState> states = orthonormal_states(q);
        const double full = beta_q(states).beta;
        states[0] = states[q - 1];
        REQUIRE(beta_q(states).beta < full);
    }
}

TEST_CASE("same-state probabilities through the splitter") {
    const PureState r = apply_unitary(beam_splitter(), PureState::basis(2, 0));
    const PureState l = apply_unitary(beam_splitter(), PureState::basis(2, 1));
    REQUIRE_THAT(p_same_state_q({r, l}, 0, ParticleKind::boson), WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(p_same_state_q({r, r}, 0, ParticleKind::boson), WithinAbs(0.25, 1e-12));
    REQUIRE_THAT(p_same_state_q({r, l}, 0, ParticleKind::distinguishable),
                 WithinAbs(0.25, 1e-12));

    SECTION("distinguishable probabilities are plain products") {
        RandomStream rng(18);
        std::vector<PureState> states;
        for (int s = 0; s < 3; ++s) states.push_back(random_state(rng, 4));
        for (std::size_t m = 0; m < 4; ++m) {
            double product = 1.0;
            for (const PureState& s : states) product *= std::norm(s.amplitude(m));
            REQUIRE_THAT(p_same_state_q(states, m, ParticleKind::distinguishable),
                         WithinAbs(product, 1e-15));
        }
    }

    SECTION("ratio of boson to distinguishable probability is beta for every m") {
        RandomStream rng(20);
        std::vector<PureState> states;
        for (int s = 0; s < 4; ++s) states.push_back(random_state(rng, 5));
        const double beta = beta_q(states).beta;
        for (std::size_t m = 0; m < 5; ++m) {
            const double p_d = p_same_state_q(states, m, ParticleKind::distinguishable);
            if (p_d <= 1e-30) continue;
            REQUIRE_THAT(p_same_state_q(states, m, ParticleKind::boson) / p_d,
                         WithinAbs(beta, 1e-10));
        }
    }

    SECTION("index validation") {
        REQUIRE_THROWS_AS(p_same_state_q({r, l}, 2, ParticleKind::boson), std::out_of_range);
    }
}
