#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gvseq/recurrence.hpp"
#include "oracles.hpp"

using namespace gvseq;

namespace {

const Poly kFib = Poly::from_ints({-1, -1, 1});        // x^2 - x - 1
const Poly kMersenne = Poly::from_ints({2, -3, 1});    // x^2 - 3x + 2
const Poly kDouble = Poly::from_ints({4, -4, 1});      // (x - 2)^2
const Poly kFibSq = Poly::from_ints({1, -2, -2, 1});   // char poly of F_n^2

std::vector<BigRat> rat_init(std::initializer_list<long> v) {
    std::vector<BigRat> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("recurrence construction", "[recurrence]") {
    CHECK_NOTHROW(new_recurrence(kFib, rat_init({0, 1})));

    auto thrown_code = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::InvalidArgument;
    };
    CHECK(thrown_code([] { new_recurrence(Poly::from_ints({0, -1, 1}), rat_init({0, 1})); }) ==
          Errc::ZeroRoot);
    CHECK(thrown_code([] { new_recurrence(Poly::from_ints({-1, 0, 2}), rat_init({0, 1})); }) ==
          Errc::NotMonic);
    CHECK(thrown_code([] { new_recurrence(Poly::from_ints({-1, -1, 1}), rat_init({0, 1, 2})); }) ==
          Errc::LengthMismatch);
}

TEST_CASE("term iteration against direct oracles", "[recurrence]") {
    auto fib = new_recurrence(kFib, rat_init({0, 1}));
    auto lucas = new_recurrence(kFib, rat_init({2, 1}));

    auto f_expect = oracles::fibonacci_upto(50);
    auto terms = terms_upto(fib, 50);
    for (unsigned long n = 0; n <= 50; ++n) CHECK(terms[n] == BigRat(f_expect[n], 1));
    CHECK(term(fib, 10) == 55);

    auto l_expect = oracles::lucas_upto(30);
    auto lterms = terms_upto(lucas, 30);
    for (unsigned long n = 0; n <= 30; ++n) CHECK(lterms[n] == BigRat(l_expect[n], 1));
    CHECK(term(lucas, 0) == 2);

    auto ramp = new_recurrence(kDouble, rat_init({0, 1}));
    CHECK(term(ramp, 5) == 80);
    for (unsigned long n = 0; n <= 12; ++n) CHECK(term(ramp, n) == BigRat(oracles::doubled_ramp(n), 1));
}

TEST_CASE("integral inputs give integral terms", "[recurrence]") {
    std::mt19937 rng(401);
    for (int c = 0; c < 40; ++c) {
        Poly f = oracles::random_monic_poly(rng, oracles::rand_in(rng, 1, 5), -5, 5);
        if (f.coeff(0) == 0) continue;
        std::vector<BigRat> init;
        for (int i = 0; i < f.degree(); ++i) init.emplace_back(oracles::rand_in(rng, -9, 9));
        auto rec = new_recurrence(f, init);
        for (const BigRat& t : terms_upto(rec, 30)) CHECK(is_integer(t));
    }
}

TEST_CASE("impulse basis", "[recurrence]") {
    SECTION("kronecker delta initial conditions") {
        std::mt19937 rng(409);
        for (int c = 0; c < 20; ++c) {
            Poly f = oracles::random_monic_poly(rng, oracles::rand_in(rng, 1, 6), -5, 5);
            if (f.coeff(0) == 0) continue;
            auto basis = impulse_basis(f);
            auto table = basis.table(static_cast<unsigned long>(f.degree()) - 1);
            for (std::size_t k = 0; k < basis.order(); ++k)
                for (std::size_t j = 0; j < basis.order(); ++j)
                    CHECK(table[k][j] == (j == k ? 1 : 0));
        }
    }

    SECTION("fibonacci impulse patterns") {
        auto basis = impulse_basis(kFib);
        auto table = basis.table(12);
        auto f = oracles::fibonacci_upto(13);
        for (unsigned long n = 1; n <= 12; ++n) {
            CHECK(table[0][n] == BigRat(f[n - 1], 1));  // X^(0)_n = F_{n-1}
            CHECK(table[1][n] == BigRat(f[n], 1));      // X^(1)_n = F_n
        }
        CHECK(table[0][0] == 1);
    }

    SECTION("double-root impulse closed form") {
        auto basis = impulse_basis(kDouble);
        auto table = basis.table(10);
        for (unsigned long n = 0; n <= 10; ++n)
            CHECK(table[1][n] == BigRat(oracles::doubled_ramp(n), 1));
    }
}

TEST_CASE("impulse decomposition", "[recurrence]") {
    SECTION("lucas coefficients are (2, 1)") {
        auto lucas = new_recurrence(kFib, rat_init({2, 1}));
        auto coeffs = decompose(lucas);
        REQUIRE(coeffs.size() == 2);
        CHECK(coeffs[0] == 2);
        CHECK(coeffs[1] == 1);
        // L_2 = 2 * X^(0)_2 + 1 * X^(1)_2 = 2 + 1 = 3
        auto table = impulse_basis(kFib).table(2);
        CHECK(coeffs[0] * table[0][2] + coeffs[1] * table[1][2] == 3);
    }

    SECTION("impulse sequences decompose to unit vectors") {
        auto basis = impulse_basis(kFibSq);
        for (std::size_t k = 0; k < basis.order(); ++k) {
            auto coeffs = decompose(basis.sequences[k]);
            for (std::size_t j = 0; j < coeffs.size(); ++j) CHECK(coeffs[j] == (j == k ? 1 : 0));
        }
    }

    SECTION("reconstruction is exact for random order-4 recurrences") {
        std::mt19937 rng(419);
        for (int c = 0; c < 25; ++c) {
            Poly f = oracles::random_monic_poly(rng, 4, -5, 5);
            if (f.coeff(0) == 0) continue;
            std::vector<BigRat> init;
            for (int i = 0; i < 4; ++i) init.emplace_back(oracles::rand_in(rng, -9, 9));
            auto rec = new_recurrence(f, init);
            auto coeffs = decompose(rec);
            auto table = impulse_basis(f).table(30);
            auto expect = terms_upto(rec, 30);
            for (unsigned long n = 0; n <= 30; ++n) {
                BigRat sum(0);
                for (std::size_t k = 0; k < coeffs.size(); ++k) sum += coeffs[k] * table[k][n];
                CHECK(sum == expect[n]);
            }
        }
    }
}

TEST_CASE("nondegeneracy detection", "[recurrence]") {
    auto check = [](const Poly& f, NondegeneracyVerdict::Status status,
                    std::optional<unsigned long> witness) {
        auto v = nondegeneracy_check(f);
        CHECK(v.status == status);
        CHECK(v.witness == witness);
    };

    check(Poly::from_ints({-1, 0, 1}), NondegeneracyVerdict::Status::UnityRatio, 2);  // x^2 - 1
    check(Poly::from_ints({1, 0, 1}), NondegeneracyVerdict::Status::UnityRatio, 2);   // x^2 + 1
    check(kFib, NondegeneracyVerdict::Status::NonDegenerate, std::nullopt);
    check(kDouble, NondegeneracyVerdict::Status::NonDegenerate, std::nullopt);
    check(Poly::from_ints({0, -1, 1}), NondegeneracyVerdict::Status::ZeroRoot, std::nullopt);  // x^2 - x
    check(Poly::from_ints({1, 1, 1}), NondegeneracyVerdict::Status::UnityRatio, 3);   // x^2 + x + 1
    check(Poly::from_ints({2, 0, 1}), NondegeneracyVerdict::Status::UnityRatio, 2);   // x^2 + 2
    check(kMersenne, NondegeneracyVerdict::Status::NonDegenerate, std::nullopt);
    check(kFibSq, NondegeneracyVerdict::Status::NonDegenerate, std::nullopt);
}

TEST_CASE("ratio polynomial", "[recurrence]") {
    SECTION("fibonacci ratio polynomial factors") {
        // Res_y(f(y), f(xy)) for x^2 - x - 1 is (x-1)^2 (x^2 + 3x + 1) up to sign
        Poly r = ratio_poly(kFib);
        CHECK(r == Poly::from_ints({1, 1, -4, 1, 1}));
    }

    SECTION("pointwise agreement with a Sylvester-matrix determinant oracle") {
        std::mt19937 rng(431);
        for (int c = 0; c < 12; ++c) {
            Poly f = oracles::random_monic_poly(rng, oracles::rand_in(rng, 2, 3), -4, 4);
            if (f.coeff(0) == 0) continue;
            Poly r = ratio_poly(f);
            for (long t : {2L, 3L, 5L}) {
                std::vector<BigRat> scaled(f.coeffs());
                BigRat p(1);
                for (auto& coef : scaled) {
                    coef *= p;
                    p *= t;
                }
                BigRat oracle =
                    oracles::laplace_det(oracles::sylvester_matrix(f, Poly(std::move(scaled))));
                // ratio_poly is the primitive integer image, so compare up to
                // the constant factor between the two evaluations
                BigRat mine = r.eval(BigRat(t));
                if (oracle == 0) {
                    CHECK(mine == 0);
                } else {
                    REQUIRE(mine != 0);
                    BigRat ratio = oracle / mine;
                    for (long u : {7L, 11L}) {
                        std::vector<BigRat> sc2(f.coeffs());
                        BigRat pu(1);
                        for (auto& coef : sc2) {
                            coef *= pu;
                            pu *= u;
                        }
                        BigRat o2 = oracles::laplace_det(oracles::sylvester_matrix(f, Poly(std::move(sc2))));
                        CHECK(o2 == ratio * r.eval(BigRat(u)));
                    }
                }
            }
        }
    }

    SECTION("structural unity multiplicity") {
        // For a nondegenerate input the multiplicity of (x - 1) in R equals
        // the sum of squared root multiplicities, and all cyclotomic gcds
        // beyond k = 1 are trivial.
        for (const Poly& f : {kFib, kMersenne, kDouble, kFibSq}) {
            Poly r = ratio_poly(f);
            unsigned long mult = 0;
            Poly probe = r;
            while (true) {
                auto [q, rem] = divrem(probe, Poly::from_ints({-1, 1}));
                if (!rem.is_zero()) break;
                ++mult;
                probe = q;
            }
            CHECK(mult == yun_squarefree(f).sum_multiplicity_squares());
            unsigned long dr = static_cast<unsigned long>(r.degree());
            for (unsigned long k = 2; k <= 2 * dr * dr; ++k) {
                if (euler_phi(k) > dr) continue;
                CHECK(poly_gcd(r, cyclotomic(k)) == Poly::one());
            }
        }
    }
}

TEST_CASE("spectral coefficients", "[recurrence]") {
    const BigRat prec = pow10_inv(20);

    SECTION("distinct rational roots: X^(1)_n = 2^n - 1") {
        auto sc = spectral_coefficients(kMersenne, prec);
        REQUIRE(sc.exact);
        REQUIRE(sc.roots.boxes.size() == 2);
        CHECK(sc.roots.boxes[0].re == 1);
        CHECK(sc.roots.boxes[1].re == 2);
        CHECK(sc.entry(1, 0, 0).re.lo == -1);  // c^(1)_{0,1} = -1
        CHECK(sc.entry(1, 0, 0).re.hi == -1);
        CHECK(sc.entry(1, 1, 0).re.lo == 1);   // c^(1)_{0,2} = 1
        CHECK(sc.entry(1, 1, 0).re.hi == 1);
    }

    SECTION("double root: X^(1)_n = n 2^(n-1)") {
        auto sc = spectral_coefficients(kDouble, prec);
        REQUIRE(sc.exact);
        REQUIRE(sc.roots.boxes.size() == 1);
        CHECK(sc.entry(1, 0, 0).re.lo == 0);        // c^(1)_{0,1} = 0
        CHECK(sc.entry(1, 0, 0).re.hi == 0);
        CHECK(sc.entry(1, 0, 1).re.lo == BigRat(1, 2));  // c^(1)_{1,1} = 1/2
        CHECK(sc.entry(1, 0, 1).re.hi == BigRat(1, 2));
    }

    SECTION("reconstruction encloses the kronecker delta") {
        for (const Poly& f : {kFib, kFibSq, Poly::from_ints({-1, -1, 0, 1})}) {
            auto sc = spectral_coefficients(f, prec);
            const std::size_t r = static_cast<std::size_t>(f.degree());
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t t = 0; t < r; ++t) {
                    Box sum = Box::point(BigRat(0));
                    for (std::size_t j = 0; j < sc.roots.boxes.size(); ++j) {
                        Box alpha_t = pow_n(box_of(sc.roots.boxes[j]), t, 256);
                        for (unsigned i = 0; i < sc.roots.boxes[j].multiplicity; ++i) {
                            BigRat ti = i == 0 ? BigRat(1)
                                               : rat_pow(BigRat(BigInt(t), 1), static_cast<long>(i));
                            sum = sum + scale(sc.entry(k, j, i) * alpha_t, ti);
                        }
                    }
                    CHECK(sum.re.contains(BigRat(t == k ? 1 : 0)));
                    CHECK(sum.im.contains(BigRat(0)));
                    CHECK(sum.width() <= BigRat(1000) * prec);
                }
            }
        }
    }
}
