#include <catch2/catch_amalgamated.hpp>

#include <polymem/fp_matrix.hpp>
#include <polymem/prime_field.hpp>
#include <polymem/rng.hpp>

using namespace polymem;

namespace {

FpMatrix random_matrix(std::size_t rows, std::size_t cols, const PrimeField& f, Rng& rng) {
    FpMatrix m(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.below(f.modulus());
    return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    PrimeField f(32003);
    REQUIRE(f.add(32000, 10) == 7);
    REQUIRE(f.sub(3, 10) == 32003 - 7);
    REQUIRE(f.mul(f.inv(1234), 1234) == 1);
    REQUIRE(f.pow(5, 32002) == 1);  // Fermat
    REQUIRE_THROWS_AS(PrimeField(32004), InputError);
    REQUIRE_THROWS(f.inv(0));
}

TEST_CASE("rank on fixed instances") {
    PrimeField f(32003);
    SECTION("zero matrix") {
        FpMatrix m(3, 3, f);
        REQUIRE(m.rank() == 0);
    }
    SECTION("identity") {
        FpMatrix m(4, 4, f);
        for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = 1;
        REQUIRE(m.rank() == 4);
    }
    SECTION("constructed rank one, 50x50") {
        Rng rng(99);
        FpMatrix m(50, 50, f);
        for (std::size_t j = 0; j < 50; ++j) m.at(0, j) = rng.below(32003);
        for (std::size_t i = 1; i < 50; ++i)
            for (std::size_t j = 0; j < 50; ++j) m.at(i, j) = m.at(0, j);
        REQUIRE(m.rank() == 1);
    }
}

TEST_CASE("kernel basis") {
    PrimeField f(32003);
    SECTION("identity has trivial kernel") {
        FpMatrix m(3, 3, f);
        for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = 1;
        REQUIRE(m.kernel_basis().empty());
    }
    SECTION("zero 2x5 has full kernel") {
        FpMatrix m(2, 5, f);
        REQUIRE(m.kernel_basis().size() == 5);
    }
    SECTION("one equation, two unknowns") {
        FpMatrix m(1, 2, f);
        m.at(0, 0) = 1;
        m.at(0, 1) = 1;
        auto k = m.kernel_basis();
        REQUIRE(k.size() == 1);
        // proportional to (1, p-1)
        REQUIRE(f.mul(k[0][0], f.inv(k[0][1])) == f.inv(32003 - 1));
    }
}

TEST_CASE("solve") {
    PrimeField f(32003);
    SECTION("identity system") {
        FpMatrix m(3, 3, f);
        for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = 1;
        auto s = m.solve({5, 6, 7});
        REQUIRE(s);
        REQUIRE(s->particular == FpVec{5, 6, 7});
        REQUIRE(s->kernel.empty());
    }
    SECTION("underdetermined") {
        FpMatrix m(1, 2, f);
        m.at(0, 0) = 1;
        m.at(0, 1) = 1;
        auto s = m.solve({0});
        REQUIRE(s);
        REQUIRE(s->particular == FpVec{0, 0});
        REQUIRE(s->kernel.size() == 1);
    }
    SECTION("inconsistent") {
        FpMatrix m(2, 1, f);
        m.at(0, 0) = 1;
        m.at(1, 0) = 1;
        REQUIRE_FALSE(m.solve({0, 1}));
    }
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
    for (std::uint64_t p : {32003ULL, 46337ULL}) {
        PrimeField f(p);
        Rng rng(2024 + p);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t rows = 1 + rng.below(12);
            const std::size_t cols = 1 + rng.below(12);
            FpMatrix m = random_matrix(rows, cols, f, rng);
            // thin it out so kernels are common
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    if (rng.below(3) != 0) m.at(i, j) = 0;
            const auto kernel = m.kernel_basis();
            REQUIRE(m.rank() + kernel.size() == cols);
            for (const auto& v : kernel) {
                const auto mv = m.apply(v);
                for (auto c : mv) REQUIRE(c == 0);
            }
        }
    }
}

TEST_CASE("rank invariant under row permutation and scaling") {
    PrimeField f(32003);
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 6;
        FpMatrix m = random_matrix(n, n, f, rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng.below(2)) m.at(i, j) = 0;
        const std::size_t r = m.rank();

        FpMatrix shuffled(n, n, f);
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.below(i + 1)]);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t scale = 1 + rng.below(f.modulus() - 1);
            for (std::size_t j = 0; j < n; ++j)
                shuffled.at(i, j) = f.mul(m.at(perm[i], j), scale);
        }
        REQUIRE(shuffled.rank() == r);
    }
}

TEST_CASE("deterministic across repeated runs") {
    PrimeField f(32003);
    Rng rng1(11), rng2(11);
    FpMatrix a = random_matrix(8, 10, f, rng1);
    FpMatrix b = random_matrix(8, 10, f, rng2);
    REQUIRE(a.rank() == b.rank());
    REQUIRE(a.kernel_basis() == b.kernel_basis());
}
