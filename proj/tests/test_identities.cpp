#include <catch2/catch_amalgamated.hpp>

#include <hypercx/cayley_dickson.hpp>
#include <hypercx/identities.hpp>

#include <random>

using namespace hypercx;

namespace {

StructureTable noisy_copy(const StructureTable& t, double amplitude, std::uint64_t seed) {
    StructureTable out = t;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& z : out.c) z += Complex(amplitude * dist(rng), 0.0);
    return out;
}

}  // namespace

TEST_CASE("associative tables satisfy every law with tiny residual") {
    for (int level : {1, 2}) {
        StructureTable t = cayley_dickson_table(level);
        REQUIRE(check_weak_alternativity(t).holds);
        REQUIRE(check_weak_alternativity(t).max_residual < 1e-13);
        REQUIRE(check_alternative(t).holds);
        REQUIRE(check_flexible(t).holds);
        REQUIRE(check_power_associative(t).holds);
    }
}

TEST_CASE("dimension eight is alternative but not associative") {
    StructureTable o = cayley_dickson_table(3);
    IdentityReport alt = check_alternative(o);
    REQUIRE(alt.holds);
    REQUIRE(alt.max_residual < 1e-13);
    REQUIRE(check_flexible(o).holds);
    REQUIRE(check_power_associative(o).holds);
}

TEST_CASE("dimension sixteen keeps the weak law but loses alternativity") {
    StructureTable s = cayley_dickson_table(4);
    IdentityReport weak = check_weak_alternativity(s);
    REQUIRE(weak.holds);
    REQUIRE(weak.max_residual < 1e-13);
    IdentityReport alt = check_alternative(s);
    REQUIRE_FALSE(alt.holds);
    REQUIRE(alt.max_residual > 0.5);
    REQUIRE_FALSE(alt.witness.empty());
    REQUIRE(check_flexible(s).holds);
    REQUIRE(check_power_associative(s).holds);
}

TEST_CASE("noise destroys the weak law and flexibility") {
    StructureTable bad = noisy_copy(cayley_dickson_table(4), 0.1, 2024u);
    REQUIRE_FALSE(check_weak_alternativity(bad).holds);
    REQUIRE_FALSE(check_flexible(bad).holds);
}

TEST_CASE("residual hierarchy between the laws") {
    const double slack = 1e-12;
    for (int level : {1, 2, 3, 4}) {
        StructureTable t = cayley_dickson_table(level);
        double alt = check_alternative(t).max_residual;
        double weak = check_weak_alternativity(t).max_residual;
        double flex = check_flexible(t).max_residual;
        double pow = check_power_associative(t).max_residual;
        REQUIRE(weak <= 4.0 * alt + slack);
        REQUIRE(flex <= 4.0 * weak + slack);
        REQUIRE(pow <= 4.0 * weak + slack);
    }
}

TEST_CASE("weak law verdict coincides with flexibility plus power associativity") {
    std::vector<StructureTable> tables;
    for (int level : {1, 2, 3, 4}) tables.push_back(cayley_dickson_table(level));
    tables.push_back(noisy_copy(cayley_dickson_table(3), 0.1, 7u));
    for (const StructureTable& t : tables) {
        bool weak = check_weak_alternativity(t).holds;
        bool both = check_flexible(t).holds && check_power_associative(t).holds;
        REQUIRE(weak == both);
    }
}

TEST_CASE("normalization constraints across the doubling chain") {
    NormalizationReport r0 = check_normalization(cayley_dickson_table(0));
    REQUIRE(r0.weak.holds);
    REQUIRE(r0.full.holds);
    REQUIRE(r0.weak.max_residual == 0.0);
    REQUIRE(r0.full.max_residual == 0.0);
    for (int level : {1, 2, 3}) {
        NormalizationReport r = check_normalization(cayley_dickson_table(level));
        REQUIRE(r.weak.holds);
        REQUIRE(r.full.holds);
    }
    NormalizationReport rs = check_normalization(cayley_dickson_table(4));
    REQUIRE(rs.weak.holds);
    REQUIRE(rs.weak.max_residual < 1e-12);
    REQUIRE_FALSE(rs.full.holds);
    REQUIRE(rs.full.max_residual > 0.5);
}

TEST_CASE("zero divisor scan separates division from non-division tables") {
    REQUIRE(find_zero_divisors(cayley_dickson_table(1), 2).empty());
    REQUIRE(find_zero_divisors(cayley_dickson_table(3), 2).empty());
    auto pairs = find_zero_divisors(cayley_dickson_table(4), 2);
    REQUIRE_FALSE(pairs.empty());
    StructureTable s = cayley_dickson_table(4);
    for (const auto& [u, v] : pairs) {
        REQUIRE(u.norm() * v.norm() >= 1.0);
        REQUIRE(multiply(s, u, v).norm() <= 1e-10);
    }
    REQUIRE(find_zero_divisors(cayley_dickson_table(4), 1).empty());
    REQUIRE_THROWS_AS(find_zero_divisors(s, 3), DomainError);
}

TEST_CASE("stored metric is reproduced by conjugation products") {
    for (int level : {0, 1, 2, 3, 4}) {
        IdentityReport rep = check_metric_compat(cayley_dickson_table(level));
        REQUIRE(rep.holds);
        REQUIRE(rep.max_residual < 1e-12);
    }
    StructureTable bare = StructureTable::zeros(1);
    bare.c[0] = 1.0;
    bare.g = RVec::Ones(1);
    REQUIRE_THROWS_AS(check_metric_compat(bare), InvalidInputError);
}

TEST_CASE("witnesses and residuals do not depend on the worker count") {
    StructureTable s = cayley_dickson_table(4);
    SweepOptions one, four;
    four.jobs = 4;
    IdentityReport a = check_alternative(s, one);
    IdentityReport b = check_alternative(s, four);
    REQUIRE(a.max_residual == b.max_residual);
    REQUIRE(a.witness == b.witness);
    NormalizationReport na = check_normalization(s, 1e-9, 1);
    NormalizationReport nb = check_normalization(s, 1e-9, 4);
    REQUIRE(na.full.witness == nb.full.witness);
    REQUIRE(na.full.max_residual == nb.full.max_residual);
}
