#include "doctest.h"

#include <random>

#include "logfirm/campana.hpp"

using namespace logfirm;

namespace {

MonomialIdeal ideal(std::size_t vars, std::initializer_list<std::initializer_list<long>> gens) {
    std::vector<IntVector> g;
    for (auto x : gens) g.push_back(make_vector(x));
    return make_ideal(vars, g);
}

MonomialPrime prime(std::initializer_list<std::size_t> vs) { return {vs}; }

// (x, y, z) -> (x^2, y^2, yz)
IntMatrix b1_chart() { return IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 1, 1}}; }

// u in R^e: some e generators of R (with repetition) divide u.
bool in_power(const std::vector<IntVector>& r, IntVector u, long e) {
    if (e == 0) return true;
    for (const auto& g : r) {
        bool ok = true;
        for (std::size_t i = 0; i < u.size(); ++i) ok = ok && g[i] <= u[i];
        if (!ok) continue;
        if (in_power(r, sub(u, g), e - 1)) return true;
    }
    return false;
}

template <class F>
void for_each_monomial(std::size_t vars, long bound, F f) {
    IntVector u(vars);
    while (true) {
        f(u);
        std::size_t i = 0;
        while (i < vars && u[i] == bound) u[i++] = 0;
        if (i == vars) return;
        ++u[i];
    }
}

std::vector<MonomialIdeal> corpus() {
    return {ideal(2, {{2, 0}, {0, 2}}), ideal(1, {{1}}),      ideal(2, {{2, 0}, {1, 1}}),
            ideal(3, {{0, 2, 0}, {0, 1, 1}}), ideal(2, {{1, 1}}), ideal(2, {{3, 1}}),
            ideal(3, {{2, 1, 0}, {0, 2, 1}, {1, 0, 2}}), ideal(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}),
            ideal(2, {{2, 1}, {1, 3}}), ideal(3, {{3, 0, 0}, {0, 2, 0}, {1, 1, 1}})};
}

}  // namespace

TEST_CASE("minimal_primes") {
    CHECK(minimal_primes(ideal(2, {{2, 0}, {0, 2}})) == std::vector<MonomialPrime>{prime({0, 1})});
    CHECK(minimal_primes(ideal(2, {{1, 1}})) == std::vector<MonomialPrime>{prime({0}), prime({1})});
    CHECK(minimal_primes(ideal(3, {{0, 2, 0}, {0, 1, 1}})) == std::vector<MonomialPrime>{prime({1})});
    CHECK_THROWS_AS(minimal_primes(make_ideal(2, {})), Error);
    try {
        minimal_primes(ideal(2, {{0, 0}}));
        FAIL("expected ZeroOrUnitIdeal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroOrUnitIdeal);
    }
}

TEST_CASE("containment_order and m_multiplicity") {
    CHECK(containment_order(ideal(2, {{2, 0}, {0, 2}}), prime({0, 1})) == 2);
    CHECK(containment_order(ideal(3, {{0, 2, 0}, {0, 1, 1}}), prime({1})) == 1);
    CHECK(containment_order(ideal(1, {{1}}), prime({0})) == 1);
    try {
        containment_order(ideal(2, {{2, 0}, {0, 2}}), prime({0}));
        FAIL("expected NotContaining");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotContaining);
    }
    CHECK(m_multiplicity(ideal(2, {{0, 2}})) == 2);
    CHECK(m_multiplicity(ideal(2, {{3, 1}})) == 1);
    CHECK(m_multiplicity(ideal(2, {{2, 0}, {0, 2}})) == 2);
}

TEST_CASE("pullback_ideal") {
    // Target coordinates (u, v, w).
    CHECK(pullback_ideal(b1_chart(), ideal(3, {{1, 0, 0}, {0, 1, 0}})) == ideal(3, {{2, 0, 0}, {0, 2, 0}}));
    CHECK(pullback_ideal(b1_chart(), ideal(3, {{0, 1, 0}, {0, 0, 1}})) == ideal(3, {{0, 2, 0}, {0, 1, 1}}));
    CHECK(pullback_ideal(IntMatrix::identity(1), ideal(1, {{1}})) == ideal(1, {{1}}));
    // The four cases of the example.
    CHECK(m_multiplicity(pullback_ideal(b1_chart(), ideal(3, {{1, 0, 0}, {0, 1, 0}}))) == 2);
    CHECK(m_multiplicity(pullback_ideal(b1_chart(), ideal(3, {{0, 1, 0}}))) == 2);
    CHECK(m_multiplicity(pullback_ideal(b1_chart(), ideal(3, {{0, 1, 0}, {0, 0, 1}}))) == 1);
}

TEST_CASE("linear_substitution") {
    // u - v pulls back to x^2 - y^2 = (x - y)(x + y); x' = x - y, y' = x + y.
    IntMatrix m{{1, -1}, {1, 1}};
    auto f = linear_substitution_factored({{make_vector({1, -1}), make_vector({1, 1})}}, m);
    REQUIRE(f);
    CHECK(*f == ideal(2, {{1, 1}}));
    CHECK(m_multiplicity(*f) == 1);
    CHECK(minimal_primes(*f) == std::vector<MonomialPrime>{prime({0}), prime({1})});

    IntPolynomial diff{2, {{make_vector({2, 0}), 1}, {make_vector({0, 2}), -1}}};
    CHECK(linear_substitution({diff}, m) == f);

    auto id = linear_substitution({IntPolynomial::monomial(make_vector({2, 1})), IntPolynomial::monomial(make_vector({0, 3}))},
                                  IntMatrix::identity(2));
    REQUIRE(id);
    CHECK(*id == ideal(2, {{2, 1}, {0, 3}}));

    IntPolynomial sum{2, {{make_vector({2, 0}), 1}, {make_vector({0, 2}), 1}}};
    long tried = 0;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d) {
                    IntMatrix s{{a, b}, {c, d}};
                    if (a * d - b * c == 0) {
                        CHECK_THROWS_AS(linear_substitution({sum}, s), Error);
                        continue;
                    }
                    ++tried;
                    CHECK_FALSE(linear_substitution({sum}, s));
                }
    CHECK(tried > 0);
    try {
        linear_substitution({sum}, IntMatrix{{1, 1}, {2, 2}});
        FAIL("expected NotUnimodular");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotUnimodular);
    }
}

TEST_CASE("variant_multiplicities") {
    auto v = variant_multiplicities(ideal(2, {{2, 0}, {0, 2}}));
    CHECK(v.m_a == 2);
    CHECK(v.m_b == 2);
    CHECK(v.m_c == 2);
    CHECK(v.m_d_threshold == 3);
    auto p = variant_multiplicities(ideal(2, {{1, 0}}));
    CHECK(p.m_a == 1);
    CHECK(p.m_b == 1);
    CHECK(p.m_c == 1);
    CHECK(p.m_d_threshold == 1);
    CHECK(variant_multiplicities(ideal(2, {{2, 0}, {1, 1}})).m_b == 1);
}

TEST_CASE("irreducible_decomposition") {
    // (x^2, xy) = (x) cap (x^2, y)
    auto d = irreducible_decomposition(ideal(2, {{2, 0}, {1, 1}}));
    CHECK(d == std::vector<MonomialIdeal>{ideal(2, {{0, 1}, {2, 0}}), ideal(2, {{1, 0}})});
    for (const auto& i : corpus()) {
        auto parts = irreducible_decomposition(i);
        auto meet = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) meet = ideal_intersection(meet, parts[k]);
        CHECK(meet == i);
        for (const auto& q : parts)
            for (const auto& g : q.generators) CHECK(std::count_if(g.begin(), g.end(), [](const Int& x) { return x != 0; }) == 1);
    }
}

TEST_CASE("intersection_multiplicity and campana_member") {
    CHECK(intersection_multiplicity(ideal(1, {{1}}), {make_vector({3})}).n == 3);
    CHECK(intersection_multiplicity(ideal(2, {{2, 0}, {0, 3}}), {make_vector({1, 1})}).n == 2);
    CHECK(intersection_multiplicity(ideal(2, {{2, 0}, {0, 3}}), {make_vector({0, 0})}).n == 0);
    CHECK(intersection_multiplicity(ideal(2, {{2, 0}}), {make_vector({0, 0}), true}).in_z);
    CHECK(campana_member({false, 0}, 7));
    CHECK_FALSE(campana_member({false, 1}, 2));
    CHECK(campana_member({true, 0}, 5));
    CHECK(campana_member({false, 2}, 2));
    CHECK_THROWS_AS(campana_member({false, 2}, 0), Error);
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("minimal primes are the set-minimal transversals") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> exp(0, 2), count(1, 4), nvars(1, 5);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = nvars(rng);
        std::vector<IntVector> gens;
        for (long k = count(rng); k > 0; --k) {
            IntVector g(n);
            for (auto& x : g) x = exp(rng);
            if (!is_zero(g)) gens.push_back(g);
        }
        if (gens.empty()) continue;
        auto i = make_ideal(n, gens);
        std::vector<unsigned> hitting;
        for (unsigned s = 1; s < (1u << n); ++s) {
            bool hits = std::all_of(i.generators.begin(), i.generators.end(), [&](const IntVector& g) {
                for (std::size_t v = 0; v < n; ++v)
                    if ((s >> v & 1) && g[v] != 0) return true;
                return false;
            });
            if (hits) hitting.push_back(s);
        }
        std::vector<MonomialPrime> expected;
        for (auto s : hitting) {
            bool minimal = std::none_of(hitting.begin(), hitting.end(), [&](unsigned t) { return t != s && (t & s) == t; });
            if (!minimal) continue;
            MonomialPrime p;
            for (std::size_t v = 0; v < n; ++v)
                if (s >> v & 1) p.variables.push_back(v);
            expected.push_back(p);
        }
        std::sort(expected.begin(), expected.end());
        CHECK(minimal_primes(i) == expected);
    }
}

TEST_CASE("variant inequalities and brute-force radical powers") {
    for (const auto& i : corpus()) {
        auto m = m_multiplicity(i);
        auto v = variant_multiplicities(i);
        CHECK(m >= v.m_a);
        CHECK(m >= v.m_c);
        CHECK(v.m_b >= v.m_a);
        CHECK(v.m_d_threshold >= v.m_c);

        auto r = radical(i).generators;
        long mc = 0;
        for (long e = 1; e <= 6; ++e) {
            bool all = std::all_of(i.generators.begin(), i.generators.end(), [&](const IntVector& g) { return in_power(r, g, e); });
            if (!all) break;
            mc = e;
        }
        CHECK(v.m_c == mc);
        long md = 0;
        for (long e = 1; e <= 6 && md == 0; ++e) {
            bool inside = true;
            for_each_monomial(i.vars, 6, [&](const IntVector& u) {
                if (in_power(r, u, e) && !i.contains(u)) inside = false;
            });
            if (inside) md = e;
        }
        CHECK(v.m_d_threshold == md);
        // Containment is monotone past the threshold.
        auto power = radical(i);
        for (long e = 1; e <= v.m_d_threshold + 2; ++e) {
            CHECK(i.contains(power) == (e >= v.m_d_threshold));
            power = ideal_product(power, radical(i));
        }
    }
}

TEST_CASE("images of points satisfy the Campana condition") {
    std::vector<IntMatrix> charts{b1_chart(), IntMatrix::identity(3), IntMatrix{{2, 1, 0}, {0, 1, 3}, {1, 0, 0}},
                                  IntMatrix{{3, 0, 0}, {0, 2, 2}, {0, 0, 1}}};
    std::vector<MonomialIdeal> targets{ideal(3, {{1, 0, 0}, {0, 1, 0}}), ideal(3, {{0, 1, 0}}), ideal(3, {{0, 1, 0}, {0, 0, 1}}),
                                       ideal(3, {{1, 1, 0}}), ideal(3, {{2, 0, 0}, {0, 0, 1}})};
    long checked = 0;
    for (const auto& a : charts)
        for (const auto& t : targets) {
            auto m = m_multiplicity(pullback_ideal(a, t));
            for_each_monomial(3, 5, [&](const IntVector& val) {
                auto n = intersection_multiplicity(t, {a * val});
                CHECK(campana_member(n, m));
                // Same number computed upstairs.
                CHECK(n.n == intersection_multiplicity(pullback_ideal(a, t), {val}).n);
                ++checked;
            });
        }
    CHECK(checked == 4 * 5 * 216);
}
