#include "doctest.h"

#include "logfirm/firmament.hpp"
#include "logfirm/lift.hpp"

using namespace logfirm;

namespace {

RationalVector q(std::initializer_list<Rational> xs) { return RationalVector(xs); }

std::vector<IntMatrix> shipped_charts() {
    return {IntMatrix{{2, 3}, {1, 0}}, IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{1}, {1}}, IntMatrix::identity(2),
            IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{2, 3}}, IntMatrix{{1, 1, 0}, {0, 1, 1}}, IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 1, 1}}};
}

// Rational kernel of the relation rows: the locus where the unit equations must hold.
std::vector<RationalVector> locus_basis(const std::vector<IntVector>& w, std::size_t n) {
    if (w.empty()) {
        std::vector<RationalVector> out;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector e(n);
            e[i] = 1;
            out.push_back(e);
        }
        return out;
    }
    std::vector<RationalVector> out;
    for (const auto& k : kernel_and_cokernel(IntMatrix::from_rows(w, n)).kernel_basis) out.push_back(RationalVector(k.begin(), k.end()));
    return out;
}

}  // namespace

TEST_CASE("solve_exponents") {
    IntMatrix a{{2, 3}, {1, 0}};
    auto x = solve_exponents(a, make_vector({5, 1}));
    REQUIRE(x);
    CHECK(*x == make_vector({1, 1}));
    CHECK_FALSE(solve_exponents(a, make_vector({1, 0})));
    CHECK(solve_exponents(IntMatrix{{1}, {1}}, make_vector({3, 3})) == make_vector({3}));
    CHECK_FALSE(solve_exponents(IntMatrix{{1}, {1}}, make_vector({3, 2})));
    CHECK_THROWS_AS(solve_exponents(IntMatrix{{-1}}, make_vector({1})), Error);
    CHECK_THROWS_AS(solve_exponents(a, make_vector({1})), Error);
}

TEST_CASE("solve_units") {
    auto u = solve_units(IntMatrix{{2, 3}, {1, 0}});
    CHECK(u.c[0] == q({0, 1}));
    CHECK(u.c[1] == q({Rational(1, 3), Rational(-2, 3)}));
    CHECK(u.root_orders == std::vector<Int>{1, 3});
    CHECK(u.unit_constraints.empty());

    auto v = solve_units(IntMatrix{{2, 1}, {1, 2}});
    CHECK(v.c[0] == q({Rational(2, 3), Rational(-1, 3)}));
    CHECK(v.c[1] == q({Rational(-1, 3), Rational(2, 3)}));
    CHECK(v.root_orders == std::vector<Int>{3, 3});

    auto d = solve_units(IntMatrix{{1}, {1}});
    CHECK(d.root_orders == std::vector<Int>{1});
    REQUIRE(d.unit_constraints.size() == 1);
    CHECK(d.unit_constraints[0] == make_vector({1, -1}));

    // gcd(2, 3) = 1, so s = x^2 y^3 needs no roots.
    CHECK(solve_units(IntMatrix{{2, 3}}).root_orders == std::vector<Int>{1, 1});
}

TEST_CASE("log_smooth_primes") {
    CHECK(log_smooth_primes(IntMatrix{{2, 3}, {1, 0}}) == std::vector<Int>{3});
    CHECK(log_smooth_primes(IntMatrix::identity(2)).empty());
    CHECK(log_smooth_primes(IntMatrix{{2, 0}, {0, 2}}) == std::vector<Int>{2});
    CHECK(log_smooth_primes(IntMatrix{{6, 0}, {0, 10}}) == std::vector<Int>{2, 3, 5});
    CHECK(log_smooth_primes(IntMatrix{{1}, {1}}).empty());
    CHECK(prime_factors(Int(360)) == std::vector<Int>{2, 3, 5});
    CHECK(prime_factors(Int(1)).empty());
}

TEST_CASE("describe_lift") {
    IntMatrix a{{2, 3}, {1, 0}};
    auto l = describe_lift(a, make_vector({5, 1}), 5);
    REQUIRE(l);
    CHECK(l->exponents == make_vector({1, 1}));
    CHECK(l->ramification_primes == std::vector<Int>{3});
    CHECK(l->etale == true);
    CHECK(describe_lift(a, make_vector({5, 1}), 3)->etale == false);
    CHECK(describe_lift(a, make_vector({5, 1}), 0)->etale == true);
    CHECK_FALSE(describe_lift(a, make_vector({5, 1}))->etale.has_value());
    CHECK_FALSE(describe_lift(a, make_vector({1, 0}), 5));
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("exponent solutions are sound and absence matches the firmament") {
    for (const auto& a : shipped_charts()) {
        auto g = firmament_of_chart(a);
        for (const auto& p : lattice_points_box(orthant(a.rows()), 6)) {
            auto x = solve_exponents(a, p.coords);
            if (x) {
                CHECK(a * *x == p.coords);
                for (const auto& xi : *x) CHECK(xi >= 0);
            }
            CHECK(x.has_value() == firmament_member(g, canonicalize_point(g.target, {0, p.coords})));
        }
    }
}

TEST_CASE("unit solutions invert the chart on the constraint locus") {
    for (const auto& a : shipped_charts()) {
        auto u = solve_units(a);
        REQUIRE(u.c.size() == a.cols());
        // Each relation kills the image of A.
        for (const auto& w : u.unit_constraints)
            for (std::size_t i = 0; i < a.cols(); ++i) {
                Int s = 0;
                for (std::size_t j = 0; j < a.rows(); ++j) s += w[j] * a(j, i);
                CHECK(s == 0);
            }
        CHECK(u.unit_constraints.size() == a.rows() - rank(a));
        for (const auto& y : locus_basis(u.unit_constraints, a.rows())) {
            RationalVector x(a.cols());
            for (std::size_t i = 0; i < a.cols(); ++i)
                for (std::size_t j = 0; j < a.rows(); ++j) x[i] += u.c[i][j] * y[j];
            for (std::size_t j = 0; j < a.rows(); ++j) {
                Rational s = 0;
                for (std::size_t i = 0; i < a.cols(); ++i) s += Rational(a(j, i)) * x[i];
                CHECK(s == y[j]);
            }
        }
        // Root orders really clear the rows.
        for (std::size_t i = 0; i < a.cols(); ++i)
            for (const auto& c : u.c[i]) CHECK(denominator(Rational(c * Rational(u.root_orders[i]))) == 1);
        // lcm of root orders divides the product of the elementary divisors.
        Int all = 1, prod = 1;
        for (const auto& r : u.root_orders) all = lcm(all, r);
        for (const auto& d : smith_normal_form(a.transpose()).divisors)
            if (d != 0) prod *= d;
        CHECK(prod % all == 0);
        // Invertible charts have a unique solution.
        if (a.rows() == a.cols() && rank(a) == a.rows()) CHECK(u.c == rational_inverse(a));
    }
}
