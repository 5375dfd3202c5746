#include "logfirm/lift.hpp"

#include <algorithm>
#include <set>

namespace logfirm {

void validate_chart(const IntMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) < 0) throw Error(ErrorCode::InvalidInput, "monomial chart has a negative exponent");
}

std::optional<IntVector> solve_exponents(const IntMatrix& a, const IntVector& e, const IlpOptions& options) {
    validate_chart(a);
    if (e.size() != a.rows()) throw Error(ErrorCode::InvalidInput, "valuation vector has the wrong length");
    IlpProblem p;
    p.num_vars = a.cols();
    p.eq = a;
    p.eq_rhs = e;
    p.ineq = IntMatrix::identity(a.cols());
    p.ineq_rhs = IntVector(a.cols());
    return ilp_feasible(p, options);
}

std::vector<Int> prime_factors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

UnitSolution solve_units(const IntMatrix& a) {
    validate_chart(a);
    const std::size_t n = a.rows(), m = a.cols();
    auto snf = smith_normal_form(a);  // U A V = D
    UnitSolution out;
    out.c.assign(m, RationalVector(n));
    // C = V D^+ U
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < snf.rank; ++k)
                out.c[i][j] += Rational(snf.V(i, k) * snf.U(k, j), snf.divisors[k]);
    for (const auto& row : out.c) {
        Int den = 1;
        for (const auto& q : row) den = lcm(den, denominator(q));
        out.root_orders.push_back(den);
    }
    std::vector<IntVector> rel;
    for (std::size_t k = snf.rank; k < n; ++k) rel.push_back(snf.U.row(k));
    // Canonical basis of the relation lattice, each with a positive leading entry.
    for (auto w : lattice_basis(rel, n)) {
        auto lead = std::find_if(w.begin(), w.end(), [](const Int& x) { return x != 0; });
        if (lead != w.end() && *lead < 0) w = scale(w, Int(-1));
        out.unit_constraints.push_back(w);
    }
    return out;
}

std::vector<Int> log_smooth_primes(const IntMatrix& m) {
    std::set<Int> primes;
    for (const auto& d : smith_normal_form(m).divisors)
        if (d > 1)
            for (const auto& p : prime_factors(d)) primes.insert(p);
    return {primes.begin(), primes.end()};
}

std::optional<LiftSolution> describe_lift(const IntMatrix& a, const IntVector& e, std::optional<long> residue_char,
                                          const IlpOptions& options) {
    auto x = solve_exponents(a, e, options);
    if (!x) return std::nullopt;
    LiftSolution out;
    out.exponents = *x;
    out.units = solve_units(a);
    Int all = 1;
    for (const auto& r : out.units.root_orders) all = lcm(all, r);
    out.ramification_primes = prime_factors(all);
    if (residue_char) {
        if (*residue_char < 0) throw Error(ErrorCode::InvalidInput, "residue characteristic must be nonnegative");
        out.etale = std::none_of(out.ramification_primes.begin(), out.ramification_primes.end(),
                                 [&](const Int& p) { return p == *residue_char; });
    }
    return out;
}

}  // namespace logfirm
