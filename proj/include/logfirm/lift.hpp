#pragma once

#include <optional>
#include <vector>

#include "logfirm/intlinalg.hpp"

namespace logfirm {

/// Monomial chart y_j = prod_i x_i^{a(j, i)}: an n x m matrix with
/// nonnegative entries, rows indexed by target coordinates.
void validate_chart(const IntMatrix& a);

/// x in N^m with A x = e.
std::optional<IntVector> solve_exponents(const IntMatrix& a, const IntVector& e, const IlpOptions& options = {});

struct UnitSolution {
    /// m rows: log u_{x_i} = sum_j c[i][j] log u_{y_j}.
    std::vector<RationalVector> c;
    /// Least common denominator of each row of c.
    std::vector<Int> root_orders;
    /// Each w means prod_j u_{y_j}^{w_j} = 1 is needed; empty when the rows
    /// of A are independent.
    std::vector<IntVector> unit_constraints;
};

UnitSolution solve_units(const IntMatrix& a);

/// Primes dividing an elementary divisor > 1 of the group-level chart. The
/// kernel of a map of free lattices is free and adds nothing.
std::vector<Int> log_smooth_primes(const IntMatrix& m);

struct LiftSolution {
    IntVector exponents;
    UnitSolution units;
    std::vector<Int> ramification_primes;
    /// Set when a residue characteristic was supplied: the unit extension
    /// is etale iff no ramification prime equals it.
    std::optional<bool> etale;
};

/// nullopt means the point is not in the firmament.
std::optional<LiftSolution> describe_lift(const IntMatrix& a, const IntVector& e,
                                          std::optional<long> residue_char = std::nullopt,
                                          const IlpOptions& options = {});

/// Prime divisors of |n| in increasing order.
std::vector<Int> prime_factors(Int n);

}  // namespace logfirm
