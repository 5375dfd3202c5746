#pragma once

#include <map>
#include <optional>
#include <vector>

#include "logfirm/intlinalg.hpp"

namespace logfirm {

struct IntPolynomial {
    std::size_t vars = 0;
    std::map<IntVector, Int> terms;  // no zero coefficients

    static IntPolynomial monomial(const IntVector& exponent, const Int& coeff = 1);
    /// Linear form sum_i coeffs[i] x_i.
    static IntPolynomial linear(const IntVector& coeffs);
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator+(const IntPolynomial& o) const;
    bool operator==(const IntPolynomial&) const = default;
};

struct MonomialIdeal {
    std::size_t vars = 0;
    std::vector<IntVector> generators;  // minimal, sorted

    bool contains(const IntVector& monomial) const;
    bool contains(const MonomialIdeal& other) const;
    bool operator==(const MonomialIdeal&) const = default;
};

/// Minimalizes and sorts; rejects negative exponents and wrong lengths.
MonomialIdeal make_ideal(std::size_t vars, std::vector<IntVector> generators);
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_intersection(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal radical(const MonomialIdeal& i);

struct MonomialPrime {
    std::vector<std::size_t> variables;  // sorted, nonempty
    auto operator<=>(const MonomialPrime&) const = default;
};

MonomialIdeal prime_ideal(std::size_t vars, const MonomialPrime& p);

/// Isolated primes: the minimal transversals of the generator supports.
std::vector<MonomialPrime> minimal_primes(const MonomialIdeal& i);
/// max{e : I in p^e}.
Int containment_order(const MonomialIdeal& i, const MonomialPrime& p);
Int m_multiplicity(const MonomialIdeal& i);

/// Irredundant decomposition into ideals generated by pure powers.
std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& i);
/// Primary component of I belonging to a minimal prime p.
MonomialIdeal isolated_component(const MonomialIdeal& i, const MonomialPrime& p);

struct VariantMultiplicities {
    Int m_a;
    Int m_b;
    Int m_c;
    /// min{e : (rad I)^e in I}; the literal max is unbounded.
    Int m_d_threshold;
};

VariantMultiplicities variant_multiplicities(const MonomialIdeal& i);

/// Valuation of each variable at a DVR point.
struct DvrPointVal {
    IntVector vals;
    /// The point lies in Z; valuations alone cannot express this.
    bool in_z = false;
};

struct IntersectionMultiplicity {
    bool in_z = false;
    Int n = 0;
};

IntersectionMultiplicity intersection_multiplicity(const MonomialIdeal& i, const DvrPointVal& y);
bool campana_member(const IntersectionMultiplicity& n, const Int& m);

/// New variables x' = M x. Each polynomial is expanded in x' and must be a
/// single term; the result is the ideal of those monomials.
std::optional<MonomialIdeal> linear_substitution(const std::vector<IntPolynomial>& polys, const IntMatrix& m);
/// Same, with each generator given as a product of linear forms.
std::optional<MonomialIdeal> linear_substitution_factored(const std::vector<std::vector<IntVector>>& factored,
                                                          const IntMatrix& m);

/// Chart y_j = prod_i x_i^{a(j, i)}; target generators pulled back to the source.
MonomialIdeal pullback_ideal(const IntMatrix& a, const MonomialIdeal& i);

}  // namespace logfirm
