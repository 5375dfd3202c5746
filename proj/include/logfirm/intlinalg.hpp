#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace logfirm {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

enum class ErrorCode {
    InvalidInput,
    ResourceLimit,
    NotSharp,
    NotAFace,
    PointOutsideCone,
    NotPrimitive,
    OutsideSupport,
    SupportMismatch,
    NotAdditive,
    ZeroOrUnitIdeal,
    NotContaining,
    NotUnimodular,
    RankUnsupported,
    EvidenceMissing,
};

const char* to_string(ErrorCode code);

/// Base of every exception thrown by the library. The code is what the CLI
/// maps onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a search exceeds its configured node budget. Never means
/// "infeasible".
class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& what)
        : Error(ErrorCode::ResourceLimit, what) {}
};

/// Dense row-major matrix of arbitrary precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector col(std::size_t j) const;
    std::vector<IntVector> row_list() const;
    std::vector<IntVector> col_list() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;
    bool operator==(const IntMatrix& rhs) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    bool is_zero() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

struct SmithDecomposition {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix V;  // cols x cols, unimodular
    IntMatrix D;  // U * M * V
    std::vector<Int> divisors;  // min(rows, cols) diagonal entries, d1 | d2 | ...
    std::size_t rank = 0;
};

struct HermiteDecomposition {
    IntMatrix H;  // M * U, lower-triangular column echelon
    IntMatrix U;  // unimodular cols x cols
    std::size_t rank = 0;
};

struct LatticeSolutionSet {
    IntVector particular;
    std::vector<IntVector> kernel_basis;
};

struct KernelCokernel {
    std::vector<IntVector> kernel_basis;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Column-style Hermite normal form: H = M * U with U unimodular. H is in
/// lower-triangular column echelon form; each pivot is positive and the
/// entries to the left of a pivot (same row) lie in [0, pivot).
HermiteDecomposition hermite_normal_form(const IntMatrix& m);

/// Canonical basis of the subgroup of Z^dim generated by `gens`, returned as
/// the nonzero columns of the Hermite form.
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& gens, std::size_t dim);

std::optional<LatticeSolutionSet> solve_lattice(const IntMatrix& a, const IntVector& b);

KernelCokernel kernel_and_cokernel(const IntMatrix& m);

/// Exact rational rank.
std::size_t rank(const IntMatrix& m);
Int determinant(const IntMatrix& m);

/// Rational inverse of a square nonsingular matrix.
std::vector<RationalVector> rational_inverse(const IntMatrix& m);
/// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

// Vector helpers.
Int dot(const IntVector& a, const IntVector& b);
Int content(const IntVector& v);  // gcd of the entries, 0 for the zero vector
IntVector primitive(IntVector v);
bool is_zero(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& v, const Int& k);
IntVector make_vector(std::initializer_list<long> xs);
std::string to_string(const IntVector& v);
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
Int floor(const Rational& q);
Int ceil(const Rational& q);

// ---------------------------------------------------------------------------
// Integer feasibility.

/// Constraints eq * x = eq_rhs and ineq * x >= ineq_rhs over integer x.
/// Empty matrices mean "no constraint of that kind"; `num_vars` fixes the
/// dimension.
struct IlpProblem {
    std::size_t num_vars = 0;
    IntMatrix eq;
    IntVector eq_rhs;
    IntMatrix ineq;
    IntVector ineq_rhs;
};

struct IlpOptions {
    std::size_t node_budget = 200000;
};

/// Complete integer feasibility: returns an integer point or nullopt when
/// none exists. Throws ResourceLimit when the branch-and-bound budget is
/// exhausted.
std::optional<IntVector> ilp_feasible(const IlpProblem& problem, const IlpOptions& options = {});

// ---------------------------------------------------------------------------
// Cone duality.

/// Both descriptions of a rational polyhedral cone:
///   cone(rays) + span(lineality) = { x : <f,x> >= 0 for f in facets, <e,x> = 0 for e in equations }.
/// All vectors are primitive. Facets are reduced into span(rays, lineality)
/// and rays into the orthogonal complement of the lineality space, which
/// makes both lists canonical up to order; both lists are sorted.
struct DualDescription {
    std::size_t dim = 0;
    std::vector<IntVector> rays;
    std::vector<IntVector> lineality;
    std::vector<IntVector> facets;
    std::vector<IntVector> equations;

    bool pointed() const { return lineality.empty(); }
    std::size_t cone_dim() const;
    bool contains(const IntVector& x) const;
    bool contains_interior(const IntVector& x) const;  // strictly positive on every facet
};

DualDescription dual_description_from_rays(std::size_t dim, const std::vector<IntVector>& generators,
                                           const std::vector<IntVector>& lineality = {});
DualDescription dual_description_from_facets(std::size_t dim, const std::vector<IntVector>& facets,
                                             const std::vector<IntVector>& equations = {});

}  // namespace logfirm
