#include "logfirm/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace logfirm {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotSharp: return "NotSharp";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::PointOutsideCone: return "PointOutsideCone";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::NotAdditive: return "NotAdditive";
    case ErrorCode::ZeroOrUnitIdeal: return "ZeroOrUnitIdeal";
    case ErrorCode::NotContaining: return "NotContaining";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::EvidenceMissing: return "EvidenceMissing";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::InvalidInput, "ragged matrix literal");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::InvalidInput, "row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error(ErrorCode::InvalidInput, "column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<IntVector> IntMatrix::row_list() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

std::vector<IntVector> IntMatrix::col_list() const {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch in product");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw Error(ErrorCode::InvalidInput, "matrix-vector shape mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ',';
        os << logfirm::to_string(row(i));
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Scalars and vectors

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int floor(const Rational& q) {
    return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

Int ceil(const Rational& q) {
    return ceil_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

Int dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "dot product of vectors of different length");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int content(const IntVector& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

IntVector primitive(IntVector v) {
    Int g = content(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVector add(const IntVector& a, const IntVector& b) {
    IntVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    IntVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

IntVector scale(const IntVector& v, const Int& k) {
    IntVector r(v);
    for (auto& x : r) x *= k;
    return r;
}

IntVector make_vector(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    const std::size_t steps = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) goto done;
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Int q = floor_div(d(i, t), d(t, t));
                d.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Int q = floor_div(d(t, j), d(t, t));
                d.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the whole trailing block.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            d.add_row_multiple(t, bad, 1);
            u.add_row_multiple(t, bad, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
done:
    SmithDecomposition out;
    out.rank = t;
    for (std::size_t i = 0; i < steps; ++i) out.divisors.push_back(d(i, i));
    out.U = std::move(u);
    out.V = std::move(v);
    out.D = std::move(d);
    return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form (column style)

HermiteDecomposition hermite_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(cols);
    std::size_t c = 0;
    for (std::size_t i = 0; i < rows && c < cols; ++i) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = c; j < cols; ++j)
                if (h(i, j) != 0 && (best == cols || abs(h(i, j)) < abs(h(i, best)))) best = j;
            if (best == cols) break;
            h.swap_cols(c, best);
            u.swap_cols(c, best);
            bool done = true;
            for (std::size_t j = c + 1; j < cols; ++j) {
                if (h(i, j) == 0) continue;
                Int q = floor_div(h(i, j), h(i, c));
                h.add_col_multiple(j, c, -q);
                u.add_col_multiple(j, c, -q);
                if (h(i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (h(i, c) == 0) continue;
        if (h(i, c) < 0) {
            h.negate_col(c);
            u.negate_col(c);
        }
        for (std::size_t j = 0; j < c; ++j) {
            Int q = floor_div(h(i, j), h(i, c));
            h.add_col_multiple(j, c, -q);
            u.add_col_multiple(j, c, -q);
        }
        ++c;
    }
    return {std::move(h), std::move(u), c};
}

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& gens, std::size_t dim) {
    if (gens.empty()) return {};
    auto hnf = hermite_normal_form(IntMatrix::from_columns(gens, dim));
    std::vector<IntVector> basis;
    for (std::size_t j = 0; j < hnf.rank; ++j) basis.push_back(hnf.H.col(j));
    return basis;
}

namespace {

// Pivot row of each nonzero column of a column-echelon matrix.
std::vector<std::size_t> pivot_rows(const IntMatrix& h, std::size_t rank) {
    std::vector<std::size_t> piv;
    std::size_t i = 0;
    for (std::size_t k = 0; k < rank; ++k) {
        while (h(i, k) == 0) ++i;
        piv.push_back(i);
        ++i;
    }
    return piv;
}

}  // namespace

std::optional<LatticeSolutionSet> solve_lattice(const IntMatrix& a, const IntVector& b) {
    if (a.rows() != b.size()) throw Error(ErrorCode::InvalidInput, "solve_lattice: shape mismatch");
    const std::size_t n = a.cols();
    auto hnf = hermite_normal_form(a);
    auto piv = pivot_rows(hnf.H, hnf.rank);
    IntVector y(n);
    for (std::size_t k = 0; k < hnf.rank; ++k) {
        Int rhs = b[piv[k]];
        for (std::size_t j = 0; j < k; ++j) rhs -= hnf.H(piv[k], j) * y[j];
        if (rhs % hnf.H(piv[k], k) != 0) return std::nullopt;
        y[k] = rhs / hnf.H(piv[k], k);
    }
    if (hnf.H * y != b) return std::nullopt;

    LatticeSolutionSet out;
    out.particular = hnf.U * y;
    std::vector<IntVector> kernel;
    for (std::size_t j = hnf.rank; j < n; ++j) kernel.push_back(hnf.U.col(j));
    out.kernel_basis = lattice_basis(kernel, n);

    // Reduce the particular solution against the Hermite kernel basis.
    if (!out.kernel_basis.empty()) {
        auto km = IntMatrix::from_columns(out.kernel_basis, n);
        auto kpiv = pivot_rows(km, out.kernel_basis.size());
        for (std::size_t k = 0; k < kpiv.size(); ++k) {
            Int q = floor_div(out.particular[kpiv[k]], km(kpiv[k], k));
            if (q != 0) out.particular = sub(out.particular, scale(out.kernel_basis[k], q));
        }
    }
    return out;
}

KernelCokernel kernel_and_cokernel(const IntMatrix& m) {
    KernelCokernel out;
    auto sol = solve_lattice(m, IntVector(m.rows()));
    out.kernel_basis = sol->kernel_basis;
    auto snf = smith_normal_form(m);
    out.free_rank = m.rows() - snf.rank;
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.divisors[i] > 1) out.torsion.push_back(snf.divisors[i]);
    return out;
}

std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
    // Bareiss fraction-free elimination.
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<RationalVector> rational_inverse(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidInput, "inverse of non-square matrix");
    std::vector<RationalVector> a(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorCode::InvalidInput, "matrix is singular");
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<RationalVector> out(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    auto inv = rational_inverse(m);
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (boost::multiprecision::denominator(inv[i][j]) != 1)
                throw Error(ErrorCode::InvalidInput, "matrix is not unimodular");
            out(i, j) = boost::multiprecision::numerator(inv[i][j]);
        }
    return out;
}

}  // namespace logfirm
