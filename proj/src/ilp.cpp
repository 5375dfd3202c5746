#include "logfirm/intlinalg.hpp"

#include <algorithm>
#include <utility>

namespace logfirm {

namespace {

// Phase-one simplex with Bland's rule over exact rationals. Decides whether
// { s >= 0 : A s >= b } is nonempty and if so returns a basic feasible
// solution (a vertex).
class FeasibilitySimplex {
public:
    FeasibilitySimplex(const std::vector<IntVector>& a, const IntVector& b, std::size_t n) : n_(n) {
        const std::size_t m = a.size();
        // Columns: s (n), surplus w (m), artificial (one per row with b > 0).
        std::vector<std::size_t> art_rows;
        for (std::size_t i = 0; i < m; ++i)
            if (b[i] > 0) art_rows.push_back(i);
        cols_ = n + m + art_rows.size();
        art_begin_ = n + m;
        tab_.assign(m, RationalVector(cols_ + 1));
        basis_.assign(m, 0);
        std::size_t next_art = art_begin_;
        for (std::size_t i = 0; i < m; ++i) {
            // a_i s - w_i = b_i
            if (b[i] > 0) {
                for (std::size_t j = 0; j < n; ++j) tab_[i][j] = Rational(a[i][j]);
                tab_[i][n + i] = -1;
                tab_[i][next_art] = 1;
                tab_[i][cols_] = Rational(b[i]);
                basis_[i] = next_art++;
            } else {
                for (std::size_t j = 0; j < n; ++j) tab_[i][j] = Rational(-a[i][j]);
                tab_[i][n + i] = 1;
                tab_[i][cols_] = Rational(-b[i]);
                basis_[i] = n + i;
            }
        }
    }

    std::optional<RationalVector> solve() {
        const std::size_t m = tab_.size();
        // Objective: minimise the sum of artificials. Reduced costs row.
        RationalVector cost(cols_ + 1);
        for (std::size_t i = 0; i < m; ++i)
            if (basis_[i] >= art_begin_)
                for (std::size_t j = 0; j <= cols_; ++j) cost[j] -= tab_[i][j];
        for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] += 1;

        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (cost[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols_) break;
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rational ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) break;  // unbounded direction cannot occur in phase one
            pivot(leave, enter, cost);
        }
        // Optimal value is -cost[rhs].
        if (cost[cols_] != 0) return std::nullopt;
        RationalVector s(n_);
        for (std::size_t i = 0; i < m; ++i)
            if (basis_[i] < n_) s[basis_[i]] = tab_[i][cols_];
        return s;
    }

private:
    void pivot(std::size_t r, std::size_t c, RationalVector& cost) {
        Rational inv = 1 / tab_[r][c];
        for (auto& x : tab_[r]) x *= inv;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == r || tab_[i][c] == 0) continue;
            Rational f = tab_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (tab_[r][j] != 0) tab_[i][j] -= f * tab_[r][j];
        }
        if (cost[c] != 0) {
            Rational f = cost[c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (tab_[r][j] != 0) cost[j] -= f * tab_[r][j];
        }
        basis_[r] = c;
    }

    std::size_t n_;
    std::size_t cols_ = 0;
    std::size_t art_begin_ = 0;
    std::vector<RationalVector> tab_;
    std::vector<std::size_t> basis_;
};

// Integer point of { z : G z >= h } with G of full column rank.
std::optional<IntVector> pointed_search(const std::vector<IntVector>& g, const IntVector& h, std::size_t dim,
                                        const IlpOptions& options) {
    // Vertices and recession rays from the homogenised cone
    // { (z, t) : G z - h t >= 0, t >= 0 }.
    std::vector<IntVector> cons;
    for (std::size_t i = 0; i < g.size(); ++i) {
        IntVector c = g[i];
        c.push_back(-h[i]);
        cons.push_back(std::move(c));
    }
    IntVector tpos(dim + 1);
    tpos[dim] = 1;
    cons.push_back(tpos);
    auto hom = dual_description_from_facets(dim + 1, cons);

    std::vector<RationalVector> vertices;
    std::vector<IntVector> recession;
    for (const auto& r : hom.rays) {
        if (r[dim] > 0) {
            RationalVector v(dim);
            for (std::size_t j = 0; j < dim; ++j) v[j] = Rational(r[j], r[dim]);
            vertices.push_back(std::move(v));
        } else {
            recession.push_back(IntVector(r.begin(), r.end() - 1));
        }
    }
    if (vertices.empty()) return std::nullopt;

    // Any integer point can be translated by integer recession combinations
    // into conv(vertices) + sum of [0,1] * ray, so that box is exhaustive.
    IntVector lo(dim), hi(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Rational mn = vertices[0][j], mx = vertices[0][j];
        for (const auto& v : vertices) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = ceil(mn);
        hi[j] = floor(mx);
        for (const auto& r : recession) {
            if (r[j] < 0) lo[j] += r[j];
            if (r[j] > 0) hi[j] += r[j];
        }
    }

    std::vector<std::pair<IntVector, IntVector>> stack{{lo, hi}};
    std::size_t nodes = 0;
    while (!stack.empty()) {
        auto [l, u] = std::move(stack.back());
        stack.pop_back();
        if (++nodes > options.node_budget)
            throw ResourceLimit("integer feasibility search exceeded node budget of " +
                                std::to_string(options.node_budget));
        bool empty_box = false;
        for (std::size_t j = 0; j < dim; ++j)
            if (l[j] > u[j]) empty_box = true;
        if (empty_box) continue;

        // Shift to s = z - l >= 0 with s <= u - l.
        std::vector<IntVector> a;
        IntVector b;
        for (std::size_t i = 0; i < g.size(); ++i) {
            a.push_back(g[i]);
            b.push_back(h[i] - dot(g[i], l));
        }
        for (std::size_t j = 0; j < dim; ++j) {
            IntVector row(dim);
            row[j] = -1;
            a.push_back(std::move(row));
            b.push_back(-(u[j] - l[j]));
        }
        FeasibilitySimplex lp(a, b, dim);
        auto s = lp.solve();
        if (!s) continue;
        std::size_t frac = dim;
        for (std::size_t j = 0; j < dim; ++j)
            if (boost::multiprecision::denominator((*s)[j]) != 1) {
                frac = j;
                break;
            }
        if (frac == dim) {
            IntVector z(dim);
            for (std::size_t j = 0; j < dim; ++j) z[j] = l[j] + boost::multiprecision::numerator((*s)[j]);
            return z;
        }
        Rational zj = (*s)[frac] + Rational(l[frac]);
        IntVector up_lo = l, down_hi = u;
        up_lo[frac] = ceil(zj);
        down_hi[frac] = floor(zj);
        // Down branch is explored first.
        stack.emplace_back(std::move(up_lo), u);
        stack.emplace_back(l, std::move(down_hi));
    }
    return std::nullopt;
}

}  // namespace

std::optional<IntVector> ilp_feasible(const IlpProblem& p, const IlpOptions& options) {
    const std::size_t n = p.num_vars;
    if (p.eq.rows() && p.eq.cols() != n) throw Error(ErrorCode::InvalidInput, "ilp: equality width mismatch");
    if (p.ineq.rows() && p.ineq.cols() != n) throw Error(ErrorCode::InvalidInput, "ilp: inequality width mismatch");
    if (p.eq.rows() != p.eq_rhs.size() || p.ineq.rows() != p.ineq_rhs.size())
        throw Error(ErrorCode::InvalidInput, "ilp: right-hand side length mismatch");

    // x = x0 + K y
    IntVector x0(n);
    IntMatrix k = IntMatrix::identity(n);
    if (p.eq.rows()) {
        auto sol = solve_lattice(p.eq, p.eq_rhs);
        if (!sol) return std::nullopt;
        x0 = sol->particular;
        k = IntMatrix::from_columns(sol->kernel_basis, n);
        if (sol->kernel_basis.empty()) k = IntMatrix(n, 0);
    }
    if (p.ineq.rows() == 0) return x0;

    IntVector h = p.ineq_rhs;
    IntVector cx0 = p.ineq * x0;
    for (std::size_t i = 0; i < h.size(); ++i) h[i] -= cx0[i];
    const auto satisfied_at_zero = [&] {
        return std::all_of(h.begin(), h.end(), [](const Int& x) { return x <= 0; });
    };
    if (k.cols() == 0) return satisfied_at_zero() ? std::optional<IntVector>(x0) : std::nullopt;

    // Split off the lineality of { y : G y >= h }: G W = [G' | 0].
    IntMatrix g = p.ineq * k;
    auto hnf = hermite_normal_form(g);
    const std::size_t rho = hnf.rank;
    if (rho == 0) return satisfied_at_zero() ? std::optional<IntVector>(x0) : std::nullopt;
    std::vector<IntVector> gp;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        IntVector row(rho);
        for (std::size_t j = 0; j < rho; ++j) row[j] = hnf.H(i, j);
        gp.push_back(std::move(row));
    }
    auto z = pointed_search(gp, h, rho, options);
    if (!z) return std::nullopt;
    IntVector zfull(k.cols());
    for (std::size_t j = 0; j < rho; ++j) zfull[j] = (*z)[j];
    IntVector y = hnf.U * zfull;
    return add(x0, k * y);
}

}  // namespace logfirm
