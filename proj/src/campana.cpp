#include "logfirm/campana.hpp"

#include <algorithm>
#include <set>

namespace logfirm {

namespace {

constexpr std::size_t kMaxGenerators = 200000;

bool divides(const IntVector& a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::vector<IntVector> minimalize(std::vector<IntVector> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size() && !redundant; ++j)
            if (j != i && divides(gens[j], gens[i])) redundant = true;
        if (!redundant) out.push_back(gens[i]);
    }
    return out;
}

std::vector<std::size_t> support(const IntVector& v) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) s.push_back(i);
    return s;
}

void require_proper_nonzero(const MonomialIdeal& i) {
    if (i.generators.empty()) throw Error(ErrorCode::ZeroOrUnitIdeal, "the zero ideal has no multiplicity");
    for (const auto& g : i.generators)
        if (is_zero(g)) throw Error(ErrorCode::ZeroOrUnitIdeal, "the unit ideal has no multiplicity");
}

// p-degree of g.
Int degree_in(const IntVector& g, const MonomialPrime& p) {
    Int d = 0;
    for (auto v : p.variables) d += g[v];
    return d;
}

Int min_degree_in(const MonomialIdeal& i, const MonomialPrime& p) {
    Int best = -1;
    for (const auto& g : i.generators) {
        Int d = degree_in(g, p);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

std::vector<std::vector<IntVector>> decompose(const std::vector<IntVector>& gens, std::size_t vars) {
    for (const auto& g : gens) {
        auto s = support(g);
        if (s.size() < 2) continue;
        IntVector pure(vars), rest = g;
        pure[s[0]] = g[s[0]];
        rest[s[0]] = 0;
        auto left = gens, right = gens;
        left.push_back(pure);
        right.push_back(rest);
        auto out = decompose(minimalize(left), vars);
        auto more = decompose(minimalize(right), vars);
        out.insert(out.end(), more.begin(), more.end());
        return out;
    }
    return {gens};
}

IntPolynomial substitute(const IntPolynomial& p, const std::vector<IntPolynomial>& images) {
    IntPolynomial out{images.empty() ? p.vars : images[0].vars, {}};
    for (const auto& [e, c] : p.terms) {
        auto term = IntPolynomial::monomial(IntVector(out.vars), c);
        for (std::size_t v = 0; v < e.size(); ++v)
            for (Int k = 0; k < e[v]; ++k) term = term * images[v];
        out = out + term;
    }
    return out;
}

}  // namespace

IntPolynomial IntPolynomial::monomial(const IntVector& exponent, const Int& coeff) {
    IntPolynomial p{exponent.size(), {}};
    if (coeff != 0) p.terms[exponent] = coeff;
    return p;
}

IntPolynomial IntPolynomial::linear(const IntVector& coeffs) {
    IntPolynomial p{coeffs.size(), {}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        IntVector e(coeffs.size());
        e[i] = 1;
        p.terms[e] = coeffs[i];
    }
    return p;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (vars != o.vars) throw Error(ErrorCode::InvalidInput, "polynomials in different variables");
    IntPolynomial out{vars, {}};
    for (const auto& [a, x] : terms)
        for (const auto& [b, y] : o.terms) {
            auto& c = out.terms[add(a, b)];
            c += x * y;
        }
    std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
    return out;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    if (vars != o.vars) throw Error(ErrorCode::InvalidInput, "polynomials in different variables");
    IntPolynomial out = *this;
    for (const auto& [e, c] : o.terms) out.terms[e] += c;
    std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
    return out;
}

bool MonomialIdeal::contains(const IntVector& monomial) const {
    return std::any_of(generators.begin(), generators.end(), [&](const IntVector& g) { return divides(g, monomial); });
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
    return std::all_of(other.generators.begin(), other.generators.end(), [&](const IntVector& g) { return contains(g); });
}

MonomialIdeal make_ideal(std::size_t vars, std::vector<IntVector> generators) {
    for (const auto& g : generators) {
        if (g.size() != vars) throw Error(ErrorCode::InvalidInput, "generator has the wrong number of variables");
        for (const auto& x : g)
            if (x < 0) throw Error(ErrorCode::InvalidInput, "negative exponent in a monomial");
    }
    return {vars, minimalize(std::move(generators))};
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
    auto g = a.generators;
    g.insert(g.end(), b.generators.begin(), b.generators.end());
    return make_ideal(a.vars, g);
}

MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b) {
    if (a.generators.size() * b.generators.size() > kMaxGenerators)
        throw ResourceLimit("ideal product has too many generators");
    std::vector<IntVector> g;
    for (const auto& x : a.generators)
        for (const auto& y : b.generators) g.push_back(add(x, y));
    return make_ideal(a.vars, g);
}

MonomialIdeal ideal_intersection(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<IntVector> g;
    for (const auto& x : a.generators)
        for (const auto& y : b.generators) {
            IntVector l(a.vars);
            for (std::size_t i = 0; i < a.vars; ++i) l[i] = std::max(x[i], y[i]);
            g.push_back(l);
        }
    return make_ideal(a.vars, g);
}

MonomialIdeal radical(const MonomialIdeal& i) {
    std::vector<IntVector> g;
    for (const auto& x : i.generators) {
        IntVector r(i.vars);
        for (auto v : support(x)) r[v] = 1;
        g.push_back(r);
    }
    return make_ideal(i.vars, g);
}

MonomialIdeal prime_ideal(std::size_t vars, const MonomialPrime& p) {
    std::vector<IntVector> g;
    for (auto v : p.variables) {
        if (v >= vars) throw Error(ErrorCode::InvalidInput, "prime uses a variable out of range");
        IntVector e(vars);
        e[v] = 1;
        g.push_back(e);
    }
    return make_ideal(vars, g);
}

std::vector<MonomialPrime> minimal_primes(const MonomialIdeal& i) {
    require_proper_nonzero(i);
    std::set<std::set<std::size_t>> family{{}};
    for (const auto& g : i.generators) {
        auto s = support(g);
        std::set<std::set<std::size_t>> next;
        for (const auto& t : family) {
            if (std::any_of(s.begin(), s.end(), [&](std::size_t v) { return t.count(v) > 0; })) {
                next.insert(t);
                continue;
            }
            for (auto v : s) {
                auto u = t;
                u.insert(v);
                next.insert(u);
            }
        }
        family.clear();
        for (const auto& t : next) {
            bool minimal = std::none_of(next.begin(), next.end(), [&](const auto& o) {
                return o != t && std::includes(t.begin(), t.end(), o.begin(), o.end());
            });
            if (minimal) family.insert(t);
        }
    }
    std::vector<MonomialPrime> out;
    for (const auto& t : family) out.push_back({{t.begin(), t.end()}});
    std::sort(out.begin(), out.end());
    return out;
}

Int containment_order(const MonomialIdeal& i, const MonomialPrime& p) {
    if (p.variables.empty()) throw Error(ErrorCode::InvalidInput, "a monomial prime needs at least one variable");
    require_proper_nonzero(i);
    auto q = prime_ideal(i.vars, p);
    if (!q.contains(i)) throw Error(ErrorCode::NotContaining, "the prime does not contain the ideal");
    return min_degree_in(i, p);
}

Int m_multiplicity(const MonomialIdeal& i) {
    Int best = -1;
    for (const auto& p : minimal_primes(i)) {
        Int e = containment_order(i, p);
        if (best < 0 || e < best) best = e;
    }
    return best;
}

std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& i) {
    require_proper_nonzero(i);
    std::vector<MonomialIdeal> parts;
    for (auto& g : decompose(i.generators, i.vars)) parts.push_back(make_ideal(i.vars, g));
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.generators < b.generators; });
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::vector<MonomialIdeal> out;
    for (std::size_t a = 0; a < parts.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < parts.size() && !redundant; ++b)
            if (b != a && parts[a].contains(parts[b])) redundant = true;
        if (!redundant) out.push_back(parts[a]);
    }
    return out;
}

MonomialIdeal isolated_component(const MonomialIdeal& i, const MonomialPrime& p) {
    if (!prime_ideal(i.vars, p).contains(i)) throw Error(ErrorCode::NotContaining, "the prime does not contain the ideal");
    std::vector<bool> in(i.vars, false);
    for (auto v : p.variables) in[v] = true;
    std::vector<IntVector> g;
    for (auto x : i.generators) {
        for (std::size_t v = 0; v < i.vars; ++v)
            if (!in[v]) x[v] = 0;
        g.push_back(x);
    }
    return make_ideal(i.vars, g);
}

VariantMultiplicities variant_multiplicities(const MonomialIdeal& i) {
    auto primes = minimal_primes(i);
    auto parts = irreducible_decomposition(i);
    VariantMultiplicities out{-1, -1, 0, 0};
    for (const auto& p : primes) {
        // Primary component: the irreducible components with radical p.
        std::optional<MonomialIdeal> q;
        for (const auto& c : parts) {
            if (radical(c) != prime_ideal(i.vars, p)) continue;
            q = q ? ideal_intersection(*q, c) : c;
        }
        if (!q) throw Error(ErrorCode::InvalidInput, "isolated prime without a primary component");
        Int a = min_degree_in(*q, p);
        if (out.m_a < 0 || a < out.m_a) out.m_a = a;
        // p^(e) = p^e for a prime generated by variables, so the symbolic
        // order is the p-degree of the localized ideal.
        Int b = min_degree_in(isolated_component(i, p), p);
        if (out.m_b < 0 || b < out.m_b) out.m_b = b;
    }

    auto rad = radical(i);
    Int top = 0, max_exp = 0;
    for (const auto& g : i.generators) {
        Int d = 0;
        for (const auto& x : g) {
            d += x;
            max_exp = std::max(max_exp, x);
        }
        top = std::max(top, d);
    }
    // I lies in (rad I)^e only for e up to the largest generator degree.
    auto power = rad;
    for (Int e = 1; e <= top; ++e) {
        if (!power.contains(i)) break;
        out.m_c = e;
        power = ideal_product(power, rad);
    }
    // Each radical generator to the max_exp lies in I, so by pigeonhole
    // (rad I)^e lies in I once e > #gens * (max_exp - 1).
    Int bound = Int(rad.generators.size()) * (max_exp - 1) + 1;
    power = rad;
    for (Int e = 1; e <= bound; ++e) {
        if (i.contains(power)) {
            out.m_d_threshold = e;
            break;
        }
        power = ideal_product(power, rad);
    }
    return out;
}

IntersectionMultiplicity intersection_multiplicity(const MonomialIdeal& i, const DvrPointVal& y) {
    if (y.in_z) return {true, 0};
    if (y.vals.size() != i.vars) throw Error(ErrorCode::InvalidInput, "one valuation per variable is required");
    for (const auto& v : y.vals)
        if (v < 0) throw Error(ErrorCode::InvalidInput, "valuations are nonnegative");
    if (i.generators.empty()) throw Error(ErrorCode::ZeroOrUnitIdeal, "the zero ideal contains every point");
    Int best = -1;
    for (const auto& g : i.generators) {
        Int n = dot(g, y.vals);
        if (best < 0 || n < best) best = n;
    }
    return {false, best};
}

bool campana_member(const IntersectionMultiplicity& n, const Int& m) {
    if (m < 1) throw Error(ErrorCode::InvalidInput, "multiplicity must be at least 1");
    return n.in_z || n.n == 0 || n.n >= m;
}

std::optional<MonomialIdeal> linear_substitution(const std::vector<IntPolynomial>& polys, const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw Error(ErrorCode::InvalidInput, "substitution matrix must be square");
    if (determinant(m) == 0) throw Error(ErrorCode::NotUnimodular, "substitution is not invertible");
    // x = M^{-1} x'; scale by the common denominator d, so each old variable
    // becomes (1/d) times an integral linear form. A uniform scalar does not
    // change whether a homogeneous piece is a single term.
    auto inv = rational_inverse(m);
    Int d = 1;
    for (const auto& row : inv)
        for (const auto& q : row) d = lcm(d, denominator(q));
    std::vector<IntPolynomial> images;
    for (const auto& row : inv) {
        IntVector c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = numerator(Rational(row[j] * Rational(d)));
        images.push_back(IntPolynomial::linear(c));
    }
    std::vector<IntVector> gens;
    for (const auto& p : polys) {
        if (p.vars != n) throw Error(ErrorCode::InvalidInput, "polynomial has the wrong number of variables");
        // Scaling by d^deg per term is only uniform on homogeneous pieces;
        // rescale each term to a common power of d.
        Int top = 0;
        for (const auto& [e, c] : p.terms) {
            Int deg = 0;
            for (const auto& x : e) deg += x;
            top = std::max(top, deg);
        }
        IntPolynomial scaled{n, {}};
        for (const auto& [e, c] : p.terms) {
            Int deg = 0;
            for (const auto& x : e) deg += x;
            Int f = 1;
            for (Int k = deg; k < top; ++k) f *= d;
            scaled.terms[e] = c * f;
        }
        auto q = substitute(scaled, images);
        if (q.terms.size() != 1) return std::nullopt;
        gens.push_back(q.terms.begin()->first);
    }
    return make_ideal(n, gens);
}

std::optional<MonomialIdeal> linear_substitution_factored(const std::vector<std::vector<IntVector>>& factored,
                                                          const IntMatrix& m) {
    std::vector<IntPolynomial> polys;
    for (const auto& forms : factored) {
        auto p = IntPolynomial::monomial(IntVector(m.rows()));
        for (const auto& f : forms) {
            if (f.size() != m.rows()) throw Error(ErrorCode::InvalidInput, "linear form has the wrong number of variables");
            p = p * IntPolynomial::linear(f);
        }
        polys.push_back(p);
    }
    return linear_substitution(polys, m);
}

MonomialIdeal pullback_ideal(const IntMatrix& a, const MonomialIdeal& i) {
    if (a.rows() != i.vars) throw Error(ErrorCode::InvalidInput, "chart and ideal disagree on the target variables");
    std::vector<IntVector> g;
    for (const auto& x : i.generators) {
        IntVector e(a.cols());
        for (std::size_t j = 0; j < a.rows(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k) e[k] += x[j] * a(j, k);
        g.push_back(e);
    }
    return make_ideal(a.cols(), g);
}

}  // namespace logfirm
