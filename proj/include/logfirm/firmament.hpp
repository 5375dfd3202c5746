#pragma once

#include <map>
#include <vector>

#include "logfirm/fan.hpp"
#include "logfirm/firm.hpp"

namespace logfirm {

/// Image of the map of cone complexes Sigma_f: source -> target on integral
/// points.
struct Firmament {
    ConeComplex source;
    ConeComplex target;
    ConeComplexMap map;
};

/// Hom(M, N) as a cone in the dual of M's group coordinates.
DualDescription dual_cone(const AffineMonoid& m);
/// Sigma of an atomic chart: the embedded fan with the single cone Hom(P, N).
ConeComplex sigma_of(const AffineMonoid& p);

Firmament make_firmament(ConeComplex source, ConeComplex target, ConeComplexMap map);
/// Sigma_f for a problem: component i contributes Hom(Q_i, N), mapped by
/// precomposition with theta_i.
Firmament firmament_of(const FiberProblem& prob);
/// Monomial chart with n x m matrix A: N^m -> N^n, x -> A x.
Firmament firmament_of_chart(const IntMatrix& a);

struct ContactOrder {
    IntegralPoint point;  // in sigma_of(P)
};

/// `vals` gives the valuation of every Hilbert basis element of P (keyed by
/// ambient coordinates). Throws NotAdditive when no homomorphism fits.
ContactOrder contact_order(const AffineMonoid& p, const std::map<IntVector, Int>& vals);
/// Contact order of a rank-one point psi: P -> N.
ContactOrder contact_order(const MonoidHom& psi);

bool firmament_member(const Firmament& g, const IntegralPoint& n, const IlpOptions& options = {});
std::vector<IntegralPoint> firmament_enumerate_box(const Firmament& g, long bound);
bool lies_in_firmament(const Firmament& g, const ContactOrder& c);

}  // namespace logfirm
