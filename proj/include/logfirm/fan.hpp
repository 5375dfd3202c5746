#pragma once

#include <optional>
#include <vector>

#include "logfirm/intlinalg.hpp"

namespace logfirm {

struct ComplexCone {
    std::size_t lattice_rank = 0;
    std::vector<IntVector> rays;  // extreme rays, canonical order
    DualDescription dd;
    std::size_t dim() const { return dd.cone_dim(); }
};

/// Identifies the lattice of `face` with the lattice points of a face of `cone`.
struct FaceMap {
    std::size_t face = 0;
    std::size_t cone = 0;
    IntMatrix matrix;
};

/// A complex of sharp rational cones glued along faces. Every face of every
/// cone is itself listed, and there is one face map for each pair tau <= sigma
/// (including sigma <= sigma). Input cones keep their positions at the front
/// of `cones`; faces that were added are appended.
///
/// An embedded complex has all cones in one lattice (1/scale) Z^d, with
/// integer coordinates measured in units of 1/scale. Face maps are identities.
struct ConeComplex {
    std::vector<ComplexCone> cones;
    std::vector<FaceMap> face_maps;
    std::optional<std::size_t> ambient_rank;
    Int scale = 1;

    bool embedded() const { return ambient_rank.has_value(); }
    /// Indices of cones that are not a proper face of another cone.
    std::vector<std::size_t> maximal_cones() const;
    /// Face maps with the given target cone.
    std::vector<const FaceMap*> faces_of(std::size_t cone) const;
};

struct IntegralPoint {
    std::size_t cone = 0;
    IntVector coords;
    auto operator<=>(const IntegralPoint&) const = default;
    bool operator==(const IntegralPoint&) const = default;
};

/// Per source cone: target cone and the matrix on lattices.
struct ConeComplexMap {
    std::vector<std::size_t> target_cone;
    std::vector<IntMatrix> matrix;
};

/// Embedded fan from the rays of its (maximal) cones; faces are added. With
/// `check` the fan condition is verified (InvalidInput otherwise).
ConeComplex embedded_fan(std::size_t ambient_rank, const std::vector<std::vector<IntVector>>& cone_rays,
                         const Int& scale = 1, bool check = true);
/// The orthant N^r as a one-cone fan.
ConeComplex orthant(std::size_t r);
/// Disjoint union of cones, each in its own lattice Z^(lattice rank).
ConeComplex cone_union(const std::vector<DualDescription>& cones);

/// True when every pair of cones meets in a common face.
bool is_well_formed(const ConeComplex& c);

IntegralPoint canonicalize_point(const ConeComplex& c, const IntegralPoint& p);

/// Builds a map from assignments for the leading cones (usually the input
/// cones); remaining faces inherit the assignment of a cone containing them.
/// Checks that every ray lands in its target cone.
ConeComplexMap make_map(const ConeComplex& source, const ConeComplex& target,
                        const std::vector<std::size_t>& target_cone, const std::vector<IntMatrix>& matrix);
IntegralPoint map_point(const ConeComplex& target, const ConeComplexMap& f, const IntegralPoint& p);
/// g after f.
ConeComplexMap compose(const ConeComplexMap& g, const ConeComplexMap& f);

struct Subdivision {
    ConeComplex fine;
    ConeComplexMap map;  // fine -> coarse, identity matrices
};

/// Identity-matrix map from a refinement to the fan it refines. Throws
/// InvalidInput if some cone of `fine` lies in no cone of `coarse`.
ConeComplexMap subdivision_map(const ConeComplex& fine, const ConeComplex& coarse);

Subdivision star_subdivision(const ConeComplex& c, const IntVector& v);
ConeComplex common_refinement(const ConeComplex& a, const ConeComplex& b, long probe_radius = 8);

/// Common refinement of every ordered stellar subdivision of N^r at the
/// primitive vectors of {0..n}^r. Supported for r <= 3.
ConeComplex sigma_n(std::size_t r, std::size_t n);
ConeComplex root_rescale(const ConeComplex& c, const Int& k);

/// Every cone of `fine` lies in a cone of `coarse`, and every lattice point
/// of |coarse| in [-radius, radius]^d lies in |fine|.
bool is_refinement(const ConeComplex& fine, const ConeComplex& coarse, long probe_radius = 8);

/// Canonical integral points with real coordinates in [0, bound]^d.
std::vector<IntegralPoint> lattice_points_box(const ConeComplex& c, long bound);

}  // namespace logfirm
