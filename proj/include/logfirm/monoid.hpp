#pragma once

#include <optional>
#include <vector>

#include "logfirm/intlinalg.hpp"

namespace logfirm {

/// A fine saturated monoid: the lattice points of a rational cone inside a
/// finitely generated subgroup of Z^d.
///
/// Internally everything is kept in coordinates of the group: the subgroup
/// has a Hermite basis B (columns, d x r) and an element x of the monoid is
/// stored as the unique y in Z^r with B y = x. The cone is full dimensional in
/// those coordinates.
class AffineMonoid {
public:
    AffineMonoid() = default;

    /// cone(gens) intersected with the subgroup generated by gens.
    static AffineMonoid saturate(std::size_t ambient_rank, const std::vector<IntVector>& generators);
    /// cone intersected with the full lattice Z^dim (restricted to the span
    /// of the cone).
    static AffineMonoid from_cone(const DualDescription& cone);
    static AffineMonoid free(std::size_t rank);  // N^rank
    static AffineMonoid trivial(std::size_t ambient_rank = 0);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t rank() const { return basis_.cols(); }
    const IntMatrix& group_basis() const { return basis_; }
    const std::vector<IntVector>& generators() const { return generators_; }
    /// Cone in group coordinates.
    const DualDescription& cone() const { return cone_; }
    bool sharp() const { return cone_.pointed(); }

    /// Hilbert basis in group coordinates, sorted by ambient image. Throws
    /// NotSharp.
    const std::vector<IntVector>& hilbert() const;
    /// Same elements in ambient coordinates.
    std::vector<IntVector> hilbert_ambient() const;

    bool contains(const IntVector& group_coords) const { return cone_.contains(group_coords); }
    bool contains_ambient(const IntVector& x) const;
    IntVector to_ambient(const IntVector& group_coords) const { return basis_ * group_coords; }
    std::optional<IntVector> to_group(const IntVector& ambient) const;

    bool operator==(const AffineMonoid& o) const {
        return ambient_rank_ == o.ambient_rank_ && basis_ == o.basis_ && cone_.rays == o.cone_.rays &&
               cone_.lineality == o.cone_.lineality;
    }

private:
    static AffineMonoid build(std::size_t ambient_rank, IntMatrix basis, std::vector<IntVector> generators,
                              DualDescription cone);

    std::size_t ambient_rank_ = 0;
    IntMatrix basis_;
    std::vector<IntVector> generators_;
    DualDescription cone_;
    std::vector<IntVector> hilbert_;
};

/// Hilbert basis in ambient coordinates.
std::vector<IntVector> hilbert_basis(const AffineMonoid& m);

/// Map of monoids induced by an integer matrix. The stored matrix acts on
/// group coordinates (target.rank() x source.rank()).
class MonoidHom {
public:
    MonoidHom() = default;
    /// Checks that the matrix maps the source into the target.
    MonoidHom(AffineMonoid source, AffineMonoid target, IntMatrix group_matrix);
    /// From a matrix on ambient lattices (target.ambient_rank() x source.ambient_rank()).
    static MonoidHom from_ambient(AffineMonoid source, AffineMonoid target, const IntMatrix& ambient_matrix);
    static MonoidHom identity(const AffineMonoid& m);
    static MonoidHom zero(const AffineMonoid& source, const AffineMonoid& target);

    const AffineMonoid& source() const { return source_; }
    const AffineMonoid& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    IntVector apply(const IntVector& group_coords) const { return matrix_ * group_coords; }
    /// Image of every source Hilbert generator, both in ambient coordinates.
    std::vector<IntVector> hilbert_images_ambient() const;

    /// this after first: first.source -> this.target.
    MonoidHom after(const MonoidHom& first) const;

private:
    AffineMonoid source_;
    AffineMonoid target_;
    IntMatrix matrix_;
};

struct Face {
    std::vector<std::size_t> generator_subset;  // indices into hilbert()
    IntVector normal;                           // group coordinates; >= 0 on m, = 0 exactly on the face
    std::size_t dim = 0;
};

/// All faces of a sharp monoid, ordered by dimension and then by generator
/// subset. Includes {0} and the monoid itself.
std::vector<Face> faces(const AffineMonoid& m);
/// The face as a monoid in its own right (same ambient lattice).
AffineMonoid face_monoid(const AffineMonoid& m, const Face& f);
/// Checks that f is a face of m and returns its canonical record.
Face validate_face(const AffineMonoid& m, const Face& f);
/// Smallest face containing the given elements (group coordinates).
Face face_containing(const AffineMonoid& m, const std::vector<IntVector>& elements);

struct Localization {
    AffineMonoid quotient;  // sharp; Z^(r - dim f) with the full lattice, or m itself when f = {0}
    MonoidHom projection;   // m -> quotient, kernel on m is exactly f
};

Localization face_localization(const AffineMonoid& m, const Face& f);

/// Surjection Z^n -> Z^(n - rank span) whose kernel is the saturation of
/// span(span). Rows are oriented to be nonnegative on `positive` when possible.
IntMatrix quotient_map(std::size_t n, const std::vector<IntVector>& span, const std::vector<IntVector>& positive);

/// Hom(m, N) in the dual of gp(m).
AffineMonoid dual(const AffineMonoid& m);

/// Exact isomorphism test for sharp monoids: a unimodular map of groups
/// carrying one Hilbert basis onto the other.
std::optional<IntMatrix> find_isomorphism(const AffineMonoid& a, const AffineMonoid& b);
bool isomorphic(const AffineMonoid& a, const AffineMonoid& b);

bool is_local(const MonoidHom& h);
/// h^{-1}(0) as a face of the source (source sharp).
Face kernel_face(const MonoidHom& h);

// ---------------------------------------------------------------------------
// Pushouts.

/// An element of Z^free (+) Z/d_1 (+) ... (+) Z/d_k.
struct GroupElement {
    IntVector free;
    IntVector torsion;  // entry i taken modulo torsion[i] of the group
    bool operator==(const GroupElement&) const = default;
};

struct PushoutResult {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;                  // orders > 1
    IntMatrix coordinates;                     // (free + torsion) x (r1 + r2): x -> group element
    std::size_t split = 0;                     // r1: the first block of columns belongs to Q1
    std::vector<GroupElement> amalgam_generators;  // images of the Hilbert bases of Q1 and Q2
    DualDescription saturation_cone;           // cone of free parts, in Z^free
    std::vector<IntVector> unit_lattice;       // basis of lineality(cone) in Z^free
    IntMatrix sharpening;                      // Z^free -> characteristic group
    AffineMonoid characteristic;
    MonoidHom leg1;                            // Q1 -> characteristic
    MonoidHom leg2;                            // Q2 -> characteristic

    GroupElement image1(const IntVector& q1) const;  // group coordinates of Q1
    GroupElement image2(const IntVector& q2) const;
    GroupElement reduce(GroupElement g) const;
    bool in_saturation(const GroupElement& g) const;
    bool in_amalgam(const GroupElement& g, const IlpOptions& options = {}) const;
    /// A finite set that generates the saturation as a monoid.
    std::vector<GroupElement> saturation_generators() const;
};

PushoutResult fs_pushout(const MonoidHom& f, const MonoidHom& g);

// ---------------------------------------------------------------------------
// Homomorphism searches.

/// h: theta.target -> psi.target with h . theta = psi.
std::optional<MonoidHom> find_factorization(const MonoidHom& theta, const MonoidHom& psi,
                                            const IlpOptions& options = {});
/// t: theta.target -> theta.source with t . theta = id.
std::optional<MonoidHom> find_retraction(const MonoidHom& theta, const IlpOptions& options = {});

struct SemiDecision {
    bool refuted = false;  // true: a certified violation was found
    std::size_t bound = 0;
    std::vector<IntVector> witness;  // description depends on the check
    std::string explanation;
};

/// Searches for a violation of integrality among elements with at most
/// `bound` Hilbert summands. `witness` = {a1, a2, b1, b2} in group coordinates.
SemiDecision is_integral(const MonoidHom& theta, std::size_t bound = 6);
/// Probes fs pushouts along multiplication by k <= bound and the self
/// pushout. `witness` = {free part, torsion part} of an element of the
/// saturation outside the amalgam.
SemiDecision is_saturated(const MonoidHom& theta, std::size_t bound = 6);

}  // namespace logfirm
