#pragma once

#include <optional>
#include <vector>

#include "logfirm/monoid.hpp"

namespace logfirm {

/// f: X -> Y with Y atomic with chart P and X covered by atomics with
/// charts theta_i: P -> Q_i.
struct FiberProblem {
    AffineMonoid base;
    std::vector<MonoidHom> components;
};

/// A log point s -> Y, i.e. a local map psi: P -> R.
struct LogPointQuery {
    MonoidHom psi;
    const AffineMonoid& point_monoid() const { return psi.target(); }
};

FiberProblem make_fiber_problem(AffineMonoid base, std::vector<MonoidHom> components);
/// Rejects non-local psi.
LogPointQuery make_query(MonoidHom psi);

struct FirmnessWitness {
    std::size_t component = 0;
    MonoidHom h;         // Q_i -> R with h . theta_i = psi
    Face induced_face;   // h^{-1}(0)
};

/// Exact re-check of a witness.
bool verify_witness(const FiberProblem& prob, const LogPointQuery& q, const FirmnessWitness& w);

/// Factorization criterion: psi factors through some theta_i.
std::optional<FirmnessWitness> firm_check(const FiberProblem& prob, const LogPointQuery& q,
                                          const IlpOptions& options = {});

struct PushoutFirmness {
    bool firm = false;
    std::size_t component = 0;
    Face face;              // face G of the characteristic pushout monoid N_i
    MonoidHom retraction;   // (N_i/G)^sharp -> R
};

/// Literal criterion: a point of the fs fiber product over s whose
/// characteristic map from R admits a retraction.
PushoutFirmness firm_check_pushout(const FiberProblem& prob, const LogPointQuery& q,
                                   const IlpOptions& options = {});

enum class EvidenceKind { None, Constructed, SemiDecision };

/// Why the caller believes theta is integral and saturated.
struct IntSatEvidence {
    EvidenceKind kind = EvidenceKind::None;
    std::size_t bound = 0;  // for SemiDecision; must be >= 6
};

/// Runs both semi-decisions and packages the outcome as evidence (kind None
/// when either is refuted).
IntSatEvidence probe_evidence(const MonoidHom& theta, std::size_t bound = 6);

struct DichotomyResult {
    std::optional<MonoidHom> retraction;  // theta local
    std::optional<Face> boundary_face;    // theta not local: the nonzero face of P killed by theta
};

DichotomyResult dichotomy(const MonoidHom& theta, const IntSatEvidence& evidence);

/// Witness transported to a generization of s. The face F of R selects the
/// generization; P and Q_i are localized at the preimages of F so that the
/// localized query stays local.
struct GeneralizedWitness {
    Face face;                 // face of R
    MonoidHom psi;             // P/psi^{-1}(F) -> R/F
    MonoidHom theta;           // P/psi^{-1}(F) -> Q_i/h^{-1}(F)
    FirmnessWitness witness;   // component index refers to the original problem
};

bool verify_generalized(const GeneralizedWitness& g);

std::vector<GeneralizedWitness> generization_witnesses(const FiberProblem& prob, const LogPointQuery& q,
                                                       const FirmnessWitness& w);

}  // namespace logfirm
