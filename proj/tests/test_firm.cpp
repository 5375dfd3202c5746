#include "doctest.h"

#include <random>

#include "logfirm/firm.hpp"

using namespace logfirm;

namespace {

AffineMonoid N(std::size_t r = 1) { return AffineMonoid::free(r); }

MonoidHom times(long k) { return MonoidHom(N(), N(), IntMatrix{{k}}); }

FiberProblem two_three() { return make_fiber_problem(N(), {times(2), times(3)}); }

AffineMonoid q1() { return AffineMonoid::saturate(2, {make_vector({2, 0}), make_vector({1, 1}), make_vector({0, 2})}); }

}  // namespace

TEST_CASE("firm_check examples") {
    auto kummer = make_fiber_problem(N(), {times(3)});
    CHECK_FALSE(firm_check(kummer, make_query(MonoidHom::identity(N()))));

    auto w = firm_check(two_three(), make_query(times(6)));
    REQUIRE(w);
    CHECK(w->component == 0);
    CHECK(w->h.matrix() == IntMatrix{{3}});
    CHECK(w->induced_face.generator_subset.empty());

    CHECK_FALSE(firm_check(two_three(), make_query(times(5))));

    auto zero = AffineMonoid::trivial(0);
    auto trivial_prob = make_fiber_problem(zero, {MonoidHom::identity(zero)});
    auto tw = firm_check(trivial_prob, make_query(MonoidHom::zero(zero, N())));
    REQUIRE(tw);
    CHECK(tw->h.matrix().is_zero());

    auto empty = make_fiber_problem(N(), {});
    CHECK_FALSE(firm_check(empty, make_query(MonoidHom::identity(N()))));

    CHECK_THROWS_AS(make_query(times(0)), Error);
}

TEST_CASE("firm_check_pushout examples") {
    auto kummer = make_fiber_problem(N(), {times(3)});
    CHECK_FALSE(firm_check_pushout(kummer, make_query(MonoidHom::identity(N()))).firm);

    auto through = firm_check_pushout(two_three(), make_query(times(2)));
    CHECK(through.firm);
    CHECK(through.component == 0);

    auto six = firm_check_pushout(two_three(), make_query(times(6)));
    CHECK(six.firm);
    CHECK_FALSE(firm_check_pushout(two_three(), make_query(times(5))).firm);
    CHECK_FALSE(firm_check_pushout(two_three(), make_query(times(1))).firm);
}

TEST_CASE("dichotomy") {
    IntSatEvidence constructed{EvidenceKind::Constructed, 0};
    auto incl = MonoidHom(N(), N(2), IntMatrix{{1}, {0}});
    auto d = dichotomy(incl, constructed);
    REQUIRE(d.retraction);
    CHECK(d.retraction->after(incl).matrix() == IntMatrix::identity(1));
    CHECK(d.retraction->matrix() == IntMatrix{{1, 0}});

    auto zero_map = times(0);
    auto b = dichotomy(zero_map, constructed);
    REQUIRE(b.boundary_face);
    CHECK(b.boundary_face->dim == 1);
    CHECK_FALSE(b.retraction);

    auto id = dichotomy(MonoidHom::identity(N(2)), constructed);
    REQUIRE(id.retraction);
    CHECK(id.retraction->matrix() == IntMatrix::identity(2));

    CHECK_THROWS_AS(dichotomy(incl, IntSatEvidence{}), Error);
    try {
        dichotomy(incl, IntSatEvidence{});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EvidenceMissing);
    }
    auto probed = probe_evidence(incl);
    CHECK(probed.kind == EvidenceKind::SemiDecision);
    CHECK(dichotomy(incl, probed).retraction);
    CHECK(probe_evidence(times(2)).kind == EvidenceKind::None);
}

TEST_CASE("generization witnesses") {
    auto q = make_query(times(6));
    auto w = *firm_check(two_three(), q);
    auto gens = generization_witnesses(two_three(), q, w);
    // Faces of R = N are {0} and N; the second generizes to the open stratum
    // of P and is omitted.
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].face.dim == 0);
    CHECK(gens[0].witness.h.matrix() == w.h.matrix());
    CHECK(gens[0].psi.matrix() == q.psi.matrix());

    auto n2 = N(2);
    auto prob = make_fiber_problem(n2, {MonoidHom::identity(n2)});
    auto qid = make_query(MonoidHom::identity(n2));
    auto wid = *firm_check(prob, qid);
    auto g2 = generization_witnesses(prob, qid, wid);
    REQUIRE(g2.size() == 3);
    for (const auto& g : g2) CHECK(verify_generalized(g));
    // F = ray(1,0): everything localizes to N and h is the identity there.
    const auto& ray = g2[1];
    CHECK(ray.face.dim == 1);
    CHECK(ray.psi.target().rank() == 1);
    CHECK(ray.witness.h.matrix() == IntMatrix::identity(1));
}

// ---------------------------------------------------------------------------
// Properties

namespace {

AffineMonoid random_monoid(std::mt19937& rng, std::size_t rank) {
    std::uniform_int_distribution<int> coin(0, 3);
    if (rank == 2 && coin(rng) == 0) return q1();
    return N(rank);
}

std::optional<MonoidHom> random_hom(std::mt19937& rng, const AffineMonoid& s, const AffineMonoid& t, bool local) {
    std::uniform_int_distribution<int> e(0, 3);
    for (int attempt = 0; attempt < 50; ++attempt) {
        IntMatrix m(t.ambient_rank(), s.ambient_rank());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = e(rng);
        try {
            auto h = MonoidHom::from_ambient(s, t, m);
            if (local && !is_local(h)) continue;
            return h;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

struct Instance {
    FiberProblem prob;
    LogPointQuery query;
};

std::vector<Instance> corpus(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> rk(1, 2), ncomp(1, 2);
    std::vector<Instance> out;
    while (out.size() < count) {
        auto p = random_monoid(rng, rk(rng));
        auto r = random_monoid(rng, rk(rng));
        auto psi = random_hom(rng, p, r, true);
        if (!psi) continue;
        std::vector<MonoidHom> comps;
        int k = ncomp(rng);
        for (int i = 0; i < k; ++i) {
            auto qi = random_monoid(rng, rk(rng));
            auto th = random_hom(rng, p, qi, true);
            if (th) comps.push_back(*th);
        }
        if (comps.empty()) continue;
        out.push_back({make_fiber_problem(p, comps), make_query(*psi)});
    }
    return out;
}

}  // namespace

TEST_CASE("factorization and pushout criteria agree") {
    int firm = 0;
    auto instances = corpus(110, 21);
    for (const auto& inst : instances) {
        auto a = firm_check(inst.prob, inst.query);
        auto b = firm_check_pushout(inst.prob, inst.query);
        CHECK(a.has_value() == b.firm);
        if (a) {
            ++firm;
            CHECK(verify_witness(inst.prob, inst.query, *a));
        }
    }
    CHECK(instances.size() >= 100);
    CHECK(firm > 10);
    CHECK(firm < static_cast<int>(instances.size()));
}

TEST_CASE("integral and saturated components make every local query firm") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t a = 1 + trial % 2;
        auto p = N(a);
        IntMatrix inc(a + 1, a);
        for (std::size_t i = 0; i < a; ++i) inc(i, i) = 1;
        auto comps = std::vector<MonoidHom>{MonoidHom::identity(p), MonoidHom(p, N(a + 1), inc)};
        auto prob = make_fiber_problem(p, {comps[trial % 2]});
        auto psi = random_hom(rng, p, random_monoid(rng, 1 + (trial / 2) % 2), true);
        if (!psi) continue;
        CHECK(firm_check(prob, make_query(*psi)));
    }
    // The Kummer chart is not saturated and the identity query is not firm.
    CHECK_FALSE(firm_check(make_fiber_problem(N(), {times(2)}), make_query(MonoidHom::identity(N()))));
}

TEST_CASE("witnesses survive base change and generization") {
    std::mt19937 rng(23);
    int checked = 0, generized = 0;
    for (const auto& inst : corpus(60, 24)) {
        auto w = firm_check(inst.prob, inst.query);
        if (!w) continue;
        auto rho = random_hom(rng, inst.query.point_monoid(), random_monoid(rng, 2), true);
        if (rho) {
            auto q2 = make_query(rho->after(inst.query.psi));
            auto h2 = rho->after(w->h);
            FirmnessWitness w2{w->component, h2, kernel_face(h2)};
            CHECK(verify_witness(inst.prob, q2, w2));
            ++checked;
        }
        for (const auto& g : generization_witnesses(inst.prob, inst.query, *w)) {
            CHECK(verify_generalized(g));
            ++generized;
        }
    }
    CHECK(checked > 5);
    CHECK(generized > 10);
}
