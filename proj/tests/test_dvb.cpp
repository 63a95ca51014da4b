#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgd/dvb.hpp"
#include "dgd/rng.hpp"

#include <algorithm>

using namespace dgd;

namespace {

Vec rvec(Rng& rng, std::size_t n) {
    Vec v(n);
    for (auto& x : v) x = rng.rat();
    return v;
}

Vec basis(std::size_t n, std::size_t i) {
    Vec v(n, Rat(0));
    v[i] = Rat(1);
    return v;
}

std::vector<std::size_t> sortedDims(const SplitDVB& E) {
    std::vector<std::size_t> d{E.dimH, E.dimV, E.dimCore};
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST_CASE("split additions") {
    SplitDVB E{1, 1, 1};
    // zero section over a
    DVBElement z = makeElement(E, {Rat(7)}, {Rat(0)}, {Rat(0)});
    CHECK(addVertical(z, z).b == Vec{Rat(0)});
    // (1;2;3) +_V (1;4;5) = (1;6;8)
    DVBElement e1 = makeElement(E, {Rat(1)}, {Rat(2)}, {Rat(3)});
    DVBElement e2 = makeElement(E, {Rat(1)}, {Rat(4)}, {Rat(5)});
    DVBElement s = addVertical(e1, e2);
    CHECK(s.a == Vec{Rat(1)});
    CHECK(s.b == Vec{Rat(6)});
    CHECK(s.k == Vec{Rat(8)});
    // mismatched sides rejected
    DVBElement e3 = makeElement(E, {Rat(2)}, {Rat(4)}, {Rat(5)});
    CHECK_THROWS(addVertical(e1, e3));
    CHECK_THROWS(addHorizontal(e1, s));
}

TEST_CASE("interchange law on randomized compatible quadruples") {
    Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        SplitDVB E{1 + rng.below(4), 1 + rng.below(4), 1 + rng.below(4)};
        Vec a12 = rvec(rng, E.dimH), a34 = rvec(rng, E.dimH);
        Vec b13 = rvec(rng, E.dimV), b24 = rvec(rng, E.dimV);
        DVBElement e1 = makeElement(E, a12, b13, rvec(rng, E.dimCore));
        DVBElement e2 = makeElement(E, a12, b24, rvec(rng, E.dimCore));
        DVBElement e3 = makeElement(E, a34, b13, rvec(rng, E.dimCore));
        DVBElement e4 = makeElement(E, a34, b24, rvec(rng, E.dimCore));
        DVBElement lhs = addHorizontal(addVertical(e1, e2), addVertical(e3, e4));
        DVBElement rhs = addVertical(addHorizontal(e1, e3), addHorizontal(e2, e4));
        CHECK(lhs.a == rhs.a);
        CHECK(lhs.b == rhs.b);
        CHECK(lhs.k == rhs.k);
    }
}

TEST_CASE("dual bundle dimension bookkeeping") {
    SplitDVB E{2, 3, 4};
    SplitDVB dv = dualVertical(E);
    CHECK(dv.dimH == 2);
    CHECK(dv.dimV == 4);
    CHECK(dv.dimCore == 3);
    SplitDVB zero = dualVertical(SplitDVB{0, 0, 0});
    CHECK(zero.totalDim() == 0);
    // double application preserves the three dimensions
    CHECK(sortedDims(dualVertical(dualHorizontal(E))) == sortedDims(E));
}

TEST_CASE("unfamiliar projection") {
    SplitDVB E{2, 2, 2};
    Rng rng(7);
    Vec a = rvec(rng, 2), beta = rvec(rng, 2), kappa = rvec(rng, 2);
    DualVElement phi{E, a, beta, kappa};
    CHECK(unfamiliarProjection(phi) == kappa);
    // agrees with evaluating phi on 0^V_X + kbar for every basis k
    for (std::size_t i = 0; i < 2; ++i) {
        DVBElement probe = makeElement(E, a, Vec(2, Rat(0)), basis(2, i));
        CHECK(pairDualV(phi, probe) == kappa[i]);
    }
    // zero covector
    DualVElement z{E, a, Vec(2, Rat(0)), Vec(2, Rat(0))};
    CHECK(isZero(unfamiliarProjection(z)));
    // independent of the a-component
    DualVElement phi2{E, rvec(rng, 2), beta, kappa};
    CHECK(unfamiliarProjection(phi2) == unfamiliarProjection(phi));
}

TEST_CASE("pair_duals closed form and xi independence") {
    SplitDVB E{1, 1, 1};
    DualVElement phi{E, {Rat(2)}, {Rat(3)}, {Rat(5)}};
    DualHElement psi{E, {Rat(7)}, {Rat(11)}, {Rat(5)}};
    // 7*2 - 3*11 = -19, for xi core in {0, 1, -4}
    for (long c : {0L, 1L, -4L})
        CHECK(pairDualsWithXi(phi, psi, {Rat(c)}) == Rat(-19));
    CHECK(pairDuals(phi, psi) == Rat(-19));

    // Phi = 0 over kappa = 0 against Psi with X=0, psi-part 0
    DualVElement z{E, {Rat(0)}, {Rat(0)}, {Rat(0)}};
    DualHElement p0{E, {Rat(9)}, {Rat(0)}, {Rat(0)}};
    CHECK(pairDuals(z, p0) == Rat(0));

    // kappa mismatch rejected
    DualHElement bad{E, {Rat(7)}, {Rat(11)}, {Rat(6)}};
    CHECK_THROWS(pairDuals(phi, bad));
}

TEST_CASE("pair_duals randomized: xi independence, closed form, scalar homogeneity") {
    Rng rng(313);
    for (int t = 0; t < 100; ++t) {
        SplitDVB E{1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3)};
        Vec kappa = rvec(rng, E.dimCore);
        DualVElement phi{E, rvec(rng, E.dimH), rvec(rng, E.dimV), kappa};
        DualHElement psi{E, rvec(rng, E.dimH), rvec(rng, E.dimV), kappa};
        Rat v0 = pairDualsWithXi(phi, psi, Vec(E.dimCore, Rat(0)));
        for (int j = 0; j < 3; ++j)
            CHECK(pairDualsWithXi(phi, psi, rvec(rng, E.dimCore)) == v0);
        CHECK(pairDualsClosedForm(phi, psi) == v0);
    }
    // canonical pairing is homogeneous for the over-side scalar action
    SplitDVB E{2, 2, 2};
    for (int t = 0; t < 20; ++t) {
        Rat s = rng.rat();
        Vec a = rvec(rng, 2);
        DualVElement phi{E, a, rvec(rng, 2), rvec(rng, 2)};
        DVBElement xi = makeElement(E, a, rvec(rng, 2), rvec(rng, 2));
        DualVElement sphi{E, a, s * phi.beta, s * phi.kappa};
        CHECK(pairDualV(sphi, xi) == s * pairDualV(phi, xi));
    }
}

TEST_CASE("duals pairing is nondegenerate with full exact rank") {
    Rng rng(77);
    for (int t = 0; t < 40; ++t) {
        SplitDVB E{1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3)};
        Vec kappa = rvec(rng, E.dimCore);
        Mat M = dualsPairingMatrix(E, kappa);
        CHECK(M.rank() == E.dimH + E.dimV);
        // fiberwise pairing matrix does not depend on the kappa fiber
        CHECK(M == dualsPairingMatrix(E, Vec(E.dimCore, Rat(0))));
    }
}

TEST_CASE("induced iso: identity setup") {
    SplitDVB E{2, 3, 2};
    DVBPairingData P;
    P.D = dualVertical(E);  // (E^H, K*; (E^V)*)
    P.E = E;
    P.sideCore = Mat::identity(E.dimCore);
    P.coreSide = Mat::identity(E.dimV);
    P.sideSide = Mat::zero(E.dimCore, E.dimV);
    P.coreCore = Mat::zero(E.dimV, E.dimCore);
    InducedIso iso = inducedIso(P);
    REQUIRE(iso.ok);
    CHECK(iso.sideA == Mat::identity(E.dimH));
    CHECK(iso.sideV == Mat::identity(E.dimCore));
    CHECK(iso.core == Mat::identity(E.dimV));

    // the map F(d)(xi) = <d, xi> reproduces the canonical pairing
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        Vec a = rvec(rng, E.dimH);
        DVBElement d = makeElement(P.D, a, rvec(rng, E.dimCore), rvec(rng, E.dimV));
        DVBElement xi = makeElement(E, a, rvec(rng, E.dimV), rvec(rng, E.dimCore));
        DualVElement asDual{E, d.a, d.k, d.b};
        CHECK(evalPairing(P, d, xi) == pairDualV(asDual, xi));
    }
}

TEST_CASE("induced iso: degenerate pairing rejected with witness") {
    SplitDVB E{2, 2, 2};
    DVBPairingData P;
    P.D = dualVertical(E);
    P.E = E;
    P.sideCore = Mat::zero(E.dimCore, E.dimCore);  // cores' partners unpaired
    P.coreSide = Mat::identity(E.dimV);
    P.sideSide = Mat::zero(E.dimCore, E.dimV);
    P.coreCore = Mat::zero(E.dimV, E.dimCore);
    InducedIso iso = inducedIso(P);
    CHECK(!iso.ok);
    CHECK(iso.failedCondition == "i");
    CHECK(!iso.witness.empty());
}

TEST_CASE("double dual iso has identity sides and -identity core") {
    Rng rng(23);
    for (int t = 0; t < 25; ++t) {
        SplitDVB E{1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3)};
        DoubleDualIso iso = doubleDualIso(E);
        CHECK(iso.sideH == Mat::identity(E.dimH));
        CHECK(iso.sideKstar == Mat::identity(E.dimCore));
        CHECK(iso.core == -Mat::identity(E.dimV));

        // elementwise: side element fixed, core element negated
        Vec a = rvec(rng, E.dimH), kappa = rvec(rng, E.dimCore);
        DualVElement side{E, a, Vec(E.dimV, Rat(0)), kappa};
        DualVElement img = doubleDualApply(E, side);
        CHECK(img.a == kappa);
        CHECK(img.kappa == a);
        CHECK(isZero(img.beta));

        Vec beta = rvec(rng, E.dimV);
        DualVElement core{E, Vec(E.dimH, Rat(0)), beta, Vec(E.dimCore, Rat(0))};
        CHECK(doubleDualApply(E, core).beta == -beta);

        // applying the construction twice is +identity on the cores
        SplitDVB E2 = dualHorizontal(E);
        CHECK(doubleDualIso(E2).core * iso.core == Mat::identity(E.dimV));
    }
}

TEST_CASE("tangent model: pairing and R in coordinates") {
    TangentModel T = tangentModel(1, 1);
    // (x=0, phi=2, xdot=1, phidot=5) with (x=0, a=3, xdot=1, adot=7) -> 29
    DVBElement X = makeElement(T.TAstar, {Rat(2)}, {Rat(1)}, {Rat(5)});
    DVBElement xi = makeElement(T.TA, {Rat(3)}, {Rat(1)}, {Rat(7)});
    CHECK(tangentPairing(T, X, xi) == Rat(29));
    DVBElement ximis = makeElement(T.TA, {Rat(3)}, {Rat(2)}, {Rat(7)});
    CHECK_THROWS(tangentPairing(T, X, ximis));

    // R(x=1, phi=2, p=3, a=4) = (1, 4, -3, 2)
    DVBElement F = makeElement(dualVertical(T.TAstar), {Rat(2)}, {Rat(4)}, {Rat(3)});
    DualVElement RF = tangentR(T, F);
    CHECK(RF.a == Vec{Rat(4)});
    CHECK(RF.beta == Vec{Rat(-3)});
    CHECK(RF.kappa == Vec{Rat(2)});
}

TEST_CASE("tangent model: E-induced pairing of T*(A*) and T(A*) is the standard one") {
    Rng rng(2718);
    for (auto [m, k] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {1, 2}, {2, 3}}) {
        TangentModel T = tangentModel(m, k);
        for (int t = 0; t < 8; ++t) {
            Vec phi = rvec(rng, k);
            DVBElement F = makeElement(dualVertical(T.TAstar), phi, rvec(rng, k), rvec(rng, m));
            DVBElement X = makeElement(T.TAstar, phi, rvec(rng, m), rvec(rng, k));
            DualVElement Phi = tangentR(T, F);
            DualHElement Psi = tangentI(T, X);
            // standard pairing of T*(A*) with T(A*)
            DualVElement Fd{T.TAstar, F.a, F.k, F.b};
            CHECK(pairDuals(Phi, Psi) == pairDualV(Fd, X));
        }
    }
}

TEST_CASE("tangent model: pairing induced by T*A is <<X, -xi>>") {
    Rng rng(314);
    for (auto [m, k] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 2}, {1, 3}}) {
        TangentModel T = tangentModel(m, k);
        for (int t = 0; t < 8; ++t) {
            Vec x = rvec(rng, m), phi = rvec(rng, k);
            DVBElement xi = makeElement(T.TA, rvec(rng, k), x, rvec(rng, k));
            DVBElement X = makeElement(T.TAstar, phi, -x, rvec(rng, k));
            // xi as an element of the vertical dual of T*A
            DualVElement Phi{T.TstarA, xi.a, xi.k, xi.b};
            DualHElement Psi = tangentRinvDual(T, X);
            DVBElement negXi = scaleVertical(Rat(-1), xi);
            CHECK(pairDuals(Phi, Psi) == tangentPairing(T, X, negXi));
        }
    }
}
