// Split double vector bundles over a point: two additions, vertical and
// horizontal duals, the duality pairing of the two duals, and the canonical
// R / I maps of the tangent models.
//
// Layout convention for a split total space: element (a, b, k) with
//   a : side under the vertical projection  (E^H fiber)
//   b : side under the horizontal projection (E^V fiber)
//   k : core fiber
// Vertical addition fixes a, horizontal addition fixes b; both add cores.
#pragma once

#include "dgd/mat.hpp"

#include <optional>
#include <string>

namespace dgd {

struct SplitDVB {
    std::size_t dimH = 0;     // dim E^H
    std::size_t dimV = 0;     // dim E^V
    std::size_t dimCore = 0;  // dim K
    std::string label;

    std::size_t totalDim() const { return dimH + dimV + dimCore; }
    bool sameShape(const SplitDVB& o) const {
        return dimH == o.dimH && dimV == o.dimV && dimCore == o.dimCore;
    }
};

struct DVBElement {
    SplitDVB owner;
    Vec a, b, k;
};

DVBElement makeElement(const SplitDVB& E, Vec a, Vec b, Vec k);
DVBElement zeroElement(const SplitDVB& E);

DVBElement addVertical(const DVBElement& e1, const DVBElement& e2);
DVBElement addHorizontal(const DVBElement& e1, const DVBElement& e2);
DVBElement scaleVertical(const Rat& t, const DVBElement& e);
DVBElement scaleHorizontal(const Rat& t, const DVBElement& e);

// Sides (E^H, K*), core (E^V)*.
SplitDVB dualVertical(const SplitDVB& E);
// Sides (K*, E^V), core (E^H)*.
SplitDVB dualHorizontal(const SplitDVB& E);

// Element of E^{*V}: base side a in E^H, covector data (beta, kappa).
struct DualVElement {
    SplitDVB primal;  // the E this is a vertical dual of
    Vec a;            // dimH
    Vec beta;         // dimV covector
    Vec kappa;        // dimCore covector
};

// Element of E^{*H}.
struct DualHElement {
    SplitDVB primal;
    Vec alpha;  // dimH covector
    Vec b;      // dimV
    Vec kappa;  // dimCore covector
};

// Canonical pairings with the primal fibers (same a resp. same b).
Rat pairDualV(const DualVElement& phi, const DVBElement& xi);
Rat pairDualH(const DualHElement& psi, const DVBElement& xi);

// E^{*V} and E^{*H} elements as generic split elements of the dual bundles.
DVBElement asElement(const DualVElement& phi);
DVBElement asElement(const DualHElement& psi);

Vec unfamiliarProjection(const DualVElement& phi);

// <Phi,Psi> = <Psi,xi> - <Phi,xi> with xi = (phi.a, psi.b, coreChoice).
Rat pairDualsWithXi(const DualVElement& phi, const DualHElement& psi, const Vec& coreChoice);
// Default xi has zero core; the split closed form is checked to agree.
Rat pairDuals(const DualVElement& phi, const DualHElement& psi);
Rat pairDualsClosedForm(const DualVElement& phi, const DualHElement& psi);

// Pairing matrix between the fibers of E^{*V} and E^{*H} over a fixed kappa;
// rows index (a, beta)-basis, columns (b, alpha)-basis.
Mat dualsPairingMatrix(const SplitDVB& E, const Vec& kappa);

// Structured pairing data for Prop.-style induced isomorphisms. Roles:
// D and E share their a-side (dimension checked); the pairing couples the
// bundles D -> sideA and E -> sideA fiberwise:
//   <d, xi> = vd^T sideCore l + kd^T coreSide v_xi
//           + vd^T sideSide v_xi + kd^T coreCore l
// where vd = d.b, kd = d.k, v_xi = xi.b, l = xi.k.
struct DVBPairingData {
    SplitDVB D, E;
    Mat sideCore;  // (D.dimV x E.dimCore)
    Mat coreSide;  // (D.dimCore x E.dimV)
    Mat sideSide;  // must vanish (condition iv)
    Mat coreCore;  // must vanish (condition iii)
};

Rat evalPairing(const DVBPairingData& P, const DVBElement& d, const DVBElement& xi);

struct InducedIso {
    bool ok = false;
    std::string failedCondition;  // "i".."v" when !ok
    Vec witness;                  // kernel/nonzero witness for the failure
    // F : D -> E^{*V} over identity on the shared side; block maps:
    Mat sideA;  // identity on the shared side
    Mat sideV;  // D.sideV -> L* (dual of E's core)
    Mat core;   // D.core  -> (E^V)*
};

InducedIso inducedIso(const DVBPairingData& P);

// Cor.-style double dual: E^{*V} -> (E^{*H})^{*V} induced by the duals
// pairing. Returns the three block maps (computed, not assumed).
struct DoubleDualIso {
    Mat sideH;      // E^H -> E^H
    Mat sideKstar;  // K* -> K*
    Mat core;       // (E^V)* -> (E^V)*
};
DoubleDualIso doubleDualIso(const SplitDVB& E);
// Elementwise form: image lives in the vertical dual of dualHorizontal(E).
DualVElement doubleDualApply(const SplitDVB& E, const DualVElement& phi);

// Tangent double vector bundle of a trivial bundle A = R^m x R^k over R^m,
// together with the canonical maps of its dual pair. All data is fiberwise
// over a single base point.
struct TangentModel {
    std::size_t baseDim = 0;   // m
    std::size_t fiberDim = 0;  // k
    SplitDVB TA;               // sides (A, TM), core A
    SplitDVB TAstar;           // T(A*): sides (A*, TM), core A*
    SplitDVB TstarA;           // = dualVertical(TA)
    SplitDVB TsolA;            // = dualHorizontal(TA)
};

TangentModel tangentModel(std::size_t m, std::size_t k);

// <<X, xi>> for X in T(A*), xi in TA over the same TM velocity.
Rat tangentPairing(const TangentModel& T, const DVBElement& X, const DVBElement& xi);

// R: T*(A*) -> T*(A), solved pointwise from its defining relation.
// Input layout (a = phi, b = aComp, k = p); output is a DualVElement of TA.
DualVElement tangentR(const TangentModel& T, const DVBElement& F);

// I: T(A*) -> dualHorizontal(TA), from <I(X), xi> = <<X, xi>>.
DualHElement tangentI(const TangentModel& T, const DVBElement& X);

// Dual of R^{-1} over A*: T(A*) -> dualHorizontal(T*A).
DualHElement tangentRinvDual(const TangentModel& T, const DVBElement& X);

} // namespace dgd
