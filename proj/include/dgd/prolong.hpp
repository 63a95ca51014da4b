// Prolonged pairings and canonical isomorphisms for constant-fiber
// VB-groupoids: the applied-Lie-functor spaces, the prolonged pairing, the
// I map, the ddagger pairing, R^gpd, epsilon, and — for double groupoids —
// the iterated algebroids with the canonical j and the j' maps.
//
// Triple fiber-coordinate layouts (fiberwise over a base point of M):
//   AOm         : (a, x, udot)      in  A  + AG  + K
//   AOmDual     : (kappa, x, phid)  in  K* + AG  + A*
//   AoOm        : (x, beta, kappa)  in  AG + A*  + K*   (vertical dual of AOm)
//   AstarOm     : (alpha, a, kapS)  in  AG* + A  + K*   (horizontal dual)
//   AstarOmDual : (kappa, xs, phs)  in  K* + AG* + A    (dual of AOmDual over K*)
//   AoOmDual    : (kappa, xv, bv)   in  K* + AG* + A    (dual of AoOm over K*)
#pragma once

#include "dgd/coord.hpp"
#include "dgd/dvb.hpp"

namespace dgd {

struct VBDualityKit {
    LinVBGroupoid Om, OmDual;
    std::size_t agDim = 0, sideDim = 0, coreDim = 0;
    Mat FG;     // ker(base.src), the AG frame in arrow coordinates
    Mat FK;     // ker(srcFib), the core frame in fiber coordinates
    Mat dual4;  // A* -> dual fiber coordinates (core frame of the dual)

    SplitDVB AOmSplit;  // sides (AG, A), core K

    Mat Imat;     // AOmDual -> AoOm
    Mat Rgpd;     // AstarOmDual -> AstarOm
    Mat eps;      // AstarOm -> AoOmDual
    Mat IdagMat;  // AoOmDual -> AstarOmDual

    // <<X, Xi>>: X in AOmDual, Xi in AOm; the AG components must match.
    Rat prolongedPairing(const Vec& X, const Vec& Xi) const;
    // <Psi, Xi>_A: Psi in AstarOm, Xi in AOm over the same A component.
    Rat pairAstar(const Vec& Psi, const Vec& Xi) const;
    // <Phi, Xi>: Phi in AoOm, Xi in AOm over the same AG component.
    Rat pairAo(const Vec& Phi, const Vec& Xi) const;
    // ddagger pairing with an explicit core choice for the auxiliary Xi.
    Rat ddaggerWithCore(const Vec& X, const Vec& Psi, const Vec& coreChoice) const;
    Rat ddagger(const Vec& X, const Vec& Psi) const;
};

VBDualityKit makeDualityKit(const LinVBGroupoid& Om);

// Defining relations, special values, nondegeneracy and eq-RIduals.
Report verifyDualityKit(const VBDualityKit& kit, Rng& rng, std::size_t trials);

struct DoubleProlongation {
    LinDouble D;
    VBDualityKit kitV;  // for A_V S: AOm = (a in AV, x in AH, udot in K_V)
    VBDualityKit kitH;  // for A_H S: AOm = (a in AH, x in AV, udot in K_H)
    Mat embedV, embedH;  // AOm coords -> (u, v, w) blocks of T^2 S
    Mat jmat;            // A^2 S -> A_2 S (restricted canonical involution)
    Mat jmatInv;
    Mat coreIdent;       // K_V -> K_H coordinates through the shared AC span
    Mat jprimeV;         // kitH.AstarOm -> kitV.AOmDual
    Mat jprimeH;         // kitH.AOmDual -> kitV.AstarOm
};

DoubleProlongation makeDoubleProlongation(const LinDouble& D);

// j^2 = id, side/core preservation, and the two prolonged-pairing identities.
Report verifyDoubleProlongation(const DoubleProlongation& P, Rng& rng, std::size_t trials);

// For M^4: j'^H and (j'^V)^{-1} are the coordinate Tulczyjew map under the
// canonical frame identifications.
Report verifyTulczyjew(const DoubleProlongation& P);

} // namespace dgd
