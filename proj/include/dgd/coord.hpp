// Coordinate groupoids with linear structure maps, their tangent and
// cotangent prolongations, double groupoids (pair-type, M^4), the core
// groupoid, the cotangent double groupoid, and the core-of-cotangent
// embedding. The registered model families are all linear, so every
// construction is exact matrix algebra; PolyMap forms are provided for the
// symbolic validation contract.
#pragma once

#include "dgd/fingpd.hpp"
#include "dgd/mat.hpp"
#include "dgd/polymap.hpp"
#include "dgd/report.hpp"

#include <optional>
#include <string>

namespace dgd {

// Groupoid over R^baseDim with arrow space R^arrowDim; all structure maps
// linear. `comp` is a full-space extension valid on {src h = tgt g}.
struct LinGroupoid {
    std::size_t baseDim = 0, arrowDim = 0;
    Mat src, tgt;  // arrowDim -> baseDim
    Mat unit;      // baseDim -> arrowDim
    Mat inv;       // arrowDim -> arrowDim
    Mat comp;      // 2*arrowDim -> arrowDim
    std::string family;  // "pair", "vector", "product", "derived"
    std::size_t familyParam = 0;
    std::string label;
};

// Columns span {(h, g) : src h = tgt g} in R^{2 arrowDim}.
Mat composablePairBasis(const LinGroupoid& G);
// Columns span composable triples in R^{3 arrowDim}.
Mat composableTripleBasis(const LinGroupoid& G);

Report validateLinGroupoid(const LinGroupoid& G);

LinGroupoid pairGroupoid(std::size_t n);
LinGroupoid vectorSpaceGroupoid(std::size_t k);
LinGroupoid productGroupoid(const LinGroupoid& a, const LinGroupoid& b);

// PolyMap view of a groupoid, the spec-level symbolic carrier.
struct CoordGroupoid {
    std::size_t baseDim = 0, arrowDim = 0;
    PolyMap src, tgt, unit, inv, comp;
    PolyMap pairParam;    // parameterizes composable pairs
    PolyMap tripleParam;  // parameterizes composable triples
    std::optional<LinGroupoid> lin;
    std::string label;
};

CoordGroupoid toCoord(const LinGroupoid& G);

// Symbolic when every identity has total degree <= maxSymbolicDegree,
// otherwise exact evaluation at `trials` random rational points.
Report validateCoordGroupoid(const CoordGroupoid& G, Rng& rng, std::size_t trials = 25,
                             unsigned maxSymbolicDegree = 4);

// VB-groupoid over a linear groupoid with base-point-independent fibers:
// arrows (gticks, xi) in R^{base.arrowDim + fiberDim}, groupoid over
// (m, a) in R^{base.baseDim + sideDim}.
struct LinVBGroupoid {
    LinGroupoid base;
    std::size_t sideDim = 0, fiberDim = 0;
    Mat srcFib, tgtFib;  // fiberDim -> sideDim
    Mat unitFib;         // sideDim -> fiberDim
    Mat invFib;          // fiberDim -> fiberDim
    Mat compFib;         // 2*fiberDim -> fiberDim, valid on {srcFib eta = tgtFib xi}
    std::string label;
};

LinGroupoid totalGroupoid(const LinVBGroupoid& om);
Report validateLinVB(const LinVBGroupoid& om);

// Kernel data of the fiberwise core K = ker(srcFib) and delta = tgtFib|K.
Mat coreFrame(const LinVBGroupoid& om);
Mat coreDelta(const LinVBGroupoid& om);

// (TG; G, TM; M) with core AG.
LinVBGroupoid tangentVB(const LinGroupoid& G);

// (T*G; G, A*G; M) with core T*M; structure maps derived from the
// translation formulas by exact linear algebra. Also exposes the frames
// used for the A*G coordinates.
struct CotangentVB {
    LinVBGroupoid vb;
    Mat agFrame;     // arrowDim x aDim, ker(src), fixes the A*G coordinates
    Mat anchor;      // baseDim x aDim, tgt * agFrame
    Mat coreEmbed;   // arrowDim x baseDim: T*M -> T* fibers (omega bar)
};

CotangentVB cotangentVB(const LinGroupoid& G);

// Finite restriction bridge: the constant fiber system over the finite pair
// groupoid on `points` sampled objects (pair-family bases only).
FinVBGroupoid finiteRestriction(const LinVBGroupoid& om, std::size_t points);

// Double groupoid (S; H, V; M): vertical structure S over H, horizontal
// over V, sides over M; all linear, shared S coordinates.
struct LinDouble {
    std::size_t totalDim = 0, baseDim = 0;
    LinGroupoid vertical;    // S over H
    LinGroupoid horizontal;  // S over V
    LinGroupoid sideH;       // H over M
    LinGroupoid sideV;       // V over M
    std::string family;
    std::size_t familyParam = 0;
};

Report validateLinDouble(const LinDouble& D);

LinDouble m4Double(std::size_t n);

// A VB-groupoid as a double groupoid: vertical structure is the groupoid
// over the side bundle, horizontal structure is fiberwise addition over the
// base groupoid.
LinDouble vbAsDouble(const LinVBGroupoid& om);

// Core groupoid C over M with its embedding into S.
struct LinCoreGroupoid {
    LinGroupoid gpd;  // C over M; comp is the double multiplication
    Mat embedS;       // dimC -> S coords
    Mat embedM;       // dimC -> M coords (base point of the core element)
    // second expressions for multiplication and inversion (must agree with gpd)
    Mat compAlt, invAlt;
};

// If preferredEmbed (rows: totalDim + baseDim) is given and spans the core
// subspace, its columns fix the C coordinates.
LinCoreGroupoid coreOfDouble(const LinDouble& D, const Mat* preferredEmbed = nullptr);

// Lie functor applied to one structure of a double, prolonged by the other:
// (A_V S; H, AV; M) resp. (A_H S; V, AH; M).
LinVBGroupoid verticalAlgebroidVB(const LinDouble& D);
LinVBGroupoid horizontalAlgebroidVB(const LinDouble& D);

// Pradines dual of a constant-fiber VB-groupoid: (Omega*; G, K*; M).
LinVBGroupoid pradinesDualLin(const LinVBGroupoid& om);

// A* -> dual fiber coordinates; basis of the dual's fiberwise core (eq-dual4
// analogue), used as the canonical A*-coordinates everywhere.
Mat dualCoreEmbeddingLin(const LinVBGroupoid& om);

// The cotangent double groupoid of a double groupoid, with both faces,
// both side duals (sides recoordinated onto shared A*C coordinates), and
// the identification data needed downstream.
struct CotangentDouble {
    LinDouble dbl;            // (T*S; A*_VS, A*_HS; A*C)
    CotangentVB vertFace;     // T*S over A*_VS
    CotangentVB horizFace;    // T*S over A*_HS
    LinVBGroupoid avsVB;      // (A_V S; H, AV; M)
    LinVBGroupoid ahsVB;      // (A_H S; V, AH; M)
    LinVBGroupoid vSideVB;    // (A*_VS; H, A*C; M), side recoordinated
    LinVBGroupoid hSideVB;    // (A*_HS; V, A*C; M), side recoordinated
    LinCoreGroupoid coreC;    // core of the underlying double
    Mat acFrameS;             // AC frame inside S coordinates
    Mat acFrameC;             // AC frame inside C coordinates (ker of core src)
};

CotangentDouble cotangentDouble(const LinDouble& D);

// E: T_C S -> T_C C in C coordinates (constant for linear models).
Mat coreProjectionE(const LinDouble& D, const LinCoreGroupoid& C);

// sigma |-> Sigma = sigma o E as a covector on S at a core point.
Vec coreEmbeddingSigma(const LinDouble& D, const LinCoreGroupoid& C, const Vec& sigma);

// Unique base map of a double-groupoid morphism from its double identities,
// then full validation of the quadruple. phi etc. given as matrices.
struct DoubleMorphism {
    Mat phi, phiH, phiV, phiM;
};

// Throws std::invalid_argument when (phi, phiH) or (phi, phiV) fail to be
// morphisms of the two ordinary structures.
DoubleMorphism inferBaseMorphism(const LinDouble& D, const LinDouble& Dp, const Mat& phi,
                                 const Mat& phiH, const Mat& phiV);

Report validateDoubleMorphism(const LinDouble& D, const LinDouble& Dp, const DoubleMorphism& F);

} // namespace dgd
