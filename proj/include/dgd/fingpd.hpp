// Finite groupoids, VB-groupoids over them with exact linear structure maps,
// and the dual VB-groupoid construction with its canonical identifications.
#pragma once

#include "dgd/mat.hpp"
#include "dgd/report.hpp"
#include "dgd/rng.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgd {

struct FiniteGroupoid {
    std::size_t nObjects = 0;
    std::vector<std::size_t> src, tgt;  // per arrow
    std::vector<std::size_t> identity;  // per object
    std::vector<std::size_t> inverse;   // per arrow
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;  // (h,g) -> hg

    std::size_t nArrows() const { return src.size(); }
    bool composable(std::size_t h, std::size_t g) const { return src[h] == tgt[g]; }
    std::size_t compose(std::size_t h, std::size_t g) const;
};

Report validateFiniteGroupoid(const FiniteGroupoid& G);

FiniteGroupoid trivialGroupoid(std::size_t nObjects);
FiniteGroupoid pairGroupoidFin(std::size_t nObjects);
FiniteGroupoid cyclicGroupFin(std::size_t order);

// (Omega; G, A; M): vector bundle over the arrows of G, groupoid over A.
struct FinVBGroupoid {
    FiniteGroupoid base;
    std::vector<std::size_t> sideDims;   // per object, dim A_m
    std::vector<std::size_t> fiberDims;  // per arrow, dim Omega_g
    std::vector<Mat> srcLin, tgtLin;     // per arrow: fiber(g) -> A_{src g} / A_{tgt g}
    std::vector<Mat> unitLin;            // per object: A_m -> fiber(1_m)
    std::vector<Mat> invLin;             // per arrow: fiber(g) -> fiber(g^{-1})
    // Full-space extensions; only the restriction to compatible pairs is the
    // composition, validators and solves never read values off that subspace.
    std::map<std::pair<std::size_t, std::size_t>, Mat> compLin;

    const Mat& compAt(std::size_t h, std::size_t g) const;
};

// Columns of `compatiblePairBasis` span {(eta,xi) : src(eta) = tgt(xi)}.
Mat compatiblePairBasis(const FinVBGroupoid& om, std::size_t h, std::size_t g);

Report validateVBGroupoid(const FinVBGroupoid& om);

// Model family: fibers A + K over every arrow, src(a,k) = a, tgt(a,k) = a + delta k,
// (a',k') (a,k) = (a, k + k') when a' = a + delta k.
FinVBGroupoid splitVBGroupoid(const FiniteGroupoid& G, std::size_t dimA, std::size_t dimK,
                              const Mat& delta);

FinVBGroupoid randomSplitVBGroupoid(Rng& rng, std::size_t maxObjects = 4, std::size_t maxDim = 3);

struct CoreBundle {
    std::vector<Mat> basis;  // per object: fiber(1_m) x dimK_m, exact kernel basis
    std::vector<Mat> delta;  // per object: A_m x dimK_m, the restriction of tgt
    std::size_t dimAt(std::size_t m) const { return basis[m].cols(); }
};

CoreBundle core(const FinVBGroupoid& om);

// (Omega*; G, K*; M). Throws std::logic_error if a decomposition solve is
// inconsistent or composition values depend on the decomposition (invalid input).
FinVBGroupoid pradinesDual(const FinVBGroupoid& om);

// Embedding A*_m -> Omega*_{1_m} realizing the core of the dual.
Mat dualCoreEmbedding(const FinVBGroupoid& om, std::size_t m);

struct VBIdentification {
    bool ok = false;
    Report detail;
    std::vector<Mat> fiberMaps;  // per arrow
    std::vector<Mat> baseMaps;   // per object
};

// Canonical evaluation Omega -> (Omega*)*, verified to intertwine all
// structure maps exactly.
VBIdentification doubleDualIdentify(const FinVBGroupoid& om);

// Morphism of VB-groupoids over id_G, id_M.
struct VBMorphism {
    std::vector<Mat> fiberMaps;  // per arrow: Omega_g -> Omega'_g
    std::vector<Mat> baseMaps;   // per object: A_m -> A'_m
};

Report validateVBMorphism(const FinVBGroupoid& om, const FinVBGroupoid& omPrime,
                          const VBMorphism& F);

// Per-object core morphism K -> K' in the chosen kernel bases.
std::vector<Mat> coreMorphism(const FinVBGroupoid& om, const FinVBGroupoid& omPrime,
                              const VBMorphism& F);

// F*: Omega'* -> Omega* with base map f_K^*: K'* -> K*.
VBMorphism dualOfMorphism(const FinVBGroupoid& om, const FinVBGroupoid& omPrime,
                          const VBMorphism& F);

// JSON schema "dgd.finvbgroupoid/1"; rationals as "p/q" strings.
std::string finVBToJson(const FinVBGroupoid& om);
FinVBGroupoid finVBFromJson(const std::string& text);

} // namespace dgd
